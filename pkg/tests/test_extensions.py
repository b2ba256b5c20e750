import pytest

from bautq import catalog
from bautq.dercomplex import DerComplex
from bautq.extensions import KSExtensionError, KSExtensionSpec, build_ks_total, prop23_check, restrict_to_fibre
from bautq.linalg import kernel_basis
from bautq.model import validate


def test_uv_extension_total_differential():
    base = catalog.uv_model(2, 1)
    total = build_ks_total(base, catalog.uv_extension(base, 2))
    assert total.d_of("v").format() == "z*u"
    assert validate(total).ok


@pytest.mark.parametrize("trivial", [False, True])
def test_restriction_recovers_the_fibre(trivial):
    base = catalog.uv_model(4, 1)
    total = build_ks_total(base, catalog.uv_extension(base, 4, trivial=trivial))
    assert restrict_to_fibre(total, "z") == base


def test_pairing_extension_restricts_back():
    base = catalog.quadratic_pairing_model(2)
    total = build_ks_total(base, catalog.quadratic_pairing_extension(base))
    assert restrict_to_fibre(total, "z") == base


def test_same_sign_pairing_extension_rejected():
    base = catalog.quadratic_pairing_model(2)
    with pytest.raises(KSExtensionError, match="square to zero"):
        build_ks_total(base, catalog.quadratic_pairing_extension(base, +1))


def test_perturbation_degree_mismatch_rejected():
    base = catalog.uv_model(2, 1)
    ext = KSExtensionSpec.build(base, "z", 3, {"v": "u*z"})
    with pytest.raises(KSExtensionError):
        build_ks_total(base, ext)


def test_degree_one_base_rejected():
    base = catalog.uv_model(2, 1)
    with pytest.raises(KSExtensionError):
        build_ks_total(base, KSExtensionSpec.build(base, "z", 1, {}))


def _cycles_vanish_on(total, name):
    cx = DerComplex(total)
    alg = total.algebra
    n = alg.generator(name).degree
    idx = [j for j, e in enumerate(cx.basis(n)) if e.source == alg.index(name) and e.target == alg.one]
    return all(vec[j] == 0 for vec in kernel_basis(cx.matrix(n)) for j in idx)


@pytest.mark.parametrize("r,m", [(2, 0), (2, 1), (2, 2), (6, 1)])
def test_pass_means_cycles_vanish_on_base(r, m):
    base = catalog.uv_model(r, m)
    total = build_ks_total(base, catalog.uv_extension(base, r))
    cert = prop23_check(total, "z")
    assert cert.passed
    assert _cycles_vanish_on(total, "z")
    assert cert.base_boundary.format() == "-(v,u)"


def test_trivial_extension_fails_with_z_star():
    base = catalog.uv_model(2, 1)
    total = build_ks_total(base, catalog.uv_extension(base, 2, trivial=True))
    cert = prop23_check(total, "z")
    assert not cert.passed
    assert cert.witness.format() == "z*"
    assert not _cycles_vanish_on(total, "z")


def test_unknown_base_generator():
    with pytest.raises(KSExtensionError):
        prop23_check(catalog.s5_model(), "q")
