import pytest

from bautq import catalog
from bautq.dercomplex import DerComplex
from bautq.homology import gottlieb, homology, restriction_to_generators, top_degree_law, unit_coordinate
from bautq.linalg import rank
from bautq.model import InvalidModelError, MinimalModel

from conftest import valid_fixture_models


@pytest.mark.parametrize("name,m", valid_fixture_models())
def test_rank_nullity_and_euler(name, m):
    h = homology(m)
    cx = h.complex
    N = cx.top_degree
    for n in range(1, N + 1):
        assert h.kernel_dims[n] + h.boundary_ranks[n] == cx.dim(n)
        assert h.ranks[n] == h.kernel_dims[n] - rank(cx.matrix(n + 1))
        assert len(h.representatives[n]) == h.ranks[n]
    # D on degree 1 lands in degree-0 derivations, hence the rank D_1 correction
    lhs = sum((-1) ** n * h.ranks[n] for n in range(1, N + 1))
    rhs = sum((-1) ** n * cx.dim(n) for n in range(1, N + 1)) + rank(cx.matrix(1)) if N else 0
    assert lhs == rhs


def test_representatives_are_cycles_independent_mod_boundaries():
    h = homology(catalog.sphere_pair_model(3))
    for n, reps in h.representatives.items():
        for i, r in enumerate(reps):
            assert not h.complex.D(r)
            expected = [0] * len(reps)
            expected[i] = 1
            assert h.class_of(r) == expected


def test_class_of_rejects_non_cycle():
    h = homology(catalog.hspace_k5_k8())
    cx = h.complex
    from bautq.dercomplex import Derivation
    z_star = Derivation.basis_element(cx.model.algebra, cx.basis(5)[0])
    with pytest.raises(ValueError):
        h.class_of(z_star)


def test_bracket_of_classes_in_s5_is_zero():
    h = homology(catalog.s5_model())
    assert h.nonzero == {4: 1}
    # the only bracket would land in degree 8, beyond the top degree
    assert h.bracket_classes(4, 0, 4, 0) == []


def test_top_degree_law_on_catalog():
    assert top_degree_law(catalog.hspace_k5_k8()) == (8, 1)
    assert top_degree_law(catalog.quadratic_pairing_model(3)) == (5, 1)
    assert top_degree_law(MinimalModel.build([])) == (1, 0)


def test_homology_requires_valid_model():
    with pytest.raises(InvalidModelError):
        homology(catalog.non_universal_model(printed_signs=True))


def test_empty_model_has_empty_homology():
    h = homology(MinimalModel.build([]))
    assert h.ranks == {} and h.baut_ranks == {}


def test_degree_window():
    h = homology(catalog.hspace_k5_k8(), degrees=range(4, 6), representatives=False)
    assert h.ranks == {4: 1, 5: 0}


def test_gottlieb_restriction_of_w_star():
    m = catalog.hspace_k5_k8()
    h = homology(m)
    (rep,) = h.representatives[7]
    assert unit_coordinate(rep, "w") != 0
    assert restriction_to_generators(rep) == {"w": unit_coordinate(rep, "w")}
    g = gottlieb(m, h)
    assert g.nonzero == {7: 1}


def test_gottlieb_of_sphere_pairs_sees_only_top():
    g = gottlieb(catalog.sphere_pair_model(1))
    assert g.nonzero == {4: 1}


def test_complex_dims_cached_consistently():
    cx = DerComplex(catalog.hspace_k5_k8())
    assert cx.matrix(4) is cx.matrix(4)
    assert cx.matrix(4).shape == (cx.dim(3), cx.dim(4))
