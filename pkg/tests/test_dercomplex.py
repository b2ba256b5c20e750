import itertools

import pytest

from bautq import catalog
from bautq.dercomplex import (DerBasisElement, DerComplex, Derivation, bracket, der_basis,
                              differential_D, extend, matrix_of_D)
from bautq.gca import Polynomial
from bautq.random_models import random_models

from conftest import valid_fixture_models

MODELS = valid_fixture_models() + [(f"random{i}", m) for i, m in enumerate(random_models(25, seed=7))]


def basis_derivations(cx, n):
    return [Derivation.basis_element(cx.model.algebra, e) for e in cx.basis(n)]


def sign(k):
    return -1 if k % 2 else 1


@pytest.mark.parametrize("name,m", MODELS)
def test_D_squared_is_zero(name, m):
    cx = DerComplex(m)
    for n in range(2, cx.top_degree + 2):
        assert (matrix_of_D(cx, n - 1) @ matrix_of_D(cx, n)).is_zero()


@pytest.mark.parametrize("name,m", MODELS)
def test_bracket_antisymmetry_jacobi_and_leibniz(name, m):
    cx = DerComplex(m)
    elems = [t for n in range(1, cx.top_degree + 1) for t in basis_derivations(cx, n)][:9]
    for a, b in itertools.product(elems, repeat=2):
        assert bracket(a, b) == bracket(b, a) * (-sign(a.degree * b.degree))
        # D is a derivation of the bracket
        lhs = cx.D(bracket(a, b))
        rhs = bracket(cx.D(a), b) + bracket(a, cx.D(b)) * sign(a.degree)
        assert lhs == rhs
    for a, b, c in itertools.product(elems[:6], repeat=3):
        total = (bracket(a, bracket(b, c)) * sign(a.degree * c.degree)
                 + bracket(b, bracket(c, a)) * sign(b.degree * a.degree)
                 + bracket(c, bracket(a, b)) * sign(c.degree * b.degree))
        assert not total


@pytest.mark.parametrize("name,m", MODELS)
def test_extend_is_a_derivation(name, m):
    cx = DerComplex(m)
    alg = m.algebra
    gens = [Polynomial.gen(alg, g.name) for g in alg.generators]
    words = gens + [p * q for p, q in itertools.combinations(gens, 2)]
    for theta in [t for n in range(1, cx.top_degree + 1) for t in basis_derivations(cx, n)][:6]:
        for p, q in itertools.product(words[:6], repeat=2):
            lhs = extend(theta, p * q)
            rhs = extend(theta, p) * q + (p * extend(theta, q)) * sign(theta.degree * p.degree)
            assert lhs == rhs


def test_der_basis_sizes_for_hspace():
    m = catalog.hspace_k5_k8()
    assert [len(der_basis(m, n)) for n in range(0, 8)] == [6, 1, 3, 2, 2, 1, 0, 1]
    with pytest.raises(ValueError):
        der_basis(m, -1)


def test_labels_match_printed_table():
    cx = DerComplex(catalog.hspace_k5_k8())
    assert cx.labels(2) == ["(z,x)", "(z,y)", "(w,z)"]
    assert cx.labels(1) == ["(w,x*y)"]
    assert cx.labels(7) == ["w*"]


def test_D_matches_matrix_column():
    m = catalog.sphere_pair_model(1)
    cx = DerComplex(m)
    for n in range(1, cx.top_degree + 1):
        mat = matrix_of_D(cx, n)
        for j, e in enumerate(cx.basis(n)):
            image = differential_D(m, Derivation.basis_element(m.algebra, e))
            assert cx.vector(image) == mat.column(j)


def test_derivation_rejects_wrong_degree_values():
    m = catalog.hspace_k5_k8()
    alg = m.algebra
    with pytest.raises(ValueError):
        Derivation.from_values(alg, 2, {"z": m.poly("x*y")})


def test_basis_element_value():
    alg = catalog.hspace_k5_k8().algebra
    e = DerBasisElement(alg.index("w"), alg.unit("z"))
    theta = Derivation.basis_element(alg, e)
    assert theta.value("w") == Polynomial.gen(alg, "z")
    assert e.label(alg) == "(w,z)"
    assert e.degree(alg) == 2
