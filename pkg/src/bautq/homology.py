"""Homology of ``(Der(ΛV), D)``, the B aut₁ rank table and Gottlieb ranks."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .dercomplex import DerBasisElement, DerComplex, Derivation, bracket
from .linalg import extend_basis, kernel_basis, rank, solve_in_span
from .model import MinimalModel, top_generators


@dataclass
class HomologyReport:
    complex: DerComplex
    ranks: dict[int, int]
    kernel_dims: dict[int, int]
    boundary_ranks: dict[int, int]  # rank of D: Der_n -> Der_{n-1}
    representatives: dict[int, list[Derivation]] = field(default_factory=dict)

    @property
    def model(self) -> MinimalModel:
        return self.complex.model

    @property
    def nonzero(self) -> dict[int, int]:
        return {n: r for n, r in self.ranks.items() if r}

    @property
    def baut_ranks(self) -> dict[int, int]:
        """Nonzero ranks of π_*(B aut₁ X) ⊗ ℚ, shifted up one from homology."""
        return {n + 1: r for n, r in self.ranks.items() if r}

    def class_of(self, theta: Derivation) -> list[Fraction]:
        """Coordinates of a cycle's homology class in the representative basis."""
        n = theta.degree
        cx = self.complex
        if cx.D(theta):
            raise ValueError("not a cycle")
        reps = [cx.vector(r) for r in self.representatives.get(n, [])]
        bounds = _boundary_basis(cx, n)
        coeffs = solve_in_span(reps + bounds, cx.vector(theta), cx.dim(n))
        if coeffs is None:
            raise ValueError("cycle outside the span of representatives and boundaries")
        return coeffs[:len(reps)]

    def bracket_classes(self, i: int, a: int, j: int, b: int) -> list[Fraction]:
        """Class of ``[rep_i[a], rep_j[b]]`` in degree ``i + j`` (empty beyond the range)."""
        theta = bracket(self.representatives[i][a], self.representatives[j][b])
        if theta.degree not in self.ranks:
            return []
        return self.class_of(theta)


def _boundary_basis(cx: DerComplex, n: int) -> list[list[Fraction]]:
    if n + 1 > cx.top_degree + 1:
        return []
    mat = cx.matrix(n + 1)
    cols = [mat.column(j) for j in range(mat.cols)]
    keep = extend_basis([], cols, mat.rows)
    return [cols[k] for k in keep]


def homology(m: MinimalModel, degrees: Optional[range] = None,
             representatives: bool = True) -> HomologyReport:
    """``dim H_n = dim ker D_n - rank D_{n+1}`` for ``1 <= n <= N``."""
    m.require_valid()
    cx = DerComplex(m)
    top = cx.top_degree
    wanted = range(1, top + 1) if degrees is None else [n for n in degrees if 1 <= n <= top]
    ranks, kdims, branks, reps = {}, {}, {}, {}
    for n in wanted:
        mat = cx.matrix(n)
        r_out = rank(mat)
        r_in = rank(cx.matrix(n + 1))
        kdim = cx.dim(n) - r_out
        ranks[n] = kdim - r_in
        kdims[n] = kdim
        branks[n] = r_out
        branks.setdefault(n + 1, r_in)
        if representatives:
            reps[n] = _representatives(cx, n)
            assert len(reps[n]) == ranks[n]
    return HomologyReport(cx, ranks, kdims, branks, reps)


def _representatives(cx: DerComplex, n: int) -> list[Derivation]:
    """Reduced-echelon kernel vectors that are independent modulo boundaries."""
    cycles = kernel_basis(cx.matrix(n))
    bounds = _boundary_basis(cx, n)
    chosen = extend_basis(bounds, cycles, cx.dim(n))
    return [cx.derivation(n, cycles[k]) for k in chosen]


def top_degree_law(m: MinimalModel) -> tuple[int, int]:
    """``(N + 1, dim V^N)``, checked against the computed homology in degree N."""
    top, count = top_generators(m)
    if top == 0:
        return 1, 0
    computed = homology(m, degrees=range(top, top + 1), representatives=False).ranks[top]
    if computed != count:
        raise AssertionError(f"H_{top} has rank {computed} but dim V^{top} = {count}")
    return top + 1, count


@dataclass
class GottliebReport:
    ranks: dict[int, int]
    functionals: dict[int, list[dict[str, Fraction]]]  # spanning set, generator name -> value

    @property
    def nonzero(self) -> dict[int, int]:
        return {n: r for n, r in self.ranks.items() if r}


def restriction_to_generators(theta: Derivation) -> dict[str, Fraction]:
    """The functional ``v ↦ (unit coefficient of θ(v))`` on generators of degree ``|θ|``."""
    alg = theta.algebra
    return {g.name: theta.values[i].coefficient(alg.one)
            for i, g in enumerate(alg.generators) if g.degree == theta.degree}


def gottlieb(m: MinimalModel, report: Optional[HomologyReport] = None) -> GottliebReport:
    """Image of homology classes under restriction to generators of the same degree."""
    if report is None or not report.representatives:
        report = homology(m)
    alg = m.algebra
    ranks, funcs = {}, {}
    for n, reps in report.representatives.items():
        names = [g.name for g in alg.generators if g.degree == n]
        vecs = [restriction_to_generators(r) for r in reps]
        rows = [[v[name] for name in names] for v in vecs]
        keep = extend_basis([], rows, len(names)) if names else []
        ranks[n] = len(keep)
        funcs[n] = [vecs[k] for k in keep]
    return GottliebReport(ranks, funcs)


def unit_coordinate(theta: Derivation, name: str) -> Fraction:
    """Coefficient of ``name*`` in ``theta``."""
    alg = theta.algebra
    return theta.coords().get(DerBasisElement(alg.index(name), alg.one), Fraction(0))
