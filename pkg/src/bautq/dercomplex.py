"""The DG Lie algebra of degree-lowering derivations of a minimal model.

A derivation of degree ``n`` lowers degree by ``n`` and is stored by its values
on generators.  The differential is ``D(θ) = d∘θ - (-1)^n θ∘d`` and the
bracket ``[θ1, θ2] = θ1∘θ2 - (-1)^(n1 n2) θ2∘θ1``; with the Leibniz sign
``θ(ab) = θ(a)b + (-1)^(n|a|) aθ(b)`` these reproduce the hand-computed
differentials of the small worked models sign for sign.

Degree-0 derivations appear only as the codomain of ``D`` on degree 1, so
that degree-1 homology counts cycles rather than everything.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from typing import Mapping, NamedTuple, Sequence

from .gca import GradedAlgebra, Monomial, Polynomial, apply_derivation
from .linalg import RationalMatrix
from .model import MinimalModel


class DerBasisElement(NamedTuple):
    """The derivation sending generator ``source`` to ``target`` and the rest to 0."""

    source: int
    target: Monomial

    def label(self, algebra: GradedAlgebra) -> str:
        name = algebra.generators[self.source].name
        if self.target == algebra.one:
            return f"{name}*"
        return f"({name},{algebra.format_monomial(self.target)})"

    def degree(self, algebra: GradedAlgebra) -> int:
        return algebra.degrees[self.source] - algebra.mono_degree(self.target)


class Derivation:
    """A homogeneous derivation, given by its values on generators."""

    __slots__ = ("algebra", "degree", "values")

    def __init__(self, algebra: GradedAlgebra, degree: int, values: Sequence[Polynomial] = None):
        self.algebra = algebra
        self.degree = degree
        if values is None:
            values = [Polynomial.zero(algebra) for _ in algebra.generators]
        values = tuple(values)
        if len(values) != len(algebra.generators):
            raise ValueError("one value per generator required")
        for g, v in zip(algebra.generators, values):
            if v and v.degrees() != {g.degree - degree}:
                raise ValueError(f"value on {g.name} is not of degree {g.degree - degree}")
        self.values = values

    @classmethod
    def zero(cls, algebra: GradedAlgebra, degree: int) -> "Derivation":
        return cls(algebra, degree)

    @classmethod
    def basis_element(cls, algebra: GradedAlgebra, elem: DerBasisElement) -> "Derivation":
        return cls.from_coords(algebra, elem.degree(algebra), {elem: 1})

    @classmethod
    def from_coords(cls, algebra: GradedAlgebra, degree: int,
                    coords: Mapping[DerBasisElement, object]) -> "Derivation":
        vals: list[dict] = [{} for _ in algebra.generators]
        for elem, c in coords.items():
            if c:
                bucket = vals[elem.source]
                bucket[elem.target] = bucket.get(elem.target, 0) + Fraction(c)
        return cls(algebra, degree, [Polynomial(algebra, v) for v in vals])

    @classmethod
    def from_values(cls, algebra: GradedAlgebra, degree: int,
                    values: Mapping[str, Polynomial]) -> "Derivation":
        vals = [Polynomial.zero(algebra) for _ in algebra.generators]
        for key, p in values.items():
            vals[algebra.index(key)] = p
        return cls(algebra, degree, vals)

    def coords(self) -> dict[DerBasisElement, Fraction]:
        out = {}
        for i, v in enumerate(self.values):
            for mono, c in v.terms.items():
                out[DerBasisElement(i, mono)] = c
        return out

    def __call__(self, p: Polynomial) -> Polynomial:
        return extend(self, p)

    def value(self, key) -> Polynomial:
        return self.values[self.algebra.index(key)]

    def _same(self, other: "Derivation"):
        if self.algebra != other.algebra:
            raise ValueError("derivations of different algebras")
        if self.degree != other.degree:
            raise ValueError(f"cannot add derivations of degrees {self.degree} and {other.degree}")

    def __add__(self, other: "Derivation") -> "Derivation":
        self._same(other)
        return Derivation(self.algebra, self.degree, [a + b for a, b in zip(self.values, other.values)])

    def __sub__(self, other: "Derivation") -> "Derivation":
        self._same(other)
        return Derivation(self.algebra, self.degree, [a - b for a, b in zip(self.values, other.values)])

    def __neg__(self):
        return Derivation(self.algebra, self.degree, [-a for a in self.values])

    def __mul__(self, c):
        if not isinstance(c, (int, Fraction)):
            return NotImplemented
        return Derivation(self.algebra, self.degree, [a * c for a in self.values])

    __rmul__ = __mul__

    def __bool__(self):
        return any(self.values)

    def __eq__(self, other):
        if not isinstance(other, Derivation):
            return NotImplemented
        if not self and not other:
            return self.algebra == other.algebra
        return (self.algebra == other.algebra and self.degree == other.degree
                and self.values == other.values)

    def __hash__(self):
        return hash((self.degree, self.values))

    def format(self) -> str:
        items = sorted(self.coords().items(),
                       key=lambda kv: (kv[0].source, self.algebra.mono_key(kv[0].target)))
        if not items:
            return "0"
        parts = []
        for i, (elem, c) in enumerate(items):
            label = elem.label(self.algebra)
            neg = c < 0
            a = -c if neg else c
            text = label if a == 1 else f"{a}{label}"
            if i == 0:
                parts.append(("-" if neg else "") + text)
            else:
                parts.append((" - " if neg else " + ") + text)
        return "".join(parts)

    __str__ = format

    def __repr__(self):
        return f"Derivation(degree={self.degree}, {self.format()})"


def extend(theta: Derivation, p: Polynomial) -> Polynomial:
    """Apply ``theta`` to an arbitrary element via the graded Leibniz rule."""
    if p.algebra != theta.algebra:
        raise ValueError("derivation and polynomial over different algebras")
    return apply_derivation(theta.values, theta.degree, p)


def differential_D(m: MinimalModel, theta: Derivation) -> Derivation:
    """``D(θ) = [d, θ]``, evaluated on generators."""
    n = theta.degree
    sign = -1 if n % 2 else 1
    vals = []
    for v, dv in zip(theta.values, m.differential_values):
        vals.append(m.d(v) - extend(theta, dv) * sign)
    return Derivation(m.algebra, n - 1, vals)


def bracket(t1: Derivation, t2: Derivation) -> Derivation:
    """Graded commutator; zero when the degree exceeds the top generator degree."""
    if t1.algebra != t2.algebra:
        raise ValueError("derivations of different algebras")
    alg = t1.algebra
    n = t1.degree + t2.degree
    if n > alg.top_degree:
        return Derivation.zero(alg, n)
    sign = -1 if (t1.degree * t2.degree) % 2 else 1
    vals = [extend(t1, b) - extend(t2, a) * sign for a, b in zip(t1.values, t2.values)]
    return Derivation(alg, n, vals)


def der_basis(m: MinimalModel, n: int) -> list[DerBasisElement]:
    """Basis of derivations of degree ``n``: pairs ``(v, χ)`` with ``|χ| = |v| - n``.

    ``n = 0`` is accepted and yields the degree-0 derivations, which serve
    only as the target of ``D`` on degree 1.
    """
    if n < 0:
        raise ValueError(f"derivation degree must be >= 0, got {n}")
    return _der_basis(m.algebra, n)


def _der_basis(alg: GradedAlgebra, n: int) -> list[DerBasisElement]:
    out = []
    for i, g in enumerate(alg.generators):
        for chi in alg.basis_of_degree(g.degree - n):
            out.append(DerBasisElement(i, chi))
    return out


class DerComplex:
    """``(Der(ΛV), D)`` with per-degree bases and matrices, built lazily."""

    def __init__(self, model: MinimalModel):
        self.model = model
        self.algebra = model.algebra
        self._bases: dict[int, list[DerBasisElement]] = {}
        self._index: dict[int, dict[DerBasisElement, int]] = {}
        self._matrices: dict[int, RationalMatrix] = {}

    @cached_property
    def top_degree(self) -> int:
        return self.algebra.top_degree

    @property
    def bases(self) -> dict[int, list[DerBasisElement]]:
        return {n: self.basis(n) for n in range(1, self.top_degree + 1)}

    def basis(self, n: int) -> list[DerBasisElement]:
        if n not in self._bases:
            self._bases[n] = der_basis(self.model, n) if n >= 0 else []
            self._index[n] = {e: i for i, e in enumerate(self._bases[n])}
        return self._bases[n]

    def dim(self, n: int) -> int:
        return len(self.basis(n))

    def labels(self, n: int) -> list[str]:
        return [e.label(self.algebra) for e in self.basis(n)]

    def vector(self, theta: Derivation) -> list[Fraction]:
        """Coordinates of ``theta`` in ``basis(theta.degree)``."""
        basis = self.basis(theta.degree)
        index = self._index[theta.degree]
        vec = [Fraction(0)] * len(basis)
        for elem, c in theta.coords().items():
            try:
                vec[index[elem]] = c
            except KeyError:
                raise ValueError(f"{elem.label(self.algebra)} is not a degree-{theta.degree} basis element") from None
        return vec

    def derivation(self, n: int, vec: Sequence) -> Derivation:
        return Derivation.from_coords(self.algebra, n, dict(zip(self.basis(n), vec)))

    def D(self, theta: Derivation) -> Derivation:
        return differential_D(self.model, theta)

    def matrix(self, n: int) -> RationalMatrix:
        if n not in self._matrices:
            self._matrices[n] = matrix_of_D(self, n)
        return self._matrices[n]


def matrix_of_D(c: DerComplex, n: int) -> RationalMatrix:
    """Matrix of ``D: Der_n -> Der_{n-1}`` in the ``der_basis`` orderings."""
    if not 1 <= n <= c.top_degree + 1:
        raise ValueError(f"degree {n} outside 1..{c.top_degree + 1}")
    cols = c.basis(n)
    rows = c.basis(n - 1)
    columns = []
    for elem in cols:
        image = c.D(Derivation.basis_element(c.algebra, elem))
        columns.append({i: v for i, v in enumerate(c.vector(image)) if v})
    return RationalMatrix.from_columns(len(rows), columns)
