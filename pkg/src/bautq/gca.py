"""Free graded-commutative algebras over the rationals.

A monomial is stored as an exponent vector aligned with the algebra's
canonical generator order, which sorts generators by ``(degree, id)``.
Odd-degree generators have exponent 0 or 1; even-degree generators may carry
any non-negative power.  Signs arise only when odd factors are permuted.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Mapping, Sequence, Union

Monomial = tuple  # exponent vector, one entry per generator in canonical order
Rational = Union[int, Fraction]


class AlgebraError(ValueError):
    pass


@dataclass(frozen=True)
class Generator:
    name: str
    degree: int
    id: int

    def __post_init__(self):
        if self.degree < 1:
            raise AlgebraError(f"generator {self.name!r} has degree {self.degree} < 1")

    @property
    def odd(self) -> bool:
        return self.degree % 2 == 1


class GradedAlgebra:
    """The free graded-commutative algebra on a finite set of generators."""

    def __init__(self, generators: Iterable[Generator]):
        gens = sorted(generators, key=lambda g: (g.degree, g.id))
        names = [g.name for g in gens]
        if len(set(names)) != len(names):
            dup = sorted({n for n in names if names.count(n) > 1})
            raise AlgebraError(f"duplicate generator names: {', '.join(dup)}")
        ids = [g.id for g in gens]
        if len(set(ids)) != len(ids):
            raise AlgebraError("duplicate generator ids")
        self.generators: tuple[Generator, ...] = tuple(gens)
        self._by_name = {g.name: i for i, g in enumerate(gens)}
        self._by_id = {g.id: i for i, g in enumerate(gens)}
        self.degrees = tuple(g.degree for g in gens)
        self._odd = tuple(i for i, g in enumerate(gens) if g.odd)

    @classmethod
    def from_degrees(cls, spec: Iterable[tuple[str, int]]) -> "GradedAlgebra":
        """Build from ``(name, degree)`` pairs; ids follow declaration order."""
        return cls(Generator(name, deg, i) for i, (name, deg) in enumerate(spec))

    def __len__(self):
        return len(self.generators)

    def __eq__(self, other):
        return isinstance(other, GradedAlgebra) and self.generators == other.generators

    def __hash__(self):
        return hash(self.generators)

    def __repr__(self):
        inner = ", ".join(f"{g.name}_{g.degree}" for g in self.generators)
        return f"GradedAlgebra({inner})"

    # -- lookup ------------------------------------------------------------

    def index(self, key: Union[str, int, Generator]) -> int:
        """Canonical position of a generator given by name, id or object."""
        if isinstance(key, Generator):
            key = key.name
        try:
            if isinstance(key, str):
                return self._by_name[key]
            return self._by_id[key]
        except KeyError:
            raise AlgebraError(f"unknown generator {key!r}") from None

    def generator(self, key: Union[str, int]) -> Generator:
        return self.generators[self.index(key)]

    def names(self) -> list[str]:
        return [g.name for g in self.generators]

    @cached_property
    def top_degree(self) -> int:
        return max(self.degrees, default=0)

    def adjoin(self, name: str, degree: int) -> "GradedAlgebra":
        """A new algebra with one extra generator (id one past the current max)."""
        new_id = max((g.id for g in self.generators), default=-1) + 1
        return GradedAlgebra(self.generators + (Generator(name, degree, new_id),))

    # -- monomials ---------------------------------------------------------

    @cached_property
    def one(self) -> Monomial:
        return (0,) * len(self.generators)

    def unit(self, key) -> Monomial:
        exps = [0] * len(self.generators)
        exps[self.index(key)] = 1
        return tuple(exps)

    def mono_degree(self, mono: Monomial) -> int:
        return sum(e * d for e, d in zip(mono, self.degrees))

    @staticmethod
    def mono_length(mono: Monomial) -> int:
        return sum(mono)

    def factors(self, mono: Monomial) -> list[int]:
        """Canonical factor sequence, repeating even generators by multiplicity."""
        out = []
        for i, e in enumerate(mono):
            out.extend([i] * e)
        return out

    def mono_key(self, mono: Monomial):
        """Sort key: word length first, then lexicographic on canonical factors."""
        return (sum(mono), self.factors(mono))

    def format_monomial(self, mono: Monomial, sep: str = "*") -> str:
        parts = []
        for i, e in enumerate(mono):
            if e == 0:
                continue
            name = self.generators[i].name
            parts.append(name if e == 1 else f"{name}^{e}")
        return sep.join(parts) if parts else "1"

    def mono_multiply(self, a: Monomial, b: Monomial) -> tuple[int, Monomial]:
        """Product of canonical monomials as ``(sign, monomial)``; sign 0 means zero."""
        odd_a = [i for i in self._odd if a[i]]
        odd_b = [i for i in self._odd if b[i]]
        if set(odd_a) & set(odd_b):
            return 0, self.one
        # each odd factor of b passes over the odd factors of a placed after it
        swaps = sum(1 for j in odd_b for i in odd_a if i > j)
        return (-1 if swaps % 2 else 1), tuple(x + y for x, y in zip(a, b))

    # -- degree bases ------------------------------------------------------

    def basis_of_degree(self, n: int) -> list[Monomial]:
        return list(_basis(self, n))


@lru_cache(maxsize=None)
def _basis(algebra: GradedAlgebra, n: int) -> tuple[Monomial, ...]:
    if n < 0:
        return ()
    gens = algebra.generators
    k = len(gens)
    found: list[Monomial] = []
    exps = [0] * k

    def rec(i: int, remaining: int):
        if remaining == 0:
            found.append(tuple(exps))
            return
        if i == k:
            return
        deg = gens[i].degree
        top = min(1, remaining // deg) if gens[i].odd else remaining // deg
        for e in range(top, -1, -1):
            exps[i] = e
            rec(i + 1, remaining - e * deg)
        exps[i] = 0

    rec(0, n)
    found.sort(key=algebra.mono_key)
    return tuple(found)


def normalize_monomial(algebra: GradedAlgebra, seq: Sequence[Union[str, int]]) -> tuple[int, Monomial]:
    """Sort a word of generators into canonical order, tracking the Koszul sign.

    Returns ``(0, algebra.one)`` when an odd generator repeats.
    """
    positions = [algebra.index(s) for s in seq]
    odd = [p for p in positions if algebra.generators[p].odd]
    if len(set(odd)) != len(odd):
        return 0, algebra.one
    inversions = sum(1 for i in range(len(odd)) for j in range(i + 1, len(odd)) if odd[i] > odd[j])
    exps = [0] * len(algebra)
    for p in positions:
        exps[p] += 1
    return (-1 if inversions % 2 else 1), tuple(exps)


class Polynomial:
    """An element of a free graded-commutative algebra with rational coefficients.

    Instances are treated as immutable; arithmetic returns new objects.
    """

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: GradedAlgebra, terms: Mapping[Monomial, Rational] = None):
        self.algebra = algebra
        clean = {}
        for mono, c in (terms or {}).items():
            if c:
                clean[mono] = Fraction(c)
        self.terms: dict[Monomial, Fraction] = clean

    @classmethod
    def zero(cls, algebra: GradedAlgebra) -> "Polynomial":
        return cls(algebra)

    @classmethod
    def constant(cls, algebra: GradedAlgebra, c: Rational = 1) -> "Polynomial":
        return cls(algebra, {algebra.one: c})

    @classmethod
    def monomial(cls, algebra: GradedAlgebra, mono: Monomial, c: Rational = 1) -> "Polynomial":
        return cls(algebra, {mono: c})

    @classmethod
    def gen(cls, algebra: GradedAlgebra, key) -> "Polynomial":
        return cls(algebra, {algebra.unit(key): 1})

    @classmethod
    def word(cls, algebra: GradedAlgebra, seq: Sequence, c: Rational = 1) -> "Polynomial":
        """The product of the given generators in the given order."""
        sign, mono = normalize_monomial(algebra, seq)
        return cls(algebra, {mono: sign * Fraction(c)} if sign else {})

    # -- inspection --------------------------------------------------------

    def __iter__(self) -> Iterator[tuple[Monomial, Fraction]]:
        return iter(sorted(self.terms.items(), key=lambda kv: self.algebra.mono_key(kv[0])))

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def coefficient(self, mono: Monomial) -> Fraction:
        return self.terms.get(mono, Fraction(0))

    def degrees(self) -> set[int]:
        return {self.algebra.mono_degree(m) for m in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    @property
    def degree(self):
        """Common degree of all terms, or ``None`` for zero / mixed polynomials."""
        degs = self.degrees()
        return degs.pop() if len(degs) == 1 else None

    # -- arithmetic --------------------------------------------------------

    def _check(self, other: "Polynomial"):
        if self.algebra != other.algebra:
            raise AlgebraError("polynomials over different generator sets")

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return Polynomial(self.algebra, out)

    def __neg__(self):
        return Polynomial(self.algebra, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Polynomial(self.algebra, {m: c * other for m, c in self.terms.items()})
        if not isinstance(other, Polynomial):
            return NotImplemented
        return multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self == Polynomial.constant(self.algebra, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.algebra == other.algebra and self.terms == other.terms

    def __hash__(self):
        return hash((self.algebra, frozenset(self.terms.items())))

    def __repr__(self):
        return f"Polynomial({self.format()!r})"

    def format(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for i, (mono, c) in enumerate(self):
            neg = c < 0
            a = -c if neg else c
            body = self.algebra.format_monomial(mono)
            if mono == self.algebra.one:
                text = str(a)
            elif a == 1:
                text = body
            else:
                text = f"{a}*{body}"
            if i == 0:
                out.append(("-" if neg else "") + text)
            else:
                out.append((" - " if neg else " + ") + text)
        return "".join(out)

    __str__ = format


def multiply(p: Polynomial, q: Polynomial) -> Polynomial:
    """Graded-commutative product."""
    p._check(q)
    alg = p.algebra
    out: dict[Monomial, Fraction] = {}
    for a, ca in p.terms.items():
        for b, cb in q.terms.items():
            sign, m = alg.mono_multiply(a, b)
            if sign:
                out[m] = out.get(m, 0) + sign * ca * cb
    return Polynomial(alg, out)


def basis_of_degree(algebra: GradedAlgebra, n: int) -> list[Monomial]:
    """All canonical monomials of total degree ``n``, ordered by length then lex."""
    return algebra.basis_of_degree(n)


def apply_derivation(values: Sequence[Polynomial], degree: int, p: Polynomial) -> Polynomial:
    """Extend generator values to ``p`` by the graded Leibniz rule.

    ``values[i]`` is the image of the i-th canonical generator and ``degree``
    is the derivation's degree; only its parity enters the signs, so the same
    routine serves degree-lowering derivations and the degree +1 differential:
    ``f(ab) = f(a)b + (-1)^(degree*|a|) a f(b)``.
    """
    alg = p.algebra
    odd_op = degree % 2 == 1
    out: dict[Monomial, Fraction] = {}
    for mono, coeff in p.terms.items():
        before = [0] * len(mono)
        before_deg = 0
        for i, e in enumerate(mono):
            if e:
                image = values[i]
                if image:
                    sign = -1 if (odd_op and before_deg % 2) else 1
                    left = list(before)
                    left[i] = e - 1
                    after = tuple(mono[j] if j > i else 0 for j in range(len(mono)))
                    # even powers contribute e equal copies, odd exponents are 1
                    scale = sign * e * coeff
                    for m1, c1 in image.terms.items():
                        s1, mid = alg.mono_multiply(tuple(left), m1)
                        if not s1:
                            continue
                        s2, full = alg.mono_multiply(mid, after)
                        if s2:
                            out[full] = out.get(full, 0) + scale * s1 * s2 * c1
                before[i] = e
                before_deg += e * alg.degrees[i]
    return Polynomial(alg, out)
