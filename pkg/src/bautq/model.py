"""Sullivan minimal models ``(ΛV, d)`` and their well-formedness checks."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence, Union

from .gca import GradedAlgebra, Polynomial, apply_derivation


class InvalidModelError(ValueError):
    """Raised when an operation needs a valid model and the input is not one."""

    def __init__(self, report: "ValidationReport"):
        self.report = report
        super().__init__("invalid model:\n" + report.format())


class MinimalModel:
    """A free graded-commutative algebra with a differential given on generators.

    Construction never checks the DG axioms; call :func:`validate` (or
    :meth:`require_valid`) for that, so that broken inputs can be reported
    rather than rejected outright.
    """

    def __init__(self, algebra: GradedAlgebra, differential: Mapping = None):
        self.algebra = algebra
        values = [Polynomial.zero(algebra) for _ in algebra.generators]
        for key, poly in (differential or {}).items():
            if poly.algebra != algebra:
                raise ValueError(f"differential of {key!r} lives over a different algebra")
            values[algebra.index(key)] = poly
        self._d = tuple(values)

    @classmethod
    def build(cls, generators: Sequence[tuple[str, int]],
              differential: Mapping[str, Union[str, Polynomial]] = None) -> "MinimalModel":
        """Convenience constructor: ``build([("x", 3), ...], {"z": "x*y"})``."""
        from .dsl import parse_expression

        algebra = GradedAlgebra.from_degrees(generators)
        diff = {}
        for name, value in (differential or {}).items():
            diff[name] = parse_expression(value, algebra) if isinstance(value, str) else value
        return cls(algebra, diff)

    @property
    def generators(self):
        return self.algebra.generators

    @property
    def top_degree(self) -> int:
        return self.algebra.top_degree

    def d_of(self, key) -> Polynomial:
        """The differential of a single generator."""
        return self._d[self.algebra.index(key)]

    @property
    def differential_values(self) -> tuple[Polynomial, ...]:
        return self._d

    def d(self, p: Polynomial) -> Polynomial:
        return apply_derivation(self._d, 1, p)

    def poly(self, text: str) -> Polynomial:
        from .dsl import parse_expression

        return parse_expression(text, self.algebra)

    def gen(self, name: str) -> Polynomial:
        return Polynomial.gen(self.algebra, name)

    def __eq__(self, other):
        return (isinstance(other, MinimalModel) and self.algebra == other.algebra
                and self._d == other._d)

    def __hash__(self):
        return hash((self.algebra, self._d))

    def __repr__(self):
        gens = ", ".join(f"{g.name}{_sub(g.degree)}" for g in self.generators)
        diffs = "; ".join(f"d{g.name} = {p}" for g, p in zip(self.generators, self._d) if p)
        return f"MinimalModel(Λ({gens}); {diffs or 'd = 0'})"

    def validation(self) -> "ValidationReport":
        return validate(self)

    def require_valid(self) -> "MinimalModel":
        report = validate(self)
        if not report.ok:
            raise InvalidModelError(report)
        return self


_SUBSCRIPTS = str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉")


def _sub(n: int) -> str:
    return str(n).translate(_SUBSCRIPTS)


@dataclass(frozen=True)
class Violation:
    kind: str  # "degree", "minimality" or "d-squared"
    generator: str
    monomial: Optional[str]
    message: str


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}

    def format(self) -> str:
        lines = [f"{v.kind}: {v.message}" for v in self.violations] or ["valid"]
        lines += [f"warning: {w}" for w in self.warnings]
        return "\n".join(lines)


def validate(m: MinimalModel) -> ValidationReport:
    """Check degree, minimality and ``d² = 0`` on every generator."""
    alg = m.algebra
    report = ValidationReport()
    for g, dv in zip(alg.generators, m.differential_values):
        for mono, _ in dv:
            text = alg.format_monomial(mono)
            deg = alg.mono_degree(mono)
            if deg != g.degree + 1:
                report.violations.append(Violation(
                    "degree", g.name, text,
                    f"d({g.name}) has term {text} of degree {deg}, expected {g.degree + 1}"))
            if alg.mono_length(mono) < 2:
                report.violations.append(Violation(
                    "minimality", g.name, text,
                    f"d({g.name}) has term {text} of word length {alg.mono_length(mono)} < 2"))
    for g, dv in zip(alg.generators, m.differential_values):
        dd = m.d(dv)
        if dd:
            report.violations.append(Violation(
                "d-squared", g.name, None, f"d(d({g.name})) = {dd} != 0"))
    low = [g.name for g in alg.generators if g.degree == 1]
    if low:
        report.warnings.append(
            "degree-1 generators present (" + ", ".join(low) + "); nilpotency is not checked")
    return report


def homotopy_ranks(m: MinimalModel) -> dict[int, int]:
    """Number of generators in each degree, i.e. the ranks of π_*(X) ⊗ ℚ."""
    m.require_valid()
    return dict(sorted(Counter(g.degree for g in m.generators).items()))


def top_generators(m: MinimalModel) -> tuple[int, int]:
    """``(N, dim V^N)`` for the top generator degree N (``(0, 0)`` when empty)."""
    n = m.top_degree
    return n, sum(1 for g in m.generators if g.degree == n)
