"""Elementary KS-extensions ``Λ(w) → Λ(w) ⊗ ΛV → ΛV`` and the cycle test
that certifies an essential map ``K(ℚ, n) → B aut₁(X)``."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional, Union

from .dercomplex import DerBasisElement, DerComplex, Derivation
from .gca import Generator, GradedAlgebra, Polynomial
from .linalg import kernel_basis
from .model import MinimalModel, validate


class KSExtensionError(ValueError):
    pass


@dataclass
class KSExtensionSpec:
    """A closed base generator ``w`` and the perturbation added to ``d`` on fibre generators.

    Perturbations are polynomials over the total algebra (the fibre algebra with
    ``w`` adjoined); every term must contain ``w``.
    """

    base: Generator
    total_algebra: GradedAlgebra
    perturbations: dict[str, Polynomial] = field(default_factory=dict)

    @classmethod
    def build(cls, model: MinimalModel, name: str, degree: int,
              perturbations: Mapping[str, Union[str, Polynomial]] = None) -> "KSExtensionSpec":
        from .dsl import parse_expression

        total = model.algebra.adjoin(name, degree)
        perts = {}
        for key, value in (perturbations or {}).items():
            perts[key] = parse_expression(value, total) if isinstance(value, str) else value
        return cls(total.generator(name), total, perts)

    @property
    def name(self) -> str:
        return self.base.name

    @property
    def degree(self) -> int:
        return self.base.degree


def lift(p: Polynomial, target: GradedAlgebra) -> Polynomial:
    """Re-express ``p`` over a larger algebra containing its generators by name."""
    src = p.algebra
    where = [target.index(g.name) for g in src.generators]
    terms = {}
    for mono, c in p.terms.items():
        exps = [0] * len(target)
        for i, e in enumerate(mono):
            exps[where[i]] = e
        terms[tuple(exps)] = c
    return Polynomial(target, terms)


def build_ks_total(m: MinimalModel, ext: KSExtensionSpec) -> MinimalModel:
    """The total algebra ``(Λ(w) ⊗ ΛV, 𝒟)``; rejects it unless it is a minimal DG algebra."""
    total = ext.total_algebra
    w = ext.base
    if w.degree < 2:
        raise KSExtensionError(f"base generator {w.name} must have degree >= 2, got {w.degree}")
    if [g.name for g in total.generators if g.name != w.name] != [g.name for g in m.generators]:
        raise KSExtensionError("extension was not built over this model")
    wi = total.index(w.name)
    diff = {}
    for g in m.generators:
        diff[g.name] = lift(m.d_of(g.name), total)
    for name, pert in ext.perturbations.items():
        if name == w.name:
            raise KSExtensionError(f"base generator {name} must stay closed")
        if name not in diff:
            raise KSExtensionError(f"unknown fibre generator {name!r}")
        if pert.algebra != total:
            raise KSExtensionError(f"perturbation of {name} is not over the total algebra")
        want = total.generator(name).degree + 1
        for mono, _ in pert:
            if mono[wi] == 0:
                raise KSExtensionError(
                    f"perturbation term {total.format_monomial(mono)} of {name} does not contain {w.name}")
            if total.mono_degree(mono) != want:
                raise KSExtensionError(
                    f"perturbation term {total.format_monomial(mono)} of {name} has degree "
                    f"{total.mono_degree(mono)}, expected {want}")
        diff[name] = diff[name] + pert
    result = MinimalModel(total, diff)
    report = validate(result)
    if not report.ok:
        kinds = report.kinds()
        what = "total differential does not square to zero" if "d-squared" in kinds else \
            "total algebra is not minimal" if "minimality" in kinds else "degree mismatch"
        raise KSExtensionError(f"{what}:\n{report.format()}")
    return result


def restrict_to_fibre(total: MinimalModel, base: str) -> MinimalModel:
    """Delete the base generator and every differential term containing it."""
    alg = total.algebra
    wi = alg.index(base)
    fibre = GradedAlgebra(g for g in alg.generators if g.name != base)
    diff = {}
    for g, dv in zip(alg.generators, total.differential_values):
        if g.name == base:
            continue
        kept = {}
        for mono, c in dv.terms.items():
            if mono[wi] == 0:
                kept[mono[:wi] + mono[wi + 1:]] = c
        diff[g.name] = Polynomial(fibre, kept)
    return MinimalModel(fibre, diff)


@dataclass
class Certificate:
    passed: bool
    base: str
    degree: int
    cycle_dimension: int
    base_boundary: Derivation  # D(w*)
    witness: Optional[Derivation] = None

    def format(self) -> str:
        head = "PASS" if self.passed else "FAIL"
        lines = [f"{head}: degree-{self.degree} cycles of Der with nonzero value on {self.base}",
                 f"  D({self.base}*) = {self.base_boundary}",
                 f"  cycle space dimension: {self.cycle_dimension}"]
        if self.witness is not None:
            lines.append(f"  witness cycle: {self.witness}")
        return "\n".join(lines)


def prop23_check(total: MinimalModel, w: Union[str, Generator]) -> Certificate:
    """Decide whether every degree-``|w|`` cycle of ``Der(total)`` vanishes on ``w``."""
    alg = total.algebra
    name = w.name if isinstance(w, Generator) else w
    try:
        wi = alg.index(name)
    except ValueError:
        raise KSExtensionError(f"{name!r} is not a generator of the total algebra") from None
    n = alg.degrees[wi]
    cx = DerComplex(total)
    star = DerBasisElement(wi, alg.one)
    col = cx.basis(n).index(star)
    mat = cx.matrix(n)
    w_star = Derivation.basis_element(alg, star)
    boundary = cx.D(w_star)
    cycles = kernel_basis(mat)
    witness = None
    if not boundary:
        witness = w_star
    else:
        for vec in cycles:
            if vec[col]:
                witness = cx.derivation(n, vec)
                break
    return Certificate(witness is None, name, n, len(cycles), boundary, witness)
