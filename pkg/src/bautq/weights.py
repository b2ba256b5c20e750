"""Positive weight systems diagonal in the given generators.

A weight system assigns each generator a positive rational so that every
``d(v)`` is weight-homogeneous of weight ``wt(v)``.  Existence is a linear
feasibility question: equalities from the differential, strict positivity on
every variable.  Equalities are eliminated by substitution (recording each
step so an infeasibility verdict comes with a readable derivation), and what
remains is decided by Fourier–Motzkin elimination.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Mapping, Optional, Union

from .dercomplex import DerBasisElement, DerComplex, Derivation, bracket
from .gca import Monomial
from .model import MinimalModel

LinearForm = dict  # variable name -> Fraction, zero entries dropped


def _clean(form: Mapping[str, Fraction]) -> LinearForm:
    return {k: Fraction(v) for k, v in form.items() if v}


def _add(a: Mapping, b: Mapping, scale=1) -> LinearForm:
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + scale * v
    return _clean(out)


@dataclass(frozen=True)
class WeightEquation:
    """``weight(lhs) = weight(rhs)`` read off the differential of ``generator``.

    ``lhs`` and ``rhs`` are monomials (the generator itself, for the defining
    equation ``wt(v) = wt(m₁)``).
    """

    generator: str
    lhs: Monomial
    rhs: Monomial
    kind: str  # "homogeneity" or "defining"

    def form(self, names: list[str]) -> LinearForm:
        """``wt(lhs) - wt(rhs)`` as a linear form in the generator weights."""
        out: dict[str, Fraction] = {}
        for mono, s in ((self.lhs, 1), (self.rhs, -1)):
            for i, e in enumerate(mono):
                if e:
                    out[names[i]] = out.get(names[i], 0) + s * e
        return _clean(out)


@dataclass
class WeightConstraintSystem:
    model: MinimalModel
    variables: list[str]
    equations: list[WeightEquation]

    def forms(self) -> list[LinearForm]:
        return [eq.form(self.variables) for eq in self.equations]

    def describe(self, eq: WeightEquation) -> str:
        alg = self.model.algebra
        return f"d({eq.generator}): wt({alg.format_monomial(eq.lhs)}) = wt({alg.format_monomial(eq.rhs)})"


def weight_constraints(m: MinimalModel) -> WeightConstraintSystem:
    """Equalities forced on generator weights by homogeneity of each ``d(v)``.

    Only the monomial supports of the differential are used, so this does not
    require ``m`` to be valid.
    """
    alg = m.algebra
    eqs = []
    for g, dv in zip(alg.generators, m.differential_values):
        monos = [mono for mono, _ in dv]
        if not monos:
            continue
        first = monos[0]
        eqs.extend(WeightEquation(g.name, first, other, "homogeneity") for other in monos[1:])
        eqs.append(WeightEquation(g.name, alg.unit(g.name), first, "defining"))
    return WeightConstraintSystem(m, alg.names(), eqs)


@dataclass
class WeightSystem:
    weights: dict[str, Fraction]

    def __getitem__(self, name: str) -> Fraction:
        return self.weights[name]

    def scaled(self, factor) -> "WeightSystem":
        return WeightSystem({k: v * factor for k, v in self.weights.items()})

    def as_integers(self) -> dict[str, int]:
        """The proportional system of coprime positive integers."""
        return {k: int(v) for k, v in _integral(self.weights).items()}


def check_weight_system(m: MinimalModel, ws: Union[WeightSystem, Mapping[str, object]]) -> bool:
    weights = ws.weights if isinstance(ws, WeightSystem) else ws
    alg = m.algebra
    missing = [n for n in alg.names() if n not in weights]
    if missing:
        raise KeyError(f"no weight for generator(s): {', '.join(missing)}")
    w = [Fraction(weights[n]) for n in alg.names()]
    if any(x <= 0 for x in w):
        return False
    for i, dv in enumerate(m.differential_values):
        for mono, _ in dv:
            if sum(e * x for e, x in zip(mono, w)) != w[i]:
                return False
    return True


@dataclass
class WitnessStep:
    """``wt(variable) = expression``, derived from ``equation`` and earlier steps."""

    variable: str
    expression: LinearForm
    equation: WeightEquation


@dataclass
class Contradiction:
    equation: Optional[WeightEquation]
    residual: LinearForm  # equation reduced by all steps; one-signed, hence never 0
    lhs: LinearForm
    rhs: LinearForm
    message: str


@dataclass
class Infeasible:
    system: WeightConstraintSystem
    steps: list[WitnessStep]
    contradiction: Contradiction
    parameters: list[str] = field(default_factory=list)

    def __bool__(self):
        return False

    def substitution(self) -> dict[str, LinearForm]:
        sub = {p: {p: Fraction(1)} for p in self.parameters}
        for s in self.steps:
            sub[s.variable] = s.expression
        return sub

    def lines(self) -> list[str]:
        names = _param_names(self.parameters)
        out = []
        for s in self.steps:
            out.append(f"{self.system.describe(s.equation)}  =>  wt({s.variable}) = "
                       f"{_render(s.expression, names)}")
        out.append(_summary(self.substitution(), self.system.variables, names))
        out.append(self.contradiction.message)
        return out

    def format(self) -> str:
        head = "INFEASIBLE: no generator-diagonal positive weight system exists"
        return "\n".join([head] + ["  " + line for line in self.lines()])


def _param_names(params: list[str]) -> dict[str, str]:
    letters = ["r", "s", "t"]
    return {p: (letters[i] if i < len(letters) else f"t{i}") for i, p in enumerate(params)}


def _render(form: Mapping[str, Fraction], names: Mapping[str, str]) -> str:
    if not form:
        return "0"
    parts = []
    for i, (k, c) in enumerate(sorted(form.items(), key=lambda kv: list(names).index(kv[0])
                                      if kv[0] in names else 0)):
        label = names.get(k, f"wt({k})")
        neg = c < 0
        a = -c if neg else c
        text = label if a == 1 else f"{a}{label}"
        parts.append(("-" if neg else "") + text if i == 0 else (" - " if neg else " + ") + text)
    return "".join(parts)


def _summary(sub: Mapping[str, LinearForm], order: list[str], names) -> str:
    groups: dict[str, list[str]] = {}
    for v in order:
        if v in sub:
            groups.setdefault(_render(sub[v], names), []).append(v)
    chunks = [" = ".join(f"wt({v})" for v in vs) + f" = {expr}" for expr, vs in groups.items()]
    return ", ".join(chunks)


def _substitute(form: Mapping[str, Fraction], sub: Mapping[str, LinearForm]) -> LinearForm:
    out: dict[str, Fraction] = {}
    for k, c in form.items():
        out = _add(out, sub.get(k, {k: Fraction(1)}), c)
    return out


def _one_signed(form: LinearForm) -> bool:
    return bool(form) and (all(c > 0 for c in form.values()) or all(c < 0 for c in form.values()))


def find_positive_weights(m: MinimalModel) -> Union[WeightSystem, Infeasible]:
    """A positive integer weight system, or an :class:`Infeasible` certificate."""
    system = weight_constraints(m)
    alg = m.algebra
    order = {name: i for i, name in enumerate(system.variables)}
    pending = [(eq, eq.form(system.variables)) for eq in _all_pairs(system)]
    sub: dict[str, LinearForm] = {}
    steps: list[WitnessStep] = []

    def free_params():
        used = set()
        for expr in sub.values():
            used.update(expr)
        return sorted(used, key=order.get)

    def level(eq: WeightEquation) -> int:
        return max(alg.degrees[i] for mono in (eq.lhs, eq.rhs) for i, e in enumerate(mono) if e)

    index = {id(eq): k for k, (eq, _) in enumerate(pending)}
    while pending:
        reduced = [(eq, _substitute(f, sub)) for eq, f in pending]
        reduced = [(eq, f) for eq, f in reduced if f]
        if not reduced:
            break
        mixed = [(eq, f) for eq, f in reduced if not _one_signed(f)]
        clashes = [(eq, f) for eq, f in reduced if _one_signed(f)]
        if clashes:
            eq, f = min(clashes, key=lambda ef: (alg.generator(ef[0].generator).degree, index[id(ef[0])]))
            # settle every weight below the clashing generator first
            if not any(level(e) < alg.generator(eq.generator).degree for e, _ in mixed):
                params = free_params()
                return Infeasible(system, steps, _clash(system, eq, f, sub, params), params)
        # lowest generator degree first; at each level pin new weights before
        # testing cross terms
        eq, f = min(mixed, key=lambda ef: (level(ef[0]), ef[0].kind != "defining", len(ef[1]),
                                           index[id(ef[0])]))
        pending = [(e, g) for e, g in reduced if e is not eq]
        var = max(f, key=lambda v: (alg.generator(v).degree, order[v]))
        coef = f[var]
        expr = _clean({k: -c / coef for k, c in f.items() if k != var})
        sub = {k: _substitute(e, {var: expr}) for k, e in sub.items()}
        sub[var] = expr
        steps.append(WitnessStep(var, expr, eq))

    params = [v for v in system.variables if v not in sub]
    full = {v: sub.get(v, {v: Fraction(1)}) for v in system.variables}
    values = _positive_point(params, [full[v] for v in system.variables])
    if values is None:
        residual = {}
        contra = Contradiction(None, residual, {}, {},
                               "the positivity constraints on the remaining parameters are infeasible")
        return Infeasible(system, steps, contra, params)
    weights = {v: sum((c * values[p] for p, c in full[v].items()), Fraction(0)) for v in system.variables}
    return WeightSystem(_integral(weights))


def _all_pairs(system: WeightConstraintSystem) -> list[WeightEquation]:
    """Every pairwise homogeneity equation within each ``d(v)``, plus the defining ones.

    These are consequences of the published system; using all of them lets the
    derivation quote the most direct pair.
    """
    alg = system.model.algebra
    out = []
    for g, dv in zip(alg.generators, system.model.differential_values):
        monos = [mono for mono, _ in dv]
        for a in range(len(monos)):
            for b in range(a + 1, len(monos)):
                out.append(WeightEquation(g.name, monos[a], monos[b], "homogeneity"))
        if monos:
            out.append(WeightEquation(g.name, alg.unit(g.name), monos[0], "defining"))
    return out


def _clash(system, eq: WeightEquation, residual: LinearForm, sub, params) -> Contradiction:
    names = system.variables
    lhs = _substitute(WeightEquation(eq.generator, eq.lhs, system.model.algebra.one, "x").form(names), sub)
    rhs = _substitute(WeightEquation(eq.generator, eq.rhs, system.model.algebra.one, "x").form(names), sub)
    pn = _param_names(params)
    alg = system.model.algebra
    msg = (f"d({eq.generator}): wt({alg.format_monomial(eq.lhs)}) = {_render(lhs, pn)} but "
           f"wt({alg.format_monomial(eq.rhs)}) = {_render(rhs, pn)}; equal only if "
           f"{_render(residual, pn)} = 0, impossible for positive weights")
    return Contradiction(eq, residual, lhs, rhs, msg)


def _integral(weights: Mapping[str, Fraction]) -> dict[str, Fraction]:
    den = lcm(*(w.denominator for w in weights.values())) if weights else 1
    ints = [int(w * den) for w in weights.values()]
    g = gcd(*ints) if ints else 1
    return {k: Fraction(int(w * den), g) for k, w in weights.items()}


# -- Fourier–Motzkin ---------------------------------------------------------

def _positive_point(params: list[str], exprs: list[LinearForm]) -> Optional[dict[str, Fraction]]:
    """A point where every expression is >= 1 (equivalently > 0, by scaling), or None.

    Each constraint is ``(coeffs, const)`` meaning ``coeffs·p >= const``.
    """
    constraints = [(dict(e), Fraction(1)) for e in exprs]
    stages = []
    for p in reversed(params):
        stages.append((p, constraints))
        lower, upper, rest = [], [], []
        for coeffs, const in constraints:
            c = coeffs.get(p, 0)
            (lower if c > 0 else upper if c < 0 else rest).append((coeffs, const))
        for lc, lk in lower:
            for uc, uk in upper:
                a, b = lc[p], -uc[p]
                combo = _add(_clean({k: v * b for k, v in lc.items()}), _clean({k: v * a for k, v in uc.items()}))
                combo.pop(p, None)
                rest.append((combo, lk * b + uk * a))
        constraints = rest
    if any(not coeffs and const > 0 for coeffs, const in constraints):
        return None
    values: dict[str, Fraction] = {}
    for p, cons in reversed(stages):
        lo, hi = None, None
        for coeffs, const in cons:
            c = coeffs.get(p, 0)
            if not c:
                continue
            rest = const - sum(v * values[k] for k, v in coeffs.items() if k != p)
            bound = rest / c
            if c > 0:
                lo = bound if lo is None else max(lo, bound)
            else:
                hi = bound if hi is None else min(hi, bound)
        values[p] = lo if lo is not None else (hi if hi is not None else Fraction(1))
    return values


def fourier_motzkin_feasible(constraints: list[tuple[Mapping[str, object], object]]) -> bool:
    """Decide ``∃p: coeffs·p >= const`` for every constraint, by elimination."""
    cons = [(_clean(c), Fraction(k)) for c, k in constraints]
    variables = sorted({v for c, _ in cons for v in c})
    for p in variables:
        lower, upper, rest = [], [], []
        for coeffs, const in cons:
            c = coeffs.get(p, 0)
            (lower if c > 0 else upper if c < 0 else rest).append((coeffs, const))
        for lc, lk in lower:
            for uc, uk in upper:
                a, b = lc[p], -uc[p]
                combo = _add(_clean({k: v * b for k, v in lc.items()}), _clean({k: v * a for k, v in uc.items()}))
                combo.pop(p, None)
                rest.append((combo, lk * b + uk * a))
        cons = rest
    return all(const <= 0 for coeffs, const in cons if not coeffs)


# -- weights on the derivation algebra --------------------------------------

SHALLOW_BLOCK_WEIGHTS = {(2, 0): 1, (3, 2): 1, (4, 3): 1, (3, 0): 2, (4, 2): 2, (4, 0): 3}


@dataclass
class VerificationReport:
    ok: bool
    block_weights: dict[str, int]
    checked_differentials: int
    checked_brackets: int
    violations: list[str] = field(default_factory=list)

    def format(self) -> str:
        head = "verified" if self.ok else "FAILED"
        lines = [f"{head}: weight decomposition of Der "
                 f"({self.checked_differentials} differentials, {self.checked_brackets} brackets checked)"]
        lines += [f"  {k}: weight {v}" for k, v in self.block_weights.items()]
        lines += [f"  violation: {v}" for v in self.violations]
        return "\n".join(lines)


class PreconditionError(ValueError):
    pass


def derivation_block_weight(m: MinimalModel, elem: DerBasisElement) -> int:
    alg = m.algebra
    key = (alg.degrees[elem.source], alg.mono_degree(elem.target))
    return SHALLOW_BLOCK_WEIGHTS[key]


def lemma44_verify(m: MinimalModel) -> VerificationReport:
    """Check that fixed block weights make ``Der`` of a degrees-{2,3,4} model weight-graded.

    Blocks ``V₂*``, ``(V₃,V₂)``, ``(V₄,V₃)`` get weight 1, ``V₃*`` and
    ``(V₄,V₂)`` weight 2 and ``V₄*`` weight 3.  ``D`` must preserve weight
    and every nonzero bracket of basis elements must add weights.
    """
    alg = m.algebra
    bad = sorted({g.degree for g in alg.generators} - {2, 3, 4})
    if bad:
        raise PreconditionError(f"generators only in degrees 2, 3, 4 are allowed; found degree(s) {bad}")
    m.require_valid()
    cx = DerComplex(m)
    elems = [e for n in range(1, cx.top_degree + 1) for e in cx.basis(n)]
    violations = []
    block_names = {(2, 0): "V2*", (3, 2): "(V3,V2)", (4, 3): "(V4,V3)",
                   (3, 0): "V3*", (4, 2): "(V4,V2)", (4, 0): "V4*"}
    present = {}
    for e in elems:
        key = (alg.degrees[e.source], alg.mono_degree(e.target))
        if key not in SHALLOW_BLOCK_WEIGHTS:
            violations.append(f"{e.label(alg)} lies outside the six blocks")
            continue
        present[block_names[key]] = SHALLOW_BLOCK_WEIGHTS[key]
    if violations:
        return VerificationReport(False, present, 0, 0, violations)

    def weight(e):
        return derivation_block_weight(m, e)

    n_diff = 0
    for e in elems:
        if e.degree(alg) < 2:
            continue  # D lands in degree 0, outside the weighted algebra
        n_diff += 1
        image = cx.D(Derivation.basis_element(alg, e))
        for f in image.coords():
            if weight(f) != weight(e):
                violations.append(f"D({e.label(alg)}) has component {f.label(alg)} "
                                  f"of weight {weight(f)} != {weight(e)}")
    n_br = 0
    for i, e in enumerate(elems):
        for f in elems[i:]:
            br = bracket(Derivation.basis_element(alg, e), Derivation.basis_element(alg, f))
            if not br:
                continue
            n_br += 1
            for g in br.coords():
                if weight(g) != weight(e) + weight(f):
                    violations.append(f"[{e.label(alg)}, {f.label(alg)}] has component "
                                      f"{g.label(alg)} of weight {weight(g)} != {weight(e) + weight(f)}")
    ordered = {k: present[k] for k in block_names.values() if k in present}
    return VerificationReport(not violations, ordered, n_diff, n_br, violations)
