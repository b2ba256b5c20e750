"""Random two-stage minimal models for property testing.

Stage one is a handful of closed generators.  Stage two generators have
differentials that are random decomposable polynomials in stage one, so
``d² = 0`` and minimality hold by construction.  Every degree is at least 2.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Optional

from .gca import GradedAlgebra, Polynomial
from .model import MinimalModel


def random_two_stage(rng: random.Random, max_first: int = 3, max_second: int = 2,
                     max_degree: int = 7) -> MinimalModel:
    first = [(f"a{i}", rng.randint(2, 4)) for i in range(rng.randint(1, max_first))]
    base = GradedAlgebra.from_degrees(first)
    second = []
    diffs: dict[str, list[tuple[tuple, int]]] = {}
    for j in range(rng.randint(0, max_second)):
        name = f"b{j}"
        deg = rng.randint(3, max_degree)
        candidates = [mono for mono in base.basis_of_degree(deg + 1) if base.mono_length(mono) >= 2]
        terms = []
        if candidates and rng.random() < 0.85:
            for mono in rng.sample(candidates, k=min(len(candidates), rng.randint(1, 2))):
                terms.append((mono, rng.choice([-2, -1, 1, 1, 2])))
        second.append((name, deg))
        diffs[name] = terms

    algebra = GradedAlgebra.from_degrees(first + second)
    differential = {}
    for name, terms in diffs.items():
        poly = Polynomial.zero(algebra)
        for mono, c in terms:
            seq = [i for i, e in enumerate(mono) for _ in range(e)]
            poly = poly + Polynomial.word(algebra, [base.generators[i].name for i in seq], Fraction(c))
        differential[name] = poly
    return MinimalModel(algebra, differential)


def random_models(count: int, seed: Optional[int] = 0, **kwargs) -> list[MinimalModel]:
    rng = random.Random(seed)
    return [random_two_stage(rng, **kwargs) for _ in range(count)]
