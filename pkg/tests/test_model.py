import random

import pytest

from bautq import catalog
from bautq.gca import Polynomial
from bautq.model import InvalidModelError, MinimalModel, homotopy_ranks, top_generators, validate

from conftest import FIXTURE_FILES, valid_fixture_models


def test_hspace_model_is_valid():
    report = validate(catalog.hspace_k5_k8())
    assert report.ok
    assert report.format() == "valid"


def test_degree_violation_reported():
    m = MinimalModel.build([("x", 3), ("y", 3), ("z", 4)], {"z": "x*y"})
    report = validate(m)
    assert report.kinds() == {"degree"}
    assert "expected 5" in report.violations[0].message


def test_linear_term_breaks_minimality():
    m = MinimalModel.build([("a", 2), ("x", 3)], {"x": "a^2 + a"})
    kinds = validate(m).kinds()
    assert "minimality" in kinds


def test_d_squared_violation():
    m = catalog.non_universal_model(printed_signs=True)
    report = validate(m)
    assert report.kinds() == {"d-squared"}
    assert report.violations[0].generator == "w"


def test_degree_one_generators_only_warn():
    m = catalog.uv_model(2, 0)
    report = validate(m)
    assert report.ok
    assert report.warnings and "nilpotency" in report.warnings[0]


def test_require_valid_raises_with_report():
    with pytest.raises(InvalidModelError) as info:
        catalog.k2_k4_k7_model(q=1).require_valid()
    assert info.value.report.kinds() == {"degree"}


def test_homotopy_ranks_and_top():
    m = catalog.sphere_pair_model(3)
    assert homotopy_ranks(m) == {4: 2, 6: 1, 9: 2, 12: 1}
    assert top_generators(m) == (12, 1)
    assert top_generators(MinimalModel.build([])) == (0, 0)


def _flip_sign(model: MinimalModel, rng: random.Random) -> MinimalModel:
    nonzero = [g.name for g, p in zip(model.generators, model.differential_values) if p]
    name = rng.choice(nonzero)
    poly = model.d_of(name)
    mono = rng.choice(sorted(poly.terms, key=model.algebra.mono_key))
    terms = dict(poly.terms)
    terms[mono] = -terms[mono]
    diff = {g.name: p for g, p in zip(model.generators, model.differential_values)}
    diff[name] = Polynomial(model.algebra, terms)
    return MinimalModel(model.algebra, diff)


def _shift_degree(model: MinimalModel, rng: random.Random) -> MinimalModel:
    gens = [(g.name, g.degree) for g in model.generators]
    texts = {g.name: p.format() for g, p in zip(model.generators, model.differential_values) if p}
    i = rng.choice([i for i, (n, _) in enumerate(gens) if n in texts])
    name, deg = gens[i]
    gens[i] = (name, deg + 1 if deg == 1 else deg + rng.choice([-1, 1]))
    return MinimalModel.build(gens, texts)


@pytest.mark.parametrize("name,model", valid_fixture_models())
def test_fixture_valid_and_degree_corruptions_caught(name, model):
    assert validate(model).ok
    if not any(model.differential_values):
        return
    rng = random.Random(name)
    for _ in range(6):
        assert not validate(_shift_degree(model, rng)).ok


@pytest.mark.parametrize("name,model", valid_fixture_models())
def test_sign_flips_caught_whenever_they_break_d_squared(name, model):
    # Flipping the only term of dz = xy gives an isomorphic, perfectly valid model,
    # so a sign corruption is only detectable when it destroys d² = 0.
    if not any(model.differential_values):
        return
    rng = random.Random(name)
    for _ in range(6):
        bad = _flip_sign(model, rng)
        broken = any(bad.d(p) for p in bad.differential_values)
        assert validate(bad).ok == (not broken)


def test_sign_flip_detected_on_six_generator_model():
    m = catalog.sphere_pair_model(1)
    bad = MinimalModel.build([(g.name, g.degree) for g in m.generators],
                             {"y": "u1*v1 + u2*v2", "u1": "v2*w", "u2": "v1*w"})
    assert validate(bad).kinds() == {"d-squared"}


def test_fixture_count_sanity():
    assert len(FIXTURE_FILES) >= 15
