from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bautq import catalog
from bautq.model import MinimalModel
from bautq.random_models import random_models
from bautq.weights import (Infeasible, PreconditionError, WeightSystem, check_weight_system,
                           find_positive_weights, fourier_motzkin_feasible, lemma44_verify,
                           weight_constraints)


def test_hspace_weights():
    ws = find_positive_weights(catalog.hspace_k5_k8())
    assert ws.as_integers() == {"x": 1, "y": 1, "z": 2, "w": 3}


@pytest.mark.parametrize("m", random_models(40, seed=3), ids=lambda m: repr(m)[:40])
def test_found_weights_pass_the_checker(m):
    res = find_positive_weights(m)
    if isinstance(res, Infeasible):
        # recheck the witness: the residual is one-signed and nonzero
        vals = set(res.contradiction.residual.values())
        assert vals and (all(v > 0 for v in vals) or all(v < 0 for v in vals))
        return
    assert all(v > 0 for v in res.weights.values())
    assert check_weight_system(m, res)


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=1, max_value=9))
def test_weights_survive_scaling(k):
    m = catalog.sphere_pair_model(3)
    ws = find_positive_weights(m)
    assert check_weight_system(m, ws.scaled(Fraction(k, 2)))


def test_checker_rejects_wrong_weights():
    m = catalog.hspace_k5_k8()
    assert not check_weight_system(m, {"x": 1, "y": 2, "z": 2, "w": 3})
    with pytest.raises(KeyError):
        check_weight_system(m, {"x": 1})


def test_non_universal_model_chain():
    res = find_positive_weights(catalog.non_universal_model())
    assert isinstance(res, Infeasible) and not res
    text = res.format()
    assert "wt(a) = wt(b) = wt(c) = r" in text
    assert "wt(phi) = wt(psi) = 3r" in text
    assert res.lines()[-1].startswith("d(w): wt(a*phi) = 4r but wt(b^3) = 3r")
    assert res.substitution()["phi"] == {"a": 3}


def test_printed_variant_is_also_infeasible():
    assert isinstance(find_positive_weights(catalog.non_universal_model(printed_signs=True)), Infeasible)


def test_constraints_contain_defining_equations():
    system = weight_constraints(catalog.hspace_k5_k8())
    kinds = {(e.generator, e.kind) for e in system.equations}
    assert ("z", "defining") in kinds and ("w", "defining") in kinds


def test_closed_generators_get_free_weights():
    ws = find_positive_weights(MinimalModel.build([("a", 2), ("b", 4)]))
    assert ws.as_integers() == {"a": 1, "b": 1}


def test_fourier_motzkin():
    assert fourier_motzkin_feasible([({"x": 1, "y": -1}, 0), ({"y": 1}, 1)])
    assert not fourier_motzkin_feasible([({"x": 1}, 2), ({"x": -1}, -1)])


def test_lemma44_on_shallow_models():
    for m in (catalog.s5_model(), catalog.quadratic_pairing_model(3), catalog.sphere_pair_model(1),
              catalog.rank_one_quadratic(3)):
        report = lemma44_verify(m)
        assert report.ok, report.format()
    with pytest.raises(PreconditionError):
        lemma44_verify(catalog.hspace_k5_k8())


def test_weight_system_integers():
    ws = WeightSystem({"a": Fraction(1, 2), "b": Fraction(3, 4)})
    assert ws.as_integers() == {"a": 2, "b": 3}
