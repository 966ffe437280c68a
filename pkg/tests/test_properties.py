"""Property-based checks over the engine invariants."""

import random

from hypothesis import given, settings
from hypothesis import strategies as st

from varkit import (
    Configuration,
    new_session,
    parse_model,
    prune_by_area,
    requires_closure,
    write_model,
)

from support import booking_model

MODEL = booking_model()
ALL_REFS = tuple(
    ref
    for v in MODEL.variants
    for ref in (v.id, *[vv.id for vv in v.values])
)

ref_sets = st.frozensets(st.sampled_from(ALL_REFS), max_size=6)


@given(seed=ref_sets)
def test_closure_is_extensive(seed):
    assert seed <= requires_closure(MODEL, seed)


@given(seed=ref_sets)
def test_closure_is_idempotent(seed):
    closed = requires_closure(MODEL, seed)
    assert requires_closure(MODEL, closed) == closed


@given(seed=ref_sets, extra=st.sampled_from(ALL_REFS))
def test_closure_is_monotone(seed, extra):
    assert requires_closure(MODEL, seed) <= requires_closure(MODEL, seed | {extra})


@given(model_seed=st.integers(min_value=0, max_value=10_000))
@settings(max_examples=150, deadline=None)
def test_round_trip_identity_on_generated_models(model_seed):
    from support import random_model

    model = random_model(random.Random(model_seed))
    assert parse_model(write_model(model)) == model


@given(model_seed=st.integers(min_value=0, max_value=10_000))
@settings(max_examples=80, deadline=None)
def test_prune_is_idempotent_on_generated_models(model_seed):
    from support import random_model

    model = random_model(random.Random(model_seed))
    for area in model.areas:
        once, _ = prune_by_area(model, area)
        twice, _ = prune_by_area(once, area)
        assert twice == once


ANSWER_POOL = (
    ("V1", ("V1.2",)),
    ("V2", ("V2.3", "V2.4")),
    ("V3", ("V3.1",)),
    ("V4", ("V4.2",)),
    ("V5", ()),
)


@given(order=st.permutations(ANSWER_POOL))
@settings(deadline=None)
def test_answer_order_never_changes_the_outcome(order):
    reference = None
    s = new_session(MODEL, "Non Academic")
    for variant_id, values in order:
        out = s.answer(variant_id, values)
        assert not out.rejected
    snapshot = (dict(s.value_states), dict(s.variant_states))
    baseline = new_session(MODEL, "Non Academic")
    for variant_id, values in ANSWER_POOL:
        baseline.answer(variant_id, values)
    reference = (dict(baseline.value_states), dict(baseline.variant_states))
    assert snapshot == reference


@given(
    order=st.permutations(ANSWER_POOL),
    retracted=st.sampled_from([entry[0] for entry in ANSWER_POOL]),
)
@settings(deadline=None)
def test_retraction_commutes_with_answer_order(order, retracted):
    s = new_session(MODEL, "Non Academic")
    for variant_id, values in order:
        s.answer(variant_id, values)
    s.retract(retracted)
    reference = new_session(MODEL, "Non Academic")
    for variant_id, values in ANSWER_POOL:
        if variant_id != retracted:
            reference.answer(variant_id, values)
    assert dict(s.value_states) == dict(reference.value_states)
    assert dict(s.variant_states) == dict(reference.variant_states)


@given(model_seed=st.integers(min_value=0, max_value=10_000))
@settings(max_examples=60, deadline=None)
def test_complete_sessions_always_satisfy_direct_requires(model_seed):
    from support import random_model

    rng = random.Random(model_seed)
    model = random_model(rng)
    from varkit import validate_model

    if not validate_model(model).ok:
        return
    for area in model.areas:
        s = new_session(model, area)
        for decision in s.pending_decisions():
            if decision.blocked:
                continue
            variant = s.model.variant(decision.row.trace)
            ids = [vv.id for vv in variant.values]
            pick = rng.sample(ids, rng.randint(1, len(ids)))
            if variant.relation.value in ("alternative", "none"):
                pick = pick[:1]
            s.answer(decision.row.trace, pick)
        config = s.current_configuration()
        if not isinstance(config, Configuration):
            continue
        chosen = config.as_dict()
        for variant_id in chosen:
            for ref in s.model.variant(variant_id).requires:
                owner = ref.split(".")[0] if "." in ref else ref
                assert owner in chosen
                if "." in ref:
                    assert ref in chosen[owner]
