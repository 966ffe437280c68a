"""Shared helpers for the test suite.

Provides a seeded generator for small valid variability models and a set of
single-fault mutations of the bundled hall booking model, one per validation
error code.
"""

from __future__ import annotations

import random
from dataclasses import replace

from varkit import ALL, RelationKind, VariabilityModel, Variant, VariantValue
from varkit.data import VARIANT_MODEL, load
from varkit.io import parse_model

AREA_POOL = ("North", "South", "East")


def booking_model() -> VariabilityModel:
    return parse_model(load(VARIANT_MODEL))


def random_model(rng: random.Random, max_values: int = 12) -> VariabilityModel:
    """Build a small valid model with a seeded RNG.

    Requires edges only point at earlier variants, so generated models are
    acyclic by construction; every other validation rule is respected too.
    """
    n_areas = rng.randint(1, len(AREA_POOL))
    areas = AREA_POOL[:n_areas]
    variants: list[Variant] = []
    total_values = 0
    n_variants = rng.randint(1, 5)
    for i in range(1, n_variants + 1):
        relation = rng.choice(
            (RelationKind.ALTERNATIVE, RelationKind.OR, RelationKind.NONE)
        )
        n_values = 1 if relation is RelationKind.NONE else rng.randint(2, 4)
        if total_values + n_values > max_values:
            break
        total_values += n_values
        values = tuple(
            VariantValue(id=f"V{i}.{j}", name=f"Option {i}.{j}")
            for j in range(1, n_values + 1)
        )
        if rng.random() < 0.4:
            variant_areas = (ALL,)
        else:
            variant_areas = tuple(
                rng.sample(areas, rng.randint(1, len(areas)))
            )
        requires: list[str] = []
        for target in variants:
            if rng.random() < 0.25:
                if rng.random() < 0.5:
                    requires.append(target.id)
                else:
                    requires.append(rng.choice(target.values).id)
        variants.append(
            Variant(
                id=f"V{i}",
                name=f"Feature {i}",
                relation=relation,
                values=values,
                areas=variant_areas,
                requires=tuple(requires),
                mandatory=rng.random() < 0.2,
            )
        )
    return VariabilityModel(name="Generated", areas=areas, variants=tuple(variants))


def _swap_variant(model: VariabilityModel, variant_id: str, new: Variant) -> VariabilityModel:
    variants = tuple(new if v.id == variant_id else v for v in model.variants)
    return replace(model, variants=variants)


def _mutate_dup_id(model: VariabilityModel) -> VariabilityModel:
    v4 = model.variant("V4")
    values = tuple(
        replace(val, id="V4.1") if val.id == "V4.2" else val for val in v4.values
    )
    return _swap_variant(model, "V4", replace(v4, values=values))


def _mutate_bad_id(model: VariabilityModel) -> VariabilityModel:
    v4 = model.variant("V4")
    values = tuple(
        replace(val, id="V4.x") if val.id == "V4.2" else val for val in v4.values
    )
    return _swap_variant(model, "V4", replace(v4, values=values))


def _mutate_dangling(model: VariabilityModel) -> VariabilityModel:
    v5 = model.variant("V5")
    return _swap_variant(model, "V5", replace(v5, requires=v5.requires + ("V9.1",)))


def _mutate_self_ref(model: VariabilityModel) -> VariabilityModel:
    v5 = model.variant("V5")
    return _swap_variant(model, "V5", replace(v5, requires=v5.requires + ("V5.1",)))


def _mutate_cycle(model: VariabilityModel) -> VariabilityModel:
    v1 = model.variant("V1")
    return _swap_variant(model, "V1", replace(v1, requires=("V3.1",)))


def _mutate_arity(model: VariabilityModel) -> VariabilityModel:
    v4 = model.variant("V4")
    return _swap_variant(model, "V4", replace(v4, relation=RelationKind.NONE))


def _mutate_unknown_area(model: VariabilityModel) -> VariabilityModel:
    v2 = model.variant("V2")
    return _swap_variant(model, "V2", replace(v2, areas=("Commercial",)))


def _mutate_reserved_area(model: VariabilityModel) -> VariabilityModel:
    return replace(model, areas=model.areas + ("ALL",))


# one single-fault mutation per validation error code
MUTATIONS = {
    "DUP_ID": _mutate_dup_id,
    "BAD_ID_FORMAT": _mutate_bad_id,
    "DANGLING_REF": _mutate_dangling,
    "SELF_REF": _mutate_self_ref,
    "CYCLE": _mutate_cycle,
    "ARITY": _mutate_arity,
    "UNKNOWN_AREA": _mutate_unknown_area,
    "RESERVED_AREA": _mutate_reserved_area,
}
