"""Exhaustive enumeration of every complete configuration.

This is the reference implementation the session engine is tested against:
it generates all assignments combinatorially and filters them with direct
checks of the configuration invariants, sharing no propagation logic with
:mod:`varkit.session`.  Usable only on small pruned scopes by design.
"""

from __future__ import annotations

from itertools import combinations, product

from .engine import prune_by_area
from .errors import ScopeTooLargeError
from .model import RelationKind, VariabilityModel, owner_of
from .session import Configuration

#: Enumeration refuses pruned scopes with more values than this.
MAX_ORACLE_VALUES = 24


def enumerate_configurations(model: VariabilityModel, area: str) -> list[Configuration]:
    """All complete, consistent configurations of ``model`` for ``area``,
    in a deterministic order.  Raises :class:`ScopeTooLargeError` when the
    pruned scope holds more than ``MAX_ORACLE_VALUES`` values."""
    pruned, _ = prune_by_area(model, area)
    total = sum(len(v.values) for v in pruned.variants)
    if total > MAX_ORACLE_VALUES:
        raise ScopeTooLargeError(
            f"pruned scope has {total} values; enumeration is capped at {MAX_ORACLE_VALUES}",
            where=area,
        )

    per_variant: list[list[tuple[str, ...] | None]] = []
    for v in pruned.variants:
        ids = v.value_ids()
        options: list[tuple[str, ...] | None] = [] if v.mandatory else [None]
        if v.relation is RelationKind.ALTERNATIVE:
            options.extend((x,) for x in ids)
        elif v.relation is RelationKind.NONE:
            options.append(ids)
        else:
            for size in range(1, len(ids) + 1):
                options.extend(combinations(ids, size))
        per_variant.append(options)

    out: list[Configuration] = []
    for combo in product(*per_variant):
        assignment = {v.id: chosen for v, chosen in zip(pruned.variants, combo) if chosen is not None}
        if _consistent(pruned, assignment):
            out.append(Configuration(
                area=area.strip(),
                selections=tuple(
                    (v.id, assignment[v.id]) for v in pruned.variants if v.id in assignment
                ),
            ))
    return out


def _consistent(model: VariabilityModel, assignment: dict[str, tuple[str, ...]]) -> bool:
    # every requires target of every included variant must be satisfied
    for variant_id in assignment:
        for ref in model.variant(variant_id).requires:
            owner = owner_of(ref)
            if owner not in assignment:
                return False
            if ref != owner and ref not in assignment[owner]:
                return False
    return True
