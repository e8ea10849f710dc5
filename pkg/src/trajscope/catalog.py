"""The 72-variable catalog: the stable naming and ordering of every
trajectory-level statistical variable.

Layout (72 = 19 * 3 + 15):
  speed_*         19 statistics of the speed series
  acceleration_*  19 statistics of the acceleration series
  angles_*        19 statistics of the turning-angle series
  distance_geometry_k_j  15 straightness signatures, 1 <= j <= k <= 5

The entry order defines feature-vector indexing and the CSV column order,
so it must never change between runs.
"""
from __future__ import annotations

from dataclasses import dataclass

from .stats import STATISTIC_NAMES

STAT_BASES: tuple[str, ...] = ("speed", "acceleration", "angles")

SIGNATURE_PAIRS: tuple[tuple[int, int], ...] = tuple(
    (k, j) for k in range(1, 6) for j in range(1, k + 1)
)


@dataclass(frozen=True)
class Variable:
    name: str
    base: str                       # speed | acceleration | angles | distance_geometry
    statistic: str | None = None    # one of STATISTIC_NAMES for statistic variables
    signature: tuple[int, int] | None = None  # (k, j) for distance-geometry variables


def _build() -> tuple[Variable, ...]:
    entries: list[Variable] = []
    for base in STAT_BASES:
        for stat in STATISTIC_NAMES:
            entries.append(Variable(name=f"{base}_{stat}", base=base, statistic=stat))
    for k, j in SIGNATURE_PAIRS:
        entries.append(Variable(name=f"distance_geometry_{k}_{j}",
                                base="distance_geometry", signature=(k, j)))
    return tuple(entries)


VARIABLES: tuple[Variable, ...] = _build()
VARIABLE_NAMES: tuple[str, ...] = tuple(v.name for v in VARIABLES)
INDEX_BY_NAME: dict[str, int] = {v.name: i for i, v in enumerate(VARIABLES)}

assert len(VARIABLES) == 72


def indices_for_base(base: str) -> tuple[int, ...]:
    return tuple(i for i, v in enumerate(VARIABLES) if v.base == base)


def variable(name: str) -> Variable:
    try:
        return VARIABLES[INDEX_BY_NAME[name]]
    except KeyError:
        raise KeyError(f"unknown variable name: {name!r}") from None
