"""Run-wide configuration: enumeration bounds and census caps."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

DEFAULT_BOUND = 1 << 16


@dataclass(frozen=True)
class CensusConfig:
    """Caps for the exhaustive census of small objects.

    ``max_ring``/``max_module`` bound the ring and abelian-group catalogues;
    the crossed-bimodule census uses the tighter ``xbm_ring``/``xbm_module``.
    """

    max_ring: int = 8
    max_module: int = 8
    xbm_ring: int = 4
    xbm_module: int = 4
    bound: int = DEFAULT_BOUND


def parallel_map(fn, items, jobs: int = 1) -> list:
    """``list(map(fn, items))``, optionally on a thread pool.

    Output order never depends on ``jobs``.
    """
    items = list(items)
    if jobs <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))
