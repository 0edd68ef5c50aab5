"""Optimality principles over a payoff tensor: pure Nash and compromise."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import _backend
from .market import PayoffTensor


@dataclass(frozen=True)
class SolutionReport:
    kind: str
    indices: tuple[int, ...]
    profiles: tuple
    values: tuple[tuple[int, ...], ...]
    objective: Optional[int] = None
    ideal: Optional[tuple[int, ...]] = None
    residuals: tuple[tuple[int, ...], ...] = field(default=())

    def __len__(self):
        return len(self.indices)

    @property
    def empty(self) -> bool:
        return not self.indices


def _kernels_for(tensor: PayoffTensor, backend: Optional[str]):
    v = tensor.values
    if v.dtype == object:
        return _backend.python
    bound = int(v.max()) - int(v.min()) if len(v) else 0
    return _backend.pick(bound, backend)


def _rows(tensor, kernels):
    return tensor.values if kernels is _backend.compiled else tensor.rows()


def find_nash(tensor: PayoffTensor, backend: Optional[str] = None) -> SolutionReport:
    """All pure profiles where no owner gains by deviating alone.

    For two owners this is the intersection of row-wise and column-wise
    best responses; ties count as best responses.
    """
    kernels = _kernels_for(tensor, backend)
    mask = kernels.nash_mask(_rows(tensor, kernels), tensor.strategy_count, tensor.owner_count)
    hits = tuple(int(i) for i in np.flatnonzero(np.asarray(mask, dtype=bool)))
    return SolutionReport(
        kind="nash",
        indices=hits,
        profiles=tuple(tensor.profile(i) for i in hits),
        values=tuple(tensor.payoffs(i) for i in hits),
    )


def ideal_vector(tensor: PayoffTensor) -> tuple[int, ...]:
    return tuple(int(x) for x in tensor.values.max(axis=0))


def residuals(tensor: PayoffTensor, index: int, ideal=None) -> tuple[int, ...]:
    ideal = ideal_vector(tensor) if ideal is None else ideal
    return tuple(m - p for m, p in zip(ideal, tensor.payoffs(index)))


def compromise_set(tensor: PayoffTensor, backend: Optional[str] = None) -> SolutionReport:
    """Profiles minimising the largest shortfall from the ideal vector."""
    kernels = _kernels_for(tensor, backend)
    ideal, gamma, best = kernels.minmax_regret(_rows(tensor, kernels), tensor.owner_count)
    ideal = tuple(int(x) for x in ideal)
    best = int(best)
    hits = tuple(int(i) for i in np.flatnonzero(np.asarray(gamma) == best))
    return SolutionReport(
        kind="compromise",
        indices=hits,
        profiles=tuple(tensor.profile(i) for i in hits),
        values=tuple(tensor.payoffs(i) for i in hits),
        objective=best,
        ideal=ideal,
        residuals=tuple(residuals(tensor, i, ideal) for i in hits),
    )
