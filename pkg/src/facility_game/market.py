"""Demand allocation, owner costs and net-income payoffs.

Market rules
------------
* Owners are processed in index order.  An owner whose production vertex or
  distribution vertex is already held (same kind) by a lower-indexed active
  owner is *blocked*: it pays nothing, earns nothing, and its site is not
  opened.
* Every candidate distribution site takes part in demand allocation.  A site
  held by an active owner quotes that owner's price; any other site quotes
  the lowest menu price.  Demand drawn to a site that no active owner holds
  is unserved.
* A demand point buys at the site minimising ``price * quantity + distance``;
  ties go to the lowest vertex id.
* An owner buys raw material at the raw point minimising
  ``unit_price * served + distance to its production vertex`` (ties to the
  lowest vertex id) and pays each leg of the route raw -> production ->
  distribution once, whatever the volume.
"""

from __future__ import annotations

import concurrent.futures
from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence

import numpy as np

from . import _backend
from .errors import NoOpenSite
from .network import DistanceOracle
from .scenario import JointProfile, Scenario, Strategy, joint_profiles, strategy_space


class PayoffBreakdown(NamedTuple):
    revenue: int = 0
    transport: int = 0
    distribution_cost: int = 0
    production_cost: int = 0
    raw_cost: int = 0
    net: int = 0
    raw_vertex: Optional[int] = None

    @property
    def costs(self) -> int:
        return self.transport + self.distribution_cost + self.production_cost + self.raw_cost


ZERO = PayoffBreakdown()


@dataclass(frozen=True)
class Allocation:
    """Where each demand point buys, and how much each owner sells.

    ``sites[k]`` is the distribution candidate chosen by demand point k and
    ``owners[k]`` the active owner holding it, or None when unserved.
    """

    active: tuple[bool, ...]
    sites: tuple[int, ...]
    owners: tuple[Optional[int], ...]
    served_quantity: tuple[int, ...]
    unserved_quantity: int = 0

    def is_served(self, k: int) -> bool:
        return self.owners[k] is not None


def resolve_conflicts(sc: Scenario, profile: JointProfile) -> tuple[bool, ...]:
    """Active flag per owner; lower-indexed active owners win shared vertices."""
    active: list[bool] = []
    taken_prod: set[int] = set()
    taken_dist: set[int] = set()
    for s in profile:
        m = sc.production_sites[s.production_site].vertex
        w = sc.distribution_sites[s.distribution_site].vertex
        ok = m not in taken_prod and w not in taken_dist
        active.append(ok)
        if ok:
            taken_prod.add(m)
            taken_dist.add(w)
    return tuple(active)


def allocate_demand(
    sc: Scenario,
    oracle: DistanceOracle,
    profile: JointProfile,
    active: Optional[Sequence[bool]] = None,
) -> Allocation:
    if active is None:
        active = resolve_conflicts(sc, profile)
    if not any(active):
        raise NoOpenSite("every owner is blocked")

    holder: dict[int, int] = {}
    for o, s in enumerate(profile):
        if active[o]:
            holder[s.distribution_site] = o
    floor_price = min(sc.prices)

    def quote(j):
        o = holder.get(j)
        return floor_price if o is None else sc.prices[profile[o].price_index]

    by_vertex = sorted(range(len(sc.distribution_sites)), key=lambda j: sc.distribution_sites[j].vertex)
    served = [0] * len(profile)
    unserved = 0
    sites, owners = [], []
    for d in sc.demand_points:
        best = min(
            by_vertex,
            key=lambda j: (
                quote(j) * d.quantity + oracle.dist(d.vertex, sc.distribution_sites[j].vertex),
                sc.distribution_sites[j].vertex,
            ),
        )
        o = holder.get(best)
        sites.append(best)
        owners.append(o)
        if o is None:
            unserved += d.quantity
        else:
            served[o] += d.quantity
    return Allocation(tuple(active), tuple(sites), tuple(owners), tuple(served), unserved)


def owner_payoff(
    sc: Scenario,
    oracle: DistanceOracle,
    strategy: Strategy,
    allocation: Allocation,
    owner: int,
) -> PayoffBreakdown:
    if not allocation.active[owner]:
        return ZERO
    price = sc.prices[strategy.price_index]
    m = sc.production_sites[strategy.production_site]
    w = sc.distribution_sites[strategy.distribution_site]
    qty = allocation.served_quantity[owner]
    raw = min(
        sc.raw_points,
        key=lambda r: (r.unit_price * qty + oracle.dist(r.vertex, m.vertex), r.vertex),
    )
    revenue = price * qty
    transport = oracle.dist(raw.vertex, m.vertex) + oracle.dist(m.vertex, w.vertex)
    raw_cost = raw.unit_price * qty
    net = revenue - (transport + w.fixed_cost + m.fixed_cost + raw_cost)
    return PayoffBreakdown(revenue, transport, w.fixed_cost, m.fixed_cost, raw_cost, net, raw.vertex)


def profile_breakdowns(sc: Scenario, oracle: DistanceOracle, profile: JointProfile) -> list[PayoffBreakdown]:
    alloc = allocate_demand(sc, oracle, profile)
    return [owner_payoff(sc, oracle, s, alloc, o) for o, s in enumerate(profile)]


# -- tensor ------------------------------------------------------------------


class PayoffTensor:
    """Net income of every owner over every joint profile.

    ``values[s, i]`` is owner i's payoff at profile index s, where profiles
    are numbered as in ``scenario.joint_profiles``.  The array is int64 when
    all values fit, otherwise an object array of Python ints.
    """

    def __init__(self, values, strategy_count: int, owner_count: int, strategies: Optional[Sequence] = None):
        if not isinstance(values, np.ndarray):
            values = _as_exact(values, owner_count)
        elif values.dtype != np.int64 and values.dtype != object:
            values = values.astype(np.int64)
        if values.ndim != 2 or values.shape[1] != owner_count:
            raise ValueError(f"expected shape (profiles, {owner_count}), got {values.shape}")
        if values.shape[0] != strategy_count**owner_count:
            raise ValueError(
                f"{values.shape[0]} rows but {strategy_count}**{owner_count} profiles"
            )
        values = values.view()
        values.flags.writeable = False
        self.values = values
        self.strategy_count = strategy_count
        self.owner_count = owner_count
        self.strategies = tuple(strategies) if strategies is not None else tuple(range(strategy_count))

    @classmethod
    def from_rows(cls, rows, strategy_count: int, owner_count: int, strategies=None) -> "PayoffTensor":
        return cls(_as_exact([list(r) for r in rows], owner_count), strategy_count, owner_count, strategies)

    def __len__(self) -> int:
        return self.values.shape[0]

    def payoffs(self, index: int) -> tuple[int, ...]:
        return tuple(int(x) for x in self.values[index])

    def rows(self) -> list[tuple[int, ...]]:
        return [tuple(int(x) for x in row) for row in self.values.tolist()]

    def digits(self, index: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.owner_count):
            index, d = divmod(index, self.strategy_count)
            out.append(d)
        return tuple(reversed(out))

    def profile(self, index: int):
        chosen = tuple(self.strategies[d] for d in self.digits(index))
        if chosen and isinstance(chosen[0], Strategy):
            return JointProfile(chosen)
        return chosen

    def index_of(self, digits: Sequence[int]) -> int:
        index = 0
        for d in digits:
            index = index * self.strategy_count + d
        return index

    def __eq__(self, other):
        if not isinstance(other, PayoffTensor):
            return NotImplemented
        return (
            self.strategy_count == other.strategy_count
            and self.owner_count == other.owner_count
            and self.rows() == other.rows()
        )

    def __repr__(self):
        return f"PayoffTensor(profiles={len(self)}, owners={self.owner_count})"


def _as_exact(rows, owners):
    """Rows of Python ints as an int64 array, or an object array on overflow."""
    if not len(rows):
        return np.zeros((0, owners), dtype=np.int64)
    try:
        return np.array(rows, dtype=np.int64)
    except OverflowError:
        return np.array(rows, dtype=object)


def pack_scenario(sc: Scenario, oracle: DistanceOracle) -> tuple[dict, int]:
    """Flatten a scenario into kernel arguments plus a magnitude bound."""
    dv = [s.vertex for s in sc.distribution_sites]
    pv = [s.vertex for s in sc.production_sites]
    args = dict(
        owners=sc.owner_count,
        demand_qty=[d.quantity for d in sc.demand_points],
        demand_site_dist=[[oracle.dist(d.vertex, v) for v in dv] for d in sc.demand_points],
        site_order=sorted(range(len(dv)), key=dv.__getitem__),
        dsite_cost=[s.fixed_cost for s in sc.distribution_sites],
        dsite_vertex=dv,
        psite_cost=[s.fixed_cost for s in sc.production_sites],
        psite_vertex=pv,
        raw_order=sorted(range(len(sc.raw_points)), key=lambda l: sc.raw_points[l].vertex),
        raw_price=[r.unit_price for r in sc.raw_points],
        raw_prod_dist=[[oracle.dist(r.vertex, v) for v in pv] for r in sc.raw_points],
        prod_dist_dist=[[oracle.dist(m, w) for w in dv] for m in pv],
        prices=list(sc.prices),
        n_prod=len(pv),
        n_dist=len(dv),
    )
    max_dist = max(max(row) for row in oracle.matrix())
    total = sc.total_demand
    bound = (
        (max(sc.prices) + max(args["raw_price"])) * total
        + 2 * max_dist
        + max(args["dsite_cost"])
        + max(args["psite_cost"])
        + max(sc.prices) * max(args["demand_qty"])
        + max(r * total for r in args["raw_price"])
        + max_dist
    )
    return args, bound


def _rows_chunk(backend_name: str, start: int, stop: int, args: dict):
    kernels = _backend.compiled if backend_name == "compiled" else _backend.python
    rows = kernels.payoff_rows(start, stop, **args)
    if backend_name == "compiled":
        return rows
    return _as_exact(rows, args["owners"])


def payoff_tensor(
    sc: Scenario,
    oracle: DistanceOracle,
    workers: int = 1,
    backend: Optional[str] = None,
) -> PayoffTensor:
    """Evaluate every joint profile.

    With ``workers > 1`` profile ranges are split into contiguous chunks and
    evaluated in separate processes; the result does not depend on the split.
    """
    args, bound = pack_scenario(sc, oracle)
    kernels = _backend.pick(bound, backend)
    name = "compiled" if kernels is _backend.compiled else "python"
    total = sc.profile_count
    if workers <= 1 or total < 2 * workers:
        parts = [_rows_chunk(name, 0, total, args)]
    else:
        step = -(-total // (workers * 4))
        bounds = [(a, min(a + step, total)) for a in range(0, total, step)]
        with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_rows_chunk, name, a, b, args) for a, b in bounds]
            parts = [f.result() for f in futures]
    if any(p.dtype == object for p in parts):
        values = np.concatenate([p.astype(object) for p in parts])
    else:
        values = np.concatenate(parts)
    return PayoffTensor(values, sc.strategy_count, sc.owner_count, strategy_space(sc))


def reference_tensor(sc: Scenario, oracle: DistanceOracle) -> PayoffTensor:
    """Tensor built profile by profile from the per-owner functions above."""
    rows = [[b.net for b in profile_breakdowns(sc, oracle, p)] for p in joint_profiles(sc)]
    return PayoffTensor.from_rows(rows, sc.strategy_count, sc.owner_count, strategy_space(sc))
