"""Problem instances: loading, validation and strategy enumeration.

A scenario file is one JSON document::

    {
      "network": {"vertices": 8, "edges": [[1, 2, 1], [2, 3, 2], ...]},
      "raw_points": [[vertex, unit_price], ...],
      "demand_points": [[vertex, quantity], ...],
      "production_sites": [[vertex, fixed_cost], ...],
      "distribution_sites": [[vertex, fixed_cost], ...],
      "prices": [10, ...],
      "owners": 2
    }

An edge may carry a fourth element, its capacity; capacities are kept but
never used.  All money amounts are integers and unknown keys are rejected.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from enum import Enum
from os import PathLike
from typing import IO, Iterator, NamedTuple, Union

from .errors import ParseError, ValidationError
from .network import Edge, Network, validate

TOP_LEVEL_KEYS = (
    "network",
    "raw_points",
    "demand_points",
    "production_sites",
    "distribution_sites",
    "prices",
    "owners",
)
NETWORK_KEYS = ("vertices", "edges")


class RawPoint(NamedTuple):
    vertex: int
    unit_price: int


class DemandPoint(NamedTuple):
    vertex: int
    quantity: int


class SiteKind(str, Enum):
    PRODUCTION = "production"
    DISTRIBUTION = "distribution"


class CandidateSite(NamedTuple):
    vertex: int
    kind: SiteKind
    fixed_cost: int


class Strategy(NamedTuple):
    """One owner's choice, as indices into the scenario's menus."""

    price_index: int
    production_site: int
    distribution_site: int


class JointProfile(NamedTuple):
    strategies: tuple[Strategy, ...]

    def __len__(self):
        return len(self.strategies)

    def __getitem__(self, owner):
        return self.strategies[owner]

    def __iter__(self):
        return iter(self.strategies)


@dataclass(frozen=True)
class Scenario:
    network: Network
    raw_points: tuple[RawPoint, ...]
    demand_points: tuple[DemandPoint, ...]
    production_sites: tuple[CandidateSite, ...]
    distribution_sites: tuple[CandidateSite, ...]
    prices: tuple[int, ...]
    owner_count: int

    def __post_init__(self):
        for name in ("raw_points", "demand_points", "production_sites", "distribution_sites", "prices"):
            object.__setattr__(self, name, tuple(getattr(self, name)))

    @property
    def strategy_count(self) -> int:
        return len(self.prices) * len(self.production_sites) * len(self.distribution_sites)

    @property
    def profile_count(self) -> int:
        return self.strategy_count**self.owner_count

    @property
    def total_demand(self) -> int:
        return sum(d.quantity for d in self.demand_points)

    def describe(self, strategy: Strategy) -> tuple[int, int, int]:
        """(price, production vertex, distribution vertex) of a strategy."""
        return (
            self.prices[strategy.price_index],
            self.production_sites[strategy.production_site].vertex,
            self.distribution_sites[strategy.distribution_site].vertex,
        )


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def validate_scenario(sc: Scenario) -> None:
    validate(sc.network)
    n = sc.network.vertex_count

    def check_vertex(v, where):
        if not _is_int(v) or not 1 <= v <= n:
            raise ValidationError("vertex-exists", f"{where}: vertex {v!r} not in 1..{n}")

    if not _is_int(sc.owner_count) or sc.owner_count < 1:
        raise ValidationError("owner-count-positive", f"owners must be a positive integer, got {sc.owner_count!r}")
    if not sc.raw_points:
        raise ValidationError("raw-points-nonempty", "at least one raw point is required")
    if not sc.demand_points:
        raise ValidationError("demand-points-nonempty", "at least one demand point is required")
    if not sc.prices:
        raise ValidationError("prices-nonempty", "the price menu is empty")

    for i, r in enumerate(sc.raw_points):
        check_vertex(r.vertex, f"raw_points[{i}]")
        if not _is_int(r.unit_price) or r.unit_price < 0:
            raise ValidationError("money-nonnegative", f"raw_points[{i}] unit price {r.unit_price!r}")
    for i, d in enumerate(sc.demand_points):
        check_vertex(d.vertex, f"demand_points[{i}]")
        if not _is_int(d.quantity) or d.quantity <= 0:
            raise ValidationError("quantity-positive", f"demand_points[{i}] quantity {d.quantity!r}")
    for i, p in enumerate(sc.prices):
        if not _is_int(p) or p < 0:
            raise ValidationError("money-nonnegative", f"prices[{i}] = {p!r}")

    for label, sites, kind in (
        ("production_sites", sc.production_sites, SiteKind.PRODUCTION),
        ("distribution_sites", sc.distribution_sites, SiteKind.DISTRIBUTION),
    ):
        if len(sites) < sc.owner_count:
            raise ValidationError(
                "site-sufficiency",
                f"{len(sites)} {label} for {sc.owner_count} owners",
            )
        seen = set()
        for i, s in enumerate(sites):
            check_vertex(s.vertex, f"{label}[{i}]")
            if s.kind is not kind:
                raise ValidationError("site-kind", f"{label}[{i}] has kind {s.kind!r}")
            if not _is_int(s.fixed_cost) or s.fixed_cost < 0:
                raise ValidationError("money-nonnegative", f"{label}[{i}] fixed cost {s.fixed_cost!r}")
            if s.vertex in seen:
                raise ValidationError("site-vertex-unique", f"{label}[{i}] repeats vertex {s.vertex}")
            seen.add(s.vertex)


def _pairs(doc, key):
    value = doc[key]
    if not isinstance(value, list):
        raise ParseError("expected a list", key)
    out = []
    for i, item in enumerate(value):
        if not isinstance(item, list) or len(item) != 2:
            raise ParseError("expected a [vertex, amount] pair", f"{key}[{i}]")
        for j, x in enumerate(item):
            if not _is_int(x):
                raise ParseError(f"expected an integer, got {x!r}", f"{key}[{i}][{j}]")
        out.append(tuple(item))
    return out


def _check_keys(obj, allowed, where):
    if not isinstance(obj, dict):
        raise ParseError("expected an object", where or "document")
    unknown = sorted(set(obj) - set(allowed))
    if unknown:
        raise ParseError(f"unknown key(s) {', '.join(unknown)}", where or "document")
    missing = [k for k in allowed if k not in obj]
    if missing:
        raise ParseError(f"missing key(s) {', '.join(missing)}", where or "document")


def scenario_from_dict(doc: dict) -> Scenario:
    _check_keys(doc, TOP_LEVEL_KEYS, "")
    net_doc = doc["network"]
    _check_keys(net_doc, NETWORK_KEYS, "network")
    if not _is_int(net_doc["vertices"]):
        raise ParseError("expected an integer", "network.vertices")
    if not isinstance(net_doc["edges"], list):
        raise ParseError("expected a list", "network.edges")
    edges = []
    for i, e in enumerate(net_doc["edges"]):
        where = f"network.edges[{i}]"
        if not isinstance(e, list) or len(e) not in (3, 4):
            raise ParseError("expected [u, v, cost] or [u, v, cost, capacity]", where)
        for j, x in enumerate(e[:3]):
            if not _is_int(x):
                raise ParseError(f"expected an integer, got {x!r}", f"{where}[{j}]")
        if len(e) == 4 and (isinstance(e[3], bool) or not isinstance(e[3], (int, float))):
            raise ParseError(f"capacity must be a number, got {e[3]!r}", f"{where}[3]")
        edges.append(Edge(*e))

    for key in ("prices",):
        if not isinstance(doc[key], list):
            raise ParseError("expected a list", key)
        for i, p in enumerate(doc[key]):
            if not _is_int(p):
                raise ParseError(f"expected an integer, got {p!r}", f"{key}[{i}]")
    if not _is_int(doc["owners"]):
        raise ParseError("expected an integer", "owners")

    sc = Scenario(
        network=Network(net_doc["vertices"], tuple(edges)),
        raw_points=tuple(RawPoint(*p) for p in _pairs(doc, "raw_points")),
        demand_points=tuple(DemandPoint(*p) for p in _pairs(doc, "demand_points")),
        production_sites=tuple(
            CandidateSite(v, SiteKind.PRODUCTION, c) for v, c in _pairs(doc, "production_sites")
        ),
        distribution_sites=tuple(
            CandidateSite(v, SiteKind.DISTRIBUTION, c) for v, c in _pairs(doc, "distribution_sites")
        ),
        prices=tuple(doc["prices"]),
        owner_count=doc["owners"],
    )
    validate_scenario(sc)
    return sc


def scenario_to_dict(sc: Scenario) -> dict:
    edges = []
    for e in sc.network.edges:
        edges.append([e.u, e.v, e.cost] if e.capacity is None else [e.u, e.v, e.cost, e.capacity])
    return {
        "network": {"vertices": sc.network.vertex_count, "edges": edges},
        "raw_points": [[r.vertex, r.unit_price] for r in sc.raw_points],
        "demand_points": [[d.vertex, d.quantity] for d in sc.demand_points],
        "production_sites": [[s.vertex, s.fixed_cost] for s in sc.production_sites],
        "distribution_sites": [[s.vertex, s.fixed_cost] for s in sc.distribution_sites],
        "prices": list(sc.prices),
        "owners": sc.owner_count,
    }


Source = Union[str, bytes, PathLike, IO]


def load_scenario(source: Source) -> Scenario:
    """Parse and validate a scenario from a path, raw bytes/str, or stream."""
    if isinstance(source, (str, PathLike)) and not str(source).lstrip().startswith("{"):
        with open(source, "rb") as fh:
            raw = fh.read()
    elif isinstance(source, (str, bytes)):
        raw = source
    else:
        raw = source.read()
    if isinstance(raw, bytes):
        try:
            raw = raw.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"not UTF-8 ({exc.reason})") from exc
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, f"line {exc.lineno} column {exc.colno}") from exc
    return scenario_from_dict(doc)


def dump_scenario(sc: Scenario, fp: IO[str] | None = None) -> str:
    text = json.dumps(scenario_to_dict(sc), indent=2)
    if fp is not None:
        fp.write(text)
    return text


def strategy_space(sc: Scenario) -> list[Strategy]:
    """Every (price, production, distribution) choice in lexicographic order."""
    return [
        Strategy(p, m, w)
        for p, m, w in itertools.product(
            range(len(sc.prices)),
            range(len(sc.production_sites)),
            range(len(sc.distribution_sites)),
        )
    ]


def joint_profiles(sc: Scenario, start: int = 0, stop: int | None = None) -> Iterator[JointProfile]:
    """Stream the Cartesian product of strategy spaces, owner 0 varying slowest.

    ``start``/``stop`` select a contiguous slice of profile indices so that
    disjoint chunks can be handed to separate workers.
    """
    strategies = strategy_space(sc)
    product = itertools.product(strategies, repeat=sc.owner_count)
    for combo in itertools.islice(product, start, stop):
        yield JointProfile(combo)


def profile_at(sc: Scenario, index: int) -> JointProfile:
    strategies = strategy_space(sc)
    size = len(strategies)
    if not 0 <= index < size**sc.owner_count:
        raise IndexError(f"profile index {index} out of range")
    digits = []
    for _ in range(sc.owner_count):
        index, d = divmod(index, size)
        digits.append(d)
    return JointProfile(tuple(strategies[d] for d in reversed(digits)))


def profile_index(sc: Scenario, profile: JointProfile) -> int:
    size = sc.strategy_count
    n_prod, n_dist = len(sc.production_sites), len(sc.distribution_sites)
    index = 0
    for s in profile:
        index = index * size + (s.price_index * n_prod + s.production_site) * n_dist + s.distribution_site
    return index

