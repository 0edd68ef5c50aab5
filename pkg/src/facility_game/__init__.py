"""Competitive placement of production and distribution points on a
transport network, solved by exhaustive enumeration of joint placements."""

from importlib import resources

from ._backend import BACKEND
from .errors import (
    BadVertexId,
    DisconnectedNetwork,
    DuplicateEdge,
    FacilityGameError,
    NegativeCost,
    NoOpenSite,
    ParseError,
    SelfLoop,
    ValidationError,
)
from .market import (
    Allocation,
    PayoffBreakdown,
    PayoffTensor,
    allocate_demand,
    owner_payoff,
    payoff_tensor,
    profile_breakdowns,
    resolve_conflicts,
)
from .network import DistanceOracle, Edge, Network, all_pairs_shortest_paths, path, validate
from .scenario import (
    CandidateSite,
    DemandPoint,
    JointProfile,
    RawPoint,
    Scenario,
    SiteKind,
    Strategy,
    dump_scenario,
    joint_profiles,
    load_scenario,
    strategy_space,
)
from .solvers import SolutionReport, compromise_set, find_nash, ideal_vector

__version__ = "0.1.0"


def example_scenario() -> Scenario:
    """The bundled 8-vertex, two-owner example instance."""
    text = resources.files(__package__).joinpath("data/example_8_vertex.json").read_text()
    return load_scenario(text)
