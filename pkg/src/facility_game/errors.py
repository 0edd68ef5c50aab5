"""Exception hierarchy shared by every module of the package."""


class FacilityGameError(Exception):
    """Base class for all errors raised by facility_game."""


class NetworkError(FacilityGameError):
    """A network violates one of its structural invariants."""


class BadVertexId(NetworkError):
    pass


class NegativeCost(NetworkError):
    pass


class SelfLoop(NetworkError):
    pass


class DuplicateEdge(NetworkError):
    pass


class DisconnectedNetwork(NetworkError):
    def __init__(self, u, v):
        super().__init__(f"vertices {u} and {v} lie in different components")
        self.u = u
        self.v = v


class ScenarioError(FacilityGameError):
    pass


class ParseError(ScenarioError):
    """Malformed scenario input.

    ``location`` is either a ``line N`` reference into the JSON text or a
    field path such as ``demand_points[1][0]``.
    """

    def __init__(self, message, location=None):
        text = f"{location}: {message}" if location else message
        super().__init__(text)
        self.location = location


class ValidationError(ScenarioError):
    def __init__(self, invariant, message):
        super().__init__(f"{invariant}: {message}")
        self.invariant = invariant


class NoOpenSite(FacilityGameError):
    pass


class ProfileLimitExceeded(FacilityGameError):
    pass
