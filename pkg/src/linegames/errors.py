"""Exception taxonomy shared across the workbench.

Everything raised on purpose derives from LineGamesError so the CLI can
map failures to exit codes without enumerating modules.
"""


class LineGamesError(Exception):
    """Base class for all workbench errors."""


class ConfigError(LineGamesError):
    """A run configuration or descriptor could not be resolved."""


class IntervalEmpty(LineGamesError):
    """An operation required a nonempty open interval."""


class NotEncoded(LineGamesError):
    """A rational does not carry a well-formed digit frame."""


class IllegalMove(LineGamesError):
    """A move violated the strict betweenness rule."""

    def __init__(self, player, value, lo, hi):
        super().__init__(f"illegal move {value} by {player}: must lie strictly inside ({lo}, {hi})")
        self.player = player
        self.value = value
        self.lo = lo
        self.hi = hi


class OutOfTurn(LineGamesError):
    """A move was submitted by the player not on the move."""


class StrategyFault(LineGamesError):
    """A strategy emitted an illegal move or failed while choosing one."""

    def __init__(self, player, round_index, reason=""):
        super().__init__(f"strategy fault by {player} in round {round_index}: {reason}")
        self.player = player
        self.round_index = round_index
        self.reason = reason


class NoRounds(LineGamesError):
    """A transcript-level quantity needs at least one completed round."""


class CapabilityMissing(LineGamesError):
    """A payoff set does not advertise the requested capability."""


class NoRefinement(LineGamesError):
    """No construction interval of permitted depth fits the bounds."""


class OracleFault(LineGamesError):
    """A set oracle violated its own guarantee within the configured depth."""


class DecodeFault(LineGamesError):
    """A coding strategy saw an opponent-context value without a frame."""


class TargetIllegal(LineGamesError):
    """The tracked target is not legal for the current bounds."""


class WitnessNotFound(LineGamesError):
    """No witness move surfaced within the probe budget."""

    def __init__(self, budget):
        super().__init__(f"no witness within {budget} probes")
        self.budget = budget


class IllegalInterval(LineGamesError):
    """A nested-interval move broke closure containment."""

    def __init__(self, player, round_index, reason=""):
        super().__init__(f"illegal interval by {player} in round {round_index}: {reason}")
        self.player = player
        self.round_index = round_index
