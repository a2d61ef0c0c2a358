"""Reversible pebble games: schedule generators, validator, exhaustive solver
and a checkpointed reversible-simulation executor."""

from .game import (
    ErasureBudgetExceeded,
    GameError,
    GameParams,
    GameState,
    IllegalMove,
    Move,
    MoveKind,
    NodeOutOfRange,
    ParameterError,
    PebbleExhausted,
    PlayMetrics,
    Schedule,
    ScheduleFormatError,
    apply_move,
    new_game,
    run_schedule,
)
from .revsim import (
    CancelMismatch,
    Checkpoint,
    MissingPredecessor,
    SimulationError,
    SimulationReport,
    builtin_machine,
    direct_run,
    execute,
)
from .solver import SearchConfig, SolverResult, StateLimitExceeded, max_winnable, winnable
from .strategies import (
    TradeoffPoint,
    bennett_schedule,
    erasure_schedule,
    kary_schedule,
    naive_schedule,
    tradeoff_table,
)

__version__ = "0.1.0"
