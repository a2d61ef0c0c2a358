"""Reversible pebble game on a linear list of nodes ``1..game_length``.

Placing or removing a pebble on node ``i > 1`` is only allowed while node
``i - 1`` is pebbled; node 1 is always free to toggle.  A bounded number of
*erasures* may remove a pebble regardless of its predecessor.  A play is won
when the last node has been pebbled and the board is empty again.

The board is kept as an integer bitmask (bit ``i - 1`` set iff node ``i`` is
pebbled) so the same encoding can be shared with the exhaustive solver.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from enum import Enum
from pathlib import Path
from typing import Any, Iterable, Sequence


class ParameterError(ValueError):
    """Invalid game, strategy or machine parameters."""


class ScheduleFormatError(ValueError):
    """A schedule document could not be parsed."""


class GameError(Exception):
    """A move broke the rules of the game.

    ``move_index`` is the 0-based position of the offending move in the
    schedule being replayed, or ``None`` for a lone ``apply_move`` call.
    """

    def __init__(self, reason: str, move: Move, move_index: int | None = None):
        self.reason = reason
        self.move = move
        self.move_index = move_index
        super().__init__(str(self))

    def __str__(self) -> str:
        where = "" if self.move_index is None else f" at move {self.move_index}"
        return f"{type(self).__name__}{where}: {self.move.kind.value} {self.move.node}: {self.reason}"


class IllegalMove(GameError):
    pass


class PebbleExhausted(GameError):
    pass


class ErasureBudgetExceeded(GameError):
    pass


class NodeOutOfRange(GameError):
    pass


class MoveKind(str, Enum):
    PLACE = "place"
    REMOVE = "remove"
    ERASE = "erase"


@dataclass(frozen=True)
class Move:
    kind: MoveKind
    node: int

    def __post_init__(self) -> None:
        if not isinstance(self.kind, MoveKind):
            object.__setattr__(self, "kind", MoveKind(self.kind))
        if isinstance(self.node, bool) or not isinstance(self.node, int) or self.node < 1:
            raise ParameterError(f"move node must be a positive integer, got {self.node!r}")

    def inverse(self) -> Move:
        """The move that undoes this one.  Erasures have no inverse."""
        if self.kind is MoveKind.PLACE:
            return Move(MoveKind.REMOVE, self.node)
        if self.kind is MoveKind.REMOVE:
            return Move(MoveKind.PLACE, self.node)
        raise ValueError("an erasure cannot be undone")

    def __repr__(self) -> str:
        return f"{self.kind.name[0]}{self.node}"


def place(node: int) -> Move:
    return Move(MoveKind.PLACE, node)


def remove(node: int) -> Move:
    return Move(MoveKind.REMOVE, node)


def erase(node: int) -> Move:
    return Move(MoveKind.ERASE, node)


def invert(moves: Sequence[Move]) -> list[Move]:
    """Run ``moves`` backwards, each one replaced by its inverse."""
    return [m.inverse() for m in reversed(moves)]


def _check_int(name: str, value: Any, minimum: int) -> None:
    if isinstance(value, bool) or not isinstance(value, int) or value < minimum:
        raise ParameterError(f"{name} must be an integer >= {minimum}, got {value!r}")


@dataclass(frozen=True)
class GameParams:
    game_length: int
    pebble_budget: int
    erasure_budget: int = 0

    def __post_init__(self) -> None:
        _check_int("game_length", self.game_length, 1)
        _check_int("pebble_budget", self.pebble_budget, 1)
        _check_int("erasure_budget", self.erasure_budget, 0)


@dataclass(frozen=True)
class GameState:
    params: GameParams
    mask: int = 0
    erasures_used: int = 0
    target_reached: bool = False
    steps_taken: int = 0
    peak_pebbles: int = 0

    @property
    def pebbled(self) -> frozenset[int]:
        mask, nodes, i = self.mask, [], 1
        while mask:
            if mask & 1:
                nodes.append(i)
            mask >>= 1
            i += 1
        return frozenset(nodes)

    @property
    def pebble_count(self) -> int:
        return self.mask.bit_count()

    def is_pebbled(self, node: int) -> bool:
        return node >= 1 and bool(self.mask >> (node - 1) & 1)

    def predecessor_pebbled(self, node: int) -> bool:
        """True when ``node`` may be toggled under the ordinary rules."""
        return node == 1 or self.is_pebbled(node - 1)


def new_game(params: GameParams) -> GameState:
    return GameState(params)


def apply_move(state: GameState, move: Move, index: int | None = None) -> GameState:
    """Return the state after ``move``; raise a :class:`GameError` if it is illegal."""
    params = state.params
    node = move.node
    if node > params.game_length:
        raise NodeOutOfRange(f"game has only {params.game_length} nodes", move, index)
    bit = 1 << (node - 1)
    occupied = bool(state.mask & bit)

    if move.kind is MoveKind.PLACE:
        if occupied:
            raise IllegalMove("node already pebbled", move, index)
        if state.pebble_count >= params.pebble_budget:
            raise PebbleExhausted(f"all {params.pebble_budget} pebbles are on the board", move, index)
        if not state.predecessor_pebbled(node):
            raise IllegalMove(f"predecessor {node - 1} is not pebbled", move, index)
        mask = state.mask | bit
        count = state.pebble_count + 1
        return replace(
            state,
            mask=mask,
            target_reached=state.target_reached or node == params.game_length,
            steps_taken=state.steps_taken + 1,
            peak_pebbles=max(state.peak_pebbles, count),
        )

    if not occupied:
        raise IllegalMove("node is not pebbled", move, index)
    if move.kind is MoveKind.REMOVE:
        if not state.predecessor_pebbled(node):
            raise IllegalMove(f"predecessor {node - 1} is not pebbled", move, index)
        return replace(state, mask=state.mask & ~bit, steps_taken=state.steps_taken + 1)

    if state.erasures_used >= params.erasure_budget:
        raise ErasureBudgetExceeded(
            f"erasure budget of {params.erasure_budget} already spent", move, index
        )
    return replace(
        state,
        mask=state.mask & ~bit,
        erasures_used=state.erasures_used + 1,
        steps_taken=state.steps_taken + 1,
    )


@dataclass(frozen=True)
class Schedule:
    params: GameParams
    moves: tuple[Move, ...]

    def __post_init__(self) -> None:
        if not isinstance(self.moves, tuple):
            object.__setattr__(self, "moves", tuple(self.moves))

    def __len__(self) -> int:
        return len(self.moves)

    def to_dict(self) -> dict[str, Any]:
        return {
            "game_length": self.params.game_length,
            "pebble_budget": self.params.pebble_budget,
            "erasure_budget": self.params.erasure_budget,
            "moves": [{"op": m.kind.value, "node": m.node} for m in self.moves],
        }

    def to_json(self) -> str:
        return dumps_canonical(self.to_dict())

    @classmethod
    def from_dict(cls, data: Any) -> Schedule:
        if not isinstance(data, dict):
            raise ScheduleFormatError("schedule must be a JSON object")
        try:
            params = GameParams(
                data["game_length"], data["pebble_budget"], data.get("erasure_budget", 0)
            )
        except KeyError as exc:
            raise ScheduleFormatError(f"missing field {exc.args[0]!r}") from None
        except ParameterError as exc:
            raise ScheduleFormatError(str(exc)) from None
        raw = data.get("moves")
        if not isinstance(raw, list):
            raise ScheduleFormatError("'moves' must be a list")
        moves = []
        for i, item in enumerate(raw):
            if not isinstance(item, dict) or "op" not in item or "node" not in item:
                raise ScheduleFormatError(f"move {i} must be an object with 'op' and 'node'")
            try:
                moves.append(Move(MoveKind(item["op"]), item["node"]))
            except ValueError as exc:
                raise ScheduleFormatError(f"move {i}: {exc}") from None
        return cls(params, tuple(moves))

    @classmethod
    def from_json(cls, text: str) -> Schedule:
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ScheduleFormatError(f"invalid JSON: {exc}") from None
        return cls.from_dict(data)

    def save(self, path: str | Path) -> None:
        Path(path).write_text(self.to_json(), encoding="utf-8")

    @classmethod
    def load(cls, path: str | Path) -> Schedule:
        return cls.from_json(Path(path).read_text(encoding="utf-8"))


def dumps_canonical(obj: Any) -> str:
    """Two-space indented, newline-terminated JSON; keys keep insertion order."""
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


@dataclass(frozen=True)
class PlayMetrics:
    won: bool
    steps: int
    peak_pebbles: int
    erasures: int
    diagnostics: tuple[str, ...] = field(default=(), compare=False)

    def to_dict(self) -> dict[str, Any]:
        return {
            "won": self.won,
            "steps": self.steps,
            "peak_pebbles": self.peak_pebbles,
            "erasures": self.erasures,
            "diagnostics": list(self.diagnostics),
        }

    def summary(self) -> str:
        return (
            f"won={str(self.won).lower()} peak={self.peak_pebbles} "
            f"erasures={self.erasures} steps={self.steps}"
        )


def replay(params: GameParams, moves: Iterable[Move], strict: bool = True) -> tuple[GameState, list[str]]:
    """Apply ``moves`` from the initial state, returning the final state and diagnostics.

    In lenient mode a Remove whose predecessor is unpebbled is played as an
    Erase when budget remains.  Erasures that an ordinary Remove could have
    done are reported as wasteful in both modes.
    """
    state = new_game(params)
    notes: list[str] = []
    for i, move in enumerate(moves):
        if move.kind is MoveKind.REMOVE and not strict and move.node <= params.game_length:
            if state.is_pebbled(move.node) and not state.predecessor_pebbled(move.node):
                if state.erasures_used < params.erasure_budget:
                    notes.append(f"move {i}: remove {move.node} reclassified as erase")
                    move = erase(move.node)
        elif move.kind is MoveKind.ERASE and move.node <= params.game_length:
            if state.is_pebbled(move.node) and state.predecessor_pebbled(move.node):
                notes.append(f"move {i}: wasteful erase {move.node}, a remove was legal")
        state = apply_move(state, move, i)
    return state, notes


def run_schedule(schedule: Schedule, strict: bool = True) -> PlayMetrics:
    state, notes = replay(schedule.params, schedule.moves, strict)
    return PlayMetrics(
        won=state.target_reached and state.mask == 0,
        steps=state.steps_taken,
        peak_pebbles=state.peak_pebbles,
        erasures=state.erasures_used,
        diagnostics=tuple(notes),
    )
