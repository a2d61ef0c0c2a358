"""Exhaustive winnability search for small pebble games.

States are ``(board bitmask, erasures used, target reached)`` packed into one
integer.  The game has no step bound, so the state graph is finite and a
breadth-first search decides winnability exactly.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .game import GameParams, Move, MoveKind, ParameterError, Schedule

MAX_GAME_LENGTH = 64
DEFAULT_STATE_LIMIT = 5 * 10**7

_MASK_BITS = 64
_MASK = (1 << _MASK_BITS) - 1


class StateLimitExceeded(RuntimeError):
    """The search visited more states than allowed; winnability is unknown."""

    def __init__(self, states_visited: int, state_limit: int):
        self.states_visited = states_visited
        self.state_limit = state_limit
        super().__init__(f"search aborted after {states_visited} states (limit {state_limit})")


@dataclass(frozen=True)
class SearchConfig:
    game_length: int
    pebble_budget: int
    erasure_budget: int = 0
    state_limit: int = DEFAULT_STATE_LIMIT
    want_witness: bool = False

    def __post_init__(self) -> None:
        # reuse the game's parameter checks
        GameParams(self.game_length, self.pebble_budget, self.erasure_budget)
        if self.game_length > MAX_GAME_LENGTH:
            raise ParameterError(f"game_length must be <= {MAX_GAME_LENGTH}")
        if self.state_limit < 1:
            raise ParameterError("state_limit must be >= 1")


@dataclass(frozen=True)
class SolverResult:
    winnable: bool
    states_visited: int
    witness: Schedule | None = None

    def to_dict(self) -> dict:
        return {"winnable": self.winnable, "states_visited": self.states_visited}


# move codes stored in the parent map: node * 3 + kind
_PLACE, _REMOVE, _ERASE = 0, 1, 2
_KINDS = (MoveKind.PLACE, MoveKind.REMOVE, MoveKind.ERASE)


def winnable(config: SearchConfig) -> SolverResult:
    """Breadth-first search from the empty board.

    Successors are generated in a fixed order (ordinary moves by ascending
    node, then erasures by ascending node) and parents are recorded on first
    discovery, so the witness is the shortest winning play and among those
    the first in that order.
    """
    T = config.game_length
    n = config.pebble_budget
    m = config.erasure_budget
    limit = config.state_limit
    full = (1 << T) - 1
    target = 1 << (T - 1)
    keep_parents = config.want_witness

    start = 0
    seen = {start}
    parents: dict[int, tuple[int, int]] = {}
    queue = deque([start])

    def succeed(state: int) -> SolverResult:
        witness = _rebuild(parents, state, config) if keep_parents else None
        return SolverResult(True, len(seen), witness)

    while queue:
        state = queue.popleft()
        mask = state & _MASK
        hi = state >> _MASK_BITS
        used = hi >> 1
        reached = hi & 1
        free = mask.bit_count() < n
        toggle = ((mask << 1) | 1) & full
        if not free:
            toggle &= mask

        succ: list[tuple[int, int]] = []
        bits = toggle
        while bits:
            low = bits & -bits
            bits ^= low
            node = low.bit_length()
            if mask & low:
                succ.append(((hi << _MASK_BITS) | (mask ^ low), node * 3 + _REMOVE))
            else:
                r = 1 if (low == target or reached) else 0
                succ.append(((((used << 1) | r) << _MASK_BITS) | (mask | low), node * 3 + _PLACE))
        if used < m:
            ehi = ((used + 1) << 1 | reached) << _MASK_BITS
            bits = mask
            while bits:
                low = bits & -bits
                bits ^= low
                succ.append((ehi | (mask ^ low), low.bit_length() * 3 + _ERASE))

        for nxt, code in succ:
            if nxt in seen:
                continue
            seen.add(nxt)
            if keep_parents:
                parents[nxt] = (state, code)
            if (nxt & _MASK) == 0 and (nxt >> _MASK_BITS) & 1:
                return succeed(nxt)
            if len(seen) > limit:
                raise StateLimitExceeded(len(seen), limit)
            queue.append(nxt)

    return SolverResult(False, len(seen))


def _rebuild(parents: dict[int, tuple[int, int]], state: int, config: SearchConfig) -> Schedule:
    codes = []
    while state in parents:
        state, code = parents[state]
        codes.append(code)
    moves = tuple(Move(_KINDS[c % 3], c // 3) for c in reversed(codes))
    return Schedule(GameParams(config.game_length, config.pebble_budget, config.erasure_budget), moves)


def max_winnable(
    pebble_budget: int,
    erasure_budget: int,
    length_cap: int,
    state_limit: int = DEFAULT_STATE_LIMIT,
) -> int:
    """Largest game length ``<= length_cap`` that can be won.

    Winnability is monotone in the game length (a play for length ``T``
    restricted to its first ``T - 1`` nodes, with removals of node ``T``
    dropped, wins length ``T - 1``), so a binary search suffices.  Length 1
    is always winnable.
    """
    if length_cap < 1 or length_cap > MAX_GAME_LENGTH:
        raise ParameterError(f"length_cap must be in 1..{MAX_GAME_LENGTH}")
    lo, hi = 1, length_cap
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if winnable(SearchConfig(mid, pebble_budget, erasure_budget, state_limit)).winnable:
            lo = mid
        else:
            hi = mid - 1
    return lo
