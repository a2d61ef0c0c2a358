"""Schedule generators for the pebble game.

* ``naive_schedule`` keeps every checkpoint (full history).
* ``bennett_schedule`` is the recursive forward/undo strategy that wins a game
  of length ``2**n - 1`` with ``n`` pebbles in ``3**n - 1`` moves.
* ``erasure_schedule`` advances block by block with ``n`` pebbles and spends
  two erasures per block after the first, winning length ``m * 2**(n-1)``
  with ``2m - 1`` erasures.
* ``kary_schedule`` generalises the forward/undo recursion to ``k`` sub-blocks
  per level.
* ``tradeoff_table`` trades pebbles for erasures at a fixed game length.

Every generator returns a plain :class:`~revpebble.game.Schedule`; legality is
checked by replaying it, never assumed.
"""

from __future__ import annotations

import csv
import io
from dataclasses import asdict, dataclass
from functools import lru_cache

from .game import (
    GameParams,
    Move,
    ParameterError,
    Schedule,
    dumps_canonical,
    erase,
    invert,
    place,
    remove,
    run_schedule,
)

MAX_MOVES = 10**8


class ScheduleTooLarge(ParameterError):
    """The requested schedule would exceed ``MAX_MOVES`` moves."""


def _check_size(count: int) -> None:
    if count > MAX_MOVES:
        raise ScheduleTooLarge(f"schedule would have {count} moves (limit {MAX_MOVES})")


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise ParameterError(message)


def _is_int(value: object) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


def bennett_moves(k: int) -> int:
    """Length of the forward half of the Bennett strategy on ``2**k - 1`` nodes."""
    return (3**k - 1) // 2


@lru_cache(maxsize=None)
def _forward_offsets(k: int) -> tuple[tuple[bool, int], ...]:
    # F(k) relative to the block start, as (is_place, offset) pairs.
    # The block is I_{k-1} i_{k-1} I_{k-2} i_{k-2} ... I_0 i_0 with |I_j| = 2**j - 1.
    out: list[tuple[bool, int]] = []
    start = 0
    for j in range(k - 1, -1, -1):
        sub = [(p, start + off) for p, off in _forward_offsets(j)]
        out.extend(sub)
        out.append((True, start + 2**j - 1))
        out.extend((not p, off) for p, off in reversed(sub))
        start += 2**j
    return tuple(out)


def bennett_forward(k: int, first: int) -> list[Move]:
    """F(k): pebble the block of ``2**k - 1`` nodes starting at ``first``.

    Starts with an empty block whose predecessor is pebbled (or ``first == 1``)
    and ends with ``k`` pebbles on the block, one of them on its last node.
    """
    base = first
    return [place(base + off) if p else remove(base + off) for p, off in _forward_offsets(k)]


def naive_schedule(game_length: int) -> Schedule:
    _require(_is_int(game_length) and game_length >= 1, "game_length must be >= 1")
    _check_size(2 * game_length)
    moves = [place(i) for i in range(1, game_length + 1)]
    moves += [remove(i) for i in range(game_length, 0, -1)]
    return Schedule(GameParams(game_length, game_length, 0), tuple(moves))


def bennett_schedule(n: int) -> Schedule:
    _require(_is_int(n) and 1 <= n <= 20, "n must be in 1..20")
    _check_size(3**n - 1)
    forward = bennett_forward(n, 1)
    return Schedule(GameParams(2**n - 1, n, 0), tuple(forward + invert(forward)))


def erasure_schedule(n: int, m: int) -> Schedule:
    """Win a game of length ``m * 2**(n-1)`` with ``n`` pebbles and ``2m - 1`` erasures.

    The game is cut into ``m`` blocks ``B_i b_i`` with ``|B_i| = 2**(n-1) - 1``.
    Each block is pebbled with F(n-1) from the pebble on ``b_{i-1}``; that
    pebble is then erased to free a pebble for ``b_i``, and F(n-1) is undone.
    Once ``b_{i-1}`` is gone the first node of ``B_i`` can never be re-placed,
    so the undo stops at the last pebble left in the block (the one on the
    end of its first sub-block) and erases it.  The first block undoes
    completely because node 1 needs no predecessor.  Finally ``b_m`` is erased.
    """
    _require(_is_int(n) and n >= 2, "n must be >= 2")
    _require(_is_int(m) and m >= 1, "m must be >= 1")
    _check_size(erasure_moves(n, m))
    half = 2 ** (n - 1)
    tail = 2 * bennett_moves(n - 2) + 1  # undo of F's first iteration
    moves: list[Move] = []
    for i in range(1, m + 1):
        first = (i - 1) * half + 1
        forward = bennett_forward(n - 1, first)
        moves += forward
        if i > 1:
            moves.append(erase(first - 1))
        moves.append(place(i * half))
        undo = invert(forward)
        if i == 1:
            moves += undo
        else:
            moves += undo[: len(undo) - tail]
            moves.append(erase(first + 2 ** (n - 2) - 1))
    moves.append(erase(m * half))
    return Schedule(GameParams(m * half, n, 2 * m - 1), tuple(moves))


def erasure_moves(n: int, m: int) -> int:
    """Exact move count of ``erasure_schedule(n, m)``."""
    later_block = 2 * 3 ** (n - 2) + 2
    return 3 ** (n - 1) + (m - 1) * later_block + 1


def _kary_offsets(k: int, j: int) -> list[tuple[bool, int]]:
    # P(j) on an interval of k**j nodes: nets one pebble on its last node.
    if j == 0:
        return [(True, 0)]
    size = k ** (j - 1)
    sub = _kary_offsets(k, j - 1)
    undo = [(not p, off) for p, off in reversed(sub)]
    out: list[tuple[bool, int]] = []
    for i in range(k):
        out.extend((p, i * size + off) for p, off in sub)
    for i in range(k - 2, -1, -1):
        out.extend((p, i * size + off) for p, off in undo)
    return out


def kary_schedule(k: int, n: int) -> Schedule:
    _require(_is_int(k) and k >= 2, "k must be >= 2")
    _require(_is_int(n) and n >= 1, "n must be >= 1")
    _check_size(2 * (2 * k - 1) ** n)
    forward = [place(1 + off) if p else remove(1 + off) for p, off in _kary_offsets(k, n)]
    return Schedule(GameParams(k**n, n * (k - 1) + 1, 0), tuple(forward + invert(forward)))


@dataclass(frozen=True)
class TradeoffPoint:
    pebbles: int
    erasures: int
    moves: int
    game_length: int


def tradeoff_table(n: int) -> list[TradeoffPoint]:
    """Pebbles against erasures for a game of length ``2**n``.

    Row ``j`` comes from ``erasure_schedule(n + 1 - j, 2**j)``; each schedule is
    replayed strictly and must win with exactly the advertised budgets.
    """
    _require(_is_int(n) and n >= 2, "n must be >= 2")
    rows = []
    for j in range(n):
        schedule = erasure_schedule(n + 1 - j, 2**j)
        metrics = run_schedule(schedule, strict=True)
        params = schedule.params
        if not (
            metrics.won
            and metrics.peak_pebbles == params.pebble_budget
            and metrics.erasures == params.erasure_budget
        ):
            raise AssertionError(f"trade-off row {j} failed validation: {metrics}")
        rows.append(TradeoffPoint(params.pebble_budget, metrics.erasures, metrics.steps, params.game_length))
    return sorted(rows, key=lambda r: -r.pebbles)


TRADEOFF_FIELDS = ("pebbles", "erasures", "moves", "game_length")


def tradeoff_csv(rows: list[TradeoffPoint]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(TRADEOFF_FIELDS)
    for r in rows:
        writer.writerow([r.pebbles, r.erasures, r.moves, r.game_length])
    return buf.getvalue()


def tradeoff_json(rows: list[TradeoffPoint]) -> str:
    return dumps_canonical([asdict(r) for r in rows])
