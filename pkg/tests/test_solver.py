from __future__ import annotations

from collections import deque

import pytest

from revpebble.game import GameError, GameParams, ParameterError, apply_move, erase, new_game, place, remove, run_schedule
from revpebble.solver import SearchConfig, StateLimitExceeded, max_winnable, winnable
from revpebble.strategies import bennett_schedule, erasure_schedule


def oracle_winnable(T: int, n: int, m: int) -> bool:
    """Breadth-first search over GameState values using apply_move."""
    params = GameParams(T, n, m)
    start = new_game(params)
    key = lambda s: (s.mask, s.erasures_used, s.target_reached)  # noqa: E731
    seen = {key(start)}
    queue = deque([start])
    while queue:
        s = queue.popleft()
        if s.target_reached and s.mask == 0:
            return True
        for node in range(1, T + 1):
            for mv in (place(node), remove(node), erase(node)):
                try:
                    nxt = apply_move(s, mv)
                except GameError:
                    continue
                if key(nxt) not in seen:
                    seen.add(key(nxt))
                    queue.append(nxt)
    return False


def oracle_max(n: int, m: int, cap: int) -> int:
    best = 0
    for T in range(1, cap + 1):
        if oracle_winnable(T, n, m):
            best = T
    return best


def test_oracle_agrees_on_small_grid():
    for T in range(1, 9):
        for n in range(1, 4):
            for m in range(0, 3):
                assert winnable(SearchConfig(T, n, m)).winnable == oracle_winnable(T, n, m), (T, n, m)


@pytest.mark.parametrize(
    "T,n,m,expected",
    [(2, 1, 0, False), (3, 2, 0, True), (4, 2, 0, False), (4, 2, 3, True), (1, 1, 0, True)],
)
def test_winnable_examples(T, n, m, expected):
    assert winnable(SearchConfig(T, n, m)).winnable is expected


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_max_winnable_without_erasures(n):
    assert max_winnable(n, 0, 40) == 2**n - 1


def test_max_winnable_two_pebbles_one_erasure():
    # frozen from the apply_move oracle: one erasure does not extend 2 pebbles
    assert oracle_max(2, 1, 8) == 3
    assert max_winnable(2, 1, 40) == 3


def test_max_winnable_matches_oracle():
    for n in (1, 2, 3):
        for m in (0, 1, 2, 3):
            assert max_winnable(n, m, 12) == oracle_max(n, m, 12), (n, m)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_impossibility(n):
    assert not winnable(SearchConfig(2**n, n, 0)).winnable


def test_bennett_is_witness_at_frontier():
    for n in range(1, 5):
        s = bennett_schedule(n)
        assert s.params.game_length == max_winnable(n, 0, 40)
        assert run_schedule(s).won


def test_monotone_in_budgets():
    grid = {(n, m): max_winnable(n, m, 24) for n in range(1, 5) for m in range(0, 4)}
    for (n, m), v in grid.items():
        if (n + 1, m) in grid:
            assert grid[n + 1, m] >= v
        if (n, m + 1) in grid:
            assert grid[n, m + 1] >= v


@pytest.mark.parametrize("n", [2, 3, 4])
@pytest.mark.parametrize("m", [1, 2, 3])
def test_erasure_achievability(n, m):
    r = winnable(SearchConfig(m * 2 ** (n - 1), n, 2 * m - 1, want_witness=True))
    assert r.winnable
    assert run_schedule(r.witness, strict=True).won
    assert run_schedule(erasure_schedule(n, m)).won


def test_witness_replays():
    for T, n, m in [(1, 1, 0), (3, 2, 0), (4, 2, 3), (7, 3, 0), (8, 3, 3), (15, 4, 0)]:
        r = winnable(SearchConfig(T, n, m, want_witness=True))
        metrics = run_schedule(r.witness, strict=True)
        assert metrics.won
        assert metrics.peak_pebbles <= n and metrics.erasures <= m


def test_witness_absent_unless_requested():
    assert winnable(SearchConfig(3, 2, 0)).witness is None
    assert winnable(SearchConfig(4, 2, 0, want_witness=True)).witness is None


def test_witness_is_shortest():
    # BFS witness for T=3 with two pebbles is the 8-move Bennett play
    r = winnable(SearchConfig(3, 2, 0, want_witness=True))
    assert len(r.witness) == 8


def test_deterministic():
    a = winnable(SearchConfig(8, 3, 3, want_witness=True))
    b = winnable(SearchConfig(8, 3, 3, want_witness=True))
    assert a == b


def test_state_limit():
    with pytest.raises(StateLimitExceeded) as info:
        winnable(SearchConfig(20, 4, 0, state_limit=10))
    assert info.value.states_visited > 10


def test_config_guards():
    with pytest.raises(ParameterError):
        SearchConfig(65, 2, 0)
    with pytest.raises(ParameterError):
        SearchConfig(0, 2, 0)
    with pytest.raises(ParameterError):
        max_winnable(2, 0, 65)
