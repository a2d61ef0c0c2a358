"""Run a pebble schedule as a checkpointed reversible simulation.

Node ``i`` of the game stands for the machine configuration after ``i``
segments of ``segment_len`` steps.  Node 0 holds the input configuration and
is never removed.  Placing a pebble computes a checkpoint forward from its
predecessor; removing one recomputes it and checks the stored copy is
identical before dropping it (reversible cancelation); erasing drops it
outright and is charged ``config_size_bits`` erased bits.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Protocol

from .game import MoveKind, NodeOutOfRange, ParameterError, Schedule

MAX_SIMULATED_STEPS = 10**8
MIN_WIDTH, MAX_WIDTH = 8, 4096


class SimulationError(Exception):
    """The schedule cannot be executed against the checkpoint store."""


class MissingPredecessor(SimulationError):
    pass


class CancelMismatch(SimulationError):
    """A recomputed checkpoint differs from the stored one."""


@dataclass(frozen=True)
class Checkpoint:
    value: int
    width: int

    def __post_init__(self) -> None:
        if not 0 <= self.value < 1 << self.width:
            raise ValueError(f"checkpoint value does not fit in {self.width} bits")

    def to_bytes(self) -> bytes:
        return self.value.to_bytes((self.width + 7) // 8, "big")

    def hex(self) -> str:
        return self.to_bytes().hex()


class SteppedMachine(Protocol):
    config_size_bits: int

    def initial(self, data: bytes) -> Checkpoint: ...

    def step(self, c: Checkpoint) -> Checkpoint: ...


def _bytes_to_int(data: bytes, width: int) -> int:
    return int.from_bytes(data, "big") & ((1 << width) - 1)


@dataclass(frozen=True)
class Counter:
    """Binary increment modulo ``2**width``."""

    width: int

    @property
    def config_size_bits(self) -> int:
        return self.width

    def initial(self, data: bytes) -> Checkpoint:
        return Checkpoint(_bytes_to_int(data, self.width), self.width)

    def step(self, c: Checkpoint) -> Checkpoint:
        return Checkpoint((c.value + 1) & ((1 << self.width) - 1), self.width)


@dataclass(frozen=True)
class Rule110:
    """Elementary cellular automaton rule 110 on a cyclic row.

    Bit ``i`` is cell ``i``; its left neighbour is bit ``i + 1`` and its right
    neighbour bit ``i - 1`` (indices mod ``width``), so the row reads left to
    right when printed most significant bit first.
    """

    width: int

    @property
    def config_size_bits(self) -> int:
        return self.width

    def initial(self, data: bytes) -> Checkpoint:
        return Checkpoint(_bytes_to_int(data, self.width), self.width)

    def step(self, c: Checkpoint) -> Checkpoint:
        w = self.width
        full = (1 << w) - 1
        x = c.value
        left = (x >> 1) | ((x & 1) << (w - 1))
        right = ((x << 1) & full) | (x >> (w - 1))
        # 110 = 0b01101110: on when centre or right is set, except for 111
        new = (x | right) & ~(left & x & right) & full
        return Checkpoint(new, w)


# (state, symbol) -> (write, move, next state); state 3 is the halt state
_BB3 = {
    (0, 0): (1, +1, 1),
    (0, 1): (1, +1, 3),
    (1, 0): (0, +1, 2),
    (1, 1): (1, +1, 1),
    (2, 0): (1, -1, 2),
    (2, 1): (1, -1, 0),
}
HALT = 3


@dataclass(frozen=True)
class BusyBeaver3:
    """Three-state, two-symbol busy beaver on a cyclic tape of ``width`` cells.

    From a blank tape it halts after 14 steps leaving six 1s.  The halt state
    maps every configuration to itself so ``step`` is total.

    The configuration packs ``tape | head << width | state << (width + head_bits)``.
    """

    width: int

    @property
    def head_bits(self) -> int:
        return max(1, (self.width - 1).bit_length())

    @property
    def config_size_bits(self) -> int:
        return self.width + self.head_bits + 2

    def pack(self, tape: int, head: int, state: int) -> Checkpoint:
        value = tape | head << self.width | state << (self.width + self.head_bits)
        return Checkpoint(value, self.config_size_bits)

    def unpack(self, c: Checkpoint) -> tuple[int, int, int]:
        w, hb = self.width, self.head_bits
        return c.value & ((1 << w) - 1), (c.value >> w) & ((1 << hb) - 1), c.value >> (w + hb)

    def initial(self, data: bytes) -> Checkpoint:
        return self.pack(_bytes_to_int(data, self.width), self.width // 2, 0)

    def step(self, c: Checkpoint) -> Checkpoint:
        tape, head, state = self.unpack(c)
        if state == HALT:
            return c
        write, move, nxt = _BB3[state, tape >> head & 1]
        tape = (tape & ~(1 << head)) | (write << head)
        return self.pack(tape, (head + move) % self.width, nxt)


MACHINES = {"counter": Counter, "eca110": Rule110, "tm-busy3": BusyBeaver3}


def builtin_machine(name: str, width_bits: int) -> SteppedMachine:
    if name not in MACHINES:
        raise ParameterError(f"unknown machine {name!r}; choose from {', '.join(MACHINES)}")
    if not MIN_WIDTH <= width_bits <= MAX_WIDTH:
        raise ParameterError(f"width must be in {MIN_WIDTH}..{MAX_WIDTH}")
    return MACHINES[name](width_bits)


def run_segment(machine: SteppedMachine, c: Checkpoint, steps: int) -> Checkpoint:
    for _ in range(steps):
        c = machine.step(c)
    return c


def direct_run(machine: SteppedMachine, data: bytes, segments: int, segment_len: int) -> Checkpoint:
    """Plain irreversible run: ``segments * segment_len`` steps from the input."""
    if segments < 0 or segment_len < 1:
        raise ParameterError("segments must be >= 0 and segment_len >= 1")
    return run_segment(machine, machine.initial(data), segments * segment_len)


@dataclass(frozen=True)
class SimulationReport:
    final: Checkpoint | None
    segments_computed: int
    peak_checkpoints: int
    bits_erased: int
    schedule_won: bool

    def to_dict(self) -> dict:
        return {
            "final_hex": None if self.final is None else self.final.hex(),
            "segments_computed": self.segments_computed,
            "peak_checkpoints": self.peak_checkpoints,
            "bits_erased": self.bits_erased,
            "schedule_won": self.schedule_won,
        }


def execute(machine: SteppedMachine, data: bytes, schedule: Schedule, segment_len: int) -> SimulationReport:
    """Execute ``schedule`` against a checkpoint store.

    ``final`` is the checkpoint of the last node, copied out when that node is
    first computed; it is ``None`` if the schedule never reaches it.
    Pebble and erasure budgets are not enforced here, that is the game's job.
    """
    if segment_len < 1:
        raise ParameterError("segment_len must be >= 1")
    params = schedule.params
    forward = sum(1 for m in schedule.moves if m.kind is not MoveKind.ERASE)
    if forward * segment_len > MAX_SIMULATED_STEPS:
        raise SimulationError(
            f"schedule needs {forward * segment_len} machine steps (limit {MAX_SIMULATED_STEPS})"
        )

    store = {0: machine.initial(data)}
    final = None
    segments = 0
    peak = 1
    erased = 0
    for i, move in enumerate(schedule.moves):
        node = move.node
        if node > params.game_length:
            raise NodeOutOfRange(f"game has only {params.game_length} nodes", move, i)
        if move.kind is MoveKind.ERASE:
            if node not in store:
                raise SimulationError(f"move {i}: erase {node}: no checkpoint stored")
            del store[node]
            erased += machine.config_size_bits
            continue

        if node - 1 not in store:
            raise MissingPredecessor(f"move {i}: {move.kind.value} {node}: checkpoint {node - 1} is not stored")
        computed = run_segment(machine, store[node - 1], segment_len)
        segments += 1
        if move.kind is MoveKind.PLACE:
            if node in store:
                raise SimulationError(f"move {i}: place {node}: checkpoint already stored")
            store[node] = computed
            peak = max(peak, len(store))
            if node == params.game_length and final is None:
                final = computed
        else:
            if node not in store:
                raise SimulationError(f"move {i}: remove {node}: no checkpoint stored")
            if store[node] != computed:
                raise CancelMismatch(f"move {i}: recomputed checkpoint {node} differs from stored copy")
            del store[node]

    return SimulationReport(
        final=final,
        segments_computed=segments,
        peak_checkpoints=peak,
        bits_erased=erased,
        schedule_won=final is not None and len(store) == 1,
    )
