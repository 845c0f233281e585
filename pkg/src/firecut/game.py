"""Turn-based firefighting game: simulation, strategy validation, saving.

Time convention: the fire starts on the source at time 0, firefighter
turn i happens at odd time 2i-1, and fire spreads at even times.  The
game runs to a fixpoint (no set changes any more), not to a fixed
horizon.  A strategy is a partial map: turns may be skipped.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Mapping

from .graph import Graph


class GameModel(enum.Enum):
    PLAIN = "plain"  # only fire spreads at even steps
    SPREADING = "spreading"  # protection spreads first, then fire


class InvalidPlacement(ValueError):
    """A placement landed on a burning or already-protected vertex."""

    def __init__(self, step: int, vertex: int, reason: str):
        super().__init__(f"placement on vertex {vertex} at step {step}: {reason}")
        self.step = step
        self.vertex = vertex
        self.reason = reason


@dataclass(frozen=True)
class Instance:
    """A saving-the-critical-set instance (graph, source, critical set, budget)."""

    graph: Graph
    source: int
    critical: frozenset[int]
    budget: int

    def __post_init__(self):
        g = self.graph
        g._check(self.source)
        for c in self.critical:
            g._check(c)
        if self.source in self.critical:
            raise ValueError("source may not be critical")
        if self.budget < 0:
            raise ValueError("budget must be non-negative")
        object.__setattr__(self, "critical", frozenset(self.critical))


@dataclass(frozen=True)
class Strategy:
    """Partial firefighter schedule: (turn, vertex) pairs, turn i at time 2i-1."""

    placements: tuple[tuple[int, int], ...]

    def __post_init__(self):
        items = tuple(sorted(self.placements))
        turns = [t for t, _ in items]
        verts = [v for _, v in items]
        if any(t < 1 for t in turns):
            raise ValueError("turns are 1-based")
        if len(set(turns)) != len(turns):
            raise ValueError("duplicate turn in strategy")
        if len(set(verts)) != len(verts):
            raise ValueError("a vertex may be protected only once")
        object.__setattr__(self, "placements", items)

    @classmethod
    def from_dict(cls, by_turn: Mapping[int, int]) -> "Strategy":
        return cls(tuple(sorted(by_turn.items())))

    @classmethod
    def from_steps(cls, by_step: Mapping[int, int]) -> "Strategy":
        """Build from a map keyed by odd time steps (step 2i-1 -> turn i)."""
        for s in by_step:
            if s % 2 == 0:
                raise ValueError(f"placement step {s} is not odd")
        return cls(tuple(sorted(((s + 1) // 2, v) for s, v in by_step.items())))

    def by_turn(self) -> dict[int, int]:
        return dict(self.placements)

    def by_step(self) -> dict[int, int]:
        return {2 * t - 1: v for t, v in self.placements}

    def turns(self) -> frozenset[int]:
        return frozenset(t for t, _ in self.placements)

    def vertices(self) -> frozenset[int]:
        return frozenset(v for _, v in self.placements)

    def __len__(self) -> int:
        return len(self.placements)


EMPTY_STRATEGY = Strategy(())


@dataclass(frozen=True)
class TraceStep:
    time: int
    burned: frozenset[int]
    protected: frozenset[int]


@dataclass(frozen=True)
class GameTrace:
    steps: tuple[TraceStep, ...]
    terminal: bool = True

    @property
    def final_burned(self) -> frozenset[int]:
        return self.steps[-1].burned

    @property
    def final_protected(self) -> frozenset[int]:
        return self.steps[-1].protected

    def burn_time(self, v: int) -> int | None:
        for st in self.steps:
            if v in st.burned:
                return st.time
        return None

    def to_log_lines(self) -> list[str]:
        def ids(s: frozenset[int]) -> str:
            return ",".join(str(v) for v in sorted(s))

        return [
            f"t={st.time} burned={ids(st.burned)} protected={ids(st.protected)}"
            for st in self.steps
        ]


def _bits(mask: int) -> Iterable[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask &= mask - 1


def run_steps(
    graph: Graph,
    source: int,
    by_step: Mapping[int, int],
    model: GameModel = GameModel.PLAIN,
):
    """Core fixpoint loop on bitmasks.

    Yields (time, burned_mask, protected_mask) snapshots; raises
    InvalidPlacement on a bad placement.
    """
    masks = graph._masks
    burned = 1 << source
    protected = 0
    last_step = max(by_step, default=0)
    yield 0, burned, protected
    t = 0
    while True:
        t += 1
        if t % 2 == 1:
            v = by_step.get(t)
            if v is not None:
                bit = 1 << v
                if burned & bit:
                    raise InvalidPlacement(t, v, "vertex is burning")
                if protected & bit:
                    raise InvalidPlacement(t, v, "vertex already protected")
                protected |= bit
                yield t, burned, protected
        else:
            changed = False
            if model is GameModel.SPREADING:
                grow = 0
                for u in _bits(protected):
                    grow |= masks[u]
                grow &= ~(burned | protected)
                if grow:
                    protected |= grow
                    changed = True
            spread = 0
            for u in _bits(burned):
                spread |= masks[u]
            spread &= ~(burned | protected)
            if spread:
                burned |= spread
                changed = True
            assert burned & protected == 0
            if changed:
                yield t, burned, protected
            if not changed and t > last_step:
                return


def simulate(
    inst: Instance, strat: Strategy, model: GameModel = GameModel.PLAIN
) -> GameTrace:
    """Play the game to its fixpoint; raises InvalidPlacement on a bad move.

    Placements must sit on turns 1..budget and on existing vertices.
    """
    g = inst.graph
    for turn, v in strat.placements:
        g._check(v)
        if turn > inst.budget:
            raise ValueError(f"turn {turn} exceeds budget {inst.budget}")
    steps = tuple(
        TraceStep(
            t,
            frozenset(_bits(burned)),
            frozenset(_bits(protected)),
        )
        for t, burned, protected in run_steps(g, inst.source, strat.by_step(), model)
    )
    return GameTrace(steps)


def saves(
    inst: Instance, strat: Strategy, model: GameModel = GameModel.PLAIN
) -> bool:
    """True iff the strategy is valid and no critical vertex ever burns."""
    trace = simulate(inst, strat, model)
    return not (trace.final_burned & inst.critical)


def validate_partial(
    inst: Instance, strat: Strategy, model: GameModel = GameModel.PLAIN
) -> bool:
    """True iff every placement lands on a non-burning, non-protected vertex."""
    try:
        simulate(inst, strat, model)
        return True
    except InvalidPlacement:
        return False


def final_masks(
    graph: Graph,
    source: int,
    by_step: Mapping[int, int],
    model: GameModel = GameModel.PLAIN,
) -> tuple[int, int]:
    """Final (burned, protected) masks; raises InvalidPlacement on a bad move."""
    burned = protected = 0
    for _, burned, protected in run_steps(graph, source, by_step, model):
        pass
    return burned, protected
