"""Exhaustive game-tree search: the ground truth for small instances."""

from __future__ import annotations

from .game import GameModel, Instance, Strategy

DEFAULT_MAX_N = 16
DEFAULT_MAX_K = 5


class OracleCapExceeded(ValueError):
    """Instance is larger than the configured brute-force caps."""


def oracle_solve(
    inst: Instance,
    model: GameModel = GameModel.PLAIN,
    *,
    max_n: int = DEFAULT_MAX_N,
    max_k: int = DEFAULT_MAX_K,
    allow_skips: bool = True,
    memoize: bool = True,
) -> tuple[bool, Strategy | None]:
    """Decide by searching every placement sequence, spreading in between.

    Branches, per turn, over every non-burning non-protected vertex plus
    (unless `allow_skips` is off) an explicit skip.  States that already
    failed are memoized on (burned, protected, turn).  Refuses instances
    beyond the configured caps.
    """
    g = inst.graph
    if g.n > max_n:
        raise OracleCapExceeded(f"n={g.n} exceeds oracle cap {max_n}")
    if inst.budget > max_k:
        raise OracleCapExceeded(f"k={inst.budget} exceeds oracle cap {max_k}")

    masks = g._masks
    critical = sum(1 << c for c in inst.critical)
    all_mask = (1 << g.n) - 1
    spreading = model is GameModel.SPREADING

    def grow(mask: int) -> int:
        out = 0
        m = mask
        while m:
            v = (m & -m).bit_length() - 1
            m &= m - 1
            out |= masks[v]
        return out

    def settle(burned: int, protected: int) -> tuple[int, int, bool]:
        """Spread once (protection first in the spreading model)."""
        if spreading:
            protected |= grow(protected) & ~(burned | protected)
        new = grow(burned) & ~(burned | protected)
        return burned | new, protected, bool(new)

    def fire_dead(burned: int, protected: int) -> bool:
        return not (grow(burned) & ~(burned | protected))

    failed: set[tuple[int, int, int]] = set()

    def search(burned: int, protected: int, turn: int) -> list[tuple[int, int]] | None:
        """Placement list saving the critical set from this state, or None."""
        if burned & critical:
            return None
        # with skips allowed, a dead fire settles the game early; in
        # total-strategy mode every remaining turn still has to place
        if turn > inst.budget or (allow_skips and fire_dead(burned, protected)):
            # no further placement can matter; spread runs to fixpoint
            while True:
                burned, protected, changed = settle(burned, protected)
                if burned & critical:
                    return None
                if not changed:
                    return []
        key = (burned, protected, turn)
        if memoize and key in failed:
            return None
        candidates = all_mask & ~(burned | protected)
        m = candidates
        while m:
            v = (m & -m).bit_length() - 1
            m &= m - 1
            b2, p2, _ = settle(burned, protected | (1 << v))
            rest = search(b2, p2, turn + 1)
            if rest is not None:
                return [(turn, v)] + rest
        if allow_skips:
            b2, p2, _ = settle(burned, protected)
            rest = search(b2, p2, turn + 1)
            if rest is not None:
                return rest
        if memoize:
            failed.add(key)
        return None

    placements = search(1 << inst.source, 0, 1)
    if placements is None:
        return False, None
    return True, Strategy(tuple(placements))
