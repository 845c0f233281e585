"""Recursive fixed-parameter solver driven by tight separator sequences.

The core procedure decides the restricted game: some odd steps are free
(set P), some are pre-committed by a bijection gamma onto fixed
locations (set Q onto Y, always including the anchor vertex at the last
step), and the question is whether a valid partial schedule over P u Q,
agreeing with gamma, keeps every critical vertex from burning.

Witness soundness is enforced: whenever the solver answers yes, the
returned schedule has been replayed through the game engine.

The separator machinery requires that critical vertices are never worth
protecting directly.  `solve` arranges this for arbitrary instances by
attaching budget+1 unprotectable pendant twins to every critical vertex
and targeting those instead; `solve_restricted` on raw instances decides
the separator-based semantics as is.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .game import GameModel, Instance, InvalidPlacement, Strategy, final_masks, saves
from .graph import Graph, bfs_distances, reachable_set
from .separators import min_separator, tight_sequence

Label = tuple  # ("f", odd step) | ("b", even step) | ("p",)


class SolverError(AssertionError):
    """An internal guarantee of the solver failed."""


@dataclass(frozen=True)
class RestrictedInstance:
    """Instance of the restricted game; see the module docstring."""

    graph: Graph
    source: int
    critical: frozenset[int]
    horizon: int
    anchor: int
    free_steps: frozenset[int]
    fixed_steps: frozenset[int]
    fixed_locations: frozenset[int]
    gamma: tuple[tuple[int, int], ...]

    def __post_init__(self):
        g, k = self.graph, self.horizon
        if k < 1:
            raise ValueError("horizon must be at least 1")
        g._check(self.source)
        g._check(self.anchor)
        for v in self.critical | self.fixed_locations:
            g._check(v)
        odd = set(range(1, 2 * k, 2))
        if not (self.free_steps <= odd and self.fixed_steps <= odd):
            raise ValueError("steps must be odd and within the horizon")
        if self.free_steps & self.fixed_steps:
            raise ValueError("free and fixed steps must be disjoint")
        gamma = dict(self.gamma)
        if set(gamma) != set(self.fixed_steps):
            raise ValueError("gamma must be defined exactly on the fixed steps")
        if set(gamma.values()) != set(self.fixed_locations) or len(
            set(gamma.values())
        ) != len(gamma):
            raise ValueError("gamma must be a bijection onto the fixed locations")
        if 2 * k - 1 not in self.fixed_steps:
            raise ValueError("the last odd step must be fixed")
        if gamma[2 * k - 1] != self.anchor:
            raise ValueError("the last step must place on the anchor")
        if self.anchor not in self.fixed_locations:
            raise ValueError("anchor must be a fixed location")
        if self.source in self.critical:
            raise ValueError("source may not be critical")
        if self.source in self.fixed_locations:
            raise ValueError("source may not be a fixed location")
        if self.critical & self.fixed_locations:
            raise ValueError("critical vertices may not be fixed locations")
        object.__setattr__(self, "gamma", tuple(sorted(gamma.items())))

    @property
    def p(self) -> int:
        return len(self.free_steps)

    @property
    def gamma_dict(self) -> dict[int, int]:
        return dict(self.gamma)

    def key(self):
        return (
            self.graph.n,
            tuple(sorted(self.graph.edges())),
            self.source,
            tuple(sorted(self.critical)),
            self.horizon,
            self.anchor,
            tuple(sorted(self.free_steps)),
            self.gamma,
        )


@dataclass
class SolveStats:
    calls: int = 0
    memo_hits: int = 0
    max_depth: int = 0
    partitions: int = 0
    labelings: int = 0
    children_solved: int = 0
    shortcut_hits: int = 0
    shortcut_fallbacks: int = 0
    completion_searches: int = 0
    merge_failures: int = 0


@dataclass
class SolveResult:
    answer: bool
    witness: Strategy | None
    engine: str
    stats: SolveStats = field(default_factory=SolveStats)


def wrap_instance(inst: Instance) -> RestrictedInstance:
    """Lift a plain instance into the restricted game.

    Adds horizon budget+1 with an isolated anchor fixed on the new last
    step, and replaces the critical set by budget+1 fresh pendant twins
    per critical vertex: protecting at most budget of them is useless,
    so keeping them safe is exactly keeping their parents from burning,
    which makes the separator machinery complete for the semantics
    where placements on critical vertices are allowed.
    """
    k = inst.budget
    n = inst.graph.n
    edges = list(inst.graph.edges())
    nxt = n
    for c in sorted(inst.critical):
        for _ in range(k + 1):
            edges.append((c, nxt))
            nxt += 1
    pendants = frozenset(range(n, nxt))
    anchor = nxt
    graph = Graph(nxt + 1, edges)
    return RestrictedInstance(
        graph=graph,
        source=inst.source,
        critical=pendants,
        horizon=k + 1,
        anchor=anchor,
        free_steps=frozenset(range(1, 2 * k, 2)),
        fixed_steps=frozenset({2 * k + 1}),
        fixed_locations=frozenset({anchor}),
        gamma=((2 * k + 1, anchor),),
    )


def solve(inst: Instance) -> SolveResult:
    """Decide a plain instance and extract a verified strategy."""
    solver = _Solver()
    rinst = wrap_instance(inst)
    answer, schedule = solver.solve(rinst)
    if not answer:
        return SolveResult(False, None, "fpt", solver.stats)
    original_steps = rinst.free_steps
    witness = Strategy.from_steps(
        {
            step: v
            for step, v in schedule.items()
            if step in original_steps and v < inst.graph.n
        }
    )
    if not saves(inst, witness):
        raise SolverError("extracted witness failed verification")
    return SolveResult(True, witness, "fpt", solver.stats)


def solve_restricted(
    rinst: RestrictedInstance,
) -> tuple[bool, dict[int, int] | None]:
    """Decide a restricted instance; returns (answer, schedule by odd step)."""
    return _Solver().solve(rinst)


class _Solver:
    def __init__(self):
        self.stats = SolveStats()
        self.memo: dict = {}

    # -- verification helpers ------------------------------------------

    def _valid(self, rinst: RestrictedInstance, schedule: dict[int, int]) -> bool:
        try:
            final_masks(rinst.graph, rinst.source, schedule)
            return True
        except InvalidPlacement:
            return False

    def _saves(self, rinst: RestrictedInstance, schedule: dict[int, int]) -> bool:
        try:
            burned, _ = final_masks(rinst.graph, rinst.source, schedule)
        except InvalidPlacement:
            return False
        return all(not (burned >> c & 1) for c in rinst.critical)

    # -- main recursion ------------------------------------------------

    def solve(
        self, rinst: RestrictedInstance, depth: int = 0, top_p: int | None = None
    ) -> tuple[bool, dict[int, int] | None]:
        if top_p is None:
            top_p = rinst.p
        if depth > top_p:
            raise SolverError("recursion depth exceeded the free-step count")
        self.stats.calls += 1
        self.stats.max_depth = max(self.stats.max_depth, depth)
        key = rinst.key()
        if key in self.memo:
            self.stats.memo_hits += 1
            return self.memo[key]
        result = self._solve_uncached(rinst, depth, top_p)
        self.memo[key] = result
        return result

    def _solve_uncached(self, rinst, depth, top_p):
        g = rinst.graph
        gamma = rinst.gamma_dict
        p = rinst.p
        without_y = reachable_set(
            g, {rinst.source}, rinst.fixed_locations
        )
        separated = not (without_y & rinst.critical)

        if p == 0:
            ok = separated and self._valid(rinst, gamma)
            if ok and not self._saves(rinst, gamma):
                raise SolverError("fixed schedule valid and separated but not saving")
            return (True, dict(gamma)) if ok else (False, None)

        if separated:
            # any valid completion of gamma wins; usually gamma alone is one
            schedule = self._search_completion(rinst)
            return (True, schedule) if schedule is not None else (False, None)

        # no separator small enough means no schedule can cut the fire off
        sub, old_ids = g.induced(
            set(g.vertices()) - rinst.fixed_locations
        )
        to_sub = {old: new for new, old in enumerate(old_ids)}
        res = min_separator(
            sub, {to_sub[rinst.source]}, {to_sub[c] for c in rinst.critical}
        )
        if res is None or res[0] > p:
            return False, None

        seq = tight_sequence(
            sub,
            {to_sub[rinst.source]},
            {to_sub[c] for c in rinst.critical},
            p,
        )
        assert seq is not None
        layers = [frozenset(old_ids[v] for v in h) for h in seq.layers]
        seps = [frozenset(old_ids[v] for v in s) for s in seq.separators]
        q = seq.q

        if q > rinst.horizon:
            schedule = self._shortcut_schedule(rinst, layers, seps)
            if schedule is not None:
                self.stats.shortcut_hits += 1
                return True, schedule
            # the distance argument can be beaten by fire routed through
            # not-yet-protected fixed locations; fall back to search
            self.stats.shortcut_fallbacks += 1
            schedule = self._search_completion(rinst)
            return (True, schedule) if schedule is not None else (False, None)

        return self._recurse(rinst, layers, seps, depth, top_p)

    # -- phase 0 helpers -----------------------------------------------

    def _shortcut_schedule(self, rinst, layers, seps):
        """Protect the outermost separator in increasing-distance order."""
        dist = bfs_distances(rinst.graph, rinst.source, rinst.fixed_locations)
        last = sorted(seps[-1], key=lambda v: (dist[v], v))
        steps = sorted(rinst.free_steps)
        if len(last) > len(steps):
            raise SolverError("outermost separator exceeds the free steps")
        schedule = dict(rinst.gamma)
        for step, v in zip(steps, last):
            schedule[step] = v
        if self._valid(rinst, schedule) and self._saves(rinst, schedule):
            return schedule
        return None

    def _search_completion(self, rinst) -> dict[int, int] | None:
        """Exhaustive completion of gamma over the free steps (with skips).

        Skips are tried first, so a valid gamma-only schedule is found
        without any branching.  Gamma placements are forced; a step
        whose gamma target is already burning or protected fails the
        whole branch.
        """
        self.stats.completion_searches += 1
        g = rinst.graph
        masks = g._masks
        gamma = rinst.gamma_dict
        free = rinst.free_steps
        crit = sum(1 << c for c in rinst.critical)
        all_mask = (1 << g.n) - 1
        last_step = 2 * rinst.horizon - 1

        def grow(mask):
            out = 0
            m = mask
            while m:
                v = (m & -m).bit_length() - 1
                m &= m - 1
                out |= masks[v]
            return out

        def after_spread(burned, protected):
            return burned | (grow(burned) & ~(burned | protected))

        def settled_safe(burned, protected):
            while True:
                if burned & crit:
                    return False
                new = grow(burned) & ~(burned | protected)
                if not new:
                    return True
                burned |= new

        failed: set[tuple[int, int, int]] = set()

        def search(step, burned, protected):
            if burned & crit:
                return None
            if step > last_step:
                return {} if settled_safe(burned, protected) else None
            key = (step, burned, protected)
            if key in failed:
                return None
            result = None
            if step in gamma:
                v = gamma[step]
                bit = 1 << v
                if not ((burned | protected) & bit):
                    sub = search(
                        step + 2, after_spread(burned, protected | bit), protected | bit
                    )
                    if sub is not None:
                        result = {step: v, **sub}
            elif step in free:
                result = search(step + 2, after_spread(burned, protected), protected)
                m = all_mask & ~(burned | protected)
                while result is None and m:
                    v = (m & -m).bit_length() - 1
                    m &= m - 1
                    sub = search(
                        step + 2,
                        after_spread(burned, protected | (1 << v)),
                        protected | (1 << v),
                    )
                    if sub is not None:
                        result = {step: v, **sub}
            else:
                result = search(step + 2, after_spread(burned, protected), protected)
            if result is None:
                failed.add(key)
            return result

        schedule = search(1, 1 << rinst.source, 0)
        if schedule is None:
            return None
        if not (self._valid(rinst, schedule) and self._saves(rinst, schedule)):
            raise SolverError("completion search produced a bad schedule")
        return schedule

    # -- recursion over partitions and boundary labelings ---------------

    def _recurse(self, rinst, layers, seps, depth, top_p):
        g = rinst.graph
        p, q, k = rinst.p, len(seps), rinst.horizon
        free_sorted = sorted(rinst.free_steps)
        regions = self._regions(rinst, layers, seps)
        dist = bfs_distances(g, rinst.source)

        partitions_seen = 0
        # part indices: 0..q-1 are placements on separators 1..q,
        # q..2q are placements inside regions 1..q+1
        for assignment in itertools.product(range(2 * q + 1), repeat=p):
            if p > 0 and len(set(assignment)) == 1 and assignment[0] >= q:
                continue  # trivial: every free step inside one region
            partitions_seen += 1
            a_parts = [frozenset() for _ in range(q + 2)]  # A_0..A_{q+1}
            b_parts = [frozenset() for _ in range(q + 2)]  # B_1..B_{q+1}
            for step, part in zip(free_sorted, assignment):
                if part < q:
                    a_parts[part + 1] |= {step}
                else:
                    b_parts[part - q + 1] |= {step}

            label_sets = [self._boundary_labelings(seps[i - 1], a_parts[i], k, dist)
                          for i in range(1, q + 1)]
            combos = 1
            for ls in label_sets:
                combos *= len(ls)
            self.stats.labelings += combos
            if combos == 0:
                continue
            assert combos <= (p + k + 1) ** (k * p), "labeling bound exceeded"

            schedule = self._chain_dp(
                rinst, layers, seps, regions, a_parts, b_parts, label_sets,
                depth, top_p,
            )
            if schedule is not None:
                assert partitions_seen <= (2 * q + 1) ** p
                self.stats.partitions += partitions_seen
                return True, schedule
        assert partitions_seen <= (2 * q + 1) ** p
        self.stats.partitions += partitions_seen
        return False, None

    def _regions(self, rinst, layers, seps):
        """W_1..W_{q+1} in parent ids; together with the separators, the
        source and the critical set they partition the graph minus Y."""
        g = rinst.graph
        q = len(seps)
        regions = [layers[1] - layers[0]]
        for i in range(2, q + 1):
            regions.append(layers[i] - layers[i - 1] - seps[i - 2])
        rest = (
            frozenset(g.vertices())
            - rinst.fixed_locations
            - layers[q]
            - seps[q - 1]
            - rinst.critical
        )
        regions.append(rest)
        whole = set(rinst.critical) | set(rinst.fixed_locations) | {rinst.source}
        for part in regions + list(seps):
            assert not (whole & part), "decomposition must be disjoint"
            whole |= part
        assert whole == set(g.vertices()), "decomposition must cover the graph"
        return regions

    def _boundary_labelings(self, sep, a_times, k, dist):
        """Labelings of one separator compatible with its step budget.

        Firefighter times biject onto a_times; the rest take burn times
        (even, at least twice the source distance) or the saved label.
        """
        vertices = sorted(sep)
        times = sorted(a_times)
        out = []
        if len(times) > len(vertices):
            return out
        burn_options = {
            v: [("b", t) for t in range(2, 2 * k + 1, 2) if t >= 2 * dist[v]]
            + [("p",)]
            for v in vertices
        }
        for fire_vs in itertools.permutations(vertices, len(times)):
            rest = [v for v in vertices if v not in fire_vs]
            for labels in itertools.product(*(burn_options[v] for v in rest)):
                lab = {v: ("f", t) for v, t in zip(fire_vs, times)}
                lab.update(dict(zip(rest, labels)))
                out.append(lab)
        return out

    def _chain_dp(
        self, rinst, layers, seps, regions, a_parts, b_parts, label_sets,
        depth, top_p,
    ):
        """Feasibility DP along the separator chain.

        Child i only depends on the labelings of separators i-1 and i,
        so a labeling combination works iff there is a chain of locally
        feasible boundary labelings.  States are labeling indices; the
        first feasible predecessor is kept for witness extraction.
        """
        q = len(seps)
        empty: dict = {}
        columns = [[empty]] + label_sets + [[empty]]
        # reach[j] = (predecessor index, child schedule mapped to parent)
        reach: list[dict[int, tuple[int, dict[int, int]]]] = [
            {0: (-1, {})}
        ] + [dict() for _ in range(q + 1)]
        for i in range(1, q + 2):
            for prev_idx, prev_lab in enumerate(columns[i - 1]):
                if prev_idx not in reach[i - 1]:
                    continue
                for cur_idx, cur_lab in enumerate(columns[i]):
                    if cur_idx in reach[i]:
                        continue
                    child, to_parent = self._build_child(
                        rinst, layers, seps, regions, a_parts, b_parts,
                        i, prev_lab, cur_lab,
                    )
                    if child.p >= rinst.p:
                        raise SolverError("child free steps did not shrink")
                    self.stats.children_solved += 1
                    ans, schedule = self.solve(child, depth + 1, top_p)
                    if not ans:
                        continue
                    mapped = {}
                    for step in b_parts[i]:
                        v = schedule.get(step)
                        if v is not None and to_parent[v] is not None:
                            mapped[step] = to_parent[v]
                    reach[i][cur_idx] = (prev_idx, mapped)
            if not reach[i]:
                return None
        if 0 not in reach[q + 1]:
            return None

        merged = dict(rinst.gamma)
        idx = 0
        for i in range(q + 1, 0, -1):
            prev_idx, mapped = reach[i][idx]
            merged.update(mapped)
            if i - 1 >= 1:
                for v, lab in columns[i - 1][prev_idx].items():
                    if lab[0] == "f":
                        merged[lab[1]] = v
            idx = prev_idx

        placed = list(merged.values())
        if len(set(placed)) != len(placed) or not (
            self._valid(rinst, merged) and self._saves(rinst, merged)
        ):
            self.stats.merge_failures += 1
            return None
        return merged

    # -- child construction ---------------------------------------------

    def _build_child(
        self, rinst, layers, seps, regions, a_parts, b_parts, i, prev_lab, cur_lab
    ):
        """Instance for segment i between separators i-1 and i.

        The segment keeps both boundary separators, the region between
        them and all fixed locations.  A fresh source feeds every
        burn-labeled boundary vertex through budget+1 disjoint timed
        paths, with counter-paths onto the anchor that make an early
        burn invalidate the anchor's fixed placement; saved-labeled
        vertices attach to a fresh critical hub; the hub and every
        burn/saved-labeled vertex get budget+1 twin copies so that
        protecting them is useless.
        """
        g = rinst.graph
        k = rinst.horizon
        q = len(seps)
        left = {rinst.source} if i == 1 else set(seps[i - 2])
        right = set(rinst.critical) if i == q + 1 else set(seps[i - 1])
        keep = sorted(left | regions[i - 1] | right | rinst.fixed_locations)
        to_child = {old: new for new, old in enumerate(keep)}
        labels = {**prev_lab, **cur_lab}

        nxt = len(keep)

        def fresh():
            nonlocal nxt
            nxt += 1
            return nxt - 1

        edges = {
            (to_child[u], to_child[v])
            for u in keep
            for v in g.neighbors(u)
            if v in to_child and u < v
        }
        source = to_child[rinst.source] if i == 1 else fresh()
        hub = fresh()
        for c in rinst.critical:
            if c in to_child:
                edges.add((to_child[c], hub))

        def add_path(a, b, length):
            prev = a
            for _ in range(length - 1):
                w = fresh()
                edges.add((prev, w))
                prev = w
            edges.add((prev, b))

        anchor = to_child[rinst.anchor]
        for v, lab in sorted(labels.items()):
            cv = to_child[v]
            if lab[0] == "p":
                edges.add((cv, hub))
            elif lab[0] == "b":
                length = lab[1] // 2
                if length == 1:
                    edges.add((source, cv))
                else:
                    for _ in range(k + 1):
                        add_path(source, cv, length)
                back = k - length
                if back == 1:
                    edges.add((cv, anchor))
                elif back > 1:
                    for _ in range(k + 1):
                        add_path(cv, anchor, back)

        # twin copies: identical neighborhoods, no edges inside a class
        twinned = [hub] + [
            to_child[v] for v, lab in sorted(labels.items()) if lab[0] in ("b", "p")
        ]
        classes = {v: [v] + [fresh() for _ in range(k)] for v in twinned}
        blown = set()
        for a, b in edges:
            for x in classes.get(a, (a,)):
                for y in classes.get(b, (b,)):
                    blown.add((x, y) if x < y else (y, x))

        child_graph = Graph(nxt, sorted(blown))
        fixed_steps = rinst.fixed_steps | a_parts[i - 1] | a_parts[i]
        gamma = dict((step, to_child[v]) for step, v in rinst.gamma)
        fixed_locations = {to_child[v] for v in rinst.fixed_locations}
        for v, lab in labels.items():
            if lab[0] == "f":
                gamma[lab[1]] = to_child[v]
                fixed_locations.add(to_child[v])
        child = RestrictedInstance(
            graph=child_graph,
            source=source,
            critical=frozenset(classes[hub]),
            horizon=k,
            anchor=anchor,
            free_steps=frozenset(b_parts[i]),
            fixed_steps=frozenset(fixed_steps),
            fixed_locations=frozenset(fixed_locations),
            gamma=tuple(sorted(gamma.items())),
        )
        to_parent: list[int | None] = [None] * nxt
        for old, new in to_child.items():
            to_parent[new] = old
        return child, to_parent
