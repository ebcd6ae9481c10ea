"""Hamiltonian surfaces and pinched surfaces in polytope 2-skeletons.

The search decides, for every 2-face of the substrate, whether it belongs
to the surface, subject to: every substrate edge lies in exactly two
chosen faces (the subcomplex then contains the full 1-skeleton), and in
surface mode every vertex link closes into a single cycle.  Pinched mode
allows any disjoint-cycle link, which for these substrates is implied by
the edge constraints alone.

Branching follows the deterministic scheme: the open edge with the lowest
index is completed first, candidate face pairs in lexicographic order.
The first vertex's link is fixed up to the substrate symmetry group
(one representative per stabilizer orbit of link completions), which is
both the classical way these searches are run and the reason they finish
quickly; a full unreduced mode exists for cross-checking.
"""

from __future__ import annotations

import itertools
import json
import os
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

from .complexes import (PolytopalComplex, SimplicialComplex, SurfaceProfile,
                        are_isomorphic, classify_closed, iso_fingerprint)
from .errors import BudgetExceeded, NotAMatching
from .perms import PermGroup, automorphism_group

UNDEC, IN, OUT = 0, 1, 2


@dataclass
class SearchProblem:
    substrate: PolytopalComplex
    mode: str                           # "surface" or "pinched"
    symmetry: Optional[PermGroup] = None
    node_limit: Optional[int] = None
    time_limit: Optional[float] = None

    def __post_init__(self):
        if self.mode not in ("surface", "pinched"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if any(len(fs) < 2 for fs in self.substrate.edge_faces):
            raise ValueError("every substrate edge must lie in >= 2 faces")


@dataclass
class SolutionClass:
    representative: SimplicialComplex
    profile: SurfaceProfile
    automorphism_order: int
    n_solutions: int
    strongly_connected: bool


@dataclass
class SearchOutcome:
    status: str                         # "exhausted" or "budget-exceeded"
    mode: str
    solutions: list                     # frozensets of face indices
    classes: list = field(default_factory=list)        # strongly connected
    split_classes: list = field(default_factory=list)  # dual graph splits
    nodes: int = 0
    wall_time: float = 0.0
    symmetry_reduced: bool = True
    n_roots: int = 0
    orbit_class_count: Optional[int] = None  # classes up to substrate symmetry


class _Engine:
    """Iterative DFS with exact per-vertex domain propagation.

    All vertex figures of one substrate are isomorphic graphs, so the
    complete list of valid link completions (Hamiltonian cycles in
    surface mode, 2-factors in pinched mode) is enumerated once per
    figure class and transported to every vertex as bitmasks over that
    vertex's face slots.  Propagation then filters each touched vertex's
    completion list against the current in/out masks: an empty filter
    kills the branch, and any face slot shared by all survivors (or by
    none) is forced.  This keeps every vertex domain-consistent at all
    times, which is what makes the large substrates tractable.
    """

    def __init__(self, problem: SearchProblem):
        self.problem = problem
        sub = problem.substrate
        self.sub = sub
        self.nfaces = len(sub.faces2)
        self.edge_faces = sub.edge_faces
        self.face_edges = []
        self.face_verts = []
        for j, poly in enumerate(sub.faces2):
            m = len(poly)
            eidx = [sub.edge_index[_norm(poly[i], poly[(i + 1) % m])] for i in range(m)]
            self.face_edges.append(tuple(eidx))
            self.face_verts.append(tuple(poly))
        self.v_faces = [tuple(fs) for fs in sub.vertex_faces]
        self.face_slots = [[] for _ in range(self.nfaces)]
        for v in range(sub.n_vertices):
            for s, j in enumerate(self.v_faces[v]):
                self.face_slots[j].append((v, s))
        # per edge (u, w): the slots of the shared faces on each side, in
        # one common order, for pairwise link-compatibility filtering
        slot_of = [{j: s for s, j in enumerate(self.v_faces[v])}
                   for v in range(sub.n_vertices)]
        self.edge_pair_info = []
        for e, (u, w) in enumerate(sub.edges):
            shared = sub.edge_faces[e]
            uslots = tuple(slot_of[u][j] for j in shared)
            wslots = tuple(slot_of[w][j] for j in shared)
            self.edge_pair_info.append((u, uslots, w, wslots))
        self.vertex_edges = [[] for _ in range(sub.n_vertices)]
        for e, (u, w) in enumerate(sub.edges):
            self.vertex_edges[u].append(e)
            self.vertex_edges[w].append(e)
        self.link_masks = _all_link_masks(sub, problem.mode)
        self.full_mask = [(1 << len(self.v_faces[v])) - 1
                          for v in range(sub.n_vertices)]
        self.in_mask = [0] * sub.n_vertices
        self.out_mask = [0] * sub.n_vertices
        self.state = [UNDEC] * self.nfaces
        self.edge_in = [0] * len(sub.edges)
        self.edge_und = [len(fs) for fs in sub.edge_faces]
        self.vert_undec = [len(fs) for fs in sub.vertex_faces]
        # survivors[v] is always the exact filter of link_masks[v] against
        # the current in/out masks; aux_trail restores narrowings on undo
        self.survivors = [list(m) for m in self.link_masks]
        self.link_count = [len(m) for m in self.link_masks]
        # baseline sizes: vertices still at baseline cannot narrow each
        # other pairwise, so those edge checks are skipped
        self.init_count = list(self.link_count)
        self.aux_trail = []
        self.trail = []
        self.nodes = 0

    def clone_baseline(self) -> "_Engine":
        """Copy of the current state with fresh (empty) trails; the
        current assignments and narrowings become permanent."""
        import copy as _copy
        eng = _copy.copy(self)
        eng.survivors = [list(s) for s in self.survivors]
        eng.link_count = list(self.link_count)
        eng.init_count = list(self.link_count)
        eng.in_mask = list(self.in_mask)
        eng.out_mask = list(self.out_mask)
        eng.state = list(self.state)
        eng.edge_in = list(self.edge_in)
        eng.edge_und = list(self.edge_und)
        eng.vert_undec = list(self.vert_undec)
        eng.aux_trail = []
        eng.trail = []
        eng.nodes = 0
        return eng

    def stabilize(self) -> bool:
        """Run propagation over every vertex to a fixpoint (used once per
        problem to build the shared baseline).  The baseline-skip rule is
        suspended so that the fixpoint really is pairwise consistent,
        then the reached domain sizes become the new baseline."""
        self.init_count = [-1] * self.sub.n_vertices
        ok = self._propagate([], set(range(self.sub.n_vertices)))
        self.init_count = list(self.link_count)
        return ok

    # -- assignment with propagation --

    def assign(self, face: int, value: int) -> bool:
        """Set one face and run propagation to a fixpoint; False means
        contradiction (the trail still records everything that was set)."""
        return self._propagate([(face, value)], set())

    def _propagate(self, queue: list, dirty: set) -> bool:
        while queue or dirty:
            if not queue:
                v = dirty.pop()
                forced = self._process_vertex(v, dirty)
                if forced is None:
                    return False
                queue.extend(forced)
                continue
            f, val = queue.pop()
            st = self.state[f]
            if st == val:
                continue
            if st != UNDEC:
                return False
            self.state[f] = val
            self.trail.append(f)
            for u, s in self.face_slots[f]:
                self.vert_undec[u] -= 1
                if val == IN:
                    self.in_mask[u] |= 1 << s
                else:
                    self.out_mask[u] |= 1 << s
                dirty.add(u)
            ok = True
            for e in self.face_edges[f]:
                self.edge_und[e] -= 1
                if val == IN:
                    self.edge_in[e] += 1
                ein, eund = self.edge_in[e], self.edge_und[e]
                if ein > 2 or ein + eund < 2:
                    ok = False
                elif eund > 0:
                    if ein == 2:
                        queue.extend((g, OUT) for g in self.edge_faces[e]
                                     if self.state[g] == UNDEC)
                    elif ein + eund == 2:
                        queue.extend((g, IN) for g in self.edge_faces[e]
                                     if self.state[g] == UNDEC)
            if not ok:
                return False
        return True

    def _narrow(self, v: int, new: list) -> None:
        self.aux_trail.append((len(self.trail), v, self.survivors[v]))
        self.survivors[v] = new
        self.link_count[v] = len(new)

    def _process_vertex(self, v: int, dirty: set):
        """Re-establish consistency at v: filter survivors against the
        face masks, then against each neighbor's surviving patterns on
        the shared faces, then emit forced assignments.  Returns the
        forcings, or None when v has no completion left."""
        inm = self.in_mask[v]
        outm = self.out_mask[v]
        old = self.survivors[v]
        new = [m for m in old if not (m & outm or inm & ~m)]
        if not new:
            if len(new) != len(old):
                self._narrow(v, new)
            return None
        if len(new) != len(old):
            self._narrow(v, new)

        # pairwise: patterns on the faces shared with each neighbor must
        # occur on both sides.  Two vertices still at their baseline
        # domains cannot narrow each other (the baseline is pairwise
        # consistent by construction), so those checks are skipped.
        for e in self.vertex_edges[v]:
            u, uslots, w, wslots = self.edge_pair_info[e]
            su, sw = self.survivors[u], self.survivors[w]
            if len(su) == self.init_count[u] and len(sw) == self.init_count[w]:
                continue
            pats_u = set()
            for m in su:
                p = 0
                for i, s in enumerate(uslots):
                    p |= (m >> s & 1) << i
                pats_u.add(p)
            pats_w = set()
            for m in sw:
                p = 0
                for i, s in enumerate(wslots):
                    p |= (m >> s & 1) << i
                pats_w.add(p)
            common = pats_u & pats_w
            if not common:
                return None
            if len(common) != len(pats_u):
                keep = []
                for m in su:
                    p = 0
                    for i, s in enumerate(uslots):
                        p |= (m >> s & 1) << i
                    if p in common:
                        keep.append(m)
                self._narrow(u, keep)
                dirty.add(u)
            if len(common) != len(pats_w):
                keep = []
                for m in sw:
                    p = 0
                    for i, s in enumerate(wslots):
                        p |= (m >> s & 1) << i
                    if p in common:
                        keep.append(m)
                self._narrow(w, keep)
                dirty.add(w)

        survivors = self.survivors[v]
        if not survivors:
            return None
        always = self.full_mask[v]
        ever = 0
        for m in survivors:
            always &= m
            ever |= m
        forced = []
        faces = self.v_faces[v]
        force_in = always & ~inm
        force_out = self.full_mask[v] & ~ever & ~outm
        while force_in:
            s = (force_in & -force_in).bit_length() - 1
            forced.append((faces[s], IN))
            force_in &= force_in - 1
        while force_out:
            s = (force_out & -force_out).bit_length() - 1
            forced.append((faces[s], OUT))
            force_out &= force_out - 1
        return forced

    # -- DFS --

    def undo_to(self, mark: int):
        while self.aux_trail and self.aux_trail[-1][0] > mark:
            _, v, old = self.aux_trail.pop()
            self.survivors[v] = old
            self.link_count[v] = len(old)
        while len(self.trail) > mark:
            f = self.trail.pop()
            val = self.state[f]
            self.state[f] = UNDEC
            for e in self.face_edges[f]:
                self.edge_und[e] += 1
                if val == IN:
                    self.edge_in[e] -= 1
            for u, s in self.face_slots[f]:
                self.vert_undec[u] += 1
                if val == IN:
                    self.in_mask[u] &= ~(1 << s)
                else:
                    self.out_mask[u] &= ~(1 << s)

    def _branch_options(self):
        """Options at the most constrained open vertex: one option per
        surviving link completion.  The candidate ranking may use slightly
        stale counts (they are refreshed whenever propagation touches a
        vertex), but the options themselves are filtered fresh, so no
        completion can be lost."""
        v = None
        best = None
        for u in range(self.sub.n_vertices):
            if self.vert_undec[u] == 0:
                continue
            key = (self.link_count[u], self.vert_undec[u], u)
            if best is None or key < best:
                best = key
                v = u
        if v is None:
            return None
        inm = self.in_mask[v]
        outm = self.out_mask[v]
        und = self.full_mask[v] & ~inm & ~outm
        faces = self.v_faces[v]
        options = []
        # survivors are kept exact by propagation, no refilter needed
        for m in self.survivors[v]:
            assert not (m & outm or inm & ~m)
            opt = []
            mm = und
            while mm:
                s = (mm & -mm).bit_length() - 1
                opt.append((faces[s], IN if m >> s & 1 else OUT))
                mm &= mm - 1
            options.append(opt)
        options.sort()
        return options

    def dfs(self, on_solution: Callable, deadline=None, node_limit=None,
            tick: Optional[Callable] = None):
        """Exhaust the current subtree.  Raises BudgetExceeded on limits."""
        opts0 = self._branch_options()
        if opts0 is None:
            self._emit(on_solution)
            return
        stack = [[opts0, 0, len(self.trail)]]
        while stack:
            frame = stack[-1]
            options, idx, mark = frame
            self.undo_to(mark)
            if idx >= len(options):
                stack.pop()
                continue
            frame[1] += 1
            self.nodes += 1
            if node_limit is not None and self.nodes > node_limit:
                raise BudgetExceeded("node limit hit")
            if deadline is not None and self.nodes % 64 == 0 and time.time() > deadline:
                raise BudgetExceeded("time limit hit")
            if tick is not None and self.nodes % 4096 == 0:
                tick(self.nodes)
            ok = True
            for g, val in options[idx]:
                if not self.assign(g, val):
                    ok = False
                    break
            if not ok:
                continue
            nxt = self._branch_options()
            if nxt is None:
                self._emit(on_solution)
                continue
            stack.append([nxt, 0, len(self.trail)])

    def _emit(self, on_solution):
        sol = frozenset(j for j in range(self.nfaces) if self.state[j] == IN)
        assert all(self.edge_in[e] == 2 for e in range(len(self.sub.edges)))
        if self.problem.mode == "surface":
            for v in range(self.sub.n_vertices):
                if not _link_is_single_cycle(self.sub, sol, v):
                    return
        on_solution(sol)


def _edge_bit(a: int, b: int, n: int) -> int:
    return 1 << (a * n + b) if a < b else 1 << (b * n + a)


def _enumerate_figure_masks(k: int, slot_pairs: list, mode: str) -> list:
    """Valid link completions of one vertex figure, as bitmasks over the
    face slots (slot s covers the node pair slot_pairs[s])."""
    adj = [[] for _ in range(k)]
    for a, b in slot_pairs:
        adj[a].append(b)
        adj[b].append(a)
    zero_deg = [0] * k
    zero_adj = [[] for _ in range(k)]
    if mode == "surface":
        node_masks = _ham_completions(k, adj, zero_deg, zero_adj, 1 << 30)
    else:
        node_masks = _factor_completions(k, adj, zero_deg, zero_adj, 1 << 30)
    bit_to_slot = {_edge_bit(a, b, k): s for s, (a, b) in enumerate(slot_pairs)}
    out = []
    for nm in node_masks:
        m = 0
        while nm:
            low = nm & -nm
            m |= 1 << bit_to_slot[low]
            nm &= nm - 1
        out.append(m)
    return sorted(out)


def _all_link_masks(sub: PolytopalComplex, mode: str) -> list:
    """Per-vertex completion mask tables; figures isomorphic to an
    already-enumerated one get their table by transport along a graph
    isomorphism instead of a fresh enumeration."""
    out = []
    reps = []       # (k, slot_pairs, figure complex, masks)
    for v in range(sub.n_vertices):
        nodes = sub.neighbors[v]
        pos = {u: i for i, u in enumerate(nodes)}
        slot_pairs = []
        for j in sub.vertex_faces[v]:
            a, b = sub.face_link_edge(j, v)
            slot_pairs.append((pos[a], pos[b]) if pos[a] < pos[b] else (pos[b], pos[a]))
        if len(set(slot_pairs)) != len(slot_pairs):
            raise ValueError("vertex figure has parallel link edges")
        k = len(nodes)
        Kv = SimplicialComplex(slot_pairs, n_vertices=k)
        masks = None
        for (k0, sp0, K0, masks0) in reps:
            if k0 != k or len(sp0) != len(slot_pairs):
                continue
            bij = are_isomorphic(K0, Kv)
            if bij is None:
                continue
            pair_to_slot = {p: s for s, p in enumerate(slot_pairs)}
            slot_map = []
            for (a, b) in sp0:
                qa, qb = bij[a], bij[b]
                slot_map.append(pair_to_slot[(qa, qb) if qa < qb else (qb, qa)])
            masks = []
            for m0 in masks0:
                m = 0
                while m0:
                    s = (m0 & -m0).bit_length() - 1
                    m |= 1 << slot_map[s]
                    m0 &= m0 - 1
                masks.append(m)
            masks.sort()
            break
        if masks is None:
            masks = _enumerate_figure_masks(k, slot_pairs, mode)
            reps.append((k, slot_pairs, Kv, masks))
        out.append(masks)
    return out


def _ham_completions(n, adj_avail, in_deg, in_adj, cap):
    """Hamiltonian cycles of the available link graph through all chosen
    edges, as edge bitmasks.  Returns None when more than cap exist (no
    conclusion), possibly-empty list otherwise."""
    if n < 3 or any(len(a) < 2 for a in adj_avail) or any(d > 2 for d in in_deg):
        return []
    masks: set = set()
    visited = [False] * n
    visited[0] = True
    overflow = False

    def dfs(x, prev, first, count, mask):
        nonlocal overflow
        if overflow:
            return
        rem = [y for y in in_adj[x] if y != prev]
        if count == n:
            if rem and rem != [0]:
                return
            rem0 = [y for y in in_adj[0] if y != first]
            if rem0 and rem0 != [x]:
                return
            if 0 in adj_avail[x]:
                masks.add(mask | _edge_bit(x, 0, n))
                if len(masks) > cap:
                    overflow = True
            return
        if count == 1:
            # at the start both chosen edges stay usable: one as the
            # departure, the other as the eventual closing edge
            cands = rem if rem else adj_avail[x]
        elif rem:
            if len(rem) > 1:
                return
            cands = rem
        else:
            cands = adj_avail[x]
        for y in cands:
            if visited[y]:
                continue
            visited[y] = True
            dfs(y, x, first if count > 1 else y, count + 1, mask | _edge_bit(x, y, n))
            visited[y] = False

    dfs(0, -1, -1, 1, 0)
    if overflow:
        return None
    return list(masks)


def _factor_completions(n, adj_avail, in_deg, in_adj, cap):
    """2-factors (2-regular spanning subgraphs) of the available link
    graph through all chosen edges, as edge bitmasks; None above cap."""
    if n < 3 or any(len(a) < 2 for a in adj_avail) or any(d > 2 for d in in_deg):
        return []
    in_set = set()
    base_mask = 0
    for a in range(n):
        for b in in_adj[a]:
            if a < b:
                in_set.add((a, b))
                base_mask |= _edge_bit(a, b, n)
    und_edges = []
    for a in range(n):
        for b in adj_avail[a]:
            if a < b and (a, b) not in in_set:
                und_edges.append((a, b))
    incident = [[] for _ in range(n)]
    for t, (a, b) in enumerate(und_edges):
        incident[a].append(t)
        incident[b].append(t)
    deg = list(in_deg)
    used = [False] * len(und_edges)
    chosen: list = []
    masks: set = set()
    overflow = False

    def extend():
        nonlocal overflow
        if overflow:
            return
        x = next((i for i in range(n) if deg[i] < 2), None)
        if x is None:
            m = base_mask
            for t in chosen:
                a, b = und_edges[t]
                m |= _edge_bit(a, b, n)
            masks.add(m)
            if len(masks) > cap:
                overflow = True
            return
        for t in incident[x]:
            if used[t]:
                continue
            a, b = und_edges[t]
            if deg[a] >= 2 or deg[b] >= 2:
                continue
            used[t] = True
            deg[a] += 1
            deg[b] += 1
            chosen.append(t)
            extend()
            chosen.pop()
            deg[a] -= 1
            deg[b] -= 1
            used[t] = False

    extend()
    if overflow:
        return None
    return list(masks)


def _link_is_single_cycle(sub: PolytopalComplex, sol: frozenset, v: int) -> bool:
    nodes = sub.neighbors[v]
    pos = {u: i for i, u in enumerate(nodes)}
    deg = [0] * len(nodes)
    adj = [[] for _ in nodes]
    for j in sub.vertex_faces[v]:
        if j in sol:
            a, b = sub.face_link_edge(j, v)
            ia, ib = pos[a], pos[b]
            deg[ia] += 1
            deg[ib] += 1
            adj[ia].append(ib)
            adj[ib].append(ia)
    if any(d != 2 for d in deg):
        return False
    seen = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(nodes)


def _norm(a, b):
    return (a, b) if a < b else (b, a)


# ---------------------------------------------------------------------------
# link completions and symmetry roots
# ---------------------------------------------------------------------------

def _two_factors(n_nodes: int, edges: list, connected_only: bool) -> list:
    """All 2-regular spanning subgraphs of a graph given as (label, (a, b))
    edges; returns lists of labels.  ``connected_only`` keeps Hamiltonian
    cycles only."""
    incident = [[] for _ in range(n_nodes)]
    for t, (a, b) in enumerate(edges):
        incident[a].append(t)
        incident[b].append(t)
    chosen: list = []
    deg = [0] * n_nodes
    used = [False] * len(edges)
    out = []

    def extend():
        x = next((i for i in range(n_nodes) if deg[i] < 2), None)
        if x is None:
            if not connected_only or _is_single_cycle_idx(n_nodes, chosen, edges):
                out.append(list(chosen))
            return
        for t in incident[x]:
            if used[t]:
                continue
            a, b = edges[t]
            if deg[a] >= 2 or deg[b] >= 2:
                continue
            used[t] = True
            deg[a] += 1
            deg[b] += 1
            chosen.append(t)
            extend()
            chosen.pop()
            deg[a] -= 1
            deg[b] -= 1
            used[t] = False

    extend()
    # the search can reach one subgraph along different edge orders
    uniq = {frozenset(c) for c in out}
    return sorted(sorted(c) for c in uniq)


def _is_single_cycle_idx(n_nodes, chosen, edges):
    adj = [[] for _ in range(n_nodes)]
    for t in chosen:
        a, b = edges[t]
        adj[a].append(b)
        adj[b].append(a)
    seen = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == n_nodes


def link_completions(sub: PolytopalComplex, v: int, mode: str) -> list:
    """All valid link assignments at vertex v: sets of face indices whose
    link edges form a 2-factor (surface mode: a single Hamiltonian cycle)
    of the vertex figure graph."""
    nodes = sub.neighbors[v]
    pos = {u: i for i, u in enumerate(nodes)}
    faces = sub.vertex_faces[v]
    edge_list = []
    for j in faces:
        a, b = sub.face_link_edge(j, v)
        edge_list.append((pos[a], pos[b]))
    if len({frozenset(e) for e in edge_list}) != len(edge_list):
        raise ValueError("vertex figure has parallel link edges")
    factors = _two_factors(len(nodes), edge_list, connected_only=(mode == "surface"))
    out = []
    for chosen in factors:
        out.append(frozenset(faces[t] for t in chosen))
    return sorted(out, key=sorted)


def _face_perm(sub: PolytopalComplex, p) -> dict:
    """Action of a vertex permutation on 2-face indices."""
    index = {}
    for j, poly in enumerate(sub.faces2):
        index[frozenset(poly)] = j
    out = {}
    for j, poly in enumerate(sub.faces2):
        out[j] = index[frozenset(p[v] for v in poly)]
    return out


def symmetry_roots(problem: SearchProblem, v: int = 0) -> list:
    """Representatives of the first vertex's link completions up to the
    stabilizer of that vertex in the substrate symmetry group."""
    sub = problem.substrate
    comps = link_completions(sub, v, problem.mode)
    G = problem.symmetry
    if G is None:
        return comps
    stab = G.stabilizer(v)
    els = stab.elements()
    face_perms = [_face_perm(sub, p) for p in els]
    seen = set()
    reps = []
    for comp in comps:
        canon = min(tuple(sorted(fp[j] for j in comp)) for fp in face_perms)
        if canon not in seen:
            seen.add(canon)
            reps.append(comp)
    return reps


# ---------------------------------------------------------------------------
# the public search
# ---------------------------------------------------------------------------

def search_hamiltonian_surfaces(problem: SearchProblem,
                                use_symmetry: bool = True,
                                checkpoint_path: Optional[str] = None,
                                resume: bool = False,
                                progress: Optional[Callable] = None) -> SearchOutcome:
    """Exhaustive, certificate-producing search for 1-Hamiltonian
    (pinched) surfaces in a polytope 2-skeleton.

    With ``use_symmetry`` the first vertex's link is fixed up to the
    substrate symmetry; the solution list is then complete up to that
    group (the isomorphism-class census is unaffected).  A checkpoint
    file, if requested, records completed root branches and found
    solutions after each root, and ``resume`` replays it.
    """
    t0 = time.time()
    deadline = t0 + problem.time_limit if problem.time_limit else None
    solutions: list = []
    status = "exhausted"
    nodes_total = 0

    if use_symmetry:
        roots = symmetry_roots(problem)
    else:
        roots = [None]

    # shared baseline: one pairwise-consistency fixpoint over the fresh
    # substrate, reused by every root branch
    base = _Engine(problem)
    if not base.stabilize():
        return SearchOutcome(status="exhausted", mode=problem.mode, solutions=[],
                             nodes=0, wall_time=time.time() - t0,
                             symmetry_reduced=use_symmetry, n_roots=len(roots))

    done_roots: set = set()
    if resume and checkpoint_path and os.path.exists(checkpoint_path):
        with open(checkpoint_path) as fh:
            state = json.load(fh)
        if state.get("mode") == problem.mode and state.get("n_roots") == len(roots):
            done_roots = set(state.get("roots_done", ()))
            solutions = [frozenset(s) for s in state.get("solutions", ())]
            nodes_total = state.get("nodes", 0)

    def checkpoint():
        if not checkpoint_path:
            return
        payload = {
            "mode": problem.mode,
            "n_roots": len(roots),
            "roots_done": sorted(done_roots),
            "solutions": [sorted(s) for s in solutions],
            "nodes": nodes_total,
            "elapsed": time.time() - t0,
        }
        tmp = checkpoint_path + ".tmp"
        with open(tmp, "w") as fh:
            json.dump(payload, fh)
        os.replace(tmp, checkpoint_path)

    try:
        for ri, root in enumerate(roots):
            if ri in done_roots:
                continue
            eng = base.clone_baseline()
            feasible = True
            if root is not None:
                for j in problem.substrate.vertex_faces[0]:
                    if not eng.assign(j, IN if j in root else OUT):
                        feasible = False
                        break
            if feasible:
                tick = None
                if progress is not None:
                    tick = lambda n: progress(ri, len(roots), nodes_total + n)
                node_budget = None
                if problem.node_limit is not None:
                    node_budget = problem.node_limit - nodes_total
                eng.dfs(solutions.append, deadline=deadline,
                        node_limit=node_budget, tick=tick)
            nodes_total += eng.nodes
            done_roots.add(ri)
            if progress is not None:
                progress(ri, len(roots), nodes_total)
            checkpoint()
    except BudgetExceeded:
        nodes_total += eng.nodes
        status = "budget-exceeded"
        checkpoint()

    solutions = sorted(set(solutions), key=sorted)
    out = SearchOutcome(status=status, mode=problem.mode, solutions=solutions,
                        nodes=nodes_total, wall_time=time.time() - t0,
                        symmetry_reduced=use_symmetry, n_roots=len(roots))
    if status == "exhausted":
        _classify(problem, out)
    return out


def solution_complex(sub: PolytopalComplex, sol: Iterable[int]) -> SimplicialComplex:
    faces = [sub.faces2[j] for j in sol]
    if any(len(f) != 3 for f in faces):
        raise ValueError("only triangle substrates give simplicial solutions")
    return SimplicialComplex(faces, n_vertices=sub.n_vertices)


def _classify(problem: SearchProblem, out: SearchOutcome):
    sub = problem.substrate
    if not out.solutions:
        return
    if any(len(poly) != 3 for poly in sub.faces2):
        return
    complexes = [solution_complex(sub, sol) for sol in out.solutions]
    # abstract isomorphism classes via fingerprint buckets
    buckets: dict = {}
    for K in complexes:
        prof = classify_closed(K)
        key = (iso_fingerprint(K), prof.signature())
        buckets.setdefault(key, []).append((K, prof))
    classes = []
    for key, members in sorted(buckets.items()):
        reps: list = []
        for K, prof in members:
            hit = None
            for entry in reps:
                if are_isomorphic(entry[0], K) is not None:
                    hit = entry
                    break
            if hit is None:
                reps.append([K, prof, 1])
            else:
                hit[2] += 1
        for K, prof, count in reps:
            classes.append(SolutionClass(
                representative=K, profile=prof,
                automorphism_order=automorphism_group(K).order,
                n_solutions=count,
                strongly_connected=K.is_strongly_connected()))
    classes.sort(key=lambda c: (len(c.profile.pinch_vertices),
                                c.profile.normalized_genus or Fraction(0),
                                c.automorphism_order))
    out.classes = [c for c in classes if c.strongly_connected]
    out.split_classes = [c for c in classes if not c.strongly_connected]
    # classes up to the substrate symmetry group (to compare both readings)
    G = problem.symmetry
    if G is not None and G.order <= 10 ** 5 and len(out.solutions) <= 4000:
        els = G.elements()
        fps = [_face_perm(sub, p) for p in els]
        seen = set()
        count = 0
        for sol in out.solutions:
            canon = min(tuple(sorted(fp[j] for j in sol)) for fp in fps)
            if canon not in seen:
                seen.add(canon)
                count += 1
        out.orbit_class_count = count


# ---------------------------------------------------------------------------
# census and k-Hamiltonicity
# ---------------------------------------------------------------------------

def expected_surface_census(substrate) -> dict:
    """Face counts any 1-Hamiltonian surface in the substrate must have.

    ``substrate`` is a PolytopalComplex, or ("cross-polytope", d) or
    ("simplex", d).  f2 follows from double counting (every edge lies in
    exactly two chosen polygons), chi and the genus follow from Euler.
    """
    if isinstance(substrate, tuple):
        family, d = substrate
        if family == "cross-polytope":
            f0, f1, gon = 2 * d, 2 * d * (d - 1), 3
        elif family == "simplex":
            n = d + 1
            f0, f1, gon = n, n * (n - 1) // 2, 3
        else:
            raise ValueError(f"unknown family {family!r}")
    else:
        f0 = substrate.n_vertices
        f1 = len(substrate.edges)
        gons = {len(p) for p in substrate.faces2}
        if len(gons) != 1:
            raise ValueError("substrate must have uniform polygon size")
        gon = gons.pop()
    f2 = Fraction(2 * f1, gon)
    chi = f0 - f1 + f2
    genus = Fraction(2 - chi, 2)
    return {
        "f0": f0, "f1": f1, "f2": f2, "euler": chi, "genus": genus,
        "integral": f2.denominator == 1 and genus.denominator == 1,
    }


def is_k_hamiltonian(K: SimplicialComplex, ambient, k: int):
    """Does K contain the full k-skeleton of the ambient polytope?

    ``ambient`` is a SimplicialComplex, or an integer d meaning the
    boundary of the d-dimensional cross polytope with the diagonal
    matching inferred from K's missing edges (which must pair all
    vertices perfectly).  Returns (ok, witness, matching) where witness
    is the first missing k-face if any.
    """
    if isinstance(ambient, SimplicialComplex):
        for f in ambient.faces(k):
            if not K.has_face(f):
                return False, f, None
        return True, None, None
    d = int(ambient)
    n = 2 * d
    if K.n_vertices != n:
        raise NotAMatching(f"expected {n} vertices for the cross polytope, "
                           f"complex has {K.n_vertices}")
    present = set(K.edges)
    missing = [(a, b) for a in range(n) for b in range(a + 1, n)
               if (a, b) not in present]
    touched = [v for e in missing for v in e]
    if len(missing) != d or len(set(touched)) != n:
        raise NotAMatching(
            f"{len(missing)} missing edges do not form a perfect matching")
    diag = {}
    for a, b in missing:
        diag[a] = b
        diag[b] = a
    for face in itertools.combinations(range(n), k + 1):
        if any(diag[v] in face[i + 1:] for i, v in enumerate(face)):
            continue
        if not K.has_face(face):
            return False, face, tuple(missing)
    return True, None, tuple(missing)


# ---------------------------------------------------------------------------
# Hamiltonian cycles in small graphs
# ---------------------------------------------------------------------------

@dataclass
class CycleCatalog:
    n_vertices: int
    total: int                 # all Hamiltonian cycles as edge sets
    count: int                 # up to the given symmetry group
    representatives: list      # canonical edge tuples, lexicographically least


def hamiltonian_cycles(n: int, edges: Sequence, up_to: Optional[PermGroup] = None,
                       element_limit: int = 10 ** 6) -> CycleCatalog:
    """All Hamiltonian cycles of a graph, deduplicated modulo the given
    vertex group (cycles count as undirected edge sets, so rotations and
    reflections of the traversal never multiply)."""
    adj = [[] for _ in range(n)]
    eset = set()
    for a, b in edges:
        a, b = _norm(a, b)
        eset.add((a, b))
        adj[a].append(b)
        adj[b].append(a)
    for x in adj:
        x.sort()
    cycles = set()
    path = [0]
    used = [False] * n
    used[0] = True

    def extend():
        x = path[-1]
        if len(path) == n:
            if 0 in adj[x]:
                cyc = frozenset(_norm(path[i], path[(i + 1) % n]) for i in range(n))
                cycles.add(cyc)
            return
        for y in adj[x]:
            if not used[y]:
                used[y] = True
                path.append(y)
                extend()
                path.pop()
                used[y] = False

    extend()
    total = len(cycles)
    if up_to is None:
        reps = sorted(tuple(sorted(c)) for c in cycles)
        return CycleCatalog(n, total, total, reps)
    els = up_to.elements(limit=element_limit)
    canon_map = {}
    for cyc in cycles:
        canon = min(tuple(sorted(_norm(p[a], p[b]) for a, b in cyc)) for p in els)
        canon_map.setdefault(canon, tuple(sorted(cyc)))
    reps = sorted(canon_map)
    return CycleCatalog(n, total, len(reps), reps)
