"""Permutation groups on vertex labels.

Permutations are image tuples on range(n).  Groups are given by
generators; orders and membership come from a deterministic Schreier-Sims
stabilizer chain (base points in ascending vertex order, no
randomization), with full element enumeration available below a size
bound for orbit canonicalization work.

Cycle notation follows the usual 1-based convention of the printed data,
e.g. ``(1 12 16 18)(2 17 23 7)``; parsing is whitespace insensitive.
"""

from __future__ import annotations

import itertools
import re
from functools import cached_property
from typing import Iterable, Optional, Sequence

from .complexes import SimplicialComplex, _pair_degrees, _vertex_invariants


class DegreeTooLarge(ValueError):
    pass


class NotAnAutomorphism(ValueError):
    pass


Perm = tuple  # images; Perm[i] is where i goes


def identity(n: int) -> Perm:
    return tuple(range(n))


def compose(p: Perm, q: Perm) -> Perm:
    """Apply q first, then p ((p*q)(x) = p(q(x)))."""
    return tuple(p[q[i]] for i in range(len(p)))


def inverse(p: Perm) -> Perm:
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


def perm_order(p: Perm) -> int:
    n = len(p)
    seen = [False] * n
    out = 1
    for i in range(n):
        if seen[i]:
            continue
        ln = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = p[j]
            ln += 1
        out = _lcm(out, ln)
    return out


def _lcm(a, b):
    from math import gcd
    return a * b // gcd(a, b)


def apply_to_face(p: Perm, face: Sequence[int]) -> tuple:
    return tuple(sorted(p[v] for v in face))


# -- cycle notation ------------------------------------------------------------

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, degree: int, one_based: bool = True) -> Perm:
    """Parse a product of cycles acting on range(degree)."""
    images = list(range(degree))
    moved = set()
    for m in _CYCLE_RE.finditer(text):
        entries = [int(tok) for tok in m.group(1).replace(",", " ").split()]
        if one_based:
            entries = [v - 1 for v in entries]
        if len(set(entries)) != len(entries):
            raise ValueError(f"repeated vertex in cycle {m.group(0)}")
        for a, b in zip(entries, entries[1:] + entries[:1]):
            if not 0 <= a < degree:
                raise ValueError(f"label {a} out of range for degree {degree}")
            if a in moved:
                raise ValueError(f"vertex {a} moved by two cycles in {text!r}")
            moved.add(a)
            images[a] = b
    if _CYCLE_RE.sub("", text).strip(" ,\t\n"):
        raise ValueError(f"unparsed content in cycle notation: {text!r}")
    p = tuple(images)
    if sorted(p) != list(range(degree)):
        raise ValueError(f"not a permutation: {text!r}")
    return p


def format_cycles(p: Perm, one_based: bool = True) -> str:
    off = 1 if one_based else 0
    seen = set()
    parts = []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        cyc = [i]
        j = p[i]
        while j != i:
            cyc.append(j)
            j = p[j]
        seen.update(cyc)
        parts.append("(" + " ".join(str(v + off) for v in cyc) + ")")
    return "".join(parts) if parts else "()"


# -- groups --------------------------------------------------------------------

MAX_DEGREE = 1000


class PermGroup:
    """Group generated by a set of permutations of range(degree)."""

    def __init__(self, degree: int, generators: Iterable[Perm]):
        if degree > MAX_DEGREE:
            raise DegreeTooLarge(f"degree {degree} exceeds bound {MAX_DEGREE}")
        self.degree = degree
        gens = []
        seen = set()
        ident = identity(degree)
        for g in generators:
            g = tuple(g)
            if len(g) != degree or sorted(g) != list(range(degree)):
                raise ValueError("generator is not a permutation of the right degree")
            if g != ident and g not in seen:
                seen.add(g)
                gens.append(g)
        self.generators = tuple(gens)

    @cached_property
    def _chain(self) -> list:
        """Stabilizer chain: list of (base_point, transversal, gens).

        transversal maps each point of the orbit of base_point to a group
        element carrying base_point to it.
        """
        chain = []
        gens = list(self.generators)
        n = self.degree
        while gens:
            b = min(i for i in range(n) if any(g[i] != i for g in gens))
            transversal = {b: identity(n)}
            frontier = [b]
            while frontier:
                x = frontier.pop(0)
                for g in gens:
                    y = g[x]
                    if y not in transversal:
                        transversal[y] = compose(g, transversal[x])
                        frontier.append(y)
            # Schreier generators for the stabilizer of b
            stab_gens = []
            stab_seen = set()
            for x, tx in transversal.items():
                for g in gens:
                    gx = compose(g, tx)
                    s = compose(inverse(transversal[g[x]]), gx)
                    if s != identity(n) and s not in stab_seen:
                        stab_seen.add(s)
                        stab_gens.append(s)
            chain.append((b, transversal, tuple(gens)))
            gens = _reduce_generators(stab_gens, n)
        return chain

    @cached_property
    def order(self) -> int:
        out = 1
        for _, transversal, _ in self._chain:
            out *= len(transversal)
        return out

    def __contains__(self, p) -> bool:
        return self.sift(tuple(p)) == identity(self.degree)

    def sift(self, p: Perm) -> Perm:
        """Strip p through the stabilizer chain; identity iff p is a member."""
        for b, transversal, _ in self._chain:
            x = p[b]
            if x not in transversal:
                return p
            p = compose(inverse(transversal[x]), p)
        return p

    def elements(self, limit: int = 10 ** 6) -> list:
        """All elements, by breadth-first closure over the generators."""
        if self.order > limit:
            raise DegreeTooLarge(f"group order {self.order} above enumeration limit")
        ident = identity(self.degree)
        seen = {ident}
        frontier = [ident]
        while frontier:
            nxt = []
            for x in frontier:
                for g in self.generators:
                    y = compose(g, x)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return sorted(seen)

    def orbit(self, x: int) -> tuple:
        seen = {x}
        frontier = [x]
        while frontier:
            a = frontier.pop()
            for g in self.generators:
                b = g[a]
                if b not in seen:
                    seen.add(b)
                    frontier.append(b)
        return tuple(sorted(seen))

    def face_orbit(self, face: Sequence[int]) -> list:
        """Orbit of a vertex set under the group, as sorted tuples."""
        start = tuple(sorted(face))
        seen = {start}
        frontier = [start]
        while frontier:
            f = frontier.pop()
            for g in self.generators:
                h = apply_to_face(g, f)
                if h not in seen:
                    seen.add(h)
                    frontier.append(h)
        return sorted(seen)

    def stabilizer(self, x: int) -> "PermGroup":
        """Point stabilizer via Schreier generators."""
        n = self.degree
        transversal = {x: identity(n)}
        frontier = [x]
        while frontier:
            a = frontier.pop(0)
            for g in self.generators:
                b = g[a]
                if b not in transversal:
                    transversal[b] = compose(g, transversal[a])
                    frontier.append(b)
        stab = []
        seen = set()
        for a, ta in transversal.items():
            for g in self.generators:
                s = compose(inverse(transversal[g[a]]), compose(g, ta))
                if s != identity(n) and s not in seen:
                    seen.add(s)
                    stab.append(s)
        return PermGroup(n, _reduce_generators(stab, n))

    def __repr__(self):
        return f"PermGroup(degree={self.degree}, order={self.order})"


def _reduce_generators(gens: list, n: int) -> list:
    """Keep a small generating subset (greedy, by membership sifting)."""
    if not gens:
        return []
    kept: list = []
    group = None
    for g in sorted(set(gens)):
        if group is None or g not in group:
            kept.append(g)
            group = PermGroup(n, kept)
    return kept


def group_order_brute(degree: int, generators: Iterable[Perm], limit: int = 10 ** 6) -> int:
    """Order by plain closure enumeration; cross-check for the chain."""
    ident = identity(degree)
    gens = [tuple(g) for g in generators]
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = compose(g, x)
                if y not in seen:
                    if len(seen) >= limit:
                        raise DegreeTooLarge("closure enumeration limit hit")
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return len(seen)


# -- group actions on complexes --------------------------------------------------

def orbit_complex(group: PermGroup, seeds: Iterable[Sequence[int]],
                  n_vertices: Optional[int] = None):
    """Complex whose facets are the union of the group orbits of the seeds.

    Returns ``(K, orbit_lengths)``.  Orbit lengths are asserted to divide
    the group order (orbit-stabilizer).
    """
    n = n_vertices if n_vertices is not None else group.degree
    facets = []
    lengths = []
    order = group.order
    for seed in seeds:
        orb = group.face_orbit(seed)
        assert order % len(orb) == 0, "orbit length must divide group order"
        lengths.append(len(orb))
        facets.extend(orb)
    return SimplicialComplex(facets, n_vertices=n), tuple(lengths)


def automorphisms(K: SimplicialComplex) -> list:
    """All vertex permutations of range(n_vertices) mapping facets onto
    facets (unused vertices must be fixed).

    Backtracking over vertex images with pairwise-codegree refinement;
    fine for the structured complexes of this package (<= a few dozen
    vertices or small groups).
    """
    inv = _vertex_invariants(K)
    pair = _pair_degrees(K)
    verts = sorted(K.vertices, key=lambda v: (inv[v], v))
    facet_set = set(K.facets)
    order_pos = {v: i for i, v in enumerate(verts)}
    by_last: dict = {}
    for f in K.facets:
        last = max(f, key=lambda v: order_pos[v])
        by_last.setdefault(last, []).append(f)

    found = []
    mapping: dict = {}
    used = set()

    def extend(k: int):
        if k == len(verts):
            p = list(range(K.n_vertices))
            for a, b in mapping.items():
                p[a] = b
            found.append(tuple(p))
            return
        v = verts[k]
        for w in K.vertices:
            if w in used or inv[v] != inv[w]:
                continue
            if any(pair.get(_ordered(u, v), 0) != pair.get(_ordered(mapping[u], w), 0)
                   for u in mapping):
                continue
            mapping[v] = w
            used.add(w)
            if all(tuple(sorted(mapping[x] for x in f)) in facet_set
                   for f in by_last.get(v, ())):
                extend(k + 1)
            del mapping[v]
            used.discard(w)

    extend(0)
    return found


def _ordered(a, b):
    return (a, b) if a <= b else (b, a)


def automorphism_group(K: SimplicialComplex) -> PermGroup:
    """Full combinatorial automorphism group, by enumeration."""
    els = automorphisms(K)
    gens = _reduce_generators([p for p in els if p != identity(K.n_vertices)],
                              K.n_vertices)
    G = PermGroup(K.n_vertices, gens)
    assert G.order == len(els)
    return G


def is_automorphism(K: SimplicialComplex, p: Perm) -> bool:
    return all(apply_to_face(p, f) in set(K.facets) for f in K.facets)


def is_fixed_point_free(p: Perm, K: SimplicialComplex) -> bool:
    """True iff the automorphism p fixes no vertex and maps no face of any
    dimension to itself (setwise)."""
    if not is_automorphism(K, p):
        raise NotAnAutomorphism("permutation does not preserve the facet set")
    if any(p[v] == v for v in K.vertices):
        return False
    for faces in K.faces_by_dim:
        for f in faces:
            if apply_to_face(p, f) == f:
                return False
    return True
