"""Abstract simplicial complexes and polygonal 2-complexes.

Complexes are immutable after construction: every operation that "modifies"
a complex returns a new one, so instances can be shared freely between
parallel workers.

Vertices are small integers in range(n_vertices).  External data (facet
files, cycle notation) uses 1-based labels; the conversion happens only at
the I/O boundary.  Operations that restrict to a vertex subset (links,
spanned subcomplexes) can either keep the ambient numbering or relabel
densely, in which case the original labels are recorded on the result.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Optional, Sequence


class NotAFace(ValueError):
    pass


class NotASurface(ValueError):
    pass


class NotOrientable(ValueError):
    pass


def _as_face(f) -> tuple:
    t = tuple(sorted(f))
    if len(set(t)) != len(t):
        raise ValueError(f"face with repeated vertices: {f}")
    return t


class SimplicialComplex:
    """A finite abstract simplicial complex given by its facet list.

    Facets are kept as sorted vertex tuples; faces of every dimension are
    derived lazily and cached.  ``labels`` optionally records external
    vertex names (e.g. the ambient vertices a link came from); it has no
    influence on any combinatorial operation.
    """

    def __init__(self, facets: Iterable[Sequence[int]], n_vertices: Optional[int] = None,
                 labels: Optional[Sequence] = None, maximalize: bool = True):
        faces = sorted({_as_face(f) for f in facets}, key=lambda t: (len(t), t))
        if maximalize:
            faces = _drop_non_maximal(faces)
        self.facets: tuple = tuple(sorted(faces))
        used = {v for f in self.facets for v in f}
        if any(v < 0 for v in used):
            raise ValueError("negative vertex id")
        top = (max(used) + 1) if used else 0
        self.n_vertices: int = top if n_vertices is None else n_vertices
        if self.n_vertices < top:
            raise ValueError("n_vertices smaller than largest vertex id")
        self.labels = tuple(labels) if labels is not None else None

    # -- basic structure ---------------------------------------------------

    def __eq__(self, other):
        return (isinstance(other, SimplicialComplex)
                and self.facets == other.facets
                and self.n_vertices == other.n_vertices)

    def __hash__(self):
        return hash((self.facets, self.n_vertices))

    def __repr__(self):
        return (f"SimplicialComplex(n_vertices={self.n_vertices}, "
                f"dim={self.dim}, facets={len(self.facets)})")

    @cached_property
    def dim(self) -> int:
        return max((len(f) - 1 for f in self.facets), default=-1)

    @cached_property
    def vertices(self) -> tuple:
        return tuple(sorted({v for f in self.facets for v in f}))

    @cached_property
    def faces_by_dim(self) -> tuple:
        """Tuple indexed by dimension; entry d is the sorted tuple of d-faces."""
        seen = [set() for _ in range(self.dim + 1)]
        for f in self.facets:
            k = len(f)
            for size in range(1, k + 1):
                bucket = seen[size - 1]
                for sub in itertools.combinations(f, size):
                    bucket.add(sub)
        return tuple(tuple(sorted(s)) for s in seen)

    def faces(self, d: int) -> tuple:
        if d < 0 or d > self.dim:
            return ()
        return self.faces_by_dim[d]

    @cached_property
    def face_set(self) -> frozenset:
        return frozenset(itertools.chain.from_iterable(self.faces_by_dim))

    def has_face(self, f) -> bool:
        return _as_face(f) in self.face_set

    @cached_property
    def f_vector(self) -> tuple:
        return tuple(len(fs) for fs in self.faces_by_dim)

    @cached_property
    def euler_characteristic(self) -> int:
        return sum((-1) ** i * n for i, n in enumerate(self.f_vector))

    @cached_property
    def edges(self) -> tuple:
        return self.faces(1)

    @cached_property
    def is_pure(self) -> bool:
        return all(len(f) == self.dim + 1 for f in self.facets)

    # -- incidence ---------------------------------------------------------

    @cached_property
    def _vertex_facets(self) -> dict:
        out: dict = {v: [] for v in self.vertices}
        for i, f in enumerate(self.facets):
            for v in f:
                out[v].append(i)
        return out

    def cofacets(self, f) -> list:
        """Facets containing the face f."""
        f = _as_face(f)
        if not f:
            return list(self.facets)
        cands = self._vertex_facets.get(f[0], [])
        fs = set(f)
        return [self.facets[i] for i in cands if fs.issubset(self.facets[i])]

    # -- derived complexes ---------------------------------------------------

    def link(self, f) -> tuple:
        """Link of a face, densely relabeled.

        Returns ``(L, labels)`` where ``labels[i]`` is the ambient vertex
        that vertex ``i`` of ``L`` refers to.  Raises NotAFace if ``f`` is
        not a face of the complex.
        """
        f = _as_face(f)
        if f and f not in self.face_set:
            raise NotAFace(f"{f} is not a face of the complex")
        fs = set(f)
        link_facets = [tuple(v for v in g if v not in fs) for g in self.cofacets(f)]
        used = sorted({v for g in link_facets for v in g})
        dense = {v: i for i, v in enumerate(used)}
        relabeled = [tuple(dense[v] for v in g) for g in link_facets if g]
        amb = self.labels
        labels = tuple(amb[v] if amb is not None else v for v in used)
        return SimplicialComplex(relabeled, n_vertices=len(used)), labels

    def star(self, f) -> "SimplicialComplex":
        return SimplicialComplex(self.cofacets(_as_face(f)), n_vertices=self.n_vertices)

    def spanned(self, W: Iterable[int], relabel: bool = False):
        """Subcomplex spanned by the vertex set W (facet-maximalized).

        With ``relabel`` the result is densely renumbered and returned as
        ``(K, labels)``; otherwise ambient numbering is kept.
        """
        Ws = set(W)
        sub = [tuple(v for v in g if v in Ws) for g in self.facets]
        sub = [g for g in sub if g]
        if not relabel:
            return SimplicialComplex(sub, n_vertices=self.n_vertices)
        used = sorted({v for g in sub for v in g})
        dense = {v: i for i, v in enumerate(used)}
        amb = self.labels
        labels = tuple(amb[v] if amb is not None else v for v in used)
        return SimplicialComplex([tuple(dense[v] for v in g) for g in sub],
                                 n_vertices=len(used)), labels

    def relabeled(self, perm: Sequence[int]) -> "SimplicialComplex":
        """Apply a vertex permutation (perm[v] is the new name of v)."""
        return SimplicialComplex(
            [tuple(perm[v] for v in f) for f in self.facets],
            n_vertices=self.n_vertices)

    # -- pseudomanifold structure -------------------------------------------

    @cached_property
    def ridge_cofacets(self) -> dict:
        """Map ridge (codimension-1 face of a facet) -> list of facet indices."""
        out: dict = {}
        for i, f in enumerate(self.facets):
            for r in itertools.combinations(f, len(f) - 1):
                out.setdefault(r, []).append(i)
        return out

    def is_pseudomanifold(self) -> bool:
        """Pure and every ridge in exactly two facets. Connectivity not required."""
        if not self.facets or not self.is_pure:
            return False
        return all(len(c) == 2 for c in self.ridge_cofacets.values())

    @cached_property
    def dual_graph_components(self) -> list:
        """Connected components of the facet adjacency (through ridges) graph."""
        n = len(self.facets)
        adj = [[] for _ in range(n)]
        for c in self.ridge_cofacets.values():
            for a, b in itertools.combinations(c, 2):
                adj[a].append(b)
                adj[b].append(a)
        seen = [False] * n
        comps = []
        for s in range(n):
            if seen[s]:
                continue
            comp, stack = [], [s]
            seen[s] = True
            while stack:
                x = stack.pop()
                comp.append(x)
                for y in adj[x]:
                    if not seen[y]:
                        seen[y] = True
                        stack.append(y)
            comps.append(sorted(comp))
        return comps

    def is_strongly_connected(self) -> bool:
        return self.is_pure and len(self.dual_graph_components) == 1


def _drop_non_maximal(faces: list) -> list:
    face_set = set(faces)
    out = []
    for f in faces:
        k = len(f)
        maximal = not any(len(g) > k and set(f).issubset(g) for g in face_set)
        if maximal:
            out.append(f)
    return out


# -- constructors used across the package ------------------------------------

def from_facet_text(text: str, labels_are_one_based: bool = True) -> SimplicialComplex:
    """Parse the facet-list text format: one facet per line, whitespace
    separated vertex labels, ``#`` starts a comment."""
    facets = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        vs = [int(tok) for tok in line.split()]
        if labels_are_one_based:
            vs = [v - 1 for v in vs]
        facets.append(vs)
    return SimplicialComplex(facets)


def to_facet_text(K: SimplicialComplex, labels_are_one_based: bool = True) -> str:
    off = 1 if labels_are_one_based else 0
    return "\n".join(" ".join(str(v + off) for v in f) for f in K.facets) + "\n"


# -- surface classification ---------------------------------------------------

@dataclass(frozen=True)
class SurfaceProfile:
    """Result of classifying a closed 2-pseudomanifold.

    ``euler_char`` refers to the complex itself; the normalized surface is
    obtained by splitting every pinch vertex into one vertex per link
    cycle, which raises the Euler characteristic by (cycles - 1) per pinch.
    ``normalized_genus`` uses the convention that a cross cap counts 1/2,
    so it equals (2 - normalized_euler) / 2 for any connected closed
    surface, orientable or not.  It is None when the normalized surface is
    disconnected.
    """
    euler_char: int
    orientable: Optional[bool]
    pinch_vertices: tuple  # ((vertex, link_cycle_count), ...)
    normalized_euler: int
    n_components: int
    normalized_genus: Optional[Fraction]

    @property
    def is_surface(self) -> bool:
        return not self.pinch_vertices

    def signature(self) -> tuple:
        """Relabeling-invariant summary used for comparisons."""
        return (self.euler_char, self.orientable,
                tuple(sorted(c for _, c in self.pinch_vertices)),
                self.normalized_euler, self.n_components, self.normalized_genus)


def _link_graph_cycles(K: SimplicialComplex, v: int):
    """Decompose the link graph of vertex v (of a 2-complex where every edge
    has exactly two triangles) into cycles; returns list of cycles as vertex
    lists, or None if some component is not a cycle."""
    adj: dict = {}
    for t in K.cofacets((v,)):
        a, b = (x for x in t if x != v)
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    if any(len(ns) != 2 for ns in adj.values()):
        return None
    cycles = []
    remaining = set(adj)
    while remaining:
        start = min(remaining)
        cyc = [start]
        prev, cur = None, start
        while True:
            a, b = adj[cur]
            nxt = b if a == prev else a
            if nxt == start:
                break
            cyc.append(nxt)
            prev, cur = cur, nxt
        if len(cyc) < 3:
            return None
        cycles.append(cyc)
        remaining -= set(cyc)
    return cycles


def classify_closed(K: SimplicialComplex) -> SurfaceProfile:
    """Classify a pure 2-complex in which every edge lies in exactly two
    triangles as a closed surface or pinched surface.

    Raises NotASurface when the edge condition fails or some vertex link is
    not a disjoint union of cycles.
    """
    if K.dim != 2 or not K.is_pure:
        raise NotASurface("complex is not pure of dimension 2")
    for e, cof in K.ridge_cofacets.items():
        if len(cof) != 2:
            raise NotASurface(f"edge {e} lies in {len(cof)} triangles")
    pinch = []
    split_gain = 0
    for v in K.vertices:
        cycles = _link_graph_cycles(K, v)
        if cycles is None:
            raise NotASurface(f"link of vertex {v} is not a union of cycles")
        if len(cycles) > 1:
            pinch.append((v, len(cycles)))
            split_gain += len(cycles) - 1
    chi = K.euler_characteristic
    chi_norm = chi + split_gain
    comps = K.dual_graph_components
    orientable = coherent_orientation(K) is not None
    genus = Fraction(2 - chi_norm, 2) if len(comps) == 1 else None
    return SurfaceProfile(euler_char=chi, orientable=orientable,
                          pinch_vertices=tuple(sorted(pinch)),
                          normalized_euler=chi_norm, n_components=len(comps),
                          normalized_genus=genus)


# -- orientations --------------------------------------------------------------

def _boundary_sign(facet: tuple, ridge: tuple) -> int:
    """Sign of ridge in the boundary of a sorted facet: (-1)**(index of the
    omitted vertex)."""
    missing = next(v for v in facet if v not in ridge)
    return -1 if facet.index(missing) % 2 else 1


def coherent_orientation(K: SimplicialComplex):
    """Try to orient every facet so that all ridge contributions cancel.

    Returns a dict facet -> +-1, or None when the complex is non-orientable.
    Each dual-graph component is oriented independently, starting from its
    lexicographically least facet with +1.  Requires every ridge to lie in
    at most two facets.
    """
    signs: dict = {}
    n = len(K.facets)
    ridge_map = K.ridge_cofacets
    if any(len(c) > 2 for c in ridge_map.values()):
        return None
    for comp in K.dual_graph_components:
        root = min(comp)
        signs[root] = 1
        stack = [root]
        while stack:
            i = stack.pop()
            f = K.facets[i]
            for r in itertools.combinations(f, len(f) - 1):
                for j in ridge_map[r]:
                    if j == i:
                        continue
                    # opposite induced orientations on the shared ridge
                    want = -signs[i] * _boundary_sign(f, r) * _boundary_sign(K.facets[j], r)
                    if j in signs:
                        if signs[j] != want:
                            return None
                    else:
                        signs[j] = want
                        stack.append(j)
    assert len(signs) == n
    return {K.facets[i]: s for i, s in signs.items()}


# -- isomorphism ---------------------------------------------------------------

def _vertex_invariants(K: SimplicialComplex) -> dict:
    """Cheap relabeling-invariant fingerprint per vertex."""
    inv = {v: [0] * (K.dim + 1) for v in K.vertices}
    for d, faces in enumerate(K.faces_by_dim):
        for f in faces:
            for v in f:
                inv[v][d] += 1
    return {v: tuple(c) for v, c in inv.items()}


def iso_fingerprint(K: SimplicialComplex) -> tuple:
    """Invariant under relabeling; unequal fingerprints mean non-isomorphic."""
    inv = _vertex_invariants(K)
    return (K.f_vector, tuple(sorted(inv.values())))


def are_isomorphic(K1: SimplicialComplex, K2: SimplicialComplex):
    """Search for a vertex bijection carrying facets onto facets.

    Returns the bijection as a dict (vertex of K1 -> vertex of K2) or None.
    Uses invariant prefiltering plus degree-refinement backtracking, which
    is entirely adequate for the sizes handled here (<= a few hundred
    vertices, heavily structured complexes).
    """
    if K1.f_vector != K2.f_vector:
        return None
    inv1, inv2 = _vertex_invariants(K1), _vertex_invariants(K2)
    if sorted(inv1.values()) != sorted(inv2.values()):
        return None
    verts1 = sorted(K1.vertices, key=lambda v: (inv1[v], v))
    facet_set2 = set(K2.facets)
    pair1 = _pair_degrees(K1)
    pair2 = _pair_degrees(K2)
    # bucket facets by the assignment step at which they become fully mapped
    by_last = {}
    order_pos = {v: i for i, v in enumerate(verts1)}
    for f in K1.facets:
        last = max(f, key=lambda v: order_pos[v])
        by_last.setdefault(last, []).append(f)

    mapping: dict = {}
    used = set()

    def extend(k: int):
        if k == len(verts1):
            return True
        v = verts1[k]
        for w in sorted(K2.vertices):
            if w in used or inv1[v] != inv2[w]:
                continue
            ok = True
            for u in mapping:
                if pair1.get(_key(u, v), 0) != pair2.get(_key(mapping[u], w), 0):
                    ok = False
                    break
            if not ok:
                continue
            mapping[v] = w
            used.add(w)
            good = all(tuple(sorted(mapping[x] for x in f)) in facet_set2
                       for f in by_last.get(v, ()))
            if good and extend(k + 1):
                return True
            del mapping[v]
            used.discard(w)
        return False

    if extend(0):
        return dict(mapping)
    return None


def _key(a, b):
    return (a, b) if a <= b else (b, a)


def _pair_degrees(K: SimplicialComplex) -> dict:
    """Number of facets containing each vertex pair."""
    out: dict = {}
    for f in K.facets:
        for a, b in itertools.combinations(f, 2):
            out[(a, b)] = out.get((a, b), 0) + 1
    return out


# -- polygonal 2-complexes ------------------------------------------------------

def _canon_polygon(cycle: Sequence[int]) -> tuple:
    """Canonical form of a polygon under rotation and reflection."""
    c = list(cycle)
    best = None
    for seq in (c, c[::-1]):
        n = len(seq)
        for s in range(n):
            rot = tuple(seq[s:] + seq[:s])
            if best is None or rot < best:
                best = rot
    return best


@dataclass(frozen=True)
class PolytopalComplex:
    """Vertices, edges and polygonal 2-faces (optionally 3-cells) of a
    polytope boundary; the search substrate for Hamiltonian surfaces.

    Edges are sorted pairs; each 2-face is a canonicalized cyclic vertex
    sequence; each 3-cell is a frozenset of indices into ``faces2``.
    """
    n_vertices: int
    edges: tuple
    faces2: tuple
    cells3: Optional[tuple] = None

    def __post_init__(self):
        eset = set(self.edges)
        for poly in self.faces2:
            if len(set(poly)) != len(poly) or len(poly) < 3:
                raise ValueError(f"bad polygon {poly}")
            m = len(poly)
            for i in range(m):
                e = _key(poly[i], poly[(i + 1) % m])
                if e not in eset:
                    raise ValueError(f"polygon {poly} uses missing edge {e}")

    @staticmethod
    def build(n_vertices, edges, faces2, cells3=None) -> "PolytopalComplex":
        """Canonicalize and sort; cells3 entries are indices into the
        faces2 argument as passed and get remapped to the sorted order."""
        edges = tuple(sorted(_key(*e) for e in edges))
        canon = [_canon_polygon(p) for p in faces2]
        order = sorted(range(len(canon)), key=lambda i: canon[i])
        new_index = {old: new for new, old in enumerate(order)}
        faces2_sorted = tuple(canon[i] for i in order)
        cells = None
        if cells3:
            cells = tuple(sorted(frozenset(new_index[j] for j in c) for c in cells3))
        return PolytopalComplex(n_vertices, edges, faces2_sorted, cells)

    @cached_property
    def f_vector(self) -> tuple:
        fv = [self.n_vertices, len(self.edges), len(self.faces2)]
        if self.cells3 is not None:
            fv.append(len(self.cells3))
        return tuple(fv)

    @cached_property
    def edge_index(self) -> dict:
        return {e: i for i, e in enumerate(self.edges)}

    @cached_property
    def edge_faces(self) -> list:
        """For each edge index, the indices of 2-faces containing it."""
        out = [[] for _ in self.edges]
        for j, poly in enumerate(self.faces2):
            m = len(poly)
            for i in range(m):
                out[self.edge_index[_key(poly[i], poly[(i + 1) % m])]].append(j)
        return [tuple(fs) for fs in out]

    @cached_property
    def vertex_faces(self) -> list:
        out = [[] for _ in range(self.n_vertices)]
        for j, poly in enumerate(self.faces2):
            for v in poly:
                out[v].append(j)
        return [tuple(fs) for fs in out]

    @cached_property
    def neighbors(self) -> list:
        out = [set() for _ in range(self.n_vertices)]
        for a, b in self.edges:
            out[a].add(b)
            out[b].add(a)
        return [tuple(sorted(s)) for s in out]

    def face_link_edge(self, face_idx: int, v: int) -> tuple:
        """The link-graph edge that 2-face ``face_idx`` contributes at v:
        the pair of neighbors of v along the polygon boundary."""
        poly = self.faces2[face_idx]
        i = poly.index(v)
        m = len(poly)
        return _key(poly[i - 1], poly[(i + 1) % m])

    def vertex_link_graph(self, v: int) -> tuple:
        """Nodes (neighbors of v) and, per incident 2-face, its link edge."""
        return self.neighbors[v], tuple(self.face_link_edge(j, v) for j in self.vertex_faces[v])

    def validate_closed_4_polytope(self):
        """Each 2-face must lie in exactly two 3-cells and each edge's
        2-face ring must close into a single cycle."""
        if self.cells3 is None:
            raise ValueError("no 3-cells recorded")
        count = [0] * len(self.faces2)
        for c in self.cells3:
            for j in c:
                count[j] += 1
        if any(c != 2 for c in count):
            raise ValueError("some 2-face does not lie in exactly two 3-cells")
        # around each edge, 2-faces adjacent through a shared 3-cell must
        # form one single cycle
        for ei, fs in enumerate(self.edge_faces):
            pos = {j: k for k, j in enumerate(fs)}
            adj = [set() for _ in fs]
            for c in self.cells3:
                here = [j for j in fs if j in c]
                if len(here) == 0:
                    continue
                if len(here) != 2:
                    raise ValueError(
                        f"cell meets edge {self.edges[ei]} in {len(here)} 2-faces")
                a, b = (pos[j] for j in here)
                adj[a].add(b)
                adj[b].add(a)
            if any(len(a) != 2 for a in adj):
                raise ValueError(f"2-face ring around edge {self.edges[ei]} not 2-regular")
            seen = {0}
            stack = [0]
            while stack:
                x = stack.pop()
                for y in adj[x]:
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
            if len(seen) != len(fs):
                raise ValueError(f"2-face ring around edge {self.edges[ei]} splits")
