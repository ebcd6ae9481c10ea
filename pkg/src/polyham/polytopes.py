"""Exact construction of the regular polytopes used as search substrates.

Boundary complexes of the simplex and cross polytope come as simplicial
complexes; the 24-cell, 600-cell and 120-cell are built from exact
coordinates (rationals extended by sqrt(5) where needed), with facets
detected by supporting hyperplanes and validated against the classical
f-vectors.  Symmetry groups are realized as vertex permutation groups,
generated by flag-adjacency automorphisms and certified complete by the
flag count.

No floating point is used anywhere in this module.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .complexes import PolytopalComplex, SimplicialComplex
from .errors import ConstructionFailed
from .perms import PermGroup, identity


# ---------------------------------------------------------------------------
# the field Q(sqrt(5))
# ---------------------------------------------------------------------------

class QF:
    """Exact element a + b*sqrt(5) of Q(sqrt5).

    Comparisons use exact sign determination: a + b*sqrt5 > 0 iff
    (a >= 0 and b >= 0 and not both zero) or the dominant term wins by
    comparing a^2 against 5 b^2.  sqrt5 is irrational, so a^2 = 5 b^2
    only when a = b = 0.
    """

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        self.a = Fraction(a)
        self.b = Fraction(b)

    def __add__(self, o):
        o = _qf(o)
        return QF(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, o):
        o = _qf(o)
        return QF(self.a - o.a, self.b - o.b)

    def __rsub__(self, o):
        return _qf(o) - self

    def __mul__(self, o):
        o = _qf(o)
        return QF(self.a * o.a + 5 * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def __neg__(self):
        return QF(-self.a, -self.b)

    def __truediv__(self, o):
        o = _qf(o)
        # multiply by the conjugate: (a - b sqrt5) / (a^2 - 5 b^2)
        nrm = o.a * o.a - 5 * o.b * o.b
        if nrm == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt5)")
        inv = QF(o.a / nrm, -o.b / nrm)
        return self * inv

    def conjugate(self):
        return QF(self.a, -self.b)

    def sign(self) -> int:
        a, b = self.a, self.b
        if a == 0 and b == 0:
            return 0
        if a >= 0 and b >= 0:
            return 1
        if a <= 0 and b <= 0:
            return -1
        # mixed signs: compare |a| with |b| sqrt5 exactly
        if a * a > 5 * b * b:
            return 1 if a > 0 else -1
        return 1 if b > 0 else -1

    def __eq__(self, o):
        o = _qf(o)
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash((self.a, self.b))

    def __lt__(self, o):
        return (self - _qf(o)).sign() < 0

    def __le__(self, o):
        return (self - _qf(o)).sign() <= 0

    def __gt__(self, o):
        return (self - _qf(o)).sign() > 0

    def __ge__(self, o):
        return (self - _qf(o)).sign() >= 0

    def __repr__(self):
        if self.b == 0:
            return f"QF({self.a})"
        return f"QF({self.a} + {self.b}*sqrt5)"


def _qf(x) -> QF:
    return x if isinstance(x, QF) else QF(x)


PHI = QF(Fraction(1, 2), Fraction(1, 2))          # golden ratio
PHI_INV = QF(Fraction(-1, 2), Fraction(1, 2))     # 1/phi = phi - 1


def dot(u: Sequence[QF], v: Sequence[QF]) -> QF:
    acc = QF(0)
    for x, y in zip(u, v):
        acc = acc + x * y
    return acc


def dist2(u, v) -> QF:
    acc = QF(0)
    for x, y in zip(u, v):
        d = x - y
        acc = acc + d * d
    return acc


# ---------------------------------------------------------------------------
# simplicial families
# ---------------------------------------------------------------------------

def simplex_boundary(d: int) -> SimplicialComplex:
    """Boundary of the d-simplex: all d-subsets of d+1 vertices."""
    if d < 1:
        raise ValueError("d must be >= 1")
    return SimplicialComplex(itertools.combinations(range(d + 1), d),
                             n_vertices=d + 1)


def cross_polytope(d: int):
    """Boundary of the d-dimensional cross polytope and its diagonals.

    Vertices 2i and 2i+1 are the antipodal pair on axis i; facets pick one
    endpoint per axis.  Returns (complex, matching) where matching is the
    tuple of diagonal pairs (the non-edges).
    """
    if d < 1:
        raise ValueError("d must be >= 1")
    facets = []
    for choice in itertools.product((0, 1), repeat=d):
        facets.append(tuple(2 * i + c for i, c in enumerate(choice)))
    matching = tuple((2 * i, 2 * i + 1) for i in range(d))
    return SimplicialComplex(facets, n_vertices=2 * d), matching


def hyperoctahedral_group(d: int) -> PermGroup:
    """Symmetries of the cross polytope on vertex labels 0..2d-1
    (axis permutations and axis flips); order 2^d * d!."""
    gens = []
    n = 2 * d
    if d >= 2:
        # swap axes 0 and 1
        p = list(range(n))
        p[0], p[1], p[2], p[3] = 2, 3, 0, 1
        gens.append(tuple(p))
        # cycle all axes
        p = list(range(n))
        for i in range(d):
            j = (i + 1) % d
            p[2 * i], p[2 * i + 1] = 2 * j, 2 * j + 1
        gens.append(tuple(p))
    # flip axis 0
    p = list(range(n))
    p[0], p[1] = 1, 0
    gens.append(tuple(p))
    G = PermGroup(n, gens)
    expect = (2 ** d) * _factorial(d)
    assert G.order == expect, f"hyperoctahedral order {G.order} != {expect}"
    return G


def _factorial(k):
    out = 1
    for i in range(2, k + 1):
        out *= i
    return out


# ---------------------------------------------------------------------------
# the sporadic regular 4-polytopes
# ---------------------------------------------------------------------------

@dataclass
class PolytopeModel:
    name: str
    vertices: tuple            # coordinate tuples over QF
    complex: PolytopalComplex  # edges, 2-faces, 3-cells

    @cached_property
    def symmetry_group(self) -> PermGroup:
        return polytope_symmetry_group(self)

    @property
    def f_vector(self):
        return self.complex.f_vector


def _perms_of(coords) -> set:
    return set(itertools.permutations(coords))


def _sign_patterns(base) -> set:
    """All sign choices on the nonzero entries of base."""
    idx = [i for i, x in enumerate(base) if x != QF(0)]
    out = set()
    for signs in itertools.product((1, -1), repeat=len(idx)):
        v = list(base)
        for i, s in zip(idx, signs):
            v[i] = v[i] if s == 1 else -v[i]
        out.add(tuple(v))
    return out


def _perm_sign(p) -> int:
    s = 1
    p = list(p)
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            s = -s
    return s


_EVEN_PERMS_4 = [p for p in itertools.permutations(range(4)) if _perm_sign(p) == 1]


def _vertices_24cell():
    base = (QF(1), QF(1), QF(0), QF(0))
    out = set()
    for pat in _sign_patterns(base):
        out |= _perms_of(pat)
    return sorted(out, key=_coord_key)


def _vertices_600cell():
    h = Fraction(1, 2)
    out = set()
    out |= _sign_patterns((QF(h), QF(h), QF(h), QF(h)))
    for pat in _sign_patterns((QF(1), QF(0), QF(0), QF(0))):
        out |= _perms_of(pat)
    base = (PHI * QF(h), QF(h), PHI_INV * QF(h), QF(0))
    for pat in _sign_patterns(base):
        for p in _EVEN_PERMS_4:
            out.add(tuple(pat[p[i]] for i in range(4)))
    return sorted(out, key=_coord_key)


def _coord_key(v):
    return tuple((x.a, x.b) for x in v)


def _support_sets(vertices, normals, expected_size, expected_count):
    """For each normal, the set of vertices maximizing the inner product.

    Raises ConstructionFailed when a support has the wrong cardinality or
    the collection has the wrong size.
    """
    cells = set()
    for nrm in normals:
        vals = [dot(v, nrm) for v in vertices]
        best = max(vals)
        cell = frozenset(i for i, val in enumerate(vals) if val == best)
        if len(cell) != expected_size:
            raise ConstructionFailed(
                f"support of {nrm} has {len(cell)} vertices, expected {expected_size}")
        cells.add(cell)
    if len(cells) != expected_count:
        raise ConstructionFailed(
            f"{len(cells)} distinct supports, expected {expected_count}")
    return sorted(cells, key=sorted)


def _faces_from_cells(n_vertices, cells, polygon_size):
    """Derive 2-faces (pairwise cell intersections larger than an edge)
    and edges (vertex pairs lying in >= 3 cells) from the 3-cells."""
    polys = set()
    for c1, c2 in itertools.combinations(cells, 2):
        common = c1 & c2
        if len(common) >= 3:
            if len(common) != polygon_size:
                raise ConstructionFailed(
                    f"cell intersection of size {len(common)}, expected {polygon_size}")
            polys.add(common)
    pair_count: dict = {}
    for c in cells:
        for a, b in itertools.combinations(sorted(c), 2):
            pair_count[(a, b)] = pair_count.get((a, b), 0) + 1
    edges = {e for e, k in pair_count.items() if k >= 3}
    # orient each polygon into a cycle along edges
    faces2 = []
    for poly in polys:
        adj = {v: [] for v in poly}
        for a, b in itertools.combinations(sorted(poly), 2):
            if (a, b) in edges:
                adj[a].append(b)
                adj[b].append(a)
        if any(len(ns) != 2 for ns in adj.values()):
            raise ConstructionFailed("2-face is not bounded by a cycle")
        start = min(poly)
        cyc = [start]
        prev, cur = None, start
        while True:
            a, b = adj[cur]
            nxt = b if a == prev else a
            if nxt == start:
                break
            cyc.append(nxt)
            prev, cur = cur, nxt
        if len(cyc) != len(poly):
            raise ConstructionFailed("2-face cycle misses vertices")
        faces2.append(tuple(cyc))
    return sorted(edges), faces2


def _cells_as_face_sets(cells, faces2):
    out = []
    for c in cells:
        idxs = frozenset(j for j, poly in enumerate(faces2) if set(poly) <= c)
        out.append(idxs)
    return out


from functools import lru_cache


@lru_cache(maxsize=None)
def build_regular_4_polytope(name: str) -> PolytopeModel:
    """Construct cell24, cell600 or cell120 with exact coordinates.

    Facets come from supporting hyperplanes: the 24-cell is self-dual, the
    600-cell's tetrahedra are located as 4-cliques of the nearest-neighbor
    graph and certified by their supporting hyperplanes, and the 120-cell
    is built on the 600-cell's facet centroids (its dual).
    """
    if name == "cell24":
        verts = _vertices_24cell()
        half = Fraction(1, 2)
        normals = [p for pat in _sign_patterns((QF(1), QF(0), QF(0), QF(0)))
                   for p in _perms_of(pat)]
        normals = sorted(set(normals), key=_coord_key)
        normals += sorted(_sign_patterns((QF(half),) * 4), key=_coord_key)
        cells = _support_sets(verts, normals, 6, 24)
        edges, faces2 = _faces_from_cells(24, cells, 3)
        model = _assemble(name, verts, cells, edges, faces2, (24, 96, 96, 24))
        return model
    if name == "cell600":
        verts = _vertices_600cell()
        if len(verts) != 120:
            raise ConstructionFailed(f"600-cell has {len(verts)} vertices")
        cells = _tetrahedra_600cell(verts)
        normals = [_centroid([verts[i] for i in c]) for c in cells]
        _support_sets(verts, normals, 4, 600)
        edges, faces2 = _faces_from_cells(120, cells, 3)
        return _assemble(name, verts, cells, edges, faces2, (120, 720, 1200, 600))
    if name == "cell120":
        base = build_regular_4_polytope("cell600")
        verts600 = base.vertices
        cells600 = _cells_of(base)
        verts = sorted((_centroid([verts600[i] for i in c]) for c in cells600),
                       key=_coord_key)
        normals = list(verts600)
        cells = _support_sets(verts, normals, 20, 120)
        edges, faces2 = _faces_from_cells(600, cells, 5)
        return _assemble(name, verts, cells, edges, faces2, (600, 1200, 720, 120))
    raise ValueError(f"unknown polytope {name!r}")


def _cells_of(model: PolytopeModel):
    """Vertex sets of the 3-cells of an assembled model."""
    faces2 = model.complex.faces2
    out = []
    for c in model.complex.cells3:
        vs = set()
        for j in c:
            vs |= set(faces2[j])
        out.append(frozenset(vs))
    return out


def _centroid(points):
    k = len(points)
    return tuple(sum((p[i] for p in points), QF(0)) / QF(k) for i in range(4))


def _tetrahedra_600cell(verts):
    """Facets as 4-cliques of the nearest-neighbor graph."""
    n = len(verts)
    best = None
    for i, j in itertools.combinations(range(n), 2):
        d = dist2(verts[i], verts[j])
        if best is None or d < best:
            best = d
    nbr = [set() for _ in range(n)]
    for i, j in itertools.combinations(range(n), 2):
        if dist2(verts[i], verts[j]) == best:
            nbr[i].add(j)
            nbr[j].add(i)
    if any(len(s) != 12 for s in nbr):
        raise ConstructionFailed("600-cell vertex figure must have 12 neighbors")
    cells = set()
    for i in range(n):
        for j in nbr[i]:
            if j < i:
                continue
            common = nbr[i] & nbr[j]
            for k in common:
                if k < j:
                    continue
                for l in common & nbr[k]:
                    if l > k:
                        cells.add(frozenset((i, j, k, l)))
    if len(cells) != 600:
        raise ConstructionFailed(f"found {len(cells)} tetrahedra, expected 600")
    return sorted(cells, key=sorted)


def _assemble(name, verts, cells, edges, faces2, expect_f):
    pc = PolytopalComplex.build(len(verts), edges, faces2,
                                _cells_as_face_sets(cells, faces2))
    if pc.f_vector != expect_f:
        raise ConstructionFailed(f"{name} f-vector {pc.f_vector}, expected {expect_f}")
    pc.validate_closed_4_polytope()
    return PolytopeModel(name=name, vertices=tuple(verts), complex=pc)


# ---------------------------------------------------------------------------
# symmetry groups via flags
# ---------------------------------------------------------------------------

def _flags(pc: PolytopalComplex):
    """All (vertex, edge, 2-face, 3-cell) incident flags plus adjacency.

    flag^i is the unique flag differing only in the element of rank i;
    this is the combinatorial structure whose connectivity and strict
    flag-transitivity deliver the full symmetry group.
    """
    faces2 = pc.faces2
    cells3 = pc.cells3
    edge_idx = pc.edge_index
    face_edges = []
    for poly in faces2:
        m = len(poly)
        face_edges.append([edge_idx[_norm(poly[i], poly[(i + 1) % m])]
                           for i in range(m)])
    face_cells = [[] for _ in faces2]
    for ci, c in enumerate(cells3):
        for j in c:
            face_cells[j].append(ci)
    flags = []
    for ci, c in enumerate(cells3):
        for j in c:
            poly = faces2[j]
            m = len(poly)
            for t in range(m):
                e = face_edges[j][t]
                a, b = pc.edges[e]
                flags.append((a, e, j, ci))
                flags.append((b, e, j, ci))
    flags = sorted(set(flags))
    index = {fl: i for i, fl in enumerate(flags)}

    edge_faces_in_cell: dict = {}
    for ci, c in enumerate(cells3):
        for j in c:
            for e in face_edges[j]:
                edge_faces_in_cell.setdefault((e, ci), []).append(j)

    def adj(fl, i):
        v, e, f, c = fl
        if i == 0:
            a, b = pc.edges[e]
            return (b if v == a else a, e, f, c)
        if i == 1:
            others = [ee for ee in face_edges[f] if ee != e and v in pc.edges[ee]]
            assert len(others) == 1
            return (v, others[0], f, c)
        if i == 2:
            pair = edge_faces_in_cell[(e, c)]
            assert len(pair) == 2
            other = pair[0] if pair[1] == f else pair[1]
            return (v, e, other, c)
        pair = face_cells[f]
        assert len(pair) == 2
        return (v, e, f, pair[0] if pair[1] == c else pair[1])

    return flags, index, adj


def _norm(a, b):
    return (a, b) if a < b else (b, a)


def _flag_map_to_vertex_perm(pc, flags, index, adj, base, target):
    """Propagate base -> target over the flag graph; returns the induced
    vertex permutation or None if the correspondence is inconsistent."""
    n = len(flags)
    image = [None] * n
    image[index[base]] = target
    vmap = [None] * pc.n_vertices
    vmap[base[0]] = target[0]
    stack = [base]
    while stack:
        fl0 = stack.pop()
        fl = image[index[fl0]]
        for i in range(4):
            src = adj(fl0, i)
            dst = adj(fl, i)
            si = index[src]
            if image[si] is None:
                image[si] = dst
                v = src[0]
                if vmap[v] is None:
                    vmap[v] = dst[0]
                elif vmap[v] != dst[0]:
                    return None
                stack.append(src)
            elif image[si] != dst:
                return None
    if any(v is None for v in vmap):
        return None
    return tuple(vmap)


def polytope_symmetry_group(model: PolytopeModel) -> PermGroup:
    """All vertex permutations preserving edges and 2-faces.

    Generated by the four flag-adjacency automorphisms of a base flag;
    completeness is certified by the flag count: a symmetry is determined
    by the image of one flag, so the group order can be at most the
    number of flags, and the generated group already attains it.
    """
    pc = model.complex
    flags, index, adj = _flags(pc)
    base = flags[0]
    gens = []
    for i in range(4):
        p = _flag_map_to_vertex_perm(pc, flags, index, adj, base, adj(base, i))
        if p is None:
            raise ConstructionFailed("flag reflection does not extend")
        _check_preserves(pc, p)
        gens.append(p)
    G = PermGroup(pc.n_vertices, gens)
    assert G.order == len(flags), \
        f"symmetry order {G.order} must equal flag count {len(flags)}"
    return G


def _check_preserves(pc: PolytopalComplex, p):
    eset = set(pc.edges)
    for a, b in pc.edges:
        if _norm(p[a], p[b]) not in eset:
            raise ConstructionFailed("candidate symmetry breaks an edge")
    fset = {frozenset(poly) for poly in pc.faces2}
    for poly in pc.faces2:
        if frozenset(p[v] for v in poly) not in fset:
            raise ConstructionFailed("candidate symmetry breaks a 2-face")


# ---------------------------------------------------------------------------
# Platonic solids (as graphs, for the Hamiltonian cycle census)
# ---------------------------------------------------------------------------

def platonic_graph(name: str):
    """Edge graph of a Platonic solid: (n_vertices, edges)."""
    if name == "tetrahedron":
        return 4, tuple(itertools.combinations(range(4), 2))
    if name == "cube":
        edges = [(u, u ^ (1 << k)) for u in range(8) for k in range(3) if u < u ^ (1 << k)]
        return 8, tuple(sorted((min(e), max(e)) for e in edges))
    if name == "octahedron":
        K, _ = cross_polytope(3)
        return 6, K.edges
    if name in ("icosahedron", "dodecahedron"):
        if name == "icosahedron":
            coords = set()
            for pat in _sign_patterns((QF(0), QF(1), PHI)):
                coords |= {tuple(pat[(i + s) % 3] for i in range(3)) for s in range(3)}
            expect_n, expect_deg = 12, 5
        else:
            coords = set(_sign_patterns((QF(1), QF(1), QF(1))))
            for pat in _sign_patterns((QF(0), PHI_INV, PHI)):
                coords |= {tuple(pat[(i + s) % 3] for i in range(3)) for s in range(3)}
            expect_n, expect_deg = 20, 3
        verts = sorted(coords, key=lambda v: tuple((x.a, x.b) for x in v))
        if len(verts) != expect_n:
            raise ConstructionFailed(f"{name}: {len(verts)} vertices")
        best = None
        for u, v in itertools.combinations(range(len(verts)), 2):
            d = dist2(verts[u], verts[v])
            if best is None or d < best:
                best = d
        edges = tuple((u, v) for u, v in itertools.combinations(range(len(verts)), 2)
                      if dist2(verts[u], verts[v]) == best)
        deg = [0] * len(verts)
        for u, v in edges:
            deg[u] += 1
            deg[v] += 1
        if any(d != expect_deg for d in deg):
            raise ConstructionFailed(f"{name}: bad vertex degrees {set(deg)}")
        return len(verts), edges
    raise ValueError(f"unknown Platonic solid {name!r}")
