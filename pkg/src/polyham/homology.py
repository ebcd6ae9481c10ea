"""Simplicial homology over Z, Q and GF(2), induced maps, tightness
certification, fundamental classes and the cup-product intersection form
of combinatorial 4-manifolds.

Conventions.  Chains are coordinate vectors over the sorted face lists of
the complex; the boundary of a sorted simplex carries the usual
alternating signs, so orientation data comes entirely from the global
vertex order.  Cup products use the front-face/back-face rule on the same
order, which is what makes the cocycle-level product well defined.
"""

from __future__ import annotations

import random
import time
import warnings
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from .complexes import NotOrientable, SimplicialComplex, coherent_orientation
from .errors import BudgetExceeded, NotAManifoldCertificate
from .intlinalg import (
    Gf2Space, det_bareiss, gf2_kernel_basis, gf2_rank, invert_unimodular,
    smith_normal_form, symmetric_signature,
)


# ---------------------------------------------------------------------------
# boundary matrices
# ---------------------------------------------------------------------------

@lru_cache(maxsize=256)
def _face_index(K: SimplicialComplex, d: int) -> dict:
    return {f: i for i, f in enumerate(K.faces(d))}

def boundary_entries(K: SimplicialComplex, d: int):
    """The boundary operator C_d -> C_{d-1} as (m, n, entry triples)."""
    if d <= 0:
        return (0 if d < 0 else 0, len(K.faces(d)), [])
    rows = _face_index(K, d - 1)
    cols = K.faces(d)
    entries = []
    for j, f in enumerate(cols):
        for t in range(d + 1):
            sub = f[:t] + f[t + 1:]
            entries.append((rows[sub], j, -1 if t % 2 else 1))
    return (len(rows), len(cols), entries)


def gf2_boundary_columns(K: SimplicialComplex, d: int) -> list:
    """Column bitmasks (over (d-1)-face indices) of the boundary operator."""
    if d <= 0:
        return [0] * len(K.faces(d))
    rows = _face_index(K, d - 1)
    out = []
    for f in K.faces(d):
        mask = 0
        for t in range(d + 1):
            mask |= 1 << rows[f[:t] + f[t + 1:]]
        out.append(mask)
    return out


@lru_cache(maxsize=64)
def validate_chain_complex(K: SimplicialComplex) -> bool:
    """Assert boundary-of-boundary vanishes for every dimension pair."""
    for d in range(2, K.dim + 1):
        m1, n1, e1 = boundary_entries(K, d)
        rows_d1 = {}
        for (i, j, v) in e1:
            rows_d1.setdefault(j, []).append((i, v))
        _, _, e0 = boundary_entries(K, d - 1)
        bd_prev: dict = {}
        for (i, j, v) in e0:
            bd_prev.setdefault(j, []).append((i, v))
        for j in range(n1):
            acc: dict = {}
            for (i, v) in rows_d1[j]:
                for (i2, v2) in bd_prev.get(i, ()):
                    acc[i2] = acc.get(i2, 0) + v * v2
            assert all(v == 0 for v in acc.values()), \
                f"boundary of boundary nonzero in dimension {d}"
    return True


# ---------------------------------------------------------------------------
# homology profiles
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HomologyProfile:
    coefficients: str          # "Z", "Q" or "Z2"
    betti: tuple               # one entry per dimension 0..dim
    torsion: tuple             # per dimension, tuple of torsion coefficients
    reduced: bool = False

    def __str__(self):
        tor = ", ".join(
            f"H{i} torsion {list(t)}" for i, t in enumerate(self.torsion) if t)
        return f"betti {list(self.betti)}" + (f" ({tor})" if tor else "")


def homology(K: SimplicialComplex, coefficients: str = "Z",
             reduced: bool = False) -> HomologyProfile:
    """Homology of K; integer coefficients give torsion via Smith forms."""
    if not K.facets:
        raise ValueError("homology of the empty complex is not supported")
    validate_chain_complex(K)
    dim = K.dim
    nf = [len(K.faces(d)) for d in range(dim + 1)]
    if coefficients == "Z2":
        ranks = [0] * (dim + 2)
        for d in range(1, dim + 1):
            ranks[d] = gf2_rank(gf2_boundary_columns(K, d))
        betti = [nf[d] - ranks[d] - ranks[d + 1] for d in range(dim + 1)]
        torsion = tuple(() for _ in range(dim + 1))
    else:
        sfs = [None] * (dim + 2)
        for d in range(1, dim + 1):
            sfs[d] = smith_normal_form(*boundary_entries(K, d))
        ranks = [sf.rank if sf else 0 for sf in sfs]
        betti = [nf[d] - ranks[d] - ranks[d + 1] for d in range(dim + 1)]
        if coefficients == "Z":
            torsion = tuple(
                tuple(sfs[d + 1].nontrivial_factors) if d + 1 <= dim else ()
                for d in range(dim + 1))
        elif coefficients == "Q":
            torsion = tuple(() for _ in range(dim + 1))
        else:
            raise ValueError(f"unknown coefficient system {coefficients!r}")
    if reduced:
        betti = list(betti)
        betti[0] -= 1
    chi = K.euler_characteristic - (1 if reduced else 0)
    assert sum((-1) ** i * b for i, b in enumerate(betti)) == chi, \
        "Euler-Poincare identity violated"
    return HomologyProfile(coefficients, tuple(betti), torsion, reduced)


# ---------------------------------------------------------------------------
# induced maps and tightness
# ---------------------------------------------------------------------------

def _check_subcomplex(K: SimplicialComplex, A: SimplicialComplex):
    kf = K.face_set
    for f in A.facets:
        if f not in kf:
            raise ValueError(f"{f} is not a face of the ambient complex")


def induced_map_injective(K: SimplicialComplex, A: SimplicialComplex,
                          dim: int, field: str = "Z2") -> bool:
    """Is H_dim(A) -> H_dim(K) injective over the given field?

    A must be a subcomplex of K in the same vertex numbering.  The test is
    rank arithmetic on cycle and boundary spaces:  the map is injective
    iff  dim(Z_dim(A) meet B_dim(K)) == dim B_dim(A).
    """
    _check_subcomplex(K, A)
    if not A.facets:
        return True
    if field == "Z2":
        return _injective_gf2_general(K, A, dim)
    if field == "Q":
        return _injective_q(K, A, dim)
    raise ValueError(f"unsupported field {field!r} for injectivity test")


def _faces_in(K: SimplicialComplex, A: SimplicialComplex, d: int) -> list:
    af = set(A.faces(d))
    idx = _face_index(K, d)
    return [idx[f] for f in sorted(af)]


def _injective_gf2_general(K, A, d):
    cols_K = gf2_boundary_columns(K, d)
    a_faces = _faces_in(K, A, d)
    kernel = gf2_kernel_basis([cols_K[i] for i in a_faces], len(a_faces))
    z_global = []
    for combo in kernel:
        mask = 0
        j = 0
        while combo:
            if combo & 1:
                mask |= 1 << a_faces[j]
            combo >>= 1
            j += 1
        z_global.append(mask)
    bk = Gf2Space()
    for c in gf2_boundary_columns(K, d + 1):
        bk.add(c)
    added = sum(1 for z in z_global if bk.add(z))
    dim_ba = gf2_rank(_embed_gf2(A, K, d, c) for c in gf2_boundary_columns(A, d + 1))
    return len(z_global) - added == dim_ba


def _embed_gf2(A, K, d, col_mask):
    """Re-index a d-chain over A's face numbering into K's."""
    a_idx = A.faces(d)
    k_idx = _face_index(K, d)
    out = 0
    j = 0
    while col_mask:
        if col_mask & 1:
            out |= 1 << k_idx[a_idx[j]]
        col_mask >>= 1
        j += 1
    return out


def _injective_q(K, A, d):
    """Rank arithmetic over Q with exact integer matrices."""
    mA, nA, eA = boundary_entries(A, d)
    rank_dA = smith_normal_form(mA, nA, eA).rank
    dim_z = nA - rank_dA
    if dim_z == 0:
        return True
    sfA = smith_normal_form(mA, nA, eA, want_v=True)
    kb = sfA.kernel_basis()
    # embed kernel vectors into K's d-face coordinates
    k_idx = _face_index(K, d)
    a_faces = A.faces(d)
    nK = len(K.faces(d))
    z_entries = []
    for t, vec in enumerate(kb):
        for j, v in enumerate(vec):
            if v:
                z_entries.append((k_idx[a_faces[j]], t, v))
    mK1, nK1, eK1 = boundary_entries(K, d + 1)
    dim_bk = smith_normal_form(mK1, nK1, eK1).rank
    # dim (Z_A + B_K): stack kernel vectors and boundary columns
    comb = list(z_entries)
    for (i, j, v) in eK1:
        comb.append((i, len(kb) + j, v))
    dim_sum = smith_normal_form(nK, len(kb) + nK1, comb).rank
    mA1, nA1, eA1 = boundary_entries(A, d + 1)
    dim_ba = smith_normal_form(mA1, nA1, eA1).rank
    return dim_z + dim_bk - dim_sum == dim_ba


# -- the Z2 subset-sweep engine ------------------------------------------------

class TightnessEngine:
    """Fast injectivity checks for vertex-spanned subcomplexes over GF(2).

    Precomputes, per dimension, the vertex masks of all faces, boundary
    column bitmasks, and an echelon basis of the ambient boundary space.
    A subset check costs a few hundred bitmask reductions.
    """

    def __init__(self, K: SimplicialComplex):
        self.K = K
        self.n = K.n_vertices
        self.dim = K.dim
        self.face_vmask = []   # per dim, list of vertex masks
        self.bd_cols = []      # per dim, boundary column masks
        self.bk = []           # per dim, Gf2Space of boundaries B_d(K)
        for d in range(self.dim + 1):
            self.face_vmask.append(
                [self._vmask(f) for f in K.faces(d)])
            self.bd_cols.append(gf2_boundary_columns(K, d))
        for d in range(self.dim + 1):
            sp = Gf2Space()
            if d + 1 <= self.dim:
                for c in self.bd_cols[d + 1]:
                    sp.add(c)
            self.bk.append(sp)

    @staticmethod
    def _vmask(face) -> int:
        m = 0
        for v in face:
            m |= 1 << v
        return m

    def _span_faces(self, wmask: int, d: int) -> list:
        vm = self.face_vmask[d]
        return [i for i in range(len(vm)) if vm[i] & ~wmask == 0]

    def check_subset_dim(self, wmask: int, d: int) -> bool:
        """H_d(span(W)) -> H_d(K) injectivity for one dimension."""
        faces_d = self._span_faces(wmask, d)
        if not faces_d:
            return True
        cols = self.bd_cols[d]
        kernel = gf2_kernel_basis([cols[i] for i in faces_d], len(faces_d))
        if not kernel:
            return True
        sp = self.bk[d].copy()
        added = 0
        for combo in kernel:
            mask = 0
            j = 0
            while combo:
                if combo & 1:
                    mask |= 1 << faces_d[j]
                combo >>= 1
                j += 1
            if sp.add(mask):
                added += 1
        dim_meet = len(kernel) - added
        if d + 1 > self.dim:
            dim_ba = 0
        else:
            faces_d1 = self._span_faces(wmask, d + 1)
            cols1 = self.bd_cols[d + 1]
            dim_ba = gf2_rank(cols1[i] for i in faces_d1)
        return dim_meet == dim_ba

    def check_subset(self, wmask: int, max_dim: Optional[int] = None) -> bool:
        top = self.dim if max_dim is None else min(max_dim, self.dim)
        return all(self.check_subset_dim(wmask, d) for d in range(top + 1))


@dataclass
class TightnessReport:
    passed: bool
    mode: str
    field: str
    max_dim: Optional[int]
    n_checked: int          # subsets actually evaluated
    n_covered: int          # subsets covered (including symmetry orbits)
    first_violation: Optional[tuple]  # (sorted vertex tuple, dimension)
    wall_time: float
    symmetry_order: int = 1
    scope: str = "halfspace"


def _byte_tables(perm: Sequence[int], n: int):
    """Per-byte lookup tables realizing mask -> permuted mask."""
    nbytes = (n + 7) // 8
    tables = []
    for b in range(nbytes):
        tab = [0] * 256
        for byte in range(256):
            m = 0
            for bit in range(8):
                v = b * 8 + bit
                if v < n and byte >> bit & 1:
                    m |= 1 << perm[v]
            tab[byte] = m
        tables.append(tab)
    return tables


def _subset_orbits(n: int, gen_tables: list):
    """Group masks 0..2^n-1 into orbits; yields (representative, size)."""
    total = 1 << n
    seen = bytearray(total)
    for start in range(total):
        if seen[start]:
            continue
        orbit = {start}
        frontier = [start]
        seen[start] = 1
        while frontier:
            m = frontier.pop()
            for tabs in gen_tables:
                img = 0
                mm = m
                b = 0
                while mm:
                    img |= tabs[b][mm & 255]
                    mm >>= 8
                    b += 1
                if not seen[img]:
                    seen[img] = 1
                    orbit.add(img)
                    frontier.append(img)
        yield start, len(orbit)


def halfspace_scope(K: SimplicialComplex):
    """Predicate selecting the vertex subsets achievable as halfspace (or
    ball / ball-complement) cuts of the natural ambient embedding.

    For a complex whose missing edges form a perfect matching (the
    diagonals of a cross polytope in which it is 1-Hamiltonian), a subset
    is achievable iff every diagonal is occupied or no diagonal is doubly
    occupied.  A complex with a complete edge graph sits in a simplex,
    where every subset is achievable.
    """
    n = K.n_vertices
    present = set(K.edges)
    missing = [(a, b) for a in range(n) for b in range(a + 1, n)
               if (a, b) not in present]
    if not missing:
        return lambda w: True
    touched = [v for e in missing for v in e]
    if len(missing) * 2 != n or len(set(touched)) != n:
        raise ValueError("missing edges do not form a perfect matching; "
                         "no ambient halfspace scope is defined")
    pair_masks = [(1 << a) | (1 << b) for a, b in missing]

    def achievable(w: int) -> bool:
        occupied = doubled = 0
        for pm in pair_masks:
            x = w & pm
            if x:
                occupied += 1
                if x == pm:
                    doubled += 1
        return occupied == len(pair_masks) or doubled == 0

    return achievable


def certify_tight(K: SimplicialComplex, field: str = "Z2",
                  mode: str = "all-subsets", k: Optional[int] = None,
                  sample_size: int = 10000, seed: int = 0,
                  scope: str = "halfspace",
                  use_symmetry: bool = True) -> TightnessReport:
    """Certify that spanned subcomplexes inject into K at the homology
    level (over the given field).

    Modes: ``all-subsets`` sweeps every vertex subset in scope (n <= 20),
    reduced to orbits under the automorphism group when ``use_symmetry``;
    ``k-tight`` restricts to homology dimensions 0..k; ``sampled`` draws
    ``sample_size`` subsets from a seeded generator.

    Scope: ``halfspace`` restricts to the subsets achievable as open
    halfspace or ball cuts of the ambient embedding, which is what
    tightness and PL-tautness quantify over (for a subcomplex of a
    cross polytope, sets isolating only diagonal pairs are not cuts and
    must be excluded: a diagonal pair spans two isolated points).
    ``all`` sweeps literally every subset.
    """
    if field != "Z2":
        raise ValueError("the subset sweep runs over Z2; use "
                         "induced_map_injective for other fields")
    t0 = time.time()
    n = K.n_vertices
    max_dim = None
    if mode == "k-tight":
        if k is None:
            raise ValueError("k-tight mode needs k")
        max_dim = k
    elif mode not in ("all-subsets", "sampled"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode in ("all-subsets", "k-tight") and n > 20:
        raise BudgetExceeded(f"2^{n} subsets is above the all-subsets bound")
    if scope == "halfspace":
        in_scope = halfspace_scope(K)
    elif scope == "all":
        in_scope = lambda w: True
    else:
        raise ValueError(f"unknown scope {scope!r}")

    eng = TightnessEngine(K)
    checked = covered = 0
    violation = None
    sym_order = 1

    if mode == "sampled":
        rng = random.Random(seed)
        drawn = 0
        while drawn < sample_size:
            w = rng.getrandbits(n)
            if not in_scope(w):
                continue
            drawn += 1
            checked += 1
            covered += 1
            if not eng.check_subset(w, max_dim):
                violation = (_mask_verts(w), _find_violation_dim(eng, w, max_dim))
                break
    else:
        gens = None
        if use_symmetry:
            from .perms import automorphism_group
            G = automorphism_group(K)
            sym_order = G.order
            gens = [_byte_tables(p, n) for p in G.generators] or None
        if gens:
            # automorphisms preserve the missing-edge matching, so scope
            # membership is orbit invariant
            orbits = _subset_orbits(n, gens)
        else:
            orbits = ((w, 1) for w in range(1 << n))
        for w, size in orbits:
            if not in_scope(w):
                continue
            checked += 1
            covered += size
            if not eng.check_subset(w, max_dim):
                violation = (_mask_verts(w), _find_violation_dim(eng, w, max_dim))
                break

    return TightnessReport(
        passed=violation is None, mode=mode, field=field, max_dim=max_dim,
        n_checked=checked, n_covered=covered, first_violation=violation,
        wall_time=time.time() - t0, symmetry_order=sym_order, scope=scope)


def _mask_verts(w: int) -> tuple:
    out = []
    v = 0
    while w:
        if w & 1:
            out.append(v)
        w >>= 1
        v += 1
    return tuple(out)


def _find_violation_dim(eng: TightnessEngine, w: int, max_dim) -> int:
    top = eng.dim if max_dim is None else min(max_dim, eng.dim)
    for d in range(top + 1):
        if not eng.check_subset_dim(w, d):
            return d
    raise AssertionError("violation vanished on re-check")


# ---------------------------------------------------------------------------
# fundamental class and intersection form
# ---------------------------------------------------------------------------

def fundamental_class(K: SimplicialComplex) -> dict:
    """Coherent +-1 coefficients per facet of a closed orientable
    pseudomanifold (the lexicographically least facet gets +1); the
    boundary of the resulting chain is verified to vanish."""
    if not K.is_pseudomanifold():
        raise ValueError("fundamental class needs a closed pseudomanifold")
    if not K.is_strongly_connected():
        raise ValueError("fundamental class needs a strongly connected complex")
    signs = coherent_orientation(K)
    if signs is None:
        raise NotOrientable("complex admits no coherent facet orientation")
    acc: dict = {}
    d = K.dim
    for f, s in signs.items():
        for t in range(d + 1):
            sub = f[:t] + f[t + 1:]
            acc[sub] = acc.get(sub, 0) + s * (-1 if t % 2 else 1)
    assert all(v == 0 for v in acc.values()), "chain boundary must vanish"
    return signs


@dataclass
class IntersectionForm:
    """Cup-product pairing on the free part of H^2 of a closed oriented
    combinatorial 4-manifold.  The Gram matrix depends on the cocycle
    basis and the orientation; rank, parity, |det| and signature do not."""
    rank: int
    gram: tuple
    parity: str          # "even" or "odd"
    signature: int
    det: int
    _cocycles: list      # basis cocycles as dicts 2-face -> int
    _qinv: Optional[list] = None

    def evaluation(self, cycle: dict) -> list:
        """Evaluate every basis cocycle on an integer 2-cycle."""
        return [sum(phi.get(f, 0) * c for f, c in cycle.items())
                for phi in self._cocycles]

    def pair_cycles(self, z: dict, w: dict) -> int:
        """Intersection number of two integer 2-cycles (as face -> coeff
        dicts in the manifold's own vertex numbering)."""
        if self._qinv is None:
            self._qinv = invert_unimodular([list(r) for r in self.gram])
        u = self.evaluation(z)
        v = self.evaluation(w)
        return sum(u[i] * self._qinv[i][j] * v[j]
                   for i in range(self.rank) for j in range(self.rank))


def empty_simplex_cycle(K: SimplicialComplex, verts: Sequence[int]) -> dict:
    """The boundary chain of a missing simplex: a cycle of codimension-1
    faces of ``verts`` with alternating signs."""
    t = tuple(sorted(verts))
    if t in K.face_set:
        raise ValueError(f"{t} is a face, not an empty simplex")
    cyc = {}
    for i in range(len(t)):
        sub = t[:i] + t[i + 1:]
        if sub not in K.face_set:
            raise ValueError(f"boundary face {sub} missing from the complex")
        cyc[sub] = -1 if i % 2 else 1
    return cyc


def intersection_form(K: SimplicialComplex, links_certified: bool = False,
                      vertex_order: Optional[Sequence[int]] = None) -> IntersectionForm:
    """Intersection form of a closed orientable combinatorial 4-manifold.

    ``links_certified`` acknowledges that all vertex links have been
    certified as 3-spheres (see the bistellar engine); without it the
    computation refuses to run since the cup-product pairing is only
    meaningful on an actual manifold.  ``vertex_order`` optionally
    relabels the complex before the computation; invariants must not
    depend on it.
    """
    if not links_certified:
        raise NotAManifoldCertificate(
            "certify vertex links as spheres before asking for the form")
    if vertex_order is not None:
        inv = [0] * K.n_vertices
        for new, old in enumerate(vertex_order):
            inv[old] = new
        K = K.relabeled(inv)
    if K.dim != 4:
        raise ValueError("intersection form implemented for 4-manifolds")
    prof = homology(K, "Z")
    if prof.torsion[1]:
        warnings.warn("H1 has torsion; free-part pairing may be degenerate")

    orient = fundamental_class(K)

    n1, n2, n3 = (len(K.faces(d)) for d in (1, 2, 3))
    # coboundary operators are transposed boundaries
    _, _, e2 = boundary_entries(K, 2)
    _, _, e3 = boundary_entries(K, 3)
    d1_entries = [(j, i, v) for (i, j, v) in e2]   # C^1 -> C^2, shape (n2, n1)
    d2_entries = [(j, i, v) for (i, j, v) in e3]   # C^2 -> C^3, shape (n3, n2)

    sf2 = smith_normal_form(n3, n2, d2_entries, want_v=True, want_vinv=True)
    kernel = sf2.kernel_basis()          # integral basis of the cocycle lattice
    kdim = len(kernel)

    # express coboundaries in kernel coordinates
    d1_cols: dict = {}
    for (i, j, v) in d1_entries:
        d1_cols.setdefault(j, {})[i] = v
    m_entries = []
    for j in range(n1):
        col = [0] * n2
        for i, v in d1_cols.get(j, {}).items():
            col[i] = v
        coords = sf2.kernel_coordinates(col)
        for t, v in enumerate(coords):
            if v:
                m_entries.append((t, j, v))
    sfm = smith_normal_form(kdim, n1, m_entries, want_u=True, want_uinv=True)
    free_rows = [t for t in range(kdim) if t not in set(sfm.pivot_rows)]
    rank = len(free_rows)
    assert rank == prof.betti[2], "free cohomology rank must match betti_2"

    faces2 = K.faces(2)
    basis = []
    for t in free_rows:
        coords = sfm.Uinv[t]             # column t of U^-1
        vec = [0] * n2
        for s in range(kdim):
            c = coords[s]
            if c:
                kb = kernel[s]
                for i in range(n2):
                    if kb[i]:
                        vec[i] += c * kb[i]
        basis.append({faces2[i]: vec[i] for i in range(n2) if vec[i]})

    # verify the basis really consists of cocycles
    for phi in basis:
        for g in K.faces(3):
            acc = 0
            for t in range(4):
                sub = g[:t] + g[t + 1:]
                acc += (-1 if t % 2 else 1) * phi.get(sub, 0)
            assert acc == 0, "basis vector is not a cocycle"

    gram = [[0] * rank for _ in range(rank)]
    facet_terms = [(f, s, f[:3], f[2:]) for f, s in orient.items()]
    for a in range(rank):
        pa = basis[a]
        for b in range(rank):
            pb = basis[b]
            total = 0
            for f, s, front, back in facet_terms:
                x = pa.get(front, 0)
                if x:
                    y = pb.get(back, 0)
                    if y:
                        total += s * x * y
            gram[a][b] = total

    for a in range(rank):
        for b in range(rank):
            assert gram[a][b] == gram[b][a], "cup pairing must be symmetric on H^2"
    det = det_bareiss(gram)
    assert abs(det) == 1, f"intersection form must be unimodular, det={det}"
    parity = "even" if all(gram[i][i] % 2 == 0 for i in range(rank)) else "odd"
    sig = symmetric_signature(gram)
    return IntersectionForm(rank=rank, gram=tuple(tuple(r) for r in gram),
                            parity=parity, signature=sig, det=det,
                            _cocycles=basis)
