"""Embedded reference data.

All combinatorial fixtures used by the verification pipelines live here
as literal data: the 16-vertex centrally-symmetric triangulation of the
7-fold connected sum of S^2 x S^2 (2-Hamiltonian in the 8-dimensional
cross polytope), the 3-sphere link of its vertex 16, the six Hamiltonian
pinched-surface types of the 24-cell with their generating orbits and
automorphism generators, and the 22-vertex genus-21 example that is
2-Hamiltonian in the 11-dimensional cross polytope.

Facet blocks are stored in the facet-list text format (1-based labels,
one facet per line) and carry sha256 checksums that are verified on
load.  Permutations are cycle-notation strings, 1-based.
"""

from __future__ import annotations

import hashlib

from .complexes import SimplicialComplex, from_facet_text
from .perms import PermGroup, parse_cycles


class FixtureError(RuntimeError):
    pass


def _check(name: str, text: str):
    digest = hashlib.sha256(text.encode()).hexdigest()
    if digest != CHECKSUMS[name]:
        raise FixtureError(f"fixture {name} fails its checksum")
    return text


# -- 16-vertex (S^2 x S^2)#7, 2-Hamiltonian in the 8-dimensional cross polytope

# the three facet orbits of the order-128 symmetry group, 1-based labels
S2XS2_7_ORBIT_SEEDS = ((1, 3, 5, 7, 9), (1, 3, 5, 9, 13), (1, 3, 5, 7, 15))

# generators of (part of) the symmetry group; the full group is recovered
# from the facet data itself, and these are asserted to belong to it
S2XS2_7_ALPHA = "(1 12 16 14 2 11 15 13)(3 10 6 8 4 9 5 7)"
S2XS2_7_GAMMA = "(1 12 3 14)(2 11 4 13)(5 7 16 10)(6 8 15 9)"

# the central involution: antipodal on the cross polytope
S2XS2_7_ZETA = "(1 2)(3 4)(5 6)(7 8)(9 10)(11 12)(13 14)(15 16)"

# reflection exchanging the empty tetrahedra <7 10 11 16> and <8 12 13 16>
S2XS2_7_DELTA = "(1 2)(5 6)(7 12)(8 11)(9 14)(10 13)"

S2XS2_7_EMPTY_TETRA = ((7, 10, 11, 16), (8, 12, 13, 16))

S2XS2_7_FACETS_TEXT = """\
1 3 5 7 9
1 3 5 7 15
1 3 5 8 13
1 3 5 8 15
1 3 5 9 13
1 3 6 8 10
1 3 6 8 12
1 3 6 9 12
1 3 6 9 16
1 3 6 10 16
1 3 7 9 15
1 3 8 10 16
1 3 8 11 14
1 3 8 11 16
1 3 8 12 13
1 3 8 14 15
1 3 9 11 14
1 3 9 11 16
1 3 9 12 13
1 3 9 14 15
1 4 5 9 12
1 4 5 9 13
1 4 5 11 13
1 4 5 11 16
1 4 5 12 16
1 4 6 8 12
1 4 6 8 13
1 4 6 12 14
1 4 6 13 15
1 4 6 14 15
1 4 7 10 12
1 4 7 10 13
1 4 7 12 15
1 4 7 13 15
1 4 8 9 12
1 4 8 9 13
1 4 10 12 16
1 4 10 13 16
1 4 11 13 16
1 4 12 14 15
1 5 7 9 12
1 5 7 10 12
1 5 7 10 15
1 5 8 11 13
1 5 8 11 14
1 5 8 14 15
1 5 10 12 16
1 5 10 14 15
1 5 10 14 16
1 5 11 14 16
1 6 7 10 13
1 6 7 10 16
1 6 7 11 15
1 6 7 11 16
1 6 7 13 15
1 6 8 10 13
1 6 9 11 14
1 6 9 11 16
1 6 9 12 14
1 6 11 14 15
1 7 9 12 15
1 7 10 11 14
1 7 10 11 15
1 7 10 14 16
1 7 11 14 16
1 8 9 12 13
1 8 10 13 16
1 8 11 13 16
1 9 12 14 15
1 10 11 14 15
2 3 5 7 11
2 3 5 7 14
2 3 5 11 13
2 3 5 13 16
2 3 5 14 16
2 3 6 10 11
2 3 6 10 14
2 3 6 11 15
2 3 6 12 14
2 3 6 12 15
2 3 7 10 11
2 3 7 10 14
2 3 8 9 11
2 3 8 9 14
2 3 8 11 16
2 3 8 14 16
2 3 9 11 15
2 3 9 14 15
2 3 11 13 16
2 3 12 14 15
2 4 5 7 9
2 4 5 7 11
2 4 5 9 15
2 4 5 10 11
2 4 5 10 15
2 4 6 7 14
2 4 6 7 16
2 4 6 8 10
2 4 6 8 16
2 4 6 10 14
2 4 7 9 15
2 4 7 11 14
2 4 7 12 13
2 4 7 12 15
2 4 7 13 16
2 4 8 10 16
2 4 10 11 14
2 4 10 12 13
2 4 10 12 15
2 4 10 13 16
2 5 7 9 14
2 5 8 9 14
2 5 8 9 15
2 5 8 12 15
2 5 8 12 16
2 5 8 14 16
2 5 10 11 13
2 5 10 12 13
2 5 10 12 15
2 5 12 13 16
2 6 7 12 13
2 6 7 12 14
2 6 7 13 16
2 6 8 9 11
2 6 8 9 16
2 6 8 10 11
2 6 9 11 15
2 6 9 13 15
2 6 9 13 16
2 6 12 13 15
2 7 9 14 15
2 7 10 11 14
2 7 12 14 15
2 8 9 12 13
2 8 9 12 16
2 8 9 13 15
2 8 10 11 16
2 8 12 13 15
2 9 12 13 16
2 10 11 13 16
3 5 7 9 11
3 5 7 10 12
3 5 7 10 15
3 5 7 12 16
3 5 7 14 16
3 5 8 13 15
3 5 9 11 13
3 5 10 12 13
3 5 10 13 15
3 5 12 13 16
3 6 7 10 13
3 6 7 10 16
3 6 7 12 13
3 6 7 12 16
3 6 8 10 14
3 6 8 12 14
3 6 9 12 16
3 6 10 11 15
3 6 10 13 15
3 6 12 13 15
3 7 9 11 15
3 7 10 11 15
3 7 10 12 13
3 7 10 14 16
3 8 9 11 14
3 8 10 14 16
3 8 12 13 15
3 8 12 14 15
3 9 11 13 16
3 9 12 13 16
4 5 7 9 13
4 5 7 11 13
4 5 8 9 14
4 5 8 9 15
4 5 8 11 14
4 5 8 11 15
4 5 9 12 16
4 5 9 14 16
4 5 10 11 15
4 5 11 14 16
4 6 7 14 16
4 6 8 9 11
4 6 8 9 16
4 6 8 10 12
4 6 8 11 15
4 6 8 13 15
4 6 9 11 14
4 6 9 14 16
4 6 10 12 14
4 6 11 14 15
4 7 9 13 15
4 7 10 12 13
4 7 11 13 16
4 7 11 14 16
4 8 9 11 14
4 8 9 12 16
4 8 9 13 15
4 8 10 12 16
4 10 11 14 15
4 10 12 14 15
5 7 9 11 13
5 7 9 12 16
5 7 9 14 16
5 8 10 12 14
5 8 10 12 16
5 8 10 14 16
5 8 11 13 15
5 8 12 14 15
5 10 11 13 15
5 10 12 14 15
6 7 9 11 13
6 7 9 11 15
6 7 9 13 15
6 7 11 13 16
6 7 12 14 16
6 8 10 11 15
6 8 10 12 14
6 8 10 13 15
6 9 11 13 16
6 9 12 14 16
7 9 12 14 15
7 9 12 14 16
8 10 11 13 15
8 10 11 13 16
"""

# link of vertex 16: a 14-vertex 3-sphere with 70 tetrahedra
S2XS2_7_LINK16_TEXT = """\
1 3 6 9
1 3 6 10
1 3 8 10
1 3 8 11
1 3 9 11
1 4 5 11
1 4 5 12
1 4 10 12
1 4 10 13
1 4 11 13
1 5 10 12
1 5 10 14
1 5 11 14
1 6 7 10
1 6 7 11
1 6 9 11
1 7 10 14
1 7 11 14
1 8 10 13
1 8 11 13
2 3 5 13
2 3 5 14
2 3 8 11
2 3 8 14
2 3 11 13
2 4 6 7
2 4 6 8
2 4 7 13
2 4 8 10
2 4 10 13
2 5 8 12
2 5 8 14
2 5 12 13
2 6 7 13
2 6 8 9
2 6 9 13
2 8 9 12
2 8 10 11
2 9 12 13
2 10 11 13
3 5 7 12
3 5 7 14
3 5 12 13
3 6 7 10
3 6 7 12
3 6 9 12
3 7 10 14
3 8 10 14
3 9 11 13
3 9 12 13
4 5 9 12
4 5 9 14
4 5 11 14
4 6 7 14
4 6 8 9
4 6 9 14
4 7 11 13
4 7 11 14
4 8 9 12
4 8 10 12
5 7 9 12
5 7 9 14
5 8 10 12
5 8 10 14
6 7 11 13
6 7 12 14
6 9 11 13
6 9 12 14
7 9 12 14
8 10 11 13
"""


# -- the six Hamiltonian pinched-surface types in the 24-cell -----------------
#
# Vertex labels 1..24 follow the conventional numbering of the printed
# data; searches produce solutions in the package's own 24-cell labeling
# and compare with these up to isomorphism.  Each type records its
# automorphism group (by generators, with name and order), the generating
# triangle orbits with their lengths, the pinch point count and the
# normalized genus.

TYPE_DATA = {
    1: dict(
        group_name='C4 x C2',
        group_order=8,
        pinch_count=10,
        genus=0,
        generators=[
            '(1 12 16 18)(2 17 23 7)(3 13 20 21)(4 22 11 5)(6 19)(8 24 14 10)',
            '(1 3)(4 8)(5 10)(9 15)(11 14)(12 13)(16 20)(18 21)(22 24)',
        ],
        orbits=[
            ((1, 2, 3), 4),
            ((1, 2, 4), 8),
            ((1, 3, 6), 4),
            ((1, 4, 9), 8),
            ((1, 5, 7), 8),
            ((1, 5, 9), 8),
            ((1, 6, 11), 8),
            ((1, 7, 11), 8),
            ((2, 5, 10), 4),
            ((4, 6, 8), 4),
        ],
    ),
    2: dict(
        group_name='D8',
        group_order=8,
        pinch_count=10,
        genus=0,
        generators=[
            '(1 16)(2 17)(3 22)(5 20)(6 9)(7 23)(8 12)(10 24)(14 18)(15 19)',
            '(2 3)(4 6)(5 7)(9 11)(12 14)(13 15)(17 20)(19 21)(22 23)',
        ],
        orbits=[
            ((1, 2, 3), 4),
            ((1, 2, 4), 8),
            ((1, 4, 9), 4),
            ((2, 3, 8), 4),
            ((2, 4, 12), 8),
            ((2, 5, 10), 4),
            ((2, 5, 12), 4),
            ((2, 8, 13), 8),
            ((2, 10, 13), 8),
            ((4, 6, 8), 4),
            ((8, 13, 15), 4),
            ((10, 13, 19), 4),
        ],
    ),
    3: dict(
        group_name='C2 x C2',
        group_order=4,
        pinch_count=8,
        genus=1,
        generators=[
            '(1 24)(2 13)(3 15)(4 17)(5 19)(6 20)(7 21)(9 22)(11 23)',
            '(2 5)(3 7)(4 9)(6 11)(8 18)(13 19)(15 21)(17 22)(20 23)',
        ],
        orbits=[
            ((1, 2, 3), 4),
            ((1, 2, 4), 4),
            ((1, 3, 6), 4),
            ((1, 4, 9), 2),
            ((1, 6, 11), 2),
            ((2, 3, 8), 4),
            ((2, 4, 12), 4),
            ((2, 5, 10), 2),
            ((2, 5, 12), 2),
            ((2, 8, 13), 2),
            ((2, 10, 13), 2),
            ((3, 6, 14), 4),
            ((3, 7, 10), 2),
            ((3, 7, 14), 2),
            ((3, 8, 15), 2),
            ((3, 10, 15), 2),
            ((4, 6, 8), 4),
            ((4, 6, 16), 4),
            ((4, 8, 17), 2),
            ((4, 9, 16), 2),
            ((4, 12, 17), 2),
            ((6, 8, 20), 2),
            ((6, 11, 14), 2),
            ((6, 16, 20), 2),
        ],
    ),
    4: dict(
        group_name='(((C4 x C2):C2):C2):C2',
        group_order=64,
        pinch_count=8,
        genus=1,
        generators=[
            '(1 8 10 12)(3 13 5 4)(6 15 19 9)(7 17)(11 20 21 22)(14 24 18 16)',
            '(2 3)(4 6)(5 7)(9 11)(12 14)(13 15)(17 20)(19 21)(22 23)',
        ],
        orbits=[
            ((1, 2, 3), 32),
            ((1, 2, 4), 32),
        ],
    ),
    5: dict(
        group_name='S3',
        group_order=6,
        pinch_count=6,
        genus=2,
        generators=[
            '(1 3)(4 8)(5 10)(9 15)(11 14)(12 13)(16 20)(18 21)(22 24)',
            '(1 22 15)(2 12 13)(3 9 24)(4 17 8)(5 19 10)(6 16 20)(7 18 21)(11 23 14)',
        ],
        orbits=[
            ((1, 2, 3), 3),
            ((1, 2, 4), 6),
            ((1, 3, 6), 3),
            ((1, 4, 9), 3),
            ((1, 5, 7), 6),
            ((1, 5, 9), 3),
            ((1, 6, 11), 6),
            ((1, 7, 11), 6),
            ((2, 4, 12), 3),
            ((2, 5, 10), 3),
            ((2, 5, 12), 3),
            ((4, 6, 8), 3),
            ((4, 6, 16), 3),
            ((4, 8, 17), 1),
            ((5, 7, 18), 3),
            ((5, 10, 19), 1),
            ((6, 11, 16), 3),
            ((7, 11, 14), 3),
            ((7, 18, 21), 1),
            ((11, 14, 23), 1),
        ],
    ),
    6: dict(
        group_name='C2 x D8',
        group_order=16,
        pinch_count=4,
        genus=3,
        generators=[
            '(1 11)(2 23)(3 14)(4 16)(5 18)(8 20)(10 21)(12 22)(13 24)',
            '(1 5)(3 12)(4 10)(6 19)(7 9)(8 13)(11 18)(14 22)(15 17)(16 21)(20 24)',
            '(1 3)(4 8)(5 10)(9 15)(11 14)(12 13)(16 20)(18 21)(22 24)',
        ],
        orbits=[
            ((1, 2, 3), 8),
            ((1, 2, 4), 8),
            ((1, 3, 6), 8),
            ((1, 4, 9), 8),
            ((1, 5, 7), 16),
            ((1, 6, 11), 8),
            ((1, 7, 11), 8),
        ],
    ),
}

# explicit triangle list of type 6 (genus 3, four pinch points)
PINCHED24_TYPE6_FACETS_TEXT = """\
1 2 3
1 2 4
1 3 6
1 4 9
1 5 7
1 5 9
1 6 11
1 7 11
2 3 8
2 4 8
2 5 10
2 5 12
2 10 13
2 12 13
3 6 14
3 7 10
3 7 14
3 8 15
3 10 15
4 6 8
4 6 16
4 9 12
4 12 17
4 16 17
5 7 10
5 9 18
5 12 19
5 18 19
6 8 20
6 11 14
6 16 20
7 11 18
7 14 21
7 18 21
8 13 15
8 13 17
8 17 20
9 11 16
9 11 18
9 12 22
9 16 22
10 13 19
10 15 21
10 19 21
11 14 23
11 16 23
12 13 17
12 19 22
13 15 24
13 19 24
14 15 20
14 15 21
14 20 23
15 20 24
16 17 22
16 20 23
17 20 24
17 22 24
18 19 22
18 21 23
18 22 23
19 21 24
21 23 24
22 23 24"""

# links of the four pinch points of type 6: two 4-cycles each
PINCHED24_TYPE6_PINCH_LINKS = {
    2: ((1, 3, 8, 4), (5, 10, 13, 12)),
    6: ((1, 3, 14, 11), (4, 8, 20, 16)),
    19: ((5, 12, 22, 18), (10, 13, 24, 21)),
    23: ((11, 14, 20, 16), (18, 21, 24, 22)),
}


# -- 22-vertex genus-21 example, 2-Hamiltonian in the 11-dim cross polytope ---

CS22_GEN_22CYCLE = ("(1 16 7 22 13 5 19 12 3 18 10 2 15 8 21 14 6 20 11 4 17 9)")
CS22_GEN_ORDER5 = "(1 11 17 3 21)(2 12 18 4 22)(5 9 8 20 14)(6 10 7 19 13)"
CS22_INVOLUTION = ("(1 2)(3 4)(5 6)(7 8)(9 10)(11 12)(13 14)(15 16)"
                   "(17 18)(19 20)(21 22)")
CS22_ORBIT_SEEDS = (
    (1, 3, 5, 7, 18),
    (1, 3, 5, 7, 21),
    (1, 3, 5, 8, 18),
    (1, 3, 5, 8, 21),
    (1, 3, 7, 18, 20),
    (1, 3, 6, 10, 15),
)
CS22_ORBIT_LENGTHS = (110, 110, 110, 110, 110, 22)
CS22_GROUP_ORDER = 110
CS22_F_VECTOR = (22, 220, 1100, 1430, 572)
CS22_BETTI = (1, 0, 42, 0, 1)
CS22_GENUS = 21


CHECKSUMS = {

    "S2XS2_7_FACETS": "e76c0b11230a18c6540a93046741d94d7d8f0e5a342611ac1a79dbc2b662e3d8",
    "S2XS2_7_LINK16": "e76a947b1e2036aec32e91c4372933d0bf322e1e1519227d7498780962725bac",
    "PINCHED24_TYPE6_FACETS": "a791bc90fd5675019b5527a0f3e91494218b03290192a584823ae0c164bf1f03",
}


# -- loaders -------------------------------------------------------------------

def s2xs2_7_complex() -> SimplicialComplex:
    """The 16-vertex triangulation, 0-based vertices (label i+1 in print)."""
    return from_facet_text(_check("S2XS2_7_FACETS", S2XS2_7_FACETS_TEXT))


def s2xs2_7_link16() -> SimplicialComplex:
    """The printed link of vertex 16 (vertices relabeled 0..13 densely)."""
    return from_facet_text(_check("S2XS2_7_LINK16", S2XS2_7_LINK16_TEXT))


def pinched24_type6() -> SimplicialComplex:
    return from_facet_text(
        _check("PINCHED24_TYPE6_FACETS", PINCHED24_TYPE6_FACETS_TEXT + "\n"))


def pinched24_type_complex(t: int) -> SimplicialComplex:
    """Reconstruct pinched-surface type t (1..6) from its orbit data."""
    data = TYPE_DATA[t]
    gens = [parse_cycles(g, 24) for g in data["generators"]]
    G = PermGroup(24, gens)
    if G.order != data["group_order"]:
        raise FixtureError(
            f"type {t} generators give order {G.order}, "
            f"recorded {data['group_order']}")
    facets = []
    for seed, length in data["orbits"]:
        orb = G.face_orbit(tuple(v - 1 for v in seed))
        if len(orb) != length:
            raise FixtureError(
                f"type {t} orbit of {seed} has length {len(orb)}, "
                f"recorded {length}")
        facets.extend(orb)
    K = SimplicialComplex(facets, n_vertices=24)
    if len(K.facets) != 64:
        raise FixtureError(f"type {t} reconstruction has {len(K.facets)} facets")
    return K


def verify_fixture_integrity() -> bool:
    """Checksums plus basic well-formedness of all embedded data."""
    K = s2xs2_7_complex()
    if len(K.facets) != 224 or K.n_vertices != 16:
        raise FixtureError("16-vertex fixture must have 224 facets on 16 vertices")
    L = s2xs2_7_link16()
    if len(L.facets) != 70:
        raise FixtureError("link fixture must have 70 tetrahedra")
    T6 = pinched24_type6()
    if len(T6.facets) != 64:
        raise FixtureError("type-6 fixture must have 64 triangles")
    for t in range(1, 7):
        pinched24_type_complex(t)
    return True
