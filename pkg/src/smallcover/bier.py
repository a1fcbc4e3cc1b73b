"""Bier sphere construction with its canonical characteristic matrix.

The sphere on a ground set of size l pairs faces with one-element non-face
extensions: each facet is sigma together with the barred complement of
sigma + {s}, where sigma is a face and sigma + {s} is not.  Original
vertices keep labels 1..l (by rank in the ground set); barred copies get
l+1..2l.  Labels that end up in no facet stay declared as ghosts.
"""

from __future__ import annotations

from .charmap import CharacteristicMatrix
from .gf2 import BitMatrix, BitVec
from .simplicial import SimplicialComplex, SimplicialError


def bier_sphere(K: SimplicialComplex) -> SimplicialComplex:
    """The deleted-join sphere of a proper complex on its ground set."""
    ground = tuple(sorted(K.labels))
    ell = len(ground)
    if ell < 1:
        raise SimplicialError("ground set is empty")
    if K.contains_face(ground):
        raise SimplicialError("the full simplex has no Bier sphere")
    rank = {v: i + 1 for i, v in enumerate(ground)}
    face_masks = K.all_face_masks()
    gens = []
    all_mask = (1 << K.vertex_count) - 1
    pos_label = {i: v for v, i in K._index.items()}
    for fm in face_masks:
        rest = all_mask & ~fm
        bits = rest
        while bits:
            low = bits & -bits
            bits ^= low
            if (fm | low) in face_masks:
                continue
            comp = rest ^ low
            facet = [rank[pos_label[i]] for i in _positions(fm)]
            facet += [ell + rank[pos_label[i]] for i in _positions(comp)]
            gens.append(tuple(sorted(facet)))
    sphere = SimplicialComplex(range(1, 2 * ell + 1), gens)
    if sphere.dim != ell - 2:
        raise SimplicialError(f"construction produced dimension {sphere.dim}, not {ell - 2}")
    if not sphere.is_closed_pseudomanifold():
        raise SimplicialError("construction is not a closed pseudomanifold")
    return sphere


def _positions(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def lambda_bier(ell: int) -> BitMatrix:
    """Canonical columns over 2l labels: label i and l+i share e_i for
    i < l, and the two copies of label l carry the all-ones sum."""
    if ell < 2:
        raise ValueError("need a ground set of at least 2")
    n = ell - 1
    ones = BitVec(n, (1 << n) - 1)
    half = [BitVec.unit(n, i) for i in range(n)] + [ones]
    return BitMatrix.from_columns(half + half)


def bier_instance(K: SimplicialComplex) -> tuple[SimplicialComplex, CharacteristicMatrix]:
    """Bier sphere plus its validated characteristic matrix on the used labels."""
    sphere = bier_sphere(K)
    ell = len(K.labels)
    full = lambda_bier(ell)
    ghosts = set(sphere.ghost_labels())
    used = [v for v in sphere.labels if v not in ghosts]
    trimmed = sphere.full_subcomplex(used) if ghosts else sphere
    cols = [full.column(v - 1) for v in used]
    chi = CharacteristicMatrix(trimmed, BitMatrix.from_columns(cols))
    return trimmed, chi


def table1_seed_complex() -> SimplicialComplex:
    """The bundled 9-vertex complex whose Bier sphere drives the table1 run."""
    facets = [
        (1, 3, 8),
        (1, 6, 7, 8, 9),
        (2, 4, 5, 6, 8),
        (2, 7),
        (3, 4, 5, 6, 7, 8, 9),
    ]
    return SimplicialComplex(range(1, 10), facets)


def table1_instance() -> tuple[SimplicialComplex, SimplicialComplex, CharacteristicMatrix]:
    """(seed complex, its Bier sphere, canonical characteristic matrix)."""
    K = table1_seed_complex()
    sphere, chi = bier_instance(K)
    return K, sphere, chi
