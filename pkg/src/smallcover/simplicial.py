"""Simplicial complexes as pure combinatorial face data.

Vertex labels are positive integers and are never compacted: full
subcomplexes and derived constructions keep the original labels so that
vertex subsets coming from row-space elements index directly into the
complex.  Faces are bit-packed over the declared label order internally.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb


class SimplicialError(ValueError):
    """Bad labels, non-pure input, or a violated ridge condition."""


@dataclass(frozen=True)
class FaceVector:
    """f-vector (starting at f_{-1} = 1) and h-vector of a pure complex."""

    f: tuple[int, ...]
    h: tuple[int, ...]


class SimplicialComplex:
    """Immutable complex given by its inclusion-maximal faces.

    The empty face is always present; the complex with no nonempty faces is
    represented with facet list ((),).  Declared labels may include ghost
    vertices that appear in no facet.
    """

    def __init__(self, labels, generators, _normalized: bool = False):
        labels = tuple(labels)
        if len(set(labels)) != len(labels):
            raise SimplicialError("duplicate vertex labels")
        for v in labels:
            if not isinstance(v, int) or v <= 0:
                raise SimplicialError(f"label {v!r} is not a positive integer")
        self._labels = labels
        self._index = {v: i for i, v in enumerate(labels)}
        masks = []
        for gen in generators:
            gen = tuple(gen)
            if len(set(gen)) != len(gen):
                raise SimplicialError(f"duplicate vertices inside generator {gen}")
            m = 0
            for v in gen:
                if v not in self._index:
                    raise SimplicialError(f"undeclared vertex label {v} in generator {gen}")
                m |= 1 << self._index[v]
            masks.append(m)
        dropped = False
        if not _normalized:
            uniq = set(masks)
            keep = []
            for m in uniq:
                if any(m != o and m & o == m for o in uniq):
                    dropped = True
                else:
                    keep.append(m)
            if len(keep) < len(masks):
                dropped = True
            masks = keep
        if not masks:
            masks = [0]
        self._facet_masks = tuple(sorted(masks, key=self._mask_key))
        self.dropped_generators = dropped
        self._faces_by_dim_cache: dict[int, tuple[int, ...]] | None = None
        self._face_mask_set: frozenset[int] | None = None

    @classmethod
    def from_facets(cls, labels, generators) -> "SimplicialComplex":
        return cls(labels, generators)

    def _mask_key(self, m: int) -> tuple[int, ...]:
        return tuple(self._labels[i] for i in range(len(self._labels)) if (m >> i) & 1)

    def _mask_to_face(self, m: int) -> tuple[int, ...]:
        return self._mask_key(m)

    def _face_to_mask(self, face) -> int:
        m = 0
        for v in face:
            if v not in self._index:
                raise SimplicialError(f"unknown vertex label {v}")
            m |= 1 << self._index[v]
        return m

    @property
    def labels(self) -> tuple[int, ...]:
        return self._labels

    @property
    def vertex_count(self) -> int:
        return len(self._labels)

    @property
    def facets(self) -> tuple[tuple[int, ...], ...]:
        return tuple(self._mask_to_face(m) for m in self._facet_masks)

    @property
    def facet_masks(self) -> tuple[int, ...]:
        return self._facet_masks

    @property
    def dim(self) -> int:
        return max(m.bit_count() for m in self._facet_masks) - 1

    def is_pure(self) -> bool:
        sizes = {m.bit_count() for m in self._facet_masks}
        return len(sizes) == 1

    def _faces_by_dim(self) -> dict[int, tuple[int, ...]]:
        if self._faces_by_dim_cache is None:
            seen: set[int] = set()
            for fm in self._facet_masks:
                verts = [1 << i for i in range(len(self._labels)) if (fm >> i) & 1]
                k = len(verts)
                for r in range(k + 1):
                    for combo in combinations(verts, r):
                        m = 0
                        for b in combo:
                            m |= b
                        seen.add(m)
            by_dim: dict[int, list[int]] = {}
            for m in seen:
                by_dim.setdefault(m.bit_count() - 1, []).append(m)
            self._faces_by_dim_cache = {
                d: tuple(sorted(ms, key=self._mask_key)) for d, ms in by_dim.items()
            }
            self._face_mask_set = frozenset(seen)
        return self._faces_by_dim_cache

    def face_masks(self, d: int) -> tuple[int, ...]:
        """Masks of d-dimensional faces in lexicographic label order."""
        return self._faces_by_dim().get(d, ())

    def faces(self, d: int) -> tuple[tuple[int, ...], ...]:
        return tuple(self._mask_to_face(m) for m in self.face_masks(d))

    def all_face_masks(self) -> frozenset[int]:
        self._faces_by_dim()
        assert self._face_mask_set is not None
        return self._face_mask_set

    def contains_face(self, face) -> bool:
        return self._face_to_mask(face) in self.all_face_masks()

    def total_face_count(self) -> int:
        """Number of faces including the empty face."""
        return len(self.all_face_masks())

    def f_vector(self) -> tuple[int, ...]:
        """(f_{-1}, f_0, ..., f_{dim}); f_{-1} = 1 for the empty face."""
        by_dim = self._faces_by_dim()
        return tuple(len(by_dim.get(d, ())) for d in range(-1, self.dim + 1))

    def h_vector(self) -> FaceVector:
        if not self.is_pure():
            raise SimplicialError("h-vector requires a pure complex")
        f = self.f_vector()
        n = self.dim + 1
        h = []
        for i in range(n + 1):
            total = 0
            for j in range(i + 1):
                total += (-1) ** (i - j) * comb(n - j, i - j) * f[j]
            h.append(total)
        return FaceVector(f=f, h=tuple(h))

    def reduced_euler_characteristic(self) -> int:
        """Alternating face-count sum including the empty face."""
        return sum((-1 if d % 2 else 1) * len(ms) for d, ms in self._faces_by_dim().items())

    def full_subcomplex(self, w) -> "SimplicialComplex":
        w = set(w)
        for v in w:
            if v not in self._index:
                raise SimplicialError(f"unknown vertex label {v} in subcomplex request")
        wm = self._face_to_mask(w)
        cut = {m & wm for m in self._facet_masks}
        sub_labels = [v for v in self._labels if v in w]
        gens = [self._mask_to_face(m) for m in cut]
        return SimplicialComplex(sub_labels, gens)

    def join(self, other: "SimplicialComplex", relabel: bool = True) -> "SimplicialComplex":
        if relabel:
            offset = max(self._labels, default=0)
            other_labels = tuple(v + offset for v in other._labels)
            shift = {v: v + offset for v in other._labels}
        else:
            if set(self._labels) & set(other._labels):
                raise SimplicialError("label sets overlap; pass relabel=True")
            other_labels = other._labels
            shift = {v: v for v in other._labels}
        labels = self._labels + other_labels
        gens = []
        for a in self.facets:
            for b in other.facets:
                gens.append(tuple(a) + tuple(shift[v] for v in b))
        return SimplicialComplex(labels, gens)

    def is_closed_pseudomanifold(self) -> bool:
        """Pure, and every (dim-1)-face lies in exactly two facets."""
        if not self.is_pure():
            return False
        d = self.dim
        if d < 0:
            return True
        counts: dict[int, int] = {}
        for fm in self._facet_masks:
            bits = fm
            while bits:
                low = bits & -bits
                counts[fm ^ low] = counts.get(fm ^ low, 0) + 1
                bits ^= low
        return all(c == 2 for c in counts.values())

    def is_strongly_connected(self) -> bool:
        """Facet-ridge adjacency graph is connected (pure complexes only)."""
        if not self.is_pure():
            return False
        facets = self._facet_masks
        if len(facets) <= 1:
            return True
        ridge_map: dict[int, list[int]] = {}
        for idx, fm in enumerate(facets):
            bits = fm
            while bits:
                low = bits & -bits
                ridge_map.setdefault(fm ^ low, []).append(idx)
                bits ^= low
        seen = {0}
        stack = [0]
        while stack:
            cur = stack.pop()
            fm = facets[cur]
            bits = fm
            while bits:
                low = bits & -bits
                for nb in ridge_map.get(fm ^ low, ()):
                    if nb not in seen:
                        seen.add(nb)
                        stack.append(nb)
                bits ^= low
        return len(seen) == len(facets)

    def ridge_flip(self, facet, i: int) -> int:
        """The unique vertex p with (facet \\ {u_i}) + {p} a facet, u_i the i-th
        vertex of the sorted facet (1-based)."""
        fm = self._face_to_mask(facet)
        if fm not in self._facet_masks:
            raise SimplicialError(f"{tuple(sorted(facet))} is not a facet")
        verts = self._mask_to_face(fm)
        if not 1 <= i <= len(verts):
            raise SimplicialError(f"position {i} outside [1, {len(verts)}]")
        u = verts[i - 1]
        ridge = fm ^ (1 << self._index[u])
        holders = [m for m in self._facet_masks if m & ridge == ridge]
        if len(holders) != 2:
            raise SimplicialError(
                f"ridge {self._mask_to_face(ridge)} lies in {len(holders)} facets, not 2"
            )
        other = holders[0] if holders[1] == fm else holders[1]
        extra = other & ~ridge
        return self._labels[extra.bit_length() - 1]

    def ghost_labels(self) -> tuple[int, ...]:
        used = 0
        for m in self._facet_masks:
            used |= m
        return tuple(v for i, v in enumerate(self._labels) if not (used >> i) & 1)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self._labels == other._labels and self.facets == other.facets

    def __hash__(self) -> int:
        return hash((self._labels, self._facet_masks))

    def __repr__(self) -> str:
        return f"SimplicialComplex(labels={self._labels}, facets={self.facets})"


def boundary_of_simplex(n: int) -> SimplicialComplex:
    """Boundary of the n-simplex on labels 1..n+1."""
    labels = range(1, n + 2)
    gens = list(combinations(labels, n))
    return SimplicialComplex(labels, gens)


def cross_polytope_boundary(n: int) -> SimplicialComplex:
    """Boundary of the n-dimensional cross-polytope; antipodal pairs (i, n+i)."""
    labels = range(1, 2 * n + 1)
    gens = []
    for mask in range(1 << n):
        gens.append(tuple(i + 1 + ((mask >> i) & 1) * n for i in range(n)))
    return SimplicialComplex(labels, gens)


def polygon(m: int) -> SimplicialComplex:
    """Boundary of an m-gon on labels 1..m."""
    if m < 3:
        raise SimplicialError("polygon needs at least 3 vertices")
    labels = range(1, m + 1)
    gens = [(i, i % m + 1) for i in range(1, m + 1)]
    return SimplicialComplex(labels, gens)
