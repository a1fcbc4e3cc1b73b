"""Characteristic matrices and their pullback classification.

A characteristic matrix assigns a GF(2) column vector to every vertex of a
pure complex so that the columns on each facet are linearly independent.
Classification decides whether the assignment factors, up to a left GL(n,2)
action, through the canonical column patterns of the linear model (image a
basis) or of the boundary-of-simplex model (image inside a basis plus its
total sum).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property

from .gf2 import BitMatrix, BitVec, GF2Error, find_basis_change, rank, row_space
from .simplicial import SimplicialComplex


class CharMapError(ValueError):
    """Validation failure, dependent facet columns, or inconsistent coloring."""


class PullbackLabel(enum.Enum):
    LINEAR_MODEL = "linear-model"
    SIMPLEX_PROPER = "simplex-proper"
    NOT_SIMPLEX = "not-simplex"


@dataclass(frozen=True)
class CharacteristicMatrix:
    """Validated n x m characteristic matrix over its companion complex.

    Column j corresponds to the complex's j-th declared vertex label.
    """

    complex: SimplicialComplex
    matrix: BitMatrix

    def __post_init__(self) -> None:
        K = self.complex
        if self.matrix.cols != K.vertex_count:
            raise CharMapError(
                f"{self.matrix.cols} columns for {K.vertex_count} vertex labels"
            )
        cols = [self.matrix.column(j).bits for j in range(self.matrix.cols)]
        index = {v: i for i, v in enumerate(K.labels)}
        for facet in K.facets:
            vecs = [BitVec(self.n, cols[index[v]]) for v in facet]
            if vecs and rank(BitMatrix.from_rows(vecs)) != len(vecs):
                raise CharMapError(f"columns on facet {facet} are linearly dependent")

    @property
    def n(self) -> int:
        return self.matrix.rows

    @property
    def m(self) -> int:
        return self.matrix.cols

    def column_for_label(self, label: int) -> BitVec:
        cols = self._columns_by_label
        if label not in cols:
            raise CharMapError(f"unknown vertex label {label}")
        return cols[label]

    @cached_property
    def _columns_by_label(self) -> dict[int, BitVec]:
        return {v: self.matrix.column(j) for j, v in enumerate(self.complex.labels)}


def validate(K: SimplicialComplex, matrix: BitMatrix) -> CharacteristicMatrix:
    """Certify a matrix as characteristic over K (independence on every facet)."""
    return CharacteristicMatrix(K, matrix)


@dataclass(frozen=True)
class PullbackClass:
    """Classification of a characteristic matrix with an optional witness.

    The witness is a basis change G and a coloring c mapping vertex labels to
    1..n+1 such that applying G to every column and reading off standard
    vectors (color i) or the all-ones sum (color n+1) reproduces c.
    """

    label: PullbackLabel
    is_simplex_pullback: bool
    basis_change: BitMatrix | None = None
    coloring: dict[int, int] | None = None

    def __post_init__(self) -> None:
        if self.label is PullbackLabel.LINEAR_MODEL and not self.is_simplex_pullback:
            raise CharMapError("linear model must be a simplex pullback")
        if self.is_simplex_pullback != (self.coloring is not None):
            raise CharMapError("witness must be present exactly for simplex pullbacks")


def _distinct_columns(M: CharacteristicMatrix) -> list[int]:
    return sorted({M.matrix.column(j).bits for j in range(M.m)})


def _pullback_witness(M: CharacteristicMatrix) -> tuple[BitMatrix, dict[int, int]]:
    """Basis change plus coloring for a matrix whose image fits the simplex model."""
    n = M.n
    distinct = _distinct_columns(M)
    basis: list[int] = []
    seen_rows: list[int] = []
    for v in distinct:
        w = v
        for r in seen_rows:
            low = r & -r
            if w & low:
                w ^= r
        if w:
            seen_rows.append(w)
            basis.append(v)
        if len(basis) == n:
            break
    if len(basis) != n:
        raise CharMapError("columns do not span the full space")
    g = find_basis_change([BitVec(n, b) for b in basis], n)
    all_ones = (1 << n) - 1
    coloring: dict[int, int] = {}
    for j, label in enumerate(M.complex.labels):
        image = g.apply(M.matrix.column(j)).bits
        if image.bit_count() == 1:
            coloring[label] = image.bit_length()
        elif image == all_ones:
            coloring[label] = n + 1
        else:
            raise CharMapError(
                "witness construction failed: column image is neither a standard "
                "vector nor the all-ones sum"
            )
    return g, coloring


def classify_pullback(M: CharacteristicMatrix) -> PullbackClass:
    """Classification via the image condition on distinct columns."""
    n = M.n
    distinct = _distinct_columns(M)
    d_matrix = BitMatrix(len(distinct), n, tuple(distinct))
    if rank(d_matrix) != n:
        raise CharMapError("no facet provides a basis: distinct columns have low rank")
    if len(distinct) == n:
        g, coloring = _pullback_witness(M)
        return PullbackClass(PullbackLabel.LINEAR_MODEL, True, g, coloring)
    total = 0
    for v in distinct:
        total ^= v
    if len(distinct) == n + 1 and total == 0:
        g, coloring = _pullback_witness(M)
        return PullbackClass(PullbackLabel.SIMPLEX_PROPER, True, g, coloring)
    return PullbackClass(PullbackLabel.NOT_SIMPLEX, False)


def ridge_flip_support(M: CharacteristicMatrix, facet, i: int) -> frozenset[int]:
    """The subset S of positions 1..n with lambda(flip vertex) = sum of facet
    columns at the positions in S, solved in the facet's column basis."""
    K = M.complex
    p = K.ridge_flip(facet, i)
    verts = tuple(sorted(facet))
    basis = [M.column_for_label(v) for v in verts]
    try:
        g = find_basis_change(basis, M.n)
    except GF2Error as exc:
        raise CharMapError(f"facet {verts} columns are not a basis: {exc}") from exc
    coeffs = g.apply(M.column_for_label(p))
    return frozenset(idx + 1 for idx in coeffs.support())


def classify_via_flips(M: CharacteristicMatrix) -> PullbackClass:
    """Classification via ridge-flip supports; independent of classify_pullback.

    Requires a strongly connected closed pseudomanifold, which is what makes
    the local flip condition equivalent to the global image condition.
    """
    K = M.complex
    if not K.is_closed_pseudomanifold():
        raise CharMapError("flip classification requires a closed pseudomanifold")
    if not K.is_strongly_connected():
        raise CharMapError("flip classification requires a strongly connected complex")
    n = M.n
    full = frozenset(range(1, n + 1))
    all_identity = True
    for facet in K.facets:
        for i in range(1, n + 1):
            s = ridge_flip_support(M, facet, i)
            if s == frozenset({i}):
                continue
            all_identity = False
            if s != full:
                return PullbackClass(PullbackLabel.NOT_SIMPLEX, False)
    g, coloring = _pullback_witness(M)
    label = PullbackLabel.LINEAR_MODEL if all_identity else PullbackLabel.SIMPLEX_PROPER
    return PullbackClass(label, True, g, coloring)


@dataclass(frozen=True)
class OmegaDescriptor:
    """One row-space element with its coefficient vector and subset data.

    ``support`` holds vertex labels; ``s_omega`` the nonzero coefficient
    positions in 1..n; ``chi_omega`` the even subset of 1..n+1 obtained by
    adjoining n+1 when |s_omega| is odd.
    """

    omega: BitVec
    coeffs: BitVec
    support: frozenset[int]
    s_omega: frozenset[int]
    chi_omega: frozenset[int]


def omega_descriptors(
    M: CharacteristicMatrix, coloring: dict[int, int] | None = None
) -> list[OmegaDescriptor]:
    """All 2^n row-space descriptors in ascending coefficient order.

    Without a coloring, coefficients are over the raw matrix rows.  With a
    coloring, they are over the rows of the canonical matrix the coloring
    describes (column j is the standard vector of color j, or the all-ones
    sum); that matrix spans the same row space, and the identity
    support = c^{-1}(chi_omega) is asserted for every descriptor.
    """
    n = M.n
    if rank(M.matrix) != n:
        raise CharMapError("matrix rows are dependent; descriptors need full rank")
    labels = M.complex.labels
    matrix = M.matrix
    if coloring is not None:
        rows = []
        for i in range(1, n + 1):
            bits = 0
            for j, v in enumerate(labels):
                if coloring[v] in (i, n + 1):
                    bits |= 1 << j
            rows.append(bits)
        matrix = BitMatrix(n, M.m, tuple(rows))
        stacked = BitMatrix(2 * n, M.m, M.matrix.row_bits + matrix.row_bits)
        if rank(stacked) != n:
            raise CharMapError(
                "coloring describes a different row space than the matrix"
            )
    out = []
    for omega, coeffs in row_space(matrix):
        support = frozenset(labels[j] for j in omega.support())
        s_omega = frozenset(i + 1 for i in coeffs.support())
        if len(s_omega) % 2 == 0:
            chi = s_omega
        else:
            chi = s_omega | {n + 1}
        if coloring is not None:
            expected = frozenset(v for v in labels if coloring[v] in chi)
            if expected != support:
                raise CharMapError(
                    f"coloring inconsistent with row space at coefficients {coeffs}: "
                    f"support {sorted(support)} != preimage {sorted(expected)}"
                )
        out.append(OmegaDescriptor(omega, coeffs, support, s_omega, chi))
    return out


def lambda_boundary_simplex(n: int) -> CharacteristicMatrix:
    """The canonical matrix over the boundary of the n-simplex: columns
    e_1, ..., e_n and e_1 + ... + e_n."""
    from .simplicial import boundary_of_simplex

    cols = [BitVec.unit(n, i) for i in range(n)]
    cols.append(BitVec(n, (1 << n) - 1))
    return CharacteristicMatrix(boundary_of_simplex(n), BitMatrix.from_columns(cols))


def block_product(M1: CharacteristicMatrix, M2: CharacteristicMatrix) -> CharacteristicMatrix:
    """Block-diagonal matrix over the join of the companion complexes."""
    joined = M1.complex.join(M2.complex)
    n = M1.n + M2.n
    cols = []
    for j in range(M1.m):
        cols.append(BitVec(n, M1.matrix.column(j).bits))
    for j in range(M2.m):
        cols.append(BitVec(n, M2.matrix.column(j).bits << M1.n))
    return CharacteristicMatrix(joined, BitMatrix.from_columns(cols))
