"""Reduced simplicial cohomology with Z, Q, and Z_2 coefficients.

Everything is exact: Smith normal form runs on arbitrary-precision integers,
preferring unit pivots with low fill on a sparse representation and
falling back to dense minimal-absolute-value pivoting for the residue,
which is where any torsion lives.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Sequence

from .gf2 import _echelonize
from .simplicial import SimplicialComplex, SimplicialError


def _prime_power_parts(d: int) -> list[int]:
    """Primary decomposition of a cyclic group order d >= 2."""
    out = []
    p = 2
    while p * p <= d:
        if d % p == 0:
            q = 1
            while d % p == 0:
                d //= p
                q *= p
            out.append(q)
        p += 1
    if d > 1:
        out.append(d)
    return out


def _is_prime_power(d: int) -> bool:
    return d >= 2 and len(_prime_power_parts(d)) == 1


@dataclass(frozen=True)
class FinAbGroup:
    """Finitely generated abelian group: free rank plus prime-power torsion."""

    rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.rank < 0:
            raise ValueError(f"negative rank {self.rank}")
        for t in self.torsion:
            if not _is_prime_power(t):
                raise ValueError(f"torsion order {t} is not a prime power >= 2")
        if tuple(sorted(self.torsion)) != self.torsion:
            raise ValueError("torsion orders must be sorted ascending")

    @classmethod
    def free(cls, rank: int) -> "FinAbGroup":
        return cls(rank=rank)

    @classmethod
    def from_orders(cls, rank: int, orders: Sequence[int]) -> "FinAbGroup":
        parts: list[int] = []
        for d in orders:
            parts.extend(_prime_power_parts(d))
        return cls(rank=rank, torsion=tuple(sorted(parts)))

    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.torsion

    def is_torsion_free(self) -> bool:
        return not self.torsion

    def mu(self) -> int:
        """Number of even-order cyclic summands."""
        return sum(1 for t in self.torsion if t % 2 == 0)

    def dim_mod2(self) -> int:
        """Dimension of (self tensor Z_2)."""
        return self.rank + self.mu()

    def __str__(self) -> str:
        parts = []
        if self.rank == 1:
            parts.append("Z")
        elif self.rank > 1:
            parts.append(f"Z^{self.rank}")
        seen: dict[int, int] = {}
        for t in self.torsion:
            seen[t] = seen.get(t, 0) + 1
        for t in sorted(seen):
            parts.append(f"Z_{t}" if seen[t] == 1 else f"Z_{t}^{seen[t]}")
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class CohomologyProfile:
    """Map degree -> FinAbGroup; absent degrees are zero groups."""

    groups: dict[int, FinAbGroup] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "groups", {q: g for q, g in self.groups.items() if not g.is_trivial()}
        )

    def group(self, q: int) -> FinAbGroup:
        return self.groups.get(q, FinAbGroup())

    def degrees(self) -> tuple[int, ...]:
        return tuple(sorted(self.groups))

    def betti(self, q: int) -> int:
        return self.group(q).rank

    def mu(self, q: int) -> int:
        return self.group(q).mu()

    def max_degree(self) -> int:
        return max(self.groups, default=-1)

    def reduced_euler_characteristic(self) -> int:
        return sum((-1 if q % 2 else 1) * g.rank for q, g in self.groups.items())

    def __eq__(self, other) -> bool:
        if not isinstance(other, CohomologyProfile):
            return NotImplemented
        return self.groups == other.groups

    def __str__(self) -> str:
        if not self.groups:
            return "0"
        return ", ".join(f"H^{q} = {self.groups[q]}" for q in self.degrees())


def coboundary_matrix(K: SimplicialComplex, d: int) -> list[list[int]]:
    """Matrix of delta: C^d -> C^{d+1} over Z.

    Rows are (d+1)-dimensional faces, columns d-dimensional faces, both in
    lexicographic label order; the entry for omitting the j-th vertex of the
    row face is (-1)^j.  Degree -1 is the augmentation (columns = empty face).
    """
    if d < -1 or d > K.dim:
        raise SimplicialError(f"degree {d} outside [-1, {K.dim}]")
    cols = {face: j for j, face in enumerate(K.faces(d))}
    rows = []
    for tau in K.faces(d + 1):
        row = [0] * len(cols)
        for j in range(len(tau)):
            sigma = tau[:j] + tau[j + 1 :]
            row[cols[sigma]] += (-1) ** j
        rows.append(row)
    return rows


def _sparse_snf_factors(row_dicts: list[dict[int, int]], ncols: int, nrows: int) -> list[int]:
    """Invariant factors of a sparse integer matrix, zeros included."""
    rows: dict[int, dict[int, int]] = {}
    colrows: dict[int, set[int]] = {}
    for r, rowd in enumerate(row_dicts):
        cleaned = {c: v for c, v in rowd.items() if v}
        if cleaned:
            rows[r] = cleaned
            for c in cleaned:
                colrows.setdefault(c, set()).add(r)
    colver: dict[int, int] = {c: 0 for c in colrows}
    heap: list[tuple[int, int, int]] = [(len(s), 0, c) for c, s in colrows.items()]
    heapq.heapify(heap)

    def touch(c: int) -> None:
        colver[c] = colver.get(c, 0) + 1
        s = colrows.get(c)
        if s:
            heapq.heappush(heap, (len(s), colver[c], c))

    ones = 0
    while heap:
        _, ver, c = heapq.heappop(heap)
        if c not in colrows or colver.get(c) != ver:
            continue
        best = None
        for r in colrows[c]:
            v = rows[r][c]
            if v == 1 or v == -1:
                key = (len(rows[r]), r)
                if best is None or key < best:
                    best = key
        if best is None:
            continue
        r = best[1]
        pivot_val = rows[r][c]
        pivot_row = rows.pop(r)
        for cc in pivot_row:
            s = colrows.get(cc)
            if s is not None:
                s.discard(r)
                if not s:
                    del colrows[cc]
        targets = list(colrows.get(c, ()))
        for r2 in targets:
            row2 = rows[r2]
            k = row2[c] * pivot_val
            for cc, vv in pivot_row.items():
                nv = row2.get(cc, 0) - k * vv
                if nv:
                    if cc not in row2:
                        colrows.setdefault(cc, set()).add(r2)
                    row2[cc] = nv
                else:
                    if cc in row2:
                        del row2[cc]
                        s = colrows.get(cc)
                        if s is not None:
                            s.discard(r2)
                            if not s:
                                del colrows[cc]
            if not row2:
                del rows[r2]
        for cc in pivot_row:
            if cc in colrows:
                touch(cc)
        ones += 1

    dense_factors: list[int] = []
    if rows:
        live_rows = sorted(rows)
        live_cols = sorted({c for rowd in rows.values() for c in rowd})
        cidx = {c: j for j, c in enumerate(live_cols)}
        dense = [[0] * len(live_cols) for _ in live_rows]
        for i, r in enumerate(live_rows):
            for c, v in rows[r].items():
                dense[i][cidx[c]] = v
        dense_factors = _dense_snf(dense)

    factors = [1] * ones + dense_factors
    factors += [0] * (min(nrows, ncols) - len(factors))
    return factors


def _dense_snf(a: list[list[int]]) -> list[int]:
    """Nonzero invariant factors of a small dense integer matrix."""
    m = len(a)
    n = len(a[0]) if m else 0
    out: list[int] = []
    t = 0
    while t < m and t < n:
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = a[i][j]
                if v and (best is None or abs(v) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i0, j0 = best
        a[t], a[i0] = a[i0], a[t]
        for row in a:
            row[t], row[j0] = row[j0], row[t]
        while True:
            swapped = False
            p = a[t][t]
            for i in range(t + 1, m):
                if a[i][t]:
                    q = a[i][t] // p
                    if q:
                        for j in range(t, n):
                            a[i][j] -= q * a[t][j]
                    if a[i][t]:
                        a[t], a[i] = a[i], a[t]
                        swapped = True
                        break
            if swapped:
                continue
            for j in range(t + 1, n):
                if a[t][j]:
                    q = a[t][j] // p
                    if q:
                        for i in range(t, m):
                            a[i][j] -= q * a[i][t]
                    if a[t][j]:
                        for i in range(t, m):
                            a[i][t], a[i][j] = a[i][j], a[i][t]
                        swapped = True
                        break
            if not swapped:
                break
        p = a[t][t]
        bad = None
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if a[i][j] % p:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            for j in range(t, n):
                a[t][j] += a[bad][j]
            continue
        out.append(abs(p))
        t += 1
    return out


def smith_normal_form(matrix: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Invariant factors d_1 | d_2 | ... (zeros last) of an integer matrix."""
    nrows = len(matrix)
    ncols = len(matrix[0]) if nrows else 0
    for row in matrix:
        if len(row) != ncols:
            raise ValueError("ragged matrix")
    row_dicts = [{j: int(v) for j, v in enumerate(row) if v} for row in matrix]
    return tuple(_sparse_snf_factors(row_dicts, ncols, nrows))


def _coboundary_sparse(K: SimplicialComplex, d: int) -> tuple[list[dict[int, int]], int]:
    cols = {face: j for j, face in enumerate(K.faces(d))}
    rows = []
    for tau in K.faces(d + 1):
        row: dict[int, int] = {}
        for j in range(len(tau)):
            sigma = tau[:j] + tau[j + 1 :]
            row[cols[sigma]] = row.get(cols[sigma], 0) + (-1) ** j
        rows.append(row)
    return rows, len(cols)


def reduced_cohomology(K: SimplicialComplex, coefficients: str = "Z") -> CohomologyProfile:
    """Reduced cohomology of K; for K = {empty face} only H^{-1} survives.

    ``coefficients`` is one of "Z", "Q", "Z2".  Over Q and Z_2 the profile
    carries dimensions in the rank slot and no torsion.
    """
    if coefficients not in ("Z", "Q", "Z2"):
        raise ValueError(f"unsupported coefficients {coefficients!r}")
    dim = K.dim
    fcount = {q: len(K.face_masks(q)) for q in range(-1, dim + 1)}
    ranks: dict[int, int] = {}
    torsion_at: dict[int, list[int]] = {}
    for q in range(-1, dim):
        rows, ncols = _coboundary_sparse(K, q)
        if coefficients == "Z2":
            masks = []
            for row in rows:
                bits = 0
                for c, v in row.items():
                    if v & 1:
                        bits |= 1 << c
                masks.append(bits)
            ranks[q] = len(_echelonize(masks)[0])
        else:
            factors = _sparse_snf_factors(rows, ncols, len(rows))
            ranks[q] = sum(1 for f in factors if f)
            if coefficients == "Z":
                torsion_at[q + 1] = [f for f in factors if f > 1]
    groups = {}
    for q in range(-1, dim + 1):
        free = fcount[q] - ranks.get(q, 0) - ranks.get(q - 1, 0)
        if free < 0:
            raise AssertionError("rank bookkeeping produced a negative Betti number")
        tors = torsion_at.get(q, []) if coefficients == "Z" else []
        g = FinAbGroup.from_orders(free, tors)
        if not g.is_trivial():
            groups[q] = g
    return CohomologyProfile(groups)
