"""The mod-2 quotient ring Z_2[v_1..v_m]/(monomial ideal + row relations).

Graded linear algebra presentation: the variables on a pivot facet are
eliminated through the row relations, monomials in the remaining variables
span each degree, and normal forms are taken against the relation subspace.
Low degrees are echelonized directly; high degrees of closed-pseudomanifold
instances are handled through top-degree pairing functionals, which keeps
the flagship 8-dimensional computation inside desk-scale arithmetic.
"""

from __future__ import annotations

from bisect import insort
from dataclasses import dataclass
from itertools import combinations_with_replacement
from math import comb

from .charmap import CharacteristicMatrix, ridge_flip_support
from .errors import InternalConsistencyError
from .gf2 import BitMatrix, invert
from .simplicial import SimplicialComplex


class RingError(InternalConsistencyError):
    """Graded dimension mismatch or a falsified structural identity."""


@dataclass(frozen=True)
class RingClass:
    """Homogeneous ring element: coefficient bitmask over a degree's basis."""

    degree: int
    bits: int

    def is_zero(self) -> bool:
        return self.bits == 0


@dataclass(frozen=True)
class Sq1Witness:
    """Certificate that the first Steenrod square is nonzero on degree two."""

    facet: tuple[int, ...]
    position: int
    s: int
    t: int
    vertex_s: int
    vertex_t: int
    witness: RingClass
    image: RingClass


class GradedRingBasis:
    """Per-degree bases and normal forms for the quotient ring.

    Degrees are built lazily.  Degree-d dimensions are asserted against the
    h-vector; any mismatch raises RingError.
    """

    def __init__(
        self,
        K: SimplicialComplex,
        chi: CharacteristicMatrix,
        direct_limit: int = 2500,
    ):
        if chi.complex is not K and chi.complex != K:
            raise ValueError("characteristic matrix belongs to a different complex")
        if not K.is_pure():
            raise ValueError("graded basis requires a pure complex")
        self.K = K
        self.chi = chi
        self.n = chi.n
        if self.n != K.dim + 1:
            raise ValueError(f"matrix rank {self.n} != dim K + 1 = {K.dim + 1}")
        self.direct_limit = direct_limit
        self.h = K.h_vector().h

        self._labels = K.labels
        self._label_pos = {v: i for i, v in enumerate(self._labels)}
        self.pivot_facet = K.facets[0]
        cols = {v: chi.column_for_label(v) for v in self._labels}
        basis = BitMatrix.from_columns([cols[v] for v in self.pivot_facet])
        binv = invert(basis)
        rewritten = binv @ chi.matrix
        self.variables = tuple(v for v in self._labels if v not in set(self.pivot_facet))
        self._var_index = {v: i for i, v in enumerate(self.variables)}
        k = len(self.variables)
        self._subst: dict[int, int] = {}
        for v in self.variables:
            self._subst[v] = 1 << self._var_index[v]
        for r, u in enumerate(self.pivot_facet):
            bits = 0
            for j, v in enumerate(self._labels):
                if v in self._var_index and (rewritten.row_bits[r] >> j) & 1:
                    bits |= 1 << self._var_index[v]
            self._subst[u] = bits
        self._subst_support = {v: _bit_positions(b) for v, b in self._subst.items()}
        self.num_vars = k

        self._gens = self._minimal_nonfaces(max_size=self.n)
        self._gen_vectors_cache: dict[int, list[int]] = {}

        self._monomials: dict[int, list[tuple[int, ...]]] = {}
        self._mono_index: dict[int, dict[tuple[int, ...], int]] = {}
        self._route: dict[int, str] = {}
        self._pivot_rows: dict[int, dict[int, int]] = {}
        self._pivot_order: dict[int, list[int]] = {}
        self._dual_rows: dict[int, list[int]] = {}
        self._basis_idx: dict[int, list[int]] = {}
        self._basis_pos: dict[int, dict[int, int]] = {}
        self._nf_cache: dict[int, dict[int, int]] = {}
        self._gen_class_cache: dict[int, RingClass] = {}
        self._top_row: int | None = None
        self._top_memo: dict[tuple[int, ...], int] = {}
        self._facet_for_support: dict[int, tuple[int, ...]] = {}
        self._facet_rewrite: dict[tuple[int, ...], list[list[int]]] = {}
        self._dual_ok: bool | None = None

    # ----- combinatorial bookkeeping -------------------------------------

    def _minimal_nonfaces(self, max_size: int) -> list[tuple[int, ...]]:
        faces = self.K.all_face_masks()
        out = []
        nbits = len(self._labels)
        for s in range(1, max_size + 1):
            candidates: set[int] = set()
            for fm in self.K.face_masks(s - 2):
                for b in range(nbits):
                    if not (fm >> b) & 1:
                        m = fm | (1 << b)
                        if m not in faces:
                            candidates.add(m)
            for m in sorted(candidates):
                ok = True
                bits = m
                while bits:
                    low = bits & -bits
                    if (m ^ low) not in faces:
                        ok = False
                        break
                    bits ^= low
                if ok:
                    out.append(tuple(self._labels[i] for i in _bit_positions(m)))
        return out

    def monomials(self, d: int) -> list[tuple[int, ...]]:
        """Degree-d monomials in the non-pivot variables, lexicographic."""
        if d not in self._monomials:
            monos = list(combinations_with_replacement(range(self.num_vars), d))
            self._monomials[d] = monos
            self._mono_index[d] = {t: i for i, t in enumerate(monos)}
        return self._monomials[d]

    def _index_of(self, d: int, mono: tuple[int, ...]) -> int:
        self.monomials(d)
        return self._mono_index[d][mono]

    def _gen_vectors(self, d: int) -> list[int]:
        """Rewritten monomial-ideal generators of degree exactly d."""
        if d not in self._gen_vectors_cache:
            vectors = []
            for gen in self._gens:
                if len(gen) != d:
                    continue
                vec = 1
                for deg, label in enumerate(gen):
                    table = self._mult_table(deg)
                    nxt = 0
                    for idx in _bit_positions(vec):
                        for i in self._subst_support[label]:
                            nxt ^= 1 << table[idx][i]
                    vec = nxt
                vectors.append(vec)
            self._gen_vectors_cache[d] = vectors
        return self._gen_vectors_cache[d]

    def _mult_table(self, d: int) -> list[list[int]]:
        cache = self.__dict__.setdefault("_mult_cache", {})
        if d not in cache:
            monos = self.monomials(d)
            self.monomials(d + 1)
            idx_next = self._mono_index[d + 1]
            table = []
            for t in monos:
                row = []
                for i in range(self.num_vars):
                    merged = tuple(sorted(t + (i,)))
                    row.append(idx_next[merged])
                table.append(row)
            cache[d] = table
        return cache[d]

    # ----- per-degree construction ---------------------------------------

    def dimension(self, d: int) -> int:
        if d < 0 or d > self.n:
            return 0
        return self.h[d]

    def _ensure_degree(self, d: int) -> None:
        if d in self._route or d < 0 or d > self.n:
            return
        count = len(self.monomials(d))
        if count <= self.direct_limit:
            self._build_direct(d)
        else:
            self._build_dual(d)

    def _build_direct(self, d: int) -> None:
        rows: dict[int, int] = {}
        order: list[int] = []
        if d > 0:
            self._ensure_degree(d - 1)
            if self._route[d - 1] != "direct":
                raise RingError("direct elimination needs the previous degree echelon")
            table = self._mult_table(d - 1)
            for prev in self._pivot_rows[d - 1].values():
                for i in range(self.num_vars):
                    shifted = 0
                    for idx in _bit_positions(prev):
                        shifted ^= 1 << table[idx][i]
                    _echelon_insert(rows, order, shifted)
            for gen_vec in self._gen_vectors(d):
                _echelon_insert(rows, order, gen_vec)
        count = len(self.monomials(d))
        dim = count - len(rows)
        if dim != self.dimension(d):
            raise RingError(
                f"degree {d} dimension {dim} does not match h_{d} = {self.dimension(d)}"
            )
        pivot_set = set(order)
        basis = [i for i in range(count) if i not in pivot_set]
        self._route[d] = "direct"
        self._pivot_rows[d] = rows
        self._pivot_order[d] = order
        self._basis_idx[d] = basis
        self._basis_pos[d] = {idx: pos for pos, idx in enumerate(basis)}
        self._nf_cache[d] = {}

    def _build_dual(self, d: int) -> None:
        if not self._duality_available():
            raise RingError(
                f"degree {d} has {len(self.monomials(d))} monomials, beyond direct "
                "elimination, and top-degree duality needs a strongly connected "
                "closed pseudomanifold"
            )
        if self.h[self.n] != 1:
            raise RingError("top-degree duality needs a one-dimensional top degree")
        co = self.n - d
        if len(self.monomials(co)) > self.direct_limit:
            raise RingError(f"instance too large: both degree {d} and {co} exceed limits")
        self._ensure_degree(co)
        top = self._top_functional()
        monos = self.monomials(d)
        co_monos = self.monomials(co)
        idx_top = self._mono_index[self.n]
        frows = []
        for b in self._basis_idx[co]:
            nu = co_monos[b]
            bits = 0
            for idx, mono in enumerate(monos):
                merged = tuple(sorted(mono + nu))
                if (top >> idx_top[merged]) & 1:
                    bits |= 1 << idx
            frows.append(bits)
        selected: list[int] = []
        echelon: dict[int, int] = {}
        echelon_order: list[int] = []
        nrows = len(frows)
        for j in range(len(monos)):
            colbits = 0
            for r in range(nrows):
                colbits |= ((frows[r] >> j) & 1) << r
            if _echelon_insert(echelon, echelon_order, colbits):
                selected.append(j)
            if len(selected) == nrows:
                break
        if len(selected) != nrows or nrows != self.dimension(d):
            raise RingError(
                f"degree {d} pairing rank {len(selected)} does not match "
                f"h_{d} = {self.dimension(d)}"
            )
        rows = frows[:]
        for k, j in enumerate(selected):
            piv = next(r for r in range(k, len(rows)) if (rows[r] >> j) & 1)
            rows[k], rows[piv] = rows[piv], rows[k]
            for r in range(len(rows)):
                if r != k and (rows[r] >> j) & 1:
                    rows[r] ^= rows[k]
        self._route[d] = "dual"
        self._dual_rows[d] = rows
        self._basis_idx[d] = selected
        self._basis_pos[d] = {idx: pos for pos, idx in enumerate(selected)}
        self._nf_cache[d] = {}
        self._validate_dual_degree(d)

    def _duality_available(self) -> bool:
        if self._dual_ok is None:
            self._dual_ok = (
                self.K.is_closed_pseudomanifold() and self.K.is_strongly_connected()
            )
        return self._dual_ok

    def _validate_dual_degree(self, d: int) -> None:
        """Pairing functionals must kill ideal elements: check generator
        multiples against deterministic monomial cofactors."""
        for e in range(1, d + 1):
            cofactors = self.monomials(d - e)[:2] if d > e else [()]
            for vec in self._gen_vectors(e):
                for nu in cofactors:
                    shifted = vec
                    deg = e
                    for i in nu:
                        table = self._mult_table(deg)
                        nxt = 0
                        for idx in _bit_positions(shifted):
                            nxt ^= 1 << table[idx][i]
                        shifted = nxt
                        deg += 1
                    for row in self._dual_rows[d]:
                        if (row & shifted).bit_count() & 1:
                            raise RingError(
                                f"degree {d} pairing functional fails to annihilate "
                                f"an ideal element of degree {e}"
                            )

    # ----- top-degree evaluation ------------------------------------------

    def _facet_containing(self, mask: int) -> tuple[int, ...]:
        if mask not in self._facet_for_support:
            for fm, facet in zip(self.K.facet_masks, self.K.facets):
                if fm & mask == mask:
                    self._facet_for_support[mask] = facet
                    break
            else:
                raise RingError("support unexpectedly not contained in any facet")
        return self._facet_for_support[mask]

    def _rewrite_rows_for(self, facet: tuple[int, ...]) -> list[list[int]]:
        if facet not in self._facet_rewrite:
            basis = BitMatrix.from_columns(
                [self.chi.column_for_label(v) for v in facet]
            )
            rewritten = invert(basis) @ self.chi.matrix
            in_facet = set(facet)
            rows = []
            for r in range(self.n):
                rows.append(
                    [
                        v
                        for j, v in enumerate(self._labels)
                        if v not in in_facet and (rewritten.row_bits[r] >> j) & 1
                    ]
                )
            self._facet_rewrite[facet] = rows
        return self._facet_rewrite[facet]

    def _eval_top_monomial(self, t: tuple[int, ...]) -> int:
        """Value of a degree-n monomial in the one-dimensional top degree.

        Repeated variables are eliminated by rewriting in the basis of a
        facet containing the support; squarefree facet monomials all
        represent the generator.
        """
        memo = self._top_memo
        cached = memo.get(t)
        if cached is not None:
            return cached
        mask = 0
        for v in set(t):
            mask |= 1 << self._label_pos[v]
        if mask not in self.K.all_face_masks():
            memo[t] = 0
            return 0
        if mask.bit_count() == len(t):
            memo[t] = 1
            return 1
        rep = next(t[i] for i in range(len(t) - 1) if t[i] == t[i + 1])
        facet = self._facet_containing(mask)
        r = facet.index(rep)
        rewrite = self._rewrite_rows_for(facet)
        reduced = list(t)
        reduced.remove(rep)
        acc = 0
        for q in rewrite[r]:
            child = tuple(sorted(reduced + [q]))
            acc ^= self._eval_top_monomial(child)
        memo[t] = acc
        return acc

    def _top_functional(self) -> int:
        if self._top_row is None:
            monos = self.monomials(self.n)
            bits = 0
            for idx, mono in enumerate(monos):
                labels = tuple(sorted(self.variables[i] for i in mono))
                if self._eval_top_monomial(labels):
                    bits |= 1 << idx
            if bits == 0 and monos:
                raise RingError("top-degree functional vanished identically")
            self._top_row = bits
        return self._top_row

    # ----- normal forms and ring operations -------------------------------

    def _reduce_monomial(self, d: int, idx: int) -> int:
        cache = self._nf_cache[d]
        got = cache.get(idx)
        if got is not None:
            return got
        if self._route[d] == "direct":
            v = 1 << idx
            rows = self._pivot_rows[d]
            for p in self._pivot_order[d]:
                if (v >> p) & 1:
                    v ^= rows[p]
            coords = 0
            pos = self._basis_pos[d]
            for b in _bit_positions(v):
                coords |= 1 << pos[b]
        else:
            coords = 0
            for k, row in enumerate(self._dual_rows[d]):
                if (row >> idx) & 1:
                    coords |= 1 << k
        cache[idx] = coords
        return coords

    def _reduce_vector(self, d: int, vec: int) -> int:
        if self._route[d] == "direct":
            rows = self._pivot_rows[d]
            for p in self._pivot_order[d]:
                if (vec >> p) & 1:
                    vec ^= rows[p]
            coords = 0
            pos = self._basis_pos[d]
            for b in _bit_positions(vec):
                coords |= 1 << pos[b]
            return coords
        coords = 0
        for k, row in enumerate(self._dual_rows[d]):
            if (row & vec).bit_count() & 1:
                coords |= 1 << k
        return coords

    def one(self) -> RingClass:
        self._ensure_degree(0)
        return RingClass(0, 1)

    def zero(self, d: int) -> RingClass:
        return RingClass(d, 0)

    def add(self, x: RingClass, y: RingClass) -> RingClass:
        if x.degree != y.degree:
            raise ValueError("cannot add classes of different degrees")
        return RingClass(x.degree, x.bits ^ y.bits)

    def basis_classes(self, d: int) -> list[RingClass]:
        self._ensure_degree(d)
        if d < 0 or d > self.n:
            return []
        return [RingClass(d, 1 << pos) for pos in range(self.dimension(d))]

    def basis_monomial_labels(self, d: int, pos: int) -> tuple[int, ...]:
        """The monomial (as vertex labels with repetition) behind basis slot pos."""
        self._ensure_degree(d)
        idx = self._basis_idx[d][pos]
        return tuple(sorted(self.variables[i] for i in self.monomials(d)[idx]))

    def multiply(self, x: RingClass, y: RingClass) -> RingClass:
        d = x.degree + y.degree
        if d > self.n or x.bits == 0 or y.bits == 0:
            return RingClass(d, 0)
        self._ensure_degree(x.degree)
        self._ensure_degree(y.degree)
        self._ensure_degree(d)
        xmonos = [self.monomials(x.degree)[i] for i in self._basis_idx[x.degree]]
        ymonos = [self.monomials(y.degree)[i] for i in self._basis_idx[y.degree]]
        index = self._mono_index[d]
        acc = 0
        for i in _bit_positions(x.bits):
            mi = xmonos[i]
            for j in _bit_positions(y.bits):
                merged = tuple(sorted(mi + ymonos[j]))
                acc ^= self._reduce_monomial(d, index[merged])
        return RingClass(d, acc)

    def _generator_class(self, label: int) -> RingClass:
        got = self._gen_class_cache.get(label)
        if got is None:
            if label not in self._label_pos:
                raise ValueError(f"unknown vertex label {label}")
            self._ensure_degree(1)
            got = RingClass(1, self._reduce_vector(1, self._subst[label]))
            self._gen_class_cache[label] = got
        return got

    def express(self, monomial) -> RingClass:
        """Normal form of a monomial given as vertex labels with repetition."""
        c = self.one()
        for label in monomial:
            c = self.multiply(c, self._generator_class(label))
        return c

    def sq1(self, x: RingClass) -> RingClass:
        """First Steenrod square, extended from generators by the Leibniz rule."""
        d = x.degree
        if d + 1 > self.n:
            return RingClass(d + 1, 0)
        self._ensure_degree(d)
        self._ensure_degree(d + 1)
        index = self._mono_index[d + 1]
        acc = 0
        monos = self.monomials(d)
        for pos in _bit_positions(x.bits):
            t = monos[self._basis_idx[d][pos]]
            for i in set(t):
                if t.count(i) % 2:
                    child = tuple(sorted(t + (i,)))
                    acc ^= self._reduce_monomial(d + 1, index[child])
        return RingClass(d + 1, acc)

    def sq1_vanishes_on_degree(self, d: int) -> bool:
        if d % 2:
            raise ValueError(f"degree {d} is odd")
        if d < 0 or d > self.n or d + 1 > self.n:
            return True
        return all(self.sq1(c).is_zero() for c in self.basis_classes(d))

    def total_sq(self, x: RingClass) -> dict[int, RingClass]:
        """Total Steenrod square of a homogeneous class, degrees x.deg..n."""
        d = x.degree
        self._ensure_degree(d)
        out: dict[int, int] = {}
        monos = self.monomials(d)
        for pos in _bit_positions(x.bits):
            t = monos[self._basis_idx[d][pos]]
            element: dict[int, RingClass] = {0: self.one()}
            for i in t:
                self._ensure_degree(1)
                wi = RingClass(1, self._reduce_monomial(1, self._index_of(1, (i,))))
                if self.n >= 2:
                    self._ensure_degree(2)
                    wi2 = RingClass(2, self._reduce_monomial(2, self._index_of(2, (i, i))))
                else:
                    wi2 = RingClass(2, 0)
                nxt: dict[int, RingClass] = {}
                for deg, cls in element.items():
                    for factor in (wi, wi2):
                        nd = deg + factor.degree
                        if nd > self.n:
                            continue
                        term = self.multiply(cls, factor)
                        if term.bits:
                            prev = nxt.get(nd)
                            nxt[nd] = term if prev is None else self.add(prev, term)
                element = nxt
            for deg, cls in element.items():
                out[deg] = out.get(deg, 0) ^ cls.bits
        return {deg: RingClass(deg, bits) for deg, bits in out.items() if bits}

    def tau_classes(self, coloring: dict[int, int]) -> list[RingClass]:
        """Color-class sums of generators; raises if they are not all equal."""
        colors = sorted(set(coloring.values()))
        expected = self.n + 1 if (self.n + 1) in colors else self.n
        taus = []
        for color in range(1, expected + 1):
            acc = self.zero(1)
            for label, c in coloring.items():
                if c == color:
                    acc = self.add(acc, self._generator_class(label))
            taus.append(acc)
        if any(t != taus[0] for t in taus[1:]):
            raise RingError("color-class sums are unequal: coloring is not valid")
        return taus

    def tau(self, coloring: dict[int, int]) -> RingClass:
        return self.tau_classes(coloring)[0]

    def square_identity_check(self, coloring: dict[int, int]) -> bool:
        """Every generator g satisfies g^2 = tau * g."""
        t = self.tau(coloring)
        for label in self._labels:
            g = self._generator_class(label)
            if self.multiply(g, g) != self.multiply(t, g):
                return False
        return True

    def total_sw(self) -> list[RingClass]:
        """Total Stiefel-Whitney class: product of (1 + generator), by degree."""
        element: dict[int, RingClass] = {0: self.one()}
        for label in self._labels:
            g = self._generator_class(label)
            nxt = dict(element)
            for deg, cls in element.items():
                if deg + 1 > self.n:
                    continue
                term = self.multiply(cls, g)
                prev = nxt.get(deg + 1)
                nxt[deg + 1] = term if prev is None else self.add(prev, term)
            element = nxt
        return [element.get(d, self.zero(d)) for d in range(self.n + 1)]

    def sw_pullback_check(self, coloring: dict[int, int]) -> bool:
        """Total SW class equals the binomial expansion of (1 + tau)^(n+1)."""
        t = self.tau(coloring)
        sw = self.total_sw()
        power = self.one()
        for d in range(self.n + 1):
            if d > 0:
                power = self.multiply(power, t)
            expected = power if comb(self.n + 1, d) % 2 else self.zero(d)
            if sw[d] != expected:
                return False
        return True

    def verify_all_dimensions(self) -> None:
        """Force-build every degree; RingError on any h-vector mismatch."""
        for d in range(self.n + 1):
            self._ensure_degree(d)

    def render(self, x: RingClass) -> str:
        if x.bits == 0:
            return "0"
        terms = []
        for pos in _bit_positions(x.bits):
            labels = self.basis_monomial_labels(x.degree, pos)
            if not labels:
                terms.append("1")
                continue
            parts = []
            for v in sorted(set(labels)):
                e = labels.count(v)
                parts.append(f"v{v}" if e == 1 else f"v{v}^{e}")
            terms.append("*".join(parts))
        return " + ".join(terms)


def _bit_positions(bits: int) -> list[int]:
    out = []
    while bits:
        low = bits & -bits
        out.append(low.bit_length() - 1)
        bits ^= low
    return out


def _echelon_insert(rows: dict[int, int], order: list[int], v: int) -> bool:
    """Insert v into a reduced echelon basis keyed by pivot; True if rank grew."""
    for p in order:
        if (v >> p) & 1:
            v ^= rows[p]
    if not v:
        return False
    p = (v & -v).bit_length() - 1
    for q in list(rows):
        if (rows[q] >> p) & 1:
            rows[q] ^= v
    rows[p] = v
    insort(order, p)
    return True


def build_graded_basis(
    K: SimplicialComplex, chi: CharacteristicMatrix, direct_limit: int = 2500
) -> GradedRingBasis:
    return GradedRingBasis(K, chi, direct_limit=direct_limit)


def find_sq1_witness(
    K: SimplicialComplex,
    chi: CharacteristicMatrix,
    basis: GradedRingBasis | None = None,
) -> Sq1Witness | None:
    """A degree-2 monomial class with nonzero first square, when one exists.

    Scans ridge-flip supports for a facet position whose support is neither
    the singleton nor the full index set; returns None exactly when the
    instance is a pullback from the simplex.
    """
    if not K.is_closed_pseudomanifold() or not K.is_strongly_connected():
        raise ValueError("witness search needs a strongly connected closed pseudomanifold")
    n = chi.n
    full = frozenset(range(1, n + 1))
    found = None
    for facet in K.facets:
        for i in range(1, n + 1):
            s_set = ridge_flip_support(chi, facet, i)
            if s_set != frozenset({i}) and s_set != full:
                found = (facet, i, s_set)
                break
        if found:
            break
    if found is None:
        return None
    facet, i, s_set = found
    s = min(s_set - {i})
    t = min(full - s_set)
    u_s = facet[s - 1]
    u_t = facet[t - 1]
    b = basis if basis is not None else build_graded_basis(K, chi)
    cs = b.express([u_s])
    ct = b.express([u_t])
    witness = b.multiply(cs, ct)
    image = b.sq1(witness)
    expected = b.multiply(witness, b.add(cs, ct))
    if image != expected:
        raise RingError("Leibniz evaluation disagrees with the square of the witness")
    if image.is_zero():
        raise RingError(
            "flip support certifies a non-pullback but the witness square vanished"
        )
    return Sq1Witness(facet, i, s, t, u_s, u_t, witness, image)
