"""Invariants of a real toric space and the seven-condition report.

A real toric space is the pair (complex, characteristic matrix).  Its mod-2
Betti numbers are the h-vector entries; rational Betti numbers and integral
cohomology are assembled from the reduced cohomology of the full
subcomplexes indexed by the row space, with the count of order-two torsion
summands closed off through the mod-2 / rational Betti bookkeeping.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from . import facering
from .charmap import (
    CharacteristicMatrix,
    CharMapError,
    OmegaDescriptor,
    PullbackClass,
    classify_pullback,
    classify_via_flips,
    omega_descriptors,
)
from .errors import InternalConsistencyError
from .homology import CohomologyProfile, FinAbGroup, reduced_cohomology
from .shelling import Shelling, find_shelling
from .simplicial import SimplicialComplex


@dataclass(frozen=True)
class Hypotheses:
    """Which structural hypotheses of the equivalence were verified."""

    closed_pseudomanifold: bool
    strongly_connected: bool
    shelling_found: bool

    def all_hold(self) -> bool:
        return self.closed_pseudomanifold and self.strongly_connected and self.shelling_found


@dataclass(frozen=True)
class BettiTable:
    """Rational and mod-2 Betti numbers with the even-torsion counts.

    mu has length n+2 so that the identity b2[q] = b[q] + mu[q] + mu[q+1]
    makes sense for every q in 0..n.
    """

    b: tuple[int, ...]
    b_mod2: tuple[int, ...]
    mu: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.b) - 1
        if len(self.b_mod2) != n + 1 or len(self.mu) != n + 2:
            raise InternalConsistencyError("Betti table length mismatch")
        for q in range(n + 1):
            if self.b_mod2[q] != self.b[q] + self.mu[q] + self.mu[q + 1]:
                raise InternalConsistencyError(
                    f"coefficient bookkeeping fails at degree {q}"
                )


@dataclass
class ConditionReport:
    """The seven booleans with witnesses and an equivalence verdict."""

    conditions: dict[int, bool]
    verdict: str
    hypotheses: Hypotheses
    classification: PullbackClass
    betti: BettiTable | None = None
    integral: CohomologyProfile | None = None
    torsion_witness: dict[int, tuple[int, ...]] = field(default_factory=dict)
    sq1_witness: facering.Sq1Witness | None = None

    def agree(self) -> bool:
        vals = set(self.conditions.values())
        return len(vals) == 1


class RealToricSpace:
    """Pair (K, characteristic matrix) with cached derived invariants."""

    def __init__(self, K: SimplicialComplex, chi: CharacteristicMatrix):
        if chi.complex != K:
            raise ValueError("characteristic matrix belongs to a different complex")
        if not K.is_pure():
            raise ValueError("real toric spaces here require a pure complex")
        if chi.n != K.dim + 1:
            raise ValueError(f"matrix rank {chi.n} != dim K + 1 = {K.dim + 1}")
        self.complex = K
        self.chi = chi
        self.n = chi.n

    @cached_property
    def classification(self) -> PullbackClass:
        return classify_pullback(self.chi)

    @cached_property
    def flip_classification(self) -> PullbackClass | None:
        try:
            return classify_via_flips(self.chi)
        except CharMapError:
            return None

    @cached_property
    def shelling(self) -> Shelling | None:
        return find_shelling(self.complex)

    @cached_property
    def hypotheses(self) -> Hypotheses:
        return Hypotheses(
            closed_pseudomanifold=self.complex.is_closed_pseudomanifold(),
            strongly_connected=self.complex.is_strongly_connected(),
            shelling_found=self.shelling is not None,
        )

    @cached_property
    def ring(self) -> facering.GradedRingBasis:
        return facering.build_graded_basis(self.complex, self.chi)

    @cached_property
    def omega_profiles(self) -> list[tuple[OmegaDescriptor, CohomologyProfile]]:
        coloring = self.classification.coloring
        out = []
        for desc in omega_descriptors(self.chi, coloring):
            sub = self.complex.full_subcomplex(desc.support)
            out.append((desc, reduced_cohomology(sub, "Z")))
        return out

    @cached_property
    def h_vector(self) -> tuple[int, ...]:
        return self.complex.h_vector().h


def mod2_betti(M: RealToricSpace) -> tuple[int, ...]:
    """Mod-2 Betti numbers: the h-vector of the underlying complex."""
    return M.h_vector


def rational_betti(M: RealToricSpace) -> tuple[int, ...]:
    """b^q = sum over the row space of the rational reduced Betti numbers of
    the full subcomplexes, shifted up by one degree."""
    n = M.n
    b = [0] * (n + 1)
    for _, profile in M.omega_profiles:
        for q, group in profile.groups.items():
            b[q + 1] += group.rank
    return tuple(b)


def integral_cohomology(M: RealToricSpace) -> CohomologyProfile:
    """Degreewise assembly: free ranks from the subcomplex sum, odd torsion
    copied, two-primary torsion doubled, and the order-two count solved from
    the Betti bookkeeping.  Raises InternalConsistencyError if the solved
    count goes negative or fails to close at the top degree."""
    n = M.n
    b = rational_betti(M)
    b2 = mod2_betti(M)
    odd_torsion: dict[int, list[int]] = {q: [] for q in range(n + 1)}
    doubled: dict[int, list[int]] = {q: [] for q in range(n + 1)}
    for _, profile in M.omega_profiles:
        for q, group in profile.groups.items():
            degree = q + 1
            for t in group.torsion:
                if t % 2:
                    odd_torsion[degree].append(t)
                else:
                    doubled[degree].append(2 * t)
    mu = [0] * (n + 2)
    for q in range(n + 1):
        nxt = b2[q] - b[q] - mu[q]
        if nxt < 0:
            raise InternalConsistencyError(
                f"negative even-torsion count at degree {q + 1}"
            )
        if q + 1 <= n + 1:
            mu[q + 1] = nxt
    if mu[1] != 0:
        raise InternalConsistencyError("degree-1 cohomology acquired torsion")
    if mu[n + 1] != 0:
        raise InternalConsistencyError("even-torsion count fails to close at the top")
    groups = {}
    for q in range(n + 1):
        order_two = mu[q] - len(doubled[q])
        if order_two < 0:
            raise InternalConsistencyError(
                f"doubled torsion exceeds the solved count at degree {q}"
            )
        orders = odd_torsion[q] + doubled[q] + [2] * order_two
        g = FinAbGroup.from_orders(b[q], orders)
        if not g.is_trivial():
            groups[q] = g
    return CohomologyProfile(groups)


def mu_profile(profile: CohomologyProfile) -> tuple[int, ...]:
    """Counts of even-order cyclic summands per degree, 0..max degree."""
    top = max(profile.max_degree(), 0)
    return tuple(profile.mu(q) for q in range(top + 1))


def betti_table(M: RealToricSpace) -> BettiTable:
    n = M.n
    profile = integral_cohomology(M)
    mu = [profile.mu(q) for q in range(n + 2)]
    return BettiTable(b=rational_betti(M), b_mod2=mod2_betti(M), mu=tuple(mu))


def is_orientable_3d(M: RealToricSpace) -> bool:
    """Orientability of a 3-dimensional instance: the simplex-pullback test."""
    if M.n != 3:
        raise ValueError(f"orientability test is for n = 3, got n = {M.n}")
    return M.classification.is_simplex_pullback


ALL_CONDITIONS = (1, 2, 3, 4, 5, 6, 7)


def evaluate_conditions(
    M: RealToricSpace, conditions=None, search_shelling: bool = True
) -> ConditionReport:
    """Evaluate the requested equivalence conditions (default: all seven).

    1: pullback from the simplex (image condition);
    2: odd-degree integral cohomology torsion-free;
    3: degree-3 integral cohomology torsion-free;
    4: first square vanishes on every even degree;
    5: first square vanishes on degree 2;
    6: b^{2k} - b^{2k-1} = mod-2 difference for every k >= 1;
    7: the same for k = 1.
    """
    requested = tuple(sorted(set(conditions or ALL_CONDITIONS)))
    if any(c not in ALL_CONDITIONS for c in requested):
        raise ValueError(f"unknown condition in {requested}")
    n = M.n
    results: dict[int, bool] = {}
    table = None
    profile = None
    torsion_witness: dict[int, tuple[int, ...]] = {}
    sq1_witness = None

    if 1 in requested:
        results[1] = M.classification.is_simplex_pullback
    if {2, 3, 6, 7} & set(requested):
        profile = integral_cohomology(M)
        table = betti_table(M)
        for q in range(n + 1):
            g = profile.group(q)
            if q % 2 and g.torsion:
                torsion_witness[q] = g.torsion
        if 2 in requested:
            results[2] = all(
                profile.group(q).is_torsion_free() for q in range(1, n + 1, 2)
            )
        if 3 in requested:
            results[3] = profile.group(3).is_torsion_free()
        diffs_ok = {}
        for k in range(1, n // 2 + 2):
            b_hi = table.b[2 * k] if 2 * k <= n else 0
            b_lo = table.b[2 * k - 1] if 2 * k - 1 <= n else 0
            m_hi = table.b_mod2[2 * k] if 2 * k <= n else 0
            m_lo = table.b_mod2[2 * k - 1] if 2 * k - 1 <= n else 0
            diffs_ok[k] = (b_hi - b_lo) == (m_hi - m_lo)
        if 6 in requested:
            results[6] = all(diffs_ok.values())
        if 7 in requested:
            results[7] = diffs_ok[1]
    if {4, 5} & set(requested):
        ring = M.ring
        if 5 in requested:
            results[5] = ring.sq1_vanishes_on_degree(2) if n >= 1 else True
        if 4 in requested:
            results[4] = all(
                ring.sq1_vanishes_on_degree(d) for d in range(0, n + 1, 2)
            )
        hyp = M.hypotheses
        if hyp.closed_pseudomanifold and hyp.strongly_connected:
            sq1_witness = facering.find_sq1_witness(M.complex, M.chi, ring)

    if search_shelling:
        hyp = M.hypotheses
    else:
        hyp = Hypotheses(
            closed_pseudomanifold=M.complex.is_closed_pseudomanifold(),
            strongly_connected=M.complex.is_strongly_connected(),
            shelling_found=False,
        )

    values = {results[c] for c in requested}
    if not hyp.all_hold():
        verdict = "hypotheses-not-verified"
    elif len(requested) < len(ALL_CONDITIONS):
        verdict = "partial-evaluation"
    elif len(values) > 1:
        verdict = "DISAGREEMENT"
    elif values == {True}:
        verdict = "equivalent-true"
    else:
        verdict = "equivalent-false"
    return ConditionReport(
        conditions=results,
        verdict=verdict,
        hypotheses=hyp,
        classification=M.classification,
        betti=table,
        integral=profile,
        torsion_witness=torsion_witness,
        sq1_witness=sq1_witness,
    )
