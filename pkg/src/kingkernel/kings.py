"""k-kings of digraphs and of compositions.

A k-king reaches every other vertex by a directed path of length at most k;
it is strict when some vertex sits at distance exactly k. A king is a 2-king;
a non-king is a vertex that is not even a 3-king.

For compositions the k-king structure of the flattened digraph is decided
from the outer digraph and the factors alone, without flattening, and the
3-king set of a strong semicomplete composition is a union of whole factors.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .composition import (
    Composition,
    compose,
    flatten,
    require_strong_semicomplete_composition,
)
from .digraph import (
    Digraph,
    Dist,
    build_digraph,
    classify_digraph,
    distances_from,
    min_cycle_length_through,
    out_eccentricities,
)
from .errors import PreconditionError, TheoremViolation


@dataclass(frozen=True)
class KingReport:
    """k-king census of a digraph: the kings, the strict ones (eccentricity
    exactly k), and every vertex's out-eccentricity."""

    k: int
    kings: frozenset[int]
    strict: frozenset[int]
    ecc_out: tuple[Dist, ...]


class KingWitnessReason(Enum):
    FACTOR_HAS_KING = "FACTOR_HAS_KING"
    SHORT_OUTER_CYCLE = "SHORT_OUTER_CYCLE"


@dataclass(frozen=True)
class CompositionKingWitness:
    """Outcome of the composition-level k-king decision. witness_factor is
    0-based here; serialized reports print factor indices 1-based."""

    exists: bool
    witness_factor: int | None
    reason: KingWitnessReason | None


class FactorKingFlag(Enum):
    ALL_3KINGS = "ALL"
    NO_3KINGS = "NONE"


@dataclass(frozen=True)
class ThreeKingClassification:
    """Per-factor 3-king verdict for a strong semicomplete composition. Every
    factor is all-or-nothing: its vertices are 3-kings of the flattened
    digraph exactly when the factor's outer vertex is a 3-king of the outer."""

    flags: tuple[FactorKingFlag, ...]
    outer_three_kings: frozenset[int]


@dataclass(frozen=True)
class EstablishReport:
    ok: bool
    strict_three_kings: frozenset[int]
    two_kings: frozenset[int]
    blocking_two_kings: frozenset[int]


@dataclass(frozen=True)
class FourKingReport:
    n: int
    four_kings: int
    three_kings: int
    bound_satisfied: bool


def k_kings(d: Digraph, k: int) -> KingReport:
    """All k-kings of d, k >= 2. A vertex with unreachable eccentricity is
    never a king; strictness compares finite eccentricities only."""
    if k < 2:
        raise PreconditionError(f"king order must be >= 2, got {k}")
    eccs = out_eccentricities(d)
    kings = frozenset(v for v in range(d.n) if eccs[v] <= k)
    strict = frozenset(v for v in kings if eccs[v] == k)
    return KingReport(k=k, kings=kings, strict=strict, ecc_out=tuple(eccs))


def non_kings(d: Digraph) -> frozenset[int]:
    """Vertices that are not 3-kings."""
    return frozenset(range(d.n)) - k_kings(d, 3).kings


def composition_has_k_king(c: Composition, k: int) -> CompositionKingWitness:
    """Whether the flattened composition has a k-king, decided without
    flattening: it does exactly when some k-king u_i of the outer digraph
    either heads a factor with its own k-king, or heads a factor with at
    least two vertices while lying on an outer cycle of length at most k.

    The outer digraph may be arbitrary. Returns the smallest qualifying
    factor; a singleton factor qualifies through its trivial k-king.
    """
    if k < 2:
        raise PreconditionError(f"king order must be >= 2, got {k}")
    outer_kings = k_kings(c.outer, k).kings
    for i in range(c.t):
        if i not in outer_kings:
            continue
        h = c.factors[i]
        if k_kings(h, k).kings:
            return CompositionKingWitness(
                exists=True,
                witness_factor=i,
                reason=KingWitnessReason.FACTOR_HAS_KING,
            )
        if h.n >= 2 and min_cycle_length_through(c.outer, i) <= k:
            return CompositionKingWitness(
                exists=True,
                witness_factor=i,
                reason=KingWitnessReason.SHORT_OUTER_CYCLE,
            )
    return CompositionKingWitness(exists=False, witness_factor=None, reason=None)


def composition_all_k_kings(c: Composition, k: int) -> bool:
    """Whether every vertex of the flattened composition is a k-king: every
    outer vertex must be a k-king of the outer, and each factor must either
    consist entirely of its own k-kings or have at least two vertices with
    its outer vertex on a cycle of length at most k."""
    if k < 2:
        raise PreconditionError(f"king order must be >= 2, got {k}")
    outer_kings = k_kings(c.outer, k).kings
    for i in range(c.t):
        if i not in outer_kings:
            return False
        h = c.factors[i]
        if len(k_kings(h, k).kings) == h.n:
            continue
        if h.n >= 2 and min_cycle_length_through(c.outer, i) <= k:
            continue
        return False
    return True


def classify_three_kings(c: Composition) -> ThreeKingClassification:
    """Factor-level 3-king classification of a strong semicomplete
    composition. Refuses non-strong input: the all-or-nothing split is only
    guaranteed in the strong case."""
    require_strong_semicomplete_composition(c)
    outer3 = k_kings(c.outer, 3).kings
    flags = tuple(
        FactorKingFlag.ALL_3KINGS if i in outer3 else FactorKingFlag.NO_3KINGS
        for i in range(c.t)
    )
    return ThreeKingClassification(flags=flags, outer_three_kings=outer3)


def classified_flat_three_kings(c: Composition, cls: ThreeKingClassification) -> frozenset[int]:
    """Flat 3-king set implied by a classification: the union of the
    ALL_3KINGS factors."""
    out: set[int] = set()
    offs = c.offsets
    for i, flag in enumerate(cls.flags):
        if flag is FactorKingFlag.ALL_3KINGS:
            out.update(range(offs[i], offs[i] + c.factors[i].n))
    return frozenset(out)


def non_king_dominator_witness(c: Composition, u: int) -> int:
    """For a non-king u of a strong semicomplete composition: the smallest
    3-king v that dominates u (arc v -> u) while sitting at distance more
    than 3 from u. Such a v always exists; failing to find one is a theorem
    violation, not a normal result."""
    require_strong_semicomplete_composition(c)
    q = flatten(c)
    if not 0 <= u < q.n:
        raise PreconditionError(f"vertex {u} out of range for n={q.n}")
    report = k_kings(q, 3)
    if u in report.kings:
        raise PreconditionError(f"vertex {u} is a 3-king, not a non-king")
    dist_u = distances_from(q, u)
    for v in sorted(report.kings):
        if u in q.out_adj[v] and dist_u[v] > 3:
            return v
    raise TheoremViolation(
        f"no dominating 3-king at distance > 3 from non-king {u}", instance=c
    )


def can_establish(t: Digraph) -> EstablishReport:
    """Eligibility of a strong semicomplete outer digraph for establishment:
    a strict 3-king exists and every 2-king has an in-neighbor among the
    strict 3-kings. blocking_two_kings lists the 2-kings that fail."""
    cls = classify_digraph(t)
    if not (cls.is_semicomplete and cls.is_strong):
        raise PreconditionError("digraph is not strong semicomplete")
    eccs = out_eccentricities(t)
    strict3 = frozenset(v for v in range(t.n) if eccs[v] == 3)
    two = frozenset(v for v in range(t.n) if eccs[v] <= 2)
    blocking = frozenset(v for v in two if not (t.in_adj[v] & strict3))
    return EstablishReport(
        ok=bool(strict3) and not blocking,
        strict_three_kings=strict3,
        two_kings=two,
        blocking_two_kings=blocking,
    )


def establish(c: Composition) -> Composition:
    """Extend a strong semicomplete composition with one singleton factor per
    strict 3-king of the outer so that the 3-king set of the extended
    composition is exactly the original vertex set.

    Each new outer vertex w_i, paired with strict 3-king s_i, gets the arcs
    w_i -> s_i, u_j -> w_i for every original j != s_i, and w_i -> w_j
    mirroring s_i -> s_j. New factors are appended after the originals, so
    the original flat ids are preserved. The advertised postcondition is
    verified by brute force on every call."""
    report = can_establish(c.outer)
    if not report.ok:
        raise PreconditionError(
            "outer digraph is not eligible: needs a strict 3-king and every "
            "2-king dominated by one"
        )
    t = c.t
    strict = sorted(report.strict_three_kings)
    arcs = list(c.outer.arcs())
    for idx, s in enumerate(strict):
        w = t + idx
        arcs.append((w, s))
        for j in range(t):
            if j != s:
                arcs.append((j, w))
        for jdx, s2 in enumerate(strict):
            if s2 != s and c.outer.has_arc(s, s2):
                arcs.append((w, t + jdx))
    outer2 = build_digraph(t + len(strict), arcs)
    singleton = build_digraph(1, [])
    extended = compose(outer2, c.factors + tuple(singleton for _ in strict))
    original = frozenset(range(c.total_vertices))
    if k_kings(flatten(extended), 3).kings != original:
        raise TheoremViolation(
            "establishment postcondition failed: 3-king set of the extension "
            "differs from the original vertex set",
            instance=c,
        )
    return extended


def four_king_bound_report(c: Composition) -> FourKingReport:
    """3- and 4-king counts of the flattened composition and whether the
    guaranteed bounds hold: with at least six vertices there are at least
    five 4-kings, and at least eight when there is no 3-king. Below six
    vertices the bound is vacuous."""
    require_strong_semicomplete_composition(c)
    q = flatten(c)
    eccs = out_eccentricities(q)
    four = sum(1 for e in eccs if e <= 4)
    three = sum(1 for e in eccs if e <= 3)
    ok = q.n < 6 or (four >= 5 and (three > 0 or four >= 8))
    return FourKingReport(
        n=q.n, four_kings=four, three_kings=three, bound_satisfied=ok
    )
