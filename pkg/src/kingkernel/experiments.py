"""Corpus experiments validating the library's guaranteed properties.

Each runner generates a seeded corpus, checks one guarantee on every
instance, and reports how many checks ran and how many failed. A nonzero
violation count means a guaranteed property failed on a concrete instance,
which is the strongest bug signal this package can produce; the first few
offending instances are kept in the result for reproduction.

Checks are dual-route on purpose: the operation under test is compared
against a direct recomputation on the flattened digraph (eccentricities,
fresh BFS runs, subset enumeration), never against itself.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Any, Callable

from .composition import Composition, compose, flatten
from .digraph import (
    UNREACHABLE,
    Digraph,
    build_digraph,
    classify_digraph,
    distances_from,
    distances_to,
    induced_subdigraph,
    out_eccentricities,
)
from .errors import GenerationError, PreconditionError, TheoremViolation
from .fileformat import composition_to_json, digraph_to_json
from .gen import (
    Constraint,
    GenSpec,
    Kind,
    SplitMix64,
    all_semicomplete_digraphs,
    all_tournaments,
    derive,
    generate,
    random_composition,
    random_digraph,
    unique_three_king_fixture,
)
from .kernels import (
    c3_gadget,
    composition_k_kernel,
    disjoint_quasi_kernels,
    k_kernel_brute_force,
    quasi_kernel,
    singleton_quasi_kernels,
    validate_certificate,
)
from .kings import (
    can_establish,
    classified_flat_three_kings,
    classify_three_kings,
    composition_all_k_kings,
    composition_has_k_king,
    establish,
    four_king_bound_report,
    non_king_dominator_witness,
)

DEFAULT_SEED = 20260817
MAX_KEPT_FAILURES = 5


@dataclass
class ExperimentResult:
    name: str
    instances: int
    checks: int
    violations: int
    failures: list[dict[str, Any]] = field(default_factory=list)
    info: dict[str, Any] = field(default_factory=dict)
    elapsed_s: float = 0.0

    def record(self, detail: str, instance: Any = None) -> None:
        self.violations += 1
        if len(self.failures) < MAX_KEPT_FAILURES:
            entry: dict[str, Any] = {"detail": detail}
            if isinstance(instance, Composition):
                entry["composition"] = composition_to_json(instance)
            elif isinstance(instance, Digraph):
                entry["digraph"] = digraph_to_json(instance)
            self.failures.append(entry)

    def to_json(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "instances": self.instances,
            "checks": self.checks,
            "violations": self.violations,
            "failures": self.failures,
            "info": self.info,
            "elapsed_s": round(self.elapsed_s, 3),
        }


def path_like_tournament(n: int) -> Digraph:
    """Strong tournament with arcs i -> i+1 and j -> i for j >= i+2. Vertex 0
    reaches vertex j only along the forward path, so d(0, j) = j and the
    tournament has eccentricity-(n-1) vertices; for n >= 5 that makes factor
    0 of any composition over it a source of non-kings."""
    arcs = [(i, i + 1) for i in range(n - 1)]
    arcs += [(j, i) for i in range(n) for j in range(i + 2, n)]
    return build_digraph(n, arcs)


def _corpus_composition(
    seed: int,
    idx: int,
    kinds: tuple[Kind, ...],
    t_lo: int = 2,
    t_hi: int = 5,
    size_lo: int = 1,
    size_hi: int = 3,
    max_total: int = 12,
    min_total: int | None = None,
    constraints: frozenset[Constraint] = frozenset(),
    p2: float = 0.3,
) -> Composition:
    """One deterministic corpus instance: outer kind cycles with idx, the
    rest is drawn from streams derived from (seed, idx)."""
    meta = SplitMix64(derive(seed, idx))
    t = meta.randint(t_lo, t_hi)
    p = (0.2, 0.5, 0.8)[meta.randint(0, 2)]
    kind = kinds[idx % len(kinds)]
    # a 2-vertex tournament has a sink, a source, and is not strong, so
    # every outer constraint is unsatisfiable at t = 2 for that kind
    if kind is Kind.TOURNAMENT and constraints and t == 2:
        t = 3
    for attempt in range(1000):
        spec = GenSpec(
            seed=derive(seed, idx, attempt),
            kind=kind,
            t=t,
            size_min=size_lo,
            size_max=size_hi,
            p=p,
            p2=p2,
            constraints=constraints,
        )
        c = random_composition(spec)
        total = c.total_vertices
        if total <= max_total and (min_total is None or total >= min_total):
            return c
    raise GenerationError(
        f"no corpus instance within the size window for seed={seed} idx={idx}"
    )


_MIXED_KINDS = (Kind.TOURNAMENT, Kind.SEMICOMPLETE, Kind.ERDOS_RENYI)
_SEMI_KINDS = (Kind.TOURNAMENT, Kind.SEMICOMPLETE)


def king_characterization(
    seed: int = DEFAULT_SEED, instances: int | None = None, max_n: int | None = None
) -> ExperimentResult:
    """Composition-level k-king decisions versus brute-force kings of the
    flattened digraph, for k in 2..6, on mixed outer kinds."""
    instances = 2000 if instances is None else instances
    max_total = 12 if max_n is None else max_n
    res = ExperimentResult("king-characterization", 0, 0, 0)
    start = time.perf_counter()
    for idx in range(instances):
        c = _corpus_composition(seed, idx, _MIXED_KINDS, max_total=max_total)
        res.instances += 1
        eccs = out_eccentricities(flatten(c))
        for k in range(2, 7):
            witness = composition_has_k_king(c, k)
            brute_exists = any(e <= k for e in eccs)
            res.checks += 1
            if witness.exists != brute_exists:
                res.record(
                    f"existence mismatch at k={k}: characterization says "
                    f"{witness.exists}, brute force says {brute_exists}",
                    c,
                )
            elif witness.exists and witness.witness_factor is None:
                res.record(f"missing witness factor at k={k}", c)
            res.checks += 1
            if composition_all_k_kings(c, k) != all(e <= k for e in eccs):
                res.record(f"all-vertices mismatch at k={k}", c)
    res.elapsed_s = time.perf_counter() - start
    return res


def three_king_count(
    seed: int = DEFAULT_SEED, instances: int | None = None, max_n: int | None = None
) -> ExperimentResult:
    """Strong semicomplete compositions: at least two 3-kings, and the
    factor classification matches the brute-force 3-king set vertex by
    vertex."""
    instances = 2000 if instances is None else instances
    max_total = 12 if max_n is None else max_n
    res = ExperimentResult("three-king-count", 0, 0, 0)
    start = time.perf_counter()
    strong = frozenset({Constraint.STRONG_OUTER})
    for idx in range(instances):
        c = _corpus_composition(
            seed, idx, _SEMI_KINDS, max_total=max_total, constraints=strong
        )
        res.instances += 1
        classification = classify_three_kings(c)
        claimed = classified_flat_three_kings(c, classification)
        eccs = out_eccentricities(flatten(c))
        direct = frozenset(v for v, e in enumerate(eccs) if e <= 3)
        res.checks += 2
        if claimed != direct:
            res.record("classification disagrees with brute-force 3-kings", c)
        if len(direct) < 2:
            res.record(f"only {len(direct)} 3-kings in a strong composition", c)
    res.elapsed_s = time.perf_counter() - start
    return res


def nonking_witness(
    seed: int = DEFAULT_SEED, instances: int | None = None, max_n: int | None = None
) -> ExperimentResult:
    """Every non-king of a strong semicomplete composition is dominated by a
    3-king at distance more than 3. Half the corpus uses path-like outer
    tournaments, which are guaranteed to produce non-kings."""
    instances = 400 if instances is None else instances
    res = ExperimentResult("nonking-witness", 0, 0, 0)
    start = time.perf_counter()
    with_non_kings = 0
    for idx in range(instances):
        if idx % 2 == 0:
            meta = SplitMix64(derive(seed, idx))
            outer = path_like_tournament(meta.randint(5, 7))
            factors = tuple(
                random_digraph(
                    meta.randint(1, 2), derive(seed, idx, 2 + i), 0.5
                )
                for i in range(outer.n)
            )
            c = compose(outer, factors)
        else:
            c = _corpus_composition(
                seed,
                idx,
                _SEMI_KINDS,
                constraints=frozenset({Constraint.STRONG_OUTER}),
            )
        res.instances += 1
        q = flatten(c)
        eccs = out_eccentricities(q)
        non = [v for v, e in enumerate(eccs) if e > 3]
        if non:
            with_non_kings += 1
        for u in non:
            res.checks += 1
            try:
                v = non_king_dominator_witness(c, u)
            except (PreconditionError, TheoremViolation) as exc:
                res.record(f"witness lookup failed for {u}: {exc}", c)
                continue
            if eccs[v] > 3:
                res.record(f"witness {v} for {u} is not a 3-king", c)
            elif u not in q.out_adj[v]:
                res.record(f"witness {v} does not dominate {u}", c)
            elif distances_from(q, u)[v] <= 3:
                res.record(f"witness {v} is within distance 3 of {u}", c)
    res.info["instances_with_non_kings"] = with_non_kings
    res.elapsed_s = time.perf_counter() - start
    return res


def _establishable_outers(seed: int, needed: int) -> tuple[list[Digraph], dict[str, Any]]:
    """Outer digraphs passing can_establish: an exhaustive tournament scan up
    to six vertices fills half the quota, seeded semicomplete search the
    rest. The scan prefilters on eccentricities (strong means every
    eccentricity is finite) and confirms each hit with can_establish."""
    from_scan = max(1, needed // 2)
    found: list[Digraph] = []
    info: dict[str, Any] = {}
    exhaustive_ok = 0
    smallest: int | None = None
    for n in range(3, 7):
        for d in all_tournaments(n):
            eccs = out_eccentricities(d)
            strict3 = frozenset(v for v, e in enumerate(eccs) if e == 3)
            if any(e == UNREACHABLE for e in eccs) or not strict3:
                continue
            if any(
                e <= 2 and not (d.in_adj[v] & strict3)
                for v, e in enumerate(eccs)
            ):
                continue
            assert can_establish(d).ok
            exhaustive_ok += 1
            if smallest is None:
                smallest = n
            if len(found) < from_scan:
                found.append(d)
    info["exhaustive_tournament_hits"] = exhaustive_ok
    info["smallest_tournament_n"] = smallest
    scan_hits = list(found)
    attempt = 0
    while len(found) < needed and attempt < 100000:
        spec = GenSpec(
            seed=derive(seed, 777, attempt),
            kind=Kind.SEMICOMPLETE,
            n=5 + attempt % 4,
            p2=0.2,
            constraints=frozenset({Constraint.STRONG_OUTER}),
        )
        d = generate(spec)
        assert isinstance(d, Digraph)
        if can_establish(d).ok:
            found.append(d)
        attempt += 1
    info["seeded_search_attempts"] = attempt
    while len(found) < needed and scan_hits:
        found.append(scan_hits[len(found) % len(scan_hits)])
    return found, info


def establishment(
    seed: int = DEFAULT_SEED, instances: int | None = None, max_n: int | None = None
) -> ExperimentResult:
    """The establishment construction yields an extension whose 3-king set is
    exactly the original vertex set, re-verified here by direct
    eccentricities."""
    instances = 50 if instances is None else instances
    res = ExperimentResult("establishment", 0, 0, 0)
    start = time.perf_counter()
    outers, info = _establishable_outers(seed, instances)
    res.info.update(info)
    for idx in range(min(instances, len(outers))):
        outer = outers[idx]
        meta = SplitMix64(derive(seed, idx, 3))
        sizes = [1] * outer.n
        sizes[meta.randint(0, outer.n - 1)] = meta.randint(1, 2)
        factors = tuple(
            random_digraph(sizes[i], derive(seed, idx, 4 + i), 0.5)
            for i in range(outer.n)
        )
        c = compose(outer, factors)
        res.instances += 1
        res.checks += 1
        try:
            extended = establish(c)
        except TheoremViolation as exc:
            res.record(f"establishment postcondition failed: {exc}", c)
            continue
        eccs = out_eccentricities(flatten(extended))
        kings3 = frozenset(v for v, e in enumerate(eccs) if e <= 3)
        if kings3 != frozenset(range(c.total_vertices)):
            res.record("re-verification of the extension's 3-king set failed", c)
    res.elapsed_s = time.perf_counter() - start
    return res


def four_king_bound(
    seed: int = DEFAULT_SEED, instances: int | None = None, max_n: int | None = None
) -> ExperimentResult:
    """At least five 4-kings in every strong semicomplete composition on six
    or more vertices; the no-3-king clause is tracked as a conditional."""
    instances = 2000 if instances is None else instances
    max_total = 12 if max_n is None else max_n
    res = ExperimentResult("four-king-bound", 0, 0, 0)
    start = time.perf_counter()
    no_three_king_instances = 0
    for idx in range(instances):
        c = _corpus_composition(
            seed,
            idx,
            _SEMI_KINDS,
            t_lo=3,
            max_total=max_total,
            min_total=6,
            constraints=frozenset({Constraint.STRONG_OUTER}),
        )
        res.instances += 1
        res.checks += 1
        report = four_king_bound_report(c)
        if report.three_kings == 0:
            no_three_king_instances += 1
        if not report.bound_satisfied:
            res.record(
                f"bound failed: n={report.n}, four={report.four_kings}, "
                f"three={report.three_kings}",
                c,
            )
    res.info["no_three_king_instances"] = no_three_king_instances
    res.elapsed_s = time.perf_counter() - start
    return res


def quasi_kernel_validation(
    seed: int = DEFAULT_SEED, instances: int | None = None, max_n: int | None = None
) -> ExperimentResult:
    """The constructed quasi-kernel validates on random digraphs across a
    spread of densities."""
    instances = 5000 if instances is None else instances
    top = 14 if max_n is None else max_n
    res = ExperimentResult("quasi-kernel", 0, 0, 0)
    start = time.perf_counter()
    densities = (0.1, 0.3, 0.5, 0.8)
    for idx in range(instances):
        meta = SplitMix64(derive(seed, idx))
        d = random_digraph(
            meta.randint(1, top), derive(seed, idx, 1), densities[idx % 4]
        )
        res.instances += 1
        res.checks += 1
        try:
            cert = quasi_kernel(d)
        except TheoremViolation as exc:
            res.record(str(exc), d)
            continue
        if not (cert.validated and validate_certificate(d, cert)):
            res.record("returned quasi-kernel does not validate", d)
    res.elapsed_s = time.perf_counter() - start
    return res


def disjoint_quasi_kernel_pairs(
    seed: int = DEFAULT_SEED, instances: int | None = None, max_n: int | None = None
) -> ExperimentResult:
    """Sink-free outer digraphs admit two disjoint quasi-kernels lifted from
    factors, and sink-free semicomplete digraphs have at least two singleton
    quasi-kernel vertices (exhaustively to n=5, then randomly to n=10)."""
    instances = 1000 if instances is None else instances
    res = ExperimentResult("disjoint-quasi-kernels", 0, 0, 0)
    start = time.perf_counter()
    sink_free = frozenset({Constraint.NO_SINK_OUTER})
    for idx in range(instances):
        c = _corpus_composition(seed, idx, _SEMI_KINDS, constraints=sink_free)
        res.instances += 1
        res.checks += 1
        try:
            first, second = disjoint_quasi_kernels(c)
        except TheoremViolation as exc:
            res.record(f"disjoint pair construction failed: {exc}", c)
            continue
        q = flatten(c)
        if first.vertices & second.vertices:
            res.record("quasi-kernels are not disjoint", c)
        elif not (
            validate_certificate(q, first) and validate_certificate(q, second)
        ):
            res.record("one of the pair does not validate", c)

    exhaustive_checked = 0
    for n in range(1, 6):
        for d in all_semicomplete_digraphs(n):
            if classify_digraph(d).sinks:
                continue
            exhaustive_checked += 1
            res.checks += 1
            try:
                if len(singleton_quasi_kernels(d)) < 2:
                    res.record("fewer than two singleton quasi-kernels", d)
            except TheoremViolation as exc:
                res.record(str(exc), d)
    res.info["exhaustive_sink_free_digraphs"] = exhaustive_checked

    for idx in range(1000):
        meta = SplitMix64(derive(seed, 555, idx))
        spec = GenSpec(
            seed=derive(seed, 555, idx, 1),
            kind=Kind.SEMICOMPLETE,
            n=meta.randint(2, 10),
            p2=(0.1, 0.3, 0.6)[idx % 3],
            constraints=sink_free,
        )
        d = generate(spec)
        assert isinstance(d, Digraph)
        res.checks += 1
        try:
            if len(singleton_quasi_kernels(d)) < 2:
                res.record("fewer than two singleton quasi-kernels", d)
        except TheoremViolation as exc:
            res.record(str(exc), d)
    res.elapsed_s = time.perf_counter() - start
    return res


def kkernel_poly(
    seed: int = DEFAULT_SEED, instances: int | None = None, max_n: int | None = None
) -> ExperimentResult:
    """Polynomial k-kernel decisions (k in 4..6) versus the subset-enumeration
    oracle on strong semicomplete compositions."""
    instances = 500 if instances is None else instances
    max_total = 12 if max_n is None else max_n
    res = ExperimentResult("kkernel-poly", 0, 0, 0)
    start = time.perf_counter()
    poly_elapsed = 0.0
    strong = frozenset({Constraint.STRONG_OUTER})
    for idx in range(instances):
        c = _corpus_composition(
            seed, idx, _SEMI_KINDS, max_total=max_total, constraints=strong
        )
        res.instances += 1
        q = flatten(c)
        for k in (4, 5, 6):
            res.checks += 1
            t0 = time.perf_counter()
            poly = composition_k_kernel(c, k)
            poly_elapsed += time.perf_counter() - t0
            oracle = k_kernel_brute_force(q, k, max_n=max(16, q.n))
            if (poly is None) != (oracle is None):
                res.record(
                    f"existence mismatch at k={k}: poly={poly is not None}, "
                    f"oracle={oracle is not None}",
                    c,
                )
                continue
            if poly is not None and not validate_certificate(q, poly):
                res.record(f"poly certificate invalid at k={k}", c)
            if oracle is not None and not validate_certificate(q, oracle):
                res.record(f"oracle certificate invalid at k={k}", c)
    res.info["poly_elapsed_s"] = round(poly_elapsed, 3)
    res.elapsed_s = time.perf_counter() - start
    return res


def kkernel_reduction(
    seed: int = DEFAULT_SEED, instances: int | None = None, max_n: int | None = None
) -> ExperimentResult:
    """3-kernel existence is preserved by the three-copy gadget, oracle
    checked on both sides (the gadget side runs on up to 12 vertices)."""
    instances = 200 if instances is None else instances
    res = ExperimentResult("kkernel-reduction", 0, 0, 0)
    start = time.perf_counter()
    densities = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9)
    # the directed 4-cycle has no 3-kernel (no pair is 3-independent and no
    # singleton is 2-absorbent), so the negative branch is always exercised
    four_cycle = build_digraph(4, [(i, (i + 1) % 4) for i in range(4)])
    with_kernel = 0
    for idx in range(instances):
        if idx == 0:
            d = four_cycle
        else:
            n = 1 + idx % 4
            d = random_digraph(n, derive(seed, idx), densities[idx % len(densities)])
        res.instances += 1
        res.checks += 1
        direct = k_kernel_brute_force(d, 3) is not None
        gadget = flatten(c3_gadget(d))
        via_gadget = k_kernel_brute_force(gadget, 3, max_n=16) is not None
        if direct:
            with_kernel += 1
        if direct != via_gadget:
            res.record(
                f"gadget mismatch: digraph {direct}, gadget {via_gadget}", d
            )
    res.info["digraphs_with_3kernel"] = with_kernel
    res.info["digraphs_without_3kernel"] = res.instances - with_kernel
    res.elapsed_s = time.perf_counter() - start
    return res


def absorbent_transfer(
    seed: int = DEFAULT_SEED, instances: int | None = None, max_n: int | None = None
) -> ExperimentResult:
    """{v} is k-absorbent in the flattened composition with the rest of v's
    factor removed exactly when the factor's outer vertex is a k-absorbent
    singleton of the outer digraph; both sides computed independently for
    k in 3..5."""
    instances = 500 if instances is None else instances
    max_total = 12 if max_n is None else max_n
    res = ExperimentResult("absorbent-transfer", 0, 0, 0)
    start = time.perf_counter()
    for idx in range(instances):
        c = _corpus_composition(seed, idx, _MIXED_KINDS, max_total=max_total)
        res.instances += 1
        q = flatten(c)
        offs = c.offsets
        for i in range(c.t):
            h = c.factors[i]
            inner_picks = {0, h.n - 1}
            for inner in inner_picks:
                v = offs[i] + inner
                keep = [
                    x
                    for x in range(q.n)
                    if x == v or not offs[i] <= x < offs[i] + h.n
                ]
                sub, new_id = induced_subdigraph(q, keep)
                target = new_id[v]
                for k in (3, 4, 5):
                    res.checks += 1
                    # Route one: forward BFS from every vertex of the reduced
                    # flattened digraph.
                    reduced_side = all(
                        distances_from(sub, x)[target] <= k
                        for x in range(sub.n)
                    )
                    # Route two: one backward BFS in the outer digraph.
                    outer_side = all(dist <= k for dist in distances_to(c.outer, i))
                    if reduced_side != outer_side:
                        res.record(
                            f"absorbency transfer mismatch at factor {i}, "
                            f"inner {inner}, k={k}",
                            c,
                        )
    res.elapsed_s = time.perf_counter() - start
    return res


def fixture_regression(
    seed: int = DEFAULT_SEED, instances: int | None = None, max_n: int | None = None
) -> ExperimentResult:
    """The pinned unique-3-king example keeps its four properties: no source
    in the flattened digraph, a source in the outer, flat vertex 3 as the
    unique 3-king, and no arc between flat vertices 3 and 0."""
    res = ExperimentResult("fixture-regression", 1, 4, 0)
    start = time.perf_counter()
    c = unique_three_king_fixture()
    q = flatten(c)
    if any(not q.in_adj[v] for v in range(q.n)):
        res.record("flattened fixture has a source", c)
    if not classify_digraph(c.outer).sources:
        res.record("outer digraph of the fixture has no source", c)
    eccs = out_eccentricities(q)
    if frozenset(v for v, e in enumerate(eccs) if e <= 3) != frozenset({3}):
        res.record("fixture's 3-king set is not exactly {3}", c)
    if q.has_arc(3, 0) or q.has_arc(0, 3):
        res.record("fixture has an arc between flat vertices 3 and 0", c)
    res.elapsed_s = time.perf_counter() - start
    return res


Runner = Callable[..., ExperimentResult]

EXPERIMENTS: dict[str, Runner] = {
    "king-characterization": king_characterization,
    "three-king-count": three_king_count,
    "nonking-witness": nonking_witness,
    "establishment": establishment,
    "four-king-bound": four_king_bound,
    "quasi-kernel": quasi_kernel_validation,
    "disjoint-quasi-kernels": disjoint_quasi_kernel_pairs,
    "kkernel-poly": kkernel_poly,
    "kkernel-reduction": kkernel_reduction,
    "absorbent-transfer": absorbent_transfer,
    "fixture-regression": fixture_regression,
}
