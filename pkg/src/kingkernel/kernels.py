"""Quasi-kernels and k-kernels.

A quasi-kernel is an independent set with every outside vertex at distance
at most 2 from it. A k-kernel is k-independent (pairwise distance at least k
in both directions) and (k-1)-absorbent; a kernel is a 2-kernel.

Deciding k-kernel existence is polynomial for strong semicomplete
compositions when k >= 4 (a singleton inside the right factor always works)
and NP-complete for k in {2, 3}; accordingly this module offers the
polynomial decision only for k >= 4, a capped brute-force oracle for every
k, and the three-copy gadget that carries 3-kernel hardness over to
semicomplete compositions.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, replace
from enum import Enum
from itertools import combinations

from .composition import (
    Composition,
    compose,
    flatten,
    require_semicomplete_composition,
    require_strong_semicomplete_composition,
)
from .digraph import (
    Digraph,
    build_digraph,
    classify_digraph,
    distances_from,
    distances_to,
    distances_to_set,
)
from .errors import PreconditionError, TheoremViolation

DEFAULT_ORACLE_CAP = 16
ORACLE_CAP_ENV = "KK_MAX_N"


class CertificateKind(Enum):
    QUASI_KERNEL = "QUASI_KERNEL"
    K_KERNEL = "K_KERNEL"


@dataclass(frozen=True)
class KernelCertificate:
    """A claimed quasi-kernel or k-kernel. k is None for quasi-kernels;
    validated records that validate_certificate has confirmed the claim."""

    kind: CertificateKind
    vertices: frozenset[int]
    k: int | None
    validated: bool


def validate_certificate(d: Digraph, cert: KernelCertificate) -> bool:
    """Exact check of the defining conditions via BFS distances."""
    for v in cert.vertices:
        if not 0 <= v < d.n:
            raise PreconditionError(
                f"certificate vertex {v} out of range for n={d.n}"
            )
    members = sorted(cert.vertices)
    inside = set(members)
    if cert.kind is CertificateKind.QUASI_KERNEL:
        for u in members:
            if d.out_adj[u] & inside:
                return False
        into = distances_to_set(d, members)
        return all(into[x] <= 2 for x in range(d.n) if x not in inside)
    if cert.k is None or cert.k < 2:
        raise PreconditionError("K_KERNEL certificate requires k >= 2")
    k = cert.k
    for u in members:
        dist = distances_from(d, u)
        for v in members:
            if v != u and dist[v] < k:
                return False
    into = distances_to_set(d, members)
    return all(into[x] <= k - 1 for x in range(d.n) if x not in inside)


def quasi_kernel(d: Digraph) -> KernelCertificate:
    """A quasi-kernel, which every digraph has.

    Construction: repeatedly take the smallest remaining vertex as pivot and
    discard its closed in-neighborhood; then, unwinding in reverse, keep each
    pivot exactly when none of its out-neighbors was kept later. The result
    is re-validated before being returned.
    """
    alive = set(range(d.n))
    pivots: list[int] = []
    while alive:
        v = min(alive)
        pivots.append(v)
        alive -= d.in_adj[v]
        alive.discard(v)
    chosen: set[int] = set()
    for v in reversed(pivots):
        if not (d.out_adj[v] & chosen):
            chosen.add(v)
    cert = KernelCertificate(
        kind=CertificateKind.QUASI_KERNEL,
        vertices=frozenset(chosen),
        k=None,
        validated=False,
    )
    if not validate_certificate(d, cert):
        raise TheoremViolation("constructed quasi-kernel failed validation", instance=d)
    return replace(cert, validated=True)


def singleton_quasi_kernels(d: Digraph) -> frozenset[int]:
    """All vertices v of a semicomplete digraph whose singleton {v} is a
    quasi-kernel, i.e. every other vertex reaches v within two steps
    (the kings of the converse digraph).

    A sink-free semicomplete digraph is guaranteed at least two such
    vertices; coming up short is a theorem violation."""
    cls = classify_digraph(d)
    if not cls.is_semicomplete:
        raise PreconditionError("digraph is not semicomplete")
    found = frozenset(
        v for v in range(d.n) if all(dist <= 2 for dist in distances_to(d, v))
    )
    if d.n > 0 and not cls.sinks and len(found) < 2:
        raise TheoremViolation(
            "sink-free semicomplete digraph with fewer than two singleton "
            "quasi-kernels",
            instance=d,
        )
    return found


def disjoint_quasi_kernels(
    c: Composition,
) -> tuple[KernelCertificate, KernelCertificate]:
    """A pair of disjoint quasi-kernels of a semicomplete composition whose
    outer digraph has no sink: quasi-kernels of two distinct factors whose
    outer vertices absorb the outer digraph within two steps, lifted to flat
    ids. Both certificates are validated against the flattened digraph."""
    profile = require_semicomplete_composition(c)
    if profile.outer_sinks:
        raise PreconditionError(
            f"outer digraph has sink(s) {sorted(profile.outer_sinks)}"
        )
    witnesses = sorted(singleton_quasi_kernels(c.outer))
    first, second = witnesses[0], witnesses[1]
    q = flatten(c)
    certs: list[KernelCertificate] = []
    for i in (first, second):
        inner = quasi_kernel(c.factors[i])
        lifted = frozenset(c.flat_id(i, v) for v in inner.vertices)
        cert = KernelCertificate(
            kind=CertificateKind.QUASI_KERNEL,
            vertices=lifted,
            k=None,
            validated=False,
        )
        if not validate_certificate(q, cert):
            raise TheoremViolation(
                f"lifted quasi-kernel of factor {i} failed validation on the "
                "flattened composition",
                instance=c,
            )
        certs.append(replace(cert, validated=True))
    return certs[0], certs[1]


def composition_k_kernel(c: Composition, k: int) -> KernelCertificate | None:
    """Polynomial k-kernel decision for strong semicomplete compositions,
    k >= 4: a k-kernel exists exactly when some outer vertex u_i has every
    outer vertex within distance k-1 of it, and then the smallest vertex of
    factor i is one on its own. One backward BFS per outer vertex.

    k in {2, 3} is NP-complete and deliberately not offered here; use
    k_kernel_brute_force."""
    require_strong_semicomplete_composition(c)
    if k < 4:
        raise PreconditionError(
            f"polynomial decision requires k >= 4, got {k}; "
            "use k_kernel_brute_force for k in {2, 3}"
        )
    for i in range(c.t):
        if all(dist <= k - 1 for dist in distances_to(c.outer, i)):
            cert = KernelCertificate(
                kind=CertificateKind.K_KERNEL,
                vertices=frozenset({c.flat_id(i, 0)}),
                k=k,
                validated=False,
            )
            if not validate_certificate(flatten(c), cert):
                raise TheoremViolation(
                    f"singleton k-kernel in factor {i} failed validation",
                    instance=c,
                )
            return replace(cert, validated=True)
    return None


def _oracle_cap(max_n: int | None) -> int:
    if max_n is not None:
        return max_n
    env = os.environ.get(ORACLE_CAP_ENV)
    if env is None:
        return DEFAULT_ORACLE_CAP
    try:
        return int(env)
    except ValueError:
        raise PreconditionError(
            f"{ORACLE_CAP_ENV} must be an integer, got {env!r}"
        ) from None


def k_kernel_brute_force(
    d: Digraph, k: int, max_n: int | None = None
) -> KernelCertificate | None:
    """Minimum-cardinality k-kernel by exhaustive search, or None when no
    k-kernel exists. Subsets are tried by increasing size and
    lexicographically within a size, so the returned certificate is
    deterministic.

    Exponential: refuses digraphs larger than the cap (max_n argument, else
    the KK_MAX_N environment variable, else 16)."""
    if k < 2:
        raise PreconditionError(f"kernel order must be >= 2, got {k}")
    cap = _oracle_cap(max_n)
    if d.n > cap:
        raise PreconditionError(f"oracle cap exceeded: n={d.n} > cap={cap}")
    if d.n == 0:
        return KernelCertificate(
            kind=CertificateKind.K_KERNEL, vertices=frozenset(), k=k, validated=True
        )
    # Bitmask prefilters over all-pairs distances; the winner is re-checked
    # against the certificate definition.
    dist = [distances_from(d, v) for v in range(d.n)]
    absorb: list[int] = []  # y-mask per x: d(x, y) <= k-1
    compat: list[int] = []  # y-mask per x: x, y may share a k-independent set
    for x in range(d.n):
        a = 0
        cm = 0
        for y in range(d.n):
            if dist[x][y] <= k - 1:
                a |= 1 << y
            if y != x and dist[x][y] >= k and dist[y][x] >= k:
                cm |= 1 << y
        absorb.append(a)
        compat.append(cm)
    for size in range(1, d.n + 1):
        for combo in combinations(range(d.n), size):
            mask = 0
            independent = True
            for v in combo:
                if mask & ~compat[v]:
                    independent = False
                    break
                mask |= 1 << v
            if not independent:
                continue
            if any(
                not (absorb[x] & mask)
                for x in range(d.n)
                if not (mask >> x) & 1
            ):
                continue
            cert = KernelCertificate(
                kind=CertificateKind.K_KERNEL,
                vertices=frozenset(combo),
                k=k,
                validated=False,
            )
            assert validate_certificate(d, cert)
            return replace(cert, validated=True)
    return None


def c3_gadget(d: Digraph) -> Composition:
    """The composition of a directed triangle with three copies of d. It has
    a 3-kernel exactly when d does, which transfers 3-kernel hardness to
    semicomplete compositions."""
    if d.n == 0:
        raise PreconditionError("gadget factor must be nonempty")
    outer = build_digraph(3, [(0, 1), (1, 2), (2, 0)])
    return compose(outer, (d, d, d))
