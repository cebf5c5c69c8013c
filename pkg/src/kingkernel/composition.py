"""Compositions of digraphs.

A composition Q = T[H_1, ..., H_t] substitutes a factor digraph H_i for each
vertex u_i of the outer digraph T. Q keeps every factor's internal arcs and
adds all arcs from V(H_i) to V(H_j) whenever T has the arc u_i -> u_j.

The composition is semicomplete when T is, and strong semicomplete when T is
additionally strong (with t >= 2 and nonempty factors, which the constructor
enforces). Factors are never required to be semicomplete.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import NamedTuple

from .digraph import Digraph, build_digraph, classify_digraph, is_strong
from .errors import PreconditionError


class CompositionVertex(NamedTuple):
    """A flattened vertex located as (factor, inner); everything 0-based.
    Reports render factor indices 1-based to match the written convention."""

    factor: int
    inner: int
    flat: int


@dataclass(frozen=True)
class Composition:
    outer: Digraph
    factors: tuple[Digraph, ...]

    @property
    def t(self) -> int:
        return self.outer.n

    @cached_property
    def offsets(self) -> tuple[int, ...]:
        """Flat id of each factor's vertex 0."""
        offs = []
        acc = 0
        for h in self.factors:
            offs.append(acc)
            acc += h.n
        return tuple(offs)

    @property
    def total_vertices(self) -> int:
        return sum(h.n for h in self.factors)

    def flat_id(self, factor: int, inner: int) -> int:
        if not 0 <= factor < self.t:
            raise PreconditionError(f"factor {factor} out of range for t={self.t}")
        if not 0 <= inner < self.factors[factor].n:
            raise PreconditionError(
                f"inner vertex {inner} out of range for factor {factor}"
            )
        return self.offsets[factor] + inner

    def locate(self, flat: int) -> CompositionVertex:
        """Inverse of flat_id."""
        if not 0 <= flat < self.total_vertices:
            raise PreconditionError(
                f"flat id {flat} out of range for {self.total_vertices} vertices"
            )
        offs = self.offsets
        factor = bisect_right(offs, flat) - 1
        return CompositionVertex(factor=factor, inner=flat - offs[factor], flat=flat)


@dataclass(frozen=True)
class CompositionProfile:
    """Outer-digraph facts that decide which theorems apply to a composition."""

    outer_semicomplete: bool
    outer_strong: bool
    outer_sources: frozenset[int]
    outer_sinks: frozenset[int]

    @property
    def is_semicomplete_composition(self) -> bool:
        return self.outer_semicomplete

    @property
    def is_strong_semicomplete_composition(self) -> bool:
        return self.outer_semicomplete and self.outer_strong


def compose(outer: Digraph, factors: tuple[Digraph, ...] | list[Digraph]) -> Composition:
    """Validate and assemble a composition. Requires t >= 2 and every factor
    nonempty; factors may be arbitrary digraphs (an extension uses arcless
    ones)."""
    factors = tuple(factors)
    if outer.n < 2:
        raise PreconditionError(f"outer digraph needs at least 2 vertices, got {outer.n}")
    if len(factors) != outer.n:
        raise PreconditionError(
            f"expected {outer.n} factors, got {len(factors)}"
        )
    for i, h in enumerate(factors):
        if h.n < 1:
            raise PreconditionError(f"factor {i} is empty")
    return Composition(outer=outer, factors=factors)


@lru_cache(maxsize=1024)
def flatten(c: Composition) -> Digraph:
    """The composed digraph on sum(|V(H_i)|) vertices, factor blocks laid out
    in order: internal arcs shifted by the factor offset, plus a complete
    bundle V(H_i) x V(H_j) for every outer arc u_i -> u_j."""
    offs = c.offsets
    arcs: list[tuple[int, int]] = []
    for i, h in enumerate(c.factors):
        base = offs[i]
        for u, v in h.arcs():
            arcs.append((base + u, base + v))
    for i in range(c.t):
        for j in c.outer.out_adj[i]:
            for u in range(c.factors[i].n):
                for v in range(c.factors[j].n):
                    arcs.append((offs[i] + u, offs[j] + v))
    return build_digraph(c.total_vertices, arcs)


def composition_profile(c: Composition) -> CompositionProfile:
    cls = classify_digraph(c.outer)
    return CompositionProfile(
        outer_semicomplete=cls.is_semicomplete,
        outer_strong=cls.is_strong,
        outer_sources=cls.sources,
        outer_sinks=cls.sinks,
    )


def require_semicomplete_composition(c: Composition) -> CompositionProfile:
    profile = composition_profile(c)
    if not profile.outer_semicomplete:
        raise PreconditionError("outer digraph is not semicomplete")
    return profile


def require_strong_semicomplete_composition(c: Composition) -> CompositionProfile:
    profile = require_semicomplete_composition(c)
    if not profile.outer_strong:
        raise PreconditionError("outer digraph is not strong")
    return profile


def extension(outer: Digraph, sizes: tuple[int, ...] | list[int]) -> Composition:
    """Composition whose factors are arcless digraphs of the given sizes."""
    factors = tuple(build_digraph(s, []) for s in sizes)
    return compose(outer, factors)


# is_strong re-exported for callers that only need the outer check.
__all__ = [
    "Composition",
    "CompositionProfile",
    "CompositionVertex",
    "compose",
    "composition_profile",
    "extension",
    "flatten",
    "is_strong",
    "require_semicomplete_composition",
    "require_strong_semicomplete_composition",
]
