"""Reading and writing digraphs and compositions.

Text formats ('#' starts a comment, blank lines are ignored):

    digraph <n>            composition <t>
    <u> <v>                outer
    ...                    <i> <j>          arcs of the outer digraph
                           ...
                           factor 1 <n_1>   factors in order, 1-based
                           <u> <v>          arcs of factor 1
                           ...
                           factor 2 <n_2>
                           ...

JSON equivalents mirror the same structure: {"n": ..., "arcs": [[u, v], ...]}
for digraphs, {"t": ..., "outer": {...}, "factors": [{...}, ...]} for
compositions. Parsers auto-detect JSON input by a leading '{'.
"""

from __future__ import annotations

import json
from typing import Any, Iterator

from .composition import Composition, compose, flatten
from .digraph import Digraph, build_digraph
from .errors import FormatError, PreconditionError


def _significant_lines(text: str) -> Iterator[tuple[int, str]]:
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def _parse_arc(line: str, lineno: int, n: int, what: str) -> tuple[int, int]:
    parts = line.split()
    if len(parts) != 2:
        raise FormatError(f"expected '<u> <v>' arc in {what}, got {line!r}", lineno)
    try:
        u, v = int(parts[0]), int(parts[1])
    except ValueError:
        raise FormatError(f"non-numeric arc endpoint in {line!r}", lineno) from None
    if not (0 <= u < n and 0 <= v < n):
        raise FormatError(f"arc ({u}, {v}) out of range for n={n}", lineno)
    if u == v:
        raise FormatError(f"loop arc ({u}, {v})", lineno)
    return u, v


def _parse_count(token: str, lineno: int, what: str) -> int:
    try:
        value = int(token)
    except ValueError:
        raise FormatError(f"non-numeric {what} {token!r}", lineno) from None
    if value < 0:
        raise FormatError(f"negative {what} {value}", lineno)
    return value


def parse_digraph(text: str) -> Digraph:
    lines = list(_significant_lines(text))
    if not lines:
        raise FormatError("empty input, expected a 'digraph <n>' header")
    lineno, header = lines[0]
    parts = header.split()
    if len(parts) != 2 or parts[0] != "digraph":
        raise FormatError(f"expected 'digraph <n>' header, got {header!r}", lineno)
    n = _parse_count(parts[1], lineno, "vertex count")
    arcs = [_parse_arc(line, ln, n, "digraph") for ln, line in lines[1:]]
    return build_digraph(n, arcs)


def parse_composition(text: str) -> Composition:
    lines = list(_significant_lines(text))
    if not lines:
        raise FormatError("empty input, expected a 'composition <t>' header")
    lineno, header = lines[0]
    parts = header.split()
    if len(parts) != 2 or parts[0] != "composition":
        raise FormatError(
            f"expected 'composition <t>' header, got {header!r}", lineno
        )
    t = _parse_count(parts[1], lineno, "factor count")
    if t < 2:
        raise FormatError(f"composition needs t >= 2, got {t}", lineno)
    if len(lines) < 2 or lines[1][1] != "outer":
        where = lines[1][0] if len(lines) > 1 else lineno
        raise FormatError("expected 'outer' block after the header", where)

    outer_arcs: list[tuple[int, int]] = []
    factors: list[Digraph] = []
    factor_n: int | None = None
    factor_arcs: list[tuple[int, int]] = []

    def close_factor() -> None:
        if factor_n is not None:
            factors.append(build_digraph(factor_n, factor_arcs))

    idx = 2
    while idx < len(lines):
        ln, line = lines[idx]
        if line.startswith("factor"):
            parts = line.split()
            if len(parts) != 3 or parts[0] != "factor":
                raise FormatError(
                    f"expected 'factor <i> <n_i>', got {line!r}", ln
                )
            close_factor()
            i = _parse_count(parts[1], ln, "factor index")
            if i != len(factors) + 1:
                raise FormatError(
                    f"factor blocks must appear in order; expected factor "
                    f"{len(factors) + 1}, got {i}",
                    ln,
                )
            if i > t:
                raise FormatError(f"factor index {i} exceeds t={t}", ln)
            factor_n = _parse_count(parts[2], ln, "factor size")
            if factor_n < 1:
                raise FormatError(f"factor {i} must be nonempty", ln)
            factor_arcs = []
        elif factor_n is None:
            outer_arcs.append(_parse_arc(line, ln, t, "outer digraph"))
        else:
            factor_arcs.append(
                _parse_arc(line, ln, factor_n, f"factor {len(factors) + 1}")
            )
        idx += 1
    close_factor()
    if len(factors) != t:
        raise FormatError(
            f"expected {t} factor blocks, found {len(factors)}",
            lines[-1][0],
        )
    return compose(build_digraph(t, outer_arcs), tuple(factors))


def format_digraph(d: Digraph) -> str:
    out = [f"digraph {d.n}"]
    out.extend(f"{u} {v}" for u, v in d.arcs())
    return "\n".join(out) + "\n"


def format_composition(c: Composition) -> str:
    out = [f"composition {c.t}", "outer"]
    out.extend(f"{u} {v}" for u, v in c.outer.arcs())
    for i, h in enumerate(c.factors, start=1):
        out.append(f"factor {i} {h.n}")
        out.extend(f"{u} {v}" for u, v in h.arcs())
    return "\n".join(out) + "\n"


def digraph_to_json(d: Digraph) -> dict[str, Any]:
    return {"n": d.n, "arcs": [[u, v] for u, v in d.arcs()]}


def composition_to_json(c: Composition) -> dict[str, Any]:
    return {
        "t": c.t,
        "outer": digraph_to_json(c.outer),
        "factors": [digraph_to_json(h) for h in c.factors],
    }


def _digraph_from_obj(obj: Any, what: str) -> Digraph:
    if not isinstance(obj, dict) or "n" not in obj or "arcs" not in obj:
        raise FormatError(f"{what} must be an object with 'n' and 'arcs'")
    n = obj["n"]
    if not isinstance(n, int):
        raise FormatError(f"{what}: 'n' must be an integer, got {n!r}")
    arcs = obj["arcs"]
    if not isinstance(arcs, list):
        raise FormatError(f"{what}: 'arcs' must be a list")
    pairs: list[tuple[int, int]] = []
    for arc in arcs:
        if (
            not isinstance(arc, list)
            or len(arc) != 2
            or not all(isinstance(x, int) for x in arc)
        ):
            raise FormatError(f"{what}: bad arc entry {arc!r}")
        pairs.append((arc[0], arc[1]))
    try:
        return build_digraph(n, pairs)
    except PreconditionError as exc:
        raise FormatError(f"{what}: {exc}") from None


def digraph_from_json(obj: Any) -> Digraph:
    return _digraph_from_obj(obj, "digraph")


def composition_from_json(obj: Any) -> Composition:
    if not isinstance(obj, dict) or "outer" not in obj or "factors" not in obj:
        raise FormatError("composition must be an object with 'outer' and 'factors'")
    outer = _digraph_from_obj(obj["outer"], "outer digraph")
    raw_factors = obj["factors"]
    if not isinstance(raw_factors, list):
        raise FormatError("'factors' must be a list")
    factors = tuple(
        _digraph_from_obj(f, f"factor {i + 1}") for i, f in enumerate(raw_factors)
    )
    if "t" in obj and obj["t"] != len(factors):
        raise FormatError(f"'t' is {obj['t']} but {len(factors)} factors given")
    try:
        return compose(outer, factors)
    except PreconditionError as exc:
        raise FormatError(str(exc)) from None


def parse_any(text: str) -> Digraph | Composition:
    """Parse either object in either encoding, detecting JSON by a leading
    '{' and the text format by its header keyword."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise FormatError(f"bad JSON: {exc.msg}", exc.lineno) from None
        if isinstance(obj, dict) and "factors" in obj:
            return composition_from_json(obj)
        return digraph_from_json(obj)
    for _, line in _significant_lines(text):
        if line.startswith("composition"):
            return parse_composition(text)
        break
    return parse_digraph(text)


def to_dot(obj: Digraph | Composition) -> str:
    """GraphViz text. Compositions are flattened, with one cluster per
    factor."""
    lines = ["digraph G {"]
    if isinstance(obj, Composition):
        offs = obj.offsets
        for i, h in enumerate(obj.factors):
            lines.append(f"  subgraph cluster_{i} {{")
            lines.append(f'    label="factor {i + 1}";')
            for v in range(h.n):
                lines.append(f"    {offs[i] + v};")
            lines.append("  }")
        graph = flatten(obj)
    else:
        graph = obj
        for v in range(graph.n):
            lines.append(f"  {v};")
    for u, v in graph.arcs():
        lines.append(f"  {u} -> {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
