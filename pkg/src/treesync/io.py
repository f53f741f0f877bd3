"""GraphFile text format and the small flag mini-languages of the CLI.

GraphFile: '#' starts a comment, blank lines are ignored, the first remaining
line is "n m", followed by exactly m lines "u v" with 1-indexed ids.
"""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Iterable, TextIO

from .errors import ConfigError, ParseError
from .graph import Graph

VERSION = "0.1.0"


def _content_lines(text: str) -> Iterable[tuple[int, list[str]]]:
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def _ints(tokens: list[str], lineno: int, what: str) -> tuple[int, int]:
    if len(tokens) != 2:
        raise ParseError(f"expected two integers for {what}, got {len(tokens)} fields", lineno)
    try:
        return int(tokens[0]), int(tokens[1])
    except ValueError:
        raise ParseError(f"non-integer field in {what}", lineno) from None


def parse_graph(text: str) -> Graph:
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError("missing header line 'n m'")
    lineno, tokens = lines[0]
    n, m = _ints(tokens, lineno, "header 'n m'")
    if n <= 0:
        raise ParseError(f"vertex count must be positive, got {n}", lineno)
    if m < 0:
        raise ParseError(f"edge count must be non-negative, got {m}", lineno)
    body = lines[1:]
    if len(body) != m:
        where = body[m][0] if len(body) > m else (body[-1][0] if body else lineno)
        raise ParseError(f"header announces {m} edges but {len(body)} edge lines follow", where)
    seen = set()
    edges = []
    for lineno, tokens in body:
        u, v = _ints(tokens, lineno, "edge 'u v'")
        if not (1 <= u <= n and 1 <= v <= n):
            raise ParseError(f"vertex id outside 1..{n}", lineno)
        if u == v:
            raise ParseError(f"self-loop at vertex {u}", lineno)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ParseError(f"duplicate edge {u} {v}", lineno)
        seen.add(key)
        edges.append((u - 1, v - 1))
    return Graph(n, edges)


def read_graph(path: str | Path) -> Graph:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    return parse_graph(text)


def format_graph(g: Graph, comment: str | None = None) -> str:
    out = []
    if comment:
        out.extend(f"# {c}" for c in comment.splitlines())
    out.append(f"{g.n} {g.m}")
    out.extend(f"{u + 1} {v + 1}" for u, v in g.edges)
    return "\n".join(out) + "\n"


def write_graph(g: Graph, path: str | Path, comment: str | None = None) -> None:
    Path(path).write_text(format_graph(g, comment))


# --- flag mini-languages -----------------------------------------------------


def parse_classes(text: str, n: int) -> list[list[int]]:
    """``"1 2|3 4 5 6"`` -> 0-indexed classes; unlisted vertices stay singletons."""
    classes = []
    seen = set()
    for chunk in text.split("|"):
        ids = chunk.replace(",", " ").split()
        if not ids:
            continue
        klass = []
        for tok in ids:
            try:
                v = int(tok)
            except ValueError:
                raise ConfigError(f"bad vertex id '{tok}' in --classes") from None
            if not 1 <= v <= n:
                raise ConfigError(f"vertex {v} in --classes outside 1..{n}")
            if v in seen:
                raise ConfigError(f"vertex {v} listed twice in --classes")
            seen.add(v)
            klass.append(v - 1)
        classes.append(klass)
    return classes


def parse_beta(items: Iterable[str]) -> dict[int, float]:
    """``["1=1", "2=0.5"]`` -> {1: 1.0, 2: 0.5}."""
    out = {}
    for item in items:
        for tok in item.replace(",", " ").split():
            if "=" not in tok:
                raise ConfigError(f"--beta entries look like deg=value, got '{tok}'")
            d, val = tok.split("=", 1)
            try:
                out[int(d)] = _finite_float(val)
            except ValueError:
                raise ConfigError(f"bad --beta entry '{tok}'") from None
    return out


def _finite_float(text: str) -> float:
    x = float(text)
    if not math.isfinite(x):
        raise ValueError(text)
    return x


def parse_field(text: str) -> tuple[str, dict[str, float]]:
    """``"linear:alpha=0,beta1=1"`` -> ("linear", {"alpha": 0.0, "beta1": 1.0})."""
    name, _, rest = text.partition(":")
    params = {}
    for tok in rest.split(","):
        tok = tok.strip()
        if not tok:
            continue
        if "=" not in tok:
            raise ConfigError(f"field parameters look like key=value, got '{tok}'")
        k, v = tok.split("=", 1)
        try:
            params[k.strip()] = _finite_float(v)
        except ValueError:
            raise ConfigError(f"bad value in field parameter '{tok}'") from None
    return name.strip(), params


def parse_pack(text: str, n: int) -> list[tuple[int, list[int]]]:
    """``"2:4,5;3:6,7"`` -> [(1, [3, 4]), (2, [5, 6])] (0-indexed)."""
    out = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        center, sep, leaves = chunk.partition(":")
        if not sep:
            raise ConfigError(f"--pack entries look like center:leaf,leaf; got '{chunk}'")
        try:
            c = int(center)
            ls = [int(x) for x in leaves.replace(",", " ").split()]
        except ValueError:
            raise ConfigError(f"bad vertex id in --pack entry '{chunk}'") from None
        for v in [c] + ls:
            if not 1 <= v <= n:
                raise ConfigError(f"vertex {v} in --pack outside 1..{n}")
        out.append((c - 1, [l - 1 for l in ls]))
    if not out:
        raise ConfigError("--pack is empty")
    return out


def parse_vector(text: str, n: int) -> list[float]:
    try:
        vals = [_finite_float(t) for t in text.replace(",", " ").split()]
    except ValueError:
        raise ConfigError("--x0 must be a list of finite numbers") from None
    if len(vals) != n:
        raise ConfigError(f"--x0 has {len(vals)} entries but the graph has {n} vertices")
    return vals


def dump_json(obj, out: TextIO | None = None) -> str:
    text = json.dumps(obj, sort_keys=True, indent=2, default=_json_default)
    if out is not None:
        out.write(text + "\n")
    return text


def _json_default(o):
    if hasattr(o, "tolist"):
        return o.tolist()
    if isinstance(o, complex):
        return [o.real, o.imag]
    raise TypeError(f"cannot serialize {type(o).__name__}")
