"""Text formats for posets, matchings and simplicial complexes."""

from __future__ import annotations

import json
from typing import Iterator

from .errors import ParseError
from .homology import SimplicialComplex
from .matching import Matching
from .poset import Poset, build_poset


def _lines(text: str) -> Iterator[tuple[int, str]]:
    for n, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield n, line


def _pair(line: str, n: int, sep: str) -> tuple[str, str]:
    parts = line.split(" ")
    if len(parts) != 3 or parts[1] != sep or not parts[0] or not parts[2]:
        raise ParseError(f"expected 'x {sep} y', got {line!r}", n)
    x, y = parts[0], parts[2]
    for z in (x, y):
        if "<" in z:
            raise ParseError(f"identifier {z!r} contains '<'", n)
    return x, y


def parse_poset(text: str) -> Poset:
    elements: list[str] | None = None
    covers: list[tuple[str, str]] = []
    seen: dict[tuple[str, str], int] = {}
    for n, line in _lines(text):
        if line.startswith("elements:"):
            if elements is not None:
                raise ParseError("second elements: header", n)
            if covers:
                raise ParseError("elements: header must precede the covers", n)
            elements = line[len("elements:"):].split()
            dup = {e for e in elements if elements.count(e) > 1}
            if dup:
                raise ParseError(f"duplicate element {sorted(dup)[0]}", n)
            continue
        pair = _pair(line, n, "<")
        if pair in seen:
            raise ParseError(f"duplicate cover {pair[0]} < {pair[1]} (first on line {seen[pair]})", n)
        seen[pair] = n
        covers.append(pair)
    if elements is not None:
        declared = set(elements)
        extra = sorted({z for c in covers for z in c} - declared)
        elements = elements + extra
    return build_poset(elements, covers)


def serialize_poset(X: Poset) -> str:
    out = ["elements: " + " ".join(X.elements)] if X.elements else []
    out += [f"{x} < {y}" for x, y in sorted(X.covers)]
    return "".join(line + "\n" for line in out)


def parse_matching(text: str) -> Matching:
    pairs = []
    for n, line in _lines(text):
        pair = _pair(line, n, "--")
        if pair in pairs:
            raise ParseError(f"duplicate pair {pair[0]} -- {pair[1]}", n)
        pairs.append(pair)
    return Matching.of(pairs)


def serialize_matching(M: Matching) -> str:
    return "".join(f"{x} -- {y}\n" for x, y in M)


def parse_complex(text: str) -> SimplicialComplex:
    facets = []
    for n, line in _lines(text):
        verts = line.split()
        if len(set(verts)) != len(verts):
            raise ParseError("repeated vertex in facet", n)
        facets.append(tuple(verts))
    return SimplicialComplex(None, facets)


def serialize_complex(K: SimplicialComplex) -> str:
    return "".join(" ".join(f) + "\n" for f in K.facets)


def dumps(obj, pretty: bool = False) -> str:
    """Stable JSON: sorted keys, no floats expected."""
    if pretty:
        return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False)
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
