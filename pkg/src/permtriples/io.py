"""JSON file formats shared by every command.

Group:   {"degree": n, "generators": ["(1 2 3)", "(1 2)"]}
Triple:  {"group": <group>, "h_generators": ["(2 3)"]}
Catalog: {"degree": n, "dedup": "conjugacy" | "none", "count": k, "groups": [<group>, ...]}

Points are 1-based in every file.
"""

from __future__ import annotations

import json
from math import factorial, lcm
from pathlib import Path

from .algorithms import GroupCatalog
from .core import PermGroup, format_cycles, parse_cycles
from .errors import CycleParseError, InputError
from .triples import Triple, make_triple


def group_to_json(group: PermGroup) -> dict:
    return {"degree": group.degree, "generators": [format_cycles(g) for g in group.generators]}


def catalog_to_json(catalog: GroupCatalog) -> dict:
    return {
        "degree": catalog.degree,
        "dedup": "conjugacy" if catalog.dedup_mode == "up-to-conjugacy" else "none",
        "count": len(catalog),
        "groups": [group_to_json(g) for g in catalog],
    }


def triple_to_json(t: Triple) -> dict:
    return {"group": group_to_json(t.G), "h_generators": [format_cycles(h) for h in t.H.generators]}


def _line_of(raw: str | None, token: str) -> int | None:
    if raw is None:
        return None
    pos = raw.find(json.dumps(token))
    if pos < 0:
        return None
    return raw.count("\n", 0, pos) + 1


def _where(source: str | None, raw: str | None, token: str | None = None) -> str:
    if source is None:
        return ""
    line = _line_of(raw, token) if token is not None else None
    return f"{source}:{line}: " if line else f"{source}: "


def _parse_generators(texts, degree: int, source=None, raw=None, field="generators"):
    if not isinstance(texts, list):
        raise InputError(f"{_where(source, raw)}'{field}' must be a list of cycle strings")
    gens = []
    for text in texts:
        if not isinstance(text, str):
            raise InputError(f"{_where(source, raw)}'{field}' entry {text!r} is not a string")
        try:
            gens.append(parse_cycles(text, degree))
        except CycleParseError as exc:
            raise InputError(f"{_where(source, raw, text)}bad generator {text!r}: {exc}") from exc
    return gens


def group_from_json(obj, source: str | None = None, raw: str | None = None) -> PermGroup:
    if not isinstance(obj, dict):
        raise InputError(f"{_where(source, raw)}group must be a JSON object")
    for key in ("degree", "generators"):
        if key not in obj:
            raise InputError(f"{_where(source, raw)}missing field '{key}'")
    degree = obj["degree"]
    if not isinstance(degree, int) or isinstance(degree, bool) or degree < 1:
        raise InputError(f"{_where(source, raw)}'degree' must be a positive integer, got {degree!r}")
    return PermGroup(degree, _parse_generators(obj["generators"], degree, source, raw))


def triple_from_json(obj, source: str | None = None, raw: str | None = None) -> Triple:
    if not isinstance(obj, dict):
        raise InputError(f"{_where(source, raw)}triple must be a JSON object")
    for key in ("group", "h_generators"):
        if key not in obj:
            raise InputError(f"{_where(source, raw)}missing field '{key}'")
    G = group_from_json(obj["group"], source, raw)
    H = PermGroup(G.degree, _parse_generators(obj["h_generators"], G.degree, source, raw, "h_generators"))
    return make_triple(G, H)


def _load(path) -> tuple[object, str]:
    path = Path(path)
    try:
        raw = path.read_text()
    except OSError as exc:
        raise InputError(f"{path}: cannot read file: {exc.strerror}") from exc
    try:
        return json.loads(raw), raw
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}: invalid JSON: {exc.msg} (column {exc.colno})") from exc


def parse_group_file(path) -> PermGroup:
    obj, raw = _load(path)
    return group_from_json(obj, str(path), raw)


def parse_triple_file(path) -> Triple:
    obj, raw = _load(path)
    return triple_from_json(obj, str(path), raw)


def describe_group(group: PermGroup) -> str:
    """Short name for small groups: 1, Cn, V4, An, Sn, otherwise ``<order k>``."""
    n = group.order()
    if n == 1:
        return "1"
    moved = sorted({p for g in group.generators for p in g.support()})
    m = len(moved)
    if n == factorial(m):
        return f"S{m}"
    if m >= 3 and n == factorial(m) // 2 and all(_is_even(g) for g in group.generators):
        return f"A{m}"
    if n <= 5040:
        orders = [lcm(*(len(c) for c in e.cycles())) for e in group.elements() if not e.is_identity()]
        if n in orders:
            return f"C{n}"
        if n == 4:
            return "V4"
    return f"<order {n}>"


def _is_even(p) -> bool:
    return sum(len(c) - 1 for c in p.cycles()) % 2 == 0
