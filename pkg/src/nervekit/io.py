"""JSON manifests: complexes, posets, covers and poset maps (format tags ``nervekit-*-v1``).

Non-string tokens (tuples produced by constructions) are written through
:func:`~nervekit.tokens.token_str`, so such objects come back relabeled by
their printed names.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from .complexes import SimplicialComplex
from .errors import InputError
from .nerves import IndexedCover
from .posets import Poset, PosetMap
from .tokens import check_vertex_id, sort_tokens, token_key, token_str

COMPLEX = "nervekit-complex-v1"
POSET = "nervekit-poset-v1"
COVER = "nervekit-cover-v1"
POSETMAP = "nervekit-posetmap-v1"


@dataclass(frozen=True)
class Manifest:
    format: str
    payload: Any
    metadata: dict = field(default_factory=dict)


def _fail(where: str, msg: str):
    raise InputError(f"{where}: {msg}")


# -- encode ----------------------------------------------------------------------

# lists are sorted by printed name so that a reloaded object saves identically


def _names(xs) -> list:
    return sort_tokens(token_str(x) for x in xs)


def _simplex_list(K: SimplicialComplex) -> list:
    return sorted((_names(f) for f in K.facets), key=lambda f: [token_key(v) for v in f])


def encode_complex(K: SimplicialComplex) -> dict:
    return {"format": COMPLEX, "vertices": _names(K.vertices), "facets": _simplex_list(K)}


def encode_poset(P: Poset) -> dict:
    rels = sorted(([token_str(a), token_str(b)] for a, b in P.cover_relations),
                  key=lambda r: [token_key(v) for v in r])
    return {"format": POSET, "elements": _names(P.elements), "relations": rels}


def encode_cover(cov: IndexedCover) -> dict:
    return {"format": COVER, "space": encode_complex(cov.ambient),
            "index_order": [token_str(i) for i in cov.index_order],
            "members": {token_str(i): {"facets": _simplex_list(cov.members[i])} for i in cov.index_order}}


def encode_posetmap(f: PosetMap) -> dict:
    return {"format": POSETMAP, "domain": encode_poset(f.domain), "codomain": encode_poset(f.codomain),
            "map": {token_str(p): token_str(f.assignment[p]) for p in f.domain.elements}}


def encode(value, metadata: dict | None = None) -> dict:
    if isinstance(value, Manifest):
        metadata = {**value.metadata, **(metadata or {})}
        value = value.payload
    if isinstance(value, SimplicialComplex):
        doc = encode_complex(value)
    elif isinstance(value, Poset):
        doc = encode_poset(value)
    elif isinstance(value, IndexedCover):
        doc = encode_cover(value)
    elif isinstance(value, PosetMap):
        doc = encode_posetmap(value)
    else:
        raise InputError(f"cannot serialize {type(value).__name__}")
    if metadata:
        doc["metadata"] = metadata
    return doc


def dumps(value, metadata: dict | None = None) -> str:
    return json.dumps(encode(value, metadata), indent=2, sort_keys=True) + "\n"


def save(value, path: str | Path, metadata: dict | None = None) -> None:
    Path(path).write_text(dumps(value, metadata), encoding="utf-8")


# -- decode ----------------------------------------------------------------------

def _list(doc: dict, key: str, where: str) -> list:
    v = doc.get(key)
    if not isinstance(v, list):
        _fail(where, f"'{key}' must be a list")
    return v


def _ids(xs, where: str) -> list:
    out = []
    for n, x in enumerate(xs):
        try:
            out.append(check_vertex_id(x))
        except InputError as e:
            _fail(f"{where}[{n}]", str(e))
    return out


def decode_complex(doc: dict, where: str = "complex") -> SimplicialComplex:
    _expect(doc, COMPLEX, where)
    verts = _ids(_list(doc, "vertices", where), f"{where}.vertices")
    if len(set(verts)) != len(verts):
        _fail(f"{where}.vertices", "duplicate vertex")
    vs = set(verts)
    facets = []
    for n, f in enumerate(_list(doc, "facets", where)):
        loc = f"{where}.facets[{n}]"
        if not isinstance(f, list) or not f:
            _fail(loc, "a facet must be a nonempty list")
        ids = _ids(f, loc)
        if len(set(ids)) != len(ids):
            _fail(loc, "repeated vertex in facet")
        missing = [v for v in ids if v not in vs]
        if missing:
            _fail(loc, f"vertex {missing[0]!r} not listed in vertices")
        facets.append(ids)
    return SimplicialComplex(facets, verts)


def decode_poset(doc: dict, where: str = "poset") -> Poset:
    _expect(doc, POSET, where)
    els = _ids(_list(doc, "elements", where), f"{where}.elements")
    if len(set(els)) != len(els):
        _fail(f"{where}.elements", "duplicate element")
    rels = []
    for n, r in enumerate(_list(doc, "relations", where)):
        if not isinstance(r, list) or len(r) != 2:
            _fail(f"{where}.relations[{n}]", "a relation is a pair [a, b] meaning a < b")
        rels.append(tuple(r))
    try:
        return Poset(els, rels)
    except InputError as e:
        _fail(f"{where}.relations", str(e))


def decode_cover(doc: dict, where: str = "cover") -> IndexedCover:
    _expect(doc, COVER, where)
    space = doc.get("space")
    if not isinstance(space, dict):
        _fail(where, "'space' must be a complex object")
    X = decode_complex({"format": COMPLEX, **space}, f"{where}.space")
    order = _ids(_list(doc, "index_order", where), f"{where}.index_order")
    mems = doc.get("members")
    if not isinstance(mems, dict):
        _fail(where, "'members' must be an object keyed by index")
    members = {}
    for i in order:
        if i not in mems:
            _fail(f"{where}.members", f"no member for index {i!r}")
        m = mems[i]
        if not isinstance(m, dict) or not isinstance(m.get("facets"), list):
            _fail(f"{where}.members.{i}", "member must be an object with 'facets'")
        members[i] = decode_complex({"format": COMPLEX, "vertices": sorted({v for f in m["facets"] for v in f}),
                                     "facets": m["facets"]}, f"{where}.members.{i}")
    extra = set(mems) - set(order)
    if extra:
        _fail(f"{where}.members", f"index {sorted(extra)[0]!r} missing from index_order")
    try:
        return IndexedCover(X, order, members)
    except InputError as e:
        _fail(where, str(e))


def decode_posetmap(doc: dict, where: str = "posetmap") -> PosetMap:
    _expect(doc, POSETMAP, where)
    P = decode_poset({"format": POSET, **doc.get("domain", {})}, f"{where}.domain")
    Q = decode_poset({"format": POSET, **doc.get("codomain", {})}, f"{where}.codomain")
    m = doc.get("map")
    if not isinstance(m, dict):
        _fail(where, "'map' must be an object")
    try:
        return PosetMap(P, Q, m)
    except InputError as e:
        _fail(f"{where}.map", str(e))


def _expect(doc, tag: str, where: str) -> None:
    if not isinstance(doc, dict):
        _fail(where, "expected a JSON object")
    if doc.get("format") != tag:
        _fail(where, f"format tag {doc.get('format')!r}, expected {tag!r}")


DECODERS = {COMPLEX: decode_complex, POSET: decode_poset, COVER: decode_cover, POSETMAP: decode_posetmap}


def loads(text: str, where: str = "<input>") -> Manifest:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        _fail(where, f"JSON parse error at line {e.lineno} column {e.colno}: {e.msg}")
    if not isinstance(doc, dict):
        _fail(where, "expected a JSON object")
    tag = doc.get("format")
    if tag not in DECODERS:
        _fail(where, f"unknown format tag {tag!r}; known: {sorted(DECODERS)}")
    meta = doc.get("metadata", {})
    if not isinstance(meta, dict):
        _fail(f"{where}.metadata", "must be an object")
    return Manifest(tag, DECODERS[tag](doc, where), meta)


def load(path: str | Path) -> Manifest:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"{path}: cannot read ({e.strerror})") from None
    return loads(text, str(path))
