"""Named example objects: covers, complexes, posets and poset maps."""
from __future__ import annotations

from .complexes import SimplicialComplex, boundary_of_simplex, union
from .errors import InputError
from .nerves import IndexedCover
from .posets import Poset, PosetMap

HEXAGON = ["e1", "e2", "e3", "e4", "e5", "e6"]


def _cone(apex: str, path: list[str], closed: bool = False) -> SimplicialComplex:
    pts = path + [path[0]] if closed else path
    return SimplicialComplex([(apex, a, b) for a, b in zip(pts, pts[1:])])


def _cover(members: dict, ambient: SimplicialComplex | None = None) -> IndexedCover:
    amb = ambient if ambient is not None else union(*members.values())
    return IndexedCover(amb, list(members), members)


def fig1() -> IndexedCover:
    """2-sphere (two hexagonal cones) plus an equatorial disk split into three sectors."""
    return _cover({
        "D+": _cone("N", HEXAGON, closed=True),
        "D-": _cone("S", HEXAGON, closed=True),
        "A": _cone("c", ["e1", "e2", "e3"]),
        "B": _cone("c", ["e3", "e4", "e5"]),
        "C": _cone("c", ["e5", "e6", "e1"]),
    })


def square_circle() -> IndexedCover:
    """4-cycle 1-2-3-4 covered by two paths meeting in the vertices 2 and 4."""
    return _cover({
        "u": SimplicialComplex([("1", "2"), ("1", "4")]),
        "w": SimplicialComplex([("2", "3"), ("3", "4")]),
    })


def hollow_triangle() -> IndexedCover:
    return _cover({
        "ab": SimplicialComplex([("a", "b")]),
        "ac": SimplicialComplex([("a", "c")]),
        "bc": SimplicialComplex([("b", "c")]),
    })


def singleton() -> IndexedCover:
    X = SimplicialComplex([("a", "b"), ("b", "c")])
    return _cover({"x": X})


def two_overlap() -> IndexedCover:
    """Two members with connected overlap."""
    return _cover({
        "a": SimplicialComplex([("1", "2"), ("2", "3")]),
        "b": SimplicialComplex([("2", "3"), ("3", "4")]),
    })


def rp2() -> SimplicialComplex:
    """Six-vertex real projective plane."""
    return SimplicialComplex([tuple(t) for t in
                              "124 126 135 136 145 234 235 256 346 456".split()])


def square_circle_poset() -> Poset:
    return Poset("abcd", [("a", "c"), ("b", "c"), ("a", "d"), ("b", "d")])


def b3() -> Poset:
    """Boolean lattice on three atoms without its top and bottom."""
    return Poset(["1", "2", "3", "12", "13", "23"],
                 [("1", "12"), ("2", "12"), ("1", "13"), ("3", "13"), ("2", "23"), ("3", "23")])


def boolean3() -> Poset:
    """Full Boolean lattice on three atoms ("0" is the empty set)."""
    rel = [("0", "1"), ("0", "2"), ("0", "3"), ("1", "12"), ("2", "12"), ("1", "13"), ("3", "13"),
           ("2", "23"), ("3", "23"), ("12", "123"), ("13", "123"), ("23", "123")]
    return Poset(["0", "1", "2", "3", "12", "13", "23", "123"], rel)


def chain_poset(k: int) -> Poset:
    els = [str(i) for i in range(k)]
    return Poset(els, list(zip(els, els[1:])))


def s0() -> Poset:
    return Poset(["+", "-"])


def quillen_base() -> Poset:
    return Poset(["0", "0'", "1", "2"], [("0", "1"), ("0'", "1"), ("1", "2")])


def quillen_assignment() -> dict:
    pt = Poset(["*"])
    return {"0": s0(), "0'": s0(), "1": pt, "2": s0()}


def quillen_counterexample() -> PosetMap:
    from .fibers import pq_join

    return pq_join(quillen_base(), quillen_assignment())[1]


def chain_covex() -> IndexedCover:
    from .fibers import covex_cover

    return covex_cover(chain_poset(3))


COVERS = {
    "fig1": fig1,
    "square-circle": square_circle,
    "hollow-triangle": hollow_triangle,
    "singleton": singleton,
    "two-overlap": two_overlap,
    "chain-covex": chain_covex,
}

COMPLEXES = {
    "rp2": rp2,
    "sphere2": lambda: boundary_of_simplex(["a", "b", "c", "d"]),
}

POSETS = {
    "square-circle-poset": square_circle_poset,
    "b3": b3,
    "quillen-base": quillen_base,
    "chain3": lambda: chain_poset(3),
    "boolean3": boolean3,
}

def boolean3_identity() -> PosetMap:
    return PosetMap.identity(boolean3())


def chain3_to_point() -> PosetMap:
    P = chain_poset(3)
    return PosetMap(P, Poset(["*"]), {x: "*" for x in P.elements})


POSET_MAPS = {
    "quillen-counterexample": quillen_counterexample,
    "boolean3-identity": boolean3_identity,
    "chain3-to-point": chain3_to_point,
}


def names() -> list[str]:
    out = list(COVERS) + [f"{c}-ambient" for c in COVERS] + list(COMPLEXES) + list(POSETS) + list(POSET_MAPS)
    return sorted(out)


def cover(name: str) -> IndexedCover:
    if name not in COVERS:
        raise InputError(f"unknown cover fixture {name!r}; known: {sorted(COVERS)}")
    return COVERS[name]()


def complex_(name: str) -> SimplicialComplex:
    if name.endswith("-ambient") and name[:-8] in COVERS:
        return COVERS[name[:-8]]().ambient
    if name in COMPLEXES:
        return COMPLEXES[name]()
    raise InputError(f"unknown complex fixture {name!r}")


def poset(name: str) -> Poset:
    if name in POSETS:
        return POSETS[name]()
    raise InputError(f"unknown poset fixture {name!r}; known: {sorted(POSETS)}")


def poset_map(name: str) -> PosetMap:
    if name in POSET_MAPS:
        return POSET_MAPS[name]()
    raise InputError(f"unknown poset-map fixture {name!r}; known: {sorted(POSET_MAPS)}")


def fixture(name: str):
    """Any fixture by name."""
    for table, get in ((COVERS, cover), (POSETS, poset), (POSET_MAPS, poset_map)):
        if name in table:
            return get(name)
    return complex_(name)
