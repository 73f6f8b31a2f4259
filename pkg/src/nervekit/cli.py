"""Command-line interface: constructions, homology, and verifiers with JSON reports.

Exit codes: 0 every check passed, 1 some check failed, 2 input error.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import fixtures
from .cech import cech_delta, same_homology, verify_nerve_theorem
from .complexes import SimplicialComplex
from .cutsets import (gamma_matches_vbar, h1_poset, h1_rcomplex, is_cutset, pi1_abelianized, r_complex,
                      star_cover)
from .errors import InputError
from .fibers import (chain_cover, covex_cover, detection_check, essential_chains, pq_join, upcone_cover,
                     verify_fiber)
from .generate import random_small_poset, rng_for
from .homology import (Coefficients, acyclicity_certificate, complex_homology, induced_map, poset_homology,
                       range_compare, homology, normalized_chain_complex)
from .io import load, save
from .nerves import (IndexedCover, completed_nerve, completed_nerve_sset, completion, eta_fiber_mismatches,
                     eta_map, grothendieck_model, hypothesis_check, is_complete, nerve, vbar)
from .posets import Poset, PosetMap, order_complex
from .report import PASS, SKIPPED, Check, overall, sorted_checks, status
from .tokens import token_str

DEFAULT_SEED = 0


# -- input resolution ------------------------------------------------------------

def _looks_like_path(spec: str) -> bool:
    return spec.endswith(".json") or "/" in spec or "\\" in spec


def _load_kind(spec: str, kind: type, label: str):
    if Path(spec).is_file() or _looks_like_path(spec):
        m = load(spec)
        if isinstance(m.payload, kind):
            return m.payload
        if kind is SimplicialComplex and isinstance(m.payload, IndexedCover):
            return m.payload.ambient
        raise InputError(f"{spec}: expected a {label} manifest, got {m.format}")
    return None


def resolve_cover(spec: str) -> IndexedCover:
    return _load_kind(spec, IndexedCover, "cover") or fixtures.cover(spec)


def resolve_complex(spec: str) -> SimplicialComplex:
    got = _load_kind(spec, SimplicialComplex, "complex")
    return got if got is not None else fixtures.complex_(spec)


def resolve_poset(spec: str) -> Poset:
    got = _load_kind(spec, Poset, "poset")
    return got if got is not None else fixtures.poset(spec)


def resolve_map(spec: str) -> PosetMap:
    return _load_kind(spec, PosetMap, "poset map") or fixtures.poset_map(spec)


# -- helpers -------------------------------------------------------------------

def _homology_dict(H, upto: int) -> dict:
    return {"betti": H.profile(upto),
            "torsion": [[*H.torsion_at(k)] if H.computed(k) else None for k in range(upto + 1)],
            "coefficients": str(H.coeffs)}


def _ts(xs) -> list:
    return [token_str(x) for x in xs]


def _field(args) -> Coefficients:
    c = Coefficients.parse(args.coeffs)
    if not c.is_field:
        raise InputError("this command computes induced maps and needs field coefficients (q, f2, fp:<p>)")
    return c


def _maxdim(args, default: int) -> int:
    return default if args.maxdim is None else args.maxdim


# -- construction commands ----------------------------------------------------------

def cmd_nerve(args):
    cov = resolve_cover(args.cover)
    N = nerve(cov)
    top = _maxdim(args, max(N.dim, 0))
    H = complex_homology(N, args.coeffs, maxdim=top)
    res = {"facets": [_ts(f) for f in N.facets], "f_vector": list(N.f_vector()), "homology": _homology_dict(H, top)}
    return res, [], N


def cmd_completed_nerve(args):
    cov = resolve_cover(args.cover)
    cn = completed_nerve(cov)
    top = _maxdim(args, max(order_complex(cn).dim, 0))
    H = poset_homology(cn, args.coeffs, maxdim=top)
    S = completed_nerve_sset(cov, top + 1)
    HS = homology(normalized_chain_complex(S), args.coeffs)
    G = grothendieck_model(cov)
    checks = [
        Check("simplicial-set-agreement", status(same_homology(H, HS, top)),
              None if same_homology(H, HS, top) else {"betti_sset": HS.profile(top)}),
        Check("grothendieck-model", status(G.verify(cn)), None if G.verify(cn) else {"detail": "not isomorphic"}),
    ]
    res = {"elements": _ts(cn.elements), "relations": [_ts(r) for r in cn.cover_relations],
           "simplicial_set_counts": list(S.counts()), "homology": _homology_dict(H, top)}
    return res, checks, cn


def cmd_cech_delta(args):
    cov = resolve_cover(args.cover)
    top = _maxdim(args, 3)
    S = cech_delta(cov, top + 1)
    H = homology(normalized_chain_complex(S), args.coeffs)
    HN = poset_homology(completed_nerve(cov), args.coeffs, maxdim=top)
    ok = same_homology(H, HN, top)
    checks = [Check("completed-nerve-agreement", status(ok),
                    None if ok else {"betti_cech": H.profile(top), "betti_completed_nerve": HN.profile(top)})]
    res = {"nondegenerate_counts": list(S.counts()), "truncated_at": top + 1, "homology": _homology_dict(H, top),
           "identity_violations": len(S.identity_violations())}
    return res, checks, None


def cmd_completion(args):
    cov = resolve_cover(args.cover)
    comp = completion(cov)
    top = _maxdim(args, max(cov.ambient.dim, 0))
    H = poset_homology(comp.vhat, args.coeffs, maxdim=top)
    ok, wit = is_complete(comp.cover(cov.ambient))
    checks = [Check("complete", status(ok), None if ok else {"indices": _ts(wit)})]
    res = {"members": {n: [_ts(f) for f in C.facets] for n, C in comp.members.items()},
           "vhat_relations": [_ts(r) for r in comp.vhat.cover_relations],
           "vtilde_size": len(comp.vtilde),
           "c_available": comp.c is not None,
           "c_failure": None if comp.c_failure is None else _ts(comp.c_failure),
           "homology": _homology_dict(H, top)}
    return res, checks, comp.cover(cov.ambient)


def cmd_vbar(args):
    cov = resolve_cover(args.cover)
    vb = vbar(cov)
    top = _maxdim(args, max(order_complex(vb.poset).dim, 0))
    H = poset_homology(vb.poset, args.coeffs, maxdim=top)
    HN = poset_homology(completed_nerve(cov), args.coeffs, maxdim=top)
    ok = same_homology(H, HN, top)
    checks = [Check("completed-nerve-agreement", status(ok),
                    None if ok else {"betti_vbar": H.profile(top), "betti_completed_nerve": HN.profile(top)})]
    res = {"size": len(vb.poset), "homology": _homology_dict(H, top)}
    return res, checks, vb.poset


def cmd_homology(args):
    if bool(args.complex) == bool(args.poset):
        raise InputError("give exactly one of --complex or --poset")
    K = resolve_complex(args.complex) if args.complex else order_complex(resolve_poset(args.poset))
    top = _maxdim(args, max(K.dim, 0))
    if top < 0:
        raise InputError("--maxdim must be >= 0")
    H = complex_homology(K, args.coeffs, maxdim=top)
    res = {"f_vector": list(K.f_vector()), **_homology_dict(H, top)}
    return res, [], None


def cmd_eta(args):
    cov = resolve_cover(args.cover)
    coeffs = _field(args)
    e = eta_map(cov)
    top = _maxdim(args, max(cov.ambient.dim, 0) + 1)
    im = induced_map(e.simplicial_map, coeffs, top)
    level = max((m for m in range(top + 1) if im.is_acyclic_map(m)), default=-1)
    bad = eta_fiber_mismatches(cov, e)
    checks = [Check("quillen-fibers", status(not bad), [_fiber_name(x) for x in bad] or None)]
    res = {"degrees": [{"degree": d.degree, "rank": d.rank, "betti_source": d.dim_source,
                        "betti_target": d.dim_target, "iso": d.iso, "epi": d.epi} for d in im.degrees],
           "observed_acyclic_level": level}
    return res, checks, None


def _fiber_name(x) -> str:
    F, rep = x
    return ",".join(_ts(F)) + "/" + token_str(rep)


def cmd_cutset(args):
    P = resolve_poset(args.poset)
    X = _xlist(args, P)
    ok, wit = is_cutset(P, X)
    checks = [Check("cutset", status(ok), None if ok else {"maximal_chain": _ts(wit)})]
    res = {"is_cutset": ok}
    if ok:
        R = r_complex(P, X)
        g, h = pi1_abelianized(R), h1_poset(P)
        res.update({"r_complex": {"vertices": len(R.vertices), "edges": len(R.edges), "triangles": len(R.triangles)},
                    "pi1_abelianized": {"rank": g.rank, "torsion": list(g.torsion)},
                    "h1_order_complex": {"rank": h.rank, "torsion": list(h.torsion)}})
    return res, checks, None


def _xlist(args, P: Poset) -> list:
    if not args.x:
        raise InputError("--x is required (comma-separated elements)")
    return [x for x in args.x.split(",") if x]


def cmd_essential_chains(args):
    P = resolve_poset(args.poset)
    ec = essential_chains(P)
    checks = [Check("routes-agree", status(ec.agree), None if ec.agree else {
        "only_intersections": [_ts(sorted(c)) for c in ec.by_intersection - ec.by_fixed_point],
        "only_fixed_point": [_ts(sorted(c)) for c in ec.by_fixed_point - ec.by_intersection]})]
    return {"chains": [_ts(c) for c in ec.chains]}, checks, None


def cmd_gen(args):
    kind = args.kind
    if kind == "fixture":
        if not args.name:
            raise InputError("gen fixture needs a fixture name; known: " + ", ".join(fixtures.names()))
        obj = fixtures.fixture(args.name)
        return {"fixture": args.name, "type": type(obj).__name__}, [], obj
    if kind == "covex":
        P = resolve_poset(args.poset) if args.poset else fixtures.chain_poset(args.k)
        cov = covex_cover(P)
        H = complex_homology(cov.ambient, args.coeffs)
        return {"members": len(cov.index_order), "index_order": list(cov.index_order),
                "ambient_homology": _homology_dict(H, max(cov.ambient.dim, 0))}, [], cov
    if kind == "pq-join":
        P = resolve_poset(args.poset) if args.poset else fixtures.quillen_base()
        if args.poset is None and args.q == "fixture":
            Qs = fixtures.quillen_assignment()
        elif args.q in ("s0", "fixture"):
            Qs = {p: fixtures.s0() for p in P.elements}
        elif args.q == "point":
            Qs = {p: Poset(["*"]) for p in P.elements}
        else:
            rng = rng_for(args.seed)
            Qs = {p: random_small_poset(rng, 3, "q") for p in P.elements}
        PQ, pi = pq_join(P, Qs)
        return {"size": len(PQ), "q_sizes": {token_str(p): len(Qs[p]) for p in P.elements}}, [], pi
    raise InputError(f"unknown generator {kind!r}")


# -- verifiers -----------------------------------------------------------------

def v_nerve_theorem(args):
    cov = resolve_cover(args.cover)
    v = verify_nerve_theorem(cov, args.n, args.coeffs)
    res = {"n": args.n}
    if v.h_ambient is not None:
        top = max(args.n + 1, 0)
        res.update({"betti_ambient": v.h_ambient.profile(top), "betti_completed_nerve": v.h_nerve.profile(top),
                    "betti_cech": v.h_cech.profile(top)})
    return res, list(v.checks), None


def v_eta(args):
    cov = resolve_cover(args.cover)
    coeffs = _field(args)
    n = args.n
    e = eta_map(cov)
    checks = []
    hyp_ok = True
    for F in cov.nerve_faces():
        for rep, C in cov.components(F):
            cert = acyclicity_certificate(C, n, coeffs)
            hyp_ok &= cert.passed
            checks.append(Check(f"hypothesis/{','.join(_ts(F))}/{token_str(rep)}", status(cert.passed),
                                None if cert.passed else {"degree": cert.witness_degree, "detail": cert.detail},
                                {"required_acyclicity": n}))
    top = max(n + 1, 0)
    im = induced_map(e.simplicial_map, coeffs, top)
    for k in range(top + 1):
        d = im[k]
        need = "iso" if k <= n else "epi"
        ok = d.iso if need == "iso" else d.epi
        nums = {"rank": d.rank, "betti_source": d.dim_source, "betti_target": d.dim_target, "required": need}
        if hyp_ok:
            checks.append(Check(f"conclusion/H{k}", status(ok), None if ok else {"degree": k}, nums))
        else:
            checks.append(Check(f"conclusion/H{k}", SKIPPED, None, dict(nums, observed=ok,
                                                                        reason="uniform hypothesis failed")))
    bad = eta_fiber_mismatches(cov, e)
    checks.append(Check("quillen-fibers", status(not bad), [_fiber_name(x) for x in bad] or None))
    graded = hypothesis_check(cov, n, coeffs).passed
    observed = max((m for m in range(top + 1) if im.is_acyclic_map(m)), default=-1)
    return {"n": n, "graded_hypothesis": graded, "observed_acyclic_level": observed}, checks, None


def v_fiber(args):
    f = resolve_map(args.map)
    v = verify_fiber(f, args.mode, args.n, _field(args))
    return {"mode": args.mode, "n": args.n, "hypotheses_passed": v.hypotheses_passed,
            "conclusion_observed": v.conclusion_passed}, list(v.checks), None


def v_cutset(args):
    P = resolve_poset(args.poset)
    X = _xlist(args, P)
    ok, wit = is_cutset(P, X)
    checks = [Check("cutset", status(ok), None if ok else {"maximal_chain": _ts(wit)})]
    if not ok:
        return {"is_cutset": False}, checks, None
    cov = star_cover(P, X)
    for x in cov.index_order:
        m = cov.members[x]
        cert = acyclicity_certificate(m, max(m.dim, 0), args.coeffs)
        checks.append(Check(f"star-acyclic/{token_str(x)}", status(cert.passed),
                            None if cert.passed else {"degree": cert.witness_degree}))
    gv = gamma_matches_vbar(P, X)
    checks.append(Check("gamma-vbar-isomorphism", status(gv), None if gv else {"detail": "not isomorphic"}))
    res = {"is_cutset": True}
    if len(order_complex(P).vertices) and _connected(P):
        R = r_complex(P, X)
        g1, g2, h = pi1_abelianized(R), pi1_abelianized(R, search="dfs", root=R.vertices[-1]), h1_poset(P)
        hr = h1_rcomplex(R)
        same = (g1.rank, g1.torsion) == (h.rank, h.torsion)
        checks.append(Check("h1-agreement", status(same), None if same else {
            "pi1_abelianized": [g1.rank, list(g1.torsion)], "h1_order_complex": [h.rank, list(h.torsion)]},
            {"rank": h.rank, "torsion": list(h.torsion)}))
        tree = (g1.rank, g1.torsion) == (g2.rank, g2.torsion) == (hr.rank, hr.torsion)
        checks.append(Check("tree-independence", status(tree), None if tree else {
            "bfs": [g1.rank, list(g1.torsion)], "dfs": [g2.rank, list(g2.torsion)]}))
        res["r_complex"] = {"vertices": len(R.vertices), "edges": len(R.edges), "triangles": len(R.triangles)}
    else:
        checks.append(Check("h1-agreement", SKIPPED, None, {"reason": "poset not connected"}))
    return res, checks, None


def _connected(P: Poset) -> bool:
    from .posets import poset_components

    return len(poset_components(P)) == 1


def v_detection(args):
    f = resolve_map(args.map)
    Q = f.codomain
    cov = chain_cover(Q) if args.cover_kind == "chains" else upcone_cover(Q)
    v = detection_check(f.simplicial(), cov, args.n, _field(args))
    return {"n": args.n, "cover": args.cover_kind, "hypotheses_passed": v.hypotheses_passed,
            "conclusion_observed": v.conclusion_passed}, list(v.checks), None


def v_completion(args):
    cov = resolve_cover(args.cover)
    n = args.n
    comp = completion(cov)
    ok, wit = is_complete(comp.cover(cov.ambient))
    checks = [Check("complete", status(ok), None if ok else {"indices": _ts(wit)})]
    hyp_ok = True
    for name, C in comp.members.items():
        cert = acyclicity_certificate(C, n, args.coeffs)
        hyp_ok &= cert.passed
        checks.append(Check(f"hypothesis/{name}", status(cert.passed),
                            None if cert.passed else {"degree": cert.witness_degree, "detail": cert.detail},
                            {"required_acyclicity": n}))
    if comp.c is None:
        checks.append(Check("c-map", SKIPPED, None, {"reason": "disconnected intersection",
                                                     "simplex": _ts(comp.c_failure)}))
    else:
        checks.append(Check("c-map", PASS, None, {"size": len(comp.vtilde)}))
    top = max(n + 1, 0)
    res = {"n": n, "members": len(comp.members)}
    if hyp_ok:
        hx = complex_homology(cov.ambient, args.coeffs, maxdim=top)
        hv = poset_homology(comp.vhat, args.coeffs, maxdim=top)
        rc = range_compare(hx, hv, n)
        checks.append(Check("conclusion/range", status(rc.passed),
                            [{"degree": i.degree, "kind": i.kind} for i in rc.failures()] or None,
                            {"betti_ambient": hx.profile(top), "betti_vhat": hv.profile(top)}))
    else:
        checks.append(Check("conclusion/range", SKIPPED, None, {"reason": "hypotheses failed"}))
    return res, checks, None


VERIFIERS = {"nerve-theorem": v_nerve_theorem, "eta": v_eta, "fiber": v_fiber, "cutset": v_cutset,
             "detection": v_detection, "completion": v_completion}


# -- parser ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--coeffs", default="q", help="q, z, f2 or fp:<p> (default q)")
    common.add_argument("--n", type=int, default=1, help="connectivity parameter (default 1)")
    common.add_argument("--maxdim", type=int, default=None, help="highest homology degree to report")
    common.add_argument("--out", default=None, help="write the constructed object as a manifest")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for random generators")

    p = argparse.ArgumentParser(prog="nervekit", description="Nerve constructions and exact homology checks.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, *opts, parent=sub, help=None):
        sp = parent.add_parser(name, parents=[common], help=help)
        for o in opts:
            sp.add_argument(f"--{o}", default=None)
        sp.set_defaults(func=func)
        return sp

    add("nerve", cmd_nerve, "cover", help="Borsuk nerve of a cover")
    add("completed-nerve", cmd_completed_nerve, "cover", help="completed nerve poset")
    add("cech-delta", cmd_cech_delta, "cover", help="discrete Čech complex (truncated)")
    add("completion", cmd_completion, "cover", help="completion of a cover")
    add("vbar", cmd_vbar, "cover", help="poset of intersection components")
    add("homology", cmd_homology, "complex", "poset", help="homology of a complex or poset")
    add("eta", cmd_eta, "cover", help="induced map of eta on homology")
    add("cutset", cmd_cutset, "poset", "x", help="cutset data and R(P, X)")
    add("essential-chains", cmd_essential_chains, "poset", help="essential chains, two ways")
    g = add("gen", cmd_gen, "poset", "name", help="generate fixtures, pq-joins and covex covers")
    g.add_argument("kind", choices=["fixture", "pq-join", "covex"])
    g.add_argument("fixture_name", nargs="?", default=None)
    g.add_argument("--k", type=int, default=3, help="chain length for covex")
    g.add_argument("--q", default="fixture", choices=["fixture", "s0", "point", "random"],
                   help="posets Q_p for pq-join")

    v = sub.add_parser("verify", help="run a verifier")
    vs = v.add_subparsers(dest="verifier", required=True)
    add("nerve-theorem", v_nerve_theorem, "cover", parent=vs)
    add("eta", v_eta, "cover", parent=vs)
    f = add("fiber", v_fiber, "map", parent=vs)
    f.add_argument("--mode", choices=["quillen", "copo", "achain"], default="achain")
    add("cutset", v_cutset, "poset", "x", parent=vs)
    d = add("detection", v_detection, "map", parent=vs)
    d.add_argument("--cover-kind", choices=["chains", "upcones"], default="chains")
    add("completion", v_completion, "cover", parent=vs)
    return p


def _require(args, *names):
    for n in names:
        if getattr(args, n, None) is None:
            raise InputError(f"--{n.replace('_', '-')} is required")


REQUIRED = {cmd_nerve: ("cover",), cmd_completed_nerve: ("cover",), cmd_cech_delta: ("cover",),
            cmd_completion: ("cover",), cmd_vbar: ("cover",), cmd_eta: ("cover",), cmd_cutset: ("poset",),
            cmd_essential_chains: ("poset",), v_nerve_theorem: ("cover",), v_eta: ("cover",), v_fiber: ("map",),
            v_cutset: ("poset",), v_detection: ("map",), v_completion: ("cover",)}


def run(argv: list[str]) -> tuple[int, dict]:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "kind", None) == "fixture" and args.name is None:
        args.name = args.fixture_name
    t0 = time.perf_counter()
    report: dict = {"command": ["nervekit", *argv]}
    try:
        _require(args, *REQUIRED.get(args.func, ()))
        Coefficients.parse(args.coeffs)
        result, checks, obj = args.func(args)
        if args.out and obj is not None:
            save(obj, args.out, {"name": " ".join(argv)})
    except InputError as e:
        report.update({"error": str(e), "overall": "error", "checks": [],
                       "timing": {"seconds": round(time.perf_counter() - t0, 6)}})
        return 2, report
    checks = sorted_checks(checks)
    report.update({"result": result, "checks": [c.as_dict() for c in checks], "overall": overall(checks),
                   "timing": {"seconds": round(time.perf_counter() - t0, 6)}})
    return (0 if report["overall"] == PASS else 1), report


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    code, report = run(argv)
    print(json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False))
    return code


if __name__ == "__main__":
    sys.exit(main())
