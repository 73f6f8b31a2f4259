import json
import subprocess
import sys

import pytest

from nervekit import cli, fixtures, io
from nervekit.nerves import hypothesis_check


def _run(*argv):
    return cli.run(list(argv))


def _strip(report):
    return {k: v for k, v in report.items() if k != "timing"}


def _checks(report):
    return {c["name"]: c for c in report["checks"]}


def test_fig1_nerve_theorem_passes_at_one():
    code, rep = _run("verify", "nerve-theorem", "--cover", "fig1", "--n", "1", "--coeffs", "q")
    assert code == 0 and rep["overall"] == "pass"
    assert rep["result"]["betti_ambient"] == [1, 0, 2]


def test_fig1_nerve_theorem_fails_at_two_with_the_disks():
    code, rep = _run("verify", "nerve-theorem", "--cover", "fig1", "--n", "2", "--coeffs", "q")
    assert code == 1
    fails = [c for c in rep["checks"] if c["status"] == "fail"]
    assert len(fails) == 1 and sorted(fails[0]["witness"]["indices"]) == ["D+", "D-"]


def test_fig1_integer_homology():
    code, rep = _run("homology", "--complex", "fig1-ambient", "--coeffs", "z", "--maxdim", "3")
    assert code == 0
    assert rep["result"]["betti"] == [1, 0, 2, 0] and rep["result"]["torsion"] == [[], [], [], []]


def test_rp2_torsion_over_the_integers():
    code, rep = _run("homology", "--complex", "rp2", "--coeffs", "z", "--maxdim", "2")
    assert code == 0 and rep["result"]["torsion"][1] == [2]


@pytest.mark.parametrize("argv", [
    ["nerve", "--cover", "no-such-fixture"],
    ["eta", "--cover", "fig1", "--coeffs", "z"],
    ["homology"],
    ["homology", "--complex", "rp2", "--poset", "b3"],
    ["homology", "--complex", "rp2", "--coeffs", "fp:4"],
    ["verify", "cutset", "--poset", "b3", "--x", "9"],
    ["verify", "fiber", "--map", "quillen-counterexample", "--mode", "quillen", "--coeffs", "z"],
    ["gen", "fixture"],
])
def test_input_errors_exit_two(argv):
    code, rep = _run(*argv)
    assert code == 2 and rep["overall"] == "error" and rep["error"]


def test_non_cutset_fails_with_a_chain_witness():
    code, rep = _run("cutset", "--poset", "b3", "--x", "1")
    assert code == 1
    assert _checks(rep)["cutset"]["witness"] == {"maximal_chain": ["2", "12"]}


def test_missing_file_exits_two(tmp_path):
    code, rep = _run("nerve", "--cover", str(tmp_path / "missing.json"))
    assert code == 2 and "cannot read" in rep["error"]


COMMANDS = [
    ["nerve", "--cover", "fig1"],
    ["completed-nerve", "--cover", "square-circle"],
    ["cech-delta", "--cover", "two-overlap", "--maxdim", "2"],
    ["completion", "--cover", "fig1"],
    ["vbar", "--cover", "fig1"],
    ["homology", "--poset", "square-circle-poset"],
    ["eta", "--cover", "hollow-triangle"],
    ["cutset", "--poset", "b3", "--x", "1,2,3"],
    ["essential-chains", "--poset", "quillen-base"],
    ["gen", "fixture", "fig1"],
    ["gen", "covex", "--k", "2"],
    ["gen", "pq-join"],
    ["gen", "pq-join", "--poset", "b3", "--q", "random", "--seed", "4"],
    ["verify", "eta", "--cover", "hollow-triangle", "--n", "1"],
    ["verify", "fiber", "--map", "quillen-counterexample", "--mode", "achain"],
    ["verify", "cutset", "--poset", "square-circle-poset", "--x", "a,b"],
    ["verify", "detection", "--map", "quillen-counterexample", "--cover-kind", "upcones"],
    ["verify", "completion", "--cover", "fig1", "--n", "1"],
]


@pytest.mark.parametrize("argv", COMMANDS, ids=[" ".join(a[:2]) for a in COMMANDS])
def test_reports_are_stable_and_well_formed(argv):
    code1, r1 = _run(*argv)
    code2, r2 = _run(*argv)
    assert code1 == code2 and code1 in (0, 1)
    assert json.dumps(_strip(r1), sort_keys=True) == json.dumps(_strip(r2), sort_keys=True)
    names = [c["name"] for c in r1["checks"]]
    assert names == sorted(names)
    assert all(c["witness"] is not None for c in r1["checks"] if c["status"] == "fail")
    assert r1["overall"] == ("fail" if any(c["status"] == "fail" for c in r1["checks"]) else "pass")
    assert set(r1["timing"]) == {"seconds"}


def test_known_values_of_constructions():
    _, rep = _run("homology", "--poset", "square-circle-poset")
    assert rep["result"]["betti"][:2] == [1, 1]
    code, rep = _run("verify", "fiber", "--map", "quillen-counterexample", "--mode", "quillen", "--n", "0")
    assert code == 1
    assert [c["name"] for c in rep["checks"] if c["status"] == "fail"] == ["hypothesis/fiber-over/2"]
    code, rep = _run("verify", "cutset", "--poset", "square-circle-poset", "--x", "a,b")
    assert code == 0


def test_eta_verifier_has_one_entry_per_hypothesis_item():
    cov = fixtures.hollow_triangle()
    code, rep = _run("verify", "eta", "--cover", "hollow-triangle", "--n", "1")
    hyp = [c for c in rep["checks"] if c["name"].startswith("hypothesis/")]
    n_items = sum(len(cov.components(F)) for F in cov.nerve_faces())
    assert len(hyp) == n_items
    concl = sorted(c["name"] for c in rep["checks"] if c["name"].startswith("conclusion/"))
    assert concl == ["conclusion/H0", "conclusion/H1", "conclusion/H2"]


def test_failed_hypotheses_skip_conclusions():
    code, rep = _run("verify", "eta", "--cover", "fig1", "--n", "2")
    st = {c["name"]: c["status"] for c in rep["checks"]}
    assert code == 1
    assert all(s == "skipped" for n, s in st.items() if n.startswith("conclusion/"))


def test_nerve_theorem_report_lists_every_hypothesis_item():
    cov = fixtures.fig1()
    _, rep = _run("verify", "nerve-theorem", "--cover", "fig1", "--n", "2")
    hyp = [c for c in rep["checks"] if c["name"].startswith("hypothesis/")]
    assert len(hyp) == len(hypothesis_check(cov, 2).items)


def test_out_writes_a_loadable_manifest(tmp_path):
    out = tmp_path / "pq.json"
    code, _ = _run("gen", "pq-join", "--out", str(out))
    assert code == 0
    f = io.load(out).payload
    assert len(f.domain) == 7
    code, rep = _run("verify", "fiber", "--map", str(out), "--mode", "achain", "--n", "1")
    assert code == 0


def test_cover_file_round_trips_through_the_cli(tmp_path):
    path = tmp_path / "fig1.json"
    io.save(fixtures.fig1(), path)
    a = _strip(_run("nerve", "--cover", str(path))[1])["result"]
    b = _strip(_run("nerve", "--cover", "fig1")[1])["result"]
    assert a == b
    _, rep = _run("homology", "--complex", str(path), "--coeffs", "z")
    assert rep["result"]["betti"][:3] == [1, 0, 2]


def test_console_entry_point_prints_json():
    proc = subprocess.run([sys.executable, "-m", "nervekit.cli", "verify", "nerve-theorem", "--cover", "fig1",
                           "--n", "2"], capture_output=True, text=True)
    assert proc.returncode == 1
    rep = json.loads(proc.stdout)
    assert rep["overall"] == "fail"
