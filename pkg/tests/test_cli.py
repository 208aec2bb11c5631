import json
import subprocess
import sys
from pathlib import Path

import pytest

from cgpetersen import cli
from cgpetersen.fixtures import doubled_k6, moment_curve_k6
from cgpetersen.catalog import Member, build
from cgpetersen.graph import enumerate_cycles
from cgpetersen.spatial import embedding_to_dict
from cgpetersen.verify import ConsistencyError, DerivationResult

DATA = Path(__file__).resolve().parent.parent / "data"


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    return code, json.loads(out)


def test_catalog_k6(capsys):
    code, d = run_json(capsys, "catalog", "K6")
    assert code == 0
    assert d["cycles"] == 197 and d["disjoint_pairs"] == 10
    assert d["cycle_counts"] == {"3": 20, "4": 45, "5": 72, "6": 60}


def test_catalog_p10_lengths(capsys):
    _, d = run_json(capsys, "catalog", "P10")
    assert set(d["cycle_counts"]) == {"5", "6", "8", "9"}


def test_catalog_all(capsys):
    _, d = run_json(capsys, "catalog")
    assert [m["member"] for m in d["members"]] == ["K6", "Q7", "Q8", "P7", "P8", "P9", "P10"]


def test_bad_member(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["catalog", "K7"])
    assert exc.value.code == 2
    assert "usage" in capsys.readouterr().err


def test_weights_table_p10(capsys):
    code, d = run_json(capsys, "weights", "P10", "--table")
    assert code == 0
    assert {(r["rule"], r["value"]) for r in d["rules"]} == {("G9", 1), ("G6", -2), ("G5", -1)}
    by_len = {}
    for w in d["weights"]:
        by_len.setdefault(len(w["cycle"]), set()).add(w["weight"])
    assert by_len == {5: {-1}, 6: {-2}, 8: {0}, 9: {1}}


def test_weights_check(capsys):
    code, d = run_json(capsys, "weights", "Q8", "--check")
    assert code == 0 and d["passed"]
    assert len(d["routes"]) == 3


def test_weights_check_failure_exit(capsys, monkeypatch):
    real = cli.derive_and_check_weights
    cycle = enumerate_cycles(build(Member.Q7))[0]

    def broken(routes):
        return [DerivationResult(r.route, [(cycle, 0, 1)], r.rules_hit) for r in real(routes)]

    monkeypatch.setattr(cli, "derive_and_check_weights", broken)
    code, d = run_json(capsys, "weights", "Q7", "--check")
    assert code == 1
    assert not d["passed"]
    assert "first_mismatch" in d["routes"][0]


def test_weights_derive_matches_table(capsys):
    for m in ("K6", "Q8", "P10"):
        _, derived = run_json(capsys, "weights", m, "--derive")
        _, table = run_json(capsys, "weights", m, "--table")
        assert derived["weights"] == table["weights"]


def test_verify_moment_curve(capsys):
    code, d = run_json(capsys, "verify", str(DATA / "k6_moment_curve.json"))
    assert code == 0
    assert d["checks"]["identity"] == "pass"
    assert d["report"]["rhs"] == 0
    assert not d["report"]["complexly_algebraically_linked"]


def test_verify_doubled_corollary(capsys):
    code, d = run_json(capsys, "verify", str(DATA / "k6_doubled.json"), "--corollary")
    assert code == 0
    assert d["checks"] == {"corollary": "pass"}
    assert len(d["report"]["witnesses"]) >= 1


def test_data_files_match_fixtures():
    for name, fn in (("k6_moment_curve.json", moment_curve_k6), ("k6_doubled.json", doubled_k6)):
        assert json.loads((DATA / name).read_text()) == embedding_to_dict(fn())


def test_verify_corollary_precondition(capsys):
    code, _, err = run(capsys, "verify", str(DATA / "k6_moment_curve.json"), "--corollary")
    assert code == 2
    assert "not complexly" in err


def test_verify_malformed(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, out, err = run(capsys, "verify", str(bad))
    assert code == 2 and out == ""
    assert "InvalidEmbeddingError" in err


def test_verify_missing_file(capsys, tmp_path):
    code, _, _ = run(capsys, "verify", str(tmp_path / "nope.json"))
    assert code == 2


def test_verify_degenerate(capsys, tmp_path):
    d = embedding_to_dict(moment_curve_k6())
    d["positions"]["v"] = d["positions"]["u"][:2] + [100.0]  # v directly above u
    path = tmp_path / "deg.json"
    path.write_text(json.dumps(d))
    code, _, err = run(capsys, "verify", str(path))
    assert code == 2
    assert "Degenerate" in err or "Invalid" in err


def test_verify_unknown_graph_and_relabel(capsys, tmp_path):
    d = embedding_to_dict(moment_curve_k6())
    rename = {"u": "a", "v": "b", "w": "c", "u'": "d", "v'": "e", "A": "f"}
    d["graph"]["vertices"] = [rename[v] for v in d["graph"]["vertices"]]
    d["graph"]["edges"] = [[rename[a], rename[b]] for a, b in d["graph"]["edges"]]
    d["positions"] = {rename[v]: p for v, p in d["positions"].items()}
    path = tmp_path / "renamed.json"
    path.write_text(json.dumps(d))
    code, _, err = run(capsys, "verify", str(path))
    assert code == 2 and "NotInCatalogError" in err
    code, out = run_json(capsys, "verify", str(path), "--graph", "K6")
    assert code == 0 and out["report"]["member"] == "K6"
    code, _, err = run(capsys, "verify", str(path), "--graph", "P10")
    assert code == 2


def test_verify_failure_exit(capsys, monkeypatch):
    real = cli.compute_report

    def tampered(f):
        r = real(f)
        first = next(iter(r.pair_lk))
        r.pair_lk[first] += 2
        return r

    monkeypatch.setattr(cli, "compute_report", tampered)
    code, d = run_json(capsys, "verify", str(DATA / "k6_moment_curve.json"), "--identity")
    assert code == 1
    assert d["checks"]["identity"] == "FAIL"


def test_consistency_error_exit(capsys, monkeypatch):
    def boom(report):
        raise ConsistencyError("forced")

    monkeypatch.setattr(cli, "verify_integral_identity", boom)
    code, _, err = run(capsys, "verify", str(DATA / "k6_moment_curve.json"))
    assert code == 3
    assert "forced" in err


def test_random_test_and_determinism(capsys, monkeypatch):
    monkeypatch.setenv("CG_THREADS", "1")
    code, first = run(capsys, "random-test", "K6", "--seeds", "6", "--seed", "3")[:2]
    assert code == 0
    monkeypatch.setenv("CG_THREADS", "2")
    code, second = run(capsys, "random-test", "K6", "--seeds", "6", "--seed", "3")[:2]
    assert first == second
    d = json.loads(first)
    assert d["passed"] == d["count"] == 6
    assert sum(d["lk_squares"].values()) == 6


def test_bad_thread_env(capsys, monkeypatch):
    monkeypatch.setenv("CG_THREADS", "many")
    code, _, _ = run(capsys, "random-test", "K6", "--seeds", "1")
    assert code == 2


def test_nonpositive_seeds(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["random-test", "K6", "--seeds", "0"])
    assert exc.value.code == 2


def test_random_test_failure_echoes_seed(capsys, monkeypatch):
    monkeypatch.setenv("CG_THREADS", "1")
    real = cli._run_seed

    def failing(member, seed):
        r = real(member, seed)
        if seed == 2:
            r["failure"] = "forced"
        return r

    monkeypatch.setattr(cli, "_run_seed", failing)
    code, d = run_json(capsys, "random-test", "Q7", "--seeds", "5")
    assert code == 1
    assert d["failure"] == {"seed": 2, "reason": "forced"}
    assert d["count"] == 3


def test_embed_then_verify(capsys, tmp_path):
    out = tmp_path / "p9.json"
    assert cli.main(["embed", "P9", "--seed", "4", "--out", str(out)]) == 0
    code, d = run_json(capsys, "verify", str(out))
    assert code == 0 and d["passed"]


def test_out_and_pretty(capsys, tmp_path):
    out = tmp_path / "report.txt"
    code = cli.main(["verify", str(DATA / "k6_doubled.json"), "--format", "pretty",
                     "--out", str(out)])
    assert code == 0
    text = out.read_text()
    assert "identity   pass" in text and "witness cycle" in text
    assert capsys.readouterr().out == ""


def test_exchange_script(capsys):
    code, d = run_json(capsys, "exchange", str(DATA / "k6_to_p10.dy"))
    assert code == 0 and d["identical_to"] == "P10"
    code, d = run_json(capsys, "exchange", str(DATA / "p8_to_p7.dy"), "--graph", "P8")
    assert d["identical_to"] == "P7"


def test_exchange_bad_script(capsys, tmp_path):
    script = tmp_path / "bad.dy"
    script.write_text("DY u v q -> x\n")
    code, _, _ = run(capsys, "exchange", str(script))
    assert code == 2


def test_fixture_and_schema(capsys):
    code, d = run_json(capsys, "fixture", "trefoil")
    assert code == 0 and len(d["graph"]["vertices"]) == 72
    code, out, _ = run(capsys, "schema")
    assert code == 0 and '"waypoints"' in out


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "cgpetersen", "catalog", "Q8"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0
    assert set(json.loads(res.stdout)["cycle_counts"]) == {"4", "6", "8"}
