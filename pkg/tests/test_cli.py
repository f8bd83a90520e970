import json

import pytest
from click.testing import CliRunner

from equikh import __version__
from equikh.cli import main
from equikh.complex import FreeComplex
from equikh.corpus import load_corpus

TREFOIL = "[1,4,2,5],[3,6,4,1],[5,2,6,3]"


@pytest.fixture(scope="module")
def nine46_pd():
    return next(r for r in load_corpus() if r.name == "9_46").pd


def run(*args):
    return CliRunner().invoke(main, list(args), catch_exceptions=False)


def rows(output):
    return [line.split("\t") for line in output.splitlines()]


def test_version():
    r = run("--version")
    assert r.exit_code == 0 and __version__ in r.output


def test_invariants_nine46(nine46_pd):
    r = run("invariants", "--pd", nine46_pd, "--grid", "2", "3")
    assert r.exit_code == 0
    t = rows(r.output)
    assert ["s", "0"] in t and ["s_tilde", "-2"] in t and ["symmetry_k", "17"] in t
    assert ["ker", "0", "0", "2", "1"] in t
    assert ["grid", "0", "2", "-2"] in t


def test_invariants_json_is_deterministic_and_cached(tmp_path, nine46_pd):
    first = run("invariants", "--pd", nine46_pd, "--json")
    plain = run("invariants", "--pd", nine46_pd, "--json")
    assert first.output == plain.output
    cache = str(tmp_path / "cache")
    miss = run("invariants", "--pd", nine46_pd, "--json", "--cache-dir", cache)
    hit = run("invariants", "--pd", nine46_pd, "--json", "--cache-dir", cache)
    assert miss.output == hit.output == first.output
    data = json.loads(first.output)
    assert (data["s"], data["s_tilde"]) == (0, -2)


def test_corrupt_cache_entry_is_a_miss(tmp_path):
    cache = tmp_path / "cache"
    good = run("invariants", "--pd", TREFOIL, "--json", "--cache-dir", str(cache))
    (entry,) = cache.glob("*.json")
    entry.write_text("{not json")
    again = run("invariants", "--pd", TREFOIL, "--json", "--cache-dir", str(cache))
    assert again.exit_code == 0 and again.output == good.output
    assert json.loads(entry.read_text())["s"] == -2


def test_input_errors(tmp_path):
    assert run("invariants", "--pd", "[1,2,3]").exit_code == 2
    assert run("invariants").exit_code == 2
    assert run("invariants", "--pd", TREFOIL, "--action", "2").exit_code == 2
    assert run("invariants", "--pd", TREFOIL, "--basepoint", "2", "--action", "1").exit_code == 2
    assert run("tensor", str(tmp_path / "missing.json")).exit_code == 2
    assert run("eta").exit_code == 2


def test_figures_and_export(tmp_path, nine46_pd):
    out = tmp_path / "figs"
    exp = tmp_path / "c.json"
    r = run("invariants", "--pd", nine46_pd, "--grid", "1", "2", "--figures", str(out),
            "--export-complex", str(exp))
    assert r.exit_code == 0
    assert (out / "kh.png").stat().st_size > 0 and (out / "sq_grid.png").stat().st_size > 0
    c = FreeComplex.from_json(exp.read_text())
    assert "tau" in c.endos
    # the exported complex feeds the tensor command
    t = run("tensor", str(exp), "--json")
    assert t.exit_code == 0 and json.loads(t.output)["s_q_m_m1"] == {"A": 1, "B": 2, "value": 0}


def test_verify_corpus_single_row(tmp_path, nine46_pd):
    r = run("verify-corpus", "--name", "9_46", "--figures", str(tmp_path))
    assert r.exit_code == 0
    assert "summary\t1/1 passed" in r.output
    assert (tmp_path / "corpus_s_vs_stilde.png").exists() and (tmp_path / "corpus_timings.png").exists()


def test_verify_corpus_mismatch_exit_code(tmp_path, nine46_pd):
    fixture = tmp_path / "rows.csv"
    fixture.write_text(f'name,pd,action,s\n9_46,"{nine46_pd}",17,2\n')
    r = run("verify-corpus", str(fixture), "--json")
    assert r.exit_code == 1
    data = json.loads(r.output)
    assert data["failed"] == 1 and data["rows"][0]["s"] == 0


def test_verify_corpus_bad_fixture(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('[{"name": "x"}]')
    assert run("verify-corpus", str(bad)).exit_code == 2


def test_verify_corpus_cache(tmp_path):
    cache = str(tmp_path / "c")
    a = run("verify-corpus", "--name", "9_46", "--json", "--cache-dir", cache)
    b = run("verify-corpus", "--name", "9_46", "--json", "--cache-dir", cache)
    assert a.output == b.output and a.exit_code == b.exit_code == 0


def test_tensor_command():
    r = run("tensor", "ex4", "--power", "2")
    assert r.exit_code == 0
    assert ["s_q", "2", "3", "2"] in rows(r.output)
    r = run("tensor", "ex2", "--json")
    assert json.loads(r.output)["presentation"] == "F[u,Q]_{(0,-2)} ⊕ F[u,Q]/(u, Q)_{(0,0)}"


def test_eta_command(tmp_path):
    r = run("eta", "--builtin", "J", "--json")
    assert r.exit_code == 0 and json.loads(r.output)["nonzero"] is True
    bad = tmp_path / "region.txt"
    bad.write_text("nonsense\n")
    assert run("eta", str(bad)).exit_code == 2


def test_qw_command():
    r = run("qw", "--pd", "[1,1,2,2]", "--json")
    assert r.exit_code == 0
    data = json.loads(r.output)
    assert data["dims"] and data["W_inverted"]


def test_detect_symmetry():
    r = run("detect-symmetry", "--pd", TREFOIL, "--all", "--json")
    assert r.exit_code == 0
    assert [s["k"] for s in json.loads(r.output)] == [1, 3, 5]
    assert run("detect-symmetry", "--pd", "[1,2,3]").exit_code == 2
