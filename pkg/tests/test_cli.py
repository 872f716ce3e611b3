import io
import json
import subprocess
import sys

import pytest

from fracgap.cli import FAMILIES, main


def run(argv, stdin="", monkeypatch=None):
    out = io.StringIO()
    if monkeypatch is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(argv, out)
    return code, out.getvalue()


def jsonl(text):
    return [json.loads(line) for line in text.splitlines() if line.strip()]


def test_stats_k3(monkeypatch):
    code, out = run(["stats", "-j1"], "Bw\n", monkeypatch)
    (rec,) = jsonl(out)
    assert code == 0 and rec["alpha"] == 1 and rec["alpha_f_halves"] == 3


def test_stats_k1(monkeypatch):
    code, out = run(["stats", "-j1"], "@\n", monkeypatch)
    (rec,) = jsonl(out)
    assert (rec["alpha"], rec["alpha_f_halves"]) == (0, 0)


def test_stats_malformed(monkeypatch, capsys):
    code, out = run(["stats", "-j1"], "Bw\nB!\n", monkeypatch)
    assert code == 2
    err = capsys.readouterr().err
    assert "line 2" in err and "offset 1" in err
    assert len(jsonl(out)) == 1


def test_stats_tsv_columns(monkeypatch):
    code, out = run(["stats", "-j1", "-f", "tsv"], "Bw\n", monkeypatch)
    header, row = out.splitlines()
    assert header.split("\t")[:3] == ["graph6", "n", "alpha"]
    assert row.split("\t")[:5] == ["Bw", "3", "1", "3", "3"]


def test_witness(monkeypatch):
    code, out = run(["witness", "-j1"], "Cs\nBw\n", monkeypatch)
    star, k3 = jsonl(out)
    assert star["isolated_vertex"] == {"S": [0], "value": 2, "flavor": "isolated-vertex"}
    assert k3["odd_component"] == {"S": [], "value": 1, "flavor": "odd-component"}


def test_witness_triangle_star(monkeypatch):
    code, out = run(["witness"], "GpM?GK\n", monkeypatch)
    (rec,) = jsonl(out)
    assert rec["odd_component"]["S"] == [0] and rec["odd_component"]["value"] == 2


def test_witness_cap(monkeypatch):
    code, out = run(["witness", "--cap", "3"], "Bw\nCs\n", monkeypatch)
    recs = jsonl(out)
    assert "error" in recs[1] and "error" not in recs[0] and code == 0
    code, _ = run(["witness", "--cap", "3"], "Cs\n", monkeypatch)
    assert code == 1


def test_cap_limit(monkeypatch):
    code, _ = run(["witness", "--cap", "21"], "Bw\n", monkeypatch)
    assert code == 2


@pytest.mark.parametrize("g6,stats", [
    ("Dhc", {"w0": 0, "w1": 0, "c": {"2": 1}}),
    ("Ch", {"w0": 0, "w1": 2, "c": {}}),
    ("Cs", {"w0": 2, "w1": 1, "c": {}}),
])
def test_canonical(monkeypatch, g6, stats):
    code, out = run(["canonical"], g6 + "\n", monkeypatch)
    (rec,) = jsonl(out)
    assert rec["stats"] == stats


def test_verify_enumerate_5(monkeypatch):
    code, out = run(["verify", "-n", "5", "-j1"], "", monkeypatch)
    recs = jsonl(out)
    summary = recs[-1]
    assert code == 0 and summary["summary"] and summary["total"] == 21
    assert summary["equality"] and not summary["violations"]
    assert len(recs) == 22


def test_verify_enumerate_7(monkeypatch):
    code, out = run(["verify", "-n", "7", "-j1", "--summary-only"], "", monkeypatch)
    (summary,) = jsonl(out)
    assert code == 0 and summary["total"] == 853 and summary["violations"] == []


def test_verify_too_large(monkeypatch):
    code, _ = run(["verify", "-n", "9"], "", monkeypatch)
    assert code == 2


def test_verify_rejects_small_connected_input(monkeypatch):
    code, _ = run(["verify", "-j1"], "Bw\n", monkeypatch)
    assert code == 2


def test_verify_union_file(tmp_path, monkeypatch):
    f = tmp_path / "u.g6"
    f.write_text("EwCW\nBw\n")
    code, out = run(["verify", "--mode", "union", "--input", str(f), "-j1", "--summary-only"])
    (summary,) = jsonl(out)
    assert code == 0 and sorted(summary["equality"]) == ["Bw", "EwCW"]


def test_verify_union_reports_isolated_vertex_case(monkeypatch):
    code, out = run(["verify", "--mode", "union", "-j1", "--summary-only"], "Cw\n", monkeypatch)
    (summary,) = jsonl(out)
    assert code == 1 and summary["mismatches"] == ["Cw"]


def test_gen_positional_and_flags(monkeypatch):
    _, a = run(["gen", "triangle-star", "3"])
    _, b = run(["gen", "--family", "triangle-star", "--k", "3"])
    assert a == b and len(a.split()) == 1 and ord(a[0]) - 63 == 11


def test_gen_triangles(monkeypatch):
    _, out = run(["gen", "triangles", "4"], "", monkeypatch)
    code, stats = run(["stats", "-j1"], out, monkeypatch)
    (rec,) = jsonl(stats)
    assert rec["n"] == 12 and rec["class"] == "DisjointTriangles"


def test_gen_c5():
    _, out = run(["gen", "c5"])
    assert out.strip() == "Dhc"


def test_gen_unknown():
    assert run(["gen", "foo"])[0] == 2


def _cli(*args, stdin=""):
    return subprocess.run([sys.executable, "-m", "fracgap", *args], input=stdin,
                          capture_output=True, text=True)


@pytest.mark.parametrize("family", FAMILIES)
def test_pipes(family):
    ks = range(1, 7) if family in ("triangle-star", "triangles") else [None]
    gen = "".join(_cli("gen", family, *( [str(k)] if k else [])).stdout for k in ks)
    stats = _cli("stats", "-j1", stdin=gen)
    assert stats.returncode == 0 and len(jsonl(stats.stdout)) == len(ks)
    mode = "connected" if family in ("triangle-star", "c5", "k2k3") else "union"
    ver = _cli("verify", "--mode", mode, "-j1", "--summary-only", stdin=gen)
    assert ver.returncode == 0, ver.stdout + ver.stderr
    assert jsonl(ver.stdout)[-1]["total"] == len(ks)


def test_jobs_do_not_change_output(monkeypatch):
    a = run(["verify", "-n", "6", "-j1"], "", monkeypatch)
    b = run(["verify", "-n", "6", "-j3"], "", monkeypatch)
    assert a == b
