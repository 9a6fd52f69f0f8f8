import json

import pytest

from latop.cli import run

# (argv, expected stdout line)
GOLDENS = [
    (["compose", "mz", "1,1", "1", "1,1"], "2,2,1"),
    (["compose", "perm", "31425", "3", "231"], "3156427"),
    (["compose", "tamari", "1,1,2,4", "3", "1,2,3"], "1,1,1,2,4,6"),
    (["codec", "tamari-h", "1,2,1,3,5"], "1,2,1,4,5"),
    (["codec", "tamari-split", "1,2,1,2,5,1,1,8"], "1,2,1,2,5 1,1,3"),
    (["compose", "part", "3,2,1,1", "2", "2,2"], "5,4,4,2,1,1"),
    (["compose", "part", "3,2", "3", "2,1,1"], "5,4,2,1,1"),
    (["compose", "part'", "1^1,2^1,4^1", "2", "2^2"], "1^1,3^2,4^1,6^1"),
    (["act", "part_d", "5,2,1", "#"], "5,4,3"),
    (["compose", "subset", "[2,3]@3", "1", "[1,2]@2"], "[3,4]@4"),
    (["compose", "subset", "[2,3]@3", "2", "[1,2]@2"], "[2,3,4]@4"),
    (["compose", "comp", "01", "2", "1"], "011"),
    (["compose", "comp_b", "+0", "3", "0"], "+00"),
    (["compose", "comp_b", "-", "1", "00"], "00-"),
    (["compose", "comp_b", "+0", "3", "E"], "E"),
    (["compose", "comp_bv", "+-", "3", "+"], "+-+"),
    (["compose", "t", "0+", "2", "0"], "00"),
    (["compose", "tv", "-", "1", "-+"], "+-"),
    (["compose", "tv", "-+", "2", "++"], "-++"),
    (["compose", "colored", "2_1+1_2+1_1", "3", "2_1+1_2"], "2_1+2_2+1_2+1_1"),
    (["codec", "colored-to-word", "1_1+2_2+1_2+2_1"], "-0-+0"),
    (["codec", "word-to-colored", "-0-+0"], "1_1+2_2+1_2+2_1"),
    (["codec", "partition-b-to-word", "{{-1,3,-4,-5},{-2,2},{1,-3,4,5}}"], "-0+-"),
    (["codec", "word-to-partition-b", "-0+-"], "{{-1,3,-4,-5},{-2,2},{1,-3,4,5}}"),
    (["compose", "walk", "ENDD", "3", "DNE"], "ENDNEDD"),
    (["codec", "partition-to-walk", "4,2,2,1"], "ENENNEEN"),
    (["codec", "walk-to-partition", "ENENNEEN"], "4,2,2,1"),
]


@pytest.mark.parametrize("argv,want", GOLDENS, ids=[" ".join(a) for a, _ in GOLDENS])
def test_goldens(argv, want, capsys):
    assert run(argv) == 0
    assert capsys.readouterr().out == want + "\n"


def test_comp_d_components(capsys):
    assert run(["enumerate", "comp_d", "3"]) == 0
    assert sorted(capsys.readouterr().out.split()) == sorted(["++", "--", "00", "E"])
    want = {"+++", "+--", "-+-", "--+", "0+0", "0-0", "+00", "-00", "00+", "00-", "000", "E"}
    assert run(["enumerate", "comp_d", "4"]) == 0
    assert set(capsys.readouterr().out.split()) == want


def test_enumerate_count(capsys):
    assert run(["enumerate", "tamari", "5", "--count"]) == 0
    assert capsys.readouterr().out == "14\n"


def test_check_exit_codes(capsys):
    assert run(["check", "tamari", "--laws", "lattice", "--nmax", "5"]) == 0
    assert run(["check", "perm", "--laws", "lattice", "--nmax", "3", "--mode", "full"]) == 1
    lines = [json.loads(x) for x in capsys.readouterr().out.splitlines()]
    assert any(r["status"] == "fail" for r in lines)


def test_usage_errors(capsys):
    assert run(["compose", "nope", "1", "1", "1"]) == 2
    assert run(["compose", "perm", "12", "x", "12"]) == 2
    assert run(["compose", "perm", "12", "5", "12"]) == 2
    assert run(["compose", "comp_b", "x", "1", "0"]) == 2
    assert run(["check", "comp", "--laws", "bogus"]) == 2
    assert run(["frobnicate"]) == 2
    assert run(["series", "tamari", "--nmax", "3", "--bivariate"]) == 2
    capsys.readouterr()


def test_hasse_and_determinism(tmp_path, capsys):
    out = tmp_path / "w4.dot"
    assert run(["hasse", "tamari", "4", "--out", str(out)]) == 0
    text = out.read_text()
    assert text.count(" -- ") == 5
    assert run(["hasse", "tamari", "4"]) == 0
    assert capsys.readouterr().out == text


def test_series_compare(capsys):
    assert run(["series", "comp_b", "--nmax", "8", "--bivariate", "--compare"]) == 0
    csv = capsys.readouterr().out
    assert csv.startswith("n,k,numerator,denominator\n2,0,2,1\n")
    assert run(["series", "comp", "--nmax", "6", "--compare"]) == 0


def test_filtration_command(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"operad": {"free": {"m": 2}, "symmetric": True, "nmax": 3},
                               "window": {"index": "mz", "lo": -1, "hi": "n-1"},
                               "generators": [{"arity": 2, "label": "m"}]}))
    out = tmp_path / "out"
    assert run(["filtration", str(cfg), "--closure", "generated", "--out", str(out)]) == 0
    summary = json.loads((out / "summary.json").read_text())
    assert summary["closure"] == "generated" and summary["overflows"] == 0
    checks = [json.loads(x) for x in (out / "checks.jsonl").read_text().splitlines()]
    assert all(c["status"] != "fail" for c in checks)
    first = (out / "filtration.jsonl").read_text()
    assert run(["filtration", str(cfg), "--closure", "generated", "--out", str(out)]) == 0
    assert (out / "filtration.jsonl").read_text() == first
    assert run(["filtration", str(tmp_path / "missing.json")]) == 2
    capsys.readouterr()


def test_reproduce_appendix_small(tmp_path, capsys):
    assert run(["reproduce-appendix", "--nmax", "4", "--out", str(tmp_path)]) == 0
    rows = [json.loads(x) for x in capsys.readouterr().out.splitlines()]
    checks = [r for r in rows if r.get("check") == "(n-1)^n"]
    assert [(r["arity"], r["computed"]) for r in checks] == [(2, 1), (3, 8), (4, 81)]
    assert run(["reproduce-appendix", "--nmax", "9"]) == 2


def test_check_all_suites(capsys):
    assert run(["check", "comp", "--laws", "all", "--nmax", "4"]) == 0
    # T is hyperoctahedrally equivariant but its compositions do not distribute over meets
    assert run(["check", "t", "--laws", "all", "--nmax", "3"]) == 1
    laws = {json.loads(x)["law"] for x in capsys.readouterr().out.splitlines()}
    assert "hyperoctahedral:right" in laws
    assert run(["check", "comp", "--laws", "hyperoctahedral"]) == 2
