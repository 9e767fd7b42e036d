import csv
import io
import json
import subprocess
import sys
from fractions import Fraction
from pathlib import Path

import pytest

from waring_sieve import bounds, cli
from waring_sieve.report import BoundReport

GOLDEN = Path(__file__).parent / "golden"


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def rows(text):
    return [json.loads(line) for line in text.splitlines()]


@pytest.mark.parametrize(
    "name,argv",
    [
        ("count_p5_m2_k2.jsonl", "count --p 5 --m 2 --k 2 --algo all"),
        ("waring_distinct_p5_m2.jsonl", "waring --p 5 --m 2 --distinct"),
        ("audit_p5_m2_k2.jsonl", "audit --p 5 --m 2 --k 2"),
        ("zhuwan_p7_m2_k3.jsonl", "check --bound zhuwan --p 7 --m 2 --k 3"),
        ("identity_cycle_k6_q4.jsonl", "identity --which cycle-index --k 6 --q 4"),
        ("total_p5_m4.csv", "total --p 5 --m 4 --format csv"),
    ],
)
def test_golden(name, argv, capsys):
    code, out, _ = run(argv.split(), capsys)
    assert code == 0
    assert out == (GOLDEN / name).read_text()


def test_count_examples(capsys):
    _, out, _ = run("count --p 5 --m 2 --k 2 --all-b".split(), capsys)
    got = {r["b"]: r["count"] for r in rows(out)}
    assert got == {0: "4", 1: "0", 2: "1", 3: "1", 4: "0"}
    _, out, _ = run("count --p 5 --set 1,2,3,4 --k 0 --b 0".split(), capsys)
    assert [r["count"] for r in rows(out)] == ["1"]
    _, out, _ = run("count --p 5 --m 2 --k 2 --b 0 --algo all".split(), capsys)
    (r,) = rows(out)
    assert r["agreement"] is True and r["count"] == "4"


def test_count_schema(capsys):
    _, out, _ = run("count --p 7 --m 3 --k 2".split(), capsys)
    for r in rows(out):
        assert list(r) == ["schema_version", "command", "p", "m", "set", "k", "b", "count", "algo", "agreement"]
        assert isinstance(r["count"], str)


def test_bound_and_waring_schema(capsys):
    _, out, _ = run("check --bound os --p 7 --m 2".split(), capsys)
    keys = ["schema_version", "bound", "p", "m", "k", "b", "lhs", "rhs", "holds", "slack", "numeric_error", "regime"]
    assert all(list(r)[:12] == keys for r in rows(out))
    _, out, _ = run("waring --p 13 --m 3".split(), capsys)
    (r,) = rows(out)
    assert list(r)[:6] == ["schema_version", "kind", "p", "m", "value", "coverage"]
    assert r["value"] == 2


def test_waring_distinct_none(capsys):
    code, out, _ = run("waring --p 5 --m 2 --distinct".split(), capsys)
    (r,) = rows(out)
    assert code == 0 and r["value"] == "NONE"
    assert r["coverage"] == {"1": [0, 2, 3], "2": [1, 4], "3": [0, 2, 3], "4": [1, 2, 3, 4]}


def test_identity_example(capsys):
    _, out, _ = run("identity --which cycle-index --k 6 --q 4".split(), capsys)
    (r,) = rows(out)
    assert r["lhs"] == r["rhs"] == "60480" and r["holds"]
    code, out, _ = run("identity --which box --n 3 --s 4 --k-range 0:12".split(), capsys)
    assert code == 0 and len(rows(out)) == 13
    code, out, _ = run("identity --which sieve --n 0,5 --k 4".split(), capsys)
    assert code == 0 and all(r["holds"] for r in rows(out))


def test_usage_errors(capsys):
    assert run("count --p 9 --m 2 --k 2".split(), capsys)[0] == 2
    assert run("count --p 5 --m 2 --k 9".split(), capsys)[0] == 2
    assert run("count --p 5 --k 1".split(), capsys)[0] == 2
    assert run("check --bound thm11 --p 7 --m 1 --k 2".split(), capsys)[0] == 2
    assert run("audit --p 7 --m 4 --k 2".split(), capsys)[0] == 2
    with pytest.raises(SystemExit) as info:
        cli.main(["count", "--p", "x"])
    assert info.value.code == 2


def test_conditional_bounds_never_fail(capsys):
    # thm11 at a huge eps fails for some b, yet the exit code stays 0
    code, out, _ = run("check --bound thm11 --p 31 --m 2 --k 3 --delta 0.79 --epsilon 0.75".split(), capsys)
    assert code == 0 and not all(r["holds"] for r in rows(out))
    code, out, _ = run("check --bound open --p 7 --m 3 --k 2".split(), capsys)
    assert code == 0 and not any(r["asserted"] for r in rows(out))


def test_audit_never_fails(capsys):
    code, out, _ = run("audit --p 5 --m 2 --k 2".split(), capsys)
    diffs = {r["b"]: int(r["diff"]) for r in rows(out)}
    assert code == 0 and diffs[0] == 0 and diffs[2] and diffs[3]


def test_asserted_violation_exits_1(capsys, monkeypatch):
    def fake(p, m, k, digits=60, table=None):
        return [BoundReport("zhuwan", {"p": p, "m": m, "k": k, "b": 0}, Fraction(2), Fraction(1), False, Fraction(-1))]

    monkeypatch.setattr(bounds, "check_zhu_wan", fake)
    assert run("check --bound zhuwan --p 7 --m 2 --k 3".split(), capsys)[0] == 1


def test_random_domains_seeded(capsys):
    argv = "check --bound lemma31 --p 11 --random-domains 3 --seed 42 --k 2".split()
    _, a, _ = run(argv, capsys)
    _, b, _ = run(argv, capsys)
    assert a == b
    rs = rows(a)
    assert {r["seed"] for r in rs} == {42} and {r["domain_index"] for r in rs} == {0, 1, 2}
    assert all(r["holds"] for r in rs)


def test_csv_columns_match_jsonl(capsys):
    _, j, _ = run("count --p 7 --m 2 --k 3".split(), capsys)
    _, c, _ = run("count --p 7 --m 2 --k 3 --format csv".split(), capsys)
    reader = list(csv.DictReader(io.StringIO(c)))
    assert list(reader[0]) == list(rows(j)[0])
    assert [r["count"] for r in reader] == [r["count"] for r in rows(j)]


def test_out_file(tmp_path, capsys):
    out = tmp_path / "x.jsonl"
    assert cli.main(["total", "--p", "7", "--m", "3", "--out", str(out)]) == 0
    assert sum(int(r["count"]) for r in rows(out.read_text())) == 64


def test_sweep_skips_bad_cells(capsys):
    code, out, _ = run("sweep --command count --p 5 --m 2 --k 7".split(), capsys)
    (r,) = rows(out)
    assert code == 0 and r["skipped"] is True and "k must lie" in r["reason"]


def test_sweep_deterministic_across_jobs(tmp_path):
    outs = []
    for jobs in (1, 8):
        path = tmp_path / f"j{jobs}.jsonl"
        argv = ["sweep", "--command", "count", "--p-range", "3:31", "--m-all-divisors",
                "--jobs", str(jobs), "--out", str(path)]
        assert cli.main(argv) == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1] and outs[0]


def test_jobs_env_default(monkeypatch):
    monkeypatch.setenv("WARING_SIEVE_JOBS", "3")
    args = cli.build_parser().parse_args(["sweep", "--command", "total", "--p", "5", "--m", "1"])
    assert args.jobs == 3


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "waring_sieve", "count", "--p", "5", "--m", "1", "--k", "2", "--b", "0"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["count"] == "2"
