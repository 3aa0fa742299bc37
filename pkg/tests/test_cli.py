"""CLI contracts: schema, exit codes, CSV determinism, subcommands."""

import json

import pytest

from s4levels.cli import (
    compute_report,
    main,
    run_sweep,
    sweep_fields,
    write_csv,
)

REPORT_KEYS = {"m", "n", "d", "k", "pattern", "e", "f", "g",
               "primes", "lower_bound"}
PRIME_KEYS = {"alpha", "route", "s", "oracle_s"}


class TestComputeReport:
    def test_schema(self):
        report = compute_report(-2, -6, verify=True)
        public = {k for k in report if not k.startswith("_")}
        assert public == REPORT_KEYS
        for p in report["primes"]:
            assert set(p) == PRIME_KEYS
        assert report["lower_bound"] == 3
        assert report["primes"][0]["oracle_s"] == 3

    def test_json_output_golden(self, capsys):
        assert main(["compute", "17", "33", "--json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert set(payload) == REPORT_KEYS
        assert payload["pattern"] == "M1_N1_K1"
        assert (payload["e"], payload["f"], payload["g"]) == (1, 1, 4)
        assert [p["s"] for p in payload["primes"]] == [15, 15, 15, 15]
        assert payload["lower_bound"] == 15
        assert all(p["oracle_s"] is None for p in payload["primes"])

    def test_human_output(self, capsys):
        assert main(["compute", "-2", "-6", "--verify"]) == 0
        out = capsys.readouterr().out
        assert "s = 3" in out
        assert "oracle=3" in out
        assert "s4(K) >= 3" in out


class TestExitCodes:
    def test_invalid_input_is_two(self, capsys):
        assert main(["compute", "4", "6"]) == 2
        assert "square-free" in capsys.readouterr().err

    def test_degenerate_is_two(self, capsys):
        assert main(["compute", "3", "3"]) == 2
        capsys.readouterr()

    def test_sweep_bound_too_small_is_two(self, capsys):
        assert main(["sweep", "1"]) == 2
        capsys.readouterr()

    def test_lemmas_wrong_shape_is_two(self, capsys):
        # (17, 33) is unramified: no e=4, f=1 prime to tabulate
        assert main(["lemmas", "--m", "17", "--n", "33"]) == 2
        capsys.readouterr()

    def test_success_is_zero(self, capsys):
        assert main(["witness"]) == 0
        assert "= 3" in capsys.readouterr().out


class TestSweep:
    def test_dedup_by_field(self):
        pairs = sweep_fields(10)
        triples = set()
        from s4levels.numberfield import make_field
        for m, n in pairs:
            key = frozenset(make_field(m, n).triple)
            assert key not in triples
            triples.add(key)

    def test_boundary_sweep(self, capsys):
        assert main(["sweep", "2"]) == 0
        out = capsys.readouterr().out
        assert "fields" in out and "mismatches: none" in out

    def test_csv_deterministic_across_jobs(self, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        write_csv(run_sweep(8, verify=True, jobs=1), str(a))
        write_csv(run_sweep(8, verify=True, jobs=2), str(b))
        assert a.read_bytes() == b.read_bytes()

    def test_csv_format(self, tmp_path):
        path = tmp_path / "out.csv"
        write_csv(run_sweep(6, verify=False, jobs=1), str(path))
        data = path.read_bytes()
        assert b"\r" not in data
        lines = data.decode("utf-8").splitlines()
        assert lines[0] == "m,n,d,k,pattern,e,f,g,alpha,route,s,oracle_s"
        assert len(lines) > 1

    def test_summary_counts_sum_to_primes(self):
        summary = run_sweep(8, verify=False, jobs=1)
        total_primes = sum(len(r["primes"]) for r in summary["reports"])
        assert sum(summary["route_counts"].values()) == total_primes
        assert summary["mismatches"] == []


class TestLemmas:
    def test_default_field(self, capsys):
        assert main(["lemmas"]) == 0
        out = capsys.readouterr().out
        assert "all residue classes match" in out
        assert out.count("match") >= 18  # 3 classes + 15 congruences

    def test_alternative_field(self, capsys):
        assert main(["lemmas", "--m", "2", "--n", "3"]) == 0
        capsys.readouterr()
