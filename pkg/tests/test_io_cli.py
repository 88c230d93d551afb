import os

import numpy as np
import pytest

from kolmoreduce import (
    DistributionParseError,
    fixture_path,
    make_distribution,
    read_distribution_file,
    write_distribution_file,
)
from kolmoreduce.cli import bench_instance, main

from conftest import random_distribution

UNIFORM4 = make_distribution([(1, 0.25), (2, 0.25), (3, 0.25), (4, 0.25)])


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


class TestDistributionFiles:
    def test_csv_header_optional(self, tmp_path):
        with_header = write(tmp_path, "a.csv", "value,probability\n1,0.5\n2,0.5\n")
        without = write(tmp_path, "b.csv", "1,0.5\n2,0.5\n")
        da, fmt_a = read_distribution_file(with_header)
        db, fmt_b = read_distribution_file(without)
        assert fmt_a == fmt_b == "csv"
        assert da == db

    def test_json_format(self, tmp_path):
        path = write(tmp_path, "d.json", '{"values": [1, 2], "probs": [0.5, 0.5]}')
        d, fmt = read_distribution_file(path)
        assert fmt == "json"
        assert d == make_distribution([(1, 0.5), (2, 0.5)])

    @pytest.mark.parametrize("fmt", ["csv", "json"])
    def test_round_trip_is_exact(self, tmp_path, fmt):
        rng = np.random.default_rng(8)
        original = random_distribution(rng, n=37, values=np.sort(rng.uniform(-9, 9, 37)))
        path = str(tmp_path / f"d.{fmt}")
        write_distribution_file(original, path, fmt)
        loaded, loaded_fmt = read_distribution_file(path)
        assert loaded_fmt == fmt
        assert loaded == original

    def test_parse_error_names_line(self, tmp_path):
        path = write(tmp_path, "bad.csv", "1,0.5\nnope,0.5\n")
        with pytest.raises(DistributionParseError, match="bad.csv:2"):
            read_distribution_file(path)

    def test_wrong_field_count(self, tmp_path):
        path = write(tmp_path, "bad.csv", "1,0.5,9\n")
        with pytest.raises(DistributionParseError, match="expected 2 fields"):
            read_distribution_file(path)

    def test_missing_file(self):
        with pytest.raises(DistributionParseError, match="no such file"):
            read_distribution_file("/nonexistent/d.csv")

    def test_bad_mass_mentions_renormalize(self, tmp_path):
        path = write(tmp_path, "half.csv", "1,0.25\n2,0.25\n")
        with pytest.raises(DistributionParseError, match="renormalize"):
            read_distribution_file(path)
        d, _ = read_distribution_file(path, renormalize=True)
        assert d.probs.tolist() == [0.5, 0.5]


class TestCmdDistance:
    def test_identical_files(self, tmp_path, capsys):
        a = write(tmp_path, "a.csv", "1,0.5\n2,0.5\n")
        b = write(tmp_path, "b.csv", "1,0.5\n2,0.5\n")
        assert main(["distance", a, b]) == 0
        assert capsys.readouterr().out.strip() == "0"

    def test_disjoint_deltas(self, tmp_path, capsys):
        a = write(tmp_path, "a.csv", "0,1\n")
        b = write(tmp_path, "b.csv", "1,1\n")
        assert main(["distance", a, b]) == 0
        assert capsys.readouterr().out.strip() == "1"

    def test_half(self, tmp_path, capsys):
        a = write(tmp_path, "a.csv", "1,0.5\n2,0.5\n")
        b = write(tmp_path, "b.csv", "1,1\n")
        assert main(["distance", a, b]) == 0
        assert capsys.readouterr().out.strip() == "0.5"

    def test_unparsable_exits_2(self, tmp_path, capsys):
        a = write(tmp_path, "a.csv", "garbage\n")
        b = write(tmp_path, "b.csv", "1,1\n")
        assert main(["distance", a, b]) == 2
        assert "a.csv" in capsys.readouterr().err


class TestCmdReduce:
    def test_klm_summary_and_output(self, tmp_path, capsys):
        src = write(tmp_path, "u4.csv", "1,0.25\n2,0.25\n3,0.25\n4,0.25\n")
        out = str(tmp_path / "r.csv")
        assert main(["reduce", src, "--m", "2", "--out", out]) == 0
        assert capsys.readouterr().out.strip() == "klm,2,0.25"
        d, fmt = read_distribution_file(out)
        assert fmt == "csv"
        assert d == make_distribution([(1, 0.375), (3, 0.625)])

    def test_generous_budget_round_trips_input(self, tmp_path, capsys):
        src = write(tmp_path, "u4.json", '{"values": [1, 2, 3, 4], "probs": [0.25, 0.25, 0.25, 0.25]}')
        out = str(tmp_path / "r.json")
        assert main(["reduce", src, "--m", "9", "--out", out]) == 0
        assert capsys.readouterr().out.strip() == "klm,4,0"
        d, fmt = read_distribution_file(out)
        assert fmt == "json"
        assert d == UNIFORM4

    def test_sample_method_is_byte_deterministic(self, tmp_path, capsys):
        src = write(tmp_path, "u4.csv", "1,0.25\n2,0.25\n3,0.25\n4,0.25\n")
        out1, out2 = str(tmp_path / "r1.csv"), str(tmp_path / "r2.csv")
        args = ["reduce", src, "--method", "sample", "--m", "2",
                "--samples", "10000", "--seed", "7"]
        assert main(args + ["--out", out1]) == 0
        assert main(args + ["--out", out2]) == 0
        capsys.readouterr()
        assert open(out1, "rb").read() == open(out2, "rb").read()

    def test_missing_method_flags_exit_2(self, tmp_path, capsys):
        src = write(tmp_path, "u4.csv", "1,0.25\n2,0.25\n3,0.25\n4,0.25\n")
        out = str(tmp_path / "r.csv")
        assert main(["reduce", src, "--out", out]) == 2
        assert main(["reduce", src, "--method", "trim", "--out", out]) == 2
        assert main(["reduce", src, "--method", "sample", "--m", "2", "--out", out]) == 2
        capsys.readouterr()
        assert not os.path.exists(out)

    def test_renormalize_flag(self, tmp_path, capsys):
        src = write(tmp_path, "half.csv", "1,0.25\n2,0.25\n")
        out = str(tmp_path / "r.csv")
        assert main(["reduce", src, "--m", "5", "--out", out]) == 2
        assert main(["reduce", src, "--m", "5", "--out", out, "--renormalize"]) == 0
        capsys.readouterr()

    def test_bad_method_name_exits_2(self, tmp_path):
        src = write(tmp_path, "u4.csv", "1,0.25\n2,0.25\n3,0.25\n4,0.25\n")
        with pytest.raises(SystemExit) as info:
            main(["reduce", src, "--method", "magic", "--out", str(tmp_path / "r.csv")])
        assert info.value.code == 2


class TestCmdBench:
    def test_schema_and_determinism(self, tmp_path, capsys):
        out1, out2 = str(tmp_path / "b1.csv"), str(tmp_path / "b2.csv")
        args = ["bench", "--n", "12", "--instances", "3", "--m", "2,4",
                "--methods", "klm,opttrim,trim", "--seed", "5"]
        assert main(args + ["--out", out1]) == 0
        assert main(args + ["--out", out2]) == 0
        capsys.readouterr()
        text = open(out1).read()
        assert text == open(out2).read()
        lines = text.strip().splitlines()
        assert lines[0] == "method,m,mean_error,std_error,instances,n,seed"
        assert len(lines) == 1 + 3 * 2
        for line in lines[1:]:
            method, m, mean, std, instances, n, seed = line.split(",")
            assert method in ("klm", "opttrim", "trim")
            assert 0.0 <= float(mean) <= 1.0
            assert (int(m), int(instances), int(n), int(seed)) == (int(m), 3, 12, 5)

    def test_instance_generator_is_stable(self):
        a = bench_instance(10, seed=3, index=4)
        b = bench_instance(10, seed=3, index=4)
        c = bench_instance(10, seed=3, index=5)
        assert a == b
        assert a != c
        assert a.values.tolist() == list(range(1, 11))

    def test_bad_flags_exit_2(self, capsys):
        assert main(["bench", "--n", "1", "--instances", "3"]) == 2
        assert main(["bench", "--n", "10", "--instances", "3", "--methods", "wat"]) == 2
        assert main(["bench", "--n", "10", "--instances", "3", "--m", "1",
                     "--methods", "trim"]) == 2
        capsys.readouterr()


class TestCmdPipeline:
    def test_fixture_run(self, tmp_path, capsys):
        out = str(tmp_path / "p.csv")
        code = main(["pipeline", fixture_path("seq10"), "--m", "10",
                     "--deadlines", "20,45,70", "--out", out])
        assert code == 0
        summary = capsys.readouterr().out
        assert "d_k=" in summary and "exact_support=91" in summary
        lines = open(out).read().strip().splitlines()
        assert lines[0] == "deadline,f_exact,f_approx,abs_delta,d_k,exact_support,approx_support"
        assert len(lines) == 4
        deltas = [float(line.split(",")[3]) for line in lines[1:]]
        d_k = float(lines[1].split(",")[4])
        assert all(delta <= d_k + 1e-12 for delta in deltas)

    def test_cap_override_exits_4(self, tmp_path, capsys, monkeypatch):
        monkeypatch.setenv("KLM_CAP", "10")
        code = main(["pipeline", fixture_path("seq10"), "--m", "10",
                     "--deadlines", "20", "--out", str(tmp_path / "p.csv")])
        assert code == 4
        capsys.readouterr()

    def test_unparsable_tree_exits_2(self, tmp_path, capsys):
        bad = write(tmp_path, "t.json", '{"kind": "leaf"}')
        assert main(["pipeline", bad, "--m", "4", "--deadlines", "1"]) == 2
        capsys.readouterr()


class TestCmdOracle:
    def test_match(self, tmp_path, capsys):
        src = write(tmp_path, "u4.csv", "1,0.25\n2,0.25\n3,0.25\n4,0.25\n")
        assert main(["oracle", src, "--m", "2"]) == 0
        out = capsys.readouterr().out
        assert "MATCH" in out and "0.25" in out

    def test_generous_budget(self, tmp_path, capsys):
        src = write(tmp_path, "u4.csv", "1,0.25\n2,0.25\n3,0.25\n4,0.25\n")
        assert main(["oracle", src, "--m", "9"]) == 0
        assert "MATCH" in capsys.readouterr().out

    def test_sweep_random_file(self, tmp_path, capsys):
        rng = np.random.default_rng(12)
        x = random_distribution(rng, n=10)
        src = str(tmp_path / "x.csv")
        write_distribution_file(x, src, "csv")
        for m in range(1, 11):
            assert main(["oracle", src, "--m", str(m)]) == 0
        assert capsys.readouterr().out.count("MATCH") == 10

    def test_guard_exits_2(self, tmp_path, capsys):
        rng = np.random.default_rng(13)
        x = random_distribution(rng, n=30)
        src = str(tmp_path / "x.csv")
        write_distribution_file(x, src, "csv")
        assert main(["oracle", src, "--m", "3"]) == 2
        capsys.readouterr()
