import json
import subprocess
import sys

import pytest

from ucphase.cli import cache_key, main
from ucphase.partitions import Partition
from ucphase.suites import SUITES


@pytest.fixture(autouse=True)
def cache_env(tmp_path, monkeypatch):
    monkeypatch.setenv("UCPHASE_CACHE_DIR", str(tmp_path / "cache"))
    return tmp_path / "cache"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_compute_uc_examples(capsys):
    assert run(capsys, "compute-uc", "--lambda", "1", "--mu", "1")[:2] == (0, "x1*y1 - 1\n")
    assert run(capsys, "compute-uc", "--lambda", "", "--mu", "")[:2] == (0, "1\n")
    code, out, err = run(capsys, "compute-uc", "--lambda", "2,3")
    assert code == 2 and "weakly decreasing" in err
    assert run(capsys, "compute-uc", "--lambda", "a")[0] == 2


def test_compute_uc_json(capsys):
    code, out, _ = run(capsys, "compute-uc", "--lambda", "1", "--mu", "1", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["lambda"] == "1" and doc["poly"]["coeff_domain"] == "rational"
    assert {"x": {"1": 1}, "y": {"1": 1}, "c": "1"} in doc["poly"]["terms"]


def test_cache_roundtrip(capsys, cache_env):
    run(capsys, "compute-uc", "--lambda", "2,1", "--mu", "1")
    files = list(cache_env.glob("*.json"))
    assert len(files) == 1
    # a cached read gives the same bytes
    first = run(capsys, "compute-uc", "--lambda", "2,1", "--mu", "1")[1]
    assert first == run(capsys, "compute-uc", "--lambda", "2,1", "--mu", "1")[1]
    stats = json.loads(run(capsys, "cache", "stats")[1])
    assert stats["entries"] == 1
    assert run(capsys, "cache", "clear")[0] == 0
    assert json.loads(run(capsys, "cache", "stats")[1])["entries"] == 0


def test_corrupt_cache_entry_is_recomputed(capsys, cache_env):
    run(capsys, "compute-uc", "--lambda", "1", "--mu", "1")
    (path,) = cache_env.glob("*.json")
    path.write_text("{not json")
    assert run(capsys, "compute-uc", "--lambda", "1", "--mu", "1")[1] == "x1*y1 - 1\n"


def test_cache_key_depends_on_content():
    a = cache_key(Partition((1,)), Partition((1,)), (1, 1))
    assert a == cache_key(Partition((1,)), Partition((1,)), (1, 1))
    assert a != cache_key(Partition((1,)), Partition(()), (1, 1))


def test_verify_examples(capsys):
    code, out, _ = run(capsys, "verify", "jacobi-trudi", "--max-weight", "4")
    doc = json.loads(out)
    assert code == 0 and doc["pass"] and doc["suite"] == "jacobi-trudi"
    assert len(doc["cases"]) == 144  # 12 partitions of weight <= 4, squared
    assert set(doc["cases"][0]) >= {"input", "pass"}
    code, out, _ = run(capsys, "verify", "rtt", "--m1", "1", "--m2", "1", "--cap", "2")
    assert code == 0 and json.loads(out)["params"]["m1"] == 1
    assert run(capsys, "verify", "bogus")[0] == 2


@pytest.mark.parametrize("suite", [s for s in SUITES if s != "fermion"])
def test_every_suite_passes_small(capsys, suite):
    code, out, _ = run(capsys, "verify", suite, "--max-weight", "2", "--m1", "1", "--m2", "1",
                       "--cap", "2", "--order", "2")
    assert code == 0 and json.loads(out)["pass"]


def test_fermion_suite_small(capsys):
    code, out, _ = run(capsys, "verify", "fermion", "--max-weight", "2", "--cap", "1")
    assert code == 0 and len(json.loads(out)["cases"]) == 9


def test_verify_failure_exit_code(capsys, monkeypatch):
    from ucphase import suites
    from ucphase.reports import Report

    def broken(**kw):
        rep = Report("broken", kw)
        rep.fail(residual="1")
        return rep

    monkeypatch.setattr(suites, "build_cases", lambda s, o: [(broken, {"n": 1})])
    code, out, _ = run(capsys, "verify", "macmahon")
    doc = json.loads(out)
    assert code == 1 and not doc["pass"] and doc["cases"][0]["residual"] == [{"residual": "1"}]


def test_negative_size_flag(capsys):
    assert run(capsys, "verify", "prop42", "--cap", "-1")[0] == 2


def test_config_merged_under_flags(capsys, tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# sizes\nmax-weight = 1\n--m1=2\nm2 = 0\n")
    code, out, _ = run(capsys, "verify", "prop42", "--config", str(cfg), "--m2", "1")
    params = json.loads(out)["params"]
    assert code == 0 and params["max_weight"] == 1 and params["m1"] == 2 and params["m2"] == 1
    cfg.write_text("nonsense\n")
    assert run(capsys, "verify", "prop42", "--config", str(cfg))[0] == 2
    assert run(capsys, "verify", "prop42", "--config", str(tmp_path / "missing"))[0] == 2
    cfg.write_text("m1 = two\n")
    assert run(capsys, "verify", "prop42", "--config", str(cfg))[0] == 2


def test_parallel_output_matches_serial(capsys):
    serial = run(capsys, "verify", "pieri", "--max-weight", "1", "--order", "2")[1]
    parallel = run(capsys, "verify", "pieri", "--max-weight", "1", "--order", "2", "--jobs", "2")[1]
    assert serial == parallel


def test_macmahon_examples(capsys):
    assert run(capsys, "macmahon", "--order", "6", "--method", "product")[:2] == \
        (0, "1,1,3,6,13,24,48\n")
    code, out, _ = run(capsys, "macmahon", "--order", "4", "--compare")
    assert code == 0 and out.strip().endswith("all methods agree")
    assert run(capsys, "macmahon", "--order", "40", "--method", "enumerate")[0] == 2
    assert run(capsys, "macmahon", "--order", "3", "--method", "correlator",
               "--format", "json")[1] == '["1", "1", "3", "6"]\n'
    assert run(capsys, "macmahon", "--order", "5", "--method", "enumerate")[1] == "1,1,3,6,13,24\n"


def test_bethe_command(capsys):
    code, out, _ = run(capsys, "bethe", "--m1", "1", "--m2", "1", "--u", "2")
    assert code == 0 and out == "4*x1*y1 + x1 + y1 - 15/4\n"
    code, out, _ = run(capsys, "bethe", "--m1", "1", "--m2", "1", "--u", "2,1/3",
                       "--format", "json")
    doc = json.loads(out)
    assert doc["us"] == ["2", "1/3"] and "|" in doc["uc_expansion"]
    assert run(capsys, "bethe", "--u", "0")[0] == 2
    assert run(capsys, "bethe", "--u", "x")[0] == 2


def test_usage_errors(capsys):
    assert run(capsys)[0] == 2
    assert run(capsys, "cache", "explode")[0] == 2
    assert run(capsys, "verify", "rtt", "--m1", "one")[0] == 2


def test_output_is_deterministic(tmp_path):
    cmd = [sys.executable, "-m", "ucphase", "verify", "exchange", "--m1", "2"]
    env = {"UCPHASE_CACHE_DIR": str(tmp_path), "PATH": ""}
    a = subprocess.run(cmd, capture_output=True, env=env)
    b = subprocess.run(cmd, capture_output=True, env=env)
    assert a.returncode == 0 and a.stdout == b.stdout
