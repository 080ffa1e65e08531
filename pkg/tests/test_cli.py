from __future__ import annotations

import json
import subprocess
import sys

import pytest

from modrep.cli.main import main as cli_main_fn
from modrep.cli import runner
from modrep.cli.cache import Cache, cache_key
from modrep.cli.jobs import InputError, load_group, resolve
from modrep.meataxe import ResourceCapExceeded


def shipped(name: str) -> dict:
    return json.loads(resolve(name, "groups").read_text())


def write_job(tmp_path, data: dict, name="job.json"):
    path = tmp_path / name
    path.write_text(json.dumps(data))
    return str(path)


def run(argv, capsys):
    code = cli_main_fn(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def cache_dir(tmp_path):
    return str(tmp_path / "cache")


def test_bijection_error_names_images(tmp_path):
    data = shipped("s3")
    data["generators"] = [[1, 1, 2]]
    with pytest.raises(InputError, match=r"\[1, 1, 2\].*not a bijection of 1\.\.3"):
        load_group(write_job(tmp_path, data))


def test_malformed_json_reports_position(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"name": "x",\n "degree": }')
    with pytest.raises(InputError, match="line 2"):
        load_group(path)


@pytest.mark.parametrize("mutate, pattern", [
    (lambda d: d.update(p=4), "prime"),
    (lambda d: d.update(bogus=1), "unknown fields"),
    (lambda d: d.update(sylow_subgroup=[[2, 1, 3]]), "sylow_subgroup' has order 2"),
    (lambda d: d.update(pprime_subgroup=[[2, 3, 1]]), "divisible by p"),
    (lambda d: d.update(order=7), "order"),
])
def test_validation_errors(tmp_path, mutate, pattern):
    data = shipped("s3")
    mutate(data)
    with pytest.raises(InputError, match=pattern):
        load_group(write_job(tmp_path, data))


def test_verify_pass_exit_0(capsys, cache_dir):
    code, out, _ = run(["verify", "s3", "--cache-dir", cache_dir], capsys)
    assert code == 0
    assert "[ok  ] cartan_b0" in out and "status: pass" in out


def test_wrong_expectation_exit_1(tmp_path, capsys, cache_dir):
    data = shipped("s3")
    data["expected"]["cartan_det_b0"] = 4
    code, out, _ = run(["verify", write_job(tmp_path, data), "--cache-dir", cache_dir], capsys)
    assert code == 1
    assert "[FAIL] cartan_det_b0: expected 4, got 3" in out


def test_input_error_exit_2(tmp_path, capsys, cache_dir):
    data = shipped("s3")
    data["generators"] = [[1, 1, 2]]
    code, _, err = run(["verify", write_job(tmp_path, data), "--cache-dir", cache_dir], capsys)
    assert code == 2 and "not a bijection" in err
    code, _, err = run(["order", str(tmp_path / "missing.json")], capsys)
    assert code == 2


def test_resource_error_exit_3(monkeypatch, capsys, cache_dir):
    def exhausted(job, seed, timer):
        with timer.stage("chop"):
            raise ResourceCapExceeded("no certificate within 0 words")

    monkeypatch.setattr(runner, "chop_stage", exhausted)
    code, _, err = run(["verify", "s3", "--no-cache"], capsys)
    assert code == 3 and "stage chop" in err


def test_exit_precedence():
    mk = lambda status: runner.JobResult("x", "x", status, {})  # noqa: E731
    assert runner.exit_status([mk("pass"), mk("mismatch")]) == 1
    assert runner.exit_status([mk("mismatch"), mk("resource_error")]) == 3
    assert runner.exit_status([mk("resource_error"), mk("input_error")]) == 2
    assert runner.exit_status([mk("done")]) == 0


def test_order_and_chop_commands(capsys):
    code, out, _ = run(["order", "s6", "--format", "json"], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["jobs"][0]["order"]["order"] == 720
    code, out, _ = run(["chop", "s3", "--format", "json"], capsys)
    facs = json.loads(out)["jobs"][0]["chop"]["permutation_module"]["factors"]
    assert code == 0 and facs == {"k": 2, "sgn": 1}


def test_reports_are_byte_identical(tmp_path, capsys, cache_dir):
    a, b, c = tmp_path / "a" / "r.json", tmp_path / "b" / "r.json", tmp_path / "c" / "r.json"
    assert run(["verify", "s3", "sl2_5", "--no-cache", "--out", str(a)], capsys)[0] == 0
    assert run(["verify", "s3", "sl2_5", "--no-cache", "--out", str(b)], capsys)[0] == 0
    # a cold and then a warm cache give the same bytes too
    run(["verify", "s3", "sl2_5", "--cache-dir", cache_dir, "--out", str(c)], capsys)
    assert run(["verify", "s3", "sl2_5", "--cache-dir", cache_dir, "--out", str(c)], capsys)[0] == 0
    assert a.read_bytes() == b.read_bytes() == c.read_bytes()
    rep = json.loads(a.read_text())
    assert rep["schema_version"] == 1 and rep["exit_code"] == 0
    assert "timings" not in a.read_text()
    timings = json.loads((tmp_path / "a" / "r.timings.json").read_text())
    assert set(timings) == {"s3", "sl2_5"}
    assert (tmp_path / "a" / "r.txt").read_text().startswith("== s3")


def test_figures_written(tmp_path, capsys, cache_dir):
    out = tmp_path / "rep.json"
    run(["loewy", "sl2_5", "--cache-dir", cache_dir, "--out", str(out)], capsys)
    for kind in ("loewy", "cartan"):
        png = tmp_path / f"rep_sl2_5_{kind}.png"
        assert png.exists() and png.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"
    run(["loewy", "c3", "--cache-dir", cache_dir, "--out", str(tmp_path / "n.json"), "--no-figures"], capsys)
    assert not list(tmp_path.glob("n_*.png"))


def test_seed_changes_nothing_structural(capsys, cache_dir):
    outs = []
    for seed in ("0x5EED", "7"):
        code, out, _ = run(["verify", "sl2_5", "--seed", seed, "--format", "json", "--cache-dir", cache_dir],
                           capsys)
        assert code == 0
        job = json.loads(out)["jobs"][0]
        outs.append((job["principal_block"]["cartan"], [b["dims"] for b in job["blocks"]]))
    assert outs[0] == outs[1]


def test_bad_seed_rejected(capsys):
    with pytest.raises(SystemExit) as exc:
        cli_main_fn(["order", "s3", "--seed", "-1"])
    assert exc.value.code == 2


def test_cache_atomic_and_tolerant(tmp_path):
    cache = Cache(tmp_path)
    key = cache_key("demo", {"a": 1}, 5)
    assert key != cache_key("demo", {"a": 1}, 6)
    assert cache.get(key) is None
    cache.put(key, {"x": [1, 2]})
    assert cache.get(key) == {"x": [1, 2]}
    assert not list(tmp_path.rglob(".tmp-*"))
    # a truncated entry reads as a miss
    path = next(tmp_path.rglob("*.pkl"))
    path.write_bytes(path.read_bytes()[:5])
    assert cache.get(key) is None
    assert Cache(tmp_path, enabled=False).get(key) is None


def test_parallel_jobs_match_serial(tmp_path, capsys):
    serial, parallel = tmp_path / "s.json", tmp_path / "p.json"
    run(["pims", "c3", "s3", "--no-cache", "--out", str(serial), "--no-figures"], capsys)
    run(["pims", "c3", "s3", "--no-cache", "--jobs", "2", "--out", str(parallel), "--no-figures"], capsys)
    assert serial.read_bytes() == parallel.read_bytes()


def test_module_entry_point(tmp_path):
    res = subprocess.run([sys.executable, "-m", "modrep.cli", "order", "c3"], capture_output=True, text=True)
    assert res.returncode == 0 and "|G| = 3" in res.stdout
