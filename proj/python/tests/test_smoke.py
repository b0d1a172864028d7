"""Smoke tests for the python module and the CLI binary.

The module path and CLI location come from the ctest environment
(PYTHONPATH, ELCC_CLI, ELCC_CONFIG_DIR).
"""

import json
import math
import os
import subprocess
import sys

import pytest

import elcc


def test_field_arithmetic():
    f = elcc.Field(2, 2)
    assert f.order == 4
    assert repr(f) == "GF(2^2)"
    assert f.modulus == [1, 1, 1]
    assert f.mul(2, 2) == 3  # omega^2 = omega + 1
    assert f.add(1, 1) == 0
    assert f.enumerate() == [0, 1, 2, 3]

    f3 = elcc.Field(3)
    assert f3.inv(2) == 2
    with pytest.raises(Exception):
        f3.inv(0)


def test_geometry_and_inner_code():
    g = elcc.AffineGeometry(4, 2, 1)
    assert g.flat_count == 20
    assert g.points == 16
    assert len(g.flats_through(0)) == 5

    inner = elcc.build_inner_code(g, 2)
    assert inner.length == 16
    assert inner.q0 == 3
    assert inner.s0 == 15
    assert inner.dimension == 7
    assert inner.min_distance() == 6

    word = inner.encode([1, 0, 1, 1, 0, 0, 1])
    assert inner.is_codeword(word)
    for x in range(16):
        assert inner.reconstruct_at(word, x, seed=x) == word[x]


def test_graphs_and_spectrum():
    g = elcc.random_regular(64, 16, seed=7)
    lam = g.second_eigenvalue()
    assert 0.2 < lam < 0.6
    assert g.connected()
    assert math.isclose(elcc.ramanujan_bound(16), 2 * math.sqrt(15) / 16)

    k4 = elcc.complete(4)
    assert math.isclose(k4.second_eigenvalue(), 1.0 / 3.0, rel_tol=1e-6)
    report = elcc.spectrum_check(k4)
    assert report["pass"]
    assert report["max_residual"] < 1e-8

    assert elcc.cycle(6).second_eigenvalue() == pytest.approx(1.0)


def test_tanner_correction_roundtrip():
    g = elcc.AffineGeometry(4, 2, 1)
    inner = elcc.build_inner_code(g, 2)
    graph = elcc.random_regular(64, 16, seed=7)
    code = elcc.TannerCode(inner, graph)
    assert code.length == 1024
    assert code.tree_arity == 4

    zero = code.zero_codeword()
    assert code.is_codeword(zero)

    params = {"gamma": 0.25, "zeta": 2 * math.log(3), "L1": 4, "L2": 4}
    bad, positions = elcc.corrupt(zero, rho=0.003, p=2, seed=11)
    assert len(positions) == 3
    record = code.correct(bad, 10, params, seed=5)
    assert record["symbol"] == 0
    assert record["leaf_reads"] == 4 ** 8

    rows = elcc.success_curve(code, params, [0.0], trials=10, seed=3)
    assert rows[0]["successes"] == 10


def test_planner_and_kl():
    plan = elcc.plan_parameters(
        rho=0.002, q0=3, q_padded=4, d=16, lambda_value=0.48,
        gamma=0.25, zeta=2 * math.log(3), n=1000,
    )
    assert plan["L1"] == 6
    assert plan["C"] == 3
    assert not plan["feasible"]
    assert elcc.minimum_outer_depth(256, 16) == 4
    assert elcc.kl(0.25, 0.1) == pytest.approx(0.09233, abs=1e-4)


def test_walk_tail_nonvacuous():
    k33 = elcc.complete(33)
    zeros = [0] * (33 * 32)
    _, corrupted = elcc.corrupt(zeros, rho=0.1, p=2, seed=9)
    report = elcc.walk_tail_check(k33, corrupted, gamma=0.25, length=40, trials=20000, seed=4)
    assert not report["bound_vacuous"]
    assert report["pass"]
    assert report["empirical_tail"] <= report["kl_bound"]


@pytest.fixture(scope="module")
def cli(tmp_path_factory):
    path = os.environ.get("ELCC_CLI")
    if not path or not os.path.exists(path):
        pytest.skip("ELCC_CLI not set")
    config_dir = os.environ.get("ELCC_CONFIG_DIR", "configs")
    return path, config_dir, tmp_path_factory.mktemp("cli")


def run_cli(cli_path, *args):
    return subprocess.run([cli_path, *args], capture_output=True, text=True)


def test_cli_pipeline(cli):
    cli_path, config_dir, tmp = cli
    config = os.path.join(config_dir, "ag16_small.json")
    art = str(tmp / "art")

    assert run_cli(cli_path, "build", "--config", config, "--out", art).returncode == 0
    assert (tmp / "art" / "tanner.json").exists()

    zero = str(tmp / "zero.cw")
    assert run_cli(cli_path, "encode", "--config", config, "--out", art,
                   "--mode", "zero", "--word-out", zero).returncode == 0

    bad = str(tmp / "bad.cw")
    assert run_cli(cli_path, "corrupt", "--config", config, "--out", art,
                   "--word", zero, "--word-out", bad).returncode == 0

    result = run_cli(cli_path, "correct", "--config", config, "--out", art,
                     "--word", bad, "--position", "5", "--truth", zero)
    assert result.returncode == 0
    record = json.loads(result.stdout)
    assert record["symbol"] == record["truth"] == 0

    # Seeded reruns are byte-identical.
    again = run_cli(cli_path, "correct", "--config", config, "--out", art,
                    "--word", bad, "--position", "5", "--truth", zero)
    assert again.stdout == result.stdout

    # Position out of range is a validation error.
    oob = run_cli(cli_path, "correct", "--config", config, "--out", art,
                  "--word", bad, "--position", "99999")
    assert oob.returncode == 1


def test_cli_experiment_determinism(cli):
    cli_path, config_dir, tmp = cli
    config = os.path.join(config_dir, "ag16_small.json")
    out1, out2 = str(tmp / "exp1"), str(tmp / "exp2")
    assert run_cli(cli_path, "experiment", "--config", config, "--out", out1).returncode == 0
    assert run_cli(cli_path, "experiment", "--config", config, "--out", out2).returncode == 0
    for name in ("success_curve.csv", "walk_tail.csv", "manifest.json"):
        with open(os.path.join(out1, name), "rb") as fh1, open(os.path.join(out2, name), "rb") as fh2:
            assert fh1.read() == fh2.read()


def test_cli_rejects_malformed_config(cli, tmp_path):
    cli_path, _, _ = cli
    bad_config = tmp_path / "bad.json"
    bad_config.write_text('{"graph": {"kind": "torus"}}')
    result = run_cli(cli_path, "build", "--config", str(bad_config), "--out", str(tmp_path / "art"))
    assert result.returncode == 1
    assert "/graph/kind" in result.stderr


def test_cli_spectrum_check(cli):
    cli_path, config_dir, tmp = cli
    config = os.path.join(config_dir, "spectrum_k4.json")
    out = str(tmp / "spec")
    result = run_cli(cli_path, "spectrum-check", "--config", config, "--out", out)
    assert result.returncode == 0
    with open(os.path.join(out, "spectrum.json")) as fh:
        assert json.load(fh)["pass"] is True


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
