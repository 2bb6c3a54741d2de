import csv
import io
import json
import math

import numpy as np
import pytest

from freepoles.cli import main
from freepoles.errors import RetryExhausted
from freepoles.functionals import j_gamma, l_gamma
from freepoles.geometry import Configuration, Disk, validate_ray_system
from freepoles.harness import (
    SamplingParams,
    TrialReport,
    constraint_value,
    evaluate_trial,
    generate_configuration,
    normalize_to_constraint,
    run_trial,
    run_verification,
    trial_seed,
)


def test_generated_configuration_is_admissible():
    for seed in range(30):
        cfg = generate_configuration(seed, 3, 1)
        assert cfg.is_valid() and cfg.infinity_domain is None
        gaps = np.diff(np.append(cfg.rays.theta, 2 * math.pi))
        assert gaps.min() >= 0.05
        assert np.all((cfg.rays.moduli >= 0.5) & (cfg.rays.moduli <= 2))
    cfg = generate_configuration(1, 2, "T2")
    assert cfg.infinity_domain is not None and cfg.is_valid()


def test_retry_exhausted():
    with pytest.raises(RetryExhausted):
        generate_configuration(0, 4, 1, SamplingParams(min_gap=2.0))


def test_bad_arguments():
    with pytest.raises(ValueError):
        generate_configuration(0, 1, 1)
    with pytest.raises(ValueError):
        generate_configuration(0, 3, 3)
    with pytest.raises(ValueError):
        run_verification(1, [2], [1.0], 0, 42)


def _simple_cfg(points, r=0.1, r0=0.1):
    rays = validate_ray_system(points)
    return Configuration(rays, tuple(Disk(complex(p), r) for p in rays.points), Disk(0j, r0))


def test_normalize_example():
    cfg = _simple_cfg([2.0, -1.0])
    lv = math.exp(constraint_value(cfg, 1, 1.0))
    cfg = cfg.scaled(3 ** (1 / 3) / lv ** (1 / 3))
    assert math.exp(constraint_value(cfg, 1, 1.0)) == pytest.approx(3.0, rel=1e-12)
    out = normalize_to_constraint(cfg, 1, 1.0)
    ratio = out.rays.points[0] / cfg.rays.points[0]
    assert abs(ratio - 3 ** (-1 / 3)) < 1e-12
    assert abs(constraint_value(out, 1, 1.0)) < 1e-10
    assert out.is_valid()


def test_normalize_idempotent_and_unit_roots():
    for seed in range(20):
        for thm, g in ((1, 0.25), (1, 1.0), (2, 0.5)):
            cfg = normalize_to_constraint(generate_configuration(seed, 4, thm), thm, g)
            again = normalize_to_constraint(cfg, thm, g)
            assert np.max(np.abs(np.subtract(again.rays.points, cfg.rays.points))) < 1e-12
            assert abs(constraint_value(cfg, thm, g)) < 1e-10
    roots = np.exp(2j * np.pi * np.arange(5) / 5)
    cfg = _simple_cfg(roots)
    out = normalize_to_constraint(cfg, 1, 0.5)
    assert np.max(np.abs(np.subtract(out.rays.points, roots))) < 1e-12


def test_scaling_laws(rng):
    for seed in range(50):
        n = int(rng.integers(2, 7))
        g = float(rng.uniform(0, 1))
        t = float(np.exp(rng.uniform(-2, 2)))
        cfg = generate_configuration(seed, n, 1)
        l0, l1 = l_gamma(cfg.rays, g).log_value, l_gamma(cfg.scaled(t).rays, g).log_value
        assert l1 - l0 == pytest.approx((n + g) * math.log(t), abs=1e-10)
        r0 = j_gamma(cfg, g).log_value - l0
        r1 = j_gamma(cfg.scaled(t), g).log_value - l1
        assert abs(r1 - r0) < 1e-9


def test_margin_scale_invariant():
    for seed in range(20):
        for thm, g in ((1, 0.5), (2, 0.5)):
            cfg = generate_configuration(seed, 3, thm)
            a = evaluate_trial(normalize_to_constraint(cfg, thm, g), thm, g)
            b = evaluate_trial(normalize_to_constraint(cfg.scaled(7.3), thm, g), thm, g)
            assert abs(a.margin - b.margin) < 1e-9


def test_near_extremal_margin_small_but_nonnegative():
    # unit roots with disks of radius 2/3 touching the origin disk of radius 1/3
    cfg = _simple_cfg([1, -1], r=2 / 3, r0=1 / 3)
    assert cfg.is_valid()
    rep = evaluate_trial(normalize_to_constraint(cfg, 1, 1.0), 1, 1.0)
    rand = min(run_trial(1, 2, 1.0, trial_seed(42, i)).margin for i in range(200))
    assert 0 <= rep.margin < rand


def test_trial_seed_deterministic_and_distinct():
    seeds = [trial_seed(42, i) for i in range(1000)]
    assert seeds == [trial_seed(42, i) for i in range(1000)]
    assert len(set(seeds)) == 1000
    assert all(0 <= s < 2 ** 64 for s in seeds)


def test_run_verification_small_suite():
    buf = io.StringIO()
    summ = run_verification(1, [2, 3], [0.5, 1.0], 1000, 42, sink=buf)
    assert summ.violations == 0 and summ.trials + summ.errors == 1000
    lines = buf.getvalue().splitlines()
    assert len(lines) == summ.trials
    rec = json.loads(lines[0])
    assert list(rec) == list(TrialReport.__dataclass_fields__)
    assert rec["theorem"] == "T1" and rec["n"] == 2 and rec["gamma"] == 0.5
    assert rec["ok"] is True
    assert rec["margin"] == pytest.approx(math.log(rec["bound"] / rec["functional"]), abs=1e-9)
    buf2 = io.StringIO()
    summ2 = run_verification(1, [2, 3], [0.5, 1.0], 1000, 42, sink=buf2)
    assert buf.getvalue() == buf2.getvalue() and summ.config_digest == summ2.config_digest


def test_theorem2_reports_fixed_gamma():
    buf = io.StringIO()
    summ = run_verification(2, [2, 4], [0.25], 50, 7, sink=buf)
    assert summ.violations == 0
    recs = [json.loads(x) for x in buf.getvalue().splitlines()]
    assert {r["gamma"] for r in recs} == {0.5}
    assert all(len(r["radii"]) == r["n"] + 2 for r in recs)


# command line

def _run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_cli_bounds(capsys):
    code, out, _ = _run(capsys, "bounds", "--theorem", "1", "--n-range", "2..4", "--gamma", "1")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and [int(r["n"]) for r in rows] == [2, 3, 4]
    assert float(rows[0]["bound"]) == pytest.approx(0.912356, abs=1e-6)
    code, out, _ = _run(capsys, "bounds", "--theorem", "2", "--n-range", "2..2")
    assert code == 0 and float(next(csv.DictReader(io.StringIO(out)))["bound"]) == pytest.approx(0.66136, abs=1e-5)


def test_cli_scalar_commands(capsys):
    code, out, _ = _run(capsys, "psi", "--kind", "2", "--beta", "1")
    row = next(csv.DictReader(io.StringIO(out)))
    assert code == 0 and float(row["psi"]) > 0
    code, out, _ = _run(capsys, "beta0", "--kind", "1")
    assert code == 0 and 1.32 < float(next(csv.DictReader(io.StringIO(out)))["beta0"]) < 1.33
    code, out, _ = _run(capsys, "extremal", "--kind", "1", "--n", "3", "--starts", "8")
    assert code == 0 and next(csv.DictReader(io.StringIO(out)))["certified_symmetric"] == "True"
    code, out, _ = _run(capsys, "identity", "--kind", "1", "--n", "4", "--gamma", "0.5")
    assert code == 0 and float(next(csv.DictReader(io.StringIO(out)))["relative_discrepancy"]) < 1e-10


def test_cli_verify_and_exit_codes(capsys, tmp_path):
    out_file = tmp_path / "r.jsonl"
    code, out, _ = _run(capsys, "verify", "--theorem", "1", "--n-range", "2..3", "--gamma-list",
                        "0.5,1", "--trials", "40", "--seed", "3", "--out", str(out_file))
    assert code == 0
    row = next(csv.DictReader(io.StringIO(out)))
    assert int(row["violations"]) == 0
    assert len(out_file.read_text().splitlines()) == int(row["trials"])
    code, _, err = _run(capsys, "verify", "--theorem", "1", "--n-range", "2..3", "--trials", "0",
                        "--out", str(out_file))
    assert code == 1 and "trials" in err
    code, _, _ = _run(capsys, "bounds", "--theorem", "3", "--n-range", "2..3")
    assert code == 1
    code, _, _ = _run(capsys, "psi", "--kind", "1", "--beta", "5")
    assert code == 1


def test_cli_verify_reports_violations(capsys, tmp_path, monkeypatch):
    import freepoles.harness as h
    monkeypatch.setattr(h, "MARGIN_SLACK", 1e6)
    code, _, _ = _run(capsys, "verify", "--theorem", "2", "--n-range", "2..2", "--trials", "3",
                      "--out", str(tmp_path / "v.jsonl"))
    assert code == 2


def test_cli_qd(capsys, tmp_path):
    seeds = tmp_path / "seeds.csv"
    seeds.write_text("re,im\n0.5,0.3\n1.2,0.1\n")
    out_file = tmp_path / "traj.csv"
    code, _, _ = _run(capsys, "qd", "--kind", "1", "--n", "3", "--gamma", "0.5", "--seeds",
                      str(seeds), "--out", str(out_file), "--max-len", "1")
    assert code == 0
    rows = list(csv.DictReader(out_file.open()))
    assert {r["trajectory_id"] for r in rows} == {"0", "1"}
    assert rows[0]["step_index"] == "0" and float(rows[0]["re"]) == 0.5
    code, _, _ = _run(capsys, "qd", "--kind", "1", "--n", "3", "--seeds", str(tmp_path / "nope"),
                      "--out", str(out_file))
    assert code == 1
