import subprocess
import sys

import numpy as np
import pytest

from momhull import lift
from momhull.cli import RunConfig, build_parser, main, tolerances_from
from momhull.errors import InvalidShape
from momhull.io import format_curve, format_points, parse_namings, parse_points
from momhull.transform import random_curve

from conftest import UNIT, WIDE


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_name_radau(tmp_path, capsys):
    pts = write(tmp_path, "p.txt", "2 0 1\n0.5 0.3\n")
    code, out, _ = run(["name", pts], capsys)
    assert code == 0
    (P,) = parse_namings(out)
    assert np.allclose([(a.t, a.c) for a in P.atoms], [(0, 1 / 6), (0.6, 5 / 6)], rtol=0, atol=1e-12)


def test_name_outside_exit_2(tmp_path, capsys):
    pts = write(tmp_path, "p.txt", "2 0 1\n0.5 0.6\n")
    code, _, err = run(["name", pts], capsys)
    assert code == 2
    assert "(t - t_min)(t_max - t) Hankel condition" in err


@pytest.mark.parametrize("n", [3, 4])
def test_name_curve_point(tmp_path, capsys, n):
    pts = write(tmp_path, "p.txt", format_points(UNIT, [lift(0.3, n)]))
    code, out, _ = run(["name", pts], capsys)
    (P,) = parse_namings(out)
    heavy = [a for a in P.atoms if a.c > 1e-12]
    assert code == 0 and len(heavy) == 1 and heavy[0].t == pytest.approx(0.3, abs=1e-9)
    if n % 2 == 0:
        assert len(P.atoms) == 2 and P.atoms[0] == (0.0, 0.0)


def test_eval(tmp_path, capsys):
    naming = write(tmp_path, "n.txt", "n 3\nt_min 0\nt_max 1\nparity integer\natoms 2\n0.25 0.5\n0.75 0.5\n")
    code, out, _ = run(["eval", naming], capsys)
    assert code == 0
    assert np.allclose(parse_points(out).points[0].v, [0.5, 0.3125, 0.21875], rtol=0, atol=1e-15)


def test_canon_idempotent_bytes(tmp_path, capsys):
    pts = write(tmp_path, "p.txt", "3 -1 2\n0.5 1.2 0.9\n")
    _, first, _ = run(["name", pts], capsys)
    canon = write(tmp_path, "c.txt", first)
    code, second, _ = run(["canon", canon], capsys)
    assert code == 0 and second == first


def test_reduce(tmp_path, capsys):
    naming = write(
        tmp_path, "n.txt", "n 2\nt_min 0\nt_max 1\nparity integer\natoms 3\n0.2 0.3\n0.5 0.3\n0.8 0.4\n"
    )
    code, out, _ = run(["reduce", naming], capsys)
    (P,) = parse_namings(out)
    assert code == 0 and P.parity.value == "half" and P.atoms[0].t == 0.0


def test_canon_wrong_parity_exit_1(tmp_path, capsys):
    naming = write(tmp_path, "n.txt", "n 2\nt_min 0\nt_max 1\nparity integer\natoms 1\n0.2 1\n")
    code, _, err = run(["canon", naming], capsys)
    assert code == 1 and "parity" in err


def test_pv_det(capsys):
    code, out, _ = run(["pv-det", "0", "1"], capsys)
    assert code == 0 and out.strip() == "1"
    code, out, _ = run(["pv-det", "2", "2", "0", "1", "--method", "both"], capsys)
    assert [float(x) for x in out.split()] == pytest.approx([-1.0, -1.0], abs=1e-14)
    code, _, _ = run(["pv-det", "2", "2", "0.5", "0.5"], capsys)
    assert code == 3


def test_sample_deterministic(capsys):
    _, a, _ = run(["sample", "--n", "3", "--count", "5", "--seed", "4"], capsys)
    _, b, _ = run(["sample", "--n", "3", "--count", "5", "--seed", "4"], capsys)
    _, c, _ = run(["sample", "--n", "3", "--count", "5", "--seed", "5"], capsys)
    assert a == b and a != c
    assert len(parse_points(a).points) == 5


def test_check_member_oracle_200(tmp_path, capsys):
    _, pts, _ = run(["sample", "--n", "3", "--count", "200", "--seed", "1", "--t-min", "-1", "--t-max", "2"], capsys)
    path = write(tmp_path, "p.txt", pts)
    code, out, _ = run(["check-member", path, "--oracle", "--jobs", "2"], capsys)
    assert code == 0
    assert out.strip().splitlines()[-1] == "disagreements 0"
    assert len(out.strip().splitlines()) == 201


def test_check_member_plain(tmp_path, capsys):
    path = write(tmp_path, "p.txt", "2 0 1\n0.5 0.3\n0.5 0.6\n0.5 0.25\n")
    code, out, _ = run(["check-member", path], capsys)
    tags = [line.split()[0] for line in out.strip().splitlines()]
    assert code == 0 and tags == ["Inside", "Outside", "BoundaryFace"]


def test_transform_both_directions(tmp_path, capsys):
    curve = random_curve(3, seed=3)
    cpath = write(tmp_path, "curve.txt", format_curve(curve))
    naming = write(tmp_path, "n.txt", "n 3\nt_min 0\nt_max 1\nparity integer\natoms 2\n0.25 0.5\n0.75 0.5\n")
    code, out, _ = run(["transform", cpath, naming], capsys)
    rows = out.strip().splitlines()
    assert code == 0 and rows[-1].startswith("sum ")
    w = [float(x) for x in rows[-1].split()[1:]]
    pts = write(tmp_path, "w.txt", format_points(UNIT, [type(lift(0, 3))(3, w)]))
    code, out, _ = run(["transform", cpath, pts], capsys)
    (P,) = parse_namings(out)
    assert np.allclose([(a.t, a.c) for a in P.atoms], [(0.25, 0.5), (0.75, 0.5)], atol=1e-9)


def test_parse_error_exit_1(tmp_path, capsys):
    bad = write(tmp_path, "bad.txt", "2 0 1\n0.5\n")
    code, _, err = run(["name", bad], capsys)
    assert code == 1 and "coordinates" in err
    assert main(["name", str(tmp_path / "missing.txt")]) == 1
    assert main(["no-such-command"]) == 1


def test_tolerance_precedence(monkeypatch):
    args = build_parser().parse_args(["name", "x", "--eps-mem", "1e-6"])
    tol = tolerances_from({"MOMHULL_TOL": "rel_t=1e-8,eps_mem=1e-7"}, args)
    assert tol.rel_t == 1e-8 and tol.eps_mem == 1e-6
    with pytest.raises(ValueError):
        tolerances_from({"MOMHULL_TOL": "eps_c=-1"}, build_parser().parse_args(["name", "x"]))
    with pytest.raises(InvalidShape):
        RunConfig(jobs=0)


def test_env_override_changes_verdict(tmp_path):
    # a far-interval point whose zero weight rounds to -1.1e-9 needs a looser clamp
    from momhull import Interval, Naming, Parity, evaluate

    I = Interval(2.0, 5.0)
    P = Naming.build(I, 6, [(2.0, 0.0), (2.0190158482503726, 32 / 79), (3.5, 15 / 79), (5.0, 32 / 79)], Parity.HALF)
    path = write(tmp_path, "p.txt", format_points(I, [evaluate(P)]))
    cmd = [sys.executable, "-m", "momhull", "name", path]
    strict = subprocess.run(cmd, capture_output=True, text=True)
    loose = subprocess.run(cmd, capture_output=True, text=True, env={"MOMHULL_TOL": "eps_mem=1e-7", "PATH": ""})
    assert strict.returncode == 2 and loose.returncode == 0
