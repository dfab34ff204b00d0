import math
import os
from pathlib import Path

import pytest

import smartpath as sp

DATA = Path(os.environ.get("SMARTPATH_TEST_DATA", Path(__file__).parents[1] / "data"))


def test_bernstein_reproduces_linear():
    p = sp.bernstein_poly(lambda x: 2.0 * x - 1.0, 12)
    for t in (0.0, 0.3, 1.0):
        assert p(t) == pytest.approx(2.0 * t - 1.0, abs=1e-12)


def test_bernstein_basis_partition_of_unity():
    assert sum(sp.bernstein_basis_all(9, 0.37)) == pytest.approx(1.0, abs=1e-14)


def test_polyhedron_queries():
    box = sp.ConvexPolyhedron([([1.0, 0.0], 0.0), ([-1.0, 0.0], 1.0), ([0.0, 1.0], 0.0), ([0.0, -1.0], 1.0)])
    assert box.dim == 2
    assert box.interior_contains([0.5, 0.5])
    assert not box.interior_contains([1.0, 0.5])
    assert box.clearance([0.25, 0.5]) == pytest.approx(0.25)
    assert box.segment_clearance([0.25, 0.5], [0.5, 0.5]) == pytest.approx(0.25)


def test_hermite_basis_biorthogonal():
    times = [0.25, 0.75]
    for i in range(2):
        for k in range(2):
            for j in range(2):
                for m in range(2):
                    v = sp.hermite_basis_derivative(times, 1, i, k, m, times[j])
                    assert v == pytest.approx(1.0 if (i, k) == (j, m) else 0.0, abs=1e-10)


def test_plan_scene_a():
    res = sp.plan_scene((DATA / "scene_a.json").read_text())
    assert res.all_pass
    assert res.degree >= 1
    assert len(res.control_points) == 2
    x = res(0.3)
    assert math.hypot(x[0] - 1.6, x[1] - 2.0) < 1e-6


def test_bad_scene_raises():
    with pytest.raises(sp.SceneError):
        sp.plan_scene((DATA / "bad_times.json").read_text())


def test_cli_plan_writes_outputs(tmp_path):
    rc, out, err = sp.cli_plan(str(DATA / "scene_b.json"), str(tmp_path))
    assert rc == 0, err
    for name in ("path.json", "cert.json", "samples.csv", "plot.svg"):
        assert (tmp_path / name).exists()
