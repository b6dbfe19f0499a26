"""Report envelopes, series extraction, worker caps, space validation."""

import json

import numpy as np
import pytest

from alexkit.errors import GeometryError
from alexkit.reporting import (
    dump_canonical,
    extract_series,
    make_envelope,
    worker_count,
    write_csv,
    write_report,
)
from alexkit.spaces import DiscreteLengthSpace


def test_envelope_fields_and_canonical_dump():
    env = make_envelope("space scan", {"kappa": 1.0}, {"min_defect": np.float64(0.25)},
                        seed=3, tolerances={"tol": 1e-6}, h_err=0.03, timestamp=False)
    assert env["tool"] == "alexkit"
    assert env["seed"] == 3
    assert "timestamp" not in env
    text = dump_canonical(env)
    assert json.loads(text)["result"]["min_defect"] == 0.25
    assert dump_canonical(env) == text


def test_write_report_atomic(tmp_path):
    path = tmp_path / "rep.json"
    write_report(str(path), {"a": 1})
    assert json.loads(path.read_text()) == {"a": 1}
    leftovers = [p for p in tmp_path.iterdir() if p.name != "rep.json"]
    assert not leftovers


def test_write_csv_and_extract_series(tmp_path):
    env = {"result": {"series": {"x": [0.0, 1.0], "flag": [1, 0]}}}
    header, cols = extract_series(env, "series")
    assert header == ["flag", "x"]
    out = tmp_path / "s.csv"
    write_csv(str(out), header, cols)
    lines = out.read_text().splitlines()
    assert lines[0] == "flag,x"
    assert lines[1] == "1,0.0"


def test_extract_series_missing_name():
    with pytest.raises(GeometryError):
        extract_series({"result": {}}, "series")


def test_worker_count_env_cap(monkeypatch):
    monkeypatch.delenv("ALEXKIT_THREADS", raising=False)
    free = worker_count()
    assert free >= 1
    monkeypatch.setenv("ALEXKIT_THREADS", "1")
    assert worker_count() == 1
    monkeypatch.setenv("ALEXKIT_THREADS", "not-a-number")
    assert worker_count() == free


def test_scan_results_independent_of_worker_cap(monkeypatch):
    from alexkit.domains import unit_sphere_points
    from alexkit.spaces import scan_quadruples

    pts = unit_sphere_points(120, seed=0)
    monkeypatch.setenv("ALEXKIT_THREADS", "1")
    one = scan_quadruples(pts, 1.0, samples=30_000, seed=4).to_dict()
    monkeypatch.setenv("ALEXKIT_THREADS", "4")
    four = scan_quadruples(pts, 1.0, samples=30_000, seed=4).to_dict()
    assert one == four


def test_space_validation_rejects_bad_graphs():
    coords = np.array([[0.0, 0.0], [1.0, 0.0], [2.0, 0.0]])
    in_u = np.array([True, True, True])
    with pytest.raises(GeometryError):
        # disconnected completion
        DiscreteLengthSpace(coords, in_u, [[0, 1]], [1.0])
    with pytest.raises(GeometryError):
        # nonpositive weight
        DiscreteLengthSpace(coords, in_u, [[0, 1], [1, 2]], [1.0, 0.0])
    with pytest.raises(GeometryError):
        # weight disagrees with the embedding
        DiscreteLengthSpace(coords, in_u, [[0, 1], [1, 2]], [1.0, 3.0])


def test_comparison_angle_requires_distinct_points(full_square):
    from alexkit.spaces import comparison_angle

    with pytest.raises(GeometryError):
        comparison_angle(full_square, 3, 3, 7, 0.0)
