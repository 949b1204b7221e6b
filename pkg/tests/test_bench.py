import numpy as np
import pytest

from framekit import (
    CSV_COLUMNS,
    InvalidParametersError,
    SolverConfig,
    controller_for,
    frame_operator,
    positive_definite_bounds,
    rows_to_csv,
    run_benchmark,
)
from framekit.instances import generate_instance
from framekit.operators import hermitian_part


def test_controller_for_identity():
    ctrl = controller_for("identity", np.diag([2.0, 5.0]))
    np.testing.assert_array_equal(ctrl.matrix, np.eye(2))


def test_controller_for_exact_inverse():
    inst, _, _ = generate_instance("ill-conditioned", 6, cond_target=50.0, seed=1)
    S = frame_operator(inst)
    ctrl = controller_for("exact-inverse", S)
    np.testing.assert_allclose(ctrl.matrix @ S, np.eye(6), atol=1e-9)


def test_controller_for_jacobi_snaps_to_powers_of_two():
    inst, _, _ = generate_instance("ill-conditioned", 8, cond_target=1e3, seed=2)
    S = frame_operator(inst)
    ctrl = controller_for("jacobi", S)
    diag = np.diag(ctrl.matrix).real
    exponents = np.log2(1.0 / diag)
    np.testing.assert_allclose(exponents, np.round(exponents), atol=1e-12)
    # snapping keeps each entry within a factor sqrt(2) of the exact reciprocal
    ratio = diag * np.diag(S).real
    assert np.all(ratio >= 1 / np.sqrt(2) - 1e-12)
    assert np.all(ratio <= np.sqrt(2) + 1e-12)
    # on a diagonal S that bounds the preconditioned condition number by 2
    bounds = positive_definite_bounds(hermitian_part(ctrl.matrix @ S))
    assert bounds.condition <= 2.0 + 1e-9


def test_controller_for_unknown_strategy():
    with pytest.raises(InvalidParametersError):
        controller_for("newton", np.eye(2))


def test_run_benchmark_grid_shape_and_ids():
    rows = run_benchmark(
        kinds=["ill-conditioned"], dims=[4, 6], cond_targets=[10.0],
        trials=2, config=SolverConfig(seed=11),
    )
    assert len(rows) == 4
    assert rows[0].instance_id == "ill-conditioned-d4-c10-t0"
    assert rows[-1].instance_id == "ill-conditioned-d6-c10-t1"
    for row in rows:
        assert row.converged_plain and row.converged_controlled
        assert row.n_vectors == 2 * row.dim
        assert row.speedup > 1.0  # jacobi beats plain on these instances
        assert row.cond_precond < row.cond_s


def test_run_benchmark_identity_controller_matches_plain_exactly():
    rows = run_benchmark(
        kinds=["ill-conditioned"], dims=[5], cond_targets=[100.0],
        trials=3, config=SolverConfig(seed=4), controller="identity",
    )
    for row in rows:
        assert row.iters_plain == row.iters_controlled
        assert row.speedup == 1.0


def test_run_benchmark_parallel_equals_serial():
    kwargs = dict(
        kinds=["ill-conditioned"], dims=[4, 5],
        cond_targets=[50.0], trials=2, config=SolverConfig(seed=21),
    )
    serial = run_benchmark(workers=1, **kwargs)
    parallel = run_benchmark(workers=3, **kwargs)
    assert serial == parallel
    assert rows_to_csv(serial) == rows_to_csv(parallel)

    # a grid with failed cells (NaN metrics) still serializes identically
    kwargs = dict(
        kinds=["ill-conditioned", "random-frame"], dims=[4],
        cond_targets=[50.0], trials=2, config=SolverConfig(seed=21),
    )
    serial = run_benchmark(workers=1, **kwargs)
    parallel = run_benchmark(workers=3, **kwargs)
    assert rows_to_csv(serial) == rows_to_csv(parallel)


def test_run_benchmark_validation():
    with pytest.raises(InvalidParametersError):
        run_benchmark(["random-frame"], [4], [None], trials=0)
    with pytest.raises(InvalidParametersError):
        run_benchmark(["random-frame"], [4], [None], trials=1, workers=0)


def test_failed_cells_become_nan_rows_not_crashes():
    rows = run_benchmark(
        kinds=["random-frame"], dims=[4], cond_targets=[None],
        trials=2, config=SolverConfig(seed=8), controller="not-a-strategy",
    )
    assert len(rows) == 2
    for row in rows:
        assert not row.converged_plain and not row.converged_controlled
        assert np.isnan(row.speedup)


def test_csv_header_is_pinned():
    assert ",".join(CSV_COLUMNS) == (
        "instance_id,dim,n,cond_S,cond_precond,iters_plain,iters_controlled,"
        "speedup,converged_plain,converged_controlled"
    )


def test_csv_rows_round_trip_floats():
    rows = run_benchmark(
        kinds=["ill-conditioned"], dims=[4], cond_targets=[25.0],
        trials=1, config=SolverConfig(seed=31),
    )
    text = rows_to_csv(rows)
    lines = text.splitlines()
    assert lines[0] == ",".join(CSV_COLUMNS)
    assert text.endswith("\n")
    fields = lines[1].split(",")
    assert fields[-2:] == ["true", "true"]
    # shortest round-trip float formatting: parsing recovers the exact value
    assert float(fields[3]) == rows[0].cond_s
    assert float(fields[7]) == rows[0].speedup
    assert int(fields[5]) == rows[0].iters_plain
