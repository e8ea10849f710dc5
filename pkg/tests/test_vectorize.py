import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from trajscope import catalog
from trajscope.taxonomy import TaxonomyNode
from trajscope.vectorize import (distance_geometry_signatures, node_subspace,
                                 partition_bounds, vectorize_dataset,
                                 vectorize_trajectory)

from conftest import make_trajectory, straight_equator_trajectory, synthetic_dataset


def test_partition_23_into_5():
    bounds = partition_bounds(23, 5)
    sizes = [stop - start for start, stop in bounds]
    assert sizes == [5, 5, 5, 4, 4]
    assert bounds[0][0] == 0 and bounds[-1][1] == 23


@given(st.integers(min_value=1, max_value=500), st.integers(min_value=1, max_value=5))
def test_partition_properties(n, k):
    bounds = partition_bounds(n, k)
    sizes = [stop - start for start, stop in bounds]
    assert len(bounds) == k
    assert sum(sizes) == n
    assert max(sizes) - min(sizes) <= 1
    assert sizes == sorted(sizes, reverse=True)  # remainders to earliest parts
    for (_, stop), (start, _) in zip(bounds, bounds[1:]):
        assert stop == start


def test_straight_path_signatures_are_one():
    traj = straight_equator_trajectory(n=10)
    sigs = distance_geometry_signatures(traj)
    assert sigs.shape == (15,)
    assert np.all(np.abs(sigs - 1.0) < 1e-6)


def test_out_and_back_signature():
    # go east 5 points then retrace back to the start
    lon = np.array([0.0, 0.01, 0.02, 0.03, 0.04, 0.03, 0.02, 0.01, 0.0])
    traj = make_trajectory("loop", lon, np.zeros(9))
    sigs = distance_geometry_signatures(traj)
    dg_1_1 = sigs[catalog.INDEX_BY_NAME["distance_geometry_1_1"] - 57]
    assert dg_1_1 <= 1e-3


def test_right_angle_L_path():
    # 9 points: 5 east along the equator then 4 more due north; k=2 splits at
    # the corner so both halves are straight while the full path bends 90 deg.
    d = 0.001
    lon = np.array([0, d, 2 * d, 3 * d, 4 * d, 4 * d, 4 * d, 4 * d, 4 * d])
    lat = np.array([0, 0, 0, 0, 0, d, 2 * d, 3 * d, 4 * d])
    traj = make_trajectory("L", lon, lat)
    sigs = distance_geometry_signatures(traj)
    names = [v.name for v in catalog.VARIABLES if v.base == "distance_geometry"]
    by_name = dict(zip(names, sigs))
    assert by_name["distance_geometry_2_1"] == pytest.approx(1.0, abs=1e-6)
    assert by_name["distance_geometry_2_2"] == pytest.approx(1.0, abs=1e-6)
    assert by_name["distance_geometry_1_1"] == pytest.approx(math.sqrt(2) / 2, abs=1e-3)


def test_signatures_in_unit_interval(rng):
    ds = synthetic_dataset(5, rng)
    for traj in ds.trajectories.values():
        sigs = distance_geometry_signatures(traj)
        assert np.all(sigs >= 0.0) and np.all(sigs <= 1.0)


def test_two_point_trajectory_signatures():
    traj = make_trajectory("tiny", [0.0, 0.01], [0.0, 0.0])
    sigs = distance_geometry_signatures(traj)
    # single-point parts count as straight
    assert np.all((sigs == 1.0) | (np.abs(sigs - 1.0) < 1e-9))


def test_vector_length_72(rng):
    ds = synthetic_dataset(3, rng)
    for traj in ds.trajectories.values():
        fv = vectorize_trajectory(traj)
        assert fv.values.shape == (72,)
        assert np.all(np.isfinite(fv.values))


def test_straight_uniform_motion_vector():
    traj = straight_equator_trajectory(n=20)
    fv = vectorize_trajectory(traj)
    by_name = dict(zip(catalog.VARIABLE_NAMES, fv.values))
    for stat in ("mean", "quant_max", "sd", "kurt"):
        assert by_name[f"angles_{stat}"] == pytest.approx(0.0, abs=1e-9)
    for k, j in catalog.SIGNATURE_PAIRS:
        assert by_name[f"distance_geometry_{k}_{j}"] == pytest.approx(1.0, abs=1e-6)


def test_speed_spike_hits_quant_max(rng):
    # equal time steps, one long jump in the middle
    lon = np.cumsum(np.concatenate([[0], np.full(9, 0.001)]))
    lon[5:] += 0.05  # spike segment between index 4 and 5
    traj = make_trajectory("spike", lon, np.zeros(10))
    fv = vectorize_trajectory(traj)
    by_name = dict(zip(catalog.VARIABLE_NAMES, fv.values))
    assert by_name["speed_quant_max"] == pytest.approx(np.max(traj.features.speed))
    assert by_name["speed_quant_max"] > 10 * by_name["speed_quant_median"]


def test_catalog_shape_and_names():
    assert len(catalog.VARIABLES) == 72
    assert len(set(catalog.VARIABLE_NAMES)) == 72
    for expected in ("speed_kurt", "acceleration_quant_95", "angles_meanse",
                     "distance_geometry_5_4", "speed_mad", "speed_vcoef",
                     "angles_range", "distance_geometry_3_1"):
        assert expected in catalog.INDEX_BY_NAME


def test_subspace_sizes():
    assert len(node_subspace(TaxonomyNode.SPEED)) == 19
    assert len(node_subspace(TaxonomyNode.ACCELERATION)) == 19
    assert len(node_subspace(TaxonomyNode.INDENTATION)) == 19
    assert len(node_subspace(TaxonomyNode.CURVATURE)) == 15
    assert len(node_subspace(TaxonomyNode.KINEMATIC)) == 38
    assert len(node_subspace(TaxonomyNode.GEOMETRIC)) == 34


def test_subspace_partition_properties():
    speed = set(node_subspace(TaxonomyNode.SPEED))
    acc = set(node_subspace(TaxonomyNode.ACCELERATION))
    ind = set(node_subspace(TaxonomyNode.INDENTATION))
    curv = set(node_subspace(TaxonomyNode.CURVATURE))
    kin = set(node_subspace(TaxonomyNode.KINEMATIC))
    geo = set(node_subspace(TaxonomyNode.GEOMETRIC))
    assert speed & acc == set()
    assert ind & curv == set()
    assert kin == speed | acc
    assert geo == ind | curv
    assert kin & geo == set()
    assert kin | geo == set(range(72))


def test_vectorize_dataset_matrix(rng):
    ds = synthetic_dataset(4, rng)
    vd = vectorize_dataset(ds)
    assert vd.matrix.shape == (4, 72)
    assert vd.ids == ds.ids()
    first = ds.ids()[0]
    assert np.array_equal(vd.row(first), vectorize_trajectory(ds.trajectories[first]).values)
