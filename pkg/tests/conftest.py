from __future__ import annotations

from pathlib import Path

import pytest

from gnatfam import (
    Cone,
    Fan,
    GroupData,
    LatticeN,
    Ray,
    build_quiver,
    max_shift_family,
    search_symmetric_triangulations,
)

import reference_values as rv

REPO_ROOT = Path(__file__).resolve().parents[1]
FIXTURE_DIR = REPO_ROOT / "fixtures"


@pytest.fixture(scope="session")
def flagship_group():
    return GroupData(rv.GROUP_ORDERS, rv.GROUP_WEIGHTS)


@pytest.fixture(scope="session")
def flagship_lattice(flagship_group):
    return LatticeN(flagship_group)


@pytest.fixture(scope="session")
def canonical_rays():
    return tuple(Ray(i, rv.RAY_GENERATORS[i]) for i in range(1, 11))


@pytest.fixture(scope="session")
def fan_y(flagship_lattice, canonical_rays):
    fans = search_symmetric_triangulations(
        flagship_lattice,
        required_edges=((1, 7), (2, 4), (3, 9)),
        symmetry=(2, 3, 1),
        rays=canonical_rays,
    )
    assert len(fans) == 1
    return fans[0]


@pytest.fixture(scope="session")
def fan_cluster(canonical_rays):
    return Fan(canonical_rays, tuple(Cone(c) for c in rv.CLUSTER_CONES))


@pytest.fixture(scope="session")
def max_shift_y(flagship_group, fan_y):
    return max_shift_family(flagship_group, fan_y)


@pytest.fixture(scope="session")
def flagship_quiver(flagship_group):
    return build_quiver(flagship_group)
