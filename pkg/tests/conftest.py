"""
Shared fixtures: the catalog braces and the small-order enumeration are built once per session.
"""

import pytest

from bracelit import atlas
from bracelit.grp import small_groups


@pytest.fixture(scope="session")
def q8():
    return atlas.build_q8()


@pytest.fixture(scope="session")
def acbon12():
    return atlas.build_acbon12()


@pytest.fixture(scope="session")
def b24():
    return atlas.build_b24()


@pytest.fixture(scope="session")
def by_group():
    """One brace list per additive group of order 1..8, keyed by group name."""
    return {g.name: atlas.enumerate_skew_braces(g) for n in range(1, 9) for g in small_groups(n)}


@pytest.fixture(scope="session")
def enumerated(by_group):
    return [b for braces in by_group.values() for b in braces]
