from __future__ import annotations

from fractions import Fraction as F

import pytest
from hypothesis import HealthCheck, settings

from skeleton_kit import build_skeleton, validate_complex

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@pytest.fixture
def edge_23():
    """Two vertices of multiplicity 2 and 3 joined by an edge, curve-case classes."""
    return validate_complex(
        [("1", 2), ("2", 3)],
        [("1",), ("2",), ("1", "2")],
        {
            ("1",): {"dim": 1, "classes": {"1": [F(-3, 2)], "2": [1]}, "test_curves": [[1]]},
            ("2",): {"dim": 1, "classes": {"2": [F(-2, 3)], "1": [1]}, "test_curves": [[1]]},
        },
    )


@pytest.fixture
def edge_11():
    return build_skeleton({"1": 1, "2": 1}, [("1", "2")]).complex


@pytest.fixture
def skel_23():
    return build_skeleton({"1": 2, "2": 3}, [("1", "2")])


def pytest_terminal_summary(terminalreporter):
    import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for name in sorted(test_acceptance.RESULTS):
            terminalreporter.write_line(test_acceptance.RESULTS[name])
