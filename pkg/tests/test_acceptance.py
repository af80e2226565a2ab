"""Runs the fifteen acceptance criteria once and prints one line per criterion.

Run with ``pytest -s tests/test_acceptance.py`` to see the summary lines.
"""

import pytest

from avoidset import suite


@pytest.fixture(scope="module")
def results():
    out = {res.id: res for res in suite.run_suite("desk", jobs=2)}
    print()
    for cid in sorted(out):
        print(suite.summary_line(out[cid]))
    return out


def test_registry_is_complete():
    assert sorted(c.id for c in suite.REGISTRY) == list(range(1, 16))


@pytest.mark.parametrize("cid", range(1, 16))
def test_criterion(results, cid):
    res = results[cid]
    assert res.passed, f"{suite.summary_line(res)}\n{res.details}"


def test_shadow_scan_outcome_is_reported(results):
    details = results[14].details
    for n in (5, 6):
        entry = details[f"n={n}"]
        assert entry["holds_everywhere"] or entry["lhs"] < entry["rhs"]


def test_convention_artifact_reported(results):
    assert "artifact" in str(results[5].details).lower()
