from __future__ import annotations

import pytest

from snapcomplex import Complex, RoundCounter, build

# The counters every cross-cutting invariant is exercised against.
TEST_COUNTERS = ("1,1", "2,1", "1,1,1", "2,2", "3,1", "2,1,1", "1,0,1", "1,1,1,1")


@pytest.fixture(scope="session")
def get_complex():
    """Session-wide build cache so the large complexes are built once."""
    built: dict[str, Complex] = {}

    def _get(text: str) -> Complex:
        if text not in built:
            built[text] = build(RoundCounter.parse(text))
        return built[text]

    return _get
