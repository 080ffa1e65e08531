from __future__ import annotations

import pytest

from conftest import run_property
from properties import PROPERTIES


@pytest.mark.parametrize("prop", PROPERTIES, ids=[p.__name__ for p in PROPERTIES])
def test_property(prop):
    ok, secs, err = run_property(prop)
    if err is not None:
        raise err
    assert ok
