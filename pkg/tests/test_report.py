"""Canonical JSON and CSV formatting."""

import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from nosig.report import canonical_json, sweep_csv
from nosig.sweep import SweepRow

finite = st.floats(allow_nan=False, allow_infinity=False)
documents = st.recursive(
    st.none() | st.booleans() | finite | st.text(max_size=5),
    lambda inner: st.lists(inner, max_size=4) | st.dictionaries(st.text(max_size=4), inner, max_size=4),
    max_leaves=12,
)


class TestCanonicalJson:
    def test_sorted_compact(self):
        assert canonical_json({"b": 1, "a": [True, None]}) == '{"a":[true,null],"b":1}'

    def test_seventeen_digits(self):
        assert canonical_json(0.1) == "0.10000000000000001"
        assert canonical_json(np.float64(1 / 3)) == "0.33333333333333331"

    def test_negative_zero(self):
        assert canonical_json(-0.0) == "0"

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError):
            canonical_json(float("nan"))

    def test_rejects_unknown_types(self):
        with pytest.raises(TypeError):
            canonical_json({1, 2})

    @given(doc=documents)
    def test_reserialisation_is_identical(self, doc):
        text = canonical_json(doc)
        assert canonical_json(json.loads(text)) == text

    @given(x=finite)
    def test_floats_roundtrip_exactly(self, x):
        assert float(canonical_json(x)) == x


def test_csv_layout():
    rows = [SweepRow((0.0, 0.5), 0.25, "SIGNALLING"), SweepRow((1.0, 0.5), 0.0, "NO_SIGNALLING")]
    text = sweep_csv(rows, ("a", "theta"))
    assert text == "a,theta,distance,verdict\n0,0.5,0.25,SIGNALLING\n1,0.5,0,NO_SIGNALLING\n"
