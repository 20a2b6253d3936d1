import json
import math

import numpy as np
from hypothesis import given, strategies as st

from hardy_closure import serialize
from hardy_closure.poly_core import parse_poly


def test_float_format():
    assert serialize.dumps(1.0) == "1.0"
    assert serialize.dumps(0.1) == "0.10000000000000001"
    assert serialize.dumps(-0.0) == "0.0"
    assert serialize.dumps(1e300) == "1.0000000000000001e+300"
    assert serialize.dumps(float("inf")) == '"inf"'
    assert serialize.dumps(float("nan")) == '"nan"'


@given(st.floats(allow_nan=False, allow_infinity=False))
def test_floats_round_trip(x):
    assert json.loads(serialize.dumps(x)) == x


def test_plain_values():
    assert serialize.plain(parse_poly("z1 - 1/2")) == "z1 - 1/2"
    assert serialize.plain(complex(1, -0.0)) == {"re": 1.0, "im": 0.0}
    assert serialize.plain(np.array([1.5, 2.0])) == [1.5, 2.0]
    assert serialize.plain((np.int64(3), np.bool_(True))) == [3, True]


def test_layout_is_stable():
    obj = {"b": [1, 2.5, "x"], "a": {"c": None, "d": []}, "e": [{"f": True}]}
    text = serialize.dumps(obj)
    assert text == ('{\n  "b": [1, 2.5, "x"],\n  "a": {\n    "c": null,\n    "d": []\n  },\n'
                    '  "e": [\n    {\n      "f": true\n    }\n  ]\n}')
    assert json.loads(text) == obj


def test_envelope_schema_first():
    env = serialize.envelope("demo", {"x": 1})
    assert list(env) == ["schema", "kind", "x"] and env["schema"] == 1


def test_unicode_kept():
    assert serialize.dumps("∩") == '"∩"'
    assert math.isclose(json.loads(serialize.dumps([math.pi]))[0], math.pi)
