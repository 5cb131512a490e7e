import random
from fractions import Fraction

import pytest

from pentagram import io as state_io
from pentagram.dynamics import CornerState, MapShape, PQState, XYState, corner_to_xy, project_pq
from pentagram.errors import StateFormatError
from pentagram.geometry import polygon_from_xy
from pentagram.leapfrog import random_leapfrog
from pentagram.sampling import random_corner, random_pq, random_xy, rng_for

F = Fraction


def _examples():
    s = random_xy(MapShape(3, 5), rng_for(0, "io"))
    return [
        s,
        random_pq(MapShape(4, 7), rng_for(0, "io-pq"), level=F(-2, 3)),
        random_corner(6, rng_for(0, "io-corner")),
        polygon_from_xy(s),
        random_leapfrog(4, random.Random(0), closed=False),
    ]


@pytest.mark.parametrize("state", _examples(), ids=list(state_io.MODES))
def test_roundtrip_every_mode(state, tmp_path):
    text = state_io.dumps(state)
    back = state_io.loads(text)
    assert back == state
    assert state_io.dumps(back) == text
    path = tmp_path / "state.json"
    state_io.dump(state, path)
    assert state_io.load(path) == state


def test_rationals_are_exact():
    s = state_io.loads('{"mode": "xy", "k": 2, "x": ["1/3", "2"], "y": ["-5/7", "1"]}')
    assert s.x == (F(1, 3), F(2))
    assert '"1/3"' in state_io.dumps(s)


@pytest.mark.parametrize("text,fragment", [
    ('{"mode": "xy", "k": 2, "x": ["1"], "y": ["1"], "z": 1}', "'z'"),
    ('{"mode": "xy", "k": 2, "x": ["1", "2"]}', "'y'"),
    ('{"mode": "abc"}', "mode"),
    ('{"mode": "xy", "k": 2, "x": ["1", "0.5"], "y": ["1", "1"]}', "'x'[1]"),
    ('{"mode": "xy", "k": "2", "x": ["1", "2"], "y": ["1", "1"]}', "'k'"),
    ('{"mode": "leapfrog", "n": 2, "S_minus": [["1"], ["2", "1"]], "S": [["0", "1"], ["3", "1"]],'
     ' "monodromy": [["1", "0"], ["0", "1"]]}', "'S_minus'[0]"),
    ('[1, 2]', "object"),
    ('{"mode": "xy",\n "k": 2,,}', "line 2"),
])
def test_bad_documents_are_named(text, fragment):
    with pytest.raises(StateFormatError) as info:
        state_io.loads(text)
    assert fragment in str(info.value)


def test_invalid_shape_is_a_format_error():
    with pytest.raises(StateFormatError):
        state_io.loads('{"mode": "xy", "k": 5, "x": ["1", "2"], "y": ["1", "1"]}')


def test_conversions():
    s = random_xy(MapShape(3, 6), rng_for(1, "conv"))
    assert state_io.convert(s, "pq") == project_pq(s)
    assert state_io.convert(state_io.convert(s, "polygon"), "xy") == s
    c = random_corner(5, rng_for(1, "conv-c"), lambda c: corner_to_xy(c).is_regular())
    assert state_io.convert(c, "xy") == corner_to_xy(c)
    assert state_io.convert(s, "xy", k=4).shape == MapShape(4, 6)
    with pytest.raises(StateFormatError):
        state_io.convert(project_pq(s), "xy")
    with pytest.raises(StateFormatError):
        state_io.convert(s, "corner")


def test_state_mode_rejects_other_objects():
    with pytest.raises(TypeError):
        state_io.state_mode(object())
    assert state_io.state_mode(PQState.of(2, [1, 1], [1, 1])) == "pq"
    assert state_io.state_mode(CornerState([F(1)] * 5, [F(1)] * 5)) == "corner"
    assert state_io.state_mode(XYState.of(2, [1, 1], [1, 1])) == "xy"
