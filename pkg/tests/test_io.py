import json

import pytest
from hypothesis import given

from cocovex import io
from cocovex.coconvex import covolume
from cocovex.errors import BodyValidationError, ParseError
from cocovex.polygon2d import WedgeFamily

from strategies import cone_bodies


def test_round_trip_staircase_file(data_dir):
    a = io.load_body(data_dir / "staircase2.body")
    again = io.parse_body(io.loads(io.dumps(io.body_to_obj(a))))
    assert again.base_points == a.base_points and again.cone == a.cone and again.xi.xi == a.xi.xi
    assert io.dumps(io.body_to_obj(again)) == io.dumps(io.body_to_obj(a))


@given(cone_bodies(2))
def test_round_trip_random_bodies(a):
    text = io.dumps(io.body_to_obj(a))
    assert io.dumps(io.body_to_obj(io.parse_body(io.loads(text)))) == text


def test_float_rejected(data_dir):
    with pytest.raises(ParseError, match="float"):
        io.load_body(data_dir / "bad-float.body")
    with pytest.raises(ParseError):
        io.rational("1.5", "x")


def test_zero_generator_rejected():
    obj = {"cone": {"generators": [[0, 0], [0, 1]]}, "delta": {"basePoints": [[1, 1]]}, "xi": [1, 1]}
    with pytest.raises(ParseError, match=r"cone.generators\[0\]"):
        io.parse_body(obj)


def test_field_diagnostics():
    with pytest.raises(ParseError, match="missing field 'delta'"):
        io.parse_body({"cone": {"generators": [[1]]}, "xi": [1]})
    with pytest.raises(ParseError, match=r"delta.basePoints\[0\]: expected 2 coordinates"):
        io.parse_body({"cone": {"generators": [[1, 0], [0, 1]]}, "delta": {"basePoints": [[1]]}, "xi": [1, 1]})
    with pytest.raises(ParseError, match="malformed rational"):
        io.rational("3/x", "x")
    with pytest.raises(ParseError, match="zero denominator"):
        io.rational("3/0", "x")
    with pytest.raises(ParseError, match="line 1"):
        io.loads("{nope")


def test_invalid_body_is_validation_error():
    obj = {"cone": {"generators": [[1, 0], [0, 1]]}, "delta": {"basePoints": [[1, 1]]}, "xi": [1, 1]}
    with pytest.raises(BodyValidationError):
        io.parse_body(obj)


def test_rational_strings():
    obj = {"cone": {"generators": [[1, 0], [0, 1]]}, "delta": {"basePoints": [["3/2", 0], [0, "5/2"]]}, "xi": [1, 1]}
    assert covolume(io.parse_body(obj)) == io.rational("15/8", "x")


def test_family_files(data_dir):
    fam = io.load_family(data_dir / "staircase-pair.fam")
    assert len(fam.bodies) == 2
    w = io.load_family(data_dir / "wedge3.fam")
    assert isinstance(w, WedgeFamily) and w.n == 3
    assert io.parse_family(io.family_to_obj(w)) == w
    again = io.parse_family(io.loads(io.dumps(io.family_to_obj(fam))))
    assert [b.base_points for b in again.bodies] == [b.base_points for b in fam.bodies]


def test_family_errors(tmp_path):
    with pytest.raises(ParseError, match="unknown family kind"):
        io.parse_family({"kind": "mystery"})
    with pytest.raises(ParseError, match="No such file"):
        io.parse_family({"kind": "coconvex", "bodies": ["missing.body"]}, tmp_path)
    with pytest.raises(ParseError, match="expected an integer"):
        io.parse_family({"kind": "wedge", "normals": [["1/2", 1]], "wedge": [0, 1]})
