import pytest

from toricdeform.errors import FanFormatError, InvalidFanError
from toricdeform.services.fan_generator import obstructed_threefold
from toricdeform.services.fan_io import content_hash, dump_fan, load_fan, parse_fan

from conftest import FANS_DIR


@pytest.mark.parametrize("path", sorted(FANS_DIR.glob("*.json")), ids=lambda p: p.stem)
def test_fixture_files_round_trip(path):
    text = path.read_text(encoding="utf-8")
    assert dump_fan(parse_fan(text)) == text


def test_fixture_matches_generator():
    fan, digest = load_fan(str(FANS_DIR / "obstructed_threefold.json"))
    expected = obstructed_threefold()
    assert fan.rays == expected.rays
    assert fan.max_cones == expected.max_cones
    assert len(digest) == 64


def test_content_hash_is_stable():
    assert content_hash("abc") == content_hash("abc")
    assert content_hash("abc") != content_hash("abd")


def test_malformed_json_reports_position():
    with pytest.raises(FanFormatError) as info:
        parse_fan('{"rank": 2,\n "rays": [')
    assert info.value.line == 2
    assert info.value.column is not None


def test_missing_fields():
    with pytest.raises(FanFormatError, match="Missing required fields: rays, max_cones"):
        parse_fan('{"rank": 2}')


def test_non_list_rays():
    with pytest.raises(FanFormatError, match="rays must be a list"):
        parse_fan('{"rank": 2, "rays": 5, "max_cones": []}')


def test_non_list_cone_entry():
    with pytest.raises(FanFormatError, match=r"max_cones\[0\]"):
        parse_fan('{"rank": 1, "rays": [[1]], "max_cones": [0]}')


def test_top_level_must_be_object():
    with pytest.raises(FanFormatError):
        parse_fan("[1, 2]")


def test_non_integer_entries():
    with pytest.raises(InvalidFanError):
        parse_fan('{"rank": 1, "rays": [[1.5], [-1]], "max_cones": [[0], [1]]}')


def test_dump_layout():
    text = dump_fan(parse_fan('{"rank": 1, "rays": [[1], [-1]], "max_cones": [[0], [1]]}'))
    assert text == (FANS_DIR / "p1.json").read_text(encoding="utf-8")
