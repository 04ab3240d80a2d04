import json

import pytest

from scrollrank._io import check_file_exists, dumps, load_json, save_json


def test_json_round_trip(tmp_path):
    data = {"m": 2, "coords": [{"alpha": [1, 0], "value": "1/2"}]}
    path = save_json(data, tmp_path / "point.json")
    assert path.exists()
    assert load_json(path) == data
    assert load_json(str(path)) == data


def test_dumps():
    text = dumps({"b": 1, "a": [1, 2]})
    assert json.loads(text) == {"b": 1, "a": [1, 2]}
    # keys keep insertion order
    assert text.index('"b"') < text.index('"a"')
    assert "\n  " in text


def test_check_file_exists(tmp_path):
    @check_file_exists
    def first_line(path):
        """reads"""
        return path.read_text().splitlines()[0]

    assert first_line.__name__ == "first_line"
    assert first_line.__doc__ == "reads"

    with pytest.raises(FileNotFoundError):
        first_line(tmp_path / "missing.txt")
    with pytest.raises(FileNotFoundError):
        load_json(tmp_path / "missing.json")

    path = tmp_path / "present.txt"
    path.write_text("hello\nworld")
    assert first_line(path) == "hello"
