import numpy as np
import pytest

from protoperf.shared.exceptions import FieldTypeError
from protoperf.shared.typed_getters import (
    get_float_list,
    get_int,
    get_int_list,
    get_mapping,
    get_string,
    get_string_list,
)


def test_string():
    assert get_string({"v": "1"}, "v") == "1"
    assert get_string({"v": "1"}, "a") is None
    assert get_string({"v": None}, "v") is None
    with pytest.raises(TypeError, match=r".not a str"):
        get_string({"v": 1}, "v")


def test_int():
    assert get_int({"v": 3}, "v") == 3
    assert get_int({"v": np.int64(3)}, "v") == 3
    assert get_int({"v": 3}, "a") is None
    with pytest.raises(TypeError, match=r".not an int"):
        get_int({"v": 3.0}, "v")
    with pytest.raises(TypeError, match=r".not an int"):
        get_int({"v": True}, "v")


def test_float_list():
    assert get_float_list({"v": [1, 2.5]}, "v") == [1.0, 2.5]
    assert get_float_list({"v": (1,)}, "v") == [1.0]
    assert get_float_list({}, "v") is None
    with pytest.raises(TypeError, match=r".not a list"):
        get_float_list({"v": 1.0}, "v")
    with pytest.raises(TypeError, match=r"non-numeric"):
        get_float_list({"v": [1.0, "2"]}, "v")
    with pytest.raises(TypeError, match=r"non-numeric"):
        get_float_list({"v": [False]}, "v")


def test_int_list():
    assert get_int_list({"v": [1, 2]}, "v") == [1, 2]
    assert get_int_list({}, "v") is None
    with pytest.raises(TypeError, match=r"non-integer"):
        get_int_list({"v": [1, 2.0]}, "v")
    with pytest.raises(TypeError, match=r".not a list"):
        get_int_list({"v": "1,2"}, "v")


def test_string_list():
    assert get_string_list({"v": ["a", "b"]}, "v") == ["a", "b"]
    assert get_string_list({}, "v") is None
    with pytest.raises(TypeError, match=r".not a list of str"):
        get_string_list({"v": ["a", 1]}, "v")
    with pytest.raises(TypeError, match=r".not a list of str"):
        get_string_list({"v": "a"}, "v")


def test_mapping():
    assert get_mapping({"v": {"a": 1}}, "v") == {"a": 1}
    assert get_mapping({}, "v") is None
    with pytest.raises(TypeError, match=r".not a mapping"):
        get_mapping({"v": [1]}, "v")


def test_field_type_error_is_value_error():
    with pytest.raises(ValueError, match=r"steps_range"):
        get_int_list({"steps_range": "1-3"}, "steps_range")
    assert issubclass(FieldTypeError, TypeError)
