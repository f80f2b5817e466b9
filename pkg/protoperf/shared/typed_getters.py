from typing import Any, List, Mapping, Optional

import numpy as np

from protoperf.shared.exceptions import FieldTypeError


def get_string(d: Mapping[str, Any], key: str) -> Optional[str]:
    """
    Helper function that gets a string or None

    Parameters
    ----------
    d : Mapping[str, Any]
        A mapping.
    key : str
        The key to lookup.

    Returns
    -------
    {str, None}
        The string or None if the key is not in the dictionary. If in the
        dictionary, a type check is performed and FieldTypeError is raised if
        not found.
    """
    out: Optional[str] = None
    if key in d:
        out = d[key]
        if out is not None and not isinstance(out, str):
            raise FieldTypeError(f"{key} found in the dictionary but it is not a str.")
    return out


def get_int(d: Mapping[str, Any], key: str) -> Optional[int]:
    """
    Helper function that gets an int or None

    Parameters
    ----------
    d : Mapping[str, Any]
        A mapping.
    key : str
        The key to lookup.

    Returns
    -------
    {int, None}
        The integer or None if the key is not in the dictionary. Booleans and
        floats are rejected with a FieldTypeError.
    """
    out: Optional[int] = None
    if key in d:
        out = d[key]
        if out is not None:
            if isinstance(out, (int, np.integer)) and not isinstance(out, bool):
                return int(out)
            raise FieldTypeError(f"{key} found in the dictionary but it is not an int.")
    return out


def get_float_list(d: Mapping[str, Any], key: str) -> Optional[List[float]]:
    """
    Helper function that gets a list of floats or None

    Parameters
    ----------
    d : Mapping[str, Any]
        A mapping.
    key : str
        The key to lookup.

    Returns
    -------
    {list[float], None}
        The values or None if the key is not in the dictionary. If present,
        every element must be an int or a float.
    """
    out = d.get(key, None)
    if out is None:
        return None
    if not isinstance(out, (list, tuple)):
        raise FieldTypeError(f"{key} found in the dictionary but it is not a list.")
    values = []
    for v in out:
        if isinstance(v, bool) or not isinstance(v, (int, float, np.floating)):
            raise FieldTypeError(f"{key} contains a non-numeric value: {v!r}")
        values.append(float(v))
    return values


def get_int_list(d: Mapping[str, Any], key: str) -> Optional[List[int]]:
    """
    Helper function that gets a list of ints or None

    See Also
    --------
    get_float_list
    """
    out = d.get(key, None)
    if out is None:
        return None
    if not isinstance(out, (list, tuple)):
        raise FieldTypeError(f"{key} found in the dictionary but it is not a list.")
    values = []
    for v in out:
        if isinstance(v, bool) or not isinstance(v, (int, np.integer)):
            raise FieldTypeError(f"{key} contains a non-integer value: {v!r}")
        values.append(int(v))
    return values


def get_string_list(d: Mapping[str, Any], key: str) -> Optional[List[str]]:
    """
    Helper function that gets a list of strings or None

    See Also
    --------
    get_float_list
    """
    out = d.get(key, None)
    if out is None:
        return None
    if not isinstance(out, (list, tuple)) or not all(isinstance(v, str) for v in out):
        raise FieldTypeError(f"{key} found in the dictionary but it is not a list of str.")
    return list(out)


def get_mapping(d: Mapping[str, Any], key: str) -> Optional[Mapping[str, Any]]:
    """
    Helper function that gets a nested mapping or None
    """
    out = d.get(key, None)
    if out is not None and not isinstance(out, Mapping):
        raise FieldTypeError(f"{key} found in the dictionary but it is not a mapping.")
    return out
