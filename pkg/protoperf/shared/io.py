from typing import List, Sequence

import numpy as np


def _str(v: float) -> str:
    """Preferred basic formatter"""
    if np.isnan(v):
        return "        "
    av = abs(v)
    digits = 0
    if av != 0:
        digits = int(np.ceil(np.log10(av)))
    if digits > 4 or digits <= -4:
        return "{0:8.4g}".format(v)

    if digits > 0:
        d = int(5 - digits)
    else:
        d = int(4)

    format_str = "{0:" + "0.{0}f".format(d) + "}"
    return format_str.format(v)


def coef_format(v: float) -> str:
    """Full precision formatter for polynomial coefficients"""
    if np.isnan(v):
        return "        "
    return "{0:.10g}".format(v)


def pct_format(v: float) -> str:
    """Formatting for percentages"""
    if np.isnan(v):
        return "     N/A"
    return "{0:0.3f}%".format(v)


def format_ns(ns: float) -> str:
    """
    Format a duration given in nanoseconds using the most readable unit

    Parameters
    ----------
    ns : float
        Duration in nanoseconds

    Returns
    -------
    str
        The duration with an ``s``, ``ms``, ``us`` or ``ns`` suffix
    """
    if np.isnan(ns):
        return "N/A"
    av = abs(ns)
    if av >= 1e9:
        return "{0:.3f} s".format(ns / 1e9)
    elif av >= 1e6:
        return "{0:.3f} ms".format(ns / 1e6)
    elif av >= 1e3:
        return "{0:.1f} us".format(ns / 1e3)
    return "{0:.0f} ns".format(ns)


def format_wide(s: Sequence[str], cols: int) -> List[List[str]]:
    """
    Format a list of strings.

    Parameters
    ----------
    s : List[str]
        List of strings to format
    cols : int
        Number of columns in output

    Returns
    -------
    List[List[str]]
        The joined list.
    """
    lines = []
    line = ""
    for i, val in enumerate(s):
        sep = ", " if i + 1 != len(s) else ""
        if line == "":
            line = val + sep
            continue
        temp = line + val + sep
        if len(temp) > cols:
            lines.append([line])
            line = val + sep
        else:
            line = temp
    lines.append([line])
    return lines
