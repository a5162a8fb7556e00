"""JSON with every float written at 17 significant digits.

The output is byte-stable: keys keep insertion order, floats use one fixed format.
"""

import json
import math

import numpy as np

from .constants import FLOAT_DIGITS


def _enc(obj, out):
    if obj is None or isinstance(obj, (bool, np.bool_)):
        out.append(json.dumps(bool(obj) if obj is not None else None))
    elif isinstance(obj, (int, np.integer)):
        out.append(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        x = float(obj)
        if math.isnan(x):
            out.append("NaN")
        elif math.isinf(x):
            out.append("Infinity" if x > 0 else "-Infinity")
        else:
            out.append(format(x, f".{FLOAT_DIGITS}g"))
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    elif isinstance(obj, np.ndarray):
        _enc(obj.tolist(), out)
    elif isinstance(obj, dict):
        out.append("{")
        for i, (k, v) in enumerate(obj.items()):
            if i:
                out.append(", ")
            out.append(json.dumps(str(k)))
            out.append(": ")
            _enc(v, out)
        out.append("}")
    elif isinstance(obj, (list, tuple)):
        out.append("[")
        for i, v in enumerate(obj):
            if i:
                out.append(", ")
            _enc(v, out)
        out.append("]")
    elif hasattr(obj, "to_dict"):
        _enc(obj.to_dict(), out)
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj):
    out = []
    _enc(obj, out)
    return "".join(out)


def loads(text):
    return json.loads(text)


def fmt(x):
    return format(float(x), f".{FLOAT_DIGITS}g")
