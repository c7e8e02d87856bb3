"""Vectorized evaluation of user-supplied formulas from config files.

Formulas use the variables the field documents (t, s, u, v, r, x1..xn),
the constants pi and e, and a small set of numpy-backed functions.  The
caret is accepted as the power operator.  ``pos(x)`` is the positive part.
"""

from __future__ import annotations

from typing import Callable, Sequence

import numpy as np

from .errors import SpecificationError

_NAMESPACE = {
    "sin": np.sin,
    "cos": np.cos,
    "tan": np.tan,
    "exp": np.exp,
    "log": np.log,
    "log10": np.log10,
    "sqrt": np.sqrt,
    "abs": np.abs,
    "pos": lambda x: np.maximum(x, 0.0),
    "min": np.minimum,
    "max": np.maximum,
    "where": np.where,
    "sign": np.sign,
    "pi": np.pi,
    "e": np.e,
    "inf": np.inf,
}


def compile_expr(expr: str, variables: Sequence[str]) -> Callable:
    """Compile a formula into a vectorized callable of ``variables``."""
    if not isinstance(expr, str) or not expr.strip():
        raise SpecificationError(f"empty or non-string expression: {expr!r}")
    source = expr.replace("^", "**")
    try:
        code = compile(source, "<config-expression>", "eval")
    except SyntaxError as exc:
        raise SpecificationError(f"cannot parse expression {expr!r}: {exc.msg}") from None
    for name in code.co_names:
        if name not in _NAMESPACE and name not in variables:
            raise SpecificationError(
                f"unknown name {name!r} in expression {expr!r}; "
                f"allowed variables: {list(variables)}"
            )

    def fn(*args):
        if len(args) != len(variables):
            raise SpecificationError(
                f"expression {expr!r} expects {len(variables)} arguments, got {len(args)}"
            )
        local = dict(zip(variables, args))
        result = eval(code, {"__builtins__": {}}, {**_NAMESPACE, **local})
        if args:
            return np.broadcast_arrays(np.asarray(result, dtype=float), *args)[0]
        return result

    return fn


def scalar(value, context: str = "value") -> float:
    """A numeric config field: either a number or a constant expression."""
    if isinstance(value, bool):
        raise SpecificationError(f"{context}: expected a number, got a boolean")
    if isinstance(value, (int, float)):
        return float(value)
    if isinstance(value, str):
        fn = compile_expr(value, ())
        result = fn()
        result = float(np.asarray(result))
        return result
    raise SpecificationError(f"{context}: expected a number or expression, got {value!r}")
