"""JSON input and output.  Every rational is written as a "p/q" string."""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from . import linalg as la
from .cones import Cone, InnerProduct
from .polynomial import Polynomial
from .scalars import Gaussian, Surd, simplify


class InputError(ValueError):
    """Malformed user input; the CLI maps it to exit code 2."""


def rational(x) -> Fraction:
    try:
        return la.as_fraction(x)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"not a rational number: {x!r} ({exc})") from None


def vector(obj) -> tuple:
    """A JSON list or a comma-separated string of rationals."""
    if isinstance(obj, str):
        obj = [p for p in obj.replace("(", "").replace(")", "").split(",") if p.strip()]
    if not isinstance(obj, (list, tuple)):
        raise InputError(f"expected a vector, got {obj!r}")
    return tuple(rational(x.strip() if isinstance(x, str) else x) for x in obj)


def complex_scalar(text) -> Gaussian:
    if isinstance(text, (int, Fraction)):
        return Gaussian(text)
    try:
        p = Polynomial.parse(str(text), 0)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    c = p.constant_term()
    return c if isinstance(c, Gaussian) else Gaussian(c)


def complex_vector(obj) -> tuple:
    """Entries like "1/2", "-1+2*I"; a string is split on commas."""
    if isinstance(obj, str):
        obj = [p for p in obj.replace("(", "").replace(")", "").split(",") if p.strip()]
    if not isinstance(obj, (list, tuple)):
        raise InputError(f"expected a complex vector, got {obj!r}")
    return tuple(complex_scalar(x) for x in obj)


def matrix(obj) -> tuple:
    if not isinstance(obj, list) or not all(isinstance(r, list) for r in obj):
        raise InputError("expected a matrix as a list of rows")
    return tuple(vector(r) for r in obj)


def load_json(path: str | Path) -> Any:
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def cone_from_json(obj) -> Cone:
    """{"dim", "inequalities", "equalities", "gram"} or {"dim", "generators": {"rays", "lines"}}."""
    if not isinstance(obj, dict) or "dim" not in obj:
        raise InputError("cone JSON needs an object with a \"dim\" field")
    try:
        n = int(obj["dim"])
    except (TypeError, ValueError):
        raise InputError(f"cone dim must be an integer, got {obj['dim']!r}") from None
    if n < 1:
        raise InputError("cone dim must be positive")
    try:
        inner = InnerProduct(matrix(obj["gram"])) if "gram" in obj else InnerProduct.identity(n)
        if "generators" in obj and not ("inequalities" in obj or "equalities" in obj):
            g = obj["generators"]
            return Cone.from_generators(n, [vector(r) for r in g.get("rays", [])],
                                        [vector(l) for l in g.get("lines", [])], inner)
        return Cone(n, [vector(a) for a in obj.get("inequalities", [])],
                    [vector(e) for e in obj.get("equalities", [])], inner)
    except InputError:
        raise
    except (ValueError, TypeError, AttributeError) as exc:
        raise InputError(f"invalid cone: {exc}") from None


def fan_from_json(obj) -> list[Cone]:
    cones = obj.get("cones") if isinstance(obj, dict) else obj
    if not isinstance(cones, list) or not cones:
        raise InputError("fan JSON must be a non-empty list of cones (or {\"cones\": [...]})")
    return [cone_from_json(c) for c in cones]


def polynomial(text, n: int, prefix: str = "H") -> Polynomial:
    if text is None:
        return Polynomial.constant(n, Fraction(1))
    try:
        return Polynomial.parse(str(text), n, prefix)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def form_from_json(obj, fan):
    """{"cells": {cell: [{"lambda_re", "lambda_im", "q", "c_re", "c_im"}, ...]}}; cell is an id or label."""
    from .periods import ExponentDatum, ToyFormData

    if not isinstance(obj, dict) or not isinstance(obj.get("cells"), dict):
        raise InputError('form JSON needs a "cells" object')
    n = fan.dim
    data = {}
    for key, entries in obj["cells"].items():
        try:
            cell = fan.cell(key)
        except (KeyError, ValueError):
            raise InputError(f"form refers to unknown cell {key!r}") from None
        if not isinstance(entries, list):
            raise InputError(f"cell {key!r}: expected a list of exponent entries")
        out = []
        for e in entries:
            re_ = vector(e.get("lambda_re", ["0"] * n))
            im_ = vector(e.get("lambda_im", ["0"] * n))
            if len(re_) != n or len(im_) != n:
                raise InputError(f"cell {key!r}: λ must have {n} components")
            c = Gaussian(rational(e.get("c_re", 1)), rational(e.get("c_im", 0)))
            lam = tuple(Gaussian(a, b) for a, b in zip(re_, im_))
            out.append(ExponentDatum(cell.id, lam, polynomial(e.get("q"), n), c))
        data.setdefault(cell.id, []).extend(out)
    form = ToyFormData(data)
    try:
        form.validate(fan)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    return form


def scalar_str(x) -> str:
    """Exact scalars as strings ("p/q", "a+b*I", surds); floats as repr."""
    if isinstance(x, complex):
        return repr(x)
    if isinstance(x, Surd):
        x = simplify(x)
    return str(x)


def dumps(obj) -> str:
    """Deterministic JSON: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(obj, indent=2, sort_keys=True, default=_default, ensure_ascii=False) + "\n"


def _default(o):
    if isinstance(o, (Fraction, Gaussian, Surd)):
        return scalar_str(o)
    if isinstance(o, complex):
        return {"re": o.real, "im": o.imag}
    if hasattr(o, "to_json"):
        return o.to_json()
    raise TypeError(f"cannot serialise {type(o).__name__}")
