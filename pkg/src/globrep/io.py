"""JSON encodings for families, representations and morphisms.

Rational entries are written as ``"p/q"`` strings (the denominator is always
present) so that files round-trip exactly.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from .exactla import Matrix
from .family import GroupFamily, build_family
from .rep import Rep, RepError, RepMorphism, make_rep, validate


class InputError(ValueError):
    """Malformed or unresolvable input; the CLI maps this to exit code 2."""


def encode_scalar(x) -> str:
    f = Fraction(x)
    return f"{f.numerator}/{f.denominator}"


def decode_scalar(s) -> Fraction | int:
    if isinstance(s, bool):
        raise InputError(f"not a rational: {s!r}")
    if isinstance(s, int):
        return s
    try:
        f = Fraction(str(s))
    except (ValueError, ZeroDivisionError):
        raise InputError(f"not a rational: {s!r}") from None
    return f.numerator if f.denominator == 1 else f


def matrix_to_json(M: Matrix) -> dict:
    return {"rows": M.rows, "cols": M.cols,
            "entries": [[encode_scalar(a) for a in r] for r in M.data]}


def matrix_from_json(d: dict) -> Matrix:
    try:
        rows, cols = int(d["rows"]), int(d["cols"])
        data = tuple(tuple(decode_scalar(a) for a in r) for r in d["entries"])
        return Matrix(rows, cols, data)
    except (KeyError, TypeError, ValueError) as e:
        raise InputError(f"malformed matrix: {e}") from None


def family_to_json(family: GroupFamily) -> dict:
    return family.spec


def family_from_json(spec: Any) -> GroupFamily:
    if not isinstance(spec, dict):
        raise InputError("family description must be a JSON object")
    if "kind" not in spec and "objects" in spec:
        spec = dict(spec, kind="custom")
    try:
        return build_family(spec)
    except KeyError as e:
        raise InputError(f"family description lacks field {e}") from None


def rep_to_json(X: Rep) -> dict:
    return {
        "family": family_to_json(X.family),
        "dims": {G: X.dims[G] for G in X.family.classes},
        "transitions": {a: matrix_to_json(X.transitions[a]) for a in sorted(X.transitions)},
    }


def rep_from_json(d: dict, family: GroupFamily | None = None, check: bool = True) -> Rep:
    """Parse a Rep; the family is taken from the document unless supplied."""
    try:
        fam = family if family is not None else family_from_json(d["family"])
        dims = {str(k): int(v) for k, v in d["dims"].items()}
        given = {str(a): matrix_from_json(m) for a, m in d.get("transitions", {}).items()}
    except (KeyError, TypeError, AttributeError) as e:
        raise InputError(f"malformed representation: {e}") from None
    unknown = [c for c in dims if c not in fam]
    if unknown:
        raise InputError(f"dims refer to unknown classes {unknown}")
    for a in given:
        try:
            s, t = fam.source(a), fam.target(a)
        except (KeyError, ValueError):
            raise InputError(f"unknown hom label {a!r}") from None
        if s not in fam or t not in fam or a not in fam.homs(s, t):
            raise InputError(f"unknown hom label {a!r}")

    def tr(a):
        m = given.get(a)
        if m is None:
            raise InputError(f"missing transition {a}")
        return m

    try:
        X = make_rep(fam, dims, tr)
    except RepError as e:
        raise InputError(str(e)) from None
    if check:
        bad = validate(X)
        if bad:
            raise RepError("; ".join(bad[:3]))
    return X


def morphism_to_json(f: RepMorphism) -> dict:
    return {"source": rep_to_json(f.source), "target": rep_to_json(f.target),
            "components": {G: matrix_to_json(f[G]) for G in f.family.classes}}


def dumps(obj: Any) -> str:
    """Deterministic JSON text."""
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def load_json(path: str | Path) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise InputError(f"no such file: {path}") from None
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: line {e.lineno} column {e.colno}: {e.msg}") from None
