"""JSON encoding of the domain objects.

Integer matrix entries are written as decimal strings so that arbitrarily large
values survive any JSON reader.
"""

from __future__ import annotations

import json
from typing import Any

from .bcj import BooleanPoly
from .exactmat import AbelianFactors, IntMatrix, SnfResult
from .forms.wedge import Sym2Elem, WedgeVector3
from .symplectic import HomologyClass, TwistWord, letter_index, letter_name


class DecodeError(ValueError):
    """Input that does not match the expected JSON schema."""


def _require(obj: Any, *keys: str) -> None:
    if not isinstance(obj, dict):
        raise DecodeError("expected a JSON object")
    missing = [k for k in keys if k not in obj]
    if missing:
        raise DecodeError(f"missing key(s): {', '.join(missing)}")


def _int(x: Any) -> int:
    if isinstance(x, bool):
        raise DecodeError("booleans are not integers")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        try:
            return int(x.strip())
        except ValueError:
            pass
    raise DecodeError(f"not an integer: {x!r}")


def encode_matrix(M: IntMatrix) -> dict:
    return {"rows": M.rows, "cols": M.cols, "entries": [str(x) for x in M.entries()]}


def decode_matrix(obj: Any) -> IntMatrix:
    _require(obj, "rows", "cols", "entries")
    rows, cols = _int(obj["rows"]), _int(obj["cols"])
    entries = obj["entries"]
    if entries and isinstance(entries[0], list):
        entries = [x for r in entries for x in r]
    if len(entries) != rows * cols:
        raise DecodeError(f"{len(entries)} entries for a {rows}x{cols} matrix")
    flat = [_int(x) for x in entries]
    return IntMatrix([flat[i * cols:(i + 1) * cols] for i in range(rows)], cols)


def encode_snf(res: SnfResult) -> dict:
    return {
        "U": encode_matrix(res.U),
        "S": encode_matrix(res.S),
        "V": encode_matrix(res.V),
        "factors": [str(f) for f in res.factors],
    }


def encode_factors(f: AbelianFactors) -> dict:
    return {"torsion": [str(t) for t in f.torsion], "free_rank": f.free_rank, "text": str(f)}


def _class_terms(c: HomologyClass) -> list[int]:
    return list(c.coeffs)


def encode_twist_word(w: TwistWord) -> dict:
    return {"genus": w.g, "word": [{"curve": _class_terms(c), "power": k} for c, k in w.letters]}


def decode_twist_word(obj: Any) -> TwistWord:
    _require(obj, "genus", "word")
    g = _int(obj["genus"])
    letters = []
    for item in obj["word"]:
        _require(item, "curve", "power")
        curve = item["curve"]
        if isinstance(curve, str):
            c = HomologyClass.parse(g, curve)
        else:
            c = HomologyClass(tuple(_int(x) for x in curve))
        letters.append((c, _int(item["power"])))
    return TwistWord(g, tuple(letters))


def encode_boolean(p: BooleanPoly) -> dict:
    return {"genus": p.g, "monomials": p.to_names()}


def decode_boolean(obj: Any) -> BooleanPoly:
    _require(obj, "genus", "monomials")
    return BooleanPoly.from_monomials(_int(obj["genus"]), obj["monomials"])


def _mono_names(g: int, key) -> list[str]:
    return [letter_name(g, i) for i in key]


def encode_wedge(xi: WedgeVector3) -> dict:
    return {
        "genus": xi.g,
        "p": xi.p,
        "terms": [{"mono": _mono_names(xi.g, k), "coeff": c} for k, c in xi.coeffs.items()],
    }


def decode_wedge(obj: Any) -> WedgeVector3:
    _require(obj, "genus", "p", "terms")
    g, p = _int(obj["genus"]), _int(obj["p"])
    coeffs: dict = {}
    for t in obj["terms"]:
        _require(t, "mono", "coeff")
        if len(t["mono"]) != 3:
            raise DecodeError("wedge-3 monomials need three letters")
        key = tuple(letter_index(g, x) for x in t["mono"])
        coeffs[key] = coeffs.get(key, 0) + _int(t["coeff"])
    return WedgeVector3(g, p, coeffs)


def encode_sym2(s: Sym2Elem) -> dict:
    return {
        "genus": s.g,
        "p": s.p,
        "terms": [
            {"pair": [_mono_names(s.g, S), _mono_names(s.g, T)], "coeff": c}
            for (S, T), c in s.coeffs.items()
        ],
    }


def decode_sym2(obj: Any) -> Sym2Elem:
    _require(obj, "genus", "p", "terms")
    g, p = _int(obj["genus"]), _int(obj["p"])
    out = Sym2Elem.zero(g, p)
    for t in obj["terms"]:
        _require(t, "pair", "coeff")
        left, right = t["pair"]
        if len(left) != 2 or len(right) != 2:
            raise DecodeError("Sym2 terms pair two wedge-2 monomials")
        out = out + Sym2Elem.gen(g, p, left, right, _int(t["coeff"]))
    return out


def dumps(obj: Any) -> str:
    """Deterministic JSON text."""
    return json.dumps(obj, sort_keys=True, ensure_ascii=False)
