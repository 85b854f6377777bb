"""Command-line front end.

Exit codes: 0 on success, 1 when a domain precondition fails (the input parsed
but the computation does not apply), 2 when the input cannot be parsed.
"""

from __future__ import annotations

import argparse
import json
import math
import random
import sys
from contextlib import contextmanager
from typing import Any, Callable

from . import bcj, codec, heegaard, magnus
from .errors import ModTorelliError
from .exactmat import IntMatrix, det, smith_normal_form
from .forms import invariants, wedge
from .forms.lie import pi_map
from .symplectic import SpMatrixZ, TwistWord, letter_name, trefoil_word, twist_word


class InputError(Exception):
    """Raised for anything that goes wrong while reading and validating input."""


@contextmanager
def parsing():
    try:
        yield
    except InputError:
        raise
    except (ValueError, KeyError, TypeError, IndexError, json.JSONDecodeError) as exc:
        raise InputError(str(exc)) from exc


def _read_json(path: str | None) -> Any:
    if path is None:
        raise InputError("this command needs --in FILE (or - for stdin)")
    with parsing():
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)


# ---------------------------------------------------------------- gluing input


def _gluing(args, d_for_lens: int | None = None) -> heegaard.HeegaardGluing:
    if args.lens is not None:
        p, q = args.lens
        if d_for_lens is not None:
            return heegaard.lens_gluing_mod_d(p, q, d_for_lens)
        return heegaard.lens_gluing(heegaard.LensSpec(p, q))
    if args.preset == "trefoil":
        return heegaard.HeegaardGluing.from_word(trefoil_word())
    if args.preset == "identity":
        return heegaard.HeegaardGluing(SpMatrixZ.identity(args.genus or 1))
    obj = _read_json(args.input)
    with parsing():
        if isinstance(obj, dict) and "word" in obj:
            return heegaard.HeegaardGluing.from_word(codec.decode_twist_word(obj))
        M = codec.decode_matrix(obj)
    # a non-symplectic matrix parses fine but violates the domain precondition
    return heegaard.HeegaardGluing(SpMatrixZ(M))


def _random_word(g: int, rng: random.Random, length: int = 6) -> TwistWord:
    names = [letter_name(g, i) for i in range(2 * g)]
    curves = names + [f"{x} - {y}" for x, y in zip(names, names[1:])]
    return twist_word(g, [(rng.choice(curves), rng.choice((-2, -1, 1, 2))) for _ in range(length)])


# ---------------------------------------------------------------- commands


def cmd_snf(args) -> tuple[dict, str]:
    with parsing():
        A = codec.decode_matrix(_read_json(args.input))
    res = smith_normal_form(A)
    out = codec.encode_snf(res)
    return out, f"invariant factors: {', '.join(out['factors']) or '(none)'}"


def cmd_homology(args) -> tuple[dict, str]:
    h = _gluing(args)
    fac = heegaard.splitting_homology(h)
    order = heegaard.h1_order(h)
    finite = order != math.inf
    out = {
        "factors": codec.encode_factors(fac),
        "order": str(order) if finite else "infinite",
        "admissible_moduli": heegaard.admissible_moduli(order) if finite else [],
    }
    text = f"H_1 = {fac}\norder: {out['order']}"
    if finite:
        text += f"\nadmissible moduli: {out['admissible_moduli']}"
    return out, text


def cmd_trivialize(args) -> tuple[dict, str]:
    d = _need(args.modulus, "--modulus")
    if args.random:
        rng = random.Random(args.seed)
        g = args.genus or 2
        while True:
            h = heegaard.HeegaardGluing.from_word(_random_word(g, rng))
            u = det(h.H) % d
            if u in (1, d - 1):
                break
    else:
        h = _gluing(args)
    X, Y = heegaard.trivialize(h, d)
    prod = (X.M @ h.sp.M @ Y.M).mod(d)
    verified = prod == IntMatrix.identity(2 * h.g)
    out = {
        "gluing": codec.encode_matrix(h.sp.M),
        "X": codec.encode_matrix(X.M),
        "Y": codec.encode_matrix(Y.M),
        "verified": verified,
    }
    text = f"X = {X.M.tolist()}\nY = {Y.M.tolist()}\nX Psi_{d}(f) Y = Id: {verified}"
    return out, text


def cmd_invariant(args) -> tuple[dict, str]:
    d = _need(args.modulus, "--modulus")
    h = _gluing(args, d_for_lens=d)
    value = heegaard.phi_invariant(h, d, args.x)
    return {"modulus": d, "x": args.x, "value": value}, f"phi = {value} (mod {d})"


def _pairs(g: int, items) -> tuple:
    return tuple((bcj.ClassMod2.parse(g, c), bcj.ClassMod2.parse(g, e)) for c, e in items)


def cmd_bcj(args) -> tuple[dict, str]:
    if args.action == "poincare":
        s = bcj.poincare_sigma()
    else:
        with parsing():
            obj = _read_json(args.input)
            g = int(obj["genus"])
            kind = obj.get("kind", "sep")
            items = obj["pairs"]
            if kind not in ("sep", "bp"):
                raise InputError(f"unknown kind {kind!r}; use sep or bp")
        with parsing():
            pairs = _pairs(g, items)
            E = bcj.ClassMod2.parse(g, obj.get("E", "")) if kind == "bp" else None
        data = bcj.BPData(g, pairs, E) if kind == "bp" else bcj.SepData(g, pairs)
        s = bcj.sigma_bp(data) if kind == "bp" else bcj.sigma_sep(data)
    mu = bcj.mu_x(s)
    out = {"sigma": codec.encode_boolean(s), "mu": mu}
    return out, f"sigma = {s.pretty()}\nmu = {mu}"


_PAIR_FORMS: dict[str, Callable] = {
    "J": wedge.form_J,
    "Jt": wedge.form_Jt,
    "Jt-J": lambda x, y: (wedge.form_Jt(x, y) - wedge.form_J(x, y)) % x.p,
    "Q": wedge.form_Q,
    "Theta": wedge.form_Theta,
}


def _signed(v: int, p: int) -> int:
    return v - p if v > p // 2 else v


def cmd_forms(args) -> tuple[dict, str]:
    if args.action == "classify":
        g = _need(args.genus, "--genus")
        p = _need(args.prime, "--prime")
        prob = invariants.builtin_action(args.module, args.group, g, p)
        basis = invariants.invariant_space(prob)
        rows = [
            {prob.labels[j]: int(v) for j, v in enumerate(row) if v} for row in basis.tolist()
        ]
        out = {"module": args.module, "group": args.group, "genus": g, "p": p,
               "dim": len(rows), "basis": rows}
        return out, f"dim Hom({args.module}, Z/{p})^{args.group} = {len(rows)} (g = {g})"
    obj = _read_json(args.input)
    form = args.form
    if form in _PAIR_FORMS or form == "chi":
        with parsing():
            xi, eta = codec.decode_wedge(obj["xi"]), codec.decode_wedge(obj["eta"])
        if form == "chi":
            s = wedge.chi(xi, eta)
            return {"form": form, "value": codec.encode_sym2(s)}, s.pretty()
        v = _PAIR_FORMS[form](xi, eta)
        return {"form": form, "value": v, "signed": _signed(v, xi.p)}, f"{form} = {_signed(v, xi.p)} (mod {xi.p})"
    with parsing():
        s = codec.decode_sym2(obj["s"])
    if form == "pi":
        t = pi_map(s)
        terms = [{"word": [letter_name(s.g, i) for i in k], "coeff": c} for k, c in t.coeffs.items()]
        return {"form": form, "terms": terms}, f"{len(terms)} tensor terms" if terms else "0"
    i = int(form[1])
    v = wedge.form_d(i, s)
    return {"form": form, "value": v, "signed": _signed(v, s.p)}, f"{form} = {_signed(v, s.p)} (mod {s.p})"


def _endo(args) -> magnus.FreeEndo:
    rank = args.rank
    if args.random_ia is not None:
        rng = random.Random(args.seed)
        return magnus.random_ia_endo(rank or 3, args.random_ia, _need(args.prime, "--prime"), rng)
    if args.preset == "k12":
        return magnus.k12(rank or 2)
    if args.preset == "identity":
        return magnus.FreeEndo.identity(rank or 2)
    with parsing():
        if args.images:
            r = rank or len(args.images)
            return magnus.FreeEndo.from_strings(r, args.images)
        return magnus.FreeEndo.from_json(_read_json(args.input))


def _degree_text(k) -> str:
    return repr(k) if magnus.is_bound(k) else str(int(k))


def _degree_json(k):
    return {"at_least": int(k)} if magnus.is_bound(k) else int(k)


def cmd_magnus(args) -> tuple[dict, str]:
    p = _need(args.prime, "--prime")
    N = args.truncation
    if args.action == "degree":
        with parsing():
            if args.word is None:
                raise InputError("magnus degree needs --word")
            w = magnus.FreeWord.parse(args.word, args.rank)
        k = magnus.z_degree(w, p, N)
        return {"word": str(w), "z_degree": _degree_json(k)}, f"z_degree({w}) = {_degree_text(k)}"
    f = _endo(args)
    if args.action == "ia":
        k = magnus.ia_degree(f, p, N)
        return {"endo": f.to_json(), "ia_degree": _degree_json(k)}, f"ia_degree = {_degree_text(k)}"
    tau = magnus.tau_k(f, args.k, p, N)
    out = {
        "endo": f.to_json(),
        "k": args.k,
        "tau": {
            f"x{i}": [{"word": [f"X{j}" for j in w], "coeff": c} for w, c in comp.items()]
            for i, comp in tau.items()
        },
    }
    lines = []
    for i, comp in tau.items():
        body = " + ".join(f"{c}·{''.join(f'X{j}' for j in w)}" for w, c in comp.items()) or "0"
        lines.append(f"tau_{args.k}(x{i}) = {body}")
    return out, "\n".join(lines)


def _need(value, flag: str):
    if value is None:
        raise InputError(f"{flag} is required")
    return value


# ---------------------------------------------------------------- parser


def _common() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--genus", type=int)
    parent.add_argument("--modulus", type=int)
    parent.add_argument("--prime", type=int)
    parent.add_argument("--truncation", type=int, default=7)
    parent.add_argument("--in", dest="input", metavar="FILE")
    parent.add_argument("--out", default="-", metavar="FILE")
    parent.add_argument("--format", choices=("json", "pretty"), default="json")
    parent.add_argument("--seed", type=int, default=0)
    return parent


def _gluing_flags(sp) -> None:
    sp.add_argument("--lens", nargs=2, type=int, metavar=("P", "Q"))
    sp.add_argument("--preset", choices=("identity", "trefoil"))


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="modtorelli", description="Mod-d Torelli toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("snf", parents=[common], help="Smith normal form of an integer matrix")
    sp.set_defaults(func=cmd_snf)

    sp = sub.add_parser("homology", parents=[common], help="H_1 of a Heegaard gluing")
    _gluing_flags(sp)
    sp.set_defaults(func=cmd_homology)

    sp = sub.add_parser("trivialize", parents=[common], help="X, Y with X Psi_d(f) Y = Id")
    _gluing_flags(sp)
    sp.add_argument("--random", action="store_true", help="sample an admissible random gluing")
    sp.set_defaults(func=cmd_trivialize)

    sp = sub.add_parser("invariant", parents=[common], help="trace invariant of a mod-d Torelli gluing")
    _gluing_flags(sp)
    sp.add_argument("--x", type=int, default=1)
    sp.set_defaults(func=cmd_invariant)

    sp = sub.add_parser("bcj", parents=[common], help="Birman-Craggs-Johnson values")
    sp.add_argument("action", choices=("eval", "poincare"))
    sp.set_defaults(func=cmd_bcj)

    sp = sub.add_parser("forms", parents=[common], help="bilinear forms and invariant functionals")
    sp.add_argument("action", choices=("eval", "classify"))
    sp.add_argument("--form", choices=sorted(_PAIR_FORMS) + ["chi", "d1", "d2", "d3", "pi"], default="Q")
    sp.add_argument("--module", choices=invariants.MODULES, default="Wedge2OfWedge3")
    sp.add_argument("--group", choices=invariants.GROUPS, default="GL")
    sp.set_defaults(func=cmd_forms)

    sp = sub.add_parser("magnus", parents=[common], help="Magnus expansion and IA depth")
    sp.add_argument("action", choices=("degree", "ia", "tau"))
    sp.add_argument("--word")
    sp.add_argument("--rank", type=int)
    sp.add_argument("--images", nargs="+", metavar="WORD")
    sp.add_argument("--preset", choices=("identity", "k12"))
    sp.add_argument("--random-ia", type=int, metavar="K")
    sp.add_argument("--k", type=int, default=1)
    sp.set_defaults(func=cmd_magnus)
    return parser


def _emit(args, payload: dict, text: str) -> None:
    body = codec.dumps(payload) if args.format == "json" else text
    if args.out == "-":
        sys.stdout.write(body + "\n")
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(body + "\n")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        payload, text = args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ModTorelliError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    _emit(args, payload, text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
