"""Command-line front end.

    cyclicsf <verb> key=value ... [--format json|text] [--output PATH] [--cap N]

Field elements are written as ``w^k`` (w = the canonical primitive element of
K), ``w``, ``0``/``1``, a prime-field integer, or a coordinate tuple such as
``(1,0,1)`` (constant term first).
"""
from __future__ import annotations

import argparse
import json
import os
import re
import sys

from cyclicsf import acceptance, classify, codes
from cyclicsf.fields import (
    SIZE_CAP_ENV,
    GaloisGenerator,
    SizeCapExceeded,
    generators,
    make_tower,
)
from cyclicsf.petit import PetitAlgebra, division_prechecks, division_report, nuclei
from cyclicsf.skewpoly import SkewPoly

SCHEMA = "cyclicsf/1"

EXIT_OK, EXIT_INVALID, EXIT_CAP, EXIT_INTERNAL = 0, 1, 2, 3

VERBS = ("field", "algebra", "classify", "census", "parametrize", "mrd", "constacyclic", "verify")


class InvalidParameters(ValueError):
    pass


_POWER = re.compile(r"^(?:w|ω)(?:\^(-?\d+))?$")


def parse_element(text: str, field) -> int:
    s = text.strip().replace(" ", "")
    m = _POWER.match(s)
    if m:
        k = int(m.group(1)) if m.group(1) is not None else 1
        return field.exp(k % (field.order - 1))
    if s.startswith("(") or "," in s:
        parts = [int(x) for x in s.strip("()").split(",") if x != ""]
        if len(parts) > field.e or any(not 0 <= c < field.p for c in parts):
            raise InvalidParameters(f"bad coordinates {text!r} for {field}")
        return field.from_coords(parts + [0] * (field.e - len(parts)))
    if s.lstrip("-").isdigit():
        return int(s) % field.p
    raise InvalidParameters(f"cannot parse field element {text!r}")


def parse_params(items: list[str]) -> dict[str, str]:
    out = {}
    for it in items:
        if "=" not in it:
            raise InvalidParameters(f"expected key=value, got {it!r}")
        k, v = it.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def _int(params, key, default=None) -> int:
    if key not in params:
        if default is None:
            raise InvalidParameters(f"missing parameter {key}")
        return default
    try:
        return int(params[key])
    except ValueError:
        raise InvalidParameters(f"{key} must be an integer") from None


def _tower(params, n_key="n", n_default=None):
    q = _int(params, "q")
    n = _int(params, n_key, n_default)
    if n < 1:
        raise InvalidParameters("n must be positive")
    return make_tower(q, n)


def _gen(tower, j):
    try:
        return GaloisGenerator(tower, j)
    except ValueError as exc:
        raise InvalidParameters(str(exc)) from None


def _enc(K, x):
    return list(K.coords(x))


# -- verbs -------------------------------------------------------------------


def cmd_field(params):
    tower = _tower(params, n_default=1)
    K = tower.top
    doc = {"tower": tower.to_json(),
           "primitive": _enc(K, K.primitive),
           "generators": [g.j for g in generators(tower)]}
    if "x" in params:
        x = parse_element(params["x"], K)
        doc["element"] = {"coords": _enc(K, x), "log": K.log(x) if x else None,
                          "norm": _enc(K, tower.norm(x)), "trace": _enc(K, tower.trace(x)),
                          "in_base": tower.in_base(x)}
    return doc


def _algebra(params, suffix=""):
    tower = _tower(params, n_default=_int(params, "m"))
    gen = _gen(tower, _int(params, "j" + suffix, 1))
    m = _int(params, "m")
    if m < 2:
        raise InvalidParameters("m must be >= 2")
    a = parse_element(params.get("a" + suffix, ""), tower.top)
    return PetitAlgebra(gen, SkewPoly.binomial(gen, m, a))


def cmd_algebra(params):
    A = _algebra(params)
    rep = nuclei(A)
    div = division_report(A)
    return {"algebra": {"q": A.tower.q, "n": A.n, "m": A.m, "j": A.gen.j,
                        "a": _enc(A.K, A.a), "dim": A.dim},
            "associative": A.is_associative(),
            "right_invariant": A.right_invariant,
            "division": div,
            "prechecks": [{"criterion": p.criterion, "verdict": p.verdict, "detail": p.detail}
                          for p in division_prechecks(A)],
            "nuclei": {"dims": rep.dims, "s": rep.s, "r": rep.r,
                       "right_matches_prediction": rep.right_matches_prediction}}


def cmd_classify(params):
    A = _algebra(params, "1")
    B = _algebra(params, "2")
    oracle = params.get("oracle", "0") in ("1", "true", "yes")
    v = classify.cross_generator_verdict(A, B, use_oracle=oracle)
    doc = v.to_json(A.K)
    doc["isotopy"] = classify.isotopy_verdict(A, B).to_json(A.K)
    if oracle and A.gen == B.gen:
        doc["oracle"] = classify.oracle_verdict(A, B).to_json(A.K)
    return doc


def cmd_census(params):
    q, m = _int(params, "q"), _int(params, "m")
    res = classify.census(q, m, _int(params, "j", 1))
    return res.to_json(make_tower(q, m).top)


def cmd_parametrize(params):
    q = _int(params, "q")
    kind = params.get("kind", "S2" if _int(params, "m", 2) == 2 else "S")
    if kind == "S":
        pset = classify.parametrize_S(q, _int(params, "m"), _int(params, "j", 1))
    elif kind in ("S2", "S2-prime"):
        pset = classify.parametrize_S2(q, kind)
    else:
        raise InvalidParameters(f"unknown kind {kind!r}")
    doc = pset.to_json(make_tower(q, pset.m).top)
    doc["transversal"] = classify.transversal_report(pset, _int(params, "j", 1))
    return doc


def cmd_mrd(params):
    A = _algebra(params)
    expand = params.get("expand", "0") in ("1", "true", "yes")
    try:
        code = codes.expand_rank_code(A) if expand else codes.build_rank_code(A)
    except codes.NotDivision as exc:
        raise InvalidParameters(str(exc)) from None
    report = codes.mrd_check(code)
    doc = code.to_json()
    doc["verified"] = report.to_json()
    if params.get("all", "0") in ("1", "true", "yes"):
        doc["codewords"] = [[[_enc(code.field, x) for x in row] for row in M]
                            for M in code.iter_codewords()]
    doc["_text"] = "\n\n".join(codes.format_matrix(M, code.field) for M in code.basis)
    return doc


def cmd_constacyclic(params):
    tower = _tower(params)
    gen = _gen(tower, _int(params, "j", 1))
    m = _int(params, "m")
    a = parse_element(params.get("a", ""), tower.top)
    if not a:
        raise InvalidParameters("a must be nonzero")
    found = codes.list_constacyclic(tower, gen, m, a)
    return {"m": m, "a": _enc(tower.top, a), "count": len(found),
            "codes": [c.to_json() for c in found]}


def cmd_verify(params):
    only = [int(x) for x in params["only"].split(",")] if "only" in params else None
    results = acceptance.run_all(only, echo=lambda line: print(line, file=sys.stderr))
    return {"criteria": [r.to_json() for r in results],
            "passed": all(r.passed for r in results)}


COMMANDS = {"field": cmd_field, "algebra": cmd_algebra, "classify": cmd_classify,
            "census": cmd_census, "parametrize": cmd_parametrize, "mrd": cmd_mrd,
            "constacyclic": cmd_constacyclic, "verify": cmd_verify}


def _text(doc, indent=0) -> str:
    pad = "  " * indent
    lines = []
    for k, v in doc.items():
        if isinstance(v, dict):
            lines.append(f"{pad}{k}:")
            lines.append(_text(v, indent + 1))
        else:
            lines.append(f"{pad}{k}: {json.dumps(v, ensure_ascii=False)}")
    return "\n".join(lines)


def render(verb, params, result, fmt) -> str:
    text_extra = result.pop("_text", None) if isinstance(result, dict) else None
    doc = {"schema": SCHEMA, "verb": verb, "params": params, "result": result}
    if fmt == "json":
        return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    out = _text(doc)
    if text_extra:
        out += "\n" + text_extra
    return out + "\n"


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cyclicsf", description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("verb", choices=VERBS)
    ap.add_argument("params", nargs="*", help="key=value parameters")
    ap.add_argument("--format", choices=("json", "text"), default="json")
    ap.add_argument("--output", help="write the document here instead of stdout")
    ap.add_argument("--cap", type=int, help=f"size cap (overrides ${SIZE_CAP_ENV})")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    saved = os.environ.get(SIZE_CAP_ENV)
    if args.cap is not None:
        os.environ[SIZE_CAP_ENV] = str(args.cap)
    try:
        return _run(args)
    finally:
        if saved is None:
            os.environ.pop(SIZE_CAP_ENV, None)
        else:
            os.environ[SIZE_CAP_ENV] = saved


def _run(args) -> int:
    try:
        params = parse_params(args.params)
        result = COMMANDS[args.verb](params)
    except SizeCapExceeded as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except AssertionError as exc:
        print(f"internal mismatch: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (ValueError, KeyError) as exc:
        print(f"invalid parameters: {exc}", file=sys.stderr)
        return EXIT_INVALID
    text = render(args.verb, params, result, args.format)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.verb == "verify" and not result["passed"]:
        return EXIT_INTERNAL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
