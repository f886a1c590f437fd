"""superkac command-line front end."""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction as Q
from typing import Sequence

from . import _num as N
from . import characters as C
from .cartan_core import validate_supermatrix
from .catalog import BUNDLED, algebra_from_json, load_algebra, read_json
from .lattice import Exponent, Weight
from .root_system import AlgebraData, WeylWord
from .subsystems import friendly_word_to_pr, integral_subsystem
from .weight_classify import (admissible_level, enumerate_snowflake_weights, integral_base,
                              is_admissible, is_critical, is_snowflake_hw, is_typical, kk_pairs,
                              level, linkage_closure, restricted_snowflake_findim)

SCHEMA = "superkac/1"
DEFAULTS = {"H": 20, "D": 15, "L": 12, "depth": 6}
COMMANDS = ("validate", "bases", "classify", "roots", "principal", "integral", "base-of",
            "friendly", "snowflake", "typical", "critical", "kk", "linkage", "admissible",
            "enumerate", "char", "enright", "reproduce")


class CliError(Exception):
    pass


def threads() -> int:
    raw = os.environ.get("SUPERKAC_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise CliError(f"SUPERKAC_THREADS must be a positive integer, got {raw!r}")


# --- argument parsing --------------------------------------------------------

def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("bounds must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("algebra", nargs="?", help="algebra JSON file or bundled name")
    common.add_argument("--lambda", dest="lam", help="weight JSON file")
    common.add_argument("--pairings", help="inline weight: comma-separated pairings")
    common.add_argument("--H", type=_positive, default=DEFAULTS["H"], help="root height bound")
    common.add_argument("--D", type=_positive, default=DEFAULTS["D"],
                        help="character truncation depth")
    common.add_argument("--height", type=_positive, default=None,
                        help="D for the char command, H otherwise")
    common.add_argument("--L", "--word-bound", dest="L", type=_positive, default=DEFAULTS["L"],
                        help="Weyl word length")
    common.add_argument("--depth", type=_positive, default=DEFAULTS["depth"],
                        help="linkage search depth")
    common.add_argument("--affine-node", type=int, default=None)
    common.add_argument("--base-bound", type=_positive, default=None)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--strict", action="store_true",
                        help="exit 2 when an answer is only certified up to the bounds")

    p = argparse.ArgumentParser(prog="superkac", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)
    sp = sub.add_parser("validate", parents=[common], help="check the supermatrix axioms")
    sp.add_argument("--A", help="matrix as JSON, e.g. [[2,-1],[-1,2]]")
    sp.add_argument("--p", help="parities as JSON, e.g. [0,0]")
    sub.add_parser("bases", parents=[common], help="all bases reachable by odd reflections")
    sub.add_parser("classify", parents=[common], help="isotropy and growth type")
    sub.add_parser("roots", parents=[common], help="real (and imaginary) roots up to H")
    sub.add_parser("principal", parents=[common], help="principal roots and the matrix B")
    sp = sub.add_parser("integral", parents=[common], help="positive part of Δ(λ)")
    sp.add_argument("--variant", choices=("plain", "super"), default="plain")
    sp.add_argument("--super", dest="variant", action="store_const", const="super")
    sub.add_parser("base-of", parents=[common], help="the base Π(λ)")
    sp = sub.add_parser("friendly", parents=[common], help="friendly words from Π(λ) to Π_pr")
    sp.add_argument("--root", "--beta", dest="root", help="coordinates of β ∈ Π(λ), comma-separated")
    sp = sub.add_parser("snowflake", parents=[common], help="snowflake highest-weight test")
    sp.add_argument("--restricted", action="store_true",
                    help="finite isotropic type: per-base restricted test")
    sub.add_parser("typical", parents=[common], help="typicality of λ")
    sub.add_parser("critical", parents=[common], help="criticality and level of λ")
    sub.add_parser("kk", parents=[common], help="Kac–Kazhdan pairs (α, m)")
    sp = sub.add_parser("linkage", parents=[common], help="bounded linkage search")
    sp.add_argument("--nu", help="second weight JSON file")
    sp.add_argument("--nu-pairings", help="second weight, inline")
    sp.add_argument("--nu-offset", help="second weight as λ minus/plus a Σ-offset, inline")
    sp = sub.add_parser("admissible", parents=[common], help="admissible weight or level")
    sp.add_argument("--level", help="test the level k (λ = kΛ0)")
    sp = sub.add_parser("enumerate", parents=[common], help="snowflake weights of level k")
    sp.add_argument("--level", required=True)
    sp.add_argument("--pi", help="Π′ as ';'-separated root coordinates (default Π(kΛ0))")
    sp = sub.add_parser("char", parents=[common], help="truncated characters")
    sp.add_argument("--kind", choices=("denominator", "verma", "snowflake"), required=True)
    sp.add_argument("--super", dest="super_", action="store_true", help="ε-graded form")
    sp = sub.add_parser("enright", parents=[common], help="Enright character transforms")
    sp.add_argument("--word", help="principal-root indices, comma-separated (last acts first)")
    sp.add_argument("--module", choices=("verma", "snowflake"), default="verma")
    sp.add_argument("--rank1", nargs=3, metavar=("FLAVOR", "A", "B"))
    sp = sub.add_parser("reproduce", parents=[common], help="run the acceptance suite")
    sp.add_argument("--properties", action="store_true", help="include the property suites")
    sp.add_argument("--only", help="comma-separated criterion numbers")
    sp.add_argument("--timings", action="store_true", help="report wall-clock times")
    return p


# --- input helpers -------------------------------------------------------------

def _weight_source(args) -> tuple[dict | None, str | None]:
    if args.lam:
        data = read_json(args.lam)
        return data, data.get("algebra")
    return None, None


def get_algebra(args, required: bool = True) -> AlgebraData | None:
    source = args.algebra
    if source is None:
        _, source = _weight_source(args)
    if source is None:
        if required:
            raise CliError("no algebra given (pass a file or a bundled name: "
                           + ", ".join(BUNDLED) + ")")
        return None
    return load_algebra(source, affine_node=args.affine_node, base_bound=args.base_bound)


def _parse_pairings(text: str) -> tuple:
    return tuple(N.q(x.strip()) for x in text.split(","))


def weight_from_data(alg: AlgebraData, data: dict) -> Weight:
    if "pairings" in data:
        w = Weight.from_json(data)
    elif "coordinates" in data:
        if alg.coordinates is None:
            raise CliError("weight given in coordinates but the algebra has no coordinate data")
        w = alg.coordinates.weight(data["coordinates"], data.get("label"))
    else:
        raise CliError("weight file needs 'pairings' or 'coordinates'")
    if w.rank != alg.n:
        raise CliError(f"weight has {w.rank} pairings, algebra rank is {alg.n}")
    return w


def get_weight(args, alg: AlgebraData, required: bool = True) -> Weight | None:
    if args.pairings:
        w = Weight(_parse_pairings(args.pairings))
        if w.rank != alg.n:
            raise CliError(f"weight has {w.rank} pairings, algebra rank is {alg.n}")
        return w
    data, _ = _weight_source(args)
    if data is None:
        if required:
            raise CliError("this command needs a weight (--lambda FILE or --pairings)")
        return None
    return weight_from_data(alg, data)


def _roots_arg(text: str) -> list[tuple]:
    return [tuple(int(x) for x in part.split(",")) for part in text.split(";") if part.strip()]


def _root_by_coords(alg: AlgebraData, coords: tuple, H: int):
    look = alg.root_lookup(None if alg.is_fin else max(H, 2 * sum(abs(c) for c in coords)))
    if coords not in look:
        raise CliError(f"{list(coords)} is not a real root")
    return look[coords]


def _label(alg: AlgebraData, coords) -> str | None:
    return alg.coordinates.label(coords) if alg.coordinates is not None else None


def _root_json(alg: AlgebraData, r) -> dict:
    out = r.to_json()
    lab = _label(alg, r.coords)
    if lab:
        out["label"] = lab
    return out


# --- commands --------------------------------------------------------------------
# each returns (result, certified)

def cmd_validate(args):
    if args.A is not None:
        if args.p is None:
            raise CliError("--A needs --p")
        A, p = json.loads(args.A), json.loads(args.p)
    else:
        if args.algebra is None:
            raise CliError("validate needs an algebra file or --A/--p")
        data = read_json(args.algebra)
        A, p = data["A"], data["p"]
    kw = {} if args.base_bound is None else {"base_bound": args.base_bound}
    rep = validate_supermatrix(A, p, **kw)
    res = {"valid": rep.valid, "closed": rep.closed, "bases_checked": rep.bases_checked,
           "violations": [{"axiom": v.axiom, "indices": list(v.indices),
                           "base_index": v.base_index} for v in rep.violations]}
    if not rep.valid:
        raise CliError("supermatrix axioms violated", res)
    return res, rep.closed


def cmd_bases(args):
    alg = get_algebra(args)
    return {"count": len(alg.bases.bases), "closed": alg.bases.closed,
            "bases": [b.to_json() for b in alg.bases.bases]}, alg.bases.closed


def cmd_classify(args):
    alg = get_algebra(args)
    t = alg.type
    out = {"isotropy": t.isotropy, "growth": t.growth,
           "components": [list(c) for c in t.components], "component_growth": list(t.growths)}
    if alg.sym is not None:
        out["symmetrization"] = [N.fmt(x) for x in alg.sym.d]
    if alg.delta is not None:
        out["delta"] = list(alg.delta)
        out["affine_node"] = alg.affine_node
        out["dual_coxeter"] = N.fmt(alg.h_dual) if alg.sym is not None else None
    return out, True


def cmd_roots(args):
    alg = get_algebra(args)
    H = None if alg.is_fin else args.H
    rs = alg.generate_roots(H, imaginary=alg.delta is not None and alg.imaginary is not None)
    return {"H": H, "truncated": rs.truncated,
            "roots": [_root_json(alg, r) for r in rs.positive()]}, not rs.truncated


def cmd_principal(args):
    alg = get_algebra(args)
    return {"principal": [_root_json(alg, r) for r in alg.principal],
            "B": [[N.fmt(x) for x in row] for row in alg.B]}, True


def _H(args, alg):
    return None if alg.is_fin else args.H


def cmd_integral(args):
    alg = get_algebra(args)
    lam = get_weight(args, alg)
    sl = integral_subsystem(lam, alg, _H(args, alg), args.variant)
    out = sl.to_json()
    out["positive_roots"] = [_root_json(alg, r) for r in sl.positive_roots]
    return out, sl.complete


def cmd_base_of(args):
    alg = get_algebra(args)
    lam = get_weight(args, alg)
    b = integral_base(alg, lam, _H(args, alg))
    out = b.to_json()
    out["roots"] = [_root_json(alg, r) for r in b.roots]
    return out, b.complete and b.all_certified


def cmd_friendly(args):
    alg = get_algebra(args)
    lam = get_weight(args, alg)
    b = integral_base(alg, lam, _H(args, alg))
    targets = b.roots
    if args.root:
        want = _roots_arg(args.root)[0]
        targets = [r for r in b.roots if r.coords == want]
        if not targets:
            raise CliError(f"{list(want)} is not in Π(λ)")
    words = [friendly_word_to_pr(lam, r, alg, check=False).to_json() for r in targets]
    return {"words": words}, b.complete


def cmd_snowflake(args):
    alg = get_algebra(args)
    lam = get_weight(args, alg)
    if args.restricted:
        r = restricted_snowflake_findim(alg, lam)
        return r.to_json(), True
    v = is_snowflake_hw(alg, lam, args.H)
    return v.to_json(), v.complete


def cmd_typical(args):
    alg = get_algebra(args)
    lam = get_weight(args, alg)
    v = is_typical(alg, lam, args.H)
    return v.to_json(), v.complete


def cmd_critical(args):
    alg = get_algebra(args)
    lam = get_weight(args, alg)
    out = {"critical": is_critical(alg, lam)}
    if alg.delta is not None:
        out["level"] = N.fmt(level(alg, lam))
        out["dual_coxeter"] = N.fmt(alg.h_dual)
    return out, True


def cmd_kk(args):
    alg = get_algebra(args)
    lam = get_weight(args, alg)
    pairs = kk_pairs(alg, lam, args.H)
    return {"H": args.H, "pairs": [p.to_json() for p in pairs]}, alg.is_fin


def cmd_linkage(args):
    alg = get_algebra(args)
    lam = get_weight(args, alg)
    if args.nu_offset:
        nu = Exponent(lam, _parse_pairings(args.nu_offset))
    elif args.nu_pairings:
        nu = Weight(_parse_pairings(args.nu_pairings))
    elif args.nu:
        nu = weight_from_data(alg, read_json(args.nu))
    else:
        raise CliError("linkage needs --nu, --nu-pairings or --nu-offset")
    r = linkage_closure(alg, lam, nu, args.depth, args.H)
    return r.to_json(), r.linked


def cmd_admissible(args):
    alg = get_algebra(args)
    if args.level is not None:
        v = admissible_level(alg, N.q(args.level), args.H)
    else:
        v = is_admissible(alg, get_weight(args, alg), args.H)
    return v.to_json(), v.complete


def cmd_enumerate(args):
    alg = get_algebra(args)
    k = N.q(args.level)
    if args.pi:
        pi = [_root_by_coords(alg, c, args.H) for c in _roots_arg(args.pi)]
    else:
        pi = list(integral_base(alg, alg.fundamental_weight0().scaled(k), args.H).roots)
    ws = enumerate_snowflake_weights(alg, k, pi, args.H)
    return {"level": N.fmt(k), "pi": [list(r.coords) for r in pi],
            "weights": [w.to_json() for w in ws]}, True


def cmd_char(args):
    alg = get_algebra(args)
    if args.kind == "denominator":
        s = C.weyl_denominator(alg, args.D, "super" if args.super_ else "R")
    elif args.kind == "verma":
        s = C.verma_character(alg, get_weight(args, alg), args.D, args.super_)
    else:
        if args.super_:
            raise CliError("snowflake characters are computed in ordinary form only")
        s = C.snowflake_character(alg, get_weight(args, alg), args.D, args.H)
    return s.to_json(), True


def cmd_enright(args):
    if args.rank1:
        flavor, a, b = args.rank1
        return C.rank1_enright_verma(flavor, N.q(b), N.q(a)).to_json(), True
    if not args.word:
        raise CliError("enright needs --word or --rank1")
    alg = get_algebra(args)
    lam = get_weight(args, alg)
    idx = [int(x) for x in args.word.split(",") if x.strip()]
    if any(i < 0 or i >= len(alg.principal) for i in idx):
        raise CliError("word indices must refer to principal roots")
    w = WeylWord(tuple(alg.principal[i] for i in idx))
    if args.module == "verma":
        num = C.TruncatedSeries.monomial(lam + alg.rho)
        return {"numerator": C.enright_numerator_transform(alg, num, w).to_json()}, True
    num = C.snowflake_numerator(alg, lam, args.D, args.H)
    if num.exact or alg.is_fin:
        full = C.TruncatedSeries(num.anchor, num.terms, None)
        return {"numerator": C.enright_numerator_transform(alg, full, w).to_json()}, True
    raise CliError("the snowflake numerator is truncated here; the transform needs exact data")


def cmd_reproduce(args):
    from . import reproduce
    only = {int(x) for x in args.only.split(",")} if args.only else None
    results = reproduce.run(only, properties=args.properties or (only is not None and 9 in only))
    out = []
    for r in results:
        d = r.to_json()
        if not args.timings:
            d.pop("seconds")
        out.append(d)
    return {"criteria": out, "all_passed": all(r.passed for r in results),
            "lines": [r.line() if args.timings else r.line().rsplit(" (", 1)[0]
                      for r in results]}, True


HANDLERS = {name: globals()["cmd_" + name.replace("-", "_")] for name in COMMANDS}


# --- output ------------------------------------------------------------------------

def _text(obj, indent: int = 0) -> list[str]:
    pad = " " * indent
    lines = []
    if isinstance(obj, dict):
        width = max((len(str(k)) for k in obj), default=0)
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and not _flat(v):
                lines.append(f"{pad}{str(k):<{width}} :")
                lines.extend(_text(v, indent + 2))
            else:
                lines.append(f"{pad}{str(k):<{width}} : {_scalar(v)}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)) and not _flat(v):
                lines.append(f"{pad}-")
                lines.extend(_text(v, indent + 2))
            else:
                lines.append(f"{pad}- {_scalar(v)}")
    else:
        lines.append(pad + _scalar(obj))
    return lines


def _flat(v) -> bool:
    if isinstance(v, dict):
        return False
    return all(not isinstance(x, (dict, list)) or (isinstance(x, list) and _flat(x)) for x in v)


def _scalar(v) -> str:
    if isinstance(v, list):
        return "[" + ", ".join(_scalar(x) for x in v) + "]"
    if v is None:
        return "-"
    return str(v)


def emit(payload: dict, fmt: str, stream=None) -> None:
    stream = stream or sys.stdout
    if fmt == "json":
        stream.write(json.dumps(payload, ensure_ascii=False, indent=2) + "\n")
    elif payload.get("command") == "reproduce" and "result" in payload:
        stream.write("\n".join(payload["result"]["lines"]) + "\n")
    else:
        stream.write("\n".join(_text(payload)) + "\n")


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.height is not None:
        if args.command == "char":
            args.D = args.height
        else:
            args.H = args.height
    meta = {"schema": SCHEMA, "command": args.command,
            "bounds": {"H": args.H, "D": args.D, "L": args.L, "depth": args.depth}}
    try:
        meta["threads"] = threads()
        result, certified = HANDLERS[args.command](args)
    except CliError as exc:
        detail = exc.args[1] if len(exc.args) > 1 else None
        payload = dict(meta, error={"type": "precondition", "message": str(exc.args[0])})
        if detail is not None:
            payload["result"] = detail
        emit(payload, args.format)
        return 1
    except (ValueError, KeyError, FileNotFoundError, NotImplementedError, ZeroDivisionError,
            json.JSONDecodeError) as exc:
        emit(dict(meta, error={"type": type(exc).__name__, "message": str(exc)}), args.format)
        return 1
    payload = dict(meta, certified=bool(certified), result=result)
    emit(payload, args.format)
    if args.command == "reproduce" and not result["all_passed"]:
        return 1
    if args.strict and not certified:
        return 2
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
