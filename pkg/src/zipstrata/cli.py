"""Command-line interface.

Exit codes: 0 success, 1 invalid input, 2 resource guard refusal,
3 internal consistency failure.
"""
from __future__ import annotations

import argparse
import json
import sys

from .bt1 import BT1_GUARD, classify_bt1, emit_bt1
from .errors import ConsistencyError, ResourceError, ValidationError
from .zipdatum import FAMILIES, CocharacterType, GroupFamily, build_zip_datum


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ValidationError(message)


def _add_datum_args(p):
    p.add_argument("--family", required=True, choices=FAMILIES)
    p.add_argument("--type", required=True, dest="type_vec",
                   help='sparse type vector "i:n_i,j:n_j" (negative i allowed)')
    p.add_argument("--multiplier", type=int, default=None, help="multiplier weight d")
    p.add_argument("--q", type=int, default=None, help="field size; odd q allows O and CO")
    p.add_argument("--odd-char", action="store_true", help="assume odd characteristic")
    p.add_argument("--max-weyl", type=int, default=None, help="refuse Weyl groups above this order")


def _add_output_args(p, formats, default):
    p.add_argument("--format", choices=formats, default=default)
    p.add_argument("--output", default="-", help="output file (default: stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="zipstrata", description="Strata and classification of G-zips.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("strata", help="strata poset of a zip datum")
    _add_datum_args(p)
    _add_output_args(p, ("dot", "json", "tsv"), "tsv")

    p = sub.add_parser("aut", help="automorphism invariants per stratum")
    _add_datum_args(p)
    _add_output_args(p, ("json", "tsv"), "tsv")

    p = sub.add_parser("bt1", help="classification of BT1 groups")
    p.add_argument("--height", type=int, required=True)
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--max-height", type=int, default=BT1_GUARD)
    _add_output_args(p, ("json", "tsv"), "tsv")

    p = sub.add_parser("classify", help="brute-force classification of GL(n) zips")
    p.add_argument("--type", required=True, dest="type_vec")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--ext-bound", type=int, default=4)
    p.add_argument("--max-n", type=int, default=3)
    p.add_argument("--max-q", type=int, default=4)
    _add_output_args(p, ("json", "tsv"), "tsv")

    p = sub.add_parser("selftest", help="run the small-rank invariant suite")
    p.add_argument("--output", default="-")
    return parser


def _check_q(q):
    if q is None:
        return
    from .fields import gf_order
    try:
        gf_order(q)
    except ValueError as exc:
        raise ValidationError(str(exc)) from None


def _datum(args):
    _check_q(args.q)
    t = CocharacterType.parse(args.type_vec, args.multiplier)
    odd = args.odd_char or (args.q is not None and args.q % 2 == 1)
    d = build_zip_datum(GroupFamily(args.family, t.rank, odd), t)
    return d


def _poset(args):
    from .strata import POSET_GUARD, build_poset
    d = _datum(args)
    return build_poset(d, args.max_weyl or POSET_GUARD)


def _cmd_strata(args) -> str:
    from .strata import emit
    return emit(_poset(args), args.format)


def _cmd_aut(args) -> str:
    p = _poset(args)
    d = p.datum
    W = d.weyl
    stab = None
    if d.family.name == "GL" and args.q is not None:
        from .fields import gf_order
        from .fzip import representatives, stabilizer_lie_dim
        F = gf_order(args.q)
        reps = representatives(d, F)
        stab = {w: stabilizer_lie_dim(d.ctype, g, F) for w, g in reps.items()}
    rows = []
    for s in p.strata:
        a = s.aut
        row = {
            "word": W.word_str(s.rep[0]),
            "omega": W.omega.labels[s.rep[1]],
            "aut_dim": a.aut_dim,
            "aut_lie_dim": a.aut_lie_dim,
            "aut_smooth": a.aut_smooth,
            "v_min": None if a.v_min is None else W.word_str(a.v_min),
            "K_w": sorted(a.K_w),
        }
        if stab is not None:
            row["stab_lie_dim"] = stab[s.rep[0]]
        rows.append(row)
    if args.format == "json":
        return json.dumps(rows, indent=2, ensure_ascii=False) + "\n"
    cols = list(rows[0]) if rows else []
    out = ["\t".join(cols)]
    for r in rows:
        vals = []
        for c in cols:
            v = r[c]
            if v is None:
                vals.append("NA")
            elif isinstance(v, bool):
                vals.append("true" if v else "false")
            elif isinstance(v, list):
                vals.append(",".join(map(str, v)) or "-")
            else:
                vals.append(str(v))
        out.append("\t".join(vals))
    return "\n".join(out) + "\n"


def _cmd_bt1(args) -> str:
    return emit_bt1(classify_bt1(args.height, args.dim, args.max_height), args.format)


def _cmd_classify(args) -> str:
    from .fzip import classify_bruteforce
    t = CocharacterType.parse(args.type_vec)
    c = classify_bruteforce(t, args.q, args.ext_bound, max_n=args.max_n, max_q=args.max_q)
    return c.emit(args.format)


def _cmd_selftest(args) -> str:
    from .selftest import run_checks
    lines, ok = run_checks()
    text = "".join(f"{'PASS' if passed else 'FAIL'} {name}\n" for name, passed in lines)
    if not ok:
        raise _SelftestFailed(text)
    return text


class _SelftestFailed(Exception):
    pass


COMMANDS = {"strata": _cmd_strata, "aut": _cmd_aut, "bt1": _cmd_bt1,
            "classify": _cmd_classify, "selftest": _cmd_selftest}


def _write(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _join_type_values(argv: list[str]) -> list[str]:
    """Let ``--type -1:1,1:1`` through argparse, which would read it as a flag."""
    out, it = [], iter(argv)
    for a in it:
        if a == "--type":
            nxt = next(it, None)
            out.append(a if nxt is None else f"--type={nxt}")
        else:
            out.append(a)
    return out


def run(argv: list[str] | None = None) -> int:
    argv = _join_type_values(sys.argv[1:] if argv is None else list(argv))
    try:
        args = build_parser().parse_args(argv)
        text = COMMANDS[args.command](args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ResourceError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return 2
    except ConsistencyError as exc:
        print(f"consistency failure: {exc}", file=sys.stderr)
        return 3
    except _SelftestFailed as exc:
        sys.stdout.write(str(exc))
        return 1
    _write(args.output, text)
    return 0


def main() -> None:
    sys.exit(run())
