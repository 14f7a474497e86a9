"""Command-line front end.

Subcommands: product, eval, polylog, relations, dims, verify, hoffman.
Data goes to stdout (or --out), progress and diagnostics to stderr.
Exit codes: 0 success, 1 verification failure, 2 usage/parse/domain error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .errors import QmzvError
from .expr import format_element, parse_element
from .words import Element, a_words_of_degree, index_from_text, index_to_text, word_degree
from .products import harmonic, shuffle, star
from .evaluate import QContext, l_value, z_q, zbar_q
from .relations import (
    dims_table,
    gen_double_shuffle,
    gen_hoffman,
    relation_basis,
    relation_basis_from_doc,
    relation_basis_to_doc,
    verify_numeric,
)

PRODUCTS = {"harmonic": harmonic, "shuffle": shuffle, "star": star}


def _q_arg(text):
    try:
        q = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError("q must be a rational like 1/2")
    if not 0 < q < 1:
        raise argparse.ArgumentTypeError("q must satisfy 0 < q < 1")
    return q


def _t_arg(text):
    try:
        t = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError("t must be a rational like 3/10")
    if not abs(t) < 1:
        raise argparse.ArgumentTypeError("t must satisfy |t| < 1")
    return t


def _n_arg(text):
    n = int(text)
    if n < 10:
        raise argparse.ArgumentTypeError("N must be >= 10")
    return n


def _tol_arg(text):
    tol = float(text)
    if not tol > 0:
        raise argparse.ArgumentTypeError("tol must be > 0")
    return tol


def _weight_arg(text):
    w = int(text)
    if not 2 <= w <= 8:
        raise argparse.ArgumentTypeError("weight must be between 2 and 8")
    return w


def _add_output(sp):
    sp.add_argument("--json", action="store_true", help="emit JSON instead of text")
    sp.add_argument("--out", metavar="PATH", help="write the payload to a file")


def _add_context(sp):
    sp.add_argument("--q", type=_q_arg, default=Fraction(1, 2), help="rational with 0 < q < 1 (default 1/2)")
    sp.add_argument("--N", type=_n_arg, default=300, help="truncation bound, >= 10 (default 300)")
    sp.add_argument("--tol", type=_tol_arg, default=1e-10, help="verification tolerance (default 1e-10)")


def build_parser():
    parser = argparse.ArgumentParser(prog="qmzv", description="words, products, and relations for q-analogue multiple zeta values")
    sub = parser.add_subparsers(dest="cmd", required=True)

    sp = sub.add_parser("product", help="multiply two expressions")
    sp.add_argument("kind", choices=sorted(PRODUCTS))
    sp.add_argument("e1")
    sp.add_argument("e2")
    _add_output(sp)

    sp = sub.add_parser("eval", help="evaluate Z_q on an expression")
    sp.add_argument("expr")
    _add_context(sp)
    _add_output(sp)

    sp = sub.add_parser("polylog", help="evaluate the polylogarithm L at t")
    sp.add_argument("expr")
    sp.add_argument("--t", type=_t_arg, required=True, help="rational with |t| < 1")
    _add_context(sp)
    _add_output(sp)

    sp = sub.add_parser("relations", help="relation basis over admissible indices at one weight")
    sp.add_argument("--weight", type=_weight_arg, required=True)
    sp.add_argument("--no-hbar-lifts", action="store_true", help="drop the h-multiples of lower-weight duality generators")
    _add_output(sp)

    sp = sub.add_parser("dims", help="dimension table for weights 2..max")
    sp.add_argument("--max-weight", type=_weight_arg, default=7)
    sp.add_argument("--no-hbar-lifts", action="store_true")
    _add_output(sp)

    sp = sub.add_parser("verify", help="numeric checks of the relation basis and product theorems")
    sp.add_argument("file", nargs="?", help="relation document to verify instead of a freshly computed basis")
    sp.add_argument("--weight", type=_weight_arg, default=4)
    sp.add_argument("--no-hbar-lifts", action="store_true")
    _add_context(sp)
    _add_output(sp)

    sp = sub.add_parser("hoffman", help="print the raising-minus-splitting element of an index")
    sp.add_argument("index", help="comma-separated admissible index, e.g. 2,1")
    _add_output(sp)

    return parser


def _value_text(value):
    if isinstance(value, complex):
        return "%.15g%+.15gi" % (value.real, value.imag)
    return "%.15g" % float(value)


def _format_index(ix):
    return index_to_text(ix) or "()"


def _format_row(row, index_basis):
    parts = []
    for c, ix in zip(row, index_basis):
        if not c:
            continue
        sym = "zbar(%s)" % index_to_text(ix)
        mag = abs(c)
        piece = sym if mag == 1 else "%s*%s" % (mag, sym)
        if not parts:
            parts.append(piece if c > 0 else "-" + piece)
        else:
            parts.append(("+ " if c > 0 else "- ") + piece)
    return " ".join(parts) if parts else "0"


def _progress(msg):
    print(msg, file=sys.stderr, flush=True)


def cmd_product(args):
    result = PRODUCTS[args.kind](parse_element(args.e1), parse_element(args.e2))
    text = format_element(result)
    return text, {"kind": args.kind, "result": text}, None, 0


def cmd_eval(args):
    ctx = QContext(q=args.q, N=args.N, tol=args.tol)
    res = z_q(parse_element(args.expr), ctx)
    text = "%s ± %.3g" % (_value_text(res.value), res.tail_bound)
    doc = {"value": _value_text(res.value), "tail_bound": res.tail_bound, "certified": res.certified, "q": str(args.q), "N": args.N}
    return text, doc, None, 0


def cmd_polylog(args):
    ctx = QContext(q=args.q, N=args.N, tol=args.tol)
    res = l_value(parse_element(args.expr), args.t, ctx)
    text = "%s ± %.3g" % (_value_text(res.value), res.tail_bound)
    doc = {"value": _value_text(res.value), "tail_bound": res.tail_bound, "certified": res.certified, "t": str(args.t), "q": str(args.q), "N": args.N}
    return text, doc, None, 0


def cmd_relations(args):
    basis = relation_basis(args.weight, not args.no_hbar_lifts)
    doc = relation_basis_to_doc(basis)
    summary = "dimension %d" % basis.dimension
    lines = [summary, "indices: " + " ".join(_format_index(ix) for ix in basis.index_basis)]
    for row in basis.rows:
        lines.append("0 = " + _format_row(row, basis.index_basis))
    return "\n".join(lines), doc, summary, 0


def cmd_dims(args):
    rows = dims_table(args.max_weight, not args.no_hbar_lifts, progress=_progress)
    lines = [
        "weights " + " ".join(str(r.weight) for r in rows),
        "indices " + " ".join(str(r.index_count) for r in rows),
        "dim " + " ".join(str(r.dim_n) for r in rows),
        "bound " + " ".join(str(r.implied_bound) for r in rows),
    ]
    for r in rows:
        lines.append("weight %d: %d / %d / %d" % (r.weight, r.index_count, r.dim_n, r.implied_bound))
    doc = {
        "max_weight": args.max_weight,
        "mode": {"hbar_lifts": not args.no_hbar_lifts},
        "rows": [{"weight": r.weight, "indices": r.index_count, "dim": r.dim_n, "bound": r.implied_bound} for r in rows],
    }
    return "\n".join(lines), doc, None, 0


def _spot_check_products(weight, ctx):
    """Deviations of Z_q(w . w') from Z_q(w) Z_q(w') on all small pairs."""
    cap = min(weight, 5)
    words = []
    for m in range(1, cap):
        words.extend(a_words_of_degree(m, admissible_only=True))
    pairs = []
    for i, w1 in enumerate(words):
        for w2 in words[i:]:
            if word_degree(w1) + word_degree(w2) <= cap:
                pairs.append((w1, w2))
    out = {"harmonic": [], "shuffle": []}
    cache = {}
    for w1, w2 in pairs:
        e1, e2 = Element.from_word(w1), Element.from_word(w2)
        r1, r2 = z_q(e1, ctx), z_q(e2, ctx)
        for name, prod in (("harmonic", harmonic), ("shuffle", shuffle)):
            rp = z_q(prod(e1, e2, cache.setdefault(name, {})), ctx)
            dev = abs(rp.value - r1.value * r2.value)
            allowed = ctx.tol + rp.tail_bound + r1.tail_bound * (abs(r2.value) + r2.tail_bound) + r2.tail_bound * abs(r1.value)
            out[name].append((dev, allowed))
    return out


def cmd_verify(args):
    ctx = QContext(q=args.q, N=args.N, tol=args.tol)
    if args.file:
        with open(args.file, "r", encoding="utf-8") as fh:
            basis = relation_basis_from_doc(json.load(fh))
    else:
        basis = relation_basis(args.weight, not args.no_hbar_lifts)
    report = verify_numeric(basis, ctx)
    families = [{"name": "relations", "checks": len(report.rows), "max_abs": report.max_abs, "ok": report.all_ok}]
    lines = ["relations weight=%d: %d rows, max |value| %.3g: %s" % (report.weight, len(report.rows), report.max_abs, "ok" if report.all_ok else "FAIL")]
    failures = []
    for chk in report.rows:
        if not chk.ok:
            detail = "row %d: |value| %.3g exceeds %.3g; 0 = %s" % (chk.row, chk.value, chk.allowed, _format_row(basis.rows[chk.row], basis.index_basis))
            failures.append(detail)
            lines.append("  FAIL " + detail)
    spots = _spot_check_products(basis.weight, ctx)
    for name in ("harmonic", "shuffle"):
        checks = spots[name]
        worst = max((d for d, _ in checks), default=0.0)
        ok = all(d <= a for d, a in checks)
        families.append({"name": name + " product", "checks": len(checks), "max_abs": worst, "ok": ok})
        lines.append("%s product: %d pairs, max deviation %.3g: %s" % (name, len(checks), worst, "ok" if ok else "FAIL"))
        if not ok:
            failures.append(name + " product theorem violated")
    all_ok = all(f["ok"] for f in families)
    lines.append("all checks passed" if all_ok else "verification FAILED")
    doc = {"weight": report.weight, "q": str(args.q), "N": args.N, "tol": args.tol, "families": families, "failures": failures, "all_ok": all_ok}
    return "\n".join(lines), doc, None, 0 if all_ok else 1


def cmd_hoffman(args):
    text = format_element(gen_hoffman(index_from_text(args.index)))
    return text, {"index": args.index, "element": text}, None, 0


DISPATCH = {
    "product": cmd_product,
    "eval": cmd_eval,
    "polylog": cmd_polylog,
    "relations": cmd_relations,
    "dims": cmd_dims,
    "verify": cmd_verify,
    "hoffman": cmd_hoffman,
}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text, doc, summary, code = DISPATCH[args.cmd](args)
    except QmzvError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except (OSError, ValueError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    body = json.dumps(doc, indent=2) if args.json else text
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(body + "\n")
        if summary:
            print(summary)
    else:
        print(body)
        if summary and args.json:
            print(summary, file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
