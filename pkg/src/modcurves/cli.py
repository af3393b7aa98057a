"""Command-line front end.

Every subcommand prints one JSON report on stdout and a one-line summary on
stderr.  Exit codes: 0 pass, 1 verification failure, 2 usage or input error.

Models are given by name (quartic, quartic_affine, split, nonsplit) or by a file:

    projective X,Y,Z        # or: affine x,y
    genus 3                 # optional
    X^4 + Y^4 - Z^4         # one equation per line

Polynomial arguments in x, y accept quartic, qs, qns, a file or a literal.
Map files hold one component per line, either ``poly`` or ``num | den``.
Series files hold one series per line in the q-series text format.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import Callable, Optional, Sequence

from . import __version__, paperdata, suite
from .coverkit import (
    cm_kernel_check,
    elliptic_point_counts,
    ramification_locus,
    squarefree_kernel,
    verify_desingularization,
    evaluate_rational,
)
from .errors import Exhausted, ModCurvesError
from .ffgeom import (
    Model,
    enumerate_points,
    field_for,
    jacobian_parity_probe,
    smoothness_check,
    verify_map_on_points,
    weil_bound_ok,
)
from .polyalg import MPoly, format_poly
from .qseries import eta_quotient, format_series, parse_series
from .relfinder import (
    find_relations,
    is_lll_reduced,
    lll_reduce,
    recognize_rational_function,
)

NAMED_MODELS = {
    "quartic": lambda: paperdata.load("quartic_model"),
    "quartic_affine": paperdata.affine_base_model,
    "split": lambda: paperdata.load("split_model"),
    "nonsplit": lambda: paperdata.load("nonsplit_model"),
}
NAMED_MAPS = {
    "pi_split": lambda: list(paperdata.load("pi_split")),
    "pi_nonsplit": lambda: list(paperdata.load("pi_nonsplit")),
    "kenku": lambda: [paperdata.load("kenku_U"), paperdata.load("kenku_V")],
}
NAMED_Q = {"qs": "q_split", "qns": "q_nonsplit", "q_split": "q_split", "q_nonsplit": "q_nonsplit"}


class UsageError(Exception):
    pass


# --- input helpers ------------------------------------------------------------------

def _lines(path: str) -> list[str]:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None
    return [ln.split("#")[0].strip() for ln in text.splitlines() if ln.split("#")[0].strip()]


def load_model(spec: str) -> Model:
    if spec in NAMED_MODELS:
        return NAMED_MODELS[spec]()
    lines = _lines(spec)
    if not lines:
        raise UsageError(f"{spec} is empty")
    head = lines[0].split(None, 1)
    if len(head) != 2 or head[0] not in ("projective", "affine"):
        raise UsageError("model file must start with 'projective v1,v2,...' or 'affine v1,...'")
    variables = [v.strip() for v in head[1].split(",")]
    genus = None
    eqs = []
    for ln in lines[1:]:
        if ln.startswith("genus"):
            genus = int(ln.split()[1])
        else:
            eqs.append(ln)
    return Model.build(Path(spec).stem, head[0], eqs, variables, genus=genus)


def load_map(spec: str, variables: Sequence[str]) -> list:
    if spec in NAMED_MAPS:
        return NAMED_MAPS[spec]()
    out = []
    for ln in _lines(spec):
        if "|" in ln:
            num, den = ln.split("|")
            out.append((MPoly.parse(num, variables), MPoly.parse(den, variables)))
        else:
            out.append(MPoly.parse(ln, variables))
    return out


def load_series(path: str) -> list:
    return [parse_series(ln) for ln in _lines(path)]


def _poly_arg(text: str, variables: Sequence[str]) -> MPoly:
    if Path(text).is_file():
        text = " ".join(_lines(text))
    return MPoly.parse(text, variables)


def _ints(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _fractions(text: str) -> list[Fraction]:
    try:
        return [Fraction(t.strip()) for t in text.split(",")]
    except ValueError:
        raise UsageError(f"expected comma-separated rationals, got {text!r}") from None


def _status(ok: bool) -> str:
    return "pass" if ok else "fail"


# --- subcommands ---------------------------------------------------------------------
# each returns (status, details)

def cmd_count_points(a):
    model = load_model(a.model)
    ctx = field_for(a.prime, a.ext)
    n = len(enumerate_points(model, ctx, force=a.force))
    q = ctx.order
    weil = weil_bound_ok(n, q, model.genus) if model.genus is not None and model.projective else None
    details = {"model": model.name, "prime": a.prime, "ext": a.ext, "count": n, "weil_ok": weil,
               "violations": []}
    return _status(weil is not False), details


def cmd_smoothness(a):
    model = load_model(a.model)
    ctx = field_for(a.prime, a.ext)
    pts = enumerate_points(model, ctx, force=a.force)
    rep = smoothness_check(model, ctx, pts)
    return _status(rep.smooth), {"model": model.name, "prime": a.prime, "ext": a.ext, "count": len(pts),
                                 "expected_rank": rep.expected_rank,
                                 "violations": [list(w) for w in rep.witnesses]}


def cmd_jacobian_parity(a):
    model = load_model(a.model)
    try:
        res = jacobian_parity_probe(model, _ints(a.primes))
    except Exhausted as exc:
        return "fail", {"model": model.name, "error": str(exc)}
    return "pass", {"model": model.name, "prime": res.prime, "jacobian_order": res.order,
                    "numerator": list(res.zeta.numerator),
                    "attempts": [{"prime": t.prime, "status": t.status, "order": t.order}
                                 for t in res.attempts]}


def cmd_verify_map(a):
    source, target = load_model(a.source), load_model(a.target)
    mapping = load_map(a.map, source.variables)
    ctx = field_for(a.prime, a.ext)
    rep = verify_map_on_points(source, mapping, target, ctx, enumerate_points(source, ctx, force=a.force))
    return _status(rep.ok), {"source": source.name, "target": target.name, "prime": a.prime, "ext": a.ext,
                             "checked": rep.checked, "skipped": rep.skipped,
                             "violations": [list(v) for v in rep.violations]}


def _affine_poly(text: str) -> MPoly:
    """A polynomial in x, y: quartic, a named q, a file or a literal."""
    if text == "quartic":
        return paperdata.affine_quartic()
    if text in NAMED_Q:
        return paperdata.load(NAMED_Q[text])
    return _poly_arg(text, paperdata.AFFINE_VARS)


def cmd_ramification(a):
    rep = ramification_locus(_affine_poly(a.curve), _affine_poly(a.jnum), _affine_poly(a.jden),
                             Fraction(a.shift), eliminate=a.eliminate)
    return "pass", {"resultant_degree": rep.resultant.degree, "simple_part": str(rep.simple_part),
                    "factor_degrees": {str(k): v for k, v in rep.orbit_degrees.items()},
                    "selected": str(rep.selected) if rep.selected is not None else None}


def cmd_cm_check(a):
    q = _affine_poly(a.q)
    point = _fractions(a.point)
    ok = cm_kernel_check(q, point, a.disc)
    value = evaluate_rational(q, point)
    return _status(ok), {"point": [str(c) for c in point], "value": str(value),
                         "kernel": squarefree_kernel(value), "discriminant": a.disc}


def cmd_elliptic_counts(a):
    ec = elliptic_point_counts(a.p, a.r)
    return "pass", {"p": a.p, "r": a.r, "e2_split": ec.e2_split, "e3_split": ec.e3_split,
                    "e2_plus": ec.e2_plus, "e3_plus": ec.e3_plus}


def cmd_verify_desing(a):
    data = suite.DataBundle.load()
    model, pi, s, _ = data.case(a.case)
    ctx = field_for(a.prime, a.ext)
    rep = verify_desingularization(model, list(pi), s[0], s[1], data.cover(a.case), ctx)
    return _status(rep.ok), {"case": a.case, "prime": a.prime, "ext": a.ext, "checked": rep.checked,
                             "skipped": rep.skipped,
                             "violations": [list(v) for v in rep.base_violations + rep.cover_violations]}


def cmd_relations(a):
    series = load_series(a.series)
    rb = find_relations(series, a.degree, a.genus, bound=a.bound, require_certified=a.require_certified)
    return _status(rb.certified), {"degree": a.degree, "count": len(rb.vectors), "certified": rb.certified,
                                   "required": rb.guard.required, "available": rb.guard.available,
                                   "relations": [format_poly(f) for f in rb.polynomials()]}


def cmd_lll(a):
    if a.file:
        rows = [_ints(ln) for ln in _lines(a.file)]
    elif a.vectors:
        rows = [_ints(v) for v in a.vectors.split(";")]
    else:
        raise UsageError("give --vectors or --file")
    red = lll_reduce(rows, a.delta)
    return _status(is_lll_reduced(red, a.delta)), {"delta": str(a.delta), "basis": red}


def cmd_recognize(a):
    target = load_series(a.target)
    if len(target) != 1:
        raise UsageError("the target file must hold exactly one series")
    gens = load_series(a.generators)
    p, q = recognize_rational_function(target[0], gens, a.max_degree, a.genus, bound=a.bound)
    return "pass", {"numerator": format_poly(p), "denominator": format_poly(q)}


def cmd_series(a):
    try:
        spec = [tuple(int(t) for t in f.split(":")) for f in a.eta.split(",")]
    except ValueError:
        raise UsageError("--eta takes N:r pairs, e.g. 169:2,1:-2") from None
    s = eta_quotient(spec, a.precision, a.scale)
    return "pass", {"eta": a.eta, "scale": a.scale, "valuation": str(Fraction(s.valuation(), s.den))
                    if s.valuation() is not None else None, "series": format_series(s)}


def cmd_dataset(a):
    if a.action == "list":
        return "pass", {"entries": [{"name": n, "kind": k, "source": c} for n, k, c in paperdata.catalog()],
                        "checksums_ok": all(paperdata.verify_checksums().values())}
    if not a.name:
        raise UsageError("dataset export needs a name")
    return "pass", {"name": a.name, "checksum": paperdata.checksum(a.name),
                    "text": paperdata.entry_text(a.name)}


def cmd_verify_paper(a):
    checks = suite.verify_paper(a.profile)
    details = {"profile": a.profile, "checks": [
        {"name": c.name, "status": c.status, "details": c.details, "elapsed_ms": c.elapsed_ms}
        for c in checks]}
    return suite.overall_status(checks), details


# --- parser ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="modcurves", description="Exact checks for modular curve models.")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name: str, fn: Callable, help_: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_)
        p.set_defaults(func=fn)
        return p

    def field_args(p):
        p.add_argument("--prime", type=int, required=True)
        p.add_argument("--ext", type=int, default=1)
        p.add_argument("--force", action="store_true", help="allow more than 10^8 candidates")

    p = add("count-points", cmd_count_points, "count points over F_{l^k}")
    p.add_argument("--model", required=True)
    field_args(p)
    p = add("smoothness", cmd_smoothness, "Jacobian rank at every point")
    p.add_argument("--model", required=True)
    field_args(p)
    p = add("jacobian-parity", cmd_jacobian_parity, "find a prime with odd #Jac(F_l)")
    p.add_argument("--model", required=True)
    p.add_argument("--primes", default="3,5,7,11")
    p = add("verify-map", cmd_verify_map, "check a map sends source points onto the target")
    p.add_argument("--source", required=True)
    p.add_argument("--map", required=True)
    p.add_argument("--target", required=True)
    field_args(p)
    p = add("ramification", cmd_ramification, "resultant locus of j - shift on a plane curve")
    p.add_argument("--curve", required=True)
    p.add_argument("--jnum", required=True)
    p.add_argument("--jden", default="1")
    p.add_argument("--shift", default="1728")
    p.add_argument("--eliminate", default="y", choices=("x", "y"))
    p = add("cm-check", cmd_cm_check, "square class of q at a point")
    p.add_argument("--q", required=True)
    p.add_argument("--point", required=True)
    p.add_argument("--disc", type=int, required=True)
    p = add("elliptic-counts", cmd_elliptic_counts, "elliptic points on split Cartan curves")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--r", type=int, default=1)
    p = add("verify-desing", cmd_verify_desing, "lift canonical points to the singular double cover")
    p.add_argument("--case", choices=("split", "nonsplit"), required=True)
    field_args(p)
    p = add("relations", cmd_relations, "polynomial relations among q-series")
    p.add_argument("--series", required=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--genus", type=int, default=None)
    p.add_argument("--bound", type=int, default=None)
    p.add_argument("--require-certified", action="store_true")
    p = add("lll", cmd_lll, "LLL-reduce integer vectors")
    p.add_argument("--vectors", help="e.g. 1,0,0;0,1,0")
    p.add_argument("--file")
    p.add_argument("--delta", type=Fraction, default=Fraction(99, 100))
    p = add("recognize", cmd_recognize, "write a series as a ratio of polynomials in generators")
    p.add_argument("--target", required=True)
    p.add_argument("--generators", required=True)
    p.add_argument("--max-degree", type=int, required=True)
    p.add_argument("--genus", type=int, default=8)
    p.add_argument("--bound", type=int, default=None)
    p = add("series", cmd_series, "eta quotient expansion")
    p.add_argument("--eta", required=True, help="N:r pairs, e.g. 1:24")
    p.add_argument("--scale", type=int, default=1)
    p.add_argument("--precision", type=int, default=20)
    p = add("dataset", cmd_dataset, "list or export the embedded equations")
    p.add_argument("action", choices=("list", "export"))
    p.add_argument("name", nargs="?")
    p = add("verify-paper", cmd_verify_paper, "run the whole verification suite")
    p.add_argument("--profile", choices=("quick", "full"), default="quick")
    return ap


def _inputs(args) -> dict:
    return {k: (str(v) if isinstance(v, Fraction) else v) for k, v in sorted(vars(args).items())
            if k not in ("func", "command")}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and 2
    t0 = time.perf_counter()
    try:
        status, details = args.func(args)
        code = 0 if status in ("pass", "skipped") else 1
    except (UsageError, ModCurvesError, ValueError) as exc:
        status, details, code = "fail", {"error": f"{type(exc).__name__}: {exc}"}, 2
    report = {"command": args.command, "inputs": _inputs(args), "status": status, "details": details,
              "elapsed_ms": int((time.perf_counter() - t0) * 1000), "version": __version__}
    print(json.dumps(report, indent=2, sort_keys=True, default=str))
    print(f"{args.command}: {status} ({report['elapsed_ms']} ms)", file=sys.stderr)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
