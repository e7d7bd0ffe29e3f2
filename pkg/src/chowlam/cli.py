"""Command line interface: ``chowlam <subcommand> ...``.

Exit codes: 0 ok, 1 mathematical failure (degenerate form demanded,
failed verification), 2 budget exhausted, 3 bad input.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path

from . import __version__, linalg
from .grassmann import (
    dual_coordinates,
    is_standard,
    parse_index,
    plucker_table,
    primal_coordinates,
    straighten,
)
from .forms import DegenerateInput, DimensionMismatch, EmptyVariety
from .groebner import Budget, BudgetExceeded, NotZeroDimensional
from .polyengine import Polynomial, parse_polynomial
from .varieties import FormResult, VarietySpec

EXIT_OK, EXIT_MATH, EXIT_BUDGET, EXIT_INPUT = 0, 1, 2, 3


# mathematical failures, reported with exit code 1
MATH_ERRORS = (DimensionMismatch, EmptyVariety, DegenerateInput, NotZeroDimensional)


def _sha(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()[:16]


# ----------------------------------------------------------- example registry


def _ruled_surface_spec() -> VarietySpec:
    T = plucker_table("q", 2, 4)
    gens = ["q[1,2] + q[1,4] - 2*q[2,3] + 2*q[3,4]",
            "q[1,3] + 2*q[1,4] + q[2,3] + 2*q[2,4]",
            "5*q[1,2] + 2*q[1,4] - 25*q[2,3] + 10*q[3,4]"]
    return VarietySpec(2, 4, r=3, generators=[parse_polynomial(g, T) for g in gens], name="ruled-surface",
                       sampler="conic")


def _threefold_spec() -> VarietySpec:
    T = plucker_table("q", 2, 5)
    gens = ["q[1,2] + q[1,3]", "q[2,4] + q[2,5]", "q[2,3] + q[3,5]"]
    return VarietySpec(2, 5, r=4, generators=[parse_polynomial(g, T) for g in gens], name="three-planes-threefold")


MATROID_126_MATRIX = [["x1", "0", "0", "0", "-x5", "x6"],
                      ["0", "x2", "0", "x4", "0", "-x6"],
                      ["0", "0", "x3", "-x4", "x5", "0"]]

BRANCH_Z = [[1, 0, 0, 0, 0, 0, -1, -6],
            [0, 1, 0, 0, 0, 0, 1, 5],
            [0, 0, 1, 0, 0, 0, -1, -4],
            [0, 0, 0, 1, 0, 0, 1, 3],
            [0, 0, 0, 0, 1, 0, -1, -2],
            [0, 0, 0, 0, 0, 1, 1, 1]]


def _spec_example(spec_fn):
    return {"kind": "spec", "spec": spec_fn}


def _det_result(poly_fn, ambient, kind, label):
    def run():
        f = poly_fn()
        return FormResult(f, ambient, kind, f.degree(), label=label, method="det")
    return run


def _branch_quartic():
    from .forms import hurwitz_lam_G28, project_form

    f = project_form(hurwitz_lam_G28(letter="p"), BRANCH_Z)
    return straighten(f, "y")


def _swept_surface():
    from .forms import swept_variety

    return swept_variety(_ruled_surface_spec()).generators[0].canonical()


def _hypersimplex():
    from .forms import hypersimplex_form

    return hypersimplex_form()


def _rnc():
    from .forms import bezout_chow_rnc5

    return bezout_chow_rnc5()


def _five_lines():
    from .forms import five_lines_form

    return five_lines_form()


def _hl28():
    from .forms import hurwitz_lam_G28

    return hurwitz_lam_G28()


def _p3222():
    from .forms import positroid_3222_form

    return positroid_3222_form()


EXAMPLES = {
    "ruled-surface": dict(spec=_ruled_surface_spec, doc="Chow-Lam quadric of a ruled surface, Gr(2,4), r=3"),
    "ruled-surface-points": dict(poly=_swept_surface, doc="the ruled surface itself by point elimination"),
    "threefold": dict(spec=_threefold_spec, doc="lines meeting three planes in P^4, Gr(2,5), r=4"),
    "schubert-24": dict(spec=lambda: VarietySpec(2, 5, schubert=(2, 4)), doc="Schubert threefold S_24"),
    "schubert-15": dict(spec=lambda: VarietySpec(2, 5, schubert=(1, 5)), doc="Schubert threefold S_15 (degenerate)"),
    "positroid-222": dict(spec=lambda: VarietySpec(2, 6, positroid=(2, 2, 2)), doc="positroid (2,2,2) in Gr(2,6)"),
    "positroid-3222": dict(spec=lambda: VarietySpec(2, 9, positroid=(3, 2, 2, 2)),
                           det=_det_result(_p3222, (4, 9), "dual", "positroid-3222"),
                           doc="positroid (3,2,2,2) in Gr(2,9) (determinantal)"),
    "five-lines": dict(spec=lambda: VarietySpec(2, 10, positroid=(2, 2, 2, 2, 2)),
                       det=_det_result(_five_lines, (4, 10), "dual", "five-lines"),
                       doc="five lines in P^3 with a common transversal"),
    "matroid-rank3": dict(spec=lambda: VarietySpec(3, 6, r=5, matrix=MATROID_126_MATRIX, name="matroid-rank3"),
                          doc="matroid {126,135,234,456} from its parametrization"),
    "rnc-bezout": dict(det=_det_result(_rnc, (3, 5), "primal", "rnc-bezout"),
                       doc="Chow form of the rational normal quartic (Bezout matrix)"),
    "hurwitz-lam-g28": dict(det=_det_result(_hl28, (4, 8), "dual", "hurwitz-lam-g28"),
                            doc="Hurwitz-Lam form of the positroid (2,2,2,2)"),
    "branch-quartic": dict(poly=_branch_quartic, doc="branch locus quartic in Gr(2,6), straightened"),
    "hypersimplex": dict(poly=_hypersimplex, doc="Chow-Lam form of the hypersimplex toric variety"),
    "degree-table": dict(table=(9, 30), doc="maximal rank 2 positroid Chow-Lam degrees, 9 <= n <= 30"),
}


# --------------------------------------------------------------- helpers


def _budget(args) -> Budget | None:
    steps = getattr(args, "budget_steps", None)
    secs = getattr(args, "budget_seconds", None)
    if steps is None and secs is None:
        return None
    if steps is not None and steps <= 0 or secs is not None and secs <= 0:
        raise ValueError("budgets must be positive")
    b = Budget()
    if steps is not None:
        b.max_reductions = steps
    if secs is not None:
        b.max_seconds = secs
    return b


def _ints(text: str) -> tuple:
    text = text.strip()
    if "," in text:
        return tuple(int(x) for x in text.split(",") if x.strip())
    return tuple(int(c) for c in text)


def _spec_from_args(args) -> VarietySpec:
    if getattr(args, "example", None):
        ex = EXAMPLES.get(args.example)
        if ex is None or "spec" not in ex:
            raise ValueError(f"example {args.example!r} has no variety")
        return ex["spec"]()
    if getattr(args, "spec", None):
        return VarietySpec.from_json(Path(args.spec).read_text())
    if getattr(args, "positroid", None):
        beta = _ints(args.positroid)
        n = args.n or sum(beta)
        return VarietySpec(args.k or 2, n, r=args.r, positroid=beta)
    if getattr(args, "schubert", None):
        if not args.n:
            raise ValueError("--schubert needs --n")
        I = _ints(args.schubert)
        return VarietySpec(args.k or len(I), args.n, r=args.r, schubert=I)
    raise ValueError("no variety given (use --example, --spec, --positroid or --schubert)")


def _header(args, inputs: str) -> dict:
    return {"tool": "chowlam", "version": __version__, "seed": getattr(args, "seed", 0),
            "input_sha256": _sha(inputs)}


def _emit(args, header: dict, payload: dict, text: str):
    if getattr(args, "format", "text") == "json":
        out = json.dumps({**header, "result": payload}, sort_keys=True, indent=2)
    else:
        head = f"# chowlam {header['version']} seed={header['seed']} input={header['input_sha256']}"
        out = head + "\n" + text
    if getattr(args, "output", None):
        Path(args.output).write_text(out + "\n")
    else:
        print(out)


def _load_form(path: str) -> FormResult:
    text = Path(path).read_text()
    try:
        obj = json.loads(text)
    except json.JSONDecodeError:
        obj = None
    if isinstance(obj, dict):
        if "result" in obj:
            obj = obj["result"]
        return FormResult.from_json_obj(obj)
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    f = parse_polynomial(" ".join(lines))
    return _wrap_poly(f)


def _wrap_poly(f: Polynomial) -> FormResult:
    names = f.vars.names
    if not names:
        raise ValueError("form has no variables")
    letters = {v.split("[")[0] for v in names}
    if len(letters) != 1:
        raise ValueError("form mixes variable families")
    letter = letters.pop()
    sizes = {len(parse_index(v)) for v in names}
    size = sizes.pop()
    n = max(max(parse_index(v)) for v in names)
    kind = "dual" if letter == "q" else "primal"
    table = plucker_table(letter, size, n)
    f = f.to_table(table)
    m = size if kind == "dual" else n - size
    return FormResult(f, (m, n), kind, f.degree())


def _read_matrix(path: str):
    return linalg.read_csv_matrix(Path(path).read_text())


def _form_payload(res: FormResult) -> tuple[dict, str]:
    payload = res.to_json_obj()
    if res.degenerate:
        text = "DEGENERATE\nwitness: " + ", ".join(w.to_text() for w in res.witness)
    else:
        text = res.form.to_text()
    if res.verification is not None:
        text += f"\n# verification: {res.verification['verdict']}"
    return payload, text


# ------------------------------------------------------------ subcommands


def cmd_degree(args) -> int:
    from . import schubert

    if args.table:
        lo, hi = (int(x) for x in args.table.split(".."))
        rows = schubert.max_table(lo, hi)
        payload = [{"n": n, "lambda": lam, "partitions": [list(b.parts) for b in arg]} for n, lam, arg in rows]
        _emit(args, _header(args, args.table), {"table": payload}, schubert.max_table_tsv(rows).rstrip())
        return EXIT_OK
    if args.grassmannian:
        k, s = _ints(args.grassmannian)
        d = schubert.grassmannian_degree(k, s)
        _emit(args, _header(args, args.grassmannian), {"degree": d}, str(d))
        return EXIT_OK
    if args.disjoint:
        k, t = _ints(args.disjoint)
        d = schubert.disjoint_nonbases_degree(k, t)
        _emit(args, _header(args, args.disjoint), {"lambda": d}, str(d))
        return EXIT_OK
    spec = _spec_from_args(args)
    if spec.positroid is not None and not args.numeric:
        lam = schubert.chow_lam_degree_rank2(spec.positroid)
        cls = schubert.positroid_class_rank2(spec.positroid)
    else:
        cls = schubert.cohomology_class_numeric(spec, seed=args.seed, budget=_budget(args))
        lam = cls.chow_lam_degree(spec.r)
    payload = {"lambda": lam, "class": {",".join(map(str, I)): c for I, c in sorted(cls.coeffs.items())}}
    _emit(args, _header(args, spec.to_json()), payload, f"{lam}\nclass: {cls}")
    return EXIT_OK


def cmd_form(args) -> int:
    from .forms import chow_lam_eliminate
    from .oracle import verify_form

    budget = _budget(args)
    ex = EXAMPLES.get(args.example) if args.example else None
    if args.example and ex is None:
        raise ValueError(f"unknown example {args.example!r}")
    if ex is not None and "spec" not in ex and "det" not in ex:
        raise ValueError(f"example {args.example!r} is not a form; use 'examples --run'")
    spec = _spec_from_args(args) if (ex is None or "spec" in ex) else None
    method = args.method
    if method == "det" or (ex is not None and "spec" not in ex):
        det = ex.get("det") if ex else _det_for_spec(spec)
        if det is None:
            raise ValueError("no determinantal formula for this variety")
        res = det()
        if spec is not None and not args.no_verify:
            res.verification = verify_form(res, spec, seed=args.seed, incident=args.samples, generic=args.samples)
    else:
        res = chow_lam_eliminate(spec, budget=budget, verify=not args.no_verify, seed=args.seed,
                                 samples=args.samples)
    payload, text = _form_payload(res)
    inputs = spec.to_json() if spec is not None else args.example
    _emit(args, _header(args, inputs), payload, text)
    if res.degenerate and args.require_form:
        return EXIT_MATH
    if res.verification is not None and res.verification["verdict"] != "PASS":
        return EXIT_MATH
    return EXIT_OK


def _det_for_spec(spec):
    if spec.positroid == (3, 2, 2, 2):
        return EXAMPLES["positroid-3222"]["det"]
    if spec.positroid == (2, 2, 2, 2, 2):
        return EXAMPLES["five-lines"]["det"]
    return None


def cmd_project(args) -> int:
    from .forms import project_form

    res = _load_form(args.form)
    Z = _read_matrix(args.Z)
    f = project_form(res, Z, args.emission)
    if args.straighten:
        f = straighten(f, "y")
    payload = {"polynomial": f.to_text(), "terms": len(f.terms), "degree": f.degree(),
               "standard": is_standard(f, "y") if args.straighten else None}
    _emit(args, _header(args, Path(args.form).read_text() + Path(args.Z).read_text()), payload, f.to_text())
    return EXIT_OK


def _subspace_arg(path: str, kind: str):
    M = _read_matrix(path)
    return dual_coordinates(M) if kind == "dual" else primal_coordinates(M)


def cmd_intersect(args) -> int:
    from .forms import intersect_form

    res = _load_form(args.form)
    L = _subspace_arg(args.L, "primal")
    f = intersect_form(res, L)
    _emit(args, _header(args, Path(args.form).read_text() + Path(args.L).read_text()),
          {"polynomial": f.to_text(), "degree": f.degree()}, f.to_text())
    return EXIT_OK


def cmd_join(args) -> int:
    from .forms import join_form

    res = _load_form(args.form)
    L = _subspace_arg(args.L, "dual")
    f = join_form(res, L)
    _emit(args, _header(args, Path(args.form).read_text() + Path(args.L).read_text()),
          {"polynomial": f.to_text(), "degree": f.degree()}, f.to_text())
    return EXIT_OK


def cmd_straighten(args) -> int:
    text = Path(args.input).read_text() if args.input else args.text
    if not text:
        raise ValueError("give a polynomial file or --text")
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    f = parse_polynomial(" ".join(lines))
    g = straighten(f, args.letter)
    _emit(args, _header(args, text), {"polynomial": g.to_text(), "terms": len(g.terms)}, g.to_text())
    return EXIT_OK


def cmd_verify(args) -> int:
    from .oracle import verify_form

    res = _load_form(args.form)
    spec = _spec_from_args(args)
    report = verify_form(res, spec, seed=args.seed, incident=args.samples, generic=args.samples)
    text = (f"{report['verdict']}: incident {report['incident']['count']} "
            f"(failures {len(report['incident']['failures'])}), generic {report['generic']['count']} "
            f"(zero hits {len(report['generic']['zero_hits'])})")
    _emit(args, _header(args, Path(args.form).read_text() + spec.to_json()), report, text)
    return EXIT_OK if report["verdict"] == "PASS" else EXIT_MATH


def run_example(name: str, budget: Budget | None = None, verify: bool = True, seed: int = 0, samples: int = 20):
    """Run a registry entry; returns ``(payload, text)``."""
    from . import schubert
    from .forms import chow_lam_eliminate

    ex = EXAMPLES[name]
    if "table" in ex:
        rows = schubert.max_table(*ex["table"])
        return ({"table": [{"n": n, "lambda": lam, "partitions": [list(b.parts) for b in arg]}
                           for n, lam, arg in rows]}, schubert.max_table_tsv(rows).rstrip())
    if "poly" in ex:
        f = ex["poly"]()
        return {"polynomial": f.to_text(), "terms": len(f.terms), "degree": f.degree()}, f.to_text()
    if "det" in ex:
        res = ex["det"]()
        if verify and "spec" in ex:
            from .oracle import verify_form

            res.verification = verify_form(res, ex["spec"](), seed=seed, incident=samples, generic=samples)
        return _form_payload(res)
    res = chow_lam_eliminate(ex["spec"](), budget=budget, verify=verify, seed=seed, samples=samples)
    return _form_payload(res)


def cmd_examples(args) -> int:
    if args.list or not (args.run or args.all):
        lines = [f"{name:22s} {ex['doc']}" for name, ex in EXAMPLES.items()]
        _emit(args, _header(args, "examples"), {"examples": {k: v["doc"] for k, v in EXAMPLES.items()}},
              "\n".join(lines))
        return EXIT_OK
    names = list(EXAMPLES) if args.all else [args.run]
    payloads, texts = {}, []
    for name in names:
        if name not in EXAMPLES:
            raise ValueError(f"unknown example {name!r}")
        payload, text = run_example(name, _budget(args), not args.no_verify, args.seed, args.samples)
        payloads[name] = payload
        texts.append(f"# == {name}\n{text}")
    _emit(args, _header(args, ",".join(names)), payloads, "\n".join(texts))
    return EXIT_OK


# ------------------------------------------------------------------ parser


def _common(p):
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--output", "-o")
    p.add_argument("--budget-steps", type=int, dest="budget_steps")
    p.add_argument("--budget-seconds", type=float, dest="budget_seconds")


def _variety_args(p):
    p.add_argument("--example")
    p.add_argument("--spec", help="variety JSON file")
    p.add_argument("--positroid")
    p.add_argument("--schubert")
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--r", type=int)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="chowlam", description="Chow-Lam forms of subvarieties of Grassmannians")
    ap.add_argument("--version", action="version", version=f"chowlam {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("degree", help="Chow-Lam degrees and Schubert classes")
    _common(p)
    _variety_args(p)
    p.add_argument("--table", help="range lo..hi for the maximal degree table")
    p.add_argument("--grassmannian", help="k,s: degree of Gr(k,s)")
    p.add_argument("--disjoint", help="k,t: degree for t pairwise disjoint nonbases")
    p.add_argument("--numeric", action="store_true", help="count points instead of the rank 2 formula")
    p.set_defaults(func=cmd_degree)

    p = sub.add_parser("form", help="compute a Chow-Lam form")
    _common(p)
    _variety_args(p)
    p.add_argument("--method", choices=["eliminate", "det"], default="eliminate")
    p.add_argument("--no-verify", action="store_true")
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--require-form", action="store_true", help="exit 1 if the locus is degenerate")
    p.set_defaults(func=cmd_form)

    p = sub.add_parser("project", help="substitute twistor coordinates into a form")
    _common(p)
    p.add_argument("form")
    p.add_argument("Z", help="CSV matrix")
    p.add_argument("--emission", choices=["dual", "primal", "stiefel"], default="dual")
    p.add_argument("--straighten", action="store_true")
    p.set_defaults(func=cmd_project)

    for name, func, helptext in (("intersect", cmd_intersect, "form of V cut by Gr(k,L)"),
                                 ("join", cmd_join, "form of the join of V with Gr(k,L)")):
        p = sub.add_parser(name, help=helptext)
        _common(p)
        p.add_argument("form")
        p.add_argument("L", help="CSV matrix whose rows span L")
        p.set_defaults(func=func)

    p = sub.add_parser("straighten", help="expand in standard monomials of Gr(2,n)")
    _common(p)
    p.add_argument("input", nargs="?")
    p.add_argument("--text")
    p.add_argument("--letter", default="y")
    p.set_defaults(func=cmd_straighten)

    p = sub.add_parser("verify", help="check a form against sampled incidences")
    _common(p)
    _variety_args(p)
    p.add_argument("form")
    p.add_argument("--samples", type=int, default=20)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("examples", help="list or run the worked examples")
    _common(p)
    p.add_argument("--list", action="store_true")
    p.add_argument("--run")
    p.add_argument("--all", action="store_true")
    p.add_argument("--no-verify", action="store_true")
    p.add_argument("--samples", type=int, default=20)
    p.set_defaults(func=cmd_examples)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as e:
        print(f"budget exhausted: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except MATH_ERRORS as e:
        print(f"failure: {e}", file=sys.stderr)
        return EXIT_MATH
    except (ValueError, OSError, KeyError) as e:
        print(f"bad input: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
