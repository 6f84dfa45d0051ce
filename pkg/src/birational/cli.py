"""Command-line front end.

Each subcommand builds or reads its objects, runs the relevant certificates
and writes a report.  ``--format jsonl`` gives line-delimited JSON records: a
versioned header, one record per item, and a closing summary whose ``ok`` is
the conjunction of every certificate.  The exit status is 0 exactly when that
conjunction holds, 1 when some certificate is false, and the error's own code
(see :mod:`birational.errors`) when a precondition fails.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from . import __version__
from .constructions import (
    chord_involution,
    chord_third_point,
    cubic_two_planes_param,
    determinantal_pair,
    fermat_line_count,
    fermat_lines,
    fermat_polynomial,
    monoid_param,
    quadric_projection,
    quartic_two_planes_involution,
    random_form_through_planes,
    random_tensor,
    sphere_stereographic,
)
from .errors import BirationalError, ParseError, PreconditionError
from .fields import FieldSpec
from .geom import (
    PROJECTIVE,
    Chart,
    Hypersurface,
    LinearSubspace,
    contains_subspace,
    is_smooth_at,
    random_point_on,
    scan_for_singular_points,
    tangent_hyperplane,
)
from .invariants import (
    classify_type,
    diagonal_cubic_coefficients,
    isomorphism_linearity_class,
    not_rational_by_degree,
    segre_criterion,
    volume_form_dim,
)
from .parse import (
    max_variable,
    parse_hypersurface_fixture,
    parse_map_fixture,
    parse_point,
    parse_polynomial,
)
from .points import diophantine_shadow, enum_rational_points, on_quadric
from .ratmap import RationalMap, sample_round_trips, verify_birational

REPORT_SCHEMA = "birational-report"
REPORT_VERSION = 1

__all__ = ["main", "run", "build_parser", "enum_rational_points", "parse_polynomial", "Report"]


class Report:
    """Collects records and certificates; renders as JSONL or text."""

    def __init__(self, command: str, field: FieldSpec, seed: int):
        self.command = command
        self.field = field
        self.seed = seed
        self.records: list = []
        self.certificates: dict = {}

    def add(self, kind: str, **data):
        self.records.append({"record": kind, **data})

    def certify(self, name: str, ok: bool, **detail):
        self.certificates[name] = bool(ok)
        self.records.append({"record": "certificate", "name": name, "ok": bool(ok), **detail})

    @property
    def ok(self) -> bool:
        return all(self.certificates.values())

    def header(self) -> dict:
        return {"record": "header", "schema": REPORT_SCHEMA, "version": REPORT_VERSION,
                "tool_version": __version__, "command": self.command,
                "field": str(self.field), "seed": self.seed}

    def summary(self) -> dict:
        return {"record": "summary", "ok": self.ok, "certificates": self.certificates}

    def lines(self) -> list:
        return [self.header()] + self.records + [self.summary()]

    def write_jsonl(self, out):
        for rec in self.lines():
            out.write(json.dumps(rec, default=str) + "\n")

    def write_text(self, out):
        out.write(f"# {self.command} over {self.field} (seed {self.seed})\n")
        for rec in self.records:
            kind = rec["record"]
            body = {k: v for k, v in rec.items() if k != "record"}
            if kind == "certificate":
                mark = "OK  " if rec["ok"] else "FAIL"
                extra = {k: v for k, v in body.items() if k not in ("name", "ok")}
                tail = f"  {json.dumps(extra, default=str)}" if extra else ""
                out.write(f"[{mark}] {rec['name']}{tail}\n")
            else:
                out.write(f"{kind}: " + ", ".join(f"{k}={_text(v)}" for k, v in body.items()) + "\n")
        out.write(f"status: {'all certificates true' if self.ok else 'some certificate failed'}\n")


def _text(v):
    if isinstance(v, list):
        return "[" + "; ".join(str(x) for x in v) + "]"
    return str(v)


# -- input helpers ---------------------------------------------------------------


def _read_text(path: str) -> str:
    return sys.stdin.read() if path == "-" else Path(path).read_text()


def _load_hypersurface(args, default_chart: Chart = PROJECTIVE, attr: str = "equation",
                       file_attr: str = "hypersurface"):
    path = getattr(args, file_attr, None)
    if path:
        X = parse_hypersurface_fixture(_read_text(path))
        if X.field != args.field:
            args.field = X.field
        return X
    text = getattr(args, attr, None)
    if text is None:
        raise PreconditionError(f"give --{attr} or --{file_attr}")
    chart = Chart.parse(args.chart) if getattr(args, "chart", None) else default_chart
    nvars = getattr(args, "nvars", None) or max(max_variable(text) + 1, 1)
    return Hypersurface(parse_polynomial(text, nvars, args.field), chart)


def _coefficients(text: str | None, n: int, field: FieldSpec) -> list:
    if text is None:
        return [field.one] * n
    vals = [field.parse_element(t) for t in text.split(",")]
    return vals


def _map_record(F: RationalMap) -> dict:
    return F.to_dict()


# -- commands --------------------------------------------------------------------


def cmd_classify(args, rep: Report):
    d, n = args.d, args.n
    if args.equation:
        X = _load_hypersurface(args)
        d, n = X.degree, X.dim
        coeffs = diagonal_cubic_coefficients(X.defining)
        if coeffs and not args.field.p:
            rep.add("segre", coefficients=[str(c) for c in coeffs],
                    verdict=segre_criterion(*coeffs).value)
    if d is None or n is None:
        raise PreconditionError("classify needs --d and --n (or --equation)")
    lin = isomorphism_linearity_class(n, d, args.d2)
    rep.add("classification", degree=d, dimension=n, type=classify_type(d, n).value,
            volume_form_dim=volume_form_dim(d, n),
            not_rational_by_degree=not_rational_by_degree(d, n),
            linearity=str(lin))
    if args.segre:
        a = [args.field.parse_element(t) if args.field.p else t for t in args.segre.split(",")]
        rep.add("segre", coefficients=args.segre.split(","), verdict=segre_criterion(*a).value)


def cmd_smooth_check(args, rep: Report):
    X = _load_hypersurface(args)
    rep.add("hypersurface", equation=str(X.defining), chart=X.chart.value, degree=X.degree)
    if args.point:
        p = parse_point(args.point, X.field)
        smooth = is_smooth_at(X, p)
        rec = {"point": str(p)}
        if smooth:
            rec["tangent_hyperplane"] = str(tangent_hyperplane(X, p))
        rep.certify("smooth_at_point", smooth, **rec)
        return
    rng = random.Random(args.seed)
    scan = scan_for_singular_points(X, rng, tries=args.tries)
    rep.add("scan", tries=scan.tries, points_checked=scan.points_checked,
            note="probabilistic: finding no singular point is evidence, not proof")
    rep.certify("no_singular_point_found", not scan.found_singular,
                singular=[str(s) for s in scan.singular])


def cmd_param_sphere(args, rep: Report):
    a = _coefficients(args.a, args.n, args.field)
    res = sphere_stereographic(args.n, a, args.field)
    rep.add("source", equation=str(res.source.defining), chart="affine")
    rep.add("forward", **_map_record(res.forward))
    rep.add("inverse", **_map_record(res.inverse))
    rep.certify("birational", res.certificate.ok, reason=res.certificate.reason)


def cmd_param_quadric(args, rep: Report):
    Q = _load_hypersurface(args, PROJECTIVE)
    rng = random.Random(args.seed)
    if args.point:
        p = parse_point(args.point, Q.field)
    else:
        p = None
        for _ in range(args.tries):
            cand = random_point_on(Q, rng)
            if cand is not None and is_smooth_at(Q, cand):
                p = cand
                break
        if p is None:
            raise PreconditionError("no smooth point found; pass --point")
    if args.hyperplane:
        form = parse_polynomial(args.hyperplane, Q.nvars, Q.field)
        H = LinearSubspace.from_equations(Q.field, [form])
    else:
        k = next(i for i, c in enumerate(p.coords) if c != 0)
        N = Q.nvars
        H = LinearSubspace.from_columns(Q.field, [[int(i == j) for i in range(N)]
                                                  for j in range(N) if j != k])
    res = quadric_projection(Q, p, H)
    rep.add("centre", point=str(p))
    rep.add("hyperplane", equations=[str(e) for e in H.equations()])
    rep.add("forward", **_map_record(res.forward))
    rep.add("inverse", **_map_record(res.inverse))
    rep.certify("forward_linear", all(q.degree == 1 for q in res.forward.polys))
    rep.certify("inverse_quadratic", all(q.degree == 2 for q in res.inverse.polys if q))
    rep.certify("birational", res.certificate.ok, reason=res.certificate.reason)


def cmd_param_monoid(args, rep: Report):
    n = args.n
    lo = parse_polynomial(args.low, n + 1, args.field)
    hi = parse_polynomial(args.high, n + 1, args.field)
    res = monoid_param(n, lo, hi)
    rep.add("hypersurface", equation=str(res.X.defining))
    rep.add("forward", **_map_record(res.forward))
    rep.add("inverse", **_map_record(res.inverse))
    rep.certify("birational", res.certificate.ok, reason=res.certificate.reason)


def _random_or_given(args, degree: int, rep: Report) -> Hypersurface:
    if args.equation or getattr(args, "hypersurface", None):
        return _load_hypersurface(args, PROJECTIVE)
    if not args.field.p:
        raise PreconditionError("random inputs need --field F<p>")
    F = random_form_through_planes(args.field, args.n, degree, random.Random(args.seed))
    rep.add("random_input", seed=args.seed, equation=str(F))
    return Hypersurface(F, PROJECTIVE)


def cmd_param_cubic2planes(args, rep: Report):
    X = _random_or_given(args, 3, rep)
    res = cubic_two_planes_param(X)
    rep.add("third_point_projective", **_map_record(res.third_point_projective))
    if res.third_point is not None:
        rep.add("third_point", **_map_record(res.third_point))
    rep.add("inverse", **_map_record(res.inverse))
    rep.certify("dominant", res.dominant,
                reason=res.reason if not res.dominant else "s and t are both nonzero")
    if not res.dominant:
        return
    rep.certify("birational", res.certificate.ok, reason=res.certificate.reason)
    if args.samples and X.field.p:
        rng = random.Random(args.seed)
        st = sample_round_trips(res.third_point, res.inverse, res.source, rng, args.samples)
        rep.certify("sampled_round_trips", st.ok and st.checked > 0, checked=st.checked,
                    failures=len(st.failures))


def cmd_chord_involution(args, rep: Report):
    C = _load_hypersurface(args, PROJECTIVE)
    p0 = parse_point(args.p0, C.field)
    res = chord_involution(C, p0)
    rep.add("involution", **_map_record(res.involution))
    rep.certify("involution", res.certificate.ok, reason=res.certificate.reason)
    if args.point:
        p = parse_point(args.point, C.field)
        rep.add("third_point", p0=str(p0), p=str(p), third=str(chord_third_point(C, p0, p)))


def cmd_fermat_lines(args, rep: Report):
    fam = fermat_lines(args.d, args.n, args.field)
    X = Hypersurface(fermat_polynomial(args.d, 2 * args.n + 2, args.field), PROJECTIVE)
    expected = fermat_line_count(args.d, args.n)
    rep.add("family", d=args.d, n=args.n, roots=[str(r) for r in fam.roots],
            count=len(fam), formula=expected, partial=fam.partial)
    if args.list:
        for L in fam:
            rep.add("subspace", equations=[str(e) for e in L.equations()])
    rep.certify("all_contained", all(contains_subspace(X, L) for L in fam))
    if fam.partial:
        per_root = expected // args.d ** (args.n + 1)
        rep.certify("count_matches", len(fam) == per_root * len(fam.roots) ** (args.n + 1),
                    note="partial family: only the rational roots of -1")
    else:
        rep.certify("count_matches", len(fam) == expected)


def cmd_det_quartic(args, rep: Report):
    if args.tensor:
        a = json.loads(_read_text(args.tensor))
    else:
        if not args.field.p:
            raise PreconditionError("random tensors need --field F<p>")
        a = random_tensor(args.field, random.Random(args.seed))
        rep.add("random_input", seed=args.seed)
    res = determinantal_pair(a, args.field)
    rep.add("XB", equation=str(res.XB.defining))
    rep.add("XC", equation=str(res.XC.defining))
    rep.add("cramer", **_map_record(res.cramer))
    rep.add("cramer_back", **_map_record(res.cramer_back))
    rep.certify("cubic_coordinates", all(q.degree == 3 for q in res.cramer_raw if q))
    rep.certify("forward_restriction", res.forward_restriction.ok)
    rep.certify("backward_restriction", res.backward_restriction.ok)
    rep.certify("birational", res.certificate.ok, reason=res.certificate.reason)


def cmd_quartic_involution(args, rep: Report):
    X = _random_or_given(args, 4, rep)
    res = quartic_two_planes_involution(X)
    rep.add("involution", **_map_record(res.involution))
    rep.certify("restriction", res.restriction.ok)
    rep.certify("involution", res.round_trip.ok, reason=res.round_trip.reason)


def cmd_verify_birational(args, rep: Report):
    if args.example == "sphere":
        res = sphere_stereographic(args.n, _coefficients(args.a, args.n, args.field), args.field,
                                   certify=False)
        F, G, X, Y = res.forward, res.inverse, res.source, res.target
    else:
        missing = [k for k in ("forward", "inverse", "source", "target") if not getattr(args, k)]
        if missing:
            raise PreconditionError("verify-birational needs --" + ", --".join(missing)
                                    + " (or --example sphere)")
        F = parse_map_fixture(_read_text(args.forward))
        G = parse_map_fixture(_read_text(args.inverse))
        X = parse_hypersurface_fixture(_read_text(args.source))
        Y = parse_hypersurface_fixture(_read_text(args.target))
    rep.add("forward", **_map_record(F))
    rep.add("inverse", **_map_record(G))
    report = verify_birational(F, G, X, Y)
    for name, ok in report.certificates().items():
        rep.certify(name, ok)
    rep.certify("birational", report.ok, reason=report.reason)
    if not report.ok:
        bad = report.first_failing_residual()
        if bad is not None:
            rep.add("first_failing_residual", label=bad.label,
                    remainder=str(bad.remainder) if bad.remainder is not None else None)


def cmd_rational_points(args, rep: Report):
    field = args.field
    if field.p:
        n = len(args.a.split(","))
        a = _coefficients(args.a, n, field)
        shadow = diophantine_shadow(a, field)
        rep.add("shadow", parametrized=len(shadow.parametrized), excluded=len(shadow.excluded),
                brute_force=len(shadow.brute_force))
        rep.certify("parametrization_complete", shadow.ok,
                    missing=sorted(shadow.missing), extra=sorted(shadow.extra))
        return
    a = _coefficients(args.a, len(args.a.split(",")), field)
    n = len(a)
    pts = list(enum_rational_points(a, args.height))
    good = True
    for i, p in enumerate(pts):
        excluded = i == len(pts) - 1
        good &= on_quadric(a, p.coords)
        rep.add("point", coords=[str(c) for c in p.coords], excluded=excluded)
    rep.add("count", points=len(pts), height=args.height, n=n)
    rep.certify("all_points_on_quadric", good)


COMMANDS = {
    "classify": cmd_classify,
    "smooth-check": cmd_smooth_check,
    "param-sphere": cmd_param_sphere,
    "param-quadric": cmd_param_quadric,
    "param-monoid": cmd_param_monoid,
    "param-cubic2planes": cmd_param_cubic2planes,
    "chord-involution": cmd_chord_involution,
    "fermat-lines": cmd_fermat_lines,
    "det-quartic": cmd_det_quartic,
    "quartic-involution": cmd_quartic_involution,
    "verify-birational": cmd_verify_birational,
    "rational-points": cmd_rational_points,
}


def _field(text: str) -> FieldSpec:
    try:
        return FieldSpec.parse(text)
    except (ValueError, BirationalError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", type=_field, default=FieldSpec(), help="Q or F<p> (default Q)")
    common.add_argument("--seed", type=int, default=0, help="seed for every randomized step")
    common.add_argument("--format", choices=("text", "jsonl"), default="text")

    eq = argparse.ArgumentParser(add_help=False)
    eq.add_argument("--equation", help="defining polynomial")
    eq.add_argument("--hypersurface", help="hypersurface fixture file ('-' for stdin)")
    eq.add_argument("--chart", choices=("affine", "projective"))
    eq.add_argument("--nvars", type=int, help="number of variables (default: inferred)")

    parser = argparse.ArgumentParser(prog="birational",
                                     description="Exact construction and certification of birational maps.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common, eq], help="type, volume forms, linearity, Segre")
    p.add_argument("--d", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--d2", type=int, help="degree of the second hypersurface (linearity class)")
    p.add_argument("--segre", help="a0,a1,a2,a3 of a diagonal cubic surface")

    p = sub.add_parser("smooth-check", parents=[common, eq], help="pointwise or sampled smoothness")
    p.add_argument("--point")
    p.add_argument("--tries", type=int, default=200)

    p = sub.add_parser("param-sphere", parents=[common], help="stereographic projection of a weighted sphere")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--a", help="comma-separated coefficients a_1..a_n (default all 1)")

    p = sub.add_parser("param-quadric", parents=[common, eq], help="projection of a quadric from a point")
    p.add_argument("--point")
    p.add_argument("--hyperplane", help="linear form cutting out the target hyperplane")
    p.add_argument("--tries", type=int, default=200)

    p = sub.add_parser("param-monoid", parents=[common], help="monoid hypersurface parametrization")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--low", required=True, help="H_{d-1} in x0..xn")
    p.add_argument("--high", required=True, help="H_d in x0..xn")

    p = sub.add_parser("param-cubic2planes", parents=[common, eq], help="cubic through two disjoint n-planes")
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--samples", type=int, default=100, help="random round trips over F_p")

    p = sub.add_parser("chord-involution", parents=[common, eq], help="third-point involution of a plane cubic")
    p.add_argument("--p0", required=True)
    p.add_argument("--point")

    p = sub.add_parser("fermat-lines", parents=[common], help="linear subspaces on Fermat hypersurfaces")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--list", action="store_true", help="emit every subspace")

    p = sub.add_parser("det-quartic", parents=[common], help="determinantal quartics and Cramer maps")
    p.add_argument("--tensor", help="JSON file with a 4x4x4 tensor a[k][i][j]")

    p = sub.add_parser("quartic-involution", parents=[common, eq], help="involution of a quartic through two planes")
    p.add_argument("--n", type=int, default=1)

    p = sub.add_parser("verify-birational", parents=[common], help="certify a pair of inverse maps")
    p.add_argument("--forward")
    p.add_argument("--inverse")
    p.add_argument("--source")
    p.add_argument("--target")
    p.add_argument("--example", choices=("sphere",))
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--a")

    p = sub.add_parser("rational-points", parents=[common], help="points of a weighted sphere")
    p.add_argument("--a", required=True, help="comma-separated nonzero coefficients")
    p.add_argument("--height", type=int, default=3)
    return parser


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    args = parser.parse_args(argv)
    rep = Report(args.command, args.field, args.seed)
    try:
        COMMANDS[args.command](args, rep)
    except ParseError as exc:
        err.write(f"error: parse error: {exc}\n")
        return exc.exit_code
    except BirationalError as exc:
        err.write(f"error: {type(exc).__name__}: {exc}\n")
        return exc.exit_code
    except OSError as exc:
        err.write(f"error: {exc}\n")
        return 3
    rep.field = args.field
    if args.format == "jsonl":
        rep.write_jsonl(out)
    else:
        rep.write_text(out)
    return 0 if rep.ok else 1


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
