"""Command-line front end.

Exit codes: 0 all verdicts pass (or nothing to verify), 1 a verified
statement failed, 2 usage or input error (including unmet theorem
hypotheses), 3 complex larger than the STRATA_MAX_SIMPLICES cap.

Reports go to stdout and are byte-identical across runs for identical
inputs; informational notes (e.g. that a singular set was auto-detected
heuristically) go to stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import builders
from .chains import betti_numbers, chain_complex
from .complex_io import ComplexDocument, dumps_complex, load_document
from .errors import (
    DomainError,
    HypothesesUnmetError,
    InputFormatError,
    InvariantViolationError,
    MalformedInputError,
    NotFoundError,
    ResourceCapError,
    StrataError,
)
from .horn import HornMetric, MonomialForm, l1_test, linf_test, validate, volume
from .intersection import (
    Filtration,
    Perversity,
    default_filtration,
    intersection_chain_complex,
    subdivided_filtration,
)
from .render import (
    FORMATS,
    render_betti,
    render_duality,
    render_stokes,
    render_table,
    render_validation,
)
from .simplicial import (
    SimplicialComplex,
    cone,
    product,
    subdivide_with_vertex_map,
    subdivide_subcomplex,
    subdivision_size_estimate,
    suspension,
    validate_pseudomanifold,
)
from .verify import (
    check_gm_duality,
    check_lefschetz,
    cone_check,
    de_rham_table,
    stokes_report,
)

DEFAULT_MAX_SIMPLICES = 500_000


def _perversity_arg(text: str) -> str:
    """Validate perversity syntax early; length is checked per complex."""
    if text in ("zero", "top"):
        return text
    try:
        values = tuple(int(x) for x in text.split(","))
        Perversity(values)
    except (ValueError, MalformedInputError) as exc:
        raise argparse.ArgumentTypeError(f"invalid perversity {text!r}: {exc}")
    return text


def _fraction_arg(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _fraction_list_arg(text: str) -> tuple[Fraction, ...]:
    try:
        return tuple(Fraction(x) for x in text.split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a comma list of rationals: {text!r}") from exc


def _index_list_arg(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a comma list of integers: {text!r}") from exc


def _nonnegative_int(text: str) -> int:
    try:
        n = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from exc
    if n < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return n


def _add_common(sub: argparse.ArgumentParser, subdivide: bool = True) -> None:
    sub.add_argument("path", help="JSON complex document")
    sub.add_argument(
        "--format", choices=FORMATS, default="md", help="output format (default md)"
    )
    if subdivide:
        sub.add_argument(
            "--subdivide",
            type=_nonnegative_int,
            default=0,
            metavar="N",
            help="apply N barycentric subdivisions first "
            "(size grows by (m+1)! per round)",
        )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="strata",
        description="Exact intersection (co)homology of triangulated pseudomanifolds.",
    )
    sub = parser.add_subparsers(dest="verb", required=True, metavar="VERB")

    p = sub.add_parser("validate", help="pseudomanifold check with heuristic singular set")
    _add_common(p)

    p = sub.add_parser("betti", help="rational Betti numbers")
    _add_common(p)

    p = sub.add_parser("ih", help="intersection homology Betti numbers")
    _add_common(p)
    p.add_argument(
        "--perversity",
        type=_perversity_arg,
        default="zero",
        help='"zero", "top", or a comma list of p_2..p_m (default zero)',
    )

    p = sub.add_parser("table", help="the three-row de Rham table")
    _add_common(p)

    p = sub.add_parser("duality", help="generalized Poincaré duality check")
    _add_common(p)
    p.add_argument("--perversity", type=_perversity_arg, default="zero")

    p = sub.add_parser("lefschetz", help="zero-vs-top perversity duality check")
    _add_common(p)

    p = sub.add_parser("stokes", help="dimension criterion for the L1 Stokes identity")
    _add_common(p, subdivide=False)

    p = sub.add_parser("horn", help="L1/Linf classification of a monomial form")
    p.add_argument("--exponents", type=_fraction_list_arg, required=True,
                   metavar="C1,C2,...", help="positive weight exponents")
    p.add_argument("--a", type=_fraction_arg, required=True,
                   help="radial exponent of the form")
    p.add_argument("--index", type=_index_list_arg, default=(),
                   metavar="I1,I2,...", help="1-based link form indices")
    p.add_argument("--dt", action="store_true", help="wedge the form with dt")
    p.add_argument("--eps", type=_fraction_arg, default=Fraction(1),
                   help="radial cutoff (default 1)")

    p = sub.add_parser("build", help="write a named complex as JSON")
    p.add_argument(
        "spec",
        nargs="+",
        help="torus | sphere M | suspension-of FILE | cone-of FILE | "
        "product FILE FILE | pinched-torus",
    )
    p.add_argument("--out", default=None, help="output file (default stdout)")

    p = sub.add_parser("cone-check", help="engine vs dense oracle on a cone")
    _add_common(p, subdivide=False)
    p.add_argument("--perversity", type=_perversity_arg, default="zero")

    return parser


def parse_args(argv=None) -> argparse.Namespace:
    """Validated command; exits with code 2 on usage errors."""
    return build_parser().parse_args(argv)


# -- helpers ----------------------------------------------------------------


def _size_cap() -> int:
    raw = os.environ.get("STRATA_MAX_SIMPLICES")
    if raw is None:
        return DEFAULT_MAX_SIMPLICES
    try:
        cap = int(raw)
    except ValueError as exc:
        raise InputFormatError(f"STRATA_MAX_SIMPLICES={raw!r} is not an integer") from exc
    if cap <= 0:
        raise InputFormatError("STRATA_MAX_SIMPLICES must be positive")
    return cap


def _check_cap(K: SimplicialComplex, cap: int) -> None:
    count = K.simplex_count
    if count > cap:
        raise ResourceCapError(
            f"complex has {count} simplices, over the cap of {cap} "
            "(raise STRATA_MAX_SIMPLICES to allow more)"
        )


def _subdivide_document(doc: ComplexDocument, rounds: int, cap: int) -> ComplexDocument:
    for _ in range(rounds):
        if subdivision_size_estimate(doc.complex) > cap:
            raise ResourceCapError(
                "subdividing would exceed the simplex cap "
                f"({subdivision_size_estimate(doc.complex)} maximal simplices)"
            )
        sd, vmap = subdivide_with_vertex_map(doc.complex)
        _check_cap(sd, cap)
        singular = (
            subdivide_subcomplex(doc.singular, vmap)
            if doc.singular is not None
            else None
        )
        filtration = None
        if doc.filtration is not None:
            filtration = Filtration(
                sd,
                tuple(
                    subdivide_subcomplex(level, vmap) for level in doc.filtration.levels
                ),
            )
        doc = ComplexDocument(
            complex=sd, singular=singular, filtration=filtration, labels=None
        )
    return doc


def _load(path: str, subdivide: int = 0) -> ComplexDocument:
    doc = load_document(path)
    cap = _size_cap()
    _check_cap(doc.complex, cap)
    if subdivide:
        doc = _subdivide_document(doc, subdivide, cap)
    return doc


def _require_pseudomanifold(K: SimplicialComplex) -> None:
    # structural part only (purity + ridge degree 2); the link heuristic is
    # reserved for the validate verb
    m = K.dimension
    pure = all(s.dimension == m for s in K.maximal_simplices)
    report_ok = pure
    if pure and m >= 1:
        counts: dict = {}
        for top in K.simplices(m):
            for _, r in top.boundary():
                counts[r] = counts.get(r, 0) + 1
        report_ok = all(c == 2 for c in counts.values())
    if not report_ok:
        raise InputFormatError(
            "input is not a closed pseudomanifold (purity or ridge degree fails); "
            "run `strata validate` for details"
        )


def _resolve_singular(doc: ComplexDocument) -> tuple[SimplicialComplex | None, str]:
    sigma, source = doc.effective_singular()
    if source == "none":
        report = validate_pseudomanifold(doc.complex)
        sigma, source = report.singular_candidate, "heuristic"
    if source == "heuristic":
        print(
            "note: singular set auto-detected by the homology-sphere link "
            "test (heuristic); declare one in the document to override",
            file=sys.stderr,
        )
    return sigma, source


def _resolve_filtration(doc: ComplexDocument) -> Filtration:
    if doc.filtration is not None:
        return doc.filtration
    sigma, _ = _resolve_singular(doc)
    return default_filtration(doc.complex, sigma)


def _perversity_for(text: str, m: int) -> Perversity:
    return Perversity.parse(text, m)


# -- verb implementations -----------------------------------------------------


def _run_validate(args) -> int:
    doc = _load(args.path, args.subdivide)
    report = validate_pseudomanifold(doc.complex)
    sys.stdout.write(render_validation(report, args.format))
    return 0 if report.verdict else 1


def _run_betti(args) -> int:
    doc = _load(args.path, args.subdivide)
    data = chain_complex(doc.complex)
    sys.stdout.write(
        render_betti("H_j", betti_numbers(data), list(data.dims), args.format)
    )
    return 0


def _run_ih(args) -> int:
    doc = _load(args.path, args.subdivide)
    _require_pseudomanifold(doc.complex)
    m = doc.complex.dimension
    p = _perversity_for(args.perversity, m)
    F = _resolve_filtration(doc)
    icc = intersection_chain_complex(doc.complex, F, p)
    sys.stdout.write(
        render_betti(
            f"I^{p.display()} H_j",
            betti_numbers(icc.data),
            list(icc.dims),
            args.format,
        )
    )
    return 0


def _run_table(args) -> int:
    doc = _load(args.path, args.subdivide)
    _require_pseudomanifold(doc.complex)
    sigma, source = _resolve_singular(doc)
    table = de_rham_table(doc.complex, sigma, singular_source=source)
    sys.stdout.write(render_table(table, args.format))
    return 0


def _run_duality(args) -> int:
    doc = _load(args.path, args.subdivide)
    _require_pseudomanifold(doc.complex)
    m = doc.complex.dimension
    p = _perversity_for(args.perversity, m)
    F = _resolve_filtration(doc)
    report = check_gm_duality(doc.complex, F, p)
    sys.stdout.write(render_duality(report, args.format))
    return 0 if report.overall else 1


def _run_lefschetz(args) -> int:
    doc = _load(args.path, args.subdivide)
    _require_pseudomanifold(doc.complex)
    sigma, _source = _resolve_singular(doc)
    report = check_lefschetz(doc.complex, sigma)
    sys.stdout.write(render_duality(report, args.format))
    return 0 if report.overall else 1


def _run_stokes(args) -> int:
    doc = _load(args.path)
    _require_pseudomanifold(doc.complex)
    sigma, _source = _resolve_singular(doc)
    report = stokes_report(doc.complex, sigma)
    sys.stdout.write(render_stokes(report, args.format))
    return 0


def _run_horn(args) -> int:
    metric = HornMetric(exponents=args.exponents, epsilon=args.eps)
    if not validate(metric):
        raise InputFormatError(
            "horn metric needs positive exponents and a positive cutoff"
        )
    form = MonomialForm(
        radial_exponent=args.a,
        link_indices=frozenset(args.index),
        with_dt=args.dt,
    )
    try:
        vol: str | None = str(volume(metric))
        note = None
    except DomainError:
        vol = None
        s1 = sum(metric.exponents, Fraction(0)) + 1
        note = f"irrational: eps^({s1})/({s1})"
    payload = {
        "metric": {
            "exponents": [str(c) for c in metric.exponents],
            "epsilon": str(metric.epsilon),
        },
        "form": {
            "a": str(form.radial_exponent),
            "indices": sorted(form.link_indices),
            "dt": form.with_dt,
        },
        "volume": vol,
        "l1": l1_test(metric, form),
        "linf": linf_test(metric, form),
    }
    if note is not None:
        payload["volume_note"] = note
    sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    return 0


def _builder_doc(spec: list[str]) -> str:
    def _load_plain(path: str) -> SimplicialComplex:
        doc = load_document(path)
        if doc.singular is not None or doc.filtration is not None:
            raise InputFormatError(
                "builders only accept unstratified inputs; remove the "
                "singular/filtration keys first"
            )
        return doc.complex

    kind, rest = spec[0], spec[1:]
    if kind == "torus":
        if rest:
            raise InputFormatError("torus takes no arguments")
        return dumps_complex(builders.torus())
    if kind == "sphere":
        if len(rest) != 1:
            raise InputFormatError("sphere takes one argument: the dimension")
        try:
            m = int(rest[0])
        except ValueError as exc:
            raise InputFormatError(f"sphere dimension {rest[0]!r} is not an integer") from exc
        if m < 0:
            raise InputFormatError("sphere dimension must be non-negative")
        return dumps_complex(builders.sphere(m))
    if kind == "pinched-torus":
        if rest:
            raise InputFormatError("pinched-torus takes no arguments")
        K = builders.pinched_torus()
        return dumps_complex(K, singular=SimplicialComplex([[0]]))
    if kind == "suspension-of":
        if len(rest) != 1:
            raise InputFormatError("suspension-of takes one argument: a JSON file")
        base = _load_plain(rest[0])
        K = suspension(base)
        fresh = max(base.vertices) + 1
        return dumps_complex(K, singular=SimplicialComplex([[fresh], [fresh + 1]]))
    if kind == "cone-of":
        if len(rest) != 1:
            raise InputFormatError("cone-of takes one argument: a JSON file")
        base = _load_plain(rest[0])
        apex = max(base.vertices) + 1
        K = cone(base, apex)
        return dumps_complex(K, singular=SimplicialComplex([[apex]]))
    if kind == "product":
        if len(rest) != 2:
            raise InputFormatError("product takes two arguments: JSON files")
        K = product(_load_plain(rest[0]), _load_plain(rest[1]))
        return dumps_complex(K)
    raise InputFormatError(f"unknown builder {kind!r}")


def _run_build(args) -> int:
    text = _builder_doc(args.spec)
    # re-validate what we are about to hand out
    from .complex_io import loads_document

    doc = loads_document(text)
    _check_cap(doc.complex, _size_cap())
    if args.out is None:
        sys.stdout.write(text)
    else:
        try:
            with open(args.out, "w", encoding="utf-8") as f:
                f.write(text)
        except OSError as exc:
            raise InputFormatError(f"cannot write {args.out}: {exc}") from exc
    return 0


def _run_cone_check(args) -> int:
    doc = _load(args.path)
    _require_pseudomanifold(doc.complex)
    m = doc.complex.dimension + 1  # the cone's dimension
    p = _perversity_for(args.perversity, m)
    report = cone_check(doc.complex, p)
    sys.stdout.write(render_duality(report, args.format))
    return 0 if report.overall else 1


_RUNNERS = {
    "validate": _run_validate,
    "betti": _run_betti,
    "ih": _run_ih,
    "table": _run_table,
    "duality": _run_duality,
    "lefschetz": _run_lefschetz,
    "stokes": _run_stokes,
    "horn": _run_horn,
    "build": _run_build,
    "cone-check": _run_cone_check,
}


def main(argv=None) -> int:
    args = parse_args(argv)
    try:
        return _RUNNERS[args.verb](args)
    except ResourceCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (
        InputFormatError,
        MalformedInputError,
        DomainError,
        NotFoundError,
        HypothesesUnmetError,
        InvariantViolationError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except StrataError as exc:  # any remaining package error is an input problem
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
