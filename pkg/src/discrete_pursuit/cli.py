"""Command-line surface: margin tables, pursuit, rankings and theory checks.

Exit codes: 0 on success, 1 on validation errors, 2 when a reproduction
check fails beyond the documented discrepancies (pass --strict to treat
documented discrepancies as failures too).  Identical argv and seed give
byte-identical CSV and JSON output, independent of --threads.
"""

from __future__ import annotations

import argparse
import csv as csv_mod
import math
import sys
from pathlib import Path

import numpy as np

from . import published as pub
from .metrics import ground_from_csv
from .plato import Corpus, canonical_book, ingest_csv, load_table1
from .pursuit import affine_scan, least_uniform, projection_of, rank_profiles
from .radon import MassFunction, TransformValues, invert, transform
from .reports import Cell, Report, save_bar_figure, save_lines_figure
from .reproduce import (
    adjusted_cells,
    margin_cells,
    pair_ground_metric,
    plato_report,
    ranking_cells,
    republic_moment_cells,
    reproduce_margin_tables,
    reproduce_rankings,
    scan_cells,
    uu_profiles,
)
from .spaces import base_affine, base_marginal_z2k, base_pairs_z2k, base_subsets
from .theory import (
    balls_in_boxes,
    beta_tail,
    design_moments,
    fixed_pair_partition_mc,
    peizer_pratt_beta,
    poisson_split,
    thm45_montecarlo,
    thm45_statistic,
    thm46_check,
    thm52_montecarlo,
)

__all__ = ["main"]

VERIFY_TARGETS = ("thm4.1", "thm4.5", "thm4.6", "thm5.1", "thm5.2", "thm5.4", "table15")


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse default exits 2; the CLI contract is 1
        self.exit(1, f"{self.prog}: error: {message}\n")


def _add_corpus_args(p):
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--builtin", action="store_true", help="use the embedded corpus")
    src.add_argument("--input", metavar="CSV", help="long-format corpus CSV")
    p.add_argument(
        "--counts", action="store_true", help="read CSV values as sentence counts"
    )


def _add_output_args(p, formats=("csv", "json", "md")):
    p.add_argument("--format", choices=formats, default="md")
    p.add_argument("--output", metavar="PATH", help="write here instead of stdout")
    p.add_argument(
        "--strict",
        action="store_true",
        help="exit 2 even when only documented discrepancies fail",
    )


def _corpus(args) -> Corpus:
    if args.builtin:
        return load_table1()
    return ingest_csv(args.input, values="count" if args.counts else "percent")


def _base(args, corpus: Corpus):
    kind = args.base
    space = corpus.space()
    if kind == "marginal":
        return base_marginal_z2k(5)
    if kind == "pairs":
        return base_pairs_z2k(5)
    if kind == "affine-hyperplanes":
        return base_affine(5, 1)
    if kind == "affine-planes":
        return base_affine(5, args.codim)
    if kind == "subsets":
        return base_subsets(space.n, args.block_size, space=space)
    raise ValueError(f"unknown base {kind!r}")


def _book_mass(corpus: Corpus, book: str, base) -> MassFunction:
    f = corpus.mass_function(book)
    if base.space.labels != f.space.labels:
        # bases over Z_2^5 carry bitstring labels; align by element index
        f = MassFunction(space=base.space, values=f.values)
    return f


def _emit(report: Report, args) -> int:
    text = report.render(args.format)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    bad = report.failures() if args.strict else report.undocumented_failures()
    return 2 if bad else 0


def _emit_figure(draw, args) -> int:
    path = args.output or f"{args.cmd}.svg"
    draw(path)
    sys.stdout.write(f"wrote {path}\n")
    return 0


# ---------------------------------------------------------------- subcommands


def _cmd_margins(args) -> int:
    corpus = _corpus(args)
    report = Report(
        subcommand="margins",
        config={"source": args.input or "builtin", "format": args.format},
        cells=margin_cells(corpus),
    )
    if args.format == "svg-histogram":
        from .pursuit import first_order

        series = {b: first_order(corpus.mass_function(b)) for b in corpus.book_names}
        return _emit_figure(
            lambda p: save_lines_figure(
                [f"pos{i}" for i in range(1, 6)], series, p,
                title="first-order margins (proportion short)",
            ),
            args,
        )
    return _emit(report, args)


def _cmd_adjust(args) -> int:
    corpus = _corpus(args)
    report = Report(
        subcommand="adjust",
        config={"source": args.input or "builtin", "format": args.format},
        cells=adjusted_cells(corpus),
    )
    if args.format == "svg-histogram":
        series = {b: list(uu_profiles(corpus)[b]) for b in corpus.book_names}
        labels = [f"({i},{j})" for i, j in pub.PAIR_ROWS]
        return _emit_figure(
            lambda p: save_lines_figure(
                labels, series, p, title="adjusted second-order margins (UU)"
            ),
            args,
        )
    return _emit(report, args)


def _cmd_transform(args) -> int:
    corpus = _corpus(args)
    base = _base(args, corpus)
    f = _book_mass(corpus, args.book, base)
    fbar = transform(f, base)
    cells = [Cell(id=b.id, computed=float(v)) for b, v in zip(base.blocks, fbar.values)]
    report = Report(
        subcommand="transform",
        config={"book": canonical_book(args.book), "base": args.base},
        cells=cells,
    )
    if args.format == "svg-histogram":
        ref = base.block_size / base.space.n * f.total
        return _emit_figure(
            lambda p: save_bar_figure(
                [b.id for b in base.blocks][:64],
                fbar.values[:64],
                p,
                title=f"transform of {canonical_book(args.book)} over {args.base}",
                reference=ref,
            ),
            args,
        )
    return _emit(report, args)


def _cmd_invert(args) -> int:
    corpus = _corpus(args)
    base = _base(args, corpus)
    if args.values:
        values = {}
        with open(args.values, newline="") as fh:
            for row in csv_mod.DictReader(fh):
                values[row["id"]] = float(row.get("computed") or row.get("value"))
        vec = np.array([values[b.id] for b in base.blocks])
        fbar = TransformValues(base=base, values=vec)
        f = invert(fbar)
        cells = [
            Cell(id=str(lab), computed=float(v))
            for lab, v in zip(base.space.labels, f.values)
        ]
        report = Report(subcommand="invert", config={"base": args.base}, cells=cells)
        return _emit(report, args)
    # round-trip mode: transform the book, invert, report the recovery error
    f = _book_mass(corpus, args.book, base)
    recovered = invert(transform(f, base))
    err = float(np.abs(recovered.values - f.values).max())
    report = Report(
        subcommand="invert",
        config={"book": canonical_book(args.book), "base": args.base, "mode": "roundtrip"},
        cells=[Cell(id="invert/max-abs-error", computed=err, paper=0.0, tol=1e-9)],
    )
    return _emit(report, args)


def _cmd_pursue(args) -> int:
    corpus = _corpus(args)
    base = _base(args, corpus)
    ground = ground_from_csv(args.ground) if args.ground else None
    f = _book_mass(corpus, args.book, base)
    pid, score, proj = least_uniform(f, base, index=args.index, ground=ground)
    cells = [
        Cell(id="pursue/partition", computed=pid),
        Cell(id="pursue/score", computed=float(score)),
    ]
    cells += [
        Cell(id=f"pursue/projection/{bid}", computed=float(v))
        for bid, v in zip(proj.block_ids, proj.values)
    ]
    report = Report(
        subcommand="pursue",
        config={
            "book": canonical_book(args.book),
            "base": args.base,
            "index": args.index,
        },
        cells=cells,
    )
    if args.format == "svg-histogram":
        return _emit_figure(
            lambda p: save_bar_figure(
                list(proj.block_ids), proj.values, p,
                title=f"least-uniform projection {pid} (score {score:.4f})",
                reference=proj.reference,
            ),
            args,
        )
    return _emit(report, args)


def _cmd_scan_affine(args) -> int:
    corpus = _corpus(args)
    f = corpus.mass_function(args.book)
    single = not args.against or args.against.lower() == "none"
    g = None if single else corpus.mass_function(args.against)
    scan = affine_scan(f, g)
    cells = [
        Cell(id=f"scan/contrast/{e.z}", computed=e.statistic)
        for e in scan.top(args.top)
    ]
    builtin_pair = (
        args.builtin
        and not single
        and canonical_book(args.book) == "Rep"
        and canonical_book(args.against) == "Laws"
    )
    if builtin_pair:
        cells += scan_cells(corpus)
    report = Report(
        subcommand="scan-affine",
        config={
            "book": canonical_book(args.book),
            "against": None if single else canonical_book(args.against),
        },
        cells=cells,
    )
    if args.format == "svg-histogram":
        top = scan.top(args.top)
        return _emit_figure(
            lambda p: save_bar_figure(
                [e.z for e in top], [abs(e.statistic) for e in top], p,
                title="hyperplane contrasts |D_z|",
            ),
            args,
        )
    return _emit(report, args)


def _cmd_rank(args) -> int:
    corpus = _corpus(args)
    profiles = uu_profiles(corpus)
    ground = pair_ground_metric() if args.metric == "wasserstein" else None
    ranked = rank_profiles(
        profiles,
        reference=canonical_book(args.reference),
        metric=args.metric,
        penalty=args.penalty,
        ground=ground,
    )
    cells = []
    for r in ranked:
        cells.append(Cell(id=f"rank/{r.name}", computed=r.rank))
        if r.rank > 0:
            cells.append(Cell(id=f"rank/{r.name}/total-distance", computed=r.distance))
            cells.append(Cell(id=f"rank/{r.name}/mass-penalty", computed=r.mass_penalty))
    key = (args.metric, canonical_book(args.reference))
    if args.builtin and key in pub.RANKING_TABLE:
        cells += ranking_cells(corpus, only=key)
    report = Report(
        subcommand="rank",
        config={
            "reference": canonical_book(args.reference),
            "metric": args.metric,
            "penalty": args.penalty,
        },
        cells=cells,
    )
    return _emit(report, args)


def _cmd_plato_report(args) -> int:
    corpus = _corpus(args)
    report = plato_report(corpus)
    if args.output and (Path(args.output).is_dir() or not Path(args.output).suffix):
        outdir = Path(args.output)
        (outdir / "figures").mkdir(parents=True, exist_ok=True)
        for fmt in ("csv", "json", "md"):
            (outdir / f"report.{fmt}").write_text(report.render(fmt))
        _plato_figures(corpus, outdir / "figures")
        sys.stdout.write(f"wrote {outdir}/report.(csv|json|md) and figures/\n")
        bad = report.failures() if args.strict else report.undocumented_failures()
        return 2 if bad else 0
    return _emit(report, args)


def _plato_figures(corpus: Corpus, outdir: Path):
    from .pursuit import first_order

    margins = {b: first_order(corpus.mass_function(b)) for b in corpus.book_names}
    save_lines_figure(
        [f"pos{i}" for i in range(1, 6)], margins, outdir / "margins.svg",
        title="first-order margins",
    )
    save_lines_figure(
        [f"({i},{j})" for i, j in pub.PAIR_ROWS],
        {b: list(v) for b, v in uu_profiles(corpus).items()},
        outdir / "adjusted_uu.svg",
        title="adjusted second-order margins (UU)",
    )
    scan = affine_scan(corpus.mass_function("Rep"), corpus.mass_function("Laws"))
    top = scan.top(12)
    save_bar_figure(
        [e.z for e in top], [abs(e.statistic) for e in top],
        outdir / "scan_contrast.svg", title="hyperplane contrasts |D_z(Rep) - D_z(Laws)|",
    )


# ------------------------------------------------------------------- verify


def _table15_cells() -> list[Cell]:
    cells = []
    for lam in range(1, 11):
        cid = f"table15/lam={lam}"
        cells.append(
            Cell(
                id=cid,
                computed=poisson_split(lam).value,
                paper=pub.TABLE15[lam - 1],
                tol=pub.TABLE15_TOL,
                note=pub.KNOWN_DISCREPANCIES.get(cid, ""),
            )
        )
    return cells


def _verify_thm41(args) -> list[Cell]:
    rng = np.random.default_rng(args.seed)
    designs = [
        ("hyperplanes-k3", base_affine(3, 1)),
        ("hyperplanes-k4", base_affine(4, 1)),
        ("hyperplanes-k5", base_affine(5, 1)),
        ("subsets-6-2", base_subsets(6, 2)),
        ("subsets-6-3", base_subsets(6, 3)),
        ("affine-codim2-k4", base_affine(4, 2)),
    ]
    cells = []
    for name, base in designs:
        f = MassFunction(space=base.space, values=rng.uniform(0.0, 1.0, base.space.n))
        m = design_moments(f, base)
        cells.append(
            Cell(
                id=f"thm4.1/{name}/mean-delta",
                computed=abs(m.exact_mean - m.empirical_mean),
                paper=0.0,
                tol=1e-12,
            )
        )
        cells.append(
            Cell(
                id=f"thm4.1/{name}/var-delta",
                computed=abs(m.exact_var - m.empirical_var),
                paper=0.0,
                tol=1e-12,
            )
        )
    # probability input: mean is exactly 2^-j for affine planes of codimension j
    for j, name in ((1, "hyperplanes-k5"), (2, "affine-codim2-k4")):
        base = dict(designs)[name]
        v = rng.uniform(0.0, 1.0, base.space.n)
        f = MassFunction(space=base.space, values=v / v.sum())
        m = design_moments(f, base)
        cells.append(
            Cell(
                id=f"thm4.1/example-mean/codim{j}",
                computed=m.exact_mean,
                paper=0.5**j,
                tol=1e-12,
            )
        )
    return cells


def _verify_thm45(args) -> list[Cell]:
    res = thm45_montecarlo(args.n, args.trials, args.seed, threads=args.threads)
    ks_id = "thm4.5/ks"
    uniform_stat = thm45_statistic(np.full(args.n, 1.0 / args.n))
    return [
        Cell(
            id=ks_id,
            computed=res.ks_distance,
            paper=0.03,
            ok=res.ks_distance <= 0.03,
            note=pub.KNOWN_DISCREPANCIES.get(ks_id, ""),
        ),
        Cell(id="thm4.5/mean", computed=res.mean, paper=0.0, tol=0.05),
        Cell(id="thm4.5/variance", computed=res.variance, paper=1.0, tol=0.15),
        Cell(
            id="thm4.5/uniform-input",
            computed=uniform_stat,
            paper=-math.sqrt(args.n) / 2.0,
            tol=1e-9,
        ),
    ]


def _verify_thm46(args) -> list[Cell]:
    base = base_affine(args.k, 1)
    res = thm46_check(base, args.eps, args.trials, args.seed, threads=args.threads)
    margin = min(
        f - b for f, b in zip(res.batch_frequencies, res.batch_bounds_proof)
    )
    pair_mean, pair_se = fixed_pair_partition_mc(2000, 400, args.seed)
    return [
        Cell(id="thm4.6/empirical-frequency", computed=res.empirical_frequency),
        Cell(id="thm4.6/bound-proof-form", computed=res.bound_proof_mean),
        Cell(id="thm4.6/bound-printed-form", computed=res.bound_printed_mean),
        Cell(
            id="thm4.6/min-batch-margin",
            computed=margin,
            paper=0.0,
            ok=margin >= 0.0,
            note="empirical frequency must not fall below the bound in any batch",
        ),
        Cell(
            id="thm4.6/pair-partition/mean",
            computed=pair_mean,
            paper=4.0 * math.exp(-2.0),
            tol=0.02,
            note="printed remark says 8e^-2 = 1.083; the order-statistics limit "
            "is 4e^-2 = 0.541 and the data concurs",
        ),
        Cell(id="thm4.6/pair-partition/se", computed=pair_se),
    ]


def _verify_thm51(args) -> list[Cell]:
    remark = pub.THM51_REMARK
    tail = beta_tail(remark["c"], remark["n"], remark["window"])
    product = remark["blocks_plus_one"] * tail
    ratio_quoted = product / remark["product"]
    cells = [
        Cell(id="thm5.1/beta-tail", computed=tail),
        Cell(
            id="thm5.1/tail-product",
            computed=product,
            paper=remark["product"],
            ok=1.0 / 3.0 <= ratio_quoted <= 3.0,
            note="checked within a factor of 3",
        ),
    ]
    for c in (128, 512):
        for eps in (0.05, 0.1, 0.15):
            exact = beta_tail(c, 2 * c, (0.5 - eps, 0.5 + eps))
            approx = peizer_pratt_beta(c, eps)
            ratio = approx / exact
            cells.append(
                Cell(
                    id=f"thm5.1/peizer-pratt/c={c}/eps={eps}",
                    computed=ratio,
                    paper=1.0,
                    ok=0.5 <= ratio <= 2.0,
                    note="approximation over exact tail, factor-2 window",
                )
            )
    return cells


def _verify_thm52(args) -> list[Cell]:
    res = thm52_montecarlo(args.points, args.trials, args.seed, threads=args.threads)
    var_id = "thm5.2/scaled-variance-published"
    return [
        Cell(
            id="thm5.2/mean-s-minus",
            computed=res.mean_s_minus,
            paper=res.target_mean,
            tol=0.005,
        ),
        Cell(
            id=var_id,
            computed=res.scaled_variance,
            paper=res.variance_published,
            ok=abs(res.scaled_variance - res.variance_published)
            <= 0.15 * res.variance_published,
            note=pub.KNOWN_DISCREPANCIES.get(var_id, ""),
        ),
        Cell(
            id="thm5.2/scaled-variance-derived",
            computed=res.scaled_variance,
            paper=res.variance_derived,
            ok=abs(res.scaled_variance - res.variance_derived)
            <= 0.15 * res.variance_derived,
            note="delta-method constant for the normalized statistic",
        ),
        Cell(
            id="thm5.2/max-discrepancy",
            computed=res.mean_discrepancy,
            paper=res.target_discrepancy,
            tol=0.01,
            note="printed .301 equals log10(2); the data resolves the log base "
            "as natural (ln 2 = 0.6931)",
        ),
    ]


def _verify_thm54(args) -> list[Cell]:
    cells = _table15_cells()
    draws = [balls_in_boxes(200_000, 100_000, (args.seed, i)) for i in range(3)]
    cells.append(
        Cell(
            id="thm5.4/balls-in-boxes/lam=2",
            computed=float(np.mean(draws)),
            paper=poisson_split(2.0).value,
            tol=0.02,
        )
    )
    cells.append(
        Cell(
            id="thm5.4/theta/lam=50",
            computed=poisson_split(50.0).theta,
            paper=1.0 / 3.0,
            tol=0.02,
        )
    )
    return cells


def _cmd_verify(args) -> int:
    builders = {
        "thm4.1": _verify_thm41,
        "thm4.5": _verify_thm45,
        "thm4.6": _verify_thm46,
        "thm5.1": _verify_thm51,
        "thm5.2": _verify_thm52,
        "thm5.4": _verify_thm54,
        "table15": lambda a: _table15_cells(),
    }
    cells = builders[args.target](args)
    report = Report(
        subcommand=f"verify {args.target}",
        config={
            "target": args.target,
            "n": getattr(args, "n", None),
            "k": getattr(args, "k", None),
            "points": getattr(args, "points", None),
            "eps": getattr(args, "eps", None),
            "trials": getattr(args, "trials", None),
            "threads": args.threads,
        },
        cells=cells,
        seeds={"seed": args.seed},
    )
    return _emit(report, args)


# --------------------------------------------------------------------- main


def _build_parser() -> _Parser:
    parser = _Parser(prog="dpursuit", description=__doc__)
    sub = parser.add_subparsers(dest="cmd", required=True)

    def add(name, func, helptext, corpus=True, figures=False):
        p = sub.add_parser(name, help=helptext)
        p.set_defaults(func=func, cmd=name)
        if corpus:
            _add_corpus_args(p)
        fmts = ("csv", "json", "md") + (("svg-histogram",) if figures else ())
        _add_output_args(p, fmts)
        return p

    add("margins", _cmd_margins, "first-order margin tables", figures=True)
    add("adjust", _cmd_adjust, "adjusted second-order margin tables", figures=True)

    p = add("transform", _cmd_transform, "block sums over a base", figures=True)
    p.add_argument("--book", required=True)
    _add_base_args(p)

    p = add("invert", _cmd_invert, "invert block sums over a design base")
    p.add_argument("--book", help="round-trip this book's distribution")
    p.add_argument("--values", metavar="CSV", help="invert these id,value block sums")
    _add_base_args(p)

    p = add("pursue", _cmd_pursue, "least-uniform direction search", figures=True)
    p.add_argument("--book", required=True)
    p.add_argument(
        "--index",
        choices=("discrepancy", "tv", "hellinger", "wasserstein"),
        default="discrepancy",
    )
    p.add_argument("--ground", metavar="CSV", help="ground metric over block ids")
    _add_base_args(p)

    p = add("scan-affine", _cmd_scan_affine, "hyperplane contrast scan", figures=True)
    p.add_argument("--book", default="Rep")
    p.add_argument("--against", default="Laws")
    p.add_argument("--top", type=int, default=10)

    p = add("rank", _cmd_rank, "rank books by profile distance to a reference")
    p.add_argument("--reference", default="Rep")
    p.add_argument(
        "--metric", choices=("tv", "hellinger", "wasserstein"), default="tv"
    )
    p.add_argument("--penalty", choices=("abs", "sqrt"), default="abs")

    add("plato-report", _cmd_plato_report, "full reproduction bundle with figures")

    p = sub.add_parser("verify", help="check the distribution theory numerically")
    p.set_defaults(func=_cmd_verify, cmd="verify")
    p.add_argument("target", choices=VERIFY_TARGETS)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--n", type=int, default=500, help="simplex dimension (thm4.5)")
    p.add_argument("--k", type=int, default=6, help="hyperplane base dimension (thm4.6)")
    p.add_argument("--eps", type=float, default=0.5)
    p.add_argument("--points", type=int, default=10_000, help="vector length (thm5.2)")
    p.add_argument("--threads", type=int, default=1)
    _add_output_args(p)

    return parser


def _add_base_args(p):
    p.add_argument(
        "--base",
        choices=("marginal", "pairs", "affine-hyperplanes", "affine-planes", "subsets"),
        default="affine-hyperplanes",
    )
    p.add_argument("--codim", type=int, default=2, help="codimension for affine-planes")
    p.add_argument("--block-size", type=int, default=2, help="c for the subsets base")


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits on --help and flag errors
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (ValueError, KeyError, OSError) as exc:
        sys.stderr.write(f"dpursuit: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
