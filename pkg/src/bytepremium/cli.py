"""Command-line interface: ``bytepremium <subcommand> ...``.

Exit codes: 0 success, 1 usage error, 2 data or format error,
3 numerical failure (non-convergence, rank deficiency).
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys

from . import __version__
from .compression import compressed_premiums
from .corpus import load_bitext, load_multiparallel, read_text_lines, sample_lines
from .errors import BytePremiumError, NumericalError
from .estimation import (
    cross_dataset_correlation,
    multiparallel_premiums,
    pairwise_premium,
    read_observations,
    write_observations,
)
from .fitting import FitConfig, fit_premiums
from .groundtruth import attach, read_records, records_from_multiparallel, write_records
from .metrics import profile
from .regression import RegressionModel, fit_regression
from .registry import DEFAULT_REFERENCE, bundled_table, family_of
from .table import PremiumTable, dumps_table, read_table, rebase
from .tags import as_tag
from .tool import NovelLanguage, convert_size, rescale_proportions, resolve_pair
from .validation import loo_validate

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_NUMERIC = 0, 1, 2, 3

log = logging.getLogger("bytepremium")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _fmt(x: float, digits: int | None) -> str:
    return repr(float(x)) if digits is None else f"{x:.{digits}f}"


def _table(args) -> PremiumTable:
    table = read_table(args.table) if args.table else bundled_table()
    ref = as_tag(args.reference)
    if ref != table.reference:
        table = rebase(table, ref)
    return table


def _emit(text: str, path) -> None:
    if path:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_lookup(args):
    table = _table(args)
    res = resolve_pair(args.lang_a, args.lang_b, table)
    print(_fmt(res.premium, args.digits))


def cmd_convert(args):
    table = _table(args)
    print(convert_size(args.bytes, getattr(args, "from"), args.to, table))


def cmd_compute_pairwise(args):
    bitext = load_bitext(args.file_a, args.file_b, args.lang_a, args.lang_b, args.max_segments, args.normalize)
    obs = pairwise_premium(bitext, args.measure)
    if args.output:
        existing = read_observations(args.output) if args.append else []
        write_observations(existing + [obs], args.output)
    print(f"{obs.lang_a}\t{obs.lang_b}\t{_fmt(obs.premium, args.digits)}\t{obs.n_segments}")


def cmd_compute_multiparallel(args):
    corpus = load_multiparallel(args.path, args.normalize)
    if args.sample:
        corpus = sample_lines(corpus, args.sample)
    premiums = multiparallel_premiums(corpus, args.reference, args.measure)
    table = PremiumTable(as_tag(args.reference), premiums, "multiparallel")
    _emit(dumps_table(table), args.output)
    if args.records:
        recs = records_from_multiparallel(corpus, args.reference, args.source)
        write_records(attach(recs, lookup=family_of), args.records)


def cmd_fit(args):
    observations = read_observations(args.observations)
    config = FitConfig(mode=args.mode, max_iters=args.max_iters, grad_tol=args.grad_tol,
                       direction=args.direction, weighting=args.weighting)
    result = fit_premiums(observations, args.reference, config)
    _emit(dumps_table(result.table), args.output)
    print(f"objective={result.objective!r} iterations={result.iterations} grad_norm={result.grad_norm:.3g}",
          file=sys.stderr)


def cmd_fit_regression(args):
    records = read_records(args.records)
    model = fit_regression(records, args.variant, ridge=args.ridge, clip=args.clip)
    _emit(model.dumps() + "\n", args.output)


def _load_models(paths):
    models = {}
    for p in paths or ():
        with open(p, encoding="utf-8") as fh:
            m = RegressionModel.loads(fh.read())
        models[m.variant] = m
    return models


def cmd_predict(args):
    table = _table(args)
    tag = as_tag(args.lang)
    novel = None
    if args.parallel_text:
        if not (args.partner and args.partner_text):
            return _usage("--parallel-text needs --partner and --partner-text")
        bitext = load_bitext(args.parallel_text, args.partner_text, tag, args.partner, normalize=args.normalize)
        novel = NovelLanguage(tag, parallel=bitext)
    elif args.text:
        features = None
        if args.features is not None:
            features = [f for f in args.features.split(",") if f]
        novel = NovelLanguage(
            tag,
            monolingual=read_text_lines(args.text, args.normalize),
            script_type=args.script_type,
            family=args.family,
            features=features,
        )
    ref_bpc = args.reference_bpc
    if ref_bpc is None and args.reference_text:
        ref_bpc = profile(table.reference, read_text_lines(args.reference_text, args.normalize), "alphabet").bytes_per_char
    res = resolve_pair(tag, args.vs, table, aux=[novel] if novel else None,
                       models=_load_models(args.models), reference_bytes_per_char=ref_bpc)
    for w in res.warnings:
        print(f"warning: {w}", file=sys.stderr)
    print(f"{_fmt(res.premium, args.digits)}\t{res.method}")


def cmd_validate(args):
    records = read_records(args.records)
    variants = [v.strip().upper() for v in args.variants.split(",") if v.strip()]
    report = loo_validate(records, variants, args.threshold, ridge=args.ridge, clip=args.clip)
    if args.json:
        _emit(report.to_json() + "\n", args.json)
    print(report.format_table(3 if args.digits is None else args.digits))
    for v, s in report.per_variant.items():
        if s.skipped:
            print(f"variant {v}: skipped {len(s.skipped)} languages without a family: "
                  + ", ".join(str(t) for t in s.skipped), file=sys.stderr)


def cmd_compress_analyze(args):
    corpus = load_multiparallel(args.path, args.normalize)
    raw = multiparallel_premiums(corpus, args.reference)
    comp = compressed_premiums(corpus, args.reference)
    lines = ["language,byte_premium,compressed_premium"]
    for tag in sorted(raw):
        lines.append(f"{tag},{_fmt(raw[tag], args.digits)},{_fmt(comp[tag], args.digits)}")
    _emit("\n".join(lines) + "\n", args.output)
    if len(raw) >= 3:
        try:
            r = cross_dataset_correlation(raw, comp)
            print(f"pearson_r={_fmt(r, args.digits)}", file=sys.stderr)
        except BytePremiumError as exc:
            print(f"pearson_r unavailable: {exc}", file=sys.stderr)


def cmd_rescale(args):
    table = _table(args)
    with open(args.proportions, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(line for line in fh if not line.startswith("#"))
        if not {"language", "proportion"} <= set(reader.fieldnames or ()):
            raise ValueError("proportions CSV needs columns language,proportion")
        props = {row["language"]: float(row["proportion"]) for row in reader}
    out = rescale_proportions(props, table)
    lines = ["language,proportion"] + [f"{t},{_fmt(v, args.digits)}" for t, v in sorted(out.items())]
    _emit("\n".join(lines) + "\n", args.output)


def _usage(msg):
    print(f"bytepremium: error: {msg}", file=sys.stderr)
    return EXIT_USAGE


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="bytepremium", description="Byte premiums: cross-language UTF-8 size ratios.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    common = _Parser(add_help=False)
    common.add_argument("--digits", type=int, default=None, help="round displayed numbers (default: full precision)")
    common.add_argument("--reference", default=str(DEFAULT_REFERENCE), help="reference language (default eng_latn)")
    common.add_argument("--normalize", choices=["nfc"], default=None,
                        help="Unicode-normalize text on load (off by default: bytes are measured as stored)")

    tab = _Parser(add_help=False)
    tab.add_argument("--table", help="premium CSV to use instead of the bundled table")

    s = sub.add_parser("lookup", parents=[common, tab], help="pairwise premium of two known languages")
    s.add_argument("lang_a")
    s.add_argument("lang_b")
    s.set_defaults(func=cmd_lookup)

    s = sub.add_parser("convert", parents=[common, tab], help="convert a byte count between languages")
    s.add_argument("--bytes", type=int, required=True)
    s.add_argument("--from", required=True)
    s.add_argument("--to", required=True)
    s.set_defaults(func=cmd_convert)

    s = sub.add_parser("compute-pairwise", parents=[common], help="mean-of-ratios premium of one bitext")
    s.add_argument("file_a")
    s.add_argument("file_b")
    s.add_argument("--lang-a", required=True)
    s.add_argument("--lang-b", required=True)
    s.add_argument("--max-segments", type=int, default=100_000)
    s.add_argument("--measure", choices=["bytes", "chars"], default="bytes")
    s.add_argument("--output", help="observations CSV to write")
    s.add_argument("--append", action="store_true", help="add to an existing observations CSV")
    s.set_defaults(func=cmd_compute_pairwise)

    s = sub.add_parser("compute-multiparallel", parents=[common], help="premiums from a multi-parallel TSV")
    s.add_argument("path")
    s.add_argument("--sample", type=int, help="use only the first N rows")
    s.add_argument("--measure", choices=["bytes", "chars"], default="bytes")
    s.add_argument("--output")
    s.add_argument("--records", help="also write regression ground-truth records CSV")
    s.add_argument("--source", default="FLORES", help="source dataset label for --records")
    s.set_defaults(func=cmd_compute_multiparallel)

    s = sub.add_parser("fit", parents=[common], help="fit one premium per language from pairwise observations")
    s.add_argument("observations")
    s.add_argument("--mode", choices=["raw-mse", "log-ls"], default="raw-mse")
    s.add_argument("--direction", choices=["gauss-newton", "gradient"], default="gauss-newton")
    s.add_argument("--weighting", choices=["none", "segments"], default="none")
    s.add_argument("--max-iters", type=int, default=10_000)
    s.add_argument("--grad-tol", type=float, default=1e-10)
    s.add_argument("--output")
    s.set_defaults(func=cmd_fit)

    s = sub.add_parser("fit-regression", parents=[common], help="fit a length-ratio regression model")
    s.add_argument("records")
    s.add_argument("--variant", choices=["I", "II", "III"], required=True)
    s.add_argument("--ridge", type=float, default=1e-8)
    s.add_argument("--clip", type=float, default=4.0)
    s.add_argument("--output")
    s.set_defaults(func=cmd_fit_regression)

    s = sub.add_parser("predict", parents=[common, tab], help="premium of a language, predicting it if needed")
    s.add_argument("lang")
    s.add_argument("--vs", default=str(DEFAULT_REFERENCE), help="language to compare against")
    s.add_argument("--parallel-text", help="text in LANG, line-aligned with --partner-text")
    s.add_argument("--partner", help="known language of --partner-text")
    s.add_argument("--partner-text")
    s.add_argument("--text", help="monolingual text in LANG")
    s.add_argument("--script-type", choices=["alphabet", "abjad", "abugida", "logography"])
    s.add_argument("--family")
    s.add_argument("--features", help="comma list of optional features to use (script,family)")
    s.add_argument("--models", nargs="*", help="regression model JSON files")
    s.add_argument("--reference-bpc", type=float)
    s.add_argument("--reference-text", help="reference-language text to measure bytes per character")
    s.set_defaults(func=cmd_predict)

    s = sub.add_parser("validate", parents=[common], help="leave-one-out RMSE of predicted premiums")
    s.add_argument("records")
    s.add_argument("--variants", default="I,II,III")
    s.add_argument("--threshold", type=int, default=5)
    s.add_argument("--ridge", type=float, default=1e-8)
    s.add_argument("--clip", type=float, default=4.0)
    s.add_argument("--json", help="write the full report as JSON")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("compress-analyze", parents=[common], help="premiums before and after gzip")
    s.add_argument("path")
    s.add_argument("--output")
    s.set_defaults(func=cmd_compress_analyze)

    s = sub.add_parser("rescale", parents=[common, tab], help="rescale byte proportions by premiums")
    s.add_argument("proportions", help="CSV with columns language,proportion")
    s.add_argument("--output")
    s.set_defaults(func=cmd_rescale)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        rc = args.func(args)
    except NumericalError as exc:
        print(f"bytepremium: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (BytePremiumError, ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"bytepremium: {exc}", file=sys.stderr)
        return EXIT_DATA
    return rc or EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
