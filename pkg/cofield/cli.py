"""Command line interface.

Every report reads the four corpus files (``--data DIR`` or the individual
``--scheme``/``--researchers``/``--publications``/``--authorships`` paths),
writes its table to standard output or ``--out``, and sends diagnostics to
standard error. Exit status is 0 on success, 1 when ``validate`` finds
violations, and 2 on usage or data errors.
"""

import argparse
import logging
import pathlib
import sys

from . import __version__
from .corpus import load_corpus, load_corpus_dir
from .exceptions import CofieldError
from .field_scheme import load_scheme
from .metrics import PRECEDENCE_POLICIES, InterdisciplinarityAnalysis
from .reports import corpus_summary_table, correlation_table
from .reports import discipline_pair_table, export_graph, field_pair_ranking
from .reports import field_pair_table, max_interdisciplinarity_report
from .reports import profile_table, render, threshold_pair_list
from .reports.tables import MODES
from .synth import FIRST_YEAR, SynthParams, generate

logger = logging.getLogger("cofield")

EXIT_OK = 0
EXIT_VIOLATIONS = 1
EXIT_ERROR = 2

# Default incidence threshold of the annex listings, without and with
# --cross-only
ANNEX_MIN_D = {False: 0.10, True: 0.05}


def _ratio(value):
    """Argparse type for proportions in [0, 1]."""
    try:
        ratio = float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{value} is not a number") from None
    if not 0 <= ratio <= 1:
        raise argparse.ArgumentTypeError(f"{value} must be between 0 and 1")
    return ratio


def _count(value):
    """Argparse type for non-negative integers."""
    try:
        n = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"{value} is not an integer") from None
    if n < 0:
        raise argparse.ArgumentTypeError(f"{value} must be >= 0")
    return n


def _span(value):
    """Argparse type for inclusive integer ranges written ``A:B``."""
    low, sep, high = value.partition(":")
    try:
        span = (int(low), int(high) if sep else int(low))
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"{value} is not a range A:B") from None
    if span[0] > span[1]:
        raise argparse.ArgumentTypeError(f"{value} is an empty range")
    return span


def _input_parser():
    parser = argparse.ArgumentParser(add_help=False)
    group = parser.add_argument_group("input")
    group.add_argument("--data", type=pathlib.Path, metavar="DIR",
                       help="directory holding scheme.csv, researchers.csv, "
                            "publications.csv and authorships.csv")
    group.add_argument("--scheme", type=pathlib.Path, metavar="PATH",
                       help="field registry file")
    group.add_argument("--researchers", type=pathlib.Path, metavar="PATH")
    group.add_argument("--publications", type=pathlib.Path, metavar="PATH")
    group.add_argument("--authorships", type=pathlib.Path, metavar="PATH")
    group.add_argument("--years", type=_span, metavar="A:B",
                       help="keep only publications from years A to B")
    group.add_argument("--n-jobs", type=int, default=1, metavar="N",
                       help="publication chunks to count concurrently "
                            "(default: 1)")
    return parser


def _output_parser():
    parser = argparse.ArgumentParser(add_help=False)
    group = parser.add_argument_group("output")
    group.add_argument("--format", choices=("csv", "markdown"), default="csv",
                       help="table format (default: csv)")
    group.add_argument("--out", type=pathlib.Path, metavar="PATH",
                       help="write to PATH instead of standard output")
    group.add_argument("--raw", action="store_true",
                       help="append full-precision columns for ratios")
    return parser


def _analysis_parser():
    parser = argparse.ArgumentParser(add_help=False)
    group = parser.add_argument_group("analysis")
    group.add_argument("--partner-threshold", type=_ratio, default=0.10,
                       metavar="R",
                       help="incidence a partner must exceed to count as "
                            "over threshold (default: 0.10)")
    group.add_argument("--omit-below", type=_ratio, default=0.01,
                       metavar="R",
                       help="ignore partners with lower incidence "
                            "(default: 0.01)")
    group.add_argument("--precedence", choices=PRECEDENCE_POLICIES,
                       default="cross_discipline",
                       help="bucket of publications with both kinds of "
                            "partner (default: cross_discipline)")
    group.add_argument("--min-headcount", type=_count, metavar="N",
                       help="keep only fields with more than N researchers")
    return parser


def build_parser():
    """The argument parser of the ``cofield`` command."""
    parser = argparse.ArgumentParser(
        prog="cofield",
        description="Interdisciplinarity of research fields measured from "
                    "co-authorship.")
    parser.add_argument("--version", action="version",
                        version=f"%(prog)s {__version__}")
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true",
                           help="log debugging diagnostics")
    verbosity.add_argument("-q", "--quiet", action="store_true",
                           help="log errors only")

    inputs = _input_parser()
    outputs = _output_parser()
    analysis = _analysis_parser()
    commands = parser.add_subparsers(dest="command", metavar="COMMAND")
    commands.required = True

    commands.add_parser(
        "validate", parents=[inputs, outputs],
        help="check the scheme and corpus and print the link report")

    commands.add_parser(
        "summary", parents=[inputs, outputs],
        help="staff and publications by discipline")

    sub = commands.add_parser(
        "pairs", parents=[inputs, outputs],
        help="incidence of every discipline (or field) pair")
    sub.add_argument("--level", choices=("discipline", "field"),
                     default="discipline",
                     help="pair disciplines or fields (default: discipline)")

    sub = commands.add_parser(
        "profile", parents=[inputs, outputs, analysis],
        help="field profiles of a discipline, or the top partners of a field")
    sub.add_argument("code", help="discipline or field code")
    sub.add_argument("--top-n", type=_count, default=20, metavar="N",
                     help="partners listed for a field (default: 20)")

    sub = commands.add_parser(
        "maxima", parents=[inputs, outputs, analysis],
        help="the most interdisciplinary field of each discipline")
    sub.add_argument("--mode", choices=MODES, default="overall",
                     help="share to maximize (default: overall)")

    sub = commands.add_parser(
        "annex", parents=[inputs, outputs],
        help="directed field pairs above an incidence threshold")
    sub.add_argument("--min-d", type=_ratio, metavar="R",
                     help="incidence to exceed (default: 0.10, or 0.05 with "
                          "--cross-only)")
    sub.add_argument("--cross-only", action="store_true",
                     help="only pairs of fields of different disciplines")
    sub.add_argument("--min-first-pubs", type=_count, default=100,
                     metavar="N",
                     help="publications the first field needs "
                          "(default: 100)")

    sub = commands.add_parser(
        "correlate", parents=[inputs, outputs],
        help="Spearman correlation of headcount and degree")
    sub.add_argument("disciplines", nargs="*", metavar="DISCIPLINE",
                     help="discipline codes (default: all)")
    sub.add_argument("--min-headcount", type=_count, default=100,
                     metavar="N",
                     help="keep only fields with more than N researchers "
                          "(default: 100)")

    sub = commands.add_parser(
        "graph", parents=[inputs],
        help="weighted co-occurrence edge list")
    sub.add_argument("--level", choices=("field", "discipline"),
                     default="field",
                     help="graph nodes (default: field)")
    sub.add_argument("--min-joint", type=int, default=1, metavar="N",
                     help="joint publications an edge needs (default: 1)")
    sub.add_argument("--out", type=pathlib.Path, metavar="PATH",
                     help="write to PATH instead of standard output")

    sub = commands.add_parser(
        "synth", help="generate a synthetic corpus")
    defaults = SynthParams()
    sub.add_argument("out_dir", type=pathlib.Path, metavar="DIR",
                     help="directory to write the corpus files into")
    sub.add_argument("--seed", type=_count, default=defaults.seed)
    sub.add_argument("--disciplines", type=int, default=defaults.disciplines)
    sub.add_argument("--fields-per-discipline", type=int,
                     default=defaults.fields_per_discipline)
    sub.add_argument("--researchers-per-field", type=_span, metavar="A:B",
                     default=defaults.researchers_per_field)
    sub.add_argument("--publications", type=int,
                     default=defaults.publications)
    sub.add_argument("--authors-per-pub", type=_span, metavar="A:B",
                     default=defaults.authors_per_pub)
    sub.add_argument("--p-cross-field", type=_ratio,
                     default=defaults.p_cross_field)
    sub.add_argument("--p-cross-discipline", type=_ratio,
                     default=defaults.p_cross_discipline)
    sub.add_argument("--inverse-size-bias", type=float,
                     default=defaults.inverse_size_bias)
    sub.add_argument("--universities", type=int,
                     default=defaults.universities)
    sub.add_argument("--years", type=int, default=defaults.years,
                     metavar="N",
                     help=f"publication years, counted from {FIRST_YEAR} "
                          f"(default: {defaults.years})")
    return parser


def _load(args, parser):
    """Load the corpus named by the input arguments."""
    paths = (args.scheme, args.researchers, args.publications,
             args.authorships)
    if args.data is not None:
        if any(p is not None for p in paths):
            parser.error("--data cannot be combined with individual input "
                         "paths")
        return load_corpus_dir(args.data, years=args.years)
    if any(p is None for p in paths):
        parser.error("either --data or all of --scheme, --researchers, "
                     "--publications and --authorships are required")
    return load_corpus(load_scheme(args.scheme), *paths[1:], years=args.years)


def _analysis(args, corpus):
    return InterdisciplinarityAnalysis(
        partner_threshold=args.partner_threshold, omit_below=args.omit_below,
        precedence=args.precedence, n_jobs=args.n_jobs).fit(corpus)


def _emit(text, out):
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as stream:
            stream.write(text)
        logger.info("Wrote %s", out)


def _table(args, corpus):
    """Build the report table of a report command."""
    command = args.command
    if command == "summary":
        return corpus_summary_table(corpus)
    if command == "pairs":
        if args.level == "discipline":
            return discipline_pair_table(corpus, n_jobs=args.n_jobs)
        return field_pair_table(corpus, n_jobs=args.n_jobs)
    if command == "profile":
        if args.code in corpus.scheme.discipline_codes:
            return profile_table(corpus, args.code, args.min_headcount,
                                 analysis=_analysis(args, corpus))
        corpus.scheme.field(args.code)
        return field_pair_ranking(corpus, args.code, args.top_n,
                                  n_jobs=args.n_jobs)
    if command == "maxima":
        return max_interdisciplinarity_report(
            corpus, args.mode, min_headcount=args.min_headcount,
            analysis=_analysis(args, corpus))
    if command == "annex":
        min_d = args.min_d
        if min_d is None:
            min_d = ANNEX_MIN_D[args.cross_only]
        return threshold_pair_list(corpus, min_d, args.cross_only,
                                   args.min_first_pubs, n_jobs=args.n_jobs)
    if command == "correlate":
        return correlation_table(corpus, args.disciplines or None,
                                 args.min_headcount)
    raise ValueError(f"Unknown command: {command}.")  # pragma: no cover


def _validate(args, corpus):
    violations = corpus.scheme.validate() + corpus.validate()
    lines = [f"link report: {corpus.link_report}"]
    lines += [str(v) for v in violations]
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_VIOLATIONS if violations else EXIT_OK


def _synth(args):
    params = SynthParams(
        seed=args.seed, disciplines=args.disciplines,
        fields_per_discipline=args.fields_per_discipline,
        researchers_per_field=args.researchers_per_field,
        publications=args.publications, authors_per_pub=args.authors_per_pub,
        p_cross_field=args.p_cross_field,
        p_cross_discipline=args.p_cross_discipline,
        inverse_size_bias=args.inverse_size_bias,
        universities=args.universities, years=args.years)
    corpus, _ = generate(params)
    args.out_dir.mkdir(parents=True, exist_ok=True)
    corpus.to_csv(args.out_dir)
    logger.info("Wrote %d publications to %s", len(corpus), args.out_dir)
    return EXIT_OK


def run(argv=None):
    """Run the ``cofield`` command.

    Parameters
    ----------
    argv : list of str, optional
        Command line arguments, without the program name. Defaults to
        ``sys.argv[1:]``.

    Returns
    -------
    int
        The exit status.
    """
    parser = build_parser()
    args = parser.parse_args(argv)

    level = logging.INFO
    if args.verbose:
        level = logging.DEBUG
    elif args.quiet:
        level = logging.ERROR
    logging.basicConfig(stream=sys.stderr, level=level,
                        format="%(levelname)s %(name)s: %(message)s",
                        force=True)
    logging.captureWarnings(True)

    try:
        if args.command == "synth":
            return _synth(args)
        corpus = _load(args, parser)
        if args.command == "validate":
            return _validate(args, corpus)
        if args.command == "graph":
            _emit(export_graph(corpus, args.level, args.min_joint,
                               n_jobs=args.n_jobs), args.out)
            return EXIT_OK
        table = _table(args, corpus)
        _emit(render(table, args.format, raw=args.raw), args.out)
        return EXIT_OK
    except (CofieldError, ValueError, TypeError, OSError) as exc:
        logger.error("%s", exc)
        return EXIT_ERROR
    finally:
        logging.captureWarnings(False)


def main():
    """Entry point of the ``cofield`` console script."""
    sys.exit(run())
