"""
Main entry point for the TAM classifier.
Handles CLI arguments, logging setup, and dispatches to the subcommands.

Exit status: 0 on success, 1 on usage errors, 2 on data errors.
"""
import argparse
import contextlib
import json
import logging
import sys
from pathlib import Path
from typing import Callable, Optional, TextIO

from config.logging import get_logger, setup_logging
from config.settings import config
from ingestion.corpus_store import Corpus, load_corpus
from ingestion.lexicon_source import load_lexicon
from pipeline.artifacts import load_snapshot, save_snapshot
from pipeline.evaluation import SWEEP_KS, evaluate_loo, evaluate_split, random_split, sweep
from pipeline.knn_classifier import classify_encoded
from pipeline.reporting import (
    explain_json,
    explain_trace,
    render_accuracy_table,
    render_report,
    render_validation,
)
from pipeline.similarity_index import build_index
from processing.annotation.encoder import encode_text, resolve_tokenizer
from processing.annotation.tokenizer import Lexicon
from processing.annotation.units import Method
from processing.errors import EmptySentence, MethodMismatch, TamError, Unlabelable
from processing.labelers.english_labeler import EnglishLabeler, LabelerRuleSet, label_english
from processing.validators.validate import validate_corpus

logger = get_logger("cli")

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2


class UsageError(Exception):
    pass


class CliParser(argparse.ArgumentParser):
    """ArgumentParser that reports usage errors instead of exiting with status 2."""

    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return value


def cap_int(text: str) -> int:
    value = positive_int(text)
    if value > config.MAX_CAP:
        raise argparse.ArgumentTypeError(f"cap is at most {config.MAX_CAP}, got {value}")
    return value


def method_arg(text: str) -> Method:
    try:
        return Method.parse(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


def build_parser() -> CliParser:
    """Parse CLI arguments for every subcommand."""
    parser = CliParser(
        prog="tam-ebmt",
        description="Example-based tense/aspect/modality classification of Japanese sentences",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="Log debug detail to stderr")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=CliParser)
    sub.required = True

    # Shared argument groups
    corpus_args = CliParser(add_help=False)
    corpus_args.add_argument("--corpus", type=Path, required=True, help="Labelled corpus file")
    corpus_args.add_argument(
        "--corpus-format",
        choices=["tsv", "jsonl"],
        help="Corpus format (default: from the file suffix)",
    )
    corpus_args.add_argument(
        "--label-missing",
        action="store_true",
        help="Label pairs with a missing or unknown label from their English side",
    )
    corpus_args.add_argument(
        "--skip-unlabelable",
        action="store_true",
        help="With --label-missing, drop pairs the English labeler cannot handle",
    )

    method_args = CliParser(add_help=False)
    method_args.add_argument("--lexicon", type=Path, help="Lexicon TSV (required for method 2)")
    method_args.add_argument(
        "--method",
        type=method_arg,
        default=None,
        help="1/string (characters) or 2/analysis (morphemes + categories); "
        f"default {config.DEFAULT_METHOD}",
    )

    vote_args = CliParser(add_help=False)
    vote_args.add_argument("--k", type=positive_int, default=config.DEFAULT_K)
    vote_args.add_argument("--cap", type=cap_int, default=config.DEFAULT_CAP)

    output_args = CliParser(add_help=False)
    output_args.add_argument("--format", choices=["text", "json"], default="text")

    # classify
    p = sub.add_parser(
        "classify",
        parents=[corpus_args, method_args, vote_args, output_args],
        help="Predict the TAM label of Japanese sentences (one per line)",
    )
    p.add_argument("--index", type=Path, help="Use a saved index snapshot instead of rebuilding")
    p.add_argument("--input", type=Path, help="Read sentences from FILE instead of stdin")
    p.add_argument("--explain", action="store_true", help="Append the vote trace as JSON")
    p.set_defaults(handler=cmd_classify)

    # evaluate
    p = sub.add_parser(
        "evaluate",
        parents=[corpus_args, method_args, vote_args, output_args],
        help="Leave-one-out or held-out accuracy",
    )
    protocol = p.add_mutually_exclusive_group()
    protocol.add_argument("--loo", action="store_true", help="Leave-one-out (default)")
    protocol.add_argument("--split", action="store_true", help="Random held-out test set")
    p.add_argument("--test-size", type=positive_int, default=config.DEFAULT_TEST_SIZE)
    p.add_argument("--seed", type=int, default=config.DEFAULT_SEED)
    p.add_argument(
        "--exclude-self",
        action=argparse.BooleanOptionalAction,
        default=True,
        help="Keep each leave-one-out sentence out of its own retrieval",
    )
    p.add_argument(
        "--sweep",
        action="store_true",
        help=f"Evaluate methods 1 and 2 for k in {list(SWEEP_KS)}",
    )
    p.set_defaults(handler=cmd_evaluate)

    # label
    p = sub.add_parser(
        "label", parents=[output_args], help="Label English sentences (one per line)"
    )
    p.add_argument("--rules", type=Path, help="Labeler data directory")
    p.add_argument("--input", type=Path, help="Read sentences from FILE instead of stdin")
    p.set_defaults(handler=cmd_label)

    # index
    p = sub.add_parser(
        "index",
        parents=[corpus_args, method_args, output_args],
        help="Build and save a suffix index snapshot",
    )
    p.add_argument("--output", type=Path, required=True, help="Snapshot path (JSON)")
    p.set_defaults(handler=cmd_index)

    # validate
    p = sub.add_parser(
        "validate", parents=[corpus_args, output_args], help="Report corpus issues"
    )
    p.set_defaults(handler=cmd_validate)

    return parser


# ----------------- helpers -----------------


class Streams:
    def __init__(self, stdin: TextIO, stdout: TextIO):
        self.stdin = stdin
        self.stdout = stdout

    def write(self, text: str) -> None:
        self.stdout.write(text if text.endswith("\n") else text + "\n")

    def write_json(self, payload) -> None:
        self.write(json.dumps(payload, ensure_ascii=False, indent=2))


def _read_lines(path: Optional[Path], io: Streams) -> list[str]:
    if path is not None:
        text = path.read_text(encoding="utf-8")
    else:
        text = io.stdin.read()
    return [line.strip() for line in text.splitlines() if line.strip()]


def _method(args: argparse.Namespace) -> Method:
    return args.method or Method.parse(config.DEFAULT_METHOD)


def _lexicon(args: argparse.Namespace, method: Method) -> Optional[Lexicon]:
    if args.lexicon is not None:
        return load_lexicon(args.lexicon)
    if method is Method.ANALYSIS:
        raise UsageError("--lexicon is required with --method 2")
    return None


def _corpus(args: argparse.Namespace) -> Corpus:
    labeler = EnglishLabeler() if args.label_missing else None
    return load_corpus(
        args.corpus,
        format=args.corpus_format,
        labeler=labeler,
        skip_unlabelable=args.skip_unlabelable,
    )


# ----------------- subcommands -----------------


def cmd_classify(args: argparse.Namespace, io: Streams) -> int:
    corpus = _corpus(args)

    if args.index is not None:
        lex = load_lexicon(args.lexicon) if args.lexicon else None
        index = load_snapshot(args.index, corpus=corpus, lex=lex)
        if args.method is not None and args.method is not index.method:
            raise MethodMismatch(index.method, args.method)
        method = index.method
        if method is Method.ANALYSIS and lex is None:
            raise UsageError("--lexicon is required to encode queries for a method-2 index")
    else:
        method = _method(args)
        lex = _lexicon(args, method)
        index = build_index(corpus, method, lex)

    tokenizer = resolve_tokenizer(method, lex)
    # encode everything up front so a bad line fails before any label is printed
    queries = []
    for sentence in _read_lines(args.input, io):
        try:
            queries.append((sentence, encode_text(sentence, method, tokenizer)))
        except EmptySentence as e:
            raise EmptySentence(f"Input {sentence!r} is empty after stripping punctuation") from e

    results = []
    for sentence, query in queries:
        trace = classify_encoded(index, query, args.k, cap=args.cap)
        result = {"sentence": sentence, "label": trace.winner.value}
        if args.explain:
            result["trace"] = explain_trace(trace, query, index)
        results.append(result)

        if args.format == "text":
            if args.explain:
                io.write(f"{result['label']}\t{explain_json(trace, query, index)}")
            else:
                io.write(result["label"])

    if args.format == "json":
        io.write_json(results)
    return EXIT_OK


def cmd_evaluate(args: argparse.Namespace, io: Streams) -> int:
    corpus = _corpus(args)

    if args.sweep:
        lex = load_lexicon(args.lexicon) if args.lexicon else None
        test = random_split(corpus, args.test_size, args.seed) if args.split else None
        reports = sweep(
            corpus,
            lex,
            cap=args.cap,
            test_ordinals=test,
            seed=args.seed if args.split else None,
            exclude_self=args.exclude_self,
        )
        if args.format == "json":
            io.write_json([r.model_dump(mode="json") for r in reports])
        else:
            io.write(render_accuracy_table(reports))
        return EXIT_OK

    method = _method(args)
    lex = _lexicon(args, method)
    if args.split:
        test = random_split(corpus, args.test_size, args.seed)
        report = evaluate_split(corpus, test, method, args.k, lex, cap=args.cap, seed=args.seed)
    else:
        report = evaluate_loo(
            corpus, method, args.k, lex, cap=args.cap, exclude_self=args.exclude_self
        )

    if args.format == "json":
        io.write(report.model_dump_json(indent=2))
    else:
        io.write(render_report(report))
    return EXIT_OK


def cmd_label(args: argparse.Namespace, io: Streams) -> int:
    rules = LabelerRuleSet.from_directory(args.rules) if args.rules else None
    results = []
    for sentence in _read_lines(args.input, io):
        try:
            label: Optional[str] = label_english(sentence, rules).value
        except Unlabelable as e:
            logger.warning(str(e))
            label = None
        results.append({"sentence": sentence, "label": label})
        if args.format == "text":
            io.write(f"{sentence}\t{label or '-'}")

    if args.format == "json":
        io.write_json(results)
    return EXIT_OK


def cmd_index(args: argparse.Namespace, io: Streams) -> int:
    corpus = _corpus(args)
    method = _method(args)
    lex = _lexicon(args, method)
    index = build_index(corpus, method, lex)
    out = save_snapshot(index, corpus, args.output, lex)

    if args.format == "json":
        io.write_json({"path": str(out), "method": method.value, "entries": len(index)})
    else:
        io.write(f"Wrote method-{method} index with {len(index)} entries to {out}")
    return EXIT_OK


def cmd_validate(args: argparse.Namespace, io: Streams) -> int:
    report = validate_corpus(_corpus(args))
    if args.format == "json":
        io.write(report.model_dump_json(indent=2))
    else:
        io.write(render_validation(report))
    return EXIT_DATA if report.has_errors else EXIT_OK


# ----------------- entry points -----------------


def run(
    argv: Optional[list[str]] = None,
    stdin: Optional[TextIO] = None,
    stdout: Optional[TextIO] = None,
    stderr: Optional[TextIO] = None,
) -> int:
    """Run one CLI invocation and return its exit status."""
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()

    try:
        with contextlib.redirect_stdout(stdout):
            args = parser.parse_args(argv)
    except UsageError as e:
        stderr.write(f"{e}\n")
        return EXIT_USAGE
    except SystemExit as e:
        # --help
        return e.code if isinstance(e.code, int) else EXIT_OK

    setup_logging(logging.DEBUG if args.verbose else None, stream=stderr)
    handler: Callable[[argparse.Namespace, Streams], int] = args.handler

    try:
        return handler(args, Streams(stdin, stdout))
    except UsageError as e:
        stderr.write(f"{parser.prog} {args.command}: error: {e}\n")
        return EXIT_USAGE
    except (TamError, OSError) as e:
        logger.error(f"{type(e).__name__}: {e}")
        return EXIT_DATA


def main():
    """Main execution block."""
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
