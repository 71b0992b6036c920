#!/usr/bin/env python
"""
Command line for UGC treebanks.

    ugctb validate PATHS...     lint files, one line per diagnostic
    ugctb fix PATHS...          apply deterministic fixes
    ugctb segment PATHS...      split posts into units or merge units back
    ugctb convert PATHS...      UD <-> SUD
    ugctb stats PATHS...        phenomenon counts
    ugctb rules                 the rule catalog

Exit codes: 0 clean, 1 error-severity findings or conversion failures,
2 unreadable or malformed input, 3 invalid configuration, 130 interrupted.
"""

import argparse
import logging
import sys
from dataclasses import dataclass, field
from functools import partial
from itertools import groupby
from pathlib import Path
from typing import Callable, Optional

from pydantic import ValidationError

from ugc_treebank.config import RunConfig, get_settings
from ugc_treebank.models.conllu import Sentence
from ugc_treebank.models.enums import (
    ConvertDirection,
    ExitCode,
    FixMode,
    OutputFormat,
    SegmentDirection,
    Severity,
)
from ugc_treebank.models.errors import (
    ConfigError,
    ConversionError,
    LexiconError,
    NonContiguousUnit,
    ParseError,
    StructureError,
    UnsupportedRelation,
)
from ugc_treebank.models.lint import AppliedFix, Diagnostic, FixConflictRecord
from ugc_treebank.models.stats import CorpusStats
from ugc_treebank.pipelines.conllu_io import parse_file, serialize_document, write_file
from ugc_treebank.pipelines.corpus_stats import corpus_stats
from ugc_treebank.pipelines.sud_bridge import convert_sentences
from ugc_treebank.pipelines.tree_algebra import merge_units, post_id, split_units
from ugc_treebank.pipelines.ugc_lint import LintConfig, fix, list_rules, validate
from ugc_treebank.services.conversion_table import ConversionTable, load_conversion_table
from ugc_treebank.services.file_runner import InputFile, collect_files, run_files
from ugc_treebank.services.lexicon_store import Lexicon, load_lexicons

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s | %(levelname)s | %(name)s | %(message)s"
LOG_DATEFMT = "%Y-%m-%d %H:%M:%S"
NO_ID = "_"


@dataclass
class Runtime:
    """Everything resolved before the first input file is opened."""
    config: RunConfig
    lint: LintConfig
    lexicon: Lexicon
    table: Optional[ConversionTable] = None

    @property
    def human(self) -> bool:
        return self.config.output_format is OutputFormat.HUMAN


@dataclass
class FileOutcome:
    """What one worker produced for one input file."""
    source: InputFile
    lines: list[str] = field(default_factory=list)
    problems: list[str] = field(default_factory=list)
    output: Optional[list[Sentence]] = None
    stats: Optional[CorpusStats] = None
    failed: bool = False
    has_errors: bool = False


# --- Report lines ---

def _row(*cols: object) -> str:
    return "\t".join(str(c) for c in cols)


def format_diagnostic(path: str, d: Diagnostic, human: bool) -> str:
    sent_id = d.sent_id or NO_ID
    tokens = ",".join(d.token_ids) or NO_ID
    if human:
        suffix = " (fixable)" if d.fix_available else ""
        return f"{path}:{sent_id}:{tokens}: {d.severity.value} [{d.rule_id}] {d.message}{suffix}"
    return _row(path, sent_id, tokens, d.rule_id, d.severity.value, d.message)


def format_applied(path: str, sent_id: Optional[str], a: AppliedFix, status: str, human: bool) -> str:
    change = f"{a.field}: {a.old if a.old is not None else NO_ID} -> {a.new if a.new is not None else NO_ID}"
    if human:
        return f"{path}:{sent_id or NO_ID}:{a.token_id}: {status} [{a.rule_id}] {change}"
    return _row(path, sent_id or NO_ID, a.token_id, a.rule_id, status, change)


def format_conflict(path: str, sent_id: Optional[str], c: FixConflictRecord, human: bool) -> str:
    rules = ",".join(c.rule_ids)
    if human:
        return f"{path}:{sent_id or NO_ID}:{c.token_id}: conflict on {c.field} between {rules}; token left unchanged"
    return _row(path, sent_id or NO_ID, c.token_id, rules, "conflict", f"{c.field}: token left unchanged")


def format_failure(path: str, sent_id: Optional[str], token_id: Optional[str], kind: str, message: str,
                   human: bool) -> str:
    if human:
        return f"{path}:{sent_id or NO_ID}:{token_id or NO_ID}: error [{kind}] {message}"
    return _row(path, sent_id or NO_ID, token_id or NO_ID, kind, Severity.ERROR.value, message)


def _has_error(diagnostics: list[Diagnostic]) -> bool:
    return any(d.severity is Severity.ERROR for d in diagnostics)


def _read(item: InputFile) -> tuple[Optional[list[Sentence]], Optional[FileOutcome]]:
    try:
        return parse_file(item.path), None
    except ParseError as e:
        logger.error("parse_failed file=%s line=%s reason=%s", item.path, e.line, e.reason)
        return None, FileOutcome(item, problems=[f"{item.path}: {e}"], failed=True)
    except OSError as e:
        logger.error("read_failed file=%s error=%s", item.path, e)
        return None, FileOutcome(item, problems=[f"{item.path}: {e}"], failed=True)


# --- Workers ---

def validate_worker(item: InputFile, rt: Runtime) -> FileOutcome:
    sentences, failure = _read(item)
    if failure:
        return failure
    outcome = FileOutcome(item)
    for sentence in sentences:
        diagnostics = validate(sentence, rt.lint)
        outcome.lines.extend(format_diagnostic(str(item.path), d, rt.human) for d in diagnostics)
        outcome.has_errors |= _has_error(diagnostics)
    return outcome


def fix_worker(item: InputFile, rt: Runtime, mode: FixMode, out_dir: Optional[Path]) -> FileOutcome:
    sentences, failure = _read(item)
    if failure:
        return failure
    outcome = FileOutcome(item)
    path = str(item.path)
    status = "would-fix" if mode is FixMode.DRY_RUN else "fixed"
    fixed_sentences: list[Sentence] = []
    changed = False
    for sentence in sentences:
        fixed, report = fix(sentence, validate(sentence, rt.lint), rt.lint)
        changed |= bool(report.applied)
        outcome.lines.extend(format_applied(path, sentence.sent_id, a, status, rt.human) for a in report.applied)
        outcome.lines.extend(format_conflict(path, sentence.sent_id, c, rt.human) for c in report.conflicts)
        remaining = validate(fixed, rt.lint)
        outcome.lines.extend(format_diagnostic(path, d, rt.human) for d in remaining)
        outcome.has_errors |= _has_error(remaining)
        fixed_sentences.append(fixed)

    try:
        if mode is FixMode.IN_PLACE and changed:
            write_file(item.path, fixed_sentences)
        elif mode is FixMode.OUTPUT_DIR:
            write_file(out_dir / item.relative, fixed_sentences)
    except OSError as e:
        outcome.problems.append(f"{path}: cannot write: {e}")
        outcome.failed = True
    return outcome


def _segment(sentences: list[Sentence], direction: SegmentDirection) -> list[Sentence]:
    if direction is SegmentDirection.SPLIT:
        out: list[Sentence] = []
        for sentence in sentences:
            out.extend(split_units(sentence))
        return out
    return [merge_units(list(group)) for _, group in groupby(sentences, key=lambda s: post_id(s.sent_id) or id(s))]


def segment_worker(item: InputFile, rt: Runtime, direction: SegmentDirection) -> FileOutcome:
    sentences, failure = _read(item)
    if failure:
        return failure
    outcome = FileOutcome(item)
    try:
        outcome.output = _segment(sentences, direction)
    except NonContiguousUnit as e:
        outcome.lines.append(format_failure(str(item.path), None, str(e.edge[1]), "NonContiguousUnit", str(e),
                                            rt.human))
        outcome.has_errors = True
    except StructureError as e:
        outcome.lines.append(format_failure(str(item.path), None, ",".join(e.token_ids), "StructureError", str(e),
                                            rt.human))
        outcome.has_errors = True
    return outcome


def convert_worker(item: InputFile, rt: Runtime, direction: ConvertDirection) -> FileOutcome:
    sentences, failure = _read(item)
    if failure:
        return failure
    outcome = FileOutcome(item)
    try:
        outcome.output = convert_sentences(sentences, direction, rt.table)
    except UnsupportedRelation as e:
        outcome.lines.append(format_failure(str(item.path), e.sent_id, e.token_id, "UnsupportedRelation",
                                            f"unsupported relation {e.deprel!r}", rt.human))
        outcome.has_errors = True
    except (ConversionError, StructureError) as e:
        outcome.lines.append(format_failure(str(item.path), None, None, type(e).__name__, str(e), rt.human))
        outcome.has_errors = True
    return outcome


def stats_worker(item: InputFile, rt: Runtime) -> FileOutcome:
    sentences, failure = _read(item)
    if failure:
        return failure
    return FileOutcome(item, stats=corpus_stats(sentences))


# --- Output ---

def _emit(outcomes: list[FileOutcome]) -> int:
    """Print worker output in input order; returns the exit code."""
    for outcome in outcomes:
        for line in outcome.lines:
            print(line)
        for problem in outcome.problems:
            print(problem, file=sys.stderr)
    if any(o.failed for o in outcomes):
        return ExitCode.PARSE_FAILURE
    if any(o.has_errors for o in outcomes):
        return ExitCode.ERRORS
    return ExitCode.OK


def _emit_documents(outcomes: list[FileOutcome], in_place: bool, out_dir: Optional[Path]) -> int:
    """Write result documents; a file with errors is never written."""
    for outcome in outcomes:
        if outcome.output is None or outcome.has_errors:
            continue
        item = outcome.source
        target = item.path if in_place else (out_dir / item.relative if out_dir else None)
        if target is None:
            sys.stdout.write(serialize_document(outcome.output).decode("utf-8"))
            continue
        try:
            write_file(target, outcome.output)
            logger.info("written file=%s", target)
        except OSError as e:
            outcome.problems.append(f"{target}: cannot write: {e}")
            outcome.failed = True
    return _emit(outcomes)


def format_stats(stats: CorpusStats, human: bool) -> list[str]:
    rows = stats.rows()
    if not human:
        return [_row("section", "key", "count")] + [_row(*r) for r in rows]
    width = max(len(f"{section}.{key}") for section, key, _ in rows)
    return [f"{f'{section}.{key}':<{width}}  {count:>8}" for section, key, count in rows]


# --- Commands ---

def cmd_validate(args: argparse.Namespace, rt: Runtime) -> int:
    files = collect_files(args.paths)
    return _emit(run_files(files, partial(validate_worker, rt=rt), rt.config.jobs))


def cmd_fix(args: argparse.Namespace, rt: Runtime) -> int:
    if args.in_place:
        mode = FixMode.IN_PLACE
    elif args.out:
        mode = FixMode.OUTPUT_DIR
    else:
        mode = FixMode.DRY_RUN
    files = collect_files(args.paths)
    worker = partial(fix_worker, rt=rt, mode=mode, out_dir=args.out)
    return _emit(run_files(files, worker, rt.config.jobs))


def cmd_segment(args: argparse.Namespace, rt: Runtime) -> int:
    files = collect_files(args.paths)
    worker = partial(segment_worker, rt=rt, direction=SegmentDirection(args.direction))
    return _emit_documents(run_files(files, worker, rt.config.jobs), args.in_place, args.out)


def cmd_convert(args: argparse.Namespace, rt: Runtime) -> int:
    files = collect_files(args.paths)
    worker = partial(convert_worker, rt=rt, direction=ConvertDirection(args.direction))
    return _emit_documents(run_files(files, worker, rt.config.jobs), args.in_place, args.out)


def cmd_stats(args: argparse.Namespace, rt: Runtime) -> int:
    files = collect_files(args.paths)
    outcomes = run_files(files, partial(stats_worker, rt=rt), rt.config.jobs)
    total = CorpusStats()
    for outcome in outcomes:
        if outcome.stats is not None:
            total = total.merge(outcome.stats)
    code = _emit(outcomes)
    for line in format_stats(total, rt.human):
        print(line)
    return code


def cmd_rules(args: argparse.Namespace, rt: Runtime) -> int:
    for info in list_rules():
        configured = rt.lint.severities.get(info.id, info.default_severity.value)
        fixable = "fixable" if info.fixable else "-"
        if rt.human:
            print(f"{info.id:<12} {configured:<8} {fixable:<8} {info.phenomenon}: {info.description}")
        else:
            print(_row(info.id, info.phenomenon, configured, fixable, info.description))
    return ExitCode.OK


# --- Setup ---

def build_runtime(args: argparse.Namespace) -> Runtime:
    """
    Resolve settings (environment, then flags), rule file, lexicons and table.

    Raises:
        ConfigError: invalid settings, rule file or conversion table
        LexiconError: malformed lexicon file
    """
    base = get_settings()
    overrides: dict = {}
    if args.config is not None:
        overrides["rule_config"] = args.config
    if args.strict:
        overrides["strict"] = True
    if args.lexicon:
        overrides["lexicons"] = [*base.lexicons, *args.lexicon]
    if args.format is not None:
        overrides["output_format"] = args.format
    if args.jobs is not None:
        overrides["jobs"] = args.jobs
    if args.log_level is not None:
        overrides["log_level"] = args.log_level
    if getattr(args, "conversion_table", None) is not None:
        overrides["conversion_table"] = args.conversion_table
    try:
        config = RunConfig.model_validate({**base.model_dump(), **overrides})
    except ValidationError as e:
        raise ConfigError(f"invalid option: {e}") from e

    logging.getLogger().setLevel(config.log_level)
    lexicon = load_lexicons(config.lexicons)
    runtime = Runtime(config=config, lint=LintConfig.from_run_config(config, lexicon), lexicon=lexicon)
    if args.command == "convert":
        runtime.table = load_conversion_table(config.conversion_table)
    logger.debug("runtime format=%s jobs=%d lexicon_entries=%d", config.output_format.value, config.jobs,
                 len(lexicon))
    return runtime


def _add_output_target(parser: argparse.ArgumentParser) -> None:
    target = parser.add_mutually_exclusive_group()
    target.add_argument("--in-place", action="store_true", help="Overwrite the input files")
    target.add_argument("--out", type=Path, metavar="DIR", help="Write results under DIR, mirroring the inputs")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, metavar="FILE", help="Rule severity file (RULE-ID = severity per line)")
    common.add_argument("--format", choices=[f.value for f in OutputFormat], help="Report format (default: tsv)")
    common.add_argument("--strict", action="store_true", help="Reject documented subtypes outside the core list")
    common.add_argument("--lexicon", type=Path, action="append", metavar="FILE",
                        help="Extra abbreviation lexicon; repeat to stack, later files win")
    common.add_argument("--jobs", type=int, metavar="N", help="Files processed concurrently (default: 1)")
    common.add_argument("--log-level", choices=["DEBUG", "INFO", "WARNING", "ERROR"], help="Log level on stderr")

    parser = argparse.ArgumentParser(
        prog="ugctb",
        description="Validate, fix, segment, convert and count UGC treebanks in CoNLL-U",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  ugctb validate corpus/                      # lint every *.conllu under corpus/
  ugctb validate --format human post.conllu
  ugctb fix --dry-run corpus/                 # show what would change
  ugctb fix --out fixed/ corpus/
  ugctb segment --direction split posts.conllu > units.conllu
  ugctb convert --direction ud2sud --out sud/ corpus/
  ugctb stats corpus/
  ugctb rules --config rules.conf
        """,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="Report rule violations")
    p.add_argument("paths", nargs="+", type=Path)
    p.set_defaults(handler=cmd_validate)

    p = sub.add_parser("fix", parents=[common], help="Apply deterministic fixes")
    p.add_argument("paths", nargs="+", type=Path)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--in-place", action="store_true", help="Rewrite files that changed")
    mode.add_argument("--out", type=Path, metavar="DIR", help="Write fixed copies under DIR")
    mode.add_argument("--dry-run", action="store_true", help="Only report (default)")
    p.set_defaults(handler=cmd_fix)

    p = sub.add_parser("segment", parents=[common], help="Split posts into sentence units or merge them back")
    p.add_argument("paths", nargs="+", type=Path)
    p.add_argument("--direction", choices=[d.value for d in SegmentDirection], default=SegmentDirection.SPLIT.value)
    _add_output_target(p)
    p.set_defaults(handler=cmd_segment)

    p = sub.add_parser("convert", parents=[common], help="Convert between UD and SUD")
    p.add_argument("paths", nargs="+", type=Path)
    p.add_argument("--direction", choices=[d.value for d in ConvertDirection], required=True)
    p.add_argument("--conversion-table", type=Path, metavar="FILE", help="Relation table replacing the shipped one")
    _add_output_target(p)
    p.set_defaults(handler=cmd_convert)

    p = sub.add_parser("stats", parents=[common], help="Count UGC phenomena")
    p.add_argument("paths", nargs="+", type=Path)
    p.set_defaults(handler=cmd_stats)

    p = sub.add_parser("rules", parents=[common], help="List the rule catalog with configured severities")
    p.set_defaults(handler=cmd_rules)
    return parser


def run(argv: Optional[list[str]] = None) -> int:
    """Parse ``argv`` and run one command; returns the exit code."""
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.WARNING, format=LOG_FORMAT, datefmt=LOG_DATEFMT, stream=sys.stderr)

    try:
        runtime = build_runtime(args)
    except (ConfigError, LexiconError) as e:
        print(f"configuration error: {e}", file=sys.stderr)
        return ExitCode.CONFIG_ERROR

    handler: Callable[[argparse.Namespace, Runtime], int] = args.handler
    try:
        return int(handler(args, runtime))
    except FileNotFoundError as e:
        print(str(e), file=sys.stderr)
        return ExitCode.PARSE_FAILURE


def main(argv: Optional[list[str]] = None) -> None:
    try:
        sys.exit(run(argv))
    except KeyboardInterrupt:
        logger.warning("Interrupted by user (Ctrl+C). Files written so far are complete.")
        sys.exit(ExitCode.INTERRUPTED)


if __name__ == "__main__":
    main()
