#!/usr/bin/env python
"""
Generate a corpus report to Markdown and CSV.

Counts UGC phenomena and rule findings over one or more CoNLL-U files or
directories. Writes to docs/corpus_report.md and reports/corpus_report.csv.

Usage:
    poetry run python scripts/generate_report.py tests/fixtures/corpus
    poetry run python scripts/generate_report.py corpus/ --strict
"""

import argparse
import csv
import sys
from collections import Counter
from datetime import datetime, timezone
from pathlib import Path

_project_root = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(_project_root))

from dotenv import load_dotenv
load_dotenv(_project_root / ".env")

from ugc_treebank.config import get_settings
from ugc_treebank.models.errors import ParseError
from ugc_treebank.models.stats import CorpusStats
from ugc_treebank.pipelines.conllu_io import parse_file
from ugc_treebank.pipelines.corpus_stats import corpus_stats
from ugc_treebank.pipelines.ugc_lint import LintConfig, list_rules, validate
from ugc_treebank.services.file_runner import collect_files
from ugc_treebank.services.lexicon_store import load_lexicons


def main():
    parser = argparse.ArgumentParser(description="Corpus phenomenon and rule report")
    parser.add_argument("paths", nargs="+", type=Path)
    parser.add_argument("--strict", action="store_true")
    args = parser.parse_args()

    settings = get_settings()
    if args.strict:
        settings = settings.model_copy(update={"strict": True})
    lint = LintConfig.from_run_config(settings, load_lexicons(settings.lexicons))

    try:
        files = collect_files(args.paths)
    except FileNotFoundError as e:
        print(str(e), file=sys.stderr)
        sys.exit(2)
    if not files:
        print("No .conllu files found.")
        sys.exit(0)

    total = CorpusStats()
    findings: Counter = Counter()
    per_file = []
    unreadable = []
    for item in files:
        try:
            sentences = parse_file(item.path)
        except ParseError as e:
            unreadable.append(f"{item.relative}: {e}")
            continue
        stats = corpus_stats(sentences)
        total = total.merge(stats)
        file_findings = Counter(d.rule_id for s in sentences for d in validate(s, lint))
        findings.update(file_findings)
        per_file.append((str(item.relative), stats, sum(file_findings.values())))

    generated = datetime.now(timezone.utc).strftime("%Y-%m-%d %H:%M UTC")

    # --- Markdown ---
    lines = [
        "# UGC Corpus Report",
        "",
        f"Generated: {generated}",
        "",
        "## Summary",
        "",
        "| Counter | Count |",
        "|---|---:|",
    ]
    lines.extend(f"| {name} | {getattr(total, name)} |" for name in CorpusStats.COUNTERS)

    lines += ["", "## Non-canonical forms", "", "| NonCan | Count |", "|---|---:|"]
    lines.extend(f"| {key} | {count} |" for key, count in total.noncan.items())
    if not total.noncan:
        lines.append("| - | 0 |")

    lines += ["", "## Rule findings", "", "| Rule | Severity | Phenomenon | Findings |", "|---|---|---|---:|"]
    for info in list_rules():
        if findings[info.id]:
            severity = lint.severities.get(info.id, info.default_severity.value)
            lines.append(f"| {info.id} | {severity} | {info.phenomenon} | {findings[info.id]} |")
    if not findings:
        lines.append("| - | - | - | 0 |")

    lines += ["", "## Files", "", "| File | Sentences | Tokens | Findings |", "|---|---:|---:|---:|"]
    lines.extend(f"| {name} | {s.sentences} | {s.tokens} | {n} |" for name, s, n in per_file)

    if unreadable:
        lines += ["", "## Unreadable files", ""]
        lines.extend(f"- {entry}" for entry in unreadable)

    docs_dir = _project_root / "docs"
    docs_dir.mkdir(exist_ok=True)
    md_path = docs_dir / "corpus_report.md"
    md_path.write_text("\n".join(lines) + "\n", encoding="utf-8")

    # --- CSV ---
    reports_dir = _project_root / "reports"
    reports_dir.mkdir(exist_ok=True)
    csv_path = reports_dir / "corpus_report.csv"
    with open(csv_path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f)
        writer.writerow(["section", "key", "count"])
        writer.writerows(total.rows())
        writer.writerows(("findings", rule_id, count) for rule_id, count in sorted(findings.items()))

    print(f"Report written to {md_path} and {csv_path}")
    print(f"Files: {len(per_file)} read, {len(unreadable)} unreadable; sentences: {total.sentences}")


if __name__ == "__main__":
    main()
