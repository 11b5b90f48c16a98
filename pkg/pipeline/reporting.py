"""Plain-text renderings of evaluation, classification and validation results."""
import json
from typing import Sequence

from tabulate import tabulate

from pipeline.evaluation import EvalReport
from pipeline.knn_classifier import VoteTrace
from pipeline.similarity_index import SuffixIndex, matched_suffix
from processing.annotation.units import UnitSequence, render_units
from processing.taxonomy import EvalGroup
from processing.validators.validate import ValidationReport


def render_accuracy_table(reports: Sequence[EvalReport]) -> str:
    """One row per (method, k): All, Present, Past and Other as ``"% (correct/total)"``."""
    rows = [
        [r.label, r.overall.cell(), *(r.by_group[g].cell() for g in EvalGroup)]
        for r in reports
    ]
    headers = ["", "All", *(g.value for g in EvalGroup)]
    return tabulate(rows, headers=headers, tablefmt="simple", disable_numparse=True)


def render_category_table(report: EvalReport) -> str:
    """Per-category accuracy, restricted to categories present in the test set."""
    categories = list(report.by_category)
    headers = ["", "All", *(c.short_name for c in categories)]
    counts = ["No.", report.overall.total, *(report.by_category[c].total for c in categories)]

    def pct(score) -> str:
        return "-" if score.accuracy is None else f"{100 * score.accuracy:.1f}"

    accuracy = [
        report.label,
        pct(report.overall),
        *(pct(report.by_category[c]) for c in categories),
    ]
    return tabulate([counts, accuracy], headers=headers, tablefmt="simple", disable_numparse=True)


def render_report(report: EvalReport) -> str:
    lines = [
        f"protocol={report.protocol} method={report.method} k={report.k} cap={report.cap}"
        + (f" seed={report.seed}" if report.seed is not None else ""),
        "",
        render_accuracy_table([report]),
        "",
        render_category_table(report),
    ]
    return "\n".join(lines)


def explain_trace(trace: VoteTrace, query: UnitSequence, index: SuffixIndex) -> dict:
    """VoteTrace as JSON-ready dict plus the rendered matching part of each neighbour."""
    entries = index.by_ordinal()
    payload = trace.model_dump(mode="json")
    payload["matched"] = [
        render_units(matched_suffix(query, entries[n.ordinal].units)) for n in trace.neighbors_used
    ]
    return payload


def explain_json(trace: VoteTrace, query: UnitSequence, index: SuffixIndex) -> str:
    return json.dumps(explain_trace(trace, query, index), ensure_ascii=False)


def render_validation(report: ValidationReport) -> str:
    header = f"{report.source_path}: {report.pair_count} pairs"
    histogram = tabulate(
        sorted(
            ((str(label), count) for label, count in report.label_histogram.items()),
            key=lambda row: (-row[1], row[0]),
        ),
        headers=["Label", "Count"],
        tablefmt="simple",
    )
    if not report.issues:
        return f"{header}\n\n{histogram}\n\nNo issues."
    issues = tabulate(
        [
            [str(i.severity), i.code, ",".join(map(str, i.ordinals)), i.message]
            for i in report.issues
        ],
        headers=["Severity", "Code", "Ordinals", "Message"],
        tablefmt="simple",
    )
    return f"{header}\n\n{histogram}\n\n{issues}"
