"""Render census and verification reports as text tables, JSON and CSV."""

import csv
import io
import json
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from indep_census._analytic import PatternSignature, SolutionClass, pair_classes
from indep_census._brute import CensusReport, VerificationReport
from indep_census.census import analytic_report


def pattern_labels(report: CensusReport) -> dict[PatternSignature, str]:
    """Label signatures N1, N2, ... in order of first appearance."""
    return {sig: f"N{i}" for i, (sig, _) in enumerate(report.signatures(), start=1)}


def _cell(value: int | Fraction) -> int | str:
    return value if isinstance(value, int) else str(value)


def report_to_dict(report: CensusReport, timing: bool = False) -> dict[str, Any]:
    """JSON-ready form of a report; counts are decimal strings."""
    labels = pattern_labels(report)
    data: dict[str, Any] = {
        "mode": report.mode.value,
        "n": report.n,
        "k": report.k,
        "uniform": report.uniform,
        "total": str(report.total),
        "classes": [
            {
                "k": len(sizes),
                "sizes": list(sizes),
                "intersection": intersection,
                "signature": [_cell(c) for c in report.class_signature[key].cells],
                "label": labels[report.class_signature[key]],
                "count": str(count),
            }
            for key, count in report.classes()
            for sizes, intersection in [key]
        ],
        "signatures": [
            {"label": labels[sig], "signature": [_cell(c) for c in sig.cells], "count": str(count)}
            for sig, count in report.signatures()
        ],
        "witnesses": [[list(e.outcomes()) for e in w] for w in report.witnesses],
    }
    if report.distinct_events is not None:
        data["distinct_events"] = report.distinct_events
    if timing:
        data["elapsed_seconds"] = round(report.elapsed_seconds, 3)
        data["workers"] = report.workers
    return data


def render_json(report: CensusReport, timing: bool = False) -> str:
    return json.dumps(report_to_dict(report, timing), indent=2) + "\n"


def render_csv(report: CensusReport) -> str:
    """One row per class (uniform) or per signature (weighted)."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["k", "sizes", "intersection", "signature", "count"])
    if report.by_class:
        for (sizes, intersection), count in report.classes():
            signature = report.class_signature[(sizes, intersection)]
            writer.writerow(
                [len(sizes), " ".join(map(str, sizes)), intersection, str(signature), count]
            )
    else:
        for signature, count in report.signatures():
            writer.writerow([report.k, "", "", str(signature), count])
    return buffer.getvalue()


def _format_table(header: Sequence[str], rows: Sequence[Sequence[object]]) -> list[str]:
    widths = [max(len(str(x)) for x in column) for column in zip(header, *rows)]
    lines = ["  ".join(str(h).ljust(w) for h, w in zip(header, widths)).rstrip()]
    lines.append("  ".join("-" * w for w in widths))
    lines += ["  ".join(str(x).ljust(w) for x, w in zip(row, widths)).rstrip() for row in rows]
    return lines


def render_table(report: CensusReport, timing: bool = False) -> str:
    """Human-readable report."""
    labels = pattern_labels(report)
    lines = [f"{report.mode.value} census, n={report.n}, k={report.k}"]
    if report.by_class:
        rows = [
            (
                len(sizes),
                ",".join(map(str, sizes)),
                intersection,
                labels[report.class_signature[(sizes, intersection)]],
                report.class_signature[(sizes, intersection)],
                f"{count:,}",
            )
            for (sizes, intersection), count in report.classes()
        ]
        lines += _format_table(["k", "sizes", "common", "pattern", "signature", "count"], rows)
        lines.append("")
    rows = [(labels[sig], sig, f"{count:,}") for sig, count in report.signatures()]
    if rows:
        lines += _format_table(["pattern", "signature", "count"], rows)
        lines.append("")
    for w in report.witnesses:
        lines.append("witness: " + " ".join(str(e) for e in w))
    if report.distinct_events is not None:
        lines.append(f"distinct events: {report.distinct_events}")
    lines.append(f"total: {report.total:,}")
    if timing:
        lines.append(f"elapsed: {report.elapsed_seconds:.3f}s with {report.workers} worker(s)")
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class PairTableRow:
    """One intersection size of the pair table with its factorizations."""

    intersection: int
    product: int
    factorizations: tuple[tuple[int, int], ...]
    labels: tuple[str, ...]


def pair_table(n: int) -> list[PairTableRow]:
    """Pair classes grouped by intersection d, with a·b = n·d and pattern labels.

    Within a row the factorizations follow their label numbers.
    """
    labels = pattern_labels(analytic_report(n, 2))
    rows: dict[int, list[SolutionClass]] = {}
    for cls in pair_classes(n):
        rows.setdefault(cls.intersection, []).append(cls)
    table = []
    for d, classes in sorted(rows.items()):
        # stable sort keeps class order between equal labels
        classes.sort(key=lambda c: int(labels[c.signature][1:]))
        table.append(
            PairTableRow(
                d,
                n * d,
                tuple((c.sizes[0], c.sizes[1]) for c in classes),
                tuple(labels[c.signature] for c in classes),
            )
        )
    return table


def render_pair_table(n: int) -> str:
    """The pair table followed by the decomposition of the total into pattern counts."""
    report = analytic_report(n, 2)
    labels = pattern_labels(report)
    table = pair_table(n)
    lines = [f"independent pairs of the uniform {n}-point space"]
    if not table:
        lines.append("no independent pairs")
        lines.append("total: 0")
        return "\n".join(lines) + "\n"
    lines += _format_table(
        ["d", "ab", "factorizations", "partitions"],
        [
            (
                row.intersection,
                row.product,
                ", ".join(f"{a}*{b}" for a, b in row.factorizations),
                "; ".join(row.labels),
            )
            for row in table
        ],
    )
    lines.append("")
    terms, numbers = [], []
    for sig, _ in report.signatures():
        label = labels[sig]
        counts = [c for key, c in report.classes() if report.class_signature[key] == sig]
        index = label[1:]
        if len(set(counts)) == 1:
            terms.append(f"{len(counts)}*n{index}" if len(counts) > 1 else f"n{index}")
            numbers.append(f"n{index} = {counts[0]:,}")
        else:
            terms += [f"{c:,}" for c in counts]
        lines.append(f"{label} = {sig}")
    lines += numbers
    lines.append(f"total = {' + '.join(terms)} = {report.total:,}")
    return "\n".join(lines) + "\n"


def render_verification(report: VerificationReport) -> str:
    rows = [
        (
            row.k,
            f"{row.analytic_total:,}",
            f"{row.brute_total:,}",
            "ok" if row.matched else "MISMATCH",
        )
        for row in report.rows
    ]
    lines = [f"verification, n={report.n}"]
    lines += _format_table(["k", "analytic", "brute", "status"], rows)
    if report.first_mismatch:
        lines.append(f"first mismatch: {report.first_mismatch}")
    return "\n".join(lines) + "\n"


def verification_to_dict(report: VerificationReport) -> dict[str, Any]:
    return {
        "n": report.n,
        "matched": report.matched,
        "rows": [
            {
                "k": row.k,
                "analytic": str(row.analytic_total),
                "brute": str(row.brute_total),
                "mismatches": row.mismatches,
            }
            for row in report.rows
        ],
        "first_mismatch": report.first_mismatch,
    }


def trials_to_dict(
    n: int, epsilon: str, trials: Sequence[tuple[int, CensusReport]]
) -> dict[str, Any]:
    return {
        "n": n,
        "epsilon": epsilon,
        "trials": [{"seed": seed, "total": str(report.total)} for seed, report in trials],
    }


def render_trials(n: int, epsilon: str, trials: Sequence[tuple[int, CensusReport]]) -> str:
    """One line per perturbation seed with the surviving pair count."""
    lines = [f"perturbed uniform {n}-point space, epsilon={epsilon}"]
    lines += _format_table(
        ["seed", "pairs"], [(seed, f"{report.total:,}") for seed, report in trials]
    )
    survivors = sum(1 for _, report in trials if report.total)
    lines.append(f"{survivors} of {len(trials)} perturbations kept independent pairs")
    return "\n".join(lines) + "\n"
