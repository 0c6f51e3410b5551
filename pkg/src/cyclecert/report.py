"""Batch sweeps with file reports.

run_sweep solves a list of generated instances and writes, into one
directory: report.json and report.csv (deterministic, byte-identical
across runs), report.txt (aligned human table), timings.json (wall
clock, deliberately kept out of the deterministic files), and two PNG
figures summarizing outcomes.
"""
from __future__ import annotations

import csv
import json
import time
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .generate import GenSpec, generate
from .recognize import toughness_exact
from .solve import dumps_canonical, solve, verify_certificate

__all__ = ["SweepRow", "RunReport", "run_sweep"]


@dataclass(frozen=True)
class SweepRow:
    label: str
    n: int
    m: int
    variant: str
    rule: str
    ratio: str
    merges: int
    verified: bool
    toughness: str
    input_hash: str

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "n": self.n,
            "m": self.m,
            "variant": self.variant,
            "rule": self.rule,
            "ratio": self.ratio,
            "merges": self.merges,
            "verified": self.verified,
            "toughness": self.toughness,
            "input_hash": self.input_hash,
        }


@dataclass(frozen=True)
class RunReport:
    threshold: str
    rows: tuple[SweepRow, ...]

    def summary(self) -> dict:
        variants: dict[str, int] = {}
        for row in self.rows:
            variants[row.variant] = variants.get(row.variant, 0) + 1
        return {
            "total": len(self.rows),
            "variants": dict(sorted(variants.items())),
            "verified": sum(1 for r in self.rows if r.verified),
        }

    def to_json(self) -> dict:
        return {
            "threshold": self.threshold,
            "summary": self.summary(),
            "rows": [r.to_json() for r in self.rows],
        }


def _fraction_str(x: Fraction | None) -> str:
    if x is None:
        return "inf"
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)


CSV_FIELDS = [
    "label", "n", "m", "variant", "rule", "ratio",
    "merges", "verified", "toughness", "input_hash",
]


def run_sweep(
    specs: Sequence[GenSpec],
    t: Fraction = Fraction(3),
    out_dir: str | Path | None = None,
    compute_toughness: bool = False,
    figures: bool = True,
) -> RunReport:
    rows: list[SweepRow] = []
    timings: list[dict] = []
    for spec in specs:
        g = generate(spec)
        started = time.perf_counter()
        cert = solve(g, t)
        elapsed = time.perf_counter() - started
        ok, _ = verify_certificate(g, cert, t)
        tough = ""
        if compute_toughness:
            tough = _fraction_str(toughness_exact(g).value)
        ratio = ""
        rule = ""
        if cert.variant == "toughness_witness":
            rule = cert.data["rule"]
            ratio = f"{cert.data['ratio']['num']}/{cert.data['ratio']['den']}"
        rows.append(
            SweepRow(
                label=spec.label(),
                n=g.n,
                m=g.m,
                variant=cert.variant,
                rule=rule,
                ratio=ratio,
                merges=len(cert.trace),
                verified=ok,
                toughness=tough,
                input_hash=cert.input_hash,
            )
        )
        timings.append({"label": spec.label(), "seconds": elapsed})
    report = RunReport(threshold=_fraction_str(t), rows=tuple(rows))
    if out_dir is not None:
        _write_files(report, timings, Path(out_dir), figures)
    return report


def _write_files(
    report: RunReport, timings: list[dict], out_dir: Path, figures: bool
) -> None:
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "report.json").write_text(
        dumps_canonical(report.to_json()) + "\n"
    )
    with (out_dir / "report.csv").open("w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=CSV_FIELDS)
        writer.writeheader()
        for row in report.rows:
            writer.writerow(row.to_json())
    (out_dir / "report.txt").write_text(_render_table(report))
    (out_dir / "timings.json").write_text(json.dumps(timings, indent=2) + "\n")
    if figures:
        _render_figures(report, out_dir)


def _render_table(report: RunReport) -> str:
    header = CSV_FIELDS
    data = [[str(r.to_json()[k]) for k in header] for r in report.rows]
    widths = [
        max(len(header[i]), *(len(row[i]) for row in data)) if data else len(header[i])
        for i in range(len(header))
    ]
    lines = [
        "  ".join(h.ljust(w) for h, w in zip(header, widths)),
        "  ".join("-" * w for w in widths),
    ]
    for row in data:
        lines.append("  ".join(cell.ljust(w) for cell, w in zip(row, widths)))
    summary = report.summary()
    lines.append("")
    lines.append(
        f"total={summary['total']} verified={summary['verified']} "
        + " ".join(f"{k}={v}" for k, v in summary["variants"].items())
    )
    return "\n".join(lines) + "\n"


def _render_figures(report: RunReport, out_dir: Path) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    summary = report.summary()
    fig, ax = plt.subplots(figsize=(6, 4))
    names = list(summary["variants"])
    counts = [summary["variants"][k] for k in names]
    ax.bar(range(len(names)), counts, color="steelblue")
    ax.set_xticks(range(len(names)))
    ax.set_xticklabels(names, rotation=20, ha="right", fontsize=8)
    ax.set_ylabel("instances")
    ax.set_title("certificate outcomes")
    fig.tight_layout()
    fig.savefig(out_dir / "outcomes.png", dpi=120)
    plt.close(fig)

    fig, ax = plt.subplots(figsize=(6, 4))
    ham = [(r.n, r.merges) for r in report.rows if r.variant == "hamiltonian_cycle"]
    if ham:
        xs, ys = zip(*ham)
        ax.scatter(xs, ys, s=18, alpha=0.6, color="darkgreen")
    ax.set_xlabel("vertices")
    ax.set_ylabel("merge steps")
    ax.set_title("merge work per solved instance")
    fig.tight_layout()
    fig.savefig(out_dir / "merges.png", dpi=120)
    plt.close(fig)
