"""Figure rendering for report outputs.

Whenever a report is written to a file, a companion PNG lands next to it:
bound tables get a growth curve on a log scale, every other report gets a
per-check status chart.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt


def bound_figure(rows, path):
    """Semilog growth curve of the dimension bound, with the printed table
    values overlaid where they exist."""
    gs = [int(r["g"]) for r in rows]
    bounds = [int(r["bound"]) for r in rows]
    p = rows[0]["p"]
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    ax.semilogy(gs, bounds, "o-", color="tab:blue", label="formula bound")
    printed = [(g, r["printed_value"]) for g, r in zip(gs, rows) if r["printed_value"] is not None]
    if printed:
        ax.semilogy(
            [g for g, _ in printed],
            [int(v) for _, v in printed],
            "s",
            color="tab:red",
            fillstyle="none",
            markersize=9,
            label="printed table",
        )
    ax.set_xlabel("genus g")
    ax.set_ylabel("dimension bound")
    ax.set_title(f"|Sp_2g(F_{p})| / (g (p^2g - 1))")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def checks_figure(report, path):
    """Horizontal pass/fail bars, one per check record."""
    checks = report.checks
    if not checks:
        return
    names = [c.name for c in checks][::-1]
    colors = ["tab:green" if c.passed else "tab:red" for c in checks][::-1]
    fig, ax = plt.subplots(figsize=(7.2, max(2.0, 0.32 * len(checks) + 1.2)))
    ax.barh(range(len(names)), [1] * len(names), color=colors, height=0.6)
    ax.set_yticks(range(len(names)))
    ax.set_yticklabels(names, fontsize=8)
    ax.set_xticks([])
    ax.set_xlim(0, 1.35)
    for i, c in enumerate(checks[::-1]):
        ax.text(1.02, i, c.status.upper(), va="center", fontsize=8)
    ax.set_title(f"{report.command}: {report.status.upper()}")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_figure(report, path):
    if report.table is not None and report.table and "bound" in report.table[0]:
        bound_figure(report.table, path)
    else:
        checks_figure(report, path)
