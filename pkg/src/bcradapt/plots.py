"""Matplotlib renderers for the CLI report path.

Whenever a command writes a delimited report, a companion PNG lands next to
it: sweep curves with crossover markers, a per-option score chart for
decisions, or the cycle trace of an episode.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from .decision import Decision
from .mape import EpisodeLog
from .tradeoff import CrossoverReport

_FIGSIZE = (7.0, 4.2)
_DPI = 120


def figure_path_for(out_path: str | Path) -> Path:
    return Path(out_path).with_suffix(".png")


def render_sweep_figure(
    report: CrossoverReport, path: str | Path, xlabel: str, title: str
) -> Path:
    path = Path(path)
    fig, ax = plt.subplots(figsize=_FIGSIZE, dpi=_DPI)
    for option_id in sorted(report.series):
        points = report.series[option_id]
        ax.plot([p for p, _ in points], [v for _, v in points], label=option_id)
    for _a, _b, param in report.crossovers:
        ax.axvline(param, color="gray", linestyle="--", linewidth=0.8)
        ax.annotate(
            f"{param:.4f}",
            xy=(param, ax.get_ylim()[0]),
            xytext=(2, 4),
            textcoords="offset points",
            fontsize=8,
            color="gray",
        )
    ax.set_xlabel(xlabel)
    ax.set_ylabel("score")
    ax.set_title(title)
    ax.legend()
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path


def render_decision_figure(decision: Decision, path: str | Path) -> Path:
    path = Path(path)
    options = sorted(decision.scores)
    scores = [decision.scores[o] for o in options]
    colors = ["tab:green" if o == decision.selected else "tab:blue" for o in options]
    fig, ax = plt.subplots(figsize=_FIGSIZE, dpi=_DPI)
    ax.bar(range(len(options)), scores, color=colors)
    ax.set_xticks(range(len(options)))
    ax.set_xticklabels(options, rotation=45, ha="right", fontsize=8)
    ax.set_ylabel("weighted benefit-cost-risk score")
    ax.set_title(f"selected: {decision.selected}")
    ax.axhline(0.0, color="black", linewidth=0.8)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path


def render_episode_figure(log: EpisodeLog, path: str | Path) -> Path:
    path = Path(path)
    cycles = [r.cycle for r in log.records]
    cumulative = [r.cumulative_cost for r in log.records]
    scores = [r.score for r in log.records]
    fig, ax = plt.subplots(figsize=_FIGSIZE, dpi=_DPI)
    ax.step(cycles, cumulative, where="post", color="tab:red", label="cumulative cost")
    ax.set_xlabel("cycle")
    ax.set_ylabel("cumulative cost", color="tab:red")
    twin = ax.twinx()
    twin.plot(
        [c for c, s in zip(cycles, scores) if s is not None],
        [s for s in scores if s is not None],
        color="tab:blue",
        marker="o",
        markersize=3,
        label="selected score",
    )
    twin.set_ylabel("selected option score", color="tab:blue")
    ax.set_title("feedback loop episode")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path
