"""Figure rendering for the report-producing subcommands.

Each function writes one PNG next to the delimited output and returns the
path.  Figures are diagnostic companions; the CSV/JSON stream stays the
canonical output.
"""
from __future__ import annotations

import math
from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt


def plot_convergence(rows: Sequence, path: str, title: str = "") -> str:
    ns = [r.N for r in rows if r.average is not None]
    errs = [abs(r.error) for r in rows if r.error is not None]
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.plot(ns, errs, ".", ms=3, alpha=0.6)
    ax.set_yscale("log")
    ax.set_xlabel("order N")
    ax.set_ylabel("|average - local height|")
    if title:
        ax.set_title(title)
    if rows:
        ax.axhline(0, color="gray", lw=0.5)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def plot_scan(summary, path: str, title: str = "") -> str:
    counts = summary.cumulative_counts()
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.step(range(1, summary.n_max + 1), counts, where="post")
    for N in summary.member_orders:
        ax.axvline(N, color="tab:green", lw=0.5, alpha=0.5)
    ax.set_xlabel("order N")
    ax.set_ylabel("cumulative integral orbits")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def plot_count_deviation(rows: Sequence, path: str, title: str = "") -> str:
    ns = [r.N for r in rows]
    devs = [abs(r.deviation) for r in rows]
    envelope = [max(r.degree, 1) ** 0.9 for r in rows]
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.plot(ns, devs, ".", ms=2, alpha=0.5, label="|count - prediction|")
    ax.plot(ns, envelope, "-", lw=0.8, label="degree^0.9")
    ax.set_xlabel("order N")
    ax.set_yscale("symlog", linthresh=1.0)
    ax.legend()
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def plot_probe(result, path: str, title: str = "") -> str:
    ns = [r.N for r in result.records]
    gaps = [r.gap for r in result.records]
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.loglog(ns, gaps, "o-", ms=4)
    if ns and math.isfinite(result.fitted_exponent):
        c0 = gaps[0] * ns[0] ** result.fitted_exponent
        ax.loglog(
            ns,
            [c0 * n**-result.fitted_exponent for n in ns],
            "--",
            lw=0.8,
            label=f"N^-{result.fitted_exponent:.2f}",
        )
        ax.legend()
    ax.set_xlabel("denominator N")
    ax.set_ylabel("record gap |a/N - theta0|")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
