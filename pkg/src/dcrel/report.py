"""Report rendering: delimited profile/curve data plus matplotlib figures.

Writes CSV files and PNG charts describing an instance's reliability: the
hop-distance profile always, and the reliability-vs-p curve when the
instance is polynomial.  Network topology is never drawn.
"""

from __future__ import annotations

import csv
import os
from fractions import Fraction

from .composition import DistanceProfile
from .graph import Instance
from .values import Mode, Poly, Value, value_str


def _new_figure():
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    return plt


def write_profile_csv(profile: DistanceProfile, path: str) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["hops", "mass", "cumulative"])
        for l in range(1, profile.diameter + 1):
            writer.writerow([l, value_str(profile.mass(l)), value_str(profile.cumulative(l))])
        writer.writerow(["tail", value_str(profile.tail), ""])


def write_curve_csv(value: Poly, path: str, points: int = 101) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["p", "reliability"])
        for k in range(points):
            x = Fraction(k, points - 1)
            writer.writerow([value_str(float(x)), value_str(float(value.evaluate(x)))])


def render_profile_figure(profile: DistanceProfile, path: str, title: str) -> None:
    plt = _new_figure()
    hops = list(range(1, profile.diameter + 1))
    masses = [float(_as_float(profile.mass(l))) for l in hops]
    cumul = [float(_as_float(profile.cumulative(l))) for l in hops]
    fig, ax = plt.subplots(figsize=(6.0, 3.6))
    ax.bar(hops, masses, color="#4878d0", label="P(distance = hops)")
    ax.step(hops, cumul, where="mid", color="#d65f5f", label="P(distance <= hops)")
    ax.set_xlabel("hops")
    ax.set_ylabel("probability")
    ax.set_xticks(hops)
    ax.set_ylim(0, 1.05)
    ax.set_title(title)
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_curve_figure(value: Poly, path: str, title: str, points: int = 201) -> None:
    plt = _new_figure()
    xs = [k / (points - 1) for k in range(points)]
    ys = [float(value.evaluate(Fraction(k, points - 1))) for k in range(points)]
    fig, ax = plt.subplots(figsize=(6.0, 3.6))
    ax.plot(xs, ys, color="#4878d0")
    ax.set_xlabel("link reliability p")
    ax.set_ylabel("terminal reliability")
    ax.set_xlim(0, 1)
    ax.set_ylim(0, 1.05)
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def _as_float(value: Value) -> float:
    if isinstance(value, Poly):
        raise ValueError("polynomial profile cannot be charted without evaluation")
    return float(value)


def render_report(inst: Instance, profile: DistanceProfile, value: Value,
                  outdir: str) -> list[str]:
    """Write the report files; returns the file names created."""
    os.makedirs(outdir, exist_ok=True)
    written = []

    if inst.mode is Mode.POLY:
        # Chart the polynomial at p = 1/2 for the profile and as a curve.
        half = Fraction(1, 2)
        eval_profile = DistanceProfile(
            diameter=profile.diameter,
            masses=tuple(float(m.evaluate(half)) for m in profile.masses),
            tail=float(profile.tail.evaluate(half)),
        )
        curve_csv = os.path.join(outdir, "curve.csv")
        write_curve_csv(value, curve_csv)
        written.append("curve.csv")
        render_curve_figure(value, os.path.join(outdir, "curve.png"),
                            "reliability vs link reliability")
        written.append("curve.png")
        chart_profile = eval_profile
        profile_title = "hop-distance profile at p = 1/2"
    else:
        chart_profile = profile
        profile_title = "hop-distance profile"

    profile_csv = os.path.join(outdir, "profile.csv")
    write_profile_csv(profile, profile_csv)
    written.insert(0, "profile.csv")
    render_profile_figure(chart_profile, os.path.join(outdir, "profile.png"), profile_title)
    written.append("profile.png")
    return written
