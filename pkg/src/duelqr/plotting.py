"""Figures for scan reports and composites, written straight to files."""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402


def _outcome_code(entry, m1, m2):
    if not entry.ok:
        return 0
    if entry.message == m1:
        return -1
    if entry.message == m2:
        return 1
    return 0.5


def plot_scan_report(report, path, raster=None, tally=None, title=None):
    """Offset sweep (and optionally the raster and jitter tally) as a PNG/PDF/SVG."""
    ncols = 1 + (raster is not None) + (tally is not None)
    fig, axes = plt.subplots(1, ncols, figsize=(4.2 * ncols, 4), squeeze=False)
    axes = list(axes[0])

    if raster is not None:
        ax = axes.pop(0)
        ax.imshow(~np.asarray(raster.pixels), cmap="gray", interpolation="nearest", vmin=0, vmax=1)
        ax.set_xticks([])
        ax.set_yticks([])
        orient = raster.orientation.name.lower() if raster.orientation else "single"
        ax.set_title(f"composite ({orient}, scale {raster.scale})", fontsize=10)

    ax = axes.pop(0)
    deltas = [e.dx if e.dx else e.dy for e in report.entries]
    codes = [_outcome_code(e, report.m1, report.m2) for e in report.entries]
    colors = ["tab:blue" if c == -1 else "tab:orange" if c == 1 else "tab:red" for c in codes]
    ax.scatter(deltas, codes, c=colors, s=60, zorder=3)
    ax.axvspan(-0.15, 0.15, color="0.9", zorder=0)
    ax.axvline(0, color="0.5", lw=0.8)
    ax.set_yticks([-1, 0, 0.5, 1])
    ax.set_yticklabels(["msg 1", "fail", "other", "msg 2"])
    ax.set_xlim(-0.5, 0.5)
    ax.set_ylim(-1.5, 1.5)
    ax.set_xlabel("sampling offset along split axis (modules)")
    ax.set_title("PASS" if report.passed else "FAIL", fontsize=10,
                 color="tab:green" if report.passed else "tab:red")

    if tally is not None:
        ax = axes.pop(0)
        labels = ["msg 1", "msg 2", "fail", "other"]
        values = [tally.success_m1, tally.success_m2, tally.failures, tally.other]
        ax.bar(labels, values, color=["tab:blue", "tab:orange", "tab:red", "0.6"])
        ax.set_ylabel("trials")
        ax.set_title("head-on jitter", fontsize=10)

    if title:
        fig.suptitle(title, fontsize=11)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
