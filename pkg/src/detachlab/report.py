"""Census report rendering: delimited output, JSON and matplotlib figures."""

import csv
import json
import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .hilbert import poly1_eval


def write_reports(reports, outdir, seed=None):
    """Write census.csv, census.json and summary figures into outdir.

    Returns the list of files written.
    """
    os.makedirs(outdir, exist_ok=True)
    written = []

    json_path = os.path.join(outdir, "census.json")
    payload = {
        "seed": seed,
        "passed": all(r.passed for r in reports),
        "examples": [r.to_json() for r in reports],
    }
    with open(json_path, "w") as fh:
        json.dump(payload, fh, indent=2)
    written.append(json_path)

    csv_path = os.path.join(outdir, "census.csv")
    with open(csv_path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["example", "check", "kind", "tag", "ref", "expected", "computed", "passed"])
        for rep in reports:
            for res in rep.results:
                writer.writerow([
                    rep.name, res.name, res.kind, res.tag, res.ref,
                    res.expected, res.computed, "pass" if res.passed else "FAIL",
                ])
    written.append(csv_path)

    written.append(_summary_figure(reports, os.path.join(outdir, "census_summary.png")))
    hf_path = _hilbert_figure(reports, os.path.join(outdir, "hilbert_functions.png"))
    if hf_path:
        written.append(hf_path)
    return written


def _summary_figure(reports, path):
    names = [r.name for r in reports]
    passed = [sum(1 for res in r.results if res.passed) for r in reports]
    failed = [sum(1 for res in r.results if not res.passed) for r in reports]
    fig, ax = plt.subplots(figsize=(9, max(3, 0.4 * len(names) + 1)))
    ypos = range(len(names))
    ax.barh(ypos, passed, color="#2d7f5e", label="pass")
    ax.barh(ypos, failed, left=passed, color="#b33939", label="fail")
    ax.set_yticks(list(ypos))
    ax.set_yticklabels(names, fontsize=8)
    ax.invert_yaxis()
    ax.set_xlabel("checks")
    ax.set_title("example census")
    ax.legend(loc="lower right")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def _hilbert_figure(reports, path):
    panels = []
    for rep in reports:
        for fig_data in rep.figures:
            panels.append(fig_data)
    if not panels:
        return None
    panels = panels[:9]
    ncols = min(3, len(panels))
    nrows = (len(panels) + ncols - 1) // ncols
    fig, axes = plt.subplots(nrows, ncols, figsize=(4 * ncols, 3 * nrows), squeeze=False)
    for k, data in enumerate(panels):
        ax = axes[k // ncols][k % ncols]
        hf = data["hf"]
        ds = list(range(len(hf)))
        ax.plot(ds, hf, "o", color="#2d4f7f", markersize=4, label="Hilbert function")
        hp_vals = [poly1_eval(list(data["hp"]), d) for d in ds]
        ax.plot(ds, hp_vals, "-", color="#b35900", linewidth=1.2,
                label=f"p(z) = {data['label']}")
        ax.set_title(data["ideal"], fontsize=9)
        ax.set_xlabel("degree", fontsize=8)
        ax.tick_params(labelsize=7)
        ax.legend(fontsize=7)
    for k in range(len(panels), nrows * ncols):
        axes[k // ncols][k % ncols].axis("off")
    fig.suptitle("Hilbert function stabilization onto the Hilbert polynomial", fontsize=11)
    fig.tight_layout(rect=[0, 0, 1, 0.96])
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def summary_table(reports):
    """Human summary, one line per example."""
    lines = []
    width = max((len(r.name) for r in reports), default=10) + 2
    for rep in reports:
        n_pass = sum(1 for res in rep.results if res.passed)
        n_all = len(rep.results)
        status = "PASS" if rep.passed else "FAIL"
        lines.append(f"{rep.name:<{width}} {status}  ({n_pass}/{n_all} checks)")
        if rep.error:
            lines.append(f"{'':<{width}} error: {rep.error}")
        for res in rep.results:
            if not res.passed:
                lines.append(
                    f"{'':<{width}}   {res.name} [{res.kind}] expected {res.expected}, got {res.computed}"
                )
    total = sum(len(r.results) for r in reports)
    good = sum(sum(1 for res in r.results if res.passed) for r in reports)
    lines.append(f"{'total':<{width}} {good}/{total} checks passed")
    return "\n".join(lines)
