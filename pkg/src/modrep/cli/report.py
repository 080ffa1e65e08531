"""Report emission: canonical JSON, a text table and matplotlib figures."""

from __future__ import annotations

import json
from pathlib import Path


def to_json(report: dict) -> str:
    """Canonical JSON: sorted keys, fixed separators, trailing newline."""
    return json.dumps(report, sort_keys=True, indent=1, separators=(",", ": ")) + "\n"


def _fmt_layers(layers: list) -> str:
    return " | ".join(" + ".join(f"{m}x{s}" if m > 1 else s for s, m in layer.items()) for layer in layers)


def job_text(job: dict) -> list[str]:
    lines = [f"== {job.get('name', job.get('job'))} (seed {job.get('seed')})"]
    if "error" in job:
        e = job["error"]
        lines.append(f"  ERROR in stage {e['stage']}: {e['type']}: {e['message']}")
        return lines
    if "order" in job:
        o = job["order"]
        lines.append(f"  degree {o['degree']}, |G| = {o['order']}, |G|_p = {o['p_part']}, "
                     f"|H| = {o['pprime_order']}, |U| = {o['sylow_order']}")
    if "group" in job:
        g = job["group"]
        lines.append(f"  |G| = {g['order']} on {g['degree']} points, GF({g['q']}), "
                     f"Sylow order {g['sylow_order']} ({g['sylow_shape']}), induced dim {g['index']}")
    if "chop" in job and job["chop"]:
        for key in ("permutation_module", "induced_module"):
            c = job["chop"][key]
            facs = ", ".join(f"{s}^{m}" if m > 1 else s for s, m in c["factors"].items())
            lines.append(f"  {key.replace('_', ' ')} (dim {c['dim']}): {facs}")
    if "catalog" in job:
        cat = job["catalog"]
        simples = ", ".join(f"{s['label']}({s['dim']})" for s in cat["simples"])
        lines.append(f"  simples: {simples}; splitting field: {'yes' if cat['splitting'] else 'no'}")
    if "blocks" in job:
        blocks = "  ".join("{" + ", ".join(b["simples"]) + "}" + (" defect 0" if b["defect_zero"] else "")
                           for b in job["blocks"])
        lines.append(f"  blocks: {blocks}")
        pb = job["principal_block"]
        lines.append(f"  B0: {', '.join(pb['simples'])}; LL(B0) = {pb['loewy_length']}; "
                     f"Cartan {pb['cartan']} (det {pb['cartan_det']})")
    if "pims" in job:
        lines.append(f"  {'S':>6} {'dim P':>6} {'LL':>3} {'c':>4}  {'heart':<30} source")
        for r in job["pims"]:
            h = r.get("heart")
            heart = f"{h['verdict']} {h['summands']}" if h else "-"
            lines.append(f"  {r['label']:>6} {r['dim']:>6} {r['loewy_length']:>3} {str(r['c_invariant']):>4}  "
                         f"{heart:<30} {r['source']}")
        for r in job["pims"]:
            if "layers" in r and r["loewy_length"] <= 12:
                lines.append(f"    P({r['label']}): {_fmt_layers(r['layers'])}")
    for r in job.get("kmu", []):
        lines.append(f"  kmu {r['simple']}: fixed {r['fixed_dim']}, cofixed {r['cofixed_dim']}, "
                     f"Phi(U) restriction {'indecomposable' if r['frattini_restriction_indecomposable'] else 'decomposable'}"
                     f" -> {'pass' if r['passes'] else 'fail'}"
                     f"{'' if r['hypothesis_holds'] else ' (hypothesis violated: Sylow ' + r['sylow_shape'] + ')'}")
    if "llprop" in job:
        v = job["llprop"]
        lines.append(f"  LL(P(k)) = {v['ll_pk']}: case {v['case']} {v['details']}".rstrip())
    for r in job.get("c_multiplicativity", []):
        lines.append(f"  c({r['simple']}) = {r['c']} = {r['c_kN']} * {r['c_quotient']}: "
                     f"{'holds' if r['holds'] else 'FAILS'}")
    for r in job.get("expectations", []):
        mark = "ok  " if r["pass"] else "FAIL"
        lines.append(f"  [{mark}] {r['key']}: expected {r['expected']}, got {r['actual']}")
    if "status" in job:
        lines.append(f"  status: {job['status']}")
    return lines


def to_text(report: dict, timings: dict | None = None) -> str:
    lines = []
    for job in report["jobs"]:
        lines.extend(job_text(job))
    lines.append("")
    for row in report["summary"]:
        lines.append(f"{row['name']:<12} {row['status']}")
    lines.append(f"exit code {report['exit_code']}")
    if timings:
        lines.append("")
        lines.append("timings (s):")
        for name, t in timings.items():
            lines.append(f"  {name:<12} " + ", ".join(f"{k} {v:.2f}" for k, v in t.items()))
    return "\n".join(lines) + "\n"


# -- figures ---------------------------------------------------------------------

def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def loewy_figure(job: dict, path: Path) -> Path | None:
    """One column per PIM of the principal block; each row is a radical
    layer, drawn as boxes labelled by its simple constituents."""
    pims = [r for r in job.get("pims", []) if "layers" in r and r["label"] in job["principal_block"]["simples"]]
    if not pims:
        return None
    plt = _pyplot()
    depth = max(r["loewy_length"] for r in pims)
    width = max(max(sum(l.values()) for l in r["layers"]) for r in pims)
    fig, axes = plt.subplots(1, len(pims), figsize=(1.0 + 0.45 * width * len(pims), 1.2 + 0.32 * depth),
                             squeeze=False)
    labels = sorted({s for r in pims for l in r["layers"] for s in l})
    colors = {s: plt.cm.tab10(i % 10) for i, s in enumerate(labels)}
    for ax, r in zip(axes[0], pims):
        for i, layer in enumerate(r["layers"]):
            items = [s for s, m in layer.items() for _ in range(m)]
            x0 = -len(items) / 2
            for j, s in enumerate(items):
                ax.add_patch(plt.Rectangle((x0 + j + 0.05, -i - 0.45), 0.9, 0.9,
                                           facecolor=colors[s], alpha=0.35, edgecolor="black", lw=0.5))
                ax.text(x0 + j + 0.5, -i, s, ha="center", va="center", fontsize=7)
        ax.set_xlim(-width / 2 - 0.5, width / 2 + 0.5)
        ax.set_ylim(-depth + 0.3, 0.8)
        ax.set_title(f"P({r['label']}), dim {r['dim']}, LL {r['loewy_length']}", fontsize=8)
        ax.axis("off")
    fig.suptitle(f"{job['name']}: radical layers of the principal block PIMs", fontsize=9)
    fig.tight_layout()
    fig.savefig(path, dpi=120, metadata={"Software": None})
    plt.close(fig)
    return path


def cartan_figure(job: dict, path: Path) -> Path | None:
    """Heatmap of the full Cartan matrix, blocks outlined."""
    if "cartan" not in job:
        return None
    import numpy as np

    plt = _pyplot()
    C = np.array(job["cartan"]["matrix"])
    names = job["cartan"]["simples"]
    n = len(names)
    fig, ax = plt.subplots(figsize=(1.5 + 0.45 * n, 1.2 + 0.45 * n))
    ax.imshow(C, cmap="Blues")
    for i in range(n):
        for j in range(n):
            if C[i, j]:
                ax.text(j, i, str(C[i, j]), ha="center", va="center", fontsize=7,
                        color="white" if C[i, j] > C.max() / 2 else "black")
    ax.set_xticks(range(n), names, fontsize=7, rotation=90)
    ax.set_yticks(range(n), names, fontsize=7)
    ax.set_title(f"{job['name']}: Cartan matrix", fontsize=9)
    fig.tight_layout()
    fig.savefig(path, dpi=120, metadata={"Software": None})
    plt.close(fig)
    return path


def write_figures(report: dict, out: Path) -> list[str]:
    """Figures next to the report file ``out``: <stem>_<job>_loewy.png and
    <stem>_<job>_cartan.png."""
    written = []
    for job in report["jobs"]:
        if "error" in job or "name" not in job:
            continue
        for kind, fn in (("loewy", loewy_figure), ("cartan", cartan_figure)):
            target = out.with_name(f"{out.stem}_{job['name']}_{kind}.png")
            if fn(job, target) is not None:
                written.append(str(target))
    return written
