"""Output artifacts: CSV sample files and the versioned JSON report bundle.

Floats are written with 17 significant digits so parsing the file back
reproduces the binary values; nothing here depends on wall-clock time or
locale, which keeps repeated runs bit-identical.
"""

import json
from dataclasses import dataclass

import numpy as np

SCHEMA_VERSION = 1


def fmt(x):
    """17-significant-digit float formatting (round-trip safe)."""
    return f"{float(x):.17g}"


def _write_lines(path, lines):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for line in lines:
            fh.write(line)
            fh.write("\n")


def trajectory_csv(path, traj, d):
    """Rows: t, re_rho_i_j..., im_rho_i_j..., min_eig, trace_err."""
    cols = ["t"]
    cols += [f"re_rho_{i}_{j}" for i in range(d) for j in range(d)]
    cols += [f"im_rho_{i}_{j}" for i in range(d) for j in range(d)]
    cols += ["min_eig", "trace_err"]
    lines = [",".join(cols)]
    for k, t in enumerate(traj.times):
        rho = traj.states[k]
        row = [fmt(t)]
        row += [fmt(v) for v in rho.real.ravel()]
        row += [fmt(v) for v in rho.imag.ravel()]
        row += [fmt(traj.min_eigenvalue[k]), fmt(traj.trace_error[k])]
        lines.append(",".join(row))
    _write_lines(path, lines)


def measure_csv(path, times, g_samples, table, grid_stride=2):
    """Rows: t, g, gamma_q..., gamma_tilde_q... (q ascending)."""
    qs = list(table.q_values)
    cols = ["t", "g"]
    cols += [f"gamma_{q}" for q in qs]
    cols += [f"gamma_tilde_{q}" for q in qs]
    lines = [",".join(cols)]
    for k, t in enumerate(times):
        ti = k * grid_stride
        row = [fmt(t), fmt(g_samples[k])]
        row += [fmt(table.gamma[qi, ti]) for qi in range(len(qs))]
        row += [fmt(table.gamma_tilde[qi, ti]) for qi in range(len(qs))]
        lines.append(",".join(row))
    _write_lines(path, lines)


def rates_csv(path, table):
    """Rows: t, then re/im Lambda_q, re/im tilde-Lambda_q, gamma_q, gamma_tilde_q per q."""
    qs = list(table.q_values)
    cols = ["t"]
    for q in qs:
        cols += [f"re_lambda_{q}", f"im_lambda_{q}",
                 f"re_lambda_tilde_{q}", f"im_lambda_tilde_{q}",
                 f"gamma_{q}", f"gamma_tilde_{q}"]
    lines = [",".join(cols)]
    for k, t in enumerate(table.times):
        row = [fmt(t)]
        for qi in range(len(qs)):
            lam = table.lam[qi, k]
            lamt = table.lam_tilde[qi, k]
            row += [fmt(lam.real), fmt(lam.imag), fmt(lamt.real), fmt(lamt.imag),
                    fmt(table.gamma[qi, k]), fmt(table.gamma_tilde[qi, k])]
        lines.append(",".join(row))
    _write_lines(path, lines)


def sweep_csv(path, parameter, values, reports):
    lines = [",".join([parameter, "n_rhp", "integral", "truncation_flag"])]
    for v, rep in zip(values, reports):
        lines.append(",".join([fmt(v), fmt(rep.n_rhp), fmt(rep.integral),
                               "1" if rep.truncation_flag else "0"]))
    _write_lines(path, lines)


@dataclass
class ReportBundle:
    """Everything a run produces, JSON-serializable and lossless."""

    config: dict
    trajectory_summary: dict | None
    divisibility: dict | None
    warnings: list

    def to_dict(self):
        return {
            "schema_version": SCHEMA_VERSION,
            "config": self.config,
            "trajectory_summary": self.trajectory_summary,
            "divisibility": self.divisibility,
            "warnings": self.warnings,
        }

    @classmethod
    def from_dict(cls, data):
        if data.get("schema_version") != SCHEMA_VERSION:
            raise ValueError(f"unsupported schema_version {data.get('schema_version')!r}")
        return cls(
            config=data["config"],
            trajectory_summary=data["trajectory_summary"],
            divisibility=data["divisibility"],
            warnings=data["warnings"],
        )


def trajectory_summary(traj, d):
    final = traj.states[-1]
    return {
        "points": int(traj.times.size),
        "t_max": float(traj.times[-1]),
        "d": int(d),
        "final_state_re": [[float(x) for x in row] for row in final.real],
        "final_state_im": [[float(x) for x in row] for row in final.imag],
        "min_eigenvalue": float(np.min(traj.min_eigenvalue)),
        "max_trace_error": float(np.max(traj.trace_error)),
    }


def divisibility_dict(report):
    return {
        "t_samples": [float(t) for t in report.t_samples],
        "g_values": [float(g) for g in report.g_values],
        "integral": float(report.integral),
        "n_rhp": float(report.n_rhp),
        "min_rate_seen": float(report.min_rate_seen),
        "truncation_flag": bool(report.truncation_flag),
    }


def run_warnings(traj=None, report=None):
    notes = []
    if traj is not None:
        for t, val in traj.positivity_warnings:
            notes.append({"kind": "positivity", "t": float(t), "min_eigenvalue": float(val)})
    if report is not None and report.truncation_flag:
        notes.append({"kind": "truncation",
                      "detail": "tail of the g integral not converged at the horizon"})
    return notes


def bundle_json(path, bundle: ReportBundle):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(bundle.to_dict(), fh, indent=2, allow_nan=True)
        fh.write("\n")


def load_bundle(path) -> ReportBundle:
    with open(path, "r", encoding="utf-8") as fh:
        return ReportBundle.from_dict(json.load(fh))
