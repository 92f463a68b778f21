"""CSV and manifest serialization for the command-line runs.

Everything written here is meant to be replotted by other tools, so the
formats stay deliberately dumb: headered CSV with %.17g floats (repr
round-trip, hence bitwise-deterministic for identical inputs), complex
grids split into re_/im_ columns, phase-space grids in long form with
both the integer angle label nu and the angle value theta_nu = 2*pi*nu/N.
The run manifest is a JSON file listing every output with row/column
counts and a sha256 checksum; it is written last so its presence marks a
complete run.
"""

from __future__ import annotations

import hashlib
import json
import math
import os
from typing import Dict, List, Optional, Sequence

import numpy as np

from .measures import AXES, RS_PAIRINGS, CriteriaReport, MomentReport, pair_key
from .husimi import EntropyReport

FLOAT_FMT = "%.17g"

# pairings (x,y,z) (x,z,y) (y,z,x) -> s_x_z, s_y_z, s_x_y, s_z_y, s_y_x, s_z_x
S_COLUMNS = []
for _a, _b, _c in RS_PAIRINGS:
    S_COLUMNS.append((_a, _c))
    S_COLUMNS.append((_b, _c))

TOTH_KEYS = ["19", "20"] + ["21_" + c for c in AXES] + ["22_" + c for c in AXES]


def _fmt(value) -> str:
    if value is None:
        return "nan"
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    v = float(value)
    if math.isnan(v):
        return "nan"
    return FLOAT_FMT % v


def write_csv(path: str, header: Sequence[str], rows) -> Dict[str, int]:
    """Write rows (iterables matching header) and report row/col counts."""
    count = 0
    with open(path, "w", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")
            count += 1
    return {"rows": count, "cols": len(header)}


MOMENT_HEADER = (
    ["t"]
    + ["mean_" + a for a in AXES]
    + ["second_" + a for a in AXES]
    + ["var_" + a for a in AXES]
    + ["cov_" + pair_key(a, b) for a, b, _ in RS_PAIRINGS]
)


def moment_rows(reports: Sequence[MomentReport]):
    for m in reports:
        row = [m.t]
        row += [m.mean[a] for a in AXES]
        row += [m.second[a] for a in AXES]
        row += [m.var(a) for a in AXES]
        row += [m.cov[pair_key(a, b)] for a, b, _ in RS_PAIRINGS]
        yield row


CRITERIA_HEADER = (
    ["t"]
    + ["s_%s_%s" % (a, c) for a, c in S_COLUMNS]
    + ["r_" + a + b + c for a, b, c in RS_PAIRINGS]
    + ["e_sorensen_" + a for a in AXES]
    + ["e_toth_" + a for a in AXES]
    + ["toth_" + k for k in TOTH_KEYS]
    + ["snr_" + a for a in AXES]
    + ["flags"]
)


def criteria_rows(reports: Sequence[CriteriaReport]):
    for c in reports:
        row = [c.t]
        row += [c.s.get(a, {}).get(cc, math.nan) for a, cc in S_COLUMNS]
        row += [c.r.get(a + b + cc, math.nan) for a, b, cc in RS_PAIRINGS]
        row += [c.e_sorensen.get(a, math.nan) for a in AXES]
        row += [c.e_toth.get(a, math.nan) for a in AXES]
        row += [c.toth_lhs.get(k, math.nan) for k in TOTH_KEYS]
        row += [c.snr.get(a, math.nan) for a in AXES]
        row.append(";".join(sorted(c.flags)))
        yield row


ENTROPY_HEADER = ["t", "e_h", "e_q", "e_r", "i_h", "s_vn"]


def entropy_rows(reports: Sequence[EntropyReport]):
    for r in reports:
        yield [r.t, r.e_h, r.e_q, r.e_r, r.i_h, r.s_vn]


FIDELITY_HEADER = ["t", "fidelity"]


def grid_header(complex_values: bool) -> List[str]:
    base = ["mu", "nu", "theta_nu"]
    if complex_values:
        return base + ["re_value", "im_value"]
    return base + ["value"]


def grid_rows(labels: np.ndarray, grid: np.ndarray, complex_values: bool):
    n = len(labels)
    for i, mu in enumerate(labels):
        for k, nu in enumerate(labels):
            theta = 2.0 * math.pi * nu / n
            v = grid[i, k]
            if complex_values:
                yield [int(mu), int(nu), theta, v.real, v.imag]
            else:
                yield [int(mu), int(nu), theta, float(v)]


def snapshot_name(kind: str, t: float) -> str:
    return "%s_t%s.csv" % (kind, ("%g" % t))


def sha256_of(path: str) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            digest.update(chunk)
    return digest.hexdigest()


def write_manifest(out_dir: str, config_echo: dict, version: str,
                   wall_clock: float, files: Dict[str, Dict[str, int]],
                   extra: Optional[dict] = None) -> str:
    """Write manifest.json last; files maps name -> {rows, cols}."""
    listing = []
    for name in sorted(files):
        path = os.path.join(out_dir, name)
        entry = {"name": name, "sha256": sha256_of(path)}
        entry.update(files[name])
        listing.append(entry)
    payload = {
        "config": config_echo,
        "library_version": version,
        "wall_clock_seconds": wall_clock,
        "files": listing,
    }
    if extra:
        payload.update(extra)
    path = os.path.join(out_dir, "manifest.json")
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return path


def resolve_output_dir(flag_value: Optional[str]) -> str:
    """--out wins over PHASEC_OUTPUT_DIR which wins over the cwd."""
    out = flag_value or os.environ.get("PHASEC_OUTPUT_DIR") or "."
    os.makedirs(out, exist_ok=True)
    return out
