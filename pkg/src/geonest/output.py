"""Result files: dead_points.csv, posterior.csv and summary.txt.

Floats are written with 17 significant digits so every value round-trips
exactly. Files are written to a temporary name and renamed into place.
"""

import os
import tempfile
from pathlib import Path

import numpy as np

DEAD_POINTS_FILE = "dead_points.csv"
POSTERIOR_FILE = "posterior.csv"
SUMMARY_FILE = "summary.txt"


def fmt_value(v):
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return "%.17g" % v
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(fmt_value(x) for x in v) + "]"
    return str(v)


def _atomic_write(path, text):
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _rows(arr):
    return "".join(",".join("%.17g" % v for v in row) + "\n" for row in arr.tolist())


def summary_items(result, config):
    items = [
        ("log_z", result.log_z),
        ("log_z_err", result.log_z_err),
        ("information_nats", result.information_nats),
        ("n_iterations", result.n_iterations),
        ("acceptance_rate", result.acceptance_rate),
        ("likelihood_evals", result.likelihood_evals),
        ("seed", config.sampler.seed),
        ("truncated", result.truncated),
        ("stop_reason", result.diagnostics.get("stop_reason", "")),
        ("proposals", result.diagnostics.get("proposals", 0)),
        ("out_of_domain", result.diagnostics.get("out_of_domain", 0)),
    ]
    return items + list(config.effective_items())


def write_outputs(result, config, names, out_dir=None):
    """Write the three result files into ``out_dir`` (default ``config.output_dir``).

    Returns the list of written paths. Raises ``OSError`` naming the path on
    I/O failure.
    """
    out = Path(out_dir if out_dir is not None else config.output_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise OSError(exc.errno, f"cannot create output directory {str(out)!r}: {exc.strerror}")
    names = list(names)

    n = result.n_iterations
    dead = np.column_stack([np.arange(1, n + 1), result.dead_log_l, result.dead_log_x,
                            result.dead_log_weight, result.dead_coords]) if n else np.zeros((0, 4))
    dead_lines = ["iter,log_l,log_x,log_weight," + ",".join(names) + "\n"]
    for row in dead.tolist():
        dead_lines.append(str(int(row[0])) + "," + ",".join("%.17g" % v for v in row[1:]) + "\n")

    paths = []
    files = [
        (DEAD_POINTS_FILE, "".join(dead_lines)),
        (POSTERIOR_FILE, ",".join(names) + "\n" + _rows(result.posterior_samples)),
        (SUMMARY_FILE, "".join(f"{k} = {fmt_value(v)}\n"
                               for k, v in summary_items(result, config))),
    ]
    for fname, text in files:
        path = out / fname
        try:
            _atomic_write(path, text)
        except OSError as exc:
            raise OSError(exc.errno, f"cannot write {str(path)!r}: {exc.strerror}")
        paths.append(path)
    return paths


def read_summary(path):
    """Parse ``key = value`` lines into a dict of strings."""
    out = {}
    for line in Path(path).read_text().splitlines():
        if " = " in line:
            k, v = line.split(" = ", 1)
            out[k.strip()] = v.strip()
    return out
