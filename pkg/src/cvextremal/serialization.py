"""Text formats for states and tabular outputs.

* covariance matrix: CSV, row-major, preceded by a header line ``n=<modes>``
* standard-form record: ``a,b,c+,c-``
* coordinate record: ``mu1,mu2,mu,delta``

Floats are written with ``repr`` so that a round trip is exact and output
is byte-reproducible.
"""
import csv
import io
import math
import os

import numpy as np

from .errors import ConfigError, InvalidMatrixError
from .invariants import InvariantCoordinates
from .symplectic import StandardForm, check_symmetric


def _fmt(x):
    if isinstance(x, (bool, np.bool_)):
        return "1" if x else "0"
    if isinstance(x, (float, np.floating)):
        return repr(float(x))
    if x is None:
        return ""
    return str(x)


def format_matrix(sigma):
    sigma = np.asarray(sigma, dtype=float)
    lines = [f"n={sigma.shape[0] // 2}"]
    lines += [",".join(repr(float(v)) for v in row) for row in sigma]
    return "\n".join(lines) + "\n"


def parse_matrix(text):
    """Covariance matrix from its CSV form; the ``n=`` header is required."""
    rows = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not rows or not rows[0].startswith("n="):
        raise InvalidMatrixError("matrix CSV must start with a header 'n=<modes>'")
    try:
        n = int(rows[0][2:])
        data = np.array([[float(v) for v in r.split(",")] for r in rows[1:]], dtype=float)
    except ValueError as exc:
        raise InvalidMatrixError(f"malformed matrix CSV: {exc}") from None
    if n < 1 or data.shape != (2 * n, 2 * n):
        raise InvalidMatrixError(f"header n={n} does not match a {data.shape} body")
    check_symmetric(data)
    return data


def format_standard_form(sf):
    return ",".join(repr(float(v)) for v in sf.astuple())


def _record(text, size, what):
    parts = [p.strip() for p in text.strip().split(",")]
    if len(parts) != size:
        raise ConfigError(f"{what} record needs {size} comma-separated numbers, got {text!r}")
    try:
        vals = [float(p) for p in parts]
    except ValueError:
        raise ConfigError(f"non-numeric {what} record {text!r}") from None
    if not all(math.isfinite(v) for v in vals):
        raise ConfigError(f"non-finite entry in {what} record {text!r}")
    return vals


def parse_standard_form(text):
    return StandardForm(*_record(text, 4, "a,b,c+,c-"))


def format_coordinates(c):
    return ",".join(repr(float(v)) for v in c.astuple())


def parse_coordinates(text):
    return InvariantCoordinates(*_record(text, 4, "mu1,mu2,mu,delta"))


def load_state(source):
    """Covariance matrix from a file path, matrix CSV text or a standard-form record."""
    text = source
    if os.path.exists(source):
        with open(source, encoding="utf-8") as fh:
            text = fh.read()
    body = text.strip()
    if body.startswith("n=") or "\n" in body:
        return parse_matrix(text)
    return parse_standard_form(body).matrix()


def write_table(path, header, rows, metadata=None):
    """CSV with ``#key=value`` metadata lines, a header row and the rows in order.

    ``path`` may be ``None`` to get the text back without writing.
    """
    buf = io.StringIO()
    for key, value in (metadata or {}).items():
        buf.write(f"# {key}={_fmt(value)}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt(v) for v in row])
    text = buf.getvalue()
    if path is not None:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    return text


def read_table(path):
    """``(metadata, header, rows)`` of a file written by :func:`write_table`; values stay strings."""
    meta, lines = {}, []
    with open(path, encoding="utf-8") as fh:
        for ln in fh:
            if ln.startswith("#"):
                key, _, value = ln[1:].strip().partition("=")
                meta[key] = value
            else:
                lines.append(ln)
    reader = csv.reader(lines)
    header = next(reader)
    return meta, header, list(reader)
