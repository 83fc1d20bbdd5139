"""Rendering of results as JSON, CSV or plain text for the command line

Floats are written with Python's shortest round-trip representation, so
identical runs give byte-identical output on every platform. Non-finite
floats (the +inf upper bound of gradient ascent, NaN of unconverged sweep
records) become JSON null.
"""
import csv
import io
import json
import math
from fractions import Fraction

import click
import numpy as np

OUTPUT_FORMATS = ("json", "csv", "plain")


def to_plain_data(obj):
    """Converts numpy scalars/arrays, Fractions and non-finite floats for JSON"""
    if isinstance(obj, dict):
        return {str(k): to_plain_data(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_plain_data(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [to_plain_data(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        value = float(obj)
        return value if math.isfinite(value) else None
    if isinstance(obj, Fraction):
        return "{}/{}".format(obj.numerator, obj.denominator)
    return obj


def dumps_json(obj):
    return json.dumps(to_plain_data(obj), indent=2) + "\n"


def dumps_csv(rows, columns):
    """Header line plus one line per row dict, in the given column order"""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        row = to_plain_data(row)
        writer.writerow(["" if row.get(col) is None else _cell(row.get(col)) for col in columns])
    return buf.getvalue()


def dumps_plain(obj):
    """`key: value` lines; lists are space separated"""
    lines = []
    for key, value in to_plain_data(obj).items():
        if isinstance(value, list):
            value = " ".join(str(v) for v in value)
        lines.append("{}: {}".format(key, value))
    return "\n".join(lines) + "\n"


def _cell(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, list):
        return " ".join(str(v) for v in value)
    return value


def render(obj, fmt, columns=None):
    """Renders a flat result dict in `fmt`; `columns` fixes the CSV column order"""
    if fmt == "json":
        return dumps_json(obj)
    if fmt == "csv":
        return dumps_csv([obj], columns or list(obj.keys()))
    if fmt == "plain":
        return dumps_plain(obj)
    raise ValueError("unknown output format {!r}".format(fmt))


def emit(text, output_path=None):
    """Writes `text` to `output_path`, or to stdout when no path is given"""
    if output_path:
        with open(output_path, "w", encoding="utf-8") as f:
            f.write(text)
    else:
        click.echo(text, nl=False)
