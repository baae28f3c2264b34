"""CSV contract with the dtqw sweep harness.

The renderer never imports the simulator; this column list *is* the
interface, and any drift from it is a hard error.
"""

import csv

EXPECTED_COLUMNS = [
    "experiment",
    "topology",
    "size",
    "theta",
    "lambda",
    "t",
    "mid",
    "qd",
    "mutual_info",
    "s_coin",
    "s_pos",
    "s_joint",
    "qd_alpha",
    "qd_beta",
    "degenerate_marginal",
]

_FLOAT_COLUMNS = ("theta", "lambda", "mid", "qd", "mutual_info",
                  "s_coin", "s_pos", "s_joint", "qd_alpha", "qd_beta")
_INT_COLUMNS = ("size", "t", "degenerate_marginal")


class SchemaError(ValueError):
    """The CSV header or a cell does not match the harness contract."""


def read_rows(path):
    """Load and type a harness CSV, validating the header exactly."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise SchemaError(f"{path}: file is empty, expected a header row")
        if header != EXPECTED_COLUMNS:
            raise SchemaError(
                f"{path}: header {header!r} does not match the harness "
                f"schema {EXPECTED_COLUMNS!r}"
            )
        rows = []
        for lineno, values in enumerate(reader, start=2):
            if len(values) != len(EXPECTED_COLUMNS):
                raise SchemaError(
                    f"{path}:{lineno}: expected {len(EXPECTED_COLUMNS)} "
                    f"fields, got {len(values)}"
                )
            row = dict(zip(EXPECTED_COLUMNS, values))
            try:
                for key in _FLOAT_COLUMNS:
                    row[key] = float(row[key])
                for key in _INT_COLUMNS:
                    row[key] = int(row[key])
            except ValueError as exc:
                raise SchemaError(f"{path}:{lineno}: {exc}") from None
            rows.append(row)
    return rows
