"""Readers for the valim CSV shape: one # comment line, names, float rows."""

import csv
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Table:
    path: str
    header: str
    names: tuple
    columns: dict

    def config(self) -> dict:
        """key=value tokens from the comment line, e.g. {'y': '1.5'}."""
        out = {}
        for token in self.header.split():
            if "=" in token:
                key, _, val = token.partition("=")
                out[key] = val
        return out


def load_table(path) -> Table:
    path = str(path)
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    header = ""
    if rows and rows[0] and rows[0][0].startswith("#"):
        header = ",".join(rows.pop(0))
    if not rows or not rows[0]:
        raise ValueError(f"empty CSV: {path}")
    names = tuple(rows.pop(0))
    body = [r for r in rows if r]
    if not body:
        raise ValueError(f"empty CSV: {path}")
    if any(len(r) != len(names) for r in body):
        raise ValueError(f"ragged rows in {path}")
    try:
        data = np.array(body, dtype=float)
    except ValueError:
        raise ValueError(f"non-numeric cell in {path}") from None
    columns = {name: data[:, i] for i, name in enumerate(names)}
    return Table(path=path, header=header, names=names, columns=columns)


def require(table: Table, *names) -> None:
    for name in names:
        if name not in table.columns:
            raise ValueError(f"{table.path}: missing column {name!r}")


def prefixed(table: Table, prefix: str) -> list:
    """Column names starting with the prefix, in file order."""
    return [n for n in table.names if n.startswith(prefix)]
