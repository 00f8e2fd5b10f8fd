"""Named knot diagrams: the bundled table, user tables and the pretzel generator."""

from __future__ import annotations

import json
import os
from importlib import resources
from pathlib import Path

from .pd import PDCode, parse_pd, pretzel

TABLE_ENV = "NILFORM_TABLE"


class UnknownKnotError(KeyError):
    def __str__(self) -> str:
        return str(self.args[0])


class TableError(ValueError):
    pass


def bundled_table() -> dict[str, str]:
    text = resources.files("nilform").joinpath("data/knots.json").read_text(encoding="utf-8")
    return json.loads(text)


def read_table(path: str | os.PathLike) -> dict[str, str]:
    """A JSON object mapping knot names to PD strings."""
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise TableError(f"cannot read knot table {path}: {exc}") from exc
    if not isinstance(data, dict) or not all(isinstance(k, str) and isinstance(v, str) for k, v in data.items()):
        raise TableError(f"knot table {path} must map names to PD strings")
    return data


def load_table(path: str | os.PathLike | None = None) -> dict[str, str]:
    """Bundled entries overlaid by the user table (``path``, else $NILFORM_TABLE)."""
    table = bundled_table()
    user = path if path is not None else os.environ.get(TABLE_ENV)
    if user:
        table.update(read_table(user))
    return table


def knot_by_name(name: str, path: str | os.PathLike | None = None) -> PDCode:
    table = load_table(path)
    if name not in table:
        raise UnknownKnotError(f"unknown knot {name!r}; available: {', '.join(sorted(table))}")
    return parse_pd(table[name])


def parse_pretzel(text: str) -> tuple[int, int, int]:
    """"3,3,-3" -> (3, 3, -3)."""
    try:
        values = tuple(int(v) for v in text.replace(" ", "").split(","))
    except ValueError as exc:
        raise ValueError(f"bad pretzel parameters {text!r}") from exc
    if len(values) != 3:
        raise ValueError(f"pretzel needs three parameters, got {text!r}")
    return values


def pretzel_knot(text: str) -> PDCode:
    return pretzel(*parse_pretzel(text))


__all__ = [
    "TABLE_ENV",
    "TableError",
    "UnknownKnotError",
    "bundled_table",
    "knot_by_name",
    "load_table",
    "parse_pretzel",
    "pretzel_knot",
    "read_table",
]
