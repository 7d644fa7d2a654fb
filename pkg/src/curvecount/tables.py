"""Finite invariant tables and their file formats.

GV/GW tables map (genus g >= 0, degree d >= 1) to exact rationals; PT/DT
tables map (holomorphic Euler characteristic n, degree d >= 1).  Only nonzero
entries are stored.  Absence means zero *inside* the declared truncation
window and unknown outside it; `value()` enforces that distinction.

File formats: CSV with header ``g,d,value`` (GV/GW) or ``n,d,value`` (PT/DT),
values as exact "p/q" strings, rows sorted by (d, g|n); JSON mirrors the same
entries plus the truncation metadata.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .series import Scalar, _coerce, format_rational, parse_rational

__all__ = [
    "GvTable",
    "GwTable",
    "PtTable",
    "TruncationError",
    "read_table_csv",
    "write_table_csv",
    "read_table_json",
    "write_table_json",
    "table_to_json_dict",
    "table_from_json_dict",
]


class TruncationError(ValueError):
    """A value outside a table's declared truncation window was required."""


def _clean_entries(entries: Mapping[tuple[int, int], Scalar]) -> dict:
    return {k: v for k, v in ((k, _coerce(v)) for k, v in entries.items()) if v}


def _quintic_threshold(d: int) -> Fraction:
    # (d^2 + 5d + 10)/10; local to avoid a module cycle with bounds
    return Fraction(d * d + 5 * d + 10, 10)


@dataclass(frozen=True)
class _GenusTable:
    entries: dict[tuple[int, int], Fraction]
    g_max: int
    d_max: int
    castelnuovo_valid: bool = False

    def __post_init__(self):
        object.__setattr__(self, "entries", _clean_entries(self.entries))
        for (g, d) in self.entries:
            if not (0 <= g <= self.g_max and 1 <= d <= self.d_max):
                raise TruncationError(
                    f"entry ({g},{d}) outside window g<={self.g_max}, d<={self.d_max}")
            if self.castelnuovo_valid and self.kind == "gv" \
                    and g > _quintic_threshold(d):
                raise ValueError(
                    f"entry ({g},{d}) violates the declared genus threshold")

    def value(self, g: int, d: int) -> Fraction:
        if not (0 <= g <= self.g_max and 1 <= d <= self.d_max):
            raise TruncationError(
                f"({g},{d}) outside the known window g<={self.g_max}, d<={self.d_max}")
        return self.entries.get((g, d), Fraction(0))

    def sorted_items(self) -> list[tuple[tuple[int, int], Fraction]]:
        return sorted(self.entries.items(), key=lambda kv: (kv[0][1], kv[0][0]))


class GvTable(_GenusTable):
    """Gopakumar-Vafa table n_g^d; integral for honest BPS data."""

    kind = "gv"


class GwTable(_GenusTable):
    """Gromov-Witten table N_{g,d}; genuinely rational."""

    kind = "gw"


@dataclass(frozen=True)
class PtTable:
    """Stable-pair table P_{n,d} (the same shape stores DT tables I_{n,d})."""

    entries: dict[tuple[int, int], Fraction]
    d_max: int
    q_window: tuple[int, int]
    castelnuovo_valid: bool = False
    kind = "pt"

    def __post_init__(self):
        object.__setattr__(self, "entries", _clean_entries(self.entries))
        n_min, n_max = self.q_window
        if n_min > n_max:
            raise ValueError("empty q_window")
        for (n, d) in self.entries:
            if not (1 <= d <= self.d_max and n_min <= n <= n_max):
                raise TruncationError(
                    f"entry ({n},{d}) outside window d<={self.d_max}, "
                    f"n in [{n_min},{n_max}]")
            if self.castelnuovo_valid and n < 1 - _quintic_threshold(d):
                raise ValueError(
                    f"entry ({n},{d}) violates the declared vanishing threshold")

    def value(self, n: int, d: int) -> Fraction:
        n_min, n_max = self.q_window
        if not (1 <= d <= self.d_max and n_min <= n <= n_max):
            raise TruncationError(
                f"({n},{d}) outside the known window d<={self.d_max}, "
                f"n in [{n_min},{n_max}]")
        return self.entries.get((n, d), Fraction(0))

    def sorted_items(self) -> list[tuple[tuple[int, int], Fraction]]:
        return sorted(self.entries.items(), key=lambda kv: (kv[0][1], kv[0][0]))


_FIRST_COLUMN = {"gv": "g", "gw": "g", "pt": "n", "dt": "n"}


def write_table_csv(table, path: str, kind: str | None = None) -> None:
    kind = kind or table.kind
    lines = [f"{_FIRST_COLUMN[kind]},d,value"]
    for (a, d), v in table.sorted_items():
        lines.append(f"{a},{d},{format_rational(v)}")
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("\n".join(lines) + "\n")


def read_table_csv(path: str, kind: str, *, g_max: int | None = None,
                   d_max: int | None = None,
                   q_window: tuple[int, int] | None = None):
    """Read a table; truncation bounds default to the support's extent."""
    entries: dict[tuple[int, int], Fraction] = {}
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline().strip()
        expect = f"{_FIRST_COLUMN[kind]},d,value"
        if header != expect:
            raise ValueError(f"bad header {header!r}, expected {expect!r}")
        for line in fh:
            line = line.strip()
            if not line:
                continue
            a, d, v = line.split(",")
            entries[(int(a), int(d))] = parse_rational(v)
    return _build_table(kind, entries, g_max=g_max, d_max=d_max, q_window=q_window)


def _build_table(kind: str, entries: dict, *, g_max=None, d_max=None,
                 q_window=None, castelnuovo_valid: bool = False):
    firsts = [k[0] for k in entries] or [0]
    ds = [k[1] for k in entries] or [1]
    if d_max is None:
        d_max = max(ds)
    if kind in ("gv", "gw"):
        if g_max is None:
            g_max = max(firsts)
        cls = GvTable if kind == "gv" else GwTable
        return cls(entries, g_max, d_max, castelnuovo_valid)
    if q_window is None:
        q_window = (min(firsts), max(firsts))
    return PtTable(entries, d_max, q_window, castelnuovo_valid)


def table_to_json_dict(table, kind: str | None = None) -> dict:
    kind = kind or table.kind
    d = {
        "kind": kind,
        "d_max": table.d_max,
        "castelnuovo_valid": table.castelnuovo_valid,
        "entries": [[a, deg, format_rational(v)]
                    for (a, deg), v in table.sorted_items()],
    }
    if isinstance(table, PtTable):
        d["q_window"] = list(table.q_window)
    else:
        d["g_max"] = table.g_max
    return d


def table_from_json_dict(d: dict):
    entries = {(int(a), int(deg)): parse_rational(v) for a, deg, v in d["entries"]}
    kind = d["kind"]
    return _build_table(
        kind, entries, g_max=d.get("g_max"), d_max=d["d_max"],
        q_window=tuple(d["q_window"]) if "q_window" in d else None,
        castelnuovo_valid=bool(d.get("castelnuovo_valid", False)))


def write_table_json(table, path: str, kind: str | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(table_to_json_dict(table, kind), fh, sort_keys=True, indent=1)
        fh.write("\n")


def read_table_json(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return table_from_json_dict(json.load(fh))
