"""Loader for the checked-in reference optima used by the reproduction command."""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources


@dataclass(frozen=True)
class ReferenceCase:
    """One tabulated optimum: family, theta, size, design, criterion value.

    ``design_digits`` and ``imspe_digits`` keep the full decimal strings as
    transcribed; ``design`` and ``imspe`` are their binary64 parses, which is
    what computed results are compared against.
    """

    table: str
    family: str
    theta: float
    n: int
    design: tuple
    design_digits: tuple
    imspe: float
    imspe_digits: str
    imspe_rtol: float
    coord_atol: float
    note: str = ""


def _load_raw():
    payload = resources.files("imspe.data").joinpath("reference_tables.json")
    return json.loads(payload.read_text(encoding="utf-8"))


def load_reference_cases(table="all"):
    """Reference cases for one table ("1", "2", or an int) or "all", in file order."""
    raw = _load_raw()
    wanted = None if str(table) == "all" else str(table)
    if wanted is not None and wanted not in raw["tables"]:
        raise ValueError(f"unknown table {table!r}; expected 1, 2, or 'all'")
    cases = []
    for key, block in raw["tables"].items():
        if wanted is not None and key != wanted:
            continue
        for entry in block["cases"]:
            digits = tuple(entry["design"])
            cases.append(
                ReferenceCase(
                    table=key,
                    family=entry["family"],
                    theta=float(entry["theta"]),
                    n=int(entry["n"]),
                    design=tuple(float(c) for c in digits),
                    design_digits=digits,
                    imspe=float(entry["imspe"]),
                    imspe_digits=entry["imspe"],
                    imspe_rtol=float(block["imspe_rtol"]),
                    coord_atol=float(block["coord_atol"]),
                    note=entry.get("note", ""),
                )
            )
    return cases


def reference_notes():
    """The free-text provenance note stored alongside the tables."""
    return _load_raw()["notes"]


__all__ = ["ReferenceCase", "load_reference_cases", "reference_notes"]
