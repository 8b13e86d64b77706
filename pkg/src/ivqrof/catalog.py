from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Any

import yaml

from .paths import _project_root

CATALOG_FILE = Path("docs") / "operator_catalog.yaml"


@dataclass(frozen=True, slots=True)
class OperatorEntry:
    name: str
    summary: str
    fold: str = ""
    closed_form: str = ""
    notes: tuple[str, ...] = ()


@dataclass(frozen=True, slots=True)
class OperatorCatalog:
    operators: tuple[OperatorEntry, ...]
    corrections: tuple[str, ...] = ()

    def get(self, name: str) -> OperatorEntry | None:
        return next((op for op in self.operators if op.name == name), None)

    @property
    def names(self) -> list[str]:
        return [op.name for op in self.operators]


# Used when docs/ is not shipped next to the package.
_BUILTIN: dict[str, str] = {
    "h_sum": "Hamacher sum",
    "h_prod": "Hamacher product",
    "h_scalar_mul": "Hamacher scalar multiple",
    "h_power": "Hamacher power",
    "hmm": "Unweighted Hamacher-Heronian mean",
    "hmm_phi1": "Algebraic Heronian mean (phi = 1)",
    "hhmwa": "Weighted arithmetic Hamacher-Heronian mean",
    "hhmga_dual": "Weighted geometric Hamacher-Heronian mean, dual form",
    "hhmga_literal": "Weighted geometric Hamacher-Heronian mean, printed form",
}


def _strings(value: Any) -> tuple[str, ...]:
    if isinstance(value, list):
        return tuple(str(v) for v in value if v is not None)
    return () if value is None else (str(value),)


def parse_catalog(data: Any) -> OperatorCatalog:
    if not isinstance(data, dict):
        data = {}
    entries = {name: OperatorEntry(name, summary) for name, summary in _BUILTIN.items()}
    for name, body in data.items():
        if name == "corrections" or not isinstance(body, dict):
            continue
        entries[name] = OperatorEntry(
            name=str(name),
            summary=str(body.get("summary") or _BUILTIN.get(name, "")),
            fold=str(body.get("fold") or ""),
            closed_form=str(body.get("closed_form") or ""),
            notes=_strings(body.get("notes")),
        )
    return OperatorCatalog(tuple(entries.values()), _strings(data.get("corrections")))


@lru_cache(maxsize=1)
def get_operator_catalog() -> OperatorCatalog:
    """Operator descriptions from docs/operator_catalog.yaml, falling back to names only."""
    root = _project_root(Path(__file__).resolve().parent.parent)
    yml = root / CATALOG_FILE
    data: Any = {}
    if yml.exists():
        try:
            data = yaml.safe_load(yml.read_text(encoding="utf-8")) or {}
        except yaml.YAMLError:
            data = {}
    return parse_catalog(data)


__all__ = ["OperatorEntry", "OperatorCatalog", "parse_catalog", "get_operator_catalog"]
