"""
Excel Handler Module

This module turns codecosets tables into pandas DataFrames and writes
them as workbook sheets: the matphi table, the reduced basis, the level
statistics and the weight distribution.
"""

import logging
from typing import Dict, Iterable, List, Sequence

import pandas as pd
from openpyxl.styles import Font
from openpyxl.utils import get_column_letter

from equiv import LevelStats
from matphi import MatphiTable
from rbasis import ReducedBasis

logger = logging.getLogger(__name__)

FLAG_GREEN = "00AA00"
FLAG_RED = "AA0000"


def matphi_frame(table: MatphiTable) -> pd.DataFrame:
    """
    One row per canonical form with its vector, flag and 1-based phi row.

    Args:
        table: The matphi table

    Returns:
        DataFrame indexed 1..|N|
    """
    rows = []
    for w, v, flag, phi in zip(table.words, table.vectors, table.flags, table.phi):
        row = {"N": str(w), "vector": str(v), "flag": int(flag)}
        row.update({f"x{var + 1}": target + 1 for var, target in enumerate(phi)})
        rows.append(row)
    frame = pd.DataFrame(rows)
    frame.index = range(1, len(rows) + 1)
    return frame


def basis_frame(basis: ReducedBasis) -> pd.DataFrame:
    rows = [
        {"level": b.level, "head": str(b.head), "tail": str(b.tail)}
        for b in basis.binomials
    ]
    frame = pd.DataFrame(rows, columns=["level", "head", "tail"])
    frame.index = range(1, len(rows) + 1)
    return frame


def level_stats_frame(stats: Iterable[LevelStats]) -> pd.DataFrame:
    """
    Heads and Irreds rows per level, one column per position.

    Args:
        stats: Level statistics, one per level

    Returns:
        DataFrame with a (statistic, level) row index
    """
    rows: Dict[tuple, Sequence[int]] = {}
    n = 0
    for s in stats:
        rows[("Heads", s.level)] = s.heads
        rows[("Irreds", s.level)] = s.irreds
        n = len(s.heads)
    return pd.DataFrame(
        [list(values) for values in rows.values()],
        index=pd.MultiIndex.from_tuples(list(rows), names=["statistic", "level"]),
        columns=[str(i) for i in range(1, n + 1)],
    )


def weight_frame(distribution: Sequence[int]) -> pd.DataFrame:
    frame = pd.DataFrame({"weight": range(len(distribution)), "codewords": list(distribution)})
    return frame.set_index("weight")


class ExcelHandler:
    """Collects DataFrames as named sheets and saves them as one workbook."""

    def __init__(self, filepath: str):
        """
        Initialize the Excel handler.

        Args:
            filepath: Path of the workbook to write
        """
        self.filepath = filepath
        self.sheets: Dict[str, pd.DataFrame] = {}

    def add_sheet(self, name: str, frame: pd.DataFrame) -> None:
        self.sheets[name[:31]] = frame

    def add_matphi(self, table: MatphiTable) -> None:
        self.add_sheet("matphi", matphi_frame(table))

    def add_reduced_basis(self, basis: ReducedBasis) -> None:
        self.add_sheet("N", pd.DataFrame({"N": [str(w) for w in basis.words]}, index=range(1, len(basis.words) + 1)))
        self.add_sheet("G", basis_frame(basis))

    def add_level_stats(self, stats: List[LevelStats]) -> None:
        self.add_sheet("level_stats", level_stats_frame(stats))

    def add_weight_distribution(self, distribution: Sequence[int]) -> None:
        self.add_sheet("weights", weight_frame(distribution))

    def _style(self, writer: pd.ExcelWriter) -> None:
        """Bold headers, and flags in green (leader within t) or red."""
        for name, frame in self.sheets.items():
            sheet = writer.sheets[name]
            for cell in sheet[1]:
                cell.font = Font(bold=True)

            if "flag" not in frame.columns:
                continue
            offset = frame.index.nlevels
            letter = get_column_letter(offset + list(frame.columns).index("flag") + 1)
            for row, flag in enumerate(frame["flag"], start=2):
                sheet[f"{letter}{row}"].font = Font(color=FLAG_GREEN if flag else FLAG_RED)

    def save(self) -> None:
        """Save the workbook."""
        if not self.sheets:
            logger.warning(f"No sheets to write to {self.filepath}")
            return

        with pd.ExcelWriter(self.filepath, engine="openpyxl") as writer:
            for name, frame in self.sheets.items():
                frame.to_excel(writer, sheet_name=name)
            self._style(writer)
        logger.info(f"Wrote {len(self.sheets)} sheet(s) to {self.filepath}")
