"""Partially persistent memory cells (fat node method).

A VersionStore hands out cells; each cell keeps its full write history as
parallel (version, value) lists.  Reads at any past version bisect the
history; writes go to the currently open version (monotone), collapsing
repeated writes within one version.  A global write counter supports the
"queries perform zero writes" checks.
"""

from __future__ import annotations

from bisect import bisect_right
from typing import Any, List


class Cell:
    __slots__ = ("versions", "values", "initial")

    def __init__(self, initial: Any = None):
        self.versions: List[int] = []
        self.values: List[Any] = []
        self.initial = initial

    def history_len(self) -> int:
        return len(self.versions)


class VersionStore:
    def __init__(self):
        self.current = 0  # no version open yet
        self.writes = 0
        self.cells = 0

    def new_version(self) -> int:
        self.current += 1
        return self.current

    def new_cell(self, initial: Any = None) -> Cell:
        self.cells += 1
        return Cell(initial)

    def write(self, cell: Cell, value: Any) -> None:
        if self.current == 0:
            raise RuntimeError("write with no open version")
        self.writes += 1
        vs = cell.versions
        if vs and vs[-1] == self.current:
            cell.values[-1] = value
        else:
            vs.append(self.current)
            cell.values.append(value)

    def read(self, cell: Cell, version: int | None = None) -> Any:
        """Value of the cell as of `version` (default: latest)."""
        vs = cell.versions
        if version is None:
            return cell.values[-1] if vs else cell.initial
        i = bisect_right(vs, version)
        return cell.values[i - 1] if i else cell.initial

    def history_total(self) -> int:
        # Not tracked per cell centrally; exposed via writes, which counts
        # every write() call (collapsed or not).
        return self.writes
