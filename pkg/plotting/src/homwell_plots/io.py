"""Readers for the simulator's CSV output contract.

Every file starts with a commented '# key=value' header block.  Three
body layouts exist: manifests (index, tau, statistics, file), 2D grids
(first row/column carry coordinates), and plain column tables.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

STATISTICS_ORDER = ("boson", "fermion", "distinguishable")


class ManifestError(ValueError):
    """Manifest is malformed, inconsistent, or references missing files."""


def read_header(path: Path) -> dict[str, str]:
    header: dict[str, str] = {}
    with open(path) as fh:
        for line in fh:
            if not line.startswith("#"):
                break
            key, _, value = line[1:].strip().partition("=")
            header[key.strip()] = value.strip()
    return header


def _body_lines(path: Path) -> list[str]:
    with open(path) as fh:
        return [line for line in fh if not line.startswith("#")]


@dataclass(frozen=True)
class FrameEntry:
    index: int
    tau: float
    statistics: str
    path: Path


@dataclass(frozen=True)
class FrameManifest:
    """Ordered list of density frames with per-statistics time tracks."""

    entries: tuple[FrameEntry, ...]

    @classmethod
    def load(cls, path: str | Path) -> "FrameManifest":
        path = Path(path)
        if not path.is_file():
            raise ManifestError(f"manifest not found: {path}")
        rows = list(csv.DictReader(_body_lines(path)))
        entries = []
        for row in rows:
            entry = FrameEntry(
                index=int(row["index"]),
                tau=float(row["tau"]),
                statistics=row["statistics"],
                path=path.parent / row["file"],
            )
            if not entry.path.is_file():
                raise ManifestError(f"manifest references missing file: {entry.path}")
            entries.append(entry)
        manifest = cls(tuple(entries))
        manifest._check_time_order()
        return manifest

    def _check_time_order(self) -> None:
        for stat in self.statistics_tags():
            taus = [e.tau for e in sorted(self.frames_for(stat), key=lambda e: e.index)]
            if any(b <= a for a, b in zip(taus, taus[1:])):
                raise ManifestError(
                    f"frame times for {stat!r} are not strictly increasing: {taus}"
                )

    def statistics_tags(self) -> list[str]:
        seen = []
        for e in self.entries:
            if e.statistics not in seen:
                seen.append(e.statistics)
        return seen

    def times(self) -> list[float]:
        seen = []
        for e in self.entries:
            if e.tau not in seen:
                seen.append(e.tau)
        return seen

    def frames_for(self, statistics: str) -> list[FrameEntry]:
        return [e for e in self.entries if e.statistics == statistics]

    def entry(self, tau: float, statistics: str) -> FrameEntry:
        for e in self.entries:
            if e.statistics == statistics and e.tau == tau:
                return e
        raise ManifestError(f"no frame for statistics={statistics!r} at tau={tau}")


@dataclass(frozen=True)
class GridFrame:
    """A sampled 2D density: x1 rows, x2 columns."""

    x1: np.ndarray
    x2: np.ndarray
    values: np.ndarray
    header: dict[str, str]


def load_grid(path: str | Path) -> GridFrame:
    path = Path(path)
    raw = np.loadtxt(_body_lines(path), delimiter=",", ndmin=2)
    if raw.shape[0] < 2 or raw.shape[1] < 2:
        raise ValueError(f"grid file too small: {path}")
    return GridFrame(
        x1=raw[1:, 0], x2=raw[0, 1:], values=raw[1:, 1:], header=read_header(path)
    )


@dataclass(frozen=True)
class Table:
    """Column table with the header echo attached."""

    columns: dict[str, np.ndarray]
    header: dict[str, str]

    def __getitem__(self, name: str) -> np.ndarray:
        return self.columns[name]


def load_table(path: str | Path) -> Table:
    path = Path(path)
    rows = list(csv.DictReader(_body_lines(path)))
    if not rows:
        raise ValueError(f"table has no rows: {path}")
    columns = {
        name: np.array([float(r[name]) for r in rows]) for name in rows[0].keys()
    }
    return Table(columns=columns, header=read_header(path))
