"""Scenario definitions: config-file parsing and the bundled catalog.

A scenario is one run of the simulator described by a flat key-value
config file (INI sections: scenario, well, packet1, packet2, spin,
grid, time, sweep, single, output).  The catalog directory ships one
config per reproduced figure.
"""

from __future__ import annotations

import configparser
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .config import PacketConfig, SpinConfig, WellConfig
from .errors import ScenarioValidationError

KINDS = ("single", "two_particle", "sweep", "frames")

SWEEP_PARAMETERS = ("packet2.s0", "packet2.k0", "spin.c")


@dataclass(frozen=True)
class GridSpec:
    """Grid defaults for a scenario; evaluation may auto-extend domains.

    n_x_2d must be a power of two plus one so emitted joint grids are an
    exact stride of the finer grid the densities are computed on.
    """

    x_max: float = 25.0
    n_x: int = 2049
    n_x_2d: int = 1025
    n_k: int | None = None  # None: auto per phase gate
    r_max: float = 30.0
    n_r: int = 2049

    def __post_init__(self):
        bits = self.n_x_2d - 1
        if bits <= 0 or bits & (bits - 1):
            raise ScenarioValidationError(
                [f"grid.n_x_2d must be 2^m + 1, got {self.n_x_2d}"]
            )


@dataclass(frozen=True)
class SingleTables:
    """Extra table requests for single-packet runs."""

    k0_values: tuple[float, ...] = tuple(float(k) for k in range(1, 21))
    pr_k0_values: tuple[float, ...] = (2.0, 6.0, 10.0, 14.0, 18.0)
    pr_tau_max: float = 1.0
    pr_tau_count: int = 21
    phi_n: int = 2001


@dataclass(frozen=True)
class SweepSpec:
    parameter: str = "packet2.s0"
    values: tuple[float, ...] = ()

    def __post_init__(self):
        if self.parameter not in SWEEP_PARAMETERS:
            raise ScenarioValidationError(
                [f"sweep.parameter must be one of {SWEEP_PARAMETERS}, got {self.parameter!r}"]
            )


@dataclass(frozen=True)
class Scenario:
    name: str
    kind: str
    mode: str = "approximate"
    well: WellConfig = field(default_factory=WellConfig)
    packet1: PacketConfig = PacketConfig(-5.0, 10.0)
    packet2: PacketConfig | None = None
    spin: SpinConfig = field(default_factory=SpinConfig)
    grid: GridSpec = field(default_factory=GridSpec)
    times: tuple[float, ...] = ()
    frame_count: int = 0
    frame_tau_max: float = 1.0
    sweep: SweepSpec | None = None
    single: SingleTables = field(default_factory=SingleTables)
    out_dir: str | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ScenarioValidationError(
                [f"scenario.kind must be one of {KINDS}, got {self.kind!r}"]
            )
        if self.kind in ("two_particle", "sweep", "frames") and self.packet2 is None:
            raise ScenarioValidationError(
                [f"scenario kind {self.kind!r} requires a [packet2] section"]
            )
        if self.kind == "sweep" and self.sweep is None:
            raise ScenarioValidationError(["sweep scenarios require a [sweep] section"])

    @property
    def packets(self) -> tuple[PacketConfig, ...]:
        if self.packet2 is None:
            return (self.packet1,)
        return (self.packet1, self.packet2)


def _floats(text: str) -> tuple[float, ...]:
    items = [t.strip() for t in text.replace("\n", ",").split(",")]
    return tuple(float(t) for t in items if t)


def parse_scenario(path: str | Path) -> Scenario:
    """Load one scenario from a structured key-value config file."""
    path = Path(path)
    cp = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    read = cp.read(path)
    if not read:
        raise FileNotFoundError(f"config file not found: {path}")
    return _scenario_from_parser(cp, default_name=path.stem)


def _scenario_from_parser(cp: configparser.ConfigParser, default_name: str) -> Scenario:
    sc = cp["scenario"] if cp.has_section("scenario") else {}
    name = sc.get("name", default_name)
    kind = sc.get("kind", "single")
    mode = sc.get("mode", "approximate")

    well = WellConfig(lam=cp.getfloat("well", "lambda", fallback=10.0))

    def packet(section: str) -> PacketConfig | None:
        if not cp.has_section(section):
            return None
        return PacketConfig(
            s0=cp.getfloat(section, "s0"), k0=cp.getfloat(section, "k0")
        )

    packet1 = packet("packet1") or PacketConfig(-5.0, 10.0)
    packet2 = packet("packet2")

    spin = SpinConfig(
        c=complex(cp.get("spin", "c", fallback="1")),
        d=complex(cp.get("spin", "d", fallback="0")),
    )

    grid = GridSpec(
        x_max=cp.getfloat("grid", "x_max", fallback=25.0),
        n_x=cp.getint("grid", "n_x", fallback=2049),
        n_x_2d=cp.getint("grid", "n_x_2d", fallback=1025),
        n_k=cp.getint("grid", "n_k", fallback=0) or None,
        r_max=cp.getfloat("grid", "r_max", fallback=30.0),
        n_r=cp.getint("grid", "n_r", fallback=2049),
    )

    times = _floats(cp.get("time", "times", fallback=""))
    frame_count = cp.getint("time", "frame_count", fallback=0)
    frame_tau_max = cp.getfloat("time", "tau_max", fallback=1.0)

    sweep = None
    if cp.has_section("sweep"):
        sweep = SweepSpec(
            parameter=cp.get("sweep", "parameter"),
            values=_floats(cp.get("sweep", "values")),
        )

    single = SingleTables(
        k0_values=_floats(cp.get("single", "k0_values", fallback=""))
        or SingleTables().k0_values,
        pr_k0_values=_floats(cp.get("single", "pr_k0_values", fallback=""))
        or SingleTables().pr_k0_values,
        pr_tau_max=cp.getfloat("single", "pr_tau_max", fallback=1.0),
        pr_tau_count=cp.getint("single", "pr_tau_count", fallback=21),
        phi_n=cp.getint("single", "phi_n", fallback=2001),
    )

    out_dir = cp.get("output", "dir", fallback=None)

    return Scenario(
        name=name,
        kind=kind,
        mode=mode,
        well=well,
        packet1=packet1,
        packet2=packet2,
        spin=spin,
        grid=grid,
        times=times,
        frame_count=frame_count,
        frame_tau_max=frame_tau_max,
        sweep=sweep,
        single=single,
        out_dir=out_dir,
    )


def catalog_names() -> list[str]:
    """Names of the bundled figure scenarios."""
    pkg = resources.files("homwell") / "catalog"
    return sorted(p.name[:-4] for p in pkg.iterdir() if p.name.endswith(".cfg"))


def load_catalog_scenario(name: str) -> Scenario:
    pkg = resources.files("homwell") / "catalog" / f"{name}.cfg"
    if not pkg.is_file():
        raise ScenarioValidationError(
            [f"unknown catalog scenario {name!r}; available: {', '.join(catalog_names())}"]
        )
    cp = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    cp.read_string(pkg.read_text(), source=f"catalog/{name}.cfg")
    return _scenario_from_parser(cp, default_name=name)
