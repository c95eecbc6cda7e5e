import numpy as np
import pytest

STATS = ("boson", "fermion", "distinguishable")


def write_grid(path, tau, stat, n=33, offset=0.0):
    x = np.linspace(-10.0, 10.0, n)
    dens = np.exp(-((x[:, None] - offset) ** 2) - (x[None, :] + offset) ** 2)
    with open(path, "w") as fh:
        fh.write(f"# name=synthetic\n# tau={tau!r}\n# statistics={stat}\n")
        fh.write(",".join([repr(0.0)] + [repr(float(v)) for v in x]) + "\n")
        for xi, row in zip(x, dens):
            fh.write(",".join([repr(float(xi))] + [f"{v:.9g}" for v in row]) + "\n")
    return path


def write_manifest(out_dir, times, stats=STATS, n=33):
    rows = []
    for idx, tau in enumerate(times):
        for stat in stats:
            name = f"frame_{idx:04d}_{stat}.csv"
            write_grid(out_dir / name, tau, stat, n=n, offset=5.0 - 4.0 * tau)
            rows.append((idx, tau, stat, name))
    manifest = out_dir / "manifest.csv"
    with open(manifest, "w") as fh:
        fh.write("# name=synthetic\n")
        fh.write("index,tau,statistics,file\n")
        for idx, tau, stat, name in rows:
            fh.write(f"{idx},{float(tau)!r},{stat},{name}\n")
    return manifest


def write_psep(path, tau):
    r = np.linspace(0.0, 20.0, 101)
    boson = np.exp(-(r**2))
    fermion = np.exp(-((r - 10.0) ** 2))
    disting = 0.5 * (boson + fermion)
    with open(path, "w") as fh:
        fh.write(f"# name=synthetic\n# tau={tau!r}\n")
        fh.write("r,boson,fermion,distinguishable\n")
        for i in range(r.size):
            fh.write(f"{float(r[i])!r},{float(boson[i])!r},{float(fermion[i])!r},{float(disting[i])!r}\n")
    return path


@pytest.fixture()
def scenario_dir(tmp_path):
    """Synthetic scenario output following the simulator's CSV contract."""
    out = tmp_path / "scenario"
    out.mkdir()
    write_manifest(out, [0.0, 0.25, 0.5])
    write_psep(out / "psep_0000.csv", 0.0)
    write_psep(out / "psep_0001.csv", 0.25)
    return out
