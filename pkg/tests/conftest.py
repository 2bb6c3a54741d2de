import numpy as np
import pytest

from freepoles.geometry import Disk, MobiusMap


@pytest.fixture
def rng():
    return np.random.default_rng(20240515)


def random_mobius(rng, scale=1.0):
    c = (rng.normal(size=4) + 1j * rng.normal(size=4)) * scale
    return MobiusMap(*c)


def random_disk_triple(rng):
    """Three disjoint disks with their centers-offset poles."""
    while True:
        centers = rng.uniform(-2, 2, 3) + 1j * rng.uniform(-2, 2, 3)
        d = np.abs(centers[:, None] - centers[None, :])
        np.fill_diagonal(d, np.inf)
        if d.min() > 0.2:
            break
    radii = 0.5 * d.min(axis=1) * rng.uniform(0.3, 0.95, 3)
    disks = [Disk(complex(c), float(r)) for c, r in zip(centers, radii)]
    poles = [complex(c + r * 0.6 * rng.uniform() * np.exp(2j * np.pi * rng.uniform()))
             for c, r in zip(centers, radii)]
    return disks, poles


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
