"""Parameter sets (j1, j2, j3, j) of the reference figures."""

from __future__ import annotations

FIGURES = {
    "1a": (45, 30, 55, 60),
    "1b": (140, 130, 110, 100),
    "1c": (140, 100, 110, 130),
    "1d": (140, 110, 100, 130),
    "2": (100, 100, 150, 210),
    "3": (100, 150, 100, 210),
    "4a": (200, 100, 200, 100),
    "4b": (110, 100, 110, 100),
    "5": (1000, 1000, 100, 100),
    "6": (100, 100, 100, 100),
}

# degeneracy flags each figure is drawn for
EXPECTED_FLAGS = {
    "1a": frozenset(),
    "1b": frozenset("B"),
    "1c": frozenset("C"),
    "1d": frozenset("D"),
    "2": frozenset(),
    "3": frozenset(),
    "4a": frozenset("BC"),
    "4b": frozenset("BC"),
    "5": frozenset("BD"),
    "6": frozenset("BCD"),
}

# j1 = j2 = j3 = 100 with j swept over 25, 50, ..., 275
SWEEP_FIXED = (100, 100, 100)
SWEEP_J = tuple(range(25, 276, 25))


def sweep_members() -> list:
    return [(*SWEEP_FIXED, j) for j in SWEEP_J]
