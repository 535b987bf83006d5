"""The eight-label alphabet used by the dynamic program and the enumeration engine.

Labels are plain ints 0..7 so that bag labelings can be stored as ``bytes``.
The numeric order is also the deterministic label-choice order of the
enumeration engine.
"""

from __future__ import annotations

# sigma labels mark solution members, omega labels private neighbors,
# rho labels vertices dominated at least twice.
S0 = 0  # [0]s : in solution, private neighbor already seen, none pending
S1 = 1  # [1]s : in solution, a private neighbor is still pending
SI = 2  # sI   : in solution, independent (no solution neighbors, no privates)
W0 = 3  # [0]w : private neighbor, its dominator already seen
W1 = 4  # [1]w : private neighbor, its dominator still pending
R0 = 5  # [0]r : dominated >=2 times, no dominators pending
R1 = 6  # [1]r : dominated >=2 times, >=1 dominator pending
R2 = 7  # [2]r : dominated >=2 times, >=2 dominators pending

ALL = (S0, S1, SI, W0, W1, R0, R1, R2)

SIGMA = frozenset({S0, S1, SI})
OMEGA = frozenset({W0, W1})
RHO = frozenset({R0, R1, R2})

# Restricted domains for the hitting-set / edge-cover reductions.
DOM_FULL = ALL
DOM_SIGMA = (S0, S1, SI)
DOM_SIGMA_OMEGA = (S0, S1, SI, W0, W1)
DOM_OMEGA_RHO = (W0, W1, R0, R1, R2)

NAMES = ("0σ", "1σ", "σI", "0ω", "1ω", "0ρ", "1ρ", "2ρ")

_CATEGORY = {S0: "sigma", S1: "sigma", SI: "sigma", W0: "omega", W1: "omega",
             R0: "rho", R1: "rho", R2: "rho"}
_INDEX = {S0: 0, S1: 1, SI: 0, W0: 0, W1: 1, R0: 0, R1: 1, R2: 2}

RHO_BY_INDEX = (R0, R1, R2)
OMEGA_BY_INDEX = (W0, W1)
SIGMA_BY_INDEX = (S0, S1)


def category(label: int) -> str:
    return _CATEGORY[label]


def index(label: int) -> int:
    """The bracketed counter of a label ([2]r -> 2); sI counts as 0."""
    return _INDEX[label]


def is_sigma(label: int) -> bool:
    return label <= SI


def is_omega(label: int) -> bool:
    return label == W0 or label == W1


def is_rho(label: int) -> bool:
    return label >= R0


def name(label: int) -> str:
    return NAMES[label]


def labeling_str(labeling) -> str:
    """Render a labeling (iterable of label ints) for dumps and tests."""
    return " ".join(NAMES[c] for c in labeling)
