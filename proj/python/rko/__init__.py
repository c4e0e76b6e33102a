"""Random-key optimizer: decoders, solver portfolio and benchmark metrics."""

from ._rko import (
    Problem,
    bench,
    epsilon,
    farey,
    load,
    minimize,
    performance_profile,
    random_vector,
    reward,
    rpd,
    solve,
    wilcoxon,
)

METHODS = ("portfolio", "brkga", "sa", "grasp", "ils", "vns", "pso", "ga", "lns")

__all__ = [
    "METHODS",
    "Problem",
    "bench",
    "epsilon",
    "farey",
    "load",
    "minimize",
    "performance_profile",
    "random_vector",
    "reward",
    "rpd",
    "solve",
    "wilcoxon",
]
