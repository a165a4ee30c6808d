# adversary/__init__.py
"""Lower-bound point sets and the twin-instance harness for k-local routers."""
from adversary.chew_lower import ChewLowerInstance, gen_chew_lower
from adversary.harness import (
    AdversaryVerdict,
    LocalRoute,
    RouterRun,
    TeleportRouter,
    adversary_run,
    mirror_mismatches,
    route_local,
)
from adversary.l2_lower import L2LowerInstance, gen_l2_lower, gen_l2_lower_pair, shortcut_edges
from adversary.linf_lower import LinfLowerInstance, gen_linf_lower, gen_linf_lower_pair

__all__ = [
    "AdversaryVerdict",
    "ChewLowerInstance",
    "L2LowerInstance",
    "LinfLowerInstance",
    "LocalRoute",
    "RouterRun",
    "TeleportRouter",
    "adversary_run",
    "gen_chew_lower",
    "gen_l2_lower",
    "gen_l2_lower_pair",
    "gen_linf_lower",
    "gen_linf_lower_pair",
    "mirror_mismatches",
    "route_local",
    "shortcut_edges",
]
