# routing/__init__.py
"""Chew's 1-local routing on Delaunay triangulations, plus the k-local router interface."""
from routing.chew import DecisionRecord, RoutingTrace, chew_route, is_stateless_header, route_with_decision_log
from routing.frame import NormalizedFrame
from routing.local import ChewLocalRouter, GreedyRouter, LocalRouter, LocalView, local_view
from routing.step import RoutingStep, Side, StepRule

__all__ = [
    "ChewLocalRouter",
    "DecisionRecord",
    "GreedyRouter",
    "LocalRouter",
    "LocalView",
    "NormalizedFrame",
    "RoutingStep",
    "RoutingTrace",
    "Side",
    "StepRule",
    "chew_route",
    "is_stateless_header",
    "local_view",
    "route_with_decision_log",
]
