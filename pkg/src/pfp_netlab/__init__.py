"""Grow Internet-like graphs with the PFP model and measure AS-graph topology."""

from .graph import Graph, from_edge_list, largest_connected_component
from .metrics import DistributionTable, MetricsReport, average_reports, full_report
from .pfp import PfpParams, grow, grow_ensemble

__all__ = [
    "DistributionTable",
    "Graph",
    "MetricsReport",
    "PfpParams",
    "average_reports",
    "from_edge_list",
    "full_report",
    "grow",
    "grow_ensemble",
    "largest_connected_component",
]

__version__ = "0.1.0"
