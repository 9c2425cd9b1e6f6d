"""Shared helpers for the demo scripts."""

import sys

import networkx as nx

from dscentrality import Graph, datasets


def load(argv=None):
    """Graph from the command line (file or dataset name), else a synthetic stand-in."""
    argv = sys.argv[1:] if argv is None else argv
    if argv:
        return datasets.resolve_graph(argv[0])
    # power-law graph with clustering, roughly the size and density of the e-mail network
    g = Graph.from_networkx(nx.powerlaw_cluster_graph(1133, 5, 0.3, seed=7))
    return "synthetic", g
