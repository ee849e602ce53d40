"""Bundled reference graphs: the ten-node cyclic example and its DPAG."""

from importlib import resources

from .io import load_graph_document, parse_dpag


def _text(name):
    return resources.files(__package__).joinpath("data", name).read_text(encoding="utf-8")


def example_graph():
    """Ten-node DMG with the feedback loop X3 -> X4 -> X6 -> X5 -> X3."""
    return load_graph_document(_text("example_graph.json")).graph


def example_dpag():
    """The DPAG that FCI returns for :func:`example_graph` under sigma-separation."""
    return parse_dpag(_text("example_dpag.json"))


def example_graph_text():
    return _text("example_graph.json")


def example_dpag_text():
    return _text("example_dpag.json")
