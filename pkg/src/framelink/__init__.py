"""Framed links in the 3-sphere: diagrams, moves, framings and surgery."""

from .codecs import (
    diagram_to_dt,
    diagram_to_gauss,
    dt_to_diagram,
    framed_link_from_json,
    framed_link_to_json,
    gauss_to_diagram,
    parse_pd,
    parse_pd_file,
    serialize_pd,
)
from .diagram import (
    Crossing,
    LinkDiagram,
    canonical_form,
    connected_sum,
    crossing_change,
    is_planar,
    mirror,
    reverse_component,
    same_diagram,
    trace_components,
    validate,
)
from .errors import FramelinkError
from .invariants import (
    FramedLink,
    blackboard_framing,
    crossing_sign,
    linking_matrix,
    linking_number,
    pushoff,
    realize_framing,
    total_writhe,
    writhe,
)
from .moves import MoveSite, apply_move, enumerate_moves, framed_equivalent

__all__ = [
    "Crossing",
    "FramedLink",
    "FramelinkError",
    "LinkDiagram",
    "MoveSite",
    "apply_move",
    "blackboard_framing",
    "canonical_form",
    "connected_sum",
    "crossing_change",
    "crossing_sign",
    "diagram_to_dt",
    "diagram_to_gauss",
    "dt_to_diagram",
    "enumerate_moves",
    "framed_equivalent",
    "framed_link_from_json",
    "framed_link_to_json",
    "gauss_to_diagram",
    "is_planar",
    "linking_matrix",
    "linking_number",
    "mirror",
    "parse_pd",
    "parse_pd_file",
    "pushoff",
    "realize_framing",
    "reverse_component",
    "same_diagram",
    "serialize_pd",
    "total_writhe",
    "trace_components",
    "validate",
    "writhe",
]
