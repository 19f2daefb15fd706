"""Shared hand-built diagrams used as fixtures across the test suite."""

from __future__ import annotations

import pytest

from gradflow.diagram import EdgeKind, EdgeRecord, SeparatrixDiagram, VertexType
from gradflow.mapcore import build_map


def make_diagram(rotation, pairing, vtypes, edge_specs, hole_least_darts):
    """Assemble a SeparatrixDiagram from readable pieces.

    ``edge_specs`` maps a frozenset dart pair to (kind, origin dart);
    ``hole_least_darts`` lists one dart on each hole face.
    """
    m = build_map(rotation, pairing)
    edges = []
    for pair in m.edges:
        kind, origin = edge_specs[frozenset(pair)]
        edges.append(EdgeRecord(kind, origin))
    holes = {m.face_of[d] for d in hole_least_darts}
    return SeparatrixDiagram(m, vtypes, edges, holes)


def disk_minimal():
    """Disk with two singular points: a boundary source and a boundary sink.

    Hole cycle (bSource, bSink); both arcs flow source to sink.
    """
    return make_diagram(
        rotation=[(0, 1), (2, 3)],
        pairing=[(1, 2), (0, 3)],
        vtypes=[VertexType.B_SOURCE, VertexType.B_SINK],
        edge_specs={
            frozenset({1, 2}): (EdgeKind.BOUNDARY_ARC, 1),
            frozenset({0, 3}): (EdgeKind.BOUNDARY_ARC, 0),
        },
        hole_least_darts=[1],
    )


def disk_three_sink():
    """Disk with (bSource, bSaddleAtt) on the hole and an interior sink."""
    return make_diagram(
        rotation=[(0, 1), (2, 3, 4), (5,)],
        pairing=[(1, 2), (0, 3), (4, 5)],
        vtypes=[VertexType.B_SOURCE, VertexType.B_SADDLE_ATT, VertexType.I_SINK],
        edge_specs={
            frozenset({1, 2}): (EdgeKind.BOUNDARY_ARC, 1),
            frozenset({0, 3}): (EdgeKind.BOUNDARY_ARC, 0),
            frozenset({4, 5}): (EdgeKind.SEPARATRIX, 4),
        },
        hole_least_darts=[1],
    )


def disk_three_source():
    """Flow reversal of :func:`disk_three_sink` built directly."""
    return make_diagram(
        rotation=[(0, 1), (2, 3, 4), (5,)],
        pairing=[(1, 2), (0, 3), (4, 5)],
        vtypes=[VertexType.B_SINK, VertexType.B_SADDLE_REP, VertexType.I_SOURCE],
        edge_specs={
            frozenset({1, 2}): (EdgeKind.BOUNDARY_ARC, 2),
            frozenset({0, 3}): (EdgeKind.BOUNDARY_ARC, 3),
            frozenset({4, 5}): (EdgeKind.SEPARATRIX, 5),
        },
        hole_least_darts=[1],
    )


def disk_four_interior_pair():
    """Disk whose hole is (bSaddleRep, bSaddleAtt) with an interior source
    feeding the Rep saddle and the Att saddle feeding an interior sink.
    """
    return make_diagram(
        rotation=[(0, 1, 2), (3, 4, 5), (6,), (7,)],
        pairing=[(1, 3), (0, 4), (2, 6), (5, 7)],
        vtypes=[VertexType.B_SADDLE_REP, VertexType.B_SADDLE_ATT,
                VertexType.I_SOURCE, VertexType.I_SINK],
        edge_specs={
            frozenset({1, 3}): (EdgeKind.BOUNDARY_ARC, 1),
            frozenset({0, 4}): (EdgeKind.BOUNDARY_ARC, 0),
            frozenset({2, 6}): (EdgeKind.SEPARATRIX, 6),
            frozenset({5, 7}): (EdgeKind.SEPARATRIX, 5),
        },
        hole_least_darts=[1],
    )


@pytest.fixture
def d2min():
    return disk_minimal()


@pytest.fixture
def d3sink():
    return disk_three_sink()


@pytest.fixture
def d3source():
    return disk_three_source()
