"""Reference Hasse diagrams frozen as plain data."""

# Upper triangular rooks of size 3, keyed by the node names of the drawing.
B3_NODES = {
    "a": (0, 0, 0),
    "b1": (0, 0, 1),
    "c1": (0, 1, 0), "c2": (0, 0, 2),
    "d1": (1, 0, 0), "d2": (0, 2, 0), "d3": (0, 1, 2), "d4": (0, 0, 3),
    "e1": (1, 0, 2), "e2": (0, 2, 1), "e3": (0, 1, 3),
    "f1": (1, 2, 0), "f2": (1, 0, 3), "f3": (0, 2, 3),
    "g": (1, 2, 3),
}

B3_EDGES = [
    ("a", "b1"), ("b1", "c1"), ("b1", "c2"),
    ("c1", "d1"), ("c1", "d2"), ("c1", "d3"), ("c2", "d2"), ("c2", "d3"), ("c2", "d4"),
    ("d1", "e1"), ("d2", "e2"), ("d4", "e3"), ("d3", "e1"), ("d3", "e2"), ("d3", "e3"),
    ("e1", "f1"), ("e1", "f2"), ("e2", "f1"), ("e2", "f3"), ("e3", "f2"), ("e3", "f3"),
    ("f1", "g"), ("f2", "g"), ("f3", "g"),
]

# The 14-element interval that fails to be a lattice.
NON_LATTICE_EDGES = [
    ("a", "b1"), ("a", "b2"), ("a", "b3"),
    ("b1", "c1"), ("b1", "c2"), ("b1", "c3"),
    ("b2", "c1"), ("b2", "c2"), ("b2", "c4"), ("b2", "c5"),
    ("b3", "c3"), ("b3", "c4"), ("b3", "c5"),
    ("c1", "d1"), ("c1", "d3"), ("c2", "d1"), ("c2", "d2"), ("c3", "d2"), ("c3", "d3"),
    ("c4", "d2"), ("c4", "d4"), ("c5", "d3"), ("c5", "d4"),
    ("d1", "e"), ("d2", "e"), ("d3", "e"), ("d4", "e"),
]

# Stirling poset of one-arc diagrams on five vertices: node and top-node counts.
A51_SIZE = 10
A51_MAXIMA = 4


def poset_from_named_edges(edges):
    from arcposet.poset_core import FinitePoset

    names = sorted({v for e in edges for v in e})
    idx = {v: i for i, v in enumerate(names)}
    return FinitePoset.from_covers(names, [(idx[a], idx[b]) for a, b in edges])
