"""Named complexes used by the verification runs."""
from __future__ import annotations

from .simplicial import SimplicialComplex

# Three graphs on 4 vertices and a 2-dimensional complex with three triangles
# glued at vertex 1.
GRAPH_TWO_TRIANGLES_ON_14 = SimplicialComplex.from_facets(4, [[1, 2], [1, 3], [1, 4], [2, 4], [3, 4]])
GRAPH_TWO_TRIANGLES_ON_23 = SimplicialComplex.from_facets(4, [[1, 2], [1, 3], [2, 3], [2, 4], [3, 4]])
GRAPH_TWO_TRIANGLES_ON_24 = SimplicialComplex.from_facets(4, [[1, 2], [1, 4], [2, 3], [2, 4], [3, 4]])
THREE_TRIANGLES_AT_1 = SimplicialComplex.from_facets(7, [[1, 2, 3], [1, 4, 5], [1, 6, 7]])

NAMED = {
    "graph-124-134": (GRAPH_TWO_TRIANGLES_ON_14, 2),
    "graph-123-234": (GRAPH_TWO_TRIANGLES_ON_23, 2),
    "graph-124-234": (GRAPH_TWO_TRIANGLES_ON_24, 2),
    "triangles-123-145-167": (THREE_TRIANGLES_AT_1, 3),
}
