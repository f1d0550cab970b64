"""Small canonical complexes used by tests and demo scripts."""

from __future__ import annotations

from .complexes import NEW, GlueSpec, SimplicialPoset, attach_facet


def solid_simplex(d: int) -> SimplicialPoset:
    """A single facet of rank ``d`` (a solid (d-1)-simplex)."""
    P = SimplicialPoset()
    attach_facet(P, GlueSpec(d, {}))
    return P


def doubled_simplex(d: int) -> SimplicialPoset:
    """Two rank-``d`` facets glued along their whole boundary: a (d-1)-sphere."""
    P = SimplicialPoset()
    first = attach_facet(P, GlueSpec(d, {}))
    subs = P.subfaces(first.facet)
    verts = P.face(first.facet).vertices
    glue = {
        frozenset(i + 1 for i, v in enumerate(verts) if v in vs): fid
        for vs, fid in subs.items()
        if len(vs) < d
    }
    attach_facet(P, GlueSpec(d, glue))
    return P


def digon() -> SimplicialPoset:
    """Two distinct edges on the same two vertices (a 1-sphere)."""
    return doubled_simplex(2)


def triangle_pair() -> SimplicialPoset:
    """Two triangles sharing one edge, f = (1, 4, 5, 2)."""
    P = SimplicialPoset()
    first = attach_facet(P, GlueSpec(3, {}))
    a, b, c = P.face(first.facet).vertices
    shared = P.face_below(first.facet, (b, c))
    attach_facet(
        P,
        GlueSpec(
            3,
            {
                frozenset((2, 3)): shared,
                frozenset((2,)): P.vertex_face(b),
                frozenset((3,)): P.vertex_face(c),
            },
        ),
    )
    return P


def glued_tetrahedra() -> SimplicialPoset:
    """Two solid tetrahedra sharing one triangle."""
    P = SimplicialPoset()
    first = attach_facet(P, GlueSpec(4, {}))
    vs = P.face(first.facet).vertices
    shared = P.face_below(first.facet, vs[1:])
    glue: dict[frozenset[int], int] = {frozenset((2, 3, 4)): shared}
    for slot, v in zip((2, 3, 4), vs[1:]):
        glue[frozenset((slot,))] = P.vertex_face(v)
    attach_facet(P, GlueSpec(4, glue))
    return P


def single_point() -> SimplicialPoset:
    P = SimplicialPoset()
    P.new_vertex()
    return P
