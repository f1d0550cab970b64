"""Simplicial posets as face records with vertex-indexed boundary maps.

A face of rank r (r vertices, dimension r-1) stores, for each of its
vertices v, the face id of the codimension-one subface omitting v.  The
empty face has the reserved id 0.  Every lower interval is a Boolean
algebra, which here amounts to two checkable rules: deleting a vertex
yields a face on the remaining vertex set, and iterated deletion is
order-independent (the diamond condition).  Distinct faces may share a
vertex set, so faces are addressed by id, never by vertices alone.

Complexes are mutated only by :func:`attach_facet` (and the vertex/face
adders it uses); after construction they are treated as immutable.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterable, Iterator

from .hvectors import f_to_h

EMPTY = 0
#: Marker for glue-spec subsets that get a fresh face.
NEW = -1


class GlueError(ValueError):
    """Inconsistent or unresolvable facet-attachment spec."""


class NotPseudomanifold(ValueError):
    """Some codimension-one face lies in three or more facets."""


@dataclass(frozen=True)
class Face:
    id: int
    rank: int
    vertices: tuple[int, ...]
    boundary: dict[int, int]  # vertex -> codim-1 subface omitting it


class SimplicialPoset:
    """Mutable-while-building container of :class:`Face` records."""

    def __init__(self) -> None:
        self._faces: dict[int, Face] = {EMPTY: Face(EMPTY, 0, (), {})}
        self._next_face = 1
        self._next_vertex = 1
        self._vertex_face: dict[int, int] = {}
        self._below: dict[tuple[int, tuple[int, ...]], int] = {}

    # -- queries -------------------------------------------------------

    def face(self, fid: int) -> Face:
        return self._faces[fid]

    def __contains__(self, fid: int) -> bool:
        return fid in self._faces

    def __len__(self) -> int:
        return len(self._faces)

    def face_ids(self) -> list[int]:
        return sorted(self._faces)

    def faces(self) -> Iterator[Face]:
        for fid in self.face_ids():
            yield self._faces[fid]

    @property
    def dim(self) -> int:
        return max(f.rank for f in self._faces.values()) - 1

    def faces_of_rank(self, rank: int) -> list[int]:
        return [f.id for f in self.faces() if f.rank == rank]

    def facets(self) -> list[int]:
        """Faces of maximal rank, in id order."""
        return self.faces_of_rank(self.dim + 1)

    def vertices(self) -> list[int]:
        return sorted(self._vertex_face)

    def vertex_face(self, v: int) -> int:
        return self._vertex_face[v]

    def face_below(self, fid: int, verts: Iterable[int]) -> int:
        """Subface of ``fid`` on the vertex subset ``verts``.

        Reached by iterated single-vertex deletion; memoized.  The diamond
        condition makes the result independent of deletion order.
        """
        want = frozenset(verts)
        face = self._faces[fid]
        have = frozenset(face.vertices)
        if not want <= have:
            raise KeyError(f"{sorted(want)} is not a vertex subset of face {fid}")
        if want == have:
            return fid
        key = (fid, tuple(sorted(want)))
        hit = self._below.get(key)
        if hit is not None:
            return hit
        drop = max(have - want)
        out = self.face_below(face.boundary[drop], want)
        self._below[key] = out
        return out

    def subfaces(self, fid: int) -> dict[frozenset[int], int]:
        """All faces below ``fid``, keyed by vertex subset."""
        vs = self._faces[fid].vertices
        out: dict[frozenset[int], int] = {}
        for k in range(len(vs) + 1):
            for sub in combinations(vs, k):
                out[frozenset(sub)] = self.face_below(fid, sub)
        return out

    def is_pure(self) -> bool:
        """True iff every face lies below a face of maximal rank."""
        covered: set[int] = set()
        for fid in self.facets():
            covered.update(self.subfaces(fid).values())
        return covered == set(self._faces)

    # -- construction ---------------------------------------------------

    def new_vertex(self) -> int:
        v = self._next_vertex
        self._next_vertex += 1
        fid = self._add_face(1, (v,), {v: EMPTY})
        self._vertex_face[v] = fid
        return v

    def _add_face(self, rank: int, vertices: tuple[int, ...], boundary: dict[int, int]) -> int:
        fid = self._next_face
        self._next_face = fid + 1
        self._faces[fid] = Face(fid, rank, vertices, boundary)
        return fid

    def _install_face(self, face: Face) -> None:
        """Insert an existing record verbatim (deserialization, subposets)."""
        self._faces[face.id] = face
        self._next_face = max(self._next_face, face.id + 1)
        if face.rank == 1:
            v = face.vertices[0]
            if v in self._vertex_face:
                raise ValueError(f"two rank-1 faces on vertex {v}")
            self._vertex_face[v] = face.id
            self._next_vertex = max(self._next_vertex, v + 1)


# -- validation ----------------------------------------------------------


def validate(P: SimplicialPoset) -> list[str]:
    """Check all structural invariants; return a list of violations (empty = ok)."""
    bad: list[str] = []
    if EMPTY not in P:
        return ["face 0 (the empty face) is missing"]
    root = P.face(EMPTY)
    if root.rank != 0 or root.vertices or root.boundary:
        bad.append("face 0: must be the empty face of rank 0")
    for f in P.faces():
        if f.id == EMPTY:
            continue
        if f.rank != len(f.vertices):
            bad.append(f"face {f.id}: rank {f.rank} != {len(f.vertices)} vertices")
            continue
        if f.rank == 0:
            bad.append(f"face {f.id}: rank 0 is reserved for the empty face")
            continue
        if tuple(sorted(set(f.vertices))) != f.vertices:
            bad.append(f"face {f.id}: vertices {f.vertices} not strictly increasing")
            continue
        if set(f.boundary) != set(f.vertices):
            bad.append(f"face {f.id}: boundary keys {sorted(f.boundary)} != vertices")
            continue
        ok = True
        for v, sub_id in f.boundary.items():
            if sub_id not in P:
                bad.append(f"face {f.id}: boundary at {v} points to missing face {sub_id}")
                ok = False
                continue
            sub = P.face(sub_id)
            if sub.vertices != tuple(x for x in f.vertices if x != v):
                bad.append(
                    f"face {f.id}: deleting vertex {v} gives face {sub_id} "
                    f"with vertices {sub.vertices}"
                )
                ok = False
        if not ok:
            continue
        for u, v in combinations(f.vertices, 2):
            uv = P.face(f.boundary[u]).boundary[v]
            vu = P.face(f.boundary[v]).boundary[u]
            if uv != vu:
                bad.append(
                    f"face {f.id}: diamond condition fails at vertices {u},{v} "
                    f"({uv} != {vu})"
                )
    return bad


# -- vector extraction ----------------------------------------------------


def f_vector(P: SimplicialPoset) -> tuple[int, ...]:
    """Face counts ``(f_-1, f_0, ..., f_(dim))``."""
    counts = [0] * (P.dim + 2)
    for f in P.faces():
        counts[f.rank] += 1
    return tuple(counts)


def h_vector(P: SimplicialPoset) -> tuple[int, ...]:
    return f_to_h(f_vector(P))


def codim1_incidence(P: SimplicialPoset) -> dict[int, int]:
    """For each rank-(d-1) face, the number of facets it bounds.

    Within one facet all subfaces are distinct, so each facet contributes
    at most once per face.  Requires a pure complex.
    """
    if not P.is_pure():
        raise ValueError("codim1_incidence needs a pure complex")
    d = P.dim + 1
    counts = {fid: 0 for fid in P.faces_of_rank(d - 1)}
    for fid in P.facets():
        for sub in P.face(fid).boundary.values():
            counts[sub] += 1
    return counts


# -- derived complexes -----------------------------------------------------


def boundary_complex(P: SimplicialPoset) -> SimplicialPoset:
    """Downward closure of the codimension-one faces lying in exactly one facet.

    Face ids are inherited from ``P``.  Raises :class:`NotPseudomanifold`
    if some codimension-one face lies in three or more facets.
    """
    counts = codim1_incidence(P)
    for fid, c in counts.items():
        if c > 2:
            raise NotPseudomanifold(f"face {fid} lies in {c} facets")
    rim = [fid for fid, c in counts.items() if c == 1]
    keep: set[int] = {EMPTY}
    for fid in rim:
        keep.update(P.subfaces(fid).values())
    Q = SimplicialPoset()
    for fid in sorted(keep):
        if fid != EMPTY:
            Q._install_face(P.face(fid))
    Q._next_face = P._next_face
    Q._next_vertex = P._next_vertex
    return Q


def cone(P: SimplicialPoset) -> SimplicialPoset:
    """Cone over ``P``: every face reappears joined with a fresh apex vertex.

    The base copy keeps its ids; lifted faces get fresh ids.  The h-vector
    of the result is that of ``P`` with a trailing zero appended.
    """
    C = SimplicialPoset()
    for f in P.faces():
        if f.id != EMPTY:
            C._install_face(f)
    C._next_face = P._next_face
    C._next_vertex = P._next_vertex
    apex = C.new_vertex()
    lifted: dict[int, int] = {EMPTY: C._vertex_face[apex]}
    for f in P.faces():  # ascending id: subfaces lift before their cofaces
        if f.id == EMPTY:
            continue
        bd = {v: lifted[f.boundary[v]] for v in f.vertices}
        bd[apex] = f.id
        lifted[f.id] = C._add_face(f.rank + 1, f.vertices + (apex,), bd)
    return C


def cone_over_boundary(P: SimplicialPoset) -> SimplicialPoset:
    """Glue the cone over the boundary of ``P`` onto ``P``.

    For a ball this closes it up into a sphere of the same dimension.
    Raises ``ValueError`` when the boundary is empty.
    """
    Q = boundary_complex(P)
    if len(Q) == 1:
        raise ValueError("complex has empty boundary")
    S = SimplicialPoset()
    for f in P.faces():
        if f.id != EMPTY:
            S._install_face(f)
    S._next_face = P._next_face
    S._next_vertex = P._next_vertex
    apex = S.new_vertex()
    lifted: dict[int, int] = {EMPTY: S._vertex_face[apex]}
    for f in Q.faces():  # boundary faces keep their ids inside P
        if f.id == EMPTY:
            continue
        bd = {v: lifted[f.boundary[v]] for v in f.vertices}
        bd[apex] = f.id
        lifted[f.id] = S._add_face(f.rank + 1, f.vertices + (apex,), bd)
    return S


# -- facet attachment ------------------------------------------------------


@dataclass
class GlueSpec:
    """How a prospective rank-``rank`` facet meets the existing complex.

    ``assignments`` maps proper subsets of the slot labels ``{1..rank}``
    to existing face ids, or to :data:`NEW` for faces the attachment
    creates.  Sparse specs are fine: identifications propagate downward
    (the v-boundary of an identified face is the corresponding identified
    subface), anything left over is NEW.  Slot-to-vertex correspondences
    come from singleton assignments, or by elimination when all but one
    image inside an identified face is known.
    """

    rank: int
    assignments: dict[frozenset[int], int] = field(default_factory=dict)


@dataclass
class AttachResult:
    facet: int
    vertex_images: dict[int, int]  # slot label -> vertex id
    identified: dict[frozenset[int], int]
    created: dict[frozenset[int], int]


def attach_facet(P: SimplicialPoset, glue: GlueSpec) -> AttachResult:
    """Attach one new facet to ``P`` according to ``glue``.

    All consistency checks run before any mutation, so a failed attach
    leaves the complex untouched.  Raises :class:`GlueError` on rank
    mismatches, conflicting derived identifications, non-injective vertex
    images, or ambiguous correspondences.
    """
    d = glue.rank
    if d < 1:
        raise GlueError("facet rank must be at least 1")
    full = frozenset(range(1, d + 1))

    assigned: dict[frozenset[int], int] = {}
    origin: dict[frozenset[int], str] = {}
    new_marks: set[frozenset[int]] = set()

    def record(S: frozenset[int], fid: int, why: str) -> bool:
        if S in new_marks:
            raise GlueError(f"subset {sorted(S)} marked NEW but forced to face {fid} ({why})")
        prev = assigned.get(S)
        if prev is None:
            assigned[S] = fid
            origin[S] = why
            return True
        if prev != fid:
            raise GlueError(
                f"subset {sorted(S)} assigned to both face {prev} ({origin[S]}) "
                f"and face {fid} ({why})"
            )
        return False

    for raw, target in glue.assignments.items():
        S = frozenset(raw)
        if not S <= full or S == full:
            raise GlueError(f"glue subsets must be proper subsets of 1..{d}, got {sorted(S)}")
        if target == NEW:
            if S in assigned:
                raise GlueError(f"subset {sorted(S)} marked NEW but also assigned a face")
            new_marks.add(S)
            continue
        if target not in P:
            raise GlueError(f"glue target {target} for {sorted(S)} does not exist")
        if P.face(target).rank != len(S):
            raise GlueError(
                f"glue target {target} has rank {P.face(target).rank}, "
                f"subset {sorted(S)} needs rank {len(S)}"
            )
        record(S, target, "declared")

    images: dict[int, int] = {}
    for l in range(1, d + 1):
        t = assigned.get(frozenset((l,)))
        if t is not None:
            images[l] = P.face(t).vertices[0]

    # Fixpoint: infer remaining slot images by elimination inside identified
    # faces, then push every identification down to its boundary subfaces.
    derived: set[frozenset[int]] = set()
    changed = True
    while changed:
        changed = False
        for S in sorted(assigned, key=lambda s: (-len(s), sorted(s))):
            if len(S) <= 1 or S in derived:
                continue
            face = P.face(assigned[S])
            fverts = set(face.vertices)
            known = {l: images[l] for l in S if l in images}
            if len(set(known.values())) != len(known):
                raise GlueError(f"slots of {sorted(S)} map to repeated vertices")
            if not set(known.values()) <= fverts:
                raise GlueError(
                    f"subset {sorted(S)} glued to face {face.id} but slot images "
                    f"{sorted(known.values())} are not among its vertices {face.vertices}"
                )
            missing = [l for l in S if l not in images]
            if len(missing) == 1:
                (l,) = missing
                (v,) = fverts - set(known.values())
                images[l] = v
                if record(frozenset((l,)), P.vertex_face(v), f"image forced by {sorted(S)}"):
                    changed = True
                missing = []
            if missing:
                continue
            for l in S:
                sub = face.boundary[images[l]]
                if record(S - {l}, sub, f"boundary of {sorted(S)} at slot {l}"):
                    changed = True
            derived.add(S)

    unresolved = [S for S in assigned if len(S) > 1 and S not in derived]
    if unresolved:
        raise GlueError(
            f"cannot infer the slot-to-vertex correspondence for {sorted(unresolved[0])}; "
            "add singleton assignments"
        )
    if len(set(images.values())) != len(images):
        raise GlueError("two slots glued to the same vertex")

    for S, fid in assigned.items():
        want = {images[l] for l in S}
        if set(P.face(fid).vertices) != want:
            raise GlueError(
                f"subset {sorted(S)} glued to face {fid} whose vertex set "
                f"{P.face(fid).vertices} differs from the slot images {sorted(want)}"
            )

    # Wire: fresh vertices for unglued slots, then fresh faces upward.
    for l in sorted(full - images.keys()):
        images[l] = P.new_vertex()
    resolve: dict[frozenset[int], int] = dict(assigned)
    resolve[frozenset()] = EMPTY
    for l in full:
        resolve.setdefault(frozenset((l,)), P.vertex_face(images[l]))
    created: dict[frozenset[int], int] = {}
    for size in range(2, d + 1):
        for combo in combinations(sorted(full), size):
            S = frozenset(combo)
            if S in resolve:
                continue
            verts = tuple(sorted(images[l] for l in S))
            bd = {images[l]: resolve[S - {l}] for l in S}
            fid = P._add_face(size, verts, bd)
            created[S] = fid
            resolve[S] = fid
    for l in full:
        S = frozenset((l,))
        if S not in assigned:
            created[S] = resolve[S]
    return AttachResult(
        facet=resolve[full],
        vertex_images=images,
        identified=dict(assigned),
        created=created,
    )


# -- serialization ---------------------------------------------------------


def to_json(P: SimplicialPoset) -> str:
    """Stable JSON encoding: ascending face ids, sorted keys."""
    payload = {
        "dim": P.dim,
        "faces": [
            {
                "id": f.id,
                "rank": f.rank,
                "vertices": list(f.vertices),
                "boundary": {str(v): fid for v, fid in sorted(f.boundary.items())},
            }
            for f in P.faces()
        ],
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def from_json(text: str) -> SimplicialPoset:
    """Parse :func:`to_json` output.  Structural errors raise ``ValueError``."""
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"bad JSON: {exc}") from exc
    if not isinstance(payload, dict) or "faces" not in payload:
        raise ValueError("expected an object with a 'faces' list")
    P = SimplicialPoset()
    seen = set()
    for rec in payload["faces"]:
        fid = int(rec["id"])
        if fid in seen:
            raise ValueError(f"duplicate face id {fid}")
        seen.add(fid)
        if fid == EMPTY:
            continue
        face = Face(
            id=fid,
            rank=int(rec["rank"]),
            vertices=tuple(int(v) for v in rec["vertices"]),
            boundary={int(v): int(t) for v, t in rec["boundary"].items()},
        )
        P._install_face(face)
    if EMPTY not in seen:
        raise ValueError("face id 0 (the empty face) is mandatory")
    for f in P.faces():
        for t in f.boundary.values():
            if t not in P:
                raise ValueError(f"face {f.id} references missing face {t}")
    if "dim" in payload and int(payload["dim"]) != P.dim:
        raise ValueError(f"declared dim {payload['dim']} != computed dim {P.dim}")
    return P


def save(P: SimplicialPoset, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(to_json(P))


def load(path: str) -> SimplicialPoset:
    with open(path, "r", encoding="utf-8") as fh:
        return from_json(fh.read())
