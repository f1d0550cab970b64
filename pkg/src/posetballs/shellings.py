"""Shelling verification, restriction faces, and random shellable balls.

A shelling is a facet order in which every facet meets the union of its
predecessors in a nonempty union of closed codimension-one faces of its
own boundary.  The restriction face of a step collects the vertices whose
opposite codimension-one face was already present; tallying restriction
sizes recovers the h-vector.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Sequence

from .complexes import (
    EMPTY,
    NEW,
    GlueError,
    GlueSpec,
    NotPseudomanifold,
    SimplicialPoset,
    attach_facet,
    codim1_incidence,
)


class ShellingError(ValueError):
    def __init__(self, step: int, face: int, reason: str) -> None:
        super().__init__(f"step {step}, face {face}: {reason}")
        self.step = step
        self.face = face
        self.reason = reason


@dataclass(frozen=True)
class Shelling:
    order: tuple[int, ...]
    restriction: tuple[frozenset[int], ...]  # vertex sets, one per step

    def to_json_obj(self) -> dict:
        return {
            "order": list(self.order),
            "restriction": [sorted(r) for r in self.restriction],
        }


def verify_shelling(P: SimplicialPoset, order: Sequence[int]) -> Shelling:
    """Check that ``order`` shells ``P``; return the restriction faces.

    ``order`` must be a permutation of all facet ids of a valid pure
    complex.  Raises :class:`ShellingError` at the first step whose
    intersection with the prior union is not a nonempty union of closed
    codimension-one faces (with the step index and an offending face id).
    """
    order = tuple(order)
    facets = set(P.facets())
    if set(order) != facets or len(order) != len(facets):
        raise ValueError("order must be a permutation of the facet ids")
    if not P.is_pure():
        raise ValueError("shellings are defined for pure complexes only")
    present: set[int] = set()
    restriction: list[frozenset[int]] = []
    for step, fid in enumerate(order, start=1):
        face = P.face(fid)
        sigma = frozenset(v for v in face.vertices if face.boundary[v] in present)
        if step == 1:
            if sigma:
                raise ShellingError(step, fid, "first facet overlaps nothing yet")
        else:
            if not sigma:
                raise ShellingError(
                    step, fid, "meets the prior union in no codimension-one face"
                )
            # Every present face of this facet must lie under one of the
            # sigma-opposite codimension-one faces, i.e. miss some sigma
            # vertex.  Faces containing all of sigma must be new.
            rest = [v for v in face.vertices if v not in sigma]
            for k in range(len(rest)):
                for extra in combinations(rest, k):
                    sub = sigma | set(extra)
                    if len(sub) == face.rank:
                        continue
                    sub_id = P.face_below(fid, sub)
                    if sub_id in present:
                        raise ShellingError(
                            step,
                            fid,
                            f"face {sub_id} is already present but not below "
                            "any shared codimension-one face",
                        )
        present.update(P.subfaces(fid).values())
        restriction.append(sigma)
    return Shelling(order=order, restriction=tuple(restriction))


def h_from_shelling(shelling: Shelling, d: int) -> tuple[int, ...]:
    """h-vector from restriction sizes: ``h_j`` counts steps with ``|sigma| = j``."""
    out = [0] * (d + 1)
    for sigma in shelling.restriction:
        out[len(sigma)] += 1
    return tuple(out)


BALL = "ball"
CLOSED_PSEUDOMANIFOLD = "closed-pseudomanifold"


@dataclass(frozen=True)
class BallCertificate:
    kind: str  # BALL or CLOSED_PSEUDOMANIFOLD
    shelling: Shelling
    boundary_faces: tuple[int, ...]  # codim-1 faces in exactly one facet


def certify_ball(P: SimplicialPoset, order: Sequence[int]) -> BallCertificate:
    """Certify ``P`` as a shellable ball or closed pseudomanifold.

    A verified shelling plus every codimension-one face in at most two
    facets and at least one in exactly one facet certifies a ball; all
    incidence counts equal to two certify a closed pseudomanifold.
    Shelling failures propagate; an incidence count of three or more
    raises :class:`NotPseudomanifold`.
    """
    shelling = verify_shelling(P, order)
    counts = codim1_incidence(P)
    for fid, c in counts.items():
        if c > 2:
            raise NotPseudomanifold(f"face {fid} lies in {c} facets")
    rim = tuple(sorted(fid for fid, c in counts.items() if c == 1))
    kind = BALL if rim else CLOSED_PSEUDOMANIFOLD
    return BallCertificate(kind=kind, shelling=shelling, boundary_faces=rim)


@dataclass
class RandomBall:
    poset: SimplicialPoset
    order: list[int]
    gave_up: bool = False

    def __iter__(self) -> Iterator:
        return iter((self.poset, self.order))


def random_shellable_ball(
    dim: int, n_facets: int, seed: int, max_rejects: int = 300
) -> RandomBall:
    """Grow a shellable (dim)-ball facet by facet, deterministically per seed.

    Each attachment glues a random nonempty proper union of closed
    codimension-one faces of the new facet onto current boundary faces,
    rejecting proposals that conflict or would push an incidence count
    past two.  If a facet cannot be placed within ``max_rejects``
    proposals the ball built so far is returned with ``gave_up`` set.
    """
    if dim < 1 or n_facets < 1:
        raise ValueError("need dim >= 1 and n_facets >= 1")
    rng = random.Random(seed)
    d = dim + 1
    P = SimplicialPoset()
    order = [attach_facet(P, GlueSpec(d, {})).facet]
    while len(order) < n_facets:
        incidence = codim1_incidence(P)
        rim = sorted(fid for fid, c in incidence.items() if c == 1)
        placed = False
        for _ in range(max_rejects):
            k = min(1 + _geometric(rng), d - 1)
            sigma = sorted(rng.sample(range(1, d + 1), k))
            glue = _propose(P, rng, d, sigma, rim)
            if glue is None:
                continue
            try:
                result = attach_facet(P, GlueSpec(d, glue))
            except GlueError:
                continue
            order.append(result.facet)
            placed = True
            break
        if not placed:
            return RandomBall(P, order, gave_up=True)
    return RandomBall(P, order)


def _geometric(rng: random.Random) -> int:
    n = 0
    while rng.random() < 0.45:
        n += 1
    return n


def _propose(
    P: SimplicialPoset,
    rng: random.Random,
    d: int,
    sigma: list[int],
    rim: list[int],
) -> dict[frozenset[int], int] | None:
    """Pick boundary targets for the codim-1 slots opposite ``sigma``.

    Returns glue assignments (targets plus singleton pins fixing the
    slot-to-vertex bijection) or None when no compatible target exists.
    """
    slots = range(1, d + 1)
    images: dict[int, int] = {}
    used: set[int] = set()
    glue: dict[frozenset[int], int] = {}
    for v in sigma:
        S = frozenset(l for l in slots if l != v)
        fixed = {l: images[l] for l in S if l in images}
        need = set(fixed.values())
        candidates = [
            g
            for g in rim
            if g not in used and need <= set(P.face(g).vertices)
        ]
        if not candidates:
            return None
        g = rng.choice(candidates)
        used.add(g)
        free_verts = [w for w in P.face(g).vertices if w not in need]
        free_slots = [l for l in S if l not in fixed]
        rng.shuffle(free_verts)
        for l, w in zip(free_slots, free_verts):
            images[l] = w
        glue[S] = g
    for l, w in images.items():
        glue[frozenset((l,))] = P.vertex_face(w)
    return glue


def vertex_subset_facet_counts(P: SimplicialPoset, size: int) -> dict[frozenset[int], int]:
    """How many facets contain each ``size``-subset of vertices.

    Only subsets lying in at least one facet appear; all others trivially
    have count zero.  Distinct facets on the same vertex set each count.
    """
    counts: dict[frozenset[int], int] = {}
    for fid in P.facets():
        verts = P.face(fid).vertices
        for sub in combinations(verts, size):
            key = frozenset(sub)
            counts[key] = counts.get(key, 0) + 1
    return counts
