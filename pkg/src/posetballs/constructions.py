"""Shelling-based constructions of poset balls with prescribed h-vectors.

Three construction routes are implemented, plus a dispatcher:

* :func:`construct_basic` realizes any vector whose boundary h-vector is
  strictly positive through the middle index (case 1), or whose first
  boundary zero sits early enough and whose entry sum is even (case 2,
  one extra closing facet).
* :func:`construct_nonzero` handles vectors with a single block of
  positive entries, by first laying down an honest simplicial complex
  whose restriction sizes are 0, 1, ..., k and then running the basic
  driver against its boundary.
* :func:`construct_dim5` is a five-dimensional script for vectors with
  vanishing second boundary entry and odd entry sum, where the general
  routes fail.

All routes share one facet-attachment driver.  Facets carry slot labels
1..d; each step assigns every proper label subset either to an existing
face or to NEW, the glue closure wires and cross-checks the result, and
the number of identified codimension-one faces is the restriction size
of the step.  Every finished construction is re-verified from scratch:
the shelling is checked, the ball certificate computed, and the
h-vector recounted.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Iterable, Sequence

from .complexes import NEW, GlueSpec, SimplicialPoset, attach_facet, validate
from .conditions import ConditionReport, check_necessary, decide
from .hvectors import boundary_h
from .shellings import BALL, Shelling, certify_ball, h_from_shelling


class PreconditionError(ValueError):
    """The input vector does not satisfy this construction's hypotheses."""


class ConstructionError(RuntimeError):
    """Internal consistency failure while building (a bug, not bad input)."""


@dataclass(frozen=True)
class CVector:
    """Nondecreasing step profile of an h-vector.

    ``entries[k]`` is the index j whose running total ``h_0 + ... + h_j``
    first reaches ``k + 1``; value j therefore appears exactly ``h_j``
    times, and the entries are the restriction sizes the basic
    construction realizes.
    """

    total: int
    entries: tuple[int, ...]


def c_vector(h: Sequence[int]) -> CVector:
    h = tuple(int(x) for x in h)
    if not h or h[0] != 1 or any(x < 0 for x in h):
        raise ValueError("need h_0 = 1 and nonnegative entries")
    total = sum(h)
    entries = []
    j = 0
    reached = h[0]
    for k in range(total):
        while reached < k + 1:
            j += 1
            reached += h[j]
        entries.append(j)
    return CVector(total=total, entries=tuple(entries))


@dataclass
class Construction:
    poset: SimplicialPoset
    order: list[int]
    method: str
    h: tuple[int, ...]
    shelling: Shelling
    checkpoint_h: tuple[int, ...] | None = None


@dataclass
class AutoResult:
    status: str  # "constructed" | "infeasible" | "unknown"
    construction: Construction | None = None
    report: ConditionReport | None = None


# -- the facet driver --------------------------------------------------------


def _proper_subsets(d: int) -> list[frozenset[int]]:
    out = []
    for size in range(d):
        for combo in combinations(range(1, d + 1), size):
            out.append(frozenset(combo))
    return out


class _ShellBuilder:
    """Attaches labeled facets and resolves "face of facet t on labels S"."""

    def __init__(self, d: int, poset: SimplicialPoset | None = None) -> None:
        self.P = poset if poset is not None else SimplicialPoset()
        self.d = d
        self.order: list[int] = []
        self.sigma_sizes: list[int] = []
        self._subsets = _proper_subsets(d)
        self._labels: dict[object, tuple[int, dict[int, int]]] = {}
        self._virtual: dict[object, Callable[[frozenset[int]], int]] = {}
        self._incidence: dict[int, int] = {}
        for fid in self.P.facets() if len(self.P) > 1 else []:
            for sub in self.P.face(fid).boundary.values():
                self._incidence[sub] = self._incidence.get(sub, 0) + 1

    def register_virtual(self, tag: object, fn: Callable[[frozenset[int]], int]) -> None:
        self._virtual[tag] = fn

    def face_of(self, tag: object, labels: Iterable[int]) -> int:
        labels = frozenset(labels)
        if tag in self._virtual:
            return self._virtual[tag](labels)
        fid, lab = self._labels[tag]
        return self.P.face_below(fid, {lab[l] for l in labels})

    def attach(
        self,
        tag: object,
        assignments: dict[frozenset[int], int],
        slot_names: dict[int, int] | None = None,
    ):
        d = self.d
        for S, target in assignments.items():
            if len(S) == d - 1 and target != NEW:
                if self._incidence.get(target, 0) != 1:
                    raise ConstructionError(
                        f"facet {tag}: demanded face {target} on labels {sorted(S)} "
                        f"is not on the current boundary "
                        f"(incidence {self._incidence.get(target, 0)})"
                    )
        result = attach_facet(self.P, GlueSpec(d, assignments))
        for sub in self.P.face(result.facet).boundary.values():
            self._incidence[sub] = self._incidence.get(sub, 0) + 1
        sigma = sum(1 for S in result.identified if len(S) == d - 1)
        self.order.append(result.facet)
        self.sigma_sizes.append(sigma)
        names = slot_names or {}
        self._labels[tag] = (
            result.facet,
            {names.get(s, s): v for s, v in result.vertex_images.items()},
        )
        return result

    def h_so_far(self, d: int) -> tuple[int, ...]:
        out = [0] * (d + 1)
        for s in self.sigma_sizes:
            out[s] += 1
        return tuple(out)


def _even_assignments(
    builder: _ShellBuilder, c_now: int, c_prev: int, prev_tag: object, base_tag: object
) -> dict[frozenset[int], int]:
    """Even-step rule with fresh face on labels 1..c_now.

    Labels containing all of 1..c_now are NEW; labels bridging from the
    previous step (containing c_prev+1..c_now but not 1..c_prev) repeat
    the previous facet's face; everything else comes from the base facet.
    """
    top = frozenset(range(1, c_now + 1))
    mid = frozenset(range(c_prev + 1, c_now + 1))
    low = frozenset(range(1, c_prev + 1))
    asg: dict[frozenset[int], int] = {}
    for S in builder._subsets:
        if S >= top:
            asg[S] = NEW
        elif S >= mid and not S >= low:
            asg[S] = builder.face_of(prev_tag, S)
        else:
            asg[S] = builder.face_of(base_tag, S)
    return asg


def _odd_assignments(
    builder: _ShellBuilder, star: Iterable[int], prev_tag: object
) -> dict[frozenset[int], int]:
    """Odd-step rule: copy the previous facet, fresh face on ``star`` and above."""
    star = frozenset(star)
    asg: dict[frozenset[int], int] = {}
    for S in builder._subsets:
        if S >= star:
            asg[S] = NEW
        else:
            asg[S] = builder.face_of(prev_tag, S)
    return asg


def _run_case1(
    builder: _ShellBuilder, c: tuple[int, ...], prefix: str, base_tag: object | None = None
) -> object:
    """Drive the paired-facet construction for the profile ``c``.

    ``base_tag``, when given, stands in for the first facet: its faces are
    used wherever the rules reference facet 1, and no facet is created
    for step 1.  Returns the tag that played the role of facet 1.
    """
    a = len(c)
    if base_tag is None:
        base_tag = (prefix, 1)
        builder.attach(base_tag, {})
        if builder.sigma_sizes[-1] != 0:
            raise ConstructionError("first facet must glue nothing")
    i = 2
    while i <= a:
        prev = base_tag if i == 2 else (prefix, i - 1)
        res_sigma_expect = c[i // 2]
        builder.attach(
            (prefix, i),
            _even_assignments(builder, c[i // 2], c[i // 2 - 1], prev, base_tag),
        )
        if builder.sigma_sizes[-1] != res_sigma_expect:
            raise ConstructionError(
                f"step {i}: restriction size {builder.sigma_sizes[-1]}, "
                f"expected {res_sigma_expect}"
            )
        if i + 1 <= a:
            lo = c[i // 2] + 1
            hi = c[i // 2] + c[a - i // 2]
            builder.attach(
                (prefix, i + 1), _odd_assignments(builder, range(lo, hi + 1), (prefix, i))
            )
            if builder.sigma_sizes[-1] != c[a - i // 2]:
                raise ConstructionError(
                    f"step {i + 1}: restriction size {builder.sigma_sizes[-1]}, "
                    f"expected {c[a - i // 2]}"
                )
        i += 2
    return base_tag


def _case2_first_zero(h: tuple[int, ...], bh: tuple[int, ...]) -> int:
    """Validate the closing-facet hypotheses and return the first boundary zero."""
    d = len(h) - 1
    half = (d - 1) // 2
    neg = [j for j in range(half + 1) if bh[j] < 0]
    if neg:
        raise PreconditionError(
            f"boundary h_{neg[0]} = {bh[neg[0]]} < 0: no construction case applies"
        )
    zeros = [j for j in range(1, half + 1) if bh[j] == 0]
    if not zeros:
        raise PreconditionError(
            f"no boundary zero at or below index {half}: closing-facet case inapplicable"
        )
    n = zeros[0]
    if sum(h) % 2 != 0:
        raise PreconditionError(
            f"boundary h_{n} = 0 but the entry sum {sum(h)} is odd"
        )
    for l in range(n + 1, d - n):
        cap = sum(h[l - i] for i in range(n))
        if bh[l] > cap:
            raise PreconditionError(
                f"boundary h_{l} = {bh[l]} exceeds h_{l} + ... + h_{l - n + 1} = {cap}"
            )
    return n


def _basic_case(h: tuple[int, ...]) -> tuple[str, int | None]:
    """Which case of the basic construction applies to ``h`` (raises if neither)."""
    d = len(h) - 1
    if h[0] != 1:
        raise PreconditionError(f"h_0 = {h[0]} != 1")
    if h[d] != 0:
        raise PreconditionError(f"h_{d} = {h[d]} != 0")
    if any(x < 0 for x in h):
        raise PreconditionError("entries must be nonnegative")
    bh = boundary_h(h)
    half = (d - 1) // 2
    if all(bh[j] > 0 for j in range(half + 1)):
        return "case1", None
    return "case2", _case2_first_zero(h, bh)


def construct_basic(h: Sequence[int]) -> Construction:
    """Build a shellable ball with h-vector ``h`` via the paired-facet rules."""
    h = tuple(int(x) for x in h)
    d = len(h) - 1
    if d < 1:
        raise PreconditionError("need at least two entries")
    case, n = _basic_case(h)
    builder = _ShellBuilder(d)
    if case == "case1":
        _run_case1(builder, c_vector(h).entries, "f")
        method = "thm6.2-case1"
    else:
        assert n is not None
        reduced = list(h)
        if reduced[d - n] <= 0:
            raise ConstructionError(f"h_{d - n} = 0 cannot absorb the closing facet")
        reduced[d - n] -= 1
        cv = c_vector(reduced)
        a = cv.total
        base = _run_case1(builder, cv.entries, "f")
        prev = ("f", a) if a >= 2 else base
        builder.attach(
            ("f", a + 1),
            _even_assignments(builder, d - n, cv.entries[(a - 1) // 2], prev, base),
        )
        if builder.sigma_sizes[-1] != d - n:
            raise ConstructionError(
                f"closing facet restriction size {builder.sigma_sizes[-1]}, expected {d - n}"
            )
        method = "thm6.2-case2"
    return _finish(builder, h, method)


def construct_nonzero(h: Sequence[int]) -> Construction:
    """Build a ball whose h-vector has one solid block of positive entries.

    Needs ``h_1, ..., h_k > 0`` and zeros beyond, and the entrywise
    reduced vector must satisfy one of the basic cases.  A simplicial
    complex with restriction sizes 0..k is laid down first; the basic
    driver then attaches to its boundary through a stand-in for facet 1.
    """
    h = tuple(int(x) for x in h)
    d = len(h) - 1
    if h[0] != 1:
        raise PreconditionError(f"h_0 = {h[0]} != 1")
    if any(x < 0 for x in h):
        raise PreconditionError("entries must be nonnegative")
    positive = [j for j in range(1, d + 1) if h[j] > 0]
    if not positive:
        raise PreconditionError("no positive entries past h_0: block shape absent")
    k = max(positive)
    if k > d - 1 or any(h[j] == 0 for j in range(1, k + 1)):
        raise PreconditionError(
            "entries must be positive exactly on a block 1..k with k <= d-1"
        )
    reduced = (1,) + tuple(h[j] - 1 for j in range(1, k + 1)) + (0,) * (d - k)
    case, n = _basic_case(reduced)  # PreconditionError propagates

    builder = _ShellBuilder(d)
    P = builder.P
    nominal_vertex: dict[int, int] = {}
    g_fid: list[int] = []
    for i in range(k + 1):
        nominals = [t for t in range(1, d + 2) if t != i + 1]
        asg: dict[frozenset[int], int] = {}
        prefix_block = frozenset(range(1, i + 1))
        for S in builder._subsets:
            T = frozenset(nominals[s - 1] for s in S)
            if i == 0:
                continue
            if not T >= prefix_block:
                j = min(j for j in range(i) if (j + 1) not in T)
                asg[S] = P.face_below(g_fid[j], {nominal_vertex[t] for t in T})
            else:
                asg[S] = NEW
        res = builder.attach(("G", i), asg, slot_names={s: nominals[s - 1] for s in range(1, d + 1)})
        g_fid.append(res.facet)
        for s, v in res.vertex_images.items():
            nominal_vertex.setdefault(nominals[s - 1], v)
        if builder.sigma_sizes[-1] != i:
            raise ConstructionError(
                f"base complex facet {i}: restriction size {builder.sigma_sizes[-1]} != {i}"
            )

    base_block = frozenset(range(1, k + 2))

    def standin(S: frozenset[int]) -> int:
        T = frozenset(l if l <= k + 1 else l + 1 for l in S)
        if T >= base_block:
            raise ConstructionError(
                f"stand-in face on labels {sorted(S)} does not exist in the base complex"
            )
        j = min(j for j in range(k + 1) if (j + 1) not in T)
        return P.face_below(g_fid[j], {nominal_vertex[t] for t in T})

    builder.register_virtual("base", standin)
    if case == "case1":
        _run_case1(builder, c_vector(reduced).entries, "f", base_tag="base")
    else:
        assert n is not None
        shrunk = list(reduced)
        shrunk[d - n] -= 1
        cv = c_vector(shrunk)
        a = cv.total
        _run_case1(builder, cv.entries, "f", base_tag="base")
        prev = ("f", a) if a >= 2 else "base"
        builder.attach(
            ("f", a + 1),
            _even_assignments(builder, d - n, cv.entries[(a - 1) // 2], prev, "base"),
        )
    return _finish(builder, h, "thm6.3")


_DIM5_SCRIPTS = [
    ((1, 2, 3, 4, 5, 7), 1, [(1, 2, 3, 4, 5)]),
    ((1, 2, 3, 4, 6, 7), 2, [(1, 2, 3, 4, 6), (1, 2, 3, 4, 7)]),
    ((1, 2, 3, 5, 6, 7), 3, [(1, 2, 3, 5, 6), (1, 2, 3, 5, 7), (1, 2, 3, 6, 7)]),
    ((1, 2, 4, 5, 6, 7), 4, [(1, 2, 4, 5, 6), (1, 2, 4, 5, 7), (1, 2, 4, 6, 7), (1, 2, 5, 6, 7)]),
    ((1, 3, 4, 5, 6, 7), 4, [(1, 3, 4, 5, 6), (1, 3, 4, 5, 7), (1, 3, 4, 6, 7), (1, 3, 5, 6, 7)]),
    ((2, 3, 4, 5, 6, 7), 4, [(2, 3, 4, 5, 6), (2, 3, 4, 5, 7), (2, 3, 4, 6, 7), (2, 3, 5, 6, 7)]),
]


def construct_dim5(h: Sequence[int]) -> Construction:
    """Five-ball construction for ``(1, h1, h2, h3, h4, 0, 0)`` with
    ``h1, h2 >= 1``, odd entry sum, and ``1 + h1 + h2 - h4 = 0``.

    Stage one builds a ball with h-vector ``(1,0,0,h3-1,0,0,0)``; stage
    two attaches six scripted facets around a fresh vertex, reaching the
    checkpoint h-vector ``(1,1,1,h3,3,0,0)``; stage three finishes with
    the basic driver on ``(1,h1-1,h2-1,0,h4-3,0,0)``, its first facet
    played by the last scripted one.
    """
    h = tuple(int(x) for x in h)
    if len(h) != 7:
        raise PreconditionError("this construction is specific to five-balls (7 entries)")
    if h[0] != 1 or h[5] != 0 or h[6] != 0 or any(x < 0 for x in h):
        raise PreconditionError("need shape (1, h1, h2, h3, h4, 0, 0) with nonnegative entries")
    h1, h2, h3, h4 = h[1], h[2], h[3], h[4]
    if h1 < 1 or h2 < 1:
        raise PreconditionError(f"need h_1, h_2 >= 1, got {h1}, {h2}")
    if sum(h[:5]) % 2 != 1:
        raise PreconditionError(f"entry sum {sum(h[:5])} must be odd")
    if 1 + h1 + h2 - h4 != 0:
        raise PreconditionError(f"need 1 + h_1 + h_2 - h_4 = 0, got {1 + h1 + h2 - h4}")
    if h3 % 2 != 1:
        raise ConstructionError("entry sum parity should force h_3 odd")

    builder = _ShellBuilder(6)
    P = builder.P
    stage1 = (1, 0, 0, h3 - 1, 0, 0, 0)
    _run_case1(builder, c_vector(stage1).entries, "w")
    first = ("w", 1)
    last = ("w", h3)

    vm1 = builder._labels[first][1]
    apex: int | None = None
    for m, (nominals, sigma_expect, idents) in enumerate(_DIM5_SCRIPTS, start=1):
        slot_of = {nom: idx + 1 for idx, nom in enumerate(nominals)}
        asg: dict[frozenset[int], int] = {}
        for nom_subset in idents:
            S = frozenset(slot_of[t] for t in nom_subset)
            if 7 not in nom_subset:
                # The first three scripts meet the stage-one boundary at
                # facet-one faces, the last three at last-facet faces.
                src: object = last if m >= 4 else first
            else:
                # Label sets through the fresh vertex repeat the latest
                # earlier script that carries all of their labels.
                src = ("s", max(
                    j for j in range(1, m)
                    if set(nom_subset) <= set(_DIM5_SCRIPTS[j - 1][0])
                ))
            asg[S] = builder.face_of(src, nom_subset)
        if m >= 4:
            asg[frozenset(slot_of[t] for t in (4, 5, 6))] = builder.face_of(last, (4, 5, 6))
        for nom in nominals:
            if nom == 7:
                if apex is not None:
                    asg[frozenset((slot_of[7],))] = P.vertex_face(apex)
            else:
                asg[frozenset((slot_of[nom],))] = P.vertex_face(vm1[nom])
        res = builder.attach(("s", m), asg, slot_names={s: nom for nom, s in slot_of.items()})
        if apex is None:
            apex = res.vertex_images[slot_of[7]]
        if builder.sigma_sizes[-1] != sigma_expect:
            raise ConstructionError(
                f"scripted facet {m}: restriction size {builder.sigma_sizes[-1]}, "
                f"expected {sigma_expect}"
            )

    checkpoint = builder.h_so_far(6)
    if checkpoint != (1, 1, 1, h3, 3, 0, 0):
        raise ConstructionError(
            f"checkpoint h-vector {checkpoint} != (1, 1, 1, {h3}, 3, 0, 0)"
        )

    s6_fid, s6_labels = builder._labels[("s", 6)]

    def standin(S: frozenset[int]) -> int:
        return P.face_below(s6_fid, {s6_labels[l + 1] for l in S})

    builder.register_virtual("u-base", standin)
    stage3 = (1, h1 - 1, h2 - 1, 0, h4 - 3, 0, 0)
    case, _ = _basic_case(stage3)
    if case != "case1":
        raise ConstructionError(f"closing vector {stage3} should satisfy case 1")
    _run_case1(builder, c_vector(stage3).entries, "u", base_tag="u-base")

    done = _finish(builder, h, "prop6.4")
    done.checkpoint_h = checkpoint
    return done


def _finish(builder: _ShellBuilder, h: tuple[int, ...], method: str) -> Construction:
    """Re-verify a finished build from scratch and package it."""
    P = builder.P
    d = len(h) - 1
    bad = validate(P)
    if bad:
        raise ConstructionError(f"built complex fails validation: {bad[0]}")
    cert = certify_ball(P, builder.order)
    if cert.kind != BALL:
        raise ConstructionError(f"built complex certifies as {cert.kind}, not a ball")
    got = h_from_shelling(cert.shelling, d)
    if got != h:
        raise ConstructionError(f"built h-vector {got} != requested {h}")
    return Construction(
        poset=P, order=list(builder.order), method=method, h=h, shelling=cert.shelling
    )


def construct_auto(h: Sequence[int]) -> AutoResult:
    """Decide-and-construct dispatcher.

    For ball dimensions three through six the complete decider gives a
    definite infeasible verdict; accepted vectors are always built.  In
    other dimensions a vector failing the necessary conditions is
    infeasible, a vector passing some construction's hypotheses is built,
    and anything else is honestly unknown.
    """
    h = tuple(int(x) for x in h)
    d = len(h) - 1
    ball_dim = d - 1
    if 3 <= ball_dim <= 6:
        decision = decide(ball_dim, h)
        if not decision.feasible:
            return AutoResult("infeasible", report=decision.report)
    elif d >= 2:
        report = check_necessary(h)
        if not report.ok:
            return AutoResult("infeasible", report=report)
    for builder_fn in (construct_basic, construct_nonzero, construct_dim5):
        try:
            return AutoResult("constructed", construction=builder_fn(h))
        except PreconditionError:
            continue
    if 3 <= ball_dim <= 6:
        raise ConstructionError(
            f"decider accepted {h} but no construction applies (dispatch bug)"
        )
    return AutoResult("unknown")
