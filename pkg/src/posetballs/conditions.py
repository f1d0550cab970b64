"""Necessary conditions on ball h-vectors and complete deciders for dims 3-6.

Every condition is reported with a name, a status (pass, fail, or
inapplicable when its hypothesis does not hold), and the instantiated
inequality, so a failing vector can be audited by hand.  For ball
dimensions three through six the decider is a complete characterization:
it accepts exactly the h-vectors of shellable poset balls, and it agrees
with :func:`check_necessary` on every vector.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .hvectors import boundary_h

PASS = "pass"
FAIL = "fail"
NA = "inapplicable"


@dataclass(frozen=True)
class Condition:
    name: str
    status: str
    detail: str


@dataclass(frozen=True)
class ConditionReport:
    conditions: tuple[Condition, ...]

    @property
    def ok(self) -> bool:
        return all(c.status != FAIL for c in self.conditions)

    @property
    def failures(self) -> tuple[Condition, ...]:
        return tuple(c for c in self.conditions if c.status == FAIL)

    def to_json_obj(self) -> dict:
        return {
            "verdict": PASS if self.ok else FAIL,
            "conditions": [
                {"name": c.name, "status": c.status, "detail": c.detail}
                for c in self.conditions
            ],
        }


def _cond(out: list[Condition], name: str, applicable: bool, holds: bool, detail: str) -> None:
    if not applicable:
        out.append(Condition(name, NA, detail))
    elif holds:
        out.append(Condition(name, PASS, detail))
    else:
        out.append(Condition(name, FAIL, detail))


def check_necessary(h: Sequence[int]) -> ConditionReport:
    """Run every known necessary condition on a ball h-vector candidate.

    Condition names:

    * ``BC1``   basic shape: h_0 = 1, h_d = 0, all entries nonnegative.
    * ``BC2``   boundary h nonnegative through the middle index.
    * ``BC3``   (d odd, odd entry sum) boundary h strictly positive there.
    * ``MONO``  (boundary h_1 = 0) h dominates the boundary h entrywise.
    * ``P-h1``  (h_1 = 0, interior boundary zero) even entry sum.
    * ``P-h2``  (h_2 = 0, interior boundary zero) even entry sum.
    * ``P-bh0`` (boundary h_1 = 0, some interior h zero) even entry sum.
    * ``P-bh1`` (boundary h_1 = 1, interior boundary zero, some h zero)
      even entry sum.
    """
    h = tuple(int(x) for x in h)
    d = len(h) - 1
    if d < 2:
        raise ValueError("need at least three entries (d >= 2)")
    out: list[Condition] = []
    if h[0] != 1:
        _cond(out, "BC1", True, False, f"h_0 = {h[0]} != 1")
        return ConditionReport(tuple(out))
    bc1_bad = []
    if h[d] != 0:
        bc1_bad.append(f"h_{d} = {h[d]} != 0")
    bc1_bad += [f"h_{i} = {h[i]} < 0" for i in range(d + 1) if h[i] < 0]
    _cond(out, "BC1", True, not bc1_bad,
          "; ".join(bc1_bad) if bc1_bad else f"h_0 = 1, h_{d} = 0, entries nonnegative")

    bh = boundary_h(h)
    total = sum(h)
    half = (d - 1) // 2

    bad = [f"boundary h_{j} = {bh[j]} < 0" for j in range(half + 1) if bh[j] < 0]
    _cond(out, "BC2", True, not bad,
          "; ".join(bad) if bad else f"boundary h_j >= 0 for j <= {half}")

    app = d % 2 == 1 and total % 2 == 1
    bad = [f"boundary h_{j} = {bh[j]} <= 0" for j in range(half + 1) if bh[j] <= 0] if app else []
    _cond(out, "BC3", app, not bad,
          "; ".join(bad) if bad else f"d = {d} odd, sum = {total} odd: need boundary h_j > 0 for j <= {half}")

    app = bh[1] == 0
    bad = [f"h_{i} = {h[i]} < boundary h_{i} = {bh[i]}" for i in range(d) if h[i] < bh[i]] if app else []
    _cond(out, "MONO", app, not bad,
          "; ".join(bad) if bad else "boundary h_1 = 0: h_i >= boundary h_i for i <= d-1")

    interior_bh_zero = any(bh[k] == 0 for k in range(1, d - 1))
    interior_h_zero = any(h[k] == 0 for k in range(1, d))

    app = h[1] == 0 and interior_bh_zero
    _cond(out, "P-h1", app, total % 2 == 0,
          f"h_1 = 0 with an interior boundary zero: sum = {total} must be even")

    app = d >= 2 and h[2] == 0 and interior_bh_zero
    _cond(out, "P-h2", app, total % 2 == 0,
          f"h_2 = 0 with an interior boundary zero: sum = {total} must be even")

    app = bh[1] == 0 and interior_h_zero
    _cond(out, "P-bh0", app, total % 2 == 0,
          f"boundary h_1 = 0 with an interior h zero: sum = {total} must be even")

    app = (
        bh[1] == 1
        and any(bh[j] == 0 for j in range(2, d - 1))
        and any(h[k] == 0 for k in range(1, d))
    )
    _cond(out, "P-bh1", app, total % 2 == 0,
          f"boundary h_1 = 1 with interior boundary zero and an h zero: sum = {total} must be even")

    return ConditionReport(tuple(out))


@dataclass(frozen=True)
class Decision:
    feasible: bool
    report: ConditionReport


def _shape_report(h: tuple[int, ...], d: int) -> list[Condition]:
    bad = []
    if h[0] != 1:
        bad.append(f"h_0 = {h[0]} != 1")
    if h[d] != 0:
        bad.append(f"h_{d} = {h[d]} != 0")
    bad += [f"h_{i} = {h[i]} < 0" for i in range(1, d) if h[i] < 0]
    return [Condition("nonnegativity", FAIL if bad else PASS,
                      "; ".join(bad) if bad else f"h_0 = 1, h_{d} = 0, middle entries nonnegative")]


def decide_dim3(h: Sequence[int]) -> Decision:
    """Complete feasibility test for three-balls (length-5 h-vectors)."""
    h = tuple(int(x) for x in h)
    if len(h) != 5:
        raise ValueError("dimension-3 decider needs exactly 5 entries")
    out = _shape_report(h, 4)
    if out[0].status == FAIL:
        return Decision(False, ConditionReport(tuple(out)))
    _cond(out, "h3-cap", True, h[3] <= h[1] + 1,
          f"h_3 = {h[3]} <= h_1 + 1 = {h[1] + 1}")
    app = h[1] == 0 and h[3] == 1
    _cond(out, "h2-parity", app, h[2] % 2 == 0,
          f"h_1 = 0 and h_3 = 1: h_2 = {h[2]} must be even")
    report = ConditionReport(tuple(out))
    return Decision(report.ok, report)


def decide_dim4(h: Sequence[int]) -> Decision:
    """Complete feasibility test for four-balls (length-6 h-vectors)."""
    h = tuple(int(x) for x in h)
    if len(h) != 6:
        raise ValueError("dimension-4 decider needs exactly 6 entries")
    out = _shape_report(h, 5)
    if out[0].status == FAIL:
        return Decision(False, ConditionReport(tuple(out)))
    _cond(out, "h4-cap", True, h[4] <= h[1] + 1,
          f"h_4 = {h[4]} <= h_1 + 1 = {h[1] + 1}")
    app = h[4] == h[1] + 1
    _cond(out, "h4-cap-parity", app, (h[2] - h[3]) % 2 == 0,
          f"h_4 = h_1 + 1: h_2 - h_3 = {h[2] - h[3]} must be even")
    _cond(out, "tail-sum-cap", True, h[3] + h[4] <= h[1] + h[2] + 1,
          f"h_3 + h_4 = {h[3] + h[4]} <= h_1 + h_2 + 1 = {h[1] + h[2] + 1}")
    report = ConditionReport(tuple(out))
    return Decision(report.ok, report)


def decide_dim5(h: Sequence[int]) -> Decision:
    """Complete feasibility test for five-balls (length-7 h-vectors)."""
    h = tuple(int(x) for x in h)
    if len(h) != 7:
        raise ValueError("dimension-5 decider needs exactly 7 entries")
    out = _shape_report(h, 6)
    if out[0].status == FAIL:
        return Decision(False, ConditionReport(tuple(out)))
    bh = boundary_h(h)
    total = sum(h)
    _cond(out, "bh1-nonneg", True, bh[1] >= 0, f"boundary h_1 = {bh[1]} >= 0")
    app = bh[1] == 0
    bad = [f"h_{i} = {h[i]} < boundary h_{i} = {bh[i]}" for i in range(6) if h[i] < bh[i]] if app else []
    _cond(out, "bh1-monotone", app, not bad,
          "; ".join(bad) if bad else "boundary h_1 = 0: h_i >= boundary h_i for i <= 5")
    app = bh[1] == 0 and any(h[j] == 0 for j in range(1, 5))
    _cond(out, "bh1-parity", app, total % 2 == 0,
          f"boundary h_1 = 0 and h_j = 0 for some 1 <= j <= 4: sum = {total} must be even")
    _cond(out, "bh2-nonneg", True, bh[2] >= 0, f"boundary h_2 = {bh[2]} >= 0")
    app = bh[2] == 0 and (h[1] == 0 or h[2] == 0)
    _cond(out, "bh2-parity", app, total % 2 == 0,
          f"boundary h_2 = 0 and h_1 = 0 or h_2 = 0: sum = {total} must be even")
    report = ConditionReport(tuple(out))
    return Decision(report.ok, report)


def decide_dim6(h: Sequence[int]) -> Decision:
    """Complete feasibility test for six-balls (length-8 h-vectors)."""
    h = tuple(int(x) for x in h)
    if len(h) != 8:
        raise ValueError("dimension-6 decider needs exactly 8 entries")
    out = _shape_report(h, 7)
    if out[0].status == FAIL:
        return Decision(False, ConditionReport(tuple(out)))
    bh = boundary_h(h)
    total = sum(h)
    bad = [f"boundary h_{i} = {bh[i]} < 0" for i in range(4) if bh[i] < 0]
    _cond(out, "boundary-nonneg", True, not bad,
          "; ".join(bad) if bad else "boundary h_i >= 0 for i <= 3")
    app = any(bh[i] == 0 for i in range(1, 4))
    _cond(out, "boundary-zero-parity", app, total % 2 == 0,
          f"boundary h_i = 0 for some 1 <= i <= 3: sum = {total} must be even")
    app = bh[1] == 0
    bad = [f"h_{i} = {h[i]} < boundary h_{i} = {bh[i]}" for i in range(7) if h[i] < bh[i]] if app else []
    _cond(out, "monotonicity", app, not bad,
          "; ".join(bad) if bad else "boundary h_1 = 0: h_i >= boundary h_i for i <= 6")
    report = ConditionReport(tuple(out))
    return Decision(report.ok, report)


_DECIDERS = {3: decide_dim3, 4: decide_dim4, 5: decide_dim5, 6: decide_dim6}


def decide(dim: int, h: Sequence[int]) -> Decision:
    """Dispatch to the complete decider for ball dimension ``dim`` (3-6)."""
    if dim not in _DECIDERS:
        raise ValueError(f"no complete decider for dimension {dim}")
    return _DECIDERS[dim](h)


def candidate_vectors(dim: int, max_facets: int) -> Iterator[tuple[int, ...]]:
    """All h-shaped vectors (h_0 = 1, last entry 0, nonnegative, sum bound).

    Yields in lexicographic order.
    """
    d = dim + 1
    if max_facets < 1:
        return

    def rec(prefix: tuple[int, ...], budget: int) -> Iterator[tuple[int, ...]]:
        if len(prefix) == d:
            yield prefix + (0,)
            return
        for x in range(budget + 1):
            yield from rec(prefix + (x,), budget - x)

    yield from rec((1,), max_facets - 1)


def enumerate_feasible(dim: int, max_facets: int) -> list[tuple[int, ...]]:
    """All feasible ball h-vectors of dimension ``dim`` with at most
    ``max_facets`` facets, in lexicographic order."""
    decider = _DECIDERS.get(dim)
    if decider is None:
        raise ValueError(f"no complete decider for dimension {dim}")
    return [h for h in candidate_vectors(dim, max_facets) if decider(h).feasible]
