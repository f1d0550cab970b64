"""Integer vector arithmetic for face counts of simplicial cell complexes.

An f-vector ``(f_-1, f_0, ..., f_(d-1))`` lists face counts by dimension,
with ``f_-1 = 1`` for the empty face.  The h-vector ``(h_0, ..., h_d)`` is
the equivalent encoding defined by

    sum_i h_i x^i  =  sum_i f_(i-1) x^i (1-x)^(d-i).

Vectors are plain tuples of Python ints (arbitrary precision); the
parameter ``d`` is implicit in the length, which is always ``d + 1``.
"""

from __future__ import annotations

from math import comb
from typing import Sequence


def _as_tuple(v: Sequence[int], name: str) -> tuple[int, ...]:
    t = tuple(int(x) for x in v)
    if len(t) < 1:
        raise ValueError(f"{name} must have at least one entry")
    return t


def f_to_h(f: Sequence[int]) -> tuple[int, ...]:
    """Convert an f-vector ``(f_-1, ..., f_(d-1))`` to its h-vector.

    ``h_k = sum_(i<=k) (-1)^(k-i) C(d-i, k-i) f_(i-1)``.
    """
    f = _as_tuple(f, "f-vector")
    if f[0] != 1:
        raise ValueError(f"f-vector must start with f_-1 = 1, got {f[0]}")
    d = len(f) - 1
    return tuple(
        sum((-1) ** (k - i) * comb(d - i, k - i) * f[i] for i in range(k + 1))
        for k in range(d + 1)
    )


def h_to_f(h: Sequence[int]) -> tuple[int, ...]:
    """Invert :func:`f_to_h`: ``f_(j-1) = sum_(i<=j) C(d-i, j-i) h_i``.

    Raises ``ValueError`` if some entry comes out negative, in which case
    the input cannot be the h-vector of any complex.
    """
    h = _as_tuple(h, "h-vector")
    d = len(h) - 1
    f = tuple(
        sum(comb(d - i, j - i) * h[i] for i in range(j + 1)) for j in range(d + 1)
    )
    bad = [j for j, x in enumerate(f) if x < 0]
    if bad:
        raise ValueError(f"no complex has this h-vector: f_{bad[0] - 1} = {f[bad[0]]} < 0")
    return f


def g_from_h(h: Sequence[int]) -> tuple[int, ...]:
    """Difference vector ``g_0 = 1, g_i = h_i - h_(i-1)``."""
    h = _as_tuple(h, "h-vector")
    return (1,) + tuple(h[i] - h[i - 1] for i in range(1, len(h)))


def boundary_h(h: Sequence[int]) -> tuple[int, ...]:
    """Boundary-sphere h-vector of a ball candidate with h-vector ``h``.

    Returns the length-``d`` vector with entries
    ``sum_(i<=j) (h_i - h_(d-i))`` for ``0 <= j <= d-1``.  Total on any
    input; entries may be negative (feasibility is a separate question),
    but the result is always palindromic.
    """
    h = _as_tuple(h, "h-vector")
    d = len(h) - 1
    if d < 1:
        raise ValueError("need at least two entries")
    out = []
    acc = 0
    for j in range(d):
        acc += h[j] - h[d - j]
        out.append(acc)
    return tuple(out)


def sphere_h_valid(h: Sequence[int]) -> tuple[bool, str]:
    """Decide whether ``h`` is the h-vector of some simplicial poset sphere.

    True iff ``h_0 = 1``, ``h`` is palindromic, and either all entries are
    positive or the entry sum is even.  Returns ``(verdict, reason)``.
    """
    h = _as_tuple(h, "h-vector")
    d = len(h) - 1
    if h[0] != 1:
        return False, f"h_0 = {h[0]} != 1"
    for i in range(d + 1):
        if h[i] != h[d - i]:
            return False, f"not palindromic: h_{i} = {h[i]} != h_{d - i} = {h[d - i]}"
    if all(x > 0 for x in h):
        return True, "all entries positive"
    if sum(h) % 2 == 0:
        return True, f"entry sum {sum(h)} is even"
    return False, f"some entry is zero and entry sum {sum(h)} is odd"
