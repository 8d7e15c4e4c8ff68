"""Crossing readout: recover a braid word from a family of plane curves.

Given ``s`` consistently-indexed curves ``t -> x(t) + i y(t)`` on
``[0, 2pi]``, scan for instants where two curves adjacent in the strand
order exchange places and record each exchange as a braid letter.  Strand
order is by ascending x (ties by ascending y); the letter's sign is the
sign of ``y_left - y_right`` at the exchange instant, where "left" is the
strand with the smaller x just before the swap.  These conventions are
fixed project-wide: the strand-path construction in
:mod:`braidfield.trig` produces diagrams that read back their input word,
and the sphere-link extraction reuses the same reader, so word-level
invariants are directly comparable across all three.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .braid import BraidWord, closure_permutation, components, word_invariants


class ReadoutError(RuntimeError):
    """Raised when the crossing structure cannot be resolved."""


def strand_order(pts: np.ndarray) -> tuple[int, ...]:
    """Indices of the curves ordered by ascending x, ties by ascending y."""
    pts = np.asarray(pts)
    return tuple(np.lexsort((np.arange(len(pts)), pts.imag, pts.real)))


@dataclass
class ReadoutResult:
    word: BraidWord
    min_separation: float
    crossing_times: tuple[float, ...]

    @cached_property
    def permutation(self):
        return closure_permutation(self.word)

    @cached_property
    def component_count(self) -> int:
        return components(self.word).count

    @cached_property
    def invariants(self):
        return word_invariants(self.word)

    def matches(self, other: BraidWord) -> bool:
        """Whether permutation, exponent sum and linking matrix all agree."""
        return (self.permutation == closure_permutation(other)
                and self.invariants == word_invariants(other))


def _is_adjacent_swap(lo, hi):
    """Positions p where lo and hi differ by swapping (p, p+1); None if not
    a product of disjoint adjacent transpositions."""
    diff = [p for p in range(len(lo)) if lo[p] != hi[p]]
    swaps = []
    k = 0
    while k < len(diff):
        p = diff[k]
        if (k + 1 < len(diff) and diff[k + 1] == p + 1
                and lo[p] == hi[p + 1] and lo[p + 1] == hi[p]):
            swaps.append(p)
            k += 2
        else:
            return None
    return swaps


def _locate_swap(refine, a, b, t_lo, t_hi, x_tol=1e-12):
    """Bisect for the instant where curves a and b exchange x order."""
    def xdiff(t):
        pts = refine(t)
        return pts[a].real - pts[b].real

    d_lo, d_hi = xdiff(t_lo), xdiff(t_hi)
    if d_lo == 0.0:
        t_lo += (t_hi - t_lo) * 1e-9
        d_lo = xdiff(t_lo)
    if d_hi == 0.0:
        t_hi -= (t_hi - t_lo) * 1e-9
        d_hi = xdiff(t_hi)
    if d_lo == 0.0 or d_hi == 0.0 or np.sign(d_lo) == np.sign(d_hi):
        # No strict bracket; fall back to the midpoint.
        return 0.5 * (t_lo + t_hi)
    while t_hi - t_lo > x_tol:
        t_mid = 0.5 * (t_lo + t_hi)
        d_mid = xdiff(t_mid)
        if d_mid == 0.0:
            return t_mid
        if np.sign(d_mid) == np.sign(d_lo):
            t_lo, d_lo = t_mid, d_mid
        else:
            t_hi, d_hi = t_mid, d_mid
    return 0.5 * (t_lo + t_hi)


def _resolve_interval(refine, t_lo, t_hi, pts_lo, pts_hi, dt_min, depth=0):
    """Crossings in (t_lo, t_hi) as (t*, sorted position, first, second)."""
    order_lo = strand_order(pts_lo)
    order_hi = strand_order(pts_hi)
    if order_lo == order_hi:
        # Any hidden exchanges come in cancelling pairs; safe to skip.
        return []
    swaps = _is_adjacent_swap(order_lo, order_hi)
    if swaps is not None and (len(swaps) == 1 or t_hi - t_lo < dt_min):
        out = []
        for p in swaps:
            a, b = order_lo[p], order_lo[p + 1]
            t_star = _locate_swap(refine, a, b, t_lo, t_hi)
            out.append((t_star, p, a, b))
        return out
    if t_hi - t_lo < dt_min:
        raise ReadoutError(
            f"unresolvable strand-order change near t={t_lo:.6f}: "
            f"{order_lo} -> {order_hi}")
    t_mid = 0.5 * (t_lo + t_hi)
    pts_mid = refine(t_mid)
    left = _resolve_interval(refine, t_lo, t_mid, pts_lo, pts_mid, dt_min, depth + 1)
    right = _resolve_interval(refine, t_mid, t_hi, pts_mid, pts_hi, dt_min, depth + 1)
    return left + right


def crossing_readout(ts: np.ndarray, grid: np.ndarray, refine) -> ReadoutResult:
    """Read the braid word of a labeled curve family.

    ``ts`` is an increasing parameter grid covering one period including
    both endpoints, ``grid[k]`` the complex curve positions at ``ts[k]``
    (consistent curve labels along k), and ``refine(t)`` evaluates the
    same labeled family at an arbitrary parameter.
    """
    ts = np.asarray(ts, dtype=float)
    grid = np.asarray(grid, dtype=complex)
    n_curves = grid.shape[1]

    # minimum pairwise separation over the base grid
    if n_curves > 1:
        diffs = grid[:, :, None] - grid[:, None, :]
        dist = np.abs(diffs)
        dist[:, range(n_curves), range(n_curves)] = np.inf
        min_sep = float(dist.min())
    else:
        min_sep = float("inf")

    dt_min = (ts[-1] - ts[0]) / max(len(ts) - 1, 1) / 2 ** 18
    crossings = []
    for k in range(len(ts) - 1):
        found = _resolve_interval(refine, ts[k], ts[k + 1],
                                  grid[k], grid[k + 1], dt_min)
        crossings.extend(found)
    crossings.sort(key=lambda c: c[0])

    letters = []
    times = []
    for t_star, pos, a, b in crossings:
        pts = refine(t_star)
        ydiff = pts[a].imag - pts[b].imag
        if ydiff == 0.0:
            raise ReadoutError(
                f"curves {a} and {b} coincide at crossing t={t_star:.6f}")
        letters.append((pos + 1, 1 if ydiff > 0 else -1))
        times.append(float(t_star))

    word = BraidWord(n_curves, tuple(letters))
    return ReadoutResult(word=word, min_separation=min_sep,
                         crossing_times=tuple(times))
