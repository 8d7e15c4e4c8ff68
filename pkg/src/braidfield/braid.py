"""Braid words, closure permutations and combinatorial link invariants.

A braid word on ``s`` strands is a sequence of Artin generators sigma_i
(1 <= i < s) with signs.  Letters act left-to-right: the k-th letter swaps
the strands currently occupying positions ``i_k`` and ``i_k + 1``.  The
closure permutation below is the composition of the corresponding
transpositions in word order; its cycles are the components of the braid
closure.  The invariants computed here (component cycles, exponent sum,
pairwise linking matrix) serve as the oracle every later readout of the
same braid is checked against.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np


class BraidError(ValueError):
    """Raised for malformed braid words or braid text."""


@dataclass(frozen=True)
class BraidWord:
    """A braid word: strand count plus signed generator letters.

    ``letters`` holds pairs ``(i, sign)`` with 1-based generator index
    ``i`` in ``1..strands-1`` and ``sign`` in ``{+1, -1}``.
    """

    strands: int
    letters: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.strands < 1:
            raise BraidError(f"strand count must be >= 1, got {self.strands}")
        for i, sign in self.letters:
            if not 1 <= i < self.strands:
                raise BraidError(
                    f"generator index {i} out of range for {self.strands} strands")
            if sign not in (-1, 1):
                raise BraidError(f"letter sign must be +-1, got {sign}")

    @property
    def length(self) -> int:
        return len(self.letters)

    @property
    def exponent_sum(self) -> int:
        return sum(sign for _, sign in self.letters)

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        if self.strands != other.strands:
            raise BraidError("cannot concatenate words on different strand counts")
        return BraidWord(self.strands, self.letters + other.letters)

    def to_json(self) -> dict:
        return {"strands": self.strands, "letters": [list(l) for l in self.letters]}

    @classmethod
    def from_json(cls, data: dict) -> "BraidWord":
        return cls(int(data["strands"]),
                   tuple((int(i), int(s)) for i, s in data["letters"]))


def parse_braid(text: str, strands: int | None = None) -> BraidWord:
    """Parse whitespace-separated signed generator indices, e.g. ``"1 -2 1 -2"``.

    Entry ``k`` means sigma_{|k|} with the sign of ``k``.  If ``strands``
    is omitted it defaults to ``1 + max |k|``; an empty word then needs an
    explicit strand count.
    """
    tokens = text.split()
    entries = []
    for tok in tokens:
        try:
            k = int(tok)
        except ValueError:
            raise BraidError(f"non-integer braid token {tok!r}") from None
        if k == 0:
            raise BraidError("generator index 0 is not a braid letter")
        entries.append(k)
    if strands is None:
        if not entries:
            raise BraidError("empty braid word needs an explicit strand count")
        strands = 1 + max(abs(k) for k in entries)
    letters = tuple((abs(k), 1 if k > 0 else -1) for k in entries)
    return BraidWord(strands, letters)


def closure_permutation(b: BraidWord) -> tuple[int, ...]:
    """Permutation of ``{0..s-1}`` induced by closing the braid.

    Composition of the letter transpositions in word order: processing
    letter ``(i, _)`` swaps the entries at positions ``i-1`` and ``i``.
    For ``"1 -2 1 -2"`` this sends 0->2, 1->0, 2->1.
    """
    perm = list(range(b.strands))
    for i, _ in b.letters:
        perm[i - 1], perm[i] = perm[i], perm[i - 1]
    return tuple(perm)


def end_positions(b: BraidWord) -> tuple[int, ...]:
    """Forward map: strand starting at position p ends at ``end_positions[p]``.

    This is the inverse of :func:`closure_permutation`; its cycles are the
    same partition.  The closure joins each strand's end to the strand
    starting there, so following ``end_positions`` walks a component in
    traversal order.
    """
    perm = closure_permutation(b)
    out = [0] * b.strands
    for p, q in enumerate(perm):
        out[q] = p
    return tuple(out)


@dataclass(frozen=True)
class ComponentDecomposition:
    """Cycles of the closure permutation, in component-traversal order."""

    cycles: tuple[tuple[int, ...], ...]

    @property
    def count(self) -> int:
        return len(self.cycles)

    @property
    def strand_counts(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.cycles)

    def component_of(self, strand: int) -> int:
        for ci, cyc in enumerate(self.cycles):
            if strand in cyc:
                return ci
        raise KeyError(strand)


def components(b: BraidWord) -> ComponentDecomposition:
    """Cycle decomposition of the closure; a knot iff there is one cycle.

    Each cycle lists strands in the order the closed component traverses
    them (following :func:`end_positions`), starting at the cycle's
    smallest strand index.
    """
    nxt = end_positions(b)
    seen = [False] * b.strands
    cycles = []
    for start in range(b.strands):
        if seen[start]:
            continue
        cyc = []
        p = start
        while not seen[p]:
            seen[p] = True
            cyc.append(p)
            p = nxt[p]
        cycles.append(tuple(cyc))
    return ComponentDecomposition(tuple(cycles))


@dataclass(frozen=True)
class WordInvariants:
    exponent_sum: int
    linking_matrix: tuple[tuple[int, ...], ...]  # indexed by component

    def linking_array(self) -> np.ndarray:
        return np.array(self.linking_matrix, dtype=int)


def word_invariants(b: BraidWord) -> WordInvariants:
    """Exponent sum and pairwise linking matrix of the closure components.

    The linking number between two distinct components is half the signed
    count of crossings involving one strand from each; diagonal entries
    are zero by convention.
    """
    comp = components(b)
    which = [comp.component_of(p) for p in range(b.strands)]
    c = comp.count
    signed = np.zeros((c, c), dtype=int)
    # at[pos] = strand currently occupying that position
    at = list(range(b.strands))
    for i, sign in b.letters:
        a, bb = at[i - 1], at[i]
        ca, cb = which[a], which[bb]
        if ca != cb:
            signed[ca, cb] += sign
            signed[cb, ca] += sign
        at[i - 1], at[i] = at[i], at[i - 1]
    if np.any(signed % 2):
        raise BraidError("odd inter-component crossing count; broken attribution")
    lk = signed // 2
    return WordInvariants(
        exponent_sum=b.exponent_sum,
        linking_matrix=tuple(tuple(int(x) for x in row) for row in lk),
    )


def load_braid(path: str) -> BraidWord:
    """Read a braid from a JSON file ({"strands":..,"letters":..}) or raw text."""
    with open(path) as fh:
        raw = fh.read()
    stripped = raw.strip()
    if stripped.startswith("{"):
        return BraidWord.from_json(json.loads(stripped))
    return parse_braid(stripped)
