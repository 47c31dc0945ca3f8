"""Permutations, inversions, and Rothe diagrams.

A permutation ``w`` of {1, ..., n} is stored in one-line notation.  Trailing
fixed points carry no combinatorial information for anything in this package
(they contribute no inversions, no diagram cells, and only straight pipes),
so the constructor trims to the minimal ``n`` with ``w(n) != n`` — the
identity trims all the way down to ``n = 1``.  Every module then agrees on
the grid size implied by a permutation.

The Rothe diagram of ``w`` is

    D(w) = {(i, j) : j < w(i) and i < w^{-1}(j)},

the cells left over after striking out, for each dot ``(i, w(i))``, the hook
of positions east and south of it.  ``|D(w)|`` equals the inversion count
``ell(w)``.

>>> w = Permutation.from_text("314652")
>>> w.oneline
(3, 1, 4, 6, 5, 2)
>>> inverse(w).oneline
(2, 6, 1, 3, 5, 4)
>>> len(inversions(w)) == len(rothe_diagram(w).cells)
True
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator

from .errors import DomainError

__all__ = [
    "Permutation",
    "Diagram",
    "inverse",
    "inversions",
    "rothe_diagram",
    "dots_northwest",
]


@dataclass(frozen=True)
class Permutation:
    """A permutation in one-line notation, trimmed of trailing fixed points.

    >>> Permutation((1, 4, 3, 2, 5)).oneline       # w(5)=5 is trimmed
    (1, 4, 3, 2)
    >>> Permutation((1, 2, 3)).oneline             # identity collapses to n=1
    (1,)
    >>> Permutation((2, 1))(7)                     # fixed beyond the window
    7
    """

    oneline: tuple[int, ...]

    def __init__(self, oneline: Iterable[int]):
        values = tuple(int(v) for v in oneline)
        if not values:
            raise DomainError("empty one-line notation")
        if sorted(values) != list(range(1, len(values) + 1)):
            raise DomainError(
                f"not a permutation of 1..{len(values)}: {values}"
            )
        n = len(values)
        while n > 1 and values[n - 1] == n:
            n -= 1
        object.__setattr__(self, "oneline", values[:n])

    # -- basic protocol ----------------------------------------------------

    @property
    def n(self) -> int:
        """Grid size: the trimmed length of the one-line word."""
        return len(self.oneline)

    def __call__(self, i: int) -> int:
        """Value ``w(i)``, extending by fixed points beyond the window."""
        if i < 1:
            raise DomainError(f"positions are 1-based, got {i}")
        return self.oneline[i - 1] if i <= self.n else i

    def __iter__(self) -> Iterator[int]:
        return iter(self.oneline)

    def __repr__(self) -> str:
        return f"Permutation({list(self.oneline)})"

    # -- parsing / formatting ----------------------------------------------

    @classmethod
    def from_text(cls, text: str) -> "Permutation":
        """Parse ``"314652"`` (digits, n <= 9) or ``"3,1,4,6,5,2"``.

        >>> Permutation.from_text("1,4,3,2") == Permutation.from_text("1432")
        True
        """
        text = text.strip()
        if not text:
            raise DomainError("empty permutation text")
        if "," in text:
            parts = [p.strip() for p in text.split(",")]
            try:
                values = [int(p) for p in parts]
            except ValueError as exc:
                raise DomainError(f"bad permutation text {text!r}") from exc
        elif text.isdigit():
            values = [int(ch) for ch in text]
        else:
            raise DomainError(
                f"bad permutation text {text!r}: use digits or comma-separated"
            )
        return cls(values)

    def to_text(self) -> str:
        """Compact digits when ``n <= 9``, else comma-separated."""
        if self.n <= 9:
            return "".join(str(v) for v in self.oneline)
        return ",".join(str(v) for v in self.oneline)

    # -- cached structure ----------------------------------------------------

    @cached_property
    def length(self) -> int:
        """Coxeter length ``ell(w)`` = number of inversions."""
        return len(inversions(self))

    def extended(self, n: int) -> tuple[int, ...]:
        """One-line word padded with fixed points out to length ``n``."""
        if n < self.n:
            raise DomainError(f"cannot shrink {self!r} to n={n}")
        return self.oneline + tuple(range(self.n + 1, n + 1))


@dataclass(frozen=True)
class Diagram:
    """A Rothe diagram: cells plus the permutation dots that carve it out."""

    n: int
    cells: frozenset[tuple[int, int]]
    dots: frozenset[tuple[int, int]]

    def to_json(self) -> str:
        payload = {
            "n": self.n,
            "cells": [list(c) for c in sorted(self.cells)],
            "dots": [list(d) for d in sorted(self.dots)],
        }
        return json.dumps(payload, separators=(",", ":"))


def inverse(w: Permutation) -> Permutation:
    """The inverse permutation.

    >>> inverse(Permutation([3, 1, 4, 6, 5, 2])).oneline
    (2, 6, 1, 3, 5, 4)
    """
    out = [0] * w.n
    for i, v in enumerate(w.oneline, start=1):
        out[v - 1] = i
    return Permutation(out)


def inversions(w: Permutation) -> frozenset[tuple[int, int]]:
    """All pairs ``i < j`` with ``w(i) > w(j)``.

    >>> sorted(inversions(Permutation([1, 4, 3, 2])))
    [(2, 3), (2, 4), (3, 4)]
    """
    line = w.oneline
    return frozenset(
        (i, j)
        for i in range(1, w.n + 1)
        for j in range(i + 1, w.n + 1)
        if line[i - 1] > line[j - 1]
    )


def rothe_diagram(w: Permutation) -> Diagram:
    """Cells ``{(i,j) : j < w(i), i < w^{-1}(j)}`` plus the dots ``(i, w(i))``.

    >>> sorted(rothe_diagram(Permutation([1, 4, 3, 2])).cells)
    [(2, 2), (2, 3), (3, 2)]
    """
    winv = inverse(w)
    cells = frozenset(
        (i, j)
        for i in range(1, w.n + 1)
        for j in range(1, w(i))
        if i < winv(j)
    )
    dots = frozenset((i, w(i)) for i in range(1, w.n + 1))
    return Diagram(n=w.n, cells=cells, dots=dots)


def dots_northwest(w: Permutation, cell: tuple[int, int]) -> int:
    """Number of dots ``(i, w(i))`` weakly northwest of a diagram cell.

    The cell must belong to ``rothe_diagram(w)``; on diagram cells the weak
    and strict counts coincide because no dot shares a row or column with a
    cell of its own hook.

    >>> dots_northwest(Permutation([1, 4, 3, 2]), (3, 2))
    1
    """
    diagram = rothe_diagram(w)
    if tuple(cell) not in diagram.cells:
        raise DomainError(f"cell {tuple(cell)} is not in the diagram of {w!r}")
    row, col = cell
    return sum(1 for (i, v) in diagram.dots if i <= row and v <= col)
