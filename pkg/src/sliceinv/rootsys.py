"""
Type A_l root combinatorics.

A root is the signed interval ``sign * (alpha_i + ... + alpha_j)``.  Everything
downstream works with the matrix realisation in SL(l+1): a positive root sits at
position ``(i, j+1)`` and its negative at ``(j+1, i)``.  Indices are 1-based
throughout to match the usual matrix notation.

>>> r = Root(2, 3)
>>> r.row_col()
(2, 4)
>>> str(-r)
'-a(2,3)'
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

__all__ = [
    "Root", "RankContext", "row_col", "root_add", "root_at", "e_matrix",
    "enumerate_positive", "parse_root", "identity_matrix",
]


@dataclass(frozen=True, order=True)
class Root:
    i: int
    j: int
    sign: int = 1

    def __post_init__(self):
        if not (1 <= self.i <= self.j):
            raise ValueError(f"bad root interval ({self.i}, {self.j})")
        if self.sign not in (1, -1):
            raise ValueError(f"bad root sign {self.sign}")

    @property
    def positive(self) -> bool:
        return self.sign == 1

    @property
    def height(self) -> int:
        return self.j - self.i + 1

    @property
    def row(self) -> int:
        return self.i if self.sign == 1 else self.j + 1

    @property
    def col(self) -> int:
        return self.j + 1 if self.sign == 1 else self.i

    def row_col(self) -> tuple[int, int]:
        return self.row, self.col

    def __neg__(self) -> Root:
        return Root(self.i, self.j, -self.sign)

    def __str__(self) -> str:
        return f"{'-' if self.sign < 0 else ''}a({self.i},{self.j})"

    def __repr__(self) -> str:
        return f"Root({self})"

    def check_rank(self, l: int) -> None:
        if self.j > l:
            raise ValueError(f"{self} is not a root of A_{l}")


def row_col(r: Root) -> tuple[int, int]:
    return r.row_col()


def root_at(row: int, col: int) -> Root:
    """The root whose elementary matrix has its 1 at ``(row, col)``."""
    if row == col:
        raise ValueError("diagonal position is not a root")
    if row < col:
        return Root(row, col - 1, 1)
    return Root(col, row - 1, -1)


def root_add(a: Root, b: Root) -> Optional[Root]:
    """Return ``a + b`` if it is a root, else ``None``.

    >>> root_add(Root(1, 1), Root(2, 2))
    Root(a(1,2))
    >>> root_add(Root(1, 1), Root(3, 3)) is None
    True
    """
    if a == -b:
        raise ValueError(f"{a} + {b} is zero")
    if a.col == b.row:
        return root_at(a.row, b.col)
    if b.col == a.row:
        return root_at(b.row, a.col)
    return None


def identity_matrix(n: int, one=1, zero=0) -> list[list]:
    return [[one if r == c else zero for c in range(n)] for r in range(n)]


def e_matrix(r: Root, l: int) -> list[list[Fraction]]:
    """Elementary matrix ``E_r`` of size ``l+1`` (as nested lists of Fractions)."""
    r.check_rank(l)
    m = [[Fraction(0)] * (l + 1) for _ in range(l + 1)]
    m[r.row - 1][r.col - 1] = Fraction(1)
    return m


def enumerate_positive(l: int) -> list[Root]:
    """All positive roots of A_l, lexicographic in ``(i, j)``."""
    if l < 1:
        raise ValueError("rank must be at least 1")
    return [Root(i, j) for i in range(1, l + 1) for j in range(i, l + 1)]


@dataclass(frozen=True)
class RankContext:
    l: int
    positives: tuple[Root, ...]

    @classmethod
    def of(cls, l: int) -> RankContext:
        return cls(l, tuple(enumerate_positive(l)))

    @property
    def n(self) -> int:
        return self.l + 1

    def all_roots(self) -> list[Root]:
        return list(self.positives) + [-r for r in self.positives]


_ROOT_RE = re.compile(r"^\s*(-?)a\((\d+),(\d+)\)\s*$")


def parse_root(text: str) -> Root:
    m = _ROOT_RE.match(text)
    if not m:
        raise ValueError(f"cannot parse root {text!r}")
    return Root(int(m.group(2)), int(m.group(3)), -1 if m.group(1) else 1)
