"""
Layers of the non-fixed positive roots under powers of s^-1, and related sets.

``d(alpha)`` is the least ``k >= 1`` with ``s^-k alpha`` negative.  Roots with
the same ``d`` form a layer; the deepest layer has index ``D + 1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Callable, Optional

from .rootsys import Root, root_at
from .weyl import ClassRep, InternalInconsistency, act_on_root, delta_sets, kbar_positive

__all__ = [
    "Strata", "stratify", "order_key", "z_order_key", "precedes", "z_precedes",
    "appendix_d", "appendix_matches", "appendix_discrepancies", "script_d",
    "PairSets", "pair_sets", "row_set", "col_set",
]


@dataclass(frozen=True)
class Strata:
    rep: ClassRep
    d: dict[Root, int]
    D: int
    layers: tuple[frozenset, ...]  # layers[k - 1] is layer k
    crc: dict[Root, str]
    z_cols: dict[int, tuple[Root, ...]]
    delta_s: frozenset
    delta_s_inv: frozenset
    kplus: tuple[Root, ...] = field(repr=False)

    def layer(self, k: int) -> frozenset:
        if 1 <= k <= len(self.layers):
            return self.layers[k - 1]
        return frozenset()

    def layers_between(self, lo: int, hi: int) -> set[Root]:
        out: set[Root] = set()
        for k in range(max(lo, 1), min(hi, self.D + 1) + 1):
            out |= self.layers[k - 1]
        return out

    @cached_property
    def kplus_set(self) -> frozenset:
        return frozenset(self.kplus)

    @cached_property
    def delta_z(self) -> tuple[Root, ...]:
        return tuple(sorted((r for c in self.z_cols.values() for r in c), key=z_order_key))

    @cached_property
    def ordered(self) -> tuple[Root, ...]:
        """(Delta_K)_+ sorted by the total order used for words in N."""
        return tuple(sorted(self.kplus, key=self.key))

    def key(self, r: Root) -> tuple[int, int, int]:
        return order_key(self, r)

    def of_class(self, k: int, cls: str) -> list[Root]:
        return sorted((r for r in self.layer(k) if self.crc[r] == cls), key=self.key)

    def beta(self, k: int) -> dict[int, Root]:
        """The C-roots of layer k, labelled by row."""
        return {r.row: r for r in self.layer(k) if self.crc[r] == "C"}

    def delta(self, k: int) -> dict[int, Root]:
        """The R-roots of layer k, labelled by column."""
        return {r.col: r for r in self.layer(k) if self.crc[r] == "R"}


def order_key(st: Strata, r: Root) -> tuple[int, int, int]:
    return (-st.d[r], r.row, -r.col)


def z_order_key(r: Root) -> tuple[int, int]:
    return (r.col, r.row)


def precedes(st: Strata, a: Root, b: Root) -> bool:
    """``a`` comes no later than ``b`` in the order on (Delta_K)_+."""
    return order_key(st, a) <= order_key(st, b)


def z_precedes(a: Root, b: Root) -> bool:
    return z_order_key(a) <= z_order_key(b)


def _d_value(rep: ClassRep, r: Root, kplus: set[Root]) -> int:
    s_inv = rep.s_inv
    cur, k = r, 0
    while True:
        cur = act_on_root(s_inv, cur)
        k += 1
        if not cur.positive:
            return k
        if cur not in kplus:
            raise InternalInconsistency(f"s^-{k}({r}) left the non-fixed roots")


def stratify(rep: ClassRep) -> Strata:
    """Compute d, the layers and the C/R/O classification for ``rep``.

    >>> from sliceinv.weyl import representative
    >>> st = stratify(representative(3, 3))
    >>> st.D, sorted(str(r) for r in st.layer(2))
    (1, ['a(1,2)', 'a(2,2)', 'a(2,3)'])
    """
    kplus = kbar_positive(rep)
    kset = set(kplus)
    d = {r: _d_value(rep, r, kset) for r in kplus}
    top = max(d.values())
    layers = tuple(frozenset(r for r in kplus if d[r] == k) for k in range(1, top + 1))

    m, p = rep.m, rep.p
    crc: dict[Root, str] = {}
    for r in kplus:
        sr = act_on_root(rep.s, r)
        if sr.row == r.row:
            crc[r] = "C"
        elif sr.col == r.col:
            crc[r] = "R"
        elif r.row >= m + p + 2:
            crc[r] = "O1"
        elif r.col <= m + 1:
            crc[r] = "O2"
        else:
            crc[r] = "O3"

    block = list(rep.fixed_indices)
    z_cols = {
        c: tuple(sorted((root_at(r, c) for r in block if r != c), key=lambda x: x.row))
        for c in block
    }
    ds, dsi, _ = delta_sets(rep)
    return Strata(rep, d, top - 1, layers, crc, z_cols, frozenset(ds), frozenset(dsi), tuple(kplus))


# --- tabulated d-values -----------------------------------------------------------

def script_d(a, b) -> int:
    """``floor((b - a) / 2)`` for integer or half-integer arguments.

    >>> script_d(1, 4)
    1
    >>> script_d(Fraction(-1, 2), Fraction(7, 2))
    2
    """
    return math.floor(Fraction(b - a) / 2)


def _prog(x: int, y: int) -> list[int]:
    """The progression ``x, x +- 2, ...`` towards ``y`` without passing it."""
    if x <= y:
        return list(range(x, y + 1, 2))
    return list(range(x, y - 1, -2))


H = Fraction(1, 2)

# A row: (table name, i-range, j-range, (a, b)).  Ranges are functions of
# (i, m, p, l) giving (start, end) of a step-2 progression, or ("interval", ...)
# for a step-1 range.  a and b are functions of (i, j, m, p, l).
Row = tuple[str, Callable, Callable, Callable, Callable]


def _o_rows(c1: int, c2: int, tail: int,
            i_odd: tuple, i_odd_right: tuple, i_even: tuple, i_even_right: tuple,
            j_rows: dict) -> list:
    """Assemble the eight rows describing d on the O-roots.

    The four cases share one shape; they differ by the additive
    constants c1 (3 or 4), c2 (5 or 6), tail (5 or 7) and by progression ends.
    """
    rows = []
    ia = lambda i, j, m, p, l: -H * i
    ib = lambda i, j, m, p, l: H * i
    rows += [
        ("O", i_odd, j_rows["a1"], ia, lambda i, j, m, p, l: 2 * m - H * j + c1),
        ("O", i_odd, j_rows["a2"], ia, lambda i, j, m, p, l: 2 * m - H * (j - p) + c1),
        ("O", i_odd, j_rows["a3"], ia, lambda i, j, m, p, l: 2 * m - l + H * j + c2),
        ("O", i_odd, j_rows["a4"], ia, lambda i, j, m, p, l: 2 * m - l + H * (j + p) + c2),
        ("O", i_odd_right, j_rows["b1"], ia, lambda i, j, m, p, l: 2 * m - H * j + c1),
        ("O", i_odd_right, j_rows["b2"], ia, lambda i, j, m, p, l: 2 * m - l + H * (j + tail)),
        ("O", i_even, j_rows["c1"], ib, lambda i, j, m, p, l: H * j + 1),
        ("O", i_even, j_rows["c2"], ib, lambda i, j, m, p, l: H * (j - p) + 1),
        ("O", i_even, j_rows["c3"], ib, lambda i, j, m, p, l: l - H * j),
        ("O", i_even, j_rows["c4"], ib, lambda i, j, m, p, l: l - H * (j + p)),
        ("O", i_even_right, j_rows["d1"], ib, lambda i, j, m, p, l: H * j + 1),
        ("O", i_even_right, j_rows["d2"], ib, lambda i, j, m, p, l: l - H * (j - 5)),
    ]
    return rows


def _table(case: str) -> list:
    """The tabulated d-values for one case, transcribed row by row."""
    if case in ("i", "ii"):
        c1, c2, tail = (3, 5, 5) if case == "i" else (4, 6, 7)
        e = 0 if case == "i" else 1  # right-hand progressions run one or two further
        i_odd = lambda i, m, p, l: (1, m + 1)
        i_odd_right = lambda i, m, p, l: (m + p + 3, m + p + m + 1)
        i_even = lambda i, m, p, l: (2, m)
        i_even_right = lambda i, m, p, l: (m + p + 2, m + p + m + 2 * e)
        j_rows = {
            "a1": lambda i, m, p, l: (i, m - 1),
            "a2": lambda i, m, p, l: (m + p + 1, m + p + m + 1),
            "a3": lambda i, m, p, l: (m + p + m + 2 * e, m + p + 2),
            "a4": lambda i, m, p, l: (m, i + 1),
            "b1": lambda i, m, p, l: (i, m + p + m + 1),
            "b2": lambda i, m, p, l: (m + p + m + 2 * e, i + 1),
            "c1": lambda i, m, p, l: (i, m),
            "c2": lambda i, m, p, l: (m + p + 2, m + p + m + 2 * e),
            "c3": lambda i, m, p, l: (m + p + m + 1, m + p + 1),
            "c4": lambda i, m, p, l: (m - 1, i + 1),
            "d1": lambda i, m, p, l: (i, m + p + m + 2 * e),
            "d2": lambda i, m, p, l: (m + p + m + 1, i + 1),
        }
        rows = _o_rows(c1, c2, tail, i_odd, i_odd_right, i_even, i_even_right, j_rows)
        c_const = 3 if case == "i" else 2
        rows += [
            ("C", ("interval", lambda i, m, p, l: (m + 2, m + p + 1)),
             lambda i, m, p, l: (m + p + 2, m + p + m + 2 * e),
             lambda i, j, m, p, l: m + p - 1, lambda i, j, m, p, l: j),
            ("C", ("interval", lambda i, m, p, l: (m + 2, m + p + 1)),
             lambda i, m, p, l: (m + p + m + 1, m + p + 1),
             lambda i, j, m, p, l: j, lambda i, j, m, p, l: m + l + c_const),
        ]
        r_even = lambda j, m, p, l: (m, 2)
        r_odd = lambda j, m, p, l: (1, m + 1)
    else:
        c1, c2, tail = (3, 5, 5) if case == "iii" else (4, 6, 7)
        e = 0 if case == "iii" else 1
        i_odd = lambda i, m, p, l: (2, m + 1)
        i_odd_right = lambda i, m, p, l: (m + p + 3, m + p + m + 2 * e)
        i_even = lambda i, m, p, l: (1, m)
        i_even_right = lambda i, m, p, l: (m + p + 2, m + p + m + 1)
        j_rows = {
            "a1": lambda i, m, p, l: (i, m - 1),
            "a2": lambda i, m, p, l: (m + p + 1, m + p + m + 2 * e),
            "a3": lambda i, m, p, l: (m + p + m + 1, m + p + 2),
            "a4": lambda i, m, p, l: (m, i + 1),
            "b1": lambda i, m, p, l: (i, m + p + m + 1 + e),
            "b2": lambda i, m, p, l: (m + p + m + e, i + 1),
            "c1": lambda i, m, p, l: (i, m),
            "c2": lambda i, m, p, l: (m + p + 2, m + p + m + 1),
            "c3": lambda i, m, p, l: (m + p + m + 2 * e, m + p + 1),
            "c4": lambda i, m, p, l: (m - 1, i + 1),
            "d1": lambda i, m, p, l: (i, m + p + m + 1),
            "d2": lambda i, m, p, l: (m + p + m + 2 * e, i + 1),
        }
        rows = _o_rows(c1, c2, tail, i_odd, i_odd_right, i_even, i_even_right, j_rows)
        c_const = 3 if case == "iii" else 2
        rows += [
            ("C", ("interval", lambda i, m, p, l: (m + 2, m + p + 1)),
             lambda i, m, p, l: (m + p + 2, m + p + m + 1),
             lambda i, j, m, p, l: m + p - 1, lambda i, j, m, p, l: j),
            ("C", ("interval", lambda i, m, p, l: (m + 2, m + p + 1)),
             lambda i, m, p, l: (m + p + m + 2 * e, m + p + 1),
             lambda i, j, m, p, l: j, lambda i, j, m, p, l: m + l + c_const),
        ]
        r_even = lambda j, m, p, l: (m, 1)
        r_odd = lambda j, m, p, l: (2, m + 1)
    # R rows: j runs over an interval, i over a progression
    rows += [
        ("R", r_even, ("interval", lambda i, m, p, l: (m + 1, m + p)),
         lambda i, j, m, p, l: i, lambda i, j, m, p, l: m + 3),
        ("R", r_odd, ("interval", lambda i, m, p, l: (m + 1, m + p)),
         lambda i, j, m, p, l: -i, lambda i, j, m, p, l: m + 2),
    ]
    return rows


def _in_range(spec, x: int, i: int, m: int, p: int, l: int, first_arg: int) -> bool:
    if isinstance(spec, tuple) and spec[0] == "interval":
        lo, hi = spec[1](first_arg, m, p, l)
        return lo <= x <= hi
    lo, hi = spec(first_arg, m, p, l)
    return x in _prog(lo, hi)


@dataclass(frozen=True)
class TableMatch:
    table: str
    row_index: int
    value: int


def appendix_matches(rep: ClassRep, r: Root) -> list[TableMatch]:
    """Every tabulated row whose index conditions hold for ``r = alpha_i + ... + alpha_j``."""
    m, p, l = rep.m, rep.p, rep.l
    i, j = r.i, r.j
    out = []
    for idx, (name, irange, jrange, fa, fb) in enumerate(_table(rep.case_id)):
        if name == "R":
            # j constrained by an interval, i by a progression depending on nothing
            if not _in_range(jrange, j, i, m, p, l, i):
                continue
            lo, hi = irange(j, m, p, l)
            if i not in _prog(lo, hi):
                continue
        else:
            if not _in_range(irange, i, i, m, p, l, i):
                continue
            if not _in_range(jrange, j, i, m, p, l, i):
                continue
        out.append(TableMatch(name, idx, script_d(fa(i, j, m, p, l), fb(i, j, m, p, l))))
    return out


def appendix_d(rep: ClassRep, r: Root) -> int:
    """d(r) read from the tabulated case formulas.

    Raises ValueError for roots in the fixed span and InternalInconsistency when
    no row applies or applicable rows disagree.
    """
    if not r.positive:
        raise ValueError(f"{r} is not positive")
    if r not in set(kbar_positive(rep)):
        raise ValueError(f"{r} lies in the span of the fixed simple roots")
    matches = appendix_matches(rep, r)
    if not matches:
        raise InternalInconsistency(f"no tabulated row covers {r} for (l={rep.l}, l'={rep.lprime})")
    values = {t.value for t in matches}
    if len(values) > 1:
        raise InternalInconsistency(f"tabulated rows disagree on {r}: {sorted(values)}")
    return values.pop()


@dataclass(frozen=True)
class Discrepancy:
    l: int
    lprime: int
    root: Root
    d: int
    tabulated: tuple[int, ...]  # empty when no row applies
    rows: tuple[int, ...]

    def __str__(self) -> str:
        tab = ",".join(map(str, self.tabulated)) if self.tabulated else "none"
        return f"l={self.l} l'={self.lprime} {self.root}: d={self.d} table={tab}"


def appendix_discrepancies(rep: ClassRep, st: Optional[Strata] = None) -> list[Discrepancy]:
    st = st or stratify(rep)
    out = []
    for r in st.kplus:
        ms = appendix_matches(rep, r)
        vals = tuple(sorted({t.value for t in ms}))
        if vals != (st.d[r],):
            out.append(Discrepancy(rep.l, rep.lprime, r, st.d[r], vals, tuple(t.row_index for t in ms)))
    return out


# --- pair sets -----------------------------------------------------------------

def row_set(alpha: Root, candidates) -> set[Root]:
    return {e for e in candidates if e.row == alpha.row and e.col < alpha.col}


def col_set(alpha: Root, candidates) -> set[Root]:
    return {e for e in candidates if e.col == alpha.col and e.row > alpha.row}


@dataclass(frozen=True)
class PairSets:
    P: frozenset
    P_prime: frozenset
    P_all: frozenset
    Row: frozenset
    Col: frozenset
    C: frozenset
    R: frozenset
    Pqf: frozenset


def decompositions(st: Strata, alpha: Root) -> list[tuple[Root, Root]]:
    """All ordered pairs of non-fixed positive roots summing to ``alpha``."""
    out = []
    for k in range(alpha.i, alpha.j):
        a, b = Root(alpha.i, k), Root(k + 1, alpha.j)
        if a in st.kplus_set and b in st.kplus_set:
            out.append((a, b))
            out.append((b, a))
    return out


def c_pairs(st: Strata, eta: Root, q: int, f: int) -> set[tuple[Root, Root]]:
    """Pairs (eta1, eta2) in Col x Row with eta1 in layers q..f and eta2 in layers d(eta)..D+1."""
    out = set()
    for a, b in decompositions(st, eta):
        if a.col == eta.col and a.row > eta.row and b.row == eta.row and b.col < eta.col:
            if q <= st.d[a] <= f and st.d[b] >= st.d[eta]:
                out.add((a, b))
    return out


def r_pairs(st: Strata, eta: Root, q: int, f: int) -> set[tuple[Root, Root]]:
    out = set()
    for a, b in decompositions(st, eta):
        if a.row == eta.row and a.col < eta.col and b.col == eta.col and b.row > eta.row:
            if q <= st.d[a] <= f and st.d[b] >= st.d[eta]:
                out.add((a, b))
    return out


def p_pairs(st: Strata, alpha: Root) -> set[tuple[Root, Root]]:
    da = st.d[alpha]
    return {(a, b) for a, b in decompositions(st, alpha) if 2 <= st.d[a] <= da - 1 and st.d[b] == da}


def p_prime_pairs(st: Strata, alpha: Root) -> set[tuple[Root, Root]]:
    da = st.d[alpha]
    return {(a, b) for a, b in decompositions(st, alpha) if st.d[a] == da and st.d[b] == da}


def pair_sets(st: Strata, alpha: Root, q: int = 2, f: Optional[int] = None) -> PairSets:
    f = st.D + 1 if f is None else f
    C = c_pairs(st, alpha, q, f)
    R = r_pairs(st, alpha, q, f)
    return PairSets(
        frozenset(p_pairs(st, alpha)),
        frozenset(p_prime_pairs(st, alpha)),
        frozenset(decompositions(st, alpha)),
        frozenset(row_set(alpha, st.kplus)),
        frozenset(col_set(alpha, st.kplus)),
        frozenset(C), frozenset(R), frozenset(C | R),
    )
