"""
Matrix calculus in SL(l+1) over an exact coefficient ring.

Coefficients are either Fractions (numeric mode) or MultiPoly values
(symbolic mode); every routine here only uses ``+``, ``-`` and ``*`` on them,
plus the zero and one of the ring supplied by the caller.

A factor ``X_alpha(c)`` is the matrix ``I + c E_alpha``.  Words are ordered
products of factors, left to right.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Any, Callable, Iterable, Optional, Sequence

from .exactring import MultiPoly, VarId, var_z
from .rootsys import Root, root_add, root_at
from .strata import Strata, z_order_key
from .weyl import ClassRep, act_on_root, s_matrix, sign_data

__all__ = [
    "Factor", "FactorWord", "Ring", "QQ", "poly_ring", "identity", "mat_mul", "mat_eq",
    "matrix_of_word", "word_inverse", "commute_pair", "ts_exprs", "ZData", "numeric_zdata",
    "symbolic_zdata", "assemble_z_prime", "z_prime_inverse", "z_coefficient", "z_conjugate",
    "c_prime", "factorize_unipotent", "FactorizationError", "right_mul_factor", "left_mul_factor",
    "t_sign", "s_conjugate_matrix", "split_delta_s",
]


@dataclass(frozen=True)
class Ring:
    zero: Any
    one: Any


QQ = Ring(Fraction(0), Fraction(1))


def poly_ring(rel: Optional[tuple[int, ...]]) -> Ring:
    return Ring(MultiPoly({}, rel), MultiPoly.constant(1, rel))


@dataclass(frozen=True)
class Factor:
    root: Root
    coeff: Any

    def __str__(self) -> str:
        return f"X_{self.root}({self.coeff})"


@dataclass(frozen=True)
class FactorWord:
    factors: tuple[Factor, ...]
    order_tag: str = "free"

    def __iter__(self):
        return iter(self.factors)

    def __len__(self) -> int:
        return len(self.factors)

    def roots(self) -> list[Root]:
        return [f.root for f in self.factors]

    def coeffs(self) -> dict[Root, Any]:
        """Coefficient map; only meaningful when each root appears once."""
        out: dict[Root, Any] = {}
        for f in self.factors:
            if f.root in out:
                raise ValueError(f"{f.root} appears twice")
            out[f.root] = f.coeff
        return out

    def __str__(self) -> str:
        return " ".join(map(str, self.factors)) or "1"


# --- dense matrices ----------------------------------------------------------------

def identity(n: int, ring: Ring = QQ) -> list[list]:
    return [[ring.one if r == c else ring.zero for c in range(n)] for r in range(n)]


def mat_mul(a: list[list], b: list[list], ring: Ring = QQ) -> list[list]:
    n, inner, m = len(a), len(b), len(b[0])
    out = []
    for r in range(n):
        row = a[r]
        acc_row = []
        for c in range(m):
            acc = ring.zero
            for k in range(inner):
                x = row[k]
                if x:
                    y = b[k][c]
                    if y:
                        acc = acc + x * y
            acc_row.append(acc)
        out.append(acc_row)
    return out


def mat_eq(a: list[list], b: list[list]) -> bool:
    return all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def right_mul_factor(m: list[list], root: Root, c) -> None:
    """In place ``m <- m (I + c E_root)``: column col += c * column row."""
    if not c:
        return
    r, k = root.row - 1, root.col - 1
    for row in m:
        if row[r]:
            row[k] = row[k] + row[r] * c


def left_mul_factor(m: list[list], root: Root, c) -> None:
    """In place ``m <- (I + c E_root) m``: row row += c * row col."""
    if not c:
        return
    r, k = root.row - 1, root.col - 1
    src, dst = m[k], m[r]
    for j in range(len(dst)):
        if src[j]:
            dst[j] = dst[j] + c * src[j]


def matrix_of_word(word: Iterable[Factor], n: int, ring: Ring = QQ) -> list[list]:
    """``prod (I + c E_root)`` in word order.

    >>> from sliceinv.rootsys import Root
    >>> m = matrix_of_word([Factor(Root(1, 1), Fraction(2)), Factor(Root(2, 2), Fraction(3))], 3)
    >>> [[int(x) for x in row] for row in m]
    [[1, 2, 6], [0, 1, 3], [0, 0, 1]]
    """
    m = identity(n, ring)
    for f in word:
        right_mul_factor(m, f.root, f.coeff)
    return m


def word_inverse(word: Sequence[Factor]) -> list[Factor]:
    return [Factor(f.root, -f.coeff) for f in reversed(list(word))]


def commute_pair(a: Factor, b: Factor) -> list[Factor]:
    """Rewrite ``X_a(x) X_b(y)`` as ``X_b(y) X_a(x)`` times a correction.

    >>> from sliceinv.rootsys import Root
    >>> [str(f) for f in commute_pair(Factor(Root(2, 2), 1), Factor(Root(1, 1), 1))]
    ['X_a(1,1)(1)', 'X_a(2,2)(1)', 'X_a(1,2)(-1)']
    """
    if a.root == -b.root:
        raise ValueError(f"{a.root} and {b.root} are opposite")
    s = root_add(a.root, b.root)
    if s is None:
        return [b, a]
    eps = 1 if a.root.col == b.root.row else -1
    return [b, a, Factor(s, eps * a.coeff * b.coeff)]


# --- the block of Z and the T/S expressions --------------------------------------------

@dataclass
class ZData:
    """Entries of z' = z'' z_H on the fixed block plus the scalar on moved indices."""
    rep: ClassRep
    ring: Ring
    z: dict[tuple[int, int], Any]
    zinv: dict[int, Any]
    mu: Any
    mu_inv: Any
    assignment: dict = field(default_factory=dict)

    @property
    def block(self) -> range:
        return self.rep.fixed_indices


def numeric_zdata(rep: ClassRep, entries: dict[tuple[int, int], Fraction],
                  mu: Fraction = Fraction(1)) -> ZData:
    z = {k: Fraction(v) for k, v in entries.items()}
    zinv = {i: 1 / z[(i, i)] for i in rep.fixed_indices}
    assignment = {VarId.z(i, j): v for (i, j), v in z.items()}
    return ZData(rep, QQ, z, zinv, Fraction(mu), 1 / Fraction(mu), assignment)


def symbolic_zdata(rep: ClassRep, rel: Optional[tuple[int, ...]] = "block") -> ZData:
    rel = tuple(rep.fixed_indices) if rel == "block" else rel
    ring = poly_ring(rel)
    block = list(rep.fixed_indices)
    z = {(i, j): var_z(i, j, rel=rel) for i in block for j in block}
    zinv = {i: var_z(i, i, -1, rel=rel) for i in block}
    return ZData(rep, ring, z, zinv, ring.one, ring.one)


def assemble_z_prime(zd: ZData) -> list[list]:
    """``z' = (prod over Delta_Z in column order of X_alpha(z_row,col)) * z_H``."""
    rep, ring = zd.rep, zd.ring
    n = rep.n
    m = identity(n, ring)
    for r in sorted(_delta_z(rep), key=z_order_key):
        right_mul_factor(m, r, zd.z[(r.row, r.col)])
    block = set(rep.fixed_indices)
    for c in range(1, n + 1):
        d = zd.z[(c, c)] if c in block else zd.mu
        for row in m:
            row[c - 1] = row[c - 1] * d
    return m


def z_prime_inverse(zd: ZData) -> list[list]:
    rep, ring = zd.rep, zd.ring
    n = rep.n
    block = set(rep.fixed_indices)
    m = identity(n, ring)
    for c in range(1, n + 1):
        m[c - 1][c - 1] = zd.zinv[c] if c in block else zd.mu_inv
    for r in sorted(_delta_z(rep), key=z_order_key, reverse=True):
        right_mul_factor(m, r, -zd.z[(r.row, r.col)])
    return m


def _delta_z(rep: ClassRep) -> list[Root]:
    block = list(rep.fixed_indices)
    return [root_at(a, b) for a in block for b in block if a != b]


def _chains(block: Sequence[int], i: int, j: int, r: int, decreasing: bool) -> list[tuple[int, ...]]:
    """Index sequences ``j_1, ..., j_r`` strictly monotone between the endpoints."""
    out = []
    if decreasing:
        pool = [x for x in block if x > j]
        for combo in combinations(sorted(pool, reverse=True), r):
            if combo[0] != i:
                out.append(combo)
    else:
        pool = [x for x in block if x < i]
        for combo in combinations(sorted(pool), r):
            if combo[0] != j:
                out.append(combo)
    return out


def ts_exprs(zd: ZData, i: int, j: int, r: int) -> tuple[Any, Any]:
    """``(T_{i,j}^{(r)}, S_{i,j}^{(r)})`` as chain sums, over the ring of ``zd``."""
    block = list(zd.block)
    if i not in block or j not in block:
        raise ValueError(f"({i}, {j}) outside the fixed block {block}")
    if r < 0:
        raise ValueError("r must be non-negative")
    ring, z = zd.ring, zd.z
    if r == 0:
        t = zd.zinv[i] if i == j else zd.zinv[i] * z[(i, j)]
        s = z[(i, i)] if i == j else z[(j, i)] * z[(i, i)]
        return t, s
    t = ring.zero
    for ch in _chains(block, i, j, r, decreasing=True):
        path = (i,) + ch + (j,)
        prod = ring.one
        for a, b in zip(path, path[1:]):
            prod = prod * z[(a, b)]
        t = t + prod
    t = zd.zinv[i] * t
    s = ring.zero
    for ch in _chains(block, i, j, r, decreasing=False):
        path = (j,) + ch + (i,)
        prod = ring.one
        for a, b in zip(path, path[1:]):
            prod = prod * z[(a, b)]
        s = s + prod
    s = z[(i, i)] * s
    return t, s


def t_sign(r: int, i: int, j: int) -> int:
    """Sign relating the chain sum T^{(r)} to the matrix entry of z'^{-1}.

    Inverting the unipotent part contributes -1 per step of the chain, except
    for the constant diagonal term.
    """
    if r == 0 and i == j:
        return 1
    return (-1) ** (r + 1)


def z_coefficient(zd: ZData, cls: str, i: int, j: int, signed: bool = True,
                  mutate: Optional[Callable] = None) -> Any:
    """``Z_{beta_i}(beta_j)`` (cls "C", sum of T) or ``Z_{delta_i}(delta_j)`` (cls "R", sum of S).

    ``signed`` applies ``t_sign`` to each T-summand; ``signed=False`` uses the
    chain sums unsigned.  ``mutate(r, i, j, value)`` may rewrite a
    summand (fault injection for the canary test).
    """
    width = len(zd.block)
    total = zd.ring.zero
    for r in range(0, width):
        t, s = ts_exprs(zd, i, j, r)
        if cls == "C":
            val = t * t_sign(r, i, j) if signed else t
        elif cls == "R":
            val = s
        else:
            raise ValueError(f"class {cls} has no block coefficient")
        if mutate is not None:
            val = mutate(cls, r, i, j, val)
        total = total + val
    return total


def z_conjugate(st: Strata, zd: ZData, k: int, word: Sequence[Factor], signed: bool = True,
                mutate: Optional[Callable] = None) -> list[Factor]:
    """``z'^-1 w z'`` for ``w`` supported on the C-roots or the R-roots of layer k."""
    if not word:
        return []
    classes = {st.crc.get(f.root) for f in word}
    layers = {st.d.get(f.root) for f in word}
    if len(classes) != 1 or layers != {k} or classes - {"C", "R"}:
        raise ValueError("word must lie in the C-part or the R-part of a single layer")
    cls = classes.pop()
    label = st.beta(k) if cls == "C" else st.delta(k)
    index = {root: idx for idx, root in label.items()}
    coeffs = {index[f.root]: zd.ring.zero for f in word}
    for f in word:
        coeffs[index[f.root]] = coeffs[index[f.root]] + f.coeff
    out = []
    for i in sorted(label, key=lambda x: st.key(label[x])):
        total = zd.ring.zero
        for j, cj in coeffs.items():
            total = total + cj * z_coefficient(zd, cls, i, j, signed, mutate)
        if total:
            out.append(Factor(label[i], total))
    return out


def c_prime(st: Strata, zd: ZData, k: int, prev: dict[Root, Any], signed: bool = True,
            mutate: Optional[Callable] = None, t: Optional[dict[Root, int]] = None) -> dict[Root, Any]:
    """Coefficients ``c'_{s^-1 alpha}`` of ``n'_k`` from the layer k-1 coordinates ``prev``.

    Returns a map ``alpha -> c'`` over the roots of layer k whose preimage is
    in layer k-1.
    """
    rep = st.rep
    t = t if t is not None else sign_data(rep)
    out: dict[Root, Any] = {}
    beta, delta = st.beta(k - 1), st.delta(k - 1)
    for eta in st.layer(k - 1):
        alpha = act_on_root(rep.s, eta)
        if not alpha.positive:
            continue
        cls = st.crc[eta]
        if cls in ("C", "R"):
            label = beta if cls == "C" else delta
            i = eta.row if cls == "C" else eta.col
            total = zd.ring.zero
            for j, root in label.items():
                cj = prev.get(root)
                if cj:
                    total = total + cj * z_coefficient(zd, cls, i, j, signed, mutate)
            out[alpha] = total * t[eta]
        else:
            cj = prev.get(eta)
            out[alpha] = cj * t[eta] if cj else zd.ring.zero
    return out


# --- factorization ----------------------------------------------------------------

class FactorizationError(ValueError):
    pass


def factorize_unipotent(m: list[list], order: Sequence[Root], ring: Ring = QQ,
                        check: bool = True) -> list[Factor]:
    """Coordinates of ``m`` as an ordered product over ``order`` (positive roots).

    Coefficients are fixed one height at a time: the entry at a height-h
    position equals its own coefficient plus contributions of strictly lower
    heights, which are already known.

    >>> from sliceinv.rootsys import Root
    >>> m = matrix_of_word([Factor(Root(2, 2), Fraction(5)), Factor(Root(1, 1), Fraction(7)),
    ...                     Factor(Root(1, 2), Fraction(35))], 3)
    >>> [str(f) for f in factorize_unipotent(m, [Root(2, 2), Root(1, 1), Root(1, 2)])]
    ['X_a(2,2)(5)', 'X_a(1,1)(7)', 'X_a(1,2)(35)']
    """
    n = len(m)
    support = {(r.row, r.col) for r in order}
    if any(not r.positive for r in order):
        raise FactorizationError("only positive roots are supported")
    for a in range(n):
        if m[a][a] != ring.one:
            raise FactorizationError("matrix is not unipotent")
        for b in range(n):
            if a != b and m[a][b] and (a + 1, b + 1) not in support:
                raise FactorizationError(f"entry ({a + 1},{b + 1}) outside the root support")
    coeff: dict[Root, Any] = {}
    for h in sorted({r.height for r in order}):
        trial = identity(n, ring)
        for r in order:
            c = coeff.get(r)
            if c:
                right_mul_factor(trial, r, c)
        for r in order:
            if r.height == h:
                coeff[r] = m[r.row - 1][r.col - 1] - trial[r.row - 1][r.col - 1]
    word = [Factor(r, coeff[r]) for r in order if coeff[r]]
    if check and not mat_eq(matrix_of_word(word, n, ring), m):
        raise FactorizationError("multiply-back check failed")
    return word


def s_conjugate_matrix(rep: ClassRep) -> tuple[list[list], list[list]]:
    """The signed permutation matrix of s and its inverse (its transpose)."""
    s = s_matrix(rep)
    s_inv = [list(col) for col in zip(*s)]
    return s, s_inv


def split_delta_s(st: Strata, word: Sequence[Factor], ring: Ring = QQ) -> tuple[list[Factor], list[Factor]]:
    """Refactor a one-layer word as ``(part on Delta_s) * (the rest)``, both in the usual order."""
    if not word:
        return [], []
    roots = sorted({f.root for f in word} | set(st.layer(st.d[word[0].root])), key=st.key)
    first = [r for r in roots if r in st.delta_s]
    rest = [r for r in roots if r not in st.delta_s]
    m = matrix_of_word(word, st.rep.n, ring)
    out = factorize_unipotent(m, first + rest, ring)
    return [f for f in out if f.root in st.delta_s], [f for f in out if f.root not in st.delta_s]
