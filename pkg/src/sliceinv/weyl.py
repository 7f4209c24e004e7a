"""
The Weyl group S_{l+1}, single-cycle class representatives and sign data.

Permutations are stored in one-line form with 1-based values; composition is
``(u * v)(x) = u(v(x))``.  A permutation acts on roots through matrix positions,
``w . E_{a,b} = E_{w(a), w(b)}``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

import numpy as np

from .rootsys import Root, enumerate_positive, root_at

__all__ = [
    "WeylPerm", "ClassRep", "representative", "act_on_root", "delta_sets",
    "closed_form_delta_s_inv", "theta", "theta_simple_table", "sign_data",
    "reflection_matrix", "s_matrix", "special_orbits", "halfplane_certificate",
    "InternalInconsistency", "interval",
]


class InternalInconsistency(AssertionError):
    """A closed-form list disagrees with its brute-force counterpart."""


@dataclass(frozen=True)
class WeylPerm:
    image: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.image) != list(range(1, len(self.image) + 1)):
            raise ValueError(f"not a permutation: {self.image}")

    @classmethod
    def identity(cls, n: int) -> WeylPerm:
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def transposition(cls, n: int, a: int, b: int) -> WeylPerm:
        img = list(range(1, n + 1))
        img[a - 1], img[b - 1] = b, a
        return cls(tuple(img))

    @property
    def n(self) -> int:
        return len(self.image)

    def __call__(self, k: int) -> int:
        return self.image[k - 1]

    def __mul__(self, other: WeylPerm) -> WeylPerm:
        return WeylPerm(tuple(self(other(k)) for k in range(1, self.n + 1)))

    def inverse(self) -> WeylPerm:
        inv = [0] * self.n
        for k, v in enumerate(self.image, start=1):
            inv[v - 1] = k
        return WeylPerm(tuple(inv))

    def order(self) -> int:
        w, k = self, 1
        ident = WeylPerm.identity(self.n)
        while w != ident:
            w, k = w * self, k + 1
        return k

    def moved(self) -> set[int]:
        return {k for k in range(1, self.n + 1) if self(k) != k}

    def cycles(self) -> list[tuple[int, ...]]:
        seen, out = set(), []
        for start in range(1, self.n + 1):
            if start in seen or self(start) == start:
                continue
            cyc, k = [], start
            while k not in seen:
                seen.add(k)
                cyc.append(k)
                k = self(k)
            out.append(tuple(cyc))
        return out

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self.image)) + "]"


def act_on_root(w: WeylPerm, r: Root) -> Root:
    return root_at(w(r.row), w(r.col))


def interval(a: int, b: int, l: int) -> Optional[Root]:
    """``alpha_a + ... + alpha_b`` with non-existent simple roots dropped."""
    a, b = max(a, 1), min(b, l)
    if a > b:
        return None
    return Root(a, b)


def _steps(first: int, last: int, step: int = 2) -> range:
    """The progression ``first, first+step, ..., last`` (empty if reversed)."""
    if step > 0:
        return range(first, last + 1, step)
    return range(first, last - 1, step)


@dataclass(frozen=True)
class ClassRep:
    l: int
    lprime: int
    m: int
    p: int
    case_id: str
    gamma1: tuple[Root, ...]
    gamma2: tuple[Root, ...]
    s: WeylPerm
    word: tuple[Root, ...] = field(repr=False)

    @property
    def n(self) -> int:
        return self.l + 1

    @property
    def gamma(self) -> Root:
        return Root(self.m + 1, self.m + self.p + 1)

    @property
    def fixed_indices(self) -> range:
        """Matrix indices fixed by s (the GL block of the Levi factor)."""
        return range(self.m + 2, self.m + self.p + 2)

    @property
    def fixed_simple(self) -> list[Root]:
        return [Root(i, i) for i in range(self.m + 2, self.m + self.p + 1)]

    @property
    def s_inv(self) -> WeylPerm:
        return self.s.inverse()

    def span(self, a: int, b: int) -> Optional[Root]:
        return interval(a, b, self.l)


def _case_id(m: int, lprime: int) -> str:
    if m % 2 == 0:
        return "i" if lprime % 2 == 1 else "ii"
    return "iii" if lprime % 2 == 1 else "iv"


def representative(l: int, lprime: int) -> ClassRep:
    """Conjugacy-class representative of an (l'+1)-cycle in S_{l+1}.

    >>> rep = representative(3, 3)
    >>> rep.case_id, [str(g) for g in rep.gamma1], [str(g) for g in rep.gamma2]
    ('iii', ['a(1,1)', 'a(3,3)'], ['a(2,2)'])
    >>> str(rep.s)
    '[2,4,1,3]'
    """
    if not (1 <= lprime <= l):
        raise ValueError(f"need 1 <= l' <= l, got l={l}, l'={lprime}")
    m = (lprime - 1) // 2
    p = l - lprime
    case = _case_id(m, lprime)
    q = m + p  # offset of the right-hand block

    def simples(idx: Iterable[int]) -> list[Root]:
        return [Root(i, i) for i in idx if 1 <= i <= l]

    gamma = Root(m + 1, m + p + 1)
    if case == "i":
        g1 = simples(_steps(2, m)) + simples(_steps(q + 2, q + m))
        g2 = simples(_steps(1, m - 1)) + [gamma] + simples(_steps(q + 3, q + m + 1))
    elif case == "ii":
        g1 = simples(_steps(2, m)) + simples(_steps(q + 2, q + m + 2))
        g2 = simples(_steps(1, m - 1)) + [gamma] + simples(_steps(q + 3, q + m + 1))
    elif case == "iii":
        g1 = simples(_steps(1, m)) + simples(_steps(q + 2, q + m + 1))
        g2 = simples(_steps(2, m - 1)) + [gamma] + simples(_steps(q + 3, q + m))
    else:
        g1 = simples(_steps(1, m)) + simples(_steps(q + 2, q + m + 1))
        g2 = simples(_steps(2, m - 1)) + [gamma] + simples(_steps(q + 3, q + m + 2))

    word = tuple(g1 + g2)
    n = l + 1
    s = WeylPerm.identity(n)
    for g in word:
        s = s * WeylPerm.transposition(n, g.row, g.col)
    rep = ClassRep(l, lprime, m, p, case, tuple(g1), tuple(g2), s, word)
    _check_rep(rep)
    return rep


def _orthogonal(a: Root, b: Root) -> bool:
    return not ({a.row, a.col} & {b.row, b.col})


def _check_rep(rep: ClassRep) -> None:
    for fam in (rep.gamma1, rep.gamma2):
        for x in fam:
            for y in fam:
                if x != y and not _orthogonal(x, y):
                    raise InternalInconsistency(f"{x}, {y} not orthogonal")
    if len(rep.word) != rep.lprime:
        raise InternalInconsistency(f"word length {len(rep.word)} != l' = {rep.lprime}")
    cyc = rep.s.cycles()
    if len(cyc) != 1 or len(cyc[0]) != rep.lprime + 1:
        raise InternalInconsistency(f"s = {rep.s} is not a single (l'+1)-cycle")
    expected = set(range(1, rep.m + 2)) | set(range(rep.m + rep.p + 2, rep.l + 2))
    if rep.s.moved() != expected:
        raise InternalInconsistency(f"s moves {sorted(rep.s.moved())}")


# --- Delta_s, Delta_{s^-1} ----------------------------------------------------

def inversion_set(w: WeylPerm, l: int) -> set[Root]:
    return {r for r in enumerate_positive(l) if not act_on_root(w, r).positive}


def closed_form_delta_s_inv(rep: ClassRep) -> set[Root]:
    """The closed-form case list for Delta_{s^-1}, simple roots outside 1..l dropped."""
    m, p, case = rep.m, rep.p, rep.case_id
    q = m + p
    sp = rep.span
    out: list[Optional[Root]] = []

    # alpha_m + ... + alpha_{m+t}, t = 1..p; gamma'; alpha_a + ... + alpha_{m+p+2}
    out += [sp(m, m + t) for t in range(1, p + 1)]
    out.append(sp(m, m + p + 2))
    out += [sp(a, m + p + 2) for a in range(m + 2, m + p + 3)]

    if case in ("i", "ii"):
        # alpha_1+alpha_2, alpha_2+alpha_3+alpha_4, ..., alpha_{m-2}+alpha_{m-1}+alpha_m
        if m >= 2:
            out.append(sp(1, 2))
        out += [sp(a, a + 2) for a in _steps(2, m - 2)]
        out += [sp(a, a) for a in _steps(2, m)]
    else:
        # alpha_1+alpha_2+alpha_3, ..., alpha_{m-2}+alpha_{m-1}+alpha_m
        out += [sp(a, a + 2) for a in _steps(1, m - 2)]
        out += [sp(a, a) for a in _steps(1, m)]

    if case == "i":
        out += [sp(b, b + 2) for b in _steps(q + 2, q + m - 2)]
        if m >= 2:
            out.append(sp(q + m, q + m + 1))
        out += [sp(b, b) for b in _steps(q + 2, q + m)]
    elif case == "ii":
        out += [sp(b, b + 2) for b in _steps(q + 2, q + m)]
        out += [sp(b, b) for b in _steps(q + 2, q + m + 2)]
    elif case == "iii":
        out += [sp(b, b + 2) for b in _steps(q + 2, q + m - 1)]
        out += [sp(b, b) for b in _steps(q + 2, q + m + 1)]
    else:
        out += [sp(b, b + 2) for b in _steps(q + 2, q + m - 1)]
        out.append(sp(q + m + 1, q + m + 2))
        out += [sp(b, b) for b in _steps(q + 2, q + m + 1)]
    return {r for r in out if r is not None}


def delta_sets(rep: ClassRep, check: bool = True) -> tuple[set[Root], set[Root], set[Root]]:
    """``(Delta_s, Delta_{s^-1}, closed-form Delta_{s^-1})``.

    Raises InternalInconsistency when the brute-force set and the closed list differ.
    """
    ds = inversion_set(rep.s, rep.l)
    dsi = inversion_set(rep.s_inv, rep.l)
    closed = closed_form_delta_s_inv(rep)
    if check and closed != dsi:
        raise InternalInconsistency(
            f"(l={rep.l}, l'={rep.lprime}) closed list differs: "
            f"missing {sorted(map(str, dsi - closed))}, extra {sorted(map(str, closed - dsi))}"
        )
    return ds, dsi, closed


def carter_split_delta_s(rep: ClassRep) -> set[Root]:
    """``s_2 Delta_{s_1} u Delta_{s_2}`` computed from the two involutions."""
    n = rep.n
    s1 = WeylPerm.identity(n)
    for g in rep.gamma1:
        s1 = s1 * WeylPerm.transposition(n, g.row, g.col)
    s2 = WeylPerm.identity(n)
    for g in rep.gamma2:
        s2 = s2 * WeylPerm.transposition(n, g.row, g.col)
    out = {act_on_root(s2, r) for r in inversion_set(s1, rep.l)}
    return out | inversion_set(s2, rep.l)


# --- signs ----------------------------------------------------------------------

def theta(gamma: Root, eta: Root) -> int:
    """Sign with ``M_gamma E_eta M_gamma^-1 = theta * E_{s_gamma eta}``.

    ``M_gamma = exp(E_gamma) exp(-E_{-gamma}) exp(E_gamma)`` sends ``e_row`` to
    ``-e_col`` and ``e_col`` to ``e_row``, so each index of eta equal to
    ``row(gamma)`` contributes a factor -1.
    """
    a = gamma.row if gamma.positive else gamma.col
    return (-1) ** ((eta.row == a) + (eta.col == a))


def theta_simple_table(alpha: Root, beta: Root) -> Optional[int]:
    """Reference sign table for a simple root alpha; None where it is silent."""
    if alpha == beta:
        return -1
    if alpha.row == beta.col:
        return -1
    if alpha.col == beta.row:
        return 1
    if alpha.row == beta.row:
        return -1
    if alpha.col == beta.col:
        return 1
    return None


def sign_data(rep: ClassRep) -> dict[Root, int]:
    """``t(eta)`` for every root, from the reflection word of ``rep``."""
    n = rep.n
    t: dict[Root, int] = {}
    roots = enumerate_positive(rep.l)
    for eta in roots + [-r for r in roots]:
        sign, cur = 1, eta
        for g in reversed(rep.word):
            sign *= theta(g, cur)
            cur = act_on_root(WeylPerm.transposition(n, g.row, g.col), cur)
        t[eta] = sign
    return t


def reflection_matrix(gamma: Root, n: int) -> list[list[Fraction]]:
    a, b = gamma.row, gamma.col
    if a > b:
        a, b = b, a
    m = [[Fraction(int(r == c)) for c in range(n)] for r in range(n)]
    m[a - 1][a - 1] = m[b - 1][b - 1] = Fraction(0)
    m[b - 1][a - 1] = Fraction(-1)  # e_a -> -e_b
    m[a - 1][b - 1] = Fraction(1)  # e_b -> e_a
    return m


def _matmul(x, y):
    n = len(x)
    return [[sum((x[r][k] * y[k][c] for k in range(n)), Fraction(0)) for c in range(n)]
            for r in range(n)]


def _det_signed_perm(m) -> int:
    n = len(m)
    img, sgn = [], 1
    for c in range(n):
        rows = [r for r in range(n) if m[r][c] != 0]
        if len(rows) != 1 or abs(m[rows[0]][c]) != 1:
            raise ValueError("not a signed permutation matrix")
        img.append(rows[0])
        sgn *= int(m[rows[0]][c])
    seen, parity = set(), 0
    for start in range(n):
        k, length = start, 0
        while k not in seen:
            seen.add(k)
            k = img[k]
            length += 1
        if length:
            parity += length - 1
    return sgn * (-1) ** parity


def s_matrix(rep: ClassRep) -> list[list[Fraction]]:
    """Signed permutation matrix ``M_{gamma_1} ... M_{gamma_l'}`` representing s."""
    n = rep.n
    m = [[Fraction(int(r == c)) for c in range(n)] for r in range(n)]
    for g in rep.word:
        m = _matmul(m, reflection_matrix(g, n))
    if _det_signed_perm(m) != 1:
        raise ValueError("representative of s does not have determinant 1")
    return m


# --- special orbits ---------------------------------------------------------------

def kbar_positive(rep: ClassRep) -> list[Root]:
    """Positive roots outside the span of the fixed simple roots."""
    lo, hi = rep.m + 2, rep.m + rep.p
    return [r for r in enumerate_positive(rep.l) if not (lo <= r.i and r.j <= hi)]


def orbit(rep: ClassRep, r: Root) -> list[Root]:
    out, cur = [], r
    while True:
        out.append(cur)
        cur = act_on_root(rep.s, cur)
        if cur == r:
            return out


def closed_form_orbit_gamma_prime(rep: ClassRep) -> set[Root]:
    m, p, case = rep.m, rep.p, rep.case_id
    q = m + p
    sp = rep.span
    out = [sp(m, m + p + 2)]
    if case in ("i", "ii"):
        out += [sp(m - 2 * t, m + p + 2 + 2 * t) for t in range(1, (m - 2) // 2 + 1)]
    else:
        out += [sp(m - 2 * t, m + p + 2 + 2 * t) for t in range(1, (m - 1) // 2 + 1)]
    if case == "i":
        out += [sp(1 + 2 * t, q + m + 1 - 2 * t) for t in range(0, m // 2 + 1)]
    elif case == "ii":
        out.append(sp(1, q + m + 2))
        out += [sp(1 + 2 * t, q + m + 3 - 2 * t) for t in range(1, m // 2 + 1)]
    elif case == "iii":
        out += [sp(2 + 2 * t, q + m - 2 * t) for t in range(0, (m - 1) // 2 + 1)]
    else:
        out += [sp(2 + 2 * t, q + m + 2 - 2 * t) for t in range(0, (m - 1) // 2 + 1)]
    return {r for r in out if r is not None}


@dataclass(frozen=True)
class SpecialOrbits:
    gamma_prime: Root
    o_gamma_prime: frozenset
    o1_base: Root
    o2_base: Root
    o1: frozenset
    o2: frozenset
    closed_o_gamma_prime: frozenset


def special_orbits(rep: ClassRep, check: bool = True) -> SpecialOrbits:
    kplus = set(kbar_positive(rep))
    m, p = rep.m, rep.p
    gp = rep.span(m, m + p + 2)
    og = frozenset(set(orbit(rep, gp)) & kplus)
    closed = frozenset(closed_form_orbit_gamma_prime(rep))
    if check and og != closed:
        raise InternalInconsistency(
            f"(l={rep.l}, l'={rep.lprime}) orbit of gamma' differs: "
            f"missing {sorted(map(str, og - closed))}, extra {sorted(map(str, closed - og))}"
        )
    b1 = rep.span(m, m + p + 1)
    b2 = rep.span(m + 1, m + p + 2)
    o1 = frozenset(set(orbit(rep, b1)) & kplus)
    o2 = frozenset(set(orbit(rep, b2)) & kplus)
    return SpecialOrbits(gp, og, b1, b2, o1, o2, closed)


# --- half-plane certificate -------------------------------------------------------

@dataclass
class HalfplaneReport:
    passed: bool
    tol: float
    projections: dict[Root, complex]
    fixed_projections: dict[Root, complex]
    direction: complex
    margin: float
    reason: str = ""


def halfplane_certificate(rep: ClassRep, tol: float = 1e-9) -> HalfplaneReport:
    """Numeric check that the non-fixed positive roots project into an open half-plane.

    Uses an eigenvector of the permutation action for ``exp(2 pi i / (l'+1))``.
    """
    n = rep.n
    perm = np.zeros((n, n))
    for k in range(1, n + 1):
        perm[rep.s(k) - 1, k - 1] = 1.0
    lam = cmath.exp(2j * math.pi / (rep.lprime + 1))
    _, sv, vh = np.linalg.svd(perm - lam * np.eye(n))
    null = [vh[k].conj() for k in range(n) if sv[k] < 1e-8]
    if len(null) != 1:
        return HalfplaneReport(False, tol, {}, {}, 0j, 0.0,
                               f"eigenspace has dimension {len(null)}")
    v = null[0]

    def proj(r: Root) -> complex:
        return complex(v[r.row - 1] - v[r.col - 1])

    kplus = kbar_positive(rep)
    projections = {r: proj(r) for r in kplus}
    fixed = {r: proj(r) for r in enumerate_positive(rep.l) if r not in set(kplus)}
    small = [r for r, z in projections.items() if abs(z) <= tol]
    if small:
        return HalfplaneReport(False, tol, projections, fixed, 0j, 0.0,
                               f"vanishing projection for {', '.join(map(str, small))}")
    if any(abs(z) > tol for z in fixed.values()):
        return HalfplaneReport(False, tol, projections, fixed, 0j, 0.0,
                               "fixed root with non-zero projection")

    angles = sorted(cmath.phase(z) % (2 * math.pi) for z in projections.values())
    gaps = [angles[k + 1] - angles[k] for k in range(len(angles) - 1)]
    gaps.append(angles[0] + 2 * math.pi - angles[-1])
    k = max(range(len(gaps)), key=gaps.__getitem__)
    if gaps[k] <= math.pi + tol:
        return HalfplaneReport(False, tol, projections, fixed, 0j, 0.0, "no open half-plane")
    # the arc occupied by the projections runs from angles[k+1] round to angles[k]
    start = angles[(k + 1) % len(angles)]
    width = 2 * math.pi - gaps[k]
    direction = cmath.exp(1j * (start + width / 2))
    margin = min((z * direction.conjugate()).real / abs(z) for z in projections.values())
    ok = margin > tol
    return HalfplaneReport(ok, tol, projections, fixed, direction, margin,
                           "" if ok else "margin below tolerance")
