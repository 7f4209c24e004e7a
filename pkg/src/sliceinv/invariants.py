"""
Closed-form generators: the free-algebra recursion B, the ascending-d filter
giving C^{q,f}, the per-root formula C_kappa and the generator set.

Two forms are kept side by side.  ``verbatim`` is the recursion and filter taken
literally; ``corrected`` follows the right sweeps factor by factor (commutator
signs, transported letters of every stage, position of each factor) and is
the form that agrees with the rewriting engine and the matrix oracle.

Summands are kept as ordered words of letters so the filter can read them in
order; the commutative image is taken only at the end.  A letter is
``("c", alpha)`` for an input coordinate or ``("cp", alpha)`` for the
transported coordinate ``c'_alpha`` that sits on the root ``s alpha``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Mapping, Optional

from .exactring import MultiPoly, var_c
from .groupalg import Factor, ZData, c_prime, split_delta_s, symbolic_zdata
from .rootsys import Root
from .strata import Strata, c_pairs, p_pairs, p_prime_pairs, r_pairs, stratify
from .weyl import ClassRep, act_on_root

__all__ = [
    "Letter", "Terms", "BExpander", "b_expr", "c_filter", "c_kappa_terms", "evaluate_terms",
    "letter_root", "commutator_sign", "anchor", "SweepExpander", "corrected_c_kappa_terms",
    "FormulaConfig", "layer_terms", "slice_coordinates", "GeneratorSet", "generators",
]

Letter = tuple[str, Root]
Terms = dict[tuple[Letter, ...], Fraction]


def _add(acc: Terms, other: Terms, scale: Fraction = Fraction(1)) -> None:
    for word, c in other.items():
        v = acc.get(word, 0) + c * scale
        if v:
            acc[word] = v
        else:
            acc.pop(word, None)


def _mul(a: Terms, b: Terms) -> Terms:
    out: Terms = {}
    for wa, ca in a.items():
        for wb, cb in b.items():
            w = wa + wb
            v = out.get(w, 0) + ca * cb
            if v:
                out[w] = v
            else:
                out.pop(w, None)
    return out


def letter_root(st: Strata, letter: Letter) -> Root:
    """The root a letter sits on: alpha for c_alpha, s(alpha) for c'_alpha."""
    kind, alpha = letter
    return act_on_root(st.rep.s, alpha) if kind == "cp" else alpha


@dataclass
class BExpander:
    """Memoized ``B_eta^{q,f}`` for a fixed target layer k."""
    st: Strata
    k: int
    signed: bool = False
    memo: dict = field(default_factory=dict)

    def eps(self, cls: str) -> Fraction:
        """Commutator sign for a C-pair (-1) or an R-pair (+1) when ``signed``."""
        return Fraction(-1) if self.signed and cls == "C" else Fraction(1)

    def cp(self, eta: Root) -> Letter:
        return ("cp", act_on_root(self.st.rep.s_inv, eta))

    def __call__(self, eta: Root, q: int, f: int) -> Terms:
        st, k = self.st, self.k
        if not 2 <= q <= k or f > k:
            raise ValueError(f"layer bounds violated: q={q} f={f} k={k}")
        while f == q - 1 and q > 2:
            q, f = q - 1, k
        if f < q:
            raise ValueError(f"B^{{{q},{f}}} is undefined")
        key = (eta, q, f)
        if key in self.memo:
            return self.memo[key]
        if (q, f) == (2, 2):
            out: Terms = {}
            if st.d.get(eta) == 2:
                _add(out, {(self.cp(eta),): Fraction(1)})
            for e1, e2 in sorted(c_pairs(st, eta, 2, 2)):
                _add(out, {(self.cp(e1), ("c", e2)): self.eps("C")})
            for e1, e2 in sorted(r_pairs(st, eta, 2, 2)):
                _add(out, {(self.cp(e1), ("c", e2)): self.eps("R")})
        else:
            out = dict(self(eta, q, f - 1))
            for e1, e2 in sorted(c_pairs(st, eta, f, f)):
                _add(out, _mul(self(e1, q, f), self(e2, q, f - 1)), self.eps("C"))
            for e1, e2 in sorted(r_pairs(st, eta, f, f)):
                _add(out, _mul(self(e1, q, f), self(e2, q, f)), self.eps("R"))
        self.memo[key] = out
        return out


def b_expr(st: Strata, eta: Root, q: int, f: int, k: Optional[int] = None) -> Terms:
    return BExpander(st, f if k is None else k)(eta, q, f)


def c_filter(terms: Terms, st: Strata, eta: Root) -> Terms:
    """Keep summands whose letters at depth >= d(eta) have non-decreasing depth."""
    de = st.d[eta]
    out: Terms = {}
    for word, c in terms.items():
        seq = [st.d[r] for r in (letter_root(st, x) for x in word) if st.d[r] >= de]
        if all(a <= b for a, b in zip(seq, seq[1:])):
            out[word] = c
    return out


def c_kappa_terms(st: Strata, kappa: Root, bx: Optional[BExpander] = None,
                  variant: str = "verbatim") -> Terms:
    """The three-case formula for C_kappa as ordered words.

    ``variant="verbatim"`` follows the recursion and filter literally;
    ``variant="corrected"`` is the sweep-faithful form of ``SweepExpander``.
    """
    if variant == "corrected":
        return corrected_c_kappa_terms(st, kappa)
    if variant != "verbatim":
        raise ValueError(f"unknown variant {variant!r}")
    k = st.d[kappa]
    if k < 2:
        raise ValueError(f"{kappa} lies in layer 1")
    bx = bx or BExpander(st, k)

    def C(eta: Root, q: int, f: int) -> Terms:
        return c_filter(bx(eta, q, f), st, eta)

    out: Terms = {}
    for q in range(2, k + 1):
        _add(out, C(kappa, q, k))
    cls = st.crc[kappa]
    if cls in ("O1", "O2", "O3"):
        for e1, e2 in sorted(p_pairs(st, kappa)):
            d1 = st.d[e1]
            for q in range(2, d1):
                inner: Terms = {}
                for qq in range(q + 1, d1 + 1):
                    _add(inner, C(e1, qq, d1))
                _add(out, _mul(C(e2, q, k), inner))
    if cls == "O3":
        for e1, e2 in sorted(p_prime_pairs(st, kappa)):
            for q in range(2, k + 1):
                inner = {(("c", e2),): Fraction(1)}
                for qq in range(q + 1, k + 1):
                    _add(inner, C(e2, qq, k))
                _add(out, _mul(C(e1, q, k), inner))
    return out


# --- the sweep-faithful recursion ---------------------------------------------------

def commutator_sign(a: Root, b: Root) -> int:
    """Sign of the extra factor in ``X_a(x) X_b(y) = X_b(y) X_a(x) X_{a+b}(+-xy)``."""
    return 1 if a.col == b.row else -1


def anchor(st: Strata, word: tuple[Letter, ...]) -> tuple:
    """Position key of the factor a word describes: its last input letter.

    A factor created while passing ``X_eta`` sits right after it, so its
    position is that of the last ``c`` letter; factors from ``n'`` start in
    front of everything.
    """
    for kind, alpha in reversed(word):
        if kind == "c":
            return st.key(alpha)
    return (-math.inf,)


def _mul_ordered(st: Strata, a: Terms, b: Terms) -> Terms:
    """Products of a mover ``a`` with the factors ``b`` it actually passes."""
    out: Terms = {}
    for wa, ca in a.items():
        pa = anchor(st, wa)
        for wb, cb in b.items():
            if anchor(st, wb) <= pa:
                continue
            w = wa + wb
            v = out.get(w, 0) + ca * cb
            if v:
                out[w] = v
            else:
                out.pop(w, None)
    return out


@dataclass
class SweepExpander:
    """Ordered-word coefficients of the right sweeps for target layer k.

    ``total(eta, q, f)`` is the eta-coefficient of ``v(q, f) n_f^(q)``: after
    stage q has moved its factors of layers q..f.  ``moving(eta, q, f)`` drops
    the static input coordinate ``c_eta`` of layer k, which never moves.
    """
    st: Strata
    k: int
    memo: dict = field(default_factory=dict)

    def cp(self, eta: Root) -> Letter:
        return ("cp", act_on_root(self.st.rep.s_inv, eta))

    def total(self, eta: Root, q: int, f: int) -> Terms:
        st, k = self.st, self.k
        if not 2 <= q <= k or not q - 1 <= f <= k:
            raise ValueError(f"layer bounds violated: q={q} f={f} k={k}")
        key = (eta, q, f)
        if key in self.memo:
            return self.memo[key]
        de = st.d[eta]
        out: Terms = {}
        if f == q - 1:
            if de == q:
                out[(self.cp(eta),)] = Fraction(1)
            if q == 2 or de == k:
                if de >= k:
                    _add(out, {(("c", eta),): Fraction(1)})
            elif de > k:
                _add(out, self.total(eta, q - 1, k))
        else:
            out = dict(self.total(eta, q, f - 1))
            for e1, e2 in sorted(c_pairs(st, eta, f, f)):
                _add(out, _mul_ordered(st, self.moving(e1, q, f), self.passed(e2, q, f, e1, False)),
                     Fraction(commutator_sign(e1, e2)))
            for e1, e2 in sorted(r_pairs(st, eta, f, f)):
                _add(out, _mul_ordered(st, self.moving(e1, q, f), self.passed(e2, q, f, e1, True)),
                     Fraction(commutator_sign(e1, e2)))
        self.memo[key] = out
        return out

    def moving(self, eta: Root, q: int, f: int) -> Terms:
        out = dict(self.total(eta, q, f))
        if self.st.d[eta] == self.k:
            _add(out, {(("c", eta),): Fraction(1)}, Fraction(-1))
        return out

    def passed(self, eta: Root, q: int, f: int, mover: Root, after: bool) -> Terms:
        """What a layer-f mover meets at eta: deeper factors, or same-layer ones still waiting."""
        st = self.st
        if st.d[eta] != f:
            return self.total(eta, q, f if after else f - 1)
        out: Terms = {(("c", eta),): Fraction(1)} if f == self.k else {}
        if st.key(eta) < st.key(mover):
            _add(out, self.moving(eta, q, f))
        return out


def corrected_c_kappa_terms(st: Strata, kappa: Root, sx: Optional[SweepExpander] = None) -> Terms:
    """``c-bar_kappa - c_kappa`` as ordered words, matching the rewriting engine."""
    k = st.d[kappa]
    if k < 2:
        raise ValueError(f"{kappa} lies in layer 1")
    sx = sx or SweepExpander(st, k)
    C = sx.moving
    out: Terms = {}
    for q in range(2, k + 1):
        _add(out, C(kappa, q, k))
    cls = st.crc[kappa]
    if cls in ("O1", "O2", "O3"):
        for e1, e2 in sorted(p_pairs(st, kappa)):
            d1 = st.d[e1]
            for q in range(2, d1):
                inner: Terms = {}
                for qq in range(q + 1, d1 + 1):
                    _add(inner, C(e1, qq, d1))
                _add(out, _mul(C(e2, q, k), inner), Fraction(commutator_sign(e1, e2)))
    if cls == "O3":
        for e1, e2 in sorted(p_prime_pairs(st, kappa)):
            if st.key(e2) <= st.key(e1):
                continue
            for q in range(2, k + 1):
                inner = {(("c", e2),): Fraction(1)}
                for qq in range(q + 1, k + 1):
                    _add(inner, C(e2, qq, k))
                _add(out, _mul(C(e1, q, k), inner), Fraction(commutator_sign(e2, e1)))
    return out


def evaluate_terms(terms: Terms, value: Callable[[Letter], Any], zero: Any = Fraction(0)) -> Any:
    total = zero
    for word, c in terms.items():
        prod = c
        for x in word:
            prod = prod * value(x)
        total = total + prod
    return total


# --- generators ------------------------------------------------------------------------

@dataclass(frozen=True)
class FormulaConfig:
    """Which closed form to use.

    ``variant`` picks the C_kappa words ("corrected" or "verbatim");
    ``signed_t`` applies the chain signs to the T-expressions in c'.
    """
    variant: str = "corrected"
    signed_t: bool = True


_TERMS_CACHE: dict = {}


def layer_terms(st: Strata, k: int, variant: str = "corrected") -> dict[Root, Terms]:
    """Ordered-word formulas for every root of layer k (cached per class)."""
    key = (st.rep.l, st.rep.lprime, k, variant)
    if key not in _TERMS_CACHE:
        if variant == "corrected":
            sx = SweepExpander(st, k)
            terms = {kap: corrected_c_kappa_terms(st, kap, sx) for kap in st.layer(k)}
        else:
            bx = BExpander(st, k)
            terms = {kap: c_kappa_terms(st, kap, bx, variant) for kap in st.layer(k)}
        _TERMS_CACHE[key] = terms
    return _TERMS_CACHE[key]


def slice_coordinates(st: Strata, zd: ZData, c: Mapping[Root, Any],
                      config: FormulaConfig = FormulaConfig(),
                      mutate: Optional[Callable] = None) -> dict[Root, Any]:
    """``c-bar_kappa`` for every non-fixed positive root, from input coordinates ``c``.

    Layer 1 is copied from ``c``.  For ``k >= 2`` the transported letters of
    layer k are computed from the layer k-1 result (its part off ``Delta_s``
    for layer D), and all letters so far are substituted into
    ``c_kappa + C_kappa``.  Works over any coefficient
    ring, so it gives both numbers and polynomials.
    """
    ring = zd.ring
    s = st.rep.s
    coords: dict[Root, Any] = {r: c.get(r, ring.zero) for r in st.layer(1)}
    cp: dict[Root, Any] = {}
    for k in range(2, st.D + 2):
        prev_word = [Factor(r, coords[r]) for r in sorted(st.layer(k - 1), key=st.key) if coords[r]]
        if k - 1 == st.D:
            _, prev_word = split_delta_s(st, prev_word, ring)
        prev = {f.root: f.coeff for f in prev_word}
        cp.update(c_prime(st, zd, k, prev, signed=config.signed_t, mutate=mutate))

        def value(letter: Letter) -> Any:
            kind, alpha = letter
            if kind == "cp":
                return cp.get(act_on_root(s, alpha), ring.zero)
            return c.get(alpha, ring.zero)

        for kap, terms in layer_terms(st, k, config.variant).items():
            coords[kap] = c.get(kap, ring.zero) + evaluate_terms(terms, value, ring.zero)
    return coords


@dataclass(frozen=True)
class GeneratorSet:
    """``kappa -> C_kappa`` over ``Delta_s``, as polynomials in the c- and z-variables."""
    rep: ClassRep
    kappa_to_poly: dict[Root, MultiPoly]
    config: FormulaConfig

    def records(self) -> list[dict]:
        out = []
        for kap in sorted(self.kappa_to_poly):
            p = self.kappa_to_poly[kap]
            out.append({
                "kappa": str(kap),
                "degree": p.degree(),
                "terms": len(p.terms),
                "support": sorted(str(v) for v in p.variables()),
                "poly": p,
            })
        return out


def generators(rep: ClassRep, st: Optional[Strata] = None,
               config: FormulaConfig = FormulaConfig()) -> GeneratorSet:
    """The generator set: symbolic slice coordinates restricted to ``Delta_s``.

    >>> from sliceinv.weyl import representative
    >>> gs = generators(representative(3, 3))
    >>> len(gs.kappa_to_poly)
    3
    """
    st = st or stratify(rep)
    zd = symbolic_zdata(rep)
    rel = zd.ring.one.rel
    c = {r: var_c(r, rel) for r in st.kplus}
    coords = slice_coordinates(st, zd, c, config)
    return GeneratorSet(rep, {kap: coords[kap] for kap in st.delta_s}, config)
