"""
Exact multivariate Laurent polynomials over the rationals.

Variables are the coordinates ``c[alpha]``, the transported coordinates
``cp[alpha]`` and the block entries ``z[i,j]``.  Only diagonal ``z[i,i]`` may
carry negative exponents.  A polynomial may carry a *relation*: the tuple of
block indices whose diagonal product is set to 1.  Monomials are then stored
with the diagonal exponent vector shifted so that its minimum is 0, which
picks one representative per coset of the relation.

>>> x, y = var_c(Root(1, 1)), var_c(Root(2, 2))
>>> str((x + y) ** 2)
'c[a(1,1)]^2 + 2*c[a(1,1)]*c[a(2,2)] + c[a(2,2)]^2'
>>> z = var_z(3, 3, rel=(3,))
>>> z * 5
MultiPoly(5)
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, NamedTuple, Optional, Union

from .rootsys import Root, parse_root

__all__ = [
    "VarId", "MultiPoly", "var_c", "var_cp", "var_z", "const", "to_json", "from_json",
    "RelationViolation", "MissingVariable", "Scalar",
]

Scalar = Union[int, Fraction]


class RelationViolation(ValueError):
    """An assignment breaks the diagonal-product relation."""


class MissingVariable(KeyError):
    pass


class VarId(NamedTuple):
    kind: str  # "c", "cp" or "z"
    i: int
    j: int
    sign: int = 1

    @classmethod
    def c(cls, r: Root) -> VarId:
        return cls("c", r.i, r.j, r.sign)

    @classmethod
    def cp(cls, r: Root) -> VarId:
        return cls("cp", r.i, r.j, r.sign)

    @classmethod
    def z(cls, i: int, j: int) -> VarId:
        return cls("z", i, j, 0)

    @property
    def root(self) -> Root:
        if self.kind == "z":
            raise ValueError("z-variables carry no root")
        return Root(self.i, self.j, self.sign)

    @property
    def diagonal(self) -> bool:
        return self.kind == "z" and self.i == self.j

    def __str__(self) -> str:
        if self.kind == "z":
            return f"z[{self.i},{self.j}]"
        return f"{self.kind}[{self.root}]"

    def json_name(self) -> str:
        if self.kind == "z":
            return f"z:{self.i},{self.j}"
        return f"{'c' if self.kind == 'c' else 'cp'}:{self.root}"

    @classmethod
    def from_json_name(cls, text: str) -> VarId:
        kind, _, rest = text.partition(":")
        if kind == "z":
            a, b = rest.split(",")
            return cls.z(int(a), int(b))
        if kind in ("c", "cp"):
            r = parse_root(rest)
            return cls(kind, r.i, r.j, r.sign)
        raise ValueError(f"unknown variable {text!r}")


Monomial = tuple  # sorted tuple of (VarId, exponent) with exponent != 0


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    exps = dict(a)
    for v, e in b:
        ne = exps.get(v, 0) + e
        if ne:
            exps[v] = ne
        else:
            del exps[v]
    return tuple(sorted(exps.items()))


def _normalize(mono: Monomial, rel: Optional[tuple[int, ...]]) -> Monomial:
    for v, e in mono:
        if e < 0 and not v.diagonal:
            raise ValueError(f"negative exponent on {v}")
    if not rel:
        return mono
    exps = dict(mono)
    diag = [VarId.z(i, i) for i in rel]
    shift = min(exps.get(v, 0) for v in diag)
    if shift == 0:
        return mono
    for v in diag:
        ne = exps.get(v, 0) - shift
        if ne:
            exps[v] = ne
        else:
            exps.pop(v, None)
    return tuple(sorted(exps.items()))


def _merge_rel(a: Optional[tuple], b: Optional[tuple]) -> Optional[tuple]:
    if a is None:
        return b
    if b is None or a == b:
        return a
    raise ValueError(f"incompatible relations {a} and {b}")


class MultiPoly:
    """Immutable exact polynomial; ``terms`` maps monomials to non-zero Fractions."""

    __slots__ = ("terms", "rel", "_hash")

    def __init__(self, terms: Optional[Mapping] = None, rel: Optional[tuple[int, ...]] = None,
                 _canonical: bool = False):
        self.rel = tuple(rel) if rel is not None else None
        if _canonical:
            self.terms = dict(terms or {})
        else:
            acc: dict = {}
            for mono, coeff in (terms or {}).items():
                coeff = Fraction(coeff)
                if not coeff:
                    continue
                key = _normalize(tuple(sorted(mono)), self.rel)
                nc = acc.get(key, 0) + coeff
                if nc:
                    acc[key] = nc
                else:
                    acc.pop(key, None)
            self.terms = acc
        self._hash = None

    # --- construction -------------------------------------------------------
    @classmethod
    def constant(cls, value: Scalar, rel: Optional[tuple[int, ...]] = None) -> MultiPoly:
        return cls({(): value}, rel)

    @classmethod
    def variable(cls, v: VarId, exp: int = 1, rel: Optional[tuple[int, ...]] = None) -> MultiPoly:
        return cls({((v, exp),): 1}, rel)

    def _coerce(self, other) -> MultiPoly:
        if isinstance(other, MultiPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPoly.constant(other)
        return NotImplemented

    # --- arithmetic -----------------------------------------------------------
    def __add__(self, other) -> MultiPoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        rel = _merge_rel(self.rel, other.rel)
        a = self if self.rel == rel else MultiPoly(self.terms, rel)
        b = other if other.rel == rel else MultiPoly(other.terms, rel)
        out = dict(a.terms)
        for mono, c in b.terms.items():
            nc = out.get(mono, 0) + c
            if nc:
                out[mono] = nc
            else:
                out.pop(mono, None)
        return MultiPoly(out, rel, _canonical=True)

    __radd__ = __add__

    def __neg__(self) -> MultiPoly:
        return MultiPoly({m: -c for m, c in self.terms.items()}, self.rel, _canonical=True)

    def __sub__(self, other) -> MultiPoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> MultiPoly:
        return (-self) + other

    def __mul__(self, other) -> MultiPoly:
        if isinstance(other, (int, Fraction)):
            if not other:
                return MultiPoly({}, self.rel, _canonical=True)
            return MultiPoly({m: c * other for m, c in self.terms.items()}, self.rel, _canonical=True)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        rel = _merge_rel(self.rel, other.rel)
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                key = _normalize(_mono_mul(m1, m2), rel)
                nc = out.get(key, 0) + c1 * c2
                if nc:
                    out[key] = nc
                else:
                    del out[key]
        return MultiPoly(out, rel, _canonical=True)

    __rmul__ = __mul__

    def __truediv__(self, other: Scalar) -> MultiPoly:
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        return self * (Fraction(1) / Fraction(other))

    def __pow__(self, n: int) -> MultiPoly:
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out = MultiPoly.constant(1, self.rel)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # --- comparison ---------------------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.constant(other, self.rel)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        rel = _merge_rel(self.rel, other.rel)
        a = self if self.rel == rel else MultiPoly(self.terms, rel)
        b = other if other.rel == rel else MultiPoly(other.terms, rel)
        return a.terms == b.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    # --- inspection ---------------------------------------------------------------
    def variables(self) -> set[VarId]:
        return {v for mono in self.terms for v, _ in mono}

    def degree(self) -> int:
        """Total degree counting only non-negative exponents."""
        if not self.terms:
            return -1
        return max(sum(e for _, e in mono if e > 0) for mono in self.terms)

    def constant_value(self) -> Optional[Fraction]:
        if not self.terms:
            return Fraction(0)
        if set(self.terms) == {()}:
            return self.terms[()]
        return None

    def with_rel(self, rel: Optional[tuple[int, ...]]) -> MultiPoly:
        return MultiPoly(self.terms, rel)

    # --- evaluation / substitution ------------------------------------------------
    def eval(self, assignment: Mapping[VarId, Scalar]) -> Fraction:
        if self.rel:
            diag = [VarId.z(i, i) for i in self.rel]
            if all(v in assignment for v in diag):
                prod = Fraction(1)
                for v in diag:
                    prod *= Fraction(assignment[v])
                if prod != 1:
                    raise RelationViolation(f"diagonal product is {prod}, not 1")
        total = Fraction(0)
        for mono, c in self.terms.items():
            val = c
            for v, e in mono:
                if v not in assignment:
                    raise MissingVariable(str(v))
                x = Fraction(assignment[v])
                if e < 0 and not x:
                    raise ZeroDivisionError(f"{v} = 0 with negative exponent")
                val *= x ** e
            total += val
        return total

    def subs(self, mapping: Mapping[VarId, MultiPoly], rel: Optional[tuple[int, ...]] = "keep") -> MultiPoly:
        """Substitute polynomials for variables (only for variables with positive exponents)."""
        out_rel = self.rel if rel == "keep" else rel
        for p in mapping.values():
            if isinstance(p, MultiPoly):
                out_rel = _merge_rel(out_rel, p.rel)
        result = MultiPoly({}, out_rel, _canonical=True)
        cache: dict = {}
        for mono, c in self.terms.items():
            keep = []
            term = MultiPoly.constant(c, out_rel)
            for v, e in mono:
                if v in mapping:
                    if e < 0:
                        raise ValueError(f"cannot substitute into negative power of {v}")
                    key = (v, e)
                    if key not in cache:
                        base = mapping[v]
                        if not isinstance(base, MultiPoly):
                            base = MultiPoly.constant(base, out_rel)
                        cache[key] = base ** e
                    term = term * cache[key]
                else:
                    keep.append((v, e))
            if keep:
                term = term * MultiPoly({tuple(keep): 1}, out_rel)
            result = result + term
        return result

    # --- text -----------------------------------------------------------------
    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mono in sorted(self.terms, key=_mono_sort_key):
            c = self.terms[mono]
            factors = [str(v) if e == 1 else f"{v}^{e}" for v, e in mono]
            if not factors:
                parts.append(str(c))
            elif c == 1:
                parts.append("*".join(factors))
            elif c == -1:
                parts.append("-" + "*".join(factors))
            else:
                parts.append(f"{c}*" + "*".join(factors))
        out = " + ".join(parts)
        return out.replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"MultiPoly({self})"


def _mono_sort_key(mono: Monomial):
    return (-sum(e for _, e in mono if e > 0), [(v.kind, v.i, v.j, v.sign, -e) for v, e in mono])


def const(value: Scalar, rel: Optional[tuple[int, ...]] = None) -> MultiPoly:
    return MultiPoly.constant(value, rel)


def var_c(r: Root, rel: Optional[tuple[int, ...]] = None) -> MultiPoly:
    return MultiPoly.variable(VarId.c(r), 1, rel)


def var_cp(r: Root, rel: Optional[tuple[int, ...]] = None) -> MultiPoly:
    return MultiPoly.variable(VarId.cp(r), 1, rel)


def var_z(i: int, j: int, exp: int = 1, rel: Optional[tuple[int, ...]] = None) -> MultiPoly:
    if exp < 0 and i != j:
        raise ValueError("only diagonal z-variables are invertible")
    return MultiPoly.variable(VarId.z(i, j), exp, rel)


def _frac_text(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def to_json(p: MultiPoly) -> dict:
    terms = []
    for mono in sorted(p.terms, key=_mono_sort_key):
        terms.append({
            "coeff": _frac_text(p.terms[mono]),
            "vars": [{"v": v.json_name(), "e": e} for v, e in mono],
        })
    return {"terms": terms}


def from_json(doc: Mapping, rel: Optional[tuple[int, ...]] = None) -> MultiPoly:
    terms = {}
    for t in doc["terms"]:
        mono = tuple((VarId.from_json_name(x["v"]), int(x["e"])) for x in t["vars"])
        terms[mono] = terms.get(mono, 0) + Fraction(t["coeff"])
    return MultiPoly(terms, rel)
