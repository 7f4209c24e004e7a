"""
Word rewriting for the layer-by-layer computation of n_k.

The engine starts from ``n'_k ... n'_2 v(1)`` and moves one-parameter factors
past each other with the exact commutation rule, following the sweep orders
of the closed-form derivation: first every factor of ``n'_q`` and every newly
created shallow factor is pushed to the right, then the layer-k factors are
pulled to the left, and finally ``v_k n'`` is put in order.  Every factor
remembers which rewrite created it; that record never influences a
coefficient.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Optional, Sequence

from .exactring import var_c, var_cp
from .groupalg import (
    Factor, Ring, factorize_unipotent, mat_eq, matrix_of_word, poly_ring,
)
from .rootsys import Root, root_add
from .strata import Strata
from .weyl import InternalInconsistency, act_on_root

__all__ = [
    "Tracked", "Anomaly", "Engine", "move_right", "move_left", "sort_word", "merge_word",
    "PipelineResult", "run_pipeline", "free_layer_inputs",
]


@dataclass(frozen=True)
class Tracked:
    """A factor ``X_root(coeff)`` plus the record of where it came from."""
    root: Root
    coeff: Any
    stage: int = 0  # 0 for input factors, q for factors created while processing n'_q
    origin: str = "v"  # "v", "n'", or "comm"
    parents: tuple = ()

    def plain(self) -> Factor:
        return Factor(self.root, self.coeff)

    def __str__(self) -> str:
        return f"X_{self.root}({self.coeff})"


@dataclass(frozen=True)
class Anomaly:
    """A rewrite that produced factors the sweep description says cannot appear."""
    where: str
    roots: tuple[Root, ...]

    def __str__(self) -> str:
        return f"{self.where}: " + ", ".join(map(str, self.roots))


def _swap(a: Tracked, b: Tracked, stage: int) -> tuple[Tracked, Tracked, Optional[Tracked]]:
    """``X_a X_b = X_b X_a X_{a+b}(eps c_a c_b)``; the extra factor commutes with both."""
    if a.root == -b.root:
        raise ValueError("opposite roots")
    s = root_add(a.root, b.root)
    if s is None:
        return b, a, None
    eps = 1 if a.root.col == b.root.row else -1
    extra = Tracked(s, a.coeff * b.coeff * eps, stage, "comm", (a.root, b.root))
    return b, a, extra


@dataclass
class Engine:
    st: Strata
    ring: Ring
    check: bool = True
    anomalies: list[Anomaly] = field(default_factory=list)
    trace: list[tuple[str, list[Tracked]]] = field(default_factory=list)
    record: bool = False

    def d(self, r: Root) -> int:
        return self.st.d[r]

    def mat(self, word: Sequence[Tracked]) -> list[list]:
        return matrix_of_word([t.plain() for t in word], self.st.rep.n, self.ring)

    def conserve(self, before: Sequence[Tracked], after: Sequence[Tracked], where: str) -> None:
        if self.check and not mat_eq(self.mat(before), self.mat(after)):
            raise InternalInconsistency(f"matrix changed during {where}")

    def log(self, name: str, word: Sequence[Tracked]) -> None:
        if self.record:
            self.trace.append((name, list(word)))

    # -- primitive pushes --------------------------------------------------------------

    def push_right(self, x: Tracked, u: list[Tracked], stage: int) -> list[Tracked]:
        """``X_x u = u' X_x``; each commutator is placed right after the factor that made it."""
        out: list[Tracked] = []
        for b in u:
            nb, _, extra = _swap(x, b, stage)
            out.append(nb)
            if extra is not None:
                out.append(extra)
        return out

    def push_left(self, x: Tracked, u: list[Tracked], stage: int) -> list[Tracked]:
        """``u X_x = X_x u'``; each commutator is placed right before the factor that made it."""
        out: list[Tracked] = []
        for b in reversed(u):
            nx, nb, extra = _swap(b, x, stage)
            out.append(nb)
            if extra is not None:
                out.append(extra)
        out.reverse()
        return out

    # -- the two rearrangement procedures ----------------------------------------------

    def move_right(self, x: Tracked, u: list[Tracked], stage: int) -> tuple[list[Tracked], list[Tracked]]:
        """``X_x u = u_out * emitted * X_x`` with emitted the new layer-d(x) factors in order."""
        dx = self.d(x.root)
        if any(self.d(b.root) < dx for b in u):
            raise ValueError("move_right needs every factor of u at depth >= d(x)")
        cur = self.push_right(x, u, stage)
        old = {id(b) for b in u}
        emitted: list[Tracked] = []
        while True:
            fresh = [i for i, b in enumerate(cur) if id(b) not in old and self.d(b.root) == dx]
            if not fresh:
                break
            # the largest in the order goes furthest right, so take it first
            i = max(fresh, key=lambda j: self.st.key(cur[j].root))
            y = cur[i]
            rest = cur[i + 1:]
            moved = self.push_right(y, rest, stage)
            before = {id(b) for b in rest}
            created = [b for b in moved if id(b) not in before and self.d(b.root) == dx]
            if created:
                self.anomalies.append(Anomaly(f"move_right cascade at depth {dx}", tuple(b.root for b in created)))
            cur = cur[:i] + moved
            emitted.insert(0, y)
        return cur, emitted

    def move_left(self, x: Tracked, u: list[Tracked], stage: int) -> tuple[list[Tracked], list[Tracked]]:
        """``u X_x = X_x * emitted * u_out`` with emitted the new layer-d(x) factors in order."""
        dx = self.d(x.root)
        if any(self.d(b.root) > dx for b in u):
            raise ValueError("move_left needs every factor of u at depth <= d(x)")
        cur = self.push_left(x, u, stage)
        old = {id(b) for b in u}
        emitted: list[Tracked] = []
        while True:
            fresh = [i for i, b in enumerate(cur) if id(b) not in old and self.d(b.root) == dx]
            if not fresh:
                break
            i = min(fresh, key=lambda j: self.st.key(cur[j].root))
            y = cur[i]
            rest = cur[:i]
            moved = self.push_left(y, rest, stage)
            before = {id(b) for b in rest}
            created = [b for b in moved if id(b) not in before and self.d(b.root) == dx]
            if created:
                self.anomalies.append(Anomaly(f"move_left cascade at depth {dx}", tuple(b.root for b in created)))
            cur = moved + cur[i + 1:]
            emitted.append(y)
        return emitted, cur

    # -- ordering helpers --------------------------------------------------------------

    def sort_word(self, word: list[Tracked], stage: int, where: str) -> list[Tracked]:
        """Bubble the word into the order on (Delta_K)_+, inserting commutators; then merge."""
        cur = list(word)
        start = list(word)
        extras: list[Root] = []
        changed = True
        while changed:
            changed = False
            for i in range(len(cur) - 1):
                a, b = cur[i], cur[i + 1]
                if self.st.key(a.root) > self.st.key(b.root):
                    nb, na, extra = _swap(a, b, stage)
                    cur[i:i + 2] = [nb, na] + ([extra] if extra is not None else [])
                    if extra is not None:
                        extras.append(extra.root)
                    changed = True
                    break
        if extras:
            self.anomalies.append(Anomaly(f"{where}: ordering created factors", tuple(extras)))
        out = self.merge(cur)
        self.conserve(start, out, where)
        return out

    def merge(self, word: list[Tracked]) -> list[Tracked]:
        out: list[Tracked] = []
        for t in word:
            if out and out[-1].root == t.root:
                prev = out.pop()
                c = prev.coeff + t.coeff
                if c:
                    out.append(Tracked(t.root, c, max(prev.stage, t.stage), "merged", (prev.root,)))
            elif t.coeff:
                out.append(t)
        return out


def sort_word(st: Strata, word: Sequence[Factor], ring: Ring) -> list[Factor]:
    eng = Engine(st, ring)
    tw = [Tracked(f.root, f.coeff) for f in word]
    return [t.plain() for t in eng.sort_word(tw, 0, "sort")]


def merge_word(word: Sequence[Factor]) -> list[Factor]:
    out: list[Factor] = []
    for f in word:
        if out and out[-1].root == f.root:
            c = out.pop().coeff + f.coeff
            if c:
                out.append(Factor(f.root, c))
        elif f.coeff:
            out.append(f)
    return out


def move_right(st: Strata, x: Factor, u: Sequence[Factor], ring: Ring) -> tuple[list[Factor], list[Factor]]:
    """``X_x u = u_out * emitted * X_x``.

    >>> from sliceinv.weyl import representative
    >>> from sliceinv.strata import stratify
    >>> from sliceinv.groupalg import QQ
    >>> from sliceinv.rootsys import Root
    >>> st = stratify(representative(3, 3))
    >>> u_out, em = move_right(st, Factor(Root(3, 3), 1), [Factor(Root(2, 2), 1)], QQ)
    >>> [str(f) for f in u_out], [str(f) for f in em]
    (['X_a(2,2)(1)', 'X_a(2,3)(-1)'], [])
    """
    eng = Engine(st, ring)
    tx = Tracked(x.root, x.coeff)
    tu = [Tracked(f.root, f.coeff) for f in u]
    out, em = eng.move_right(tx, tu, 0)
    eng.conserve([tx] + tu, out + em + [tx], "move_right")
    return [t.plain() for t in out], [t.plain() for t in em]


def move_left(st: Strata, x: Factor, u: Sequence[Factor], ring: Ring) -> tuple[list[Factor], list[Factor]]:
    """``u X_x = X_x * emitted * u_out``."""
    eng = Engine(st, ring)
    tx = Tracked(x.root, x.coeff)
    tu = [Tracked(f.root, f.coeff) for f in u]
    em, out = eng.move_left(tx, tu, 0)
    eng.conserve(tu + [tx], [tx] + em + out, "move_left")
    return [t.plain() for t in em], [t.plain() for t in out]


# --- the pipeline ----------------------------------------------------------------

@dataclass
class PipelineResult:
    k: int
    n_k: list[Factor]
    cbar: dict[Root, Any]
    anomalies: list[Anomaly]
    trace: list[tuple[str, list[Tracked]]]


def free_layer_inputs(st: Strata, k: int, rel=None) -> tuple[dict[int, list[Factor]], dict[int, list[Factor]]]:
    """``n'_q`` with free letters ``c'_{s^-1 eta}`` and ``v_j`` with free letters ``c_eta``."""
    s_inv = st.rep.s_inv
    n_primes = {
        q: [Factor(e, var_cp(act_on_root(s_inv, e), rel)) for e in sorted(st.layer(q), key=st.key)]
        for q in range(2, k + 1)
    }
    v = {j: [Factor(e, var_c(e, rel)) for e in sorted(st.layer(j), key=st.key)]
         for j in range(k, st.D + 2)}
    return n_primes, v


def run_pipeline(st: Strata, k: int, n_primes: dict[int, Sequence[Factor]],
                 v_layers: dict[int, Sequence[Factor]], ring: Optional[Ring] = None,
                 check: bool = True, record: bool = False) -> PipelineResult:
    """Rewrite ``n'_k ... n'_2 v_{D+1} ... v_k`` and read off ``n_k``.

    ``n_primes[q]`` is the ordered word of ``n'_q`` (layer q) and
    ``v_layers[j]`` the ordered word of ``v_j`` for ``j >= k``.
    """
    ring = ring or poly_ring(None)
    D = st.D
    if not 2 <= k <= D + 1:
        raise ValueError(f"layer {k} outside 2..{D + 1}")
    eng = Engine(st, ring, check=check, record=record)
    v1 = [Tracked(f.root, f.coeff, 0, "v") for j in range(D + 1, k - 1, -1) for f in v_layers.get(j, [])]
    primes = {q: [Tracked(f.root, f.coeff, q, "n'") for f in n_primes.get(q, [])] for q in range(2, k + 1)}
    start = [t for q in range(k, 1, -1) for t in primes[q]] + v1
    eng.log("v(1)", v1)

    v = list(v1)
    blocks: list[list[Tracked]] = []  # n(k) as (stage k block) ... (stage 2 block)
    for q in range(2, k + 1):
        stage_parts: dict[int, list[Tracked]] = {}
        tail: list[Tracked] = []
        for x in reversed(primes[q]):
            v, emitted = eng.move_right(x, v, q)
            tail = emitted + [x] + tail
        stage_parts[q] = tail
        eng.log(f"v({q},{q})", v)
        eng.log(f"n_{q}^({q})", tail)
        for f in range(q + 1, k + 1):
            fresh = [t for t in v if t.stage == q and eng.d(t.root) == f]
            tail = []
            while fresh:
                x = max(fresh, key=lambda t: eng.st.key(t.root))
                i = next(idx for idx, t in enumerate(v) if t is x)
                rest, emitted = eng.move_right(x, v[i + 1:], q)
                v = v[:i] + rest
                tail = emitted + [x] + tail
                fresh = [t for t in v if t.stage == q and eng.d(t.root) == f]
            stage_parts[f] = tail
            eng.log(f"v({q},{f})", v)
            eng.log(f"n_{f}^({q})", tail)
        blocks.insert(0, [t for f in range(k, q - 1, -1) for t in stage_parts[f]])
    nk_word = [t for b in blocks for t in b]
    eng.conserve(start, v + nk_word, "right sweeps")

    # pull the layer-k factors of n(k) to the left, smallest first
    n_prime: list[Tracked] = []
    rest = list(nk_word)
    while True:
        cands = [i for i, t in enumerate(rest) if eng.d(t.root) == k]
        if not cands:
            break
        i = min(cands, key=lambda j: eng.st.key(rest[j].root))
        x = rest[i]
        emitted, tail = eng.move_left(x, rest[:i], k)
        n_prime += [x] + emitted
        rest = tail + rest[i + 1:]
    eng.conserve(nk_word, n_prime + rest, "left sweep")
    eng.log("n'", n_prime)
    eng.log("n''", rest)
    n_prime = eng.sort_word(n_prime, k, "ordering n'")

    # v(k) = v'' v_k
    vk = [t for t in v if eng.d(t.root) == k]
    deep = [t for t in v if eng.d(t.root) != k]
    if check and not mat_eq(eng.mat(v), eng.mat(deep + vk)):
        eng.anomalies.append(Anomaly("v(k) is not v'' v_k", tuple(t.root for t in vk)))
        raise InternalInconsistency("v(k) does not split as v'' v_k")
    nbar = eng.sort_word(vk + n_prime, k, "ordering v_k n'")
    eng.log(f"nbar_{k}", nbar)
    cbar = {t.root: t.coeff for t in nbar}

    if check:
        full = [t.plain() for t in start]
        m = matrix_of_word(full, st.rep.n, ring)
        word = factorize_unipotent(m, list(st.ordered), ring)
        ref = {f.root: f.coeff for f in word if st.d[f.root] == k}
        for r in sorted(set(ref) | set(cbar), key=st.key):
            if ref.get(r, ring.zero) != cbar.get(r, ring.zero):
                raise InternalInconsistency(f"layer {k} certificate failed at {r}: "
                                            f"{cbar.get(r)} vs {ref.get(r)}")
    n_k = [Factor(t.root, t.coeff) for t in nbar]
    return PipelineResult(k, n_k, cbar, eng.anomalies, eng.trace)
