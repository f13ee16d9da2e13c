"""Rational-ball relations among lens spaces and the reduced representative.

A connected sum of lens spaces bounds a rational homology ball iff it splits
into blocks of five kinds: a single ``L(p,q)`` with ``p/q`` in the set R, an
inverse pair ``L(p,q) # L(p,p-q)``, and three kinds built from the families

    F_n = { m^2 n / (m n k + 1) : m > k > 0, gcd(m, k) = 1 },   n >= 2.

Rewriting ``L(p,q) -> L(n,1)`` for ``p/q`` in F_n (and ``L(p,p-q) ->
L(n,n-1)``), deleting R-summands and cancelling inverse pairs strictly lowers
``|H_1|`` and ends at the unique reduced sum in the class.

R-membership is decided on lattices: ``L(p,q)`` bounds iff both chain
lattices of ``p/q`` and ``p/(p-q)`` embed in the standard negative definite
lattice of the same rank.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from functools import lru_cache

from .lattice import LinearLatticeSpec, find_embedding
from .lens import LensSpace, LensSum, h1, is_amphichiral, reverse_orientation
from .qarith import is_perfect_square, mod_inverse, neg_cont_frac


class UndecidedError(RuntimeError):
    """An embedding search ran out of its node budget."""


@dataclass(frozen=True)
class FnWitness:
    n: int
    m: int
    k: int

    def __post_init__(self):
        if not (self.n >= 2 and self.m > self.k > 0 and math.gcd(self.m, self.k) == 1):
            raise ValueError("invalid F_n witness %r" % (self,))

    @property
    def p(self) -> int:
        return self.m * self.m * self.n

    @property
    def q(self) -> int:
        return self.m * self.n * self.k + 1


def find_Fn(p: int, q: int) -> FnWitness | None:
    """``(n, m, k)`` with ``p = m^2 n`` and ``q = m n k + 1``, if any."""
    if not (p > q > 0 and math.gcd(p, q) == 1):
        raise ValueError("need coprime p > q > 0")
    m = 2
    while m * m * 2 <= p:
        if p % (m * m) == 0:
            n = p // (m * m)
            if (q - 1) % (m * n) == 0:
                k = (q - 1) // (m * n)
                if m > k > 0 and math.gcd(m, k) == 1:
                    return FnWitness(n, m, k)
        m += 1
    return None


def _Fn_replacement(L: LensSpace):
    """``(replacement, witness, reversed?)`` if ``L`` is of F_n type, else ``None``."""
    for q in sorted({L.q, mod_inverse(L.q, L.p)}):
        w = find_Fn(L.p, q)
        if w is not None:
            return LensSpace(w.n, 1), w, False
        w = find_Fn(L.p, L.p - q)
        if w is not None:
            return LensSpace(w.n, w.n - 1), w, True
    return None


# Node budget for a single R-membership search; None means unbounded.
R_NODE_BUDGET: int | None = None


@lru_cache(maxsize=None)
def _in_R_cached(p: int, q: int, budget) -> bool:
    specs = [LinearLatticeSpec((tuple(neg_cont_frac(p, q)),)),
             LinearLatticeSpec((tuple(neg_cont_frac(p, p - q)),))]
    # the chain with the most -2 weights is the one that usually fails
    specs.sort(key=lambda s: sum(a - 3 for a in s.weights))
    for spec in specs:
        res = find_embedding(spec, node_budget=budget)
        if res.status == "undecided":
            raise UndecidedError("embedding search for %d/%d exhausted its budget" % (p, q))
        if not res.found:
            return False
    return True


def in_R(p: int, q: int, node_budget: int | None = None) -> bool:
    """Whether ``p/q`` lies in R, i.e. ``L(p,q)`` alone bounds a rational ball."""
    if not (p > q > 0 and math.gcd(p, q) == 1):
        raise ValueError("need coprime p > q > 0")
    if not is_perfect_square(p)[0]:
        return False
    return _in_R_cached(p, min(q, mod_inverse(q, p)),
                        node_budget if node_budget is not None else R_NODE_BUDGET)


@dataclass(frozen=True)
class RewriteStep:
    rule: str  # "Fn-replacement", "R-deletion" or "pair-cancellation"
    consumed: tuple[LensSpace, ...]
    produced: tuple[LensSpace, ...]
    witness: dict = field(default_factory=dict, compare=False)

    def to_json(self) -> dict:
        return {
            "rule": self.rule,
            "consumed": [str(L) for L in self.consumed],
            "produced": [str(L) for L in self.produced],
            "witness": self.witness,
        }


@dataclass
class ReductionTrace:
    steps: list[RewriteStep] = field(default_factory=list)

    def replay(self, X: LensSum) -> LensSum:
        """Apply the steps to ``X``, checking each one's witness on the way."""
        cur = list(X.summands)
        for st in self.steps:
            check_step(st)
            for L in st.consumed:
                key = L.key
                idx = next((i for i, M in enumerate(cur) if M.key == key), None)
                if idx is None:
                    raise ValueError("step consumes %s which is not present" % L)
                cur.pop(idx)
            cur.extend(st.produced)
        return LensSum(cur)

    def to_json(self) -> list[dict]:
        return [s.to_json() for s in self.steps]


def check_step(st: RewriteStep) -> None:
    """Raise ``ValueError`` unless ``st`` is an instance of a rational-ball relation."""
    if st.rule == "Fn-replacement":
        (L,), (M,) = st.consumed, st.produced
        w = FnWitness(st.witness["n"], st.witness["m"], st.witness["k"])
        qs = {L.q, mod_inverse(L.q, L.p)}
        if w.p != L.p:
            raise ValueError("F_n witness has the wrong order")
        if st.witness["reversed"]:
            ok = w.q in {L.p - q for q in qs} and M.key == LensSpace(w.n, w.n - 1).key
        else:
            ok = w.q in qs and M.key == LensSpace(w.n, 1).key
        if not ok:
            raise ValueError("bad F_n replacement %s" % st)
    elif st.rule == "R-deletion":
        (L,) = st.consumed
        if st.produced or not in_R(L.p, L.q):
            raise ValueError("bad R-deletion %s" % st)
    elif st.rule == "pair-cancellation":
        A, B = st.consumed
        if st.produced or A.key != reverse_orientation(B).key:
            raise ValueError("bad pair cancellation %s" % st)
    else:
        raise ValueError("unknown rule %r" % st.rule)


def _step_Fn(cur, trace, i):
    r = _Fn_replacement(cur[i])
    if r is None:
        return False
    M, w, rev = r
    trace.steps.append(RewriteStep("Fn-replacement", (cur[i],), (M,),
                                   {"n": w.n, "m": w.m, "k": w.k, "reversed": rev}))
    cur[i] = M
    return True


def _step_R(cur, trace, i):
    L = cur[i]
    if not in_R(L.p, L.q):
        return False
    trace.steps.append(RewriteStep("R-deletion", (L,), (), {"p": L.p, "q": L.q}))
    cur.pop(i)
    return True


def _step_pair(cur, trace, i):
    want = reverse_orientation(cur[i]).key
    for j in range(len(cur)):
        if j != i and cur[j].key == want:
            A, B = cur[i], cur[j]
            trace.steps.append(RewriteStep("pair-cancellation", (A, B), ()))
            for idx in sorted((i, j), reverse=True):
                cur.pop(idx)
            return True
    return False


def reduced_form(X: LensSum) -> tuple[LensSum, ReductionTrace]:
    """Unique reduced sum rational-homology cobordant to ``X``, with the rewrites used."""
    cur = list(X.summands)
    trace = ReductionTrace()
    changed = True
    while changed:
        changed = False
        i = 0
        while i < len(cur):
            if _step_Fn(cur, trace, i):
                changed = True
            i += 1
        i = 0
        while i < len(cur):
            if _step_pair(cur, trace, i):
                changed = True
                continue
            i += 1
        i = 0
        while i < len(cur):
            if _step_R(cur, trace, i):
                changed = True
                continue
            i += 1
    return LensSum(cur), trace


def random_order_reduction(X: LensSum, rng: random.Random) -> LensSum:
    """Apply applicable rewrites in a random order until none applies."""
    cur = list(X.summands)
    trace = ReductionTrace()
    steps = (_step_Fn, _step_R, _step_pair)
    while True:
        moves = [(f, i) for f in steps for i in range(len(cur))]
        rng.shuffle(moves)
        for f, i in moves:
            if f(cur, trace, i):
                break
        else:
            return LensSum(cur)


def is_reduced(X: LensSum) -> bool:
    S = X.summands
    for i, L in enumerate(S):
        if _Fn_replacement(L) is not None or in_R(L.p, L.q):
            return False
        want = reverse_orientation(L).key
        if any(j != i and M.key == want for j, M in enumerate(S)):
            return False
    return True


def bounds_qhb(X: LensSum) -> bool:
    return not reduced_form(X)[0]


def cobordant(X: LensSum, Y: LensSum) -> bool:
    return reduced_form(X)[0] == reduced_form(Y)[0]


INFINITE = "infinite"


def class_order(X: LensSum):
    """Order of the class of ``X``: ``1``, ``2`` or ``"infinite"``."""
    R = reduced_form(X)[0]
    if not R:
        return 1
    if all(is_amphichiral(L) for L in R.summands):
        return 2
    return INFINITE


def reduced_h1(X: LensSum):
    return h1(reduced_form(X)[0])
