"""Obstructions to rational homology cobordism with sums of lens spaces.

Every predicate returns an ``ObstructionReport``.  The theorems behind them
give necessary conditions only, so "inconclusive" never means "cobordant".
A report stores the inputs it was computed from; ``replay`` recomputes it
and checks the verdict is the same.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .abelian import FiniteAbelianGroup, embeds
from .floer import (VSequence, casson_walker_lens, d_lens, d_surgery,
                    surgery_max_term)
from .lens import LensSpace, LensSum, h1
from .lisca import is_reduced, reduced_form
from .qarith import is_perfect_square, is_prime

OBSTRUCTED = "obstructed"
INCONCLUSIVE = "inconclusive"
CERTIFIED = "certified"


@dataclass(frozen=True)
class SurgeryDescription:
    """``p/q`` surgery on a knot known through its V-sequence (and maybe g_4, nu+)."""

    p: int
    q: int
    V: VSequence = field(default_factory=VSequence.zero)
    g4: int | None = None
    nu_plus: bool | None = None  # True means nu+ != 0

    def __post_init__(self):
        if self.p < 1 or self.q < 1 or math.gcd(self.p, self.q) != 1:
            raise ValueError("surgery slope must be p/q with coprime p, q > 0")
        if not isinstance(self.V, VSequence):
            object.__setattr__(self, "V", VSequence(tuple(self.V)))
        if self.g4 is not None and self.g4 < 0:
            raise ValueError("g4 must be non-negative")
        if self.nu_plus is not None and self.nu_plus != (self.V[0] > 0):
            raise ValueError("nu+ flag disagrees with V_0 (nu+ != 0 iff V_0 > 0)")

    def d(self, l: int) -> Fraction:
        return d_surgery(self.p, self.q, self.V, l)

    def __str__(self) -> str:
        parts = ["V=[%s]" % self.V]
        if self.g4 is not None:
            parts.append("g4=%d" % self.g4)
        if self.nu_plus is not None:
            parts.append("nu+=%s" % ("true" if self.nu_plus else "false"))
        return "S(%d/%d; %s)" % (self.p, self.q, ", ".join(parts))

    def to_json(self) -> dict:
        return {"p": self.p, "q": self.q, "V": list(self.V.values),
                "g4": self.g4, "nu_plus": self.nu_plus}

    @classmethod
    def from_json(cls, d: dict) -> "SurgeryDescription":
        return cls(d["p"], d["q"], VSequence(tuple(d["V"])), d.get("g4"), d.get("nu_plus"))


@dataclass
class ObstructionReport:
    verdict: str
    rule: str
    witness: dict
    inputs: dict = field(default_factory=dict)

    @property
    def obstructed(self) -> bool:
        return self.verdict == OBSTRUCTED

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "rule": self.rule,
                "witness": self.witness, "replay": self.inputs}

    def replay(self) -> bool:
        """Recompute from the stored inputs; true iff the verdict is reproduced."""
        fn = _REPLAY[self.rule]
        return fn(self.inputs).verdict == self.verdict


def homology_obstruction(h1_Y: FiniteAbelianGroup, X: LensSum) -> ObstructionReport:
    """Obstructed iff ``H_1`` of the reduced form of ``X`` does not embed in ``h1_Y``."""
    R, _ = reduced_form(X)
    G = h1(R)
    ok = embeds(G, h1_Y)
    return ObstructionReport(
        INCONCLUSIVE if ok else OBSTRUCTED, "homology-embedding",
        {"reduced": str(R), "h1_reduced": str(G), "h1_Y": str(h1_Y), "embeds": ok},
        {"h1_Y": h1_Y.elementary_divisors(), "X": [[L.p, L.q] for L in X.summands]})


def nonsplit_check(a: int, b: int, L: LensSpace) -> ObstructionReport:
    """Can reduced ``L(ab, q)`` be cobordant to ``Y_1 # Y_2`` with ``H_1 = Z/a, Z/b``?"""
    if a < 1 or b < 1 or a * b != L.p:
        raise ValueError("need a*b = p = %d" % L.p)
    if not is_reduced(LensSum([L])):
        raise ValueError("%s is not reduced; reduce it first" % L)
    target = FiniteAbelianGroup.from_cyclic([a, b])
    ok = embeds(FiniteAbelianGroup.from_cyclic([L.p]), target)
    return ObstructionReport(
        INCONCLUSIVE if ok else OBSTRUCTED, "non-splitting",
        {"gcd": math.gcd(a, b), "h1_L": "Z/%d" % L.p, "h1_split": str(target)},
        {"a": a, "b": b, "L": [L.p, L.q]})


def finite_order_check(S: SurgeryDescription) -> ObstructionReport:
    """Can ``S^3_{p/q}(K)`` have finite order modulo lens spaces?  (``p`` prime)

    Necessary: ``3 V_0 + 1 <= p``, and ``V_0 = 0`` when ``q = -1 mod p``.
    """
    if not is_prime(S.p):
        raise ValueError("p = %d is not prime" % S.p)
    v0 = S.V[0]
    wit = {"p": S.p, "q": S.q, "V0": v0, "3V0+1": 3 * v0 + 1}
    inputs = {"S": S.to_json()}
    if 3 * v0 + 1 > S.p:
        wit["violated"] = "3V0+1 <= p"
        return ObstructionReport(OBSTRUCTED, "finite-order", wit, inputs)
    if S.q % S.p == S.p - 1 and v0 > 0:
        wit["violated"] = "q = -1 mod p forces V0 = 0"
        return ObstructionReport(OBSTRUCTED, "finite-order", wit, inputs)
    return ObstructionReport(INCONCLUSIVE, "finite-order", wit, inputs)


def lens_subgroup_check(S: SurgeryDescription) -> ObstructionReport:
    """Can ``S^3_p(K)`` lie in the subgroup generated by lens spaces?

    For ``p`` prime and ``nu+(K) != 0`` this needs ``4 V_0 + 1 <= p <= 4 g_4 + 3``.
    """
    if S.g4 is None:
        raise ValueError("the lens-subgroup bound needs g4")
    if S.nu_plus is not True:
        raise ValueError("the lens-subgroup bound needs the nu+ != 0 flag")
    if S.q != 1:
        raise ValueError("the lens-subgroup bound is for integer surgeries (q = 1)")
    if not is_prime(S.p):
        raise ValueError("p = %d is not prime" % S.p)
    lo, hi = 4 * S.V[0] + 1, 4 * S.g4 + 3
    wit = {"p": S.p, "lower": lo, "upper": hi}
    inputs = {"S": S.to_json()}
    if S.p < lo:
        wit["violated"] = "4V0+1 <= p"
    elif S.p > hi:
        wit["violated"] = "p <= 4g4+3"
    else:
        return ObstructionReport(INCONCLUSIVE, "lens-subgroup", wit, inputs)
    return ObstructionReport(OBSTRUCTED, "lens-subgroup", wit, inputs)


def key_equation(n: int, S: SurgeryDescription, candidate: LensSum) -> tuple[Fraction, Fraction]:
    """Both sides of the summed correction-term identity for ``n S ~ candidate``.

    Equality is necessary for ``n`` copies of the surgery to be cobordant to
    the candidate sum.
    """
    p, q = S.p, S.q
    if not is_prime(p):
        raise ValueError("p = %d is not prime" % p)
    if n < 1 or len(candidate) > n:
        raise ValueError("candidate may have at most n = %d summands" % n)
    if any(L.p != p for L in candidate):
        raise ValueError("every candidate summand must have order %d" % p)
    lhs = n * p * casson_walker_lens(p, (-q) % p)
    lhs += sum((p * casson_walker_lens(p, p - L.q) for L in candidate), Fraction(0))
    rhs = Fraction(2 * n * sum(surgery_max_term(p, q, S.V, l) for l in range(p)))
    return lhs, rhs


@dataclass
class MetabolizerResult:
    status: str  # "found", "absent", "not_square" or "undecided"
    orders: tuple[int, ...]
    subgroup: tuple[tuple[int, ...], ...] = ()
    generators: tuple[tuple[int, ...], ...] = ()
    offset: tuple[int, ...] | None = None
    nodes: int = 0

    def to_json(self) -> dict:
        return {"status": self.status, "orders": list(self.orders),
                "subgroup": [list(m) for m in self.subgroup],
                "generators": [list(g) for g in self.generators],
                "offset": list(self.offset) if self.offset is not None else None,
                "nodes": self.nodes}


def _summand_d_values(Y):
    out = []
    for Z in Y:
        if isinstance(Z, SurgeryDescription):
            out.append([Z.d(l) for l in range(Z.p)])
            continue
        if not isinstance(Z, LensSpace):
            Z = LensSpace(*Z)
        out.append([d_lens(Z.p, Z.q, i) for i in range(Z.p)])
    return out


def metabolizer_search(Y, order_bound: int = 10_000,
                       node_budget: int = 1_000_000) -> MetabolizerResult:
    """Look for a subgroup ``M`` with ``|M|^2 = |H_1(Y)|`` and an offset ``s``
    such that ``d(Y, s + m) = 0`` for every ``m`` in ``M``.

    ``Y`` is a list of lens spaces, ``(p, q)`` pairs, or surgery
    descriptions; labels of each summand shift by the matching coordinate.
    When ``H_1`` is ``Z/p + Z/p`` with ``p`` an odd prime, only subgroups
    projecting onto both summands are tried.
    """
    dvals = _summand_d_values(Y)
    orders = tuple(len(v) for v in dvals)
    total = math.prod(orders)
    sq, k = is_perfect_square(total)
    if not sq:
        return MetabolizerResult("not_square", orders)
    if total > order_bound:
        return MetabolizerResult("undecided", orders)
    surjective = (len(orders) == 2 and orders[0] == orders[1]
                  and orders[0] > 2 and is_prime(orders[0]))

    def add(x, y):
        return tuple((a + b) % n for a, b, n in zip(x, y, orders))

    def sub(x, y):
        return tuple((a - b) % n for a, b, n in zip(x, y, orders))

    def dsum(x):
        return sum((v[i] for v, i in zip(dvals, x)), Fraction(0))

    elements = list(product(*(range(n) for n in orders)))
    zeros = [x for x in elements if dsum(x) == 0]
    zero = tuple(0 for _ in orders)
    nodes = 0

    def ok_projection(M):
        if not surjective:
            return True
        return all(len({m[i] for m in M}) == orders[i] for i in range(len(orders)))

    for s in zeros:
        D = {sub(x, s) for x in zeros}
        cand = sorted(D - {zero})
        seen = set()

        def grow(G, gens, start):
            nonlocal nodes
            for idx in range(start, len(cand)):
                g = cand[idx]
                if g in G:
                    continue
                nodes += 1
                if nodes > node_budget:
                    raise _Undecided
                H = set(G)
                frontier = list(G)
                while frontier:
                    nxt = []
                    for a in frontier:
                        b = add(a, g)
                        if b not in H:
                            H.add(b)
                            nxt.append(b)
                    frontier = nxt
                if len(H) > k or k % len(H) or not H <= D:
                    continue
                key = frozenset(H)
                if key in seen:
                    continue
                seen.add(key)
                if len(H) == k:
                    if ok_projection(H):
                        return H, gens + [g]
                    continue
                r = grow(H, gens + [g], idx + 1)
                if r is not None:
                    return r
            return None

        try:
            if k == 1:
                r = ({zero}, [])
            else:
                r = grow({zero}, [], 0)
        except _Undecided:
            return MetabolizerResult("undecided", orders, nodes=nodes)
        if r is not None:
            M, gens = r
            return MetabolizerResult("found", orders, tuple(sorted(M)), tuple(gens), s, nodes)
    return MetabolizerResult("absent", orders, nodes=nodes)


class _Undecided(Exception):
    pass


def metabolizer_report(Y, **kw) -> ObstructionReport:
    res = metabolizer_search(Y, **kw)
    verdict = {"found": INCONCLUSIVE, "absent": OBSTRUCTED,
               "not_square": OBSTRUCTED, "undecided": INCONCLUSIVE}[res.status]
    summ = [Z.to_json() if isinstance(Z, SurgeryDescription) else list(Z.key if isinstance(Z, LensSpace) else Z)
            for Z in Y]
    return ObstructionReport(verdict, "metabolizer", res.to_json(), {"Y": summ, **kw})


def cable_decompose(p: int, q: int, base: SurgeryDescription) -> tuple[LensSpace, SurgeryDescription]:
    """``pq`` surgery on the ``(p,q)``-cable of ``K`` as ``L(p, p-q) # S^3_{q/p}(K)``.

    ``q`` is reduced mod ``p`` for the lens summand.  ``base`` supplies the
    knot data of ``K``; its own slope is ignored.
    """
    if p < 2 or q < 1 or math.gcd(p, q) != 1:
        raise ValueError("need p > 1, q > 0 coprime")
    L = LensSpace(p, (-q) % p)
    return L, SurgeryDescription(q, p, base.V, base.g4, base.nu_plus)


def determinant_min(knots) -> tuple[LensSum, int]:
    """Reduced 2-bridge sum in the concordance-detectable class and its determinant.

    ``knots`` are ``(p, q)`` pairs of 2-bridge knots ``K(p,q)``; the double
    branched cover of ``K(p,q)`` is ``L(p,q)``.
    """
    pairs = list(knots)
    if any(p % 2 == 0 for p, _ in pairs):
        raise ValueError("2-bridge knots have odd determinant p")
    R, _ = reduced_form(LensSum(LensSpace(p, q % p) for p, q in pairs))
    return R, R.homology_order()


def reduced_odd_sums_dividing(d: int) -> list[LensSum]:
    """All reduced sums of odd-order lens spaces whose determinant divides ``d``."""
    lens = [LensSpace(p, q).canonical() for p in range(3, d + 1, 2) if d % p == 0
            for q in range(1, p) if math.gcd(p, q) == 1]
    lens = sorted(set(lens))
    out = set()

    def rec(start, prod_, cur):
        X = LensSum(cur)
        if is_reduced(X):
            out.add(X)
        for i in range(start, len(lens)):
            L = lens[i]
            if (d // prod_) % L.p == 0:
                rec(i, prod_ * L.p, cur + [L])

    rec(0, 1, [])
    return sorted(out, key=lambda X: (X.homology_order(), str(X)))


def bounding_report(X: LensSum) -> ObstructionReport:
    """Certified when ``X`` bounds a rational ball, obstructed otherwise."""
    R, trace = reduced_form(X)
    return ObstructionReport(
        OBSTRUCTED if R else CERTIFIED, "reduced-form",
        {"reduced": str(R), "trace": trace.to_json()},
        {"X": [[L.p, L.q] for L in X.summands]})


def _lens_sum(pairs):
    return LensSum(LensSpace(p, q) for p, q in pairs)


_REPLAY = {
    "homology-embedding": lambda a: homology_obstruction(
        FiniteAbelianGroup.from_cyclic(a["h1_Y"]), _lens_sum(a["X"])),
    "non-splitting": lambda a: nonsplit_check(a["a"], a["b"], LensSpace(*a["L"])),
    "finite-order": lambda a: finite_order_check(SurgeryDescription.from_json(a["S"])),
    "lens-subgroup": lambda a: lens_subgroup_check(SurgeryDescription.from_json(a["S"])),
    "metabolizer": lambda a: metabolizer_report(
        [SurgeryDescription.from_json(z) if isinstance(z, dict) else tuple(z) for z in a["Y"]],
        **{k: v for k, v in a.items() if k != "Y"}),
    "reduced-form": lambda a: bounding_report(_lens_sum(a["X"])),
}
