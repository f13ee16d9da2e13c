"""Linear lattices, their images in ``(Z^N, -Id)`` and the move calculus on them.

All pairings use the standard negative definite form, ``v.w = -sum v_i w_i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product

from ..lens import LensSum
from ..qarith import eval_cont_frac, neg_cont_frac
from . import intlinalg


@dataclass(frozen=True)
class LinearLatticeSpec:
    """Disjoint union of weighted chains; chain ``[a_1..a_m]`` has ``v_i.v_i = -a_i``."""

    chains: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        chains = tuple(tuple(int(a) for a in c) for c in self.chains)
        for c in chains:
            if not c:
                raise ValueError("empty chain")
            if any(a < 2 for a in c):
                raise ValueError("chain weights must be >= 2: %r" % (c,))
        object.__setattr__(self, "chains", chains)

    @property
    def rank(self) -> int:
        return sum(len(c) for c in self.chains)

    @property
    def weights(self) -> list[int]:
        return [a for c in self.chains for a in c]

    def pairing_matrix(self) -> list[list[int]]:
        n = self.rank
        Q = [[0] * n for _ in range(n)]
        k = 0
        for c in self.chains:
            for i, a in enumerate(c):
                Q[k + i][k + i] = -a
                if i + 1 < len(c):
                    Q[k + i][k + i + 1] = Q[k + i + 1][k + i] = 1
            k += len(c)
        return Q

    def determinant(self) -> int:
        """Determinant of the pairing matrix, chain by chain via continuants."""
        out = 1
        for c in self.chains:
            k0, k1 = 1, 0
            for a in c:
                k0, k1 = a * k0 - k1, k0
            out *= (-1) ** len(c) * k0
        return out

    def values(self) -> list[Fraction]:
        """``p/q`` of each chain."""
        return [eval_cont_frac(c) for c in self.chains]

    def __add__(self, other: "LinearLatticeSpec") -> "LinearLatticeSpec":
        return LinearLatticeSpec(self.chains + other.chains)


def spec_of(X: LensSum) -> LinearLatticeSpec:
    return LinearLatticeSpec(tuple(tuple(neg_cont_frac(L.p, L.q)) for L in X.summands))


class NotLinearError(ValueError):
    pass


class ContractionError(ValueError):
    pass


@dataclass(frozen=True)
class VectorSubset:
    """Ordered vectors ``v_1..v_M`` in ``Z^N`` with the ``-Id`` pairing."""

    N: int
    vectors: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        vecs = tuple(tuple(int(x) for x in v) for v in self.vectors)
        for v in vecs:
            if len(v) != self.N:
                raise ValueError("vector %r does not live in Z^%d" % (v, self.N))
        object.__setattr__(self, "vectors", vecs)

    @classmethod
    def from_rows(cls, rows) -> "VectorSubset":
        rows = [tuple(r) for r in rows]
        return cls(len(rows[0]) if rows else 0, tuple(rows))

    def __len__(self) -> int:
        return len(self.vectors)

    def pair(self, i: int, j: int) -> int:
        return -sum(a * b for a, b in zip(self.vectors[i], self.vectors[j]))

    def pairing_matrix(self) -> list[list[int]]:
        return [[-x for x in row] for row in intlinalg.gram(self.vectors)]

    def hits(self, j: int) -> list[int]:
        """Indices of vectors hit by ``e_j``."""
        return [i for i, v in enumerate(self.vectors) if v[j]]

    def _adjacency(self):
        m = len(self.vectors)
        adj = [[] for _ in range(m)]
        for i in range(m):
            for j in range(i + 1, m):
                x = self.pair(i, j)
                if x:
                    adj[i].append((j, x))
                    adj[j].append((i, x))
        return adj

    def is_linear(self) -> bool:
        try:
            self.chains()
        except NotLinearError:
            return False
        return True

    def chains(self) -> list[list[int]]:
        """Connected components of the associated graph, each as an ordered path.

        Raises :class:`NotLinearError` if the subset is not linear.
        """
        m = len(self.vectors)
        for i in range(m):
            if self.pair(i, i) > -2:
                raise NotLinearError("v_%d has square %d > -2" % (i, self.pair(i, i)))
        adj = self._adjacency()
        for i in range(m):
            if any(x != 1 for _, x in adj[i]):
                raise NotLinearError("v_%d pairs with a neighbour to a value other than 0, 1" % i)
            if len(adj[i]) > 2:
                raise NotLinearError("v_%d has valence %d" % (i, len(adj[i])))
        seen = [False] * m
        out = []
        for start in range(m):
            if seen[start] or len(adj[start]) == 2:
                continue
            path = [start]
            seen[start] = True
            prev, cur = None, start
            while True:
                nxt = [j for j, _ in adj[cur] if j != prev]
                if not nxt:
                    break
                prev, cur = cur, nxt[0]
                path.append(cur)
                seen[cur] = True
            out.append(path)
        if not all(seen):
            raise NotLinearError("the associated graph contains a cycle")
        return out

    def finals(self) -> list[int]:
        """Vectors of valence at most one (ends of their chain)."""
        out = []
        for ch in self.chains():
            out.extend([ch[0]] if len(ch) == 1 else [ch[0], ch[-1]])
        return sorted(out)

    def realized_spec(self) -> LinearLatticeSpec:
        return LinearLatticeSpec(tuple(tuple(-self.pair(i, i) for i in ch) for ch in self.chains()))

    def sub(self, indices) -> "VectorSubset":
        return VectorSubset(self.N, tuple(self.vectors[i] for i in indices))

    def to_json(self) -> list[list[int]]:
        return [list(v) for v in self.vectors]


def I_of(S: VectorSubset) -> int:
    return -sum(S.pair(i, i) + 3 for i in range(len(S)))


def c_of(S: VectorSubset) -> int:
    return len(S.chains())


def irreducible_components(S: VectorSubset) -> list[list[int]]:
    """Classes of the transitive closure of "some ``e_j`` hits both"."""
    parent = list(range(len(S)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for j in range(S.N):
        hit = S.hits(j)
        for i in hit[1:]:
            parent[find(i)] = find(hit[0])
    groups: dict[int, list[int]] = {}
    for i in range(len(S)):
        groups.setdefault(find(i), []).append(i)
    return sorted(groups.values())


def _drop_column(v, h):
    return v[:h] + v[h + 1:]


def contract(S: VectorSubset, h: int, s: int, t: int) -> tuple[VectorSubset, bool]:
    """Contract ``S`` along ``e_h`` (0-based indices).

    Returns the contracted subset of ``Z^(N-1)`` (``v_s`` removed, ``v_t``
    replaced by its projection, column ``h`` deleted) and whether the move is
    a -2-final contraction.
    """
    if not S.is_linear():
        raise ContractionError("subset is not linear")
    if any(abs(x) > 1 for v in S.vectors for x in v):
        raise ContractionError("some |v_i . e_j| exceeds 1")
    if not (0 <= h < S.N):
        raise ContractionError("column index %d out of range" % h)
    if s == t:
        raise ContractionError("s and t must differ")
    hit = S.hits(h)
    if sorted(hit) != sorted([s, t]):
        raise ContractionError("e_%d hits %s, not exactly {v_%d, v_%d}" % (h, hit, s, t))
    if S.pair(t, t) >= -2:
        raise ContractionError("v_t . v_t = %d is not < -2" % S.pair(t, t))
    finals = S.finals()
    minus2_final = s in finals and t in finals and S.pair(s, s) == -2
    out = []
    for i, v in enumerate(S.vectors):
        if i == s:
            continue
        out.append(_drop_column(v, h))
    return VectorSubset(S.N - 1, tuple(out)), minus2_final


def expand_minus2_final(S: VectorSubset, w: int, j: int) -> VectorSubset:
    """-2-final expansion at the final vector ``v_w`` through coordinate ``e_j``.

    ``v_w`` becomes ``v_w + e_(N+1)``; the new vector ``+-(e_j + eps e_(N+1))``
    with ``eps = v_w . e_j`` is appended, its sign chosen so it pairs to 1 with
    its neighbour.
    """
    if w not in S.finals():
        raise ContractionError("v_%d is not final" % w)
    x = S.vectors[w][j]
    if abs(x) != 1:
        raise ContractionError("e_%d does not hit v_%d with multiplicity one" % (j, w))
    eps = -x
    new = [v + (0,) for v in S.vectors]
    new[w] = S.vectors[w] + (1,)
    vp = [0] * (S.N + 1)
    vp[j], vp[S.N] = 1, eps
    others = [i for i in range(len(S)) if i != w and S.vectors[i][j]]
    if len(others) == 1 and S.vectors[others[0]][j] == 1:
        vp = [-a for a in vp]
    new.append(tuple(vp))
    out = VectorSubset(S.N + 1, tuple(new))
    if not out.is_linear():
        raise NotLinearError("expansion at v_%d through e_%d is not linear" % (w, j))
    return out


def expansions(S: VectorSubset):
    """All linear -2-final expansions of ``S`` keeping the number of chains."""
    c = c_of(S)
    for w in S.finals():
        for j in range(S.N):
            if abs(S.vectors[w][j]) != 1:
                continue
            try:
                T = expand_minus2_final(S, w, j)
            except (NotLinearError, ContractionError):
                continue
            if c_of(T) == c:
                yield T


SEED = VectorSubset(2, ((1, 1), (1, -1)))


def canonical_form(S: VectorSubset) -> VectorSubset:
    """Representative of ``S`` up to column permutation and sign, chain order,
    chain direction and overall sign of each chain."""
    chains = S.chains()
    best = None
    for order in permutations(range(len(chains))):
        for dirs in product((1, -1), repeat=len(chains)):
            for signs in product((1, -1), repeat=len(chains)):
                rows = []
                for c, d, sg in zip(order, dirs, signs):
                    for i in chains[c][::d]:
                        rows.append([sg * x for x in S.vectors[i]])
                cols = []
                for k in range(S.N):
                    col = tuple(r[k] for r in rows)
                    lead = next((x for x in col if x), 0)
                    if lead < 0:
                        col = tuple(-x for x in col)
                    cols.append(col)
                key = tuple(sorted(cols, reverse=True))
                if best is None or key < best:
                    best = key
    rows = tuple(tuple(col[i] for col in best) for i in range(len(S)))
    return VectorSubset(S.N, rows)


def enumerate_expansions(depth: int, seed: VectorSubset = SEED):
    """Yield, level by level, every subset reachable from ``seed`` by at most
    ``depth`` -2-final expansions, deduplicated up to :func:`canonical_form`."""
    if depth < 0:
        raise ValueError("depth must be >= 0")
    start = canonical_form(seed)
    seen = {start}
    level = [start]
    yield start
    for _ in range(depth):
        nxt = []
        for S in level:
            for T in expansions(S):
                T = canonical_form(T)
                if T not in seen:
                    seen.add(T)
                    nxt.append(T)
                    yield T
        level = nxt


@dataclass(frozen=True)
class ComplementBasis:
    N: int
    basis: tuple[tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.basis)

    def gram_det(self) -> int:
        return intlinalg.det(intlinalg.gram(self.basis))


def orthogonal_complement(S: VectorSubset) -> ComplementBasis:
    return ComplementBasis(S.N, tuple(intlinalg.kernel_basis(S.vectors, S.N)))


def sublattice_equals_complement(T: VectorSubset, K: ComplementBasis) -> bool:
    """``<T> == K`` given that ``K`` is saturated.

    Containment is checked by orthogonality against the subset ``K`` was
    computed from (the caller's job); here we compare rank and Gram
    determinant of ``<T>`` against ``K``, which pins the index to 1.
    """
    if intlinalg.rank(T.vectors) != K.rank:
        return False
    return intlinalg.det(intlinalg.gram(T.vectors)) == K.gram_det()


def verify_dual_complements(S: VectorSubset) -> bool:
    """``<S_1>^perp == <S_2>`` and ``<S_2>^perp == <S_1>`` for the two chains of ``S``."""
    chains = S.chains()
    if len(chains) != 2:
        raise ValueError("need exactly two chains, found %d" % len(chains))
    S1, S2 = S.sub(chains[0]), S.sub(chains[1])
    if any(S.pair(i, j) for i in chains[0] for j in chains[1]):
        return False
    return (sublattice_equals_complement(S2, orthogonal_complement(S1))
            and sublattice_equals_complement(S1, orthogonal_complement(S2)))
