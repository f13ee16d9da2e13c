import math
import random
from fractions import Fraction

import pytest

from lenscob.lattice import (SEED, ContractionError, LinearLatticeSpec, NotLinearError,
                             VectorSubset, I_of, c_of, canonical_form, contract,
                             enumerate_expansions, expand_minus2_final, expansions,
                             find_embedding, irreducible_components, orthogonal_complement,
                             spec_of, verify_dual_complements)
from lenscob.lattice.intlinalg import det, kernel_basis, rank
from lenscob.lens import LensSpace, LensSum, reverse_orientation
from lenscob.lisca import is_reduced
from lenscob.qarith import neg_cont_frac

V = VectorSubset.from_rows
DEPTH1 = V([(1, 1, 1), (1, -1, 0), (0, 1, -1)])


def test_spec_of():
    assert spec_of(LensSum([LensSpace(4, 1)])).chains == ((4,),)
    assert spec_of(LensSum([LensSpace(8, 5), LensSpace(2, 1)])).chains in (((2, 3, 2), (2,)),
                                                                         ((2,), (2, 3, 2)))
    assert spec_of(LensSum()).rank == 0


def test_determinant_is_order():
    for p in range(2, 201):
        for q in range(1, p):
            if math.gcd(p, q) == 1:
                assert abs(spec_of(LensSum([LensSpace(p, q)])).determinant()) == p


def test_continuant_matches_elimination():
    for p in range(2, 41):
        for q in range(1, p):
            if math.gcd(p, q) == 1:
                spec = spec_of(LensSum([LensSpace(p, q), LensSpace(p, p - q)]))
                assert spec.determinant() == det(spec.pairing_matrix())


def test_intlinalg_against_known_values():
    assert det([[2, 1], [1, 2]]) == 3
    assert det([[0, 1], [1, 0]]) == -1
    assert rank([[1, 2], [2, 4]]) == 1
    K = kernel_basis([(1, 1)], 2)
    assert K in ([(1, -1)], [(-1, 1)])
    assert kernel_basis([(1, 0), (0, 1)], 2) == []
    # saturation: the kernel of (2, 4) is spanned by (2,-1), not a multiple of it
    (k,) = kernel_basis([(2, 4)], 2)
    assert math.gcd(*k) == 1 and 2 * k[0] + 4 * k[1] == 0


def test_I_and_components():
    assert I_of(SEED) == -2
    S = find_embedding(LinearLatticeSpec(((2, 3, 2),)), rank=4).witness
    assert I_of(S) == -2
    assert I_of(V([(1, 1, 1)])) == 0
    assert len(irreducible_components(SEED)) == 1
    assert len(irreducible_components(V([(1, 1, 0, 0), (0, 0, 1, 1)]))) == 2
    assert len(irreducible_components(V([(2,)]))) == 1
    assert c_of(SEED) == 2
    assert c_of(S) == 1
    assert c_of(VectorSubset(3, ())) == 0


def test_linearity_checks():
    with pytest.raises(NotLinearError):
        V([(1, 0)]).chains()
    with pytest.raises(NotLinearError):
        V([(1, 1, 0), (1, 1, 1)]).chains()  # pairing -2
    assert not V([(1, 1), (1, 1)]).is_linear()


def test_contraction_example():
    T, minus2_final = contract(DEPTH1, 2, 2, 0)
    assert canonical_form(T) == canonical_form(SEED)
    assert minus2_final
    with pytest.raises(ContractionError):
        contract(DEPTH1, 0, 0, 1)  # v_t . v_t = -2
    with pytest.raises(ContractionError):
        contract(V([(1, 1, 1), (1, -1, 0), (1, 0, -1)]), 0, 1, 0)
    with pytest.raises(ContractionError):
        contract(V([(1, 1, 0), (1, -1, 1), (0, 0, 1)]), 2, 2, 0)


def test_expansion_example():
    T = expand_minus2_final(SEED, 0, 1)
    assert T == DEPTH1
    assert sorted(T.realized_spec().values()) == [Fraction(3, 2), Fraction(3, 1)]
    with pytest.raises(ContractionError):
        expand_minus2_final(DEPTH1, 1, 2)  # e3 misses v_1
    back, flag = contract(T, 2, 2, 0)
    assert back == SEED and flag


def test_expand_then_contract_is_identity():
    for S in enumerate_expansions(4):
        for T in expansions(S):
            n = len(T) - 1
            t = next(i for i in range(n) if T.vectors[i][T.N - 1])
            back, flag = contract(T, T.N - 1, n, t)
            assert flag
            assert back.N == T.N - 1 and back.is_linear()
            assert canonical_form(back) == canonical_form(S)


def test_complement_examples():
    K = orthogonal_complement(V([(1, 1)]))
    assert K.rank == 1 and set(K.basis) <= {(1, -1), (-1, 1)}
    K = orthogonal_complement(V([(1, 1, 1)]))
    assert K.rank == 2 and K.gram_det() == 3
    assert orthogonal_complement(V([(1, 0), (0, 1)])).rank == 0
    assert verify_dual_complements(SEED)
    broken = V([(1, 1, 1), (1, -1, 0), (0, 1, 1)])
    try:
        assert not verify_dual_complements(broken)
    except ValueError:
        pass


def _dual_pairs_up_to_rank(r):
    # the two chains of p/q and p/(p-q) have sum(a_i - 1) = r - 1 over the first,
    # so p <= prod(a_i) <= 2^(r-1)
    out = set()
    for p in range(2, 2 ** (r - 1) + 1):
        for q in range(1, p):
            if math.gcd(p, q) == 1:
                a, b = neg_cont_frac(p, q), neg_cont_frac(p, p - q)
                if len(a) + len(b) <= r:
                    out.add(frozenset([tuple(a), tuple(a[::-1]), tuple(b), tuple(b[::-1])]))
    return out


def test_expansions_cover_every_dual_pair():
    depth = 5
    found = set()
    for S in enumerate_expansions(depth):
        assert I_of(S) == -2 and c_of(S) == 2
        assert verify_dual_complements(S)
        a, b = S.realized_spec().chains
        x, y = S.realized_spec().values()
        assert x.numerator == y.numerator and 1 / x + 1 / y == 1
        found.add(frozenset([a, a[::-1], b, b[::-1]]))
    assert found == _dual_pairs_up_to_rank(depth + 2)


def test_embedding_small_cases():
    r = find_embedding(LinearLatticeSpec(((2,), (2,))))
    assert r.found and canonical_form(r.witness) == canonical_form(SEED)
    assert find_embedding(LinearLatticeSpec(((2,),))).status == "absent"
    r = find_embedding(LinearLatticeSpec(((4,),)))
    assert r.found and r.witness.vectors in (((2,),), ((-2,),))
    assert find_embedding(LinearLatticeSpec(((3,),)), rank=2).status == "absent"
    assert find_embedding(LinearLatticeSpec(((2, 2),))).status == "absent"
    assert find_embedding(LinearLatticeSpec(((2, 2, 2),))).found
    assert find_embedding(LinearLatticeSpec(((2, 2, 2, 2),))).status == "absent"


def test_embedding_budget_reports_undecided():
    spec = spec_of(LensSum([LensSpace(49, 48)]))
    r = find_embedding(LinearLatticeSpec(((2,) * 12,)), node_budget=5)
    assert r.status == "undecided" and r.witness is None
    assert find_embedding(spec).status == "absent"


def test_embedding_witnesses_replay():
    rng = random.Random(7)
    done = 0
    while done < 12:
        p = rng.randint(2, 40)
        q = rng.randint(1, p - 1)
        if math.gcd(p, q) != 1:
            continue
        L = LensSpace(p, q)
        X = LensSum([L, reverse_orientation(L)])
        spec = spec_of(X)
        r = find_embedding(spec)
        assert r.found
        assert r.witness.pairing_matrix() == spec.pairing_matrix()
        assert r.witness.is_linear()
        done += 1


def test_parallel_search_agrees():
    spec = spec_of(LensSum([LensSpace(17, 5), LensSpace(17, 12)]))
    a = find_embedding(spec)
    b = find_embedding(spec, jobs=2)
    assert a.found and b.found and a.witness == b.witness
    assert find_embedding(LinearLatticeSpec(((2,) * 5,)), jobs=2).status == "absent"
