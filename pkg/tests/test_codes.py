import itertools

import pytest

from cyclicsf import codes, linalg
from cyclicsf.classify import HypothesisViolation
from cyclicsf.fields import GaloisGenerator, make_field, make_tower
from cyclicsf.petit import PetitAlgebra, is_division
from cyclicsf.skewpoly import SkewPoly


def alg(q, n, m, a, j=1):
    return PetitAlgebra.cyclic(q, n, j, m, a)


def root_of(K, coeffs):
    for y in K.elements():
        acc = 0
        for c in reversed(coeffs):
            acc = K.add(K.mul(acc, y), c)
        if acc == 0:
            return y
    return None


def brute_rank(M, F):
    """Rank as log_Q of the size of the column-image, by enumeration."""
    N = len(M)
    image = set()
    for v in itertools.product(range(F.order), repeat=N):
        image.add(tuple(F.sum(F.mul(M[r][c], v[c]) for c in range(N)) for r in range(N)))
    k = 0
    while F.order**k < len(image):
        k += 1
    return k


def test_code_sizes_and_distance_q2_m2():
    A = alg(2, 2, 2, 2)
    C = codes.build_rank_code(A)
    assert C.cardinality == 16 and len(list(C.iter_codewords())) == 16
    assert codes.min_rank_distance(C) == 2
    rep = codes.mrd_check(C)
    assert rep.mrd and rep.bound == 16
    E = codes.expand_rank_code(A)
    assert codes.min_rank_distance(E) == 4 and codes.mrd_check(E).mrd


def test_rank_agrees_with_image_size():
    A = alg(2, 2, 2, 2)
    for M in codes.build_rank_code(A).iter_codewords():
        assert linalg.rank(M, A.K) == brute_rank(M, A.K)


def test_min_distance_q2_m3():
    A = alg(2, 3, 3, 3)
    C = codes.build_rank_code(A)
    assert C.cardinality == 512
    rep = codes.mrd_check(C)
    assert rep.min_distance == 3 and rep.mrd
    rep = codes.mrd_check(codes.expand_rank_code(A))
    assert rep.min_distance == 9 and rep.mrd


def test_identity_only_code():
    F = make_field(2, 2)
    I = [[1, 0], [0, 1]]
    C = codes.RankCode(2, F, 2, [I])
    assert codes.min_rank_distance(C) == 2


def test_full_space_control():
    F = make_field(2)
    C = codes.full_matrix_space(F, 2)
    rep = codes.mrd_check(C)
    assert rep.min_distance == 1 and rep.mrd and rep.cardinality == 16


def test_linearity_exhaustive_m2():
    C = codes.build_rank_code(alg(2, 2, 2, 3))
    assert codes.is_linear(C)


def test_linearity_sampled_m3():
    C = codes.build_rank_code(alg(2, 3, 3, 5))
    words = list(C.iter_codewords())
    samples = list(zip(words[::37], words[5::41]))
    assert codes.is_linear(C, samples)


@pytest.mark.parametrize("q,m", [(2, 2), (3, 2), (2, 3)])
def test_division_iff_full_rank_distance(q, m):
    T = make_tower(q, m)
    for a in T.top.nonzero():
        A = alg(q, m, m, a)
        div = is_division(A)
        if not div:
            with pytest.raises(codes.NotDivision):
                codes.build_rank_code(A)
            continue
        assert codes.min_rank_distance(codes.build_rank_code(A)) == m
        assert codes.min_rank_distance(codes.expand_rank_code(A)) == m * m


def test_rank_code_needs_n_equals_m():
    with pytest.raises(HypothesisViolation):
        codes.build_rank_code(alg(2, 3, 2, 3))


def test_rank_code_json():
    doc = codes.build_rank_code(alg(2, 2, 2, 2)).to_json()
    assert doc["ambient"]["size"] == 2 and len(doc["basis"]) == 4


def test_format_matrix():
    F = make_field(2, 2)
    assert codes.format_matrix([[0, 2], [1, 0]], F) == "  0 w^1\n  1   0"


def twisted_shift_poly(c, a, gen, m):
    """Coefficients of t∘c in S_{t^m - a}."""
    A = PetitAlgebra(gen, SkewPoly.binomial(gen, m, a))
    return (A.t() * A.element(c)).coeffs


def test_twisted_shift_is_left_mult_by_t():
    T = make_tower(2, 3)
    gen = GaloisGenerator(T, 1)
    K = T.top
    for a in K.nonzero():
        for c in itertools.product(K.elements()[::3], repeat=2):
            assert codes.twisted_shift(c, a, gen) == twisted_shift_poly(c, a, gen, 2)


def test_f8_example():
    T = make_tower(2, 3)
    gen = GaloisGenerator(T, 1)
    K = T.top
    w = root_of(K, [1, 1, 0, 1])
    w5 = K.pow(w, 5)
    code = codes.constacyclic_from_divisor(T, gen, 2, w, SkewPoly(gen, [w5, 1]))
    assert sorted(code.codewords) == sorted((K.mul(lam, w5), lam) for lam in K.elements())
    assert code.min_hamming_distance == 2 and code.shift_closed
    assert code.k == 1 and code.dimension == 1


def test_f4_example():
    T = make_tower(2, 2)
    gen = GaloisGenerator(T, 1)
    code = codes.constacyclic_from_divisor(T, gen, 2, 1, SkewPoly(gen, [1, 1]))
    assert code.generator_matrix == [(1, 1)]
    assert sorted(code.codewords) == [(x, x) for x in range(4)]
    assert code.shift_closed and codes.shift_rows_in_span(code, gen)


def test_not_a_divisor():
    T = make_tower(2, 2)
    gen = GaloisGenerator(T, 1)
    with pytest.raises(codes.NotADivisor):
        codes.constacyclic_from_divisor(T, gen, 2, 2, SkewPoly(gen, [1, 1]))
    with pytest.raises(codes.NotADivisor):
        codes.constacyclic_from_divisor(T, gen, 2, 1, SkewPoly.binomial(gen, 2, 1))


def test_list_constacyclic():
    T4 = make_tower(2, 2)
    g4 = GaloisGenerator(T4, 1)
    assert codes.list_constacyclic(T4, g4, 2, 2) == []
    assert codes.list_constacyclic(T4, g4, 2, 1)
    T8 = make_tower(2, 3)
    g8 = GaloisGenerator(T8, 1)
    w = root_of(T8.top, [1, 1, 0, 1])
    assert codes.list_constacyclic(T8, g8, 2, w)


@pytest.mark.parametrize("q,n,m", [(2, 3, 2), (2, 2, 3), (3, 2, 2), (2, 3, 3)])
def test_constacyclic_invariants(q, n, m):
    T = make_tower(q, n)
    gen = GaloisGenerator(T, 1)
    for a in T.top.nonzero():
        for code in codes.list_constacyclic(T, gen, m, a):
            assert code.shift_closed and codes.shift_rows_in_span(code, gen)
            assert 1 <= code.min_hamming_distance <= code.k + 1
            # brute min weight over the enumerated words
            assert code.min_hamming_distance == min(
                sum(1 for x in w if x) for w in code.codewords if any(w))
            # the code is a left ideal: closed under left multiplication by t
            A = PetitAlgebra(gen, SkewPoly.binomial(gen, m, a))
            words = set(code.codewords)
            assert all((A.t() * A.element(w)).coeffs in words for w in code.codewords)


def test_alpha_equivalence_examples():
    T = make_tower(3, 2)
    gen = GaloisGenerator(T, 1)
    K = T.top
    a1 = 3
    assert codes.alpha_equivalence(T, gen, 2, a1, a1) == 1
    a2 = K.mul(T.embed(2), a1)
    assert codes.alpha_equivalence(T, gen, 2, a1, a2) is None
    assert codes.alpha_equivalence_direct(T, gen, 2, a1, a2) is None


@pytest.mark.parametrize("q,n,m", [(2, 2, 2), (3, 2, 2), (3, 3, 2), (4, 2, 2), (5, 2, 2), (3, 2, 4)])
def test_alpha_equivalence_closed_form_vs_direct(q, n, m):
    T = make_tower(q, n)
    K = T.top
    for gen in T.generators():
        for a1, a2 in itertools.product(K.nonzero(), repeat=2):
            direct = codes.alpha_equivalence_direct(T, gen, m, a1, a2)
            closed = codes.alpha_equivalence(T, gen, m, a1, a2)
            assert (direct is None) == (closed is None)
            if closed is not None:
                assert K.mul(K.pow(closed, m), a2) == a1


def test_cross_generator_code_verdict():
    T = make_tower(2, 3)
    g1, g2 = GaloisGenerator(T, 1), GaloisGenerator(T, 2)
    v = codes.cross_generator_code_verdict(T, g1, g2, 2, 3, 5)
    assert v.status == codes.NOT_EQUIVALENT and v.isometry == codes.NOT_ISOMETRIC
    assert v.code_classes == "unresolved"
    with pytest.raises(HypothesisViolation):
        codes.cross_generator_code_verdict(T, g1, g1, 2, 3, 5)
    with pytest.raises(HypothesisViolation):
        codes.cross_generator_code_verdict(T, g1, g2, 2, 1, 5)
    with pytest.raises(HypothesisViolation):
        codes.cross_generator_code_verdict(T, g1, g2, 5, 3, 5)
