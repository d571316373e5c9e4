"""Rank-metric codes from Petit division algebras and skew constacyclic codes."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from cyclicsf import linalg
from cyclicsf.classify import HypothesisViolation, cross_generator_verdict, NOT_ISOMORPHIC
from cyclicsf.fields import ExtensionTower, FiniteField, GaloisGenerator, check_cap
from cyclicsf.petit import (
    PetitAlgebra,
    is_division,
    mult_matrix_F,
    right_mult_matrix_K,
)
from cyclicsf.skewpoly import SkewPoly, right_divmod


class NotDivision(ValueError):
    pass


class NotADivisor(ValueError):
    pass


@dataclass
class RankCode:
    """An F_q-linear set of N×N matrices over ``field``."""
    size: int
    field: FiniteField
    linear_over: int  # q
    basis: list[list[list[int]]]
    codewords: list[list[list[int]]] | None = None
    declared_min_distance: int | None = None

    @property
    def cardinality(self) -> int:
        return self.linear_over ** len(self.basis)

    def iter_codewords(self):
        if self.codewords is not None:
            yield from self.codewords
            return
        check_cap(self.cardinality, "codeword expansion")
        yield from _expand(self.basis, self.field, self.linear_over)

    def contains(self, M) -> bool:
        key = _freeze(M)
        return key in self._index

    @property
    def _index(self):
        if not hasattr(self, "_idx"):
            self._idx = {_freeze(M) for M in self.iter_codewords()}
        return self._idx

    def to_json(self) -> dict:
        F = self.field
        enc = (lambda M: [[list(F.coords(x)) for x in row] for row in M])
        return {"ambient": {"size": self.size, "field": F.to_json()},
                "basis": [enc(M) for M in self.basis]}


def _freeze(M):
    return tuple(tuple(r) for r in M)


def _expand(basis, F: FiniteField, q: int):
    """All F_q-combinations of the basis (F_q = the subfield of order q in F)."""
    sub = sorted({x for x in range(F.order) if F.pow(x, q) == x}, key=F.key)
    N = len(basis[0])
    for coeffs in itertools.product(sub, repeat=len(basis)):
        M = [[0] * N for _ in range(N)]
        for c, B in zip(coeffs, basis):
            if c:
                for r in range(N):
                    row, Br = M[r], B[r]
                    for s in range(N):
                        if Br[s]:
                            row[s] = F.add(row[s], F.mul(c, Br[s]))
        yield M


def matrix_add(M, N, F):
    return [[F.add(a, b) for a, b in zip(r, s)] for r, s in zip(M, N)]


def matrix_scale(c, M, F):
    return [[F.mul(c, a) for a in r] for r in M]


def _check_rank_code_input(A: PetitAlgebra):
    if A.a is None:
        raise ValueError("need f = t^m - a")
    if A.n != A.m:
        raise HypothesisViolation("rank codes need n = m")
    if not is_division(A):
        raise NotDivision(f"{A} is not a division algebra")


def build_rank_code(A: PetitAlgebra, materialize: bool = True) -> RankCode:
    """C_{σ,a} = {R(x) : x ∈ A} ⊂ M_m(F_{q^m})."""
    _check_rank_code_input(A)
    basis = [right_mult_matrix_K(A, x) for x in A.f_basis]
    words = [right_mult_matrix_K(A, x) for x in A.elements()] if materialize else None
    return RankCode(A.m, A.K, A.tower.q, basis, words, declared_min_distance=A.m)


def expand_rank_code(A: PetitAlgebra, materialize: bool = True) -> RankCode:
    """{matrix of R_x over F_q : x ∈ A} ⊂ M_{mn}(F_q)."""
    _check_rank_code_input(A)
    basis = [mult_matrix_F(A, x, "right") for x in A.f_basis]
    words = [mult_matrix_F(A, x, "right") for x in A.elements()] if materialize else None
    N = A.m * A.n
    return RankCode(N, A.F, A.tower.q, basis, words, declared_min_distance=N)


def format_matrix(M, F: FiniteField) -> str:
    """Aligned text dump; entries are written as powers of the primitive element."""
    cells = [["0" if not x else ("1" if x == 1 else f"w^{F.log(x)}") for x in row] for row in M]
    width = max(len(c) for row in cells for c in row)
    return "\n".join(" ".join(c.rjust(width) for c in row) for row in cells)


def full_matrix_space(F: FiniteField, N: int) -> RankCode:
    basis = []
    for r, s in itertools.product(range(N), repeat=2):
        M = [[0] * N for _ in range(N)]
        M[r][s] = 1
        basis.append(M)
    return RankCode(N, F, F.order, basis)


def min_rank_distance(code: RankCode) -> int:
    check_cap(code.cardinality, "rank distance sweep")
    best = None
    for M in code.iter_codewords():
        if not any(any(r) for r in M):
            continue
        rk = linalg.rank(M, code.field)
        if best is None or rk < best:
            best = rk
            if best == 1:
                break
    if best is None:
        raise ValueError("code has no nonzero codeword")
    return best


@dataclass
class MRDReport:
    cardinality: int
    min_distance: int
    bound: int
    mrd: bool

    def to_json(self):
        return {"cardinality": self.cardinality, "min_rank_distance": self.min_distance,
                "singleton_bound": self.bound, "mrd": self.mrd}


def mrd_check(code: RankCode) -> MRDReport:
    """|C| = Q^{N(N - d + 1)} with Q = |entry field|."""
    d = min_rank_distance(code)
    N, Q = code.size, code.field.order
    bound = Q ** (N * (N - d + 1))
    return MRDReport(code.cardinality, d, bound, code.cardinality == bound)


def is_linear(code: RankCode, samples=None) -> bool:
    """Closed under sums and F_q-scaling (all pairs, or the given sample pairs)."""
    F = code.field
    words = list(code.iter_codewords())
    sub = [x for x in range(F.order) if F.pow(x, code.linear_over) == x]
    pairs = samples if samples is not None else itertools.product(words, repeat=2)
    for M, N in pairs:
        if not code.contains(matrix_add(M, N, F)):
            return False
    scal = samples if samples is not None else ((M, None) for M in words)
    for M, _ in scal:
        if any(not code.contains(matrix_scale(c, M, F)) for c in sub):
            return False
    return True


# ---------------------------------------------------------------------------
# skew constacyclic codes


@dataclass
class ConstaCode:
    m: int
    k: int
    a: int
    g: SkewPoly
    generator_matrix: list[tuple[int, ...]]
    codewords: list[tuple[int, ...]] = field(repr=False)
    min_hamming_distance: int
    shift_closed: bool

    @property
    def dimension(self) -> int:
        return self.m - self.k

    def to_json(self) -> dict:
        K = self.g.field
        enc = (lambda x: list(K.coords(x)))
        return {"m": self.m, "k": self.k, "a": enc(self.a), "g": self.g.to_json(),
                "generator_matrix": [[enc(x) for x in row] for row in self.generator_matrix],
                "min_hamming_distance": self.min_hamming_distance,
                "shift_closed": self.shift_closed}


def twisted_shift(c, a: int, gen: GaloisGenerator) -> tuple[int, ...]:
    """(c_0, ..., c_{m-1}) ↦ (a σ(c_{m-1}), σ(c_0), ..., σ(c_{m-2}))."""
    K = gen.tower.top
    return (K.mul(a, gen(c[-1])),) + tuple(gen(x) for x in c[:-1])


def constacyclic_from_divisor(tower: ExtensionTower, gen: GaloisGenerator, m: int, a: int,
                              g: SkewPoly) -> ConstaCode:
    if gen.tower != tower:
        raise ValueError("generator belongs to another tower")
    K = tower.top
    if not a:
        raise ValueError("a must be nonzero")
    f = SkewPoly.binomial(gen, m, a)
    k = g.degree
    if not (1 <= k < m):
        raise NotADivisor(f"divisor degree must be in 1..{m - 1}")
    if not right_divmod(f, g)[1].is_zero():
        raise NotADivisor(f"{g} does not right-divide t^{m} - a")
    check_cap(K.order ** (m - k), "constacyclic code enumeration")
    t = SkewPoly.monomial(gen, 1, 1)
    rows = []
    h = g
    for _ in range(m - k):
        rows.append(tuple(h.coeff(i) for i in range(m)))
        h = t * h
    words = []
    for lam in itertools.product(K.elements(), repeat=m - k):
        w = [0] * m
        for c, row in zip(lam, rows):
            if c:
                w = [K.add(x, K.mul(c, y)) for x, y in zip(w, row)]
        words.append(tuple(w))
    wordset = set(words)
    shift_closed = all(twisted_shift(w, a, gen) in wordset for w in words)
    d = min(sum(1 for x in w if x) for w in words if any(w))
    return ConstaCode(m, int(k), a, g, rows, words, d, shift_closed)


def shift_rows_in_span(code: ConstaCode, gen: GaloisGenerator) -> bool:
    """Rank check: the shift of each generator row stays in the row space."""
    K = gen.tower.top
    base = linalg.rank([list(r) for r in code.generator_matrix], K)
    for r in code.generator_matrix:
        rows = [list(x) for x in code.generator_matrix] + [list(twisted_shift(r, code.a, gen))]
        if linalg.rank(rows, K) != base:
            return False
    return True


def list_constacyclic(tower: ExtensionTower, gen: GaloisGenerator, m: int, a: int) -> list[ConstaCode]:
    from cyclicsf.skewpoly import monic_right_divisors

    f = SkewPoly.binomial(gen, m, a)
    out = []
    for k in range(1, m):
        for g in monic_right_divisors(f, k):
            out.append(constacyclic_from_divisor(tower, gen, m, a, g))
    return out


# ---------------------------------------------------------------------------
# (m, σ)-equivalence


def _phi_alpha_is_iso(A1: PetitAlgebra, A2: PetitAlgebra, alpha: int) -> bool:
    """Check h(t) ↦ h(αt) on all F_p-basis pairs."""
    K = A1.K
    scal = [K.pow(alpha, i) for i in range(A1.m)]

    def phi(x):
        return tuple(K.mul(c, s) for c, s in zip(x, scal))

    basis = [x.coeffs for x in A1.prime_basis]
    for x in basis:
        for y in basis:
            if phi(A1.mul_raw(x, y)) != A2.mul_raw(phi(x), phi(y)):
                return False
    return bool(alpha)


def alpha_equivalence(tower: ExtensionTower, gen: GaloisGenerator, m: int,
                      a1: int, a2: int) -> int | None:
    """Least α ∈ F_q^× (canonical order) making φ_α an isomorphism, re-verified directly."""
    A1 = PetitAlgebra(gen, SkewPoly.binomial(gen, m, a1))
    A2 = PetitAlgebra(gen, SkewPoly.binomial(gen, m, a2))
    K = tower.top
    for alpha in sorted((x for x in tower.base_image if x), key=K.key):
        if K.mul(K.pow(alpha, m), a2) != a1:
            continue
        if _phi_alpha_is_iso(A1, A2, alpha):
            return alpha
        raise AssertionError("closed-form α failed direct verification")
    return None


def alpha_equivalence_direct(tower, gen, m, a1, a2) -> int | None:
    """Same question answered only by direct verification of every α."""
    A1 = PetitAlgebra(gen, SkewPoly.binomial(gen, m, a1))
    A2 = PetitAlgebra(gen, SkewPoly.binomial(gen, m, a2))
    K = tower.top
    for alpha in sorted((x for x in tower.base_image if x), key=K.key):
        if _phi_alpha_is_iso(A1, A2, alpha):
            return alpha
    return None


NOT_EQUIVALENT = "NotEquivalent"
NOT_ISOMETRIC = "NotIsometric"


@dataclass(frozen=True)
class CodeVerdict:
    status: str
    isometry: str
    reason: str
    code_classes: str = "unresolved"

    def to_json(self):
        return {"status": self.status, "isometry": self.isometry,
                "reason": self.reason, "code_classes": self.code_classes}


def cross_generator_code_verdict(tower: ExtensionTower, gen1: GaloisGenerator,
                                 gen2: GaloisGenerator, m: int, a1: int, a2: int) -> CodeVerdict:
    """a1, a2 are not (m,σ)-equivalent nor isometric for distinct generators."""
    if gen1 == gen2:
        raise HypothesisViolation("generators coincide; use alpha_equivalence")
    n = tower.n
    if n < 3 or n < m - 1:
        raise HypothesisViolation("needs n >= 3 and n >= m - 1")
    if tower.in_base(a1) or tower.in_base(a2):
        raise HypothesisViolation("a_i must lie in K \\ F")
    A1 = PetitAlgebra(gen1, SkewPoly.binomial(gen1, m, a1))
    A2 = PetitAlgebra(gen2, SkewPoly.binomial(gen2, m, a2))
    v = cross_generator_verdict(A1, A2)
    if v.status != NOT_ISOMORPHIC:
        raise AssertionError("cross-generator rule did not apply")
    return CodeVerdict(NOT_EQUIVALENT, NOT_ISOMETRIC, v.reason)
