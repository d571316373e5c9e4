"""Petit algebras S_f = K[t;σ]/K[t;σ]f with product g∘h = gh mod_r f.

An element is stored as a length-m tuple of K-elements (coefficient of t^i at
index i).  For linear algebra the algebra is also viewed as F_p^d with
d = m·n·e, by concatenating the prime-field coordinates of the coefficients;
every structural computation (associator, nuclei, multiplication operators)
goes through the structure-constant tensor in that basis.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from cyclicsf import linalg
from cyclicsf.fields import (
    ExtensionTower,
    GaloisGenerator,
    SizeCapExceeded,
    check_cap,
    is_prime,
    make_tower,
    partial_norm_image,
    primitive_root_of_unity,
)
from cyclicsf.skewpoly import SkewPoly, is_irreducible, is_right_invariant


class OwnerMismatch(ValueError):
    pass


class AlgebraElement:
    __slots__ = ("owner", "coeffs")

    def __init__(self, owner: "PetitAlgebra", coeffs):
        coeffs = tuple(coeffs)
        if len(coeffs) < owner.m:
            coeffs = coeffs + (0,) * (owner.m - len(coeffs))
        if len(coeffs) != owner.m:
            raise ValueError(f"expected {owner.m} coefficients")
        self.owner = owner
        self.coeffs = coeffs

    def _same(self, other):
        if not isinstance(other, AlgebraElement):
            raise TypeError("expected an AlgebraElement")
        if other.owner is not self.owner and other.owner != self.owner:
            raise OwnerMismatch("elements of different algebras")

    def __add__(self, other):
        self._same(other)
        K = self.owner.K
        return AlgebraElement(self.owner, [K.add(a, b) for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        self._same(other)
        K = self.owner.K
        return AlgebraElement(self.owner, [K.sub(a, b) for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        K = self.owner.K
        return AlgebraElement(self.owner, [K.neg(a) for a in self.coeffs])

    def __mul__(self, other):
        return algebra_mul(self, other)

    def scale(self, c: int) -> "AlgebraElement":
        """Left multiplication by the scalar c ∈ K."""
        K = self.owner.K
        return AlgebraElement(self.owner, [K.mul(c, a) for a in self.coeffs])

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __eq__(self, other):
        return (isinstance(other, AlgebraElement) and self.owner == other.owner
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"AlgebraElement({list(self.coeffs)})"

    def to_json(self):
        K = self.owner.K
        return [list(K.coords(c)) for c in self.coeffs]


class PetitAlgebra:
    """S_f for a monic f ∈ K[t;σ] of degree m >= 2."""

    def __init__(self, gen: GaloisGenerator, f: SkewPoly):
        if f.gen != gen:
            raise ValueError("modulus has a different twist")
        if not f.is_monic():
            raise ValueError("modulus must be monic")
        if f.degree < 2:
            raise ValueError("modulus must have degree m >= 2")
        self.gen = gen
        self.tower: ExtensionTower = gen.tower
        self.K = self.tower.top
        self.F = self.tower.base
        self.f = f
        self.m = int(f.degree)
        self.n = self.tower.n
        # reduction data: t^m ≡ sum_i red[i] t^i
        self._red = tuple(self.K.neg(c) for c in f.coeffs[:-1])

    @classmethod
    def cyclic(cls, q: int, n: int, j: int, m: int, a: int) -> "PetitAlgebra":
        """K[t;σ]/K[t;σ](t^m - a) with K = F_{q^n}, σ = Frobenius^j."""
        gen = GaloisGenerator(make_tower(q, n), j)
        return cls(gen, SkewPoly.binomial(gen, m, a))

    def __repr__(self):
        return (f"PetitAlgebra(q={self.tower.q}, n={self.n}, j={self.gen.j}, "
                f"f={list(self.f.coeffs)})")

    def __eq__(self, other):
        return isinstance(other, PetitAlgebra) and self.f == other.f

    def __hash__(self):
        return hash(self.f)

    @property
    def a(self):
        """The constant a when f = t^m - a, else None."""
        if any(self.f.coeffs[1:-1]):
            return None
        return self.K.neg(self.f.coeffs[0])

    @property
    def dim(self) -> int:
        """Dimension over F."""
        return self.m * self.n

    @property
    def size(self) -> int:
        return self.K.order**self.m

    @cached_property
    def right_invariant(self) -> bool:
        return is_right_invariant(self.f)

    @property
    def proper(self) -> bool:
        return not self.right_invariant

    # -- raw arithmetic on coefficient tuples --------------------------------

    def mul_raw(self, x, y) -> tuple:
        K, m = self.K, self.m
        add, mul = K.add, K.mul
        prod = [0] * (2 * m - 1)
        for i, xi in enumerate(x):
            if not xi:
                continue
            tw = self.gen.table(i)
            for j, yj in enumerate(y):
                if yj:
                    prod[i + j] = add(prod[i + j], mul(xi, tw[yj]))
        red = self._red
        for d in range(2 * m - 2, m - 1, -1):
            c = prod[d]
            if not c:
                continue
            s = d - m
            tw = self.gen.table(s)
            # c t^d = c t^s t^m ≡ sum_i c σ^s(red_i) t^{s+i}
            for i, ri in enumerate(red):
                if ri:
                    prod[s + i] = add(prod[s + i], mul(c, tw[ri]))
        return tuple(prod[:m])

    def element(self, coeffs) -> AlgebraElement:
        return AlgebraElement(self, coeffs)

    def one(self) -> AlgebraElement:
        return AlgebraElement(self, (1,))

    def t(self, i: int = 1) -> AlgebraElement:
        return AlgebraElement(self, (0,) * i + (1,))

    def scalar(self, c: int) -> AlgebraElement:
        return AlgebraElement(self, (c,))

    def elements(self):
        """All elements, lexicographic in the coefficient tuple."""
        check_cap(self.size, "algebra enumeration")
        els = self.K.elements()
        for c in itertools.product(els, repeat=self.m):
            yield AlgebraElement(self, c)

    def from_poly(self, g: SkewPoly) -> AlgebraElement:
        return AlgebraElement(self, g.coeffs if g.degree < self.m else (g % self.f).coeffs)

    def to_poly(self, x: AlgebraElement) -> SkewPoly:
        return SkewPoly(self.gen, x.coeffs)

    # -- F_p coordinates ----------------------------------------------------

    @property
    def prime_dim(self) -> int:
        return self.m * self.K.e

    def to_vec(self, x) -> list[int]:
        coeffs = x.coeffs if isinstance(x, AlgebraElement) else x
        K = self.K
        out: list[int] = []
        for c in coeffs:
            out.extend(K.coords(c))
        return out

    def from_vec(self, v) -> AlgebraElement:
        e = self.K.e
        v = [int(c) % self.K.p for c in v]
        return AlgebraElement(self, [self.K.from_coords(v[i * e:(i + 1) * e])
                                     for i in range(self.m)])

    @cached_property
    def prime_basis(self) -> tuple[AlgebraElement, ...]:
        """F_p-basis: x^k t^i (i-major), matching :meth:`to_vec`."""
        return tuple(AlgebraElement(self, (0,) * i + (b,))
                     for i in range(self.m) for b in self.tower.prime_basis)

    @cached_property
    def f_basis(self) -> tuple[AlgebraElement, ...]:
        """F-basis: b_k t^i with b_k the tower's F-basis of K (i-major)."""
        return tuple(AlgebraElement(self, (0,) * i + (b,))
                     for i in range(self.m) for b in self.tower.f_basis)

    def f_coords(self, x) -> list[int]:
        coeffs = x.coeffs if isinstance(x, AlgebraElement) else x
        out: list[int] = []
        for c in coeffs:
            out.extend(self.tower.f_coords(c))
        return out

    @cached_property
    def structure(self) -> np.ndarray:
        """T[i, j, r]: coefficient of basis r in (basis i) ∘ (basis j), over F_p."""
        d = self.prime_dim
        B = [x.coeffs for x in self.prime_basis]
        T = np.zeros((d, d, d), dtype=np.int64)
        for i, bi in enumerate(B):
            for j, bj in enumerate(B):
                T[i, j] = self.to_vec(self.mul_raw(bi, bj))
        return T

    @cached_property
    def associator_tensor(self) -> np.ndarray:
        """A[i, j, k, r] = coefficient r of [b_i, b_j, b_k]."""
        T = self.structure
        p = self.K.p
        left = np.einsum("ijl,lkr->ijkr", T, T)
        right = np.einsum("jkl,ilr->ijkr", T, T)
        return (left - right) % p

    def is_associative(self) -> bool:
        return not self.associator_tensor.any()

    # -- multiplication operators -------------------------------------------

    def left_mult_prime(self, x) -> np.ndarray:
        """Matrix of y ↦ x∘y on F_p^d (columns are images of basis vectors)."""
        v = np.array(self.to_vec(x), dtype=np.int64)
        return np.einsum("i,ijr->rj", v, self.structure) % self.K.p

    def right_mult_prime(self, x) -> np.ndarray:
        v = np.array(self.to_vec(x), dtype=np.int64)
        return np.einsum("j,ijr->ri", v, self.structure) % self.K.p

    def all_invertible(self, side: str) -> bool:
        """Every nonzero x has invertible L_x (side='left') or R_x ('right')."""
        check_cap(self.size, "division sweep")
        p, d = self.K.p, self.prime_dim
        T = self.structure
        subs = "bi,ijr->brj" if side == "left" else "bj,ijr->bri"
        chunk = 4096
        vecs = itertools.product(range(p), repeat=d)
        next(vecs)  # skip zero
        while True:
            block = list(itertools.islice(vecs, chunk))
            if not block:
                return True
            X = np.array(block, dtype=np.int64)
            mats = np.einsum(subs, X, T) % p
            if not batch_invertible_mod_p(mats, p).all():
                return False


def batch_invertible_mod_p(mats: np.ndarray, p: int) -> np.ndarray:
    """Boolean mask: which of the stacked square matrices are invertible mod p."""
    A = mats.copy() % p
    N, d, _ = A.shape
    ok = np.ones(N, dtype=bool)
    inv = np.array([0] + [pow(v, -1, p) for v in range(1, p)], dtype=np.int64)
    idx = np.arange(N)
    for c in range(d):
        sub = A[:, c:, c] != 0
        has = sub.any(axis=1)
        ok &= has
        piv = sub.argmax(axis=1) + c
        rows_c = A[idx, c].copy()
        A[idx, c] = A[idx, piv]
        A[idx, piv] = rows_c
        A[:, c] = (A[:, c] * inv[A[:, c, c]][:, None]) % p
        factors = A[:, :, c].copy()
        factors[:, c] = 0
        A = (A - factors[:, :, None] * A[:, c][:, None, :]) % p
    return ok


# ---------------------------------------------------------------------------
# operations


def algebra_mul(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    x._same(y)
    return AlgebraElement(x.owner, x.owner.mul_raw(x.coeffs, y.coeffs))


def associator(x: AlgebraElement, y: AlgebraElement, z: AlgebraElement) -> AlgebraElement:
    return (x * y) * z - x * (y * z)


@dataclass
class NucleusReport:
    left: list[AlgebraElement]
    middle: list[AlgebraElement]
    right: list[AlgebraElement]
    center: list[AlgebraElement]
    s: int | None = None
    r: int | None = None
    predicted_right: list[AlgebraElement] = field(default_factory=list)
    right_matches_prediction: bool | None = None

    @property
    def dims(self) -> dict[str, int]:
        return {"left": len(self.left), "middle": len(self.middle),
                "right": len(self.right), "center": len(self.center)}

    def to_json(self) -> dict:
        return {"dims": self.dims, "s": self.s, "r": self.r,
                "right_matches_prediction": self.right_matches_prediction,
                "left": [x.to_json() for x in self.left],
                "middle": [x.to_json() for x in self.middle],
                "right": [x.to_json() for x in self.right],
                "center": [x.to_json() for x in self.center]}


def _f_basis_from_prime_span(A: PetitAlgebra, vectors) -> list[AlgebraElement]:
    """Pick an F-basis (as algebra elements) of an F-stable F_p-subspace."""
    p = A.K.p
    scalars = [A.tower.embed(A.F.p**a) for a in range(A.F.e)]
    chosen: list[AlgebraElement] = []
    rows: list[list[int]] = []
    for v in vectors:
        x = A.from_vec(v)
        cand = [A.to_vec(x.scale(c)) for c in scalars]
        if rows and linalg.span_contains(rows, cand, p):
            continue
        chosen.append(x)
        rows.extend(cand)
    return chosen


def _subspaces_equal(A: PetitAlgebra, U, V) -> bool:
    p = A.K.p
    Uv = [A.to_vec(x) for x in U]
    Vv = [A.to_vec(x) for x in V]
    if not Uv or not Vv:
        return not Uv and not Vv
    return linalg.same_span(Uv, Vv, p)


def f_span_vectors(A: PetitAlgebra, elems) -> list[list[int]]:
    """F_p-spanning vectors of the F-span of elems."""
    scalars = [A.tower.embed(A.F.p**a) for a in range(A.F.e)]
    return [A.to_vec(x.scale(c)) for x in elems for c in scalars]


def stabilizer_index(gen: GaloisGenerator, a: int) -> int:
    """Least s >= 1 with σ^s(a) = a."""
    s = 1
    while gen.power(a, s) != a:
        s += 1
    return s


def nuclei(A: PetitAlgebra) -> NucleusReport:
    """Left/middle/right nucleus and center, by solving associator equations."""
    p, d = A.K.p, A.prime_dim
    Z = A.associator_tensor  # [i, j, k, r]
    ml = Z.transpose(1, 2, 3, 0).reshape(-1, d)
    mm = Z.transpose(0, 2, 3, 1).reshape(-1, d)
    mr = Z.transpose(0, 1, 3, 2).reshape(-1, d)
    T = A.structure
    comm = (T - T.transpose(1, 0, 2)) % p  # [i, j, r]: b_i b_j - b_j b_i
    mc = comm.transpose(1, 2, 0).reshape(-1, d)

    def solve(*blocks):
        M = np.vstack(blocks)
        return linalg.nullspace_mod_p(M, p, d)

    left = _f_basis_from_prime_span(A, solve(ml))
    middle = _f_basis_from_prime_span(A, solve(mm))
    right = _f_basis_from_prime_span(A, solve(mr))
    center = _f_basis_from_prime_span(A, solve(ml, mm, mr, mc))
    report = NucleusReport(left, middle, right, center)
    a = A.a
    if a is not None:
        s = stabilizer_index(A.gen, a)
        r = A.n // s
        # K[t^s] inside S_f: the sum of K t^i over multiples i of s below m
        predicted = [AlgebraElement(A, (0,) * i + (b,))
                     for i in range(0, A.m, s) for b in A.tower.f_basis]
        report.s, report.r = s, r
        report.predicted_right = predicted
        report.right_matches_prediction = _subspaces_equal(A, right, predicted)
    return report


def embedded_K(A: PetitAlgebra) -> list[AlgebraElement]:
    return [A.scalar(b) for b in A.tower.f_basis]


def embedded_F(A: PetitAlgebra) -> list[AlgebraElement]:
    return [A.one()]


def same_subspace(A: PetitAlgebra, U, V) -> bool:
    """U and V span the same F-subspace."""
    if len(U) != len(V):
        return False
    return _subspaces_equal(A, U, V)


def is_division(A: PetitAlgebra) -> bool:
    """Every L_x with x != 0 is invertible."""
    return A.all_invertible("left")


def division_report(A: PetitAlgebra) -> dict[str, bool]:
    return {
        "left_invertible": A.all_invertible("left"),
        "right_invertible": A.all_invertible("right"),
        "irreducible": is_irreducible(A.f),
    }


def right_mult_matrix_K(A: PetitAlgebra, x: AlgebraElement) -> list[list[int]]:
    """m×m matrix over K whose column i holds the coefficients of t^i ∘ x.

    Row r of a wrapped column carries σ^r(a); this is the matrix of y ↦ y∘x
    on the left K-module with basis 1, t, ..., t^{m-1}.
    """
    if x.owner != A:
        raise OwnerMismatch("element of a different algebra")
    cols = [A.mul_raw(A.t(i).coeffs, x.coeffs) for i in range(A.m)]
    return [[cols[i][r] for i in range(A.m)] for r in range(A.m)]


def mult_matrix_F(A: PetitAlgebra, x: AlgebraElement, side: str = "right") -> list[list[int]]:
    """(mn)×(mn) matrix over F of L_x or R_x in the basis :attr:`PetitAlgebra.f_basis`."""
    if x.owner != A:
        raise OwnerMismatch("element of a different algebra")
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    cols = []
    for b in A.f_basis:
        img = A.mul_raw(x.coeffs, b.coeffs) if side == "left" else A.mul_raw(b.coeffs, x.coeffs)
        cols.append(A.f_coords(img))
    N = len(cols)
    return [[cols[c][r] for c in range(N)] for r in range(N)]


# ---------------------------------------------------------------------------
# division criteria for f = t^m - a


@dataclass(frozen=True)
class Precheck:
    criterion: str
    verdict: str  # division | not-division | no-conclusion | not-applicable
    detail: str = ""


def _in_proper_subfield(A: PetitAlgebra, a: int) -> bool:
    return stabilizer_index(A.gen, a) < A.n


def division_prechecks(A: PetitAlgebra) -> list[Precheck]:
    a = A.a
    if a is None:
        raise ValueError("prechecks need f = t^m - a")
    K, F, tower, m, n = A.K, A.F, A.tower, A.m, A.n
    a_in_F = tower.in_base(a)
    has_root = m >= 5 and is_prime(m) and primitive_root_of_unity(F, m) is not None
    hyp = (m in (2, 3) or has_root) and not a_in_F
    out = []

    if hyp:
        try:
            image = partial_norm_image(A.gen, m)
        except SizeCapExceeded:
            out.append(Precheck("twisted-norm-solvability", "no-conclusion", "cap exceeded"))
        else:
            solvable = a in image
            out.append(Precheck("twisted-norm-solvability",
                                "not-division" if solvable else "division",
                                "a = z σ(z) ... σ^{m-1}(z) solvable" if solvable
                                else "a is not a twisted norm"))
        # over a finite field N(K^×) = F^×, so both norm corollaries read N(a) ∉ (F^×)^m
        Na = tower.norm(a)
        mth_powers = {K.pow(y, m) for y in tower.base_image if y}
        verdict = "division" if Na not in mth_powers else "no-conclusion"
        out.append(Precheck("norm-obstruction", verdict, "N(a) ∉ (F^×)^m"
                            if verdict == "division" else "N(a) is an m-th power"))
    else:
        out.append(Precheck("twisted-norm-solvability", "not-applicable"))
        out.append(Precheck("norm-obstruction", "not-applicable"))

    if n == m and not a_in_F and (m in (2, 3) or has_root):
        out.append(Precheck("cyclic-degree-2-3-or-root-of-unity", "division"))
    else:
        out.append(Precheck("cyclic-degree-2-3-or-root-of-unity", "not-applicable"))

    if n == m and not a_in_F:
        if not _in_proper_subfield(A, a):
            out.append(Precheck("generic-element", "division", "a generates K over F"))
        else:
            out.append(Precheck("generic-element", "no-conclusion", "a lies in a proper subfield"))
        s = stabilizer_index(A.gen, a)
        if s < n:
            out.append(Precheck("associative-right-nucleus", "not-division",
                                f"a fixed by σ^{s}: right nucleus is a cyclic algebra "
                                f"of degree {n // s} > 1"))
        else:
            out.append(Precheck("associative-right-nucleus", "no-conclusion", "right nucleus is K"))
    else:
        out.append(Precheck("generic-element", "not-applicable"))
        out.append(Precheck("associative-right-nucleus", "not-applicable"))
    return out
