"""Isomorphism and isotopy decisions for Petit algebras K[t;σ]/K[t;σ](t^m - a),
a brute-force isomorphism oracle, class censuses, and explicit parameter sets.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from cyclicsf import linalg
from cyclicsf.fields import (
    ExtensionTower,
    GaloisGenerator,
    check_cap,
    euler_phi,
    generators,
    is_prime,
    make_tower,
    partial_norm,
    partial_norm_image,
    primitive_root_of_unity,
)
from cyclicsf.petit import PetitAlgebra

ISOMORPHIC = "Isomorphic"
NOT_ISOMORPHIC = "NotIsomorphic"
INCONCLUSIVE = "Inconclusive"
ISOTOPIC = "Isotopic"
NOT_ISOTOPIC = "NotIsotopic"
UNSUPPORTED = "Unsupported"


class HypothesisViolation(ValueError):
    pass


@dataclass(frozen=True)
class IsoVerdict:
    status: str
    reason: str
    tau: int | None = None  # τ = Frobenius^tau
    k: int | None = None

    @property
    def witness(self):
        return None if self.tau is None else (self.tau, self.k)

    def to_json(self, field=None) -> dict:
        w = None
        if self.tau is not None:
            w = {"tau": self.tau,
                 "k": list(field.coords(self.k)) if field is not None else self.k}
        return {"status": self.status, "witness": w, "reason": self.reason}


def _binomial_data(A: PetitAlgebra) -> int:
    a = A.a
    if a is None:
        raise HypothesisViolation("algebra is not of the form t^m - a")
    return a


def _require_outside_base(A: PetitAlgebra, a: int) -> None:
    if A.tower.in_base(a):
        raise HypothesisViolation("a must lie in K \\ F")


@lru_cache(maxsize=None)
def _norm_image(gen: GaloisGenerator, m: int) -> frozenset[int]:
    return partial_norm_image(gen, m)


def _norm_preimage(gen: GaloisGenerator, m: int, target: int) -> int:
    """Some k (least discrete log) with N_{m,σ}(k) = target."""
    K = gen.tower.top
    for e in range(K.order - 1):
        k = K.exp(e)
        if partial_norm(gen, m, k) == target:
            return k
    raise ValueError("target is not a twisted norm")


def iso_criterion(A: PetitAlgebra, B: PetitAlgebra) -> IsoVerdict:
    """Decide A ≅ B via ∃ τ ∈ Gal, k ∈ K^×: τ(a) = N_{m,σ}(k)·b."""
    a, b = _binomial_data(A), _binomial_data(B)
    if A.tower != B.tower or A.gen != B.gen or A.m != B.m:
        raise HypothesisViolation("iso_criterion needs the same tower, twist and degree")
    _require_outside_base(A, a)
    _require_outside_base(B, b)
    tower, gen, m = A.tower, A.gen, A.m
    K = tower.top
    image = _norm_image(gen, m)
    for tau in range(tower.n):
        ratio = K.div(tower.frobenius(a, tau), b)
        if ratio in image:
            k = _norm_preimage(gen, m, ratio)
            return IsoVerdict(ISOMORPHIC, "criterion", tau, k)
    if tower.n >= m - 1:
        return IsoVerdict(NOT_ISOMORPHIC, "criterion")
    return IsoVerdict(INCONCLUSIVE, "criterion")


def witness_holds(A: PetitAlgebra, B: PetitAlgebra, verdict: IsoVerdict) -> bool:
    """τ(a) = N_{m,σ}(k)·b for the verdict's witness."""
    K, tower = A.K, A.tower
    lhs = tower.frobenius(A.a, verdict.tau)
    rhs = K.mul(partial_norm(A.gen, A.m, verdict.k), B.a)
    return lhs == rhs


def norm_obstruction(A: PetitAlgebra, B: PetitAlgebra) -> IsoVerdict | None:
    """NotIsomorphic when N(a) ∉ N(K^×)^m N(b); None means no conclusion."""
    a, b = _binomial_data(A), _binomial_data(B)
    tower, m = A.tower, A.m
    if tower.n < m - 1:
        raise HypothesisViolation("norm obstruction needs n >= m - 1")
    K = tower.top
    norms = {tower.norm(x) for x in range(1, K.order)}
    mth = {K.pow(y, m) for y in norms}
    ratio = K.div(tower.norm(a), tower.norm(b))
    if ratio not in mth:
        return IsoVerdict(NOT_ISOMORPHIC, "norm-obstruction")
    return None


# ---------------------------------------------------------------------------
# brute-force oracle


@dataclass(frozen=True)
class IsoMap:
    """H restricted to K is Frobenius^tau and H(t) = image_of_t."""
    tau: int
    image_of_t: tuple

    def t_shape(self):
        """(j, k) when H(t) = k t^j is a single term, else None."""
        nz = [(i, c) for i, c in enumerate(self.image_of_t) if c]
        return nz[0] if len(nz) == 1 else None


def _basis_images(A: PetitAlgebra, B: PetitAlgebra, tau: int, u: tuple):
    powers = [B.one().coeffs]
    for _ in range(1, A.m):
        powers.append(B.mul_raw(u, powers[-1]))
    tower = A.tower
    K = B.K
    images = []
    for x in A.prime_basis:
        i = next(idx for idx, c in enumerate(x.coeffs) if c)
        c = tower.frobenius(x.coeffs[i], tau)
        images.append(tuple(K.mul(c, v) for v in powers[i]))
    return images


def _is_hom(A, B, images, prod_A) -> bool:
    p = A.K.p
    d = A.prime_dim
    img_vecs = np.array([B.to_vec(v) for v in images], dtype=np.int64)  # row i = H(b_i)
    for i in range(d):
        for j in range(d):
            lhs = (prod_A[i, j] @ img_vecs) % p
            rhs = B.to_vec(B.mul_raw(images[i], images[j]))
            if not np.array_equal(lhs, np.array(rhs)):
                return False
    return linalg.rank_mod_p(img_vecs.tolist(), p) == d


def brute_force_iso(A: PetitAlgebra, B: PetitAlgebra, first_only: bool = True):
    """Search maps H = (τ on K, t ↦ u) that are algebra isomorphisms A → B.

    Returns the first IsoMap found (or the list of all when first_only is
    False); None / [] if there are none.
    """
    if A.tower != B.tower or A.m != B.m:
        raise HypothesisViolation("oracle needs algebras over the same tower and degree")
    check_cap(A.size, "isomorphism oracle")
    check_cap(A.tower.n * B.size, "isomorphism oracle candidates")
    prod_A = A.structure
    found = []
    for tau in range(A.tower.n):
        for u in B.elements():
            images = _basis_images(A, B, tau, u.coeffs)
            if _is_hom(A, B, images, prod_A):
                hit = IsoMap(tau, u.coeffs)
                if first_only:
                    return hit
                found.append(hit)
    return None if first_only else found


def oracle_verdict(A: PetitAlgebra, B: PetitAlgebra) -> IsoVerdict:
    hit = brute_force_iso(A, B)
    if hit is None:
        return IsoVerdict(NOT_ISOMORPHIC, "oracle")
    shape = hit.t_shape()
    return IsoVerdict(ISOMORPHIC, "oracle", hit.tau, shape[1] if shape else None)


def cross_generator_verdict(A: PetitAlgebra, B: PetitAlgebra,
                            use_oracle: bool = False) -> IsoVerdict:
    a1, a2 = _binomial_data(A), _binomial_data(B)
    if A.m != B.m:
        raise HypothesisViolation("algebras of different degree")
    if A.tower != B.tower:
        if A.tower.q != B.tower.q:
            raise HypothesisViolation("algebras over different base fields")
        _require_outside_base(A, a1)
        _require_outside_base(B, a2)
        return IsoVerdict(NOT_ISOMORPHIC, "nucleus-mismatch")
    _require_outside_base(A, a1)
    _require_outside_base(B, a2)
    if not (A.proper and B.proper):
        raise HypothesisViolation("both algebras must be proper")
    if A.gen == B.gen:
        return iso_criterion(A, B)
    if A.n >= A.m - 1:
        return IsoVerdict(NOT_ISOMORPHIC, "cross-generator-rule")
    if use_oracle:
        return oracle_verdict(A, B)
    return IsoVerdict(INCONCLUSIVE, "cross-generator-rule")


def isotopy_verdict(A: PetitAlgebra, B: PetitAlgebra) -> IsoVerdict:
    """Isotopy of nonassociative cyclic algebras (n = m >= 3)."""
    a1, a2 = _binomial_data(A), _binomial_data(B)
    if A.tower != B.tower or A.n != A.m or B.m != A.m or A.m < 3:
        return IsoVerdict(UNSUPPORTED, "needs n = m >= 3")
    _require_outside_base(A, a1)
    _require_outside_base(B, a2)
    if A.gen != B.gen:
        return IsoVerdict(NOT_ISOTOPIC, "cross-generator-rule")
    v = iso_criterion(A, B)
    if v.status == ISOMORPHIC:
        return IsoVerdict(ISOTOPIC, "criterion", v.tau, v.k)
    return IsoVerdict(NOT_ISOTOPIC, "criterion")


# ---------------------------------------------------------------------------
# census


def formula_count(q: int, m: int) -> int | None:
    """Number of classes per generator for prime m (None otherwise)."""
    if not is_prime(m):
        return None
    if (q - 1) % m:
        num, den = q**m - q, m * (q - 1)
        extra = 0
    else:
        num, den = q**m - q - (q - 1) * (m - 1), m * (q - 1)
        extra = m - 1
    if num % den:
        raise AssertionError("class count formula is not integral")
    return extra + num // den


@dataclass
class CensusResult:
    q: int
    m: int
    j: int
    representatives: list[int]
    classes: list[list[int]] = field(repr=False, default_factory=list)
    formula_count: int | None = None

    @property
    def count(self) -> int:
        return len(self.representatives)

    def to_json(self, K=None) -> dict:
        enc = (lambda x: list(K.coords(x))) if K is not None else (lambda x: x)
        return {"q": self.q, "m": self.m, "j": self.j, "count": self.count,
                "formula_count": self.formula_count,
                "representatives": [enc(a) for a in self.representatives]}


def isomorphism_classes(tower: ExtensionTower, gen: GaloisGenerator, m: int) -> list[list[int]]:
    """Partition K \\ F under a ~ b ⟺ τ(a) ∈ N_{m,σ}(K^×)·b for some τ.

    Classes are sorted internally and by their least element.
    """
    K = tower.top
    check_cap(K.order, "census")
    image = _norm_image(gen, m)
    todo = [a for a in K.elements() if not tower.in_base(a)]
    seen: set[int] = set()
    classes = []
    for a in todo:
        if a in seen:
            continue
        cls = {K.mul(tower.frobenius(a, tau), h) for tau in range(tower.n) for h in image}
        seen |= cls
        classes.append(sorted(cls, key=K.key))
    return classes


def census(q: int, m: int, j: int = 1) -> CensusResult:
    """Isomorphism classes of (F_{q^m}/F_q, σ = Frob^j, a) for a ∈ K \\ F."""
    tower = make_tower(q, m)
    gen = GaloisGenerator(tower, j)
    classes = isomorphism_classes(tower, gen, m)
    reps = [c[0] for c in classes]
    res = CensusResult(q, m, j, reps, classes, formula_count(q, m))
    if res.formula_count is not None and res.formula_count != res.count:
        raise AssertionError(f"census {res.count} != formula {res.formula_count}")
    return res


def census_all_generators(q: int, m: int) -> dict[int, CensusResult]:
    tower = make_tower(q, m)
    out = {g.j: census(q, m, g.j) for g in generators(tower)}
    counts = {r.count for r in out.values()}
    if len(counts) != 1:
        raise AssertionError(f"per-generator counts differ: {counts}")
    if sum(r.count for r in out.values()) != euler_phi(m) * counts.pop():
        raise AssertionError("total class count is not φ(m) times the per-generator count")
    return out


# ---------------------------------------------------------------------------
# parameter sets


@dataclass
class ParamSet:
    kind: str  # S | S2 | S2-prime
    q: int
    m: int
    base_data: dict
    members: list[int]
    index_sets: list[tuple[int, ...]] = field(default_factory=list)

    def to_json(self, K=None) -> dict:
        enc = (lambda x: list(K.coords(x))) if K is not None else (lambda x: x)
        base = {k: (enc(v) if isinstance(v, int) and k != "j" else v)
                for k, v in self.base_data.items()}
        return {"kind": self.kind, "q": self.q, "m": self.m, "base_data": base,
                "members": [enc(a) for a in self.members],
                "index_sets": [list(I) for I in self.index_sets]}


def _least_non_power(tower: ExtensionTower, m: int) -> int:
    """Canonically least element of F^× that is not an m-th power (embedded in K)."""
    F = tower.base
    powers = {F.pow(x, m) for x in F.nonzero()}
    for x in F.nonzero():
        if x not in powers:
            return tower.embed(x)
    raise HypothesisViolation(f"every element of F^× is an {m}-th power")


def _coset_reps(F, deltas: list[tuple[int, ...]], k: int) -> list[tuple[int, ...]]:
    """Lexicographically least representative of each coset of Δ in (F^×)^k."""
    reps = []
    seen = set()
    els = F.nonzero()
    for tup in itertools.product(els, repeat=k):
        if tup in seen:
            continue
        coset = {tuple(F.mul(x, d) for x, d in zip(tup, dl)) for dl in deltas}
        seen |= coset
        reps.append(min(coset, key=lambda v: tuple(F.key(c) for c in v)))
    return reps


def parametrize_S(q: int, m: int, j: int = 1) -> ParamSet:
    """Representatives of all classes for odd prime m, odd q with m | q - 1."""
    if m < 3 or not is_prime(m):
        raise HypothesisViolation("m must be an odd prime")
    if q % 2 == 0:
        raise HypothesisViolation("characteristic must be odd")
    tower = make_tower(q, m)
    F, K = tower.base, tower.top
    zeta0 = primitive_root_of_unity(F, m)
    if zeta0 is None:
        raise HypothesisViolation(f"F_{q} has no primitive {m}-th root of unity")
    gen = GaloisGenerator(tower, j)
    b = _least_non_power(tower, m)
    roots = [y for y in K.elements() if y and K.pow(y, m) == b]
    beta = min(roots, key=K.key)
    z0 = tower.embed(zeta0)
    ratio = K.div(gen(beta), beta)
    s = next(s for s in range(1, m) if K.pow(z0, s) == ratio)
    zeta = K.pow(z0, s)
    if gen(beta) != K.mul(zeta, beta):
        raise AssertionError("β normalization failed")
    zeta_F = tower.restrict(zeta)
    beta_pows = [K.pow(beta, i) for i in range(m)]

    index_sets = [I for size in range(1, m + 1) for I in itertools.combinations(range(m), size)
                  if I != (0,)]
    members = []
    for I in index_sets:
        i0, rest = I[0], I[1:]
        if not rest:
            members.append(beta_pows[i0])
            continue
        deltas = [tuple(F.pow(zeta_F, s * (i - i0)) for i in rest) for s in range(1, m + 1)]
        for rep in _coset_reps(F, deltas, len(rest)):
            x = beta_pows[i0]
            for c, i in zip(rep, rest):
                x = K.add(x, K.mul(tower.embed(c), beta_pows[i]))
            members.append(x)
    base = {"zeta": zeta, "beta": beta, "b": b, "j": j}
    return ParamSet("S", q, m, base, members, index_sets)


def _sqrt_c(tower: ExtensionTower):
    F, K = tower.base, tower.top
    squares = {F.mul(x, x) for x in F.nonzero()}
    c = next(x for x in F.nonzero() if x not in squares)
    cK = tower.embed(c)
    root = min((y for y in K.elements() if K.mul(y, y) == cK), key=K.key)
    return cK, root


def _mod_sign_reps(F) -> list[int]:
    reps = []
    seen = set()
    for s in F.nonzero():
        if s in seen:
            continue
        pair = {s, F.neg(s)}
        seen |= pair
        reps.append(min(pair, key=F.key))
    return reps


def parametrize_S2(q: int, variant: str = "S2") -> ParamSet:
    """The m = 2 parameter sets {√c, 1 + s√c} (S2) or {t + √c} (S2-prime)."""
    if q % 2 == 0:
        raise HypothesisViolation("q must be odd")
    tower = make_tower(q, 2)
    K = tower.top
    c, root = _sqrt_c(tower)
    reps = [tower.embed(s) for s in _mod_sign_reps(tower.base)]
    if variant == "S2":
        members = [root] + [K.add(1, K.mul(s, root)) for s in reps]
    elif variant == "S2-prime":
        members = [K.add(t, root) for t in [0] + reps]
    else:
        raise ValueError(f"unknown variant {variant!r}")
    return ParamSet(variant, q, 2, {"c": c, "sqrt_c": root}, members)


def transversal_report(pset: ParamSet, j: int = 1) -> dict:
    """Check members are pairwise non-isomorphic and cover every class exactly once."""
    tower = make_tower(pset.q, pset.m)
    gen = GaloisGenerator(tower, j)
    classes = isomorphism_classes(tower, gen, pset.m)
    where = {a: idx for idx, cls in enumerate(classes) for a in cls}
    hit = [where.get(a) for a in pset.members]
    outside = any(h is None for h in hit)
    pairwise = all(
        iso_criterion(PetitAlgebra.cyclic(pset.q, pset.m, j, pset.m, a),
                      PetitAlgebra.cyclic(pset.q, pset.m, j, pset.m, b)).status == NOT_ISOMORPHIC
        for a, b in itertools.combinations(pset.members, 2))
    covered = not outside and sorted(hit) == list(range(len(classes)))
    return {"members": len(pset.members), "classes": len(classes),
            "pairwise_non_isomorphic": pairwise, "covers_each_class_once": covered}
