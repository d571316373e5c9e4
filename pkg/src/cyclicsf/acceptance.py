"""Acceptance suite shared by ``cyclicsf verify`` and tests/test_acceptance.py."""
from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass

from cyclicsf import classify, codes
from cyclicsf.fields import GaloisGenerator, euler_phi, generators, make_tower
from cyclicsf.petit import (
    PetitAlgebra,
    division_report,
    embedded_F,
    embedded_K,
    is_division,
    nuclei,
    same_subspace,
)
from cyclicsf.skewpoly import SkewPoly, is_right_invariant, monic_right_divisors


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float
    limit: float

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] {self.number:2d} {self.title}: {self.detail} ({self.seconds:.1f}s / {self.limit:.0f}s)"

    def to_json(self) -> dict:
        # no timings here, so the document is reproducible byte for byte
        return {"number": self.number, "title": self.title, "passed": self.passed,
                "detail": self.detail, "limit": self.limit}


def _outside(tower):
    K = tower.top
    return [x for x in K.elements() if not tower.in_base(x)]


SWEEP = [(2, 2, 2), (2, 3, 2), (2, 3, 3), (3, 2, 2)]


def _sweep_algebras():
    for q, n, m in SWEEP:
        gen = GaloisGenerator(make_tower(q, n), 1)
        for a in gen.tower.top.elements():
            yield (q, n, m), a, PetitAlgebra(gen, SkewPoly.binomial(gen, m, a))


def right_division(trials: int = 1000, seed: int = 0) -> tuple[bool, str]:
    rng = random.Random(seed)
    failures = 0
    for q, n in [(2, 2), (2, 3), (3, 2), (4, 3)]:
        gen = GaloisGenerator(make_tower(q, n), 1)
        order = gen.tower.top.order
        for _ in range(trials):
            g = SkewPoly(gen, [rng.randrange(order) for _ in range(rng.randint(0, 7))])
            f = SkewPoly(gen, [rng.randrange(order) for _ in range(rng.randint(1, 7))])
            while f.is_zero():
                f = SkewPoly(gen, [rng.randrange(order) for _ in range(rng.randint(1, 7))])
            quo, rem = divmod(g, f)
            if quo * f + rem != g or not rem.degree < f.degree:
                failures += 1
    return failures == 0, f"{4 * trials} pairs, {failures} failures"


def associativity() -> tuple[bool, str]:
    bad, total = [], 0
    for cfg, a, A in _sweep_algebras():
        total += 1
        if A.is_associative() != is_right_invariant(A.f):
            bad.append((cfg, a))
    return not bad, f"{total} algebras, mismatches {bad}"


def nucleus_structure() -> tuple[bool, str]:
    bad, total = [], 0
    for cfg, a, A in _sweep_algebras():
        if A.tower.in_base(a):
            continue
        total += 1
        rep = nuclei(A)
        K, F = embedded_K(A), embedded_F(A)
        ok = (same_subspace(A, rep.left, K) and same_subspace(A, rep.middle, K)
              and same_subspace(A, rep.center, F) and rep.right_matches_prediction)
        if not ok:
            bad.append((cfg, a, rep.dims["right"], len(rep.predicted_right)))
    # n = m = 4 over F_3 with a in the quadratic subfield
    tower = make_tower(3, 4)
    gen = GaloisGenerator(tower, 1)
    K = tower.top
    a = next(x for x in K.elements() if gen.power(x, 2) == x and not tower.in_base(x))
    A = PetitAlgebra(gen, SkewPoly.binomial(gen, 4, a))
    rep = nuclei(A)
    n4_ok = (rep.s == 2 and rep.dims["right"] == 8 and rep.right_matches_prediction
             and bool(monic_right_divisors(A.f, 2)))
    detail = (f"{total} proper instances, Nuc_r mismatches (cfg, a, dim, predicted) {bad}; "
              f"n=4 instance s={rep.s} dim Nuc_r={rep.dims['right']} reducible={n4_ok}")
    return not bad and n4_ok, detail


def division_equivalences() -> tuple[bool, str]:
    bad, total = [], 0
    for cfg, a, A in _sweep_algebras():
        total += 1
        rep = division_report(A)
        if len(set(rep.values())) != 1:
            bad.append((cfg, a, rep))
    fails = []
    for q, m in [(2, 2), (3, 2), (4, 2), (5, 2), (2, 3)]:
        tower = make_tower(q, m)
        for gen in generators(tower):
            for a in _outside(tower):
                if not is_division(PetitAlgebra(gen, SkewPoly.binomial(gen, m, a))):
                    fails.append((q, m, gen.j, a))
    return not bad and not fails, f"{total} algebras, mismatches {bad}; non-division cyclic {fails}"


def oracle_agreement() -> tuple[bool, str]:
    disagree, shape_bad, pairs = [], 0, 0
    for q, n, m in [(2, 2, 2), (2, 3, 2), (2, 3, 3)]:
        gen = GaloisGenerator(make_tower(q, n), 1)
        algs = {a: PetitAlgebra(gen, SkewPoly.binomial(gen, m, a)) for a in _outside(gen.tower)}
        for a, b in itertools.product(algs, repeat=2):
            pairs += 1
            crit = classify.iso_criterion(algs[a], algs[b])
            maps = classify.brute_force_iso(algs[a], algs[b], first_only=False)
            if bool(maps) != (crit.status == classify.ISOMORPHIC):
                disagree.append((q, n, m, a, b))
            if crit.status == classify.ISOMORPHIC and not classify.witness_holds(algs[a], algs[b], crit):
                disagree.append((q, n, m, a, b, "witness"))
            shape_bad += sum(1 for h in maps if (h.t_shape() or (None,))[0] != 1)
    return not disagree and not shape_bad, \
        f"{pairs} pairs, disagreements {disagree}, maps not of shape t -> kt: {shape_bad}"


def cross_generator() -> tuple[bool, str]:
    tower = make_tower(2, 3)
    g1, g2 = GaloisGenerator(tower, 1), GaloisGenerator(tower, 2)
    witnesses, pairs = [], 0
    for m in (2, 3):
        for a1, a2 in itertools.product(_outside(tower), repeat=2):
            pairs += 1
            A = PetitAlgebra(g1, SkewPoly.binomial(g1, m, a1))
            B = PetitAlgebra(g2, SkewPoly.binomial(g2, m, a2))
            if classify.brute_force_iso(A, B) is not None:
                witnesses.append((m, a1, a2))
    return not witnesses, f"{pairs} pairs, witnesses {witnesses}"


CENSUS_EXPECTED = {(2, 3): 2, (3, 2): 2, (5, 2): 3, (4, 3): 8, (7, 3): 20}


def census_formula() -> tuple[bool, str]:
    bad = []
    for (q, m), want in CENSUS_EXPECTED.items():
        try:
            per = classify.census_all_generators(q, m)
        except AssertionError as exc:
            bad.append((q, m, str(exc)))
            continue
        counts = {r.count for r in per.values()}
        total = sum(r.count for r in per.values())
        formula = classify.formula_count(q, m)
        if counts != {want} or formula != want or total != euler_phi(m) * want:
            bad.append((q, m, counts, formula, total))
    return not bad, f"{len(CENSUS_EXPECTED)} cases, mismatches {bad}"


def parametrization() -> tuple[bool, str]:
    cases = [(classify.parametrize_S2(3), 2), (classify.parametrize_S2(5), 3),
             (classify.parametrize_S2(3, "S2-prime"), 2), (classify.parametrize_S2(5, "S2-prime"), 3),
             (classify.parametrize_S(7, 3), 20)]
    bad = []
    for pset, want in cases:
        rep = classify.transversal_report(pset)
        if (len(pset.members) != want or not rep["pairwise_non_isomorphic"]
                or not rep["covers_each_class_once"]):
            bad.append((pset.kind, pset.q, pset.m, rep))
    return not bad, f"{len(cases)} sets, failures {bad}"


def mrd() -> tuple[bool, str]:
    out, ok = [], True
    for q, m, size, d_small, d_big in [(2, 2, 16, 2, 4), (2, 3, 512, 3, 9)]:
        tower = make_tower(q, m)
        gen = GaloisGenerator(tower, 1)
        for a in _outside(tower):
            A = PetitAlgebra(gen, SkewPoly.binomial(gen, m, a))
            small = codes.mrd_check(codes.build_rank_code(A))
            big = codes.mrd_check(codes.expand_rank_code(A))
            good = (small.cardinality == size and small.min_distance == d_small and small.mrd
                    and big.cardinality == size and big.min_distance == d_big and big.mrd)
            ok &= good
            if not good:
                out.append((q, m, a, small, big))
    return ok, f"(2,2) and (2,3) all a outside F_2; failures {out}"


def constacyclic() -> tuple[bool, str]:
    tower = make_tower(2, 3)
    gen = GaloisGenerator(tower, 1)
    bad = []
    for a in _outside(tower):
        found = codes.list_constacyclic(tower, gen, 2, a)
        if not found:
            bad.append((a, "no divisor"))
        for c in found:
            if not (c.shift_closed and codes.shift_rows_in_span(c, gen)
                    and 1 <= c.min_hamming_distance <= c.k + 1 and c.dimension == 1):
                bad.append((a, c.g.coeffs))
    t4 = make_tower(2, 2)
    g4 = GaloisGenerator(t4, 1)
    ex = codes.constacyclic_from_divisor(t4, g4, 2, 1, SkewPoly(g4, [1, 1]))
    example_ok = (ex.generator_matrix == [(1, 1)] and len(ex.codewords) == 4
                  and sorted(ex.codewords) == [(x, x) for x in range(4)] and ex.shift_closed)
    return not bad and example_ok, f"F_8 m=2 failures {bad}; F_4 a=1 g=t+1 example ok={example_ok}"


def alpha_coherence() -> tuple[bool, str]:
    bad, pairs = [], 0
    for q, n in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (3, 3)]:
        tower = make_tower(q, n)
        K = tower.top
        for gen in generators(tower):
            for a1, a2 in itertools.product(K.nonzero(), repeat=2):
                pairs += 1
                closed = any(K.mul(K.pow(al, 2), a2) == a1 for al in tower.base_image if al)
                direct = codes.alpha_equivalence_direct(tower, gen, 2, a1, a2)
                found = codes.alpha_equivalence(tower, gen, 2, a1, a2)
                if closed != (direct is not None) or (found is None) != (direct is None):
                    bad.append((q, n, gen.j, a1, a2))
    # cross-generator verdict: NotEquivalent exactly under the hypotheses
    verdict_bad = []
    for q, n, m in [(2, 3, 2), (2, 3, 3), (2, 3, 4), (2, 3, 5), (3, 3, 2), (2, 4, 2), (2, 2, 2)]:
        tower = make_tower(q, n)
        gens = generators(tower)
        K = tower.top
        for g1, g2 in itertools.product(gens, repeat=2):
            for a1, a2 in itertools.product(K.nonzero(), repeat=2):
                hyp = g1 != g2 and n >= 3 and n >= m - 1 and not tower.in_base(a1) \
                    and not tower.in_base(a2)
                try:
                    v = codes.cross_generator_code_verdict(tower, g1, g2, m, a1, a2)
                    got = v.status == codes.NOT_EQUIVALENT
                except classify.HypothesisViolation:
                    got = False
                if got != hyp:
                    verdict_bad.append((q, n, m, g1.j, g2.j, a1, a2))
    return not bad and not verdict_bad, \
        f"{pairs} pairs, closed/direct mismatches {bad}; verdict mismatches {verdict_bad[:5]}"


CRITERIA = [
    (1, "right-division contract", right_division, 5),
    (2, "associativity <=> right-invariance", associativity, 60),
    (3, "nuclei structure", nucleus_structure, 120),
    (4, "division equivalences", division_equivalences, 300),
    (5, "oracle/criterion agreement", oracle_agreement, 600),
    (6, "cross-generator non-isomorphism", cross_generator, 600),
    (7, "census vs formula", census_formula, 120),
    (8, "parametrization transversality", parametrization, 300),
    (9, "MRD verification", mrd, 300),
    (10, "constacyclic pipeline", constacyclic, 60),
    (11, "alpha-equivalence coherence", alpha_coherence, 60),
]


def run_criterion(number: int) -> CriterionResult:
    num, title, fn, limit = next(c for c in CRITERIA if c[0] == number)
    start = time.perf_counter()
    try:
        passed, detail = fn()
    except Exception as exc:  # reported as a failure, not a crash
        passed, detail = False, f"error: {exc!r}"
    elapsed = time.perf_counter() - start
    if elapsed > limit:
        passed, detail = False, detail + f"; over time limit {limit}s"
    return CriterionResult(num, title, passed, detail, elapsed, limit)


def run_all(numbers=None, echo=None) -> list[CriterionResult]:
    out = []
    for num, *_ in CRITERIA:
        if numbers and num not in numbers:
            continue
        res = run_criterion(num)
        if echo:
            echo(res.line())
        out.append(res)
    return out
