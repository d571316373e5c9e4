"""Twisted polynomials K[t; σ] with t·c = σ(c)·t."""
from __future__ import annotations

import itertools

from cyclicsf.fields import GaloisGenerator, check_cap

NEG_INF = float("-inf")


class TwistMismatch(ValueError):
    pass


class DivisionByZeroPolynomial(ZeroDivisionError):
    pass


def _normalize(coeffs) -> tuple[int, ...]:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


class SkewPoly:
    """Immutable element of K[t; σ]; ``coeffs[i]`` is the coefficient of t^i."""

    __slots__ = ("gen", "coeffs")

    def __init__(self, gen: GaloisGenerator, coeffs=()):
        self.gen = gen
        self.coeffs = _normalize(coeffs)

    @classmethod
    def monomial(cls, gen, c: int, i: int) -> "SkewPoly":
        return cls(gen, [0] * i + [c])

    @classmethod
    def binomial(cls, gen, m: int, a: int) -> "SkewPoly":
        """t^m - a."""
        K = gen.tower.top
        return cls(gen, [K.neg(a)] + [0] * (m - 1) + [1])

    @property
    def field(self):
        return self.gen.tower.top

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def coeff(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __repr__(self):
        return f"SkewPoly(j={self.gen.j}, {list(self.coeffs)})"

    def __eq__(self, other):
        return (isinstance(other, SkewPoly) and self.gen == other.gen
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.gen, self.coeffs))

    def _check(self, other):
        if not isinstance(other, SkewPoly):
            return NotImplemented
        if self.gen != other.gen:
            raise TwistMismatch(f"{self.gen} vs {other.gen}")
        return None

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        K = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        return SkewPoly(self.gen, [K.add(self.coeff(i), other.coeff(i)) for i in range(n)])

    def __neg__(self):
        K = self.field
        return SkewPoly(self.gen, [K.neg(c) for c in self.coeffs])

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            K = self.field
            return SkewPoly(self.gen, [K.mul(c, other) for c in self.coeffs])
        return skew_mul(self, other)

    def __rmul__(self, other):
        # scalar on the left: c·f
        if isinstance(other, int):
            K = self.field
            return SkewPoly(self.gen, [K.mul(other, c) for c in self.coeffs])
        return NotImplemented

    def __divmod__(self, other):
        return right_divmod(self, other)

    def __mod__(self, other):
        return right_divmod(self, other)[1]

    def sort_key(self):
        K = self.field
        return (len(self.coeffs), tuple(K.key(c) for c in self.coeffs))

    def to_json(self) -> dict:
        K = self.field
        return {"twist": self.gen.j, "coeffs": [list(K.coords(c)) for c in self.coeffs]}


def skew_mul(f: SkewPoly, g: SkewPoly) -> SkewPoly:
    f._check(g)
    if f.is_zero() or g.is_zero():
        return SkewPoly(f.gen)
    K = f.field
    out = [0] * (len(f.coeffs) + len(g.coeffs) - 1)
    for i, fi in enumerate(f.coeffs):
        if not fi:
            continue
        tw = f.gen.table(i)
        for j, gj in enumerate(g.coeffs):
            if gj:
                out[i + j] = K.add(out[i + j], K.mul(fi, tw[gj]))
    return SkewPoly(f.gen, out)


def right_divmod(g: SkewPoly, f: SkewPoly) -> tuple[SkewPoly, SkewPoly]:
    """Unique (q, r) with g = q·f + r and deg r < deg f."""
    g._check(f)
    if f.is_zero():
        raise DivisionByZeroPolynomial("right division by the zero polynomial")
    K = f.field
    m = len(f.coeffs) - 1
    lead = f.coeffs[-1]
    r = list(g.coeffs)
    quo = [0] * max(len(r) - m, 0)
    for d in range(len(r) - 1, m - 1, -1):
        c = r[d]
        if not c:
            continue
        s = d - m
        tw = f.gen.table(s)
        x = K.div(c, tw[lead])
        quo[s] = x
        # subtract x t^s f
        for i, fi in enumerate(f.coeffs):
            if fi:
                r[s + i] = K.sub(r[s + i], K.mul(x, tw[fi]))
    return SkewPoly(f.gen, quo), SkewPoly(f.gen, r[:m])


def is_right_invariant(f: SkewPoly) -> bool:
    """R·f is a two-sided ideal: f·b and f·t are right multiples of f."""
    if f.degree < 1:
        raise ValueError("need degree >= 1")
    tower = f.gen.tower
    probes = [SkewPoly(f.gen, [b]) for b in tower.f_basis]
    probes.append(SkewPoly.monomial(f.gen, 1, 1))
    return all(right_divmod(f * b, f)[1].is_zero() for b in probes)


def monic_polys(gen: GaloisGenerator, k: int):
    """All monic degree-k polynomials, lexicographic in (c_0, ..., c_{k-1})."""
    els = gen.tower.top.elements()
    for low in itertools.product(els, repeat=k):
        yield SkewPoly(gen, low + (1,))


def monic_right_divisors(f: SkewPoly, k: int) -> list[SkewPoly]:
    if not 1 <= k < f.degree:
        raise ValueError(f"need 1 <= k < deg f, got k={k}")
    K = f.field
    check_cap(K.order**k, "right divisor enumeration")
    return [g for g in monic_polys(f.gen, k) if right_divmod(f, g)[1].is_zero()]


def is_irreducible(f: SkewPoly) -> bool:
    if f.degree < 1:
        raise ValueError("need degree >= 1")
    return all(not monic_right_divisors(f, k) for k in range(1, int(f.degree)))
