"""Finite fields F_{p^e} and extension towers F_q ⊂ F_{q^n}.

Elements are plain ints.  The int ``x`` encodes the coordinate vector of the
element in the polynomial basis 1, x, x^2, ... over the prime field, constant
term in the least significant base-p digit.  So the prime subfield is exactly
``range(p)`` and ``1`` is the unit in every field.

"Canonical" choices (moduli, least elements, representatives) always use the
lexicographic order on coordinate vectors written constant term first; see
:meth:`FiniteField.key`.
"""
from __future__ import annotations

import itertools
import math
import os
from functools import cached_property, lru_cache

DEFAULT_SIZE_CAP = 2**20
SIZE_CAP_ENV = "CYCLICSF_SIZE_CAP"


class NonPrimeCharacteristic(ValueError):
    pass


class SizeCapExceeded(ValueError):
    pass


def size_cap() -> int:
    return int(os.environ.get(SIZE_CAP_ENV, DEFAULT_SIZE_CAP))


def check_cap(count: int, what: str = "enumeration") -> None:
    cap = size_cap()
    if count > cap:
        raise SizeCapExceeded(f"{what} needs {count} elements, cap is {cap}")


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int]:
    """Split q = p^e; raises ValueError if q is not a prime power."""
    fs = prime_factors(q) if q > 1 else []
    if len(fs) != 1:
        raise ValueError(f"{q} is not a prime power")
    p = fs[0]
    e = 0
    while q > 1:
        q //= p
        e += 1
    return p, e


def euler_phi(n: int) -> int:
    return sum(1 for j in range(1, n + 1) if math.gcd(j, n) == 1)


# -- dense polynomials over F_p, coefficient lists constant term first -------

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a, b, p):
    a = list(a)
    inv = pow(b[-1], -1, p)
    db = len(b) - 1
    while len(_trim(a)) - 1 >= db:
        c = a[-1] * inv % p
        shift = len(a) - 1 - db
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
    return a


def _pmulmod(a, b, mod, p):
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _pmod(out, mod, p)


def _pgcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _is_irreducible(f, p) -> bool:
    # Rabin-style: no common factor with x^{p^i} - x for i <= deg/2
    d = len(f) - 1
    if d == 1:
        return True
    if f[0] == 0:
        return False
    xp = [0, 1]
    for _ in range(d // 2):
        # xp <- xp^p mod f
        r = [1]
        base, k = xp, p
        while k:
            if k & 1:
                r = _pmulmod(r, base, f, p)
            base = _pmulmod(base, base, f, p)
            k >>= 1
        xp = r
        diff = list(xp) + [0] * max(0, 2 - len(xp))
        diff[1] = (diff[1] - 1) % p
        if len(_pgcd(f, diff, p)) > 1:
            return False
    return True


def canonical_modulus(p: int, e: int) -> tuple[int, ...]:
    """Lexicographically least monic irreducible of degree e (constant term first)."""
    if e == 1:
        return (0, 1)
    for low in itertools.product(range(p), repeat=e):
        f = list(low) + [1]
        if _is_irreducible(f, p):
            return tuple(f)
    raise AssertionError("no irreducible polynomial found")


class FiniteField:
    """The field F_{p^e} with its canonical modulus and log/exp tables."""

    def __init__(self, p: int, e: int = 1):
        if not is_prime(p):
            raise NonPrimeCharacteristic(f"{p} is not prime")
        if e < 1:
            raise ValueError("extension degree must be positive")
        self.p = p
        self.e = e
        self.order = p**e
        check_cap(self.order, f"F_{p}^{e}")
        self.modulus = canonical_modulus(p, e)
        self._build_tables()

    def __repr__(self):
        return f"FiniteField({self.p}, {self.e})"

    def __eq__(self, other):
        return isinstance(other, FiniteField) and (self.p, self.e) == (other.p, other.e)

    def __hash__(self):
        return hash((self.p, self.e))

    # -- construction ------------------------------------------------------

    def _mul_slow(self, a: int, b: int) -> int:
        return self.from_coords(_pmulmod(list(self.coords(a)), list(self.coords(b)),
                                         list(self.modulus), self.p))

    def _build_tables(self):
        N = self.order - 1
        if N == 0:
            raise ValueError("F_1 does not exist")
        if self.e == 1:
            g = next(x for x in range(1, self.p) if self._has_full_order(x, slow=True))
        else:
            g = min((x for x in range(1, self.order) if self._has_full_order(x, slow=True)),
                    key=self.key)
        exp = [0] * (2 * N)
        log = [0] * self.order
        x = 1
        for k in range(N):
            exp[k] = x
            log[x] = k
            x = self._mul_slow(x, g)
        if x != 1:
            raise AssertionError("primitive element search failed")
        exp[N:] = exp[:N]
        self.primitive = g
        self._exp = exp
        self._log = log
        self._N = N

    def _has_full_order(self, x: int, slow: bool = False) -> bool:
        N = self.order - 1
        for r in prime_factors(N) if N > 1 else []:
            y, k, base = 1, N // r, x
            while k:
                if k & 1:
                    y = self._mul_slow(y, base)
                base = self._mul_slow(base, base)
                k >>= 1
            if y == 1:
                return False
        return True

    # -- coordinates and ordering -----------------------------------------

    def coords(self, x: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.e):
            x, r = divmod(x, self.p)
            out.append(r)
        return tuple(out)

    def from_coords(self, c) -> int:
        c = list(c) + [0] * (self.e - len(c))
        if len(c) > self.e:
            raise ValueError("too many coordinates")
        x = 0
        for v in reversed(c):
            x = x * self.p + (v % self.p)
        return x

    def key(self, x: int) -> tuple[int, ...]:
        """Sort key realizing the canonical element order."""
        return self.coords(x)

    def elements(self) -> list[int]:
        return sorted(range(self.order), key=self.key)

    def nonzero(self) -> list[int]:
        return [x for x in self.elements() if x]

    # -- arithmetic --------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self.e == 1:
            return (a + b) % self.p
        if not a:
            return b
        if not b:
            return a
        la = self._log[a]
        d = self._exp[(self._log[b] - la) % self._N]
        # 1 + y only touches the constant digit
        r = d % self.p
        s = d - r + (r + 1) % self.p
        if not s:
            return 0
        return self._exp[la + self._log[s]]

    def neg(self, a: int) -> int:
        if self.p == 2 or not a:
            return a
        if self.e == 1:
            return self.p - a
        return self._exp[self._log[a] + self._N // 2]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if not a or not b:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return self._exp[(self._N - self._log[a]) % self._N]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, k: int) -> int:
        if not a:
            if k < 0:
                raise ZeroDivisionError("zero to a negative power")
            return 1 if k == 0 else 0
        return self._exp[(self._log[a] * k) % self._N]

    def log(self, a: int) -> int:
        """Discrete log to base :attr:`primitive`."""
        if not a:
            raise ValueError("log of zero")
        return self._log[a]

    def exp(self, k: int) -> int:
        return self._exp[k % self._N]

    def mult_order(self, a: int) -> int:
        if not a:
            raise ValueError("zero has no multiplicative order")
        return self._N // math.gcd(self._N, self._log[a])

    def sum(self, xs) -> int:
        s = 0
        for x in xs:
            s = self.add(s, x)
        return s

    def prod(self, xs) -> int:
        s = 1
        for x in xs:
            s = self.mul(s, x)
        return s

    def to_json(self) -> dict:
        return {"p": self.p, "e": self.e, "modulus": list(self.modulus)}


@lru_cache(maxsize=None)
def make_field(p: int, e: int = 1) -> FiniteField:
    """Canonical F_{p^e}; repeated calls return the same object."""
    if not is_prime(p):
        raise NonPrimeCharacteristic(f"{p} is not prime")
    check_cap(p**e, f"F_{p}^{e}")
    return FiniteField(p, e)


def primitive_root_of_unity(field: FiniteField, m: int):
    """Canonically least element of multiplicative order exactly m, or None."""
    if m < 1 or (field.order - 1) % m:
        return None
    for x in field.nonzero():
        if field.mult_order(x) == m:
            return x
    return None


class ExtensionTower:
    """F = F_q inside K = F_{q^n}, with K built directly over the prime field."""

    def __init__(self, q: int, n: int):
        p, e = prime_power(q)
        if n < 1:
            raise ValueError("degree must be positive")
        check_cap(q**n, f"F_{q}^{n}")
        self.q = q
        self.n = n
        self.base = make_field(p, e)
        self.top = make_field(p, e * n)
        self._build_embedding()

    def __repr__(self):
        return f"ExtensionTower(q={self.q}, n={self.n})"

    def __eq__(self, other):
        return isinstance(other, ExtensionTower) and (self.q, self.n) == (other.q, other.n)

    def __hash__(self):
        return hash((self.q, self.n))

    @property
    def p(self) -> int:
        return self.base.p

    def _build_embedding(self):
        F, K = self.base, self.top
        h = F.primitive
        # minimal polynomial of h over F_p: prod (X - h^{p^i}); coefficients land in F_p
        mp = [1]
        conj = h
        for _ in range(F.e):
            nxt = [0] * (len(mp) + 1)
            for i, c in enumerate(mp):
                nxt[i + 1] = F.add(nxt[i + 1], c)
                nxt[i] = F.sub(nxt[i], F.mul(c, conj))
            mp = nxt
            conj = F.pow(conj, F.p)
        if any(c >= F.p for c in mp):
            raise AssertionError("minimal polynomial not over the prime field")
        step = (K.order - 1) // (F.order - 1)
        roots = []
        for i in range(F.order - 1):
            y = K.exp(step * i)
            acc = 0
            for c in reversed(mp):
                acc = K.add(K.mul(acc, y), c)
            if acc == 0:
                roots.append(y)
        root = min(roots, key=K.key)
        emb = [0] * F.order
        for k in range(F.order - 1):
            emb[F.exp(k)] = K.pow(root, k)
        self._embed = emb
        self._restrict = {y: x for x, y in enumerate(emb)}
        fixed = frozenset(x for x in range(K.order) if K.pow(x, self.q) == x)
        if fixed != frozenset(emb) or len(fixed) != self.q:
            raise AssertionError("embedding image is not the fixed field of Frobenius")
        self.base_image = fixed

    def embed(self, x: int) -> int:
        return self._embed[x]

    def restrict(self, y: int) -> int:
        """Inverse of :meth:`embed` on the base image."""
        try:
            return self._restrict[y]
        except KeyError:
            raise ValueError(f"{y} is not in the base field") from None

    def in_base(self, y: int) -> bool:
        return y in self.base_image

    def frobenius(self, x: int, power: int = 1) -> int:
        """x ↦ x^{q^power}."""
        return self.top.pow(x, pow(self.q, power % self.n))

    @lru_cache(maxsize=None)
    def frobenius_table(self, power: int) -> tuple[int, ...]:
        K = self.top
        return tuple(self.frobenius(x, power) for x in range(K.order))

    def norm(self, x: int) -> int:
        if not x:
            return 0
        return self.top.pow(x, (self.top.order - 1) // (self.q - 1))

    def trace(self, x: int) -> int:
        return self.top.sum(self.frobenius(x, i) for i in range(self.n))

    # -- F-linear structure of K ------------------------------------------

    @cached_property
    def prime_basis(self) -> tuple[int, ...]:
        """F_p-basis of K: the monomials 1, x, ..., x^{en-1}."""
        return tuple(self.p**i for i in range(self.top.e))

    @cached_property
    def f_basis(self) -> tuple[int, ...]:
        """An F-basis of K: monomials taken greedily while F-independent."""
        from cyclicsf import linalg

        F, K = self.base, self.top
        fb = [self.embed(F.p**a) for a in range(F.e)]
        chosen: list[int] = []
        rows: list[list[int]] = []
        for mono in self.prime_basis:
            cand = rows + [list(K.coords(K.mul(b, mono))) for b in fb]
            if linalg.rank_mod_p(cand, self.p) == len(cand):
                chosen.append(mono)
                rows = cand
            if len(chosen) == self.n:
                break
        return tuple(chosen)

    @cached_property
    def _f_coord_matrix(self):
        from cyclicsf import linalg

        F, K = self.base, self.top
        fb = [self.embed(F.p**a) for a in range(F.e)]
        # columns ordered (i, a): coordinates of fb[a] * f_basis[i]
        cols = [K.coords(K.mul(fb[a], b)) for b in self.f_basis for a in range(F.e)]
        M = [[c[r] for c in cols] for r in range(K.e)]
        return linalg.inverse_mod_p(M, self.p)

    def f_coords(self, x: int) -> tuple[int, ...]:
        """Coordinates of x over F (as base-field elements) in :attr:`f_basis`."""
        F, K = self.base, self.top
        v = K.coords(x)
        inv = self._f_coord_matrix
        d = [sum(inv[r][c] * v[c] for c in range(K.e)) % self.p for r in range(K.e)]
        return tuple(F.from_coords(d[i * F.e:(i + 1) * F.e]) for i in range(self.n))

    def from_f_coords(self, cs) -> int:
        K = self.top
        return K.sum(K.mul(self.embed(c), b) for c, b in zip(cs, self.f_basis))

    def generators(self) -> list["GaloisGenerator"]:
        return generators(self)

    def to_json(self) -> dict:
        return {"q": self.q, "n": self.n, "base": self.base.to_json(),
                "top": self.top.to_json()}


@lru_cache(maxsize=None)
def make_tower(q: int, n: int) -> ExtensionTower:
    return ExtensionTower(q, n)


class GaloisGenerator:
    """σ = Frobenius^j, a generator of Gal(K/F) (gcd(j, n) = 1)."""

    def __init__(self, tower: ExtensionTower, j: int):
        n = tower.n
        if n == 1:
            j = 0  # trivial group: every exponent is the identity
        elif not (1 <= j < n and math.gcd(j, n) == 1):
            raise ValueError(f"exponent {j} does not give a generator of Gal for n={n}")
        self.tower = tower
        self.j = j

    def __repr__(self):
        return f"GaloisGenerator(q={self.tower.q}, n={self.tower.n}, j={self.j})"

    def __eq__(self, other):
        return (isinstance(other, GaloisGenerator) and self.tower == other.tower
                and self.j == other.j)

    def __hash__(self):
        return hash((self.tower, self.j))

    def __call__(self, x: int) -> int:
        return self.power(x, 1)

    def power(self, x: int, i: int) -> int:
        """σ^i(x); negative i allowed."""
        return self.tower.frobenius(x, (self.j * i) % self.tower.n)

    def table(self, i: int = 1) -> tuple[int, ...]:
        return self.tower.frobenius_table((self.j * i) % self.tower.n)

    def order(self) -> int:
        K = self.tower.top
        g = K.primitive
        x, k = self(g), 1
        while x != g:
            x, k = self(x), k + 1
        return k


def generators(tower: ExtensionTower) -> list[GaloisGenerator]:
    """One generator per j coprime to n, ordered by j."""
    if tower.n == 1:
        return [GaloisGenerator(tower, 0)]
    return [GaloisGenerator(tower, j) for j in range(1, tower.n) if math.gcd(j, tower.n) == 1]


def norm(tower: ExtensionTower, x: int) -> int:
    return tower.norm(x)


def partial_norm(gen: GaloisGenerator, m: int, k: int) -> int:
    """N_{m,σ}(k) = k σ(k) ... σ^{m-1}(k)."""
    K = gen.tower.top
    return K.prod(gen.power(k, i) for i in range(m))


def partial_norm_image(gen: GaloisGenerator, m: int) -> frozenset[int]:
    K = gen.tower.top
    check_cap(K.order, "partial norm image")
    return frozenset(partial_norm(gen, m, k) for k in range(1, K.order))
