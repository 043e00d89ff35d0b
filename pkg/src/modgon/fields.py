"""Exact field arithmetic: prime-power finite fields and the rationals.

Finite field elements are plain ints encoding base-p coefficient vectors
(little-endian), so the zero element is 0 and prime-field elements are just
residues.  Small fields get exp/log tables (fast multiplication, square
roots, subfield scans); large fields fall back to polynomial arithmetic
modulo the defining polynomial.

Both field classes expose the same small interface (zero/one/from_int/add/
sub/mul/neg/inv/eq/is_zero), which is all the linear algebra and geometry
code relies on, so divisor computations run unchanged over Q.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

_TABLE_LIMIT = 1 << 17


def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mulmod(a: list[int], b: list[int], mod: list[int], p: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_rem(out, mod, p)


def _poly_rem(a: list[int], mod: list[int], p: int) -> list[int]:
    a = a[:]
    dm = len(mod) - 1
    inv_lead = pow(mod[-1], -1, p)
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] % p
        if c:
            f = (c * inv_lead) % p
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - f * mod[j]) % p
    del a[dm:]
    return _poly_trim(a)


def _poly_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _poly_trim(a[:]), _poly_trim(b[:])
    while b:
        a, b = b, _poly_rem(a, b, p)
    return a


def _poly_powmod(base: list[int], e: int, mod: list[int], p: int) -> list[int]:
    result = [1]
    base = _poly_rem(base[:], mod, p)
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, mod, p)
        base = _poly_mulmod(base, base, mod, p)
        e >>= 1
    return result


def _is_irreducible(f: list[int], p: int) -> bool:
    """Rabin test: x^(p^k) = x mod f and gcd(x^(p^(k/l)) - x, f) = 1."""
    k = len(f) - 1
    x = [0, 1]
    xq = _poly_powmod(x, p**k, f, p)
    if _poly_trim([(a - b) % p for a, b in _zip_pad(xq, x)]):
        return False
    for ell in _prime_divisors(k):
        xe = _poly_powmod(x, p ** (k // ell), f, p)
        g = _poly_gcd([(a - b) % p for a, b in _zip_pad(xe, x)], f, p)
        if len(g) - 1 > 0:
            return False
    return True


def _zip_pad(a: list[int], b: list[int]):
    n = max(len(a), len(b))
    return zip(a + [0] * (n - len(a)), b + [0] * (n - len(b)))


def _prime_divisors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def _factorint(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


class FF:
    """The finite field F_{p^k}; construct through the ff() cache."""

    def __init__(self, p: int, k: int = 1):
        if k < 1 or p < 2:
            raise ValueError("need a prime p and k >= 1")
        self.p = p
        self.k = k
        self.q = p**k
        self.char = p
        self.modulus = self._find_modulus() if k > 1 else None
        self._exp: list[int] | None = None
        self._log: list[int] | None = None
        if self.q <= _TABLE_LIMIT:
            self._build_tables()

    def __repr__(self):
        return f"FF({self.p},{self.k})"

    # -- construction helpers ------------------------------------------------

    def _find_modulus(self) -> list[int]:
        """Lexicographically least monic irreducible of degree k over F_p."""
        p, k = self.p, self.k
        for code in range(p**k):
            f = self._decode(code) + [1]
            f += [0] * (k + 1 - len(f))
            f[-1] = 1
            if _is_irreducible(f, p):
                return f
        raise AssertionError("no irreducible polynomial found")

    def _decode(self, e: int) -> list[int]:
        out = []
        while e:
            out.append(e % self.p)
            e //= self.p
        return out

    def _encode(self, coeffs: list[int]) -> int:
        e = 0
        for c in reversed(coeffs):
            e = e * self.p + (c % self.p)
        return e

    def _build_tables(self):
        # find a multiplicative generator, then tabulate exp/log
        order_factors = list(_factorint(self.q - 1))
        for cand in range(1 if self.q == 2 else 2, self.q):
            if all(
                self._pow_raw(cand, (self.q - 1) // ell) != 1
                for ell in order_factors
            ):
                g = cand
                break
        else:
            raise AssertionError("no generator found")
        exp = [1] * (self.q - 1)
        log = [0] * self.q
        acc = 1
        for i in range(1, self.q - 1):
            acc = self._mul_raw(acc, g)
            exp[i] = acc
            log[acc] = i
        log[1] = 0
        self._exp, self._log = exp, log
        self.generator = g

    # -- raw ops without tables ----------------------------------------------

    def _mul_raw(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a * b) % self.p
        return self._encode(
            _poly_mulmod(self._decode(a), self._decode(b), self.modulus, self.p)
        )

    def _pow_raw(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self._mul_raw(r, a)
            a = self._mul_raw(a, a)
            e >>= 1
        return r

    # -- field interface -----------------------------------------------------

    zero = 0
    one = 1

    def from_int(self, n: int) -> int:
        return n % self.p

    def is_zero(self, a: int) -> bool:
        return a == 0

    def eq(self, a: int, b: int) -> bool:
        return a == b

    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        p, out, shift = self.p, 0, 1
        while a or b:
            out += ((a + b) % p) * shift
            a //= p
            b //= p
            shift *= p
        return out

    def neg(self, a: int) -> int:
        if self.k == 1:
            return (-a) % self.p
        p, out, shift = self.p, 0, 1
        while a:
            out += ((p - a % p) % p) * shift
            a //= p
            shift *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self._exp is not None:
            return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]
        return self._mul_raw(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        if self._exp is not None:
            return self._exp[(-self._log[a]) % (self.q - 1)]
        return self._pow_raw(a, self.q - 2)

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            return 0 if e else 1
        e %= self.q - 1
        if self._exp is not None:
            return self._exp[(self._log[a] * e) % (self.q - 1)]
        return self._pow_raw(a, e)

    def frobenius(self, a: int) -> int:
        return self.pow(a, self.p)

    def elements(self):
        return range(self.q)

    def sqrt(self, a: int) -> int | None:
        """A square root of a, or None if a is a non-square (odd char)."""
        if a == 0:
            return 0
        if self.p == 2:
            return self.pow(a, self.q // 2)  # squaring is bijective
        if self._log is None:
            raise NotImplementedError("sqrt without tables")
        la = self._log[a]
        if la % 2:
            return None
        return self._exp[la // 2]

    # -- subfield embeddings ---------------------------------------------------

    def embedding_from(self, small: "FF"):
        """Map F_{p^m} -> self for m | k; deterministic choice of root."""
        if small.p != self.p or self.k % small.k != 0:
            raise ValueError(f"{small} does not embed into {self}")
        if small.k == 1:
            return lambda a: a
        if small.k == self.k:
            return lambda a: a
        beta = self._subfield_generator_image(small)
        powers = [1]
        for _ in range(small.k - 1):
            powers.append(self.mul(powers[-1], beta))

        def emb(a: int) -> int:
            out = 0
            i = 0
            while a:
                c = a % small.p
                if c:
                    out = self.add(out, self.mul(c, powers[i]))
                a //= small.p
                i += 1
            return out

        return emb

    def _subfield_generator_image(self, small: "FF") -> int:
        key = (small.p, small.k)
        cache = getattr(self, "_emb_cache", None)
        if cache is None:
            cache = self._emb_cache = {}
        if key in cache:
            return cache[key]
        beta = self._find_root_of(small.modulus)
        cache[key] = beta
        return beta

    def _find_root_of(self, f_small: list[int]) -> int:
        """Smallest root in self of a poly with prime-field coefficients."""
        if self._exp is not None:
            # roots live in the subfield {0} U <g^s>; scan it
            s = (self.q - 1) // (self.p ** (len(f_small) - 1) - 1)
            best = None
            for j in range(self.p ** (len(f_small) - 1) - 1):
                cand = self._exp[(s * j) % (self.q - 1)]
                if self._eval_prime_poly(f_small, cand) == 0:
                    if best is None or cand < best:
                        best = cand
            if best is None:
                raise AssertionError("defining polynomial has no root in extension")
            return best
        return self._root_by_splitting(f_small)

    def _eval_prime_poly(self, f: list[int], x: int) -> int:
        acc = 0
        for c in reversed(f):
            acc = self.add(self.mul(acc, x), c % self.p)
        return acc

    def _root_by_splitting(self, f_small: list[int]) -> int:
        """Equal-degree splitting for a totally split polynomial (odd char)."""
        if self.p == 2:
            raise NotImplementedError("splitting in characteristic 2 needs tables")
        f = [c % self.p for c in f_small]  # coefficients are field elements

        def poly_roots(g: list[int]) -> list[int]:
            g = _trim(g)
            if len(g) == 2:
                return [self.mul(self.neg(g[0]), self.inv(g[1]))]
            shift = 0
            while True:
                # gcd((x+shift)^((q-1)/2) - 1, g)
                base = [shift, 1]
                h = self._ppowmod(base, (self.q - 1) // 2, g)
                h = _trim([self.sub(a, b) for a, b in _zip_pad_ff(h, [1])])
                d = self._pgcd(h, g)
                if 0 < len(d) - 1 < len(g) - 1:
                    rest = self._pdiv(g, d)
                    return sorted(poly_roots(d) + poly_roots(rest))
                shift += 1

        def _trim(a):
            a = a[:]
            while a and a[-1] == 0:
                a.pop()
            return a

        def _zip_pad_ff(a, b):
            n = max(len(a), len(b))
            return zip(a + [0] * (n - len(a)), b + [0] * (n - len(b)))

        return poly_roots(f)[0]

    # polynomial helpers with coefficients in self (used by splitting only)

    def _prem(self, a: list[int], m: list[int]) -> list[int]:
        a = a[:]
        dm = len(m) - 1
        inv_lead = self.inv(m[-1])
        for i in range(len(a) - 1, dm - 1, -1):
            if a[i]:
                fct = self.mul(a[i], inv_lead)
                for j in range(dm + 1):
                    a[i - dm + j] = self.sub(a[i - dm + j], self.mul(fct, m[j]))
        del a[dm:]
        while a and a[-1] == 0:
            a.pop()
        return a

    def _pmulmod(self, a: list[int], b: list[int], m: list[int]) -> list[int]:
        out = [0] * (len(a) + len(b) - 1) if a and b else []
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] = self.add(out[i + j], self.mul(ai, bj))
        return self._prem(out, m)

    def _ppowmod(self, base: list[int], e: int, m: list[int]) -> list[int]:
        r = [1]
        base = self._prem(base[:], m)
        while e:
            if e & 1:
                r = self._pmulmod(r, base, m)
            base = self._pmulmod(base, base, m)
            e >>= 1
        return r

    def _pgcd(self, a: list[int], b: list[int]) -> list[int]:
        while b:
            a, b = b, self._prem(a, b)
        if a:
            lead_inv = self.inv(a[-1])
            a = [self.mul(c, lead_inv) for c in a]
        return a

    def _pdiv(self, a: list[int], b: list[int]) -> list[int]:
        a = a[:]
        out = [0] * (len(a) - len(b) + 1)
        inv_lead = self.inv(b[-1])
        for i in range(len(a) - len(b), -1, -1):
            c = self.mul(a[i + len(b) - 1], inv_lead)
            out[i] = c
            if c:
                for j in range(len(b)):
                    a[i + j] = self.sub(a[i + j], self.mul(c, b[j]))
        return out


class RationalField:
    """Fraction arithmetic behind the shared field interface."""

    char = 0
    zero = Fraction(0)
    one = Fraction(1)

    def from_int(self, n: int) -> Fraction:
        return Fraction(n)

    def is_zero(self, a) -> bool:
        return a == 0

    def eq(self, a, b) -> bool:
        return a == b

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return 1 / Fraction(a)

    def __repr__(self):
        return "QQ"


QQ = RationalField()


@lru_cache(maxsize=None)
def ff(p: int, k: int = 1) -> FF:
    return FF(p, k)
