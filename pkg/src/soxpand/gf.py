"""Arithmetic for finite fields GF(p^m) with integer-encoded elements.

An element is a plain int in [0, q).  Its base-p digits, least
significant first, are the coefficients of a polynomial in x reduced
modulo a fixed monic irreducible of degree m.  The modulus is canonical:
among all monic irreducibles of degree m over GF(p), the one whose
coefficient encoding sum(c_i * p^i) is smallest (the leading 1 is not
encoded).  Irreducibility is established by trial division against
every monic polynomial of degree at most m/2.

All operations live on a FieldCtx and take/return plain ints; vectors
elsewhere in the package are tuples of ints plus a shared context.
Contexts are immutable once constructed and safe to share across
threads.

Fields of square order (m even) double as quadratic extensions: the
subfield fixed by x -> x^(p^(m/2)) is precomputed, and the conjugation
a -> a^(p^(m/2)) powers the sesquilinear inner product, the norm
equation solver and subfield membership tests.
"""

from __future__ import annotations

from .errors import CapExceededError, PreconditionError

DEFAULT_FIELD_CAP = 1 << 16

# full add/mul tables are built below this order; bigger fields compute
# digit-wise per call
_TABLE_LIMIT = 256

# brute-force threshold for the norm equation; above it a generator and
# discrete logs in the base subfield are used instead
_NORM_BRUTE_LIMIT = 1 << 16


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


# ---------------------------------------------------------------------------
# polynomial helpers over GF(p); coefficient lists, least significant first


def _poly_rem(num: list[int], den: list[int], p: int) -> list[int]:
    """Remainder of num modulo monic den, both coefficient lists."""
    num = list(num)
    dd = len(den) - 1
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c:
            for j in range(dd + 1):
                num[i - dd + j] = (num[i - dd + j] - c * den[j]) % p
    return num[:dd]


def _digits(value: int, p: int, width: int) -> list[int]:
    out = []
    for _ in range(width):
        value, r = divmod(value, p)
        out.append(r)
    return out


def _irreducible(coeffs: list[int], p: int) -> bool:
    """Trial division of a monic polynomial against all monic divisors
    of degree <= deg/2."""
    m = len(coeffs) - 1
    for d in range(1, m // 2 + 1):
        for enc in range(p**d):
            den = _digits(enc, p, d) + [1]
            if not any(_poly_rem(coeffs, den, p)):
                return False
    return True


def _canonical_modulus(p: int, m: int) -> tuple[int, ...]:
    """Lower coefficients (c_0..c_{m-1}) of the smallest-encoding monic
    irreducible of degree m over GF(p)."""
    for enc in range(p**m):
        low = _digits(enc, p, m)
        if _irreducible(low + [1], p):
            return tuple(low)
    raise AssertionError("no irreducible polynomial found")  # unreachable


class FieldCtx:
    """GF(p^m) with canonical modulus and precomputed helper tables.

    Do not call directly; use make_field, which also caches contexts so
    the same (p, m) always yields the same object.
    """

    def __init__(self, p: int, m: int, modulus: tuple[int, ...]):
        self.p = p
        self.m = m
        self.q = p**m
        self.modulus = modulus
        self.quadratic = m % 2 == 0
        self.base_q = p ** (m // 2) if self.quadratic else None

        # x^(m+t) mod modulus for t in [0, m-1), as digit rows
        red = [(-c) % p for c in modulus]
        self._xred = [tuple(red)]
        for _ in range(m - 2):
            red = self._shift_reduce(red)
            self._xred.append(tuple(red))

        q = self.q
        if q <= _TABLE_LIMIT:
            self._add_t = [
                self._add_raw(a, b) for a in range(q) for b in range(q)
            ]
            self._mul_t = [
                self._mul_raw(a, b) for a in range(q) for b in range(q)
            ]
        else:
            self._add_t = None
            self._mul_t = None
        self._neg_t = [self._neg_raw(a) for a in range(q)] if q <= _TABLE_LIMIT else None

        # Frobenius a -> a^p as a permutation table (identity when m == 1);
        # quadratic contexts always get one since the conjugation and
        # subfield tables below are built from it
        if m > 1 and (q <= 4096 or self.quadratic):
            self._frob = [self._pow_raw(a, p) for a in range(q)]
        else:
            self._frob = None

        if self.quadratic:
            conj = list(range(q))
            for _ in range(m // 2):
                conj = [self._frob[a] for a in conj] if self._frob else conj
            self._conj = conj
            self.subfield = tuple(a for a in range(q) if conj[a] == a)
        else:
            self._conj = None
            self.subfield = None

    # -- construction helpers ------------------------------------------------

    def _shift_reduce(self, digs: list[int]) -> list[int]:
        # multiply a degree-<m digit row by x, reduce once
        p, m = self.p, self.m
        out = [0] + list(digs[: m - 1])
        c = digs[m - 1]
        if c:
            for j, r in enumerate(self._xred[0]):
                out[j] = (out[j] + c * r) % p
        return out

    def _enc(self, digs: list[int]) -> int:
        v = 0
        for d in reversed(digs):
            v = v * self.p + d
        return v

    def _add_raw(self, a: int, b: int) -> int:
        p = self.p
        v, mult = 0, 1
        for _ in range(self.m):
            a, da = divmod(a, p)
            b, db = divmod(b, p)
            v += ((da + db) % p) * mult
            mult *= p
        return v

    def _neg_raw(self, a: int) -> int:
        p = self.p
        v, mult = 0, 1
        for _ in range(self.m):
            a, da = divmod(a, p)
            v += (-da % p) * mult
            mult *= p
        return v

    def _mul_raw(self, a: int, b: int) -> int:
        p, m = self.p, self.m
        da = _digits(a, p, m)
        db = _digits(b, p, m)
        conv = [0] * (2 * m - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    if y:
                        conv[i + j] = (conv[i + j] + x * y) % p
        for i in range(2 * m - 2, m - 1, -1):
            c = conv[i]
            if c:
                row = self._xred[i - m]
                for j, r in enumerate(row):
                    conv[j] = (conv[j] + c * r) % p
        return self._enc(conv[:m])

    def _pow_raw(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self._mul_raw(r, a)
            a = self._mul_raw(a, a)
            e >>= 1
        return r

    # -- arithmetic ------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self._add_t is not None:
            return self._add_t[a * self.q + b]
        return self._add_raw(a, b)

    def neg(self, a: int) -> int:
        if self._neg_t is not None:
            return self._neg_t[a]
        return self._neg_raw(a)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self._mul_t is not None:
            return self._mul_t[a * self.q + b]
        return self._mul_raw(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no multiplicative inverse")
        return self.pow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    def elements(self) -> range:
        return range(self.q)

    # -- Frobenius and the quadratic view ----------------------------------

    def frobenius(self, a: int, i: int) -> int:
        """a^(p^i); i is reduced mod m since the automorphism has order m."""
        i %= self.m
        if self.m == 1:
            return a
        if self._frob is not None:
            for _ in range(i):
                a = self._frob[a]
            return a
        for _ in range(i):
            a = self.pow(a, self.p)
        return a

    def conj(self, a: int) -> int:
        """Quadratic conjugation a -> a^(p^(m/2)); requires m even."""
        if not self.quadratic:
            raise PreconditionError(
                f"GF({self.q}) is not a quadratic extension (m={self.m} odd)"
            )
        return self._conj[a]

    def in_base_subfield(self, a: int) -> bool:
        if not self.quadratic:
            raise PreconditionError(
                f"GF({self.q}) is not a quadratic extension (m={self.m} odd)"
            )
        return self._conj[a] == a

    def norm(self, a: int) -> int:
        """Relative norm a^(base_q + 1) down to the base subfield."""
        return self.mul(self.conj(a), a)

    # -- squares ----------------------------------------------------------

    def is_square(self, a: int) -> bool:
        """Whether a has a square root; 0 counts as a square."""
        if a == 0 or self.p == 2:
            return True
        return self.pow(a, (self.q - 1) // 2) == 1

    def sqrt(self, a: int) -> int | None:
        """A square root of a, or None for odd-characteristic nonresidues.

        Characteristic 2: the root is unique, a^(q/2).  Odd: the smaller
        of the two root encodings; direct exponent a^((q+1)/4) when
        q = 3 mod 4, otherwise an exhaustive scan.
        """
        if a == 0:
            return 0
        if self.p == 2:
            return self.frobenius(a, self.m - 1)
        if not self.is_square(a):
            return None
        if self.q % 4 == 3:
            r = self.pow(a, (self.q + 1) // 4)
            return min(r, self.neg(r))
        for x in range(self.q):
            if self.mul(x, x) == a:
                return x
        raise AssertionError("residue with no root")  # unreachable

    # -- solvers -----------------------------------------------------------

    def solve_norm(self, c: int, _strategy: str = "auto") -> list[int]:
        """All t with t^(base_q + 1) = c, sorted ascending.

        c must lie in the base subfield.  Exactly one solution for c = 0
        and base_q + 1 otherwise.  Small fields are scanned outright; a
        generator plus a discrete log in the base subfield covers fields
        past the scan threshold.
        """
        if not self.in_base_subfield(c):
            raise PreconditionError(
                f"norm equation needs c in the base subfield, got {c}"
            )
        if c == 0:
            return [0]
        if _strategy == "brute" or (_strategy == "auto" and self.q <= _NORM_BRUTE_LIMIT):
            return [t for t in range(self.q) if self.mul(self._conj[t], t) == c]
        return self._solve_norm_generator(c)

    def _solve_norm_generator(self, c: int) -> list[int]:
        g = self._generator()
        bq = self.base_q
        h = self.pow(g, bq + 1)  # generates the base subfield's units
        e, cur = 0, 1
        while cur != c:
            cur = self.mul(cur, h)
            e += 1
            if e >= bq:
                raise AssertionError("discrete log failed")  # unreachable
        t0 = self.pow(g, e)
        kg = self.pow(g, bq - 1)  # generates the norm-1 kernel
        out = []
        kt = 1
        for _ in range(bq + 1):
            out.append(self.mul(t0, kt))
            kt = self.mul(kt, kg)
        return sorted(out)

    def _generator(self) -> int:
        """Smallest-encoding generator of the multiplicative group."""
        n = self.q - 1
        fac = []
        d, left = 2, n
        while d * d <= left:
            if left % d == 0:
                fac.append(d)
                while left % d == 0:
                    left //= d
            d += 1
        if left > 1:
            fac.append(left)
        for g in range(2, self.q):
            if all(self.pow(g, n // f) != 1 for f in fac):
                return g
        raise AssertionError("no generator found")  # unreachable

    def solve_diag_quadratic(self, a: int, b: int, c: int) -> tuple[int, int]:
        """Smallest (s, t) with a + b*s^2 + c*t^2 = 0, odd characteristic.

        a, b, c all nonzero.  The value sets {a + b*s^2} and {-c*t^2}
        each have (q+1)/2 members, so they intersect; the scan returns
        the smallest s encoding and, for it, the smallest t.  (0, 0) is
        impossible since a != 0.
        """
        if self.p == 2:
            raise PreconditionError("diagonal quadratic solver needs odd characteristic")
        if a == 0 or b == 0 or c == 0:
            raise PreconditionError(
                "diagonal quadratic solver needs all three coefficients nonzero"
            )
        want = {}
        for t in range(self.q):
            v = self.neg(self.mul(c, self.mul(t, t)))
            if v not in want:
                want[v] = t
        for s in range(self.q):
            v = self.add(a, self.mul(b, self.mul(s, s)))
            if v in want:
                return s, want[v]
        raise AssertionError("value sets failed to intersect")  # unreachable

    # -- misc ----------------------------------------------------------------

    def modulus_str(self) -> str:
        terms = [f"x^{self.m}" if self.m > 1 else "x"]
        for i in range(self.m - 1, -1, -1):
            c = self.modulus[i]
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append("x" if c == 1 else f"{c}x")
            else:
                terms.append(f"x^{i}" if c == 1 else f"{c}x^{i}")
        return "+".join(terms)

    def __repr__(self) -> str:
        return f"GF({self.q})=GF({self.p}^{self.m})[{self.modulus_str()}]"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FieldCtx):
            return NotImplemented
        return (self.p, self.m, self.modulus) == (other.p, other.m, other.modulus)

    def __hash__(self) -> int:
        return hash((self.p, self.m, self.modulus))


_CACHE: dict[tuple[int, int], FieldCtx] = {}


def make_field(p: int, m: int, cap: int = DEFAULT_FIELD_CAP) -> FieldCtx:
    """Construct (or fetch the cached) GF(p^m) with the canonical modulus."""
    if not _is_prime(p):
        raise PreconditionError(f"p={p} is not prime")
    if m < 1:
        raise PreconditionError(f"m={m} must be at least 1")
    if p**m > cap:
        raise CapExceededError(f"field size {p}^{m} exceeds cap {cap}")
    key = (p, m)
    ctx = _CACHE.get(key)
    if ctx is None:
        ctx = FieldCtx(p, m, _canonical_modulus(p, m))
        _CACHE[key] = ctx
    return ctx


def parse_field_name(text: str) -> tuple[int, int]:
    """Parse 'p^m' or a bare prime 'p' into (p, m)."""
    s = text.strip()
    if "^" in s:
        left, _, right = s.partition("^")
        try:
            return int(left), int(right)
        except ValueError:
            raise PreconditionError(f"bad field name {text!r}") from None
    try:
        return int(s), 1
    except ValueError:
        raise PreconditionError(f"bad field name {text!r}") from None
