"""Exact arithmetic in GF(p^n): field construction, element algebra, traces,
quadratic characters, and quadratic-equation solving.

Elements are stored as integer codes 0..q-1; the code of an element with
coefficient vector (c0, c1, ..., c_{n-1}) relative to the polynomial basis is
sum(c_i * p**i).  The dense coefficient form is primary; log/antilog and other
acceleration tables are built lazily (q <= 2**20) and are observationally
identical to the coefficient-level routines.
"""

from __future__ import annotations

import threading
from functools import lru_cache
from types import SimpleNamespace

import numpy as np


class FieldError(ValueError):
    """Invalid field construction, bad element data, or mixed-field operands."""


# ---------------------------------------------------------------------------
# polynomial helpers over Z_p (little-endian coefficient lists)
# ---------------------------------------------------------------------------

def _digits(k: int, length: int, p: int) -> list[int]:
    out = []
    for _ in range(length):
        k, r = divmod(k, p)
        out.append(r)
    return out


def _poly_rem(num: list[int], den: list[int], p: int) -> list[int]:
    """Remainder of num modulo monic den, coefficients in Z_p."""
    num = list(num)
    dd = len(den) - 1
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i] % p
        if c:
            for j in range(dd + 1):
                num[i - dd + j] = (num[i - dd + j] - c * den[j]) % p
    rem = [c % p for c in num[:dd]]
    return rem


def _is_irreducible(coeffs: tuple[int, ...], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg//2."""
    deg = len(coeffs) - 1
    if deg < 1 or coeffs[-1] % p != 1:
        return False
    if deg == 1:
        return True
    if coeffs[0] % p == 0:  # divisible by x
        return False
    for d in range(1, deg // 2 + 1):
        for k in range(p ** d):
            div = _digits(k, d, p) + [1]
            if not any(_poly_rem(coeffs, div, p)):
                return False
    return True


@lru_cache(maxsize=None)
def _canonical_modulus(p: int, n: int) -> tuple[int, ...]:
    """First irreducible monic degree-n polynomial in ascending code order."""
    for k in range(p ** n):
        cand = tuple(_digits(k, n, p) + [1])
        if _is_irreducible(cand, p):
            return cand
    raise FieldError(f"no irreducible polynomial of degree {n} over GF({p})")


_TABLE_LIMIT = 1 << 20       # build log/antilog tables up to this q
_ADD_TABLE_LIMIT = 1 << 12   # dense q x q addition table (odd p) up to this q


class Field:
    """GF(p^n) with a fixed monic irreducible modulus.

    Construct through make_field(); instances are cached and immutable, so a
    given (p, n, modulus) triple always yields the same object.
    """

    def __init__(self, p: int, n: int, modulus: tuple[int, ...]):
        self.p = p
        self.n = n
        self.q = p ** n
        self.modulus = tuple(c % p for c in modulus)
        self.char2 = p == 2
        self._mod_code = sum(c << i for i, c in enumerate(self.modulus)) if self.char2 else 0
        self._pows = tuple(p ** i for i in range(n))
        self._lock = threading.Lock()
        self._tab = None

    # -- identity / presentation ------------------------------------------------

    def __repr__(self):
        return f"GF({self.p}^{self.n}; {self.modulus_text()})"

    def __eq__(self, other):
        return (isinstance(other, Field)
                and (self.p, self.n, self.modulus) == (other.p, other.n, other.modulus))

    def __hash__(self):
        return hash((self.p, self.n, self.modulus))

    def modulus_text(self) -> str:
        return ",".join(str(c) for c in self.modulus)

    # -- element construction ----------------------------------------------------

    def element(self, value) -> "FieldElement":
        """Coerce an element code, coefficient sequence, text, or element."""
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldError("element belongs to a different field")
            return value
        if isinstance(value, (int, np.integer)):
            return self.from_code(int(value))
        if isinstance(value, str):
            return self.from_text(value)
        return self.from_coeffs(value)

    def from_code(self, code: int) -> "FieldElement":
        if not 0 <= code < self.q:
            raise FieldError(f"element code {code} out of range for q={self.q}")
        return FieldElement(self, code)

    def from_coeffs(self, coeffs) -> "FieldElement":
        cs = [int(c) % self.p for c in coeffs]
        if len(cs) > self.n:
            raise FieldError(f"coefficient vector longer than n={self.n}")
        cs += [0] * (self.n - len(cs))
        return FieldElement(self, sum(c * w for c, w in zip(cs, self._pows)))

    def from_text(self, text: str) -> "FieldElement":
        try:
            coeffs = [int(t) for t in text.strip().split(",")]
        except ValueError as e:
            raise FieldError(f"bad element text {text!r}") from e
        return self.from_coeffs(coeffs)

    def coeffs_of(self, code: int) -> tuple[int, ...]:
        return tuple(_digits(code, self.n, self.p))

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1 % self.q)

    def elements(self):
        """All elements in enumeration (code) order."""
        return [FieldElement(self, i) for i in range(self.q)]

    # -- coefficient-level scalar arithmetic (primary form) ----------------------

    def add_code(self, x: int, y: int) -> int:
        if self.char2:
            return x ^ y
        return sum(((xd + yd) % self.p) * w
                   for xd, yd, w in zip(self.coeffs_of(x), self.coeffs_of(y), self._pows))

    def neg_code(self, x: int) -> int:
        if self.char2:
            return x
        return sum(((-d) % self.p) * w for d, w in zip(self.coeffs_of(x), self._pows))

    def sub_code(self, x: int, y: int) -> int:
        return self.add_code(x, self.neg_code(y))

    def mul_code(self, x: int, y: int) -> int:
        """Polynomial-basis product; independent of the acceleration tables."""
        if self.char2:
            r = 0
            hi = 1 << self.n
            while y:
                if y & 1:
                    r ^= x
                y >>= 1
                x <<= 1
                if x & hi:
                    x ^= self._mod_code
            return r
        p, n = self.p, self.n
        xd, yd = self.coeffs_of(x), self.coeffs_of(y)
        prod = [0] * (2 * n - 1)
        for i, xi in enumerate(xd):
            if xi:
                for j, yj in enumerate(yd):
                    prod[i + j] = (prod[i + j] + xi * yj) % p
        rem = _poly_rem(prod, self.modulus, p) if len(prod) > n else prod + [0] * (n - len(prod))
        return sum(c * w for c, w in zip(rem, self._pows))

    def pow_code(self, x: int, e: int) -> int:
        if e == 0:
            return 1 % self.q
        if x == 0:
            return 0
        if e < 0:
            x = self.inv_code(x)
            e = -e
        e %= self.q - 1
        if e == 0:
            return 1
        r = 1
        while e:
            if e & 1:
                r = self.mul_code(r, x)
            x = self.mul_code(x, x)
            e >>= 1
        return r

    def inv_code(self, x: int) -> int:
        """Multiplicative inverse with the convention inv(0) = 0."""
        if x == 0:
            return 0
        return self.pow_code(x, self.q - 2)

    def trace_code(self, x: int) -> int:
        acc = x
        cur = x
        for _ in range(self.n - 1):
            cur = self.pow_code(cur, self.p)
            acc = self.add_code(acc, cur)
        if acc >= self.p:
            raise AssertionError("trace left the prime subfield")
        return acc

    def eta_code(self, x: int) -> int:
        """Quadratic character via x^((q-1)/2); only defined in odd characteristic."""
        if self.char2:
            raise FieldError("quadratic character is undefined in characteristic 2")
        if x == 0:
            return 0
        r = self.pow_code(x, (self.q - 1) // 2)
        return 1 if r == 1 else -1

    def scalar_mul_code(self, k: int, x: int) -> int:
        """Product of x with the prime-subfield constant k."""
        return self.mul_code(k % self.p, x)

    # -- lazy acceleration tables -------------------------------------------------

    def tables(self) -> SimpleNamespace:
        """Build (once) and return numpy acceleration tables.

        Attributes: exp, log, inv, tr, gen, frob; odd characteristic adds
        add (q x q), neg, eta.  All code-indexed.
        """
        t = self._tab
        if t is not None:
            return t
        with self._lock:
            if self._tab is None:
                self._tab = self._build_tables()
        return self._tab

    def _find_generator(self) -> int:
        import sympy

        if self.q == 2:
            return 1
        order = self.q - 1
        prim_factors = list(sympy.factorint(order))
        for g in range(2, self.q):
            if all(self.pow_code(g, order // r) != 1 for r in prim_factors):
                return g
        raise AssertionError("no generator found")

    def _build_tables(self) -> SimpleNamespace:
        if self.q > _TABLE_LIMIT:
            raise FieldError(f"acceleration tables unsupported for q > {_TABLE_LIMIT}")
        p, n, q = self.p, self.n, self.q
        gen = self._find_generator()
        exp = np.empty(max(q - 1, 1), dtype=np.int64)
        cur = 1
        for i in range(q - 1):
            exp[i] = cur
            cur = self.mul_code(cur, gen)
        if cur != 1:
            raise AssertionError("generator order mismatch")
        log = np.full(q, -1, dtype=np.int64)
        log[exp] = np.arange(max(q - 1, 1), dtype=np.int64)

        inv = np.zeros(q, dtype=np.int64)
        if q > 1:
            nz = np.arange(1, q, dtype=np.int64)
            inv[nz] = exp[(q - 1 - log[nz]) % (q - 1)]

        frob = np.zeros(q, dtype=np.int64)
        if q > 1:
            nz = np.arange(1, q, dtype=np.int64)
            frob[nz] = exp[(log[nz] * p) % (q - 1)]

        tr_acc = np.arange(q, dtype=np.int64)
        if self.char2:
            cur_v = np.arange(q, dtype=np.int64)
            for _ in range(n - 1):
                cur_v = frob[cur_v]
                tr_acc = tr_acc ^ cur_v
            tr = tr_acc
        else:
            dig = self._digit_matrix()
            acc_dig = dig.copy()
            cur_v = np.arange(q, dtype=np.int64)
            for _ in range(n - 1):
                cur_v = frob[cur_v]
                acc_dig = (acc_dig + dig[cur_v]) % p
            if n > 1 and np.any(acc_dig[:, 1:]):
                raise AssertionError("trace left the prime subfield")
            tr = acc_dig[:, 0].astype(np.int64)
        if np.any(tr >= p):
            raise AssertionError("trace out of range")

        ns = SimpleNamespace(gen=gen, exp=exp, log=log, inv=inv, frob=frob, tr=tr,
                             add=None, neg=None, eta=None)
        if not self.char2:
            dig = self._digit_matrix()
            neg = ((p - dig) % p) @ np.asarray(self._pows, dtype=np.int64)
            ns.neg = neg.astype(np.int64)
            eta = np.where(log % 2 == 0, 1, -1).astype(np.int8)
            eta[0] = 0
            ns.eta = eta
            if self.q <= _ADD_TABLE_LIMIT:
                s = (dig[:, None, :] + dig[None, :, :]) % p
                ns.add = (s @ np.asarray(self._pows, dtype=np.int64)).astype(np.int64)
        return ns

    def _digit_matrix(self) -> np.ndarray:
        ids = np.arange(self.q, dtype=np.int64)
        return np.stack([(ids // w) % self.p for w in self._pows], axis=1)

    # -- vectorized arithmetic on code arrays --------------------------------------

    def vadd(self, X, Y):
        if self.char2:
            return np.bitwise_xor(X, Y)
        t = self.tables()
        if t.add is not None:
            return t.add[X, Y]
        raise FieldError("vectorized addition needs the dense table (q too large)")

    def vsub(self, X, Y):
        if self.char2:
            return np.bitwise_xor(X, Y)
        t = self.tables()
        return self.vadd(X, t.neg[Y])

    def vmul(self, X, Y):
        t = self.tables()
        X = np.asarray(X, dtype=np.int64)
        Y = np.asarray(Y, dtype=np.int64)
        out = t.exp[(t.log[X] + t.log[Y]) % (self.q - 1)]
        return np.where((X == 0) | (Y == 0), 0, out)

    def vinv(self, X):
        return self.tables().inv[X]

    def vpow(self, X, e: int):
        t = self.tables()
        X = np.asarray(X, dtype=np.int64)
        if e == 0:
            return np.ones_like(X)
        out = t.exp[(t.log[X] * (e % (self.q - 1))) % (self.q - 1)]
        return np.where(X == 0, 0, out)


class FieldElement:
    """Immutable element of a Field; supports +, -, *, /, ** and equality."""

    __slots__ = ("field", "code")

    def __init__(self, field: Field, code: int):
        self.field = field
        self.code = code

    # -- presentation ------------------------------------------------------------

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field.coeffs_of(self.code)

    @property
    def text(self) -> str:
        return ",".join(str(c) for c in self.coeffs)

    def __repr__(self):
        return f"<{self.text} in GF({self.field.p}^{self.field.n})>"

    def __eq__(self, other):
        return (isinstance(other, FieldElement)
                and self.field == other.field and self.code == other.code)

    def __hash__(self):
        return hash((self.field.p, self.field.n, self.field.modulus, self.code))

    def __bool__(self):
        return self.code != 0

    # -- arithmetic ----------------------------------------------------------------

    def _peer(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldError("operands come from different fields")
            return other
        raise TypeError(f"cannot combine FieldElement with {type(other).__name__}")

    def __add__(self, other):
        o = self._peer(other)
        return FieldElement(self.field, self.field.add_code(self.code, o.code))

    def __sub__(self, other):
        o = self._peer(other)
        return FieldElement(self.field, self.field.sub_code(self.code, o.code))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg_code(self.code))

    def __mul__(self, other):
        o = self._peer(other)
        return FieldElement(self.field, self.field.mul_code(self.code, o.code))

    def __truediv__(self, other):
        o = self._peer(other)
        return FieldElement(self.field, self.field.mul_code(self.code, self.field.inv_code(o.code)))

    def __pow__(self, e: int):
        if not isinstance(e, (int, np.integer)):
            raise TypeError("exponent must be an integer")
        return FieldElement(self.field, self.field.pow_code(self.code, int(e)))

    def inv(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv_code(self.code))


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------

_FIELD_CACHE: dict[tuple, Field] = {}
_FIELD_CACHE_LOCK = threading.Lock()

_NATIVE_LIMIT = 1 << 62


def make_field(p: int, n: int, modulus=None) -> Field:
    """Construct (or fetch the cached) GF(p^n).

    modulus: optional length-(n+1) little-endian coefficient sequence of a
    monic irreducible polynomial; defaults to the first irreducible in
    ascending code order.
    """
    import sympy

    p = int(p)
    n = int(n)
    if p < 2 or not sympy.isprime(p):
        raise FieldError(f"p={p} is not prime")
    if n < 1:
        raise FieldError(f"n={n} must be a positive integer")
    if p ** n > _NATIVE_LIMIT:
        raise FieldError(f"q=p^n exceeds the supported native-integer range ({p}^{n})")
    if modulus is None:
        mod = _canonical_modulus(p, n)
    else:
        mod = tuple(int(c) % p for c in modulus)
        if len(mod) != n + 1:
            raise FieldError(f"modulus must have n+1={n + 1} coefficients")
        if mod[-1] != 1:
            raise FieldError("modulus must be monic")
        if not _is_irreducible(mod, p):
            raise FieldError("modulus is reducible")
    key = (p, n, mod)
    with _FIELD_CACHE_LOCK:
        fld = _FIELD_CACHE.get(key)
        if fld is None:
            fld = Field(p, n, mod)
            _FIELD_CACHE[key] = fld
    return fld


def arith(kind: str, x: FieldElement, y=None) -> FieldElement:
    """Dispatch add | sub | mul | inv | pow on field elements."""
    if kind in ("add", "sub", "mul"):
        if not isinstance(y, FieldElement):
            raise FieldError(f"{kind} needs a second field element")
        if y.field != x.field:
            raise FieldError("operands come from different fields")
        return {"add": x.__add__, "sub": x.__sub__, "mul": x.__mul__}[kind](y)
    if kind == "inv":
        return x.inv()
    if kind == "pow":
        if not isinstance(y, (int, np.integer)):
            raise FieldError("pow needs an integer exponent")
        return x ** int(y)
    raise FieldError(f"unknown arithmetic kind {kind!r}")


def trace(x: FieldElement) -> int:
    """Absolute trace into Z_p, returned as an integer in [0, p)."""
    return x.field.trace_code(x.code)


def quadratic_character(x: FieldElement) -> int:
    """eta(x) in {-1, 0, 1}; raises in characteristic 2."""
    return x.field.eta_code(x.code)


def _sqrt_odd(field: Field, d: int) -> int:
    """Tonelli-Shanks square root of a quadratic residue d != 0."""
    q = field.q
    if q % 4 == 3:
        return field.pow_code(d, (q + 1) // 4)
    s, t = 0, q - 1
    while t % 2 == 0:
        s += 1
        t //= 2
    z = 2 % q
    while field.eta_code(z) != -1:
        z += 1
    m = s
    c = field.pow_code(z, t)
    u = field.pow_code(d, t)
    r = field.pow_code(d, (t + 1) // 2)
    while u != 1:
        # find least i with u^(2^i) = 1
        i = 0
        probe = u
        while probe != 1:
            probe = field.mul_code(probe, probe)
            i += 1
        b = c
        for _ in range(m - i - 1):
            b = field.mul_code(b, b)
        m = i
        c = field.mul_code(b, b)
        u = field.mul_code(u, c)
        r = field.mul_code(r, b)
    return r


def _half_trace(field: Field, c: int) -> int:
    """For odd n in characteristic 2: a solution y of y^2 + y = c when trace(c)=0."""
    acc = c
    cur = c
    for _ in range((field.n - 1) // 2):
        cur = field.pow_code(cur, 4)
        acc = field.add_code(acc, cur)
    return acc


def _artin_schreier_solve(field: Field, c: int) -> int:
    """Solve y^2 + y = c over GF(2^n) by F2-linear elimination (any n)."""
    n = field.n
    imgs = []
    for j in range(n):
        e = 1 << j
        imgs.append(field.mul_code(e, e) ^ e)
    # Gaussian elimination on the images with augmented right-hand side c.
    rows = [(imgs[j], 1 << j) for j in range(n)]
    sol = 0
    rhs = c
    used = []
    for bit in range(n):
        pivot = None
        for idx, (img, comb) in enumerate(rows):
            if img >> bit & 1:
                pivot = idx
                break
        if pivot is None:
            continue
        pimg, pcomb = rows.pop(pivot)
        used.append((bit, pimg, pcomb))
        rows = [(img ^ pimg, comb ^ pcomb) if img >> bit & 1 else (img, comb)
                for img, comb in rows]
        if rhs >> bit & 1:
            rhs ^= pimg
            sol ^= pcomb
    if rhs != 0:
        return -1  # no solution (trace 1)
    return sol


def solve_quadratic(A: FieldElement, B: FieldElement, C: FieldElement) -> frozenset:
    """All roots X of A*X^2 + B*X + C = 0 in the common field (A != 0)."""
    field = A.field
    if B.field != field or C.field != field:
        raise FieldError("operands come from different fields")
    if A.code == 0:
        raise FieldError("leading coefficient A must be nonzero")
    a, b, c = A.code, B.code, C.code
    if field.char2:
        if b == 0:
            # X^2 = C/A has the unique root (C/A)^(2^(n-1))
            rhs = field.mul_code(c, field.inv_code(a))
            root = field.pow_code(rhs, 2 ** (field.n - 1))
            return frozenset({FieldElement(field, root)})
        # substitute X = (B/A) Y: reduces to Y^2 + Y = AC/B^2
        ratio = field.mul_code(b, field.inv_code(a))
        w = field.mul_code(field.mul_code(a, c), field.inv_code(field.mul_code(b, b)))
        if field.trace_code(w) != 0:
            return frozenset()
        if field.n % 2 == 1:
            y0 = _half_trace(field, w)
        else:
            y0 = _artin_schreier_solve(field, w)
            if y0 < 0:
                return frozenset()
        roots = {field.mul_code(ratio, y0), field.mul_code(ratio, y0 ^ 1)}
        return frozenset(FieldElement(field, r) for r in roots)
    # odd characteristic: discriminant split
    disc = field.sub_code(field.mul_code(b, b),
                          field.mul_code(field.scalar_mul_code(4, a), c))
    inv2a = field.inv_code(field.scalar_mul_code(2, a))
    if disc == 0:
        root = field.mul_code(field.neg_code(b), inv2a)
        return frozenset({FieldElement(field, root)})
    if field.eta_code(disc) == -1:
        return frozenset()
    s = _sqrt_odd(field, disc)
    r1 = field.mul_code(field.add_code(field.neg_code(b), s), inv2a)
    r2 = field.mul_code(field.sub_code(field.neg_code(b), s), inv2a)
    return frozenset({FieldElement(field, r1), FieldElement(field, r2)})


def special_elements(field: Field, kind: str, m: int | None = None, x: FieldElement | None = None):
    """Named special values: cube roots of unity, primitive m-th roots,
    and membership tests for the subfield fixed by x -> x^(p^m)."""
    if kind == "cube_roots_of_unity":
        if (field.q - 1) % 3 != 0:
            return (field.one,)
        t = field.tables()
        w = int(t.exp[(field.q - 1) // 3])
        roots = sorted({1 % field.q, w, field.mul_code(w, w)})
        return tuple(FieldElement(field, r) for r in roots)
    if kind == "primitive_mth_root":
        if m is None or m < 1:
            raise FieldError("primitive_mth_root needs a positive m")
        if (field.q - 1) % m != 0:
            raise FieldError(f"m={m} does not divide q-1={field.q - 1}")
        t = field.tables()
        return FieldElement(field, int(t.exp[(field.q - 1) // m % max(field.q - 1, 1)]))
    if kind == "subfield_member_test":
        if m is None or m < 1:
            raise FieldError("subfield_member_test needs a positive m")
        if x is None or x.field != field:
            raise FieldError("subfield_member_test needs an element of this field")
        return field.pow_code(x.code, field.p ** m) == x.code
    raise FieldError(f"unknown special element kind {kind!r}")


def omega(field: Field) -> FieldElement:
    """The least primitive cube root of unity (requires 3 | q-1)."""
    roots = special_elements(field, "cube_roots_of_unity")
    if len(roots) != 3:
        raise FieldError("field has no primitive cube root of unity")
    return roots[1]
