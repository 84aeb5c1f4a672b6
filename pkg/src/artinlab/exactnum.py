"""Exact arithmetic in the real cyclotomic fields Q(2cos(pi/L)).

Every Coxeter matrix entry -2cos(pi/m) lives in Q(theta) with theta = 2cos(pi/L)
whenever m divides L.  Elements are stored as integer coefficient tuples over a
common denominator in the power basis 1, theta, ..., theta^(d-1), reduced
modulo the minimal polynomial of theta.  Signs are decided by a floating-point
filter with a generous error bound, falling back to exact rational interval
refinement around theta when the filter cannot decide.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Iterable, Sequence

Poly = tuple  # coefficient tuple, lowest degree first


def _trim(p: Sequence) -> tuple:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def _poly_mul(a: Sequence, b: Sequence) -> tuple:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _trim(out)


def _poly_sub(a: Sequence, b: Sequence) -> tuple:
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


def _poly_divmod(a: Sequence, b: Sequence) -> tuple[tuple, tuple]:
    a = [Fraction(x) for x in a]
    b = _trim(b)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lead = Fraction(b[-1])
    while len(_trim(a)) >= len(b):
        a = list(_trim(a))
        shift = len(a) - len(b)
        c = a[-1] / lead
        q[shift] = c
        for i, y in enumerate(b):
            a[i + shift] -= c * y
    return _trim(q), _trim(a)


def _cyclotomic(n: int) -> tuple:
    """Integer coefficients of the n-th cyclotomic polynomial."""
    return _cyclotomic_cached(n)


@lru_cache(maxsize=None)
def _cyclotomic_cached(n: int) -> tuple:
    num = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            q, r = _poly_divmod(num, _cyclotomic_cached(d))
            assert not r
            num = list(q)
    return tuple(int(c) for c in num)


def _chebyshev_like(k: int) -> tuple:
    """Integer polynomial P_k with P_k(2cos a) = 2cos(k a)."""
    p0, p1 = (2,), (0, 1)
    if k == 0:
        return p0
    for _ in range(k - 1):
        p0, p1 = p1, _poly_sub(_poly_mul((0, 1), p1), p0)
    return p1


@lru_cache(maxsize=None)
def minimal_polynomial_2cos(n: int) -> tuple:
    """Minimal polynomial of 2cos(2pi/n) over Q, monic with integer coefficients.

    Obtained from the palindromic cyclotomic polynomial Phi_n(z) by rewriting
    z^(-k) Phi_n(z) as a polynomial in z + 1/z.
    """
    if n in (1, 2):
        return (-2, 1) if n == 1 else (2, 1)
    phi = list(_cyclotomic(n))
    k = (len(phi) - 1) // 2
    # palindromic: phi[k+j] == phi[k-j]; z^j + z^-j = P_j(z + 1/z)
    result: tuple = (phi[k],)
    for j in range(1, k + 1):
        result = _poly_sub(result, tuple(-phi[k + j] * c for c in _chebyshev_like(j)))
    return tuple(int(c) for c in result)


class CycloField:
    """The field Q(theta), theta = 2cos(pi/L).  Instances are cached per L."""

    _cache: dict[int, "CycloField"] = {}

    def __new__(cls, L: int):
        if L < 1:
            raise ValueError("conductor must be positive")
        if L in cls._cache:
            return cls._cache[L]
        self = super().__new__(cls)
        self.L = L
        self.minpoly = minimal_polynomial_2cos(2 * L)
        self.degree = len(self.minpoly) - 1
        self._interval = None
        self.theta_float = 2 * math.cos(math.pi / L)
        self._powers_cache: dict[int, tuple] = {}
        cls._cache[L] = self
        return self

    def __repr__(self):
        return f"CycloField(L={self.L})"

    def __reduce__(self):
        return (CycloField, (self.L,))

    # construction -----------------------------------------------------
    def __call__(self, value) -> "ExactReal":
        if isinstance(value, ExactReal):
            return self.embed(value)
        if isinstance(value, str):
            return self.parse(value)
        return ExactReal(self, (Fraction(value),))

    def zero(self) -> "ExactReal":
        return ExactReal(self, ())

    def one(self) -> "ExactReal":
        return ExactReal(self, (Fraction(1),))

    def theta(self) -> "ExactReal":
        return ExactReal(self, (0, 1))

    def two_cos(self, m) -> "ExactReal":
        """2cos(pi/m) for m dividing L, m in (1, 2, 3), or m = inf (returns 2)."""
        if m == math.inf or m is None:
            return self(2)
        m = int(m)
        if m in (1, 2, 3):
            return self({1: -2, 2: 0, 3: 1}[m])
        if self.L % m:
            raise ValueError(f"2cos(pi/{m}) is not in Q(2cos(pi/{self.L}))")
        return ExactReal(self, _chebyshev_like(self.L // m))

    def embed(self, x: "ExactReal") -> "ExactReal":
        """Map an element of a subfield Q(2cos(pi/L')) with L' | L into this field."""
        if x.field is self:
            return x
        src = x.field
        if src.degree == 1:
            return ExactReal(self, (x.coeffs[0],) if x.coeffs else ())
        if self.L % src.L:
            raise ValueError(f"{src} does not embed in {self}")
        image = ExactReal(self, _chebyshev_like(self.L // src.L))
        out = self.zero()
        power = self.one()
        for c in x.coeffs:
            out = out + power * c
            power = power * image
        return out

    def parse(self, text: str) -> "ExactReal":
        """Parse a polynomial in ``t`` (theta) with rational coefficients, e.g. ``"1/2*t^2 - t + 3"``."""
        s = text.replace(" ", "").replace("**", "^")
        if not s:
            raise ValueError("empty field element")
        if s[0] not in "+-":
            s = "+" + s
        terms = re.findall(r"[+-][^+-]+", s)
        if "".join(terms) != s:
            raise ValueError(f"cannot parse field element {text!r}")
        acc: dict[int, Fraction] = {}
        for term in terms:
            sign = -1 if term[0] == "-" else 1
            body = term[1:]
            m = re.fullmatch(r"(?:(\d+(?:/\d+)?)\*?)?(t(?:\^(\d+))?)?", body)
            if not m or (m.group(1) is None and m.group(2) is None):
                raise ValueError(f"cannot parse term {term!r} in {text!r}")
            coef = Fraction(m.group(1)) if m.group(1) else Fraction(1)
            power = 0 if m.group(2) is None else int(m.group(3) or 1)
            acc[power] = acc.get(power, Fraction(0)) + sign * coef
        coeffs = [Fraction(0)] * (max(acc) + 1)
        for k, v in acc.items():
            coeffs[k] = v
        return ExactReal(self, coeffs)

    # theta enclosure ------------------------------------------------------
    def theta_interval(self, level: int = 0) -> tuple[Fraction, Fraction]:
        """Rational interval [lo, hi] containing theta and no other root of the minimal polynomial.

        Width is at most 2^-(64 + 32*level)."""
        if self.degree == 1:
            v = Fraction(-self.minpoly[0], self.minpoly[1])
            return v, v
        if self._interval is None:
            lo = Fraction(2 * math.cos(2 * math.pi / self.L))
            hi = Fraction(2)
            self._interval = (lo, hi)
            self._refine(64)
        target = Fraction(1, 2 ** (64 + 32 * level))
        while self._interval[1] - self._interval[0] > target:
            self._refine(32)
        return self._interval

    def _refine(self, steps: int) -> None:
        lo, hi = self._interval
        f_lo = _sign(_eval_rational(self.minpoly, lo))
        for _ in range(steps):
            mid = (lo + hi) / 2
            # keep denominators powers of two
            mid = Fraction(round(mid * 2**200), 2**200) if mid.denominator > 2**200 else mid
            f_mid = _sign(_eval_rational(self.minpoly, mid))
            if f_mid == 0:
                lo = hi = mid
                break
            if f_mid == f_lo:
                lo = mid
            else:
                hi = mid
        self._interval = (lo, hi)
        self._powers_cache.clear()

    def _powers(self) -> tuple:
        key = id(self._interval)
        if key not in self._powers_cache:
            lo, hi = self._interval
            lp, hp = [Fraction(1)], [Fraction(1)]
            for _ in range(self.degree):
                lp.append(lp[-1] * lo)
                hp.append(hp[-1] * hi)
            self._powers_cache = {key: (lp, hp)}
        return self._powers_cache[key]


def _eval_rational(p: Sequence, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _int_det(M: list) -> int:
    """Determinant of an integer matrix by fraction-free Bareiss elimination."""
    n = len(M)
    if n == 0:
        return 1
    A = [list(r) for r in M]
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k]), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def _reduce_int(p: list, minpoly: tuple) -> list:
    """Reduce an integer polynomial modulo a monic integer polynomial, in place."""
    d = len(minpoly) - 1
    for k in range(len(p) - 1, d - 1, -1):
        c = p[k]
        if c:
            base = k - d
            for i in range(d):
                p[base + i] -= c * minpoly[i]
            p[k] = 0
    del p[d:]
    return p


def _normalize(num: list, den: int) -> tuple[tuple, int]:
    while num and num[-1] == 0:
        num.pop()
    if not num:
        return (), 1
    if den < 0:
        num = [-x for x in num]
        den = -den
    g = den
    for x in num:
        g = math.gcd(g, x)
        if g == 1:
            break
    if g != 1:
        num = [x // g for x in num]
        den //= g
    return tuple(num), den


class ExactReal:
    """An element of Q(2cos(pi/L)); immutable and hashable.

    Stored as integer numerators over one positive common denominator."""

    __slots__ = ("field", "num", "den", "_hash")

    def __init__(self, field: CycloField, coeffs: Iterable = (), *, _raw=None):
        self.field = field
        self._hash = None
        if _raw is not None:
            self.num, self.den = _raw
            return
        coeffs = [Fraction(c) for c in coeffs]
        den = 1
        for c in coeffs:
            den = den * c.denominator // math.gcd(den, c.denominator)
        num = [int(c * den) for c in coeffs]
        if len(num) > field.degree:
            if field.minpoly[-1] != 1:
                raise AssertionError("minimal polynomial must be monic")
            _reduce_int(num, field.minpoly)
        self.num, self.den = _normalize(num, den)

    @classmethod
    def _make(cls, field, num: list, den: int) -> "ExactReal":
        if len(num) > field.degree:
            _reduce_int(num, field.minpoly)
        return cls(field, _raw=_normalize(num, den))

    @property
    def coeffs(self) -> tuple:
        return tuple(Fraction(x, self.den) for x in self.num)

    # coercion -------------------------------------------------------------
    def _coerce(self, other) -> "ExactReal | None":
        if isinstance(other, ExactReal):
            if other.field is self.field:
                return other
            if other.field.degree == 1 or len(other.num) <= 1:
                return ExactReal(self.field, _raw=(other.num, other.den))
            if self.field.degree == 1:
                return None
            return self.field.embed(other) if self.field.L % other.field.L == 0 else None
        if isinstance(other, int):
            return ExactReal(self.field, _raw=((other,) if other else (), 1))
        if isinstance(other, Fraction):
            return ExactReal(self.field, _raw=((other.numerator,) if other else (), other.denominator))
        return None

    def _lift(self, other):
        """Bring self and other into a common field (self's, other's or raise)."""
        o = self._coerce(other)
        if o is not None:
            return self, o
        if isinstance(other, ExactReal):
            s = other._coerce(self)
            if s is not None:
                return s, other
        raise TypeError(f"cannot combine {self.field} with {other!r}")

    # arithmetic -------------------------------------------------------
    def __add__(self, other):
        a, b = self._lift(other)
        if not b.num:
            return a
        if not a.num:
            return b
        an, bn = a.num, b.num
        if a.den == b.den:
            den = a.den
            la, lb = len(an), len(bn)
            num = [(an[i] if i < la else 0) + (bn[i] if i < lb else 0) for i in range(max(la, lb))]
        else:
            den = a.den * b.den
            la, lb = len(an), len(bn)
            num = [(an[i] * b.den if i < la else 0) + (bn[i] * a.den if i < lb else 0) for i in range(max(la, lb))]
        return ExactReal(a.field, _raw=_normalize(num, den))

    __radd__ = __add__

    def __neg__(self):
        return ExactReal(self.field, _raw=(tuple(-x for x in self.num), self.den))

    def __sub__(self, other):
        a, b = self._lift(other)
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return ExactReal(self.field, _raw=_normalize([x * other for x in self.num], self.den))
        if isinstance(other, Fraction):
            return ExactReal(self.field, _raw=_normalize([x * other.numerator for x in self.num],
                                                         self.den * other.denominator))
        a, b = self._lift(other)
        an, bn = a.num, b.num
        if not an or not bn:
            return ExactReal(a.field, _raw=((), 1))
        if len(an) == 1:
            return ExactReal(a.field, _raw=_normalize([an[0] * x for x in bn], a.den * b.den))
        if len(bn) == 1:
            return ExactReal(a.field, _raw=_normalize([bn[0] * x for x in an], a.den * b.den))
        out = [0] * (len(an) + len(bn) - 1)
        for i, x in enumerate(an):
            if x:
                for j, y in enumerate(bn):
                    out[i + j] += x * y
        return ExactReal._make(a.field, out, a.den * b.den)

    __rmul__ = __mul__

    def inverse(self) -> "ExactReal":
        if not self.num:
            raise ZeroDivisionError("inverse of zero field element")
        if len(self.num) == 1:
            return ExactReal(self.field, _raw=_normalize([self.den], self.num[0]))
        # x^-1 = den * y with M y = e_0, M the integer matrix of multiplication by num
        d = self.field.degree
        cols = []
        col = list(self.num) + [0] * (d - len(self.num))
        for _ in range(d):
            cols.append(col)
            nxt = [0] + col
            _reduce_int(nxt, self.field.minpoly)
            col = nxt + [0] * (d - len(nxt))
        M = [[cols[j][i] for j in range(d)] for i in range(d)]
        det = _int_det(M)
        y = [(-1) ** i * _int_det([row[:i] + row[i + 1:] for row in M[1:]]) * self.den for i in range(d)]
        return ExactReal(self.field, _raw=_normalize(y, det))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self * (1 / Fraction(other))
        a, b = self._lift(other)
        return a * b.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out, base = ExactReal(self.field, _raw=((1,), 1)), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # comparison -------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, ExactReal) and other.field is self.field:
            return self.num == other.num and self.den == other.den
        if isinstance(other, (ExactReal, int, Fraction)):
            try:
                a, b = self._lift(other)
            except TypeError:
                return False
            return a.num == b.num and a.den == b.den
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if len(self.num) <= 1:
                self._hash = hash(Fraction(self.num[0], self.den) if self.num else 0)
            else:
                self._hash = hash((self.field.L, self.num, self.den))
        return self._hash

    def sign(self) -> int:
        return cyclo_sign(self)

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __bool__(self):
        return bool(self.num)

    def __float__(self):
        theta = 2 * math.cos(math.pi / self.field.L)
        return float(sum(x * theta**k for k, x in enumerate(self.num)) / self.den)

    def is_rational(self) -> bool:
        return len(self.num) <= 1

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is irrational")
        return Fraction(self.num[0], self.den) if self.num else Fraction(0)

    def __str__(self):
        if not self.num:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            if mono and abs(c) == 1:
                term = mono
            elif mono:
                term = f"{abs(c)}*{mono}"
            else:
                term = str(abs(c))
            parts.append(("-" if c < 0 else "+") + term)
        s = "".join(parts)
        return s[1:] if s.startswith("+") else s

    def __repr__(self):
        return f"ExactReal({self}; L={self.field.L})"


def cyclo_sign(x: ExactReal) -> int:
    """Sign of x under the real embedding theta = 2cos(pi/L).

    Zero iff the reduced coefficient tuple is empty; otherwise the polynomial is
    evaluated over a shrinking rational enclosure of theta until the enclosure
    excludes zero."""
    c = x.num
    if not c:
        return 0
    if len(c) == 1:
        return _sign(c[0])
    field = x.field
    if field.degree == 1:
        return _sign(_eval_rational(c, field.theta_interval()[0]))
    # filter: theta < 2, so the float evaluation error is far below sum |c_k| 2^k * 1e-12
    if max(abs(v) for v in c) < 2**50:
        theta = field.theta_float
        value = 0.0
        bound = 0.0
        power = 1.0
        for k, ck in enumerate(c):
            value += ck * power
            bound += abs(ck) * 2.0**k
            power *= theta
        if abs(value) > bound * 1e-12:
            return 1 if value > 0 else -1
    level = 0
    while True:
        field.theta_interval(level)
        lp, hp = field._powers()
        lo_sum = hi_sum = Fraction(0)
        for k, ck in enumerate(c):
            # theta > 0 whenever the degree exceeds one (L >= 4)
            if ck >= 0:
                lo_sum += ck * lp[k]
                hi_sum += ck * hp[k]
            else:
                lo_sum += ck * hp[k]
                hi_sum += ck * lp[k]
        if lo_sum > 0:
            return 1
        if hi_sum < 0:
            return -1
        level += 1


def field_for_labels(labels: Iterable) -> CycloField:
    """Smallest field of the form Q(2cos(pi/L)) holding 2cos(pi/m) for every label.

    Labels 2, 3 and infinity give rational cosines and do not enlarge L."""
    ms = [int(m) for m in labels if m != math.inf and m is not None and int(m) > 3]
    L = reduce(math.lcm, ms, 1)
    return CycloField(L)


def common_field(*fields: CycloField) -> CycloField:
    ls = [f.L for f in fields if f.degree > 1]
    return CycloField(reduce(math.lcm, ls, 1))


QQ = CycloField(1)
