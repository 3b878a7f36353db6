"""Exact arithmetic in cyclotomic-rational fields Q(zeta_n).

A scalar is a polynomial in zeta_n with rational coefficients, reduced
modulo the n-th cyclotomic polynomial, so equality of scalars is equality
of coefficient vectors.  n = 1 gives plain Q.
"""

from math import gcd

from .errors import FieldMismatch, NotASubfield, NotCoprime, ScalarParseError

try:
    from gmpy2 import mpq as _Q
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    from fractions import Fraction as _Q

QZERO = _Q(0)
QONE = _Q(1)


def rational(num, den=1):
    """Exact rational from integers (or a rational-like object)."""
    return _Q(num, den)


def _cyclotomic_poly(n):
    """Monic coefficient list (low to high) of Phi_n over Z, via x^n - 1 = prod Phi_d."""
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d:
            continue
        phi_d = _cyclotomic_poly(d) if d > 1 else [-1, 1]
        poly = _polydiv_exact(poly, phi_d)
    return poly


def _polydiv_exact(num, den):
    """Exact division of integer polynomials, low-to-high coefficient lists."""
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for k in range(len(out) - 1, -1, -1):
        c = num[k + len(den) - 1]
        assert c % den[-1] == 0
        c //= den[-1]
        out[k] = c
        for i, dc in enumerate(den):
            num[k + i] -= c * dc
    assert all(c == 0 for c in num)
    return out


class FieldSpec:
    """The field Q(zeta_n); instances are interned by conductor."""

    _cache = {}

    def __new__(cls, conductor):
        if conductor < 1:
            raise ValueError("conductor must be >= 1")
        spec = cls._cache.get(conductor)
        if spec is None:
            spec = super().__new__(cls)
            spec._init(conductor)
            cls._cache[conductor] = spec
        return spec

    def _init(self, n):
        self.conductor = n
        cyclo = _cyclotomic_poly(n) if n > 1 else [-1, 1]
        self.degree = len(cyclo) - 1
        m = self.degree
        # x^k mod Phi_n for k = m .. 2m-2, as coefficient tuples
        red = []
        row = [_Q(-c) for c in cyclo[:m]]
        red.append(tuple(row))
        for _ in range(m - 2):
            top = row[m - 1]
            row = [QZERO] + row[: m - 1]
            if top:
                row = [row[i] + top * red[0][i] for i in range(m)]
            red.append(tuple(row))
        self._reduction = red
        self.zero = Scalar(self, (QZERO,) * m)
        self.one = Scalar(self, (QONE,) + (QZERO,) * (m - 1))
        # zeta^e for e = 0..n-1
        pows = []
        cur = self.one
        zeta = self._zeta_raw()
        for _ in range(n):
            pows.append(cur)
            cur = cur * zeta
        assert cur == self.one
        self._zeta_pows = pows

    def _zeta_raw(self):
        m = self.degree
        if self.conductor == 1:
            return self.one
        coeffs = [QZERO] * m
        if m > 1:
            coeffs[1] = QONE
            return Scalar(self, tuple(coeffs))
        # n = 2: zeta = -1
        return Scalar(self, (_Q(-1),))

    def zeta(self, e=1):
        """The root of unity zeta_n^e."""
        return self._zeta_pows[e % self.conductor]

    def from_rational(self, num, den=1):
        m = self.degree
        return Scalar(self, (_Q(num, den),) + (QZERO,) * (m - 1))

    def from_int(self, k):
        return self.from_rational(k)

    def __repr__(self):
        return "Q(zeta_%d)" % self.conductor if self.conductor > 1 else "Q"

    def __reduce__(self):
        return (FieldSpec, (self.conductor,))


class Scalar:
    """Immutable element of Q(zeta_n): coefficient tuple of length phi(n)."""

    __slots__ = ("field", "coeffs", "_hash")

    def __init__(self, field, coeffs):
        self.field = field
        self.coeffs = coeffs
        self._hash = None

    # -- ring structure ------------------------------------------------------

    def __add__(self, other):
        if self.field is not other.field:
            raise FieldMismatch("%r vs %r" % (self.field, other.field))
        a, b = self.coeffs, other.coeffs
        return Scalar(self.field, tuple(a[i] + b[i] for i in range(len(a))))

    def __sub__(self, other):
        if self.field is not other.field:
            raise FieldMismatch("%r vs %r" % (self.field, other.field))
        a, b = self.coeffs, other.coeffs
        return Scalar(self.field, tuple(a[i] - b[i] for i in range(len(a))))

    def __neg__(self):
        return Scalar(self.field, tuple(-c for c in self.coeffs))

    def __mul__(self, other):
        if self.field is not other.field:
            raise FieldMismatch("%r vs %r" % (self.field, other.field))
        a, b = self.coeffs, other.coeffs
        m = len(a)
        if m == 1:
            return Scalar(self.field, (a[0] * b[0],))
        # fast paths: purely rational factor
        if not any(a[1:]):
            c = a[0]
            if not c:
                return self.field.zero
            return Scalar(self.field, tuple(c * x for x in b))
        if not any(b[1:]):
            c = b[0]
            if not c:
                return self.field.zero
            return Scalar(self.field, tuple(c * x for x in a))
        prod = [QZERO] * (2 * m - 1)
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in enumerate(b):
                if bj:
                    prod[i + j] += ai * bj
        red = self.field._reduction
        out = prod[:m]
        for k in range(m, 2 * m - 1):
            c = prod[k]
            if c:
                row = red[k - m]
                for i in range(m):
                    if row[i]:
                        out[i] += c * row[i]
        return Scalar(self.field, tuple(out))

    def scale(self, q):
        """Multiply by a raw rational."""
        if not q:
            return self.field.zero
        return Scalar(self.field, tuple(q * c for c in self.coeffs))

    def __truediv__(self, other):
        return self * other.inverse()

    def inverse(self):
        """Multiplicative inverse via extended Euclid in Q[x] mod Phi_n."""
        if self.is_zero():
            raise ZeroDivisionError("scalar division by zero")
        m = self.field.degree
        if m == 1:
            return Scalar(self.field, (QONE / self.coeffs[0],))
        if not any(self.coeffs[1:]):
            return Scalar(self.field, (QONE / self.coeffs[0],) + (QZERO,) * (m - 1))
        cyclo = _cyclotomic_poly(self.field.conductor)
        r0 = [_Q(c) for c in cyclo]
        r1 = list(self.coeffs)
        s0, s1 = [QZERO], [QONE]
        while True:
            while r1 and not r1[-1]:
                r1.pop()
            if len(r1) == 1:
                inv = QONE / r1[0]
                out = [c * inv for c in s1] + [QZERO] * m
                return Scalar(self.field, tuple(out[:m]))
            q, r = _polydivmod(r0, r1)
            s = _polysub(s0, _polymul(q, s1))
            r0, r1, s0, s1 = r1, r, s1, s

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        out = self.field.one
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    # -- predicates / comparison ---------------------------------------------

    def is_zero(self):
        return not any(self.coeffs)

    def is_one(self):
        return self.coeffs[0] == 1 and not any(self.coeffs[1:])

    def is_rational(self):
        return not any(self.coeffs[1:])

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.field is other.field and self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field.conductor, self.coeffs))
        return self._hash

    # -- Galois / embeddings ---------------------------------------------------

    def conjugate_root(self, k):
        """Apply the automorphism zeta_n -> zeta_n^k; requires gcd(k, n) = 1."""
        n = self.field.conductor
        if gcd(k, n) != 1:
            raise NotCoprime("gcd(%d, %d) != 1" % (k, n))
        pows = self.field._zeta_pows
        out = self.field.zero
        for i, c in enumerate(self.coeffs):
            if c:
                out = out + pows[(i * k) % n].scale(c)
        return out

    def conj(self):
        """Complex conjugation zeta -> zeta^(n-1)."""
        return self.conjugate_root(self.field.conductor - 1)

    def embed(self, into):
        """Image in Q(zeta_N) under zeta_n -> zeta_N^(N/n); n must divide N."""
        n = self.field.conductor
        N = into.conductor
        if N % n:
            raise NotASubfield("Q(zeta_%d) is not a subfield of Q(zeta_%d)" % (n, N))
        step = N // n
        pows = into._zeta_pows
        out = into.zero
        for i, c in enumerate(self.coeffs):
            if c:
                out = out + pows[(i * step) % N].scale(c)
        return out

    # -- text form -------------------------------------------------------------

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            elif c == 1:
                terms.append("z" if i == 1 else "z^%d" % i)
            elif c == -1:
                terms.append("-z" if i == 1 else "-z^%d" % i)
            else:
                terms.append("%s*%s" % (c, "z" if i == 1 else "z^%d" % i))
        if not terms:
            return "0"
        out = terms[0]
        for t in terms[1:]:
            out += " - " + t[1:] if t.startswith("-") else " + " + t
        return out

    def __repr__(self):
        return "<%s in %r>" % (self, self.field)

    def to_complex(self):
        """Float rendering for display only; never used in computations."""
        import cmath
        n = self.field.conductor
        z = cmath.exp(2j * cmath.pi / n)
        return sum(float(c) * z ** i for i, c in enumerate(self.coeffs))


def _polydivmod(num, den):
    num = list(num)
    dn = len(den) - 1
    out = [QZERO] * max(len(num) - dn, 0)
    inv = QONE / den[-1]
    for k in range(len(out) - 1, -1, -1):
        c = num[k + dn] * inv
        out[k] = c
        if c:
            for i, dc in enumerate(den):
                num[k + i] -= c * dc
    while num and not num[-1]:
        num.pop()
    return out, (num or [QZERO])


def _polymul(a, b):
    out = [QZERO] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] += ai * bj
    return out


def _polysub(a, b):
    out = list(a) + [QZERO] * (len(b) - len(a))
    for i, bi in enumerate(b):
        out[i] -= bi
    return out


def scalar_arith(a, b, op):
    """Dispatch form of the four field operations (used by the CLI layer)."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError("unknown op %r" % op)


def embed(a, into):
    return a.embed(into)


def conjugate_root(a, k):
    return a.conjugate_root(k)


# -- parsing -------------------------------------------------------------------

def parse_scalar(text, field):
    """Parse "3/2 + 1/2*z^3" (z = zeta_n) into a Scalar of the given field."""
    s = text.replace(" ", "")
    if not s:
        raise ScalarParseError("empty scalar string")
    # split into signed terms
    terms = []
    i = 0
    cur = ""
    for ch in s:
        if ch in "+-" and cur and cur[-1] not in "+-*/^":
            terms.append(cur)
            cur = ch
        else:
            cur += ch
    terms.append(cur)
    out = field.zero
    for term in terms:
        out = out + _parse_term(term, field)
    return out


def _parse_term(term, field):
    sign = 1
    while term and term[0] in "+-":
        if term[0] == "-":
            sign = -sign
        term = term[1:]
    if not term:
        raise ScalarParseError("dangling sign")
    coeff = QONE
    power = 0
    for factor in term.split("*"):
        if not factor:
            raise ScalarParseError("empty factor in %r" % term)
        if factor[0] == "z":
            rest = factor[1:]
            if rest == "":
                power += 1
            elif rest.startswith("^"):
                try:
                    power += int(rest[1:])
                except ValueError as exc:
                    raise ScalarParseError("bad exponent in %r" % factor) from exc
            else:
                raise ScalarParseError("bad factor %r" % factor)
        else:
            try:
                if "/" in factor:
                    num, den = factor.split("/")
                    coeff *= _Q(int(num), int(den))
                else:
                    coeff *= _Q(int(factor))
            except (ValueError, ZeroDivisionError) as exc:
                raise ScalarParseError("bad rational %r" % factor) from exc
    if power and field.conductor == 1:
        raise ScalarParseError("z is not defined over Q (conductor 1)")
    return field.zeta(power).scale(sign * coeff)
