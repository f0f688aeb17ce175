"""Exact arithmetic in the real quadratic field Q(sqrt(D)).

A QuadScalar is a + b*sqrt(D) with a, b rational and D a fixed squarefree
integer > 1.  Signs, equality, and all field operations are exact; a numeric
embedding into mpmath floats is provided for the approximation routines.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .errors import InputError


def is_squarefree(d: int) -> bool:
    if d < 1:
        return False
    p = 2
    while p * p <= d:
        if d % (p * p) == 0:
            return False
        while d % p == 0:
            d //= p
        p += 1
    return True


def check_field_param(D: int) -> int:
    if D <= 1 or not is_squarefree(D):
        raise InputError(f"field parameter D={D} must be squarefree and > 1")
    return D


@dataclass(frozen=True)
class QuadScalar:
    a: Fraction
    b: Fraction
    D: int

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        check_field_param(self.D)

    @classmethod
    def of(cls, value, D: int, irr=0) -> "QuadScalar":
        return cls(Fraction(value), Fraction(irr), D)

    def _coerce(self, other) -> "QuadScalar":
        if isinstance(other, QuadScalar):
            if other.D != self.D:
                raise InputError("mixed field parameters")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadScalar(Fraction(other), Fraction(0), self.D)
        raise TypeError(f"cannot coerce {other!r} into Q(sqrt({self.D}))")

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __add__(self, other):
        o = self._coerce(other)
        return QuadScalar(self.a + o.a, self.b + o.b, self.D)

    __radd__ = __add__

    def __neg__(self):
        return QuadScalar(-self.a, -self.b, self.D)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        return QuadScalar(self.a * o.a + self.D * self.b * o.b,
                          self.a * o.b + self.b * o.a, self.D)

    __rmul__ = __mul__

    def conj(self) -> "QuadScalar":
        return QuadScalar(self.a, -self.b, self.D)

    def norm(self) -> Fraction:
        return self.a * self.a - self.D * self.b * self.b

    def inverse(self) -> "QuadScalar":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("zero has no inverse in Q(sqrt(D))")
        return QuadScalar(self.a / n, -self.b / n, self.D)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def sign(self) -> int:
        """Exact sign of a + b*sqrt(D) as a real number."""
        if not self.b:
            return (self.a > 0) - (self.a < 0)
        if not self.a:
            return 1 if self.b > 0 else -1
        if self.a > 0 and self.b > 0:
            return 1
        if self.a < 0 and self.b < 0:
            return -1
        # mixed signs: compare a^2 with D b^2
        cmp = self.a * self.a - self.D * self.b * self.b
        s = (cmp > 0) - (cmp < 0)
        return s if self.a > 0 else -s

    def is_positive(self) -> bool:
        return self.sign() > 0

    def is_rational(self) -> bool:
        return not self.b

    def to_mpf(self):
        """Numeric value at the current mpmath working precision."""
        return (mpmath.mpf(self.a.numerator) / self.a.denominator
                + (mpmath.mpf(self.b.numerator) / self.b.denominator)
                * mpmath.sqrt(self.D))

    def __repr__(self):
        return f"({self.a}{'+' if self.b >= 0 else ''}{self.b}*sqrt{self.D})"


def qs_zero(D: int) -> QuadScalar:
    return QuadScalar(Fraction(0), Fraction(0), D)


def qvec(values, D: int) -> tuple[QuadScalar, ...]:
    """Coerce a sequence of ints/Fractions/QuadScalars into a field vector."""
    out = []
    for v in values:
        if isinstance(v, QuadScalar):
            if v.D != D:
                raise InputError("mixed field parameters in vector")
            out.append(v)
        else:
            out.append(QuadScalar(Fraction(v), Fraction(0), D))
    return tuple(out)


def qvec_add(x, y):
    return tuple(a + b for a, b in zip(x, y))


def qvec_scale(c: QuadScalar, x):
    return tuple(c * a for a in x)


def qvec_int_shift(x, k: QuadScalar, v) -> tuple[QuadScalar, ...]:
    """x + k*v for an integer-coordinate vector v."""
    return tuple(a + k * b for a, b in zip(x, v))


def pairing_q(gram, x, y) -> QuadScalar:
    """Bilinear extension of an integer Gram matrix to field vectors."""
    D = x[0].D
    acc = qs_zero(D)
    for i, xi in enumerate(x):
        if not xi:
            continue
        row = gram[i]
        s = qs_zero(D)
        for j, yj in enumerate(y):
            g = row[j]
            if g and yj:
                s = s + g * yj
        acc = acc + xi * s
    return acc


def pairing_q_int(gram, x, v) -> QuadScalar:
    """Pairing of a field vector x with an integer vector v."""
    D = x[0].D
    acc = qs_zero(D)
    for i, xi in enumerate(x):
        if not xi:
            continue
        row = gram[i]
        s = sum(g * vj for g, vj in zip(row, v))
        if s:
            acc = acc + s * xi
    return acc


def gauss_solve(rows, rhs):
    """Solve the square-or-rectangular system rows @ x = rhs over a field
    (entries support +,-,*,/ and truthiness).  Returns a list, or None when
    the system is inconsistent; free variables are set to zero.
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    a = [list(r) + [rhs[i]] for i, r in enumerate(rows)]
    piv_cols = []
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, m) if a[i][col]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = a[r][col]
        a[r] = [v / inv for v in a[r]]
        for i in range(m):
            if i != r and a[i][col]:
                f = a[i][col]
                a[i] = [v - f * w for v, w in zip(a[i], a[r])]
        piv_cols.append(col)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if a[i][n]:
            return None
    zero = rows[0][0] - rows[0][0] if m else 0
    x = [zero] * n
    for i, col in enumerate(piv_cols):
        x[col] = a[i][n]
    return x


def rational_kernel(rows) -> list[list[Fraction]]:
    """Basis of the nullspace of a rational matrix (Gauss-Jordan)."""
    m = len(rows)
    n = len(rows[0]) if m else 0
    a = [[Fraction(v) for v in r] for r in rows]
    piv_of_col = {}
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, m) if a[i][col]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = a[r][col]
        a[r] = [v / inv for v in a[r]]
        for i in range(m):
            if i != r and a[i][col]:
                f = a[i][col]
                a[i] = [v - f * w for v, w in zip(a[i], a[r])]
        piv_of_col[col] = r
        r += 1
        if r == m:
            break
    basis = []
    free = [c for c in range(n) if c not in piv_of_col]
    for fc in free:
        v = [Fraction(0)] * n
        v[fc] = Fraction(1)
        for col, row in piv_of_col.items():
            v[col] = -a[row][fc]
        basis.append(v)
    return basis


def independent_rows(eqs, stop_rank: int | None = None) -> list[list[Fraction]]:
    """Collect a maximal linearly independent subset of the given rational
    rows by incremental echelon reduction; stops early at stop_rank."""
    echelon: list[tuple[int, list[Fraction]]] = []  # (pivot column, row)
    kept = []
    for eq in eqs:
        row = [Fraction(v) for v in eq]
        for col, base in echelon:
            if row[col]:
                f = row[col]
                row = [a - f * b for a, b in zip(row, base)]
        piv = next((i for i, v in enumerate(row) if v), None)
        if piv is None:
            continue
        inv = row[piv]
        echelon.append((piv, [v / inv for v in row]))
        kept.append([Fraction(v) for v in eq])
        if stop_rank is not None and len(echelon) >= stop_rank:
            break
    return kept


def primitive_int_vector(frac_vec) -> list[int]:
    """Clear denominators and divide by the content."""
    from math import lcm, gcd

    den = 1
    for v in frac_vec:
        den = lcm(den, Fraction(v).denominator)
    ints = [int(Fraction(v) * den) for v in frac_vec]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g > 1:
        ints = [v // g for v in ints]
    return ints
