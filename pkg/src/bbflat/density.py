"""Constructive density: approximate any complex target by the image of the
pairing functional z -> ((x,z), (y,z)) on lattice vectors.

For a non-special period the image of the lattice in C is dense.  The witness
search keeps a working pair of plane vectors (each carrying its exact integer
coefficient vector), injects further generators, reduces the injected vector
into the half-parallelogram of the pair, and swaps it in; every completed
round shrinks the pair's norm sum by a factor of at most 11/12.  Once the pair
is smaller than the tolerance, the target is expressed in the pair and rounded
to integer coefficients.

Floating point is used only for steering; the returned certificate is
re-evaluated from the exact integer coefficients at high precision.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import mpmath

from .errors import InputError, PrecisionExhausted, SpecialPeriodError
from .lattice import LatticeVec
from .periods import Period, is_special, period_functional

DEFAULT_VERIFY_BITS = 128
SHRINK_NUM, SHRINK_DEN = 11, 12


def verify_bits_default() -> int:
    env = os.environ.get("BBF_PRECISION_BITS")
    if env:
        try:
            return max(53, int(env))
        except ValueError:
            raise InputError(f"BBF_PRECISION_BITS={env!r} is not an integer")
    return DEFAULT_VERIFY_BITS


@dataclass(frozen=True)
class DensityCertificate:
    target: complex
    coeffs: tuple[int, ...]
    achieved_error: float
    epsilon: float
    iterations: int
    shrink_trace: tuple[float, ...]
    verify_bits: int

    def as_dict(self) -> dict:
        return {
            "target": [self.target.real, self.target.imag],
            "coeffs": list(self.coeffs),
            "error": self.achieved_error,
            "epsilon": self.epsilon,
            "iterations": self.iterations,
        }


class _PlaneVec:
    """A point of R^2 tagged with its integer coefficient vector."""

    __slots__ = ("re", "im", "coeffs")

    def __init__(self, re, im, coeffs):
        self.re = re
        self.im = im
        self.coeffs = coeffs

    def norm(self):
        return mpmath.hypot(self.re, self.im)

    def combo(self, a, other, b):
        """self*a + other*b with integer a, b."""
        n = len(self.coeffs)
        return _PlaneVec(a * self.re + b * other.re,
                         a * self.im + b * other.im,
                         [a * self.coeffs[k] + b * other.coeffs[k]
                          for k in range(n)])


def _exact_value(period: Period, coeffs) -> tuple:
    """((x,u), (y,u)) for u = sum coeffs[i] * basis_i, exactly."""
    L = period.lattice
    u = [int(c) for c in coeffs]
    vec = L.vec(u)
    return period_functional(period, vec)


def reverify_certificate(period: Period, cert: DensityCertificate,
                         bits: int) -> float:
    """Exact re-evaluation of the certificate at the given precision; returns
    |(t, coeffs) - target|."""
    re_q, im_q = _exact_value(period, cert.coeffs)
    with mpmath.workprec(bits):
        err = mpmath.hypot(re_q.to_mpf() - mpmath.mpf(cert.target.real),
                           im_q.to_mpf() - mpmath.mpf(cert.target.imag))
        return float(err)


def density_approximate(q_period: Period, target: complex, epsilon: float,
                        basis: list[LatticeVec] | None = None,
                        work_bits: int | None = None,
                        verify_bits: int | None = None,
                        max_iterations: int = 20000) -> DensityCertificate:
    """Integer coefficients c over the lattice basis with
    |((x, c), (y, c)) - target| < epsilon.

    Requires a non-special period.  basis defaults to the standard basis of
    the period's lattice; coefficients refer to the given basis order.
    """
    if epsilon <= 0:
        raise InputError("epsilon must be positive")
    special, _ = is_special(q_period)
    if special:
        raise SpecialPeriodError(
            "density requires a non-special period (the orbit is discrete)")
    L = q_period.lattice
    if basis is None:
        gen_vecs = [L.basis_vector(i) for i in range(L.rank)]
    else:
        gen_vecs = list(basis)
        for v in gen_vecs:
            if not v.lattice.same_form(L):
                raise InputError("basis vector outside the period's lattice")
    if len(gen_vecs) < 3:
        raise InputError("need at least three generators for plane density")
    if verify_bits is None:
        verify_bits = verify_bits_default()
    if work_bits is None:
        work_bits = max(verify_bits + 64, 192)

    with mpmath.workprec(work_bits):
        m = len(gen_vecs)
        gens = []
        for i, v in enumerate(gen_vecs):
            re_q, im_q = period_functional(q_period, v)
            coeffs = [0] * m
            coeffs[i] = 1
            gens.append(_PlaneVec(re_q.to_mpf(), im_q.to_mpf(), coeffs))

        # initial working pair: largest generator plus the most independent mate
        gens_sorted = sorted(range(m), key=lambda i: -gens[i].norm())
        z1 = gens[gens_sorted[0]]
        z2 = None
        best_area = mpmath.mpf(0)
        for i in gens_sorted[1:]:
            area = abs(z1.re * gens[i].im - z1.im * gens[i].re)
            if area > best_area:
                best_area = area
                z2 = gens[i]
        if z2 is None or best_area == 0:
            raise PrecisionExhausted(
                "generators are numerically collinear; raise the precision")

        stop = mpmath.mpf(epsilon) / 2
        tol = mpmath.mpf(2) ** (-(work_bits // 2))
        margin = mpmath.mpf("1e-9")
        half = mpmath.mpf(1) / 2
        third = mpmath.mpf(1) / 3
        trace = []
        iterations = 0
        inject = 0
        recycled: list[_PlaneVec] = []  # discarded pair members, current scale

        def basis_norm():
            return z1.norm() + z2.norm()

        while basis_norm() >= stop:
            if iterations >= max_iterations:
                raise PrecisionExhausted(
                    f"iteration cap {max_iterations} reached at |basis| = "
                    f"{float(basis_norm()):.3e}; re-run at higher precision")
            # keep |z1| >= |z2|
            if z1.norm() < z2.norm():
                z1, z2 = z2, z1
            det = z1.re * z2.im - z1.im * z2.re
            if abs(det) <= tol * z1.norm() * z2.norm():
                raise PrecisionExhausted(
                    "working pair collapsed; re-run at higher precision")
            # injection candidates: recycled vectors first (their reduction
            # multipliers are O(1), keeping integer coefficients small), then
            # the original generators for fresh directions
            candidates = list(reversed(recycled))
            candidates += [gens[(inject + k) % m] for k in range(m)]
            inject += 1
            accepted = None
            for g in candidates:
                c1 = (g.re * z2.im - g.im * z2.re) / det
                c2 = (z1.re * g.im - z1.im * g.re) / det
                r1 = int(mpmath.nint(c1))
                r2 = int(mpmath.nint(c2))
                c1 -= r1
                c2 -= r2
                s1 = -1 if c1 < 0 else 1
                s2 = -1 if c2 < 0 else 1
                c1 *= s1
                c2 *= s2
                # ties at 0 or 1/2 cannot be certified: try another generator
                if (c1 <= margin or c2 <= margin
                        or c1 >= half - margin or c2 >= half - margin):
                    continue
                accepted = (g, r1, r2, s1, s2, c1, c2)
                break
            if accepted is None:
                raise PrecisionExhausted(
                    "no usable generator injection; re-run at higher "
                    "precision or check the non-special hypothesis")
            g, r1, r2, s1, s2, c1, c2 = accepted
            w = g.combo(1, z1, -r1).combo(1, z2, -r2)
            if s1 < 0:
                z1 = z1.combo(-1, z1, 0)
            if s2 < 0:
                z2 = z2.combo(-1, z2, 0)
            if c1 > third and c2 > third:
                w = z1.combo(1, z2, 1).combo(1, w, -2)
            old = basis_norm()
            recycled.append(z1)
            del recycled[:-8]
            z1, z2 = w, z2
            iterations += 1
            new = basis_norm()
            trace.append(float(new / old))
            if new * SHRINK_DEN > old * SHRINK_NUM * (1 + mpmath.mpf("1e-12")):
                raise PrecisionExhausted(
                    f"iteration {iterations} shrank only by {float(new/old):.6f} "
                    f"> {SHRINK_NUM}/{SHRINK_DEN}")

        # express the target in the final pair and round
        det = z1.re * z2.im - z1.im * z2.re
        tr = mpmath.mpf(target.real)
        ti = mpmath.mpf(target.imag)
        a1 = (tr * z2.im - ti * z2.re) / det
        a2 = (z1.re * ti - z1.im * tr) / det
        r1 = int(mpmath.nint(a1))
        r2 = int(mpmath.nint(a2))
        coeffs = tuple(r1 * u + r2 * v for u, v in zip(z1.coeffs, z2.coeffs))

    if basis is not None:
        # re-express over the standard basis of the lattice
        total = [0] * L.rank
        for c, v in zip(coeffs, gen_vecs):
            for k, x in enumerate(v.coords):
                total[k] += c * x
        std_coeffs = tuple(total)
    else:
        std_coeffs = coeffs

    cert = DensityCertificate(
        target=complex(target), coeffs=std_coeffs,
        achieved_error=0.0, epsilon=float(epsilon),
        iterations=iterations, shrink_trace=tuple(trace),
        verify_bits=verify_bits,
    )
    err = reverify_certificate(q_period, cert, verify_bits)
    cert = DensityCertificate(
        target=cert.target, coeffs=cert.coeffs, achieved_error=err,
        epsilon=cert.epsilon, iterations=cert.iterations,
        shrink_trace=cert.shrink_trace, verify_bits=verify_bits,
    )
    if err >= epsilon:
        raise PrecisionExhausted(
            f"certified error {err:.3e} exceeds epsilon {epsilon:.3e}; "
            "re-run at higher precision")
    return cert
