"""Curves over finite fields through their Weil numbers, zeta functions and kernels.

A curve of genus ``g`` enters only through ``v`` (with ``q = v^-2``) and the
Weil numbers ``alpha_i``; the partners ``alphabar_i = v^-2 alpha_i^-1`` are
derived so that ``alpha_i * alphabar_i = q`` holds by construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from gmpy2 import mpq

from .exactalg import (QQ, LaurentPoly, RationalFunction, Scalar, ScalarRing,
                       generic_rationals)


def ground_ring(g: int) -> ScalarRing:
    return ScalarRing(("v",) + tuple(f"a{i + 1}" for i in range(g)))


def spectral_ring(g: int) -> ScalarRing:
    """Ring of the K-theory side: ``v`` with ``p = v^2`` and ``x_1..x_g``."""
    return ScalarRing(("v",) + tuple(f"x{i + 1}" for i in range(g)))


@dataclass(frozen=True)
class CurveData:
    """Genus plus a way to produce ``v``, ``q`` and the Weil numbers as Scalars.

    In symbolic mode the ring is ``Q(v, a_1..a_g)``.  In numeric mode the
    ring is ``Q`` and ``values`` holds ``(v, alpha_1..alpha_g)``.
    """

    genus: int
    ring: ScalarRing
    values: tuple = field(default=())

    @classmethod
    def symbolic(cls, g: int) -> "CurveData":
        return cls(g, ground_ring(g))

    @classmethod
    def numeric(cls, v, alphas) -> "CurveData":
        v = mpq(v)
        alphas = tuple(mpq(a) for a in alphas)
        if not v or any(not a for a in alphas):
            raise ValueError("v and Weil numbers must be nonzero")
        return cls(len(alphas), QQ, (v,) + alphas)

    @classmethod
    def random_numeric(cls, g: int, seed: int) -> "CurveData":
        """Seeded generic point: ``v = 1/k`` and distinct Weil numbers.

        The Weil numbers and their partners avoid 0, ±1, ``q``, ``1/q`` and
        each other.
        """
        k = 2 + seed % 4
        v = mpq(1, k)
        q = 1 / v ** 2
        avoid = {q, 1 / q}
        alphas = []
        s = seed
        while len(alphas) < g:
            (a,) = generic_rationals(1, s, avoid=avoid, bound=11)
            s += 7919
            b = q / a
            if b in avoid or b in (0, 1, -1) or a == b:
                continue
            alphas.append(a)
            avoid |= {a, b, 1 / a, 1 / b}
        return cls.numeric(v, alphas)

    @property
    def mode(self):
        return "numeric" if self.values else "symbolic"

    # -- generators
    def v(self) -> Scalar:
        if self.values:
            return self.ring.const(self.values[0])
        return self.ring.gen("v")

    def q(self) -> Scalar:
        return self.v() ** -2

    def alpha(self, i: int) -> Scalar:
        if self.values:
            return self.ring.const(self.values[1 + i])
        return self.ring.gen(f"a{i + 1}")

    def alphabar(self, i: int) -> Scalar:
        return self.q() / self.alpha(i)

    def weil_numbers(self) -> list:
        out = []
        for i in range(self.genus):
            out += [self.alpha(i), self.alphabar(i)]
        return out

    def specialization(self, target: "CurveData") -> list:
        """Generator images realising ``self -> target`` (self symbolic)."""
        if self.mode != "symbolic" or target.genus != self.genus:
            raise ValueError("specialise from a symbolic curve of the same genus")
        return [target.v()] + [target.alpha(i) for i in range(self.genus)]

    def to_json(self):
        out = {"genus": self.genus, "mode": self.mode}
        if self.values:
            out["v"] = str(self.values[0])
            out["alphas"] = [str(a) for a in self.values[1:]]
        return out


# ---------------------------------------------------------------------------
# factored one-variable rational functions

ONE_MINUS_Z = "ONE_MINUS_Z"
ONE_MINUS_ZINV = "ONE_MINUS_ZINV"
NO_DENOMINATOR = "NONE"


@dataclass(frozen=True)
class Kernel:
    """``const * z^power * prod (1 - c z^e) / prod (1 - d z^f)`` with e, f = ±1."""

    ring: ScalarRing
    const: Scalar
    power: int
    num: tuple
    den: tuple

    @classmethod
    def build(cls, ring, num=(), den=(), power=0, const=None):
        const = ring.one() if const is None else const
        return cls(ring, const, power, tuple(num), tuple(den))._cancelled()

    def _cancelled(self):
        num = list(self.num)
        den = []
        for f in self.den:
            for k, h in enumerate(num):
                if h[1] == f[1] and h[0] == f[0]:
                    del num[k]
                    break
            else:
                den.append(f)
        return Kernel(self.ring, self.const, self.power, tuple(num), tuple(den))

    # -- algebra
    def __mul__(self, other):
        if isinstance(other, Scalar):
            return Kernel(self.ring, self.const * other, self.power, self.num, self.den)
        return Kernel.build(self.ring, self.num + other.num, self.den + other.den,
                            self.power + other.power, self.const * other.const)

    def inverse(self):
        return Kernel.build(self.ring, self.den, self.num, -self.power, self.const.inverse())

    def __truediv__(self, other):
        return self * other.inverse()

    def monomial_shift(self, k):
        return Kernel(self.ring, self.const, self.power + k, self.num, self.den)

    def scale_variable(self, c):
        """``z -> c z``."""
        num = tuple((a * c ** e, e) for a, e in self.num)
        den = tuple((a * c ** e, e) for a, e in self.den)
        return Kernel.build(self.ring, num, den, self.power, self.const * c ** self.power)

    def invert_variable(self):
        """``z -> z^-1``."""
        return Kernel.build(self.ring, tuple((a, -e) for a, e in self.num),
                            tuple((a, -e) for a, e in self.den), -self.power, self.const)

    def specialize(self, target, images):
        m = lambda fs: tuple((a.subs(target, images), e) for a, e in fs)
        return Kernel.build(target, m(self.num), m(self.den), self.power,
                            self.const.subs(target, images))

    @property
    def denominator_flag(self):
        if not self.den:
            return NO_DENOMINATOR
        if len(self.den) == 1 and self.den[0][0] == 1:
            return ONE_MINUS_Z if self.den[0][1] == 1 else ONE_MINUS_ZINV
        return "GENERAL"

    # -- evaluation
    def fraction(self):
        """Numerator and denominator as rank-1 Laurent polynomials."""
        R = self.ring
        z = lambda e: LaurentPoly.monomial(R, (e,))
        one = LaurentPoly.one(R, 1)
        num = LaurentPoly.monomial(R, (self.power,), self.const)
        for a, e in self.num:
            num = num * (one - z(e) * a)
        den = one
        for a, e in self.den:
            den = den * (one - z(e) * a)
        return num, den

    def __eq__(self, other):
        if not isinstance(other, Kernel):
            return NotImplemented
        n1, d1 = self.fraction()
        n2, d2 = other.fraction()
        return n1 * d2 == n2 * d1

    def __hash__(self):
        return hash((self.power, len(self.num), len(self.den)))

    def at_ratio(self, r: int, i: int, j: int) -> RationalFunction:
        """The kernel at ``z = z_i / z_j`` as a rational function in r variables."""
        R = self.ring
        mono = [0] * r
        mono[i] += self.power
        mono[j] -= self.power
        out = RationalFunction(LaurentPoly.monomial(R, mono, self.const))
        for a, e in self.num:
            a_i, a_j = (i, j) if e == 1 else (j, i)
            out = out * RationalFunction(_one_minus(R, r, a_i, a_j, a))
        for a, e in self.den:
            a_i, a_j = (i, j) if e == 1 else (j, i)
            out = out._divide_factor(a_i, a_j, a)
        return out

    def series(self, order: int) -> dict:
        """Laurent expansion at ``z = 0`` up to ``z^order`` inclusive."""
        R = self.ring
        const = self.const
        power = self.power
        num = []
        for a, e in self.num:
            if e == 1:
                num.append(a)
            else:
                const, power = const * (-a), power - 1
                num.append(a.inverse())
        den = []
        for a, e in self.den:
            if e == 1:
                den.append(a)
            else:
                const, power = const * (-a).inverse(), power + 1
                den.append(a.inverse())
        n = order - power
        if n < 0:
            return {}
        coeffs = [R.zero() for _ in range(n + 1)]
        coeffs[0] = const
        for a in num:
            for k in range(n, 0, -1):
                coeffs[k] = coeffs[k] - a * coeffs[k - 1]
        for a in den:
            for k in range(1, n + 1):
                coeffs[k] = coeffs[k] + a * coeffs[k - 1]
        return {power + k: c for k, c in enumerate(coeffs) if not c.is_zero()}

    def to_text(self, var="z"):
        parts = [f"({self.const.to_text()})"] if not self.const.is_one() else []
        if self.power:
            parts.append(f"{var}^{self.power}")
        fac = lambda a, e: f"(1 - ({a.to_text()})*{var}{'' if e == 1 else '^-1'})"
        parts += [fac(a, e) for a, e in self.num]
        text = "*".join(parts) or "1"
        if self.den:
            text += " / (" + "*".join(fac(a, e) for a, e in self.den) + ")"
        return text

    def to_json(self):
        n, d = self.fraction()
        return {"factored": self.to_text(),
                "numerator": n.to_json(var="z"), "denominator": d.to_json(var="z")}


def _one_minus(R, r, i, j, c):
    mono = [0] * r
    mono[i] += 1
    mono[j] -= 1
    return LaurentPoly.one(R, r) - LaurentPoly.monomial(R, mono, c)


# ---------------------------------------------------------------------------
# zeta function and kernels

def zeta(curve: CurveData) -> Kernel:
    """``prod (1 - alpha t)(1 - alphabar t) / ((1 - t)(1 - q t))``."""
    R = curve.ring
    return Kernel.build(R, [(a, 1) for a in curve.weil_numbers()],
                        [(R.one(), 1), (curve.q(), 1)])


def point_count(curve: CurveData, d: int) -> Scalar:
    if d < 1:
        raise ValueError("d >= 1 required")
    out = curve.q() ** d + 1
    for a in curve.weil_numbers():
        out = out - a ** d
    return out


def kernel_zetatilde(curve: CurveData) -> Kernel:
    """``zeta(z) (1 - q z)(1 - q z^-1)``."""
    R = curve.ring
    return Kernel.build(R, [(curve.q(), -1)] + [(a, 1) for a in curve.weil_numbers()],
                        [(R.one(), 1)])


def kernel_gx(curve: CurveData) -> Kernel:
    """``z^(g-1) zetatilde(z^-1)``."""
    return kernel_zetatilde(curve).invert_variable().monomial_shift(curve.genus - 1)


def kernel_gx_twisted(curve: CurveData) -> Kernel:
    """``z^(1-g) g_X(z) = zetatilde(z^-1)``."""
    return kernel_zetatilde(curve).invert_variable()


def kernel_hx(curve: CurveData) -> Kernel:
    """``q^(1-g) zeta(z) / zeta(q^-1 z)``."""
    z = zeta(curve)
    q = curve.q()
    return (z / z.scale_variable(q.inverse())) * q ** (1 - curve.genus)


def kernel_ex(curve: CurveData) -> Kernel:
    """``z^(1-g) zetatilde(z)``, the kernel of the root-datum symmetrisation."""
    return kernel_zetatilde(curve).monomial_shift(1 - curve.genus)


def kernel_k(g: int) -> Kernel:
    """``(1 - z)^-1 (1 - p^-1 z^-1) prod (1 - x_l^-1 z)(1 - y_l^-1 z)`` over the spectral ring."""
    R = spectral_ring(g)
    p = R.gen("v") ** 2
    num = [(p.inverse(), -1)]
    for l in range(g):
        x = R.gen(f"x{l + 1}")
        y = p / x
        num += [(x.inverse(), 1), (y.inverse(), 1)]
    return Kernel.build(R, num, [(R.one(), 1)])


# ---------------------------------------------------------------------------
# scalar constants

def quantum_integer(v: Scalar, d: int) -> Scalar:
    """``[d] = (v^d - v^-d)/(v - v^-1)`` written as a Laurent polynomial."""
    out = v.ring.zero()
    for k in range(d):
        out = out + v ** (d - 1 - 2 * k)
    return out


def c_d(curve: CurveData, d: int) -> Scalar:
    """Hecke eigenvalue ``v^d #X(F_{q^d}) [d] / d``."""
    v = curve.v()
    return v ** d * point_count(curve, d) * quantum_integer(v, d) / d


def xi_series(curve: CurveData, N: int) -> list:
    """Taylor coefficients ``xi_0..xi_N`` of ``zeta(s)/zeta(q^-1 s)``."""
    z = zeta(curve)
    ratio = z / z.scale_variable(curve.q().inverse())
    coeffs = ratio.series(N)
    return [coeffs.get(k, curve.ring.zero()) for k in range(N + 1)]


def pic0_order(curve: CurveData) -> Scalar:
    """``prod (1 - alpha_l)(1 - alphabar_l)``."""
    out = curve.ring.one()
    for a in curve.weil_numbers():
        out = out * (1 - a)
    return out


def torsion_pairing(curve: CurveData, d: int) -> Scalar:
    """Green pairing of the primitive torsion generator of degree d with itself.

    ``v^(d-1) #X(F_{q^d}) [d] / (d (q - 1))``.
    """
    v = curve.v()
    return v ** (d - 1) * point_count(curve, d) * quantum_integer(v, d) / (
        d * (curve.q() - 1))


# ---------------------------------------------------------------------------
# truncated power series (lists of Scalars, index = degree)

def series_exp(f: list, N: int) -> list:
    """``exp(f)`` to order N for a series with ``f[0] == 0``."""
    R = f[0].ring
    if not f[0].is_zero():
        raise ValueError("constant term must vanish")
    f = list(f) + [R.zero()] * (N + 1 - len(f))
    out = [R.one()] + [R.zero()] * N
    for n in range(1, N + 1):
        acc = R.zero()
        for k in range(1, n + 1):
            if not f[k].is_zero():
                acc = acc + f[k] * out[n - k] * k
        out[n] = acc / n
    return out


def series_log(f: list, N: int) -> list:
    """``log(f)`` to order N for a series with ``f[0] == 1``."""
    R = f[0].ring
    if not f[0].is_one():
        raise ValueError("constant term must be 1")
    f = list(f) + [R.zero()] * (N + 1 - len(f))
    out = [R.zero()] * (N + 1)
    for n in range(1, N + 1):
        acc = f[n] * n
        for k in range(1, n):
            acc = acc - out[k] * k * f[n - k]
        out[n] = acc / n
    return out


def zeta_from_point_counts(curve: CurveData, N: int) -> list:
    """``exp(sum #X(F_{q^d}) t^d / d)`` to order N."""
    R = curve.ring
    f = [R.zero()] + [point_count(curve, d) / d for d in range(1, N + 1)]
    return series_exp(f, N)


def torsion_generators(ring: ScalarRing, N: int):
    """Express ``1_{0,d}`` and ``theta_{0,d}`` through formal ``T_1..T_N``.

    Returns two lists of rank-N LaurentPolys (variable ``z_d`` stands for
    ``T_{0,d}``) with ``1 + sum 1_{0,d} s^d = exp(sum T_d s^d / [d])`` and
    ``1 + sum theta_{0,d} s^d = exp((v^-1 - v) sum T_d s^d)``.
    """
    v = ring.gen("v")
    T = [LaurentPoly.zero(ring, N)] + [LaurentPoly.var(ring, N, d - 1) for d in range(1, N + 1)]
    ones = _poly_series_exp([T[0]] + [T[d] * quantum_integer(v, d).inverse()
                                      for d in range(1, N + 1)], N)
    thetas = _poly_series_exp([T[d] * (v.inverse() - v) for d in range(N + 1)], N)
    return ones, thetas


def _poly_series_exp(f, N):
    R, r = f[0].ring, f[0].r
    out = [LaurentPoly.one(R, r)] + [LaurentPoly.zero(R, r)] * N
    for n in range(1, N + 1):
        acc = LaurentPoly.zero(R, r)
        for k in range(1, n + 1):
            acc = acc + f[k] * out[n - k] * k
        out[n] = acc * R.const(mpq(1, n))
    return out
