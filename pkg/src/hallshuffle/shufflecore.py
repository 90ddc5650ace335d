"""Shuffle algebras on symmetric Laurent polynomials and on rational series.

The symmetric model ``A_g`` has elements ``Psi_r(P) = sum_w w(prod_{i<j}
g(z_i/z_j) P)``.  The kernels handled here have a single denominator factor
``(1 - z)`` or ``(1 - z^-1)``; clearing it against the Vandermonde product
turns ``Psi_r`` into an antisymmetrisation followed by exact division by
``Delta(z) = prod_{i<j}(z_i - z_j)``, which is how every symmetric payload
is computed.  The series model ``F_h`` keeps elements as rational functions
and only develops them in ``z_1/z_2, ..., z_{r-1}/z_r`` when coefficients
are requested.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from flint import fmpq, fmpq_mat
from gmpy2 import mpq

from .curvezeta import (ONE_MINUS_Z, ONE_MINUS_ZINV, CurveData, Kernel, c_d,
                        kernel_gx, kernel_gx_twisted)
from .exactalg import (QQ, LaurentPoly, NotDivisible, RationalFunction, Scalar,
                       antisymmetrize, divide_by_vandermonde, divide_exact,
                       inverse_perm, permutations, permute, shuffles,
                       sign, vandermonde)

MAX_RANK_SYMMETRIC = 5
MAX_RANK_SERIES = 4


class RankError(ValueError):
    pass


def _check_rank(r, cap):
    if r > cap:
        raise RankError(f"rank {r} exceeds the supported bound {cap}")


# ---------------------------------------------------------------------------
# symmetric model

@dataclass(frozen=True)
class ShuffleElement:
    """Rank plus symmetric payload; ``preimage`` is any P with Psi_r(P) = payload."""

    rank: int
    payload: LaurentPoly
    preimage: LaurentPoly | None = None

    def __post_init__(self):
        if self.payload.r != self.rank:
            raise ValueError("payload rank mismatch")
        if not self.payload.is_symmetric():
            raise ValueError("shuffle payload must be symmetric")

    @property
    def ring(self):
        return self.payload.ring

    def __add__(self, other):
        pre = None
        if self.preimage is not None and other.preimage is not None:
            pre = self.preimage + other.preimage
        return ShuffleElement(self.rank, self.payload + other.payload, pre)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        pre = None if self.preimage is None else self.preimage * c
        return ShuffleElement(self.rank, self.payload * c, pre)

    def __eq__(self, other):
        return isinstance(other, ShuffleElement) and self.rank == other.rank and \
            self.payload == other.payload

    def to_json(self):
        return {"rank": self.rank, "payload": self.payload.to_json()}


def unit(ring) -> ShuffleElement:
    one = LaurentPoly.one(ring, 0)
    return ShuffleElement(0, one, one)


def generator(ring, d: int) -> ShuffleElement:
    """The degree-one element ``x^d``."""
    x = LaurentPoly.monomial(ring, (d,))
    return ShuffleElement(1, x, x)


def _pair_parts(kernel: Kernel, r: int, i: int, j: int):
    """Write ``kernel(z_i/z_j) = sgn * const * M * N / (z_i - z_j)``.

    Returns the polynomial ``M * N`` and the scalar ``sgn * const``.
    """
    R = kernel.ring
    flag = kernel.denominator_flag
    if flag not in (ONE_MINUS_Z, ONE_MINUS_ZINV):
        raise ValueError("kernel needs a single (1 - z) or (1 - z^-1) denominator")
    mono = [0] * r
    mono[i] += kernel.power
    mono[j] -= kernel.power
    poly = LaurentPoly.monomial(R, mono)
    zi = LaurentPoly.var(R, r, i)
    zj = LaurentPoly.var(R, r, j)
    for a, e in kernel.num:
        if e == 1:       # (1 - a z_i/z_j) = (z_j - a z_i) / z_j
            poly = poly * (zj - zi * a) * zj ** -1
        else:            # (1 - a z_j/z_i) = (z_i - a z_j) / z_i
            poly = poly * (zi - zj * a) * zi ** -1
    if flag == ONE_MINUS_Z:  # 1/(1 - z_i/z_j) = -z_j / (z_i - z_j)
        poly = poly * zj
        scalar = -kernel.const
    else:                    # 1/(1 - z_j/z_i) = z_i / (z_i - z_j)
        poly = poly * zi
        scalar = kernel.const
    return poly, scalar


def kernel_numerator(kernel: Kernel, r: int):
    """``(N, c)`` with ``prod_{i<j} kernel(z_i/z_j) = c * N / Delta``."""
    R = kernel.ring
    N = LaurentPoly.one(R, r)
    c = R.one()
    for i in range(r):
        for j in range(i + 1, r):
            poly, scalar = _pair_parts(kernel, r, i, j)
            N = N * poly
            c = c * scalar
    return N, c


def psi(kernel: Kernel, P: LaurentPoly, r: int | None = None) -> ShuffleElement:
    """Weighted symmetrisation via antisymmetrisation and division by Delta."""
    r = P.r if r is None else r
    if P.r != r:
        raise ValueError("rank mismatch")
    _check_rank(r, MAX_RANK_SYMMETRIC)
    if r <= 1:
        return ShuffleElement(r, P, P)
    N, c = kernel_numerator(kernel, r)
    try:
        payload = divide_by_vandermonde(antisymmetrize(N * P)) * c
    except NotDivisible as exc:
        raise ArithmeticError("antisymmetric numerator not divisible by Delta") from exc
    return ShuffleElement(r, payload, P)


def psi_direct(kernel: Kernel, P: LaurentPoly, r: int | None = None) -> LaurentPoly:
    """Reference path: sum the r! rational functions, then cancel denominators."""
    r = P.r if r is None else r
    F = RationalFunction(P)
    for i in range(r):
        for j in range(i + 1, r):
            F = F * kernel.at_ratio(r, i, j)
    total = None
    for w in permutations(r):
        term = F.permute(w)
        total = term if total is None else total + term
    return total.to_laurent()


def derive_division_prefactor(curve: CurveData):
    """Recover the pair prefactor of the Psi division form from the reference path.

    Writes ``g_X(z_1/z_2)`` symmetrised as ``c * (z_1 z_2)^m / Delta *
    Alt(prod_{gamma}(z_1 - gamma z_2))`` with ``gamma`` over the Weil numbers
    and ``q^-1``, and returns ``(c, m)``.  For rank r the prediction is
    ``c^{r(r-1)/2} (z_1..z_r)^{m(r-1)}``.
    """
    R = curve.ring
    kernel = kernel_gx(curve)
    direct = psi_direct(kernel, LaurentPoly.one(R, 2))
    core = gamma_product(curve, 2)
    alt = divide_by_vandermonde(antisymmetrize(core))
    quotient = divide_exact(direct, alt)
    (zexp, coeff), = list(quotient.terms())
    if zexp[0] != zexp[1]:
        raise ArithmeticError("prefactor is not a symmetric monomial")
    return coeff, zexp[0]


def gamma_product(curve: CurveData, r: int) -> LaurentPoly:
    """``prod_{i<j} prod_{gamma} (z_i - gamma z_j)``, gamma over Weil numbers and q^-1."""
    R = curve.ring
    gammas = curve.weil_numbers() + [curve.q().inverse()]
    out = LaurentPoly.one(R, r)
    for i in range(r):
        for j in range(i + 1, r):
            zi = LaurentPoly.var(R, r, i)
            zj = LaurentPoly.var(R, r, j)
            for gm in gammas:
                out = out * (zi - zj * gm)
    return out


def psi_closed_form(curve: CurveData, P: LaurentPoly, prefactor=None) -> LaurentPoly:
    """Division form with an explicit prefactor ``(c, m)`` per pair.

    Default prefactor is ``(-q, -g)``.
    """
    r = P.r
    c, m = prefactor if prefactor is not None else (-curve.q(), -curve.genus)
    alt = divide_by_vandermonde(antisymmetrize(gamma_product(curve, r) * P))
    mono = LaurentPoly.monomial(curve.ring, (m * (r - 1),) * r, c ** (r * (r - 1) // 2))
    return alt * mono


def embed(P: LaurentPoly, total: int, offset: int) -> LaurentPoly:
    """Place the variables of P at positions ``offset..offset+P.r-1`` of ``total``."""
    r = P.r
    num = {}
    for e, c in P.num.items():
        key = (0,) * offset + e[:r] + (0,) * (total - offset - r) + e[r:]
        num[key] = c
    return LaurentPoly(P.ring, total, num, P.den)


def _cross_kernel_product(kernel, r, s):
    n = r + s
    F = RationalFunction(LaurentPoly.one(kernel.ring, n))
    for i in range(r):
        for j in range(r, n):
            F = F * kernel.at_ratio(n, i, j)
    return F


def shuffle_mul(kernel: Kernel, A: ShuffleElement, B: ShuffleElement,
                route: str = "auto") -> ShuffleElement:
    """Shuffle product; ``route`` is ``square`` (preimages), ``direct`` or ``auto``."""
    r, s = A.rank, B.rank
    _check_rank(r + s, MAX_RANK_SYMMETRIC)
    if r == 0:
        return B.scale(A.payload.coefficient(()))
    if s == 0:
        return A.scale(B.payload.coefficient(()))
    n = r + s
    if route == "auto":
        route = "square" if A.preimage is not None and B.preimage is not None else "direct"
    if route == "square":
        P = embed(A.preimage, n, 0) * embed(B.preimage, n, r)
        return psi(kernel, P, n)
    F = _cross_kernel_product(kernel, r, s) * (embed(A.payload, n, 0) * embed(B.payload, n, r))
    total = None
    for w in shuffles(r, s):
        term = F.permute(w)
        total = term if total is None else total + term
    pre = None
    if A.preimage is not None and B.preimage is not None:
        pre = embed(A.preimage, n, 0) * embed(B.preimage, n, r)
    return ShuffleElement(n, total.to_laurent(), pre)


def product(kernel: Kernel, elements, route="auto") -> ShuffleElement:
    out = elements[0]
    for e in elements[1:]:
        out = shuffle_mul(kernel, out, e, route)
    return out


def twisted_mul(curve: CurveData, A: ShuffleElement, B: ShuffleElement,
                route: str = "auto") -> ShuffleElement:
    """Product with kernel ``zetatilde(z^-1)``."""
    return shuffle_mul(kernel_gx_twisted(curve), A, B, route)


def monomial_twist(A: ShuffleElement, k: int) -> ShuffleElement:
    """Multiply by ``(z_1 ... z_r)^k``."""
    m = LaurentPoly.monomial(A.ring, (k,) * A.rank)
    pre = None if A.preimage is None else A.preimage * m
    return ShuffleElement(A.rank, A.payload * m, pre)


def twisted_mul_via_twist(curve: CurveData, A: ShuffleElement, B: ShuffleElement):
    """``(z^{(1-g)s} A) * (z^{(g-1)r} B)`` in the untwisted algebra."""
    g = curve.genus
    return shuffle_mul(kernel_gx(curve), monomial_twist(A, (1 - g) * B.rank),
                       monomial_twist(B, (g - 1) * A.rank))


def hecke_mul(curve: CurveData, d: int, A: ShuffleElement) -> ShuffleElement:
    """Multiply by ``c_d p_d(z)``."""
    if A.rank < 1:
        raise ValueError("rank >= 1 required")
    R = A.ring
    p = LaurentPoly.zero(R, A.rank)
    for i in range(A.rank):
        p = p + LaurentPoly.var(R, A.rank, i, d)
    p = p * c_d(curve, d)
    pre = None if A.preimage is None else A.preimage * p
    return ShuffleElement(A.rank, A.payload * p, pre)


# ---------------------------------------------------------------------------
# wheel conditions

def wheel_restriction(A: ShuffleElement, curve: CurveData, alpha: Scalar) -> LaurentPoly:
    """Substitute ``z_1 = alpha*alphabar*t, z_2 = alphabar*t, z_3 = t``.

    The result lives in the variables ``(t, z_4, ..., z_r)``.
    """
    r = A.rank
    if r < 3:
        raise ValueError("the wheel locus is empty for r = 2")
    if curve.genus < 1:
        raise ValueError("wheel conditions need g >= 1")
    abar = curve.q() / alpha
    R = A.ring
    k = r - 2
    unit_vec = lambda i: tuple(1 if j == i else 0 for j in range(k))
    images = [unit_vec(0), unit_vec(0), unit_vec(0)] + [unit_vec(i - 2) for i in range(3, r)]
    coeffs = [alpha * abar, abar, R.one()] + [R.one()] * (r - 3)
    return A.payload.subs_monomial(k, images, coeffs)


def wheel_check(A: ShuffleElement, curve: CurveData, alpha: Scalar) -> bool:
    return wheel_restriction(A, curve, alpha).is_zero()


def wheel_parameters(curve: CurveData):
    return curve.weil_numbers()


# ---------------------------------------------------------------------------
# the B matrix

def b_matrix(ring, r: int):
    """Rows: permutations in lexicographic order.  Columns: exponent vectors
    ``(n_1..n_r)`` with ``0 <= n_i <= r-i`` in lexicographic order.

    Entries are the polynomials ``sign(w) w(z^I)``; the matrix B is
    this one divided entrywise by Delta.
    """
    cols = list(itertools.product(*[range(r - i) for i in range(r)]))
    rows = list(permutations(r))
    M = [[permute(LaurentPoly.monomial(ring, I), w) * sign(w) for I in cols] for w in rows]
    return rows, cols, M


def _det(M):
    n = len(M)
    ring, r = M[0][0].ring, M[0][0].r
    total = LaurentPoly.zero(ring, r)
    for pi in itertools.permutations(range(n)):
        term = LaurentPoly.constant(ring, r, sign(pi))
        for i in range(n):
            term = term * M[i][pi[i]]
            if term.is_zero():
                break
        total = total + term
    return total


def b_matrix_det(r: int, ring=QQ):
    """Return ``(sign, exponent)`` with ``det(B) = sign * Delta^exponent``.

    Raises ``ArithmeticError`` if the determinant is not of that shape.
    """
    if not 2 <= r <= 3:
        raise RankError("b_matrix_det supports 2 <= r <= 3")
    _, _, M = b_matrix(ring, r)
    detM = _det(M)
    half = len(M) // 2
    V = vandermonde(ring, r)
    target = V ** half
    if detM == target:
        s = 1
    elif detM == -target:
        s = -1
    else:
        raise ArithmeticError("det(B) is not a power of Delta")
    # det(B) = det(M) / Delta^{r!} = s * Delta^{r!/2 - r!}
    return s, half - len(M)


# ---------------------------------------------------------------------------
# series model

@dataclass(frozen=True)
class FSeriesElement:
    """Rank plus a rational function developed in ``z_1/z_2, ..., z_{r-1}/z_r``."""

    rank: int
    value: RationalFunction

    @classmethod
    def monomial(cls, ring, exps):
        return cls(len(exps), RationalFunction(LaurentPoly.monomial(ring, tuple(exps))))

    def __add__(self, other):
        return FSeriesElement(self.rank, self.value + other.value)

    def __sub__(self, other):
        return FSeriesElement(self.rank, self.value - other.value)

    def scale(self, c):
        return FSeriesElement(self.rank, self.value * c)

    def __eq__(self, other):
        return isinstance(other, FSeriesElement) and self.rank == other.rank and \
            self.value == other.value

    def coefficients(self, window: int, total: int | None = None) -> dict:
        """Coefficients at exponents with ``|e_k| <= window`` (optionally fixed total)."""
        r = self.rank
        if r == 0:
            return {(): self.value.num.coefficient(())}
        if r == 1:
            return {z: c for z, c in self.value.num.terms() if abs(z[0]) <= window}
        upper = [window * (k + 1) for k in range(r - 1)]
        series = self.value.expand(upper)
        out = {}
        for z, c in series.items():
            if all(abs(x) <= window for x in z) and (total is None or sum(z) == total):
                if not c.is_zero():
                    out[z] = c
        return out

    def coefficient(self, exps) -> Scalar:
        """Exact coefficient of one monomial of the expansion."""
        exps = tuple(exps)
        r = self.rank
        if r <= 1:
            return self.value.num.coefficient(exps)
        upper, m = [], 0
        for k in range(r - 1):
            m += exps[k]
            upper.append(m)
        series = self.value.expand(upper)
        c = series.get(exps)
        return c if c is not None else self.value.num.ring.zero()


def fshuffle_mul(h: Kernel, A: FSeriesElement, B: FSeriesElement) -> FSeriesElement:
    """``sum_{w in Sh} prod_{(i,j) in I_w} h(z_i/z_j) w(A(z_1..z_r) B(z_{r+1}..))``."""
    r, s = A.rank, B.rank
    n = r + s
    _check_rank(n, MAX_RANK_SERIES)
    if r == 0:
        return B.scale(A.value.num.coefficient(()))
    if s == 0:
        return A.scale(B.value.num.coefficient(()))
    base = _embed_rational(A.value, n, 0) * _embed_rational(B.value, n, r)
    total = None
    for w in shuffles(r, s):
        winv = inverse_perm(w)
        term = base.permute(w)
        for i in range(n):
            for j in range(i + 1, n):
                if winv[i] >= r > winv[j]:
                    term = term * h.at_ratio(n, i, j)
        total = term if total is None else total + term
    return FSeriesElement(n, total)


def _embed_rational(F: RationalFunction, total: int, offset: int) -> RationalFunction:
    out = RationalFunction(embed(F.num, total, offset))
    for key, k in F.factors.items():
        i, j, _ = key
        for _ in range(k):
            out = out._divide_factor(i + offset, j + offset, F._consts[key])
    return out


def fproduct(h: Kernel, elements) -> FSeriesElement:
    out = elements[0]
    for e in elements[1:]:
        out = fshuffle_mul(h, out, e)
    return out


def xi_embed(A: ShuffleElement, kernel: Kernel) -> FSeriesElement:
    """``payload / prod_{i<j} g(z_i/z_j)`` kept in factored form."""
    r = A.rank
    F = RationalFunction(A.payload)
    inv = kernel.inverse()
    for i in range(r):
        for j in range(i + 1, r):
            F = F * inv.at_ratio(r, i, j)
    return FSeriesElement(r, F)


def fcoproduct(A: FSeriesElement, s: int, window: int) -> dict:
    """Window-truncated ``Delta_{s,t}``: split each monomial after position s."""
    t = A.rank - s
    if t < 0:
        raise ValueError("s exceeds rank")
    out = {}
    for z, c in A.coefficients(window).items():
        out[(z[:s], z[s:])] = c
    return out


def twisted_bialgebra_check(h: Kernel, a: int, b: int, c: int, window: int) -> dict:
    """Compare ``Delta(u*v)`` with the twisted product ``Delta(u)*Delta(v)``.

    ``u = x^a`` and ``v = x^b * x^c``.  Checks the (1,1) component of
    ``Delta(u * x^b)`` and the (1,2) component of ``Delta(u * v)`` at every
    exponent inside the window; returns the list of mismatches per component.
    """
    R = h.ring
    hs = h.series(3 * window + abs(a) + abs(b) + abs(c) + 4)
    hcoef = lambda n: hs.get(n, R.zero())
    X = lambda *e: FSeriesElement.monomial(R, e)

    mismatches = {"(1,1)": [], "(1,2)": []}
    # rank 2: Delta_{1,1}(x^a * x^b) = x^a (x) x^b + sum_n h_n x^{b+n} (x) x^{a-n}
    uv = fshuffle_mul(h, X(a), X(b))
    for e1 in range(-window, window + 1):
        e2 = a + b - e1
        lhs = uv.coefficient((e1, e2))
        rhs = R.zero()
        if e1 == a:
            rhs = rhs + 1
        n = e1 - b
        if n >= 0:
            rhs = rhs + hcoef(n)
        if lhs != rhs:
            mismatches["(1,1)"].append((e1, e2))

    # rank 3, component (1,2)
    v = fshuffle_mul(h, X(b), X(c))
    uvw = fshuffle_mul(h, X(a), v)
    for e1 in range(-window, window + 1):
        for e2 in range(-window, window + 1):
            e3 = a + b + c - e1 - e2
            lhs = uvw.coefficient((e1, e2, e3))
            rhs = R.zero()
            if e1 == a:
                rhs = rhs + v.coefficient((e2, e3))
            # Delta_{1,1}(v) = x^b (x) x^c + sum_m h_m x^{c+m} (x) x^{b-m}
            pieces = [(b, c, R.one())]
            for m in range(0, e1 - c + 1):
                pieces.append((c + m, b - m, hcoef(m)))
            for left, right, coef in pieces:
                if coef.is_zero():
                    continue
                n = e1 - left
                if n < 0:
                    continue
                hn = hcoef(n)
                if hn.is_zero():
                    continue
                inner = fshuffle_mul(h, X(a - n), X(right)).coefficient((e2, e3))
                rhs = rhs + coef * hn * inner
            if lhs != rhs:
                mismatches["(1,2)"].append((e1, e2, e3))
    return mismatches


# ---------------------------------------------------------------------------
# probes of the wheel ideal

def evaluate(P: LaurentPoly, point) -> mpq:
    """Value of a rational-coefficient polynomial at a rational point."""
    if P.ring.n:
        raise TypeError("evaluation needs a generator-free ring")
    total = mpq(0)
    for e, c in P.num.items():
        term = c
        for x, k in zip(point, e):
            if k:
                term *= x ** k
        total += term
    return total / P.den[()]


def _orbit_sum(ring, lam):
    out = LaurentPoly.zero(ring, len(lam))
    for e in set(itertools.permutations(lam)):
        out = out + LaurentPoly.monomial(ring, e)
    return out


def _partitions_in_box(r, total, lo, hi):
    def rec(k, remaining, cap):
        if k == 0:
            if remaining == 0:
                yield ()
            return
        for x in range(min(cap, hi), lo - 1, -1):
            rest_min, rest_max = lo * (k - 1), x * (k - 1)
            if rest_min <= remaining - x <= rest_max:
                for tail in rec(k - 1, remaining - x, x):
                    yield (x,) + tail
    return list(rec(r, total, hi))


def _in_span(columns, target) -> bool:
    """Whether ``target`` is a rational combination of ``columns`` (sparse dicts)."""
    keys = sorted({k for col in columns for k in col} | set(target))
    idx = {k: i for i, k in enumerate(keys)}
    ncol = len(columns)
    M = fmpq_mat(len(keys), ncol + 1)
    for j, col in enumerate(columns):
        for k, v in col.items():
            M[idx[k], j] = fmpq(int(v.numerator), int(v.denominator))
    for k, v in target.items():
        M[idx[k], ncol] = fmpq(int(v.numerator), int(v.denominator))
    rank_aug = M.rref()[1]
    A = fmpq_mat(len(keys), ncol)
    for i in range(len(keys)):
        for j in range(ncol):
            A[i, j] = M[i, j]
    return A.rref()[1] == rank_aug


def _nullspace(rows, ncol):
    """Basis of the kernel of a rational matrix given as a list of rows."""
    M = fmpq_mat(len(rows), ncol)
    for i, row in enumerate(rows):
        for j, x in enumerate(row):
            M[i, j] = fmpq(int(x.numerator), int(x.denominator))
    E, rank = M.rref()
    pivots = []
    for i in range(rank):
        pivots.append(next(j for j in range(ncol) if E[i, j] != 0))
    basis = []
    for f in (j for j in range(ncol) if j not in pivots):
        vec = [mpq(0)] * ncol
        vec[f] = mpq(1)
        for i, j in enumerate(pivots):
            e = E[i, f]
            vec[j] = -mpq(int(e.p), int(e.q))
        basis.append(vec)
    return basis


@dataclass
class MembershipReport:
    rank: int
    exponent: int
    module: str
    upper_checked: int
    upper_failures: list
    lower_checked: int
    lower_failures: list
    ideal_dimension: int

    @property
    def upper_ok(self):
        return not self.upper_failures

    @property
    def lower_ok(self):
        return self.lower_checked > 0 and not self.lower_failures

    @property
    def ok(self):
        return self.upper_ok and self.lower_ok

    def to_json(self):
        return {"rank": self.rank, "exponent": self.exponent, "module": self.module,
                "upper_checked": self.upper_checked,
                "upper_failures": len(self.upper_failures),
                "lower_checked": self.lower_checked,
                "lower_failures": len(self.lower_failures),
                "ideal_dimension": self.ideal_dimension}


def in_wheel_ideal(P: LaurentPoly, curve: CurveData, trials: int, seed: int) -> bool:
    """Vanishing at random points of every wheel component (numeric curve)."""
    rng = random.Random(seed)
    r = P.r
    if r < 3:
        return True
    q = curve.q().as_rational()
    for alpha in curve.weil_numbers():
        a = alpha.as_rational()
        abar = q / a
        for _ in range(trials):
            t = mpq(rng.randint(2, 29), rng.randint(1, 13))
            rest = [mpq(rng.randint(2, 29), rng.randint(1, 13)) for _ in range(r - 3)]
            if evaluate(P, [a * abar * t, abar * t, t] + rest) != 0:
                return False
    return True


def _factorial(n):
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out


def wheel_ideal_sample_space(curve: CurveData, r: int, degree: int, box: int, seed: int):
    """Basis of ``I_r`` among symmetric polynomials of one degree inside a box.

    Membership is cut out by vanishing at wheel points; for r = 3 a single
    point per component suffices by homogeneity, otherwise enough random
    points are used to saturate the linear conditions.
    """
    R = curve.ring
    rng = random.Random(seed)
    lams = _partitions_in_box(r, degree, -box, box)
    basis = [_orbit_sum(R, lam) for lam in lams]
    if r < 3:
        return basis
    q = curve.q().as_rational()
    conditions = []
    for alpha in curve.weil_numbers():
        a = alpha.as_rational()
        abar = q / a
        npts = 1 if r == 3 else len(basis)
        for _ in range(npts):
            pt = [a * abar, abar, mpq(1)] + [mpq(rng.randint(2, 19), rng.randint(1, 7))
                                              for _ in range(r - 3)]
            conditions.append([evaluate(b, pt) for b in basis])
    out = []
    for vec in _nullspace(conditions, len(basis)):
        f = LaurentPoly.zero(R, r)
        for coef, b in zip(vec, basis):
            if coef:
                f = f + b * coef
        out.append(f)
    return out


def _as_columns(polys):
    return [{z: c.as_rational() for z, c in p.terms()} for p in polys]


def ideal_membership_probe(curve: CurveData, r: int = 3, trials: int = 10, seed: int = 0,
                           degree: int = 0, box: int = 2, samples: int = 3,
                           exponent: int | None = None, module: str = "symmetric",
                           psi_range: tuple | None = None) -> MembershipReport:
    """Probe both inclusions ``Delta^e I_r  in  A_r  in  I_r`` (default ``e = r!/2``).

    Upper: every ``Psi_r(z^I)`` used below must vanish at random wheel
    points.  Lower: random elements f of ``I_r`` of the given total degree
    with exponents in ``[-box, box]`` are tested for ``Delta^e f`` lying in

    * ``module="symmetric"``: the rational span of ``Psi_r(z^I)``, I with
      entries in ``psi_range`` and matching total degree;
    * ``module="lifted"``: the rational span of ``z^m Psi_r(z^I)``, I over
      the r! basis exponents ``0 <= n_i <= r-i`` and m over a box, i.e. a
      window of the ideal generated by ``A_r`` in all Laurent polynomials.

    All linear algebra is exact over the rationals.
    """
    if curve.mode != "numeric":
        raise ValueError("membership probes run on numeric specialisations")
    if module not in ("symmetric", "lifted"):
        raise ValueError("module must be 'symmetric' or 'lifted'")
    R = curve.ring
    kernel = kernel_gx(curve)
    rng = random.Random(seed)
    e = _factorial(r) // 2 if exponent is None else exponent
    ideal = wheel_ideal_sample_space(curve, r, degree, box, seed)

    V = vandermonde(R, r) ** e
    target_degree = degree + e * r * (r - 1) // 2
    lo, hi = psi_range if psi_range is not None else (-box, box + e * (r - 1))
    if module == "symmetric":
        images = [psi(kernel, LaurentPoly.monomial(R, lam)).payload
                  for lam in itertools.product(range(lo, hi + 1), repeat=r)
                  if sum(lam) == target_degree]
        spanning = images
    else:
        cols = itertools.product(*[range(r - i) for i in range(r)])
        images = [psi(kernel, LaurentPoly.monomial(R, I)).payload for I in cols]
        spanning = []
        for img, I in zip(images, itertools.product(*[range(r - i) for i in range(r)])):
            need = target_degree - sum(I)
            for m in itertools.product(range(lo, hi + 1), repeat=r):
                if sum(m) == need:
                    spanning.append(img * LaurentPoly.monomial(R, m))

    upper_failures = [k for k, img in enumerate(images)
                      if not in_wheel_ideal(img, curve, trials, seed + k)]

    columns = _as_columns(spanning)
    lower_failures = []
    checked = 0
    for _ in range(min(samples, len(ideal))):
        weights = [rng.randint(-5, 5) for _ in ideal]
        if not any(weights):
            weights[0] = 1
        f = LaurentPoly.zero(R, r)
        for wgt, b in zip(weights, ideal):
            if wgt:
                f = f + b * wgt
        if f.is_zero():
            continue
        checked += 1
        target = {z: c.as_rational() for z, c in (f * V).terms()}
        if not _in_span(columns, target):
            lower_failures.append(f.to_text())
    return MembershipReport(r, e, module, len(images), upper_failures, checked,
                            lower_failures, len(ideal))
