"""Reductive root data and the induction operators on group algebras.

A root datum is stored by its cocharacter lattice ``P`` (integer coordinates)
together with simple roots (linear forms on ``P``) and simple coroots
(vectors in ``P``).  Type ``A_n`` uses the ``GL_{n+1}`` lattice ``Z^{n+1}``
so that ``1_{e_i - e_j}`` is the ratio ``z_i/z_j`` of the shuffle side; ``B2``
uses ``Z^2`` with coroots ``e1 - e2`` and ``2 e2``; ``G2`` uses the coroot
lattice in the basis of simple coroots.

In type A the simple coroots are ``e_{i+1} - e_i``, so ``1_{-alpha_i^vee}`` is
``z_i/z_{i+1}`` and ``e_X(1_{alpha^vee})`` at a positive coroot is the
shuffle kernel ``g_X(z_i/z_j)`` with ``i < j``: the plain induction is the
shuffle symmetrisation with ``g_X`` and the dotted one uses the twisted
kernel ``zetatilde(z_j/z_i)``.

Everything here is expressed through coroots: the Weyl group acts on ``P`` by
integer matrices obtained by closing the simple reflections, lengths are
inversion counts on positive coroots, and ``2 rho`` is the sum of the
positive coroots.

Elements of the group algebra ``Z[P]`` are :class:`LaurentPoly` objects in
``dim P`` variables; ``1_mu`` is the monomial ``z^mu``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import flint

from .curvezeta import (CurveData, Kernel, kernel_ex, kernel_hx, kernel_k,
                        kernel_zetatilde)
from .exactalg import LaurentPoly, NotDivisible, Scalar, divide_exact

SUPPORTED_TYPES = ("A1", "A2", "A3", "B2", "G2")


def _mat_vec(M, x):
    return tuple(sum(a * b for a, b in zip(row, x)) for row in M)


def _mat_mul(A, B):
    n = len(B[0])
    return tuple(tuple(sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(n))
                 for i in range(len(A)))


def _identity(n):
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def _pair(form, x):
    return sum(a * b for a, b in zip(form, x))


@dataclass(frozen=True)
class RootDatum:
    """Simple roots ``alpha_i`` (forms on P) and simple coroots ``alpha_i^vee`` (in P)."""

    name: str
    dim: int
    simple_roots: tuple
    simple_coroots: tuple
    weyl: tuple = field(init=False, repr=False, compare=False)
    positive_coroots: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        cartan = [[_pair(a, c) for c in self.simple_coroots] for a in self.simple_roots]
        for i in range(self.rank):
            if cartan[i][i] != 2:
                raise ValueError("simple roots and coroots must pair to 2")
        object.__setattr__(self, "weyl", self._close())
        object.__setattr__(self, "positive_coroots", self._positive())

    @property
    def rank(self):
        return len(self.simple_roots)

    def cartan_matrix(self):
        return tuple(tuple(_pair(a, c) for c in self.simple_coroots) for a in self.simple_roots)

    def reflection(self, i):
        a, c = self.simple_roots[i], self.simple_coroots[i]
        n = self.dim
        return tuple(tuple(int(r == s) - c[r] * a[s] for s in range(n)) for r in range(n))

    def _close(self):
        gens = [self.reflection(i) for i in range(self.rank)]
        seen = {_identity(self.dim): ()}
        frontier = [_identity(self.dim)]
        while frontier:
            nxt = []
            for w in frontier:
                for i, s in enumerate(gens):
                    u = _mat_mul(s, w)
                    if u not in seen:
                        seen[u] = (i,) + seen[w]
                        nxt.append(u)
            frontier = nxt
        return tuple(sorted(seen, key=lambda w: (len(seen[w]), seen[w])))

    def _positive(self):
        roots = set()
        for w in self.weyl:
            for c in self.simple_coroots:
                roots.add(_mat_vec(w, c))
        pos = [r for r in roots if all(x >= 0 for x in self.simple_coordinates(r))]
        return tuple(sorted(pos, key=lambda r: (self.height(r), r)))

    # -- coordinates
    def simple_coordinates(self, x):
        """Coordinates of ``x`` in the basis of simple coroots, or None off their span."""
        return _coroot_coordinates(self.simple_coroots, tuple(x))

    def height(self, x):
        c = self.simple_coordinates(x)
        if c is None:
            raise ValueError(f"{x} is not in the coroot span")
        return sum(c)

    def in_positive_cone(self, x):
        """True when ``x`` is a non-negative integer combination of simple coroots."""
        c = self.simple_coordinates(x)
        return c is not None and all(k >= 0 and k.denominator == 1 for k in c)

    # -- Weyl group data
    @property
    def order(self):
        return len(self.weyl)

    def length(self, w):
        return len(self.inversions(w))

    def inversions(self, w):
        """Positive coroots sent to negative coroots by ``w``."""
        neg = {tuple(-x for x in r) for r in self.positive_coroots}
        return tuple(r for r in self.positive_coroots if _mat_vec(w, r) in neg)

    def inverse(self, w):
        for u in self.weyl:
            if _mat_mul(u, w) == _identity(self.dim):
                return u
        raise ValueError("not a Weyl group element")

    def act(self, w, x):
        return _mat_vec(w, x)

    @property
    def two_rho(self):
        out = [0] * self.dim
        for r in self.positive_coroots:
            out = [a + b for a, b in zip(out, r)]
        return tuple(out)

    @property
    def longest(self):
        return max(self.weyl, key=self.length)

    def orbit(self, mu):
        return tuple(sorted({_mat_vec(w, tuple(mu)) for w in self.weyl}))

    def to_json(self):
        return {"type": self.name, "lattice_rank": self.dim, "rank": self.rank,
                "cartan_matrix": [list(r) for r in self.cartan_matrix()],
                "weyl_order": self.order,
                "positive_coroots": [list(r) for r in self.positive_coroots],
                "two_rho": list(self.two_rho)}


@lru_cache(maxsize=None)
def _coroot_coordinates(basis, x):
    n, k = len(x), len(basis)
    C = flint.fmpq_mat(n, k, [basis[j][i] for i in range(n) for j in range(k)])
    Ct = C.transpose()
    X = flint.fmpq_mat(n, 1, list(x))
    sol = (Ct * C).solve(Ct * X)
    if C * sol != X:
        return None
    return tuple(Fraction(int(sol[i, 0].p), int(sol[i, 0].q)) for i in range(k))


@lru_cache(maxsize=None)
def root_datum(name: str) -> RootDatum:
    if name not in SUPPORTED_TYPES:
        raise ValueError(f"unsupported type {name!r}; expected one of {SUPPORTED_TYPES}")
    if name[0] == "A":
        n = int(name[1:]) + 1
        vecs = []
        for i in range(n - 1):
            e = [0] * n
            e[i], e[i + 1] = -1, 1
            vecs.append(tuple(e))
        return RootDatum(name, n, tuple(vecs), tuple(vecs))
    if name == "B2":
        return RootDatum(name, 2, ((1, -1), (0, 1)), ((1, -1), (0, 2)))
    # G2: alpha_1 short, alpha_2 long; coroot lattice with basis the simple coroots
    return RootDatum(name, 2, ((2, -1), (-3, 2)), ((1, 0), (0, 1)))


def weyl_order_polynomial(datum: RootDatum, q: Scalar) -> Scalar:
    """``#B(F_q)``-type count ``sum_w q^{l(w)}``."""
    out = q.ring.zero()
    for w in datum.weyl:
        out = out + q ** datum.length(w)
    return out


# ---------------------------------------------------------------------------
# group algebra helpers

def monomial(ring, mu, coeff=1) -> LaurentPoly:
    return LaurentPoly.monomial(ring, tuple(mu), coeff)


def act(datum: RootDatum, w, f: LaurentPoly) -> LaurentPoly:
    """``w . f`` with ``w . 1_mu = 1_{w mu}``."""
    cols = [tuple(w[i][k] for i in range(datum.dim)) for k in range(datum.dim)]
    return f.subs_monomial(datum.dim, cols)


def orbit_sum(datum: RootDatum, ring, mu) -> LaurentPoly:
    out = LaurentPoly.zero(ring, datum.dim)
    for nu in datum.orbit(mu):
        out = out + monomial(ring, nu)
    return out


def is_invariant(datum: RootDatum, f: LaurentPoly) -> bool:
    return all(act(datum, datum.reflection(i), f) == f for i in range(datum.rank))


def _kernel_numerator(datum, K: Kernel, alpha):
    """Split ``K(1_alpha) = N / (1 - 1_alpha)``; returns N as a Laurent polynomial."""
    R = K.ring
    one = LaurentPoly.one(R, datum.dim)
    a = tuple(alpha)
    neg = tuple(-x for x in a)
    if len(K.den) != 1 or K.den[0][0] != R.one():
        raise ValueError("kernel denominator must be 1 - z or 1 - z^-1")
    out = monomial(R, tuple(K.power * x for x in a), K.const)
    for c, e in K.num:
        out = out * (one - monomial(R, a if e == 1 else neg, c))
    if K.den[0][1] == -1:
        # 1/(1 - z^-1) = -z/(1 - z)
        out = out * monomial(R, a, -1)
    return out


def _weyl_denominator(datum, ring):
    """``prod_{alpha > 0} (1 - 1_{alpha})`` with alpha running over positive coroots."""
    one = LaurentPoly.one(ring, datum.dim)
    out = one
    for a in datum.positive_coroots:
        out = out * (one - monomial(ring, a))
    return out


def symmetrize_kernel(datum: RootDatum, K: Kernel, f: LaurentPoly) -> LaurentPoly:
    """``sum_{w in W} w(prod_{alpha > 0} K(1_{alpha^vee}) f)`` by exact division.

    Write ``K(1_alpha) = N_alpha / (1 - 1_alpha)`` and ``D = prod (1 - 1_alpha)``.
    Then ``w(D) = sign(w) 1_{w rho - rho} D`` with an integral shift, so the
    sum is ``sum_w sign(w) 1_{rho - w rho} w(N f)`` divided by ``D``.
    """
    R = K.ring
    if f.ring != R or f.r != datum.dim:
        raise TypeError("f must be a group-algebra element over the kernel ring")
    N = LaurentPoly.one(R, datum.dim)
    for a in datum.positive_coroots:
        N = N * _kernel_numerator(datum, K, a)
    D = _weyl_denominator(datum, R)
    base = N * f
    acc = LaurentPoly.zero(R, datum.dim)
    rho2 = datum.two_rho
    for w in datum.weyl:
        shift = tuple((b - a) // 2 for a, b in zip(_mat_vec(w, rho2), rho2))
        acc = acc + act(datum, w, base) * monomial(R, shift, (-1) ** datum.length(w))
    try:
        return divide_exact(acc, D)
    except NotDivisible as exc:
        raise ArithmeticError("symmetrisation numerator not divisible by the Weyl denominator") from exc


def symmetrize_direct(datum: RootDatum, K: Kernel, f: LaurentPoly) -> LaurentPoly:
    """Same sum over the W-invariant common denominator ``prod_{alpha > 0} (1 - 1_alpha)(1 - 1_{-alpha})``."""
    R = K.ring
    one = LaurentPoly.one(R, datum.dim)
    N = LaurentPoly.one(R, datum.dim)
    opposite = LaurentPoly.one(R, datum.dim)
    for a in datum.positive_coroots:
        N = N * _kernel_numerator(datum, K, a)
        opposite = opposite * (one - monomial(R, tuple(-x for x in a)))
    full = _weyl_denominator(datum, R) * opposite
    acc = LaurentPoly.zero(R, datum.dim)
    for w in datum.weyl:
        acc = acc + act(datum, w, N * f) * act(datum, w, opposite)
    return divide_exact(acc, full)


# ---------------------------------------------------------------------------
# the operators

def _check_curve(curve):
    if not isinstance(curve, CurveData):
        raise TypeError("curve must be CurveData")
    return curve


def psi_g(datum: RootDatum, curve: CurveData, f, dotted: bool = False) -> LaurentPoly:
    """Plain induction with ``e_X(z) = z^{1-g} zetatilde(z)`` or the dotted one with ``zetatilde``.

    ``f`` is a weight (tuple) or a group-algebra element over ``curve.ring``.
    """
    curve = _check_curve(curve)
    if not isinstance(f, LaurentPoly):
        f = monomial(curve.ring, f)
    K = kernel_zetatilde(curve) if dotted else kernel_ex(curve)
    return symmetrize_kernel(datum, K, f)


def nu_g(datum: RootDatum, g: int, f) -> LaurentPoly:
    """``sum_w w(prod_{alpha > 0} k(1_{alpha^vee}) f)`` over the spectral ring."""
    K = kernel_k(g)
    if not isinstance(f, LaurentPoly):
        f = monomial(K.ring, f)
    return symmetrize_kernel(datum, K, f)


def dot_shift(datum: RootDatum, g: int, lam) -> tuple:
    """``2(g-1) rho + lam``: the weight whose plain induction equals the dotted one of ``lam``."""
    return tuple(2 * (g - 1) * r // 2 + x for r, x in zip(datum.two_rho, lam))


# ---------------------------------------------------------------------------
# constant terms

def _factor_series(curve, order):
    return kernel_hx(curve).series(order)


def _compositions(datum, roots, target, coeffs, zero):
    """Coefficient of ``1_target`` in ``prod_{a in roots} H(1_a)``, ``H = sum coeffs[n] z^n``."""
    if not roots:
        return zero + 1 if not any(target) else zero
    a, rest = roots[0], roots[1:]
    total = zero
    n = 0
    cur = tuple(target)
    while datum.height(cur) >= 0:
        c = coeffs.get(n)
        if c is not None and (not any(cur) or datum.in_positive_cone(cur)):
            total = total + c * _compositions(datum, rest, cur, coeffs, zero)
        n += 1
        cur = tuple(x - y for x, y in zip(cur, a))
    return total


def gk_coefficient(datum: RootDatum, curve: CurveData, lam, mu) -> Scalar:
    """Coefficient of ``1_mu`` in the constant term of ``Ind(1_lam)``.

    ``sum_w c_w 1_{w lam}`` with ``c_w = prod_{alpha in S(w)} h_X(1_{-alpha^vee})``,
    ``S(w)`` the positive coroots made negative by ``w^-1`` and each ``h_X``
    expanded in non-negative powers of ``1_{-alpha^vee}``.
    """
    R = curve.ring
    total = R.zero()
    mu = tuple(mu)
    for w in datum.weyl:
        diff = tuple(b - a for a, b in zip(mu, _mat_vec(w, tuple(lam))))
        if any(diff) and not datum.in_positive_cone(diff):
            continue
        S = datum.inversions(datum.inverse(w))
        if not S:
            if not any(diff):
                total = total + R.one()
            continue
        coeffs = _factor_series(curve, int(datum.height(diff)))
        total = total + _compositions(datum, S, diff, coeffs, R.zero())
    return total


def gk_restriction(datum: RootDatum, curve: CurveData, lam, order: int) -> dict:
    """All terms ``1_mu`` with ``w lam - mu`` of height at most ``order`` for some w.

    Returns ``{mu: Scalar}`` (nonzero entries).  Every coefficient is exact:
    it collects contributions from every Weyl element, not only those within
    the height bound.
    """
    lam = tuple(lam)
    cands = set()
    for w in datum.weyl:
        base = _mat_vec(w, lam)
        for nu in _cone_points(datum, order):
            cands.add(tuple(a - b for a, b in zip(base, nu)))
    out = {}
    for mu in sorted(cands):
        c = gk_coefficient(datum, curve, lam, mu)
        if not c.is_zero():
            out[mu] = c
    return out


@lru_cache(maxsize=None)
def _cone_points(datum, order):
    pts = {(0,) * datum.dim}
    frontier = set(pts)
    for _ in range(order):
        nxt = set()
        for p in frontier:
            for c in datum.simple_coroots:
                nxt.add(tuple(a + b for a, b in zip(p, c)))
        pts |= nxt
        frontier = nxt
    return tuple(sorted(pts))


# ---------------------------------------------------------------------------
# Hecke equivariance and the skyscraper class

@dataclass
class HeckeCheck:
    datum: str
    weight: tuple
    invariant: bool
    nu_commutes: bool
    psi_commutes: bool

    @property
    def holds(self):
        return self.invariant and self.nu_commutes and self.psi_commutes

    def to_json(self):
        return {"type": self.datum, "weight": list(self.weight), "invariant": self.invariant,
                "nu_commutes": self.nu_commutes, "psi_commutes": self.psi_commutes,
                "holds": self.holds}


def _as_poly(datum, ring, chi):
    if isinstance(chi, LaurentPoly):
        return chi
    out = LaurentPoly.zero(ring, datum.dim)
    for mu, c in chi.items():
        out = out + monomial(ring, mu, c)
    return out


def hecke_equivariance_check(datum: RootDatum, g: int, chi: dict, lam) -> HeckeCheck:
    """``nu(chi f) = chi nu(f)`` and ``dotted Psi(chi f) = chi dotted Psi(f)`` at ``f = 1_lam``.

    ``chi`` maps weights to integer coefficients; it must be W-invariant.
    """
    curve = CurveData.symbolic(g)
    Kring = kernel_k(g).ring
    chi_k = _as_poly(datum, Kring, chi)
    chi_h = _as_poly(datum, curve.ring, chi)
    if not is_invariant(datum, chi_k):
        raise ValueError("chi is not W-invariant")
    f_k = monomial(Kring, lam)
    f_h = monomial(curve.ring, lam)
    nu_ok = nu_g(datum, g, chi_k * f_k) == chi_k * nu_g(datum, g, f_k)
    psi_ok = psi_g(datum, curve, chi_h * f_h, dotted=True) == chi_h * psi_g(datum, curve, f_h, dotted=True)
    return HeckeCheck(datum.name, tuple(lam), True, nu_ok, psi_ok)


@dataclass
class SkyscraperG:
    datum: str
    genus: int
    form: str
    prefactor: Scalar
    argument: LaurentPoly
    image: LaurentPoly

    def to_json(self):
        return {"type": self.datum, "genus": self.genus, "form": self.form,
                "prefactor": self.prefactor.to_text(),
                "argument": self.argument.to_text(), "image": self.image.to_text()}


def skyscraper_q_exponent(datum: RootDatum, g: int, form: str = "derived") -> int:
    """``-2 g N`` (each positive coroot contributes ``q^-g`` from both of its
    Weil-number factors) or the naive ``-g N`` of the reflected form; N positive roots."""
    N = len(datum.positive_coroots)
    if form == "derived":
        return -2 * g * N
    if form == "reflected":
        return -g * N
    raise ValueError("form is 'derived' or 'reflected'")


def skyscraper_prefactor(datum: RootDatum, curve: CurveData, q_exponent=None) -> Scalar:
    """``(-1)^N q^E / #B(F_q)`` with ``#B(F_q) = sum_w q^{l(w)}``."""
    N = len(datum.positive_coroots)
    q = curve.q()
    E = skyscraper_q_exponent(datum, curve.genus) if q_exponent is None else q_exponent
    return q ** E * (-1) ** N / weyl_order_polynomial(datum, q)


def skyscraper_argument(datum: RootDatum, curve: CurveData, form: str = "derived") -> LaurentPoly:
    """``1_{2 rho} prod_{alpha > 0} prod_l (1 - a_l 1_{-alpha})(1 - abar_l 1_{-alpha})``.

    ``form="reflected"`` flips both signs: ``1_{-2 rho}`` and ``1_{alpha}``.
    """
    if form not in ("derived", "reflected"):
        raise ValueError("form is 'derived' or 'reflected'")
    sgn = 1 if form == "derived" else -1
    R = curve.ring
    one = LaurentPoly.one(R, datum.dim)
    out = monomial(R, tuple(sgn * x for x in datum.two_rho))
    for a in datum.positive_coroots:
        root = tuple(-sgn * x for x in a)
        for w in curve.weil_numbers():
            out = out * (one - monomial(R, root, w))
    return out


def skyscraper_g(datum: RootDatum, g: int, form: str = "derived") -> SkyscraperG:
    """Prefactor times the dotted induction of the skyscraper argument.

    For type A this equals the normalised skyscraper class of the shuffle side.
    """
    curve = CurveData.symbolic(g)
    pref = skyscraper_prefactor(datum, curve, skyscraper_q_exponent(datum, g, form))
    arg = skyscraper_argument(datum, curve, form)
    image = psi_g(datum, curve, arg, dotted=True) * pref
    return SkyscraperG(datum.name, g, form, pref, arg, image)


def skyscraper_closed_form(datum: RootDatum, g: int) -> LaurentPoly:
    """``prod over all coroots alpha of prod_l (1 - a_l^-1 1_alpha)(1 - abar_l^-1 1_alpha)``."""
    curve = CurveData.symbolic(g)
    R = curve.ring
    one = LaurentPoly.one(R, datum.dim)
    out = one
    for a in datum.positive_coroots:
        for root in (a, tuple(-x for x in a)):
            for w in curve.weil_numbers():
                out = out * (one - monomial(R, root, w.inverse()))
    return out
