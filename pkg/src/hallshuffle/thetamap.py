"""The dictionary between the Hall side and the K-theory side.

Scalars on the Hall side live in ``Q(v, a_1..a_g)`` (``q = v^-2``, Weil
numbers ``a_l`` and ``q/a_l``).  On the K-theory side they live in
``Q(v, x_1..x_g)`` with ``p = v^2`` and ``y_l = p/x_l``, so ``p = x_l y_l``
holds by construction.  ``identify`` sends ``a_l -> x_l^-1`` and ``v -> v``;
it therefore sends ``q -> p^-1`` and ``q/a_l -> y_l^-1``.

The comparison map on payloads is a rescaled identity: undo the variable
identification, then multiply by ``q^(ng) / #Pic^0^n`` in rank n.  Products
are reversed along the way (symmetrising with ``k(z)`` equals symmetrising
the reversed monomial with ``k(z^-1)``), which is recorded by
``ORDER_REVERSING``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .curvezeta import (CurveData, ground_ring, kernel_gx,
                        kernel_gx_twisted, kernel_k, kernel_zetatilde,
                        pic0_order, spectral_ring)
from .exactalg import LaurentPoly, Scalar, ScalarRing, permute
from .shufflecore import psi, psi_direct

ORDER_REVERSING = True


def _images_to_spectral(g: int):
    R = spectral_ring(g)
    return [R.gen("v")] + [R.gen(f"x{l + 1}").inverse() for l in range(g)]


def _images_to_ground(g: int):
    R = ground_ring(g)
    return [R.gen("v")] + [R.gen(f"a{l + 1}").inverse() for l in range(g)]


def _genus_of(ring: ScalarRing) -> int:
    return ring.n - 1


def identify(a):
    """Hall-side scalar, LaurentPoly or Kernel -> K-theory side."""
    g = _genus_of(a.ring)
    target, images = spectral_ring(g), _images_to_spectral(g)
    if isinstance(a, Scalar):
        return a.subs(target, images)
    return a.specialize(target, images)


def identify_inverse(a):
    """K-theory-side scalar, LaurentPoly or Kernel -> Hall side."""
    g = _genus_of(a.ring)
    target, images = ground_ring(g), _images_to_ground(g)
    if isinstance(a, Scalar):
        return a.subs(target, images)
    return a.specialize(target, images)


def p(g: int) -> Scalar:
    return spectral_ring(g).gen("v") ** 2


def x(g: int, l: int) -> Scalar:
    return spectral_ring(g).gen(f"x{l + 1}")


def y(g: int, l: int) -> Scalar:
    return p(g) / x(g, l)


def nu_n(P: LaurentPoly, g: int) -> LaurentPoly:
    """``Sym_n(k(z_1..z_n) P)`` by summing the n! rational functions."""
    if P.ring != spectral_ring(g):
        raise TypeError("nu_n expects a polynomial over the spectral ring")
    if P.r <= 1:
        return P
    return psi_direct(kernel_k(g), P)


def kappa_at(g: int, r: int, i: int, j: int) -> LaurentPoly:
    """``kappa(z_i/z_j) = prod_l (1 - x_l z_i/z_j)(1 - y_l z_i/z_j)``."""
    R = spectral_ring(g)
    mono = [0] * r
    mono[i] += 1
    mono[j] -= 1
    out = LaurentPoly.one(R, r)
    for l in range(g):
        for c in (x(g, l), y(g, l)):
            out = out * (LaurentPoly.one(R, r) - LaurentPoly.monomial(R, mono, c))
    return out


def skyscraper_class(r: int, g: int) -> LaurentPoly:
    """``prod_{i,j=1..r} kappa(z_i/z_j)``."""
    if r < 1:
        raise ValueError("r >= 1 required")
    out = LaurentPoly.one(spectral_ring(g), r)
    for i in range(r):
        for j in range(r):
            out = out * kappa_at(g, r, i, j)
    return out


def rho2(r: int) -> tuple:
    """``2 rho = (r-1, r-3, ..., 1-r)``."""
    return tuple(r - 1 - 2 * i for i in range(r))


def q_factorial(q: Scalar, r: int) -> Scalar:
    """``[r]! = prod_{s<=r} (1 + q + ... + q^(s-1))``."""
    out = q.ring.one()
    for s in range(1, r + 1):
        term = q.ring.zero()
        for k in range(s):
            term = term + q ** k
        out = out * term
    return out


def triv1_argument(r: int, g: int) -> LaurentPoly:
    """``z^{2 rho} prod_{i<j} prod_l (1 - x_l^-1 z_j/z_i)(1 - y_l^-1 z_j/z_i)``."""
    R = spectral_ring(g)
    out = LaurentPoly.monomial(R, rho2(r))
    for i in range(r):
        for j in range(i + 1, r):
            mono = [0] * r
            mono[j] += 1
            mono[i] -= 1
            for l in range(g):
                for c in (x(g, l), y(g, l)):
                    out = out * (LaurentPoly.one(R, r) - LaurentPoly.monomial(R, mono, c.inverse()))
    return out


def off_diagonal_kappa(r: int, g: int) -> LaurentPoly:
    out = LaurentPoly.one(spectral_ring(g), r)
    for i in range(r):
        for j in range(r):
            if i != j:
                out = out * kappa_at(g, r, i, j)
    return out


def off_diagonal_inverse_factors(r: int, g: int) -> LaurentPoly:
    """``prod_{i != j} prod_l (1 - x_l^-1 z_i/z_j)(1 - y_l^-1 z_i/z_j)``."""
    R = spectral_ring(g)
    out = LaurentPoly.one(R, r)
    for i in range(r):
        for j in range(r):
            if i == j:
                continue
            mono = [0] * r
            mono[i] += 1
            mono[j] -= 1
            for l in range(g):
                for c in (x(g, l), y(g, l)):
                    out = out * (LaurentPoly.one(R, r) - LaurentPoly.monomial(R, mono, c.inverse()))
    return out


@dataclass
class Triv1Result:
    rank: int
    genus: int
    holds: bool
    middle_holds: bool
    q_exponent: int | None
    lhs: LaurentPoly
    rhs: LaurentPoly

    def to_json(self):
        return {"rank": self.rank, "genus": self.genus, "holds": self.holds,
                "middle_holds": self.middle_holds, "q_exponent": self.q_exponent,
                "lhs": self.lhs.to_text(), "rhs": self.rhs.to_text()}


def triv1_q_exponent(r: int, g: int) -> int:
    """Exponent E with ``prod_{i!=j} prod_l (1 - x^-1 w)(1 - y^-1 w) = q^E prod_{i!=j} kappa``.

    Each ordered pair and each l contributes ``(x_l y_l)^-1 = q`` once.
    """
    return g * r * (r - 1)


def verify_triv1(r: int, g: int, q_exponent: int | None = None) -> Triv1Result:
    """Symmetrise the skyscraper argument with ``k(z)`` and compare.

    Checks ``Psi_r(argument) = (-1)^{r(r-1)/2} [r]! * M`` where ``M`` is the
    product over ordered pairs of the inverted factors, and that ``M`` equals
    ``q^E prod_{i != j} kappa(z_i/z_j)`` for ``E = q_exponent`` (default: the
    exponent from :func:`triv1_q_exponent`).
    """
    if r > 3 or g > 2:
        raise ValueError("verify_triv1 supports r <= 3 and g <= 2")
    E = triv1_q_exponent(r, g) if q_exponent is None else q_exponent
    q = p(g).inverse()
    lhs = psi(kernel_k(g), triv1_argument(r, g)).payload
    sign = (-1) ** (r * (r - 1) // 2)
    middle = off_diagonal_inverse_factors(r, g) * (q_factorial(q, r) * sign)
    rhs = off_diagonal_kappa(r, g) * (q_factorial(q, r) * sign * q ** E)
    return Triv1Result(r, g, lhs == rhs, lhs == middle, E, lhs, rhs)


def theta_normalize(A: LaurentPoly, g: int) -> LaurentPoly:
    """Undo ``identify`` and rescale by ``q^(ng) / #Pic^0^n`` (n = rank)."""
    n = A.r
    curve = CurveData.symbolic(g)
    scale = (curve.q() ** g / pic0_order(curve)) ** n
    return identify_inverse(A) * scale


def reverse_variables(P: LaurentPoly) -> LaurentPoly:
    return permute(P, tuple(P.r - 1 - i for i in range(P.r)))


@dataclass
class SkyscraperImage:
    rank: int
    genus: int
    variant: str
    sign: int
    q_exponent: int
    naive_q_exponent: int
    argument: LaurentPoly
    psi_image: LaurentPoly
    theta_image: LaurentPoly

    @property
    def prefactor(self) -> Scalar:
        """``sign * q^{q_exponent} / [r]!`` over the Hall-side ring."""
        q = CurveData.symbolic(self.genus).q()
        return q ** self.q_exponent * self.sign / q_factorial(q, self.rank)

    @property
    def consistent(self) -> bool:
        return self.psi_image * self.prefactor == self.theta_image

    def to_json(self):
        return {"rank": self.rank, "genus": self.genus, "variant": self.variant,
                "prefactor": {"sign": self.sign, "q_exponent": self.q_exponent,
                              "q_factorial_rank": self.rank,
                              "text": self.prefactor.to_text()},
                "naive_q_exponent": self.naive_q_exponent,
                "argument": self.argument.to_text(),
                "psi_image": self.psi_image.to_text(),
                "theta_image": self.theta_image.to_text(),
                "consistent": self.consistent}


def skyscraper_argument(r: int, g: int, variant: str = "twisted") -> LaurentPoly:
    """``z^{-2 rho}`` (twisted) or ``z^{-2g rho}`` (plain) times
    ``prod_{i<j} prod_l (1 - a_l z_i/z_j)(1 - abar_l z_i/z_j)``."""
    curve = CurveData.symbolic(g)
    R = curve.ring
    shift = 1 if variant == "twisted" else g
    out = LaurentPoly.monomial(R, tuple(-shift * e for e in rho2(r)))
    for i in range(r):
        for j in range(i + 1, r):
            mono = [0] * r
            mono[i] += 1
            mono[j] -= 1
            for a in curve.weil_numbers():
                out = out * (LaurentPoly.one(R, r) - LaurentPoly.monomial(R, mono, a))
    return out


def theta_skyscraper(r: int, g: int, variant: str = "twisted") -> SkyscraperImage:
    """Image of the skyscraper class as ``prefactor * Ind(argument)``.

    The q-exponent is obtained from the chain: skyscraper class = diagonal
    factor ``(q^-g #Pic^0)^r`` times ``q^-E / ((-1)^{r(r-1)/2} [r]!)`` times
    ``Psi^k(triv1 argument)``; ``theta_normalize`` cancels the diagonal
    factor, ``identify_inverse`` turns ``k`` into ``zetatilde`` and reversing
    the variables turns that into the twisted product kernel.  ``psi_image``
    is ``Ind(argument)`` computed with the twisted (or plain) product kernel
    and ``theta_image`` is ``theta_normalize(skyscraper_class(r))``.
    """
    if r > 4:
        raise ValueError("theta_skyscraper supports r <= 4")
    if variant not in ("twisted", "plain"):
        raise ValueError("variant is 'twisted' or 'plain'")
    curve = CurveData.symbolic(g)
    kernel = kernel_gx_twisted(curve) if variant == "twisted" else kernel_gx(curve)
    argument = skyscraper_argument(r, g, variant)
    image = psi(kernel, argument).payload
    theta = theta_normalize(skyscraper_class(r, g), g)
    sign = (-1) ** (r * (r - 1) // 2)
    return SkyscraperImage(r, g, variant, sign, -triv1_q_exponent(r, g),
                           -g * r * (r + 1) // 2, argument, image, theta)


def zetatilde_matches_k(g: int) -> bool:
    return identify(kernel_zetatilde(CurveData.symbolic(g))) == kernel_k(g)


def degree_one_image(d: int, g: int) -> LaurentPoly:
    """``theta_normalize(z^d [O_0])`` in rank one."""
    R = spectral_ring(g)
    return theta_normalize(skyscraper_class(1, g) * LaurentPoly.monomial(R, (d,)), g)
