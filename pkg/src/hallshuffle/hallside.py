"""Hall-algebra bookkeeping above the shuffle model.

Classes in the numerical Grothendieck group are pairs ``(rank, degree)``.
The constant term ``J_r`` of a Hall function is a table of coefficients
indexed by degree vectors ``(e_1..e_r)``; products of Hall functions go to
products in the F-shuffle algebra with kernel ``h_X``.

Two families of tables are computed exactly on finite windows:

* ``J_r(1^vec_{r,d})`` (all vector bundles of class ``(r,d)``), which is a
  pure power of ``v`` at each degree vector;
* ``J_2(1^ss_{2,d})`` (semistable bundles), obtained from the first by
  subtracting the Harder-Narasimhan strata.

``buntriv_convergence`` pushes partial sums of the stratification through
the comparison with the K-theory side and tracks their adic degree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .curvezeta import CurveData, ground_ring, kernel_gx, kernel_hx, pic0_order
from .exactalg import LaurentPoly, Scalar
from .shufflecore import (FSeriesElement, fshuffle_mul, generator, psi,
                          twisted_mul)
from .thetamap import identify, reverse_variables


class RecursionWindowError(ValueError):
    """The slope window cannot close the stratification recursion."""

    def __init__(self, message, required=None):
        super().__init__(message)
        self.required = required


# ---------------------------------------------------------------------------
# classes and Harder-Narasimhan types

@dataclass(frozen=True, order=True)
class ClassZ2:
    rank: int
    degree: int

    @property
    def slope(self):
        """``d/r`` as a Fraction, or ``math.inf`` for torsion classes."""
        if self.rank == 0:
            return math.inf
        return Fraction(self.degree, self.rank)

    @property
    def is_positive(self) -> bool:
        return self.rank >= 1 or (self.rank == 0 and self.degree >= 1)

    def __add__(self, other):
        return ClassZ2(self.rank + other.rank, self.degree + other.degree)

    def to_json(self):
        return [self.rank, self.degree]


@dataclass(frozen=True)
class GenusLinear:
    """An integer ``const + g_coeff * g``."""

    const: int
    g_coeff: int

    def __call__(self, g: int) -> int:
        return self.const + self.g_coeff * g

    def to_text(self):
        if self.g_coeff == 0:
            return str(self.const)
        g = {1: "g", -1: "-g"}.get(self.g_coeff, f"{self.g_coeff}*g")
        if self.const == 0:
            return g
        return f"{self.const} + {g}" if self.g_coeff > 0 else f"{self.const} - {g.lstrip('-')}"


def euler_form(F: ClassZ2, G: ClassZ2, g: int | None = None):
    """``(1-g) r_F r_G + (r_F d_G - r_G d_F)``.

    With ``g`` given the value is an integer; otherwise a :class:`GenusLinear`.
    """
    rr = F.rank * G.rank
    det = F.rank * G.degree - G.rank * F.degree
    form = GenusLinear(rr + det, -rr)
    return form if g is None else form(g)


@dataclass(frozen=True)
class HNType:
    parts: tuple

    def __post_init__(self):
        parts = tuple(p if isinstance(p, ClassZ2) else ClassZ2(*p) for p in self.parts)
        object.__setattr__(self, "parts", parts)
        if not parts:
            raise ValueError("an HN type has at least one part")
        for p in parts:
            if not p.is_positive:
                raise ValueError(f"class {p.to_json()} is not effective")
        slopes = [p.slope for p in parts]
        if any(a >= b for a, b in zip(slopes, slopes[1:])):
            raise ValueError("slopes must be strictly increasing")

    @property
    def weight(self) -> ClassZ2:
        out = ClassZ2(0, 0)
        for p in self.parts:
            out = out + p
        return out

    @property
    def slopes(self):
        return [p.slope for p in self.parts]

    def pairing_exponent(self, g: int) -> int:
        """``sum_{i<j} <alpha_i, alpha_j>``."""
        ps = self.parts
        return sum(euler_form(ps[i], ps[j], g)
                   for i in range(len(ps)) for j in range(i + 1, len(ps)))

    def to_json(self):
        return [p.to_json() for p in self.parts]


def _as_window(slope_window):
    lo, hi = slope_window
    return Fraction(lo), Fraction(hi)


def hn_types(r: int, d: int, slope_window) -> list:
    """All HN types of weight ``(r, d)`` with vector-bundle parts and slopes in the window.

    Ordered by number of parts, then by largest slope, then lexicographically.
    """
    if r < 1:
        raise ValueError("r >= 1 required")
    lo, hi = _as_window(slope_window)
    out = []

    def rec(rank_left, deg_left, floor, acc):
        if rank_left == 0:
            if deg_left == 0:
                out.append(HNType(tuple(acc)))
            return
        for ri in range(1, rank_left + 1):
            dmin = math.ceil(ri * lo)
            dmax = math.floor(ri * hi)
            for di in range(dmin, dmax + 1):
                mu = Fraction(di, ri)
                if floor is not None and mu <= floor:
                    continue
                if ri == rank_left and di != deg_left:
                    continue
                rec(rank_left - ri, deg_left - di, mu, acc + [ClassZ2(ri, di)])

    if lo <= hi:
        rec(r, d, None, [])
    out.sort(key=lambda t: (len(t.parts), t.slopes[-1], [p.degree for p in t.parts]))
    return out


# ---------------------------------------------------------------------------
# coefficient tables

@dataclass
class CoefficientTable:
    """Coefficients of a constant term on ``|e_k| <= window`` with ``sum e = degree``."""

    rank: int
    degree: int
    genus: int
    window: int
    entries: dict = field(default_factory=dict)

    def keys(self):
        return degree_vectors(self.rank, self.degree, self.window)

    def __getitem__(self, e):
        c = self.entries.get(tuple(e))
        return c if c is not None else None

    def get(self, e, ring):
        c = self.entries.get(tuple(e))
        return ring.zero() if c is None else c

    def nonzero(self):
        return {e: c for e, c in self.entries.items() if not c.is_zero()}

    def equals(self, other) -> bool:
        a, b = self.nonzero(), other.nonzero()
        if set(a) != set(b):
            return False
        return all(a[e] == b[e] for e in a)

    def to_json(self):
        return {"rank": self.rank, "degree": self.degree, "genus": self.genus,
                "window": self.window,
                "coefficients": [{"exponents": list(e), "value": c.normalized().to_text()}
                                 for e, c in sorted(self.nonzero().items())]}


def degree_vectors(r: int, d: int, window: int) -> list:
    """All ``(e_1..e_r)`` with ``|e_k| <= window`` and ``sum e = d``."""
    out = []

    def rec(k, left, acc):
        if k == r - 1:
            if abs(left) <= window:
                out.append(tuple(acc + [left]))
            return
        for e in range(-window, window + 1):
            rec(k + 1, left - e, acc + [e])

    if r >= 1:
        rec(0, d, [])
    return out


def _vpow(ring, k):
    return ring.gen("v") ** k


def onevec_exponent(e, g: int) -> int:
    """``sum_{i<j} <(1,e_i),(1,e_j)>``."""
    r = len(e)
    return sum((1 - g) + e[j] - e[i] for i in range(r) for j in range(i + 1, r))


def constant_term_onevec(r: int, d: int, window: int, g: int) -> CoefficientTable:
    """``J_r(1^vec_{r,d})`` on the window: ``v^{sum_{i<j} <(1,e_i),(1,e_j)>}``."""
    R = ground_ring(g)
    entries = {e: _vpow(R, onevec_exponent(e, g)) for e in degree_vectors(r, d, window)}
    return CoefficientTable(r, d, g, window, entries)


def _curve_for(g, curve):
    if curve is None:
        return CurveData.symbolic(g)
    if curve.genus != g:
        raise ValueError("curve genus does not match g")
    return curve


def required_slope_window(d: int, window: int) -> tuple:
    """Slopes of rank-one parts that can reach a rank-two table on the window.

    A stratum ``[(1,d_1),(1,d_2)]`` touches the coefficient at ``(e_1, e_2)``
    only when ``d_1 = e_1`` or ``d/2 < d_2 <= e_1``.
    """
    return (Fraction(min(-window, d - window)), Fraction(max(window, d + window)))


@lru_cache(maxsize=None)
def _rank_one_product(curve: CurveData, d1: int, d2: int) -> FSeriesElement:
    R = curve.ring
    return fshuffle_mul(kernel_hx(curve), FSeriesElement.monomial(R, (d1,)),
                        FSeriesElement.monomial(R, (d2,)))


def semistable_1ss(r: int, d: int, window: int, g: int, curve: CurveData | None = None,
                   slope_window=None) -> CoefficientTable:
    """``J_r(1^ss_{r,d})`` on the window.

    Every HN stratum with at least two parts inside ``slope_window`` is
    weighted by ``v^{sum <alpha_i, alpha_j>}``, multiplied out with
    ``fshuffle_mul`` and subtracted from ``J_r(1^vec_{r,d})``.  The default
    slope window is the one returned by :func:`required_slope_window`; a
    narrower one raises :class:`RecursionWindowError`.
    """
    if r < 1:
        raise ValueError("r >= 1 required")
    curve = _curve_for(g, curve)
    onevec = constant_term_onevec(r, d, window, g)
    if curve.mode != "symbolic":
        images = CurveData.symbolic(g).specialization(curve)
        onevec.entries = {e: c.subs(curve.ring, images) for e, c in onevec.entries.items()}
    if r == 1:
        return onevec
    if r > 2:
        raise RecursionWindowError(
            "rank-3 strata involve infinitely many rank-one and rank-two pieces "
            "at each coefficient; only ranks 1 and 2 close on a finite window",
            required=None)
    need = required_slope_window(d, window)
    sw = need if slope_window is None else _as_window(slope_window)
    if sw[0] > need[0] or sw[1] < need[1]:
        raise RecursionWindowError(
            f"slope window [{sw[0]}, {sw[1]}] does not contain the required "
            f"[{need[0]}, {need[1]}]", required=need)
    out = dict(onevec.entries)
    for t in hn_types(2, d, sw):
        if len(t.parts) < 2:
            continue
        d1, d2 = t.parts[0].degree, t.parts[1].degree
        weight = curve.v() ** t.pairing_exponent(g)
        prod = _rank_one_product(curve, d1, d2)
        for e in list(out):
            if e[0] == d1 or d2 <= e[0]:
                c = prod.coefficient(e)
                if not c.is_zero():
                    out[e] = out[e] - weight * c
    return CoefficientTable(r, d, g, window, {e: c for e, c in out.items() if not c.is_zero()})


def recombine_onevec(ss: CoefficientTable, curve: CurveData | None = None) -> CoefficientTable:
    """Rebuild ``J_2(1^vec_{2,d})`` from a semistable table and the rank-one strata.

    The rank-one products are expanded with the closed form
    ``x_1^{d_1} x_2^{d_2} + sum_n h_n x_1^{d_2+n} x_2^{d_1-n}`` rather than
    through ``fshuffle_mul``.
    """
    if ss.rank != 2:
        raise ValueError("recombination is implemented for rank 2")
    g, d, W = ss.genus, ss.degree, ss.window
    curve = _curve_for(g, curve)
    R = curve.ring
    hs = kernel_hx(curve).series(2 * W + abs(d) + 2)
    out = {e: ss.get(e, R) for e in ss.keys()}
    lo, hi = required_slope_window(d, W)
    for t in hn_types(2, d, (lo, hi)):
        if len(t.parts) < 2:
            continue
        d1, d2 = t.parts[0].degree, t.parts[1].degree
        weight = curve.v() ** t.pairing_exponent(g)
        for e in out:
            c = R.zero()
            if e == (d1, d2):
                c = c + 1
            n = e[0] - d2
            if n >= 0 and n in hs:
                c = c + hs[n]
            if not c.is_zero():
                out[e] = out[e] + weight * c
    return CoefficientTable(2, d, g, W, {e: c for e, c in out.items() if not c.is_zero()})


# ---------------------------------------------------------------------------
# adic degree

def scalar_adic_degree(c: Scalar):
    """Lowest total degree of the numerator minus that of the denominator."""
    if c.is_zero():
        return math.inf
    low = lambda p: min(sum(e) for e in p)
    return low(c.num) - low(c.den)


def adic_degree(element):
    """Minimum adic degree over all coefficients (``+inf`` for zero).

    Generators ``v`` and ``x_l`` have degree one, so ``y_l = v^2 / x_l`` also
    has degree one and ``p = x_l y_l`` has degree two.
    """
    if isinstance(element, Scalar):
        return scalar_adic_degree(element)
    if isinstance(element, LaurentPoly):
        return min((scalar_adic_degree(c) for _, c in element.terms()), default=math.inf)
    if isinstance(element, dict):
        return min((adic_degree(c) for c in element.values()), default=math.inf)
    raise TypeError(f"cannot grade {type(element).__name__}")


# ---------------------------------------------------------------------------
# payloads and the convergence probe

def semistable_payload(d: int, g: int, window: int) -> LaurentPoly:
    """Shuffle payload of ``1^ss_{2,d}``: ``J_2(1^ss) * g_X(z_1/z_2)``.

    The product of the table with the expansion of ``g_X`` in ``z_1/z_2`` is
    exact on every coefficient because ``J_2(1^ss_{2,d})`` vanishes below
    ``e_1 = d/2``.  Coefficients are computed for ``|e_1 - d/2| <= window``;
    :func:`payload_is_closed` checks that the result is a symmetric Laurent
    polynomial supported strictly inside that band.
    """
    curve = CurveData.symbolic(g)
    R = curve.ring
    gser = kernel_gx(curve).series(4 * window + abs(d) + 4)
    n0 = min(gser)
    centre = d // 2
    table_window = abs(centre) + 2 * window + abs(n0) + 2
    ss = semistable_1ss(2, d, table_window, g, curve)
    out = LaurentPoly.zero(R, 2)
    for e1 in range(centre - window, centre + window + 2):
        e = (e1, d - e1)
        c = R.zero()
        for n, gn in gser.items():
            a = (e1 - n, d - e1 + n)
            if 2 * a[0] < d:
                break
            c = c + gn * ss.get(a, R)
        if not c.is_zero():
            out = out + LaurentPoly.monomial(R, e, c)
    return out


def payload_is_closed(P: LaurentPoly, d: int, window: int) -> bool:
    """Symmetric and with no coefficient on the outer ring of the band."""
    if not P.is_symmetric():
        return False
    centre = d // 2
    edge = {centre - window, centre + window, centre + window + 1}
    return all(z[0] not in edge for z in P.support())


def rank_one_stratum_payload(d1: int, d2: int, g: int, route: str = "twisted") -> LaurentPoly:
    """Payload of ``1^ss_{1,d_1} 1^ss_{1,d_2}``.

    ``route="twisted"`` rewrites the ordinary product as a twisted one,
    ``1_{d_1+g-1} o 1_{d_2-g+1}``; ``route="plain"`` symmetrises directly with
    ``g_X``.  Both give the same Laurent polynomial.
    """
    curve = CurveData.symbolic(g)
    R = curve.ring
    if route == "twisted":
        return twisted_mul(curve, generator(R, d1 + g - 1), generator(R, d2 - g + 1)).payload
    if route == "plain":
        return psi(kernel_gx(curve), LaurentPoly.monomial(R, (d1, d2))).payload
    raise ValueError("route is 'twisted' or 'plain'")


def theta_inverse(P: LaurentPoly, g: int) -> LaurentPoly:
    """Hall-side payload to the K-theory side.

    Inverse of :func:`hallshuffle.thetamap.theta_normalize` composed with the
    variable reversal: identify scalars, reverse, multiply by
    ``(#Pic^0 / q^g)^n``.
    """
    curve = CurveData.symbolic(g)
    scale = identify((pic0_order(curve) / curve.q() ** g) ** P.r)
    return reverse_variables(identify(P)) * scale


@dataclass
class ConvergenceReport:
    rank: int
    degree: int
    genus: int
    bounds: list
    degrees: list
    strata: list
    semistable_window: int
    semistable_closed: bool

    @property
    def strictly_increasing(self) -> bool:
        ds = self.degrees
        return all(math.isfinite(a) and a < b for a, b in zip(ds, ds[1:]))

    def to_json(self):
        enc = lambda x: "inf" if x == math.inf else x
        return {"rank": self.rank, "degree": self.degree, "genus": self.genus,
                "slope_bounds": [str(b) for b in self.bounds],
                "adic_degrees": [enc(x) for x in self.degrees],
                "strata": [[t for t in s] for s in self.strata],
                "semistable_window": self.semistable_window,
                "semistable_closed": self.semistable_closed,
                "strictly_increasing": self.strictly_increasing}


def buntriv_convergence(r: int, d: int, slope_bounds, g: int,
                        semistable_window: int = 6) -> ConvergenceReport:
    """Adic degree of the image of the partial sum over strata with top slope <= M.

    For each bound ``M`` the partial sum runs over HN types of weight
    ``(r, d)`` whose largest slope is at most ``M``; each stratum contributes
    ``v^{sum <alpha_i, alpha_j>}`` times the payload of its product of
    semistable pieces.  The total is moved to the K-theory side with
    :func:`theta_inverse` and graded with :func:`adic_degree`.
    """
    if r != 2:
        raise ValueError("buntriv_convergence supports r = 2")
    if g not in (0, 1, 2):
        raise ValueError("g in {0, 1, 2} required")
    bounds = [Fraction(b) for b in slope_bounds]
    if any(a >= b for a, b in zip(bounds, bounds[1:])):
        raise ValueError("slope bounds must increase")
    R = ground_ring(g)
    ss_payload = semistable_payload(d, g, semistable_window)
    closed = payload_is_closed(ss_payload, d, semistable_window)
    if not closed:
        raise RecursionWindowError(
            f"semistable payload not closed on band {semistable_window}",
            required=semistable_window + 2)
    degrees, strata = [], []
    for M in bounds:
        total = LaurentPoly.zero(R, 2)
        used = []
        for t in hn_types(2, d, (min(d - M, M), M)):
            if t.slopes[-1] > M:
                continue
            weight = _vpow(R, t.pairing_exponent(g))
            if len(t.parts) == 1:
                total = total + ss_payload * weight
            else:
                P = rank_one_stratum_payload(t.parts[0].degree, t.parts[1].degree, g)
                total = total + P * weight
            used.append(t.to_json())
        strata.append(used)
        degrees.append(adic_degree(theta_inverse(total, g)) if used else math.inf)
    return ConvergenceReport(r, d, g, bounds, degrees, strata, semistable_window, closed)
