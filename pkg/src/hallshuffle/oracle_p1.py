"""Brute-force Hall algebra of the projective line over a small prime field.

Every bundle on P^1 splits, so a sheaf here is a list of line-bundle twists
plus a torsion part made of skyscrapers ``O_x`` at rational points (labels
``0..q-1`` for affine points, ``q`` for infinity).  All counts come from
enumerating binary forms, section spaces and extension cocycles over F_q;
nothing is looked up.

Values are Scalars in ``Q[v^+-1]`` with the prime q entering only through
integers.  Comparisons with the shuffle side reduce both sides modulo
``v^2 = 1/q`` (see :func:`at_q`), which is exact because ``sqrt(q)`` is
irrational for the supported primes.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache

from gmpy2 import mpq

from .curvezeta import CurveData, c_d, ground_ring, kernel_hx, torsion_pairing
from .exactalg import Scalar
from .shufflecore import FSeriesElement, fshuffle_mul

SUPPORTED_Q = (2, 3)
RING = ground_ring(0)


def _check_q(q):
    if q not in SUPPORTED_Q:
        raise ValueError(f"q must be one of {SUPPORTED_Q}")


def vpow(k: int) -> Scalar:
    return RING.gen("v") ** k


def at_q(s: Scalar, q: int) -> tuple:
    """Reduce an element of ``Q(v)`` to ``(a, b)`` with value ``a + b v``, ``v^2 = 1/q``."""
    def reduce(poly):
        a, b = mpq(0), mpq(0)
        for (k,), c in poly.items():
            half, odd = divmod(k, 2)
            val = c * mpq(q) ** -half
            if odd:
                b += val
            else:
                a += val
        return a, b
    a, b = reduce(s.num)
    c, d = reduce(s.den)
    # (a + b v)/(c + d v) = (a + b v)(c - d v) / (c^2 - d^2/q)
    norm = c * c - d * d / q
    if norm == 0:
        raise ZeroDivisionError("denominator vanishes at v^2 = 1/q")
    return ((a * c - b * d / q) / norm, (b * c - a * d) / norm)


# ---------------------------------------------------------------------------
# sheaves

@dataclass(frozen=True, order=True)
class P1Sheaf:
    """``O(a_1) + ... + O(a_r) + sum_x O_x``."""

    twists: tuple = ()
    torsion: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "twists", tuple(sorted(self.twists, reverse=True)))
        object.__setattr__(self, "torsion", tuple(sorted(self.torsion)))

    @property
    def rank(self):
        return len(self.twists)

    @property
    def degree(self):
        return sum(self.twists) + len(self.torsion)

    @property
    def is_bundle(self):
        return not self.torsion

    def __str__(self):
        parts = [f"O({a})" for a in self.twists] + [f"O_p{x}" for x in self.torsion]
        return "+".join(parts) if parts else "0"


def P1Bundle(*twists) -> P1Sheaf:
    return P1Sheaf(tuple(twists), ())


def skyscraper(x: int) -> P1Sheaf:
    return P1Sheaf((), (x,))


def euler_form(F: P1Sheaf, G: P1Sheaf) -> int:
    return F.rank * G.rank + F.rank * G.degree - G.rank * F.degree


def automorphism_count(q: int, V: P1Sheaf) -> int:
    """``#Aut`` of a bundle of rank <= 2, optionally plus one skyscraper."""
    if V.rank == 0 and len(V.torsion) == 1:
        return q - 1
    if V.rank == 1 and not V.torsion:
        return q - 1
    if V.rank == 1 and len(V.torsion) == 1:
        # [[unit, 0], [Hom(O(a), O_x), unit]]
        return (q - 1) ** 2 * q
    if V.rank == 2 and not V.torsion:
        a, b = V.twists
        if a == b:
            return (q * q - 1) * (q * q - q)
        return (q - 1) ** 2 * q ** (a - b + 1)
    raise ValueError(f"automorphism count not supported for {V}")


def points(q: int):
    return list(range(q + 1))


# ---------------------------------------------------------------------------
# binary forms over F_q

def forms(q: int, m: int):
    """All binary forms of degree m as coefficient tuples (``c_k`` of ``s^k t^(m-k)``)."""
    if m < 0:
        return [()]
    return list(itertools.product(range(q), repeat=m + 1))


def _is_zero(f):
    return not any(f)


def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _polymod(a, b, q):
    a = list(a)
    inv = pow(b[-1], q - 2, q)
    while len(a) >= len(b):
        if a[-1] == 0:
            a.pop()
            continue
        f = a[-1] * inv % q
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[shift + i] = (a[shift + i] - f * c) % q
        a.pop()
    return _trim(a)


def _polygcd(a, b, q):
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, _polymod(a, b, q)
    return a


def _vanishes_at_infinity(f, m):
    return m < 0 or _is_zero(f) or f[m] == 0


def zero_set(q: int, f, m: int) -> list:
    """Rational zeros of a nonzero form (labels as in :class:`P1Sheaf`)."""
    out = [x for x in range(q) if sum(c * pow(x, k, q) for k, c in enumerate(f)) % q == 0]
    if f[m] == 0:
        out.append(q)
    return out


def common_zero(q: int, P, mP: int, Q, mQ: int) -> bool:
    """Whether two forms (not both zero) share a zero over the algebraic closure."""
    if _vanishes_at_infinity(P, mP) and _vanishes_at_infinity(Q, mQ):
        return True
    g = _polygcd(P if mP >= 0 else (), Q if mQ >= 0 else (), q)
    return len(g) >= 2


# ---------------------------------------------------------------------------
# subsheaf counts

@lru_cache(maxsize=None)
def count_subsheaves(q: int, V: P1Sheaf, e: int, quotient: str = "line") -> int:
    """Subsheaves ``O(e)`` of a rank-2 bundle with line-bundle quotient
    (``quotient="line"``) or with a quotient that has torsion
    (``quotient="torsion"``).  For a line bundle V every nonzero map has
    torsion quotient.
    """
    _check_q(q)
    if not V.is_bundle:
        raise ValueError("V must be a vector bundle")
    if V.rank == 1:
        m = V.twists[0] - e
        if m < 0 or quotient == "line":
            return 0
        return (q ** (m + 1) - 1) // (q - 1)
    if V.rank != 2:
        raise ValueError("rank 1 or 2 only")
    a, b = V.twists
    ma, mb = a - e, b - e
    saturated = unsaturated = 0
    for P in forms(q, ma):
        for Q in forms(q, mb):
            if _is_zero(P) and _is_zero(Q):
                continue
            if common_zero(q, P, ma, Q, mb):
                unsaturated += 1
            else:
                saturated += 1
    total = saturated if quotient == "line" else unsaturated
    return total // (q - 1)


def count_line_in_line_plus_point(q: int, a: int, x: int, e: int, quotient_point: int) -> int:
    """Subsheaves ``O(e)`` of ``O(a) + O_x`` with quotient ``O_y`` (y = quotient_point).

    Maps are pairs (form of degree a-e, scalar on O_x); only a = e yields a
    length-one quotient, which is then the skyscraper at x.
    """
    m = a - e
    count = 0
    for P in forms(q, m):
        if _is_zero(P):
            continue
        for _phi in range(q):
            if m == 0 and quotient_point == x:
                count += 1
    return count // (q - 1)


def count_point_in_sheaf(q: int, V: P1Sheaf, x: int) -> int:
    """Subsheaves isomorphic to ``O_x`` (only the torsion part can contain them)."""
    maps = sum(1 for y in V.torsion if y == x) * (q - 1)
    return maps // (q - 1)


def count_line_in_line(q: int, a: int, e: int, x: int) -> int:
    """Subsheaves ``O(e)`` of ``O(a)`` with quotient ``O_x`` (a = e + 1)."""
    m = a - e
    if m != 1:
        return 0
    return sum(1 for P in forms(q, 1) if not _is_zero(P) and zero_set(q, P, 1) == [x]) // (q - 1)


# ---------------------------------------------------------------------------
# Hall functions

@dataclass
class P1HallFunction:
    q: int
    values: dict = field(default_factory=dict)

    def __post_init__(self):
        _check_q(self.q)
        self.values = {k: v for k, v in self.values.items() if not v.is_zero()}

    @classmethod
    def indicator(cls, q, sheaf, coeff=None):
        return cls(q, {sheaf: RING.one() if coeff is None else coeff})

    def __add__(self, other):
        out = dict(self.values)
        for k, v in other.values.items():
            out[k] = out.get(k, RING.zero()) + v
        return P1HallFunction(self.q, out)

    def __sub__(self, other):
        return self + other.scale(RING.const(-1))

    def scale(self, c):
        return P1HallFunction(self.q, {k: v * c for k, v in self.values.items()})

    def __call__(self, sheaf):
        return self.values.get(sheaf, RING.zero())

    def reduced(self):
        return {k: at_q(v, self.q) for k, v in self.values.items()}

    def equals(self, other) -> bool:
        keys = set(self.values) | set(other.values)
        return all(at_q(self(k) - other(k), self.q) == (0, 0) for k in keys)

    def vector_part(self):
        return P1HallFunction(self.q, {k: v for k, v in self.values.items() if k.is_bundle})

    def to_json(self):
        return {str(k): [str(a), str(b)] for k, (a, b) in sorted(self.reduced().items())}


def _product_terms(q: int, F: P1Sheaf, G: P1Sheaf):
    """Pairs ``(R, #{N subset R : N ~ G, R/N ~ F})``."""
    if F.is_bundle and G.is_bundle and F.rank == 1 and G.rank == 1:
        d = F.degree + G.degree
        e = G.degree
        for a in range(-(-d // 2), max(e, d - e) + 1):
            R = P1Bundle(a, d - a)
            n = count_subsheaves(q, R, e, "line")
            if n:
                yield R, n
        return
    if F.rank == 0 and len(F.torsion) == 1 and G.is_bundle and G.rank == 1:
        (x,) = F.torsion
        (l,) = G.twists
        n = count_line_in_line(q, l + 1, l, x)
        if n:
            yield P1Bundle(l + 1), n
        n = count_line_in_line_plus_point(q, l, x, l, x)
        if n:
            yield P1Sheaf((l,), (x,)), n
        return
    if F.is_bundle and F.rank == 1 and G.rank == 0 and len(G.torsion) == 1:
        (x,) = G.torsion
        R = P1Sheaf(F.twists, (x,))
        n = count_point_in_sheaf(q, R, x)
        if n:
            yield R, n
        return
    raise ValueError(f"product {F} * {G} outside the supported range")


def hall_product(f: P1HallFunction, g: P1HallFunction) -> P1HallFunction:
    """``(f g)(R) = sum_{N in R} v^{-<R/N, N>} f(R/N) g(N)``."""
    q = f.q
    out = {}
    for F, a in f.values.items():
        for G, b in g.values.items():
            weight = vpow(-euler_form(F, G)) * a * b
            for R, n in _product_terms(q, F, G):
                out[R] = out.get(R, RING.zero()) + weight * n
    return P1HallFunction(q, out)


def green_pairing(f: P1HallFunction, g: P1HallFunction) -> Scalar:
    """``sum_V f(V) g(V) / #Aut(V)`` (coefficients are taken as real)."""
    classes = {(k.rank, k.degree) for k in f.values} | {(k.rank, k.degree) for k in g.values}
    if len(classes) > 1:
        raise ValueError("green_pairing needs a single (rank, degree)")
    total = RING.zero()
    for V, a in f.values.items():
        b = g(V)
        if not b.is_zero():
            total = total + a * b / automorphism_count(f.q, V)
    return total


def line_bundle(q: int, d: int) -> P1HallFunction:
    """``1^ss_{1,d}``; on P^1 the Picard group of degree d is a single point."""
    return P1HallFunction.indicator(q, P1Bundle(d))


def torsion_degree_one(q: int) -> P1HallFunction:
    """``1_{0,1}`` (equal to ``T_{0,1}``): all skyscrapers at rational points."""
    return P1HallFunction(q, {skyscraper(x): RING.one() for x in points(q)})


# ---------------------------------------------------------------------------
# extensions and splitting types

def _laurent_rank_mod_q(rows, q):
    M = [list(r) for r in rows]
    rank, ncol = 0, len(M[0]) if M else 0
    for c in range(ncol):
        piv = next((i for i in range(rank, len(M)) if M[i][c] % q), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        inv = pow(M[rank][c], q - 2, q)
        M[rank] = [x * inv % q for x in M[rank]]
        for i in range(len(M)):
            if i != rank and M[i][c] % q:
                f = M[i][c]
                M[i] = [(x - f * y) % q for x, y in zip(M[i], M[rank])]
        rank += 1
    return rank


def h0_extension(q: int, e1: int, e2: int, cocycle: dict, twist: int) -> int:
    """``h^0`` of ``X(twist)`` for the extension with transition matrix
    ``[[t^e2, c(t)], [0, t^e1]]`` (sections: ``s_0 = t^twist g s_1``)."""
    D = abs(e1) + abs(e2) + abs(twist) + (abs(e1 - e2)) + 2
    # unknowns u_0..u_D, w_0..w_D  (coefficients of t^-j)
    n = 2 * (D + 1)
    conditions = {}

    def add(component, exp, col, coef):
        if exp < 0:
            row = conditions.setdefault((component, exp), [0] * n)
            row[col] = (row[col] + coef) % q

    for j in range(D + 1):
        add(0, twist + e2 - j, j, 1)
        add(1, twist + e1 - j, D + 1 + j, 1)
        for k, c in cocycle.items():
            add(0, twist + k - j, D + 1 + j, c)
    rows = list(conditions.values())
    rank = _laurent_rank_mod_q(rows, q) if rows else 0
    return n - rank


def splitting_type(q: int, e1: int, e2: int, cocycle: dict) -> P1Sheaf:
    d = e1 + e2
    for a in range(max(e1, e2) + 1, (d - 1) // 2, -1):
        if a - (d - a) < 0:
            break
        if h0_extension(q, e1, e2, cocycle, -a) > 0:
            return P1Bundle(a, d - a)
    raise ArithmeticError("failed to determine the splitting type")


@lru_cache(maxsize=None)
def extension_census(q: int, e1: int, e2: int) -> tuple:
    """Iso classes of extensions ``0 -> O(e2) -> X -> O(e1) -> 0`` with multiplicities.

    The class ``xi`` is the cocycle ``sum_k xi_k t^k`` with ``e2 < k < e1``.
    Returns ``(dim Ext^1, ((X, count), ...))``.
    """
    _check_q(q)
    ks = list(range(e2 + 1, e1))
    tally = Counter()
    for coeffs in itertools.product(range(q), repeat=len(ks)):
        cocycle = {k: c for k, c in zip(ks, coeffs) if c}
        tally[splitting_type(q, e1, e2, cocycle)] += 1
    return len(ks), tuple(sorted(tally.items()))


def constant_term(u: P1HallFunction, e1: int, e2: int) -> Scalar:
    """Coefficient of ``x_1^e1 x_2^e2`` in the rank-2 constant term of u.

    ``v^{<(1,e1),(1,e2)>} / #Ext^1 * sum_xi u(X_xi)``: the coproduct
    component on ``1_{O(e1)} (x) 1_{O(e2)}``.
    """
    q = u.q
    dim, census = extension_census(q, e1, e2)
    total = RING.zero()
    for X, n in census:
        val = u(X)
        if not val.is_zero():
            total = total + val * n
    M, N = P1Bundle(e1), P1Bundle(e2)
    return total * vpow(euler_form(M, N)) / RING.const(q ** dim)


def coproduct_component(q: int, V: P1Sheaf, e1: int, e2: int) -> Scalar:
    """``Delta(1_V)(O(e1), O(e2))``."""
    return constant_term(P1HallFunction.indicator(q, V), e1, e2)


# ---------------------------------------------------------------------------
# checks against the shuffle side

def fside_coefficient(d1: int, d2: int, e1: int, e2: int) -> Scalar:
    h = kernel_hx(CurveData.symbolic(0))
    prod = fshuffle_mul(h, FSeriesElement.monomial(RING, (d1,)),
                        FSeriesElement.monomial(RING, (d2,)))
    return prod.coefficient((e1, e2))


def compare(q: int, d1: int, d2: int, window: int) -> list:
    """Differences between oracle constant terms of ``1_{O(d1)} 1_{O(d2)}`` and
    the F-side coefficients of ``x^d1 * x^d2`` on ``|e_i| <= window``."""
    _check_q(q)
    u = hall_product(line_bundle(q, d1), line_bundle(q, d2))
    h = kernel_hx(CurveData.symbolic(0))
    prod = fshuffle_mul(h, FSeriesElement.monomial(RING, (d1,)),
                        FSeriesElement.monomial(RING, (d2,)))
    diffs = []
    for e1 in range(-window, window + 1):
        e2 = d1 + d2 - e1
        if abs(e2) > window:
            continue
        oracle = at_q(constant_term(u, e1, e2), q)
        shuffle = at_q(prod.coefficient((e1, e2)), q)
        if oracle != shuffle:
            diffs.append({"e": [e1, e2], "oracle": [str(x) for x in oracle],
                          "shuffle": [str(x) for x in shuffle]})
    return diffs


def hecke_check(q: int, l: int) -> dict:
    """``T_{0,1} . 1_{O(l)}`` (vector part of the product), the commutator, and
    ``c_1 1_{O(l+1)}``; all three must agree."""
    T = torsion_degree_one(q)
    w = line_bundle(q, l)
    left = hall_product(T, w)
    right = hall_product(w, T)
    action = left.vector_part()
    commutator = left - right
    expected = line_bundle(q, l + 1).scale(c_d(CurveData.symbolic(0), 1))
    return {"action_equals_commutator": action.equals(commutator),
            "commutator_is_vector": commutator.equals(commutator.vector_part()),
            "matches_eigenvalue": action.equals(expected),
            "action": action.to_json()}


def torsion_pairing_check(q: int) -> dict:
    """``(T_{0,1}, T_{0,1})_G`` by enumeration against the closed formula."""
    T = torsion_degree_one(q)
    enumerated = green_pairing(T, T)
    formula = torsion_pairing(CurveData.symbolic(0), 1)
    return {"enumerated": [str(x) for x in at_q(enumerated, q)],
            "formula": [str(x) for x in at_q(formula, q)],
            "agree": at_q(enumerated - formula, q) == (0, 0)}


def adjunction_check(q: int, d1: int, d2: int) -> list:
    """``(1_{O(d1)} 1_{O(d2)}, 1_V)_G = (1_{O(d1)} (x) 1_{O(d2)}, Delta~(1_V))_G``
    for every rank-2 V of degree d1+d2 appearing on either side."""
    u = hall_product(line_bundle(q, d1), line_bundle(q, d2))
    _, census = extension_census(q, d1, d2)
    candidates = set(u.values) | {X for X, _ in census}
    failures = []
    for V in sorted(candidates):
        lhs = green_pairing(u, P1HallFunction.indicator(q, V))
        rhs = coproduct_component(q, V, d1, d2) / RING.const((q - 1) ** 2)
        if at_q(lhs - rhs, q) != (0, 0):
            failures.append(str(V))
    return failures
