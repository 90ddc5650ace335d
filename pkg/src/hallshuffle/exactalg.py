"""Exact coefficient rings and multivariate Laurent polynomials.

Everything downstream is built on two value types:

``Scalar``
    A fraction of two Laurent polynomials in the generators of a
    :class:`ScalarRing`, with arbitrary-precision rational coefficients
    (``gmpy2.mpq``).  A ring with no generators is the field of rationals,
    which is how numeric specialisations are represented.

``LaurentPoly``
    A Laurent polynomial in ``z_1..z_r`` whose coefficients are Scalars of a
    fixed ring.  Internally the z-exponents and the scalar exponents live in
    one combined key ``(z_1..z_r, s_1..s_n)`` so that products and exact
    division run on a single sparse dictionary.  A common scalar denominator
    is carried separately and is almost always 1.

Monomial order used for printing and for exact division is lexicographic on
the combined key; the printed form lists terms by descending total z-degree,
ties broken by descending lexicographic order (graded-lex).

Permutations are 0-based tuples ``w`` with ``w[k] = w(k+1) - 1``.  They act
by ``(w.P)(z_1..z_r) = P(z_{w(1)}..z_{w(r)})`` so that
``permute(permute(P, w), u) == permute(P, compose(u, w))`` where
``compose(u, w)[k] = u[w[k]]``.
"""

from __future__ import annotations

import heapq
import itertools
import random
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from gmpy2 import mpq

Exp = tuple

ONE = mpq(1)
ZERO = mpq(0)


# ---------------------------------------------------------------------------
# sparse dictionaries: {exponent tuple: mpq}

def _addexp(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _subexp(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _padd(p, q, sign=1):
    out = dict(p)
    for e, c in q.items():
        c = out.get(e, ZERO) + (c if sign == 1 else -c)
        if c:
            out[e] = c
        else:
            out.pop(e, None)
    return out


def _pmul(p, q):
    if len(p) > len(q):
        p, q = q, p
    out = {}
    get = out.get
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            out[e] = get(e, ZERO) + c1 * c2
    return {e: c for e, c in out.items() if c}


def _pscale(p, c):
    if not c:
        return {}
    return {e: v * c for e, v in p.items()}


def _pshift(p, m):
    return {_addexp(e, m): c for e, c in p.items()}


def _pconst(n, c=ONE):
    c = mpq(c)
    return {(0,) * n: c} if c else {}


def _is_monomial(p):
    return len(p) == 1


def _mono_inverse(p):
    ((e, c),) = p.items()
    return {tuple(-x for x in e): 1 / c}


def _ppow(p, k, n):
    out = _pconst(n)
    base = p
    while k:
        if k & 1:
            out = _pmul(out, base)
        k >>= 1
        if k:
            base = _pmul(base, base)
    return out


class NotDivisible(ArithmeticError):
    """Raised by exact division; ``remainder`` witnesses the failure."""

    def __init__(self, message, remainder=None):
        super().__init__(message)
        self.remainder = remainder


def _pdivide(p, d):
    """Exact quotient of Laurent polynomials p / d (lex order on full keys)."""
    if not d:
        raise ZeroDivisionError("division by the zero polynomial")
    if not p:
        return {}
    lead = max(d)
    lead_c = d[lead]
    if len(d) == 1:
        return {_subexp(e, lead): c / lead_c for e, c in p.items()}
    # every quotient monomial is >= min(p) - min(d) in lex order, and by
    # Newton polytopes each coordinate lies in [min p - min d, max p - max d]
    floor = _subexp(min(p), min(d))
    n = len(lead)
    box_lo = [min(e[k] for e in p) - min(e[k] for e in d) for k in range(n)]
    box_hi = [max(e[k] for e in p) - max(e[k] for e in d) for k in range(n)]
    if any(a > b for a, b in zip(box_lo, box_hi)):
        raise NotDivisible("polynomial is not divisible", dict(p))
    rem = dict(p)
    heap = [tuple(-x for x in e) for e in rem]
    heapq.heapify(heap)
    quo = {}
    dterms = list(d.items())
    while heap:
        key = heapq.heappop(heap)
        m = tuple(-x for x in key)
        c = rem.get(m)
        if not c:
            continue
        qm = _subexp(m, lead)
        if qm < floor or any(x < a or x > b for x, a, b in zip(qm, box_lo, box_hi)):
            raise NotDivisible("polynomial is not divisible", rem)
        qc = c / lead_c
        quo[qm] = qc
        for e, dc in dterms:
            t = _addexp(e, qm)
            old = rem.get(t)
            if old is None:
                rem[t] = -qc * dc
                heapq.heappush(heap, tuple(-x for x in t))
            else:
                new = old - qc * dc
                if new:
                    rem[t] = new
                else:
                    del rem[t]
    return quo


# ---------------------------------------------------------------------------
# scalar rings

@dataclass(frozen=True)
class ScalarRing:
    """Laurent polynomial ring Q[s_1^{±1}..s_n^{±1}] and its fraction field.

    ``names`` fixes the generators; an empty tuple gives plain rationals.
    """

    names: tuple = ()

    @property
    def n(self):
        return len(self.names)

    def index(self, name):
        return self.names.index(name)

    def const(self, c) -> "Scalar":
        if isinstance(c, Fraction):
            c = mpq(c.numerator, c.denominator)
        return Scalar(self, _pconst(self.n, c))

    def one(self) -> "Scalar":
        return self.const(1)

    def zero(self) -> "Scalar":
        return Scalar(self, {})

    def monomial(self, exps, coeff=1) -> "Scalar":
        exps = tuple(exps)
        if len(exps) != self.n:
            raise ValueError("exponent length does not match ring")
        return Scalar(self, {exps: mpq(coeff)} if coeff else {})

    def gen(self, name) -> "Scalar":
        e = [0] * self.n
        e[self.index(name)] = 1
        return self.monomial(e)

    def __str__(self):
        return "Q" if not self.names else "Q(" + ",".join(self.names) + ")"


QQ = ScalarRing(())


class Scalar:
    """Exact element of the fraction field of a :class:`ScalarRing`.

    Fractions are kept lazily: monomial denominators are absorbed into the
    numerator, anything else is carried along and equality is decided by
    cross-multiplication.
    """

    __slots__ = ("ring", "num", "den")

    def __init__(self, ring, num, den=None):
        self.ring = ring
        if den is None or not num:
            den = _pconst(ring.n)
        elif not den:
            raise ZeroDivisionError("zero denominator")
        elif _is_monomial(den):
            num = _pmul(num, _mono_inverse(den))
            den = _pconst(ring.n)
        self.num = num
        self.den = den

    # -- construction helpers
    def _coerce(self, other):
        if isinstance(other, Scalar):
            if other.ring != self.ring:
                raise TypeError(f"ring mismatch: {self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fraction)) or type(other) is type(ONE):
            return self.ring.const(other)
        return NotImplemented

    def _den_is_one(self):
        return self.den == _pconst(self.ring.n)

    # -- arithmetic
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            return Scalar(self.ring, _padd(self.num, other.num), self.den)
        return Scalar(self.ring,
                      _padd(_pmul(self.num, other.den), _pmul(other.num, self.den)),
                      _pmul(self.den, other.den))

    __radd__ = __add__

    def __neg__(self):
        return Scalar(self.ring, _pscale(self.num, -ONE), self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Scalar(self.ring, _pmul(self.num, other.num), _pmul(self.den, other.den))

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError("inverse of zero")
        return Scalar(self.ring, self.den, self.num)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        n = self.ring.n
        return Scalar(self.ring, _ppow(self.num, k, n), _ppow(self.den, k, n))

    # -- predicates
    def is_zero(self):
        return not self.num

    def is_one(self):
        return self == 1

    def is_monomial(self):
        return _is_monomial(self.num) and self._den_is_one()

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        if self.den == other.den:
            return self.num == other.num
        return _pmul(self.num, other.den) == _pmul(other.num, self.den)

    def __hash__(self):
        # only canonical for polynomial (den == 1) values
        return hash((self.ring, frozenset(self.num.items()), frozenset(self.den.items())))

    def as_rational(self):
        """The value as an ``mpq`` when the ring has no generators."""
        if self.ring.n:
            raise TypeError("symbolic scalar has no rational value")
        return self.num.get((), ZERO) / self.den[()]

    def normalized(self):
        """Cancel the denominator when it divides the numerator exactly."""
        if self._den_is_one():
            return self
        try:
            return Scalar(self.ring, _pdivide(self.num, self.den))
        except NotDivisible:
            return self

    def subs(self, target, images):
        """Ring map sending generator ``i`` to ``images[i]`` (Scalars of target)."""
        return _eval_poly(self.num, target, images) / _eval_poly(self.den, target, images)

    def __repr__(self):
        return f"Scalar({self.to_text()})"

    def to_text(self):
        x = self.normalized()
        s = _poly_text(x.num, x.ring.names)
        if x._den_is_one():
            return s
        return f"({s})/({_poly_text(x.den, x.ring.names)})"

    __str__ = to_text


def _monomial_images(images):
    """``[(exp, coeff)]`` when every image is a single monomial, else None."""
    out = []
    for im in images:
        if len(im.num) != 1 or not im._den_is_one():
            return None
        ((e, c),) = im.num.items()
        out.append((e, c))
    return out


def _map_monomially(p, mono, n_target, prefix=0):
    """Apply a monomial ring map to the trailing exponents of a polynomial dict."""
    out = {}
    for e, c in p.items():
        head, tail = e[:prefix], e[prefix:]
        new = [0] * n_target
        coeff = c
        for k, (img, ic) in zip(tail, mono):
            if k:
                for j, m in enumerate(img):
                    new[j] += k * m
                if ic != 1:
                    coeff = coeff * ic ** k
        key = head + tuple(new)
        out[key] = out.get(key, ZERO) + coeff
    return {k: v for k, v in out.items() if v}


def _eval_poly(p, target, images):
    mono = _monomial_images(images)
    if mono is not None:
        return Scalar(target, _map_monomially(p, mono, target.n))
    out = target.zero()
    cache = {}
    for e, c in p.items():
        term = target.const(c)
        for i, k in enumerate(e):
            if k:
                key = (i, k)
                if key not in cache:
                    cache[key] = images[i] ** k
                term = term * cache[key]
        out = out + term
    return out


def _mono_text(e, names):
    parts = []
    for name, k in zip(names, e):
        if k == 1:
            parts.append(name)
        elif k:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def _order_key(e):
    return (-sum(e), tuple(-x for x in e))


def _coeff_text(c):
    c = mpq(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _poly_text(p, names):
    if not p:
        return "0"
    out = []
    for e in sorted(p, key=_order_key):
        c = p[e]
        mono = _mono_text(e, names)
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if mono:
            body = mono if a == 1 else f"{_coeff_text(a)}*{mono}"
        else:
            body = _coeff_text(a)
        out.append((sign, body))
    first_sign, first = out[0]
    s = ("-" if first_sign == "-" else "") + first
    for sign, body in out[1:]:
        s += f" {sign} {body}"
    return s


# ---------------------------------------------------------------------------
# permutations

def compose(u, w):
    """``(u o w)(k) = u(w(k))``."""
    return tuple(u[k] for k in w)


def inverse_perm(w):
    out = [0] * len(w)
    for i, k in enumerate(w):
        out[k] = i
    return tuple(out)


def length(w):
    """Number of inversions of ``w``."""
    return sum(1 for i in range(len(w)) for j in range(i + 1, len(w)) if w[i] > w[j])


def sign(w):
    return -1 if length(w) % 2 else 1


@lru_cache(maxsize=None)
def permutations(r):
    return tuple(itertools.permutations(range(r)))


@lru_cache(maxsize=None)
def shuffles(r, s):
    """Permutations of ``r+s`` increasing on ``[0, r)`` and on ``[r, r+s)``.

    These are minimal-length coset representatives of S_{r+s}/(S_r x S_s).
    """
    out = []
    for first in itertools.combinations(range(r + s), r):
        rest = [k for k in range(r + s) if k not in first]
        out.append(tuple(first) + tuple(rest))
    return tuple(out)


# ---------------------------------------------------------------------------
# Laurent polynomials over a scalar ring

class LaurentPoly:
    """Laurent polynomial in ``z_1..z_r`` with coefficients in ``ring``."""

    __slots__ = ("ring", "r", "num", "den")

    def __init__(self, ring, r, num=None, den=None):
        self.ring = ring
        self.r = r
        num = num or {}
        if den is None or not num:
            den = _pconst(ring.n)
        elif _is_monomial(den):
            ((e, c),) = den.items()
            shift = (0,) * r + tuple(-x for x in e)
            num = {_addexp(k, shift): v / c for k, v in num.items()}
            den = _pconst(ring.n)
        self.num = num
        self.den = den

    # -- constructors
    @classmethod
    def zero(cls, ring, r):
        return cls(ring, r)

    @classmethod
    def constant(cls, ring, r, c=1):
        if not isinstance(c, Scalar):
            c = ring.const(c)
        return cls.monomial(ring, (0,) * r, c)

    @classmethod
    def one(cls, ring, r):
        return cls.constant(ring, r, 1)

    @classmethod
    def monomial(cls, ring, zexp, coeff=1):
        zexp = tuple(zexp)
        if not isinstance(coeff, Scalar):
            coeff = ring.const(coeff)
        num = {zexp + e: c for e, c in coeff.num.items()}
        return cls(ring, len(zexp), num, coeff.den)

    @classmethod
    def var(cls, ring, r, i, power=1):
        e = [0] * r
        e[i] = power
        return cls.monomial(ring, e)

    @classmethod
    def from_terms(cls, ring, r, terms):
        out = cls.zero(ring, r)
        for zexp, c in terms:
            out = out + cls.monomial(ring, zexp, c)
        return out

    # -- structure
    def _check(self, other):
        if isinstance(other, LaurentPoly):
            if other.ring != self.ring or other.r != self.r:
                raise TypeError("ring or rank mismatch")
            return other
        if isinstance(other, Scalar):
            return LaurentPoly.constant(self.ring, self.r, other)
        if isinstance(other, (int, Fraction)) or type(other) is type(ONE):
            return LaurentPoly.constant(self.ring, self.r, other)
        return NotImplemented

    def _den_is_one(self):
        return self.den == _pconst(self.ring.n)

    def terms(self):
        """Iterate ``(zexp, Scalar)`` pairs in canonical order."""
        groups = {}
        r = self.r
        for e, c in self.num.items():
            groups.setdefault(e[:r], {})[e[r:]] = c
        for z in sorted(groups, key=_order_key):
            yield z, Scalar(self.ring, groups[z], self.den)

    def support(self):
        return sorted({e[: self.r] for e in self.num}, key=_order_key)

    def coefficient(self, zexp):
        zexp = tuple(zexp)
        r = self.r
        part = {e[r:]: c for e, c in self.num.items() if e[:r] == zexp}
        return Scalar(self.ring, part, self.den)

    def __len__(self):
        return len({e[: self.r] for e in self.num})

    def is_zero(self):
        return not self.num

    # -- arithmetic
    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            return LaurentPoly(self.ring, self.r, _padd(self.num, other.num), self.den)
        a = self._lift_den(other.den)
        b = other._lift_den(self.den)
        return LaurentPoly(self.ring, self.r, _padd(a, b), _pmul(self.den, other.den))

    __radd__ = __add__

    def _lift_den(self, d):
        lifted = {(0,) * self.r + e: c for e, c in d.items()}
        return _pmul(self.num, lifted)

    def __neg__(self):
        return LaurentPoly(self.ring, self.r, _pscale(self.num, -ONE), self.den)

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return LaurentPoly(self.ring, self.r, _pmul(self.num, other.num),
                           _pmul(self.den, other.den))

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            if len(self.num) != 1:
                raise ValueError("only monomials have Laurent inverses")
            inv = LaurentPoly(self.ring, self.r, _mono_inverse(self.num))
            inv = LaurentPoly(self.ring, self.r, inv._lift_den(self.den))
            return inv ** (-k)
        n = self.r + self.ring.n
        num = _ppow(self.num, k, n)
        return LaurentPoly(self.ring, self.r, num, _ppow(self.den, k, self.ring.n))

    def scale(self, c):
        return self * c

    def __eq__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return False
        if self.den == other.den:
            return self.num == other.num
        return self._lift_den(other.den) == other._lift_den(self.den)

    def __hash__(self):
        raise TypeError("LaurentPoly is not hashable")

    # -- symmetric group
    def permute(self, w):
        return permute(self, w)

    def is_symmetric(self):
        if self.r < 2:
            return True
        r = self.r
        gens = [tuple(range(k)) + (k + 1, k) + tuple(range(k + 2, r)) for k in range(r - 1)]
        if r > 2:
            gens.append(tuple(range(1, r)) + (0,))
        return all(permute(self, w) == self for w in gens)

    # -- substitution and specialisation
    def subs_monomial(self, r_new, images, coeffs=None):
        """Substitute ``z_k -> coeffs[k] * u^{images[k]}``.

        ``images[k]`` is an exponent vector in the ``r_new`` new variables and
        ``coeffs[k]`` a Scalar (default 1) of the same ring.
        """
        ring = self.ring
        coeffs = coeffs or [ring.one()] * self.r
        powers = {}
        num = {}
        rest = LaurentPoly(ring, r_new)
        for e, c in self.num.items():
            z, s = e[: self.r], e[self.r:]
            new = [0] * r_new
            factor = Scalar(ring, {s: c})
            for k, ek in enumerate(z):
                if not ek:
                    continue
                for j, m in enumerate(images[k]):
                    new[j] += ek * m
                if not coeffs[k].is_one():
                    if (k, ek) not in powers:
                        powers[(k, ek)] = coeffs[k] ** ek
                    factor = factor * powers[(k, ek)]
            if factor._den_is_one():
                for se, sc in factor.num.items():
                    key = tuple(new) + se
                    num[key] = num.get(key, ZERO) + sc
            else:
                rest = rest + LaurentPoly.monomial(ring, new, factor)
        out = LaurentPoly(ring, r_new, {k: v for k, v in num.items() if v}) + rest
        return LaurentPoly(ring, r_new, out.num, _pmul(out.den, self.den))

    def specialize(self, target, images):
        """Apply the ring map generator ``i -> images[i]`` to all coefficients."""
        mono = _monomial_images(images)
        if mono is not None:
            num = _map_monomially(self.num, mono, target.n, self.r)
            den = Scalar(target, _map_monomially(self.den, mono, target.n))
            return LaurentPoly(target, self.r, num) * den.inverse()
        out = LaurentPoly(target, self.r)
        cache = {}
        for e, c in self.num.items():
            z, s = e[: self.r], e[self.r:]
            val = cache.get(s)
            if val is None:
                val = cache[s] = _eval_poly({s: ONE}, target, images)
            out = out + LaurentPoly.monomial(target, z, val * c)
        d = _eval_poly(self.den, target, images)
        return out * d.inverse()

    def map_coefficients(self, f):
        return LaurentPoly.from_terms(self.ring, self.r, [(z, f(c)) for z, c in self.terms()])

    def total_degrees(self):
        return {sum(z) for z in self.support()}

    # -- exact division
    def divide_exact(self, other):
        return divide_exact(self, other)

    # -- printing
    def to_text(self, var="z"):
        if not self.num:
            return "0"
        names = [f"{var}{i + 1}" for i in range(self.r)]
        pieces = []
        for z, c in self.terms():
            mono = _mono_text(z, names)
            ctext = c.to_text()
            if not mono:
                pieces.append(f"({ctext})" if _needs_parens(ctext) else ctext)
            elif ctext == "1":
                pieces.append(mono)
            elif ctext == "-1":
                pieces.append("-" + mono)
            else:
                pieces.append(f"({ctext})*{mono}" if _needs_parens(ctext) else f"{ctext}*{mono}")
        out = pieces[0]
        for p in pieces[1:]:
            out += f" - {p[1:]}" if p.startswith("-") and not p.startswith("-(") else f" + {p}"
        return out

    __str__ = to_text

    def __repr__(self):
        return f"LaurentPoly[{self.r}]({self.to_text()})"

    def to_json(self, var="z"):
        return {
            "rank": self.r,
            "ring": list(self.ring.names),
            "terms": [[list(z), c.to_text()] for z, c in self.terms()],
        }


def _needs_parens(text):
    body = text[1:] if text.startswith("-") else text
    return " " in body or "/" in body and "(" in body


def permute(P: LaurentPoly, w) -> LaurentPoly:
    """``(w.P)(z_1..z_r) = P(z_{w(1)}..z_{w(r)})``."""
    r = P.r
    if len(w) != r or sorted(w) != list(range(r)):
        raise ValueError(f"not a permutation of rank {r}: {w}")
    out = {}
    for e, c in P.num.items():
        new = [0] * r
        for k in range(r):
            new[w[k]] = e[k]
        out[tuple(new) + e[r:]] = c
    return LaurentPoly(P.ring, r, out, P.den)


def antisymmetrize(P: LaurentPoly) -> LaurentPoly:
    """``sum_w sign(w) w.P`` over the symmetric group S_r."""
    acc = {}
    r = P.r
    for w in permutations(r):
        s = sign(w)
        for e, c in P.num.items():
            new = [0] * r
            for k in range(r):
                new[w[k]] = e[k]
            key = tuple(new) + e[r:]
            acc[key] = acc.get(key, ZERO) + (c if s == 1 else -c)
    return LaurentPoly(P.ring, r, {e: c for e, c in acc.items() if c}, P.den)


def symmetrize(P: LaurentPoly) -> LaurentPoly:
    """``sum_w w.P`` over S_r."""
    acc = {}
    r = P.r
    for w in permutations(r):
        for e, c in P.num.items():
            new = [0] * r
            for k in range(r):
                new[w[k]] = e[k]
            key = tuple(new) + e[r:]
            acc[key] = acc.get(key, ZERO) + c
    return LaurentPoly(P.ring, r, {e: c for e, c in acc.items() if c}, P.den)


def divide_exact(P: LaurentPoly, D: LaurentPoly) -> LaurentPoly:
    """Return Q with P = D*Q; raise :class:`NotDivisible` otherwise."""
    if P.ring != D.ring or P.r != D.r:
        raise TypeError("ring or rank mismatch")
    if D.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    lifted = {(0,) * P.r + e: c for e, c in D.den.items()}
    num = _pmul(P.num, lifted)
    try:
        q = _pdivide(num, D.num)
    except NotDivisible as exc:
        rem = LaurentPoly(P.ring, P.r, exc.remainder)
        raise NotDivisible("polynomial is not divisible", rem) from None
    return LaurentPoly(P.ring, P.r, q, P.den)


def binomial(ring, r, i, j, c):
    """The Laurent polynomial ``z_i - c z_j``."""
    return LaurentPoly.var(ring, r, i) - LaurentPoly.monomial(
        ring, tuple(1 if k == j else 0 for k in range(r)), c)


def vandermonde(ring, r) -> LaurentPoly:
    """``prod_{i<j} (z_i - z_j)``."""
    out = LaurentPoly.one(ring, r)
    for i in range(r):
        for j in range(i + 1, r):
            out = out * binomial(ring, r, i, j, 1)
    return out


def divide_by_vandermonde(P: LaurentPoly) -> LaurentPoly:
    """Exact division by Δ, one linear factor at a time."""
    Q = P
    for i in range(P.r):
        for j in range(i + 1, P.r):
            Q = divide_exact(Q, binomial(P.ring, P.r, i, j, 1))
    return Q


# ---------------------------------------------------------------------------
# rational functions with binomial denominators

def _scalar_key(c: Scalar):
    return (tuple(sorted(c.num.items())), tuple(sorted(c.den.items())))


class RationalFunction:
    """Numerator LaurentPoly over a multiset of factors ``(1 - c z_i/z_j)``.

    Factors are stored canonically with ``i < j`` and are never expanded
    unless the value is cancelled, compared or developed as a series in
    ``z_1/z_2, ..., z_{r-1}/z_r``.  The constants ``c`` must be invertible
    monomials (or rationals in a generator-free ring).
    """

    __slots__ = ("num", "factors", "_consts")

    def __init__(self, num: LaurentPoly, factors=None, consts=None):
        self.num = num
        self.factors = Counter(factors or {})
        self._consts = dict(consts or {})

    @property
    def ring(self):
        return self.num.ring

    @property
    def r(self):
        return self.num.r

    @classmethod
    def from_poly(cls, P):
        return cls(P)

    @classmethod
    def factor(cls, ring, r, i, j, c, power=1):
        """``(1 - c z_i/z_j)^{power}`` with power in {1, -1}."""
        if power == 1:
            return cls(_factor_poly(ring, r, i, j, c))
        out = cls(LaurentPoly.one(ring, r))
        return out._divide_factor(i, j, c)

    def _divide_factor(self, i, j, c):
        if not isinstance(c, Scalar):
            c = self.ring.const(c)
        num = self.num
        if i > j:
            # 1 - c z_i/z_j = -c (z_i/z_j) (1 - c^{-1} z_j/z_i)
            mono = [0] * self.r
            mono[i] -= 1
            mono[j] += 1
            num = num * LaurentPoly.monomial(self.ring, mono, -c.inverse())
            i, j, c = j, i, c.inverse()
        key = (i, j, _scalar_key(c))
        factors = Counter(self.factors)
        factors[key] += 1
        consts = dict(self._consts)
        consts[key] = c
        return RationalFunction(num, factors, consts)

    def _denominator_poly(self, factors):
        out = LaurentPoly.one(self.ring, self.r)
        for key, k in factors.items():
            i, j, _ = key
            out = out * _factor_poly(self.ring, self.r, i, j, self._consts[key]) ** k
        return out

    def _merge_consts(self, other):
        consts = dict(self._consts)
        consts.update(other._consts)
        return consts

    def __add__(self, other):
        if isinstance(other, LaurentPoly):
            other = RationalFunction(other)
        common = self.factors | other.factors
        consts = self._merge_consts(other)
        a = RationalFunction(self.num, {}, consts)._denominator_poly(common - self.factors)
        b = RationalFunction(other.num, {}, consts)._denominator_poly(common - other.factors)
        return RationalFunction(self.num * a + other.num * b, common, consts)

    def __neg__(self):
        return RationalFunction(-self.num, self.factors, self._consts)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, RationalFunction):
            return RationalFunction(self.num * other.num, self.factors + other.factors,
                                    self._merge_consts(other))
        return RationalFunction(self.num * other, self.factors, self._consts)

    __rmul__ = __mul__

    def permute(self, w):
        out = RationalFunction(permute(self.num, w))
        for key, k in self.factors.items():
            i, j, _ = key
            for _ in range(k):
                out = out._divide_factor(w[i], w[j], self._consts[key])
        return out

    def cancel(self):
        """Divide out every factor that divides the numerator exactly."""
        num = self.num
        left = Counter()
        for key, k in sorted(self.factors.items()):
            i, j, _ = key
            f = _factor_poly(self.ring, self.r, i, j, self._consts[key])
            for _ in range(k):
                try:
                    num = divide_exact(num, f)
                except NotDivisible:
                    left[key] += 1
        return RationalFunction(num, left, {k: self._consts[k] for k in left})

    def to_laurent(self) -> LaurentPoly:
        c = self.cancel()
        if c.factors:
            raise NotDivisible("rational function is not a Laurent polynomial", c.num)
        return c.num

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            other = RationalFunction(other)
        if not isinstance(other, RationalFunction):
            return False
        consts = self._merge_consts(other)
        lhs = self.num * RationalFunction(self.num, {}, consts)._denominator_poly(other.factors)
        rhs = other.num * RationalFunction(other.num, {}, consts)._denominator_poly(self.factors)
        return lhs == rhs

    def specialize(self, target, images):
        num = self.num.specialize(target, images)
        out = RationalFunction(num)
        for key, k in self.factors.items():
            i, j, _ = key
            c = self._consts[key].subs(target, images)
            for _ in range(k):
                out = out._divide_factor(i, j, c)
        return out

    def expand(self, upper):
        """Series in ``u_k = z_k/z_{k+1}`` truncated at partial sums.

        Returns a dict ``zexp -> Scalar`` holding every coefficient whose
        partial sums ``m_k = e_1+..+e_k`` satisfy ``m_k <= upper[k]`` for
        ``k = 1..r-1``.  Multiplication by ``z_i/z_j`` (i<j) only raises
        partial sums, so the truncation is exact on that region.
        """
        r = self.r
        upper = tuple(upper)
        if len(upper) != r - 1:
            raise ValueError("need r-1 partial-sum bounds")

        def keep(z):
            m = 0
            for k in range(r - 1):
                m += z[k]
                if m > upper[k]:
                    return False
            return True

        series = {}
        for e, c in self.num.num.items():
            if keep(e[:r]):
                series[e] = c
        n_s = self.ring.n
        for key, k in self.factors.items():
            i, j, _ = key
            c = self._consts[key]
            step = [0] * r
            step[i] += 1
            step[j] -= 1
            for _ in range(k):
                series = _geometric(series, tuple(step), c, keep, r, n_s)
        den = self.num.den
        out = {}
        r_ring = self.ring
        for e, v in series.items():
            out.setdefault(e[:r], {})[e[r:]] = v
        return {z: Scalar(r_ring, part, den) for z, part in out.items()}

    def __repr__(self):
        return f"RationalFunction({self.num.to_text()} / {dict(self.factors)})"


def _factor_poly(ring, r, i, j, c):
    mono = [0] * r
    mono[i] += 1
    mono[j] -= 1
    return LaurentPoly.one(ring, r) - LaurentPoly.monomial(ring, mono, c)


def _geometric(series, step, c, keep, r, n_s):
    """Multiply a truncated series by 1/(1 - c z^step)."""
    if not c.is_monomial():
        raise ValueError("series constants must be monomials")
    ((cexp, ccoef),) = c.num.items()
    shift = step + cexp
    out = dict(series)
    frontier = dict(series)
    while frontier:
        nxt = {}
        for e, v in frontier.items():
            t = tuple(x + y for x, y in zip(e, shift))
            if keep(t[:r]):
                nxt[t] = nxt.get(t, ZERO) + v * ccoef
        frontier = {e: v for e, v in nxt.items() if v}
        for e, v in frontier.items():
            nv = out.get(e, ZERO) + v
            if nv:
                out[e] = nv
            else:
                out.pop(e, None)
    return out


# ---------------------------------------------------------------------------
# numeric specialisation

def generic_rationals(count, seed, avoid=(), bound=9):
    """Distinct random rationals avoiding 0, ±1 and anything in ``avoid``."""
    rng = random.Random(seed)
    taken = {mpq(0), mpq(1), mpq(-1)} | {mpq(a) for a in avoid}
    out = []
    while len(out) < count:
        a = mpq(rng.randint(-bound, bound), rng.randint(1, bound))
        if a in taken or not a or 1 / a in taken:
            continue
        taken.add(a)
        out.append(a)
    return out
