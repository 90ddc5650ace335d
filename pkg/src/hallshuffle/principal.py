"""Character-twisted shuffle algebra over a finite set of characters.

Characters are those of a finite abelian group ``A = Z/n_1 + ... + Z/n_k``
(a stand-in for ``Pic^0``), written as residue tuples.  Character ``chi``
carries 2g Frobenius parameters ``beta_i`` and a square root ``s = gamma^(1/2)``
of ``gamma = q^-1 prod beta_i``.  The square relation is built in by solving
for the last parameter, ``beta_2g = q s^2 / (beta_1 ... beta_{2g-1})``, so the
remaining parameters and ``s`` are free generators.

Conjugation sends ``beta -> q/beta``.  For a conjugate pair only one member
gets generators; a self-conjugate non-trivial character gets g free
parameters paired as ``(b, q/b)`` and ``s = v^(1-g)``.  The trivial character
uses the Weil numbers of the curve, so ``gamma_1 = q^(g-1)`` and
``gamma_1^(-1/2) = v^(g-1)``.

Elements of ``D_r`` map character tuples to Laurent polynomials.  After
symmetrisation a component is a Laurent polynomial whenever every kernel
``g^{chi conj(rho)}`` with ``chi != rho`` is pole-free, which is the case
under the polynomial substitution; with free parameters the mixed components
keep their ``(1 - x_i/x_j)`` denominators and are stored as rational
functions.  The symmetriser multiplies the tuple ``(chi_1..chi_r)`` component by
``prod_{i<j} g^{chi_i conj(chi_j)}(x_i/x_j)`` and sums over permutations acting
on variables and tuple positions together.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as cartesian

from .curvezeta import CurveData, Kernel, pic0_order, xi_series
from .exactalg import (LaurentPoly, NotDivisible, RationalFunction, Scalar,
                       ScalarRing, divide_exact, permutations, shuffles)
from .shufflecore import _embed_rational, embed

MAX_PRINCIPAL_RANK = 3


class CharacterData:
    """Characters of a finite abelian group together with their Frobenius data."""

    def __init__(self, g: int, invariant_factors=(), polynomial: bool = False):
        factors = tuple(int(n) for n in invariant_factors if int(n) > 1)
        if g == 0 and factors:
            raise ValueError("genus 0 has trivial Pic^0, so only the trivial character")
        if any(n < 1 for n in invariant_factors):
            raise ValueError("invariant factors must be positive")
        self.genus = g
        self.factors = factors
        self.polynomial = polynomial
        self.characters = [tuple(t) for t in cartesian(*(range(n) for n in factors))]
        self.trivial = tuple(0 for _ in factors)
        names = ["v"] + [f"a{l + 1}" for l in range(g)]
        self._free = {}
        for chi in self.characters:
            if chi == self.trivial:
                continue
            bar = self.conjugate(chi)
            if bar < chi:
                continue
            label = "".join(str(c) for c in chi)
            count = self._free_count(chi == bar)
            gens = [f"b{label}_{i + 1}" for i in range(count)]
            root = None
            if chi != bar and not self._root_forced():
                root = f"s{label}"
                gens.append(root)
            self._free[chi] = (gens, root)
            names += gens
        self.ring = ScalarRing(tuple(names))
        self.curve = CurveData(g, self.ring)
        self._params = {}
        for chi in self.characters:
            self._params[chi] = self._build(chi)

    # -- group structure
    def conjugate(self, chi):
        return tuple((-c) % n for c, n in zip(chi, self.factors))

    def combine(self, chi, rho):
        """``chi * conj(rho)``."""
        return tuple((a - b) % n for a, b, n in zip(chi, rho, self.factors))

    @property
    def order(self) -> int:
        return len(self.characters)

    def label(self, chi) -> str:
        return ",".join(str(c) for c in chi) if chi else "1"

    # -- parameters
    def _free_count(self, self_conjugate: bool) -> int:
        g = self.genus
        if self.polynomial:
            return g - 1 if self_conjugate else max(2 * g - 3, 0)
        return g if self_conjugate else 2 * g - 1

    def _root_forced(self) -> bool:
        return self.polynomial and self.genus == 1

    def _build(self, chi):
        R, g = self.ring, self.genus
        v = R.gen("v")
        q = v ** -2
        if chi == self.trivial:
            betas = self.curve.weil_numbers()
            return betas, v ** (1 - g)
        bar = self.conjugate(chi)
        rep = chi if chi <= bar else bar
        gens, root = self._free[rep]
        free = [R.gen(n) for n in gens if n != root]
        tail = [R.one(), q] if self.polynomial else []
        if chi == bar:
            betas = []
            for b in free:
                betas += [b, q / b]
            betas += tail
            s = v ** (1 - g)
        else:
            s = R.gen(root) if root is not None else R.one()
            # gamma = q^-1 prod beta = s^2 fixes one parameter
            if self.polynomial:
                head = free + ([s ** 2 / _prod(free, R)] if g >= 2 else [])
                betas = head + tail
            else:
                betas = free + [q * s ** 2 / _prod(free, R)]
            if rep != chi:
                betas = [q / b for b in betas]
                s = v ** (2 - 2 * g) / s
        return betas, s

    def betas(self, chi) -> list:
        return list(self._params[chi][0])

    def gamma_sqrt(self, chi) -> Scalar:
        return self._params[chi][1]

    def gamma(self, chi) -> Scalar:
        return self.gamma_sqrt(chi) ** 2

    def gamma_from_betas(self, chi) -> Scalar:
        out = self.ring.gen("v") ** 2
        for b in self.betas(chi):
            out = out * b
        return out

    def q(self) -> Scalar:
        return self.ring.gen("v") ** -2

    def pairing_constant(self, chi, rho) -> Scalar:
        """Green pairing of ``1^chi_{1,n}`` with ``1^rho_{1,n}``: ``#Pic^0/(q-1)`` or 0."""
        if chi != rho:
            return self.ring.zero()
        return pic0_order(self.curve) / (self.q() - 1)

    def to_json(self):
        return {"genus": self.genus, "invariant_factors": list(self.factors),
                "polynomial": self.polynomial,
                "characters": [{"label": self.label(chi),
                                "betas": [b.to_text() for b in self.betas(chi)],
                                "gamma_sqrt": self.gamma_sqrt(chi).to_text()}
                               for chi in self.characters]}


def _prod(xs, R):
    out = R.one()
    for x in xs:
        out = out * x
    return out


# ---------------------------------------------------------------------------
# kernels

def zeta_chi(data: CharacterData, chi) -> Kernel:
    """``prod (1 - beta_i z) / ((1 - z)(1 - q z))``."""
    R = data.ring
    return Kernel.build(R, [(b, 1) for b in data.betas(chi)], [(R.one(), 1), (data.q(), 1)])


def functional_equation_constant(data: CharacterData, chi) -> Scalar:
    """``c`` with ``zeta^chi(z/q) = c z^{2(g-1)} zeta^{conj chi}(1/z)``.

    Computed by comparing both sides as rational functions; raises if the
    ratio is not a constant times ``z^{2(g-1)}``.
    """
    q = data.q()
    n1, d1 = zeta_chi(data, chi).scale_variable(q.inverse()).fraction()
    n2, d2 = zeta_chi(data, data.conjugate(chi)).invert_variable().fraction()
    try:
        ratio = divide_exact(n1 * d2, n2 * d1)
    except NotDivisible as exc:
        raise ArithmeticError("functional equation ratio is not a monomial") from exc
    terms = list(ratio.terms())
    if len(terms) != 1 or terms[0][0] != (2 * (data.genus - 1),):
        raise ArithmeticError("functional equation ratio is not c z^{2(g-1)}")
    return terms[0][1]


def kernel_g_chi(data: CharacterData, chi) -> Kernel:
    """``(1 - q/z)(1 - q z) z^{g-1} gamma^{-1/2} zeta^chi(1/z)``."""
    R = data.ring
    q = data.q()
    outer = Kernel.build(R, [(q, -1), (q, 1)], power=data.genus - 1,
                         const=data.gamma_sqrt(chi).inverse())
    return outer * zeta_chi(data, chi).invert_variable()


def xi_chi_series(data: CharacterData, chi, N: int) -> list:
    """Coefficients of ``zeta^chi(s) / zeta^chi(s/q)`` up to ``s^N``."""
    if N < 0:
        raise ValueError("N >= 0 required")
    z = zeta_chi(data, chi)
    ser = (z / z.scale_variable(data.q().inverse())).series(N)
    return [ser.get(k, data.ring.zero()) for k in range(N + 1)]


def xi_trivial_reference(data: CharacterData, N: int) -> list:
    """The spherical series for the same curve, for comparison with the trivial character."""
    return xi_series(data.curve, N)


# ---------------------------------------------------------------------------
# elements and products

def _as_rf(x):
    return x if isinstance(x, RationalFunction) else RationalFunction(x)


def _is_zero(x):
    if isinstance(x, RationalFunction):
        return x.cancel().num.is_zero()
    return x.is_zero()


def _add(a, b):
    if isinstance(a, LaurentPoly) and isinstance(b, LaurentPoly):
        return a + b
    return _as_rf(a) + _as_rf(b)


def _scale(a, c):
    if isinstance(a, LaurentPoly):
        return a * c
    return a * RationalFunction(LaurentPoly.constant(a.ring, a.r, c))


def _text(x):
    if isinstance(x, LaurentPoly):
        return x.to_text()
    den = RationalFunction(x.num, {}, x._consts)._denominator_poly(x.factors)
    return f"({x.num.to_text()}) / ({den.to_text()})"


def _settle(F: RationalFunction):
    """Laurent polynomial when the denominators cancel, else the reduced fraction."""
    F = F.cancel()
    return F.num if not F.factors else F


@dataclass
class PrincipalElement:
    """Rank plus a map from character tuples to payloads (Laurent or rational)."""

    rank: int
    components: dict
    preimage: dict | None = field(default=None)

    def __post_init__(self):
        self.components = {tuple(k): v for k, v in self.components.items() if not _is_zero(v)}

    def __add__(self, other):
        out = dict(self.components)
        for k, v in other.components.items():
            out[k] = _add(out[k], v) if k in out else v
        return PrincipalElement(self.rank, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return PrincipalElement(self.rank, {k: _scale(v, c) for k, v in self.components.items()})

    def __eq__(self, other):
        if not isinstance(other, PrincipalElement) or self.rank != other.rank:
            return False
        if set(self.components) != set(other.components):
            return False
        return all(_as_rf(self.components[k]) == _as_rf(other.components[k])
                   for k in self.components)

    def support(self):
        return sorted(self.components)

    @property
    def is_laurent(self) -> bool:
        return all(isinstance(v, LaurentPoly) for v in self.components.values())

    def to_json(self, data: CharacterData | None = None):
        lab = (lambda t: [data.label(c) for c in t]) if data else list
        return {"rank": self.rank,
                "components": [{"characters": lab(k), "payload": _text(self.components[k])}
                               for k in sorted(self.components)]}


def delta(data: CharacterData, chars, P: LaurentPoly) -> PrincipalElement:
    """``delta_{chi_1..chi_r} P`` in ``D_r``."""
    chars = tuple(tuple(c) for c in chars)
    if len(chars) != P.r:
        raise ValueError("one character per variable")
    for c in chars:
        if c not in data._params:
            raise ValueError(f"unknown character {c}")
    return PrincipalElement(P.r, {chars: P})


def _pair_kernels(data, chars, pairs, n):
    F = RationalFunction(LaurentPoly.one(data.ring, n))
    for i, j in pairs:
        F = F * kernel_g_chi(data, data.combine(chars[i], chars[j])).at_ratio(n, i, j)
    return F


def _moved(chars, w):
    out = [None] * len(chars)
    for k, c in enumerate(chars):
        out[w[k]] = c
    return tuple(out)


def _collect(terms):
    out = {}
    for key, F in terms:
        out[key] = out[key] + F if key in out else F
    return {k: _settle(F) for k, F in out.items()}


def principal_psi(data: CharacterData, f: PrincipalElement) -> PrincipalElement:
    """``sum_w w(f * prod_{i<j} g_{ij})`` with ``w`` acting on tuples and variables."""
    r = f.rank
    if r > MAX_PRINCIPAL_RANK:
        raise ValueError(f"rank <= {MAX_PRINCIPAL_RANK} required")
    if r <= 1:
        return PrincipalElement(r, dict(f.components), dict(f.components))
    pairs = [(i, j) for i in range(r) for j in range(i + 1, r)]
    terms = []
    for chars, P in f.components.items():
        F = _pair_kernels(data, chars, pairs, r) * _as_rf(P)
        for w in permutations(r):
            terms.append((_moved(chars, w), F.permute(w)))
    return PrincipalElement(r, _collect(terms), dict(f.components))


def _embed_pre(A, B, n):
    r = A.rank
    out = {}
    for ca, Pa in A.preimage.items():
        for cb, Pb in B.preimage.items():
            key = ca + cb
            val = embed(Pa, n, 0) * embed(Pb, n, r)
            out[key] = out[key] + val if key in out else val
    return out


def principal_mul(data: CharacterData, A: PrincipalElement, B: PrincipalElement,
                  route: str = "square") -> PrincipalElement:
    """Product of two symmetrised elements.

    ``square`` symmetrises the concatenated preimages; ``direct`` sums over
    shuffles with the cross kernels ``g_{ij}``, ``i <= r < j``.
    """
    r, s = A.rank, B.rank
    n = r + s
    if n > MAX_PRINCIPAL_RANK:
        raise ValueError(f"rank <= {MAX_PRINCIPAL_RANK} required")
    if r == 0 or s == 0:
        raise ValueError("use scale for rank-zero factors")
    if route == "square":
        if A.preimage is None or B.preimage is None:
            raise ValueError("square route needs preimages")
        return principal_psi(data, PrincipalElement(n, _embed_pre(A, B, n)))
    if route != "direct":
        raise ValueError("route is 'square' or 'direct'")
    pairs = [(i, j) for i in range(r) for j in range(r, n)]
    terms = []
    for ca, Pa in A.components.items():
        for cb, Pb in B.components.items():
            chars = ca + cb
            F = _pair_kernels(data, chars, pairs, n) * (_embed_rational(_as_rf(Pa), n, 0) *
                                                         _embed_rational(_as_rf(Pb), n, r))
            for w in shuffles(r, s):
                terms.append((_moved(chars, w), F.permute(w)))
    pre = _embed_pre(A, B, n) if A.preimage is not None and B.preimage is not None else None
    return PrincipalElement(n, _collect(terms), pre)


def principal_product(data: CharacterData, elements, route="square") -> PrincipalElement:
    out = elements[0]
    for e in elements[1:]:
        out = principal_mul(data, out, e, route)
    return out


def generator_chi(data: CharacterData, chi, d: int) -> PrincipalElement:
    """``delta_chi x^d``, the image of ``1^chi_{1,d}``."""
    P = LaurentPoly.monomial(data.ring, (d,))
    return PrincipalElement(1, {(tuple(chi),): P}, {(tuple(chi),): P})


def collapse_constant(data: CharacterData, pairs: int) -> Scalar:
    """``v^{(g-1) * pairs}``: one factor ``gamma_1^{-1/2}`` per kernel."""
    return data.ring.gen("v") ** ((data.genus - 1) * pairs)


def is_polynomial(data: CharacterData, chi) -> bool:
    """Whether ``zeta^chi`` reduces to a polynomial of degree ``2g - 2``."""
    k = zeta_chi(data, chi)
    return not k.den and len(k.num) == 2 * data.genus - 2
