"""S^1-equivariant Euler classes and fixed-point localization sums.

Equivariant classes over a base with trivial circle action are Laurent
polynomials in the degree-2 parameter ``u`` with coefficients in the base
ring.  The localization sums below evaluate, component by component,

    integral over P of  alpha * u / euler(normal bundle of P)

and read off the ``u**0`` coefficient.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Optional, Sequence, Tuple

from .graded_algebra import Algebra, AlgebraError, Element

__all__ = [
    "HypothesisError",
    "LaurentElement",
    "LineSummand",
    "FixedComponent",
    "euler_class",
    "invert_euler",
    "fixed_point_contribution",
    "localization_terms",
    "star_terms",
    "star_star_terms",
    "localize_star",
    "localize_star_star",
]


class HypothesisError(ValueError):
    """Input is well formed but violates the hypotheses of the formula."""


class LaurentElement:
    """Finite sum of ``e_p * u**p`` with ``e_p`` in a fixed base algebra."""

    __slots__ = ("algebra", "_terms")

    def __init__(self, algebra: Algebra, terms: Optional[Dict[int, Element]] = None):
        self.algebra = algebra
        clean = {}
        for p, e in (terms or {}).items():
            if e.algebra is not algebra and e.algebra != algebra:
                raise AlgebraError("Laurent coefficient from a different algebra")
            if e:
                clean[int(p)] = e
        self._terms = clean

    @classmethod
    def constant(cls, e: Element):
        return cls(e.algebra, {0: e})

    @classmethod
    def u(cls, algebra: Algebra, power: int = 1):
        return cls(algebra, {power: algebra.one()})

    @property
    def terms(self):
        return dict(self._terms)

    def coefficient(self, p: int) -> Element:
        return self._terms.get(p, self.algebra.zero())

    def powers(self):
        return sorted(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def _coerce(self, other):
        if isinstance(other, LaurentElement):
            if other.algebra is not self.algebra and other.algebra != self.algebra:
                raise AlgebraError("cannot combine Laurent elements over different algebras")
            return other
        if isinstance(other, Element):
            if other.algebra is not self.algebra and other.algebra != self.algebra:
                raise AlgebraError("cannot combine Laurent elements over different algebras")
            return LaurentElement.constant(other)
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return LaurentElement.constant(self.algebra.scalar(other))
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self._terms)
        for p, e in other._terms.items():
            terms[p] = terms[p] + e if p in terms else e
        return LaurentElement(self.algebra, terms)

    __radd__ = __add__

    def __neg__(self):
        return LaurentElement(self.algebra, {p: -e for p, e in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return LaurentElement(self.algebra, {p: e * other for p, e in self._terms.items()})
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = {}
        for p, a in self._terms.items():
            for q, b in other._terms.items():
                prod = a * b
                if prod:
                    terms[p + q] = terms[p + q] + prod if p + q in terms else prod
        return LaurentElement(self.algebra, terms)

    def __rmul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise AlgebraError("exponent must be a nonnegative integer")
        out = LaurentElement.constant(self.algebra.one())
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._terms == other._terms

    __hash__ = None

    def total_degrees(self):
        """Set of total degrees ``2p + deg(monomial)`` present."""
        alg = self.algebra
        return sorted({2 * p + alg.monomial_degree(m)
                       for p, e in self._terms.items() for m in e._terms})

    def is_homogeneous(self, degree=None):
        degs = self.total_degrees()
        if degree is None:
            return len(degs) <= 1
        return degs in ([], [degree])

    def map_coefficients(self, f):
        return LaurentElement(self.algebra, {p: f(e) for p, e in self._terms.items()})

    def __repr__(self):
        if not self._terms:
            return "0"
        return " + ".join(f"({e})*u^{p}" for p, e in sorted(self._terms.items(), reverse=True))


@dataclass(frozen=True)
class LineSummand:
    """Line bundle on which ``exp(it)`` acts by ``exp(i * weight * t)``."""

    weight: int
    c1: Element

    def __post_init__(self):
        if isinstance(self.weight, bool) or not isinstance(self.weight, int):
            raise HypothesisError("weight must be an integer")
        if self.weight == 0:
            raise HypothesisError("zero weight: direction is tangent to the fixed set")
        if not self.c1.is_homogeneous(2):
            raise AlgebraError("first Chern class must be homogeneous of degree 2")


def euler_class(normal: Sequence[LineSummand], base: Algebra) -> LaurentElement:
    """Product of ``weight * u + c1`` over the summands."""
    eps = LaurentElement.constant(base.one())
    for s in normal:
        if s.c1.algebra != base:
            raise AlgebraError("line summand lives over a different base")
        eps = eps * LaurentElement(base, {1: base.scalar(s.weight), 0: s.c1})
    return eps


def _check_nilpotent(e: Element):
    alg = e.algebra
    for m in e._terms:
        if any(x and g.nilpotency is None for x, g in zip(m, alg.generators)):
            raise HypothesisError(
                "remainder involves a generator without nilpotency; inverse is not finite")


def invert_euler(eps: LaurentElement) -> LaurentElement:
    """Exact inverse of ``c * u**r * (1 + N)`` with ``N`` nilpotent.

    Exactly one power of ``u`` may carry a nonzero constant; everything else
    must have positive-degree coefficients so the geometric series stops.
    """
    alg = eps.algebra
    leading = [(p, e.constant()) for p, e in eps._terms.items() if e.constant() != 0]
    if not leading:
        raise HypothesisError("leading coefficient is zero or not a scalar; cannot invert")
    if len(leading) > 1:
        raise HypothesisError("non-nilpotent remainder: several powers of u carry constants")
    r, c = leading[0]
    unit = LaurentElement.constant(alg.one())
    scale = LaurentElement(alg, {-r: alg.scalar(1 / c)})
    rest = eps * scale - unit
    for e in rest._terms.values():
        _check_nilpotent(e)
    neg = -rest
    total, power = unit, unit
    while True:
        power = power * neg
        if not power:
            break
        total = total + power
    return total * scale


def _as_laurent(alpha, base):
    if isinstance(alpha, LaurentElement):
        if alpha.algebra != base:
            raise AlgebraError("alpha lives over a different base")
        return alpha
    if isinstance(alpha, Element):
        if alpha.algebra != base:
            raise AlgebraError("alpha lives over a different base")
        return LaurentElement.constant(alpha)
    raise TypeError(f"expected an Element or LaurentElement, got {type(alpha).__name__}")


@dataclass(frozen=True)
class FixedComponent:
    """A component of the fixed set together with its normal data.

    The normal bundle is given either as line summands, or (all weights 1)
    by its rank and total Chern classes ``chern = (1, c_1, c_2, ...)``; the
    latter form lets ``c_j`` be nonzero for ``j > rank``, which the index
    bundle of a family needs.
    """

    base: Algebra
    normal: Tuple[LineSummand, ...] = ()
    orientation_sign: int = 1
    chern: Optional[Tuple[Element, ...]] = None
    rank: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "normal", tuple(self.normal))
        if self.base.volume_monomial is None:
            raise AlgebraError("fixed component base needs volume data")
        if self.orientation_sign not in (1, -1):
            raise AlgebraError("orientation_sign must be +1 or -1")
        if self.chern is None:
            if self.rank is not None and self.rank != len(self.normal):
                raise AlgebraError("rank disagrees with the number of line summands")
            object.__setattr__(self, "rank", len(self.normal))
        else:
            if self.normal:
                raise AlgebraError("give either line summands or Chern classes, not both")
            chern = tuple(self.chern)
            if not chern or chern[0] != self.base.one():
                raise AlgebraError("total Chern class must start with c_0 = 1")
            for j, c in enumerate(chern):
                if c.algebra != self.base:
                    raise AlgebraError("Chern class lives over a different base")
                if not c.is_homogeneous(2 * j):
                    raise AlgebraError(f"c_{j} must be homogeneous of degree {2 * j}")
            object.__setattr__(self, "chern", chern)
            if self.rank is None:
                raise AlgebraError("rank is required with Chern-class normal data")
        if self.rank < 1:
            raise HypothesisError("fixed component must have a nonzero normal bundle")

    @property
    def weights(self):
        if self.chern is not None:
            return (1,) * self.rank
        return tuple(s.weight for s in self.normal)

    def euler(self) -> LaurentElement:
        if self.chern is None:
            return euler_class(self.normal, self.base)
        return LaurentElement(self.base, {self.rank - j: c for j, c in enumerate(self.chern)})


def fixed_point_contribution(P: FixedComponent, alpha) -> Dict[int, Fraction]:
    """``p -> orientation * integral of [u**p](alpha * u / euler)`` over ``P``."""
    alpha = _as_laurent(alpha, P.base)
    integrand = alpha * LaurentElement.u(P.base) * invert_euler(P.euler())
    return {p: P.orientation_sign * P.base.integrate_top(e)
            for p, e in sorted(integrand._terms.items())}


def localization_terms(components: Iterable[FixedComponent], alphas) -> Dict[int, Fraction]:
    """Sum of contributions; ``alphas`` maps each component to its integrand."""
    total: Dict[int, Fraction] = {}
    for P in components:
        for p, v in fixed_point_contribution(P, alphas(P)).items():
            total[p] = total.get(p, Fraction(0)) + v
    return {p: v for p, v in sorted(total.items()) if v != 0}


def _check_unit_weights(components):
    for P in components:
        if any(w != 1 for w in P.weights):
            raise HypothesisError(f"formula needs all normal weights equal to 1, got {P.weights}")


def _check_dimension(components, dim_w):
    for P in components:
        got = 2 * P.rank + P.base.top_degree
        if got != dim_w:
            raise HypothesisError(
                f"component of rank {P.rank} over a base of dimension {P.base.top_degree} "
                f"has total dimension {got}, expected {dim_w}")


def star_terms(components: Sequence[FixedComponent], n: int) -> Dict[int, Fraction]:
    """All u-powers of ``(-1)**n * sum_k integral u**(n+1) / euler_k``."""
    components = list(components)
    if n < 0:
        raise AlgebraError("n must be nonnegative")
    _check_unit_weights(components)
    _check_dimension(components, 2 * (n + 1))
    sign = -1 if n % 2 else 1
    terms = localization_terms(components, lambda P: LaurentElement.u(P.base, n))
    return {p: sign * v for p, v in terms.items()}


def localize_star(components: Sequence[FixedComponent], n: int) -> Fraction:
    return star_terms(components, n).get(0, Fraction(0))


def star_star_terms(components: Sequence[FixedComponent], betas: Sequence[Element],
                    l: int) -> Dict[int, Fraction]:
    """All u-powers of ``sum_k integral u**(l+1) * beta_1...beta_k / euler_k``."""
    components, betas = list(components), list(betas)
    if l < 0:
        raise AlgebraError("l must be nonnegative")
    for b in betas:
        if not b.is_homogeneous(1):
            raise AlgebraError("each beta must be homogeneous of degree 1")
    _check_unit_weights(components)
    _check_dimension(components, 2 * (l + 1) + len(betas))

    def integrand(P):
        prod = P.base.one()
        for b in betas:
            if b.algebra != P.base:
                raise AlgebraError("beta lives over a different base than the component")
            prod = prod * b
        return LaurentElement(P.base, {l: prod})

    return localization_terms(components, integrand)


def localize_star_star(components: Sequence[FixedComponent], betas: Sequence[Element],
                       l: int) -> Fraction:
    return star_star_terms(components, betas, l).get(0, Fraction(0))
