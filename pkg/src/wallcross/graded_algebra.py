"""Graded-commutative rings over the rationals.

A ring is presented by odd generators (anticommuting, square zero) and even
generators (commuting, truncated at a fixed power).  Elements are finite
sums of canonical monomials with exact ``Fraction`` coefficients.
"""
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Dict, Iterable, List, Optional, Tuple

__all__ = [
    "AlgebraError",
    "GeneratorSpec",
    "AlgebraSpec",
    "Algebra",
    "Element",
    "make_algebra",
    "exterior_algebra",
    "point",
    "parse_rational",
    "format_rational",
    "integrate_top",
    "homogeneous_part",
]

ODD, EVEN = "odd", "even"


class AlgebraError(ValueError):
    """Invalid ring presentation or an operation outside its domain."""


def parse_rational(value):
    """Read an exact rational from an int or a ``"p/q"`` string."""
    if isinstance(value, bool):
        raise AlgebraError(f"not a rational: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            pass
    raise AlgebraError(f"not a rational: {value!r}")


def format_rational(q):
    return str(Fraction(q))


@dataclass(frozen=True)
class GeneratorSpec:
    label: str
    degree: int
    parity: Optional[str] = None
    nilpotency: Optional[int] = None

    def __post_init__(self):
        if not isinstance(self.degree, int) or self.degree < 1:
            raise AlgebraError(f"generator {self.label!r}: degree must be a positive integer")
        expected = ODD if self.degree % 2 else EVEN
        parity = self.parity if self.parity is not None else expected
        if parity != expected:
            raise AlgebraError(
                f"generator {self.label!r}: parity {parity!r} does not match degree {self.degree}")
        object.__setattr__(self, "parity", parity)
        nil = self.nilpotency
        if parity == ODD:
            if nil is None:
                nil = 2
            elif nil != 2:
                raise AlgebraError(f"odd generator {self.label!r} must have nilpotency 2")
        elif nil is not None and (not isinstance(nil, int) or nil < 1):
            raise AlgebraError(f"generator {self.label!r}: nilpotency must be a positive integer")
        object.__setattr__(self, "nilpotency", nil)

    @property
    def odd(self):
        return self.parity == ODD


@dataclass(frozen=True)
class AlgebraSpec:
    """Generators in canonical order, plus optional integration data.

    ``volume`` is a monomial given as ``((label, exponent), ...)``; the empty
    tuple is the unit monomial (integration over a point).
    """

    generators: Tuple[GeneratorSpec, ...] = ()
    volume: Optional[Tuple[Tuple[str, int], ...]] = None
    normalization: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        if self.volume is not None:
            object.__setattr__(self, "volume", tuple((str(g), int(e)) for g, e in self.volume))
        object.__setattr__(self, "normalization", parse_rational(self.normalization))
        if self.normalization == 0:
            raise AlgebraError("volume normalization must be nonzero")


class Algebra:
    """Handle for building and combining elements of one presented ring."""

    def __init__(self, spec: AlgebraSpec):
        labels = [g.label for g in spec.generators]
        if len(set(labels)) != len(labels):
            raise AlgebraError(f"duplicate generator labels in {labels}")
        self.spec = spec
        self.generators = spec.generators
        self.labels = tuple(labels)
        self._index = {lab: i for i, lab in enumerate(labels)}
        self._degrees = tuple(g.degree for g in spec.generators)
        self._odd = tuple(g.odd for g in spec.generators)
        self._limit = tuple(g.nilpotency for g in spec.generators)
        self._products = {}
        self.volume_monomial = None
        if spec.volume is not None:
            mono = self.monomial(spec.volume)
            if mono is None:
                raise AlgebraError(f"volume monomial {spec.volume} is zero in this ring")
            self.volume_monomial = mono

    def __eq__(self, other):
        return self is other or (isinstance(other, Algebra) and self.spec == other.spec)

    def __hash__(self):
        return hash(self.spec)

    def __repr__(self):
        return f"Algebra({', '.join(self.labels) or 'Q'})"

    @property
    def unit_monomial(self):
        return (0,) * len(self.labels)

    def monomial(self, factors: Iterable[Tuple[str, int]]):
        """Exponent tuple for ``factors`` given in canonical order, or None if it vanishes.

        Repeated or out-of-order labels are rejected; use products of
        elements to reorder with signs.
        """
        exps = [0] * len(self.labels)
        last = -1
        for label, e in factors:
            if label not in self._index:
                raise AlgebraError(f"unknown generator {label!r}")
            i = self._index[label]
            if i <= last:
                raise AlgebraError(f"monomial factors out of canonical order at {label!r}")
            if not isinstance(e, int) or e < 1:
                raise AlgebraError(f"exponent of {label!r} must be a positive integer")
            last = i
            exps[i] = e
        exps = tuple(exps)
        return exps if self._allowed(exps) else None

    def _allowed(self, exps):
        return all(lim is None or e < lim for e, lim in zip(exps, self._limit))

    def monomial_degree(self, exps):
        return sum(e * d for e, d in zip(exps, self._degrees))

    def monomial_factors(self, exps):
        return [(lab, e) for lab, e in zip(self.labels, exps) if e]

    def monomials(self):
        """All nonzero monomials; requires every generator to be nilpotent."""
        if any(lim is None for lim in self._limit):
            raise AlgebraError("ring has non-nilpotent generators; monomials are infinite")
        return [tuple(m) for m in product(*(range(lim) for lim in self._limit))]

    def is_nilpotent_monomial(self, exps):
        return any(e and lim is not None for e, lim in zip(exps, self._limit))

    def mul_monomials(self, a, b):
        """Product of canonical monomials as ``(sign, exps)``, or None if it truncates."""
        key = (a, b)
        if key in self._products:
            return self._products[key]
        res = self._products[key] = self._mul_monomials(a, b)
        return res

    def _mul_monomials(self, a, b):
        exps = tuple(x + y for x, y in zip(a, b))
        if not self._allowed(exps):
            return None
        # Koszul sign: each odd factor of b passes the odd factors of a with a larger index.
        sign = 1
        seen_odd = 0
        for i in range(len(exps) - 1, -1, -1):
            if not self._odd[i]:
                continue
            if b[i] and seen_odd % 2:
                sign = -sign
            if a[i]:
                seen_odd += 1
        return sign, exps

    # element constructors
    def element(self, terms=None):
        return Element(self, terms or {})

    def zero(self):
        return Element(self, {})

    def one(self):
        return self.scalar(1)

    def scalar(self, q):
        return Element(self, {self.unit_monomial: parse_rational(q)})

    def gen(self, label):
        mono = self.monomial([(label, 1)])
        return Element(self, {} if mono is None else {mono: Fraction(1)})

    def gens(self):
        return [self.gen(lab) for lab in self.labels]

    def term(self, factors, coeff=1):
        mono = self.monomial(factors)
        return Element(self, {} if mono is None else {mono: parse_rational(coeff)})

    # integration
    @property
    def top_degree(self):
        if self.volume_monomial is None:
            raise AlgebraError("algebra has no volume monomial")
        return self.monomial_degree(self.volume_monomial)

    def integrate_top(self, a: "Element") -> Fraction:
        if self.volume_monomial is None:
            raise AlgebraError("algebra has no volume monomial; cannot integrate")
        self._check(a)
        return self.spec.normalization * a._terms.get(self.volume_monomial, Fraction(0))

    # serialization
    def decode(self, data) -> "Element":
        """Element from ``[[[[label, exp], ...], "p/q"], ...]``; terms in any order."""
        if not isinstance(data, list):
            raise AlgebraError("element encoding must be a list of terms")
        total = self.zero()
        for term in data:
            if not (isinstance(term, list) and len(term) == 2 and isinstance(term[0], list)):
                raise AlgebraError(f"malformed term {term!r}")
            factors = []
            for f in term[0]:
                if not (isinstance(f, list) and len(f) == 2 and isinstance(f[0], str)):
                    raise AlgebraError(f"malformed factor {f!r}")
                factors.append((f[0], f[1]))
            coeff = parse_rational(term[1])
            total = total + _ordered_product(self, factors) * coeff
        return total

    def _check(self, a):
        if not isinstance(a, Element) or a.algebra != self:
            raise AlgebraError("element belongs to a different algebra")


def _ordered_product(alg, factors):
    # factors may arrive in any order; multiply them out to pick up Koszul signs
    out = alg.one()
    for label, e in factors:
        if not isinstance(e, int) or isinstance(e, bool) or e < 1:
            raise AlgebraError(f"exponent of {label!r} must be a positive integer")
        if label not in alg._index:
            raise AlgebraError(f"unknown generator {label!r}")
        out = out * alg.gen(label) ** e
    return out


def make_algebra(spec: AlgebraSpec) -> Algebra:
    return Algebra(spec)


def exterior_algebra(labels, volume=True, normalization=1) -> Algebra:
    """Λ(labels) on degree-1 generators; volume is the product in the given order."""
    gens = tuple(GeneratorSpec(lab, 1) for lab in labels)
    vol = tuple((lab, 1) for lab in labels) if volume else None
    return Algebra(AlgebraSpec(gens, vol, normalization))


def point() -> Algebra:
    """The rationals, with integration reading off the constant term."""
    return Algebra(AlgebraSpec((), ()))


class Element:
    """Immutable finite sum of canonical monomials with rational coefficients."""

    __slots__ = ("algebra", "_terms")

    def __init__(self, algebra: Algebra, terms: Dict[tuple, Fraction]):
        self.algebra = algebra
        self._terms = {m: c if type(c) is Fraction else Fraction(c)
                       for m, c in terms.items() if c != 0}

    @property
    def terms(self):
        return dict(self._terms)

    def coefficient(self, factors):
        mono = self.algebra.monomial(factors)
        return Fraction(0) if mono is None else self._terms.get(mono, Fraction(0))

    def constant(self) -> Fraction:
        return self._terms.get(self.algebra.unit_monomial, Fraction(0))

    def is_zero(self):
        return not self._terms

    def is_scalar(self):
        return all(m == self.algebra.unit_monomial for m in self._terms)

    def __bool__(self):
        return bool(self._terms)

    def _coerce(self, other):
        if isinstance(other, Element):
            if other.algebra is not self.algebra and other.algebra != self.algebra:
                raise AlgebraError("cannot combine elements of different algebras")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.algebra.scalar(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self._terms)
        for m, c in other._terms.items():
            terms[m] = terms.get(m, 0) + c
        return Element(self.algebra, terms)

    __radd__ = __add__

    def __neg__(self):
        return Element(self.algebra, {m: -c for m, c in self._terms.items()})

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
            return Element(self.algebra, {m: c * other for m, c in self._terms.items()})
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        alg = self.algebra
        table = alg._products
        terms = {}
        for ma, ca in self._terms.items():
            for mb, cb in other._terms.items():
                res = table.get((ma, mb), False)
                if res is False:
                    res = alg.mul_monomials(ma, mb)
                if res is None:
                    continue
                sign, m = res
                c = ca * cb
                terms[m] = terms.get(m, 0) + (c if sign > 0 else -c)
        return Element(alg, terms)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self * other
        return NotImplemented

    def __truediv__(self, q):
        if isinstance(q, bool) or not isinstance(q, (int, Fraction)):
            return NotImplemented
        return self * (1 / Fraction(q))

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise AlgebraError("exponent must be a nonnegative integer")
        result, base = self.algebra.one(), self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash((self.algebra, frozenset(self._terms.items())))

    def degrees(self):
        return sorted({self.algebra.monomial_degree(m) for m in self._terms})

    def degree(self) -> int:
        """Degree of a nonzero homogeneous element."""
        degs = self.degrees()
        if len(degs) != 1:
            raise AlgebraError("degree is defined only for nonzero homogeneous elements")
        return degs[0]

    def is_homogeneous(self, degree=None):
        degs = self.degrees()
        if degree is None:
            return len(degs) <= 1
        return degs in ([], [degree])

    def homogeneous_part(self, degree: int) -> "Element":
        alg = self.algebra
        return Element(alg, {m: c for m, c in self._terms.items()
                             if alg.monomial_degree(m) == degree})

    def sorted_terms(self):
        alg = self.algebra
        return sorted(self._terms.items(), key=lambda mc: (alg.monomial_degree(mc[0]),
                                                           tuple(-e for e in mc[0])))

    def encode(self) -> List:
        """Canonical JSON-ready encoding; inverse of :meth:`Algebra.decode`."""
        alg = self.algebra
        return [[[list(f) for f in alg.monomial_factors(m)], format_rational(c)]
                for m, c in self.sorted_terms()]

    def __repr__(self):
        if not self._terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            word = "*".join(lab if e == 1 else f"{lab}^{e}"
                            for lab, e in self.algebra.monomial_factors(m))
            if not word:
                parts.append(str(c))
            elif c == 1:
                parts.append(word)
            elif c == -1:
                parts.append("-" + word)
            else:
                parts.append(f"{c}*{word}")
        return " + ".join(parts).replace("+ -", "- ")


def integrate_top(a: Element) -> Fraction:
    return a.algebra.integrate_top(a)


def homogeneous_part(a: Element, degree: int) -> Element:
    return a.homogeneous_part(degree)
