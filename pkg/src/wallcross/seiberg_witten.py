"""Wall-crossing terms for Seiberg-Witten invariants when b2+ = 1.

All quantities live on the torus of reducible solutions, whose cohomology
is the exterior algebra on ``x_1, ..., x_b1`` with volume ``x_1 ... x_b1``.
The input data of the four-manifold is reduced to ``(b1, b2+, chi, tau,
c1(L)^2)`` and the triple products ``a[i][j] = (y_i y_j c1(L))[X]``.
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Optional, Sequence, Tuple

from .equivariant import (FixedComponent, HypothesisError, star_star_terms,
                          star_terms)
from .graded_algebra import Algebra, Element, exterior_algebra, parse_rational

__all__ = [
    "ManifoldData",
    "WallCrossingResult",
    "torus",
    "expected_dimension",
    "index_rank",
    "c1_ind",
    "chern_ind",
    "mu_class",
    "index_component",
    "wall_crossing_simple",
    "wall_crossing_general",
    "wall_crossing_via_localization",
    "pfaffian",
]

D_NEGATIVE = "d_negative"
K_TOO_LARGE = "k_exceeds_min_b1_d"
K_PARITY_B1 = "k_parity_differs_from_b1"
K_PARITY_D = "k_parity_differs_from_d_defined_zero"


def _matrix(rows, n=None):
    rows = [[parse_rational(v) for v in row] for row in rows]
    n = len(rows) if n is None else n
    if len(rows) != n or any(len(row) != n for row in rows):
        raise ValueError(f"expected a {n}x{n} matrix")
    return rows


def _check_antisymmetric(a):
    n = len(a)
    for i in range(n):
        if a[i][i] != 0:
            raise ValueError(f"diagonal entry [{i + 1}][{i + 1}] must vanish")
        for j in range(i + 1, n):
            if a[i][j] != -a[j][i]:
                raise ValueError(f"matrix is not antisymmetric at [{i + 1}][{j + 1}]")


@dataclass(frozen=True)
class ManifoldData:
    b1: int
    b2_plus: int
    chi: int
    tau: int
    c1L_squared: int
    triple_products: Tuple[Tuple[Fraction, ...], ...] = ()

    def __post_init__(self):
        for name in ("b1", "b2_plus", "chi", "tau", "c1L_squared"):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, int):
                raise ValueError(f"{name} must be an integer")
        if self.b1 < 0 or self.b2_plus < 0:
            raise ValueError("Betti numbers must be nonnegative")
        a = self.triple_products
        a = _matrix(a, self.b1) if a or self.b1 else []
        _check_antisymmetric(a)
        object.__setattr__(self, "triple_products", tuple(tuple(row) for row in a))

    @classmethod
    def from_upper(cls, b1, b2_plus, chi, tau, c1L_squared, entries=None):
        """Build from ``{(i, j): value}`` with 1-based ``i < j``."""
        a = [[Fraction(0)] * b1 for _ in range(b1)]
        for (i, j), v in (entries or {}).items():
            if not (1 <= i < j <= b1):
                raise ValueError(f"triple product index ({i}, {j}) out of range")
            a[i - 1][j - 1] = parse_rational(v)
            a[j - 1][i - 1] = -a[i - 1][j - 1]
        return cls(b1, b2_plus, chi, tau, c1L_squared, a)

    def scaled(self, lam):
        lam = Fraction(lam)
        return ManifoldData(self.b1, self.b2_plus, self.chi, self.tau, self.c1L_squared,
                            [[lam * v for v in row] for row in self.triple_products])


@dataclass(frozen=True)
class WallCrossingResult:
    """Difference ``SW(g1, eta1) - SW(g0, eta0)`` for a single wall crossing."""

    d: int
    r: Optional[int]
    k: int
    value: Fraction
    global_sign: int = 1
    crossing_direction: str = "0->1"
    reasons: Tuple[str, ...] = ()
    route: str = "closed_form"
    normal_orientation: int = 1

    @property
    def gated(self):
        return any(r != K_PARITY_D for r in self.reasons)

    @property
    def sign_convention(self):
        return {"crossing_direction": self.crossing_direction, "global_sign": self.global_sign}


@lru_cache(maxsize=None)
def torus(b1: int) -> Algebra:
    return exterior_algebra([f"x{i}" for i in range(1, b1 + 1)])


def expected_dimension(m: ManifoldData) -> int:
    num = m.c1L_squared - 2 * m.chi - 3 * m.tau
    if num % 4:
        raise ValueError(f"c1L_squared - 2*chi - 3*tau = {num} is not divisible by 4")
    return num // 4


def index_rank(m: ManifoldData) -> int:
    """Complex rank of the index bundle, from ``2r + b1 = d + 2``."""
    twice = expected_dimension(m) + 2 - m.b1
    if twice % 2:
        raise HypothesisError(f"d + 2 - b1 = {twice} is odd; no integral index rank")
    if twice <= 0:
        raise HypothesisError(f"index rank {twice // 2} is not positive")
    return twice // 2


def c1_ind(m: ManifoldData) -> Element:
    """First Chern class of the index bundle, ``(1/4) Omega^2 . c1(L)[X]``.

    Works in the exterior algebra on ``x_1..x_b1, y_1..y_b1``, squares
    ``Omega = sum x_i y_i`` there and pairs the two y-factors against X.
    """
    b1 = m.b1
    T = torus(b1)
    big = _doubled_torus(b1)
    gens = big.gens()
    omega = big.zero()
    for x, y in zip(gens[:b1], gens[b1:]):
        omega = omega + x * y
    sq = omega * omega
    a = m.triple_products
    terms = {}
    for mono, c in sq.terms.items():
        xpart, ypart = mono[:b1], mono[b1:]
        where = [i for i, e in enumerate(ypart) if e]
        if len(where) != 2:
            continue
        # canonical order already places y_i y_j (i < j) to the right of every x
        i, j = where
        terms[xpart] = terms.get(xpart, 0) + c * a[i][j]
    return T.element(terms) / 4


@lru_cache(maxsize=None)
def _doubled_torus(b1):
    xs = [f"x{i}" for i in range(1, b1 + 1)]
    ys = [f"y{i}" for i in range(1, b1 + 1)]
    return exterior_algebra(xs + ys, volume=False)


def chern_ind(m: ManifoldData, j: int, c1: Optional[Element] = None) -> Element:
    if j < 0:
        raise ValueError("j must be nonnegative")
    c1 = c1_ind(m) if c1 is None else c1
    return c1 ** j / factorial(j)


def mu_class(m: ManifoldData, coords: Sequence[int]) -> Element:
    """Torus class of a loop with coordinates ``coords`` in the basis dual to ``y``."""
    coords = list(coords)
    if len(coords) != m.b1:
        raise ValueError(f"curve has {len(coords)} coordinates, expected b1 = {m.b1}")
    T = torus(m.b1)
    out = T.zero()
    for i, c in enumerate(coords):
        out = out + T.gen(f"x{i + 1}") * parse_rational(c)
    return out


def _check_wall(m):
    if m.b2_plus != 1:
        raise HypothesisError(f"wall crossing needs b2_plus = 1, got {m.b2_plus}")
    if m.b1 % 2:
        raise HypothesisError(f"b1 must be even, got {m.b1}")


def _safe_rank(m):
    try:
        return index_rank(m)
    except HypothesisError:
        return None


def _gates(m, d, k):
    reasons = []
    if d < 0:
        reasons.append(D_NEGATIVE)
    elif k > min(m.b1, d):
        reasons.append(K_TOO_LARGE)
    elif (k - m.b1) % 2:
        reasons.append(K_PARITY_B1)
    if not reasons and (k - d) % 2:
        reasons.append(K_PARITY_D)
    return reasons


def wall_crossing_general(m: ManifoldData, curves: Sequence[Sequence[int]] = (),
                          global_sign: int = 1) -> WallCrossingResult:
    """Integral over the torus of ``mu(A_1)...mu(A_k) c1(ind)^p / p!``, ``p = (b1-k)/2``."""
    _check_wall(m)
    if global_sign not in (1, -1):
        raise ValueError("global_sign must be +1 or -1")
    mus = [mu_class(m, c) for c in curves]
    d, k = expected_dimension(m), len(mus)
    reasons = _gates(m, d, k)
    if any(r != K_PARITY_D for r in reasons):
        return WallCrossingResult(d, _safe_rank(m), k, Fraction(0), global_sign,
                                  reasons=tuple(reasons))
    T = torus(m.b1)
    integrand = T.one()
    for mu in mus:
        integrand = integrand * mu
    integrand = integrand * chern_ind(m, (m.b1 - k) // 2)
    value = global_sign * T.integrate_top(integrand)
    return WallCrossingResult(d, _safe_rank(m), k, value, global_sign, reasons=tuple(reasons))


def wall_crossing_simple(m: ManifoldData, global_sign: int = 1) -> WallCrossingResult:
    """Integral over the torus of ``c1(ind)^(b1/2) / (b1/2)!``."""
    return wall_crossing_general(m, (), global_sign)


def index_component(m: ManifoldData, orientation_sign: int = 1) -> FixedComponent:
    """The reducible torus with the index bundle as weight-1 normal bundle.

    ``euler = u^r exp(c1(ind)/u)``: the total Chern classes are
    ``c_j = c1(ind)^j / j!``, kept until they vanish for degree reasons.
    """
    r = index_rank(m)
    T = torus(m.b1)
    c1 = c1_ind(m)
    chern = [T.one()]
    for j in range(1, m.b1 // 2 + 1):
        cj = chern_ind(m, j, c1)
        if not cj:
            break
        chern.append(cj)
    return FixedComponent(T, chern=tuple(chern), rank=r, orientation_sign=orientation_sign)


def wall_crossing_via_localization(m: ManifoldData, curves: Sequence[Sequence[int]] = (),
                                   global_sign: int = 1) -> WallCrossingResult:
    """Same difference, evaluated as a fixed-point sum over the reducible torus.

    The normal orientation of the torus is ``(-1)^(n + b1/2)`` for ``k = 0``
    and ``(-1)^((b1-k)/2)`` otherwise: extracting ``u^0`` from
    ``u^p exp(-c1/u)`` contributes ``(-1)^p``, and the ``k = 0`` formula
    carries its own ``(-1)^n``.
    """
    _check_wall(m)
    if global_sign not in (1, -1):
        raise ValueError("global_sign must be +1 or -1")
    mus = [mu_class(m, c) for c in curves]
    d, k = expected_dimension(m), len(mus)
    reasons = _gates(m, d, k)
    if any(r != K_PARITY_D for r in reasons):
        return WallCrossingResult(d, _safe_rank(m), k, Fraction(0), global_sign,
                                  reasons=tuple(reasons), route="localization")
    if K_PARITY_D in reasons:
        raise HypothesisError("d and k have different parity; localization degree is not integral")
    r = index_rank(m)
    p = (m.b1 - k) // 2
    if k == 0:
        n = d // 2
        orient = -1 if (n + p) % 2 else 1
        P = index_component(m, orient)
        terms = star_terms([P], n)
    else:
        orient = -1 if p % 2 else 1
        P = index_component(m, orient)
        terms = star_star_terms([P], mus, (d - k) // 2)
    residual = {q: v for q, v in terms.items() if q != 0}
    if residual:
        raise ArithmeticError(f"localization left nonzero u-powers {residual}")
    value = global_sign * terms.get(0, Fraction(0))
    return WallCrossingResult(d, r, k, value, global_sign, reasons=tuple(reasons),
                              route="localization", normal_orientation=orient)


def pfaffian(A) -> Fraction:
    """Pfaffian by expansion along the first row."""
    a = _matrix(A)
    _check_antisymmetric(a)
    if len(a) % 2:
        raise ValueError("Pfaffian needs an even-dimensional matrix")
    return _pf(a, tuple(range(len(a))))


def _pf(a, idx):
    if not idx:
        return Fraction(1)
    first, rest = idx[0], idx[1:]
    total = Fraction(0)
    for pos, j in enumerate(rest):
        if a[first][j] == 0:
            continue
        sign = -1 if pos % 2 else 1
        total += sign * a[first][j] * _pf(a, rest[:pos] + rest[pos + 1:])
    return total
