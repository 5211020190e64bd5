import random
from fractions import Fraction
from math import factorial

import hypothesis.strategies as st
import pytest
import sympy
from hypothesis import given, settings

from wallcross.equivariant import HypothesisError
from wallcross.seiberg_witten import (ManifoldData, c1_ind, chern_ind,
                                      expected_dimension, index_component,
                                      index_rank, mu_class, pfaffian, torus,
                                      wall_crossing_general,
                                      wall_crossing_simple,
                                      wall_crossing_via_localization)

from oracle import (as_oracle_terms, c1_ind_closed, det, expand,
                    pfaffian_by_matchings, torus_integral_of_power)


def manifold(b1, d, a=None, b2_plus=1):
    # chi = tau = 0, so c1(L)^2 = 4d
    if a is None:
        a = [[0] * b1 for _ in range(b1)]
    return ManifoldData(b1, b2_plus, 0, 0, 4 * d, a)


def antisym(draw_or_rng, n, lo=-4, hi=4):
    a = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            v = Fraction(draw_or_rng(lo, hi))
            a[i][j], a[j][i] = v, -v
    return a


@st.composite
def antisym_matrices(draw, sizes=(0, 2, 4, 6)):
    n = draw(st.sampled_from(sizes))
    vals = st.fractions(min_value=-4, max_value=4, max_denominator=3)
    return antisym(lambda lo, hi: draw(vals), n)


# --- dimension and rank ---------------------------------------------------------

def test_expected_dimension():
    assert expected_dimension(ManifoldData(0, 1, 4, 0, 8)) == 0
    assert expected_dimension(ManifoldData(0, 1, 0, 0, 8)) == 2
    with pytest.raises(ValueError):
        expected_dimension(ManifoldData(0, 1, 0, 0, 1))


def test_index_rank():
    assert index_rank(manifold(0, 0)) == 1
    assert index_rank(manifold(2, 2)) == 1
    with pytest.raises(HypothesisError):
        index_rank(manifold(1, 2))
    with pytest.raises(HypothesisError):
        index_rank(manifold(4, 0))


def test_manifold_validation():
    with pytest.raises(ValueError):
        ManifoldData(2, 1, 0, 0, 8, [[0, 1], [1, 0]])
    with pytest.raises(ValueError):
        ManifoldData(2, 1, 0, 0, 8, [[0, 1]])


# --- c1(ind) and Chern classes ---------------------------------------------------

def test_c1_ind_b1_zero():
    assert c1_ind(manifold(0, 0)).is_zero()


def test_c1_ind_b1_two():
    t = Fraction(3)
    m = manifold(2, 2, [[0, t], [-t, 0]])
    x1, x2 = torus(2).gens()
    assert c1_ind(m) == -(t / 2) * x1 * x2


def test_c1_ind_b1_four():
    s, t = Fraction(2), Fraction(-7, 3)
    m = ManifoldData.from_upper(4, 1, 0, 0, 16, {(1, 2): s, (3, 4): t})
    x1, x2, x3, x4 = torus(4).gens()
    assert c1_ind(m) == -(s / 2) * x1 * x2 - (t / 2) * x3 * x4


def omega_square_paired(a):
    """Word-expand Omega^2 over x, y and pair the two y factors against a."""
    n = len(a)
    xs = [f"x{i + 1}" for i in range(n)]
    ys = [f"y{i + 1}" for i in range(n)]
    omega = [(1, (x, y)) for x, y in zip(xs, ys)]
    out = {}
    for mono, c in expand([omega, omega], xs + ys).items():
        ypart = [g for g, _ in mono if g.startswith("y")]
        xpart = tuple((g, e) for g, e in mono if g.startswith("x"))
        i, j = (int(g[1:]) - 1 for g in ypart)
        out[xpart] = out.get(xpart, 0) + c * a[i][j] / 4
    return {k: v for k, v in out.items() if v != 0}


@settings(max_examples=30, deadline=None)
@given(antisym_matrices())
def test_c1_ind_matches_word_oracle(a):
    m = ManifoldData(len(a), 1, 0, 0, 0, a)
    got = as_oracle_terms(c1_ind(m))
    assert got == omega_square_paired(a)
    assert got == c1_ind_closed(a)


def test_chern_ind():
    m = ManifoldData.from_upper(2, 1, 0, 0, 8, {(1, 2): 5})
    assert chern_ind(m, 0) == 1
    assert chern_ind(m, 2).is_zero()
    s, t = Fraction(3), Fraction(5)
    m = ManifoldData.from_upper(4, 1, 0, 0, 16, {(1, 2): s, (3, 4): t})
    x1, x2, x3, x4 = torus(4).gens()
    assert chern_ind(m, 2) == (s * t / 4) * x1 * x2 * x3 * x4


def test_mu_class():
    m = manifold(3, 2, [[0] * 3 for _ in range(3)])
    x1, x2, x3 = torus(3).gens()
    assert mu_class(m, [1, 0, 0]) == x1
    assert mu_class(m, [0, 0, 0]).is_zero()
    assert mu_class(m, [2, 0, -1]) == 2 * x1 - x3
    with pytest.raises(ValueError):
        mu_class(m, [1, 0])


# --- Pfaffian ---------------------------------------------------------------------

def test_pfaffian_small():
    assert pfaffian([]) == 1
    assert pfaffian([[0, 7], [-7, 0]]) == 7
    a, b = Fraction(2, 3), Fraction(-5)
    A = [[0, a, 0, 0], [-a, 0, 0, 0], [0, 0, 0, b], [0, 0, -b, 0]]
    assert pfaffian(A) == a * b


def test_pfaffian_errors():
    with pytest.raises(ValueError):
        pfaffian([[0, 1, 2], [-1, 0, 3], [-2, -3, 0]])
    with pytest.raises(ValueError):
        pfaffian([[0, 1], [2, 0]])


@settings(max_examples=40, deadline=None)
@given(antisym_matrices(sizes=(2, 4, 6)))
def test_pfaffian_squares_to_determinant(a):
    assert pfaffian(a) ** 2 == det(a)
    assert pfaffian(a) == pfaffian_by_matchings(a)


@settings(max_examples=30, deadline=None)
@given(antisym_matrices(sizes=(0, 2, 4, 6)))
def test_torus_integral_is_pfaffian(a):
    n = len(a)
    T = torus(n)
    omega = T.zero()
    for i in range(n):
        for j in range(i + 1, n):
            omega = omega + a[i][j] * T.gen(f"x{i + 1}") * T.gen(f"x{j + 1}")
    m = n // 2
    value = T.integrate_top(omega ** m) / factorial(m)
    assert value == pfaffian(a) == torus_integral_of_power(a, m)


# --- wall crossing ---------------------------------------------------------------

def test_simple_b1_zero():
    res = wall_crossing_simple(ManifoldData(0, 1, 4, 0, 8))
    assert res.value == 1 and res.d == 0 and res.r == 1


def test_simple_b1_two():
    m = ManifoldData.from_upper(2, 1, 0, 0, 8, {(1, 2): 2})
    assert wall_crossing_simple(m).value == -1
    assert wall_crossing_simple(m, global_sign=-1).value == 1


def test_simple_negative_dimension():
    m = ManifoldData.from_upper(2, 1, 0, 0, -16, {(1, 2): 2})
    res = wall_crossing_simple(m)
    assert res.d == -4 and res.value == 0 and res.gated


def test_hypotheses():
    with pytest.raises(HypothesisError):
        wall_crossing_simple(manifold(2, 2, b2_plus=2))
    with pytest.raises(HypothesisError):
        wall_crossing_simple(manifold(3, 2))
    with pytest.raises(HypothesisError):
        wall_crossing_via_localization(manifold(3, 2))


def test_general_reduces_to_simple():
    m = ManifoldData.from_upper(4, 1, 0, 0, 24, {(1, 2): 3, (1, 3): -1, (3, 4): 5})
    assert wall_crossing_general(m, []).value == wall_crossing_simple(m).value


def test_general_volume_curves():
    m = ManifoldData.from_upper(2, 1, 0, 0, 8, {(1, 2): 9})
    assert wall_crossing_general(m, [[1, 0], [0, 1]]).value == 1
    assert wall_crossing_general(m, [[1, 0], [1, 0]]).value == 0


def test_general_gates():
    m = ManifoldData.from_upper(2, 1, 0, 0, 8, {(1, 2): 2})  # d = 2
    assert wall_crossing_general(m, [[1, 0]]).reasons == ("k_parity_differs_from_b1",)
    assert wall_crossing_general(m, [[1, 0]] * 3).reasons == ("k_exceeds_min_b1_d",)
    odd_d = ManifoldData.from_upper(2, 1, 0, 0, 12, {(1, 2): 2})  # d = 3
    res = wall_crossing_general(odd_d, [])
    assert res.value == -1 and res.reasons == ("k_parity_differs_from_d_defined_zero",)
    assert not res.gated


def test_localization_b1_zero():
    res = wall_crossing_via_localization(ManifoldData(0, 1, 4, 0, 8))
    assert res.value == 1 and res.r == 1


def test_localization_b1_two():
    m = ManifoldData.from_upper(2, 1, 0, 0, 8, {(1, 2): 2})
    assert wall_crossing_via_localization(m).value == wall_crossing_simple(m).value == -1


def test_localization_raw_sign_relation():
    # with a positively oriented torus the fixed-point sum is (-1)^((b1-k)/2)
    # times the torus integral (times (-1)^n when k = 0)
    from wallcross.equivariant import localize_star, localize_star_star
    rng = random.Random(7)
    for b1, d in [(2, 2), (4, 4), (4, 6), (6, 8)]:
        a = antisym(rng.randint, b1)
        m = manifold(b1, d, a)
        P = index_component(m)
        closed = wall_crossing_simple(m).value
        n = d // 2
        assert localize_star([P], n) == (-1) ** (n + b1 // 2) * closed
        curves = [[rng.randint(-2, 2) for _ in range(b1)] for _ in range(2)]
        mus = [mu_class(m, c) for c in curves]
        closed_k = wall_crossing_general(m, curves).value
        raw = localize_star_star([P], mus, (d - 2) // 2)
        assert raw == (-1) ** ((b1 - 2) // 2) * closed_k


def test_index_component_euler_is_exponential():
    m = ManifoldData.from_upper(4, 1, 0, 0, 16, {(1, 2): 3, (2, 4): -2, (3, 4): 1})
    P = index_component(m)
    c1 = c1_ind(m)
    T = torus(4)
    r = index_rank(m)
    assert r == 1
    # u^r exp(c1/u) = u + c1 + c1^2/(2u)
    assert P.euler().coefficient(1) == 1
    assert P.euler().coefficient(0) == c1
    assert P.euler().coefficient(-1) == c1 * c1 / 2
    assert P.euler().powers() == [-1, 0, 1]
    assert T.integrate_top(c1 * c1 / 2) != 0


@settings(max_examples=25, deadline=None)
@given(st.data())
def test_pipeline_equivalence(data):
    b1 = data.draw(st.sampled_from([0, 2, 4]))
    r = data.draw(st.integers(1, 2))
    d = b1 - 2 + 2 * r
    a = antisym(lambda lo, hi: data.draw(st.integers(lo, hi)), b1)
    m = manifold(b1, d, a)
    k = data.draw(st.sampled_from([k for k in range(0, min(b1, d) + 1) if k % 2 == b1 % 2]))
    curves = [data.draw(st.lists(st.integers(-2, 2), min_size=b1, max_size=b1))
              for _ in range(k)]
    closed = wall_crossing_general(m, curves)
    loc = wall_crossing_via_localization(m, curves)
    assert loc.value == closed.value
    assert (loc.d, loc.r, loc.k) == (closed.d, closed.r, closed.k)


@settings(max_examples=25, deadline=None)
@given(st.data())
def test_scaling(data):
    b1 = data.draw(st.sampled_from([2, 4, 6]))
    a = antisym(lambda lo, hi: data.draw(st.integers(lo, hi)), b1)
    lam = data.draw(st.fractions(min_value=-3, max_value=3, max_denominator=3))
    m = manifold(b1, b1, a)
    assert wall_crossing_simple(m.scaled(lam)).value == lam ** (b1 // 2) * wall_crossing_simple(m).value


@settings(max_examples=25, deadline=None)
@given(st.data())
def test_curve_antisymmetry_and_linearity(data):
    b1 = data.draw(st.sampled_from([2, 4, 6]))
    a = antisym(lambda lo, hi: data.draw(st.integers(lo, hi)), b1)
    m = manifold(b1, b1 + 2, a)
    k = data.draw(st.sampled_from([k for k in range(2, b1 + 1, 2)]))
    vec = st.lists(st.integers(-3, 3), min_size=b1, max_size=b1)
    curves = [data.draw(vec) for _ in range(k)]
    base = wall_crossing_general(m, curves).value
    i = data.draw(st.integers(0, k - 2))
    swapped = curves[:i] + [curves[i + 1], curves[i]] + curves[i + 2:]
    assert wall_crossing_general(m, swapped).value == -base
    extra = data.draw(vec)
    c = data.draw(st.integers(-3, 3))
    combo = [ci + c * ei for ci, ei in zip(curves[i], extra)]
    with_extra = curves[:i] + [extra] + curves[i + 1:]
    with_combo = curves[:i] + [combo] + curves[i + 1:]
    assert (wall_crossing_general(m, with_combo).value
            == base + c * wall_crossing_general(m, with_extra).value)


def unimodular(rng, n):
    S = sympy.eye(n)
    for _ in range(3 * n):
        i, j = rng.sample(range(n), 2)
        E = sympy.eye(n)
        E[i, j] = rng.randint(-2, 2)
        S = S * E
    return S


def test_basis_independence():
    rng = random.Random(11)
    for b1 in (2, 4, 6):
        for _ in range(5):
            a = antisym(rng.randint, b1)
            m = manifold(b1, b1 + 2, a)
            S = unimodular(rng, b1)
            assert S.det() == 1
            a2 = (S.T * sympy.Matrix(a) * S).tolist()
            m2 = manifold(b1, b1 + 2, [[Fraction(int(v)) for v in row] for row in a2])
            for k in range(0, b1 + 1, 2):
                curves = [[rng.randint(-2, 2) for _ in range(b1)] for _ in range(k)]
                moved = [[int(v) for v in S.T * sympy.Matrix(c)] for c in curves]
                assert (wall_crossing_general(m2, moved).value
                        == wall_crossing_general(m, curves).value)
