from fractions import Fraction

from hypothesis import assume, given, settings
from hypothesis import strategies as st

import oracles as o
from jacform.decompose import basis_enum, combine, decompose
from jacform.gw import FCoefficients, assemble_Z, gw_of, invert_gw
from jacform.pt import charmap
from jacform.sbasis import SBasisSeries, from_sbasis, to_sbasis
from jacform.series import (
    INF,
    BiSeries,
    EmptyBoxError,
    ValidityBox,
    exp_series,
    invert,
    log_series,
    subst_q_inv_t,
    subst_q_t_lambda,
)

PROPS = settings(max_examples=100, derandomize=True, deadline=None)
TMAX = 4

small = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def laurent_terms(tmax=TMAX, nspan=3, min_d=0, max_size=8, min_size=0):
    keys = st.tuples(st.integers(-nspan, nspan), st.integers(min_d, tmax))
    return st.dictionaries(keys, small, min_size=min_size, max_size=max_size)


@st.composite
def windows(draw, tmax=TMAX):
    """Mostly ``(-inf, hi]`` truncations, the shape power series in q produce."""
    out = []
    for _ in range(tmax + 1):
        hi = draw(st.one_of(st.just(INF), st.integers(-1, 4)))
        lo = draw(st.sampled_from([-INF] * 4 + [-3, 0]))
        out.append((lo, hi))
    return ValidityBox(tmax, tuple(out))


def exact(terms, tmax=TMAX):
    return BiSeries.from_laurent(terms, tmax)


def boxed(terms, box):
    return exact(terms, box.tmax).restrict(box)


def agree(x, y):
    cmp = x.compare(y)
    return cmp.equal


def sound(truncated, exact_value):
    """``truncated()`` may have an empty box; otherwise it must agree with the exact value."""
    try:
        value = truncated()
    except EmptyBoxError:
        return True
    return agree(value, exact_value)


# ring axioms -------------------------------------------------------------


@PROPS
@given(laurent_terms(), laurent_terms(), laurent_terms())
def test_ring_axioms_exact(ta, tb, tc):
    a, b, c = exact(ta), exact(tb), exact(tc)
    assert agree(a + b, b + a)
    assert agree(a * b, b * a)
    assert agree((a + b) + c, a + (b + c))
    assert agree((a * b) * c, a * (b * c))
    assert agree(a * (b + c), a * b + a * c)
    assert agree(a - a, BiSeries.zero(TMAX))
    # against schoolbook multiplication
    want = o.Naive(ta, TMAX, -20, 20) * o.Naive(tb, TMAX, -20, 20)
    assert (a * b).coeffs == {k: v for k, v in want.t.items() if v}


DENSE = laurent_terms(min_size=4, max_size=12)


@PROPS
@given(DENSE, DENSE, DENSE, windows(), windows(), windows())
def test_truncated_arithmetic_is_sound(ta, tb, tc, ba, bb, bc):
    """Every coefficient a truncated result claims to know is the true one."""
    a, b, c = boxed(ta, ba), boxed(tb, bb), boxed(tc, bc)
    A, B, C = exact(ta), exact(tb), exact(tc)
    assert sound(lambda: a + b, A + B)
    assert sound(lambda: a * b, A * B)
    assert sound(lambda: (a * b) * c, (A * B) * C)
    assert sound(lambda: a * (b + c), A * (B + C))
    assert sound(lambda: a * b - b * a, BiSeries.zero(TMAX))


# substitutions -----------------------------------------------------------


@PROPS
@given(laurent_terms(tmax=8, nspan=2), st.integers(-2, 2), st.integers(-2, 2))
def test_lambda_shifts_compose(terms, l1, l2):
    terms = {(n, d): v for (n, d), v in terms.items() if d + l1 * n >= 0 and d + (l1 + l2) * n >= 0}
    a = exact(terms, 8)
    lhs = subst_q_t_lambda(subst_q_t_lambda(a, l1), l2)
    rhs = subst_q_t_lambda(a, l1 + l2)
    assert agree(lhs, rhs)


@PROPS
@given(laurent_terms(tmax=8, nspan=3), windows(8))
def test_q_inv_t_is_an_involution(terms, box):
    a = boxed({(n, d): v for (n, d), v in terms.items() if d + n >= 0}, box)
    assert agree(subst_q_inv_t(subst_q_inv_t(a)), a)


@PROPS
@given(laurent_terms(tmax=6, nspan=2, max_size=5), laurent_terms(tmax=6, nspan=2, max_size=5), st.integers(-1, 2))
def test_substitution_is_multiplicative(ta, tb, lam):
    ok = lambda n, d: d + lam * n >= 0 and d + n >= 0  # noqa: E731
    a = exact({k: v for k, v in ta.items() if ok(*k)}, 6)
    b = exact({k: v for k, v in tb.items() if ok(*k)}, 6)
    assert agree(subst_q_t_lambda(a * b, lam), subst_q_t_lambda(a, lam) * subst_q_t_lambda(b, lam))
    assert agree(subst_q_inv_t(a * b), subst_q_inv_t(a) * subst_q_inv_t(b))


@PROPS
@given(st.integers(-50, 50), st.integers(-50, 50), st.integers(-10, 10))
def test_charmap_involution(n, d, h):
    assert charmap(*charmap(n, d, h), h) == (n, d)


# inverse, exp, log -------------------------------------------------------


@PROPS
@given(
    st.dictionaries(st.integers(-2, 3), small, min_size=1, max_size=4),
    laurent_terms(min_d=1),
    st.integers(2, 8),
)
def test_invert_round_trip(t0, rest, qhi):
    assume(t0[min(t0)] != 0)
    terms = dict(rest)
    terms.update({(n, 0): v for n, v in t0.items()})
    a = exact(terms)
    inv = invert(a, qhi)
    one = BiSeries.constant(1, TMAX)
    cmp = (a * inv).compare(one)
    assert cmp.equal and cmp.compared_cells > 0


@PROPS
@given(laurent_terms(min_d=1))
def test_log_exp_round_trip(terms):
    a = exact(terms)
    assert agree(log_series(exp_series(a)), a)
    b = a + 1
    assert agree(exp_series(log_series(b)), b)


@PROPS
@given(laurent_terms(min_d=1, max_size=4), laurent_terms(min_d=1, max_size=4))
def test_exp_is_a_homomorphism(ta, tb):
    a, b = exact(ta), exact(tb)
    assert agree(exp_series(a + b), exp_series(a) * exp_series(b))


# s-basis -----------------------------------------------------------------


@PROPS
@given(st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, TMAX)), small, max_size=8),
       st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, TMAX)), small, max_size=8))
def test_s_basis_is_a_ring_map(ta, tb):
    x, y = SBasisSeries(ta, TMAX), SBasisSeries(tb, TMAX)
    assert to_sbasis(from_sbasis(x)).equals(x)
    assert agree(from_sbasis(x * y), from_sbasis(x) * from_sbasis(y))


# gw inversion ------------------------------------------------------------


@PROPS
@given(st.integers(0, 3).flatmap(
    lambda h: st.lists(st.lists(small, min_size=1, max_size=3), min_size=h + 1, max_size=h + 1)
))
def test_invert_gw_assemble_round_trip(fvals):
    h = len(fvals) - 1
    pad = lambda v: BiSeries.from_t_coeffs((v + [0] * (TMAX + 1))[: TMAX + 1])  # noqa: E731
    f = FCoefficients(h, tuple(pad(v) for v in fvals))
    z = assemble_Z(f, TMAX, sbasis=True)
    back = invert_gw(gw_of(z, h), TMAX)
    assert [x.t_coeffs() for x in back.f] == [x.t_coeffs() for x in f.f]


# decomposition -----------------------------------------------------------

GRADINGS = [(0, 1), (0, 2), (-2, 1), (4, 0)]


@PROPS
@given(st.sampled_from(GRADINGS).flatmap(
    lambda wm: st.tuples(st.just(wm), st.lists(st.integers(-6, 6), min_size=len(basis_enum(*wm)),
                                               max_size=len(basis_enum(*wm))))
))
def test_decompose_round_trip(case):
    (w, m), ints = case
    coeffs = {mono: Fraction(c) for mono, c in zip(basis_enum(w, m), ints) if c}
    dec = decompose(combine(coeffs, 5), w, m)
    assert dec.ok and dec.unique and dec.coefficients == coeffs
