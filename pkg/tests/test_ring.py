import pytest
from hypothesis import given, settings, strategies as st

from dubrovnik.ring import (DivisionFailure, LaurentPoly, R_A, R_A_minus_B,
                            R_B, R_ONE, R_ZERO, R_a, R_a_inv, RingElem,
                            constants, normalize, parse_ring_text,
                            qlaurent_text, ring_sum, specialize_soN,
                            to_canonical_text)

C = constants()

monomials = st.tuples(st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3))
polys = st.dictionaries(monomials, st.integers(-9, 9).filter(bool), max_size=4)
elems = st.builds(lambda t, d: RingElem(LaurentPoly(t), d),
                  polys, st.integers(0, 2))


def test_identity_and_cancellation():
    x = RingElem.mono(2, -1, 3, 5)
    assert x + R_ZERO == x
    inv = RingElem(LaurentPoly.const(1), 1)
    assert inv + (-inv) == R_ZERO
    assert (inv + (-inv)).dpow == 0


def test_alpha_minus_one():
    # alpha + (-1) = (a - a^-1)/(A - B)
    expected = RingElem(LaurentPoly({(1, 0, 0): 1, (-1, 0, 0): -1}), 1)
    assert C.alpha - R_ONE == expected


def test_unit_inverse():
    inv = RingElem(LaurentPoly.const(1), 1)
    assert R_A_minus_B * inv == R_ONE


def test_paper_identities():
    assert R_A * C.alpha + R_B + C.beta == R_a
    assert (R_A * R_a_inv + R_B * R_B + R_B * C.beta + C.gamma).is_zero()
    assert (R_A * R_A + R_B * R_B + (R_A + R_B) * C.beta
            + R_A * R_B * C.alpha + C.gamma).is_zero()
    assert (R_A * R_B * C.beta + (R_A + R_B) * C.gamma - C.delta).is_zero()


def test_constants_mirror_invariant():
    for x in (C.alpha, C.beta, C.gamma, C.delta):
        assert x.swap_AB_invert_a() == x


def test_normalize_examples():
    # (A-B)*a over one power of (A-B) collapses to a
    num = (R_A_minus_B * R_a).num
    assert normalize(num, 1) == R_a
    # a - a^-1 + A - B is not divisible: canonical form keeps the denominator
    num = LaurentPoly({(1, 0, 0): 1, (-1, 0, 0): -1, (0, 1, 0): 1, (0, 0, 1): -1})
    x = normalize(num, 1)
    assert x.dpow == 1 and x.num == num
    assert normalize(LaurentPoly(), 3) == R_ZERO


def test_normalize_idempotent():
    x = normalize((R_A_minus_B * R_A_minus_B * C.beta).num, 5)
    y = RingElem(x.num, x.dpow)
    assert x == y


@settings(max_examples=150, deadline=None)
@given(elems, elems, elems)
def test_ring_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert x + y == y + x
    assert (x * y) * z == x * (y * z)
    assert x * y == y * x
    assert x * (y + z) == x * y + x * z
    assert x * R_ONE == x
    assert x + R_ZERO == x


@settings(max_examples=80, deadline=None)
@given(elems, elems)
def test_ring_sum_matches_fold(x, y):
    assert ring_sum([x, y, x]) == x + y + x


@settings(max_examples=80, deadline=None)
@given(elems, elems, st.integers(2, 5))
def test_specialize_is_multiplicative(x, y, n):
    try:
        sx, sy, sxy = (specialize_soN(x, n), specialize_soN(y, n),
                       specialize_soN(x * y, n))
    except DivisionFailure:
        return
    prod = {}
    for e1, c1 in sx.items():
        for e2, c2 in sy.items():
            prod[e1 + e2] = prod.get(e1 + e2, 0) + c1 * c2
    assert {e: c for e, c in prod.items() if c} == sxy


def test_specialize_constants_n2():
    assert specialize_soN(C.alpha, 2) == {0: 2}
    assert specialize_soN(C.beta, 2) == {1: -1, -1: -1}
    assert specialize_soN(C.gamma, 2) == {}
    assert specialize_soN(C.delta, 2) == {1: -1, -1: -1}
    assert specialize_soN(R_ONE, 7) == {0: 1}


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_specialize_constants_general_n(n):
    # closed forms of the constants under A=q, B=q^-1, a=q^(N-1)
    def frac(hi, lo):
        # (q^hi - q^-hi) / (q - q^-1) = q^(hi-1) + q^(hi-3) + ...
        return {e: 1 for e in range(hi - 1, -hi, -2)}

    got = specialize_soN(C.alpha, n)
    want = dict(frac(n - 1, 1))
    want[0] = want.get(0, 0) + 1
    assert got == {e: c for e, c in want.items() if c}

    got = specialize_soN(C.delta, n)
    want = {e: -1 for e in range(n - 5, 4 - n + 1, 2)} if n != 4 else {}
    # delta = (q^(N-4) - q^(4-N)) / (q - q^-1)
    hi = n - 4
    if hi > 0:
        want = {e: 1 for e in range(hi - 1, -hi, -2)}
    elif hi < 0:
        want = {e: -1 for e in range(-hi - 1, hi, -2)}
    else:
        want = {}
    assert got == want


def test_division_failure():
    with pytest.raises(DivisionFailure):
        specialize_soN(RingElem(LaurentPoly.const(1), 1), 2)


def test_text_examples():
    assert to_canonical_text(R_ZERO) == "0"
    assert to_canonical_text(C.alpha) == "(a + A - B - a^-1)/(A-B)^1"
    assert to_canonical_text(RingElem.mono(1, -2, 0)) == "a*A^-2"
    assert qlaurent_text(specialize_soN(C.beta, 2)) == "-q - q^-1"
    assert qlaurent_text({}) == "0"


@settings(max_examples=120, deadline=None)
@given(elems)
def test_text_round_trip(x):
    assert parse_ring_text(to_canonical_text(x)) == x
