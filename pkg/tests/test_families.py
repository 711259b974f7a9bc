import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from frobgb.errors import DomainNotCovered, NotComaximal, SameTypeUnsupported, UnknownFamily
from frobgb.families import (
    FAMILIES,
    BinomialType,
    PrincipalBinomial,
    e_infinity,
    get_family,
    monoidalize,
    predicted_basis,
    same_type,
    thm32_basis,
)
from frobgb.frobenius import FrobeniusExponent, Metrics, ideal_frobenius, metrics_of
from frobgb.groebner import Ideal, is_groebner, is_reduced, reduced_groebner
from frobgb.poly import PolyRing, reduce


def iterate_e(a, b, u, q):
    """Walk E_j = lcm(x^(a+jb), x^(qu)) / x^(jb) until two consecutive values agree."""
    j = 0
    prev = None
    while True:
        cur = tuple(max(ai + j * bi, q * ui) - j * bi for ai, bi, ui in zip(a, b, u))
        if cur == prev:
            return cur
        prev = cur
        j += 1


def test_e_infinity_examples():
    assert e_infinity((2, 1), (1, 1), (0, 0), 9) == (2, 1)
    assert iterate_e((1, 0), (2, 0), (1, 1), 9) == (1, 9)
    assert e_infinity((1, 0), (2, 0), (1, 1), 9) == (1, 9)
    assert iterate_e((0, 1), (2, 2), (1, 0), 3) == (0, 1)
    assert e_infinity((0, 1), (2, 2), (1, 0), 3) == (0, 1)
    with pytest.raises(ValueError):
        e_infinity((1,), (1,), (1,), 0)


vec = st.lists(st.integers(0, 6), min_size=3, max_size=3)


@given(vec, vec.filter(any), vec, st.sampled_from([1, 2, 3, 4, 5, 8, 9, 25, 27, 81]))
def test_e_infinity_matches_iteration(a, b, u, q):
    assert e_infinity(a, b, u, q) == iterate_e(a, b, u, q)


R2 = PolyRing(3, ("x", "y"))


def binom(ring, u, v, w, c):
    return PrincipalBinomial(ring, u, v, w, c)


def test_thm32_example():
    I = binom(R2, (1, 0), (1, 1), (0, 0), 1)
    J = binom(R2, (0, 1), (2, 2), (0, 0), 2)
    B = thm32_basis(I, J, 3)
    expected = ["x^6*y^3 - x^3", "x^2*y^3 - 2*y", "x^3", "y"]
    assert {str(f) for f in B} == {str(R2.parse(t)) for t in expected}
    G = reduced_groebner(J.ideal() + ideal_frobenius(I.ideal(), FrobeniusExponent(3, 1)))
    assert all(reduce(f, G).is_zero() for f in B)
    assert is_groebner(B)
    m = metrics_of(G)
    assert m.delta <= max((0 + 1) * 3, 1 + 2) and m.Delta <= max(3 * 3, 1 + 4) and m.c <= 4


def test_thm32_trivial_prefactors():
    I = binom(R2, (0, 0), (1, 1), (0, 0), 1)
    J = binom(R2, (0, 0), (2, 2), (0, 0), 2)
    assert R2.one in thm32_basis(I, J, 3)


def test_thm32_needs_comaximal_pure_binomials():
    with pytest.raises(NotComaximal):
        thm32_basis(binom(R2, (0, 0), (1, 1), (0, 0), 1), binom(R2, (0, 0), (2, 2), (0, 0), 1), 3)
    with pytest.raises(ValueError):
        thm32_basis(binom(R2, (0, 0), (1, 0), (0, 1), 1), binom(R2, (0, 0), (2, 2), (0, 0), 1), 3)


def test_binomial_validation():
    with pytest.raises(ValueError):
        binom(R2, (0, 0), (1, 0), (1, 0), 1)  # not coprime
    with pytest.raises(ValueError):
        binom(R2, (0, 0), (0, 1), (1, 0), 1)  # y < x
    with pytest.raises(ValueError):
        binom(R2, (0, 0), (1, 0), (0, 1), 3)  # zero coefficient mod 3
    b = PrincipalBinomial.from_polynomial(R2.parse("2*x^3*y - x*y^2"))
    assert (b.u, b.v, b.w, b.coeff) == ((1, 1), (2, 0), (0, 1), 2)
    assert b.poly() == R2.parse("x^3*y - 2*x*y^2")


def test_same_type():
    f = binom(R2, (0, 0), (2, 2), (0, 0), 1)
    g = binom(R2, (1, 0), (1, 1), (0, 0), 2)
    assert same_type(f, g) == BinomialType((1, 1), (0, 0), 2, 1)
    t = same_type(f, f)
    assert t is not None and t.l == t.m
    x1 = binom(R2, (0, 0), (1, 0), (0, 0), 1)
    x2 = binom(R2, (0, 0), (0, 1), (0, 0), 1)
    x12 = binom(R2, (0, 0), (1, 1), (0, 0), 2)
    for a, b in itertools.permutations([x1, x2, x12], 2):
        assert same_type(a, b) is None


def brute_scalings(I, J):
    p, n = I.ring.p, I.ring.n
    out = []
    for k in itertools.product(range(1, p), repeat=n):
        ok = True
        for b in (I, J):
            lhs = 1
            rhs = b.coeff
            for ki, vi, wi in zip(k, b.v, b.w):
                lhs = lhs * pow(ki, vi, p) % p
                rhs = rhs * pow(ki, wi, p) % p
            ok &= lhs == rhs
        if ok:
            out.append(k)
    return out


def test_monoidalize_example():
    I = PrincipalBinomial.from_polynomial(R2.parse("x - 2*y"))
    J = PrincipalBinomial.from_polynomial(R2.parse("x*y - 2"))
    assert brute_scalings(I, J) == [(1, 2), (2, 1)]
    Ii, Jj, sub = monoidalize(I, J)
    assert sub.scales == (2, 1) and sub.case == "I"
    assert Ii.generators[0] == R2.parse("x - y")
    assert Jj.generators[0] == R2.parse("x*y - 1")
    # the substitution sends each generator to a unit multiple of its image
    assert sub.apply(I.poly()).monic() == Ii.generators[0]
    assert sub.apply(J.poly()).monic() == Jj.generators[0]


def test_monoidalize_identity_and_char2():
    I = PrincipalBinomial.from_polynomial(R2.parse("x^2 - y"))
    J = PrincipalBinomial.from_polynomial(R2.parse("x*y - 1"))
    _, _, sub = monoidalize(I, J)
    assert sub.scales == (1, 1) and sub.case == "identity"
    R = PolyRing(2, ("x", "y"))
    I2 = PrincipalBinomial.from_polynomial(R.parse("x + y"))
    J2 = PrincipalBinomial.from_polynomial(R.parse("x*y + 1"))
    assert monoidalize(I2, J2)[2].scales == (1, 1)


def test_monoidalize_reports_missing_roots():
    # 2 is not a square mod 3, so x^2 - 2 cannot be balanced by any scaling
    I = PrincipalBinomial.from_polynomial(R2.parse("x^2 - 2"))
    J = PrincipalBinomial.from_polynomial(R2.parse("y - 1"))
    assert brute_scalings(I, J) == []
    assert monoidalize(I, J) is None


def test_monoidalize_single_variable_paths():
    R = PolyRing(5, ("x", "y", "z"))
    I = PrincipalBinomial.from_polynomial(R.parse("x*y - 3*z"))
    J = PrincipalBinomial.from_polynomial(R.parse("z^2 - 4"))
    Ii, Jj, sub = monoidalize(I, J)
    assert sub.case in ("IIa", "IIb")
    assert sub.scales in brute_scalings(I, J)
    assert all(len(g) == 2 for g in Ii.generators + Jj.generators)
    assert PrincipalBinomial.from_polynomial(Ii.generators[0]).coeff == 1
    assert PrincipalBinomial.from_polynomial(Jj.generators[0]).coeff == 1


def test_monoidalize_rejects_same_type():
    I = binom(R2, (0, 0), (2, 2), (0, 0), 2)
    J = binom(R2, (1, 0), (1, 1), (0, 0), 2)
    with pytest.raises(SameTypeUnsupported):
        monoidalize(I, J)


def test_predicted_examples(xyz3):
    pred = predicted_basis("P4.1", 1)
    assert set(pred.basis.strings()) == {
        str(xyz3.parse(t)) for t in ["y^3 - x*y", "x^2*y^2*z^3 - x^6", "x^6*y - x^3*y*z^3", "x^10 - x^7*z^3"]
    }
    assert pred.metrics == Metrics(3, 10, 4)
    with pytest.raises(DomainNotCovered):
        predicted_basis("P4.3b", 0)
    pred = predicted_basis("P4.8", 1)
    assert len(pred.basis) == 6 and pred.metrics == Metrics(25, 33, 6)
    with pytest.raises(UnknownFamily):
        get_family("P9.9")


EXACT_CASES = [
    (name, e)
    for name, spec in FAMILIES.items()
    if spec.exact
    for e in range(max(spec.e_min, spec.e_range[0]), min(spec.e_range[1], 3) + 1)
]


@pytest.mark.parametrize("name, e", EXACT_CASES)
def test_predicted_set_is_reduced_groebner_basis(name, e):
    basis = list(predicted_basis(name, e).basis)
    assert is_groebner(basis)
    assert is_reduced(basis)


@pytest.mark.parametrize("name, e", EXACT_CASES)
def test_predicted_metrics_follow_from_the_set(name, e):
    pred = predicted_basis(name, e)
    assert metrics_of(pred.basis) == pred.metrics


def test_char2_variant_last_element():
    # the form x^(2q-1)*y*z^(2q+5) - x^(13q/4-1)*y^(3q/4+1)*z^5 is z^4 times the
    # previous element in characteristic 2, hence redundant; the basis carries
    # its reduction by the fixed generator instead
    ring = PolyRing(2, ("x", "y", "z"))
    for e in (3, 4):
        q = 2**e
        basis = predicted_basis("P4.7", e).basis
        alt = ring.parse(f"x^{2*q-1}*y*z^{2*q+5} - x^{13*q//4-1}*y^{3*q//4+1}*z^5")
        h_last = ring.parse(f"x^{13*q//4-1}*y^{3*q//4+1}*z - x^{2*q-1}*y*z^{2*q+1}")
        assert alt == h_last.mul_monomial((0, 0, 4))
        assert alt not in list(basis)
        assert ring.parse(f"x^{2*q-1}*y*z^{2*q+5} - x^{13*q//4}*y^{3*q//4}*z") in list(basis)


def test_family_ideals_respect_swap():
    spec = FAMILIES["P4.2"]
    frob, fixed = spec.ideals()
    assert str(frob.generators[0]) == str(spec.ring().parse("y^3 - x*y"))
    assert str(fixed.generators[0]) == str(spec.ring().parse("y^2*z - x^2"))
    assert not FAMILIES["P4.1"].swap
