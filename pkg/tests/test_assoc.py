from __future__ import annotations

import random
from fractions import Fraction

import pytest

from mcgauge.assoc import (
    UNIT_WORD,
    Word,
    assoc_gauge_action,
    assoc_mul,
    bch_oracle,
    bracket,
    differential,
    exp_assoc,
    gen_series,
    inverse_grouplike,
    log_assoc,
    unit,
    word_series,
)
from mcgauge.scalars import Generator
from mcgauge.series import FormalSeries

X = Generator("x")
Y = Generator("y")
LAM = Generator("lam")
MU = Generator("mu")
AL = Generator("al", -1)
DLAM = Generator("dlam", -1)
DMU = Generator("dmu", -1)


# -- independent oracle: plain dict arithmetic on letter strings ------------


def o_mul(a, b, cap):
    out = {}
    for wa, ca in a.items():
        for wb, cb in b.items():
            w = wa + wb
            if len(w) > cap:
                continue
            out[w] = out.get(w, Fraction(0)) + ca * cb
    return {w: c for w, c in out.items() if c}


def o_exp(x, cap):
    out = {"": Fraction(1)}
    term = {"": Fraction(1)}
    fact = 1
    for n in range(1, cap + 1):
        term = o_mul(term, x, cap)
        fact *= n
        for w, c in term.items():
            out[w] = out.get(w, Fraction(0)) + c / fact
    return out


def o_log(one_plus, cap):
    x = {w: c for w, c in one_plus.items() if w}
    out = {}
    term = {"": Fraction(1)}
    for n in range(1, cap + 1):
        term = o_mul(term, x, cap)
        for w, c in term.items():
            out[w] = out.get(w, Fraction(0)) + c * Fraction((-1) ** (n - 1), n)
    return {w: c for w, c in out.items() if c}


def oracle_bch(cap):
    prod = o_mul(o_exp({"x": Fraction(1)}, cap), o_exp({"y": Fraction(1)}, cap), cap)
    return o_log(prod, cap)


def series_to_dict(s):
    return {"".join(g.name for g in w.letters): c for w, c in s}


# -- product basics ----------------------------------------------------------


def test_unit_acts_as_identity():
    x = gen_series(X, 3)
    assert assoc_mul(unit(3), x) == x
    assert assoc_mul(x, unit(3)) == x


def test_product_of_generators_is_word():
    x, y = gen_series(X, 3), gen_series(Y, 3)
    assert assoc_mul(x, y) == word_series(3, [(Word((X, Y)), Fraction(1))])


def test_bilinearity_squares_out():
    x, y = gen_series(X, 2), gen_series(Y, 2)
    s = x.add(y)
    sq = assoc_mul(s, s)
    expect = word_series(
        2,
        [
            (Word((X, X)), Fraction(1)),
            (Word((X, Y)), Fraction(1)),
            (Word((Y, X)), Fraction(1)),
            (Word((Y, Y)), Fraction(1)),
        ],
    )
    assert sq == expect


def test_weight_additivity_random():
    rng = random.Random(2)
    for _ in range(30):
        wa = Word(tuple(rng.choice([X, Y]) for _ in range(rng.randrange(1, 3))))
        wb = Word(tuple(rng.choice([X, Y]) for _ in range(rng.randrange(1, 3))))
        prod = assoc_mul(
            word_series(6, [(wa, Fraction(1))]), word_series(6, [(wb, Fraction(1))])
        )
        ((w, _),) = list(prod)
        assert w.weight == wa.weight + wb.weight


# -- exp / log ---------------------------------------------------------------


def test_exp_zero_is_one():
    assert exp_assoc(FormalSeries.zero("word", 3)) == unit(3)


def test_log_exp_roundtrip_both_ways():
    for cap in (2, 4, 6):
        x = gen_series(X, cap)
        y = gen_series(Y, cap)
        s = x.add(assoc_mul(x, y).scale(Fraction(1, 3)))
        assert log_assoc(exp_assoc(s)) == s
        g = unit(cap).add(s)
        assert exp_assoc(log_assoc(g)) == g


def test_log_cubic_coefficient_is_one_third():
    lam = gen_series(X, 3)
    lg = log_assoc(unit(3).add(lam))
    assert lg.coeff(Word((X, X, X))) == Fraction(1, 3)


def test_exp_log_match_oracle():
    cap = 5
    got = series_to_dict(exp_assoc(gen_series(X, cap).add(gen_series(Y, cap))))
    want = o_exp({"x": Fraction(1), "y": Fraction(1)}, cap)
    assert got == want


def test_inverse_grouplike_is_two_sided():
    cap = 5
    lam = gen_series(X, cap).add(assoc_mul(gen_series(Y, cap), gen_series(X, cap)))
    g = unit(cap).add(lam)
    inv = inverse_grouplike(g)
    assert assoc_mul(g, inv) == unit(cap)
    assert assoc_mul(inv, g) == unit(cap)


# -- BCH oracle --------------------------------------------------------------


def test_bch_with_zero_is_x():
    cap = 4
    ex = exp_assoc(gen_series(X, cap))
    assert log_assoc(ex) == gen_series(X, cap)


def test_bch_weight_one_part():
    b = bch_oracle(X, Y, 3)
    assert b.coeff(Word((X,))) == 1 and b.coeff(Word((Y,))) == 1


def test_bch_weight_two_is_half_commutator():
    b = bch_oracle(X, Y, 2)
    assert b.coeff(Word((X, Y))) == Fraction(1, 2)
    assert b.coeff(Word((Y, X))) == Fraction(-1, 2)
    assert b.coeff(Word((X, X))) == 0 and b.coeff(Word((Y, Y))) == 0


def test_bch_matches_independent_oracle_to_weight_6():
    got = series_to_dict(bch_oracle(X, Y, 6))
    assert got == oracle_bch(6)


def test_exp_of_bch_recovers_product():
    cap = 5
    b = bch_oracle(X, Y, cap)
    lhs = exp_assoc(b)
    rhs = assoc_mul(exp_assoc(gen_series(X, cap)), exp_assoc(gen_series(Y, cap)))
    assert lhs == rhs


def test_bch_group_associativity():
    # BCH(BCH(x,y),z) = BCH(x,BCH(y,z)) through exp/log with three letters
    cap = 4
    Z = Generator("z")
    ex, ey, ez = (exp_assoc(gen_series(g, cap)) for g in (X, Y, Z))
    left = log_assoc(assoc_mul(assoc_mul(ex, ey), ez))
    right = log_assoc(assoc_mul(ex, assoc_mul(ey, ez)))
    assert left == right


# -- differential ------------------------------------------------------------


def universal_diff(cap):
    al = gen_series(AL, cap)
    return {
        "lam": word_series(cap, [(Word((DLAM,)), Fraction(1))]),
        "al": assoc_mul(al, al).scale(-1),
    }


def test_differential_is_a_derivation():
    cap = 5
    diff = universal_diff(cap)
    lam = gen_series(LAM, cap)
    al = gen_series(AL, cap)
    u = assoc_mul(lam, al)
    v = assoc_mul(al, lam)
    left = differential(assoc_mul(u, v), diff)
    right = assoc_mul(differential(u, diff), v).add(
        assoc_mul(u, differential(v, diff)).scale((-1) ** (u.degrees().pop() % 2))
    )
    assert left == right


def test_differential_squares_to_zero_random():
    cap = 5
    diff = universal_diff(cap)
    rng = random.Random(4)
    pool = [LAM, AL, DLAM]
    for _ in range(40):
        letters = tuple(rng.choice(pool) for _ in range(rng.randrange(1, 4)))
        s = word_series(cap, [(Word(letters), Fraction(rng.randrange(1, 5)))])
        assert differential(differential(s, diff), diff).is_zero()


# -- gauge action ------------------------------------------------------------


def test_gauge_action_trivial_gauge():
    cap = 4
    al = gen_series(AL, cap)
    zero = FormalSeries.zero("word", cap)
    assert assoc_gauge_action(zero, al, zero) == al


def test_gauge_action_pure_conjugation_when_closed():
    cap = 4
    lam = gen_series(LAM, cap)
    al = gen_series(AL, cap)
    zero = FormalSeries.zero("word", cap)
    got = assoc_gauge_action(lam, al, zero)
    one_plus = unit(cap).add(lam)
    want = assoc_mul(assoc_mul(one_plus, al), inverse_grouplike(one_plus))
    assert got == want


def test_gauge_action_preserves_maurer_cartan():
    cap = 5
    diff = universal_diff(cap)
    lam = gen_series(LAM, cap)
    al = gen_series(AL, cap)
    dlam = gen_series(DLAM, cap)
    beta = assoc_gauge_action(lam, al, dlam)
    residual = differential(beta, diff).add(assoc_mul(beta, beta))
    assert residual.is_zero()


def test_gauge_action_with_polynomial_gauge_preserves_mc():
    cap = 5
    diff = universal_diff(cap)
    lam = gen_series(LAM, cap)
    lam2 = assoc_mul(lam, lam).scale(Fraction(2, 3)).add(lam)
    dlam2 = differential(lam2, diff)
    al = gen_series(AL, cap)
    beta = assoc_gauge_action(lam2, al, dlam2)
    residual = differential(beta, diff).add(assoc_mul(beta, beta))
    assert residual.is_zero()


def test_gauge_action_composes_as_group_action():
    cap = 4
    al = gen_series(AL, cap)
    lam = gen_series(LAM, cap)
    mu = gen_series(MU, cap)
    dlam = gen_series(DLAM, cap)
    dmu = gen_series(DMU, cap)
    diff = {
        "lam": dlam,
        "mu": dmu,
        "al": assoc_mul(al, al).scale(-1),
    }
    beta1 = assoc_gauge_action(lam, al, dlam)
    beta2 = assoc_gauge_action(mu, beta1, dmu)
    # composite group-like element (1+mu)(1+lam)
    comp = assoc_mul(unit(cap).add(mu), unit(cap).add(lam))
    nu = comp.sub(unit(cap))
    dnu = differential(nu, diff)
    assert assoc_gauge_action(nu, al, dnu) == beta2


def test_gauge_action_degree_checks():
    cap = 3
    with pytest.raises(ValueError):
        assoc_gauge_action(gen_series(AL, cap), gen_series(AL, cap), gen_series(AL, cap))
    with pytest.raises(ValueError):
        assoc_gauge_action(gen_series(LAM, cap), gen_series(LAM, cap), gen_series(AL, cap))
