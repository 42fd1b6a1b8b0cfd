import math
from fractions import Fraction

from conftest import random_lie, random_taut, random_tder, rng_for
from kvtower.cyclic import trace
from kvtower.errors import CapMismatch
from kvtower.lie import LieElt, lie_bracket, lie_to_assoc
from kvtower.assoc import AssocElt
from kvtower.tangential import (
    TAutElt,
    TDer,
    cyc_taut_act,
    cyc_tder_act,
    divergence,
    group_commutator,
    jacobian,
    taut_apply,
    taut_compose,
    taut_exp,
    taut_inverse,
    taut_log,
    tder_apply,
    tder_bracket,
    valuation,
)

import pytest


def xy_pair(cap):
    return LieElt.gen_x(cap), LieElt.gen_y(cap)


# -- derivations ------------------------------------------------------------


def test_tder_normalization():
    cap = 3
    u = TDer(LieElt(cap, {"x": 5, "y": 1}), LieElt(cap, {"y": -2, "x": 1}))
    assert u.u1.coeffs == {"y": 1}
    assert u.u2.coeffs == {"x": 1}


def test_tder_apply_generator():
    x, y = xy_pair(3)
    u = TDer(y, x)
    assert tder_apply(u, x).coeffs == {"xy": 1}


def test_tder_apply_kills_sum():
    x, y = xy_pair(3)
    u = TDer(y, x)
    assert tder_apply(u, x + y).is_zero()


def test_tder_apply_zero():
    u = random_tder(rng_for("tder-zero"), 4)
    assert tder_apply(u, LieElt.zero(4)).is_zero()


def test_tder_apply_leibniz():
    # Derivation property on brackets, checked on random elements.
    rng = rng_for("tder-leibniz")
    for _ in range(8):
        cap = rng.randint(2, 7)
        u = random_tder(rng, cap)
        a = random_lie(rng, cap, terms=2)
        b = random_lie(rng, cap, terms=2)
        lhs = tder_apply(u, lie_bracket(a, b))
        rhs = lie_bracket(tder_apply(u, a), b) + lie_bracket(a, tder_apply(u, b))
        assert lhs == rhs


def test_tder_bracket_example():
    cap = 3
    x, y = xy_pair(cap)
    u = TDer(y, LieElt.zero(cap))
    v = TDer(LieElt.zero(cap), x)
    w = tder_bracket(u, v)
    assert w.u1.coeffs == {"xy": 1}
    assert w.u2.coeffs == {"xy": 1}


def test_tder_bracket_self_vanishes():
    rng = rng_for("tder-self")
    u = random_tder(rng, 5)
    assert tder_bracket(u, u).is_zero()
    t = TDer(LieElt.gen_y(4), LieElt.gen_x(4))
    assert tder_bracket(t, t).is_zero()


def test_tder_bracket_is_commutator_of_actions():
    rng = rng_for("tder-comm")
    for _ in range(6):
        cap = rng.randint(2, 6)
        u = random_tder(rng, cap)
        v = random_tder(rng, cap)
        w = random_lie(rng, cap, terms=3)
        lhs = tder_apply(tder_bracket(u, v), w)
        rhs = tder_apply(u, tder_apply(v, w)) - tder_apply(v, tder_apply(u, w))
        assert lhs == rhs


# -- divergence -------------------------------------------------------------


def test_divergence_of_swap_pair():
    cap = 4
    x, y = xy_pair(cap)
    assert divergence(TDer(y, x)).is_zero()


def test_divergence_of_bracket_pair():
    cap = 4
    x, y = xy_pair(cap)
    u = TDer(lie_bracket(x, y), LieElt.zero(cap))
    assert divergence(u).coeffs == {"xy": -1}


def test_divergence_of_zero():
    assert divergence(TDer.zero(4)).is_zero()


def test_divergence_homogeneous():
    rng = rng_for("div-homog")
    for _ in range(5):
        cap = rng.randint(3, 7)
        d = rng.randint(2, cap)
        from kvtower.words import lyndon_words

        w = rng.choice(lyndon_words(d))
        u = TDer(LieElt(cap, {w: 1}), LieElt.zero(cap))
        j = divergence(u)
        assert j.is_zero() or all(len(k) == d for k in j.coeffs)


def test_divergence_cocycle():
    rng = rng_for("div-cocycle")
    for _ in range(15):
        cap = rng.randint(2, 6)
        u = random_tder(rng, cap)
        v = random_tder(rng, cap)
        lhs = divergence(tder_bracket(u, v))
        rhs = cyc_tder_act(u, divergence(v)) - cyc_tder_act(v, divergence(u))
        assert lhs == rhs


# -- actions on cyclic words --------------------------------------------------


def test_cyc_tder_act_single_letter():
    cap = 3
    x, y = xy_pair(cap)
    u = TDer(y, x)
    c = trace(AssocElt.word("x", cap))
    assert cyc_tder_act(u, c).is_zero()  # tr([x,y]) = 0


def test_cyc_tder_act_kills_scalars():
    u = random_tder(rng_for("cyc-scalar"), 3)
    c = trace(AssocElt.one(3))
    assert cyc_tder_act(u, c).is_zero()


def test_cyc_tder_act_two_letter_word():
    cap = 4
    u = TDer(LieElt.gen_y(cap), LieElt.zero(cap))
    c = trace(AssocElt.word("xy", cap))
    assert cyc_tder_act(u, c).is_zero()  # tr(xyy) - tr(xyy)


def test_cyc_tder_act_is_lie_action():
    rng = rng_for("cyc-lie-action")
    for _ in range(8):
        cap = rng.randint(2, 6)
        u = random_tder(rng, cap)
        v = random_tder(rng, cap)
        c = trace(lie_to_assoc(random_lie(rng, cap, terms=3)))
        lhs = cyc_tder_act(tder_bracket(u, v), c)
        rhs = cyc_tder_act(u, cyc_tder_act(v, c)) - cyc_tder_act(
            v, cyc_tder_act(u, c)
        )
        assert lhs == rhs


def test_cyc_taut_act_identity():
    rng = rng_for("cyc-taut-id")
    cap = 5
    c = trace(lie_to_assoc(random_lie(rng, cap, terms=4)))
    assert cyc_taut_act(TAutElt.identity(cap), c) == c


def test_cyc_taut_act_inner_conjugation_is_trivial():
    # Same exponent on both slots: conjugation cancels under the trace.
    rng = rng_for("cyc-taut-inner")
    for _ in range(5):
        cap = rng.randint(2, 5)
        w = random_lie(rng, cap, terms=2)
        F = TAutElt(w, w)
        c = trace(AssocElt.word("x" * (cap - 1) + "y", cap))
        assert cyc_taut_act(F, c) == c


def test_cyc_taut_act_example():
    cap = 2
    F = TAutElt(LieElt.gen_y(cap), LieElt.zero(cap))
    c = trace(AssocElt.word("x", cap))
    assert cyc_taut_act(F, c) == c


def test_cyc_taut_act_is_group_action():
    rng = rng_for("cyc-taut-group")
    for _ in range(5):
        cap = rng.randint(2, 5)
        F = random_taut(rng, cap)
        G = random_taut(rng, cap)
        c = trace(lie_to_assoc(random_lie(rng, cap, terms=3)))
        assert cyc_taut_act(taut_compose(F, G), c) == cyc_taut_act(
            F, cyc_taut_act(G, c)
        )


# -- automorphisms ------------------------------------------------------------


def test_taut_identity_action():
    rng = rng_for("taut-id")
    w = random_lie(rng, 5, terms=4)
    assert taut_apply(TAutElt.identity(5), w) == w


def test_taut_apply_conjugation_series():
    cap = 3
    F = TAutElt(LieElt.gen_y(cap), LieElt.zero(cap))
    img = taut_apply(F, LieElt.gen_x(cap))
    assert img.coeffs == {"x": 1, "xy": 1, "xyy": Fraction(1, 2)}
    assert taut_apply(F, LieElt.gen_y(cap)) == LieElt.gen_y(cap)


def test_taut_apply_is_lie_homomorphism():
    rng = rng_for("taut-hom")
    for _ in range(6):
        cap = rng.randint(2, 6)
        F = random_taut(rng, cap)
        a = random_lie(rng, cap, terms=2)
        b = random_lie(rng, cap, terms=2)
        assert taut_apply(F, lie_bracket(a, b)) == lie_bracket(
            taut_apply(F, a), taut_apply(F, b)
        )


def test_compose_with_identity():
    rng = rng_for("taut-compose-id")
    F = random_taut(rng, 4)
    eye = TAutElt.identity(4)
    assert taut_compose(F, eye) == F
    assert taut_compose(eye, F) == F


def test_compose_same_exponent():
    cap = 4
    F = TAutElt(LieElt.gen_y(cap), LieElt.zero(cap))
    FF = taut_compose(F, F)
    assert FF.f1.coeffs == {"y": 2}
    assert FF.f2.is_zero()


def test_compose_matches_action():
    rng = rng_for("taut-compose-act")
    for _ in range(6):
        cap = rng.randint(2, 6)
        F = random_taut(rng, cap)
        G = random_taut(rng, cap)
        w = random_lie(rng, cap, terms=3)
        assert taut_apply(taut_compose(F, G), w) == taut_apply(F, taut_apply(G, w))


def test_compose_associative():
    rng = rng_for("taut-compose-assoc")
    for _ in range(4):
        cap = rng.randint(2, 5)
        F = random_taut(rng, cap)
        G = random_taut(rng, cap)
        H = random_taut(rng, cap)
        assert taut_compose(F, taut_compose(G, H)) == taut_compose(
            taut_compose(F, G), H
        )


def test_inverse_examples():
    cap = 4
    eye = TAutElt.identity(cap)
    assert taut_inverse(eye) == eye
    F = TAutElt(LieElt.gen_y(cap), LieElt.zero(cap))
    Fi = taut_inverse(F)
    assert Fi.f1.coeffs == {"y": -1}
    assert Fi.f2.is_zero()


def test_inverse_roundtrip():
    rng = rng_for("taut-inv")
    for _ in range(6):
        cap = rng.randint(2, 6)
        F = random_taut(rng, cap)
        Fi = taut_inverse(F)
        eye = TAutElt.identity(cap)
        assert taut_compose(F, Fi) == eye
        assert taut_compose(Fi, F) == eye
        assert taut_inverse(Fi) == F


def test_exp_of_single_slot():
    cap = 4
    u = TDer(LieElt.gen_y(cap), LieElt.zero(cap))
    E = taut_exp(u)
    assert E.f1.coeffs == {"y": 1}
    assert E.f2.is_zero()


def test_exp_of_zero():
    assert taut_exp(TDer.zero(3)) == TAutElt.identity(3)


def test_exp_exponents_differ_from_the_pair():
    # The exponent pair of exp((y, x)) picks up a degree-2 correction.
    u = TDer(LieElt.gen_y(2), LieElt.gen_x(2))
    E = taut_exp(u)
    assert E.f1.coeffs == {"y": 1, "xy": Fraction(-1, 2)}
    assert E.f2.coeffs == {"x": 1, "xy": Fraction(1, 2)}


def test_exp_matches_derivation_series():
    rng = rng_for("taut-exp-series")
    for _ in range(5):
        cap = rng.randint(2, 6)
        u = random_tder(rng, cap)
        E = taut_exp(u)
        for gen in (LieElt.gen_x(cap), LieElt.gen_y(cap)):
            series = gen
            term = gen
            for j in range(1, cap + 1):
                term = Fraction(1, j) * tder_apply(u, term)
                series = series + term
            assert taut_apply(E, gen) == series


def test_log_examples():
    assert taut_log(TAutElt.identity(3)).is_zero()
    F = TAutElt(LieElt.gen_y(3), LieElt.zero(3))
    w = taut_log(F)
    assert w.u1.coeffs == {"y": 1}
    assert w.u2.is_zero()


def test_exp_log_roundtrips():
    rng = rng_for("taut-explog")
    for _ in range(6):
        cap = rng.randint(2, 6)
        u = random_tder(rng, cap)
        assert taut_log(taut_exp(u)) == u
        F = random_taut(rng, cap)
        assert taut_exp(taut_log(F)) == F


# -- jacobian -----------------------------------------------------------------


def test_jacobian_of_identity():
    assert jacobian(TAutElt.identity(4)).is_zero()


def test_jacobian_divergence_free_exponent():
    F = TAutElt(LieElt.gen_y(4), LieElt.zero(4))
    assert jacobian(F).is_zero()


def test_jacobian_leading_term():
    cap = 4
    x, y = xy_pair(cap)
    u = TDer(lie_bracket(x, y), LieElt.zero(cap))
    J = jacobian(taut_exp(u))
    assert J.homogeneous_part(2).coeffs == {"xy": -1}


def test_jacobian_cocycle():
    rng = rng_for("jac-cocycle")
    for _ in range(8):
        cap = rng.randint(2, 5)
        F = random_taut(rng, cap)
        G = random_taut(rng, cap)
        lhs = jacobian(taut_compose(F, G))
        rhs = jacobian(F) + cyc_taut_act(F, jacobian(G))
        assert lhs == rhs


def test_jacobian_linearization():
    # For homogeneous u the lowest-degree part of J(exp u) is j(u).
    rng = rng_for("jac-linear")
    from kvtower.words import lyndon_words

    for d in (2, 3, 4):
        cap = d + 2
        words = lyndon_words(d)
        u = TDer(
            LieElt(cap, {rng.choice(words): Fraction(rng.randint(1, 3))}),
            LieElt(cap, {rng.choice(words): Fraction(rng.randint(-3, -1))}),
        )
        J = jacobian(taut_exp(u))
        assert J.homogeneous_part(d) == divergence(u)


# -- group commutator and filtration ------------------------------------------


def test_group_commutator_with_identity():
    rng = rng_for("gc-id")
    F = random_taut(rng, 4)
    eye = TAutElt.identity(4)
    assert group_commutator(F, eye) == eye
    assert group_commutator(F, F) == eye


def test_group_commutator_leading_term_example():
    cap = 4
    F = TAutElt(LieElt.gen_y(cap), LieElt.zero(cap))
    G = TAutElt(LieElt.zero(cap), LieElt.gen_x(cap))
    C = group_commutator(F, G)
    lead = taut_log(C).homogeneous_part(2)
    expect = tder_bracket(
        TDer(LieElt.gen_y(cap), LieElt.zero(cap)),
        TDer(LieElt.zero(cap), LieElt.gen_x(cap)),
    )
    assert lead == expect


def test_filtration_commutator_bound():
    rng = rng_for("gc-filtration")
    for _ in range(8):
        cap = rng.randint(3, 6)
        m = rng.randint(1, 2)
        n = rng.randint(1, 2)
        F = random_taut(rng, cap, min_degree=m)
        G = random_taut(rng, cap, min_degree=n)
        val = valuation(group_commutator(F, G))
        assert val >= valuation(F) + valuation(G)


def test_graded_commutator_bracket():
    # Homogeneous exponents: the leading term of the group commutator is
    # the derivation bracket.
    rng = rng_for("gc-graded")
    from kvtower.words import lyndon_words

    for m, n in ((1, 1), (1, 2), (2, 2), (2, 3)):
        cap = m + n + 1
        u = TDer(
            LieElt(cap, {rng.choice(lyndon_words(m)): 1}),
            LieElt(cap, {rng.choice(lyndon_words(m)): 2}),
        )
        v = TDer(
            LieElt(cap, {rng.choice(lyndon_words(n)): 1}),
            LieElt(cap, {rng.choice(lyndon_words(n)): -1}),
        )
        if u.is_zero() or v.is_zero():
            continue
        C = group_commutator(taut_exp(u), taut_exp(v))
        lead = taut_log(C).homogeneous_part(m + n)
        assert lead == tder_bracket(u, v).homogeneous_part(m + n)


# -- valuation and truncation ---------------------------------------------------


def test_valuation_examples():
    assert valuation(TAutElt.identity(4)) == math.inf
    assert valuation(TAutElt(LieElt.gen_y(4), LieElt.zero(4))) == 1
    assert valuation(TAutElt(LieElt(4, {"xy": 1}), LieElt.zero(4))) == 2


def test_truncate_examples():
    F = TAutElt(LieElt(3, {"y": 1, "xy": 1}), LieElt.zero(3))
    assert F.truncate(3) == F
    T = F.truncate(1)
    assert T.cap == 1 and T.f1.coeffs == {"y": 1}


def test_truncate_is_group_homomorphism():
    rng = rng_for("taut-trunc-hom")
    for _ in range(5):
        cap = rng.randint(3, 6)
        n = rng.randint(1, cap - 1)
        F = random_taut(rng, cap)
        G = random_taut(rng, cap)
        assert taut_compose(F, G).truncate(n) == taut_compose(
            F.truncate(n), G.truncate(n)
        )


def test_normalization_of_kernel_exponents():
    # A pure-generator exponent conjugates its own generator trivially.
    F = TAutElt(LieElt.gen_x(3), LieElt.zero(3))
    assert F == TAutElt.identity(3)


def test_cap_mismatch_raises():
    with pytest.raises(CapMismatch):
        taut_compose(TAutElt.identity(2), TAutElt.identity(3))
    with pytest.raises(CapMismatch):
        tder_bracket(TDer.zero(2), TDer.zero(3))
