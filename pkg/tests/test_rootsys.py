import cmath
import random
from fractions import Fraction

import pytest

from trigcasimir.rootsys import (
    AdjointTorusPoint,
    PreconditionError,
    RootSystem,
    SingularPointError,
    WeylGroup,
    build_root_system,
    chamber_shift,
    component_group_order,
    decompose_inversion_set,
    enumerate_rank2_subsystems,
    eta_cross_specialization_residual,
    eta_identity_residual,
    injective_characters,
    rank2_subsystems_bruteforce,
)

WEYL_ORDERS = {"A1": 2, "A2": 6, "A3": 24, "B2": 8, "B3": 48, "C3": 48, "G2": 12}


def test_build_all_supported_types():
    for label in ("A1", "A2", "A3", "A4", "B2", "B3", "C3", "D4", "G2"):
        rs = build_root_system(label)
        # Cartan pairing invariant: <alpha_i^vee, alpha_j> = a_ij
        for i in range(rs.rank):
            cov = rs.coroot(rs.simple_roots[i])
            for j in range(rs.rank):
                assert rs.pairing(rs.simple_roots[j], cov) == rs.cartan[i][j]
        # long roots have squared length 2
        assert max(rs.norm2(r) for r in rs.positive_roots) == 2
        # positive roots have nonnegative integer coordinates
        assert all(all(c >= 0 for c in r) for r in rs.positive_roots)
    with pytest.raises(ValueError):
        build_root_system("E8")


def test_a1_and_g2_root_lists():
    a1 = build_root_system("A1")
    assert a1.all_roots == ((1,), (-1,))
    g2 = build_root_system("G2")
    assert set(g2.positive_roots) == {
        (1, 0), (0, 1), (1, 1), (1, 2), (1, 3), (2, 3),
    }
    # alpha_1 long, alpha_2 short
    assert g2.norm2((1, 0)) == 2 and g2.norm2((0, 1)) == Fraction(2, 3)


def test_b2_root_lengths():
    b2 = build_root_system("B2")
    # positive roots alpha_1, alpha_2, alpha_1+alpha_2, alpha_1+2alpha_2;
    # in the orthogonal picture these are the {a, b, a+-b} of the rank-2 case
    assert set(b2.positive_roots) == {(1, 0), (0, 1), (1, 1), (1, 2)}
    assert b2.norm2((1, 0)) == 2 and b2.norm2((1, 2)) == 2
    assert b2.norm2((0, 1)) == 1 and b2.norm2((1, 1)) == 1


def test_weyl_group_orders_and_inversions():
    for label, order in WEYL_ORDERS.items():
        rs = build_root_system(label)
        W = WeylGroup(rs)
        assert len(W) == order
        for w in W.elements:
            assert len(W.inversions(w)) == len(w.word)
            # the action preserves the invariant form
            for a in rs.simple_roots:
                for b in rs.simple_roots:
                    assert rs.inner(w.apply_root(a), w.apply_root(b)) == rs.inner(a, b)


def test_root_coweight_pairing_equivariance():
    rs = build_root_system("B3")
    W = WeylGroup(rs)
    rng = random.Random(2)
    for _ in range(20):
        w = rng.choice(W.elements)
        beta = rng.choice(rs.positive_roots)
        v = tuple(Fraction(rng.randint(-3, 3)) for _ in range(rs.rank))
        assert rs.pairing(w.apply_root(beta), W.apply_coweight(w, v)) == rs.pairing(
            beta, v
        )


def test_longest_element_inverts_all_positive_roots():
    for label in ("A2", "B2", "G2", "A3"):
        rs = build_root_system(label)
        W = WeylGroup(rs)
        w0 = W.longest_element()
        assert W.inversions(w0) == frozenset(rs.positive_roots)
        for b in rs.positive_roots:
            assert W.sign_of_root(W.inverse(w0), b) == -1


def test_rank2_enumerator_matches_bruteforce_oracle():
    for label in ("A2", "B2", "G2", "A3", "B3", "C3"):
        rs = build_root_system(label)
        enum = enumerate_rank2_subsystems(rs)
        oracle = rank2_subsystems_bruteforce(rs)
        assert [s.roots for s in enum] == [s.roots for s in oracle], label
        assert [s.is_complete for s in enum] == [s.is_complete for s in oracle]


def test_b2_long_subsystem_not_complete():
    rs = build_root_system("B2")
    subs = enumerate_rank2_subsystems(rs)
    # long roots alpha_1 and alpha_1 + 2 alpha_2 span an A1xA1 subsystem
    long_pair = next(
        s for s in subs if s.type_tag == "A1xA1" and (1, 0) in s.roots
    )
    assert long_pair.roots == frozenset(
        {(1, 0), (-1, 0), (1, 2), (-1, -2)}
    )
    assert not long_pair.is_complete
    assert component_group_order(long_pair) == 2
    assert injective_characters(2) == [1]
    # the short roots do not form a subsystem: no A1xA1 with both shorts
    assert not any(
        s.type_tag == "A1xA1" and (0, 1) in s.roots and (1, 1) in s.roots
        for s in subs
    )


def test_g2_subsystems():
    rs = build_root_system("G2")
    subs = enumerate_rank2_subsystems(rs)
    tags = sorted(s.type_tag for s in subs)
    # whole system, the long A2 (not complete), and three orthogonal pairs
    assert tags == ["A1xA1", "A1xA1", "A1xA1", "A2", "G2"]
    longs = next(s for s in subs if s.type_tag == "A2")
    assert not longs.is_complete
    assert component_group_order(longs) == 3
    for s in subs:
        if s.type_tag == "A1xA1":
            a, b = s.positive
            assert rs.inner(a, b) == 0
            assert {rs.norm2(a), rs.norm2(b)} == {2, Fraction(2, 3)}
            # in a rank-2 ambient system only the whole system is complete
            assert not s.is_complete


def test_inversion_decomposition_identity_case():
    rs = build_root_system("A2")
    W = WeylGroup(rs)
    parts = decompose_inversion_set(rs, W, (1, 0), W.identity)
    assert parts == {}


def test_inversion_decomposition_simple_cases():
    rs = build_root_system("A2")
    W = WeylGroup(rs)
    # w = s2 sends alpha_1 to the highest root; N(w^-1) = {alpha_2}
    s2 = W.simple_reflection(1)
    parts = decompose_inversion_set(rs, W, (1, 1), s2)
    assert len(parts) == 1
    (psi, (part, _)) = next(iter(parts.items()))
    assert psi.type_tag == "A2"
    assert part == frozenset({(0, 1)})
    with pytest.raises(PreconditionError):
        decompose_inversion_set(rs, W, (1, 1), W.identity)


def _qualifying_pairs(rs, W):
    out = []
    for alpha in rs.positive_roots:
        qual = [
            w for w in W.elements
            if W.inverse(w).apply_root(alpha) in rs.simple_roots
        ]
        lmin = min(len(w.word) for w in qual)
        out.extend((alpha, w) for w in qual if len(w.word) == lmin)
    return out


def _exhaustive_decomposition(label):
    rs = build_root_system(label)
    W = WeylGroup(rs)
    subs = enumerate_rank2_subsystems(rs)
    pairs = _qualifying_pairs(rs, W)
    for alpha, w in pairs:
        decompose_inversion_set(rs, W, alpha, w, subsystems=subs)
    return len(pairs)


def test_inversion_decomposition_exhaustive_rank2():
    for label in ("A2", "B2", "G2"):
        assert _exhaustive_decomposition(label) > 0


def test_inversion_decomposition_sampled_a3_b3():
    rng = random.Random(5)
    for label in ("A3", "B3"):
        rs = build_root_system(label)
        W = WeylGroup(rs)
        subs = enumerate_rank2_subsystems(rs)
        pairs = _qualifying_pairs(rs, W)
        for alpha, w in rng.choices(pairs, k=50):
            decompose_inversion_set(rs, W, alpha, w, subsystems=subs)


def _random_regular_rational_point(rs, rng):
    while True:
        zeta = tuple(
            Fraction(rng.randint(2, 9), rng.randint(1, 5)) for _ in range(rs.rank)
        )
        p = AdjointTorusPoint(zeta)
        if p.is_regular(rs):
            return p


def test_eta_identity_exact_at_rational_points():
    rs = build_root_system("A2")
    rng = random.Random(9)
    u, v = (Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))
    for _ in range(20):
        p = _random_regular_rational_point(rs, rng)
        r = eta_identity_residual(p, (1, 0), (0, 1), u, v)
        assert r == 0
        assert eta_cross_specialization_residual(p, (1, 0), (0, 1), u, v) == 0


def test_eta_identity_proportional_arguments_trivial():
    rs = build_root_system("A2")
    p = _random_regular_rational_point(rs, random.Random(1))
    u, v = (Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))
    a = (1, 1)
    # a = b: every wedge involves proportional differentials
    assert eta_identity_residual(p, a, a, u, v) == 0


def test_eta_identity_numeric_at_complex_points():
    rng = random.Random(31)
    u, v = (1.0, 0.0), (0.0, 1.0)
    worst = 0.0
    for _ in range(100):
        x = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
        y = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
        zeta = (cmath.exp(x), cmath.exp(y))
        p = AdjointTorusPoint(zeta)
        if abs(p.char((1, 0)) - 1) < 1e-3 or abs(p.char((0, 1)) - 1) < 1e-3 \
                or abs(p.char((1, 1)) - 1) < 1e-3:
            continue
        worst = max(worst, eta_identity_residual(p, (1, 0), (0, 1), u, v))
    assert worst <= 1e-12


def test_eta_identity_singular_point_rejected():
    p = AdjointTorusPoint((Fraction(1), Fraction(3)))
    with pytest.raises(SingularPointError):
        eta_identity_residual(p, (1, 0), (0, 1), (1, 0), (0, 1))


def test_chamber_shift():
    rs = build_root_system("A2")
    W = WeylGroup(rs)
    assert chamber_shift(rs, W, W.identity, (1, 0)) == []
    # w = s_i, v = fundamental coweight i: single term alpha_i(t^i) = 1
    s1 = W.simple_reflection(0)
    assert chamber_shift(rs, W, s1, rs.fundamental_coweight(0)) == [
        ((1, 0), Fraction(1))
    ]
    w0 = W.longest_element()
    terms = chamber_shift(rs, W, w0, (Fraction(1), Fraction(1)))
    assert [t[0] for t in terms] == sorted(rs.positive_roots)


def test_describe_serialization():
    rs = build_root_system("B2")
    text = rs.describe()
    assert "type B2" in text and "positive roots (4)" in text
