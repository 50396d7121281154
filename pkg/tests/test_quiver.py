import random
from fractions import Fraction

import pytest

from flopwin.quiver import (
    BasePoint,
    QuiverRep,
    base_equation,
    base_map,
    conic_discriminant,
    from_chart,
    gauge_transform,
    is_semistable,
    random_chart_rep,
    relations_hold,
    scalar_pair_rep,
    singular_locus_check,
    stratum,
)

F = Fraction


def chart(alpha=(0, 0), alpha_star=(0, 0), beta=((0, 0), (0, 0)), gamma=((0, 0), (0, 0))):
    return from_chart(alpha, alpha_star, beta, gamma)


def test_from_chart_removes_delta():
    rep = chart(alpha=(1, 0), beta=((0, 1), (0, 0)), gamma=((0, 0), (1, 0)))
    assert rep.params["t"] == 0
    assert rep.delta == ((0, -1), (-1, 0))
    ok, _ = relations_hold(rep)
    assert ok


def test_from_chart_zero_rep():
    rep = chart()
    assert rep.params == {"t": 0, "Tbeta": 0, "Tgamma": 0, "Tdelta": 0}
    ok, _ = relations_hold(rep)
    assert ok


def test_from_chart_outer_product_term():
    rep = chart(alpha=(1, 0), alpha_star=(1, 0))
    assert rep.params["t"] == 1
    assert rep.delta == ((F(-1, 2), 0), (0, F(1, 2)))
    assert rep.delta[0][0] + rep.delta[1][1] == 0
    ok, _ = relations_hold(rep)
    assert ok


def test_from_chart_rejects_traceful_loops():
    with pytest.raises(ValueError):
        from_chart((0, 0), (0, 0), ((1, 0), (0, 0)), ((0, 0), (0, 0)))


def test_relations_fail_named_residual():
    rep = QuiverRep.from_dict(
        {
            "alpha": [0, 0],
            "alpha_star": [0, 0],
            "beta": [[0, 1], [1, 1]],
            "gamma": [[0, 0], [0, 0]],
        }
    )
    ok, residuals = relations_hold(rep)
    assert not ok
    assert any(x != 0 for row in residuals["beta_square"] for x in row)
    assert residuals["alpha_star_alpha"] == 0


def test_operations_require_relations():
    rep = QuiverRep.from_dict(
        {
            "alpha": [1, 0],
            "alpha_star": [0, 0],
            "beta": [[0, 1], [1, 1]],
            "gamma": [[0, 0], [0, 0]],
        }
    )
    for call in (lambda: is_semistable(rep, "theta1"), lambda: stratum(rep), lambda: base_map(rep)):
        with pytest.raises(ValueError):
            call()


def test_json_round_trip():
    rng = random.Random(7)
    rep = random_chart_rep(rng)
    again = QuiverRep.from_dict(rep.to_dict())
    assert again == rep
    with pytest.raises(ValueError):
        QuiverRep.from_dict(
            {"alpha": [0, 0], "alpha_star": [0, 0], "beta": [[0, 0], [0, 0]],
             "gamma": [[0, 0], [0, 0]], "params": {"bogus": 1}}
        )


def test_theta1_examples():
    moved = chart(alpha=(1, 0), beta=((0, 1), (0, 0)), gamma=((0, 0), (1, 0)))
    assert is_semistable(moved, "theta1")
    assert stratum(moved) == "semistable"

    no_alpha = chart(alpha=(0, 0), alpha_star=(1, 2), beta=((0, 1), (1, 0)))
    assert not is_semistable(no_alpha, "theta1")
    assert stratum(no_alpha) == "S0"


def test_theta2_mirrors_theta1():
    rep = chart(alpha=(0, 1), alpha_star=(1, 0), beta=((0, 0), (1, 0)))
    # ker(alpha_star) = span (0,1); beta misses it, gamma = delta contributions decide
    assert is_semistable(rep, "theta2") == any(
        v != 0 for v in (rep.beta[0][1], rep.gamma[0][1], rep.delta[0][1])
    )
    assert not is_semistable(chart(alpha=(1, 0)), "theta2")
    with pytest.raises(ValueError):
        is_semistable(rep, "theta3")


def test_shared_eigenvector_stratum():
    rep = chart(alpha=(1, 0), beta=((1, 0), (0, -1)), gamma=((2, 0), (0, -2)))
    assert stratum(rep) == "S1"
    assert not is_semistable(rep, "theta1")


def test_scalar_pair_family_is_unstable():
    rng = random.Random(11)
    for _ in range(200):
        rep = scalar_pair_rep(rng)
        ok, _ = relations_hold(rep)
        assert ok
        assert not is_semistable(rep, "theta1")
        assert stratum(rep) == "S1"


def test_base_map_symmetric_loops():
    flip = ((0, 1), (1, 0))
    rep = chart(beta=flip, gamma=flip)
    p = base_map(rep)
    assert (p.u, p.w) == (-1, -1)
    assert p.v == 1  # beta.gamma + gamma.beta = 2I fixes the sign
    assert (p.x, p.y, p.z, p.t) == (0, 0, 0, 0)
    assert base_equation(p) == 0


def test_base_map_zero_rep():
    assert base_map(chart()).to_tuple() == (0,) * 7


def test_base_identity_sweep():
    rng = random.Random(23)
    for _ in range(300):
        rep = random_chart_rep(rng)
        p = base_map(rep)
        assert base_equation(p) == 0
        label = stratum(rep)
        assert (label == "semistable") == is_semistable(rep, "theta1")
        if label == "S1":
            assert not is_semistable(rep, "theta1")
        if label == "S0":
            assert p.x == 0 and p.y == 0 and p.z == 0 and p.t == 0


def test_base_map_chart_dictionary():
    # upper-triangular loops preserve alpha = e1, so y and z collapse to
    # -t*c00 and -t*b00 and x vanishes
    rep = chart(alpha=(1, 0), alpha_star=(3, 4), beta=((2, 5), (0, -2)), gamma=((-1, 7), (0, 1)))
    p = base_map(rep)
    assert p.t == 3
    assert p.x == 0
    assert p.y == -p.t * rep.gamma[0][0]
    assert p.z == -p.t * rep.beta[0][0]


def test_gauge_invariance():
    rng = random.Random(31)
    for _ in range(60):
        rep = random_chart_rep(rng)
        while True:
            g = ((rng.randint(-4, 4), rng.randint(-4, 4)), (rng.randint(-4, 4), rng.randint(-4, 4)))
            if g[0][0] * g[1][1] - g[0][1] * g[1][0] != 0:
                break
        g0 = F(rng.choice([1, 2, 3, -1, -2]))
        moved = gauge_transform(rep, g, g0)
        ok, _ = relations_hold(moved)
        assert ok
        assert base_map(moved) == base_map(rep)
        assert is_semistable(moved, "theta1") == is_semistable(rep, "theta1")
        assert stratum(moved) == stratum(rep)


def test_base_equation_values():
    assert base_equation(BasePoint.from_values([0] * 7)) == 0
    assert base_equation(BasePoint.from_values([1, 0, 0, 0, 0, 0, 0])) == 1
    rng = random.Random(41)
    for _ in range(50):
        b, c, t0 = (F(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(3))
        p = BasePoint.from_values([0, b * t0, c * t0, t0, -c * c, b * c, -b * b])
        assert base_equation(p) == 0
        report = singular_locus_check(p)
        assert all(v == 0 for v in report.generators.values())
        assert report.in_z2


def test_singular_components():
    z1 = BasePoint.from_values([0, 0, 0, 0, 1, 0, 1])
    r1 = singular_locus_check(z1)
    assert r1.in_z1 and not r1.in_z2 and r1.component == "Z1"
    assert r1.in_singular_locus

    origin = singular_locus_check(BasePoint.from_values([0] * 7))
    assert origin.component == "both"

    z2 = singular_locus_check(BasePoint.from_values([0, 2, 3, 1, -9, 6, -4]))
    assert z2.component == "Z2" and z2.in_singular_locus

    generic = singular_locus_check(BasePoint.from_values([1, 1, 1, 1, 1, 1, 1]))
    assert generic.component == "neither"
    assert generic.generators["x"] == 1
    assert not generic.in_singular_locus


def test_conic_discriminant():
    assert conic_discriminant(1, 1, 1) == 0
    assert conic_discriminant(1, 0, 1) == 1
    assert conic_discriminant(0, 0, 0) == 0
    assert conic_discriminant(F(1, 2), F(1, 3), F(2, 9)) == 0
