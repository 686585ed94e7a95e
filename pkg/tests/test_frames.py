from fractions import Fraction

from hyperconv.conv import CarrierMode
from hyperconv.frames import (
    compact_closed_sets,
    cone_candidates,
    d_closure,
    frame_members,
    is_contraction,
    is_contraction_definitional,
    lambda_lV,
    lambda_uV,
    mu_down,
    mu_up,
    theta,
    value_grid,
)
from hyperconv.hyper import HyperSpace, lambda_lK
from hyperconv.values import INF, ONE, ZERO


def test_theta_and_set_extensions():
    t = theta(0b101, 3)
    assert t == (ZERO, INF, ZERO)
    assert mu_up(t, 0b011) is INF
    assert mu_down(t, 0b011) == ZERO
    assert mu_up(t, 0) == ZERO
    assert mu_down(t, 0) is INF


def test_q2_grid_and_closure(q2):
    assert value_grid(q2) == (ZERO, ONE, Fraction(2), INF)
    assert d_closure(q2) == ((ZERO, ONE), (INF, ZERO))


def test_contraction_forms_agree(q2):
    for mu in frame_members(q2, value_grid(q2)):
        assert is_contraction_definitional(q2, mu)
    assert not is_contraction(q2, (ZERO, Fraction(2)))
    assert not is_contraction_definitional(q2, (ZERO, Fraction(2)))


def test_theta_of_closed_set_is_contraction(i_p3):
    # fechados de P3: ∅, {c}, {b,c}, X
    for A in (0, 0b100, 0b110, 0b111):
        assert is_contraction(i_p3, theta(A, 3))
    assert not is_contraction(i_p3, theta(0b001, 3))


def test_cone_candidates_are_contractions(q2):
    for A in range(4):
        for upper in (False, True):
            for mu in cone_candidates(q2, A, upper):
                assert is_contraction(q2, mu)


def test_lower_vietoris_on_q2(q2):
    h = HyperSpace.over(q2)
    F = h.filter([0b01])
    assert lambda_lV(h, F, 0b10) == lambda_lK(h, F, 0b10) == ONE
    assert lambda_uV(h, F, 0b01) == ZERO


def test_p3_lower_vietoris_is_zero_at_c(i_p3):
    h = HyperSpace.over(i_p3, CarrierMode.ALL)
    F = h.filter([0b001])
    assert lambda_lV(h, F, 0b100) == ZERO


def test_compact_closed_sets_of_q2(q2):
    # m(H) = 0 para todo H: d(t,t) = 0
    assert compact_closed_sets(q2) == (0, 0b01, 0b10, 0b11)
