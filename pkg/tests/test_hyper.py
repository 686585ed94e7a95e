import pytest

from hyperconv.cap import classify
from hyperconv.checkstatus import CheckStatus
from hyperconv.conv import CarrierMode, HyperFilter
from hyperconv.errors import InputError
from hyperconv.harness.checks_hyper import directed_family
from hyperconv.harness.core import Instance
from hyperconv.hyper import (
    HyperSpace,
    Structure,
    evaluate,
    hyper_cap,
    hyper_cut,
    hyper_tower,
    lambda_K,
    lambda_lK,
    lambda_uF,
    lambda_uK,
    measure_compactness,
)
from hyperconv.values import INF, ONE, ZERO

ZERO_SET, ONE_SET, BOTH = 0b01, 0b10, 0b11


@pytest.fixture
def hq2(q2):
    return HyperSpace.over(q2)


def test_q2_hyper_carrier_is_every_subset(hq2):
    # c(Q2) é discreto
    assert hq2.sets == (0, ZERO_SET, ONE_SET, BOTH)


def test_q2_kuratowski_values(hq2):
    F = hq2.filter([ZERO_SET])
    assert lambda_uK(hq2, F, ZERO_SET) == ONE
    assert lambda_uK(hq2, F, 0) is INF
    assert lambda_uK(hq2, F, BOTH) == ZERO
    assert lambda_lK(hq2, F, ONE_SET) == ONE
    assert lambda_lK(hq2, F, ZERO_SET) == ZERO
    assert lambda_lK(hq2, F, 0) == ZERO
    assert lambda_K(hq2, F, ZERO_SET) == ONE


def test_q2_upper_fell(hq2):
    F = hq2.filter([ZERO_SET])
    assert lambda_uF(hq2, F, 0) is INF
    assert lambda_uF(hq2, F, BOTH) == ZERO
    assert measure_compactness(hq2.base, 0) == ZERO


def test_structure_order_on_q2(hq2):
    for m in range(1, 16):
        F = HyperFilter(hq2.carrier.decode(m))
        for A in hq2.sets:
            uk, uf = evaluate(hq2, Structure.UK, F, A), evaluate(hq2, Structure.UF, F, A)
            lk, lv = evaluate(hq2, Structure.LK, F, A), evaluate(hq2, Structure.LV, F, A)
            assert uk >= uf
            # Q2 é approach
            assert lk == lv
            assert evaluate(hq2, Structure.K, F, A) >= evaluate(hq2, Structure.FBAR, F, A)
            assert evaluate(hq2, Structure.FBAR, F, A) >= evaluate(hq2, Structure.F, F, A)
            assert uf >= evaluate(hq2, Structure.LUF, F, A)


def test_principal_filters(hq2):
    uf = hyper_cap(hq2, Structure.UF)
    uk = hyper_cap(hq2, Structure.UK)
    for i in range(hq2.carrier.size):
        assert uf.table[1 << i][i] == ZERO
    # {0} não é fechado em r(Q2)
    assert uk.table[1 << hq2.carrier.index_of(ZERO_SET)][hq2.carrier.index_of(ZERO_SET)] == ONE


def test_hyper_cap_of_uF_is_non_archimedean(hq2):
    assert classify(hyper_cap(hq2, Structure.UF), diagonality=False).non_archimedean


def test_towers_match_cuts(hq2):
    for structure in (Structure.UK, Structure.LK):
        for eps in (ZERO, ONE, INF):
            assert hyper_tower(hq2, structure, eps).lim_table == hyper_cut(hq2, structure, eps).lim_table


def test_tower_rejects_other_structures(hq2):
    with pytest.raises(InputError):
        hyper_tower(hq2, Structure.UF, ONE)


def test_point_and_filter_are_validated(i_p3):
    h = HyperSpace.over(i_p3)
    with pytest.raises(InputError):
        h.filter([0b001])
    F = h.filter([0b100])
    with pytest.raises(InputError):
        lambda_uK(h, F, 0b001)


def test_all_mode_accepts_any_subset(i_p3):
    h = HyperSpace.over(i_p3, CarrierMode.ALL)
    F = h.filter([0b001])
    assert lambda_lK(h, F, 0b100) is INF


def test_directed_family_of_filters_on_q2(hq2):
    fine = hq2.filter([ZERO_SET])
    coarse = hq2.filter([ZERO_SET, ONE_SET])
    # 𝔉_{0} = fine, 𝔉_{1} = coarse; o supremo da família dirigida é fine
    bound = max(lambda_uK(hq2, fine, ZERO_SET), lambda_uK(hq2, coarse, ONE_SET))
    assert lambda_uK(hq2, fine, ZERO_SET & ONE_SET) <= bound


@pytest.mark.parametrize("name", ["q2", "i_p3"])
def test_directed_family_check_passes(name, request):
    inst = Instance("cap", 0, name, request.getfixturevalue(name))
    assert directed_family(inst).status is CheckStatus.PASS
