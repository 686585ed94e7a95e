import pytest
from hypothesis import given
from hypothesis import strategies as st

from hyperconv.errors import InputError
from hyperconv.setcalc import (
    Carrier,
    contour_kernel,
    erect,
    grill,
    intersection_hull,
    is_filter_base,
    is_saturated,
    isotone_hull,
    kernel_of,
    mesh,
    minimal_transversals,
    points,
    rdc,
    submasks,
)

ABC = Carrier(("a", "b", "c"))
subsets3 = st.integers(min_value=0, max_value=7)
families3 = st.frozensets(subsets3, max_size=4)


def test_points_and_submasks():
    assert points(0b1011) == [0, 1, 3]
    assert points(0) == []
    assert sorted(submasks(0b101)) == [0, 0b001, 0b100, 0b101]


def test_carrier_labels():
    assert ABC.n == 3
    assert ABC.full == 0b111
    assert ABC.mask(["a", "c"]) == 0b101
    assert ABC.labels_of(0b110) == ["b", "c"]
    assert ABC.format_mask(0b011) == "{a,b}"
    with pytest.raises(InputError):
        ABC.index("z")
    with pytest.raises(InputError):
        Carrier(("a", "a"))
    with pytest.raises(InputError):
        Carrier(())


def test_grill_of_a_point():
    # todos os subconjuntos que contêm a
    assert grill([0b001], ABC) == frozenset({0b001, 0b011, 0b101, 0b111})


def test_minimal_transversals():
    assert minimal_transversals([0b011, 0b110], ABC) == frozenset({0b010, 0b101})
    assert minimal_transversals([0b011, 0], ABC) == frozenset()
    assert minimal_transversals([0b111], ABC) == frozenset({0b001, 0b010, 0b100})


def test_rdc_and_erect():
    closed = (0, 0b100, 0b110, 0b111)
    assert rdc([0b001, 0b100]) == 0b101
    assert rdc([]) == 0
    assert erect(0b110, closed) == frozenset({0, 0b100, 0b110})
    assert is_saturated({0, 0b100, 0b110}, closed)
    assert not is_saturated({0b110}, closed)


def test_hulls_and_kernels():
    assert intersection_hull({0b011, 0b110}) == frozenset({0b011, 0b110, 0b010})
    assert isotone_hull([0b011], ABC) == frozenset({0b011, 0b111})
    assert kernel_of([0b011, 0b110]) == 0b010
    with pytest.raises(InputError):
        kernel_of([])


def test_filter_bases():
    assert is_filter_base({0b011, 0b010})
    assert not is_filter_base({0b011, 0})
    assert not is_filter_base({0b001, 0b010})
    assert not is_filter_base(set())


def test_contour_kernel():
    g = (0b010, 0b100, 0b001)
    assert contour_kernel(g, 0b011) == 0b110
    assert contour_kernel(g, 0b100) == 0b001
    with pytest.raises(InputError):
        contour_kernel(g, 0)


@given(families3, subsets3)
def test_grill_is_meshing_sets(family, B):
    assert (B in grill(family, ABC)) == mesh(family, [B])


@given(families3)
def test_transversals_meet_every_member(family):
    for K in minimal_transversals(family, ABC):
        assert K
        assert all(K & A for A in family)
