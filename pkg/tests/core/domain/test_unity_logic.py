import cmath
import math

import numpy as np
import pytest

from src.core.domain.errors import (
    InvalidOrderError,
    OrderMismatchError,
    PreconditionError,
    ZeroArgumentError,
)
from src.core.domain.unity_logic import (
    RadixCostQuery,
    Sector,
    ZeroPolicy,
    angular_distance,
    arg_principal,
    csign,
    make_sector,
    optimal_radix,
    radix_cost,
    radix_cost_table,
    roots_of_unity,
    sector_inverse,
    sector_mul,
    sector_value,
)


def test_make_sector_reduces_index_modulo_order():
    assert make_sector(2, 1) == Sector(2, 1)
    assert sector_value(make_sector(2, 1)) == pytest.approx(-1)
    assert make_sector(4, 0) == Sector(4, 0)
    assert make_sector(5, 9) == Sector(5, 4)
    assert make_sector(3, -1) == Sector(3, 2)


@pytest.mark.parametrize("k", [1, 0, -3])
def test_make_sector_rejects_order_below_two(k):
    with pytest.raises(InvalidOrderError):
        make_sector(k, 0)


def test_sector_value_examples():
    assert sector_value(Sector(4, 1)) == pytest.approx(1j, abs=1e-15)
    assert sector_value(Sector(2, 1)) == pytest.approx(-1, abs=1e-15)
    expected = complex(math.cos(8 * math.pi / 5), math.sin(8 * math.pi / 5))
    assert sector_value(Sector(5, 4)) == pytest.approx(expected, abs=1e-15)


def test_sector_values_have_unit_modulus():
    for k in range(2, 17):
        for j in range(k):
            assert abs(abs(sector_value(Sector(k, j))) - 1.0) <= 1e-12


def test_arg_principal_normalizes_into_zero_two_pi():
    assert arg_principal(1 + 1j) == pytest.approx(math.pi / 4)
    assert arg_principal(-1 + 0j) == pytest.approx(math.pi)
    assert arg_principal(-1j) == pytest.approx(3 * math.pi / 2)


def test_arg_principal_rejects_zero():
    with pytest.raises(ZeroArgumentError):
        arg_principal(0j)


def test_csign_examples_use_half_open_sectors():
    assert csign(1 + 1j, 4) == Sector(4, 0)
    assert csign(1j, 4) == Sector(4, 1)
    assert csign(complex(-3, 0.0), 2) == Sector(2, 1)


def test_csign_maps_every_exact_root_onto_itself():
    for k in range(2, 17):
        for j in range(k):
            assert csign(sector_value(Sector(k, j)), k) == Sector(k, j)


def test_csign_is_invariant_under_positive_scaling():
    rng = np.random.default_rng(7)
    for _ in range(500):
        z = complex(*rng.normal(size=2))
        k = int(rng.integers(2, 12))
        for scale in (0.25, 2.0, 1024.0):
            assert csign(scale * z, k) == csign(z, k)


def test_csign_zero_policy():
    assert csign(0j, 5) == Sector(5, 0)
    with pytest.raises(ZeroArgumentError):
        csign(0j, 5, ZeroPolicy.RAISE)


def test_csign_rejects_invalid_order():
    with pytest.raises(InvalidOrderError):
        csign(1 + 0j, 1)


def test_sector_mul_examples_and_group_laws():
    assert sector_mul(Sector(5, 2), Sector(5, 2)) == Sector(5, 4)
    assert sector_mul(Sector(3, 1), Sector(3, 1)) == Sector(3, 2)
    for k in (2, 3, 7):
        for a in range(k):
            assert sector_mul(Sector(k, 0), Sector(k, a)) == Sector(k, a)
            assert sector_mul(Sector(k, a), sector_inverse(Sector(k, a))) == Sector(k, 0)
            for b in range(k):
                assert sector_mul(Sector(k, a), Sector(k, b)) == sector_mul(Sector(k, b), Sector(k, a))
                for c in range(k):
                    left = sector_mul(sector_mul(Sector(k, a), Sector(k, b)), Sector(k, c))
                    right = sector_mul(Sector(k, a), sector_mul(Sector(k, b), Sector(k, c)))
                    assert left == right


def test_sector_mul_rejects_mismatched_orders():
    with pytest.raises(OrderMismatchError):
        sector_mul(Sector(3, 1), Sector(4, 1))


def test_roots_of_unity_lists_the_alphabet_in_index_order():
    roots = roots_of_unity(5)
    assert [s.j for s in roots] == [0, 1, 2, 3, 4]
    assert sum(sector_value(s) for s in roots) == pytest.approx(0, abs=1e-12)


def test_angular_distance_wraps_around_the_circle():
    assert angular_distance(Sector(4, 0), Sector(4, 3)) == pytest.approx(math.pi / 2)
    assert angular_distance(Sector(4, 1), Sector(4, 3)) == math.pi
    assert angular_distance(Sector(6, 2), Sector(6, 2)) == 0.0


def test_sector_label():
    assert Sector(5, 4).label() == "ε_5^4"


def test_radix_cost_examples():
    assert radix_cost(RadixCostQuery(r=2, N=256)) == pytest.approx(16.0, rel=1e-12)
    assert radix_cost(RadixCostQuery(r=3, N=1e6)) < radix_cost(RadixCostQuery(r=2, N=1e6))
    for N in (2, 10, 1e3, 1e6, 1e12):
        c2 = radix_cost(RadixCostQuery(r=2, N=N))
        c4 = radix_cost(RadixCostQuery(r=4, N=N))
        assert c4 == pytest.approx(c2, rel=1e-12)


def test_radix_cost_scales_with_log_of_n():
    base = radix_cost(RadixCostQuery(r=5, N=10.0, k_const=2.0))
    cubed = radix_cost(RadixCostQuery(r=5, N=1000.0, k_const=2.0))
    assert cubed == pytest.approx(3 * base, rel=1e-12)


@pytest.mark.parametrize(
    "query",
    [
        dict(r=1, N=10),
        dict(r=2, N=1.5),
        dict(r=2, N=10, k_const=0),
        dict(r=2, N=math.inf),
        dict(r=2, N=math.nan),
        dict(r=3, N=10, k_const=math.inf),
    ],
)
def test_radix_cost_query_rejects_invalid_values(query):
    with pytest.raises(PreconditionError):
        RadixCostQuery(**query)


@pytest.mark.parametrize("N", [2, 10, 1e3, 1e6, 1e12])
def test_optimal_radix_is_three(N):
    assert optimal_radix(N, 64) == 3
    assert optimal_radix(N, 10) == 3


def test_optimal_radix_small_scan_and_precondition():
    assert optimal_radix(1e9, 3) == 3
    with pytest.raises(PreconditionError):
        optimal_radix(10, 2)


def test_radix_cost_table_covers_two_to_r_max():
    table = radix_cost_table(1e6, 6)
    assert [r for r, _ in table] == [2, 3, 4, 5, 6]
    assert all(cost > 0 for _, cost in table)
    assert min(table, key=lambda row: row[1])[0] == 3


def test_sector_value_of_identity_root_is_exactly_one():
    assert sector_value(Sector(7, 0)) == 1
    assert cmath.phase(sector_value(Sector(8, 2))) == pytest.approx(math.pi / 2)
