import math

import pytest

from src.core.domain.bargmann import (
    InnerProductConfig,
    Mode,
    OscillatorConfig,
    SpinLabel,
    SpinOperator,
    TwoModeState,
    apply_annihilate,
    apply_create,
    apply_hamiltonian,
    apply_spin,
    coherent_state,
    commutator,
    describe_monomial,
    encode_state_roots,
    energy_expectation,
    inner_product_analytic,
    inner_product_quadrature,
    monomial,
    occupation_to_spin,
    oscillator_level_roots,
    spin_to_occupation,
    table_rows,
    unnormalized_monomial,
)
from src.core.domain.errors import (
    InvalidOccupationError,
    ModeMismatchError,
    PreconditionError,
)
from src.core.domain.unity_logic import Sector

CYCLIC = [
    (SpinOperator.JX, SpinOperator.JY, SpinOperator.JZ),
    (SpinOperator.JY, SpinOperator.JZ, SpinOperator.JX),
    (SpinOperator.JZ, SpinOperator.JX, SpinOperator.JY),
]


def _occupations(max_total):
    return [(n1, total - n1) for total in range(max_total + 1) for n1 in range(total + 1)]


def test_monomial_holds_a_single_unit_term():
    assert dict(monomial(1, 0).terms) == {(1, 0): 1}
    assert dict(monomial(0, 0).terms) == {(0, 0): 1}
    assert describe_monomial(4, 0) == "z^4 / sqrt(24)"


def test_monomial_rejects_negative_occupation():
    with pytest.raises(InvalidOccupationError):
        monomial(-1, 0)


def test_state_prunes_tiny_coefficients():
    state = TwoModeState({(0, 0): 1e-16, (1, 0): 0.5})
    assert list(state.terms) == [(1, 0)]
    assert (monomial(2, 0) - monomial(2, 0)).is_zero()


def test_coherent_state_examples():
    assert dict(coherent_state(0, 7).terms) == {(0, 0): 1}
    assert coherent_state(1, 20).norm_squared() == pytest.approx(1.0, abs=1e-12)
    single = coherent_state(1j, 0)
    assert dict(single.terms) == {(0, 0): pytest.approx(math.exp(-0.5))}


def test_inner_product_analytic_examples():
    assert inner_product_analytic(monomial(2, 0), monomial(2, 0)) == 1
    assert inner_product_analytic(monomial(1, 0), monomial(0, 1)) == 0
    f = monomial(1, 1).scale(2)
    g = monomial(1, 1).scale(3j)
    assert inner_product_analytic(f, g) == pytest.approx(6j)


def test_inner_product_quadrature_examples():
    cfg = InnerProductConfig(t=1.0)
    f20 = monomial(2, 0)
    assert inner_product_quadrature(f20, f20, cfg).value == pytest.approx(1, abs=1e-9)
    assert inner_product_quadrature(monomial(1, 0), monomial(3, 0), cfg).value == pytest.approx(0, abs=1e-9)
    z = unnormalized_monomial(1, 0)
    assert inner_product_quadrature(z, z, InnerProductConfig(t=2.0)).value == pytest.approx(2, rel=1e-9)


def test_quadrature_matches_kronecker_delta_up_to_degree_eight():
    cfg = InnerProductConfig(t=1.0)
    states = {key: monomial(*key) for key in _occupations(8)}
    for a, fa in states.items():
        for b, fb in states.items():
            result = inner_product_quadrature(fa, fb, cfg)
            assert result.warning is None
            assert abs(result.value - (1.0 if a == b else 0.0)) < 1e-9


@pytest.mark.parametrize("n", range(7))
def test_quadrature_reproduces_gaussian_moments_at_t_two(n):
    z_n = unnormalized_monomial(n, 0)
    value = inner_product_quadrature(z_n, z_n, InnerProductConfig(t=2.0)).value
    expected = 2**n * math.factorial(n)
    assert abs(value - expected) <= 1e-9 * expected


def test_quadrature_flags_insufficient_nodes():
    cfg = InnerProductConfig(radial_nodes=2, angular_nodes=3)
    result = inner_product_quadrature(monomial(4, 0), monomial(4, 0), cfg)
    assert result.warning is not None


def test_ladder_operator_examples():
    assert dict(apply_create(monomial(0, 0)).terms) == {(1, 0): 1}
    assert apply_create(monomial(1, 0)).coefficient(2, 0) == pytest.approx(math.sqrt(2))
    assert apply_create(monomial(3, 1), Mode.W).coefficient(3, 2) == pytest.approx(math.sqrt(2))
    assert apply_annihilate(monomial(0, 0)).is_zero()
    assert apply_annihilate(monomial(2, 0)).coefficient(1, 0) == pytest.approx(math.sqrt(2))


def test_ladder_commutator_is_identity():
    for n in range(11):
        f = monomial(n, 0)
        result = apply_annihilate(apply_create(f)) - apply_create(apply_annihilate(f))
        assert result.max_abs_difference(f) < 1e-12


def test_hamiltonian_examples():
    assert apply_hamiltonian(monomial(2, 0)).coefficient(2, 0) == 2.5
    assert apply_hamiltonian(monomial(0, 0)).coefficient(0, 0) == 0.5
    mixed = apply_hamiltonian(monomial(0, 0) + monomial(1, 0), OscillatorConfig(hbar_omega=2.0))
    assert dict(mixed.terms) == {(0, 0): 1, (1, 0): 3}


def test_hamiltonian_eigenvalues_are_exact():
    for n in range(21):
        assert apply_hamiltonian(monomial(n, 0)).coefficient(n, 0) == n + 0.5


def test_hamiltonian_rejects_two_mode_state():
    with pytest.raises(ModeMismatchError):
        apply_hamiltonian(monomial(1, 1))


def test_energy_expectation_of_coherent_state():
    alpha = 0.8 + 0.3j
    energy = energy_expectation(coherent_state(alpha, 40))
    assert energy == pytest.approx(abs(alpha) ** 2 + 0.5, abs=1e-10)


def test_spin_examples():
    assert apply_spin(SpinOperator.JZ, monomial(3, 1)).max_abs_difference(monomial(3, 1)) < 1e-12
    assert apply_spin(SpinOperator.JZ, monomial(2, 2)).is_zero()
    jsq = apply_spin(SpinOperator.JSQUARED, monomial(1, 0))
    assert jsq.max_abs_difference(monomial(1, 0).scale(0.75)) < 1e-12


def test_jordan_schwinger_commutation_relations():
    for n1, n2 in _occupations(8):
        f = monomial(n1, n2)
        for a, b, c in CYCLIC:
            lhs = commutator(a, b, f)
            rhs = apply_spin(c, f).scale(1j)
            assert lhs.max_abs_difference(rhs) < 1e-12


def test_spin_eigenvalues_on_every_monomial():
    for n1, n2 in _occupations(8):
        f = monomial(n1, n2)
        j = (n1 + n2) / 2
        m = (n1 - n2) / 2
        assert apply_spin(SpinOperator.JZ, f).max_abs_difference(f.scale(m)) < 1e-10
        assert apply_spin(SpinOperator.JSQUARED, f).max_abs_difference(f.scale(j * (j + 1))) < 1e-10


def test_spin_label_validation_and_description():
    assert SpinLabel.of("1/2", "-1/2").describe() == "j=1/2, m=-1/2"
    assert SpinLabel(4, -4).describe() == "j=2, m=-2"
    with pytest.raises(PreconditionError):
        SpinLabel(2, 1)
    with pytest.raises(PreconditionError):
        SpinLabel(1, 3)


def test_spin_occupation_mapping_examples():
    assert spin_to_occupation(SpinLabel(1, -1)) == (0, 1)
    assert spin_to_occupation(SpinLabel(4, 0)) == (2, 2)
    assert spin_to_occupation(SpinLabel(0, 0)) == (0, 0)
    assert occupation_to_spin(3, 1) == SpinLabel(4, 2)
    assert occupation_to_spin(1, 1) == SpinLabel(2, 0)
    assert occupation_to_spin(0, 4) == SpinLabel(4, -4)


def test_spin_occupation_round_trip():
    for two_j in range(9):
        for two_m in range(-two_j, two_j + 1, 2):
            label = SpinLabel(two_j, two_m)
            assert occupation_to_spin(*spin_to_occupation(label)) == label


def test_encode_state_roots_examples():
    assert encode_state_roots(4, 0) == (Sector(5, 4), Sector(5, 0))
    assert encode_state_roots(1, 1) == (Sector(3, 1), Sector(3, 1))
    assert encode_state_roots(0, 0) == (Sector(1, 0), Sector(1, 0))


@pytest.mark.parametrize("two_j", [1, 2, 3, 4, 5, 6])
def test_table_rows_products_are_the_last_root(two_j):
    rows = table_rows(two_j)
    order = two_j + 1
    assert len(rows) == order
    assert [row.spin.two_m for row in rows] == list(range(two_j, -two_j - 1, -2))
    assert all(row.product == Sector(order, order - 1) for row in rows)


def test_table_rows_spin_half_block():
    rows = table_rows(1)
    assert [(r.root_z, r.root_w) for r in rows] == [
        (Sector(2, 1), Sector(2, 0)),
        (Sector(2, 0), Sector(2, 1)),
    ]
    assert [r.monomial_description for r in rows] == ["z", "w"]


def test_table_rows_rejects_zero_spin():
    with pytest.raises(PreconditionError):
        table_rows(0)


def test_oscillator_level_roots_ladder():
    levels = oscillator_level_roots(4, OscillatorConfig(hbar_omega=2.0))
    assert [level.n for level in levels] == [0, 1, 2, 3, 4]
    assert [level.energy for level in levels] == [0.0, 2.0, 4.0, 6.0, 8.0]
    assert [level.root for level in levels] == [Sector(5, n) for n in range(5)]
