import numpy as np
import pytest

from sunburst_battery import (
    ModelSpec,
    battery_energies,
    battery_positions,
    build_batteries,
    build_charger,
    build_coupling,
    build_total,
    ghz_plus,
)
from sunburst_battery.dynamics import battery_ground, compose

SX = np.array([[0.0, 1.0], [1.0, 0.0]])
SZ = np.array([[1.0, 0.0], [0.0, -1.0]])
ID2 = np.eye(2)


def kron_chain(ops):
    out = ops[0]
    for op in ops[1:]:
        out = np.kron(out, op)
    return out


def site_op(op, which, total):
    ops = [ID2] * total
    ops[which] = op
    return kron_chain(ops)


def reference_total(spec):
    """Kronecker-product construction, independent of the bitmask builder.

    Qubit order high-to-low: charger sites 1..L then batteries 1..n,
    matching the documented basis convention.
    """
    total = spec.L + spec.n
    ham = np.zeros((spec.dim, spec.dim))
    for i in range(spec.L):
        ham -= spec.J * site_op(SX, i, total) @ site_op(SX, (i + 1) % spec.L, total)
        ham -= spec.h * site_op(SZ, i, total)
    for b in range(spec.n):
        ham -= spec.delta / 2 * site_op(SZ, spec.L + b, total)
    for b, site in enumerate(battery_positions(spec)):
        ham -= spec.kappa * site_op(SX, site - 1, total) @ site_op(SX, spec.L + b, total)
    return ham


def test_battery_positions_examples():
    assert battery_positions(ModelSpec(11, 1, d=1)) == [1]
    assert battery_positions(ModelSpec(10, 2, d=5)) == [1, 6]
    assert battery_positions(ModelSpec(8, 4, d=2)) == [1, 3, 5, 7]


def test_default_spacing_is_equispaced():
    assert ModelSpec(10, 2).d == 5
    assert ModelSpec(9, 3).d == 3
    assert ModelSpec(8, 4).d == 2
    with pytest.raises(ValueError, match="spacing"):
        ModelSpec(9, 2)


def test_spec_validation():
    with pytest.raises(ValueError):
        ModelSpec(1, 0)
    with pytest.raises(ValueError):
        ModelSpec(4, -1)
    with pytest.raises(ValueError):
        ModelSpec(4, 1, J=0.0)
    with pytest.raises(ValueError):
        ModelSpec(4, 1, h=-0.1)
    with pytest.raises(ValueError):
        ModelSpec(4, 2, d=0)
    with pytest.raises(ValueError, match="do not fit"):
        ModelSpec(4, 3, d=2)


def test_two_site_ring_double_counts_the_bond():
    # both i=1 and i=2 contribute the same sx_1 sx_2 bond on a 2-ring
    spec = ModelSpec(2, 0, J=1.0, h=0.0)
    ground = build_charger(spec).decomposition().eigenvalues[0]
    assert np.isclose(ground, -2.0)


@pytest.mark.parametrize("L,h", [(2, 0.0), (3, 0.5), (4, 0.1), (5, 1.0)])
def test_ghz_charger_energy_is_minus_LJ(L, h):
    spec = ModelSpec(L, 0, J=1.7, h=h)
    state = compose(ghz_plus(L), battery_ground(0))
    energy = np.real(state.conj() @ (build_charger(spec).matrix @ state))
    assert abs(energy + spec.L * spec.J) <= 1e-10


def test_battery_factor_diagonals():
    # battery block diagonal sits in the first 2**n entries (charger index 0)
    spec1 = ModelSpec(2, 1, delta=0.5)
    assert np.allclose(np.diagonal(build_batteries(spec1).matrix)[:2], [-0.25, 0.25])
    spec2 = ModelSpec(4, 2, delta=0.5)
    assert np.allclose(
        np.diagonal(build_batteries(spec2).matrix)[:4], [-0.5, 0.0, 0.0, 0.5]
    )
    assert np.allclose(battery_energies(2, 0.5), [-0.5, 0.0, 0.0, 0.5])


def test_no_batteries_edge_case():
    spec = ModelSpec(3, 0)
    assert not build_batteries(spec).matrix.any()
    assert not build_coupling(spec).matrix.any()
    assert battery_positions(spec) == []
    assert battery_energies(0, 0.5).tolist() == [0.0]


def test_coupling_zero_when_switched_off():
    assert not build_coupling(ModelSpec(3, 1, kappa=0.0)).matrix.any()


def test_coupling_explicit_eight_dim():
    # L=2, n=1: V = -kappa sx_1 (x) 1 (x) Sx, built by hand
    spec = ModelSpec(2, 1, d=1, kappa=1.3)
    expected = -1.3 * kron_chain([SX, ID2, SX])
    assert np.max(np.abs(build_coupling(spec).matrix - expected)) == 0.0


def test_coupling_commutes_with_charger_at_zero_field():
    spec = ModelSpec(4, 2, h=0.0, kappa=2.0)
    h_c = build_charger(spec).matrix
    v = build_coupling(spec).matrix
    assert np.max(np.abs(h_c @ v - v @ h_c)) <= 1e-10
    rest = build_batteries(spec).matrix + v
    assert np.max(np.abs(h_c @ rest - rest @ h_c)) <= 1e-10


def test_total_is_sum_of_parts_and_traceless():
    spec = ModelSpec(3, 2, d=1, h=0.3, delta=0.4, kappa=0.9)
    total = build_total(spec).matrix
    parts = (build_charger(spec).matrix + build_batteries(spec).matrix
             + build_coupling(spec).matrix)
    assert np.max(np.abs(total - parts)) == 0.0
    assert abs(np.trace(total)) <= 1e-12


def test_decoupled_limit_commutes_with_all_local_terms():
    spec = ModelSpec(3, 1, h=0.0, kappa=0.0)
    total = build_total(spec).matrix
    for qubit in range(spec.L):
        op = site_op(SX, qubit, spec.L + spec.n)
        assert np.max(np.abs(total @ op - op @ total)) <= 1e-12
    for qubit in range(spec.L, spec.L + spec.n):
        op = site_op(SZ, qubit, spec.L + spec.n)
        assert np.max(np.abs(total @ op - op @ total)) <= 1e-12


def test_hermiticity_for_random_specs():
    rng = np.random.default_rng(5)
    for _ in range(10):
        spec = ModelSpec(
            int(rng.integers(2, 5)), int(rng.integers(0, 3)), d=1,
            J=float(rng.uniform(0.2, 2)), h=float(rng.uniform(0, 1)),
            delta=float(rng.uniform(0, 1)), kappa=float(rng.uniform(0, 2)),
        )
        m = build_total(spec).matrix
        assert np.max(np.abs(m - m.conj().T)) <= 1e-12


def test_bitmask_builders_match_kronecker_reference():
    rng = np.random.default_rng(11)
    for L, n in ((2, 1), (3, 1), (2, 2), (4, 2), (3, 3)):
        spec = ModelSpec(L, n, d=1, J=float(rng.uniform(0.5, 1.5)),
                         h=float(rng.uniform(0, 1)), delta=float(rng.uniform(0, 1)),
                         kappa=float(rng.uniform(0, 2)))
        assert np.max(np.abs(build_total(spec).matrix - reference_total(spec))) <= 1e-12


def test_battery_spectrum_multiplicities():
    levels = battery_energies(4, 0.6)
    values, counts = np.unique(np.round(levels, 12), return_counts=True)
    assert np.allclose(values, 0.6 * (np.arange(5) - 2.0))
    assert counts.tolist() == [1, 4, 6, 4, 1]
    # symmetric +- pairs
    assert np.allclose(np.sort(levels), -np.sort(-levels)[::-1])


def test_full_scale_dimension_and_tracelessness(heavy):
    spec = ModelSpec(11, 1)
    decomp = heavy.decomposition(spec)
    assert decomp.dim == 4096
    assert np.all(np.diff(decomp.eigenvalues) >= 0)
    # the operator is a sum of Pauli strings, so its trace (= eigenvalue sum)
    # vanishes up to solver roundoff
    assert abs(decomp.eigenvalues.sum()) <= 1e-8


def test_full_scale_spectral_reconstruction_rows(heavy):
    # V Lambda V^dag reproduces the matrix at the working dimension 4096;
    # spot-checked row by row to keep the memory footprint down
    spec = ModelSpec(11, 1)
    decomp = heavy.decomposition(spec)
    matrix = build_total(spec).matrix
    scale = np.max(np.abs(matrix))
    weighted = decomp.eigenvectors * decomp.eigenvalues
    for row in (0, 1, 513, 2048, 4095):
        rebuilt = weighted @ decomp.eigenvectors[row]
        assert np.max(np.abs(rebuilt - matrix[row])) <= 1e-9 * scale


def test_model_spec_from_dict_rejects_unknown_keys():
    with pytest.raises(ValueError, match="unknown model keys"):
        ModelSpec.from_dict({"L": 4, "n": 1, "coupling": 2.0})
    with pytest.raises(ValueError, match="requires"):
        ModelSpec.from_dict({"L": 4})
