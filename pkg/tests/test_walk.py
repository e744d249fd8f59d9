import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quditwalk import (
    Distribution,
    DomainError,
    EulerAngles,
    HalfInt,
    Qudit,
    binned_density,
    evolve,
    initial_state,
    position_distribution,
    preset_qudit,
    pseudovelocity_moment,
    step,
)
from quditwalk.coin import rotation_matrix

HADAMARD_LIKE = EulerAngles(0.0, math.pi / 2, 0.0)


# ------------------------------------------------------------------ qudits

def test_qudit_normalizes():
    q = Qudit("1/2", (3.0, 4.0j))
    np.testing.assert_allclose(q.amplitudes, [0.6, 0.8j], atol=1e-15)
    assert q.dim == 2 and q.j == HalfInt(1)


def test_qudit_rejects_bad_vectors():
    with pytest.raises(DomainError):
        Qudit("1/2", (1.0, 0.0, 0.0))  # wrong length
    with pytest.raises(DomainError):
        Qudit("1/2", (0.0, 0.0))  # no direction
    with pytest.raises(DomainError):
        Qudit("1/2", (math.nan, 1.0))


def test_qudit_component_lookup():
    q = Qudit(1, (1.0, 2.0, 3.0))
    assert q.component(1) == q.amplitudes[0]
    assert q.component(-1) == q.amplitudes[2]
    with pytest.raises(DomainError):
        q.component("1/2")


def test_presets():
    up = preset_qudit("up", "3/2")
    assert up.amplitudes[0] == 1.0 and np.all(up.amplitudes[1:] == 0.0)
    sym = preset_qudit("paper-sym", "3/2")
    assert sym.component("3/2") == 0.5 + 0.5j
    assert sym.component("-3/2") == 0.5 - 0.5j
    assert np.all(sym.amplitudes[1:-1] == 0.0)
    fig = preset_qudit("fig1b", "11/2")
    assert np.linalg.norm(fig.amplitudes) == pytest.approx(1.0, abs=1e-15)
    assert fig.component("11/2") == 0.25 + 0.25j
    assert fig.component("9/2") == 0.0
    with pytest.raises(DomainError):
        preset_qudit("fig1b", "3/2")  # fixed 12-component vector
    with pytest.raises(DomainError):
        preset_qudit("sideways", 1)


# ------------------------------------------------------------------- steps

def test_initial_state_sits_at_origin():
    field = initial_state(preset_qudit("up", 2))
    assert field.t == 0 and list(field.positions) == [0]
    assert position_distribution(field).p[0] == 1.0


def test_identity_coin_translates_channels():
    # m = 1/2 drifts one site per step, m = -1/2 the other way
    dist = position_distribution(evolve(preset_qudit("up", "1/2"), EulerAngles(), 5))
    assert dist.p[dist.x == -5][0] == 1.0
    rest = Qudit(1, (0, 1, 0))  # m = 0 does not move
    dist = position_distribution(evolve(rest, EulerAngles(), 7))
    assert dist.p[dist.x == 0][0] == 1.0


def test_single_balanced_step():
    dist = position_distribution(evolve(preset_qudit("up", "1/2"), HADAMARD_LIKE, 1))
    got = dict(zip(dist.x.tolist(), dist.p.tolist()))
    assert got[-1] == pytest.approx(0.5, abs=1e-15)
    assert got[1] == pytest.approx(0.5, abs=1e-15)


def test_support_and_parity():
    t, tj = 9, 5
    field = evolve(preset_qudit("paper-sym", HalfInt(tj)), HADAMARD_LIKE, t)
    assert field.positions.min() == -tj * t and field.positions.max() == tj * t
    assert np.all((field.positions - tj * t) % 2 == 0)


def test_norm_conserved_long_run():
    field = evolve(preset_qudit("paper-sym", HalfInt(11)), EulerAngles(0, math.pi / 2, math.pi), 200)
    total = position_distribution(field).p.sum()
    assert abs(total - 1.0) < 1e-10 * 201


def test_reflection_symmetric_state_stays_symmetric():
    dist = position_distribution(evolve(preset_qudit("paper-sym", HalfInt(11)), HADAMARD_LIKE, 60))
    assert float(np.abs(dist.p - dist.p[::-1]).max()) < 1e-12


def test_step_validates_coin_shape():
    field = initial_state(preset_qudit("up", 1))
    with pytest.raises(DomainError):
        step(field, rotation_matrix("1/2", HADAMARD_LIKE))


def test_evolve_validates_t():
    q = preset_qudit("up", "1/2")
    for bad in (-1, 2.5):
        with pytest.raises(DomainError):
            evolve(q, HADAMARD_LIKE, bad)


@settings(deadline=None, max_examples=20)
@given(st.integers(1, 8), st.integers(0, 12))
def test_norm_preserved_for_random_qudits(tj, t):
    rng = np.random.default_rng(13 * tj + t)
    q = Qudit(HalfInt(tj), rng.normal(size=tj + 1) + 1j * rng.normal(size=tj + 1))
    dist = position_distribution(evolve(q, EulerAngles(0.3, 1.2, -0.5), t))
    assert dist.p.sum() == pytest.approx(1.0, abs=1e-12)


# ----------------------------------------------------------------- moments

def test_moment_basics():
    dist = position_distribution(evolve(preset_qudit("up", "1/2"), HADAMARD_LIKE, 1))
    assert pseudovelocity_moment(dist, 1, 0) == pytest.approx(1.0, abs=1e-15)
    assert pseudovelocity_moment(dist, 1, 2) == pytest.approx(1.0, abs=1e-15)
    sym = position_distribution(evolve(preset_qudit("paper-sym", "1/2"), HADAMARD_LIKE, 30))
    assert pseudovelocity_moment(sym, 30, 1) == pytest.approx(0.0, abs=1e-14)
    with pytest.raises(DomainError):
        pseudovelocity_moment(dist, 0, 2)


# ----------------------------------------------------------------- binning

def test_binning_conserves_mass_and_centers_zero():
    q = preset_qudit("paper-sym", HalfInt(11))
    dist = position_distribution(evolve(q, EulerAngles(0, math.pi / 2, math.pi), 40))
    b = binned_density(dist, 40, 0.05)
    assert b.masses.sum() == pytest.approx(1.0, abs=1e-12)
    assert b.centers[b.centers.size // 2] == 0.0
    assert np.all(np.diff(b.edges) > 0)
    assert b.edges.size == b.centers.size + 1


def test_binning_spreads_sites_over_lattice_cells():
    # a site is a lattice cell two units wide, not a point: mass 1 at x = 0
    # with t = 10 covers v in [-0.1, 0.1), i.e. density 5 across the middle
    # three bins of width 0.05 and 2.5 on the two half-covered ones
    dist = Distribution(np.array([0]), np.array([1.0]))
    b = binned_density(dist, 10, 0.05)
    k0 = int(np.flatnonzero(b.centers == 0.0)[0])
    np.testing.assert_allclose(b.density[k0 - 1 : k0 + 2], [5.0, 5.0, 5.0], atol=1e-12)
    np.testing.assert_allclose(
        [b.density[k0 - 2], b.density[k0 + 2]], [2.5, 2.5], atol=1e-12
    )
    assert b.masses.sum() == pytest.approx(1.0, abs=1e-15)


def test_binning_v_max_pads_the_range():
    dist = Distribution(np.array([0]), np.array([1.0]))
    b = binned_density(dist, 10, 0.05, v_max=1.0)
    assert b.centers[-1] >= 1.0 - 0.025
    assert b.centers[0] == -b.centers[-1]


def test_binning_validates_arguments():
    dist = Distribution(np.array([0]), np.array([1.0]))
    with pytest.raises(DomainError):
        binned_density(dist, 0, 0.05)
    for bad_width in (0.0, -0.1, math.inf):
        with pytest.raises(DomainError):
            binned_density(dist, 10, bad_width)
