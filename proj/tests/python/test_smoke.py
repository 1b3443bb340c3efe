# Copyright 2026 The lspec authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import math

import numpy as np
import pytest

import lspec


def test_two_level_closed_form_spectrum():
    model = lspec.two_level_model(omega=0.5, epsilon=0.5, gamma=1.0)
    liou = lspec.build_liouvillian(model)
    pairs = lspec.full_spectrum(liou)
    values = sorted(p["value"].real for p in pairs)
    root = math.sqrt(0.75)
    expected = sorted([0.0, -1.25 + root, -1.25 - root, -2.5])
    assert np.allclose(values, expected, atol=1e-10)

    rho = lspec.steady_state(liou)
    assert np.allclose(np.diag(rho).real, [0.4, 0.6], atol=1e-10)
    assert abs(np.trace(rho) - 1.0) < 1e-12


def test_gap_and_split():
    model = lspec.two_level_model(omega=0.5, epsilon=0.5, gamma=1.0)
    liou = lspec.build_liouvillian(model)
    gap, im = lspec.liouvillian_gap(liou, k=2)
    assert abs(gap - (1.25 - math.sqrt(0.75))) < 1e-8
    assert abs(im) < 1e-10

    pairs = lspec.leading_spectrum(liou, k=2)
    plus, minus, weight = lspec.hermitian_split(pairs[1]["value"], pairs[1]["right"])
    assert abs(np.trace(plus) - 1.0) < 1e-10
    assert abs(np.trace(minus) - 1.0) < 1e-10
    assert weight > 0


def test_vacuum_steady_state_and_evolution():
    model = lspec.kerr_model(delta=1.0, u=0.5, f=0.0, gamma=1.0, cutoff=8)
    liou = lspec.build_liouvillian(model)
    rho = lspec.steady_state(liou)
    assert abs(rho[0, 0] - 1.0) < 1e-9

    n_op = lspec.number_op(8)
    rho0 = np.zeros((8, 8), dtype=complex)
    rho0[2, 2] = 1.0
    evolved = lspec.evolve_expm(liou, rho0, 8.0)
    assert lspec.expectation(evolved, n_op) < 1e-3
    assert abs(np.trace(evolved) - 1.0) < 1e-9


def test_parity_symmetry_and_sectors():
    model = lspec.two_photon_thermo(delta=-10.0, u=10.0, g=4.0, gamma=1.0, eta=1.0, n=2.0,
                                    cutoff=16)
    liou = lspec.build_liouvillian(model)
    z2 = lspec.number_parity_symmetry(16, 2)
    assert lspec.check_symmetry(liou, z2, 1e-10)
    rho = lspec.steady_state(liou)
    assert lspec.sector_of_operator(z2, rho) == 0

    kerr = lspec.build_liouvillian(lspec.kerr_thermo(10.0, 10.0, 2.0, 1.0, 2.0, cutoff=16))
    assert not lspec.check_symmetry(kerr, z2, 1e-10)


def test_fidelity_and_power_law():
    rho = np.array([[1.0, 0.0], [0.0, 0.0]], dtype=complex)
    mixed = np.eye(2, dtype=complex) / 2.0
    assert abs(lspec.fidelity(rho, mixed) - 1.0 / math.sqrt(2.0)) < 1e-12

    points = [(n, 2.0 + 5.0 * n ** -0.7) for n in (4.0, 6.0, 9.0, 13.0, 18.0)]
    fit = lspec.power_law_fit(points)
    assert abs(fit.exponent - 0.7) < 1e-6
    assert abs(fit.critical_value - 2.0) < 1e-6


def test_scan_smoke():
    records = lspec.scan_two_photon_thermo(delta=-10.0, u=10.0, gamma=1.0, eta=1.0,
                                           g_grid=[3.0, 5.0], n=1.0, k=4, cutoff=14,
                                           threads=1)
    assert [r.status for r in records] == ["ok", "ok"]
    assert all(r.gap >= 0 for r in records)


def test_errors_surface_as_exceptions():
    with pytest.raises(RuntimeError):
        lspec.two_level_model(omega=1.0, epsilon=0.0, gamma=-1.0)
