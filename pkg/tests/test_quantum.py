import json
import random
from fractions import Fraction

import numpy as np
import pytest

from majlat.approx import post_majorizes, pre_majorizes
from majlat.balls import lp_distance
from majlat.core import uniform
from majlat.errors import DimensionMismatch, NotDensityMatrix, NotHermitian, TooLarge, UnsupportedNorm
from majlat.lattice import majorizes
from majlat.oracle import random_prob_vector
from majlat.quantum import (
    HermitianMatrix,
    approx_convertible,
    conjugate,
    embed,
    exact_convertible,
    jacobi_eigh,
    random_density_matrix,
    random_hermitian,
    random_unitary,
    schatten_distance,
    spectrum,
)

from conftest import vec


def rotated(values, gen):
    return embed(vec(*values) if not hasattr(values, "entries") else values, random_unitary(len(values), gen))


def test_spectrum_of_diagonal():
    s = spectrum(HermitianMatrix.diag(["0.7", "0.2", "0.1"]))
    assert s.values == vec("0.7", "0.2", "0.1")


def test_spectrum_of_unsorted_diagonal():
    assert spectrum(HermitianMatrix.diag(["0.1", "0.7", "0.2"])).values == vec("0.7", "0.2", "0.1")


def test_spectrum_of_maximally_mixed():
    assert spectrum(HermitianMatrix.diag([Fraction(1, 4)] * 4)).values == uniform(4)
    assert spectrum(HermitianMatrix(np.eye(5) / 5)).values == uniform(5)


def test_spectrum_of_projector():
    h = HermitianMatrix.from_rational([["1/2", "1/2"], ["1/2", "1/2"]])
    s = spectrum(h)
    assert s.values == vec(1, 0)
    v = s.basis[:, 0]
    assert abs(abs(v[0]) - abs(v[1])) < 1e-12


def test_spectrum_recovers_rational_eigenvalues():
    gen = np.random.default_rng(1)
    rng = random.Random(1)
    for d in range(1, 9):
        p = random_prob_vector(d, rng)
        assert spectrum(rotated(p, gen)).values == p


def test_spectrum_errors():
    with pytest.raises(NotHermitian):
        HermitianMatrix(np.array([[0.5, 0.1], [0.2, 0.5]]))
    with pytest.raises(NotHermitian):
        HermitianMatrix.from_rational([[1, "1/3"], ["1/4", 0]])
    with pytest.raises(NotDensityMatrix):
        spectrum(HermitianMatrix.diag(["0.5", "0.4"]))
    with pytest.raises(NotDensityMatrix):
        spectrum(HermitianMatrix(np.array([[1.2, 0.0], [0.0, -0.2]])))
    with pytest.raises(NotDensityMatrix):
        spectrum(HermitianMatrix.from_rational([["1/2", 1], [1, "1/2"]]))
    with pytest.raises(TooLarge):
        HermitianMatrix(np.eye(33) / 33)


def test_matrix_json_round_trip():
    h = HermitianMatrix.from_rational([["1/2", "1/4"], ["1/4", "1/2"]], [[0, "1/8"], ["-1/8", 0]])
    back = HermitianMatrix.from_json(json.dumps(h.to_dict()))
    assert back.exact == h.exact
    f = HermitianMatrix.from_dict({"re": [[0.5, 0.0], [0.0, 0.5]]})
    assert f.exact is None and np.allclose(f.array, np.eye(2) / 2)


@pytest.mark.parametrize("d", range(1, 9))
def test_jacobi_matches_eigh(d):
    gen = np.random.default_rng(d)
    for _ in range(10):
        h = random_hermitian(d, gen).array
        vals, vecs = jacobi_eigh(h)
        assert np.allclose(vals, np.sort(np.linalg.eigvalsh(h))[::-1], atol=1e-10)
        assert np.all(np.diff(vals) <= 0)
        assert np.allclose(vecs.conj().T @ vecs, np.eye(d), atol=1e-10)
        assert np.allclose(h @ vecs, vecs * vals, atol=1e-9)


def test_jacobi_degenerate_spectrum():
    gen = np.random.default_rng(4)
    U = random_unitary(4, gen)
    h = (U * np.array([0.4, 0.4, 0.1, 0.1])) @ U.conj().T
    vals, vecs = jacobi_eigh(h)
    assert np.allclose(vals, [0.4, 0.4, 0.1, 0.1], atol=1e-12)
    assert np.allclose(h @ vecs, vecs * vals, atol=1e-10)


def test_exact_convertible_examples():
    gen = np.random.default_rng(2)
    rho = random_density_matrix(3, gen)
    mixed = HermitianMatrix.diag([Fraction(1, 3)] * 3)
    assert exact_convertible(rho, mixed)
    assert not exact_convertible(mixed, HermitianMatrix.diag(["0.5", "0.3", "0.2"]))
    a, b = HermitianMatrix.diag(["0.7", "0.2", "0.1"]), HermitianMatrix.diag(["0.6", "0.35", "0.05"])
    assert not exact_convertible(a, b) and not exact_convertible(b, a)
    with pytest.raises(DimensionMismatch):
        exact_convertible(mixed, HermitianMatrix.diag(["0.5", "0.5"]))


def test_schatten_distance_values():
    a = HermitianMatrix.diag([Fraction(1, 3)] * 3)
    b = HermitianMatrix.diag(["1/2", "1/4", "1/4"])
    assert schatten_distance(a, b, "inf") == pytest.approx(1 / 6, abs=1e-14)
    assert schatten_distance(a, b, 1) == pytest.approx(1 / 3, abs=1e-14)
    assert schatten_distance(a, b, 2) == pytest.approx((1 / 36 + 2 / 144) ** 0.5, abs=1e-14)
    for p in (1, 2, "inf"):
        assert schatten_distance(a, a, p) == 0
    with pytest.raises(UnsupportedNorm):
        schatten_distance(a, b, 3)


def test_schatten_of_commuting_states_is_classical():
    gen = np.random.default_rng(3)
    rng = random.Random(3)
    U = random_unitary(4, gen)
    for _ in range(20):
        p, q = random_prob_vector(4, rng), random_prob_vector(4, rng)
        # unsorted diagonals: the commuting difference is diag(p - q) in the same basis
        q_perm = tuple(reversed(q.entries))
        rho, sigma = embed(p, U), HermitianMatrix((U * np.array([float(v) for v in q_perm])) @ U.conj().T)
        diff = [float(a - b) for a, b in zip(p.entries, q_perm)]
        assert schatten_distance(rho, sigma, "inf") == pytest.approx(max(map(abs, diff)), abs=1e-12)
        assert schatten_distance(rho, sigma, 1) == pytest.approx(sum(map(abs, diff)), abs=1e-12)


def test_lidskii():
    gen = np.random.default_rng(12)
    for _ in range(100):
        d = int(gen.integers(1, 9))
        a, b = random_hermitian(d, gen), random_hermitian(d, gen)
        la, lb = jacobi_eigh(a.array)[0], jacobi_eigh(b.array)[0]
        diff = np.abs(la - lb)
        assert diff.max() <= schatten_distance(a, b, "inf") + 1e-9
        assert diff.sum() <= schatten_distance(a, b, 1) + 1e-9
        assert np.sqrt(np.sum(diff**2)) <= schatten_distance(a, b, 2) + 1e-9


def test_lidskii_on_states_with_exact_spectra():
    gen = np.random.default_rng(13)
    for _ in range(30):
        d = int(gen.integers(2, 6))
        rho, sigma = random_density_matrix(d, gen), random_density_matrix(d, gen)
        sr, ss = spectrum(rho), spectrum(sigma)
        gap = float(lp_distance(sr.values, ss.values, "inf"))
        assert gap <= schatten_distance(rho, sigma, "inf") + 1e-6


def test_convertible_example():
    gen = np.random.default_rng(5)
    rho = rotated(("7/13", "4/13", "2/13", 0), gen)
    sigma = rotated(("4/7", "3/7", 0, 0), gen)
    r = approx_convertible(rho, sigma, Fraction(1, 10))
    assert r.verdict
    assert r.report.witness == vec("33/70", "23/70", "1/10", "1/10")
    assert not approx_convertible(rho, sigma, Fraction(1, 10), "pre").verdict
    assert r.to_dict()["verdict"] is True


def test_witness_state_is_valid():
    gen = np.random.default_rng(6)
    rng = random.Random(6)
    found = 0
    for _ in range(60):
        d = rng.randint(2, 5)
        p, q = random_prob_vector(d, rng), random_prob_vector(d, rng)
        rho, sigma = rotated(p, gen), rotated(q, gen)
        eps = Fraction(rng.randint(1, 20), 60)
        for direction, norm in (("post", "inf"), ("pre", "inf"), ("post", "l1"), ("pre", "l1")):
            r = approx_convertible(rho, sigma, eps, direction, norm)
            if not r.verdict:
                continue
            found += 1
            w = r.witness_state.array
            assert np.allclose(w, w.conj().T)
            assert abs(np.trace(w) - 1) < 1e-10
            assert np.linalg.eigvalsh(w).min() > -1e-10
            fixed = sigma if direction == "post" else rho
            dist = schatten_distance(r.witness_state, fixed, "inf" if norm == "inf" else 1)
            assert dist <= float(eps) + 1e-9
            if direction == "post":
                assert exact_convertible(rho, r.witness_state)
            else:
                assert exact_convertible(r.witness_state, sigma)
    assert found > 20


def test_basis_invariance():
    gen = np.random.default_rng(7)
    rng = random.Random(7)
    for _ in range(40):
        d = rng.randint(2, 6)
        p, q = random_prob_vector(d, rng), random_prob_vector(d, rng)
        eps = Fraction(rng.randint(1, 20), 60)
        base = post_majorizes(p, q, eps).verdict, pre_majorizes(p, q, eps).verdict
        rho, sigma = rotated(p, gen), rotated(q, gen)
        rho2, sigma2 = conjugate(rho, random_unitary(d, gen)), conjugate(sigma, random_unitary(d, gen))
        for a, b in ((rho, sigma), (rho2, sigma2)):
            got = approx_convertible(a, b, eps).verdict, approx_convertible(a, b, eps, "pre").verdict
            assert got == base


def test_diagonal_states_match_classical_exactly():
    rng = random.Random(8)
    for _ in range(50):
        d = rng.randint(2, 6)
        p, q = random_prob_vector(d, rng), random_prob_vector(d, rng)
        eps = Fraction(rng.randint(1, 20), 60)
        rho, sigma = HermitianMatrix.diag(p.entries), HermitianMatrix.diag(q.entries)
        for norm in ("inf", "l1"):
            r = approx_convertible(rho, sigma, eps, "post", norm)
            c = post_majorizes(p, q, eps, norm)
            assert r.report == c
            if r.verdict:
                assert r.witness_state.exact is not None


def test_zero_eps_is_exact_conversion():
    gen = np.random.default_rng(9)
    for _ in range(20):
        rho, sigma = random_density_matrix(3, gen), random_density_matrix(3, gen)
        assert approx_convertible(rho, sigma, 0).verdict == exact_convertible(rho, sigma)


def test_anything_reaches_maximally_mixed():
    gen = np.random.default_rng(10)
    mixed = HermitianMatrix.diag([Fraction(1, 4)] * 4)
    r = approx_convertible(random_density_matrix(4, gen), mixed, Fraction(1, 100))
    assert r.verdict
    assert np.allclose(r.witness_state.array, np.eye(4) / 4)


def test_p2_rejected():
    a = HermitianMatrix.diag(["1/2", "1/2"])
    with pytest.raises(UnsupportedNorm):
        approx_convertible(a, a, Fraction(1, 10), "post", "l2")


def test_majorizes_spectra_of_unitary_orbit():
    gen = np.random.default_rng(11)
    rho = random_density_matrix(4, gen)
    assert majorizes(spectrum(rho).values, spectrum(conjugate(rho, random_unitary(4, gen))).values)
