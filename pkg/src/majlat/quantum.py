"""Nonuniformity conversion between density matrices via spectral majorization.

A state converts to another under unital operations iff its spectrum
majorizes the other's, and the approximate versions reduce the same way, so
everything here is: diagonalize, exactify the spectrum, ask :mod:`approx`.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from .approx import ApproxReport, Relation, post_majorizes, pre_majorizes
from .balls import Norm, parse_norm
from .core import ProbVector, format_scalar, to_scalar
from .errors import DimensionMismatch, NotDensityMatrix, NotHermitian, TooLarge, UnsupportedNorm
from .lattice import majorizes

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-10
PSD_TOL = 1e-10
JACOBI_TOL = 1e-14
JACOBI_MAX_SWEEPS = 100
MAX_DIM = 32
EXACT_MAX_DEN = 10**6


@dataclass(frozen=True, eq=False)
class HermitianMatrix:
    """A square complex matrix, optionally carrying exact rational entries.

    ``exact`` holds ``(re, im)`` as nested tuples of Fractions when the matrix
    was built from rationals; the Hermitian check is then exact.
    """

    array: np.ndarray
    exact: Optional[tuple] = field(default=None, repr=False)

    def __post_init__(self):
        a = np.array(self.array, dtype=complex)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
            raise NotHermitian(f"expected a non-empty square matrix, got shape {a.shape}")
        if a.shape[0] > MAX_DIM:
            raise TooLarge(f"matrices are limited to d <= {MAX_DIM}", d=a.shape[0])
        a.setflags(write=False)
        object.__setattr__(self, "array", a)
        if self.exact is not None:
            re, im = self.exact
            d = a.shape[0]
            for i in range(d):
                for j in range(d):
                    if re[i][j] != re[j][i] or im[i][j] != -im[j][i]:
                        raise NotHermitian(f"entry ({i}, {j}) breaks Hermitian symmetry", row=i, col=j)
        else:
            dev = float(np.max(np.abs(a - a.conj().T)))
            if dev > HERMITIAN_TOL:
                raise NotHermitian(f"deviation from Hermitian is {dev:.3e}", deviation=dev)

    @property
    def d(self) -> int:
        return self.array.shape[0]

    @classmethod
    def from_rational(cls, re, im=None) -> "HermitianMatrix":
        re = tuple(tuple(to_scalar(v) for v in row) for row in re)
        d = len(re)
        if im is None:
            im = tuple(tuple(Fraction(0) for _ in range(d)) for _ in range(d))
        else:
            im = tuple(tuple(to_scalar(v) for v in row) for row in im)
        arr = np.array([[complex(float(a), float(b)) for a, b in zip(r, i)] for r, i in zip(re, im)])
        return cls(arr, (re, im))

    @classmethod
    def diag(cls, values) -> "HermitianMatrix":
        vals = [to_scalar(v) for v in values]
        d = len(vals)
        re = [[vals[i] if i == j else Fraction(0) for j in range(d)] for i in range(d)]
        return cls.from_rational(re)

    @classmethod
    def from_dict(cls, payload: dict) -> "HermitianMatrix":
        re = payload["re"]
        im = payload.get("im")
        cells = [v for row in re for v in row] + ([v for row in im for v in row] if im else [])
        if not any(isinstance(v, float) for v in cells):
            return cls.from_rational(re, im)
        arr = np.array(re, dtype=float).astype(complex)
        if im is not None:
            arr = arr + 1j * np.array(im, dtype=float)
        return cls(arr)

    @classmethod
    def from_json(cls, text: str) -> "HermitianMatrix":
        return cls.from_dict(json.loads(text))

    def to_dict(self) -> dict:
        if self.exact is not None:
            re, im = self.exact
            return {
                "re": [[format_scalar(v) for v in row] for row in re],
                "im": [[format_scalar(v) for v in row] for row in im],
            }
        return {"re": self.array.real.tolist(), "im": self.array.imag.tolist()}

    def is_diagonal_exact(self) -> bool:
        if self.exact is None:
            return False
        re, im = self.exact
        d = self.d
        return all(
            (i == j and im[i][j] == 0) or (i != j and re[i][j] == 0 and im[i][j] == 0)
            for i in range(d)
            for j in range(d)
        )


def jacobi_eigh(h: np.ndarray, tol: float = JACOBI_TOL, max_sweeps: int = JACOBI_MAX_SWEEPS):
    """Eigenvalues (descending) and orthonormal eigenvectors of a Hermitian matrix.

    Runs cyclic Jacobi on the real symmetric embedding ``[[A, -B], [B, A]]``
    of ``H = A + iB``. Every eigenvalue appears twice there; each doubled
    eigenspace is folded back to a complex one with an SVD.
    """
    h = np.array(h, dtype=complex)
    d = h.shape[0]
    A, B = h.real, h.imag
    S = np.block([[A, -B], [B, A]])
    S = (S + S.T) / 2
    n = 2 * d
    V = np.eye(n)
    scale = max(1.0, float(np.linalg.norm(S)))
    for _ in range(max_sweeps):
        off = float(np.linalg.norm(S - np.diag(np.diag(S))))
        if off < tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = S[p, q]
                if abs(apq) < 1e-300:
                    continue
                theta = (S[q, q] - S[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                sp, sq = S[p, :].copy(), S[q, :].copy()
                S[p, :] = c * sp - s * sq
                S[q, :] = s * sp + c * sq
                sp, sq = S[:, p].copy(), S[:, q].copy()
                S[:, p] = c * sp - s * sq
                S[:, q] = s * sp + c * sq
                vp, vq = V[:, p].copy(), V[:, q].copy()
                V[:, p] = c * vp - s * vq
                V[:, q] = s * vp + c * vq
    vals = np.diag(S).copy()
    # descending value, ties by original index
    order = sorted(range(n), key=lambda i: (-vals[i], i))
    vals, V = vals[order], V[:, order]
    eigvals = np.array([(vals[2 * i] + vals[2 * i + 1]) / 2 for i in range(d)])
    cplx = V[:d, :] + 1j * V[d:, :]
    vecs = np.zeros((d, d), dtype=complex)
    i = 0
    while i < n:
        j = i + 1
        while j < n and abs(vals[j] - vals[j - 1]) < 1e-9 * scale:
            j += 1
        k = (j - i) // 2
        u, _, _ = np.linalg.svd(cplx[:, i:j], full_matrices=False)
        vecs[:, i // 2 : i // 2 + k] = u[:, :k]
        i = j
    return eigvals, vecs


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Exactified eigenvalues plus the float data they came from."""

    values: ProbVector
    floats: tuple
    basis: np.ndarray = field(repr=False)

    def to_dict(self) -> dict:
        return {"entries": self.values.to_dict()["entries"], "float": list(self.floats)}


def _exactify(vals) -> ProbVector:
    approx = [Fraction(float(v)).limit_denominator(EXACT_MAX_DEN) for v in vals]
    total = sum(approx, Fraction(0))
    approx = sorted((v / total for v in approx), reverse=True)
    return ProbVector(tuple(approx))


def spectrum(rho: HermitianMatrix) -> Spectrum:
    """Non-increasing eigenvalues of a density matrix as an exact ProbVector."""
    if rho.is_diagonal_exact():
        re = rho.exact[0]
        diag = [re[i][i] for i in range(rho.d)]
        if any(v < 0 for v in diag) or sum(diag, Fraction(0)) != 1:
            raise NotDensityMatrix("diagonal is not a probability vector")
        order = sorted(range(rho.d), key=lambda i: (-diag[i], i))
        basis = np.eye(rho.d, dtype=complex)[:, order]
        vals = tuple(diag[i] for i in order)
        return Spectrum(ProbVector(vals), tuple(float(v) for v in vals), basis)
    tr = complex(np.trace(rho.array))
    if abs(tr - 1) > TRACE_TOL:
        raise NotDensityMatrix(f"trace is {tr.real:.12g}, expected 1", trace=tr.real)
    vals, vecs = jacobi_eigh(rho.array)
    if vals[-1] < -PSD_TOL:
        raise NotDensityMatrix(f"eigenvalue {vals[-1]:.3e} is negative", eigenvalue=float(vals[-1]))
    clipped = np.clip(vals, 0.0, 1.0)
    clipped = clipped / clipped.sum()
    return Spectrum(_exactify(clipped), tuple(float(v) for v in clipped), vecs)


def _same_dim(rho, sigma):
    if rho.d != sigma.d:
        raise DimensionMismatch(f"dimensions {rho.d} and {sigma.d} differ", d_rho=rho.d, d_sigma=sigma.d)


def exact_convertible(rho: HermitianMatrix, sigma: HermitianMatrix) -> bool:
    _same_dim(rho, sigma)
    return majorizes(spectrum(rho).values, spectrum(sigma).values)


def schatten_distance(rho: HermitianMatrix, sigma: HermitianMatrix, p) -> float:
    """``||rho - sigma||_p`` for p in {1, 2, inf}, computed in floating point."""
    _same_dim(rho, sigma)
    if p in ("inf", "linf", math.inf):
        p = math.inf
    elif p in (1, "1", "l1"):
        p = 1
    elif p in (2, "2", "l2"):
        p = 2
    else:
        raise UnsupportedNorm(f"Schatten p={p} is not supported", p=str(p))
    vals, _ = jacobi_eigh(rho.array - sigma.array)
    a = np.abs(vals)
    if p == math.inf:
        return float(a.max())
    if p == 1:
        return float(a.sum())
    return float(math.sqrt(float(np.sum(a * a))))


def embed(vector: ProbVector, basis: np.ndarray) -> HermitianMatrix:
    """The state ``U diag(vector) U^dagger`` for a unitary ``basis``."""
    if not np.allclose(basis, np.eye(len(vector))):
        w = np.array(vector.to_floats())
        return HermitianMatrix((basis * w) @ basis.conj().T)
    return HermitianMatrix.diag(vector.entries)


@dataclass(frozen=True, eq=False)
class ConversionReport:
    report: ApproxReport
    spectrum_rho: Spectrum
    spectrum_sigma: Spectrum
    witness_state: Optional[HermitianMatrix] = None

    @property
    def verdict(self) -> bool:
        return self.report.verdict

    def to_dict(self) -> dict:
        out = self.report.to_dict()
        out["spectrum_rho"] = self.spectrum_rho.to_dict()
        out["spectrum_sigma"] = self.spectrum_sigma.to_dict()
        out["witness_state"] = None if self.witness_state is None else self.witness_state.to_dict()
        return out


def approx_convertible(rho: HermitianMatrix, sigma: HermitianMatrix, eps, direction="post", norm="inf") -> ConversionReport:
    """Approximate conversion of rho into sigma under Schatten-1 or Schatten-inf.

    The witness state is diagonal in the eigenbasis of the state that stays
    fixed: sigma's for post, rho's for pre.
    """
    _same_dim(rho, sigma)
    norm = parse_norm(norm)
    if norm is Norm.L2:
        raise UnsupportedNorm("conversion queries need p = 1 or p = inf; p = 2 balls have no extremes", norm="l2")
    relation = Relation(direction) if not isinstance(direction, Relation) else direction
    sr, ss = spectrum(rho), spectrum(sigma)
    if relation is Relation.POST:
        report = post_majorizes(sr.values, ss.values, eps, norm)
        basis = ss.basis
    else:
        report = pre_majorizes(sr.values, ss.values, eps, norm)
        basis = sr.basis
    witness = embed(report.witness, basis) if report.verdict else None
    return ConversionReport(report, sr, ss, witness)


def random_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unitary from the QR of a complex Gaussian matrix."""
    z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / math.sqrt(2)
    q, r = np.linalg.qr(z)
    ph = np.diag(r) / np.abs(np.diag(r))
    return q * ph


def random_density_matrix(d: int, rng: np.random.Generator, rank: Optional[int] = None) -> HermitianMatrix:
    rank = d if rank is None else rank
    g = rng.standard_normal((d, rank)) + 1j * rng.standard_normal((d, rank))
    rho = g @ g.conj().T
    rho = (rho + rho.conj().T) / 2
    return HermitianMatrix(rho / np.trace(rho).real)


def random_hermitian(d: int, rng: np.random.Generator) -> HermitianMatrix:
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return HermitianMatrix((g + g.conj().T) / 2)


def conjugate(rho: HermitianMatrix, U: np.ndarray) -> HermitianMatrix:
    m = U @ rho.array @ U.conj().T
    return HermitianMatrix((m + m.conj().T) / 2)
