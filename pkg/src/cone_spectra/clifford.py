"""Real Clifford algebra Cl(0, m), spin-group elements and half-spin characters.

Conventions used throughout the package:

* negative-definite signature, e_i**2 = -1 and e_i e_j = -e_j e_i for i != j;
* basis elements are indexed by subsets of {0, ..., m-1} encoded as bit
  patterns, so a multivector is a length-2^m real coefficient vector;
* Spin(m) sits inside the even subalgebra, normalised by s * rev(s) = 1;
* the chirality operator of the complex spinor representation (m even) is
  gamma = i^(m/2) e_1 ... e_m, and chi_+/chi_- are the traces on its +1/-1
  eigenspaces.

The gamma convention fixes the labelling of the two half-spin characters.
Swapping the label of the eigenspaces swaps (chi_+, chi_-) everywhere; all
downstream spectra are reported per chirality so the swap is harmless but
documented here once.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.linalg import schur

MAT_TOL = 1e-10    # orthogonal-matrix equality tolerance
COEFF_TOL = 1e-9   # multivector coefficient tolerance
MAX_DIM = 10       # matrix representation capped at m = 10


def _popcount(n):
    return bin(n).count("1")


@lru_cache(maxsize=MAX_DIM + 1)
def _cayley(m):
    """Index and sign tables of the geometric product on Cl(0, m).

    e_I * e_J = sign(I, J) * e_{I xor J}; the sign counts transpositions
    needed to interleave the two index sets plus one factor -1 per common
    index (from e_i**2 = -1).
    """
    dim = 1 << m
    idx = np.zeros((dim, dim), dtype=np.int64)
    sgn = np.zeros((dim, dim), dtype=np.float64)
    for a in range(dim):
        bits_a = [i for i in range(m) if a >> i & 1]
        for b in range(dim):
            inversions = 0
            for j in range(m):
                if b >> j & 1:
                    inversions += sum(1 for i in bits_a if i > j)
            # each common index contributes e_i^2 = -1
            common = _popcount(a & b)
            s = -1.0 if (inversions + common) % 2 else 1.0
            idx[a, b] = a ^ b
            sgn[a, b] = s
    return idx, sgn


@lru_cache(maxsize=MAX_DIM + 1)
def _cayley_dense(m):
    """Dense product tensor C with (x*y)_k = sum_ij x_i y_j C[i,j,k]."""
    idx, sgn = _cayley(m)
    dim = 1 << m
    C = np.zeros((dim, dim, dim))
    rows = np.repeat(np.arange(dim), dim)
    cols = np.tile(np.arange(dim), dim)
    C[rows, cols, idx.ravel()] = sgn.ravel()
    return C


@lru_cache(maxsize=MAX_DIM + 1)
def _grades(m):
    return np.array([_popcount(i) for i in range(1 << m)], dtype=np.int64)


@lru_cache(maxsize=MAX_DIM + 1)
def _reversal_signs(m):
    """rev(e_{i1}..e_{ik}) = (-1)^{k(k-1)/2} e_{i1}..e_{ik}."""
    g = _grades(m)
    return np.where((g * (g - 1) // 2) % 2 == 1, -1.0, 1.0)


@dataclass(frozen=True)
class Multivector:
    """Element of Cl(0, m) as a dense coefficient vector over bit-subsets."""

    m: int
    coeffs: np.ndarray

    def __post_init__(self):
        if not (2 <= self.m <= MAX_DIM):
            raise ValueError(f"ambient dimension m={self.m} outside [2, {MAX_DIM}]")
        c = np.asarray(self.coeffs, dtype=np.float64)
        if c.shape != (1 << self.m,):
            raise ValueError(f"coefficient vector must have length 2^{self.m}")
        object.__setattr__(self, "coeffs", c)

    # --- constructors -----------------------------------------------------
    @staticmethod
    def scalar(m, value=1.0):
        c = np.zeros(1 << m)
        c[0] = value
        return Multivector(m, c)

    @staticmethod
    def basis_vector(m, i):
        """e_{i+1} in 1-based paper notation; i is 0-based here."""
        if not 0 <= i < m:
            raise ValueError(f"basis index {i} outside range(0, {m})")
        c = np.zeros(1 << m)
        c[1 << i] = 1.0
        return Multivector(m, c)

    @staticmethod
    def from_vector(v):
        v = np.asarray(v, dtype=np.float64)
        m = v.shape[0]
        c = np.zeros(1 << m)
        for i in range(m):
            c[1 << i] = v[i]
        return Multivector(m, c)

    # --- arithmetic -------------------------------------------------------
    def __mul__(self, other):
        if isinstance(other, (int, float)):
            return Multivector(self.m, self.coeffs * other)
        if other.m != self.m:
            raise ValueError(f"dimension mismatch: Cl({self.m}) vs Cl({other.m})")
        idx, sgn = _cayley(self.m)
        out = np.zeros_like(self.coeffs)
        nz_a = np.nonzero(self.coeffs)[0]
        for a in nz_a:
            np.add.at(out, idx[a], self.coeffs[a] * sgn[a] * other.coeffs)
        return Multivector(self.m, out)

    __rmul__ = __mul__

    def __add__(self, other):
        if other.m != self.m:
            raise ValueError("dimension mismatch")
        return Multivector(self.m, self.coeffs + other.coeffs)

    def __sub__(self, other):
        if other.m != self.m:
            raise ValueError("dimension mismatch")
        return Multivector(self.m, self.coeffs - other.coeffs)

    def __neg__(self):
        return Multivector(self.m, -self.coeffs)

    def reverse(self):
        return Multivector(self.m, self.coeffs * _reversal_signs(self.m))

    def grade_part(self, k):
        mask = _grades(self.m) == k
        return Multivector(self.m, np.where(mask, self.coeffs, 0.0))

    def is_even(self, tol=COEFF_TOL):
        odd = _grades(self.m) % 2 == 1
        return float(np.max(np.abs(self.coeffs[odd]), initial=0.0)) < tol

    def vector_part(self):
        return np.array([self.coeffs[1 << i] for i in range(self.m)])

    def norm_inf(self):
        return float(np.max(np.abs(self.coeffs)))

    def close_to(self, other, tol=COEFF_TOL):
        return float(np.max(np.abs(self.coeffs - other.coeffs))) < tol

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if abs(c) > 1e-14:
                name = "1" if i == 0 else "".join(
                    f"e{j + 1}" for j in range(self.m) if i >> j & 1)
                terms.append(f"{c:+.6g}*{name}")
        return f"Multivector({self.m}, {' '.join(terms) or '0'})"


def clifford_product(a, b):
    """Geometric product on Cl(0, m); raises on dimension mismatch."""
    return a * b


def is_spin_element(s, tol=COEFF_TOL):
    """s lies in Spin(m): even grade and s * rev(s) = 1."""
    if not s.is_even(tol):
        return False
    return (s * s.reverse()).close_to(Multivector.scalar(s.m), tol)


def adjoint_matrix(s):
    """SO(m) matrix of Ad(s): e_i -> s e_i rev(s), columns are the images."""
    m = s.m
    sr = s.reverse()
    cols = []
    for i in range(m):
        img = s * Multivector.basis_vector(m, i) * sr
        cols.append(img.vector_part())
    return np.array(cols).T


def spin_lift(g, branch=+1, tol=MAT_TOL):
    """Lift g in SO(m) (m even) to s in Spin(m) with Ad(s) = g.

    Real Schur factorisation splits g into 2x2 rotation blocks in an
    orthonormal adapted frame; the lift is the product of the half-angle
    rotors cos(theta/2) + sin(theta/2) f_a f_b over the blocks.  Eigenvalue
    -1 pairs are treated as angle-pi blocks in the plane of their (first
    canonical) Schur vectors, which makes the output reproducible.  The two
    lifts differ by a global sign selected with `branch`.
    """
    g = np.asarray(g, dtype=np.float64)
    m = g.shape[0]
    if g.shape != (m, m):
        raise ValueError("expected a square matrix")
    if m % 2 != 0:
        raise ValueError("spin lift implemented for even m only")
    if np.max(np.abs(g.T @ g - np.eye(m))) > tol:
        raise ValueError("matrix is not orthogonal to tolerance")
    if np.linalg.det(g) < 0:
        raise ValueError("matrix has det = -1, not in SO(m)")

    T, Z = schur(g, output="real")
    s = Multivector.scalar(m)
    i = 0
    minus_frames = []
    while i < m:
        if i + 1 < m and abs(T[i + 1, i]) > 1e-12:
            theta = np.arctan2(T[i + 1, i], T[i, i])
            fa = Multivector.from_vector(Z[:, i])
            fb = Multivector.from_vector(Z[:, i + 1])
            rotor = Multivector.scalar(m, np.cos(theta / 2)) + \
                np.sin(theta / 2) * (fa * fb)
            s = s * rotor
            i += 2
        else:
            if T[i, i] < 0:
                minus_frames.append(np.array(Z[:, i]))
            i += 1
    # det +1 forces an even count of -1 eigenvalues; pair them as pi-rotations
    if len(minus_frames) % 2 != 0:
        raise ValueError("odd count of -1 eigenvalues; input not in SO(m)?")
    for j in range(0, len(minus_frames), 2):
        fa = Multivector.from_vector(minus_frames[j])
        fb = Multivector.from_vector(minus_frames[j + 1])
        s = s * (fa * fb)  # cos(pi/2) + sin(pi/2) fa fb

    if branch not in (+1, -1):
        raise ValueError("branch must be +1 or -1")
    s = Multivector(m, branch * s.coeffs)

    back = adjoint_matrix(s)
    if np.max(np.abs(back - g)) > 1e2 * tol:
        raise AssertionError(
            f"spin lift verification failed: |Ad(s) - g| = {np.max(np.abs(back - g)):.3e}")
    return s


# --- complex matrix representation and half-spin characters ----------------

@lru_cache(maxsize=MAX_DIM + 1)
def _gamma_matrices(m):
    """Anticommuting E_1..E_m with E_i^2 = -1 on C^(2^(m/2)).

    Iterated tensor construction: E_{2j-1} = i * s3^(j-1) x s1 x 1...,
    E_{2j} = i * s3^(j-1) x s2 x 1... with the Pauli matrices s1, s2, s3.
    """
    if m % 2 != 0:
        raise ValueError("matrix representation needs even m")
    if m > MAX_DIM:
        raise ValueError(f"matrix representation capped at m = {MAX_DIM}")
    s1 = np.array([[0, 1], [1, 0]], dtype=complex)
    s2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
    s3 = np.array([[1, 0], [0, -1]], dtype=complex)
    eye = np.eye(2, dtype=complex)
    k = m // 2
    gammas = []
    for j in range(k):
        for sig in (s1, s2):
            factors = [s3] * j + [sig] + [eye] * (k - j - 1)
            mat = factors[0]
            for f in factors[1:]:
                mat = np.kron(mat, f)
            gammas.append(1j * mat)
    return gammas


@lru_cache(maxsize=MAX_DIM + 1)
def _basis_rep(m):
    """Matrices of all 2^m basis elements e_S, as one (2^m, N, N) array."""
    gammas = _gamma_matrices(m)
    dim = 1 << m
    N = gammas[0].shape[0]
    out = np.zeros((dim, N, N), dtype=complex)
    out[0] = np.eye(N)
    for pattern in range(1, dim):
        low = pattern & -pattern
        i = low.bit_length() - 1
        out[pattern] = gammas[i] @ out[pattern ^ low]
    # e_S built as e_i * e_rest keeps ascending order: adjust sign so the
    # matrix matches the ascending product e_{i1}..e_{ik}
    return out


@lru_cache(maxsize=MAX_DIM + 1)
def _chirality(m):
    """gamma = i^(m/2) E_1 ... E_m; diagonal +-1 in this construction."""
    gammas = _gamma_matrices(m)
    vol = gammas[0]
    for gm in gammas[1:]:
        vol = vol @ gm
    gamma = (1j) ** (m // 2) * vol
    d = np.real(np.diag(gamma))
    if np.max(np.abs(gamma - np.diag(d))) > 1e-12 or \
            np.max(np.abs(np.abs(d) - 1)) > 1e-12:
        raise AssertionError("chirality operator is not diagonal +-1")
    return d


def matrix_representation(x):
    """Complex 2^(m/2)-dimensional matrix of a multivector (m even)."""
    reps = _basis_rep(x.m)
    return np.tensordot(x.coeffs, reps, axes=(0, 0))


def half_spin_characters(s, tol=COEFF_TOL):
    """Traces (chi_+, chi_-) of a Spin(m) element on the chirality eigenspaces.

    Raises if s is not even-grade or fails s * rev(s) = 1.
    """
    if s.m % 2 != 0:
        raise ValueError("half-spin characters need even m")
    if not s.is_even(tol):
        raise ValueError("element has odd-grade components")
    if not (s * s.reverse()).close_to(Multivector.scalar(s.m), tol):
        raise ValueError("element fails s * rev(s) = 1")
    rho = matrix_representation(s)
    d = _chirality(s.m)
    diag = np.diag(rho)
    chi_plus = complex(np.sum(diag[d > 0]))
    chi_minus = complex(np.sum(diag[d < 0]))
    return chi_plus, chi_minus
