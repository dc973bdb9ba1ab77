"""Symmetric states in the Dicke basis and their bipartite embedding.

States of n qubits (or qudits) restricted to the symmetric sector are
stored as length-D amplitude vectors or D x D density matrices, D being
the sector dimension.  The central operation is the isometric embedding
of the sector into the tensor product of the two symmetric sectors of a
k | n-k bipartition, driven by the exact split coefficients of
:mod:`symppt.combx`.
"""

from __future__ import annotations

import functools
import json
import math
import operator
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .combx import SqrtRational, dicke_split_coefficient, multinomial, symmetric_dimension

__all__ = [
    "Bipartition",
    "PureSymmetricState",
    "SymmetricDensityMatrix",
    "BipartiteOperator",
    "dicke_labels",
    "dicke_decomposition",
    "ghz_state",
    "coherent_state",
    "mix_with_identity",
    "embedding_matrix",
    "embed_bipartite",
    "embed_pure",
    "state_to_json",
    "state_from_json",
]

NORM_TOL = 1e-12
HERM_TOL = 1e-12
PSD_TOL = 1e-10


@dataclass(frozen=True)
class Bipartition:
    """A k | n-k split of n particles with local dimension d.

    Only 1 <= k <= floor(n/2) is accepted: k = 0 carries no partial
    transpose content and k > n/2 is redundant by symmetry.
    """

    n: int
    k: int
    d: int = 2

    def __post_init__(self):
        if self.d < 2:
            raise ValueError(f"Bipartition: local dimension must be >= 2, got {self.d}")
        if self.n < 2:
            raise ValueError(f"Bipartition: need at least 2 particles, got n={self.n}")
        if not 1 <= self.k <= self.n // 2:
            raise ValueError(
                f"Bipartition: need 1 <= k <= floor(n/2) = {self.n // 2}, got k={self.k}"
            )

    @property
    def dim_a(self) -> int:
        return symmetric_dimension(self.k, self.d)

    @property
    def dim_b(self) -> int:
        return symmetric_dimension(self.n - self.k, self.d)

    @property
    def dim(self) -> int:
        return self.dim_a * self.dim_b


@functools.lru_cache(maxsize=None)
def dicke_labels(n: int, d: int) -> tuple:
    """Canonical ordering of the symmetric-sector basis labels.

    For qubits the labels are the excitation counts 0..n.  For d >= 3 they
    are the occupation tuples (m_0, ..., m_{d-1}) summing to n, listed in
    decreasing lexicographic order, which reduces to the qubit order when
    d = 2.
    """
    if d == 2:
        return tuple(range(n + 1))

    def compositions(total, parts):
        if parts == 1:
            yield (total,)
            return
        for first in range(total, -1, -1):
            for rest in compositions(total - first, parts - 1):
                yield (first,) + rest

    return tuple(compositions(n, d))


@functools.lru_cache(maxsize=None)
def _label_index(n: int, d: int) -> dict:
    return {lab: i for i, lab in enumerate(dicke_labels(n, d))}


@dataclass(frozen=True)
class PureSymmetricState:
    """Normalized pure state in the symmetric sector, Dicke-basis amplitudes."""

    n: int
    d: int
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex)
        object.__setattr__(self, "amplitudes", amps)
        dim = symmetric_dimension(self.n, self.d)
        if amps.shape != (dim,):
            raise ValueError(
                f"PureSymmetricState: expected {dim} amplitudes for (n={self.n}, d={self.d}), "
                f"got shape {amps.shape}"
            )
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"PureSymmetricState: norm {norm} deviates from 1 beyond {NORM_TOL}")

    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]

    def density(self) -> "SymmetricDensityMatrix":
        return SymmetricDensityMatrix(self.n, self.d, np.outer(self.amplitudes, self.amplitudes.conj()))


@dataclass(frozen=True)
class SymmetricDensityMatrix:
    """Density matrix on the symmetric sector: Hermitian, unit trace, PSD."""

    n: int
    d: int
    matrix: np.ndarray

    def __post_init__(self):
        mat = np.asarray(self.matrix, dtype=complex)
        object.__setattr__(self, "matrix", mat)
        dim = symmetric_dimension(self.n, self.d)
        if mat.shape != (dim, dim):
            raise ValueError(
                f"SymmetricDensityMatrix: expected {dim}x{dim} for (n={self.n}, d={self.d}), "
                f"got {mat.shape}"
            )
        if np.max(np.abs(mat - mat.conj().T)) > HERM_TOL:
            raise ValueError("SymmetricDensityMatrix: matrix is not Hermitian within 1e-12")
        tr = np.trace(mat)
        if abs(tr - 1.0) > NORM_TOL:
            raise ValueError(f"SymmetricDensityMatrix: trace {tr} deviates from 1 beyond {NORM_TOL}")
        if np.linalg.eigvalsh((mat + mat.conj().T) / 2).min() < -PSD_TOL:
            raise ValueError("SymmetricDensityMatrix: negative eigenvalue beyond 1e-10")

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True)
class BipartiteOperator:
    """Hermitian operator on the product of the two symmetric sectors.

    Row index i = a * dim_b + b for A-side label index a and B-side label
    index b (row-major, A first).  The convention is fixed so that partial
    transposition and file dumps are reproducible bit for bit.
    """

    bipartition: Bipartition
    matrix: np.ndarray

    def __post_init__(self):
        mat = np.asarray(self.matrix, dtype=complex)
        object.__setattr__(self, "matrix", mat)
        dim = self.bipartition.dim
        if mat.shape != (dim, dim):
            raise ValueError(
                f"BipartiteOperator: expected {dim}x{dim} for {self.bipartition}, got {mat.shape}"
            )
        if np.max(np.abs(mat - mat.conj().T)) > HERM_TOL:
            raise ValueError("BipartiteOperator: matrix is not Hermitian within 1e-12")

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


def dicke_decomposition(bip: Bipartition, label) -> list:
    """Expansion of a Dicke basis state over products of sector Dicke states.

    Returns a list of (a_label, b_label, coefficient) with exact
    SqrtRational coefficients.  For qubits the label is the excitation
    count alpha and the expansion runs over the B-side count beta with
    a_label = alpha - beta; for qudits the label is an occupation tuple and
    the coefficient is the multinomial ratio
    sqrt( M(k; a) * M(n-k; m-a) / M(n; m) ).
    """
    n, k, d = bip.n, bip.k, bip.d
    if d == 2:
        try:
            alpha = operator.index(label)
        except TypeError:
            raise ValueError(f"dicke_decomposition: invalid qubit label {label!r} for n={n}")
        if not 0 <= alpha <= n:
            raise ValueError(f"dicke_decomposition: invalid qubit label {label!r} for n={n}")
        out = []
        for beta in range(max(0, alpha - k), min(alpha, n - k) + 1):
            out.append((alpha - beta, beta, dicke_split_coefficient(n, k, alpha, beta)))
        return out

    m = tuple(label)
    if len(m) != d or any(x < 0 for x in m) or sum(m) != n:
        raise ValueError(f"dicke_decomposition: invalid qudit label {label!r} for (n={n}, d={d})")
    denom = multinomial(n, m)
    out = []
    for a in dicke_labels(k, d):
        if any(ai > mi for ai, mi in zip(a, m)):
            continue
        b = tuple(mi - ai for ai, mi in zip(a, m))
        num = multinomial(k, a) * multinomial(n - k, b)
        if num:
            out.append((a, b, SqrtRational(Fraction(num, denom))))
    return out


def ghz_state(n: int, sign: int = -1) -> PureSymmetricState:
    """GHZ state (|D^(0)> + sign |D^(n)>)/sqrt(2) of n qubits.

    The default sign is -1.  The two phases are connected by the symmetric
    product unitary diag(1, e^{i pi/n}) on each qubit, so they share every
    spectral and entanglement property; sign=+1 is the representative whose
    corner coherence couples to the built-in witnesses.
    """
    if n < 2:
        raise ValueError(f"ghz_state: need n >= 2, got {n}")
    if sign not in (-1, 1):
        raise ValueError(f"ghz_state: sign must be +1 or -1, got {sign}")
    amps = np.zeros(n + 1, dtype=complex)
    amps[0] = 1 / math.sqrt(2)
    amps[n] = sign / math.sqrt(2)
    return PureSymmetricState(n, 2, amps)


def coherent_state(n: int, theta: float, phi: float) -> PureSymmetricState:
    """Spin-coherent product state (cos(theta/2)|0> + sin(theta/2)e^{i phi}|1>)^n.

    Dicke amplitude at excitation a is
    sqrt(C(n,a)) cos^{n-a}(theta/2) (sin(theta/2) e^{i phi})^a.
    """
    if n < 1:
        raise ValueError(f"coherent_state: need n >= 1, got {n}")
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    phase = complex(math.cos(phi), math.sin(phi))
    amps = np.array(
        [math.sqrt(math.comb(n, a)) * c ** (n - a) * (s * phase) ** a for a in range(n + 1)],
        dtype=complex,
    )
    amps /= np.linalg.norm(amps)
    return PureSymmetricState(n, 2, amps)


def mix_with_identity(n: int, p: float, psi: PureSymmetricState) -> SymmetricDensityMatrix:
    """Mixture p * (maximally mixed sector state) + (1-p) |psi><psi|.

    The spectrum has exactly two levels: 1 - (D-1)p/D once and p/D with
    multiplicity D-1, D being the sector dimension.
    """
    if not 0 <= p <= 1:
        raise ValueError(f"mix_with_identity: p must lie in [0, 1], got {p}")
    if psi.n != n:
        raise ValueError(f"mix_with_identity: state has n={psi.n}, expected {n}")
    dim = psi.dim
    mat = (p / dim) * np.eye(dim, dtype=complex)
    mat += (1 - p) * np.outer(psi.amplitudes, psi.amplitudes.conj())
    return SymmetricDensityMatrix(n, psi.d, mat)


@functools.lru_cache(maxsize=None)
def embedding_matrix(n: int, k: int, d: int = 2) -> np.ndarray:
    """Isometry V from the symmetric sector into the bipartite product space.

    Column alpha holds the dicke_decomposition image of basis label alpha;
    V^T V = identity because the split coefficients are normalized and
    images of distinct labels occupy disjoint (a, b) cells.
    """
    bip = Bipartition(n, k, d)
    idx_a = _label_index(k, d)
    idx_b = _label_index(n - k, d)
    v = np.zeros((bip.dim, symmetric_dimension(n, d)))
    for col, label in enumerate(dicke_labels(n, d)):
        for a, b, coeff in dicke_decomposition(bip, label):
            v[idx_a[a] * bip.dim_b + idx_b[b], col] = float(coeff)
    v.flags.writeable = False
    return v


def embed_bipartite(rho: SymmetricDensityMatrix, bip: Bipartition) -> BipartiteOperator:
    """Embed a symmetric density matrix as an operator on the bipartite space.

    Returns V rho V^T, which preserves trace, Hermiticity, rank and
    positive semidefiniteness.
    """
    if rho.n != bip.n or rho.d != bip.d:
        raise ValueError(
            f"embed_bipartite: state (n={rho.n}, d={rho.d}) does not match {bip}"
        )
    v = embedding_matrix(bip.n, bip.k, bip.d)
    return BipartiteOperator(bip, v @ rho.matrix @ v.T)


def embed_pure(psi: PureSymmetricState, bip: Bipartition) -> np.ndarray:
    """Amplitude vector of a pure symmetric state on the bipartite space."""
    if psi.n != bip.n or psi.d != bip.d:
        raise ValueError(f"embed_pure: state (n={psi.n}, d={psi.d}) does not match {bip}")
    return embedding_matrix(bip.n, bip.k, bip.d) @ psi.amplitudes


def state_to_json(psi: PureSymmetricState) -> str:
    """Serialize a pure state as {"n", "d", "amplitudes": [[re, im], ...]}."""
    return json.dumps(
        {
            "n": psi.n,
            "d": psi.d,
            "amplitudes": [[z.real, z.imag] for z in psi.amplitudes],
        }
    )


def state_from_json(text: str) -> PureSymmetricState:
    data = json.loads(text)
    amps = np.array([complex(re, im) for re, im in data["amplitudes"]])
    return PureSymmetricState(int(data["n"]), int(data["d"]), amps)
