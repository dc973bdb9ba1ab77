"""Partial transposition and the spectrum of the transposed uniform state.

The uniform (maximally mixed) symmetric state becomes nontrivial under
partial transposition of the k-particle side.  For qubits its full
eigendecomposition is known in closed form: eigenvalues
C(n+1, j) / [(n+1) C(n, k)] with multiplicity n+1-2j for j = 0..k, with
eigenvectors generated by a ladder-operator construction.  This module
implements that construction, the numeric routes used to cross-check it,
Schmidt data of pure states, and the qudit minimum-eigenvalue check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .combx import symmetric_dimension
from .symstate import (
    Bipartition,
    BipartiteOperator,
    PureSymmetricState,
    SymmetricDensityMatrix,
    dicke_decomposition,
    dicke_labels,
    embed_bipartite,
    ghz_state,
    mix_with_identity,
)

__all__ = [
    "Spectrum",
    "LadderOperators",
    "partial_transpose_a",
    "min_eigenvalue",
    "maxmixed_pt",
    "maxmixed_pt_blocks",
    "maxmixed_pt_spectrum",
    "ladder_operators",
    "maxmixed_pt_eigenbasis",
    "schmidt_spectrum",
    "mixture_min_eig_bound",
    "ghz_corner_eigencheck",
    "qudit_min_eig_check",
    "spectrum_to_json",
]

HERM_TOL = 1e-10
RESIDUAL_TOL = 1e-10
DEGENERACY_GAP = 1e-8
QUDIT_DIM_CAP = 5000


@dataclass(frozen=True)
class Spectrum:
    """Multiset of (eigenvalue, multiplicity) pairs, sorted ascending.

    Values are exact Fractions on the analytic route and floats on the
    numeric route; multiplicities always sum to the operator dimension.
    """

    entries: tuple

    @classmethod
    def from_eigenvalues(cls, values, gap: float = DEGENERACY_GAP) -> "Spectrum":
        """Group a sorted array of numeric eigenvalues into degenerate levels.

        Consecutive values closer than ``gap`` join the same level; the
        reported value is the group mean.
        """
        vals = np.sort(np.asarray(values, dtype=float))
        entries = []
        start = 0
        for i in range(1, len(vals) + 1):
            if i == len(vals) or vals[i] - vals[i - 1] > gap:
                group = vals[start:i]
                entries.append((float(group.mean()), len(group)))
                start = i
        return cls(tuple(entries))

    @property
    def dimension(self) -> int:
        return sum(m for _, m in self.entries)

    def expanded(self) -> np.ndarray:
        """All eigenvalues as floats, ascending, repeated by multiplicity."""
        return np.array([float(v) for v, m in self.entries for _ in range(m)])


@dataclass(frozen=True)
class LadderOperators:
    """Raising/lowering/weight operators on the bipartite space.

    Built from the sector analogues of the angular momentum operators on
    each factor: raise_op = lower(A) - raise(B) acting on the product, and
    weight = weight(A) - weight(B).  They satisfy [weight, raise_op] =
    +raise_op, [weight, lower_op] = -lower_op, and both commute with the
    partially transposed uniform state.
    """

    bipartition: Bipartition
    raise_op: np.ndarray
    lower_op: np.ndarray
    weight: np.ndarray


def partial_transpose_a(op: BipartiteOperator) -> BipartiteOperator:
    """Transpose the A-side indices: ((a,b),(a',b')) -> ((a',b),(a,b')).

    An involution that preserves trace and Hermiticity.
    """
    da, db = op.bipartition.dim_a, op.bipartition.dim_b
    mat = op.matrix.reshape(da, db, da, db).transpose(2, 1, 0, 3).reshape(op.dim, op.dim)
    return BipartiteOperator(op.bipartition, mat.copy())


def min_eigenvalue(op: BipartiteOperator, herm_tol: float = HERM_TOL) -> float:
    """Smallest eigenvalue of a Hermitian bipartite operator.

    The input is symmetrized before diagonalization to guard against
    accumulated assembly rounding; the returned eigenpair is verified to
    satisfy ||H v - lam v|| <= 1e-10.
    """
    mat = op.matrix
    if np.max(np.abs(mat - mat.conj().T)) > herm_tol:
        raise ValueError("min_eigenvalue: operator is not Hermitian within tolerance")
    herm = (mat + mat.conj().T) / 2
    w, v = np.linalg.eigh(herm)
    vec = v[:, 0]
    residual = np.linalg.norm(herm @ vec - w[0] * vec)
    if residual > RESIDUAL_TOL:
        raise RuntimeError(f"min_eigenvalue: eigenpair residual {residual} exceeds 1e-10")
    return float(w[0])


def _pt_triplets(bip: Bipartition):
    """Yield (row_pair, col_pair, value) entries of the transposed uniform state.

    Each sector basis label decomposes into bipartite components
    (a_i, b_i, c_i); partial transposition swaps the A-side labels between
    bra and ket, producing the entry c_i c_j / D at row (a_j, b_i),
    column (a_i, b_j).  Both pairs share the label difference a - b, which
    is the conserved weight used for block diagonalization.
    """
    n, d = bip.n, bip.d
    dim_sector = symmetric_dimension(n, d)
    for label in dicke_labels(n, d):
        parts = dicke_decomposition(bip, label)
        coeffs = [float(c) for _, _, c in parts]
        for i, (a_i, b_i, _) in enumerate(parts):
            for j, (a_j, b_j, _) in enumerate(parts):
                yield (a_j, b_i), (a_i, b_j), coeffs[i] * coeffs[j] / dim_sector


def _pair_index(bip: Bipartition):
    idx_a = {lab: i for i, lab in enumerate(dicke_labels(bip.k, bip.d))}
    idx_b = {lab: i for i, lab in enumerate(dicke_labels(bip.n - bip.k, bip.d))}
    return lambda a, b: idx_a[a] * bip.dim_b + idx_b[b]


def maxmixed_pt(bip: Bipartition) -> BipartiteOperator:
    """Partial transpose of the uniform symmetric state, assembled directly.

    Built from the double sum over split coefficients rather than by
    transposing the embedded identity; the two routes agree to rounding
    and are compared in the test suite.
    """
    index = _pair_index(bip)
    mat = np.zeros((bip.dim, bip.dim))
    for row, col, val in _pt_triplets(bip):
        mat[index(*row), index(*col)] += val
    return BipartiteOperator(bip, mat)


def _weight_key(a, b):
    if isinstance(a, tuple):
        return tuple(x - y for x, y in zip(a, b))
    return a - b


def maxmixed_pt_blocks(bip: Bipartition):
    """Weight-resolved blocks of the transposed uniform state.

    Entries couple only pairs with equal label difference a - b, so the
    matrix is block diagonal over that key.  Returns a list of
    (pair_indices, block) with pair_indices into the row-major bipartite
    basis; eigenvalues of the blocks are exactly those of the full matrix.
    """
    labels_a = dicke_labels(bip.k, bip.d)
    labels_b = dicke_labels(bip.n - bip.k, bip.d)
    slot = {}
    groups = {}
    for ia, a in enumerate(labels_a):
        for ib, b in enumerate(labels_b):
            key = _weight_key(a, b)
            members = groups.setdefault(key, [])
            slot[(a, b)] = (key, len(members))
            members.append(ia * bip.dim_b + ib)
    blocks = {key: np.zeros((len(m), len(m))) for key, m in groups.items()}
    for row, col, val in _pt_triplets(bip):
        key, r = slot[row]
        _, c = slot[col]
        blocks[key][r, c] += val
    return [(tuple(groups[key]), blocks[key]) for key in groups]


def maxmixed_pt_spectrum(bip: Bipartition) -> Spectrum:
    """Exact spectrum of the transposed uniform state (qubits only).

    Eigenvalue C(n+1, j) / [(n+1) C(n, k)] with multiplicity n+1-2j for
    j = 0..k; the weighted sum telescopes to trace 1.
    """
    if bip.d != 2:
        raise ValueError("maxmixed_pt_spectrum: closed form is only available for qubits")
    n, k = bip.n, bip.k
    denom = (n + 1) * math.comb(n, k)
    entries = tuple(
        (Fraction(math.comb(n + 1, j), denom), n + 1 - 2 * j) for j in range(k + 1)
    )
    return Spectrum(entries)


def _factor_ladders(n: int):
    raise_m = np.zeros((n + 1, n + 1))
    for a in range(n):
        raise_m[a + 1, a] = math.sqrt((n - a) * (a + 1))
    weight = np.diag([n / 2 - a for a in range(n + 1)])
    return raise_m, raise_m.T, weight


def ladder_operators(bip: Bipartition) -> LadderOperators:
    """Ladder and weight operators for the qubit bipartite space."""
    if bip.d != 2:
        raise ValueError("ladder_operators: defined for qubits only")
    k, nb = bip.k, bip.n - bip.k
    raise_a, lower_a, weight_a = _factor_ladders(k)
    raise_b, lower_b, weight_b = _factor_ladders(nb)
    eye_a, eye_b = np.eye(k + 1), np.eye(nb + 1)
    return LadderOperators(
        bipartition=bip,
        raise_op=np.kron(lower_a, eye_b) - np.kron(eye_a, raise_b),
        lower_op=np.kron(raise_a, eye_b) - np.kron(eye_a, lower_b),
        weight=np.kron(weight_a, eye_b) - np.kron(eye_a, weight_b),
    )


def maxmixed_pt_eigenbasis(bip: Bipartition) -> list:
    """Full orthonormal eigenbasis of the transposed uniform state (qubits).

    Returns (j, m, vector) triples for j = 0..k and m = j..n-j.  The seed
    vector |j, j> has closed-form components
    sqrt(C(k-r, j-r) C(n-k-j+r, r)) / sqrt(C(n-j+1, j)) on
    |D_k^(k-r)> |D_{n-k}^(j-r)>; higher m follow by repeated raising with
    numeric renormalization.  The vector (j, m) carries eigenvalue
    C(n+1, j) / [(n+1) C(n, k)].
    """
    if bip.d != 2:
        raise ValueError("maxmixed_pt_eigenbasis: defined for qubits only")
    n, k = bip.n, bip.k
    dim_b = bip.dim_b
    raise_op = ladder_operators(bip).raise_op
    basis = []
    for j in range(k + 1):
        vec = np.zeros(bip.dim)
        for r in range(j + 1):
            coeff = math.sqrt(math.comb(k - r, j - r) * math.comb(n - k - j + r, r))
            vec[(k - r) * dim_b + (j - r)] = coeff
        vec /= math.sqrt(math.comb(n - j + 1, j))
        basis.append((j, j, vec))
        for m in range(j + 1, n - j + 1):
            vec = raise_op @ vec
            vec = vec / np.linalg.norm(vec)
            basis.append((j, m, vec))
    return basis


def schmidt_spectrum(psi: PureSymmetricState, bip: Bipartition) -> np.ndarray:
    """Squared Schmidt coefficients of a pure state, sorted descending.

    Singular values squared of the dim_a x dim_b coefficient matrix read
    off from the bipartite decomposition; they sum to 1.
    """
    if psi.n != bip.n or psi.d != bip.d:
        raise ValueError(f"schmidt_spectrum: state (n={psi.n}, d={psi.d}) does not match {bip}")
    idx_a = {lab: i for i, lab in enumerate(dicke_labels(bip.k, bip.d))}
    idx_b = {lab: i for i, lab in enumerate(dicke_labels(bip.n - bip.k, bip.d))}
    coeff = np.zeros((bip.dim_a, bip.dim_b), dtype=complex)
    for amp, label in zip(psi.amplitudes, dicke_labels(bip.n, bip.d)):
        if amp == 0:
            continue
        for a, b, c in dicke_decomposition(bip, label):
            coeff[idx_a[a], idx_b[b]] += amp * float(c)
    sv = np.linalg.svd(coeff, compute_uv=False)
    return np.sort(sv**2)[::-1]


def mixture_min_eig_bound(psi: PureSymmetricState, p: float, bip: Bipartition) -> float:
    """Lower bound on the minimum PT eigenvalue of the p-mixture with psi.

    Weyl-type bound: p / [(n+1) C(n,k)] - (1-p) sqrt(G1 G2) with G1, G2
    the two largest squared Schmidt coefficients of psi.  Tight exactly
    when the mixture's extremal eigenvectors align.
    """
    if bip.d != 2:
        raise ValueError("mixture_min_eig_bound: defined for qubits only")
    if not 0 <= p <= 1:
        raise ValueError(f"mixture_min_eig_bound: p must lie in [0, 1], got {p}")
    gammas = schmidt_spectrum(psi, bip)
    cross = math.sqrt(gammas[0] * gammas[1]) if len(gammas) > 1 else 0.0
    return p / ((bip.n + 1) * math.comb(bip.n, bip.k)) - (1 - p) * cross


def ghz_corner_eigencheck(n: int, k: int, p: float) -> tuple[float, float]:
    """Eigenvalue and residual of the symmetric corner vector under the
    transposed GHZ mixture.

    The vector (|D_k^(0)>|D_{n-k}^(n-k)> + |D_k^(k)>|D_{n-k}^(0)>)/sqrt(2)
    is an exact eigenvector of the partial transpose of the p-mixture with
    the GHZ state, with eigenvalue p/[(n+1) C(n,k)] - (1-p)/2; this
    returns its Rayleigh quotient together with ||M v - lam v||.
    """
    bip = Bipartition(n, k)
    rho = mix_with_identity(n, p, ghz_state(n))
    pt = partial_transpose_a(embed_bipartite(rho, bip)).matrix
    vec = np.zeros(bip.dim)
    vec[0 * bip.dim_b + (n - k)] = 1 / math.sqrt(2)
    vec[k * bip.dim_b + 0] = 1 / math.sqrt(2)
    image = pt @ vec
    lam = float(np.real(vec @ image))
    residual = float(np.linalg.norm(image - lam * vec))
    return lam, residual


def qudit_min_eig_check(n: int, d: int, k: int) -> tuple[float, Fraction]:
    """Numeric minimum PT eigenvalue of the uniform qudit state, paired with
    the conjectured closed form 1 / [D C(n,k)], D = C(n+d-1, d-1).

    The numeric side diagonalizes the exact weight blocks (never the
    conjectured formula), so the two routes stay independent.  Bipartite
    dimensions above 5000 are rejected.
    """
    bip = Bipartition(n, k, d)
    if bip.dim > QUDIT_DIM_CAP:
        raise ValueError(
            f"qudit_min_eig_check: bipartite dimension {bip.dim} exceeds cap {QUDIT_DIM_CAP}"
        )
    best = None
    best_block = None
    for _, block in maxmixed_pt_blocks(bip):
        w = np.linalg.eigvalsh((block + block.T) / 2)
        if best is None or w[0] < best:
            best = float(w[0])
            best_block = block
    herm = (best_block + best_block.T) / 2
    w, v = np.linalg.eigh(herm)
    if np.linalg.norm(herm @ v[:, 0] - w[0] * v[:, 0]) > RESIDUAL_TOL:
        raise RuntimeError("qudit_min_eig_check: eigenpair residual exceeds 1e-10")
    conjectured = Fraction(1, symmetric_dimension(n, d) * math.comb(n, k))
    return best, conjectured


def spectrum_to_json(spectrum: Spectrum, bip: Bipartition) -> dict:
    """JSON-ready dict: {"n", "k", "entries": [{"value", "multiplicity"}]}.

    Exact rational values serialize as "num/den" strings, floats as
    numbers.
    """
    entries = []
    for value, mult in spectrum.entries:
        out = str(value) if isinstance(value, Fraction) else float(value)
        entries.append({"value": out, "multiplicity": mult})
    return {"n": bip.n, "k": bip.k, "entries": entries}
