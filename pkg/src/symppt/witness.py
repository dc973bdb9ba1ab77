"""Entanglement witnesses diagonal in the Dicke basis plus an anticorner.

The built-in witnesses certify entanglement of the uniparametric GHZ
mixtures in the region where those mixtures are already absolutely PPT
within the symmetric sector.  Validity over separable symmetric states
reduces to positivity over the spin-coherent product manifold, which this
module checks by a coarse 2-D grid plus a refined 1-D search.
"""

from __future__ import annotations

import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .symstate import SymmetricDensityMatrix, ghz_state, mix_with_identity

__all__ = [
    "Witness",
    "builtin_witness",
    "ghz_witness_mixture",
    "expectation_value",
    "product_state_expectation",
    "minimize_over_products",
    "detection_threshold",
    "witness_to_json",
    "witness_from_json",
    "load_witness_file",
]

GRID_DEFAULT = (721, 360)
GRID_AGREEMENT_TOL = 1e-6
REFINE_TOL = 1e-8

# Published coefficients, parsed verbatim from their decimal form.  The
# diagonal runs over Dicke excitation 0..n and is palindromic; the corner
# couples |D^(0)><D^(n)| + |D^(n)><D^(0)|.
_BUILTIN_COEFFS = {
    "W5": (("0.0366656", "-0.134595", "1", "1", "-0.134595", "0.0366656"), "-9.31947"),
    "W7": (
        ("0.00197514", "0.0643064", "-0.189017", "1", "1", "-0.189017", "0.0643064", "0.00197514"),
        "-31.2405",
    ),
    "W9": (
        (
            "0.00235791",
            "-0.013747",
            "0.0621661",
            "-0.1636915",
            "1",
            "1",
            "-0.1636915",
            "0.0621661",
            "-0.013747",
            "0.00235791",
        ),
        "-114.305",
    ),
}


@dataclass(frozen=True)
class Witness:
    """Real symmetric witness: palindromic diagonal plus anticorner coupling."""

    name: str
    diagonal: tuple
    corner: float

    def __post_init__(self):
        diag = tuple(float(x) for x in self.diagonal)
        object.__setattr__(self, "diagonal", diag)
        object.__setattr__(self, "corner", float(self.corner))
        if len(diag) < 2:
            raise ValueError("Witness: diagonal needs at least 2 entries")
        if diag != diag[::-1]:
            raise ValueError("Witness: diagonal must be palindromic")

    @property
    def dim(self) -> int:
        return len(self.diagonal)

    @property
    def n(self) -> int:
        return self.dim - 1

    def matrix(self) -> np.ndarray:
        mat = np.diag(np.array(self.diagonal))
        mat[0, -1] = mat[-1, 0] = self.corner
        return mat


def builtin_witness(name: str) -> Witness:
    """One of the published witnesses W5, W7, W9."""
    if name not in _BUILTIN_COEFFS:
        raise ValueError(f"builtin_witness: unknown witness {name!r}, expected one of W5, W7, W9")
    diag, corner = _BUILTIN_COEFFS[name]
    return Witness(name, tuple(float(x) for x in diag), float(corner))


def ghz_witness_mixture(n: int, p: float) -> SymmetricDensityMatrix:
    """The GHZ mixture in the phase the built-in witnesses couple to.

    The witnesses carry a negative corner, so they detect the GHZ
    representative with +1/2 corner coherence; that state is related to
    the -phase convention by a symmetric product unitary and shares its
    spectrum, SAPPT threshold and entanglement properties.
    """
    return mix_with_identity(n, p, ghz_state(n, sign=+1))


def expectation_value(rho: SymmetricDensityMatrix, w: Witness) -> float:
    """Tr(rho W) for a symmetric qubit density matrix."""
    if rho.d != 2:
        raise ValueError("expectation_value: witnesses act on qubit sectors")
    if rho.dim != w.dim:
        raise ValueError(f"expectation_value: state dim {rho.dim} != witness dim {w.dim}")
    mat = rho.matrix
    val = np.real(np.diag(mat)) @ np.array(w.diagonal)
    val += w.corner * (mat[0, -1] + mat[-1, 0])
    if abs(np.imag(val)) > 1e-12:
        raise RuntimeError(f"expectation_value: imaginary part {np.imag(val)} exceeds 1e-12")
    return float(np.real(val))


def _profile(w: Witness, thetas: np.ndarray):
    """Diagonal term f(theta) and corner envelope g(theta) >= 0."""
    n = w.n
    c2 = np.cos(thetas / 2) ** 2
    s2 = np.sin(thetas / 2) ** 2
    f = np.zeros_like(thetas, dtype=float)
    for a, wa in enumerate(w.diagonal):
        f += wa * math.comb(n, a) * c2 ** (n - a) * s2**a
    g = (c2 * s2) ** (n / 2)
    return f, g


def product_state_expectation(w: Witness, theta: float, phi: float) -> float:
    """Expectation of the witness on the product state with Bloch angles
    (theta, phi): f(theta) + 2 * corner * g(theta) * cos(n phi)."""
    f, g = _profile(w, np.array([float(theta)]))
    return float(f[0] + 2 * w.corner * g[0] * math.cos(w.n * phi))


def _thread_count() -> int:
    raw = os.environ.get("SYMPPT_THREADS", "")
    try:
        return max(1, int(raw)) if raw else 1
    except ValueError:
        return 1


def _grid_values(w: Witness, thetas: np.ndarray, phis: np.ndarray) -> np.ndarray:
    """Witness expectation on a theta x phi product grid.

    Rows are processed in fixed chunks; SYMPPT_THREADS caps how many run
    concurrently, and results land in a preallocated array, so the output
    never depends on scheduling.
    """
    cos_part = np.cos(w.n * phis)
    out = np.empty((len(thetas), len(phis)))
    threads = min(_thread_count(), len(thetas))

    def fill(lo, hi):
        f, g = _profile(w, thetas[lo:hi])
        out[lo:hi] = f[:, None] + 2 * w.corner * g[:, None] * cos_part[None, :]

    if threads <= 1:
        fill(0, len(thetas))
    else:
        step = -(-len(thetas) // threads)
        bounds = [(i, min(i + step, len(thetas))) for i in range(0, len(thetas), step)]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(lambda se: fill(*se), bounds))
    return out


def _golden_min(f, lo: float, hi: float, tol: float):
    """Golden-section minimum of a unimodal-enough f on [lo, hi]."""
    ratio = (math.sqrt(5) - 1) / 2
    x1 = hi - ratio * (hi - lo)
    x2 = lo + ratio * (hi - lo)
    f1, f2 = f(x1), f(x2)
    while hi - lo > tol:
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - ratio * (hi - lo)
            f1 = f(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + ratio * (hi - lo)
            f2 = f(x2)
    x = (lo + hi) / 2
    return x, f(x)


def minimize_over_products(w: Witness, grid: tuple[int, int] = GRID_DEFAULT):
    """Global minimum of the witness over spin-coherent product states.

    Returns (value, (theta, phi)).  The corner term enters as
    2 * corner * g(theta) * cos(n phi) with g >= 0, so the minimizing phi
    is 0 for corner <= 0 and pi/n otherwise, reducing the search to theta;
    the palindromic diagonal makes the profile symmetric about pi/2, so
    theta is canonicalized to [0, pi/2].  A coarse theta scan is refined
    by golden section to 1e-8, and the full 2-D grid double-checks the
    result to 1e-6.
    """
    grid_w, grid_h = grid
    if grid_w < 3 or grid_h < 1:
        raise ValueError(f"minimize_over_products: grid {grid} too coarse")
    n = w.n
    phi_star = 0.0 if w.corner <= 0 else math.pi / n

    def line(theta):
        return product_state_expectation(w, theta, phi_star)

    half = np.linspace(0.0, math.pi / 2, max(grid_w // 2 + 1, 3))
    f, g = _profile(w, half)
    vals = f + 2 * w.corner * g * math.cos(n * phi_star)
    i = int(np.argmin(vals))
    lo = half[max(i - 1, 0)]
    hi = half[min(i + 1, len(half) - 1)]
    theta_best, val_best = _golden_min(line, lo, hi, REFINE_TOL)
    # the true minimum may sit on the boundary of the fold domain
    for theta_edge in (0.0, math.pi / 2):
        val_edge = line(theta_edge)
        if val_edge < val_best:
            theta_best, val_best = theta_edge, val_edge

    thetas = np.linspace(0.0, math.pi, grid_w)
    phis = np.linspace(0.0, 2 * math.pi, grid_h, endpoint=False)
    grid_min = float(_grid_values(w, thetas, phis).min())
    if abs(grid_min - val_best) > GRID_AGREEMENT_TOL:
        raise RuntimeError(
            f"minimize_over_products: 2-D grid minimum {grid_min} and refined minimum "
            f"{val_best} disagree beyond {GRID_AGREEMENT_TOL}"
        )
    return val_best, (theta_best, phi_star)


def detection_threshold(w: Witness, n: int) -> float:
    """Largest p for which the witness detects the GHZ mixture as entangled.

    Tr(rho(p) W) is affine in p, so the zero crossing has the closed form
    p* = g / (g - t) with g = <GHZ|W|GHZ> = (w_0 + w_n)/2 + corner and
    t = Tr(W)/(n+1).  When p* exceeds the SAPPT threshold, the interval
    [p_min, p*] is a certified family of entangled SAPPT states.
    """
    if w.dim != n + 1:
        raise ValueError(f"detection_threshold: witness dim {w.dim} does not match n={n}")
    t = sum(w.diagonal) / (n + 1)
    g = (w.diagonal[0] + w.diagonal[-1]) / 2 + w.corner
    denom = g - t
    if abs(denom) < 1e-12:
        raise ValueError("detection_threshold: degenerate denominator, expectation constant in p")
    return g / denom


def witness_to_json(w: Witness) -> str:
    return json.dumps(
        {"name": w.name, "dim": w.dim, "diagonal": list(w.diagonal), "corner": w.corner}
    )


def witness_from_json(text: str) -> Witness:
    data = json.loads(text)
    diag = tuple(float(x) for x in data["diagonal"])
    if "dim" in data and int(data["dim"]) != len(diag):
        raise ValueError(
            f"witness_from_json: declared dim {data['dim']} != diagonal length {len(diag)}"
        )
    return Witness(str(data.get("name", "custom")), diag, float(data["corner"]))


def load_witness_file(path) -> Witness:
    with open(path, encoding="utf-8") as fh:
        return witness_from_json(fh.read())
