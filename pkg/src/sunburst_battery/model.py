"""Sunburst Ising Hamiltonian: a ferromagnetic transverse-field Ising ring
(the charger) with n external qubits (the batteries) attached through
sigma^x Sigma^x bonds at equispaced sites.

    H = H_c (x) 1_b  +  1_c (x) H_b  +  V_cb

    H_c  = -sum_i ( J sigma^x_i sigma^x_{i+1} + h sigma^z_i )   (periodic)
    H_b  = -(delta/2) sum_i Sigma^z_i
    V_cb = -kappa sum_i sigma^x_{1+(i-1)d} Sigma^x_i

Basis convention: composite index = charger_bits * 2**n + battery_bits.
Charger site i (1-based) is bit (L - i) of the charger block and battery
qubit i is bit (n - i) of the battery block, so |00...0> is index 0 and
tracing out the charger is a contiguous-stride sum.  Bit value 0 is the
sigma^z = +1 state.  sigma^x_i flips one bit and sigma^z_i reads one bit,
so operator construction is pure bit manipulation; every operator below is
real symmetric in this basis.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg


def bit_counts(values: np.ndarray) -> np.ndarray:
    """Number of set bits of each entry of an integer array."""
    vals = np.array(values, copy=True)
    counts = np.zeros_like(vals)
    while vals.any():
        counts += vals & 1
        vals >>= 1
    return counts


@dataclass(frozen=True)
class ModelSpec:
    """Model parameters.  Couplings are in units of the ring bond J.

    d is the site spacing between consecutive batteries; when omitted it
    defaults to the equispaced choice L/n (which requires n to divide L).
    """

    L: int
    n: int
    d: int | None = None
    J: float = 1.0
    h: float = 0.1
    delta: float = 0.5
    kappa: float = 2.0

    def __post_init__(self):
        if not isinstance(self.L, int) or self.L < 2:
            raise ValueError(f"ring length L must be an integer >= 2, got {self.L!r}")
        if not isinstance(self.n, int) or self.n < 0:
            raise ValueError(f"battery count n must be an integer >= 0, got {self.n!r}")
        for name in ("J", "h", "delta", "kappa"):
            val = getattr(self, name)
            if not np.isfinite(val):
                raise ValueError(f"{name} must be finite, got {val!r}")
        if self.J <= 0:
            raise ValueError("J must be positive (ferromagnetic ring)")
        if self.h < 0 or self.delta < 0 or self.kappa < 0:
            raise ValueError("h, delta and kappa must be non-negative")
        d = self.d
        if d is None:
            if self.n <= 1:
                d = 1
            elif self.L % self.n == 0:
                d = self.L // self.n
            else:
                raise ValueError(
                    f"battery spacing d must be given explicitly: {self.n} does "
                    f"not divide L={self.L} so there is no equispaced default"
                )
        if not isinstance(d, int) or d < 1:
            raise ValueError(f"battery spacing d must be an integer >= 1, got {d!r}")
        object.__setattr__(self, "d", d)
        if self.n:
            if self.n * d > self.L:
                raise ValueError(
                    f"n*d = {self.n * d} exceeds L = {self.L}: batteries do not fit"
                )
            positions = battery_positions(self)
            if len(set(positions)) != self.n:
                raise ValueError(f"battery attachment sites collide: {positions}")

    @property
    def qubits(self) -> int:
        return self.L + self.n

    @property
    def dim(self) -> int:
        return 1 << self.qubits

    @property
    def charger_dim(self) -> int:
        return 1 << self.L

    @property
    def battery_dim(self) -> int:
        return 1 << self.n

    @classmethod
    def from_dict(cls, data: dict) -> "ModelSpec":
        allowed = {"L", "n", "d", "J", "h", "delta", "kappa"}
        unknown = set(data) - allowed
        if unknown:
            raise ValueError(f"unknown model keys: {sorted(unknown)}")
        if "L" not in data or "n" not in data:
            raise ValueError("model requires at least the keys 'L' and 'n'")
        kwargs = dict(data)
        for key in ("L", "n", "d"):
            if kwargs.get(key) is not None:
                kwargs[key] = int(kwargs[key])
        for key in ("J", "h", "delta", "kappa"):
            if key in kwargs:
                kwargs[key] = float(kwargs[key])
        return cls(**kwargs)


def battery_positions(spec: ModelSpec) -> list[int]:
    """Charger sites carrying a battery: 1, 1+d, ..., 1+(n-1)d, wrapped into 1..L."""
    return [(i * spec.d) % spec.L + 1 for i in range(spec.n)]


@dataclass(eq=False)
class HermitianOperator:
    """Dense Hermitian operator on the composite register.

    The spectral decomposition is computed lazily and cached; the matrix
    itself must not be mutated after construction.
    """

    matrix: np.ndarray = field(repr=False)
    label: str = ""
    _decomposition: linalg.SpectralDecomposition | None = field(
        default=None, init=False, repr=False, compare=False
    )

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def decomposition(self) -> linalg.SpectralDecomposition:
        if self._decomposition is None:
            self._decomposition = linalg.eigh(self.matrix)
        return self._decomposition


def _charger_xmask(spec: ModelSpec, site: int) -> int:
    return 1 << (spec.n + spec.L - site)


def _battery_xmask(spec: ModelSpec, i: int) -> int:
    return 1 << (spec.n - i)


def _zvalues(dim: int, bit: int) -> np.ndarray:
    """Diagonal of sigma^z for one bit: +1 where the bit is 0, else -1."""
    return 1.0 - 2.0 * ((np.arange(dim) >> bit) & 1)


def _accumulate_charger(out: np.ndarray, spec: ModelSpec) -> None:
    idx = np.arange(spec.dim)
    # each i contributes its own bond term, so the single bond of an L=2
    # ring is counted twice (i=1 and i=2 both give sigma^x_1 sigma^x_2)
    for site in range(1, spec.L + 1):
        succ = site % spec.L + 1
        mask = _charger_xmask(spec, site) | _charger_xmask(spec, succ)
        out[idx ^ mask, idx] += -spec.J
    if spec.h != 0.0:
        diag = np.zeros(spec.dim)
        for site in range(1, spec.L + 1):
            diag += _zvalues(spec.dim, spec.n + spec.L - site)
        out[idx, idx] += -spec.h * diag


def _accumulate_batteries(out: np.ndarray, spec: ModelSpec) -> None:
    if spec.n == 0 or spec.delta == 0.0:
        return
    idx = np.arange(spec.dim)
    diag = np.zeros(spec.dim)
    for i in range(1, spec.n + 1):
        diag += _zvalues(spec.dim, spec.n - i)
    out[idx, idx] += -(spec.delta / 2.0) * diag


def _accumulate_coupling(out: np.ndarray, spec: ModelSpec) -> None:
    if spec.n == 0 or spec.kappa == 0.0:
        return
    idx = np.arange(spec.dim)
    for i, site in enumerate(battery_positions(spec), start=1):
        mask = _charger_xmask(spec, site) | _battery_xmask(spec, i)
        out[idx ^ mask, idx] += -spec.kappa


def build_charger(spec: ModelSpec) -> HermitianOperator:
    """Ring Hamiltonian embedded in the composite space (identity on batteries)."""
    out = np.zeros((spec.dim, spec.dim))
    _accumulate_charger(out, spec)
    return HermitianOperator(out, "H_c")


def build_batteries(spec: ModelSpec) -> HermitianOperator:
    """Battery gap Hamiltonian embedded in the composite space (diagonal)."""
    out = np.zeros((spec.dim, spec.dim))
    _accumulate_batteries(out, spec)
    return HermitianOperator(out, "H_b")


def build_coupling(spec: ModelSpec) -> HermitianOperator:
    """Charger-battery interaction embedded in the composite space."""
    out = np.zeros((spec.dim, spec.dim))
    _accumulate_coupling(out, spec)
    return HermitianOperator(out, "V_cb")


def build_total(spec: ModelSpec) -> HermitianOperator:
    """Full Hamiltonian H_c + H_b + V_cb, accumulated into a single array."""
    out = np.zeros((spec.dim, spec.dim))
    _accumulate_charger(out, spec)
    _accumulate_batteries(out, spec)
    _accumulate_coupling(out, spec)
    return HermitianOperator(out, "H_total")


def battery_energies(n: int, delta: float) -> np.ndarray:
    """Diagonal of the battery-factor Hamiltonian over the 2**n basis states.

    State with k excited batteries has energy delta*(k - n/2); the ground
    level is -n*delta/2 and levels come with binomial multiplicities.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    return delta * (bit_counts(np.arange(1 << n)) - n / 2.0)
