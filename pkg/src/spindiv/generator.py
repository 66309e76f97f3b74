"""The secular TCL2 generator at a fixed time.

Three term groups act on the interaction-picture density matrix:

  (i)   diagonal dephasing, weight (Gamma_0 + tilde-Gamma_0) |c_ll|^2;
  (ii)  cross terms (Lambda_0 + tilde-Lambda_0^*) c_kk c_ll^* sigma_ll rho sigma_kk
        plus their Hermitian conjugates (the imaginary parts of the complex
        prefactor cancel identically in the conjugate pair);
  (iii) transition terms in Lindblad sandwich form, jump sigma_ml with
        weight Gamma_{l-m} |c_lm|^2 + tilde-Gamma_{m-l} |c_ml|^2.

Everything reduces to an elementwise (Hadamard) action plus a classical
population-flow matrix, which is what ``apply_generator`` evaluates; the
test suite checks it against a literal sandwich-operator construction.
"""

from dataclasses import dataclass, field

import numpy as np

from .bath import RateTable
from .errors import DimensionMismatchError
from .linalg import as_matrix
from .spin import SpinModel


@dataclass
class GeneratorSnapshot:
    """Coupling coefficients plus all decay rates frozen at one time."""

    time: float
    c: np.ndarray
    lam0: complex
    lam0_tilde: complex
    gamma: np.ndarray        # indexed by q + q_max, q = l - m
    gamma_tilde: np.ndarray
    _hadamard: np.ndarray = field(default=None, repr=False)
    _flow: np.ndarray = field(default=None, repr=False)
    _superop: np.ndarray = field(default=None, repr=False)

    def __post_init__(self):
        self.c = as_matrix(self.c)
        d = self.c.shape[0]
        if self.c.shape != (d, d):
            raise DimensionMismatchError("coupling coefficient matrix must be square")
        if self.gamma.size != self.gamma_tilde.size or self.gamma.size != 2 * (d - 1) + 1:
            raise DimensionMismatchError(
                f"need rates for q in [-{d-1}, {d-1}], got {self.gamma.size} values"
            )
        self._build_action()

    @property
    def d(self):
        return self.c.shape[0]

    def _gamma_at(self, q):
        return self.gamma[q + self.d - 1], self.gamma_tilde[q + self.d - 1]

    def _build_action(self):
        d = self.d
        c = self.c
        cd = np.diag(c)
        g0 = self.gamma[d - 1] + self.gamma_tilde[d - 1]

        flow = np.zeros((d, d))
        out_rate = np.zeros(d)
        for i in range(d):
            for jk in range(d):
                if i == jk:
                    continue
                g, _ = self._gamma_at(jk - i)
                _, gt = self._gamma_at(i - jk)
                r = g * abs(c[i, jk]) ** 2 + gt * abs(c[jk, i]) ** 2
                flow[jk, i] = r
                out_rate[i] += r

        dd = np.abs(cd) ** 2
        had = g0 * (np.conj(cd)[:, None] * cd[None, :] - 0.5 * (dd[:, None] + dd[None, :]))
        had = had - 0.5 * (out_rate[:, None] + out_rate[None, :])
        np.fill_diagonal(had, -out_rate)
        self._hadamard = had
        self._flow = flow

    @property
    def superop(self):
        """d^2 x d^2 matrix M with M vec(X) = vec(L[X]), column-major vec."""
        if self._superop is None:
            d = self.d
            m = np.empty((d * d, d * d), dtype=np.complex128)
            basis = np.zeros((d, d), dtype=np.complex128)
            for n in range(d):
                for jj in range(d):
                    basis[jj, n] = 1.0
                    m[:, jj + n * d] = apply_generator(basis, self).flatten(order="F")
                    basis[jj, n] = 0.0
            self._superop = m
        return self._superop


def snapshot_from_table(model: SpinModel, table: RateTable, index: int) -> GeneratorSnapshot:
    """Freeze the generator at one row of a rate table."""
    qi0 = table.q_index(0)
    return GeneratorSnapshot(
        time=float(table.times[index]),
        c=model.c.c,
        lam0=complex(table.lam[qi0, index]),
        lam0_tilde=complex(table.lam_tilde[qi0, index]),
        gamma=table.gamma[:, index].copy(),
        gamma_tilde=table.gamma_tilde[:, index].copy(),
    )


def apply_generator(rho, snap: GeneratorSnapshot):
    """Time derivative of the interaction-picture state under the generator.

    Linear in rho; trace-free and Hermiticity-preserving by construction.
    """
    rho = as_matrix(rho)
    if rho.shape != (snap.d, snap.d):
        raise DimensionMismatchError(f"state must be {snap.d}x{snap.d}, got {rho.shape}")
    out = snap._hadamard * rho
    out[np.diag_indices(snap.d)] += snap._flow @ np.diag(rho)
    return out


@dataclass(frozen=True)
class Spin1Rates:
    """Effective rates of the spin-1 specialization: collective dephasing
    gamma_0 and the raising/lowering pair gamma_plus, gamma_minus."""

    gamma_0: float
    gamma_plus: float
    gamma_minus: float

    def as_tuple(self):
        return (self.gamma_0, self.gamma_plus, self.gamma_minus)


def spin1_rates(snap: GeneratorSnapshot) -> Spin1Rates:
    """Combine coupling coefficients and q-rates into the three spin-1 rates."""
    if snap.d != 3:
        raise DimensionMismatchError(f"spin-1 rates need d=3, got d={snap.d}")
    c = snap.c
    g_m1, gt_m1 = snap._gamma_at(-1)
    g_p1, gt_p1 = snap._gamma_at(+1)
    g_0, gt_0 = snap._gamma_at(0)
    return Spin1Rates(
        gamma_0=abs(c[0, 0]) ** 2 * (g_0 + gt_0),
        gamma_plus=abs(c[1, 0]) ** 2 * (g_m1 + gt_p1),
        gamma_minus=abs(c[0, 1]) ** 2 * (g_p1 + gt_m1),
    )


def _unit(d, i, jj):
    m = np.zeros((d, d), dtype=np.complex128)
    m[i, jj] = 1.0
    return m


def spin1_generator(rho, rates: Spin1Rates):
    """Spin-1 master equation right-hand side: collective dephasing through
    sigma_{1,1} - sigma_{-1,-1} plus two ladders of transition jumps."""
    rho = as_matrix(rho)
    if rho.shape != (3, 3):
        raise DimensionMismatchError(f"state must be 3x3, got {rho.shape}")
    s11, s00, smm = _unit(3, 0, 0), _unit(3, 1, 1), _unit(3, 2, 2)
    a = s11 - smm
    out = rates.gamma_0 * (a @ rho @ a - 0.5 * (a @ a @ rho + rho @ a @ a))
    up1, up0 = _unit(3, 0, 1), _unit(3, 1, 2)   # sigma_{1,0}, sigma_{0,-1}
    dn1, dn0 = _unit(3, 1, 0), _unit(3, 2, 1)   # sigma_{0,1}, sigma_{-1,0}
    anti_p = s00 + smm
    out += rates.gamma_plus * (
        up1 @ rho @ dn1 + up0 @ rho @ dn0 - 0.5 * (anti_p @ rho + rho @ anti_p)
    )
    anti_m = s00 + s11
    out += rates.gamma_minus * (
        dn1 @ rho @ up1 + dn0 @ rho @ up0 - 0.5 * (anti_m @ rho + rho @ anti_m)
    )
    return out


def superoperator_matrix(snap: GeneratorSnapshot, d=None):
    """Column-stacked matrix representation of the generator."""
    if d is not None and d != snap.d:
        raise DimensionMismatchError(f"snapshot has d={snap.d}, requested {d}")
    return snap.superop.copy()
