"""Driven spin-S system: operators, Hamiltonian, eigenframe, coupling coefficients.

Basis convention used everywhere: row/column k of a d x d matrix corresponds
to the magnetic quantum number m = S - k, i.e. m runs S, S-1, ..., -S down
the diagonal.  Half-integer spins are carried as the integer 2S to avoid
floating-point spin labels.
"""

import enum
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatchError, NotHermitianError
from .linalg import as_matrix, hermitian_eigen, is_hermitian


@dataclass(frozen=True)
class SpinQuantumNumber:
    """Spin magnitude stored as 2S (so S in {1/2, 1, 3/2, ...})."""

    twice_s: int

    def __post_init__(self):
        if not isinstance(self.twice_s, int) or self.twice_s < 1:
            raise ValueError(f"twice_s must be a positive integer, got {self.twice_s!r}")

    @property
    def d(self):
        return self.twice_s + 1

    @property
    def value(self):
        """S as a float."""
        return self.twice_s / 2.0

    @classmethod
    def from_string(cls, text):
        """Parse '1/2', '1', '3/2', ... into a SpinQuantumNumber."""
        text = text.strip()
        if "/" in text:
            num, den = text.split("/", 1)
            if den.strip() != "2":
                raise ValueError(f"spin denominator must be 2, got {text!r}")
            return cls(int(num))
        return cls(2 * int(text))

    def m_values(self):
        """Magnetic quantum numbers in basis order (S, S-1, ..., -S)."""
        return (self.twice_s - 2 * np.arange(self.d)) / 2.0


@dataclass(frozen=True)
class DriveParameters:
    """Transition frequency and tunneling angles of the driven Hamiltonian."""

    omega_s: float
    alpha: float
    phi: float

    def __post_init__(self):
        if not self.omega_s > 0:
            raise ValueError(f"omega_s must be > 0, got {self.omega_s}")
        if not 0.0 <= self.alpha < np.pi:
            raise ValueError(f"alpha must lie in [0, pi), got {self.alpha}")
        if not 0.0 <= self.phi < 2 * np.pi:
            raise ValueError(f"phi must lie in [0, 2*pi), got {self.phi}")


class CouplingKind(enum.Enum):
    SZ = "sz"
    SMINUS = "sminus"
    CUSTOM = "custom"


@dataclass(frozen=True)
class CouplingSpec:
    """System side of the interaction Hamiltonian."""

    kind: CouplingKind
    custom_matrix: np.ndarray | None = None

    @classmethod
    def sz(cls):
        return cls(CouplingKind.SZ)

    @classmethod
    def sminus(cls):
        return cls(CouplingKind.SMINUS)

    @classmethod
    def custom(cls, matrix):
        return cls(CouplingKind.CUSTOM, as_matrix(matrix))

    def resolve(self, s: SpinQuantumNumber):
        """The coupling operator as a d x d matrix in the S_z basis."""
        ops = spin_operators(s)
        if self.kind is CouplingKind.SZ:
            return ops["sz"]
        if self.kind is CouplingKind.SMINUS:
            return ops["sminus"]
        m = as_matrix(self.custom_matrix)
        if m.shape != (s.d, s.d):
            raise DimensionMismatchError(
                f"custom coupling must be {s.d}x{s.d} for 2S={s.twice_s}, got {m.shape}"
            )
        return m


def spin_operators(s: SpinQuantumNumber):
    """Spin matrices {sx, sy, sz, splus, sminus} in the S_z basis (m = S..-S).

    The ladder rule S_+- |m> = sqrt((S -+ m)(S +- m + 1)) |m +- 1> fixes the
    raising/lowering matrix elements; sx, sy follow from them.
    """
    d = s.d
    sval = s.value
    m = s.m_values()
    sz = np.diag(m).astype(np.complex128)
    splus = np.zeros((d, d), dtype=np.complex128)
    for k in range(1, d):
        # raises m[k] = S-k to m[k-1]
        mm = m[k]
        splus[k - 1, k] = np.sqrt((sval - mm) * (sval + mm + 1.0))
    sminus = splus.conj().T.copy()
    sx = 0.5 * (splus + sminus)
    sy = -0.5j * (splus - sminus)
    return {"sx": sx, "sy": sy, "sz": sz, "splus": splus, "sminus": sminus}


def build_hs(s: SpinQuantumNumber, drive: DriveParameters):
    """Driven Hamiltonian (omega_s/2)[sin(a)(S+ e^{-i phi} + S- e^{i phi}) + 2 cos(a) Sz]."""
    ops = spin_operators(s)
    sa, ca = np.sin(drive.alpha), np.cos(drive.alpha)
    h = 0.5 * drive.omega_s * (
        sa * (ops["splus"] * np.exp(-1j * drive.phi) + ops["sminus"] * np.exp(1j * drive.phi))
        + 2.0 * ca * ops["sz"]
    )
    return 0.5 * (h + h.conj().T)


@dataclass(frozen=True)
class EigenFrame:
    """Unitary into the dressed basis; column k holds the eigenvector of
    eigenvalue omega_s*(S-k)."""

    u: np.ndarray
    eigenvalues: np.ndarray


def eigenframe(hs, drive: DriveParameters, s: SpinQuantumNumber | None = None):
    """Diagonalize the driven Hamiltonian into its equally spaced ladder.

    Columns are ordered by descending eigenvalue.  Phases are fixed by
    making the largest-magnitude component of each column real positive
    (ties resolved toward the lowest row index); physical outputs
    downstream depend only on phase-invariant combinations.
    """
    hs = as_matrix(hs)
    if not is_hermitian(hs):
        raise NotHermitianError("eigenframe expects a Hermitian Hamiltonian")
    d = hs.shape[0]
    if s is None:
        s = SpinQuantumNumber(d - 1)
    dec = hermitian_eigen(hs)
    u = dec.eigenvectors.copy()
    for k in range(d):
        col = u[:, k]
        mags = np.abs(col)
        top = mags.max()
        idx = int(np.argmax(mags >= top * (1.0 - 1e-12)))
        z = col[idx]
        u[:, k] = col * (np.conj(z) / abs(z))
    ladder = drive.omega_s * s.m_values()
    tol = 1e-9 * max(1.0, drive.omega_s)
    if np.max(np.abs(dec.eigenvalues - ladder)) > tol:
        raise ValueError(
            "spectrum is not the equally spaced ladder omega_s*m; "
            "eigenframe expects the driven spin Hamiltonian"
        )
    return EigenFrame(u=u, eigenvalues=dec.eigenvalues)


@dataclass(frozen=True)
class CouplingCoefficients:
    """Matrix of c_{l,m} = <psi_l| Pi |psi_m>, rows/cols ordered m = S..-S."""

    c: np.ndarray

    @property
    def diag(self):
        return np.diag(self.c).copy()


def coupling_coefficients(frame: EigenFrame, pi_spec: CouplingSpec, s: SpinQuantumNumber):
    """Transform the coupling operator into the dressed basis, c = U^dag Pi U."""
    pi = pi_spec.resolve(s)
    u = frame.u
    if pi.shape != u.shape:
        raise DimensionMismatchError(f"coupling operator {pi.shape} vs frame {u.shape}")
    return CouplingCoefficients(c=u.conj().T @ pi @ u)


@dataclass(frozen=True)
class SpinModel:
    """Everything fixed per run: spin, drive, operators, frame, couplings."""

    s: SpinQuantumNumber
    drive: DriveParameters
    coupling: CouplingSpec
    hs: np.ndarray = field(repr=False)
    frame: EigenFrame = field(repr=False)
    c: CouplingCoefficients = field(repr=False)

    @property
    def d(self):
        return self.s.d


def build_model(s: SpinQuantumNumber, drive: DriveParameters, coupling: CouplingSpec):
    hs = build_hs(s, drive)
    frame = eigenframe(hs, drive, s)
    c = coupling_coefficients(frame, coupling, s)
    return SpinModel(s=s, drive=drive, coupling=coupling, hs=hs, frame=frame, c=c)
