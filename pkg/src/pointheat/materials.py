"""Dielectric models, dipole polarizability, Planck statistics and
dipole-limit validity diagnostics."""

from dataclasses import dataclass, field

import numpy as np

from .constants import C, HBAR, KB
from .errors import DomainError, ResonancePoleError, UnsupportedQueryError


@dataclass(frozen=True)
class DielectricModel:
    """Frequency-dependent permittivity, one of several closed-form variants.

    ``kind`` is one of ``vacuum``, ``constant``, ``sic_lorentz``, ``drude``,
    ``mirror``.  The mirror is a symbolic perfect-reflector limit: it carries
    no epsilon and geometry code must branch on it instead of plugging in a
    large number.
    """

    kind: str
    params: tuple = field(default=())

    @classmethod
    def vacuum(cls):
        return cls("vacuum")

    @classmethod
    def constant(cls, eps: complex):
        eps = complex(eps)
        if eps.imag < 0.0:
            raise DomainError("passivity requires Im eps >= 0")
        return cls("constant", (eps,))

    @classmethod
    def sic_lorentz(cls, eps_inf: float, omega_lo: float, omega_to: float, gamma: float):
        if gamma <= 0.0:
            raise DomainError("lossy Lorentz model requires gamma > 0")
        return cls("sic_lorentz", (float(eps_inf), float(omega_lo), float(omega_to), float(gamma)))

    @classmethod
    def drude(cls, omega_p: float, omega_tau: float):
        if omega_tau <= 0.0:
            raise DomainError("Drude model requires omega_tau > 0")
        return cls("drude", (float(omega_p), float(omega_tau)))

    @classmethod
    def mirror(cls):
        return cls("mirror")

    @property
    def is_mirror(self) -> bool:
        return self.kind == "mirror"


# Material parameters used throughout the application examples.
SIC = DielectricModel.sic_lorentz(6.7, 1.82e14, 1.48e14, 8.93e11)
GOLD = DielectricModel.drude(1.37e16, 4.06e13)


def permittivity(model: DielectricModel, omega) -> complex:
    """epsilon(omega) of a dielectric model (omega in rad/s, > 0).

    Vectorized over ``omega``; raises for the mirror variant, which has no
    finite permittivity.
    """
    if model.is_mirror:
        raise UnsupportedQueryError("a perfect mirror has no finite permittivity")
    omega = np.asarray(omega, dtype=float)
    if np.any(omega <= 0.0):
        raise DomainError("omega must be positive")
    if model.kind == "vacuum":
        eps = np.ones_like(omega, dtype=complex)
    elif model.kind == "constant":
        eps = np.full_like(omega, model.params[0], dtype=complex)
    elif model.kind == "sic_lorentz":
        eps_inf, w_lo, w_to, gamma = model.params
        w2 = omega * omega
        eps = eps_inf * (w2 - w_lo**2 + 1j * omega * gamma) / (w2 - w_to**2 + 1j * omega * gamma)
    elif model.kind == "drude":
        w_p, w_tau = model.params
        eps = 1.0 - w_p**2 / (omega * (omega + 1j * w_tau))
    else:
        raise UnsupportedQueryError(f"unknown dielectric model {model.kind!r}")
    return complex(eps) if eps.ndim == 0 else eps


def polarizability(eps: complex, radius: float) -> complex:
    """Electric dipole polarizability alpha = R^3 (eps - 1) / (eps + 2)."""
    if radius <= 0.0:
        raise DomainError("radius must be positive")
    eps = complex(eps)
    if abs(eps + 2.0) < 1e-12:
        raise ResonancePoleError(
            "epsilon at the Clausius-Mossotti pole; the dipole model is invalid there"
        )
    return radius**3 * (eps - 1.0) / (eps + 2.0)


def planck_weight(omega, temperature: float):
    """Mean thermal photon energy hbar*omega / (exp(hbar*omega/kT) - 1) in J."""
    omega = np.asarray(omega, dtype=float)
    if np.any(omega <= 0.0) or temperature <= 0.0:
        raise DomainError("omega and temperature must be positive")
    x = HBAR * omega / (KB * temperature)
    w = HBAR * omega / np.expm1(x)
    return float(w) if w.ndim == 0 else w


def thermal_wavelength(temperature: float) -> float:
    """lambda_T = hbar c / (k_B T)."""
    if temperature <= 0.0:
        raise DomainError("temperature must be positive")
    return HBAR * C / (KB * temperature)


def thermal_omega(temperature: float) -> float:
    """omega_T = 2 pi k_B T / hbar, the dominant thermal frequency scale."""
    return 2.0 * np.pi * KB * temperature / HBAR


@dataclass(frozen=True)
class ParticleSpec:
    """A point particle: material, radius (m), position (m), temperature (K)."""

    material: DielectricModel
    radius: float
    position: tuple
    temperature: float

    def __post_init__(self):
        if self.material.is_mirror:
            # Im alpha = 0 for a perfect reflector: both transport formulas
            # would return an exact silent zero.
            raise DomainError(
                "mirror particles emit nothing in the dipole limit; "
                "use a constant or lossy dielectric model"
            )
        if self.radius <= 0.0:
            raise DomainError("particle radius must be positive")
        if self.temperature <= 0.0:
            raise DomainError("particle temperature must be positive")
        object.__setattr__(self, "position", tuple(float(x) for x in self.position))
        if len(self.position) != 3:
            raise DomainError("position must be a Cartesian triple")

    @property
    def volume(self) -> float:
        return 4.0 * np.pi / 3.0 * self.radius**3

    def alpha(self, omega: float) -> complex:
        """Dipole polarizability at omega."""
        return polarizability(permittivity(self.material, omega), self.radius)


# validity verdict thresholds (tool policy, reported but never enforced)
WARN_RATIO = 0.1
FAIL_RATIO = 0.3


@dataclass(frozen=True)
class ValidityCheck:
    name: str
    ratio: float
    verdict: str  # pass | warn | fail


def _verdict(ratio: float) -> str:
    if ratio >= FAIL_RATIO:
        return "fail"
    if ratio >= WARN_RATIO:
        return "warn"
    return "pass"


def dipole_validity(particle: ParticleSpec, distances=()) -> list[ValidityCheck]:
    """Dipole-limit diagnostics for a particle.

    Checks R against the thermal wavelength, the wavelength inside the
    material at the thermal frequency, and each supplied distance to another
    object.  Returns the ratio and a pass/warn/fail verdict for each check.
    """
    lam_t = thermal_wavelength(particle.temperature)
    checks = [ValidityCheck("radius_over_thermal_wavelength", particle.radius / lam_t,
                            _verdict(particle.radius / lam_t))]
    if not particle.material.is_mirror and particle.material.kind != "vacuum":
        eps_t = permittivity(particle.material, thermal_omega(particle.temperature))
        ratio = particle.radius * 2.0 * np.pi * abs(np.sqrt(eps_t)) / lam_t
        checks.append(ValidityCheck("radius_over_internal_wavelength", ratio, _verdict(ratio)))
    for i, dist in enumerate(distances):
        ratio = particle.radius / dist if dist > 0.0 else np.inf
        checks.append(ValidityCheck(f"radius_over_distance_{i}", ratio, _verdict(ratio)))
    return checks
