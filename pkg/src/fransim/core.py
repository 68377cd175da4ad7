"""Shared constants, unit conversions, time series container, seeded RNG."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "PhysConstants",
    "CONSTANTS",
    "TimeSeries",
    "SeededRng",
    "db_to_linear",
    "linear_to_db",
    "poisson_sample",
]


@dataclass(frozen=True)
class PhysConstants:
    """Physical constants used throughout.

    ``radiation_constant`` is the blackbody constant in the (T/100)^4
    convention, i.e. sigma_SB * 100^4.
    """

    c: float = 2.99792458e8          # m/s
    g: float = 9.8                   # m/s^2, surface value
    earth_radius: float = 6.371e6    # m
    radiation_constant: float = 5.67  # W m^-2 (K/100)^-4

    def __post_init__(self) -> None:
        for name in ("c", "g", "earth_radius", "radiation_constant"):
            value = getattr(self, name)
            if not np.isfinite(value) or value <= 0.0:
                raise ValueError(f"{name} must be positive and finite, got {value}")


CONSTANTS = PhysConstants()


def db_to_linear(loss_db: float) -> float:
    """Transmittance for a loss given in dB (0 dB -> 1.0)."""
    loss_db = float(loss_db)
    if not np.isfinite(loss_db):
        raise ValueError(f"loss_db must be finite, got {loss_db}")
    return 10.0 ** (-loss_db / 10.0)


def linear_to_db(transmittance: float) -> float:
    """Loss in dB for a transmittance in (0, 1]."""
    transmittance = float(transmittance)
    if not np.isfinite(transmittance) or transmittance <= 0.0:
        raise ValueError(f"transmittance must be positive, got {transmittance}")
    return -10.0 * np.log10(transmittance)


def _key_to_int(key: int | str) -> int:
    """Map a stream key to a stable 64-bit integer.

    Strings are hashed with BLAKE2 so the mapping is identical across
    processes (the builtin hash() is salted per interpreter run).
    """
    if isinstance(key, (int, np.integer)):
        return int(key) & 0xFFFFFFFFFFFFFFFF
    if isinstance(key, str):
        digest = hashlib.blake2b(key.encode("utf-8"), digest_size=8).digest()
        return int.from_bytes(digest, "little")
    raise TypeError(f"stream key must be int or str, got {type(key).__name__}")


@dataclass(frozen=True)
class SeededRng:
    """Deterministic RNG root.

    ``stream(*keys)`` derives an independent generator per key tuple, so a
    simulation can give every (trial, noise source) pair its own stream and
    adding one source never shifts the draws of another.
    """

    seed: int
    stream_id: int = 0

    def generator(self) -> np.random.Generator:
        return self._make()

    def stream(self, *keys: int | str) -> np.random.Generator:
        return self._make(*keys)

    def _make(self, *keys: int | str) -> np.random.Generator:
        entropy = [_key_to_int(self.seed), _key_to_int(self.stream_id)]
        entropy.extend(_key_to_int(k) for k in keys)
        return np.random.Generator(np.random.PCG64(np.random.SeedSequence(entropy)))


def poisson_sample(rng: SeededRng | np.random.Generator, mean):
    """Poisson draw(s) with the given mean (scalar or array).

    mean == 0 returns 0 exactly; negative or non-finite means are rejected.
    """
    if isinstance(rng, SeededRng):
        rng = rng.generator()
    mean = np.asarray(mean, dtype=float)
    if not np.all(np.isfinite(mean)) or np.any(mean < 0.0):
        raise ValueError("poisson mean must be finite and non-negative")
    out = rng.poisson(mean)
    if np.isscalar(out) or out.ndim == 0:
        return int(out)
    return out.astype(np.int64)


@dataclass
class TimeSeries:
    """Uniformly sampled series: times in seconds, values, and sample rate."""

    t: np.ndarray
    values: np.ndarray
    sample_rate: float = field(default=1.0)

    def __post_init__(self) -> None:
        self.t = np.asarray(self.t, dtype=float)
        self.values = np.asarray(self.values, dtype=float)
        if self.t.ndim != 1 or self.values.ndim != 1:
            raise ValueError("t and values must be 1-D arrays")
        if self.t.shape != self.values.shape:
            raise ValueError(
                f"t and values must have equal length, got {self.t.size} and {self.values.size}"
            )
        if self.t.size >= 2 and not np.all(np.diff(self.t) > 0.0):
            raise ValueError("t must be strictly increasing")
        if not np.isfinite(self.sample_rate) or self.sample_rate <= 0.0:
            raise ValueError(f"sample_rate must be positive, got {self.sample_rate}")

    def __len__(self) -> int:
        return self.t.size

    @property
    def duration(self) -> float:
        if self.t.size == 0:
            return 0.0
        return float(self.t[-1] - self.t[0]) + 1.0 / self.sample_rate

    def to_csv(self, path, value_label: str = "value") -> None:
        """Write the series as CSV with a commented header line."""
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(f"# t_s,{value_label}\n")
            for ti, vi in zip(self.t, self.values):
                fh.write(f"{ti:.9g},{vi:.12g}\n")
