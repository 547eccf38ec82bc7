"""
Workbench Settings
Defaults, JSON/environment loading and validation of the run configuration.
"""
import json
import logging
import os
import zlib
from dataclasses import dataclass, replace
from typing import Any, Dict, Optional, Tuple

import numpy as np

from core.elliptic import CurveParams, FParams
from core.errors import ConfigError

logger = logging.getLogger(__name__)

DEFAULTS: Dict[str, Any] = {
    "tau": complex(0.3, 1.1),
    "trunc": 40,
    "tol": 1e-9,
    "scale_tol": 1e-7,
    "seed": 42,
    "samples": 30,
    "degree_cap": 6,
    "fparams": ((0.23, 0.31), (0.57, 0.11)),
}

ENV_KEYS = {
    "seed": "ELLHECKE_SEED",
    "samples": "ELLHECKE_SAMPLES",
}


def get_setting(key: str, default: str = "") -> str:
    """Read a setting from the environment, falling back to the default."""
    return os.getenv(key, default)


@dataclass(frozen=True)
class Config:
    tau: complex
    trunc: int
    tol: float
    scale_tol: float
    seed: int
    samples: int
    degree_cap: int
    fparams: Tuple[Tuple[float, float], Tuple[float, float]]

    def curve(self) -> CurveParams:
        return CurveParams(self.tau, self.trunc, self.tol, self.scale_tol)

    def fparams_obj(self) -> FParams:
        return FParams.from_coords(self.fparams[0], self.fparams[1], self.curve())

    def rng(self, stream: str) -> np.random.Generator:
        """Generator seeded by (seed, stream) so suites do not share draws."""
        return np.random.default_rng([self.seed, zlib.crc32(stream.encode("utf-8"))])

    def with_curve(self, tau: complex) -> "Config":
        return replace(self, tau=complex(tau))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "tau": [self.tau.real, self.tau.imag],
            "trunc": self.trunc,
            "tol": self.tol,
            "scale_tol": self.scale_tol,
            "seed": self.seed,
            "samples": self.samples,
            "degree_cap": self.degree_cap,
            "fparams": [list(p) for p in self.fparams],
        }


def _coerce_tau(value: Any) -> complex:
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return complex(float(value[0]), float(value[1]))
    if isinstance(value, (int, float, complex)):
        return complex(value)
    raise ConfigError(f"tau must be [re, im], got {value!r}")


def _coerce_fparams(value: Any) -> Tuple[Tuple[float, float], Tuple[float, float]]:
    try:
        (a0, a1), (b0, b1) = value
        return (float(a0), float(a1)), (float(b0), float(b1))
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"fparams must be two [a, b] pairs, got {value!r}") from exc


def load_config(path: Optional[str] = None, **overrides: Any) -> Config:
    """Defaults < JSON file < environment < explicit overrides (None values ignored)."""
    merged: Dict[str, Any] = dict(DEFAULTS)

    if path:
        try:
            with open(path, "r", encoding="utf-8") as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config file {path}: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError(f"config file {path} must hold a JSON object")
        unknown = set(data) - set(DEFAULTS)
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        merged.update(data)

    for key, env in ENV_KEYS.items():
        raw = get_setting(env)
        if raw:
            merged[key] = raw

    merged.update({k: v for k, v in overrides.items() if v is not None})

    try:
        cfg = Config(
            tau=_coerce_tau(merged["tau"]),
            trunc=int(merged["trunc"]),
            tol=float(merged["tol"]),
            scale_tol=float(merged["scale_tol"]),
            seed=int(merged["seed"]),
            samples=int(merged["samples"]),
            degree_cap=int(merged["degree_cap"]),
            fparams=_coerce_fparams(merged["fparams"]),
        )
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"invalid config value: {exc}") from exc

    validate(cfg)
    logger.debug(f"Loaded config: {cfg.to_dict()}")
    return cfg


def validate(cfg: Config) -> None:
    if cfg.samples < 1:
        raise ConfigError(f"samples must be positive, got {cfg.samples}")
    if not 0 <= cfg.seed < 2 ** 64:
        raise ConfigError(f"seed must be a 64-bit unsigned integer, got {cfg.seed}")
    if not 1 <= cfg.degree_cap <= 12:
        raise ConfigError(f"degree_cap must be between 1 and 12, got {cfg.degree_cap}")
    if not 0 < cfg.tol < cfg.scale_tol < 1:
        raise ConfigError(f"need 0 < tol < scale_tol < 1, got {cfg.tol}, {cfg.scale_tol}")
    # CurveParams/FParams validation raises ConfigError / SingularParameter
    c = cfg.curve()
    try:
        cfg.fparams_obj()
    except ConfigError:
        raise
    except Exception as exc:
        raise ConfigError(f"fparams rejected on tau = {c.tau}: {exc}") from exc
