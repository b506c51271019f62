"""Run configuration: defaults, JSON config files and environment overrides."""

from __future__ import annotations

import json
import os
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path

ENV_PREFIX = "TENTSPACE_"


@dataclass(frozen=True)
class Config:
    """Numerical knobs shared by the CLI and the verification scenarios.

    Environment variables ``TENTSPACE_<FIELD>`` (upper case) override values
    from a config file, which in turn override the defaults.
    """

    degree: int = 64
    radial_order: int = 48
    angular_count: int = 128
    circle_count: int = 4096
    grid_depth: int = 10
    radial_depth: int = 14
    probe_radii: tuple = (0.3, 0.5, 0.8)
    cross_check_tol: float = 1e-6
    quadrature_rtol: float = 1e-9
    band_k: float = 10.0
    seed: int = 20240611

    def __post_init__(self):
        object.__setattr__(self, "probe_radii", tuple(float(r) for r in self.probe_radii))
        if self.degree < 8:
            raise ValueError("degree must be at least 8")
        if self.grid_depth < 4:
            raise ValueError("grid_depth must be at least 4")
        for name in ("radial_order", "angular_count", "circle_count", "radial_depth"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        for name in ("cross_check_tol", "quadrature_rtol", "band_k"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if not self.probe_radii or not all(0 < r < 1 for r in self.probe_radii):
            raise ValueError("probe radii must lie in (0, 1)")
        if self.seed < 0:
            raise ValueError("seed must be nonnegative")

    def to_dict(self) -> dict:
        d = asdict(self)
        d["probe_radii"] = list(self.probe_radii)
        return d

    def with_overrides(self, **kwargs) -> "Config":
        return replace(self, **{k: v for k, v in kwargs.items() if v is not None})


def _coerce(kind, raw: str):
    if kind in ("tuple", tuple):
        return tuple(float(x) for x in raw.split(",") if x.strip())
    if kind in ("int", int):
        return int(raw)
    return float(raw)


def load_config(path: str | os.PathLike | None = None, env=None) -> Config:
    """Defaults, then the JSON file at ``path``, then environment overrides."""
    values: dict = {}
    known = {f.name: f.type for f in fields(Config)}
    if path is not None:
        data = json.loads(Path(path).read_text())
        if not isinstance(data, dict):
            raise ValueError("config file must hold a JSON object")
        unknown = set(data) - set(known)
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        values.update(data)
    env = os.environ if env is None else env
    for name, kind in known.items():
        raw = env.get(ENV_PREFIX + name.upper())
        if raw is not None:
            values[name] = _coerce(kind, raw)
    return Config(**values)
