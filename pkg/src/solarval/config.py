"""Run configuration: one TOML file, environment override, CLI on top.

Schema (all keys optional; defaults shown)::

    [scenario]
    weights = [0.0, 0.2, 0.4, 0.5, 0.6, 0.8, 1.0]  # cost weights in [0, 1]
    preset = "current"            # zoning preset: current | expanded | ignore
    fix_total_solar = true        # pin each period's solar total to the
                                  # least-cost level for every weight < 1
    seed = 2012                   # synthetic dataset seed

    [paths]
    data = "data"                 # dataset directory
    out = "out"                   # report/plot directory

Precedence: CLI flags beat the ``SOLARVAL_DATA`` environment variable, which
beats the config file, which beats the defaults above.
"""

from __future__ import annotations

import os

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from dataclasses import dataclass, field, replace
from pathlib import Path

from .siting import ZONING_PRESETS

DATA_ENV_VAR = "SOLARVAL_DATA"
DEFAULT_WEIGHTS = (0.0, 0.2, 0.4, 0.5, 0.6, 0.8, 1.0)


@dataclass(frozen=True)
class ScenarioConfig:
    """Everything one sweep needs: weights, preset, pin flag, paths, seed."""

    weights: tuple[float, ...] = DEFAULT_WEIGHTS
    preset: str = "current"
    fix_total_solar: bool = True
    data_dir: Path = field(default_factory=lambda: Path("data"))
    out_dir: Path = field(default_factory=lambda: Path("out"))
    seed: int = 2012

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(float(w) for w in self.weights))
        object.__setattr__(self, "data_dir", Path(self.data_dir))
        object.__setattr__(self, "out_dir", Path(self.out_dir))
        if not self.weights:
            raise ValueError("at least one weight required")
        for w in self.weights:
            if not 0.0 <= w <= 1.0:
                raise ValueError(f"weight {w} outside [0, 1]")
        if self.preset not in ZONING_PRESETS:
            raise ValueError(
                f"unknown preset {self.preset!r}; pick one of {ZONING_PRESETS}"
            )
        if int(self.seed) != self.seed:
            raise ValueError("seed must be an integer")


_SCENARIO_KEYS = {"weights", "preset", "fix_total_solar", "seed"}
_PATH_KEYS = {"data", "out"}


def load_config(
    path: Path | str | None = None, env: dict | None = None
) -> ScenarioConfig:
    """Build a ScenarioConfig from a TOML file (or pure defaults).

    Unknown keys are rejected so typos fail loudly instead of silently
    running the default.  ``env`` defaults to ``os.environ``.
    """
    env = os.environ if env is None else env
    raw: dict = {}
    if path is not None:
        with open(path, "rb") as fh:
            raw = tomllib.load(fh)

    unknown = set(raw) - {"scenario", "paths"}
    if unknown:
        raise ValueError(f"unknown config section(s): {sorted(unknown)}")
    scenario = raw.get("scenario", {})
    paths = raw.get("paths", {})
    for section, keys, got in (
        ("scenario", _SCENARIO_KEYS, scenario),
        ("paths", _PATH_KEYS, paths),
    ):
        bad = set(got) - keys
        if bad:
            raise ValueError(f"unknown key(s) in [{section}]: {sorted(bad)}")

    cfg = ScenarioConfig(
        weights=tuple(scenario.get("weights", DEFAULT_WEIGHTS)),
        preset=scenario.get("preset", "current"),
        fix_total_solar=bool(scenario.get("fix_total_solar", True)),
        data_dir=paths.get("data", "data"),
        out_dir=paths.get("out", "out"),
        seed=int(scenario.get("seed", 2012)),
    )
    override = env.get(DATA_ENV_VAR)
    if override:
        cfg = replace(cfg, data_dir=Path(override))
    return cfg
