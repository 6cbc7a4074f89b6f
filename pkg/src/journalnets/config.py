"""Study configuration: one field, three networks, all tuning knobs.

Loaded from a flat YAML file; every number a study emits is traceable to
a field here. Relative input paths resolve against the config file's
directory. Schema (defaults in parentheses):

    field: <name>
    networks:
      ie: {path: ..., kind: bipartite|one-mode (bipartite),
           sizes: <csv path, optional>, resolution: (1.0),
           seed: (0), restarts: (10)}
      cc: {...}
      ia: {...}
    correlation:
      n_permutations: (99999)
      seed: (0)
      alpha: (0.01)
      family_size: (3)
      centering: classical|unbiased (classical)
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Mapping

import yaml

NETWORK_KEYS = ("ie", "cc", "ia")
INPUT_KINDS = ("bipartite", "one-mode")


@dataclass(frozen=True)
class NetworkSettings:
    path: str
    kind: str = "bipartite"
    sizes: str | None = None
    resolution: float = 1.0
    seed: int = 0
    restarts: int = 10

    def __post_init__(self) -> None:
        if self.kind not in INPUT_KINDS:
            raise ValueError(f"kind must be one of {INPUT_KINDS}, got {self.kind!r}")
        if self.resolution <= 0:
            raise ValueError("resolution must be > 0")
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")


@dataclass(frozen=True)
class CorrelationSettings:
    n_permutations: int = 99999
    seed: int = 0
    alpha: float = 0.01
    family_size: int = 3
    centering: str = "classical"

    def __post_init__(self) -> None:
        if self.n_permutations < 1:
            raise ValueError("n_permutations must be >= 1")
        if not 0.0 < self.alpha < 1.0:
            raise ValueError("alpha must lie in (0, 1)")
        if self.family_size < 1:
            raise ValueError("family_size must be >= 1")
        if self.centering not in ("classical", "unbiased"):
            raise ValueError(f"unknown centering {self.centering!r}")


@dataclass(frozen=True)
class StudyConfig:
    field: str
    networks: Mapping[str, NetworkSettings]
    correlation: CorrelationSettings

    def __post_init__(self) -> None:
        missing = [k for k in NETWORK_KEYS if k not in self.networks]
        if missing:
            raise ValueError(f"missing network sections: {', '.join(missing)}")
        extra = [k for k in self.networks if k not in NETWORK_KEYS]
        if extra:
            raise ValueError(f"unknown network sections: {', '.join(extra)}")


def _take(mapping: dict, allowed: frozenset, where: str) -> dict:
    """Copy a section, rejecting unknown keys (typo safety)."""
    unknown = set(mapping) - allowed
    if unknown:
        raise ValueError(f"{where}: unknown keys: {', '.join(sorted(unknown))}")
    return dict(mapping)


def load_study_config(path: str | Path) -> StudyConfig:
    path = Path(path)
    raw = yaml.safe_load(path.read_text(encoding="utf-8"))
    if not isinstance(raw, dict):
        raise ValueError(f"{path}: config must be a mapping")
    base = path.parent

    top = _take(raw, frozenset({"field", "networks", "correlation"}), str(path))
    if "field" not in top or "networks" not in top:
        raise ValueError(f"{path}: 'field' and 'networks' are required")

    networks_raw = top["networks"]
    if not isinstance(networks_raw, dict):
        raise ValueError(f"{path}: 'networks' must be a mapping")
    networks: dict[str, NetworkSettings] = {}
    known_net = frozenset(
        {"path", "kind", "sizes", "resolution", "seed", "restarts"}
    )
    for key, section in networks_raw.items():
        if not isinstance(section, dict):
            raise ValueError(f"{path}: networks.{key} must be a mapping")
        vals = _take(section, known_net, f"{path}: networks.{key}")
        if "path" not in vals:
            raise ValueError(f"{path}: networks.{key}: 'path' is required")
        vals["path"] = str(base / vals["path"])
        if vals.get("sizes") is not None:
            vals["sizes"] = str(base / vals["sizes"])
        networks[key] = NetworkSettings(**vals)

    corr_raw = top.get("correlation", {}) or {}
    if not isinstance(corr_raw, dict):
        raise ValueError(f"{path}: 'correlation' must be a mapping")
    known_corr = frozenset(
        {"n_permutations", "seed", "alpha", "family_size", "centering"}
    )
    correlation = CorrelationSettings(
        **_take(corr_raw, known_corr, f"{path}: correlation")
    )
    return StudyConfig(str(top["field"]), networks, correlation)
