"""Run configuration: embedded defaults, a flat key=value config file
(fracml.conf, or the path in FRACML_CONFIG), and CLI flag overrides, in
that order of precedence."""

from __future__ import annotations

import os
from dataclasses import dataclass, fields
from pathlib import Path

from .errors import DomainError
from .quadrature import QuadSpec

CONFIG_ENV = "FRACML_CONFIG"
CONFIG_FILENAME = "fracml.conf"


@dataclass
class RunConfig:
    quad_abs_tol: float = 1e-10
    quad_rel_tol: float = 1e-8
    quad_max_subdivisions: int = 2000
    quad_split_point: float = 1.0
    series_tol: float = 1e-14
    series_max_terms: int = 10000
    z_series_switch: float = 10.0
    cancel_limit: float = 1e12
    phi_switch_u: float = 1.0
    phi_k_max: int = 12
    squeeze_tau_max: float = 0.2
    tau_min: float = 1e-8
    seed: int = 0
    format: str = "csv"
    out: str = ""

    def quad_spec(self) -> QuadSpec:
        return QuadSpec(
            abs_tol=self.quad_abs_tol,
            rel_tol=self.quad_rel_tol,
            max_subdivisions=self.quad_max_subdivisions,
            split_point=self.quad_split_point,
        )

    def show(self) -> str:
        lines = [f"{f.name}={getattr(self, f.name)}" for f in fields(self)]
        return "\n".join(sorted(lines)) + "\n"


def _coerce(name: str, kind: type, raw: str):
    try:
        if kind is int:
            return int(raw)
        if kind is float:
            return float(raw)
        return raw
    except ValueError as exc:
        raise DomainError(f"config key {name}: cannot parse {raw!r} as {kind.__name__}") from exc


def load_config(path: str | None = None) -> RunConfig:
    """Defaults, overridden by the config file when one exists.

    Lookup order for the file: explicit path argument, FRACML_CONFIG,
    ./fracml.conf.  Unknown keys are rejected (typos should not pass
    silently).
    """
    cfg = RunConfig()
    candidate = path or os.environ.get(CONFIG_ENV) or CONFIG_FILENAME
    p = Path(candidate)
    if not p.is_file():
        if path or os.environ.get(CONFIG_ENV):
            raise DomainError(f"config file not found: {candidate}")
        return cfg
    known = {f.name: f.type for f in fields(cfg)}
    types = {"int": int, "float": float, "str": str}
    for lineno, line in enumerate(p.read_text().splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise DomainError(f"{p}:{lineno}: expected key=value, got {line!r}")
        key, _, raw = line.partition("=")
        key, raw = key.strip(), raw.strip()
        if key not in known:
            raise DomainError(f"{p}:{lineno}: unknown config key {key!r}")
        kind = types.get(str(known[key]), str) if isinstance(known[key], str) else known[key]
        setattr(cfg, key, _coerce(key, kind, raw))
    return cfg
