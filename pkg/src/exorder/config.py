"""Experiment configuration and report serialization.

Configurations are plain JSON objects with a fixed schema; unknown keys are
rejected with the offending field named, and the master seed is mandatory
(there is deliberately no wall-clock fallback).  Reports echo the full
configuration, carry per-check results and provenance, and round-trip
through JSON losslessly apart from the timing field.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from typing import Any, Mapping

from .distributions import ContinuousDist, Exponential, Uniform, Weibull

__all__ = ["CHECK_NAMES", "ConfigError", "ExperimentConfig", "Report", "build_baseline"]

CHECK_NAMES = ("st", "disp", "star", "si", "pqd", "tau", "corr", "phr", "copula-free")

# Checks that compare the spacing X_{j:n} - X_{i:n} and need i < j.
_SPACING_CHECKS = {"st", "disp", "star"}
# Checks about the pair (X_{1:n}, X_{j:n}) and need j >= 2.
_PAIR_CHECKS = {"si", "pqd", "tau", "corr", "phr", "copula-free"}


class ConfigError(ValueError):
    """Invalid experiment configuration (message names the offending field)."""


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise ConfigError(message)


def _as_int(value: Any, name: str, minimum: int) -> int:
    _require(isinstance(value, int) and not isinstance(value, bool), f"{name}: must be an integer")
    _require(value >= minimum, f"{name}: must be at least {minimum}")
    return value


@dataclass(frozen=True)
class ExperimentConfig:
    """Declarative description of one verification run."""

    rates: tuple[float, ...]
    checks: tuple[str, ...]
    master_seed: int
    i: int = 1
    j: int | None = None
    grid_points: int = 199
    pq_points: int = 19
    copula_resolution: int = 50
    monte_carlo_m: int = 100_000
    baseline: Mapping[str, Any] | None = None
    tolerances: Mapping[str, float] = field(default_factory=dict)

    @classmethod
    def from_dict(cls, raw: Mapping[str, Any]) -> "ExperimentConfig":
        _require(isinstance(raw, Mapping), "config: must be a JSON object")
        data = dict(raw)

        rates_raw = data.pop("rates", None)
        _require(isinstance(rates_raw, (list, tuple)), "rates: must be a list of numbers")
        _require(len(rates_raw) >= 2, "rates: need at least two entries")
        rates = []
        for idx, r in enumerate(rates_raw):
            _require(
                isinstance(r, (int, float)) and not isinstance(r, bool) and r > 0,
                f"rates[{idx}]: must be a positive number",
            )
            rates.append(float(r))
        n = len(rates)

        checks_raw = data.pop("checks", None)
        _require(isinstance(checks_raw, (list, tuple)), "checks: must be a list of check names")
        _require(len(checks_raw) >= 1, "checks: need at least one entry")
        for c in checks_raw:
            _require(c in CHECK_NAMES, f"checks: unknown check {c!r} (valid: {', '.join(CHECK_NAMES)})")
        checks = tuple(checks_raw)

        _require("master_seed" in data, "master_seed: required (no wall-clock fallback)")
        master_seed = _as_int(data.pop("master_seed"), "master_seed", 0)

        i = _as_int(data.pop("i", 1), "i", 1)
        j = data.pop("j", None)
        if j is not None:
            j = _as_int(j, "j", 1)
        grid_points = _as_int(data.pop("grid_points", 199), "grid_points", 2)
        pq_points = _as_int(data.pop("pq_points", 19), "pq_points", 2)
        copula_resolution = _as_int(data.pop("copula_resolution", 50), "copula_resolution", 2)
        monte_carlo_m = _as_int(data.pop("monte_carlo_m", 100_000), "monte_carlo_m", 100)

        baseline = data.pop("baseline", None)
        if baseline is not None:
            _require(isinstance(baseline, Mapping), "baseline: must be an object")
            baseline = dict(baseline)

        tolerances_raw = data.pop("tolerances", {})
        _require(isinstance(tolerances_raw, Mapping), "tolerances: must be an object")
        tolerances = {}
        for key, val in tolerances_raw.items():
            _require(key in CHECK_NAMES, f"tolerances: unknown check {key!r}")
            _require(
                isinstance(val, (int, float)) and not isinstance(val, bool),
                f"tolerances[{key}]: must be a number",
            )
            tolerances[key] = float(val)

        if data:
            raise ConfigError(f"unknown config key: {sorted(data)[0]!r}")

        _require(i <= n, f"i: must be at most n={n}")
        if j is not None:
            _require(j <= n, f"j: must be at most n={n}")
        for c in checks:
            if c in _SPACING_CHECKS:
                _require(j is not None, f"j: required by check {c!r}")
                _require(i < j, f"check {c!r} needs i < j, got i={i}, j={j}")
            if c in _PAIR_CHECKS:
                _require(j is not None and j >= 2, f"check {c!r} needs j >= 2")
        if "phr" in checks:
            _require(baseline is not None, "baseline: required by check 'phr'")
        if baseline is not None:
            build_baseline(baseline)  # validate eagerly

        return cls(
            rates=tuple(rates),
            checks=checks,
            master_seed=master_seed,
            i=i,
            j=j,
            grid_points=grid_points,
            pq_points=pq_points,
            copula_resolution=copula_resolution,
            monte_carlo_m=monte_carlo_m,
            baseline=baseline,
            tolerances=tolerances,
        )

    @classmethod
    def from_json(cls, text: str) -> "ExperimentConfig":
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config is not valid JSON: {exc}") from exc
        return cls.from_dict(raw)

    def to_dict(self) -> dict:
        out: dict[str, Any] = {
            "rates": list(self.rates),
            "checks": list(self.checks),
            "master_seed": self.master_seed,
            "i": self.i,
            "j": self.j,
            "grid_points": self.grid_points,
            "pq_points": self.pq_points,
            "copula_resolution": self.copula_resolution,
            "monte_carlo_m": self.monte_carlo_m,
        }
        if self.baseline is not None:
            out["baseline"] = dict(self.baseline)
        if self.tolerances:
            out["tolerances"] = dict(self.tolerances)
        return out

    def override(self, **kwargs) -> "ExperimentConfig":
        """Functional update (used by the CLI's global flags)."""
        return replace(self, **kwargs)

    def tolerance_for(self, check: str, default: float) -> float:
        return float(self.tolerances.get(check, default))


_BASELINES = {
    "exponential": ({"rate"}, lambda p: Exponential(p.get("rate", 1.0))),
    "weibull": ({"shape", "scale"}, lambda p: Weibull(p["shape"], p.get("scale", 1.0))),
    "uniform": ({"lower", "upper"}, lambda p: Uniform(p.get("lower", 0.0), p.get("upper", 1.0))),
}


def build_baseline(spec: Mapping[str, Any]) -> ContinuousDist:
    """Instantiate a baseline law from its JSON description."""
    params = dict(spec)
    name = params.pop("name", None)
    _require(
        name in _BASELINES,
        f"baseline.name: must be one of {sorted(_BASELINES)}, got {name!r}",
    )
    allowed, factory = _BASELINES[name]
    for key, val in params.items():
        _require(key in allowed, f"baseline.{key}: unknown parameter for {name!r}")
        _require(
            isinstance(val, (int, float)) and not isinstance(val, bool),
            f"baseline.{key}: must be a number",
        )
    if name == "weibull":
        _require("shape" in params, "baseline.shape: required for weibull")
    try:
        return factory(params)
    except ValueError as exc:
        raise ConfigError(f"baseline: {exc}") from exc


@dataclass
class Report:
    """Outcome of a verification run."""

    config: dict
    provenance: dict
    results: dict
    passed: bool
    failed_checks: list[str]
    timing_seconds: float

    def to_dict(self) -> dict:
        return {
            "config": self.config,
            "provenance": self.provenance,
            "results": self.results,
            "passed": self.passed,
            "failed_checks": self.failed_checks,
            "timing_seconds": self.timing_seconds,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "Report":
        data = json.loads(text)
        return cls(
            config=data["config"],
            provenance=data["provenance"],
            results=data["results"],
            passed=data["passed"],
            failed_checks=data["failed_checks"],
            timing_seconds=data["timing_seconds"],
        )

    def canonical(self) -> dict:
        """Everything except the timing field (for determinism comparisons)."""
        out = self.to_dict()
        out.pop("timing_seconds")
        return out
