"""Scenario configuration: a flat tree of dotted keys, parsed strictly.

The document format is one ``section.key = value`` pair per line, with
``#`` comments and blank lines ignored.  Unknown keys and missing required
keys are hard errors; there is deliberately no fuzzy matching so that a
typo never runs a silently different scenario.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .states import check_alpha
from .trajectory import (
    ConstantProfile,
    FrequencyProfile,
    MAX_STEP,
    PiecewiseConstantProfile,
    ProfileError,
    SinusoidalProfile,
    TabulatedProfile,
)

__all__ = ["ConfigError", "ScenarioConfig", "parse_config", "DEFAULT_DOCUMENT"]

# Used when no config file is given on the command line.
DEFAULT_DOCUMENT = """\
profile.kind = constant
profile.omega0 = 1.0
run.t_max = 20.0
run.step = 0.001
state.alpha_re = 1.0
state.alpha_im = 0.0
"""


class ConfigError(ValueError):
    """Malformed configuration; the message names the offending key."""


_PROFILE_KEYS = {
    "constant": {"profile.omega0"},
    "piecewise_constant": {"profile.times", "profile.omegas"},
    "sinusoidal": {"profile.omega0", "profile.kappa", "profile.gamma"},
    "tabulated": {"profile.times", "profile.omegas"},
}

_COMMON_KEYS = {
    "profile.kind", "profile.allow_nonunit_omega0",
    "run.t_max", "run.step", "run.force_step",
    "state.alpha_re", "state.alpha_im",
    "grid.q_min", "grid.q_max", "grid.p_min", "grid.p_max",
    "grid.n_q", "grid.n_p",
    "grid.x_min", "grid.x_max", "grid.n_x",
    "grid.u_max", "grid.n_u",
    "output.path", "output.figures_dir",
}

_ALL_PROFILE_KEYS = set().union(*_PROFILE_KEYS.values())


@dataclass(frozen=True)
class ScenarioConfig:
    """Validated scenario: profile, integration window, state and grids."""

    profile: FrequencyProfile
    t_max: float
    step: float
    alpha: complex
    force_step: bool = False
    q_min: Optional[float] = None
    q_max: Optional[float] = None
    p_min: Optional[float] = None
    p_max: Optional[float] = None
    n_q: int = 256
    n_p: int = 256
    x_min: Optional[float] = None
    x_max: Optional[float] = None
    n_x: Optional[int] = None
    u_max: Optional[float] = None
    n_u: int = 2049
    output_path: Optional[str] = None
    figures_dir: Optional[str] = None


def _split_lines(text: str) -> dict:
    pairs = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if not key or not value:
            raise ConfigError(f"line {lineno}: empty key or value in {raw!r}")
        if key in pairs:
            raise ConfigError(f"line {lineno}: duplicate key '{key}'")
        pairs[key] = value
    return pairs


def _get_float(pairs: dict, key: str) -> float:
    if key not in pairs:
        raise ConfigError(f"missing required key '{key}'")
    raw = pairs.pop(key)
    try:
        value = float(raw)
    except ValueError:
        raise ConfigError(f"key '{key}': expected a number, got {raw!r}") from None
    if not math.isfinite(value):
        raise ConfigError(f"key '{key}': value must be finite")
    return value


def _get_opt_float(pairs: dict, key: str) -> Optional[float]:
    if key not in pairs:
        return None
    return _get_float(pairs, key)


def _get_opt_int(pairs: dict, key: str, default: Optional[int]) -> Optional[int]:
    if key not in pairs:
        return default
    raw = pairs.pop(key)
    try:
        value = int(raw)
    except ValueError:
        raise ConfigError(f"key '{key}': expected an integer, got {raw!r}") from None
    if value <= 0:
        raise ConfigError(f"key '{key}': must be positive, got {value}")
    return value


def _get_opt_bool(pairs: dict, key: str) -> bool:
    if key not in pairs:
        return False
    raw = pairs.pop(key).lower()
    if raw not in ("true", "false"):
        raise ConfigError(f"key '{key}': expected true or false, got {raw!r}")
    return raw == "true"


def _get_float_list(pairs: dict, key: str) -> tuple:
    try:
        raw = pairs.pop(key)
    except KeyError:
        raise ConfigError(f"missing required key '{key}'") from None
    try:
        return tuple(float(part) for part in raw.split(","))
    except ValueError:
        raise ConfigError(
            f"key '{key}': expected comma-separated numbers, got {raw!r}"
        ) from None


def _build_profile(pairs: dict) -> FrequencyProfile:
    try:
        kind = pairs.pop("profile.kind")
    except KeyError:
        raise ConfigError("missing required key 'profile.kind'") from None
    if kind not in _PROFILE_KEYS:
        raise ConfigError(
            f"key 'profile.kind': unknown kind {kind!r}; expected one of "
            f"{sorted(_PROFILE_KEYS)}"
        )
    stray = (_ALL_PROFILE_KEYS - _PROFILE_KEYS[kind]) & set(pairs)
    if stray:
        raise ConfigError(
            f"key '{sorted(stray)[0]}' does not apply to profile.kind = {kind}"
        )
    allow = _get_opt_bool(pairs, "profile.allow_nonunit_omega0")
    try:
        if kind == "constant":
            return ConstantProfile(_get_float(pairs, "profile.omega0"),
                                   allow_nonunit_omega0=allow)
        if kind == "sinusoidal":
            return SinusoidalProfile(
                omega0=_get_float(pairs, "profile.omega0"),
                kappa=_get_float(pairs, "profile.kappa"),
                gamma=_get_float(pairs, "profile.gamma"),
                allow_nonunit_omega0=allow,
            )
        times = _get_float_list(pairs, "profile.times")
        omegas = _get_float_list(pairs, "profile.omegas")
        cls = PiecewiseConstantProfile if kind == "piecewise_constant" else TabulatedProfile
        return cls(times, omegas, allow_nonunit_omega0=allow)
    except ProfileError as exc:
        raise ConfigError(f"profile.*: {exc}") from exc


def parse_config(text: str) -> ScenarioConfig:
    """Parse and validate a scenario document (strict: unknown keys fail)."""
    pairs = _split_lines(text)
    unknown = set(pairs) - _COMMON_KEYS - _ALL_PROFILE_KEYS
    if unknown:
        raise ConfigError(f"unknown key '{sorted(unknown)[0]}'")

    profile = _build_profile(pairs)
    t_max = _get_float(pairs, "run.t_max")
    step = _get_float(pairs, "run.step")
    force_step = _get_opt_bool(pairs, "run.force_step")
    if t_max <= 0.0:
        raise ConfigError(f"key 'run.t_max': must be positive, got {t_max!r}")
    if step <= 0.0:
        raise ConfigError(f"key 'run.step': must be positive, got {step!r}")
    if step > MAX_STEP and not force_step:
        raise ConfigError(
            f"key 'run.step': {step!r} exceeds {MAX_STEP}; set run.force_step = true "
            "to run a deliberately coarse diagnostic"
        )
    alpha_re = _get_float(pairs, "state.alpha_re")
    alpha_im = _get_float(pairs, "state.alpha_im")
    try:
        alpha = check_alpha(complex(alpha_re, alpha_im))
    except ValueError as exc:
        raise ConfigError(f"state.alpha_*: {exc}") from exc

    cfg = ScenarioConfig(
        profile=profile,
        t_max=t_max,
        step=step,
        alpha=alpha,
        force_step=force_step,
        q_min=_get_opt_float(pairs, "grid.q_min"),
        q_max=_get_opt_float(pairs, "grid.q_max"),
        p_min=_get_opt_float(pairs, "grid.p_min"),
        p_max=_get_opt_float(pairs, "grid.p_max"),
        n_q=_get_opt_int(pairs, "grid.n_q", 256),
        n_p=_get_opt_int(pairs, "grid.n_p", 256),
        x_min=_get_opt_float(pairs, "grid.x_min"),
        x_max=_get_opt_float(pairs, "grid.x_max"),
        n_x=_get_opt_int(pairs, "grid.n_x", None),
        u_max=_get_opt_float(pairs, "grid.u_max"),
        n_u=_get_opt_int(pairs, "grid.n_u", 2049),
        output_path=pairs.pop("output.path", None),
        figures_dir=pairs.pop("output.figures_dir", None),
    )
    for pair in (("grid.q_min", cfg.q_min, "grid.q_max", cfg.q_max),
                 ("grid.p_min", cfg.p_min, "grid.p_max", cfg.p_max),
                 ("grid.x_min", cfg.x_min, "grid.x_max", cfg.x_max)):
        lo_key, lo, hi_key, hi = pair
        if (lo is None) != (hi is None):
            raise ConfigError(f"keys '{lo_key}' and '{hi_key}' must be given together")
        if lo is not None and not hi > lo:
            raise ConfigError(f"key '{hi_key}': must exceed {lo_key}")
    if pairs:
        raise ConfigError(f"unknown key '{sorted(pairs)[0]}'")
    return cfg


def merge_overrides(text: str, overrides: list) -> str:
    """Apply ``key=value`` override strings on top of a config document."""
    pairs = _split_lines(text)
    for item in overrides:
        if "=" not in item:
            raise ConfigError(f"override {item!r} is not of the form key=value")
        key, _, value = item.partition("=")
        key = key.strip()
        value = value.strip()
        if not key or not value:
            raise ConfigError(f"override {item!r} has an empty key or value")
        pairs[key] = value
    return "\n".join(f"{k} = {v}" for k, v in pairs.items())
