"""Run and sweep configuration: value parsing, ``key = value`` files, validation."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field, fields, replace
from pathlib import Path

import numpy as np

from .errors import InvalidArgumentError
from .evolution import (
    ExplicitCoinUnitary,
    HermitianGenerator,
    InteractionSpec,
    NoInteraction,
    PhasePair,
)
from .state import NORM_TOL, CoinVector

INTERACTIONS = ("none", "phase", "hermitian", "unitary")
FORMATS = ("csv", "ndjson")

_PI_RE = re.compile(
    r"^(?P<coef>[+-]?(?:\d+\.?\d*|\.\d+)(?:e[+-]?\d+)?|[+-])?\s*\*?\s*pi"
    r"(?:\s*/\s*(?P<den>\d+\.?\d*))?$"
)


def parse_angle(text: str | float) -> float:
    """Radians from ``"0.5pi"``, ``"-pi/4"``, ``"3*pi/2"`` or a plain number."""
    if isinstance(text, (int, float)):
        value = float(text)
    else:
        s = text.strip().lower().replace("\u03c0", "pi")
        m = _PI_RE.match(s)
        if m:
            coef = {None: "1", "+": "1", "-": "-1"}.get(m["coef"], m["coef"])
            value = float(coef) * math.pi / float(m["den"] or 1)
        else:
            try:
                value = float(s)
            except ValueError:
                raise InvalidArgumentError(f"cannot parse angle {text!r}") from None
    if not math.isfinite(value):
        raise InvalidArgumentError(f"angle must be finite, got {text!r}")
    return value


def parse_complex(text: str) -> complex:
    s = text.strip().replace(" ", "").replace("i", "j")
    try:
        return complex(s)
    except ValueError:
        raise InvalidArgumentError(f"cannot parse complex number {text!r}") from None


_NAMED_COINS = {
    "plus": CoinVector.plus(),
    "minus": CoinVector(1 / math.sqrt(2), -1j / math.sqrt(2)),
    "up": CoinVector(1, 0),
    "down": CoinVector(0, 1),
}


def parse_coin(text: str | CoinVector) -> CoinVector:
    """``"plus"``, ``"up"``, ``"down"``, ``"minus"`` or ``"<up>,<down>"`` (e.g. ``"0.6,0.8i"``)."""
    if isinstance(text, CoinVector):
        return text
    s = text.strip().lower()
    if s in _NAMED_COINS:
        return _NAMED_COINS[s]
    parts = s.split(",")
    if len(parts) != 2:
        raise InvalidArgumentError(f"coin must be a name or two comma-separated amplitudes, got {text!r}")
    return CoinVector(parse_complex(parts[0]), parse_complex(parts[1]))


def parse_numbers(text: str | list, count: int, kind=float) -> list:
    items = text if isinstance(text, (list, tuple)) else re.split(r"[,\s]+", text.strip())
    items = [x for x in items if x != ""]
    if len(items) != count:
        raise InvalidArgumentError(f"expected {count} numbers, got {len(items)}")
    conv = parse_complex if kind is complex else float
    return [conv(x) if isinstance(x, str) else kind(x) for x in items]


def read_config_file(path: str | Path) -> dict[str, str]:
    """``key = value`` lines; ``#`` starts a comment; dashes in keys become underscores."""
    out = {}
    try:
        lines = Path(path).read_text().splitlines()
    except OSError as exc:
        raise InvalidArgumentError(f"cannot read config file {path}: {exc.strerror}") from None
    for n, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InvalidArgumentError(f"{path}:{n}: expected 'key = value'")
        key, value = (p.strip() for p in line.split("=", 1))
        out[key.replace("-", "_")] = value
    return out


@dataclass
class RunConfig:
    steps: int = 100
    theta_plus: float = 0.0
    theta_minus: float = 0.0
    interaction: str = "phase"
    h_matrix: list[float] | None = None
    u_matrix: list[complex] | None = None
    coin1: CoinVector = field(default_factory=CoinVector.plus)
    coin2: CoinVector = field(default_factory=CoinVector.plus)
    x1: int = 0
    x2: int = 0
    record_every: int = 1
    output_dir: Path = Path("out")
    output_format: str = "csv"

    def validate(self) -> "RunConfig":
        if self.steps < 1:
            raise InvalidArgumentError("steps must be >= 1")
        if self.record_every < 1:
            raise InvalidArgumentError("record_every must be >= 1")
        if self.interaction not in INTERACTIONS:
            raise InvalidArgumentError(f"interaction must be one of {INTERACTIONS}")
        if self.output_format not in FORMATS:
            raise InvalidArgumentError(f"format must be one of {FORMATS}")
        for name in ("coin1", "coin2"):
            c = getattr(self, name)
            if abs(c.norm_squared() - 1) > NORM_TOL:
                raise InvalidArgumentError(f"{name} is not normalized")
        if self.interaction == "hermitian" and self.h_matrix is None:
            raise InvalidArgumentError("--interaction hermitian needs --h-matrix")
        if self.interaction == "unitary" and self.u_matrix is None:
            raise InvalidArgumentError("--interaction unitary needs --u-matrix")
        self.interaction_spec()
        return self

    def interaction_spec(self, theta_plus: float | None = None) -> InteractionSpec:
        if self.interaction == "none":
            return NoInteraction()
        if self.interaction == "phase":
            tp = self.theta_plus if theta_plus is None else theta_plus
            return PhasePair(tp, self.theta_minus)
        if self.interaction == "hermitian":
            return HermitianGenerator(np.reshape(self.h_matrix, (4, 4)))
        return ExplicitCoinUnitary(np.reshape(self.u_matrix, (4, 4)))


def default_theta_grid(points: int = 64) -> list[float]:
    return [2 * math.pi * k / points for k in range(points)]


@dataclass
class SweepConfig:
    base: RunConfig = field(default_factory=RunConfig)
    theta_grid: list[float] = field(default_factory=default_theta_grid)
    parallelism: int = 1

    def validate(self) -> "SweepConfig":
        self.base.validate()
        if not self.theta_grid:
            raise InvalidArgumentError("theta grid is empty")
        if self.base.interaction != "phase":
            raise InvalidArgumentError("sweeps vary theta_plus and need --interaction phase")
        if self.parallelism < 1:
            raise InvalidArgumentError("parallelism must be >= 1")
        return self


_CONVERTERS = {
    "steps": int,
    "theta_plus": parse_angle,
    "theta_minus": parse_angle,
    "interaction": lambda s: s.strip().lower(),
    "h_matrix": lambda s: parse_numbers(s, 16, float),
    "u_matrix": lambda s: parse_numbers(s, 16, complex),
    "coin1": parse_coin,
    "coin2": parse_coin,
    "x1": int,
    "x2": int,
    "record_every": int,
    "output_dir": Path,
    "out": Path,
    "output_format": lambda s: s.strip().lower(),
    "format": lambda s: s.strip().lower(),
}
_ALIASES = {"out": "output_dir", "format": "output_format"}


def run_config_from(values: dict) -> RunConfig:
    """Build a :class:`RunConfig` from raw strings or already-typed values."""
    known = {f.name for f in fields(RunConfig)}
    kwargs = {}
    for key, raw in values.items():
        if raw is None:
            continue
        name = _ALIASES.get(key, key)
        if name not in known:
            continue
        conv = _CONVERTERS.get(key, _CONVERTERS.get(name))
        try:
            kwargs[name] = conv(raw) if isinstance(raw, str) else raw
        except ValueError as exc:
            raise InvalidArgumentError(f"bad value for {key}: {raw!r} ({exc})") from None
    return replace(RunConfig(), **kwargs)
