"""Simulation and sweep configuration files.

Configs are INI-style text with sections mirroring the simulation setup.
Boundary units are human-facing: lengths in nm, times in s, angles in
degrees, frequencies in Hz; everything is converted to internal units
(radians, rad/s) at parse time. Unknown sections or keys are rejected so
typos surface as errors naming the offending field.

Example simulation config::

    [path]
    kind = line_then_circle
    frequency_hz = 1.0
    approach_duration_s = 2.0
    revolutions = 4
    approach_angle_deg = 45.0

    [circle]
    radius_nm = 400.0
    # center_x_nm / center_y_nm may be given; default anchors the
    # approach-line start at the origin

    [gains]
    k_px = 6.0
    k_ix = 300.0
    k_py = 6.0
    k_iy = 300.0
    k_dx = 2.0
    k_dy = 2.0

    [plant_x]
    natural_frequency_hz = 120.0
    damping_ratio = 0.7
    dc_gain_nm_per_unit = 1.0

    [plant_y]
    natural_frequency_hz = 100.0
    damping_ratio = 0.6
    dc_gain_nm_per_unit = 1.0

    [sim]
    dt_s = 1e-4
    saturation_units = none
    coupling_enabled = true

Sweep specs use a [sweep] section (objective, scope, optional max_points)
plus one section per swept gain with min/max/count.
"""

from __future__ import annotations

import configparser
import hashlib
import math

from .control import Gains
from .engine import SimConfig
from .geometry import CircleSpec, Point2
from .plant import PlantParams
from .trajectory import PathSpec, default_center
from .tuner import DEFAULT_MAX_POINTS, GAIN_NAMES, GainRange, SweepSpec


class ConfigError(ValueError):
    """A configuration file failed to parse or validate."""


_BOOL_VALUES = {"1": True, "yes": True, "true": True, "on": True,
                "0": False, "no": False, "false": False, "off": False}


class _Section:
    """One INI section with typed, error-annotated field access."""

    def __init__(self, name: str, raw: dict[str, str]):
        self.name = name
        self.raw = dict(raw)
        self.seen: set[str] = set()

    def _get(self, key: str, required: bool) -> str | None:
        self.seen.add(key)
        if key not in self.raw:
            if required:
                raise ConfigError(f"missing required field {self.name}.{key}")
            return None
        return self.raw[key].strip()

    def get_float(self, key: str, default: float | None = None) -> float:
        s = self._get(key, required=default is None)
        if s is None:
            return default
        try:
            v = float(s)
        except ValueError:
            raise ConfigError(f"field {self.name}.{key} is not a number: {s!r}") from None
        if not math.isfinite(v):
            raise ConfigError(f"field {self.name}.{key} must be finite, got {s!r}")
        return v

    def get_int(self, key: str, default: int | None = None) -> int:
        s = self._get(key, required=default is None)
        if s is None:
            return default
        try:
            return int(s)
        except ValueError:
            raise ConfigError(f"field {self.name}.{key} is not an integer: {s!r}") from None

    def get_bool(self, key: str, default: bool | None = None) -> bool:
        s = self._get(key, required=default is None)
        if s is None:
            return default
        if s.lower() not in _BOOL_VALUES:
            raise ConfigError(f"field {self.name}.{key} is not a boolean: {s!r}")
        return _BOOL_VALUES[s.lower()]

    def get_str(self, key: str, default: str | None = None) -> str:
        s = self._get(key, required=default is None)
        return default if s is None else s

    def get_optional_float(self, key: str) -> float | None:
        s = self._get(key, required=False)
        if s is None or s.lower() == "none":
            return None
        try:
            v = float(s)
        except ValueError:
            raise ConfigError(f"field {self.name}.{key} is not a number: {s!r}") from None
        return v

    def check_no_extras(self) -> None:
        extras = set(self.raw) - self.seen
        if extras:
            name = sorted(extras)[0]
            raise ConfigError(f"unknown field {self.name}.{name}")


def _read_ini(path) -> configparser.ConfigParser:
    parser = configparser.ConfigParser(interpolation=None)
    with open(path, "r") as fh:
        try:
            parser.read_file(fh, source=str(path))
        except configparser.Error as exc:
            raise ConfigError(f"malformed config file: {exc}") from None
    return parser


def _sections(parser: configparser.ConfigParser, expected: set[str],
              optional: set[str] = frozenset()) -> dict[str, _Section]:
    present = set(parser.sections())
    missing = expected - present
    if missing:
        raise ConfigError(f"missing required section [{sorted(missing)[0]}]")
    unknown = present - expected - optional
    if unknown:
        raise ConfigError(f"unknown section [{sorted(unknown)[0]}]")
    return {name: _Section(name, dict(parser[name])) for name in present}


def _parse_plant(sec: _Section) -> PlantParams:
    fn_hz = sec.get_float("natural_frequency_hz")
    zeta = sec.get_float("damping_ratio")
    dc = sec.get_float("dc_gain_nm_per_unit")
    sec.check_no_extras()
    try:
        return PlantParams(natural_frequency=2.0 * math.pi * fn_hz,
                           damping_ratio=zeta, dc_gain=dc)
    except ValueError as exc:
        raise ConfigError(f"section [{sec.name}]: {exc}") from None


def load_sim_config(path) -> SimConfig:
    """Parse a simulation config file; raises ConfigError naming bad fields."""
    parser = _read_ini(path)
    secs = _sections(parser, {"path", "circle", "gains", "plant_x", "plant_y", "sim"})

    p = secs["path"]
    kind = p.get_str("kind")
    frequency = p.get_float("frequency_hz")
    approach_duration = p.get_float("approach_duration_s")
    revolutions = p.get_int("revolutions")
    angle = math.radians(p.get_float("approach_angle_deg"))
    p.check_no_extras()

    c = secs["circle"]
    radius = c.get_float("radius_nm")
    if radius <= 0.0:
        raise ConfigError(f"field circle.radius_nm must be positive, got {radius!r}")
    cx = c.get_optional_float("center_x_nm")
    cy = c.get_optional_float("center_y_nm")
    c.check_no_extras()
    if (cx is None) != (cy is None):
        raise ConfigError("fields circle.center_x_nm and circle.center_y_nm "
                          "must be given together")
    if cx is None:
        try:
            center = default_center(kind, radius, frequency, approach_duration, angle)
        except Exception:
            center = Point2(0.0, 0.0)  # kind invalid; PathSpec below reports it
    else:
        center = Point2(cx, cy)

    g = secs["gains"]
    gain_values = {name: g.get_float(name) for name in GAIN_NAMES}
    g.check_no_extras()

    s = secs["sim"]
    dt = s.get_float("dt_s")
    saturation = s.get_optional_float("saturation_units")
    coupling = s.get_bool("coupling_enabled", default=True)
    s.check_no_extras()

    try:
        path_spec = PathSpec(kind=kind, circle=CircleSpec(center=center, radius=radius),
                             frequency=frequency, approach_duration=approach_duration,
                             revolutions=revolutions, approach_angle=angle)
        gains = Gains(**gain_values)
        plant_x = _parse_plant(secs["plant_x"])
        plant_y = _parse_plant(secs["plant_y"])
        return SimConfig(path=path_spec, gains=gains, plant_x=plant_x, plant_y=plant_y,
                         dt=dt, saturation=saturation, coupling_enabled=coupling)
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def load_sweep_spec(path) -> SweepSpec:
    """Parse a sweep spec file; raises ConfigError naming bad fields."""
    parser = _read_ini(path)
    secs = _sections(parser, {"sweep"}, optional=set(GAIN_NAMES))

    s = secs["sweep"]
    objective = s.get_str("objective", default="rms_contour")
    scope = s.get_str("scope", default="final_revolution")
    max_points = s.get_int("max_points", default=DEFAULT_MAX_POINTS)
    s.check_no_extras()

    ranges: dict[str, GainRange] = {}
    for name in GAIN_NAMES:
        if name not in secs:
            continue
        sec = secs[name]
        try:
            ranges[name] = GainRange(min=sec.get_float("min"), max=sec.get_float("max"),
                                     count=sec.get_int("count"))
        except ValueError as exc:
            raise ConfigError(f"section [{name}]: {exc}") from None
        sec.check_no_extras()
    try:
        return SweepSpec(ranges=ranges, objective=objective, scope=scope,
                         max_points=max_points)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def _fmt(v: float) -> str:
    return repr(float(v))


def render_sim_config(config: SimConfig) -> str:
    """Serialize a SimConfig back to the file format, round-trip exact."""
    path = config.path
    lines = [
        "[path]",
        f"kind = {path.kind}",
        f"frequency_hz = {_fmt(path.frequency)}",
        f"approach_duration_s = {_fmt(path.approach_duration)}",
        f"revolutions = {path.revolutions}",
        f"approach_angle_deg = {_fmt(math.degrees(path.approach_angle))}",
        "",
        "[circle]",
        f"radius_nm = {_fmt(path.circle.radius)}",
        f"center_x_nm = {_fmt(path.circle.center.x)}",
        f"center_y_nm = {_fmt(path.circle.center.y)}",
        "",
        "[gains]",
    ]
    for name in GAIN_NAMES:
        lines.append(f"{name} = {_fmt(getattr(config.gains, name))}")
    for sec_name, plant in (("plant_x", config.plant_x), ("plant_y", config.plant_y)):
        lines += [
            "",
            f"[{sec_name}]",
            f"natural_frequency_hz = {_fmt(plant.natural_frequency / (2.0 * math.pi))}",
            f"damping_ratio = {_fmt(plant.damping_ratio)}",
            f"dc_gain_nm_per_unit = {_fmt(plant.dc_gain)}",
        ]
    sat = "none" if config.saturation is None else _fmt(config.saturation)
    lines += [
        "",
        "[sim]",
        f"dt_s = {_fmt(config.dt)}",
        f"saturation_units = {sat}",
        f"coupling_enabled = {'true' if config.coupling_enabled else 'false'}",
        "",
    ]
    return "\n".join(lines)


def write_sim_config(config: SimConfig, path) -> None:
    with open(path, "w") as fh:
        fh.write(render_sim_config(config))


def config_digest(config: SimConfig) -> str:
    """SHA-256 over the resolved configuration; changes iff any field does."""
    path = config.path
    fields = [
        ("path.kind", path.kind),
        ("path.frequency", repr(path.frequency)),
        ("path.approach_duration", repr(path.approach_duration)),
        ("path.revolutions", repr(path.revolutions)),
        ("path.approach_angle", repr(path.approach_angle)),
        ("circle.radius", repr(path.circle.radius)),
        ("circle.center_x", repr(path.circle.center.x)),
        ("circle.center_y", repr(path.circle.center.y)),
    ]
    fields += [(f"gains.{n}", repr(getattr(config.gains, n))) for n in GAIN_NAMES]
    for sec, plant in (("plant_x", config.plant_x), ("plant_y", config.plant_y)):
        fields += [
            (f"{sec}.natural_frequency", repr(plant.natural_frequency)),
            (f"{sec}.damping_ratio", repr(plant.damping_ratio)),
            (f"{sec}.dc_gain", repr(plant.dc_gain)),
        ]
    fields += [
        ("sim.dt", repr(config.dt)),
        ("sim.saturation", repr(config.saturation)),
        ("sim.coupling_enabled", repr(config.coupling_enabled)),
    ]
    blob = "\n".join(f"{k}={v}" for k, v in fields).encode()
    return hashlib.sha256(blob).hexdigest()
