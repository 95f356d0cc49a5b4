"""Deterministic synthetic test field.

Ground-truth volumetric water content is a flat base plus a sum of
Gaussian blobs, clamped to [0, 0.60] m3/m3 -- smooth, cheap, and
analytically known, so interpolation error can be measured against it.
Obstruction disks mark spots where the probe cannot penetrate and
stalls at a fixed shallow depth.  The inverse sensor model maps
ground-truth moisture back to RAW counts (plus seeded Gaussian noise),
and :class:`VirtualTeros` speaks the SDI-12 wire subset so the whole
stack runs against it with no hardware.

All randomness flows through one seeded ``numpy.random.Generator``
owned by the caller; identical seeds reproduce identical behaviour.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import calib, sdi12

THETA_TRUE_MAX = 0.60    # m3/m3 cap on the synthetic ground truth
STALL_DEPTH_M = 0.01     # where the probe stops on any obstruction
AIR_RAW_MEAN = 200.0     # RAW counts of a probe left in air
SOIL_TEMP_C = 24.0       # passthrough constants: thermal and EC fields
SOIL_EC_US_CM = 150.0    # are not modelled
EARTH_RADIUS_M = 6_371_000.0


@dataclass(frozen=True)
class Blob:
    """One Gaussian moisture anomaly; amplitude may be negative (dry spot)."""

    cx: float
    cy: float
    sigma_m: float
    amplitude: float

    def __post_init__(self):
        if self.sigma_m <= 0:
            raise ValueError("sigma_m must be > 0")


@dataclass(frozen=True)
class Disk:
    """One obstruction disk; boundary points count as inside."""

    cx: float
    cy: float
    radius_m: float

    def __post_init__(self):
        if self.radius_m <= 0:
            raise ValueError("radius_m must be > 0")


@dataclass(frozen=True)
class FieldSpec:
    """Everything the simulated field needs; ``seed`` is mandatory."""

    origin_lat: float
    origin_lon: float
    width_m: float
    height_m: float
    base_theta: float
    seed: int
    blobs: tuple[Blob, ...] = ()
    obstructions: tuple[Disk, ...] = ()
    noise_sigma_raw: float = 0.0

    def __post_init__(self):
        if self.width_m <= 0 or self.height_m <= 0:
            raise ValueError("field width and height must be > 0")
        if self.noise_sigma_raw < 0:
            raise ValueError("noise_sigma_raw must be >= 0")
        object.__setattr__(self, "blobs", tuple(self.blobs))
        object.__setattr__(self, "obstructions", tuple(self.obstructions))

    def rng(self) -> np.random.Generator:
        """Fresh generator for one mission execution."""
        return np.random.default_rng(self.seed)


def theta_true(spec: FieldSpec, x, y):
    """Ground-truth VWC at local metres (x, y); scalar or array input.

    base + sum_i a_i * exp(-((x-cx_i)^2 + (y-cy_i)^2) / (2 sigma_i^2)),
    clamped to [0, THETA_TRUE_MAX].
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    theta = np.full(np.broadcast(x, y).shape, spec.base_theta, dtype=float)
    for b in spec.blobs:
        theta += b.amplitude * np.exp(
            -((x - b.cx) ** 2 + (y - b.cy) ** 2) / (2.0 * b.sigma_m ** 2))
    theta = np.clip(theta, 0.0, THETA_TRUE_MAX)
    return float(theta) if theta.ndim == 0 else theta


def obstruction_at(spec: FieldSpec, x: float, y: float) -> float | None:
    """Depth at which the probe stalls at (x, y), or None for clear soil."""
    for d in spec.obstructions:
        if (x - d.cx) ** 2 + (y - d.cy) ** 2 <= d.radius_m ** 2:
            return STALL_DEPTH_M
    return None


def sense_raw(spec: FieldSpec, x: float, y: float, rng: np.random.Generator) -> float:
    """RAW counts for a fully inserted probe at (x, y).

    Inverse of the linear calibration, plus Normal(0, noise_sigma_raw)
    noise when configured; clamped at 0.  Zero-noise fields consume no
    random draws, so the recovery is exact.
    """
    raw = calib.vwc_to_raw(theta_true(spec, x, y))
    if spec.noise_sigma_raw > 0:
        raw += rng.normal(0.0, spec.noise_sigma_raw)
    return max(raw, 0.0)


def sense_raw_air(spec: FieldSpec, rng: np.random.Generator) -> float:
    """RAW counts for a probe that failed to enter the soil.

    Normal(AIR_RAW_MEAN, noise_sigma_raw) clamped at 0 -- far below the
    theta=0 crossover near RAW 1793, so default thresholds always flag it.
    """
    raw = AIR_RAW_MEAN
    if spec.noise_sigma_raw > 0:
        raw += rng.normal(0.0, spec.noise_sigma_raw)
    return max(raw, 0.0)


# -- Geo-referencing ---------------------------------------------------------
#
# Equirectangular projection about the field origin.  Over the ~20 m
# extents simulated here the curvature error is sub-millimetre.


def local_to_wgs84_at(origin_lat: float, origin_lon: float,
                      x: float, y: float) -> tuple[float, float]:
    lat = origin_lat + math.degrees(y / EARTH_RADIUS_M)
    lon = origin_lon + math.degrees(
        x / (EARTH_RADIUS_M * math.cos(math.radians(origin_lat))))
    return lat, lon


def wgs84_to_local_at(origin_lat: float, origin_lon: float,
                      lat: float, lon: float) -> tuple[float, float]:
    y = math.radians(lat - origin_lat) * EARTH_RADIUS_M
    x = math.radians(lon - origin_lon) * EARTH_RADIUS_M * math.cos(
        math.radians(origin_lat))
    return x, y


def local_to_wgs84(spec: FieldSpec, x: float, y: float) -> tuple[float, float]:
    return local_to_wgs84_at(spec.origin_lat, spec.origin_lon, x, y)


def wgs84_to_local(spec: FieldSpec, lat: float, lon: float) -> tuple[float, float]:
    return wgs84_to_local_at(spec.origin_lat, spec.origin_lon, lat, lon)


# -- Simulated time ----------------------------------------------------------


class SimClock:
    """Monotonic simulated time in seconds; nothing ever sleeps."""

    def __init__(self, now: float = 0.0):
        self.now = float(now)

    def advance(self, seconds: float):
        if seconds < 0:
            raise ValueError("cannot advance the clock backwards")
        self.now += seconds


# -- Virtual sensor ----------------------------------------------------------


class VirtualTeros:
    """SDI-12 endpoint backed by the synthetic field.

    The sampler positions the probe before each measurement via
    :meth:`place`; a probe that is not in soil returns air readings.
    Every frame the sensor receives is appended to ``trace`` so tests
    can audit exactly which commands were issued.
    """

    def __init__(self, spec: FieldSpec, rng: np.random.Generator,
                 address: str = "0", measure_delay_s: int = 0):
        self.spec = spec
        self.rng = rng
        self.address = address
        self.measure_delay_s = int(measure_delay_s)
        self.trace: list[bytes] = []
        self._staged: tuple[float, float, float] | None = None
        self._x = 0.0
        self._y = 0.0
        self._in_soil = False

    def place(self, x: float, y: float, in_soil: bool):
        self._x = float(x)
        self._y = float(y)
        self._in_soil = bool(in_soil)

    def exchange(self, frame: bytes) -> bytes | None:
        """Answer one command frame; None models bus silence."""
        self.trace.append(bytes(frame))
        try:
            cmd = sdi12.parse_command(frame)
        except sdi12.FrameError:
            return None  # garbage on the bus: a real sensor stays quiet
        if cmd.verb is sdi12.Verb.ADDRESS_QUERY:
            return f"{self.address}\r\n".encode("ascii")
        if cmd.address != self.address:
            return None
        if cmd.verb is sdi12.Verb.ACKNOWLEDGE:
            return f"{self.address}\r\n".encode("ascii")
        if cmd.verb is sdi12.Verb.IDENTIFY:
            return f"{self.address}13SIMSOIL TER12 001\r\n".encode("ascii")
        if cmd.verb is sdi12.Verb.START_MEASUREMENT:
            if self._in_soil:
                raw = sense_raw(self.spec, self._x, self._y, self.rng)
            else:
                raw = sense_raw_air(self.spec, self.rng)
            self._staged = (raw, SOIL_TEMP_C, SOIL_EC_US_CM)
            return sdi12.encode_measure_ack(
                sdi12.MeasureAck(self.address, self.measure_delay_s, 3))
        # SEND_DATA: only index 0 carries values, and only once per M
        if cmd.index != 0 or self._staged is None:
            return sdi12.encode_data_response(sdi12.DataResponse(self.address, ()))
        values, self._staged = self._staged, None
        return sdi12.encode_data_response(sdi12.DataResponse(self.address, values))

    def measure_commands(self) -> int:
        """How many start-measurement frames this sensor has seen."""
        count = 0
        for frame in self.trace:
            try:
                cmd = sdi12.parse_command(frame)
            except sdi12.FrameError:
                continue
            if cmd.verb is sdi12.Verb.START_MEASUREMENT:
                count += 1
        return count
