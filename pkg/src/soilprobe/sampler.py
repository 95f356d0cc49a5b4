"""Surface-aware sampling state machine.

Each waypoint runs one instance of the per-point loop:

    IDLE -> LOWERING -> SETTLING -> MEASURING -> VALIDATING
      valid, or no attempts left:  VALIDATING -> RETRACTING -> DONE
      invalid, attempts remaining: VALIDATING -> RETRACTING ->
                                   REPOSITIONING -> LOWERING

A failed attempt never retries in place (a rock would just stall the
probe again): attempt k probes ``reposition_offset_m`` metres from the
waypoint along compass bearing 90 * (k - 1) degrees from north, so the
retry pattern is deterministic.  The probe is always fully retracted
before the loop returns, valid or not.

Sensor faults (frame garbage, wrong shape, out-of-range values, bus
silence) are recorded as SENSOR_ERROR attempts and consume a retry;
they never abort the mission.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from . import actuator as act
from . import fieldsim
from .calib import (DEFAULT_THRESHOLDS, Validity, ValidityThresholds,
                    classify, raw_to_vwc)
from .errors import FrameError, RangeError, ShapeError
from .sdi12 import RawReading, run_transaction


class Phase(Enum):
    IDLE = "idle"
    LOWERING = "lowering"
    SETTLING = "settling"
    MEASURING = "measuring"
    VALIDATING = "validating"
    REPOSITIONING = "repositioning"
    RETRACTING = "retracting"
    DONE = "done"


@dataclass(frozen=True)
class SamplerConfig:
    target_depth_m: float = 0.05
    settle_s: float = 1.0
    max_attempts: int = 3
    reposition_offset_m: float = 0.10

    def __post_init__(self):
        if self.max_attempts < 1:
            raise ValueError("max_attempts must be >= 1")
        if self.target_depth_m < 0:
            raise ValueError("target_depth_m must be >= 0")
        if self.settle_s < 0:
            raise ValueError("settle_s must be >= 0")
        if not math.isfinite(self.reposition_offset_m):
            raise ValueError("reposition_offset_m must be finite")


@dataclass(frozen=True)
class AttemptRecord:
    """One probe insertion: where, how deep, what was read, verdict."""

    attempt_index: int
    x: float
    y: float
    lat: float
    lon: float
    achieved_depth_m: float
    reading: RawReading | None
    theta: float | None
    validity: Validity


@dataclass
class PointResult:
    attempts: list[AttemptRecord]
    final: Validity
    actuator: act.ActuatorState
    phases: list[Phase]
    validated_at_s: float  # clock reading when the deciding attempt validated


def attempt_offset(attempt_index: int, offset_m: float) -> tuple[float, float]:
    """Local (dx, dy) of attempt k relative to the waypoint.

    Attempt 1 probes the waypoint itself; attempt k >= 2 probes
    ``offset_m`` along bearing 90 * (k - 1) degrees from north.
    """
    if attempt_index <= 1:
        return 0.0, 0.0
    bearing = math.radians(90.0 * (attempt_index - 1))
    return offset_m * math.sin(bearing), offset_m * math.cos(bearing)


def attempt_point(point, sensor, actuator_state: act.ActuatorState,
                  field: fieldsim.FieldSpec, cfg: SamplerConfig, *,
                  actuator_cfg: act.ActuatorConfig = act.ActuatorConfig(),
                  thresholds: ValidityThresholds = DEFAULT_THRESHOLDS,
                  clock: fieldsim.SimClock | None = None,
                  address: str = "0") -> PointResult:
    """Collect one point: probe, validate, and retry until valid or spent.

    ``point`` needs ``x``/``y`` in the field's local frame; ``sensor``
    needs ``exchange()`` and ``place()`` (see fieldsim.VirtualTeros).
    The actuator must start retracted and is always retracted again on
    return.  Returns every attempt plus the final classification: VALID
    if any attempt was valid (the first valid attempt ends the loop),
    otherwise the last attempt's verdict.
    """
    if actuator_state.position_steps != 0:
        raise ValueError("actuator must be fully retracted before sampling")
    clock = clock if clock is not None else fieldsim.SimClock()
    phases = [Phase.IDLE]
    attempts: list[AttemptRecord] = []
    state = actuator_state
    validated_at = clock.now

    for k in range(1, cfg.max_attempts + 1):
        dx, dy = attempt_offset(k, cfg.reposition_offset_m)
        x, y = point.x + dx, point.y + dy

        phases.append(Phase.LOWERING)
        from_steps = state.position_steps
        state = act.lower_to(state, actuator_cfg, cfg.target_depth_m,
                             fieldsim.obstruction_at(field, x, y))
        clock.advance(act.motion_duration(from_steps, state.position_steps,
                                          actuator_cfg))

        phases.append(Phase.SETTLING)
        clock.advance(cfg.settle_s)

        phases.append(Phase.MEASURING)
        sensor.place(x, y, in_soil=not state.stalled)
        reading: RawReading | None = None
        theta: float | None = None
        try:
            reading = run_transaction(sensor, address, clock=clock)
        except (FrameError, ShapeError, RangeError, TimeoutError):
            validity = Validity.SENSOR_ERROR
        else:
            theta = raw_to_vwc(reading.raw_counts)

        phases.append(Phase.VALIDATING)
        if reading is not None:
            validity = classify(theta, state.depth_m, cfg.target_depth_m,
                                thresholds)
        lat, lon = fieldsim.local_to_wgs84(field, x, y)
        attempts.append(AttemptRecord(
            attempt_index=k, x=x, y=y, lat=lat, lon=lon,
            achieved_depth_m=state.depth_m, reading=reading, theta=theta,
            validity=validity))
        validated_at = clock.now

        phases.append(Phase.RETRACTING)
        from_steps = state.position_steps
        state = act.retract(state)
        clock.advance(act.motion_duration(from_steps, 0, actuator_cfg))

        if validity is Validity.VALID or k == cfg.max_attempts:
            phases.append(Phase.DONE)
            break
        phases.append(Phase.REPOSITIONING)

    final = attempts[-1].validity
    return PointResult(attempts=attempts, final=final, actuator=state,
                       phases=phases, validated_at_s=validated_at)


def chosen_attempt(attempts: list[AttemptRecord]) -> AttemptRecord:
    """The attempt a point is reported from: first valid, else the last."""
    for a in attempts:
        if a.validity is Validity.VALID:
            return a
    return attempts[-1]


@dataclass(frozen=True)
class SoilSample:
    """One persisted, geo-referenced, validity-classified measurement."""

    point_id: int
    timestamp_s: float
    lat: float
    lon: float
    target_depth_m: float
    achieved_depth_m: float
    attempts: int
    raw_counts: float | None
    temp_c: float | None
    ec_us_cm: float | None
    theta: float | None
    status: Validity


def finalize_sample(point, attempts: list[AttemptRecord], final: Validity, *,
                    timestamp_s: float, target_depth_m: float) -> SoilSample:
    """Build the persistent record for one point.

    Reports the first valid attempt when there is one, otherwise the
    last attempt.  Invalid points are kept and flagged, never dropped:
    downstream consumers filter on ``status``.
    """
    if not attempts:
        raise ValueError("attempts must be non-empty")
    src = chosen_attempt(attempts)
    r = src.reading
    return SoilSample(
        point_id=point.id,
        timestamp_s=timestamp_s,
        lat=src.lat,
        lon=src.lon,
        target_depth_m=target_depth_m,
        achieved_depth_m=src.achieved_depth_m,
        attempts=len(attempts),
        raw_counts=r.raw_counts if r is not None else None,
        temp_c=r.temp_c if r is not None else None,
        ec_us_cm=r.ec_us_cm if r is not None else None,
        theta=src.theta,
        status=final,
    )
