"""Shared test helpers: deterministic fields, fault-injecting sensors,
and the naive interpolation oracle."""

from __future__ import annotations

import math

import numpy as np
import pytest

from soilprobe.fieldsim import FieldSpec, VirtualTeros


def idw_oracle(xy, theta, qx, qy, power=2.0, cutoff=10.0, exact=1e-6):
    """Direct-evaluation IDW, independent of the library implementation."""
    best = None
    for i, (x, y) in enumerate(xy):
        d = math.hypot(x - qx, y - qy)
        if d <= exact and (best is None or (d, i) < best):
            best = (d, i)
    if best is not None:
        return theta[best[1]]
    num = den = 0.0
    for i, (x, y) in enumerate(xy):
        d = math.hypot(x - qx, y - qy)
        if d <= cutoff:
            w = d ** -power
            num += w * theta[i]
            den += w
    return num / den if den > 0 else float("nan")


def make_field(theta=0.25, blobs=(), obstructions=(), noise=0.0, seed=1234,
               width=20.0, height=20.0):
    return FieldSpec(origin_lat=45.0, origin_lon=7.5, width_m=width,
                     height_m=height, base_theta=theta, blobs=tuple(blobs),
                     obstructions=tuple(obstructions),
                     noise_sigma_raw=noise, seed=seed)


def make_sensor(spec, **kwargs):
    return VirtualTeros(spec, spec.rng(), **kwargs)


class ScriptedSensor:
    """Replays canned replies in order; None entries model silence."""

    def __init__(self, replies):
        self.replies = list(replies)
        self.trace = []

    def place(self, x, y, in_soil):
        pass

    def exchange(self, frame):
        self.trace.append(bytes(frame))
        return self.replies.pop(0) if self.replies else None


class FlakySensor:
    """Wraps a real sensor and injects bus faults from a seeded rng.

    ``dropped`` counts frames the inner sensor never saw (bus silence);
    garbled exchanges still reach the inner sensor but the reply is
    trashed on the way back.
    """

    def __init__(self, inner, rng: np.random.Generator,
                 p_silent=0.0, p_garbage=0.0):
        self.inner = inner
        self.rng = rng
        self.p_silent = p_silent
        self.p_garbage = p_garbage
        self.dropped_frames: list[bytes] = []

    def place(self, x, y, in_soil):
        self.inner.place(x, y, in_soil)

    def exchange(self, frame):
        roll = self.rng.random()
        if roll < self.p_silent:
            self.dropped_frames.append(bytes(frame))
            return None
        reply = self.inner.exchange(frame)
        if roll < self.p_silent + self.p_garbage:
            return b"\xff\x00!!garbage\r\n"
        return reply

    def dropped_measures(self) -> int:
        return sum(1 for f in self.dropped_frames if f.endswith(b"M!"))


@pytest.fixture
def flat_field():
    return make_field()
