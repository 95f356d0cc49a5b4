r"""Encoder/decoder for the SDI-12 command subset spoken by a
TEROS-12-class soil probe, plus the measure-then-read transaction
sequencer.

Commands are ASCII frames terminated by '!'; responses are ASCII frames
terminated by CR LF.  The implemented subset:

    ?!              address query
    a!              acknowledge active
    aI!             identify
    aM!             start measurement  ->  "atttn\r\n" (delay, value count)
    aD0! .. aD9!    send data          ->  "a<sv><sv>...\r\n" signed values

where ``a`` is one address character from 0-9, a-z, A-Z, ``ttt`` is the
measurement delay in seconds (3 digits), ``n`` the number of values the
sensor will return (1 digit), and each ``<sv>`` is a decimal number with
a mandatory leading '+' or '-'.

Example:
    >>> encode_command(Command(Verb.START_MEASUREMENT, "0"))
    b'0M!'
    >>> parse_measure_ack(b"00013\r\n")
    MeasureAck(address='0', delay_s=1, value_count=3)
    >>> parse_data_response(b"0+2450.5+24.3+150\r\n").values
    (2450.5, 24.3, 150.0)

Parsing is total: any byte sequence either decodes to a typed value or
raises :class:`~soilprobe.errors.FrameError` (or ShapeError/RangeError
at the reading-decode stage); nothing else escapes.
"""

from __future__ import annotations

import math
import re
import string
from dataclasses import dataclass
from enum import Enum

from .errors import FrameError, RangeError, ShapeError

COMMAND_TERMINATOR = b"!"
RESPONSE_TERMINATOR = b"\r\n"

ADDRESS_CHARS = frozenset(string.digits + string.ascii_letters)

# unsigned decimal: "150", "24.3", ".5" -- no exponent, no trailing dot
_DECIMAL_RE = re.compile(r"(?:\d+(?:\.\d+)?|\.\d+)\Z")

# values a data frame can hold before the sensor must split across D0..D9
MAX_VALUES_PER_FRAME = 9


def _check_address(address: str) -> str:
    if not (isinstance(address, str) and len(address) == 1 and address in ADDRESS_CHARS):
        raise ValueError(f"invalid SDI-12 address {address!r}")
    return address


# -- Command frames ----------------------------------------------------------


class Verb(Enum):
    ADDRESS_QUERY = "address_query"
    ACKNOWLEDGE = "acknowledge"
    IDENTIFY = "identify"
    START_MEASUREMENT = "start_measurement"
    SEND_DATA = "send_data"


@dataclass(frozen=True)
class Command:
    """One SDI-12 command.

    ``address`` is ignored on the wire for ADDRESS_QUERY and ``index``
    only applies to SEND_DATA; both are normalized at construction so
    equal wire frames compare equal.
    """

    verb: Verb
    address: str = "0"
    index: int = 0

    def __post_init__(self):
        if self.verb is Verb.ADDRESS_QUERY:
            object.__setattr__(self, "address", "?")
        else:
            _check_address(self.address)
        if self.verb is Verb.SEND_DATA:
            if not (isinstance(self.index, int) and 0 <= self.index <= 9):
                raise ValueError(f"SEND_DATA index must be 0..9, got {self.index!r}")
        else:
            object.__setattr__(self, "index", 0)


def encode_command(cmd: Command) -> bytes:
    """Encode a command as its ASCII wire frame (terminated '!')."""
    if cmd.verb is Verb.ADDRESS_QUERY:
        return b"?!"
    if cmd.verb is Verb.ACKNOWLEDGE:
        return f"{cmd.address}!".encode("ascii")
    if cmd.verb is Verb.IDENTIFY:
        return f"{cmd.address}I!".encode("ascii")
    if cmd.verb is Verb.START_MEASUREMENT:
        return f"{cmd.address}M!".encode("ascii")
    return f"{cmd.address}D{cmd.index}!".encode("ascii")


def parse_command(frame: bytes) -> Command:
    """Decode a '!'-terminated command frame.

    Raises FrameError for anything outside the implemented subset.
    """
    frame = bytes(frame)
    if len(frame) < 2:
        raise FrameError(f"command frame too short ({len(frame)} bytes)", position=0)
    if frame[-1:] != COMMAND_TERMINATOR:
        raise FrameError("command frame must end with '!'", position=len(frame) - 1)
    try:
        body = frame[:-1].decode("ascii")
    except UnicodeDecodeError as exc:
        raise FrameError("command frame is not ASCII", position=exc.start) from None

    if body == "?":
        return Command(Verb.ADDRESS_QUERY)
    if body[0] not in ADDRESS_CHARS:
        raise FrameError(f"invalid address character {body[0]!r}", position=0)
    if len(body) == 1:
        return Command(Verb.ACKNOWLEDGE, body[0])
    if len(body) == 2 and body[1] == "I":
        return Command(Verb.IDENTIFY, body[0])
    if len(body) == 2 and body[1] == "M":
        return Command(Verb.START_MEASUREMENT, body[0])
    if len(body) == 3 and body[1] == "D" and body[2] in string.digits:
        return Command(Verb.SEND_DATA, body[0], index=int(body[2]))
    raise FrameError(f"unrecognized command body {body!r}", position=1)


# -- Measurement acknowledge ("atttn") ---------------------------------------


@dataclass(frozen=True)
class MeasureAck:
    """Reply to aM!: measurement ready after ``delay_s``, ``value_count`` values."""

    address: str
    delay_s: int
    value_count: int

    def __post_init__(self):
        _check_address(self.address)
        if not (isinstance(self.delay_s, int) and 0 <= self.delay_s <= 999):
            raise ValueError(f"delay_s must be 0..999, got {self.delay_s!r}")
        if not (isinstance(self.value_count, int) and 0 <= self.value_count <= 9):
            raise ValueError(f"value_count must be 0..9, got {self.value_count!r}")


def encode_measure_ack(ack: MeasureAck) -> bytes:
    return f"{ack.address}{ack.delay_s:03d}{ack.value_count}\r\n".encode("ascii")


def parse_measure_ack(frame: bytes) -> MeasureAck:
    """Decode an "atttn\\r\\n" measurement acknowledge (exactly 7 bytes)."""
    frame = bytes(frame)
    if len(frame) != 7:
        raise FrameError(f"measure ack must be 7 bytes, got {len(frame)}")
    if frame[-2:] != RESPONSE_TERMINATOR:
        raise FrameError("measure ack must end with CR LF", position=5)
    try:
        body = frame[:-2].decode("ascii")
    except UnicodeDecodeError as exc:
        raise FrameError("measure ack is not ASCII", position=exc.start) from None
    if body[0] not in ADDRESS_CHARS:
        raise FrameError(f"invalid address character {body[0]!r}", position=0)
    for i, ch in enumerate(body[1:], start=1):
        if ch not in string.digits:
            raise FrameError(f"non-digit {ch!r} in delay/count field", position=i)
    return MeasureAck(body[0], delay_s=int(body[1:4]), value_count=int(body[4]))


# -- Data response ("a<+v><+v>...") ------------------------------------------


@dataclass(frozen=True)
class DataResponse:
    """Reply to aDn!: the sensor's values, in wire order."""

    address: str
    values: tuple[float, ...] = ()

    def __post_init__(self):
        _check_address(self.address)
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        if len(self.values) > MAX_VALUES_PER_FRAME:
            raise ValueError(f"at most {MAX_VALUES_PER_FRAME} values per frame")
        for v in self.values:
            if not math.isfinite(v):
                raise ValueError(f"non-finite value {v!r} cannot go on the wire")


def format_value(value: float) -> str:
    """Canonical signed wire text for one value.

    Fixed-point with up to 6 decimals, trailing zeros stripped:
    2450.5 -> "+2450.5", -0.5 -> "-0.5", 0.0 -> "+0".  Canonical form
    keeps encode(parse(encode(x))) byte-identical to encode(x).
    """
    sign = "-" if value < 0 else "+"
    text = f"{abs(value):.6f}".rstrip("0").rstrip(".")
    return sign + text


def encode_data_response(resp: DataResponse) -> bytes:
    payload = "".join(format_value(v) for v in resp.values)
    return f"{resp.address}{payload}\r\n".encode("ascii")


def parse_data_response(frame: bytes) -> DataResponse:
    """Decode a CR-LF-terminated data frame into address plus signed values.

    The payload is split at sign characters; every value must carry an
    explicit '+' or '-' and parse as a plain decimal.
    """
    frame = bytes(frame)
    if len(frame) < 3:
        raise FrameError(f"data frame too short ({len(frame)} bytes)", position=0)
    if frame[-2:] != RESPONSE_TERMINATOR:
        raise FrameError("data frame must end with CR LF", position=len(frame) - 2)
    try:
        body = frame[:-2].decode("ascii")
    except UnicodeDecodeError as exc:
        raise FrameError("data frame is not ASCII", position=exc.start) from None
    if body[0] not in ADDRESS_CHARS:
        raise FrameError(f"invalid address character {body[0]!r}", position=0)

    payload = body[1:]
    if payload and payload[0] not in "+-":
        raise FrameError("first value is missing its sign", position=1)

    values = []
    token_start = None  # index into body of the current token's sign
    for i in range(1, len(body) + 1):
        at_end = i == len(body)
        if at_end or body[i] in "+-":
            if token_start is not None:
                token = body[token_start + 1:i]
                if not _DECIMAL_RE.match(token):
                    raise FrameError(f"malformed value {body[token_start:i]!r}",
                                     position=token_start)
                values.append(float(body[token_start:i]))
            if not at_end:
                token_start = i
    if len(values) > MAX_VALUES_PER_FRAME:
        raise FrameError(f"more than {MAX_VALUES_PER_FRAME} values in one frame",
                         position=1)
    return DataResponse(body[0], tuple(values))


# -- Sensor reading ----------------------------------------------------------


@dataclass(frozen=True)
class RawReading:
    """One decoded sensor transaction: RAW counts, temperature, conductivity."""

    raw_counts: float
    temp_c: float
    ec_us_cm: float

    def __post_init__(self):
        if not (math.isfinite(self.raw_counts) and self.raw_counts >= 0):
            raise RangeError(f"raw_counts must be finite and >= 0, got {self.raw_counts!r}")
        if not (math.isfinite(self.temp_c) and -40.0 <= self.temp_c <= 60.0):
            raise RangeError(f"temp_c must be within [-40, 60] C, got {self.temp_c!r}")
        if not (math.isfinite(self.ec_us_cm) and self.ec_us_cm >= 0):
            raise RangeError(f"ec_us_cm must be finite and >= 0, got {self.ec_us_cm!r}")


def decode_reading(resp: DataResponse) -> RawReading:
    """Map a 3-value data response onto (RAW, temperature C, EC uS/cm).

    The wire order is fixed: RAW counts first, then temperature, then
    electrical conductivity.
    """
    if len(resp.values) != 3:
        raise ShapeError(f"expected 3 values (RAW, temp, EC), got {len(resp.values)}")
    raw, temp, ec = resp.values
    return RawReading(raw_counts=raw, temp_c=temp, ec_us_cm=ec)


# -- Transaction sequencer ---------------------------------------------------


def run_transaction(sensor, address: str = "0", *, clock=None,
                    base_timeout_s: float = 1.0) -> RawReading:
    """Run exactly one measure-then-read cycle against a sensor handle.

    ``sensor`` must expose ``exchange(frame: bytes) -> bytes | None``;
    ``None`` means the sensor stayed silent past the deadline.  The
    deadline for each exchange is ``2 * known_delay + base_timeout_s``
    seconds, where the delay is 0 for the M command and the acknowledged
    delay for the D command.

    ``clock``, when given, must expose ``advance(seconds)``; it is
    advanced by the acknowledged measurement delay and, on silence, by
    the expired deadline, so simulated missions account for sensor time
    without sleeping.

    Raises FrameError/ShapeError/RangeError on malformed replies and
    TimeoutError on silence.
    """
    _check_address(address)

    reply = sensor.exchange(encode_command(Command(Verb.START_MEASUREMENT, address)))
    if reply is None:
        if clock is not None:
            clock.advance(base_timeout_s)
        raise TimeoutError(f"sensor {address!r} silent on measure command "
                           f"for {base_timeout_s} s")
    ack = parse_measure_ack(reply)
    if ack.address != address:
        raise FrameError(f"measure ack from address {ack.address!r}, "
                         f"expected {address!r}", position=0)
    if clock is not None:
        clock.advance(ack.delay_s)

    deadline = 2 * ack.delay_s + base_timeout_s
    reply = sensor.exchange(encode_command(Command(Verb.SEND_DATA, address, index=0)))
    if reply is None:
        if clock is not None:
            clock.advance(deadline)
        raise TimeoutError(f"sensor {address!r} silent on data command "
                           f"for {deadline} s")
    resp = parse_data_response(reply)
    if resp.address != address:
        raise FrameError(f"data response from address {resp.address!r}, "
                         f"expected {address!r}", position=0)
    return decode_reading(resp)
