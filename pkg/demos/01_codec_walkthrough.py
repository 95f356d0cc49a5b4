#!/usr/bin/env python3
"""Walk through the SDI-12 wire subset frame by frame.

Shows each command's byte layout, the matching responses, and what the
parser does with malformed input.
"""

from soilprobe.errors import FrameError
from soilprobe.sdi12 import (Command, DataResponse, MeasureAck, Verb,
                             decode_reading, encode_command,
                             encode_data_response, encode_measure_ack,
                             parse_data_response, parse_measure_ack)


def show(label, frame):
    print(f"  {label:<28} {frame!r:<28} hex {frame.hex()}")


print("Commands (ASCII, '!'-terminated)")
show("address query", encode_command(Command(Verb.ADDRESS_QUERY)))
show("acknowledge addr 0", encode_command(Command(Verb.ACKNOWLEDGE, "0")))
show("identify addr 0", encode_command(Command(Verb.IDENTIFY, "0")))
show("start measurement addr 0", encode_command(Command(Verb.START_MEASUREMENT, "0")))
show("send data frame 0", encode_command(Command(Verb.SEND_DATA, "0", index=0)))

print("\nMeasure acknowledge: 'atttn' = address, delay seconds, value count")
ack = MeasureAck("0", delay_s=1, value_count=3)
wire = encode_measure_ack(ack)
show("ready in 1 s, 3 values", wire)
print(f"  parses back to {parse_measure_ack(wire)}")

print("\nData response: signed decimals, RAW then temperature then EC")
resp = DataResponse("0", (2450.5, 24.3, 150.0))
wire = encode_data_response(resp)
show("typical soil reading", wire)
reading = decode_reading(parse_data_response(wire))
print(f"  decodes to RAW={reading.raw_counts}, {reading.temp_c} C, "
      f"{reading.ec_us_cm} uS/cm")

print("\nMalformed frames fail with a typed error, never a crash")
cases = [
    (parse_measure_ack, b"0A013\r\n"),    # non-digit delay
    (parse_data_response, b"0123\r\n"),   # value without its sign
    (parse_data_response, b"0+5..5\r\n"),  # broken decimal
    (parse_measure_ack, b"\xff\x00!"),    # arbitrary bytes
]
for parser, frame in cases:
    try:
        parser(frame)
    except FrameError as exc:
        where = "" if exc.position is None else f" (byte {exc.position})"
        print(f"  {frame!r:<18} -> FrameError: {exc}{where}")
