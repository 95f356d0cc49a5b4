"""Command-line frontend.

    soilprobe simulate --config paper_field --out-log run.jsonl --out-summary summary.json
    soilprobe validate --log run.jsonl --out valid.jsonl
    soilprobe map --log valid.jsonl --out-points points.geojson --out-grid grid.asc
    soilprobe codec --parse 304d21
    soilprobe codec --encode 0D0

Exit codes: 0 success, 2 scenario/config error, 3 malformed sample log,
4 no valid samples to map, 5 frame decode error.  Diagnostics go to
stderr; data goes to stdout only when its --out flag is omitted.
"""

from __future__ import annotations

import argparse
import sys
from collections import Counter

from . import geomap, mission, scenario, sdi12
from .errors import FrameError, InfeasibleError, LogFormatError, ScenarioError

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_BAD_LOG = 3
EXIT_NO_VALID = 4
EXIT_FRAME = 5


def _emit(text: str, path):
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="ascii", newline="\n") as fh:
            fh.write(text)


def _diag(message: str):
    print(message, file=sys.stderr)


def cmd_simulate(args) -> int:
    try:
        scn = scenario.load_scenario(args.config, seed_override=args.seed)
        samples, summary = mission.run_mission(scn.mission)
    except (ScenarioError, InfeasibleError) as exc:
        _diag(f"simulate: {exc}")
        return EXIT_CONFIG
    _emit(mission.dump_sample_log(samples), args.out_log)
    _emit(mission.dump_summary(summary), args.out_summary)
    _diag(f"simulate: scenario '{scn.name}': {summary.points_total} points, "
          f"{summary.points_valid} valid, {summary.points_invalid} invalid, "
          f"{summary.duration_s:.1f} s simulated, "
          f"hull {summary.area_convex_hull_m2:.1f} m2")
    return EXIT_OK


def cmd_validate(args) -> int:
    try:
        samples = mission.read_sample_log(args.log)
    except OSError as exc:
        _diag(f"validate: {exc}")
        return EXIT_CONFIG
    except LogFormatError as exc:
        _diag(f"validate: {args.log}: {exc}")
        return EXIT_BAD_LOG
    counts = Counter(s.status.value for s in samples)
    _diag(f"validate: {len(samples)} samples: " + ", ".join(
        f"{counts.get(status.value, 0)} {status.value}"
        for status in mission.Validity))
    _emit(mission.dump_sample_log(mission.select_valid(samples)), args.out)
    return EXIT_OK


def cmd_map(args) -> int:
    try:
        samples = mission.read_sample_log(args.log)
    except OSError as exc:
        _diag(f"map: {exc}")
        return EXIT_CONFIG
    except LogFormatError as exc:
        _diag(f"map: {args.log}: {exc}")
        return EXIT_BAD_LOG
    valid = mission.select_valid(samples)
    if not valid:
        _diag("map: no valid samples to interpolate")
        return EXIT_NO_VALID

    xy, _origin = geomap.samples_to_local(valid)
    theta = [s.theta for s in valid]
    ids = [s.point_id for s in valid]
    pad = args.cell_size
    bounds = (xy[:, 0].min() - pad, xy[:, 1].min() - pad,
              xy[:, 0].max() + pad, xy[:, 1].max() + pad)
    try:
        params = geomap.IdwParams(power=args.power)
        grid = geomap.build_grid(xy, theta, bounds, params,
                                 cell_size_m=args.cell_size, ids=ids)
    except ValueError as exc:
        _diag(f"map: {exc}")
        return EXIT_CONFIG
    _emit(geomap.export_points_geojson(samples), args.out_points)
    _emit(geomap.export_grid_ascii(grid), args.out_grid)
    _diag(f"map: {len(valid)} valid samples onto {grid.nx} x {grid.ny} cells "
          f"of {grid.cell_size_m} m")
    return EXIT_OK


def cmd_codec(args) -> int:
    if args.parse is not None:
        try:
            frame = bytes.fromhex(args.parse)
        except ValueError as exc:
            _diag(f"codec: not a hex string: {exc}")
            return EXIT_CONFIG
        try:
            print(_parse_any(frame))
        except FrameError as exc:
            where = "" if exc.position is None else f" at byte {exc.position}"
            _diag(f"codec: {exc}{where}")
            return EXIT_FRAME
        return EXIT_OK
    spec = args.encode if args.encode.endswith("!") else args.encode + "!"
    try:
        cmd = sdi12.parse_command(spec.encode("ascii", errors="replace"))
    except FrameError as exc:
        where = "" if exc.position is None else f" at byte {exc.position}"
        _diag(f"codec: {exc}{where}")
        return EXIT_FRAME
    wire = sdi12.encode_command(cmd)
    print(f"{wire.hex()}  {wire.decode('ascii')}")
    return EXIT_OK


def _parse_any(frame: bytes):
    """Decode a frame as command, measure ack, or data response."""
    if frame.endswith(sdi12.COMMAND_TERMINATOR):
        return sdi12.parse_command(frame)
    try:
        return sdi12.parse_measure_ack(frame)
    except FrameError:
        return sdi12.parse_data_response(frame)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="soilprobe",
        description="Simulated soil-moisture collection and mapping.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="run a simulated mission")
    p.add_argument("--config", required=True,
                   help="scenario path or bundled name (e.g. paper_field)")
    p.add_argument("--out-log", help="sample log path (default: stdout)")
    p.add_argument("--out-summary", help="summary path (default: stdout)")
    p.add_argument("--seed", type=int, help="override the field seed")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("validate", help="count statuses, keep valid samples")
    p.add_argument("--log", required=True, help="sample log to read")
    p.add_argument("--out", help="valid-only log path (default: stdout)")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("map", help="interpolate valid samples onto a raster")
    p.add_argument("--log", required=True, help="sample log to read")
    p.add_argument("--out-points", help="GeoJSON path (default: stdout)")
    p.add_argument("--out-grid", help="ESRI ASCII grid path (default: stdout)")
    p.add_argument("--cell-size", type=float, default=0.5,
                   help="grid cell size in metres (default 0.5)")
    p.add_argument("--power", type=float, default=2.0,
                   help="IDW power (default 2.0)")
    p.set_defaults(func=cmd_map)

    p = sub.add_parser("codec", help="debug the wire codec")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--parse", metavar="HEX", help="decode a hex-encoded frame")
    g.add_argument("--encode", metavar="SPEC",
                   help="encode a command like '0M', '0D0', or '?'")
    p.set_defaults(func=cmd_codec)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
