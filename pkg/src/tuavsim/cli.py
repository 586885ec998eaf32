"""Command-line front end: ``tuavsim {sweep,place,link}``.

Exit status: 0 on success, 1 for configuration or model errors, 2 for I/O
errors. Output files are written atomically; nothing partial is left behind.
"""
from __future__ import annotations

import argparse
import contextlib
import csv
import io
import logging
import os
import sys
import tempfile
from pathlib import Path
from typing import Iterable, Sequence

import yaml

from .channel import LinkMetrics, evaluate_link
from .config import ScenarioConfig, dump_config, load_config
from .errors import TuavError
from .experiments import SweepRecord, run_distance_sweep
from .geometry import GroundPoint, Point3
from .placement import PlacementResult, place

log = logging.getLogger("tuavsim")

SWEEP_HEADER = ("angle_deg", "distance_m", "p_los", "p_nlos", "path_loss_db", "coverage_prob",
                "uav_x", "uav_y", "uav_z")
LINK_HEADER = ("theta_deg", "distance_m", "p_los", "p_nlos", "path_loss_db", "coverage_prob")
USER_HEADER = ("user_x", "user_y") + LINK_HEADER

EXIT_OK, EXIT_INVALID, EXIT_IO = 0, 1, 2


def fmt(value: float) -> str:
    return format(value, ".9g")


def _csv_text(header: Sequence[str], rows: Iterable[Sequence[float]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(v) for v in row])
    return buf.getvalue()


def sweep_csv(records: Iterable[SweepRecord]) -> str:
    return _csv_text(SWEEP_HEADER, (
        (r.angle_deg, r.distance_m, r.p_los, r.p_nlos, r.path_loss_db, r.coverage_prob,
         r.uav_position.x, r.uav_position.y, r.uav_position.z)
        for r in records))


def _link_row(m: LinkMetrics) -> tuple[float, ...]:
    return (m.theta_deg, m.distance_m, m.p_los, m.p_nlos, m.path_loss_db, m.coverage_prob)


def link_csv(metrics: LinkMetrics) -> str:
    return _csv_text(LINK_HEADER, [_link_row(metrics)])


def users_csv(users: Iterable[GroundPoint], result: PlacementResult) -> str:
    return _csv_text(USER_HEADER, ((u.x, u.y) + _link_row(m)
                                   for u, m in zip(users, result.per_user)))


def placement_text(result: PlacementResult) -> str:
    p = result.position
    doc = {
        "position": {"x": float(fmt(p.x)), "y": float(fmt(p.y)), "z": float(fmt(p.z))},
        "objective": float(fmt(result.objective)),
    }
    return yaml.safe_dump(doc, sort_keys=False)


def users_path(output: Path) -> Path:
    return output.with_name(f"{output.stem}_users.csv")


def write_atomic(files: dict[Path, str]) -> None:
    """Write every file or none of them."""
    staged: list[Path] = []
    done: list[Path] = []
    try:
        for target, text in files.items():
            fd, tmp = tempfile.mkstemp(dir=target.parent, prefix=f".{target.name}.")
            staged.append(Path(tmp))
            with os.fdopen(fd, "w", newline="") as fh:
                fh.write(text)
        for tmp, target in zip(staged, files):
            os.replace(tmp, target)
            done.append(target)
    except BaseException:
        for path in staged + done:
            with contextlib.suppress(FileNotFoundError):
                path.unlink()
        raise


def cmd_sweep(cfg: ScenarioConfig, output: Path) -> None:
    records = run_distance_sweep(cfg.sweep_spec())
    write_atomic({output: sweep_csv(records)})
    log.info("wrote %d sweep rows to %s", len(records), output)


def cmd_place(cfg: ScenarioConfig, output: Path) -> None:
    users = cfg.user_set()
    result = place(cfg.site, users, cfg.env, cfg.radio, cfg.place_policy)
    companion = users_path(output)
    write_atomic({output: placement_text(result), companion: users_csv(users, result)})
    log.info("placement objective %.9g at %s; wrote %s and %s",
             result.objective, result.position, output, companion)


def cmd_link(cfg: ScenarioConfig, uav: Point3, user: GroundPoint, output: Path | None) -> None:
    text = link_csv(evaluate_link(cfg.env, cfg.radio, uav, user))
    if output is None:
        sys.stdout.write(text)
    else:
        write_atomic({output: text})


def _floats(text: str, n: int, what: str) -> list[float]:
    try:
        values = [float(v) for v in text.split(",")]
    except ValueError:
        values = []
    if len(values) != n:
        raise argparse.ArgumentTypeError(f"{what} must be {n} comma-separated numbers, got {text!r}")
    return values


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tuavsim",
                                     description="Tethered-UAV coverage sweeps and placement.")
    parser.add_argument("--log-level", default="INFO",
                        choices=["DEBUG", "INFO", "WARNING", "ERROR"])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sweep", help="channel metrics versus distance for each tether angle (CSV)")
    p.add_argument("--config", required=True, type=Path)
    p.add_argument("--output", required=True, type=Path)

    p = sub.add_parser("place", help="position the UAV for the configured users")
    p.add_argument("--config", required=True, type=Path)
    p.add_argument("--output", required=True, type=Path,
                   help="placement summary; per-user CSV goes to <stem>_users.csv")

    p = sub.add_parser("link", help="metrics of a single UAV-user link")
    p.add_argument("--config", required=True, type=Path)
    p.add_argument("--uav", required=True, type=lambda s: _floats(s, 3, "--uav"), metavar="X,Y,Z")
    p.add_argument("--user", required=True, type=lambda s: _floats(s, 2, "--user"), metavar="X,Y")
    p.add_argument("--output", type=Path, help="defaults to stdout")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    logging.basicConfig(level=args.log_level, stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s", force=True)
    try:
        cfg = load_config(args.config)
        log.info("resolved parameters:\n%s", dump_config(cfg))
        if args.command == "sweep":
            cmd_sweep(cfg, args.output)
        elif args.command == "place":
            cmd_place(cfg, args.output)
        else:
            cmd_link(cfg, Point3(*args.uav), GroundPoint(*args.user), args.output)
    except TuavError as exc:
        log.error("%s", exc)
        return EXIT_INVALID
    except OSError as exc:
        log.error("I/O error: %s", exc)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
