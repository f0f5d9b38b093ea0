"""Command-line entry points: serve, select, scan, parse-cmd."""

from __future__ import annotations

import argparse
import logging
import sys
import time

from . import presets
from .config import ConfigError, load_config
from .gateway import Gateway
from .rfmodel import ScanContext, format_bssid, scan
from .selector import (MISSING_RSSI, SelectionFailedError, SelectorConfig,
                       run_selection)


def _add_config_arg(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", required=True, help="path to the gateway JSON config")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="beamradio",
                                     description="Switched-antenna web-radio gateway "
                                                 "over a simulated RF environment")
    sub = parser.add_subparsers(dest="command", required=True)

    p_serve = sub.add_parser("serve", help="boot the gateway and serve HTTP")
    _add_config_arg(p_serve)

    p_select = sub.add_parser("select", help="run antenna selection once and exit")
    _add_config_arg(p_select)

    p_scan = sub.add_parser("scan", help="run one Wi-Fi scan on a given antenna")
    _add_config_arg(p_scan)
    p_scan.add_argument("--antenna", type=int, required=True, help="antenna index (0-based)")

    p_parse = sub.add_parser("parse-cmd", help="parse a station command path")
    p_parse.add_argument("path", help="request path, e.g. /1+http://host/stream.mp3")

    return parser


def _format_table(ant_rssi) -> str:
    shown = [v if v is not None else MISSING_RSSI for v in ant_rssi]
    return "ant_rssi: " + str(shown)


def cmd_select(args) -> int:
    config = load_config(args.config)
    ctx = ScanContext(config.environment)
    sel = SelectorConfig(target_ssid=config.target_ssid,
                         num_antennas=config.num_antennas,
                         retries_per_antenna=config.retries_per_antenna)
    try:
        result = run_selection(lambda ant: scan(config.environment,
                                                config.patterns[ant], ctx), sel)
    except SelectionFailedError as e:
        print(_format_table(e.ant_rssi))
        print("no antenna saw the target SSID", file=sys.stderr)
        return 1
    print(_format_table(result.ant_rssi))
    print(f"best antenna: {result.best_antenna + 1}")
    return 0


def cmd_scan(args) -> int:
    config = load_config(args.config)
    if not 0 <= args.antenna < config.num_antennas:
        print(f"antenna must be in [0, {config.num_antennas})", file=sys.stderr)
        return 2
    entries = scan(config.environment, config.patterns[args.antenna])
    for e in entries:
        print(f"{e.rssi:>5}  {format_bssid(e.bssid)}  {e.ssid}")
    return 0


def cmd_parse(args) -> int:
    try:
        cmd = presets.parse_command(args.path)
    except presets.CommandError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    print(cmd)
    return 0


def cmd_serve(args) -> int:
    config = load_config(args.config)
    gateway = Gateway(config).boot()
    print(f"listening on http://{gateway.status()['ip_address']}", flush=True)
    try:
        while True:
            time.sleep(1)
    except KeyboardInterrupt:
        pass
    finally:
        gateway.shutdown()
    return 0


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(message)s")
    args = build_parser().parse_args(argv)
    try:
        if args.command == "serve":
            return cmd_serve(args)
        if args.command == "select":
            return cmd_select(args)
        if args.command == "scan":
            return cmd_scan(args)
        if args.command == "parse-cmd":
            return cmd_parse(args)
    except ConfigError as e:
        print(f"config error: {e}", file=sys.stderr)
        return 2
    raise AssertionError("unreachable")


if __name__ == "__main__":
    sys.exit(main())
