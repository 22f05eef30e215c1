"""Command-line client: thin argument parsing over the service layer.

Exit codes: 0 success, 1 verification failure (or internal consistency
failure), 2 invalid parameters/usage.  Flags override values from an optional
``--config`` file of flat ``key=value`` lines ('#' starts a comment line).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from pydantic import ValidationError

from . import service

_EXIT_OK = 0
_EXIT_VERIFY_FAIL = 1
_EXIT_USAGE = 2


def _read_config(path: str) -> dict[str, str]:
    values: dict[str, str] = {}
    for raw in Path(path).read_text().splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"malformed config line: {raw!r}")
        key, _, value = line.partition("=")
        values[key.strip()] = value.strip()
    return values


_COMMON = [
    ("--q", "q"),
    ("--variant", "variant"),
    ("--lambda", "lambda"),
    ("--trunc", "trunc"),
    ("--out", "out"),
    ("--config", "config"),
]

_PER_COMMAND: dict[str, list[tuple[str, str]]] = {
    "eval": [
        ("--kind", "kind"),
        ("--xmin", "xmin"),
        ("--xmax", "xmax"),
        ("--step", "step"),
    ],
    "firstzero": [
        ("--kind", "kind"),
        ("--qmin", "qmin"),
        ("--qmax", "qmax"),
        ("--qstep", "qstep"),
        ("--scan-xmax", "scan_xmax"),
        ("--scan-step", "scan_step"),
    ],
    "heat": [
        ("--mode", "mode"),
        ("--t0", "t0"),
        ("--u0", "u0"),
        ("--xmin", "xmin"),
        ("--xmax", "xmax"),
        ("--xstep", "xstep"),
        ("--tmin", "tmin"),
        ("--tmax", "tmax"),
        ("--tstep", "tstep"),
    ],
    "hermite": [
        ("--energy", "energy"),
        ("--a1", "a1"),
        ("--a2", "a2"),
        ("--xmin", "xmin"),
        ("--xmax", "xmax"),
        ("--step", "step"),
    ],
    "verify": [
        ("--qs", "qs"),
        ("--tol", "tol"),
    ],
}

_REQUEST_TYPES = {
    "eval": service.EvalRequest,
    "firstzero": service.FirstZeroRequest,
    "heat": service.HeatRequest,
    "hermite": service.HermiteRequest,
    "verify": service.VerifyRequest,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qumbra",
        description="q-umbral calculus engine: evaluate q-functions, sweep "
        "first zeros, sample q-heat solutions and run the verification suite.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for command, extra in _PER_COMMAND.items():
        p = sub.add_parser(command)
        for flag, dest in _COMMON + extra:
            p.add_argument(flag, dest=dest, default=None)
    return parser


def _merged_request(command: str, args: argparse.Namespace):
    values: dict[str, str] = {}
    if args.config is not None:
        values.update(_read_config(args.config))
    for _, dest in _COMMON + _PER_COMMAND[command]:
        if dest in ("out", "config"):
            continue
        given = getattr(args, dest, None)
        if given is not None:
            values[dest] = given
    values.pop("out", None)
    values.pop("config", None)
    if command == "verify":
        # a shared config file may carry a single q; fold it into the q-list
        if "q" in values and "qs" not in values:
            values["qs"] = values.pop("q")
        if isinstance(values.get("qs"), str):
            values["qs"] = [part for part in values["qs"].split(",") if part]
    model = _REQUEST_TYPES[command]
    known = set(model.model_fields) | {
        info.alias for info in model.model_fields.values() if info.alias
    }
    unknown = set(values) - known
    if unknown:
        raise ValueError(f"unknown parameter(s): {', '.join(sorted(unknown))}")
    return model.model_validate(values)


def _write_output(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        request = _merged_request(args.command, args)
    except (ValidationError, ValueError, OSError) as exc:
        print(f"qumbra: invalid configuration: {exc}", file=sys.stderr)
        return _EXIT_USAGE
    try:
        if args.command == "eval":
            _write_output(service.run_eval(request).csv, args.out)
        elif args.command == "firstzero":
            _write_output(service.run_firstzero(request).csv, args.out)
        elif args.command == "heat":
            _write_output(service.run_heat(request).csv, args.out)
        elif args.command == "hermite":
            _write_output(service.run_hermite(request).csv, args.out)
        else:
            response = service.run_verify(request)
            _write_output(response.report_text, args.out)
            return _EXIT_OK if response.all_passed else _EXIT_VERIFY_FAIL
    except ValueError as exc:
        print(f"qumbra: invalid configuration: {exc}", file=sys.stderr)
        return _EXIT_USAGE
    except RuntimeError as exc:
        print(f"qumbra: internal consistency failure: {exc}", file=sys.stderr)
        return _EXIT_VERIFY_FAIL
    return _EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
