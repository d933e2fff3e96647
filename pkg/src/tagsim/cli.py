"""Command-line front end.

The CLI stays thin: every subcommand formats results from the same core
functions the service exposes.  Runtime failures print a machine-readable
JSON error to stderr and exit 1; usage errors exit 2.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from tagsim import beacon, metrics, ndef, scenarios
from tagsim.agents import run_standard_hunt
from tagsim.world import load_scenario, replay

DEFAULT_BIND = "127.0.0.1:8000"
BIND_ENV_VAR = "TAGSIM_BIND"


def _fmt_days(value: float) -> str:
    text = f"{value:.1f}"
    return text[:-2] if text.endswith(".0") else text


def cmd_battery(args) -> int:
    rows = metrics.model_summary()
    if args.json:
        print(json.dumps({"rows": rows}, indent=2))
        return 0
    print(f"{'Model':<10} {'Price':>8} {'Min days':>10} {'Max days':>10}")
    for row in rows:
        print(
            f"{row['model']:<10} {row['price_usd']:>8.2f} "
            f"{_fmt_days(row['min_days']):>10} {_fmt_days(row['max_days']):>10}"
        )
    return 0


def cmd_cost(args) -> int:
    tables = {
        model: {
            "items": [
                {"name": i.name, "unit_price_usd": i.unit_price_usd, "quantity": i.quantity}
                for i in items
            ],
            "total_usd": float(metrics.bom_cost(items)),
        }
        for model, items in metrics.MODEL_BOMS.items()
    }
    if args.json:
        print(json.dumps(tables, indent=2))
        return 0
    for model, table in tables.items():
        print(f"{model}")
        for item in table["items"]:
            print(
                f"  {item['name']:<28} {item['unit_price_usd']:>6.2f} x{item['quantity']}"
            )
        print(f"  {'total':<28} {table['total_usd']:>6.2f}")
    return 0


def cmd_sus(args) -> int:
    answers = json.loads(Path(args.answers).read_text(encoding="utf-8"))
    if answers and isinstance(answers[0], list):
        scores = [metrics.sus_score(a) for a in answers]
        score = sum(scores) / len(scores)
    else:
        score = metrics.sus_score(answers)
    if args.json:
        print(json.dumps({"score": score}))
    else:
        print(f"SUS score: {score:.2f}")
    return 0


def cmd_beacon_encode(args) -> int:
    frame = beacon.encode_beacon(
        args.version,
        beacon.MODEL_CODES.get(args.model, -1),
        beacon.parse_tag_id(args.id),
        beacon.FLAG_ACTIVATE if args.activate else 0,
    )
    print(frame.hex())
    return 0


def cmd_beacon_decode(args) -> int:
    decoded = beacon.decode_beacon(bytes.fromhex(args.frame))
    print(f"version:    {decoded.version}")
    print(f"model:      {decoded.model_name}")
    print(f"tag_id:     {decoded.tag_id.hex()}")
    print(f"flags:      0x{decoded.flags:02x}")
    print(f"activation: {'yes' if decoded.activation else 'no'}")
    return 0


def cmd_ndef_encode(args) -> int:
    info = ndef.DeviceInfo(
        url=args.url,
        name=args.name or "",
        vendor=args.vendor or "",
        functionalities=args.functionalities or "",
        data_collection=args.data_collection or "",
        firmware_version=args.firmware or "",
        vulnerability_notes=args.vulnerabilities or "",
        buzzer_password=args.password,
    )
    print(ndef.encode_device_info(info).hex())
    return 0


def cmd_ndef_decode(args) -> int:
    info = ndef.decode_device_info(bytes.fromhex(args.message))
    print(json.dumps(info.to_dict(), indent=2))
    return 0


def cmd_simulate(args) -> int:
    document = scenarios.get_scenario(args.scenario)
    if args.seed is not None:
        document["seed"] = args.seed
    world = load_scenario(document)
    report = run_standard_hunt(world, time_limit=args.time_limit)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    (out / "events.ldjson").write_text(world.event_log_text(), encoding="utf-8")
    (out / "report.json").write_text(
        json.dumps(report.to_dict(), indent=2) + "\n", encoding="utf-8"
    )
    trace_doc = {"version": 1, "scenario": document, "commands": world.trace}
    (out / "trace.json").write_text(
        json.dumps(trace_doc, indent=2) + "\n", encoding="utf-8"
    )
    print(json.dumps({"report": report.to_dict(), "events": len(world.events)}))
    return 0


def cmd_replay(args) -> int:
    trace_doc = json.loads(Path(args.trace).read_text(encoding="utf-8"))
    if trace_doc.get("version") != 1:
        raise ValueError("unsupported trace version")
    world = replay(trace_doc["scenario"], trace_doc["commands"])
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    (out / "events.ldjson").write_text(world.event_log_text(), encoding="utf-8")
    print(json.dumps({"events": len(world.events)}))
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from tagsim.service import create_app

    bind = args.bind or os.environ.get(BIND_ENV_VAR, DEFAULT_BIND)
    host, _, port = bind.rpartition(":")
    uvicorn.run(create_app(), host=host or "127.0.0.1", port=int(port))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tagsim",
        description="Locator-tag simulator: protocol codecs, metrics, hunts, service.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("battery", help="battery-life table for the shipped models")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_battery)

    p = sub.add_parser("cost", help="bill-of-materials cost per model")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_cost)

    p = sub.add_parser("sus", help="usability score from an answers JSON file")
    p.add_argument("--answers", required=True, help="JSON list of 10 answers, or list of lists")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_sus)

    p = sub.add_parser("beacon", help="frame codec")
    bsub = p.add_subparsers(dest="beacon_command", required=True)
    pe = bsub.add_parser("encode")
    pe.add_argument("--version", type=int, default=1)
    pe.add_argument("--model", required=True, choices=sorted(beacon.MODEL_CODES))
    pe.add_argument("--id", required=True, help="12 hex chars")
    pe.add_argument("--activate", action="store_true")
    pe.set_defaults(func=cmd_beacon_encode)
    pd = bsub.add_parser("decode")
    pd.add_argument("frame", help="20 hex chars, lowercase, no separators")
    pd.set_defaults(func=cmd_beacon_decode)

    p = sub.add_parser("ndef", help="device-information codec")
    nsub = p.add_subparsers(dest="ndef_command", required=True)
    ne = nsub.add_parser("encode")
    ne.add_argument("--url", required=True)
    ne.add_argument("--name")
    ne.add_argument("--vendor")
    ne.add_argument("--functionalities")
    ne.add_argument("--data-collection", dest="data_collection")
    ne.add_argument("--firmware")
    ne.add_argument("--vulnerabilities")
    ne.add_argument("--password")
    ne.set_defaults(func=cmd_ndef_encode)
    nd = nsub.add_parser("decode")
    nd.add_argument("message", help="hex NDEF message")
    nd.set_defaults(func=cmd_ndef_decode)

    p = sub.add_parser("simulate", help="run the scripted hunt on a scenario")
    p.add_argument("--scenario", required=True, help="bundled name or file path")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--time-limit", type=float, default=300.0)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("replay", help="re-run a recorded trace")
    p.add_argument("--trace", required=True, help="trace.json from simulate")
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_replay)

    p = sub.add_parser("serve", help="start the session service")
    p.add_argument(
        "--bind",
        default=None,
        help=f"host:port (default ${BIND_ENV_VAR} or {DEFAULT_BIND})",
    )
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except Exception as exc:  # noqa: BLE001 - single reporting point
        error = {"error": {"code": type(exc).__name__, "detail": str(exc)}}
        print(json.dumps(error), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
