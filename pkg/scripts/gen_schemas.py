#!/usr/bin/env python3
"""Regenerate docs/schemas/*.json from the pydantic wire models.

Run from the repository root: python scripts/gen_schemas.py
"""

import json
from pathlib import Path

from pydantic import TypeAdapter

from tagsim.service import schemas

DOCS_DIR = Path(__file__).resolve().parent.parent / "docs" / "schemas"


def dump(name: str, schema: dict) -> None:
    path = DOCS_DIR / f"{name}.schema.json"
    path.write_text(json.dumps(schema, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    print(f"wrote {path}")


def main() -> None:
    DOCS_DIR.mkdir(parents=True, exist_ok=True)
    dump("client_message", TypeAdapter(schemas.ClientMessage).json_schema())
    dump("server_message", TypeAdapter(schemas.ServerMessage).json_schema())


if __name__ == "__main__":
    main()
