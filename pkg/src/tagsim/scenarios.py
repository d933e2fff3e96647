"""Access to bundled scenario documents."""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path


def bundled_names() -> list[str]:
    files = resources.files("tagsim.data")
    return sorted(p.name[: -len(".json")] for p in files.iterdir() if p.name.endswith(".json"))


def get_scenario(name_or_path: str) -> dict:
    """Resolve a bundled scenario name or a filesystem path to a document."""
    candidate = resources.files("tagsim.data") / f"{name_or_path}.json"
    if candidate.is_file():
        return json.loads(candidate.read_text(encoding="utf-8"))
    path = Path(name_or_path)
    if path.is_file():
        return json.loads(path.read_text(encoding="utf-8"))
    raise FileNotFoundError(
        f"no bundled scenario or file named {name_or_path!r}; "
        f"bundled: {', '.join(bundled_names())}"
    )
