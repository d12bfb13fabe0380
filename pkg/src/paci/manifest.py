"""Run manifests: enough provenance to reproduce a CLI run byte for byte."""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

from . import __version__


def _sha256(path: Path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            h.update(chunk)
    return h.hexdigest()


def write_manifest(out_dir, command: str, argv: list[str], outputs: list,
                   input_path=None, config_path=None, seed=None) -> Path:
    """Record command, inputs, seed, and output digests as manifest JSON."""
    out_dir = Path(out_dir)
    doc = {
        "tool": "paci",
        "version": __version__,
        "command": command,
        "argv": argv,
        "input": str(input_path) if input_path else None,
        "config": str(config_path) if config_path else None,
        "seed": seed,
        "outputs": [
            {"path": str(p), "sha256": _sha256(Path(p))} for p in outputs
        ],
    }
    path = out_dir / f"manifest-{command.replace(' ', '-')}.json"
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return path
