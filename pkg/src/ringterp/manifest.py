"""Reproducibility manifests appended to command outputs.

A manifest records everything needed to reproduce an output byte for
byte: tool version, subcommand, flag values, and a digest of every
input.  It deliberately contains no timestamps or host information, so
re-running the same invocation on the same inputs yields the same
bytes, manifest included.
"""

from __future__ import annotations

import hashlib
from typing import Mapping

MANIFEST_HEADER = "# manifest v1"


def render_manifest(tool: str, subcommand: str, flags: Mapping[str, str],
                    inputs: Mapping[str, bytes]) -> str:
    lines = [MANIFEST_HEADER, f"# tool: {tool}", f"# subcommand: {subcommand}"]
    for key in sorted(flags):
        lines.append(f"# flag: {key}={flags[key]}")
    for name in sorted(inputs):
        digest = hashlib.sha256(inputs[name]).hexdigest()
        lines.append(f"# input: {name}=sha256:{digest}")
    return "\n".join(lines) + "\n"
