"""Run manifests: config snapshots, corpus fingerprints and derived seeds.

Every artifact the CLI produces gets a sidecar `<artifact>.manifest.json`.
Two manifests "match" when everything except the creation timestamp is equal,
which is the resume criterion for sweeps.
"""

from __future__ import annotations

import hashlib
import json
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

TOOL_VERSION = "0.1.0"

MANIFEST_SUFFIX = ".manifest.json"


def derive_seed(master: int, label: str) -> int:
    """Derive a component seed from the master seed by labeled hashing."""
    digest = hashlib.sha256(f"{master}:{label}".encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "little")


def file_sha256(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for block in iter(lambda: fh.read(1 << 20), b""):
            h.update(block)
    return h.hexdigest()


@dataclass
class RunManifest:
    config: dict
    corpus_fingerprint: str
    seed: int
    tool_version: str = TOOL_VERSION
    created_utc: str = field(
        default_factory=lambda: time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime())
    )

    def matches(self, other: "RunManifest") -> bool:
        """Equality up to the creation timestamp."""
        return (
            self.config == other.config
            and self.corpus_fingerprint == other.corpus_fingerprint
            and self.seed == other.seed
            and self.tool_version == other.tool_version
        )

    def write_beside(self, artifact_path) -> Path:
        path = manifest_path(artifact_path)
        path.write_text(json.dumps(asdict(self), sort_keys=True, indent=2) + "\n")
        return path


def manifest_path(artifact_path) -> Path:
    return Path(str(artifact_path) + MANIFEST_SUFFIX)


def load_manifest(path) -> RunManifest:
    data = json.loads(Path(path).read_text())
    return RunManifest(**data)


def existing_manifest_matches(artifact_path, manifest: RunManifest) -> bool:
    """True when the artifact and a matching manifest already exist on disk."""
    artifact = Path(artifact_path)
    side = manifest_path(artifact_path)
    if not artifact.exists() or not side.exists():
        return False
    try:
        return load_manifest(side).matches(manifest)
    except (json.JSONDecodeError, TypeError):
        return False
