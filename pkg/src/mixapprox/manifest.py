"""Run manifests: everything needed to reproduce an output file byte for byte."""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass, field
from typing import Dict, List


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def sha256_file(path: str) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()


@dataclass
class RunManifest:
    command: str
    params: dict  # canonical parameters, including the field as a coefficient list
    version: str
    prec_ceiling: int
    argv: List[str] = field(default_factory=list)
    outputs: Dict[str, str] = field(default_factory=dict)  # role -> sha256 of the file
    output_paths: Dict[str, str] = field(default_factory=dict)
    exit_status: int = 0

    def run_spec(self) -> dict:
        """The part that determines the outputs."""
        return {"command": self.command, "params": self.params, "version": self.version,
                "prec_ceiling": self.prec_ceiling}

    @property
    def digest(self) -> str:
        return hashlib.sha256(canonical_json(self.run_spec()).encode()).hexdigest()

    def to_json(self) -> dict:
        out = self.run_spec()
        out.update({"argv": self.argv, "digest": self.digest, "outputs": self.outputs,
                    "output_paths": self.output_paths, "exit_status": self.exit_status})
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "RunManifest":
        m = cls(obj["command"], obj["params"], obj["version"], obj["prec_ceiling"], list(obj.get("argv", [])),
                dict(obj.get("outputs", {})), dict(obj.get("output_paths", {})), obj.get("exit_status", 0))
        if obj.get("digest") and obj["digest"] != m.digest:
            raise ValueError("manifest digest does not match its run specification")
        return m

    def write(self, path: str) -> None:
        tmp = path + ".tmp"
        with open(tmp, "w") as fh:
            json.dump(self.to_json(), fh, indent=2, sort_keys=True)
            fh.write("\n")
        os.replace(tmp, path)

    @classmethod
    def read(cls, path: str) -> "RunManifest":
        with open(path) as fh:
            return cls.from_json(json.load(fh))


def default_manifest_path(out_path: str) -> str:
    return out_path + ".manifest.json"
