"""Model bundles: the three fitted components packaged as one JSON document.

A bundle is self-contained (components embedded, not referenced by path)
and identified by a content hash, so identical inputs always produce
byte-identical bundle files. ``builtin:demo`` resolves to the demonstration
bundle; the RUCK_EP_BUNDLE environment variable supplies a default path.
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

from .errors import BundleError
from .kick import KickSuccessSurface, RestartValueTable
from .lineout import LineoutCoefficients

SCHEMA_VERSION = 1
ENV_BUNDLE = "RUCK_EP_BUNDLE"
BUILTIN_PREFIX = "builtin:"


@dataclass(frozen=True)
class ModelBundle:
    lineout: LineoutCoefficients
    surface: KickSuccessSurface
    restarts: RestartValueTable
    bundle_id: str = ""
    meta: dict = field(default_factory=dict)

    def model_ids(self) -> dict:
        return {
            "bundle": self.bundle_id,
            "lineout": self.lineout.model_id,
            "kick_surface": self.surface.surface_id,
            "restart_table": self.restarts.table_id,
        }

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "bundle_id": self.bundle_id,
            "meta": self.meta,
            "lineout": self.lineout.to_dict(),
            "kick_surface": self.surface.to_dict(),
            "restart_table": self.restarts.to_dict(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_dict(cls, doc: dict) -> "ModelBundle":
        if doc.get("schema_version") != SCHEMA_VERSION:
            raise BundleError(
                f"unsupported bundle schema_version {doc.get('schema_version')!r}"
            )
        for part in ("lineout", "kick_surface", "restart_table"):
            if part not in doc:
                raise BundleError(f"bundle is missing its {part} component")
        try:
            return cls(
                lineout=LineoutCoefficients.from_dict(doc["lineout"]),
                surface=KickSuccessSurface.from_dict(doc["kick_surface"]),
                restarts=RestartValueTable.from_dict(doc["restart_table"]),
                bundle_id=doc.get("bundle_id", ""),
                meta=doc.get("meta", {}),
            )
        except (KeyError, ValueError) as exc:
            raise BundleError(f"malformed bundle: {exc}") from exc


def content_id(
    lineout: LineoutCoefficients,
    surface: KickSuccessSurface,
    restarts: RestartValueTable,
    prefix: str = "bundle",
) -> str:
    payload = json.dumps(
        [lineout.to_dict(), surface.to_dict(), restarts.to_dict()],
        sort_keys=True,
    ).encode()
    return f"{prefix}-{hashlib.sha256(payload).hexdigest()[:12]}"


def make_bundle(
    lineout: LineoutCoefficients,
    surface: KickSuccessSurface,
    restarts: RestartValueTable,
    prefix: str = "bundle",
    meta: dict | None = None,
) -> ModelBundle:
    return ModelBundle(
        lineout=lineout,
        surface=surface,
        restarts=restarts,
        bundle_id=content_id(lineout, surface, restarts, prefix=prefix),
        meta=meta or {},
    )


@lru_cache(maxsize=1)
def demo_bundle() -> ModelBundle:
    """Demonstration bundle: published lineout and restart constants plus the
    calibrated synthetic kick surface. Runs the whole stack with no data."""
    from .builtins import PREMIERSHIP_2018_19, RESTART_OVERALL_AVERAGE, demo_kick_surface

    return make_bundle(
        PREMIERSHIP_2018_19,
        demo_kick_surface(),
        RESTART_OVERALL_AVERAGE,
        prefix="demo",
        meta={
            "description": "demonstration bundle; synthetic kick surface, non-authoritative",
            "source": "built-in",
        },
    )


def save_bundle(bundle: ModelBundle, path) -> None:
    Path(path).write_text(bundle.to_json(), encoding="utf-8")


def load_bundle(ref: str | os.PathLike | None = None) -> ModelBundle:
    """Load a bundle from a path, ``builtin:demo``, or RUCK_EP_BUNDLE.

    ``ref=None`` falls back to the environment variable, then to the
    demonstration bundle.
    """
    if ref is None:
        ref = os.environ.get(ENV_BUNDLE) or BUILTIN_PREFIX + "demo"
    ref_str = str(ref)
    if ref_str.startswith(BUILTIN_PREFIX):
        name = ref_str[len(BUILTIN_PREFIX):]
        if name == "demo":
            return demo_bundle()
        raise BundleError(f"unknown builtin bundle {name!r} (available: demo)")
    path = Path(ref_str)
    if not path.exists():
        raise BundleError(f"bundle file not found: {path}")
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise BundleError(f"bundle is not valid JSON: {exc}") from exc
    return ModelBundle.from_dict(doc)
