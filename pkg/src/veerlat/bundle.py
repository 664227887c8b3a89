"""Bundle files: a monodromy presentation plus the cached complex tables, hashed."""

from __future__ import annotations

import hashlib
import json
from importlib import resources
from pathlib import Path

import jsonschema

from . import __version__
from .errors import BadScript, HashMismatch
from .surface import IdealTriangulation, Slope
from .veering import MonodromySpec, VeeringComplex

FORMAT = "veerlat-bundle"
FORMAT_VERSION = 1


def load_schema():
    text = resources.files("veerlat").joinpath("schemas/bundle.schema.json").read_text()
    return json.loads(text)


def _canonical(obj):
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def content_hash(payload):
    body = {k: v for k, v in payload.items() if k != "content_hash"}
    return hashlib.sha256(_canonical(body).encode()).hexdigest()


# -- flip scripts -------------------------------------------------------------------------


def script_to_json(script):
    T = script.initial
    out = {
        "triangles": [[tid, list(sides)] for tid, sides in T.triangles],
        "flips": list(script.flips),
        "relabel": [list(p) for p in script.relabel],
    }
    if T.slopes:
        out["slopes"] = [[e, str(s)] for e, s in sorted(T.slopes.items(), key=lambda kv: repr(kv[0]))]
    return out


def script_from_json(data):
    """Parse a flip script; raises BadScript on malformed input."""
    try:
        tris = [(tid, tuple(sides)) for tid, sides in data["triangles"]]
        slopes = {e: Slope.parse(s) for e, s in data.get("slopes", [])} or None
        T = IdealTriangulation(tris, slopes)
        relabel = {a: b for a, b in data["relabel"]}
        return MonodromySpec.from_script(T, data["flips"], relabel)
    except BadScript:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise BadScript(f"malformed flip script: {exc}") from exc
    except Exception as exc:
        if type(exc).__module__.startswith("veerlat"):
            raise BadScript(f"invalid flip script: {exc}") from exc
        raise


def spec_to_json(spec):
    if spec.kind == "lr":
        return {"kind": "lr", "word": spec.word}
    if spec.kind == "matrix":
        return {"kind": "matrix", "matrix": [list(r) for r in spec.matrix], "word": spec.word}
    return {"kind": "script", "script": script_to_json(spec.script)}


def spec_from_json(data):
    kind = data["kind"]
    if kind == "lr":
        return MonodromySpec.from_word(data["word"])
    if kind == "matrix":
        return MonodromySpec.from_matrix(data["matrix"])
    if kind == "script":
        return script_from_json(data["script"])
    raise BadScript(f"unknown monodromy kind {kind!r}")


# -- bundles --------------------------------------------------------------------------------


def bundle_payload(cx):
    payload = {
        "format": FORMAT,
        "format_version": FORMAT_VERSION,
        "tool_version": __version__,
        "monodromy": spec_to_json(cx.spec),
        "complex": cx.to_tables(),
    }
    payload["content_hash"] = content_hash(payload)
    return payload


def dumps(cx):
    return json.dumps(bundle_payload(cx), indent=2, sort_keys=True) + "\n"


def save(cx, path):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps(cx))
    return path


def loads(text):
    """Rebuild the complex from bundle text, checking hash, schema and cached tables."""
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise HashMismatch(f"bundle is not valid JSON: {exc}") from exc
    if not isinstance(payload, dict) or payload.get("content_hash") != content_hash(payload):
        raise HashMismatch("bundle content does not match its content_hash")
    try:
        jsonschema.validate(payload, load_schema())
    except jsonschema.ValidationError as exc:
        raise BadScript(f"bundle does not match the schema: {exc.message}") from exc
    cx = VeeringComplex(spec_from_json(payload["monodromy"]))
    cx.validate_veering()
    if cx.to_tables() != payload["complex"]:
        raise HashMismatch("cached complex tables differ from the rebuilt complex")
    return cx


def load(path):
    return loads(Path(path).read_text())
