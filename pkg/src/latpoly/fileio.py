"""JSON serialization of polytopes: exact, self-describing, round-trip safe.

Integers of magnitude at least 2**53 are written as decimal strings so that
readers without big-number support cannot silently lose precision; readers
here accept both forms everywhere.  Rationals are written as "p/q" strings.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .errors import InvalidPolytope
from .polytope import (
    HPolytope,
    VPolytope,
    canonicalize,
    facets,
    hpolytope,
    reduce_vertices,
    vertices,
)

FORMAT = "latpoly/1"
REPORT_FORMAT = "latpoly-report/1"
BATCH_FORMAT = "latpoly-batch/1"

_BIG = 2**53


def encode_int(x: int):
    return x if -_BIG < x < _BIG else str(x)


def decode_int(value) -> int:
    if isinstance(value, bool):
        raise InvalidPolytope(f"expected an integer, got {value!r}")
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        try:
            return int(value)
        except ValueError:
            raise InvalidPolytope(f"bad integer literal {value!r}") from None
    raise InvalidPolytope(f"expected an integer, got {value!r}")


def encode_rational(x):
    f = Fraction(x)
    if f.denominator == 1:
        return encode_int(int(f))
    return f"{f.numerator}/{f.denominator}"


def decode_rational(value):
    if isinstance(value, bool):
        raise InvalidPolytope(f"expected a rational, got {value!r}")
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        try:
            f = Fraction(value)
        except (ValueError, ZeroDivisionError):
            raise InvalidPolytope(f"bad rational literal {value!r}") from None
        return int(f) if f.denominator == 1 else f
    raise InvalidPolytope(f"expected a rational, got {value!r}")


@dataclass(frozen=True)
class LoadedPolytope:
    """A polytope read from disk, with lazily derived presentations."""

    dim: int
    hrep: HPolytope | None
    vrep: VPolytope | None

    def need_v(self) -> VPolytope:
        if self.vrep is not None:
            return self.vrep
        return vertices(self.hrep)

    def need_h(self) -> HPolytope:
        if self.hrep is not None:
            return self.hrep
        return facets(self.vrep)


def polytope_payload(hrep: HPolytope | None = None, vrep: VPolytope | None = None) -> dict:
    if hrep is None and vrep is None:
        raise ValueError("need at least one presentation")
    dim = hrep.dim if hrep is not None else vrep.dim
    payload = {"format": FORMAT, "dim": dim}
    if hrep is not None:
        payload["hrep"] = {
            "normals": [[encode_int(c) for c in normal] for normal, _ in hrep.facets],
            "offsets": [encode_rational(offset) for _, offset in hrep.facets],
        }
    if vrep is not None:
        payload["vrep"] = {
            "vertices": [[encode_int(c) for c in v] for v in vrep.vertices]
        }
    return payload


def save_polytope(path, hrep: HPolytope | None = None, vrep: VPolytope | None = None) -> None:
    Path(path).write_text(json.dumps(polytope_payload(hrep, vrep), indent=2) + "\n")


def parse_polytope(payload: dict) -> LoadedPolytope:
    if not isinstance(payload, dict):
        raise InvalidPolytope("polytope file must hold a JSON object")
    if payload.get("format") != FORMAT:
        raise InvalidPolytope(f"unsupported format tag {payload.get('format')!r}")
    dim = decode_int(payload.get("dim"))
    if dim < 0:
        raise InvalidPolytope("dimension must be nonnegative")
    hrep = None
    vrep = None
    if "hrep" in payload:
        block = payload["hrep"]
        normals = [[decode_int(c) for c in row] for row in block["normals"]]
        offsets = [decode_rational(x) for x in block["offsets"]]
        if any(len(row) != dim for row in normals):
            raise InvalidPolytope("normal length does not match the dimension")
        hrep = canonicalize(hpolytope(normals, offsets))
    if "vrep" in payload:
        block = payload["vrep"]
        pts = [tuple(decode_int(c) for c in row) for row in block["vertices"]]
        if any(len(p) != dim for p in pts) or not pts:
            raise InvalidPolytope("vertex length does not match the dimension")
        vrep = reduce_vertices(pts, dim)
    if hrep is None and vrep is None:
        raise InvalidPolytope("polytope file needs an hrep or a vrep block")
    if hrep is not None and vrep is not None:
        if vertices(hrep).vertices != vrep.vertices:
            raise InvalidPolytope("hrep and vrep describe different polytopes")
    return LoadedPolytope(dim, hrep, vrep)


def load_polytope(path) -> LoadedPolytope:
    try:
        text = Path(path).read_text()
    except OSError as err:
        raise InvalidPolytope(f"cannot read {path}: {err}") from None
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as err:
        raise InvalidPolytope(f"{path} is not valid JSON: {err}") from None
    return parse_polytope(payload)
