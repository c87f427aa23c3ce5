"""Canonical on-disk format for families of spaces.

A bundle is a single JSON document holding a geometry header (enough to
rebuild the standard space bit-exactly, including the field modulus and
the labelling basis), every space as an explicit point permutation or
cycle list, and free-form provenance.  Serialization is canonical
(sorted keys, fixed separators, trailing newline) so writing the same
family twice gives byte-identical files.
"""

from __future__ import annotations

import json

import numpy as np

from . import geom
from .check import Space, from_map
from .errors import MalformedBundle
from .gf import GF

FORMAT_VERSION = 1


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def bundle_dict(spaces: list[Space], provenance: dict = None) -> dict:
    if not spaces:
        raise MalformedBundle("a bundle needs at least one space")
    g = spaces[0].geometry
    for s in spaces[1:]:
        if not g.same_as(s.geometry):
            raise MalformedBundle("all spaces in a bundle share one geometry")
    header = {
        "kind": g.kind,
        "dim": g.dim,
        "q": g.q,
        "field": g.field.describe(),
    }
    if g.kind == geom.PROJECTIVE:
        header["basis"] = list(g.basis)
        header["labeling"] = g.labeling_field.describe()
    prov = {"construction": "", "parameters": {}, "reference": ""}
    prov.update(provenance or {})
    return {
        "format_version": FORMAT_VERSION,
        "header": header,
        "spaces": [
            {"name": s.name, "permutation": s.perm.tolist()}
            for s in spaces
        ],
        "provenance": prov,
    }


def write_bundle(path: str, spaces: list[Space], provenance: dict = None):
    with open(path, "w") as fh:
        fh.write(canonical_json(bundle_dict(spaces, provenance)))


def _geometry_from_header(header: dict) -> geom.Geometry:
    if not isinstance(header, dict):
        raise MalformedBundle("bundle header must be an object")
    try:
        kind, dim = header["kind"], header["dim"]
        fdesc = header["field"]
        field = GF(fdesc["p"], fdesc["n"], modulus=fdesc["modulus"])
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedBundle(f"geometry header is incomplete: {exc}")
    if kind == geom.AFFINE:
        return geom.Geometry(geom.AFFINE, dim, field=field)
    if kind == geom.PROJECTIVE:
        labeling = header.get("labeling", {})
        return geom.Geometry(geom.PROJECTIVE, dim, field=field,
                             labeling_modulus=labeling.get("modulus"),
                             basis=header.get("basis", "phi"))
    raise MalformedBundle(f"unknown geometry kind {kind!r}")


def _space_perm(item: dict, n: int, i: int) -> np.ndarray:
    if "permutation" in item:
        return np.asarray(item["permutation"], dtype=np.int64)
    if "cycles" in item:
        perm = np.arange(n, dtype=np.int64)
        for cyc in item["cycles"]:
            for a, b in zip(cyc, list(cyc[1:]) + list(cyc[:1])):
                perm[a] = b
        return perm
    raise MalformedBundle(f"space {i} has neither permutation nor cycles")


def load_bundle(data) -> tuple[list[Space], dict]:
    """Spaces and provenance from a parsed bundle document."""
    if not isinstance(data, dict):
        raise MalformedBundle("bundle root must be a JSON object")
    if data.get("format_version") != FORMAT_VERSION:
        raise MalformedBundle(
            f"unsupported format_version {data.get('format_version')!r}")
    g = _geometry_from_header(data.get("header"))
    raw = data.get("spaces")
    if not isinstance(raw, list) or not raw:
        raise MalformedBundle("bundle has no spaces")
    spaces = []
    n = g.point_count
    for i, item in enumerate(raw):
        try:
            perm = _space_perm(item, n, i)
            name = item.get("name", f"space[{i}]")
        except MalformedBundle:
            raise
        except (KeyError, TypeError, ValueError, IndexError) as exc:
            raise MalformedBundle(f"space {i} is malformed: {exc}")
        if perm.shape != (n,) or sorted(perm.tolist()) != list(range(n)):
            raise MalformedBundle(
                f"space {i}: permutation is not a bijection on {n} points")
        spaces.append(from_map(g, perm, name=name))
    prov = data.get("provenance", {})
    if not isinstance(prov, dict):
        raise MalformedBundle("provenance must be an object")
    return spaces, prov


def read_bundle(path: str) -> tuple[list[Space], dict]:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise MalformedBundle(f"not valid JSON: {exc}")
    return load_bundle(data)
