"""JSON encodings for algebras, maps, subspaces, descriptors, chains and patterns.

Indices are 1-based and every coefficient is a lowest-terms "p" or "p/q"
string.  Encoders sort everything so output is byte-deterministic.
"""

from __future__ import annotations

import json

from .core import LinearMap, StructureTensor
from .errors import UsageError
from .families import AlgebraDescriptor
from .rational import fmt_q, to_q
from .series import Subspace


def _q(value, where):
    try:
        return to_q(value)
    except (TypeError, ValueError) as exc:
        raise UsageError(f"{where}: {exc}") from None


def _int(value, where):
    if isinstance(value, bool) or not isinstance(value, int):
        raise UsageError(f"{where}: expected an integer, got {value!r}")
    return value


def algebra_to_json(T: StructureTensor):
    return {
        "dim": T.dim,
        "brackets": [
            {"left": i, "right": j, "result": [{"basis": k, "coeff": fmt_q(c)} for k, c in row]}
            for (i, j), row in T.brackets.items()
        ],
    }


def algebra_from_json(obj) -> StructureTensor:
    try:
        dim = _int(obj["dim"], "dim")
        table = {}
        for n, entry in enumerate(obj.get("brackets", [])):
            key = (_int(entry["left"], f"brackets[{n}].left"), _int(entry["right"], f"brackets[{n}].right"))
            row = table.setdefault(key, [])
            for term in entry["result"]:
                row.append((_int(term["basis"], f"brackets[{n}].basis"), _q(term["coeff"], f"brackets[{n}].coeff")))
    except (KeyError, TypeError, AttributeError) as exc:
        raise UsageError(f"malformed algebra JSON: {exc!r}") from None
    return StructureTensor(dim, table)


def linear_map_to_json(M: LinearMap):
    return {"dim": M.dim, "columns": [[fmt_q(c) for c in col] for col in M.columns]}


def linear_map_from_json(obj) -> LinearMap:
    try:
        dim = _int(obj["dim"], "dim")
        cols = [[_q(c, "columns") for c in col] for col in obj["columns"]]
    except (KeyError, TypeError) as exc:
        raise UsageError(f"malformed map JSON: {exc!r}") from None
    if len(cols) != dim or any(len(c) != dim for c in cols):
        raise UsageError("map JSON: columns do not match dim")
    return LinearMap.from_columns(cols)


def subspace_to_json(S: Subspace):
    return {"ambient": S.ambient_dim, "rows": [[fmt_q(c) for c in r] for r in S.rows]}


def subspace_from_json(obj) -> Subspace:
    try:
        n = _int(obj["ambient"], "ambient")
        rows = tuple(tuple(_q(c, "rows") for c in r) for r in obj.get("rows", []))
    except (KeyError, TypeError) as exc:
        raise UsageError(f"malformed subspace JSON: {exc!r}") from None
    return Subspace(n, rows)


def descriptor_to_json(d: AlgebraDescriptor):
    return d.to_json()


def descriptor_from_json(obj) -> AlgebraDescriptor:
    return AlgebraDescriptor.from_json(obj)


def chain_to_json(steps):
    return [{"description": s.description, "map": linear_map_to_json(s.map)} for s in steps]


def chain_from_json(obj):
    from .transforms import TransformStep

    try:
        return [TransformStep(str(s["description"]), linear_map_from_json(s["map"])) for s in obj]
    except (KeyError, TypeError) as exc:
        raise UsageError(f"malformed chain JSON: {exc!r}") from None


def pattern_to_json(P):
    """Algebra JSON layout; zero positions carry the marker "zero"."""
    rows = {}
    for (i, j, k), v in P.fixed_set.items():
        rows.setdefault((i, j), []).append({"basis": k, "coeff": fmt_q(v)})
    for (i, j, k) in P.zero_set:
        rows.setdefault((i, j), []).append({"basis": k, "coeff": "zero"})
    return {
        "dim": P.dim,
        "brackets": [
            {"left": i, "right": j, "result": sorted(r, key=lambda t: t["basis"])}
            for (i, j), r in sorted(rows.items())
        ],
    }


def pattern_from_json(obj):
    from .transforms import ShapePattern

    try:
        dim = _int(obj["dim"], "dim")
        zero, fixed = set(), {}
        for entry in obj.get("brackets", []):
            for term in entry["result"]:
                key = (entry["left"], entry["right"], term["basis"])
                if term["coeff"] == "zero":
                    zero.add(key)
                else:
                    fixed[key] = _q(term["coeff"], "pattern coeff")
    except (KeyError, TypeError) as exc:
        raise UsageError(f"malformed pattern JSON: {exc!r}") from None
    return ShapePattern(dim, frozenset(zero), fixed)


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def load_file(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None
