"""JSON documents for monoids, extensions, Schreier data, semimodules and points.

Parsing rejects unknown fields and out-of-range numbers and raises ParseError
with a JSON-path style location. Emission is canonical (sorted keys, compact).
"""
from __future__ import annotations

import json

from .action import make_point, make_semimodule
from .errors import MonoidError, ParseError
from .extension import SchreierData, make_extension
from .finmon import Hom, make_monoid


def dumps(doc):
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def loads(text, where="$"):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"{where}: invalid JSON ({e.msg} at line {e.lineno} column {e.colno})",
                         witness=where) from e


def load_file(path):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as e:
        raise ParseError(f"{path}: {e.strerror}", witness=str(path)) from e
    return loads(text, str(path))


def _fields(doc, where, required, optional=()):
    if not isinstance(doc, dict):
        raise ParseError(f"{where}: expected an object", witness=where)
    extra = sorted(set(doc) - set(required) - set(optional))
    if extra:
        raise ParseError(f"{where}: unknown field {extra[0]!r}", witness=f"{where}.{extra[0]}")
    missing = [k for k in required if k not in doc]
    if missing:
        raise ParseError(f"{where}: missing field {missing[0]!r}", witness=f"{where}.{missing[0]}")


def _int(v, where, bound):
    if isinstance(v, bool) or not isinstance(v, int):
        raise ParseError(f"{where}: expected an integer", witness=where)
    if not 0 <= v < bound:
        raise ParseError(f"{where}: {v} outside 0..{bound - 1}", witness=where)
    return v


def _int_list(v, where, length, bound):
    if not isinstance(v, list):
        raise ParseError(f"{where}: expected a list", witness=where)
    if length is not None and len(v) != length:
        raise ParseError(f"{where}: expected {length} entries, got {len(v)}", witness=where)
    return [_int(x, f"{where}[{i}]", bound) for i, x in enumerate(v)]


def _wrap(where, fn, *args):
    try:
        return fn(*args)
    except MonoidError as e:
        if isinstance(e, ParseError):
            raise
        raise ParseError(f"{where}: {type(e).__name__}: {e}", witness=e.witness) from e


# --- monoids ----------------------------------------------------------------------

def emit_monoid(M):
    doc = {"order": M.order, "table": [list(r) for r in M.table]}
    if M.name:
        doc["name"] = M.name
    return doc


def parse_monoid(doc, where="$"):
    _fields(doc, where, ("order", "table"), ("name",))
    n = doc["order"]
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise ParseError(f"{where}.order: expected a positive integer", witness=f"{where}.order")
    rows = doc["table"]
    if not isinstance(rows, list) or len(rows) != n:
        raise ParseError(f"{where}.table: expected {n} rows", witness=f"{where}.table")
    table = [_int_list(r, f"{where}.table[{i}]", n, n) for i, r in enumerate(rows)]
    name = doc.get("name", "")
    if not isinstance(name, str):
        raise ParseError(f"{where}.name: expected a string", witness=f"{where}.name")
    return _wrap(where, make_monoid, table, name)


# --- extensions and Schreier data ---------------------------------------------------

def emit_schreier(sd):
    return {"reps": {str(m): list(v) for m, v in sd.reps.items()},
            "base": {str(m): u for m, u in sd.base.items()},
            "q": list(sd.q)}


def _keyed(doc, where, M):
    if not isinstance(doc, dict):
        raise ParseError(f"{where}: expected an object", witness=where)
    keys = {str(m) for m in M.elements}
    extra = sorted(set(doc) - keys)
    if extra or len(doc) != M.order:
        bad = extra[0] if extra else sorted(keys - set(doc))[0]
        raise ParseError(f"{where}: keys must be exactly the elements of M (offending {bad!r})",
                         witness=f"{where}.{bad}")
    return {m: doc[str(m)] for m in M.elements}


def parse_schreier(doc, E, where="$"):
    """Shape- and range-checked Schreier data for E; values are taken as given."""
    _fields(doc, where, ("reps", "base", "q"))
    reps = {m: tuple(_int_list(v, f"{where}.reps.{m}", None, E.X.order))
            for m, v in _keyed(doc["reps"], f"{where}.reps", E.M).items()}
    base = {m: _int(v, f"{where}.base.{m}", E.X.order)
            for m, v in _keyed(doc["base"], f"{where}.base", E.M).items()}
    q = tuple(_int_list(doc["q"], f"{where}.q", E.X.order, E.K.order))
    for m in E.M.elements:
        if base[m] not in reps[m] or any(E.f(x) != m for x in reps[m]):
            raise ParseError(f"{where}.reps.{m}: representatives must lie in the fibre and contain the base",
                             witness=f"{where}.reps.{m}")
    return SchreierData(reps, base, q)


def emit_extension(E, schreier=False):
    doc = {"K": emit_monoid(E.K), "X": emit_monoid(E.X), "M": emit_monoid(E.M),
           "k": list(E.k.map), "f": list(E.f.map)}
    if E.name:
        doc["name"] = E.name
    if schreier:
        doc["schreier"] = emit_schreier(E.schreier)
    return doc


def parse_extension(doc, where="$"):
    """Extension document; a ``schreier`` field is installed as the cached Schreier data."""
    _fields(doc, where, ("K", "X", "M", "k", "f"), ("name", "schreier"))
    K = parse_monoid(doc["K"], f"{where}.K")
    X = parse_monoid(doc["X"], f"{where}.X")
    M = parse_monoid(doc["M"], f"{where}.M")
    k = Hom(K, X, _int_list(doc["k"], f"{where}.k", K.order, X.order))
    f = Hom(X, M, _int_list(doc["f"], f"{where}.f", X.order, M.order))
    E = _wrap(where, make_extension, k, f, doc.get("name", ""))
    if "schreier" in doc:
        E.__dict__["schreier"] = parse_schreier(doc["schreier"], E, f"{where}.schreier")
    return E


# --- semimodules and points -----------------------------------------------------------

def emit_semimodule(S):
    return {"M": emit_monoid(S.M), "K": emit_monoid(S.K), "act": [list(r) for r in S.act]}


def parse_semimodule(doc, where="$"):
    _fields(doc, where, ("M", "K", "act"))
    M = parse_monoid(doc["M"], f"{where}.M")
    K = parse_monoid(doc["K"], f"{where}.K")
    rows = doc["act"]
    if not isinstance(rows, list) or len(rows) != M.order:
        raise ParseError(f"{where}.act: expected {M.order} rows", witness=f"{where}.act")
    act = [_int_list(r, f"{where}.act[{m}]", K.order, K.order) for m, r in enumerate(rows)]
    return _wrap(where, make_semimodule, M, K, act)


def emit_point(P):
    return {"K": emit_monoid(P.K), "B": emit_monoid(P.B), "M": emit_monoid(P.M),
            "k": list(P.k.map), "f": list(P.f.map), "s": list(P.s.map), "q": list(P.q)}


def parse_point(doc, where="$"):
    _fields(doc, where, ("K", "B", "M", "k", "f", "s"), ("q",))
    K = parse_monoid(doc["K"], f"{where}.K")
    B = parse_monoid(doc["B"], f"{where}.B")
    M = parse_monoid(doc["M"], f"{where}.M")
    k = Hom(K, B, _int_list(doc["k"], f"{where}.k", K.order, B.order))
    f = Hom(B, M, _int_list(doc["f"], f"{where}.f", B.order, M.order))
    s = Hom(M, B, _int_list(doc["s"], f"{where}.s", M.order, B.order))
    P = _wrap(where, make_point, k, f, s)
    if "q" in doc and tuple(_int_list(doc["q"], f"{where}.q", B.order, K.order)) != P.q:
        raise ParseError(f"{where}.q: retraction differs from the computed one", witness=f"{where}.q")
    return P


KINDS = {
    "monoid": (parse_monoid, emit_monoid),
    "extension": (parse_extension, emit_extension),
    "semimodule": (parse_semimodule, emit_semimodule),
    "point": (parse_point, emit_point),
}


def canonical(text, kind):
    """Re-emit a document of the given kind in canonical form."""
    parse, emit = KINDS[kind]
    obj = parse(loads(text))
    if kind == "extension":
        return dumps(emit(obj, schreier="schreier" in loads(text)))
    return dumps(emit(obj))
