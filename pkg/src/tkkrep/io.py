"""JSON structure-constant documents and report serialisation."""
from __future__ import annotations

import json
from pathlib import Path
from typing import Union

from .algebra import FLAVOURS, StructureSuperalgebra
from .errors import SchemaError
from .linalg import SuperVectorSpace
from .scalar import ZERO, declare_parameters, parse_scalar

_REQUIRED = ("name", "even_basis", "odd_basis", "products")


def algebra_to_document(A: StructureSuperalgebra) -> dict:
    """Structure constants as a JSON-ready dict; basis indices count even labels first."""
    p = A.parities
    even = [i for i in range(len(A)) if not p[i]]
    odd = [i for i in range(len(A)) if p[i]]
    order = even + odd
    pos = {k: n for n, k in enumerate(order)}
    products = []
    for (i, j) in sorted(A.constants, key=lambda ij: (pos[ij[0]], pos[ij[1]])):
        vec = A.constants[(i, j)]
        products.append({"i": pos[i], "j": pos[j],
                         "terms": [{"k": pos[k], "coeff": str(vec[k])}
                                   for k in sorted(vec, key=pos.get)]})
    doc = {"name": A.name,
           "parameters": list(A.parameters),
           "even_basis": [A.labels[i] for i in even],
           "odd_basis": [A.labels[i] for i in odd],
           "products": products}
    if A.flavour != "jordan":
        doc["flavour"] = A.flavour
    return doc


def _fail(msg):
    raise SchemaError(msg)


def algebra_from_document(doc: dict) -> StructureSuperalgebra:
    """Validate a document and build the algebra; parity consistency is enforced."""
    if not isinstance(doc, dict):
        _fail("document must be a JSON object")
    for key in _REQUIRED:
        if key not in doc:
            _fail(f"missing field {key!r}")
    params = doc.get("parameters", [])
    if not isinstance(params, list) or not all(isinstance(x, str) for x in params):
        _fail("parameters must be a list of names")
    try:
        declare_parameters(*params)
    except ValueError as exc:
        _fail(str(exc))
    even, odd = doc["even_basis"], doc["odd_basis"]
    for name, lst in (("even_basis", even), ("odd_basis", odd)):
        if not isinstance(lst, list) or not all(isinstance(x, str) for x in lst):
            _fail(f"{name} must be a list of labels")
    labels = list(even) + list(odd)
    if not labels:
        _fail("empty basis")
    if len(set(labels)) != len(labels):
        _fail("duplicate basis labels")
    flavour = doc.get("flavour", "jordan")
    if flavour not in FLAVOURS:
        _fail(f"unknown flavour {flavour!r}")
    n = len(labels)
    consts = {}
    if not isinstance(doc["products"], list):
        _fail("products must be a list")
    for entry in doc["products"]:
        if not isinstance(entry, dict) or not {"i", "j", "terms"} <= set(entry):
            _fail("each product needs i, j and terms")
        i, j = entry["i"], entry["j"]
        if not all(isinstance(x, int) and 0 <= x < n for x in (i, j)):
            _fail(f"product index out of range: {i}, {j}")
        if (i, j) in consts:
            _fail(f"duplicate product entry ({i}, {j})")
        vec = {}
        for t in entry["terms"]:
            if not isinstance(t, dict) or "k" not in t or "coeff" not in t:
                _fail("each term needs k and coeff")
            k = t["k"]
            if not isinstance(k, int) or not 0 <= k < n:
                _fail(f"term index out of range: {k}")
            try:
                c = parse_scalar(str(t["coeff"]))
            except (ValueError, SyntaxError, ZeroDivisionError) as exc:
                _fail(f"bad coefficient {t['coeff']!r}: {exc}")
            vec[k] = vec.get(k, ZERO) + c
        consts[(i, j)] = vec
    space = SuperVectorSpace(tuple(labels), (0,) * len(even) + (1,) * len(odd))
    A = StructureSuperalgebra(doc["name"], space, consts, flavour, tuple(params))
    A.check_parity()
    return A


def load_algebra(source: Union[str, Path, dict]) -> StructureSuperalgebra:
    """Load from a dict, a JSON path or a JSON string."""
    if isinstance(source, dict):
        return algebra_from_document(source)
    text = str(source)
    if not text.lstrip().startswith("{"):
        try:
            text = Path(text).read_text()
        except OSError as exc:
            raise SchemaError(f"cannot read {source}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from exc
    return algebra_from_document(doc)


def dump_json(obj) -> str:
    """Deterministic serialisation used for every report."""
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def dump_algebra(A: StructureSuperalgebra) -> str:
    return dump_json(algebra_to_document(A))
