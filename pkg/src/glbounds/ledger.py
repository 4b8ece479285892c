"""Bound-composition DAG: load, evaluate, verify, explain.

A ledger is a JSON document holding a list of nodes.  Leaves are either
plain constants or recomputable quantities (Minkowski products, rough
table rows, degree-only PGL2/GL2 maxima, single standard-equation
cases); inner nodes combine children by product, maximum, or an exact
integer scaling i/r.  Every node carries the value it is supposed to
have, in factored form, so the whole case analysis can be replayed and
audited step by step.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from importlib import resources
from typing import Iterable, Mapping

from .cyclotomic import DegreeOnly, QQ, TRISTATE
from .diophantine import SolutionConstraints, max_schur_exponent
from .exactnum import (
    ONE,
    FactoredInteger,
    NonDivisible,
    fi_cmp,
    fi_div_exact,
    fi_mul,
    fi_to_decimal,
    fi_to_factored_str,
    is_prime,
)
from .bounds import (
    gl2_max_order,
    minkowski_bound,
    pgl2_admissible,
    rough_bound,
    serre_bound,
)


class LedgerError(ValueError):
    """Base class for everything the loader or evaluator can reject."""


class SchemaError(LedgerError):
    pass


class CycleError(LedgerError):
    pass


class DanglingChild(LedgerError):
    pass


class BadDeclaredValue(LedgerError):
    pass


class ScaleNotExact(LedgerError):
    pass


SCHEMA_VERSION = 1

LEAF_KINDS = frozenset(
    {"Constant", "Minkowski", "SchurRough", "SerreQ", "Pgl2", "Gl2", "EquationCase"}
)
INNER_KINDS = frozenset({"Product", "Max", "ScaledProduct", "AppendixProp"})
KINDS = LEAF_KINDS | INNER_KINDS

# Required argument keys per kind, plus the optional ones EquationCase
# and Pgl2 may add.  Anything outside these sets is a schema error.
_REQUIRED_ARGS = {
    "Constant": frozenset(),
    "Minkowski": frozenset({"n"}),
    "SchurRough": frozenset({"n", "d"}),
    "SerreQ": frozenset({"n"}),
    "Pgl2": frozenset({"degree"}),
    "Gl2": frozenset({"degree"}),
    "Product": frozenset(),
    "Max": frozenset(),
    "ScaledProduct": frozenset({"num", "den"}),
    "AppendixProp": frozenset({"n", "d_max"}),
    "EquationCase": frozenset({"p", "n", "d"}),
}
_OPTIONAL_ARGS = {
    "Pgl2": frozenset({"minus1_sum_of_two_squares", "contains_sqrt5"}),
    "EquationCase": frozenset({"e_min", "t_max", "constraints", "xi4"}),
}

_NODE_FIELDS = frozenset(
    {"id", "kind", "args", "children", "declared", "decimal", "citation"}
)
_NODE_OPTIONAL = frozenset({"paper_prints", "note"})


@dataclass(frozen=True)
class LedgerNode:
    id: str
    kind: str
    args: Mapping[str, object]
    children: tuple[str, ...]
    declared: FactoredInteger
    citation: str
    paper_prints: str | None = None
    note: str | None = None


@dataclass(frozen=True)
class Ledger:
    """Validated, immutable DAG.  `order` preserves document order."""

    schema_version: int
    root: str | None
    whitelist: tuple[str, ...]
    nodes: Mapping[str, LedgerNode]
    order: tuple[str, ...]


@dataclass(frozen=True)
class VerificationRow:
    id: str
    declared: FactoredInteger
    computed: FactoredInteger
    status: str  # Match | Mismatch | Unchecked
    annotation: str | None = None


@dataclass(frozen=True)
class VerificationReport:
    rows: tuple[VerificationRow, ...]

    def mismatches(self) -> list[VerificationRow]:
        return [r for r in self.rows if r.status == "Mismatch"]

    def unexpected(self, whitelist: Iterable[str]) -> list[VerificationRow]:
        allowed = set(whitelist)
        return [r for r in self.mismatches() if r.id not in allowed]


# ------------------------------------------------------------------- loading

def _want(cond: bool, exc: type[LedgerError], msg: str):
    if not cond:
        raise exc(msg)


def _is_int(x) -> bool:
    return type(x) is int


def _check_args(node_id: str, kind: str, args) -> dict:
    _want(isinstance(args, dict), SchemaError, "%s: args must be an object" % node_id)
    required = _REQUIRED_ARGS[kind]
    optional = _OPTIONAL_ARGS.get(kind, frozenset())
    keys = set(args)
    _want(
        required <= keys <= required | optional,
        SchemaError,
        "%s: %s args must have %s, got %s"
        % (node_id, kind, sorted(required), sorted(keys)),
    )
    for key in keys - {"constraints", "xi4", "minus1_sum_of_two_squares", "contains_sqrt5"}:
        _want(
            _is_int(args[key]) and args[key] >= 1,
            SchemaError,
            "%s: arg %r must be a positive integer" % (node_id, key),
        )
    for key in keys & {"xi4", "minus1_sum_of_two_squares", "contains_sqrt5"}:
        _want(
            args[key] in TRISTATE,
            SchemaError,
            "%s: arg %r must be yes/no/unknown" % (node_id, key),
        )
    if "constraints" in keys:
        tags = args["constraints"]
        _want(
            isinstance(tags, list) and all(isinstance(t, str) for t in tags),
            SchemaError,
            "%s: constraints must be a list of tag strings" % node_id,
        )
    if kind == "EquationCase":
        _want(args["p"] % 2 == 1 and is_prime(args["p"]), SchemaError,
              "%s: EquationCase needs an odd prime p" % node_id)
    return dict(args)


def _parse_declared(node_id: str, raw, decimal) -> FactoredInteger:
    _want(isinstance(raw, dict), BadDeclaredValue,
          "%s: declared must be a map prime -> exponent" % node_id)
    factors: dict[int, int] = {}
    for key, exp in raw.items():
        _want(isinstance(key, str) and key.isdigit(), BadDeclaredValue,
              "%s: declared key %r is not a prime string" % (node_id, key))
        p = int(key)
        _want(is_prime(p), BadDeclaredValue,
              "%s: declared key %s is not prime" % (node_id, key))
        _want(_is_int(exp) and exp >= 1, BadDeclaredValue,
              "%s: declared exponent for %s must be a positive integer" % (node_id, key))
        _want(p not in factors, BadDeclaredValue,
              "%s: duplicate prime %s in declared" % (node_id, key))
        factors[p] = exp
    value = FactoredInteger.from_map(factors)
    _want(isinstance(decimal, str), BadDeclaredValue,
          "%s: decimal must be a string" % node_id)
    expect = fi_to_decimal(value, group=True)
    _want(decimal == expect, BadDeclaredValue,
          "%s: decimal %r does not match declared factorization (%s)"
          % (node_id, decimal, expect))
    return value


def _check_acyclic(nodes: Mapping[str, LedgerNode]):
    # Iterative three-color DFS; recursion depth is unbounded by schema.
    WHITE, GRAY, BLACK = 0, 1, 2
    color = {nid: WHITE for nid in nodes}
    for start in nodes:
        if color[start] != WHITE:
            continue
        stack: list[tuple[str, int]] = [(start, 0)]
        while stack:
            nid, i = stack.pop()
            if i == 0:
                color[nid] = GRAY
            kids = nodes[nid].children
            if i < len(kids):
                stack.append((nid, i + 1))
                kid = kids[i]
                if color[kid] == GRAY:
                    raise CycleError("cycle through %r and %r" % (nid, kid))
                if color[kid] == WHITE:
                    stack.append((kid, 0))
            else:
                color[nid] = BLACK


def load_ledger(source) -> Ledger:
    """Parse and validate a ledger document.

    Accepts an already-parsed mapping, a JSON string, or a filesystem
    path.  All structural and declared-value invariants are checked
    here so that evaluation can assume a well-formed DAG.
    """
    if isinstance(source, (str, os.PathLike)) and not isinstance(source, Mapping):
        text = str(source)
        if isinstance(source, os.PathLike) or not text.lstrip().startswith("{"):
            with open(source, "r", encoding="utf-8") as handle:
                doc = json.load(handle)
        else:
            doc = json.loads(text)
    elif isinstance(source, Mapping):
        doc = source
    else:
        raise SchemaError("unsupported ledger source %r" % type(source))

    _want(isinstance(doc, dict), SchemaError, "document must be an object")
    keys = set(doc)
    _want(keys <= {"schema_version", "root", "whitelist", "nodes"}, SchemaError,
          "unknown top-level keys %s" % sorted(keys - {"schema_version", "root", "whitelist", "nodes"}))
    _want(doc.get("schema_version") == SCHEMA_VERSION, SchemaError,
          "schema_version must be %d" % SCHEMA_VERSION)
    raw_nodes = doc.get("nodes")
    _want(isinstance(raw_nodes, list), SchemaError, "nodes must be a list")

    nodes: dict[str, LedgerNode] = {}
    order: list[str] = []
    for raw in raw_nodes:
        _want(isinstance(raw, dict), SchemaError, "node entries must be objects")
        fields = set(raw)
        _want(_NODE_FIELDS <= fields <= _NODE_FIELDS | _NODE_OPTIONAL, SchemaError,
              "node fields must be %s (+ optional %s), got %s"
              % (sorted(_NODE_FIELDS), sorted(_NODE_OPTIONAL), sorted(fields)))
        nid = raw["id"]
        _want(isinstance(nid, str) and nid != "", SchemaError, "empty node id")
        _want(nid not in nodes, SchemaError, "duplicate node id %r" % nid)
        kind = raw["kind"]
        _want(kind in KINDS, SchemaError, "%s: unknown kind %r" % (nid, kind))
        args = _check_args(nid, kind, raw["args"])
        children = raw["children"]
        _want(isinstance(children, list) and all(isinstance(c, str) for c in children),
              SchemaError, "%s: children must be a list of ids" % nid)
        if kind in LEAF_KINDS:
            _want(children == [], SchemaError, "%s: %s takes no children" % (nid, kind))
        else:
            _want(len(children) >= 1, SchemaError, "%s: %s needs children" % (nid, kind))
        declared = _parse_declared(nid, raw["declared"], raw["decimal"])
        citation = raw["citation"]
        _want(isinstance(citation, str), SchemaError, "%s: citation must be a string" % nid)
        for opt in _NODE_OPTIONAL & fields:
            _want(isinstance(raw[opt], str), SchemaError, "%s: %s must be a string" % (nid, opt))
        nodes[nid] = LedgerNode(
            id=nid,
            kind=kind,
            args=args,
            children=tuple(children),
            declared=declared,
            citation=citation,
            paper_prints=raw.get("paper_prints"),
            note=raw.get("note"),
        )
        order.append(nid)

    for node in nodes.values():
        for kid in node.children:
            if kid not in nodes:
                raise DanglingChild("%s: child %r does not exist" % (node.id, kid))
    _check_acyclic(nodes)

    root = doc.get("root")
    if root is not None:
        _want(isinstance(root, str) and root in nodes, SchemaError,
              "root %r is not a node id" % root)
    whitelist = doc.get("whitelist", [])
    _want(isinstance(whitelist, list) and all(isinstance(w, str) for w in whitelist),
          SchemaError, "whitelist must be a list of ids")
    for wid in whitelist:
        _want(wid in nodes, SchemaError, "whitelisted id %r is not a node" % wid)
    _want(len(set(whitelist)) == len(whitelist), SchemaError, "duplicate whitelist entry")

    return Ledger(
        schema_version=SCHEMA_VERSION,
        root=root,
        whitelist=tuple(whitelist),
        nodes=nodes,
        order=tuple(order),
    )


# ---------------------------------------------------------------- evaluation

def _eval_leaf(node: LedgerNode) -> FactoredInteger:
    args = node.args
    if node.kind == "Constant":
        return node.declared
    if node.kind == "Minkowski":
        return minkowski_bound(args["n"])
    if node.kind == "SchurRough":
        return rough_bound(args["n"], args["d"])
    if node.kind == "SerreQ":
        return serre_bound(args["n"], QQ)
    if node.kind == "Pgl2":
        field_ = DegreeOnly(
            degree=args["degree"],
            minus1_sum_of_two_squares=args.get("minus1_sum_of_two_squares", "unknown"),
            contains_sqrt5=args.get("contains_sqrt5", "unknown"),
        )
        return pgl2_admissible(field_)[1]
    if node.kind == "Gl2":
        return gl2_max_order(args["degree"])
    # EquationCase: one "what does the standard equation allow for p"
    # step, returning p to the largest admissible exponent.
    c = SolutionConstraints(
        e_min=args.get("e_min", 1),
        t_max=args.get("t_max"),
        extra=tuple(args.get("constraints", ())),
    )
    exponent = max_schur_exponent(
        args["p"], args["n"], args["d"], c, xi4=args.get("xi4", "unknown")
    )
    if exponent == 0:
        return ONE
    return FactoredInteger.from_map({args["p"]: exponent})


def _eval(ledger: Ledger, nid: str, memo: dict, overrides: Mapping[str, FactoredInteger]):
    if nid in overrides:
        return overrides[nid]
    if nid in memo:
        return memo[nid]
    node = ledger.nodes[nid]
    if node.kind in LEAF_KINDS:
        value = _eval_leaf(node)
    else:
        kids = [_eval(ledger, kid, memo, overrides) for kid in node.children]
        if node.kind == "Product":
            value = ONE
            for kid in kids:
                value = fi_mul(value, kid)
        elif node.kind in ("Max", "AppendixProp"):
            value = kids[0]
            for kid in kids[1:]:
                if fi_cmp(kid, value) > 0:
                    value = kid
        else:  # ScaledProduct
            value = FactoredInteger.from_int(node.args["num"])
            for kid in kids:
                value = fi_mul(value, kid)
            try:
                value = fi_div_exact(value, FactoredInteger.from_int(node.args["den"]))
            except NonDivisible:
                raise ScaleNotExact(
                    "%s: %d/%d of the child product is not an integer"
                    % (nid, node.args["num"], node.args["den"])
                ) from None
    memo[nid] = value
    return value


def _normalize_overrides(
    ledger: Ledger,
    overrides: Mapping[str, FactoredInteger | int] | None,
) -> dict[str, FactoredInteger]:
    """Coerce override values to FactoredInteger.

    Plain ints are accepted; 0 maps to the empty product, which removes
    the branch from maxima without deleting the node.
    """
    out: dict[str, FactoredInteger] = {}
    for nid, value in (overrides or {}).items():
        if nid not in ledger.nodes:
            raise LedgerError("override names unknown node %r" % nid)
        if isinstance(value, FactoredInteger):
            out[nid] = value
        elif isinstance(value, int) and not isinstance(value, bool):
            out[nid] = ONE if value == 0 else FactoredInteger.from_int(value)
        else:
            raise LedgerError("override for %r is not an integer" % nid)
    return out


def eval_node(
    ledger: Ledger,
    nid: str,
    overrides: Mapping[str, FactoredInteger | int] | None = None,
) -> FactoredInteger:
    if nid not in ledger.nodes:
        raise LedgerError("no node %r" % nid)
    return _eval(ledger, nid, {}, _normalize_overrides(ledger, overrides))


def verify_ledger(ledger: Ledger) -> VerificationReport:
    """Recompute every node and compare against its declared value.

    Constants have nothing independent to compare against, so they are
    reported as Unchecked.  A paper_prints entry that differs from the
    declared decimal is surfaced as an annotation on the row.
    """
    memo: dict[str, FactoredInteger] = {}
    rows = []
    for nid in ledger.order:
        node = ledger.nodes[nid]
        computed = _eval(ledger, nid, memo, {})
        if node.kind == "Constant":
            status = "Unchecked"
        elif fi_cmp(computed, node.declared) == 0:
            status = "Match"
        else:
            status = "Mismatch"
        annotation = None
        if node.paper_prints is not None:
            declared_plain = fi_to_decimal(node.declared)
            if node.paper_prints.replace(" ", "") != declared_plain:
                annotation = "source text prints %s" % node.paper_prints
        rows.append(VerificationRow(nid, node.declared, computed, status, annotation))
    return VerificationReport(tuple(rows))


def final_bound(
    ledger: Ledger,
    overrides: Mapping[str, FactoredInteger | int] | None = None,
) -> FactoredInteger:
    if ledger.root is None:
        raise LedgerError("ledger has no designated root")
    return eval_node(ledger, ledger.root, overrides)


def explain(ledger: Ledger, nid: str) -> str:
    """Indented derivation tree for a node, children in document order."""
    if nid not in ledger.nodes:
        raise LedgerError("no node %r" % nid)
    memo: dict[str, FactoredInteger] = {}
    lines: list[str] = []

    def render(node_id: str, depth: int):
        node = ledger.nodes[node_id]
        value = _eval(ledger, node_id, memo, {})
        lines.append(
            "%s%s [%s] = %s = %s  (%s)"
            % (
                "  " * depth,
                node_id,
                node.kind,
                fi_to_factored_str(value),
                fi_to_decimal(value, group=True),
                node.citation,
            )
        )
        for kid in node.children:
            render(kid, depth + 1)

    render(nid, 0)
    return "\n".join(lines)


# -------------------------------------------------------------- (de)serial.

def to_document(ledger: Ledger) -> dict:
    """Rebuild the JSON document; load(to_document(x)) is x again."""
    out: dict = {"schema_version": ledger.schema_version}
    if ledger.root is not None:
        out["root"] = ledger.root
    out["whitelist"] = list(ledger.whitelist)
    nodes = []
    for nid in ledger.order:
        node = ledger.nodes[nid]
        entry = {
            "id": node.id,
            "kind": node.kind,
            "args": dict(node.args),
            "children": list(node.children),
            "declared": {str(p): e for p, e in node.declared.as_map().items()},
            "decimal": fi_to_decimal(node.declared, group=True),
            "citation": node.citation,
        }
        if node.paper_prints is not None:
            entry["paper_prints"] = node.paper_prints
        if node.note is not None:
            entry["note"] = node.note
        nodes.append(entry)
    out["nodes"] = nodes
    return out


def dumps_ledger(ledger: Ledger) -> str:
    return json.dumps(to_document(ledger), indent=2, ensure_ascii=False) + "\n"


def paper_ledger() -> Ledger:
    """The ledger distributed with the package."""
    text = resources.files("glbounds").joinpath("data/paper_ledger.json").read_text("utf-8")
    return load_ledger(json.loads(text))
