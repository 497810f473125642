"""Network and evidence documents.

Both formats are JSON. Ranks are non-negative integers, with the string
"inf" standing for the infinite rank; nothing is ever a float. A network
document lists variables (name plus domain), directed edges, and one table
per node giving the variable order its ranks are laid out in (row-major,
last variable fastest). The serializer always emits the canonical layout:
diagram declaration order everywhere, so parse -> serialize -> parse is
the identity and equal networks produce byte-identical documents.

Evidence documents hold a list of observations. A value observation names
a variable, the accepted values, and a strength (integer or "inf"); a
target observation instead carries a whole replacement marginal for the
variable, in domain order.
"""

from __future__ import annotations

import json
from typing import Any

from .diagram import InfluenceDiagram
from .errors import DocumentError, InvalidTarget
from .network import SpohnianNetwork
from .ocf import OCF, StateSpace, Variable
from .propagation import EvidenceSpec
from .ranks import INF, Rank, SignedDelta, _Infinity


def _rank_from_json(value: Any, where: str, *, signed: bool = False) -> Rank | SignedDelta:
    if value == "inf":
        return INF
    if type(value) is int:
        if signed or value >= 0:
            return value
    raise DocumentError(
        f"{where}: expected a non-negative integer or \"inf\", got {value!r}"
        if not signed
        else f"{where}: expected an integer or \"inf\", got {value!r}"
    )


def _rank_to_json(value: Rank) -> Any:
    return "inf" if isinstance(value, _Infinity) else value


def _load_json(text: str, what: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{what} is not valid JSON: {exc.msg}", line=exc.lineno, column=exc.colno) from exc


def _require_keys(obj: dict, allowed: set[str], required: set[str], where: str) -> None:
    extra = set(obj) - allowed
    if extra:
        raise DocumentError(f"{where}: unknown keys {sorted(extra)}")
    missing = required - set(obj)
    if missing:
        raise DocumentError(f"{where}: missing keys {sorted(missing)}")


def parse_network(text: str) -> SpohnianNetwork:
    doc = _load_json(text, "network document")
    if not isinstance(doc, dict):
        raise DocumentError("network document must be a JSON object")
    _require_keys(doc, {"variables", "edges", "tables"}, {"variables", "edges", "tables"}, "network document")

    raw_vars = doc["variables"]
    if not isinstance(raw_vars, list) or not raw_vars:
        raise DocumentError("variables: expected a non-empty list")
    variables: list[Variable] = []
    for i, item in enumerate(raw_vars):
        where = f"variables[{i}]"
        if not isinstance(item, dict):
            raise DocumentError(f"{where}: expected an object")
        _require_keys(item, {"name", "domain"}, {"name", "domain"}, where)
        name, domain = item["name"], item["domain"]
        if not isinstance(name, str):
            raise DocumentError(f"{where}.name: expected a string")
        if not isinstance(domain, list) or not all(isinstance(v, str) for v in domain):
            raise DocumentError(f"{where}.domain: expected a list of strings")
        try:
            variables.append(Variable(name, tuple(domain)))
        except ValueError as exc:
            raise DocumentError(f"{where}: {exc}") from exc

    raw_edges = doc["edges"]
    if not isinstance(raw_edges, list):
        raise DocumentError("edges: expected a list")
    edges: list[tuple[str, str]] = []
    for i, item in enumerate(raw_edges):
        if (
            not isinstance(item, list)
            or len(item) != 2
            or not all(isinstance(e, str) for e in item)
        ):
            raise DocumentError(f"edges[{i}]: expected a [parent, child] pair of names")
        edges.append((item[0], item[1]))
    try:
        diagram = InfluenceDiagram(tuple(variables), tuple(edges))
    except Exception as exc:
        raise DocumentError(f"edges: {exc}") from exc

    raw_tables = doc["tables"]
    if not isinstance(raw_tables, dict):
        raise DocumentError("tables: expected an object keyed by node name")
    missing = set(diagram.names) - set(raw_tables)
    if missing:
        raise DocumentError(f"tables: missing table for {sorted(missing)}")
    extra = set(raw_tables) - set(diagram.names)
    if extra:
        raise DocumentError(f"tables: unknown nodes {sorted(extra)}")

    tables: dict[str, OCF] = {}
    for node in diagram.names:
        where = f"tables.{node}"
        entry = raw_tables[node]
        if not isinstance(entry, dict):
            raise DocumentError(f"{where}: expected an object")
        _require_keys(entry, {"order", "ranks"}, {"order", "ranks"}, where)
        order = entry["order"]
        family = diagram.family_variables(node)
        if (
            not isinstance(order, list)
            or sorted(order) != sorted(family)
        ):
            raise DocumentError(
                f"{where}.order: expected a permutation of {list(family)}, got {order!r}"
            )
        doc_space = StateSpace(tuple(diagram.variable(n) for n in order))
        raw_ranks = entry["ranks"]
        if not isinstance(raw_ranks, list) or len(raw_ranks) != doc_space.size:
            raise DocumentError(
                f"{where}.ranks: expected {doc_space.size} entries, got "
                f"{len(raw_ranks) if isinstance(raw_ranks, list) else type(raw_ranks).__name__}"
            )
        doc_ranks = [
            _rank_from_json(v, f"{where}.ranks[{i}]") for i, v in enumerate(raw_ranks)
        ]
        canonical_space = StateSpace(tuple(diagram.variable(n) for n in family))
        if order == list(family):
            ranks = doc_ranks
        else:
            pos = {n: i for i, n in enumerate(order)}
            ranks = []
            for i in range(canonical_space.size):
                state = canonical_space.state_at(i)
                reordered = tuple(state[family.index(n)] for n in order)
                ranks.append(doc_ranks[doc_space.index_of(reordered)])
        if min(ranks) != 0:
            raise DocumentError(f"{where}: table has no rank-0 entry")
        tables[node] = OCF(canonical_space, tuple(ranks))

    return SpohnianNetwork(diagram, tables)


def serialize_network(net: SpohnianNetwork) -> str:
    doc = {
        "variables": [
            {"name": v.name, "domain": list(v.domain)} for v in net.diagram.variables
        ],
        "edges": [[a, b] for a, b in net.diagram.edges],
        "tables": {
            node: {
                "order": list(net.tables[node].space.names),
                "ranks": [_rank_to_json(r) for r in net.tables[node].ranks],
            }
            for node in net.diagram.names
        },
    }
    return json.dumps(doc, indent=2) + "\n"


def parse_evidence(text: str, net: SpohnianNetwork) -> list[EvidenceSpec]:
    doc = _load_json(text, "evidence document")
    if not isinstance(doc, dict):
        raise DocumentError("evidence document must be a JSON object")
    _require_keys(doc, {"evidence"}, {"evidence"}, "evidence document")
    raw = doc["evidence"]
    if not isinstance(raw, list) or not raw:
        raise DocumentError("evidence: expected a non-empty list")
    out: list[EvidenceSpec] = []
    for i, item in enumerate(raw):
        where = f"evidence[{i}]"
        if not isinstance(item, dict):
            raise DocumentError(f"{where}: expected an object")
        _require_keys(item, {"variable", "values", "target", "strength"}, {"variable"}, where)
        name = item["variable"]
        if not isinstance(name, str):
            raise DocumentError(f"{where}.variable: expected a string")
        try:
            var = net.diagram.variable(name)
        except Exception as exc:
            raise DocumentError(f"{where}.variable: {exc}") from exc
        has_values = "values" in item
        has_target = "target" in item
        if has_values == has_target:
            raise DocumentError(f"{where}: exactly one of values or target is required")
        if has_values:
            values = item["values"]
            if (
                not isinstance(values, list)
                or not values
                or not all(isinstance(v, str) for v in values)
            ):
                raise DocumentError(f"{where}.values: expected a non-empty list of strings")
            bad = [v for v in values if v not in var.domain]
            if bad:
                raise DocumentError(
                    f"{where}.values: {bad[0]!r} is not a value of {name!r}"
                )
            if "strength" not in item:
                raise DocumentError(f"{where}: value evidence needs a strength")
            strength = _rank_from_json(item["strength"], f"{where}.strength", signed=True)
            out.append(EvidenceSpec(name, values=tuple(values), strength=strength))
        else:
            if "strength" in item:
                raise DocumentError(f"{where}: target evidence takes no strength")
            target = item["target"]
            if not isinstance(target, list) or len(target) != len(var.domain):
                raise DocumentError(
                    f"{where}.target: expected {len(var.domain)} entries in domain order"
                )
            ranks = tuple(
                _rank_from_json(v, f"{where}.target[{j}]") for j, v in enumerate(target)
            )
            if min(ranks) != 0:
                raise InvalidTarget(f"{where}.target: no entry has rank 0")
            out.append(EvidenceSpec(name, target=ranks))
    return out
