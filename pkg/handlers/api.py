"""JSON API mirroring the command-line subcommands.

Request bodies carry documents as strings, e.g.
``{"document": "colors: 1 1\\na((1,1),(2,1))"}`` or
``{"left": ..., "right": ..., "budget": 500}``.
"""

from __future__ import annotations

import logging
from typing import Any, Dict, Tuple

from flask import Blueprint, Response, jsonify, request

from homotopy.decide import DecisionOutcome, Verdict, closure_equivalent, gclosure_equivalent
from homotopy.errors import InputError, LinkHomotopyError, ParseError
from homotopy.scheme import ComponentDecomposition, invariant_count
from homotopy.stringlink import ColoredStringLink, realize

from handlers import render
from handlers.dsl import parse_graph, parse_link
from handlers.metrics import decisions, invariant_requests, search_nodes
from utils.cache import cached_vector, default_cache
from utils.config import get_settings
from utils.db import db_session
from utils.decision_log import record_decision
from utils.models import DecisionRecord

logger = logging.getLogger(__name__)

bp = Blueprint("api", __name__, url_prefix="/api")


def _authorized() -> bool:
    token = get_settings().admin_token
    if not token:
        return True
    return request.headers.get("X-Admin-Token") == token


def _body() -> Dict[str, Any]:
    data = request.get_json(silent=True)
    if not isinstance(data, dict):
        raise InputError("request body must be a JSON object")
    return data


def _text(data: Dict[str, Any], key: str) -> str:
    value = data.get(key)
    if not isinstance(value, str):
        raise InputError(f"field {key!r} must be a document string")
    return value


def _link(data: Dict[str, Any], key: str) -> ColoredStringLink:
    return parse_link(_text(data, key)).to_link()


def _pair(data: Dict[str, Any], graph: bool = False) -> Tuple[ColoredStringLink, ColoredStringLink]:
    if graph:
        return parse_graph(_text(data, "left")).to_link(), parse_graph(_text(data, "right")).to_link()
    return _link(data, "left"), _link(data, "right")


def _budget(data: Dict[str, Any]) -> int:
    limit = get_settings().budget
    raw = data.get("budget", limit)
    if isinstance(raw, bool) or not isinstance(raw, int):
        raise InputError("budget must be an integer")
    # Clients may lower the configured budget, never raise it
    return max(0, min(raw, limit))


def _decision(kind: str, left: ColoredStringLink, right: ColoredStringLink, outcome: DecisionOutcome) -> Response:
    decisions.labels(kind=kind, verdict=outcome.verdict.value).inc()
    if kind != "cl":
        search_nodes.observe(outcome.stats.nodes_expanded)
    record_decision(kind, left, right, outcome)
    return jsonify(outcome.describe())


@bp.errorhandler(LinkHomotopyError)
def _handle_error(exc: LinkHomotopyError):
    body: Dict[str, Any] = {"error": exc.kind, "message": getattr(exc, "message", None) or str(exc)}
    if isinstance(exc, ParseError):
        body["line"] = exc.line
        body["column"] = exc.column
    return jsonify(body), 400


@bp.post("/invariants")
def invariants() -> Response:
    invariant_requests.inc()
    vector = cached_vector(_link(_body(), "document"), default_cache())
    return jsonify(render.vector_payload(vector))


@bp.post("/canon")
def canon() -> Response:
    invariant_requests.inc()
    vector = cached_vector(_link(_body(), "document"), default_cache())
    return jsonify({"document": render.canonical_text(realize(vector))})


@bp.post("/eq")
def eq() -> Response:
    left, right = _pair(_body())
    if left.ambient != right.ambient:
        raise InputError(f"colors differ: {left.ambient} vs {right.ambient}")
    same = left.invariant_vector() == right.invariant_vector()
    return _decision("cl", left, right, DecisionOutcome(Verdict.EQUIVALENT if same else Verdict.DISTINCT))


@bp.post("/closure-eq")
def closure_eq() -> Response:
    data = _body()
    left, right = _pair(data)
    outcome = closure_equivalent(left, right, budget=_budget(data), workers=get_settings().workers)
    return _decision("closure", left, right, outcome)


@bp.post("/graph-eq")
def graph_eq() -> Response:
    data = _body()
    left, right = _pair(data, graph=True)
    outcome = gclosure_equivalent(left, right, budget=_budget(data), workers=get_settings().workers)
    return _decision("gclosure", left, right, outcome)


@bp.get("/count")
def count() -> Response:
    decomposition = ComponentDecomposition.parse(request.args.get("colors") or "")
    level = request.args.get("level")
    try:
        k = int(level) if level is not None else None
    except ValueError as exc:
        raise InputError(f"level must be an integer, got {level!r}") from exc
    if k is not None and k < 1:
        raise InputError(f"level must be at least 1, got {k}")
    return jsonify({"colors": list(decomposition.counts), "level": k, "count": invariant_count(decomposition, k)})


@bp.get("/decisions")
def decision_log() -> Response:
    if not _authorized():
        return Response("Unauthorized", status=401)
    try:
        limit = int(request.args.get("limit", "50"))
    except ValueError:
        limit = 50
    limit = max(1, min(limit, 500))
    with db_session() as s:
        rows = s.query(DecisionRecord).order_by(DecisionRecord.created_at.desc(), DecisionRecord.id.desc()).limit(limit).all()
        data = [r.as_dict() for r in rows]
    return jsonify({"decisions": data})
