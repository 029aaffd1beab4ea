from __future__ import annotations

from flask import Blueprint, Response
from prometheus_client import CONTENT_TYPE_LATEST, Counter, Histogram, generate_latest

bp = Blueprint("metrics", __name__)

invariant_requests = Counter("linkhom_invariant_requests_total", "Invariant vector computations requested")
cache_events = Counter("linkhom_cache_events_total", "Vector cache events", ["event"])
decisions = Counter("linkhom_decisions_total", "Equivalence decisions", ["kind", "verdict"])
search_nodes = Histogram(
    "linkhom_search_nodes",
    "Nodes expanded per closure search",
    buckets=(0, 1, 10, 100, 1_000, 10_000, 100_000),
)


@bp.get("/metrics")
def metrics() -> Response:
    return Response(generate_latest(), mimetype=CONTENT_TYPE_LATEST)
