"""Persist equivalence decisions to the database when the decision log is enabled."""

from __future__ import annotations

import logging
from typing import Optional

from homotopy.decide import DecisionOutcome
from homotopy.stringlink import ColoredStringLink

from utils.cache import cache_key
from utils.config import get_settings
from utils.db import db_session, init_db
from utils.models import DecisionRecord

logger = logging.getLogger(__name__)

_READY = False


def document_hash(link: ColoredStringLink) -> str:
    return cache_key(link)


def record_decision(
    kind: str,
    left: ColoredStringLink,
    right: ColoredStringLink,
    outcome: DecisionOutcome,
    force: bool = False,
) -> Optional[int]:
    """Write one decision row; returns its id, or ``None`` when disabled or on failure.

    Parameters
    ----------
    kind:
        ``cl``, ``closure`` or ``gclosure``.
    left, right:
        The compared string links; stored as hashes of their normalized words.
    outcome:
        The decision, including witness, certificate and search statistics.
    force:
        Record even when ``LINKHOM_DECISION_LOG`` is off.
    """
    global _READY
    if not (force or get_settings().decision_log):
        return None
    try:
        if not _READY:
            init_db()
            _READY = True
        with db_session() as s:
            row = DecisionRecord(
                kind=kind,
                colors=str(left.ambient),
                left_hash=document_hash(left),
                right_hash=document_hash(right),
                verdict=outcome.verdict.value,
                witness_length=len(outcome.witness),
                witness="\n".join(str(m) for m in outcome.witness) or None,
                certificate=str(outcome.certificate) if outcome.certificate else None,
                nodes_expanded=outcome.stats.nodes_expanded,
                budget=outcome.stats.budget,
            )
            s.add(row)
            s.flush()
            return row.id
    except Exception as exc:  # noqa: BLE001
        logger.warning("Could not record %s decision: %s", kind, exc)
        return None


def reset_decision_log() -> None:
    global _READY
    _READY = False
