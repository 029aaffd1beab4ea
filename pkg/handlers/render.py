"""Plain-text, TSV and JSON renderings of results."""

from __future__ import annotations

import json
from typing import Dict, List

from homotopy.decide import DecisionOutcome, Verdict
from homotopy.stringlink import ColoredStringLink, InvariantVector

from handlers.dsl import LinkDocument, serialize_link


def vector_payload(vector: InvariantVector) -> Dict[str, object]:
    return {
        "colors": list(vector.ambient.counts),
        "mu": [{"seq": J.flattened(), "value": v} for J, v in vector.items()],
    }


def vector_json(vector: InvariantVector) -> str:
    return json.dumps(vector_payload(vector))


def vector_tsv(vector: InvariantVector) -> str:
    rows = ["seq\tvalue"]
    rows.extend(f"{J}\t{v}" for J, v in vector.items())
    return "\n".join(rows) + "\n"


def vector_text(vector: InvariantVector) -> str:
    rows = [f"colors: {vector.ambient}"]
    rows.extend(f"mu{J} = {v}" for J, v in vector.items())
    return "\n".join(rows) + "\n"


def canonical_text(link: ColoredStringLink) -> str:
    return serialize_link(LinkDocument(link.ambient, link.word))


def outcome_lines(outcome: DecisionOutcome, certificate: bool = False) -> List[str]:
    lines = [outcome.verdict.value]
    if not certificate:
        return lines
    if outcome.verdict is Verdict.EQUIVALENT:
        if outcome.witness:
            lines.append(f"witness ({len(outcome.witness)} moves):")
            lines.extend(f"  {move}" for move in outcome.witness)
        else:
            lines.append("witness: canonical forms agree")
    elif outcome.certificate is not None:
        lines.append(f"certificate: {outcome.certificate}")
    else:
        stats = outcome.stats
        lines.append(f"search stopped after {stats.nodes_expanded} of {stats.budget} nodes")
    return lines


def outcome_text(outcome: DecisionOutcome, certificate: bool = False) -> str:
    return "\n".join(outcome_lines(outcome, certificate)) + "\n"
