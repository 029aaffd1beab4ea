from datetime import datetime, timedelta

from homotopy.decide import DecisionOutcome, Verdict
from homotopy.scheme import ComponentDecomposition
from homotopy.stringlink import ColoredStringLink

from scripts.decision_summary import main, summarize
from utils.db import db_session
from utils.decision_log import record_decision
from utils.models import DecisionRecord

UNLINK = ColoredStringLink.trivial(ComponentDecomposition((1, 1)))


def test_empty_summary():
    assert summarize() == "Decision summary (last 24h): 0 decisions\n"


def test_summary_counts_recent_decisions(capsys):
    for verdict in (Verdict.EQUIVALENT, Verdict.EQUIVALENT, Verdict.DISTINCT):
        assert record_decision("closure", UNLINK, UNLINK, DecisionOutcome(verdict), force=True) is not None
    record_decision("cl", UNLINK, UNLINK, DecisionOutcome(Verdict.UNKNOWN), force=True)
    with db_session() as s:
        old = s.query(DecisionRecord).filter(DecisionRecord.kind == "cl").one()
        old.created_at = datetime.utcnow() - timedelta(hours=48)
    assert summarize(24) == (
        "Decision summary (last 24h): 3 decisions\n" "closure\tdistinct\t1\n" "closure\tequivalent\t2\n"
    )
    main(["--hours", "72"])
    out = capsys.readouterr().out
    assert out.startswith("Decision summary (last 72h): 4 decisions\n")
    assert "cl\tunknown\t1\n" in out


def test_disabled_log_records_nothing():
    assert record_decision("cl", UNLINK, UNLINK, DecisionOutcome(Verdict.EQUIVALENT)) is None
