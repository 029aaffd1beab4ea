#!/usr/bin/env python3
import argparse
from collections import Counter
from datetime import datetime, timedelta
from typing import Optional, Sequence

from dotenv import load_dotenv

from utils.db import db_session, init_db
from utils.models import DecisionRecord


def summarize(hours: int = 24) -> str:
    since = datetime.utcnow() - timedelta(hours=hours)
    init_db()
    with db_session() as s:
        rows = s.query(DecisionRecord.kind, DecisionRecord.verdict).filter(DecisionRecord.created_at >= since).all()
    counts = Counter((kind, verdict) for kind, verdict in rows)
    lines = [f"Decision summary (last {hours}h): {len(rows)} decisions"]
    for (kind, verdict), n in sorted(counts.items()):
        lines.append(f"{kind}\t{verdict}\t{n}")
    return "\n".join(lines) + "\n"


def main(argv: Optional[Sequence[str]] = None) -> None:
    load_dotenv()
    parser = argparse.ArgumentParser(description="Summarize recorded equivalence decisions")
    parser.add_argument("--hours", type=int, default=24)
    args = parser.parse_args(argv)
    print(summarize(args.hours), end="")


if __name__ == "__main__":
    main()
