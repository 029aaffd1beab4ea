from __future__ import annotations

from datetime import datetime

from sqlalchemy import Column, DateTime, Integer, String, Text
from sqlalchemy.orm import declarative_base


Base = declarative_base()


class DecisionRecord(Base):
    __tablename__ = "decisions"

    id = Column(Integer, primary_key=True)
    kind = Column(String(16), index=True, nullable=False)  # cl|closure|gclosure
    colors = Column(String(128), nullable=False)  # e.g. "1 1 1"
    left_hash = Column(String(64), nullable=False)
    right_hash = Column(String(64), nullable=False)
    verdict = Column(String(16), index=True, nullable=False)  # equivalent|distinct|unknown
    witness_length = Column(Integer, default=0, nullable=False)
    witness = Column(Text, nullable=True)  # one move per line
    certificate = Column(Text, nullable=True)
    nodes_expanded = Column(Integer, default=0, nullable=False)
    budget = Column(Integer, default=0, nullable=False)
    created_at = Column(DateTime, default=datetime.utcnow, nullable=False)

    def as_dict(self) -> dict:
        return {
            "id": self.id,
            "kind": self.kind,
            "colors": self.colors,
            "left_hash": self.left_hash,
            "right_hash": self.right_hash,
            "verdict": self.verdict,
            "witness_length": self.witness_length,
            "witness": self.witness,
            "certificate": self.certificate,
            "nodes_expanded": self.nodes_expanded,
            "budget": self.budget,
            "created_at": self.created_at.isoformat() if self.created_at else None,
        }
