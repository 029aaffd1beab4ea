from __future__ import annotations

from contextlib import contextmanager
from typing import Iterator, Optional

from sqlalchemy import create_engine
from sqlalchemy.engine import Engine
from sqlalchemy.orm import Session, sessionmaker
from sqlalchemy.pool import StaticPool

from utils.config import get_settings

engine: Optional[Engine] = None
SessionLocal = sessionmaker(autoflush=False, future=True)


def _make_engine(url: str) -> Engine:
    if url == "sqlite://" or (url.startswith("sqlite") and ":memory:" in url):
        # One shared connection, otherwise every session sees an empty database
        return create_engine(
            url, connect_args={"check_same_thread": False}, poolclass=StaticPool, future=True
        )
    return create_engine(url, pool_pre_ping=True, future=True)


def get_engine() -> Engine:
    global engine
    if engine is None:
        engine = _make_engine(get_settings().database_url)
        SessionLocal.configure(bind=engine)
    return engine


def reset_engine(url: Optional[str] = None) -> None:
    """Drop the current engine; the next use binds to ``url`` or the configured URL."""
    global engine
    if engine is not None:
        engine.dispose()
    engine = None
    if url is not None:
        engine = _make_engine(url)
        SessionLocal.configure(bind=engine)


@contextmanager
def db_session() -> Iterator[Session]:
    get_engine()
    session: Session = SessionLocal()
    try:
        yield session
        session.commit()
    except Exception:
        session.rollback()
        raise
    finally:
        session.close()


def init_db() -> None:
    from utils.models import Base  # noqa: WPS433

    Base.metadata.create_all(bind=get_engine())
