import uuid
from abc import ABC, abstractmethod
from pathlib import Path
from typing import Optional, Sequence

from pydantic import BaseModel, ConfigDict


class RawRecord(BaseModel):
    """One corpus record as read from disk, before labels are resolved."""

    model_config = ConfigDict(frozen=True)

    line: int
    japanese: str
    english: str = ""
    label: Optional[str] = None


class CorpusSource(ABC):
    """
    Abstract interface for all bilingual corpus formats.
    """

    #: File suffixes this source claims when the format is not given explicitly.
    suffixes: tuple[str, ...] = ()

    @abstractmethod
    def read(self, path: Path) -> list[RawRecord]:
        """Parse every record of ``path`` in file order."""
        pass

    @abstractmethod
    def render(self, records: Sequence[RawRecord]) -> str:
        """Serialize records into the file format."""
        pass

    def write(self, records: Sequence[RawRecord], path: Path) -> Path:
        """Write records using a temp file plus atomic rename."""
        return atomic_write_text(Path(path), self.render(records))


def atomic_write_text(path: Path, text: str) -> Path:
    """Write ``text`` to ``path`` through ``<name>.<uuid>.tmp`` and ``replace()``."""
    path.parent.mkdir(parents=True, exist_ok=True)
    unique_id = uuid.uuid4().hex[:4]
    tmp = path.with_name(f"{path.name}.{unique_id}.tmp")
    try:
        tmp.write_text(text, encoding="utf-8")
        tmp.replace(path)
    except Exception:
        if tmp.exists():
            try:
                tmp.unlink()
            except OSError:
                pass
        raise
    return path
