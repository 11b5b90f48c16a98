"""TSV and JSONL readers/writers for the bilingual example corpus."""
import json
from pathlib import Path
from typing import Sequence

from config.logging import get_logger
from ingestion.interfaces import CorpusSource, RawRecord
from processing.errors import FormatError

logger = get_logger("corpus_sources")

TSV_COLUMNS = ("japanese", "english", "label")


def read_utf8_lines(path: Path) -> list[str]:
    if not path.exists():
        raise FileNotFoundError(f"File not found: {path}")
    try:
        text = path.read_text(encoding="utf-8")
    except UnicodeDecodeError as e:
        raise FormatError(f"{path.name} is not valid UTF-8 ({e.reason})") from e
    # only \n ends a record; U+2028 and friends are legal inside a field
    lines = [line.removesuffix("\r") for line in text.split("\n")]
    if lines and lines[-1] == "":
        lines.pop()
    return lines


class TsvCorpusSource(CorpusSource):
    """``japanese<TAB>english<TAB>label`` per line; ``#`` starts a comment line."""

    suffixes = (".tsv", ".txt")

    def read(self, path: Path) -> list[RawRecord]:
        records: list[RawRecord] = []
        for line_no, line in enumerate(read_utf8_lines(Path(path)), start=1):
            if not line.strip() or line.startswith("#"):
                continue
            fields = line.split("\t")
            if len(fields) > len(TSV_COLUMNS):
                raise FormatError(
                    f"expected at most {len(TSV_COLUMNS)} tab-separated fields, saw {len(fields)}",
                    line=line_no,
                )
            fields += [""] * (len(TSV_COLUMNS) - len(fields))
            japanese, english, label = (f.strip() for f in fields)
            records.append(
                RawRecord(line=line_no, japanese=japanese, english=english, label=label or None)
            )
        logger.debug(f"Read {len(records)} TSV records from {Path(path).name}")
        return records

    def render(self, records: Sequence[RawRecord]) -> str:
        rows = []
        for r in records:
            for value in (r.japanese, r.english, r.label or ""):
                if "\t" in value or "\n" in value:
                    raise FormatError("TSV fields cannot contain tabs or newlines", line=r.line)
            if r.japanese.startswith("#"):
                raise FormatError(
                    "a Japanese field starting with '#' would read back as a comment",
                    line=r.line,
                )
            rows.append("\t".join((r.japanese, r.english, r.label or "")))
        return "".join(row + "\n" for row in rows)


def _string_field(rec: dict, key: str, line_no: int, required: bool = False) -> str | None:
    value = rec.get(key)
    if value is None and not required:
        return None
    if not isinstance(value, str):
        raise FormatError(f"field '{key}' must be a string", line=line_no)
    return value.strip()


class JsonlCorpusSource(CorpusSource):
    """One JSON object per line with ``japanese``/``english``/``label`` keys."""

    suffixes = (".jsonl", ".json")

    def read(self, path: Path) -> list[RawRecord]:
        records: list[RawRecord] = []
        for line_no, line in enumerate(read_utf8_lines(Path(path)), start=1):
            if not line.strip():
                continue
            try:
                rec = json.loads(line)
            except json.JSONDecodeError as e:
                raise FormatError(f"invalid JSON ({e.msg})", line=line_no) from e

            if not isinstance(rec, dict):
                raise FormatError("record must be a JSON object", line=line_no)
            if "japanese" not in rec:
                raise FormatError("missing required field 'japanese'", line=line_no)

            japanese = _string_field(rec, "japanese", line_no, required=True) or ""
            english = _string_field(rec, "english", line_no) or ""
            label = _string_field(rec, "label", line_no)
            records.append(
                RawRecord(line=line_no, japanese=japanese, english=english, label=label or None)
            )
        logger.debug(f"Read {len(records)} JSONL records from {Path(path).name}")
        return records

    def render(self, records: Sequence[RawRecord]) -> str:
        return "".join(
            json.dumps(
                {"japanese": r.japanese, "english": r.english, "label": r.label},
                ensure_ascii=False,
            )
            + "\n"
            for r in records
        )


SOURCES: dict[str, CorpusSource] = {
    "tsv": TsvCorpusSource(),
    "jsonl": JsonlCorpusSource(),
}


def source_for(path: Path, fmt: str | None = None) -> CorpusSource:
    """Pick a source by explicit format name, else by file suffix (TSV by default)."""
    if fmt:
        key = fmt.lower()
        if key not in SOURCES:
            raise ValueError(f"Unknown corpus format {fmt!r}; expected one of {sorted(SOURCES)}")
        return SOURCES[key]
    suffix = Path(path).suffix.lower()
    for source in SOURCES.values():
        if suffix in source.suffixes:
            return source
    return SOURCES["tsv"]


def format_name(source: CorpusSource) -> str:
    return next(name for name, s in SOURCES.items() if s is source)
