from pathlib import Path

from pydantic import ValidationError

from config.logging import get_logger
from ingestion.corpus_sources import read_utf8_lines
from processing.annotation.tokenizer import Lexicon, LexiconEntry
from processing.annotation.units import Morpheme
from processing.errors import FormatError

logger = get_logger("lexicon_source")


def load_lexicon(path: str | Path) -> Lexicon:
    """
    Read ``surface<TAB>category<TAB>inflection`` rows; ``-`` or empty marks a missing field.

    The first row for a surface wins. Later duplicates are logged and ignored.
    """
    path = Path(path)
    entries: dict[str, LexiconEntry] = {}
    duplicates = 0

    for line_no, line in enumerate(read_utf8_lines(path), start=1):
        if not line.strip() or line.startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) > 3:
            raise FormatError(f"expected at most 3 tab-separated fields, saw {len(fields)}", line=line_no)
        fields += [""] * (3 - len(fields))
        surface, category, inflection = (f.strip() for f in fields)
        if not surface:
            raise FormatError("empty surface form", line=line_no)

        try:
            m = Morpheme(surface=surface, category=category, inflection=inflection)
        except ValidationError as e:
            raise FormatError(e.errors()[0]["msg"], line=line_no) from e

        if surface in entries:
            duplicates += 1
            logger.warning(f"Duplicate lexicon entry {surface!r} at line {line_no}; keeping the first")
            continue
        entries[surface] = LexiconEntry(category=m.category, inflection=m.inflection)

    lexicon = Lexicon(entries=entries)
    logger.info(
        f"Loaded lexicon {path.name}: {len(lexicon)} entries, longest {lexicon.longest_entry}"
        + (f", {duplicates} duplicates ignored" if duplicates else "")
    )
    return lexicon
