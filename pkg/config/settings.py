from datetime import datetime
from pathlib import Path
from dataclasses import dataclass
import os
from dotenv import load_dotenv

# Load environment variables from .env if present
load_dotenv()


@dataclass
class AppConfig:
    # --- Core ---
    ENV: str = os.getenv("ENV", "dev")  # dev | prod
    DEBUG: bool = os.getenv("DEBUG", "false").lower() == "true"
    LOG_TO_FILE: bool = os.getenv("LOG_TO_FILE", "false").lower() == "true"

    # --- Paths ---
    BASE_DIR = Path(__file__).resolve().parent.parent
    DATA_DIR: Path = BASE_DIR / "data"
    CORPUS_DIR: Path = DATA_DIR / "corpus"
    LEXICON_DIR: Path = DATA_DIR / "lexicon"
    LABELER_DIR: Path = DATA_DIR / "labeler"
    LOG_DIR: Path = BASE_DIR / "logs"

    # --- Bundled Filenames ---
    FN_TOY_CORPUS: str = "toy_corpus.tsv"
    FN_TOY_LEXICON: str = "toy_lexicon.tsv"
    FN_FIXTURE_LEXICON: str = "fixture_lexicon.tsv"

    # --- Classification Defaults ---
    # Not read from the environment; CLI flags override them.
    DEFAULT_K: int = 5
    DEFAULT_CAP: int = 10
    MAX_CAP: int = 10
    DEFAULT_METHOD: str = "1"
    DEFAULT_SEED: int = 1
    DEFAULT_TEST_SIZE: int = 10

    # --- Index Snapshots ---
    INDEX_SNAPSHOT_VERSION: int = 1

    # --- Computed Path Properties ---
    @property
    def toy_corpus_path(self) -> Path: return self.CORPUS_DIR / self.FN_TOY_CORPUS

    @property
    def toy_lexicon_path(self) -> Path: return self.LEXICON_DIR / self.FN_TOY_LEXICON

    @property
    def fixture_lexicon_path(self) -> Path: return self.LEXICON_DIR / self.FN_FIXTURE_LEXICON

    @property
    def labeler_dir(self) -> Path: return self.LABELER_DIR

    @property
    def log_file(self) -> Path:
        return self.LOG_DIR / f"{self.ENV}_{datetime.now().strftime('%Y-%m-%d')}.log"


# Singleton instance
config = AppConfig()
