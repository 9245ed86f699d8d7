from __future__ import annotations

from pathlib import Path

import pytest
import yaml

from eofragile.pipeline import resolve_sources

ROOT = Path(__file__).resolve().parent.parent
DATA = Path(__file__).resolve().parent / "data"
CORPUS = ROOT / "corpus"


def data(name: str) -> str:
    return (DATA / name).read_text(encoding="utf-8")


def resolved(name: str, package: str = ""):
    """Resolved tree of a file under tests/data, analysed in ``package``."""
    return resolve_sources([(data(name), name)], package)


def corpus_files():
    return sorted((CORPUS / "inheritance").glob("*.yml"))


def corpus_programs():
    """(label, file name, source) for every program of the corpus."""
    out = []
    for path in corpus_files():
        doc = yaml.safe_load(path.read_text(encoding="utf-8"))
        for kind in ("bad", "good"):
            for name, text in doc[kind].items():
                out.append((f"{path.stem}/{kind}/{name}", name, text))
    return out


@pytest.fixture
def tmp_eo(tmp_path):
    def write(text, name="input.eo"):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return path
    return write
