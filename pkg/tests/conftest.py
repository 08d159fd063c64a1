from pathlib import Path

import pytest

from namelens.classifier import Hyperparameters, split, train
from namelens.corpus import load_labeled_names, load_publications

TESTS_DIR = Path(__file__).resolve().parent
REPO_DIR = TESTS_DIR.parent
FIXTURES_DIR = REPO_DIR / "fixtures"


@pytest.fixture(scope="session")
def phonetic_words() -> list[str]:
    text = (TESTS_DIR / "data" / "phonetic_words.txt").read_text(encoding="utf-8")
    return [w.strip() for w in text.splitlines() if w.strip()]


@pytest.fixture(scope="session")
def labeled_names_path() -> Path:
    return FIXTURES_DIR / "labeled_names_toy.tsv"


@pytest.fixture(scope="session")
def publications_path() -> Path:
    return FIXTURES_DIR / "publications_toy.jsonl"


@pytest.fixture(scope="session")
def toy_corpus(labeled_names_path):
    names, rejects = load_labeled_names(labeled_names_path)
    assert not rejects
    return names


@pytest.fixture(scope="session")
def toy_model(toy_corpus):
    """Model trained on the 70% split of the bundled corpus (seed 0)."""
    train_part, _ = split(toy_corpus, 0.7, seed=0)
    return train(train_part, Hyperparameters(), seed=0)


@pytest.fixture(scope="session")
def toy_publications(publications_path):
    records, rejects = load_publications(publications_path)
    assert not rejects
    return records


@pytest.fixture(scope="session")
def toy_model_file(toy_model, tmp_path_factory) -> Path:
    from namelens.classifier import save_model

    path = tmp_path_factory.mktemp("model") / "model.json"
    save_model(toy_model, path)
    return path
