import pytest

from enhi_translit.cli import load_seed_kb, sample_corpus_path


@pytest.fixture(scope="session")
def seed_kb():
    return load_seed_kb()


@pytest.fixture(scope="session")
def sample_lines():
    return sample_corpus_path().read_text(encoding="utf-8").splitlines()
