import pathlib

import pytest

from packetlift import corpus
from packetlift.fileformat import parse_parameter_file

FIXTURES = pathlib.Path(__file__).parent / "fixtures"
GOLDEN = pathlib.Path(__file__).parent / "golden"


@pytest.fixture(scope="session")
def corpus_path() -> pathlib.Path:
    return FIXTURES / "corpus.json"

@pytest.fixture(scope="session")
def parsed_corpus(corpus_path):
    return parse_parameter_file(corpus_path.read_text())


@pytest.fixture(scope="session")
def classical_by_name():
    return {c.name: c for c in corpus.classical_cases()}
