import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

import p5cert as pc


@pytest.fixture(scope="session")
def p5_graph():
    return pc.build_graph(5, [(1, 2), (2, 3), (3, 4), (4, 5)])


@pytest.fixture(scope="session")
def connected_graphs():
    """All connected labeled graphs keyed by n, for n = 1..6."""
    return {n: list(pc.enumerate_connected_graphs(n)) for n in range(1, 7)}


@pytest.fixture(scope="session")
def corpus_graphs():
    from p5cert.harness import p5free_corpus

    return [(spec, pc.generate(spec)) for spec in p5free_corpus()]
