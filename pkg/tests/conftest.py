from pathlib import Path

import pytest

from citenv import ingest
from oracles import TOY4_EDGES

DATA_DIR = Path(__file__).parent / "data"
GOLDEN_NET = DATA_DIR / "scientometrics_2004_cited.net"


@pytest.fixture(scope="session")
def toy4():
    return ingest(TOY4_EDGES)


@pytest.fixture()
def toy4_files(tmp_path):
    """TOY4 written as a tab-separated edge file (with header) plus totals."""
    edges = tmp_path / "edges.tsv"
    lines = ["citing\tcited\tcount"]
    lines += [f"{a}\t{b}\t{c}" for a, b, c in TOY4_EDGES]
    edges.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return edges


@pytest.fixture(scope="session")
def golden_net_text():
    return GOLDEN_NET.read_text(encoding="utf-8")
