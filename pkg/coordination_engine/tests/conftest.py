import sys
from pathlib import Path

import pytest

# server/ is a plain directory next to the package
REPO_ROOT = Path(__file__).resolve().parents[2]
if str(REPO_ROOT) not in sys.path:
    sys.path.insert(0, str(REPO_ROOT))

from coordination_engine.core.library import alternating_coordinator, lossy_fifo
from coordination_engine.linda.syntax import END, Formal, TupleSpaceTerm, in_, out, rd
from coordination_engine.reo.primitives import reader
from coordination_engine.shell.spec import parse_spec

SPECS_DIR = REPO_ROOT / "specs"
DOMAIN = (0, 1)


@pytest.fixture(autouse=True)
def isolated_config(tmp_path, monkeypatch):
    """Keep every test away from the user's configuration directory."""
    monkeypatch.setenv("COORDINATION_CONFIG_DIR", str(tmp_path / "config"))
    monkeypatch.delenv("COORDINATION_LOG_LEVEL", raising=False)
    monkeypatch.delenv("COORDINATION_LOG_FILE", raising=False)
    return tmp_path / "config"


@pytest.fixture
def lf():
    return lossy_fifo(("a'", "a"), DOMAIN)


@pytest.fixture
def ac():
    return alternating_coordinator(("a", "b", "c"), DOMAIN)


@pytest.fixture
def reader_c():
    return reader(["c"], DOMAIN, name="R")


def load_spec(name):
    path = SPECS_DIR / f"{name}.json"
    return parse_spec(path.read_text(encoding="utf-8"), name=name)


@pytest.fixture
def router_spec():
    return load_spec("exclusive_router")


@pytest.fixture
def lossy_alternator_spec():
    return load_spec("lossy_alternator")


@pytest.fixture
def context_lossy_spec():
    return load_spec("context_lossy")


@pytest.fixture
def example5_term():
    """rd(42,X).end ⊕ out(42,43).end ⊕ in(42,X).end with an empty tuple space."""
    x = Formal("X")
    return TupleSpaceTerm((rd(42, x, cont=END), out(42, 43), in_(42, x, cont=END)))
