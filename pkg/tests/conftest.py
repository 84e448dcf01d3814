"""Fixtures: the shipped three-node demo network and its building blocks."""

from pathlib import Path

import pytest

from strucnet import PatternMatrix, load_network

REPO_ROOT = Path(__file__).resolve().parents[1]
FIXTURES = REPO_ROOT / "fixtures"

NETWORK_FILE = FIXTURES / "three_node_network.json"
NO_INPUT_NETWORK_FILE = FIXTURES / "three_node_network_no_input.json"
INTERCONNECTION_FILE = FIXTURES / "interconnection_pattern.json"

# The demo network's blocks, kept here as an independent transcription so a
# test can cross-check the shipped JSON files against them.
A1 = PatternMatrix.from_text("""
    * 0 0 0
    0 ? 0 0
    ? * * 0
    * 0 0 ?
""")
A2 = PatternMatrix.from_text("""
    ? 0 * 0
    0 * 0 *
    0 * * 0
    * 0 0 ?
""")
A3 = PatternMatrix.from_text("""
    * 0 0 0
    0 0 * 0
    0 0 ? *
    * 0 * *
""")
B_NODE = PatternMatrix.from_text("""
    * 0
    0 *
    0 0
    0 0
""")
C_NODE = PatternMatrix.from_text("""
    0 0 * 0
    0 0 0 *
""")
W_PATTERN = PatternMatrix.from_text("""
    0 0 0 0 0 0
    0 0 0 0 0 0
    * 0 0 0 0 0
    ? * 0 0 0 0
    0 0 * 0 0 0
    0 0 0 ? 0 0
""")
H_PATTERN = PatternMatrix.from_text("""
    * 0
    0 *
    0 0
    0 0
    0 0
    0 0
""")


@pytest.fixture(scope="session")
def demo_network():
    return load_network(NETWORK_FILE)


@pytest.fixture(scope="session")
def no_input_network():
    return load_network(NO_INPUT_NETWORK_FILE)
