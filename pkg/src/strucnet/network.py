"""Structured networks of MIMO node systems and their controllability tests.

A structured network couples N node systems, each given by square state,
input, and output patterns, through an interconnection pattern W (node
outputs to node inputs) and an input pattern H (external inputs to node
inputs). The compact dynamics have state pattern A + B W C and input
pattern B H, where A, B, C are the block diagonals of the node patterns.

Every node input must drive exactly one state and every node output read
exactly one state (one '*' per column of each B block and per row of each
C block, no '?'). Under that restriction the symbolic products used here
are class-exact, so colorability of the two assembled patterns decides
strong structural controllability of the whole family. Two cheaper
necessary conditions are also provided: every node system must itself be
controllable, and the per-block topology summary of (W, H) must be weakly
colorable.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .errors import AssumptionViolated, DimensionMismatch, NetworkFormatError, PatternParseError
from .graph import ColoringResult, build_graph, color_change, weak_color_change
from .pattern import (
    ANY,
    STAR,
    ZERO,
    PatternMatrix,
    block_diag,
    hstack,
    pat_add,
    pat_identity,
    pat_mul,
)


@dataclass(frozen=True)
class NodeSystem:
    """One node: state pattern A, input pattern B, output pattern C."""

    A: PatternMatrix
    B: PatternMatrix
    C: PatternMatrix
    index: int

    @property
    def num_states(self) -> int:
        return self.A.rows

    @property
    def num_inputs(self) -> int:
        return self.B.cols

    @property
    def num_outputs(self) -> int:
        return self.C.rows


@dataclass(frozen=True)
class StructuredNetwork:
    """N node systems plus interconnection patterns W (r x p) and H (r x m)."""

    nodes: tuple[NodeSystem, ...]
    W: PatternMatrix
    H: PatternMatrix

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(self.nodes))

    @property
    def num_nodes(self) -> int:
        return len(self.nodes)

    @property
    def total_states(self) -> int:
        return sum(node.num_states for node in self.nodes)

    @property
    def total_inputs(self) -> int:
        return sum(node.num_inputs for node in self.nodes)

    @property
    def total_outputs(self) -> int:
        return sum(node.num_outputs for node in self.nodes)

    @property
    def num_external_inputs(self) -> int:
        return self.H.cols

    def _input_offsets(self) -> list[int]:
        offsets = [0]
        for node in self.nodes:
            offsets.append(offsets[-1] + node.num_inputs)
        return offsets

    def _output_offsets(self) -> list[int]:
        offsets = [0]
        for node in self.nodes:
            offsets.append(offsets[-1] + node.num_outputs)
        return offsets

    def interconnection_block(self, i: int, j: int) -> PatternMatrix:
        """Block W^(ij): rows of node i's inputs, columns of node j's outputs (1-based)."""
        rows = self._input_offsets()
        cols = self._output_offsets()
        return self.W.submatrix(rows[i - 1], rows[i], cols[j - 1], cols[j])

    def input_block(self, i: int, j: int) -> PatternMatrix:
        """Block H^(ij): rows of node i's inputs, the single column of input j."""
        rows = self._input_offsets()
        return self.H.submatrix(rows[i - 1], rows[i], j - 1, j)


@dataclass(frozen=True)
class Violation:
    """One validation failure, naming the node, matrix, and position."""

    node: int | None
    matrix: str
    message: str

    def __str__(self) -> str:
        prefix = f"node {self.node}, matrix {self.matrix}" if self.node else f"matrix {self.matrix}"
        return f"{prefix}: {self.message}"


@dataclass(frozen=True)
class SystemCheck:
    """Verdict of the two-pattern rank test, with coloring certificates.

    plain certifies the unshifted pattern [A B]; shifted certifies
    [A+I B]. Controllable means both graphs are colorable.
    """

    controllable: bool
    plain: ColoringResult
    shifted: ColoringResult


def _check_single_star_columns(m: PatternMatrix, node: int, name: str) -> list[Violation]:
    violations = []
    for j in range(m.cols):
        col = m.column(j)
        anys = [i for i, s in enumerate(col) if s is ANY]
        for i in anys:
            violations.append(
                Violation(node, name, f"'?' entry at row {i + 1}, column {j + 1} is not allowed")
            )
        stars = sum(1 for s in col if s is STAR)
        if stars != 1:
            violations.append(
                Violation(node, name, f"column {j + 1} has {stars} '*' entries, expected exactly one")
            )
    return violations


def _check_single_star_rows(m: PatternMatrix, node: int, name: str) -> list[Violation]:
    violations = []
    for i in range(m.rows):
        row = m.row(i)
        anys = [j for j, s in enumerate(row) if s is ANY]
        for j in anys:
            violations.append(
                Violation(node, name, f"'?' entry at row {i + 1}, column {j + 1} is not allowed")
            )
        stars = sum(1 for s in row if s is STAR)
        if stars != 1:
            violations.append(
                Violation(node, name, f"row {i + 1} has {stars} '*' entries, expected exactly one")
            )
    return violations


def validate(network: StructuredNetwork) -> list[Violation]:
    """Check dimensions and the one-star input/output restriction.

    Returns an empty list when the network is well formed: each node has a
    square A with matching B and C, each B column and C row selects
    exactly one state with a single '*', and W, H agree with the block
    sizes the nodes induce.
    """
    violations: list[Violation] = []
    for node in network.nodes:
        k = node.index
        n = node.A.rows
        if node.A.rows != node.A.cols:
            violations.append(Violation(k, "A", f"must be square, got {node.A.shape}"))
        if node.B.rows != n:
            violations.append(
                Violation(k, "B", f"has {node.B.rows} rows, expected {n} to match A")
            )
        if node.C.cols != n:
            violations.append(
                Violation(k, "C", f"has {node.C.cols} columns, expected {n} to match A")
            )
        violations.extend(_check_single_star_columns(node.B, k, "B"))
        violations.extend(_check_single_star_rows(node.C, k, "C"))

    r = network.total_inputs
    p = network.total_outputs
    if network.W.shape != (r, p):
        violations.append(
            Violation(None, "W", f"has shape {network.W.shape}, expected ({r}, {p}) from node blocks")
        )
    if network.H.rows != r:
        violations.append(
            Violation(None, "H", f"has {network.H.rows} rows, expected {r} from node blocks")
        )
    return violations


def assemble(network: StructuredNetwork) -> tuple[PatternMatrix, PatternMatrix]:
    """Build the two network-level patterns [A+BWC BH] and [A+I+BWC BH].

    The product is associated as B (W C); each step meets a single-star
    condition (C has one '*' per row, B one per column), so the pattern
    products are class-exact and either association gives the same grid.
    """
    violations = validate(network)
    if violations:
        raise AssumptionViolated(violations)
    a_blk = block_diag([node.A for node in network.nodes])
    b_blk = block_diag([node.B for node in network.nodes])
    c_blk = block_diag([node.C for node in network.nodes])
    coupling = pat_mul(b_blk, pat_mul(network.W, c_blk))
    input_pattern = pat_mul(b_blk, network.H)
    plain = hstack(pat_add(a_blk, coupling), input_pattern)
    shifted = hstack(
        pat_add(pat_add(a_blk, pat_identity(a_blk.rows)), coupling), input_pattern
    )
    return plain, shifted


def check_structured_system(a: PatternMatrix, b: PatternMatrix) -> SystemCheck:
    """Decide strong structural controllability of the pair (a, b).

    The pair is controllable for every realization iff both [a b] and
    [a+I b] have full row rank, i.e. both graphs are colorable.
    """
    if a.rows != a.cols:
        raise DimensionMismatch(f"state pattern must be square, got {a.shape}")
    if b.rows != a.rows:
        raise DimensionMismatch(
            f"input pattern has {b.rows} rows, expected {a.rows} to match the state pattern"
        )
    plain = color_change(build_graph(hstack(a, b)))
    shifted = color_change(build_graph(hstack(pat_add(a, pat_identity(a.rows)), b)))
    return SystemCheck(plain.colorable and shifted.colorable, plain, shifted)


def is_network_controllable(network: StructuredNetwork) -> SystemCheck:
    """Decide strong structural controllability of the whole network."""
    plain_pattern, shifted_pattern = assemble(network)
    plain = color_change(build_graph(plain_pattern))
    shifted = color_change(build_graph(shifted_pattern))
    return SystemCheck(plain.colorable and shifted.colorable, plain, shifted)


def node_necessary_check(network: StructuredNetwork) -> list[tuple[int, SystemCheck]]:
    """Run the per-node controllability test; any failure rules the network out.

    A controllable network needs every node system (A_k, B_k) to be
    controllable on its own, so this is a cheap necessary screen.
    """
    violations = validate(network)
    if violations:
        raise AssumptionViolated(violations)
    return [(node.index, check_structured_system(node.A, node.B)) for node in network.nodes]


def _summarize_block(block: PatternMatrix):
    has_star = any(entry is STAR for row in block.entries for entry in row)
    has_any = any(entry is ANY for row in block.entries for entry in row)
    if has_star:
        return STAR
    if has_any:
        return ANY
    return ZERO


def extract_topology(network: StructuredNetwork) -> tuple[PatternMatrix, PatternMatrix]:
    """Summarize (W, H) block-by-block into N x N and N x m patterns.

    A block that contains a '*' maps to '*', an all-zero block to '0', and
    a block whose only nonzero entries are '?' maps to '?'.
    """
    violations = validate(network)
    if violations:
        raise AssumptionViolated(violations)
    n = network.num_nodes
    m = network.num_external_inputs
    w_rows = tuple(
        tuple(_summarize_block(network.interconnection_block(i, j)) for j in range(1, n + 1))
        for i in range(1, n + 1)
    )
    h_rows = tuple(
        tuple(_summarize_block(network.input_block(i, j)) for j in range(1, m + 1))
        for i in range(1, n + 1)
    )
    return PatternMatrix(w_rows), PatternMatrix(h_rows)


def topology_necessary_check(network: StructuredNetwork) -> tuple[bool, ColoringResult]:
    """Weak colorability of the summarized topology [W~ H~].

    A controllable network must have every node reachable from the
    external-input vertices along star edges of the summary graph, so a
    negative answer here certifies the network is not controllable.
    """
    w_tilde, h_tilde = extract_topology(network)
    result = weak_color_change(build_graph(hstack(w_tilde, h_tilde)))
    return result.colorable, result


@dataclass
class AnalysisReport:
    """Everything the full pipeline produces for one network."""

    violations: list[Violation]
    assembled: tuple[PatternMatrix, PatternMatrix] | None = None
    network_check: SystemCheck | None = None
    node_checks: list[tuple[int, SystemCheck]] | None = None
    topology: tuple[PatternMatrix, PatternMatrix] | None = None
    topology_colorable: bool | None = None
    topology_coloring: ColoringResult | None = None

    @property
    def valid(self) -> bool:
        return not self.violations

    @property
    def controllable(self) -> bool | None:
        return self.network_check.controllable if self.network_check else None

    def to_dict(self) -> dict:
        out: dict = {
            "valid": self.valid,
            "violations": [str(v) for v in self.violations],
            "controllable": self.controllable,
        }
        if self.assembled is not None:
            out["patterns"] = {
                "assembled": self.assembled[0].to_tokens(),
                "assembled_shifted": self.assembled[1].to_tokens(),
            }
        if self.network_check is not None:
            states = self.assembled[0].rows  # only row vertices can be forced
            out["checks"] = {
                "assembled": _coloring_dict(self.network_check.plain, states),
                "assembled_shifted": _coloring_dict(self.network_check.shifted, states),
            }
        if self.node_checks is not None:
            out["node_checks"] = [
                {"node": k, "controllable": check.controllable} for k, check in self.node_checks
            ]
        if self.topology is not None:
            w_tilde, h_tilde = self.topology
            out["topology"] = {
                "W": w_tilde.to_tokens(),
                "H": h_tilde.to_tokens(),
                "weakly_colorable": self.topology_colorable,
                **_coloring_dict(self.topology_coloring, w_tilde.cols + h_tilde.cols),
            }
        return out

    def to_text(self) -> str:
        lines = []
        if not self.valid:
            lines.append("network is invalid:")
            lines.extend(f"  - {v}" for v in self.violations)
            return "\n".join(lines) + "\n"
        assert self.network_check and self.node_checks and self.topology_coloring
        states = self.assembled[0].rows
        lines.append(f"controllable: {'yes' if self.controllable else 'no'}")
        lines.append("  " + _coloring_text("[A+BWC BH]", self.network_check.plain, states))
        lines.append("  " + _coloring_text("[A+I+BWC BH]", self.network_check.shifted, states))
        node_bits = ", ".join(
            f"{k}: {'ok' if check.controllable else 'FAIL'}" for k, check in self.node_checks
        )
        lines.append(f"node systems: {node_bits}")
        if self.topology_colorable:
            lines.append("topology [W~ H~]: weakly colorable")
        else:
            topo_q = self.topology[0].cols + self.topology[1].cols
            missing = sorted(self.topology_coloring.uncolored(topo_q))
            lines.append(f"topology [W~ H~]: not weakly colorable, unreached vertices {missing}")
        return "\n".join(lines) + "\n"


def _coloring_dict(coloring: ColoringResult, num_vertices: int) -> dict:
    return {
        "colorable": coloring.colorable,
        "derived_set": sorted(coloring.derived_set),
        "forcing_sequence": [list(step) for step in coloring.forcing_sequence],
        "uncolored": sorted(coloring.uncolored(num_vertices)),
    }


def _coloring_text(label: str, coloring: ColoringResult, num_vertices: int) -> str:
    if coloring.colorable:
        return f"{label}: colorable"
    missing = sorted(coloring.uncolored(num_vertices))
    return f"{label}: not colorable, uncolored vertices {missing}"


def analyze(network: StructuredNetwork) -> AnalysisReport:
    """Run validation, the necessary screens, and the full test.

    An invalid network yields a report that carries only the violations.
    """
    violations = validate(network)
    if violations:
        return AnalysisReport(violations=violations)
    report = AnalysisReport(violations=[])
    report.assembled = assemble(network)
    plain = color_change(build_graph(report.assembled[0]))
    shifted = color_change(build_graph(report.assembled[1]))
    report.network_check = SystemCheck(plain.colorable and shifted.colorable, plain, shifted)
    report.node_checks = node_necessary_check(network)
    report.topology = extract_topology(network)
    report.topology_colorable, report.topology_coloring = topology_necessary_check(network)
    return report


def network_from_dict(obj: dict) -> StructuredNetwork:
    """Build a network from the JSON object layout.

    Expected shape: {"nodes": [{"A": grid, "B": grid, "C": grid}, ...],
    "W": grid, "H": grid} with grids of "0"/"*"/"?" tokens. Shape
    consistency beyond parseability is left to validate().
    """
    if not isinstance(obj, dict):
        raise NetworkFormatError(f"expected a JSON object, got {type(obj).__name__}")
    if "nodes" not in obj:
        raise NetworkFormatError("missing required key 'nodes'")
    if not isinstance(obj["nodes"], list) or not obj["nodes"]:
        raise NetworkFormatError("'nodes' must be a non-empty list")
    nodes = []
    for k, entry in enumerate(obj["nodes"], start=1):
        if not isinstance(entry, dict):
            raise NetworkFormatError(f"nodes[{k - 1}] must be an object")
        matrices = {}
        for name in ("A", "B", "C"):
            if name not in entry:
                raise NetworkFormatError(f"nodes[{k - 1}] is missing matrix '{name}'")
            try:
                matrices[name] = PatternMatrix.from_tokens(entry[name])
            except (PatternParseError, DimensionMismatch) as exc:
                raise NetworkFormatError(f"nodes[{k - 1}].{name}: {exc}") from None
        nodes.append(NodeSystem(matrices["A"], matrices["B"], matrices["C"], index=k))
    matrices = {}
    for name in ("W", "H"):
        if name not in obj:
            raise NetworkFormatError(f"missing required key '{name}'")
        try:
            matrices[name] = PatternMatrix.from_tokens(obj[name])
        except (PatternParseError, DimensionMismatch) as exc:
            raise NetworkFormatError(f"{name}: {exc}") from None
    return StructuredNetwork(tuple(nodes), matrices["W"], matrices["H"])


def network_to_dict(network: StructuredNetwork) -> dict:
    return {
        "nodes": [
            {"A": node.A.to_tokens(), "B": node.B.to_tokens(), "C": node.C.to_tokens()}
            for node in network.nodes
        ],
        "W": network.W.to_tokens(),
        "H": network.H.to_tokens(),
    }


def load_network(path) -> StructuredNetwork:
    """Read a structured network from a JSON file."""
    text = Path(path).read_text()
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise NetworkFormatError(f"{path}: not valid JSON: {exc}") from None
    return network_from_dict(obj)
