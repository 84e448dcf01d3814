"""Pattern matrices over the symbol set {0, *, ?} and their algebra.

A pattern matrix fixes, for every entry, whether the corresponding real
entry is exactly zero ("0"), surely nonzero ("*"), or unconstrained ("?").
The set of real matrices consistent with a pattern is its pattern class.
Sums and products of pattern matrices are computed entrywise from the
three-symbol addition and multiplication tables so that the result is a
sound over-approximation of the sums/products of the underlying classes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionMismatch, PatternParseError


class PatternSymbol(Enum):
    """One pattern entry: exactly zero, surely nonzero, or arbitrary."""

    ZERO = "0"
    STAR = "*"
    ANY = "?"

    @classmethod
    def from_token(cls, token: str) -> "PatternSymbol":
        try:
            return cls(token)
        except ValueError:
            raise PatternParseError(
                f"invalid pattern token {token!r}, expected one of '0', '*', '?'"
            ) from None

    @property
    def token(self) -> str:
        return self.value

    def __repr__(self) -> str:  # keeps printed grids readable in test output
        return f"<{self.value}>"


ZERO = PatternSymbol.ZERO
STAR = PatternSymbol.STAR
ANY = PatternSymbol.ANY

#: All three symbols, in a fixed order used by exhaustive sweeps.
SYMBOLS = (ZERO, STAR, ANY)

# The symbol arithmetic. Adding two entries that may both be nonzero gives
# '?' because cancellation cannot be ruled out; a product is zero as soon
# as one factor is zero and is only surely nonzero when both factors are.
_ADD = {
    (ZERO, ZERO): ZERO, (ZERO, STAR): STAR, (ZERO, ANY): ANY,
    (STAR, ZERO): STAR, (STAR, STAR): ANY, (STAR, ANY): ANY,
    (ANY, ZERO): ANY, (ANY, STAR): ANY, (ANY, ANY): ANY,
}
_MUL = {
    (ZERO, ZERO): ZERO, (ZERO, STAR): ZERO, (ZERO, ANY): ZERO,
    (STAR, ZERO): ZERO, (STAR, STAR): STAR, (STAR, ANY): ANY,
    (ANY, ZERO): ZERO, (ANY, STAR): ANY, (ANY, ANY): ANY,
}


def sym_add(a: PatternSymbol, b: PatternSymbol) -> PatternSymbol:
    """Add two pattern symbols."""
    return _ADD[(a, b)]


def sym_mul(a: PatternSymbol, b: PatternSymbol) -> PatternSymbol:
    """Multiply two pattern symbols."""
    return _MUL[(a, b)]


@dataclass(frozen=True)
class PatternMatrix:
    """Dense, immutable grid of pattern symbols."""

    entries: tuple[tuple[PatternSymbol, ...], ...]

    def __post_init__(self):
        grid = tuple(tuple(row) for row in self.entries)
        if not grid or not grid[0]:
            raise DimensionMismatch("a pattern matrix needs at least one row and one column")
        width = len(grid[0])
        for i, row in enumerate(grid):
            if len(row) != width:
                raise DimensionMismatch(
                    f"row {i + 1} has {len(row)} entries, expected {width}"
                )
            for j, entry in enumerate(row):
                if not isinstance(entry, PatternSymbol):
                    raise PatternParseError(
                        f"row {i + 1}, column {j + 1}: {entry!r} is not a pattern symbol"
                    )
        object.__setattr__(self, "entries", grid)

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @classmethod
    def from_tokens(cls, grid: Sequence[Sequence[str]]) -> "PatternMatrix":
        """Build from a grid of "0"/"*"/"?" tokens, as read from JSON.

        Rejects any other token with an error naming the 1-based position.
        """
        if not isinstance(grid, (list, tuple)):
            raise PatternParseError(f"expected a list of rows, got {type(grid).__name__}")
        rows = []
        for i, raw_row in enumerate(grid):
            if not isinstance(raw_row, (list, tuple)):
                raise PatternParseError(f"row {i + 1}: expected a list of tokens")
            row = []
            for j, token in enumerate(raw_row):
                try:
                    row.append(PatternSymbol.from_token(token))
                except PatternParseError as exc:
                    raise PatternParseError(f"row {i + 1}, column {j + 1}: {exc}") from None
            rows.append(tuple(row))
        return cls(tuple(rows))

    @classmethod
    def from_text(cls, text: str) -> "PatternMatrix":
        """Build from whitespace-separated tokens, one matrix row per line."""
        grid = [line.split() for line in text.strip().splitlines() if line.strip()]
        return cls.from_tokens(grid)

    @classmethod
    def filled(cls, rows: int, cols: int, symbol: PatternSymbol) -> "PatternMatrix":
        return cls(tuple(tuple(symbol for _ in range(cols)) for _ in range(rows)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "PatternMatrix":
        return cls.filled(rows, cols, ZERO)

    def to_tokens(self) -> list[list[str]]:
        return [[entry.token for entry in row] for row in self.entries]

    def to_json(self) -> str:
        return json.dumps(self.to_tokens())

    def __getitem__(self, key: tuple[int, int]) -> PatternSymbol:
        i, j = key
        return self.entries[i][j]

    def row(self, i: int) -> tuple[PatternSymbol, ...]:
        return self.entries[i]

    def column(self, j: int) -> tuple[PatternSymbol, ...]:
        return tuple(row[j] for row in self.entries)

    def submatrix(self, row_start: int, row_stop: int, col_start: int, col_stop: int) -> "PatternMatrix":
        return PatternMatrix(
            tuple(row[col_start:col_stop] for row in self.entries[row_start:row_stop])
        )

    def with_entry(self, i: int, j: int, symbol: PatternSymbol) -> "PatternMatrix":
        """Copy with entry (i, j) replaced."""
        rows = [list(row) for row in self.entries]
        rows[i][j] = symbol
        return PatternMatrix(tuple(tuple(row) for row in rows))

    def count(self, symbol: PatternSymbol) -> int:
        return sum(row.count(symbol) for row in self.entries)

    def __add__(self, other: "PatternMatrix") -> "PatternMatrix":
        return pat_add(self, other)

    def __matmul__(self, other: "PatternMatrix") -> "PatternMatrix":
        return pat_mul(self, other)

    def __str__(self) -> str:
        return "\n".join(" ".join(entry.token for entry in row) for row in self.entries)


def pat_add(m: PatternMatrix, n: PatternMatrix) -> PatternMatrix:
    """Entrywise sum of two equally sized pattern matrices."""
    if m.shape != n.shape:
        raise DimensionMismatch(f"cannot add patterns of shapes {m.shape} and {n.shape}")
    return PatternMatrix(
        tuple(
            tuple(sym_add(a, b) for a, b in zip(mrow, nrow))
            for mrow, nrow in zip(m.entries, n.entries)
        )
    )


def pat_mul(m: PatternMatrix, n: PatternMatrix) -> PatternMatrix:
    """Pattern product: entry (i, j) folds sym_mul terms with sym_add.

    The fold runs left to right over the inner index; the result does not
    depend on the order because the symbol operations are associative and
    commutative.
    """
    if m.cols != n.rows:
        raise DimensionMismatch(
            f"cannot multiply patterns of shapes {m.shape} and {n.shape}"
        )
    n_cols = [n.column(j) for j in range(n.cols)]
    out = []
    for mrow in m.entries:
        out_row = []
        for ncol in n_cols:
            acc = ZERO
            for a, b in zip(mrow, ncol):
                acc = sym_add(acc, sym_mul(a, b))
            out_row.append(acc)
        out.append(tuple(out_row))
    return PatternMatrix(tuple(out))


def pat_identity(n: int) -> PatternMatrix:
    """The n-by-n pattern with '*' on the diagonal and '0' elsewhere."""
    if n < 1:
        raise DimensionMismatch(f"identity size must be positive, got {n}")
    return PatternMatrix(
        tuple(tuple(STAR if i == j else ZERO for j in range(n)) for i in range(n))
    )


class ProductExactness(Enum):
    """Which structural condition makes a pattern product class-exact.

    The class of the pattern product always contains every product of
    realizations; it equals the set of such products when each row of the
    right factor, or each column of the left factor, selects a single '*'
    entry with all remaining entries zero.
    """

    ROW_CONDITION = "row"
    COLUMN_CONDITION = "column"
    BOTH = "both"
    NEITHER = "neither"


def _single_star_lines(lines: Iterable[tuple[PatternSymbol, ...]]) -> bool:
    return all(
        line.count(STAR) == 1 and line.count(ANY) == 0 for line in lines
    )


def exact_product_condition(m: PatternMatrix, n: PatternMatrix) -> ProductExactness:
    """Check the single-star row/column conditions for a product m @ n."""
    if m.cols != n.rows:
        raise DimensionMismatch(
            f"cannot multiply patterns of shapes {m.shape} and {n.shape}"
        )
    row_ok = _single_star_lines(n.entries)
    col_ok = _single_star_lines(m.column(j) for j in range(m.cols))
    if row_ok and col_ok:
        return ProductExactness.BOTH
    if row_ok:
        return ProductExactness.ROW_CONDITION
    if col_ok:
        return ProductExactness.COLUMN_CONDITION
    return ProductExactness.NEITHER


def is_member(values: np.ndarray, m: PatternMatrix) -> bool:
    """True iff the numeric matrix lies in the pattern class of m.

    Zero entries must be exactly 0, star entries exactly nonzero; '?'
    entries are unconstrained.
    """
    values = np.asarray(values, dtype=float)
    if values.shape != m.shape:
        raise DimensionMismatch(
            f"value grid has shape {values.shape}, pattern has shape {m.shape}"
        )
    for i in range(m.rows):
        for j in range(m.cols):
            symbol = m.entries[i][j]
            if symbol is ZERO and values[i, j] != 0.0:
                return False
            if symbol is STAR and values[i, j] == 0.0:
                return False
    return True


# Sampler constants. Star entries are kept away from zero so that numeric
# rank checks on sampled realizations do not wobble; '?' entries hit exact
# zero with positive probability so that both sides of the class are seen.
_STAR_MAG_LOW = 0.5
_STAR_MAG_HIGH = 2.0
_ANY_LOW = -2.0
_ANY_HIGH = 2.0
_ANY_ZERO_PROB = 0.25


def sample_realization(m: PatternMatrix, seed) -> np.ndarray:
    """Draw one numeric matrix from the pattern class of m.

    Deterministic for a fixed integer seed; also accepts a numpy Generator
    so callers can thread their own stream. Star entries get magnitude in
    [0.5, 2.0] with a random sign; '?' entries are 0 with probability 0.25
    and otherwise uniform on [-2, 2].
    """
    rng = np.random.default_rng(seed)
    values = np.zeros(m.shape)
    for i in range(m.rows):
        for j in range(m.cols):
            symbol = m.entries[i][j]
            if symbol is STAR:
                magnitude = rng.uniform(_STAR_MAG_LOW, _STAR_MAG_HIGH)
                sign = 1.0 if rng.random() < 0.5 else -1.0
                values[i, j] = sign * magnitude
            elif symbol is ANY:
                if rng.random() < _ANY_ZERO_PROB:
                    values[i, j] = 0.0
                else:
                    values[i, j] = rng.uniform(_ANY_LOW, _ANY_HIGH)
    return values


def hstack(m: PatternMatrix, n: PatternMatrix) -> PatternMatrix:
    """Place two patterns side by side."""
    if m.rows != n.rows:
        raise DimensionMismatch(
            f"cannot hstack patterns with {m.rows} and {n.rows} rows"
        )
    return PatternMatrix(tuple(mrow + nrow for mrow, nrow in zip(m.entries, n.entries)))


def block_diag(blocks: Sequence[PatternMatrix]) -> PatternMatrix:
    """Block-diagonal pattern with zero off-diagonal blocks."""
    blocks = list(blocks)
    if not blocks:
        raise DimensionMismatch("block_diag needs at least one block")
    total_rows = sum(b.rows for b in blocks)
    total_cols = sum(b.cols for b in blocks)
    grid = [[ZERO] * total_cols for _ in range(total_rows)]
    row_off = col_off = 0
    for block in blocks:
        for i in range(block.rows):
            for j in range(block.cols):
                grid[row_off + i][col_off + j] = block.entries[i][j]
        row_off += block.rows
        col_off += block.cols
    return PatternMatrix(tuple(tuple(row) for row in grid))


def assemble_blocks(grid: Sequence[Sequence[PatternMatrix]]) -> PatternMatrix:
    """Assemble a block grid of patterns into one pattern.

    Every block in a grid row must share its height and every block in a
    grid column its width; the error names the first offending block.
    """
    if not grid or not grid[0]:
        raise DimensionMismatch("assemble_blocks needs at least one block")
    widths = [block.cols for block in grid[0]]
    rows: list[tuple[PatternSymbol, ...]] = []
    for bi, block_row in enumerate(grid):
        if len(block_row) != len(widths):
            raise DimensionMismatch(
                f"block row {bi + 1} has {len(block_row)} blocks, expected {len(widths)}"
            )
        height = block_row[0].rows
        for bj, block in enumerate(block_row):
            if block.rows != height:
                raise DimensionMismatch(
                    f"block ({bi + 1}, {bj + 1}) has {block.rows} rows, expected {height}"
                )
            if block.cols != widths[bj]:
                raise DimensionMismatch(
                    f"block ({bi + 1}, {bj + 1}) has {block.cols} columns, expected {widths[bj]}"
                )
        for i in range(height):
            rows.append(tuple(entry for block in block_row for entry in block.entries[i]))
    return PatternMatrix(tuple(rows))


def load_pattern(path) -> PatternMatrix:
    """Read a pattern matrix from a JSON file of token grids."""
    text = Path(path).read_text()
    try:
        grid = json.loads(text)
    except json.JSONDecodeError as exc:
        raise PatternParseError(f"{path}: not valid JSON: {exc}") from None
    return PatternMatrix.from_tokens(grid)
