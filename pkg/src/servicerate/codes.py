"""Linear storage codes: generator matrices and recovery-set enumeration.

A code stores k files across n servers; server j holds the linear combination
given by column j of a k x n generator matrix over GF(q). A recovery set for
file i is a set of at most two columns that combine, with nonzero
coefficients, to the i-th unit vector. Size-1 sets come from columns that are
nonzero scalar multiples of e_i; size-2 sets from pairs spanning e_i.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional, Sequence

from .gf import FieldElement, PrimeField

__all__ = [
    "GeneratorMatrix",
    "RecoverySet",
    "RecoverySetCatalog",
    "parse_generator_matrix",
    "enumerate_recovery_sets",
    "simplex_code",
]


class GeneratorMatrix:
    """A k x n matrix over GF(q). Rows are files 1..k, columns servers 1..n.

    Degenerate shapes are allowed (k > n, duplicate or zero columns); an
    all-zero row simply yields a file with no recovery sets.
    """

    __slots__ = ("field", "k", "n", "rows")

    def __init__(self, field: PrimeField, rows: Sequence[Sequence[int]]) -> None:
        rows = [list(r) for r in rows]
        if not rows or not rows[0]:
            raise ValueError("empty matrix")
        n = len(rows[0])
        for r in rows:
            if len(r) != n:
                raise ValueError(f"ragged rows: expected {n} entries, got {len(r)}")
            for e in r:
                if not isinstance(e, int) or isinstance(e, bool):
                    raise ValueError(f"matrix entry {e!r} is not an integer")
        self.field = field
        self.k = len(rows)
        self.n = n
        self.rows: tuple[tuple[FieldElement, ...], ...] = tuple(
            tuple(field.element(e) for e in r) for r in rows
        )

    def row(self, i: int) -> tuple[FieldElement, ...]:
        """Row for file i (1-based)."""
        return self.rows[i - 1]

    def column(self, j: int) -> tuple[FieldElement, ...]:
        """Column for server j (1-based)."""
        return tuple(self.rows[r][j - 1] for r in range(self.k))

    def unit_vector(self, i: int) -> tuple[FieldElement, ...]:
        """e_i in GF(q)^k (1-based)."""
        one, zero = self.field.one, self.field.zero
        return tuple(one if r == i - 1 else zero for r in range(self.k))

    def to_json_dict(self) -> dict:
        return {
            "q": self.field.q,
            "matrix": [[e.value for e in r] for r in self.rows],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, GeneratorMatrix)
            and other.field == self.field
            and other.rows == self.rows
        )

    def __hash__(self) -> int:
        return hash((self.field.q, self.rows))

    def __repr__(self) -> str:
        return f"GeneratorMatrix(k={self.k}, n={self.n}, q={self.field.q})"


def parse_generator_matrix(text: str) -> GeneratorMatrix:
    """Parse the JSON form {"q": <prime>, "matrix": [[row], ...]}."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"invalid code JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ValueError('code JSON must be an object {"q": ..., "matrix": ...}')
    missing = {"q", "matrix"} - data.keys()
    if missing:
        raise ValueError(f"code JSON missing keys: {sorted(missing)}")
    matrix = data["matrix"]
    if not isinstance(matrix, list) or not all(isinstance(r, list) for r in matrix):
        raise ValueError('"matrix" must be a list of rows')
    field = PrimeField(data["q"])
    return GeneratorMatrix(field, matrix)


@dataclass(frozen=True, slots=True)
class RecoverySet:
    """Servers whose columns combine to e_file with the given coefficients.

    `servers` is sorted and 1-based; `coefficients` aligns with it entrywise.
    """

    file: int
    servers: tuple[int, ...]
    coefficients: tuple[FieldElement, ...]

    @property
    def size(self) -> int:
        return len(self.servers)

    def coefficient_for(self, server: int) -> FieldElement:
        return self.coefficients[self.servers.index(server)]

    def evaluate(self, matrix: GeneratorMatrix) -> tuple[FieldElement, ...]:
        """Recompute the linear combination; equals e_file by construction."""
        total = [matrix.field.zero] * matrix.k
        for server, coeff in zip(self.servers, self.coefficients):
            col = matrix.column(server)
            total = [t + coeff * c for t, c in zip(total, col)]
        return tuple(total)


@dataclass(frozen=True, slots=True)
class RecoverySetCatalog:
    """All recovery sets of size <= 2, per file, in a fixed deterministic order.

    Within each file: size-1 sets by column index, then size-2 sets in
    lexicographic order of their sorted index pairs.
    """

    matrix: GeneratorMatrix
    per_file: tuple[tuple[RecoverySet, ...], ...]

    @property
    def k(self) -> int:
        return self.matrix.k

    @property
    def n(self) -> int:
        return self.matrix.n

    @property
    def counts(self) -> tuple[int, ...]:
        """t_i: number of recovery sets for each file."""
        return tuple(len(sets) for sets in self.per_file)

    @property
    def total_sets(self) -> int:
        return sum(self.counts)

    def sets_for(self, file: int) -> tuple[RecoverySet, ...]:
        """Recovery sets of file i (1-based)."""
        return self.per_file[file - 1]

    def flat(self) -> tuple[RecoverySet, ...]:
        """All sets in file-major catalog order."""
        return tuple(rs for sets in self.per_file for rs in sets)


def enumerate_recovery_sets(matrix: GeneratorMatrix) -> RecoverySetCatalog:
    """Enumerate every recovery set of size 1 or 2 for each file.

    Sets are keyed by (file, server set): if several coefficient choices work
    for the same pair, only the first found in a fixed scan order is kept.
    Zero columns never participate.
    """
    field = matrix.field
    k, n = matrix.k, matrix.n
    columns = {j: matrix.column(j) for j in range(1, n + 1)}
    nonzero = [j for j in range(1, n + 1) if any(columns[j])]
    # exact column-value lookup; q is prime so scalar scans stay tiny
    by_value: dict[tuple[int, ...], list[int]] = {}
    for j in nonzero:
        by_value.setdefault(tuple(e.value for e in columns[j]), []).append(j)
    nz = field.nonzero_elements()

    per_file: list[tuple[RecoverySet, ...]] = []
    for i in range(1, k + 1):
        target = matrix.unit_vector(i)
        singles: list[RecoverySet] = []
        for j in nonzero:
            col = columns[j]
            if col[i - 1] and all(not col[r] for r in range(k) if r != i - 1):
                singles.append(RecoverySet(i, (j,), (col[i - 1].inv(),)))
        pairs: dict[tuple[int, int], RecoverySet] = {}
        for a in nonzero:
            ga = columns[a]
            for alpha in nz:
                w = tuple(t - alpha * g for t, g in zip(target, ga))
                if not any(w):
                    continue
                for beta in nz:
                    binv = beta.inv()
                    want = tuple((binv * wr).value for wr in w)
                    for b in by_value.get(want, ()):
                        if b == a:
                            continue
                        key = (a, b) if a < b else (b, a)
                        if key in pairs:
                            continue
                        coeffs = (alpha, beta) if a < b else (beta, alpha)
                        pairs[key] = RecoverySet(i, key, coeffs)
        ordered = singles + [pairs[key] for key in sorted(pairs)]
        per_file.append(tuple(ordered))
    return RecoverySetCatalog(matrix, tuple(per_file))


def simplex_code(k: int) -> GeneratorMatrix:
    """Binary simplex code of dimension k: columns are all nonzero k-bit
    vectors ordered by integer value, row 1 being the least significant bit.
    """
    if not isinstance(k, int) or isinstance(k, bool) or not 2 <= k <= 10:
        raise ValueError(f"simplex dimension must be an integer in [2, 10], got {k!r}")
    n = 2**k - 1
    rows = [[(j >> r) & 1 for j in range(1, n + 1)] for r in range(k)]
    return GeneratorMatrix(PrimeField(2), rows)
