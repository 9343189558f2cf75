"""Prime-field linear algebra and exhaustive subspace enumeration.

A subspace of F_q^n is represented by its reduced row echelon basis, stored
as a tuple of row tuples.  RREF is the unique canonical representative of a
row space, so Subspace values compare and hash structurally; two values are
equal iff they are the same subspace.

Enumeration walks the RREF matrices directly (pivot-column pattern plus free
entries), producing every subspace exactly once, then sorts so the returned
order is the lexicographic order of canonical matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Iterator, Sequence

from .exact_arith import gaussian_binomial

__all__ = [
    "DEFAULT_ENUMERATION_CAP",
    "EnumerationCapExceeded",
    "FamilyFormatError",
    "Subspace",
    "SubspaceFamily",
    "is_prime",
    "rref",
    "enumerate_subspaces",
    "dim_intersection",
    "intersect_subspace",
    "sum_subspace",
    "contains",
    "build_star",
    "parse_subspace_family",
    "format_subspace_family",
]

DEFAULT_ENUMERATION_CAP = 10**6


class EnumerationCapExceeded(RuntimeError):
    """Requested subspace layer is larger than the enumeration cap."""


class FamilyFormatError(ValueError):
    """Malformed family file; carries the offending 1-based line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    f = 2
    while f * f <= q:
        if q % f == 0:
            return False
        f += 1
    return True


def _require_prime(q: int) -> None:
    if not is_prime(q):
        raise ValueError(f"q must be prime (got {q}); prime powers are not supported")


def rref(matrix: Iterable[Sequence[int]], q: int) -> tuple[tuple[int, ...], ...]:
    """Reduced row echelon form over F_q: leading 1s, zeros above and below
    each pivot, pivot columns strictly increasing, zero rows dropped.

    Idempotent; row-equivalent inputs map to the identical output.
    """
    _require_prime(q)
    rows = [list(r) for r in matrix]
    if not rows:
        return ()
    width = len(rows[0])
    for r in rows:
        if len(r) != width:
            raise ValueError("rows must all have the same length")
        for x in r:
            if not isinstance(x, int) or not 0 <= x < q:
                raise ValueError(f"entries must be integers in [0, {q}) (got {x!r})")
    pivot = 0
    for col in range(width):
        src = next((r for r in range(pivot, len(rows)) if rows[r][col]), None)
        if src is None:
            continue
        rows[pivot], rows[src] = rows[src], rows[pivot]
        inv = pow(rows[pivot][col], -1, q)
        rows[pivot] = [(x * inv) % q for x in rows[pivot]]
        lead = rows[pivot]
        for r in range(len(rows)):
            if r != pivot and rows[r][col]:
                f = rows[r][col]
                rows[r] = [(a - f * b) % q for a, b in zip(rows[r], lead)]
        pivot += 1
        if pivot == len(rows):
            break
    return tuple(tuple(r) for r in rows[:pivot])


@dataclass(frozen=True)
class Subspace:
    """A subspace of F_q^n held as its canonical RREF basis.

    ``rows`` may be empty (the zero subspace).  Construction re-checks
    canonicality, so every live Subspace value is in canonical form.
    """

    n: int
    q: int
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.n < 0:
            raise ValueError(f"ambient dimension must be >= 0 (got {self.n})")
        _require_prime(self.q)
        for r in self.rows:
            if len(r) != self.n:
                raise ValueError("basis rows must have length n")
        if rref(self.rows, self.q) != self.rows:
            raise ValueError("basis is not in reduced row echelon form")

    @property
    def dim(self) -> int:
        return len(self.rows)

    @classmethod
    def from_vectors(cls, vectors: Iterable[Sequence[int]], n: int, q: int) -> "Subspace":
        reduced = rref([tuple(v) for v in vectors], q)
        for r in reduced:
            if len(r) != n:
                raise ValueError("vectors must have length n")
        return cls(n, q, reduced)

    @classmethod
    def zero(cls, n: int, q: int) -> "Subspace":
        return cls(n, q, ())

    @classmethod
    def coordinate(cls, n: int, q: int, axes: Iterable[int]) -> "Subspace":
        """Span of the standard basis vectors e_i for i in ``axes`` (0-based)."""
        vecs = []
        for i in axes:
            v = [0] * n
            v[i] = 1
            vecs.append(v)
        return cls.from_vectors(vecs, n, q)

    def vectors(self) -> Iterator[tuple[int, ...]]:
        """All q^dim vectors of the subspace (small spaces only)."""
        for coeffs in product(range(self.q), repeat=self.dim):
            v = [0] * self.n
            for c, row in zip(coeffs, self.rows):
                if c:
                    v = [(a + c * b) % self.q for a, b in zip(v, row)]
            yield tuple(v)

    def __lt__(self, other: "Subspace") -> bool:
        return self.rows < other.rows


def _check_compatible(u: Subspace, w: Subspace) -> None:
    if u.n != w.n or u.q != w.q:
        raise ValueError(
            f"ambient mismatch: ({u.n}, q={u.q}) vs ({w.n}, q={w.q})"
        )


def dim_intersection(u: Subspace, w: Subspace) -> int:
    """dim(U ∩ W) = dim U + dim W - rank of the stacked bases."""
    _check_compatible(u, w)
    rank = len(rref(u.rows + w.rows, u.q))
    return u.dim + w.dim - rank


def sum_subspace(u: Subspace, w: Subspace) -> Subspace:
    """Canonical form of U + W (row space of the stacked bases)."""
    _check_compatible(u, w)
    return Subspace(u.n, u.q, rref(u.rows + w.rows, u.q))


def intersect_subspace(u: Subspace, w: Subspace) -> Subspace:
    """Canonical form of U ∩ W via the block-matrix (Zassenhaus) method."""
    _check_compatible(u, w)
    n, q = u.n, u.q
    block = [r + r for r in u.rows]
    block += [r + (0,) * n for r in w.rows]
    reduced = rref(block, q)
    inter = [row[n:] for row in reduced if not any(row[:n])]
    return Subspace(n, q, rref(inter, q))


def contains(u: Subspace, w: Subspace) -> bool:
    """True iff W is a subspace of U."""
    return dim_intersection(u, w) == w.dim


@dataclass(frozen=True)
class SubspaceFamily:
    """A family of distinct subspaces of common dimension k in F_q^n.

    Member order is significant: intersection matrices and search witnesses
    index into it.
    """

    n: int
    q: int
    k: int
    members: tuple[Subspace, ...]

    def __post_init__(self):
        for s in self.members:
            if s.n != self.n or s.q != self.q:
                raise ValueError("family members must share the ambient space")
            if s.dim != self.k:
                raise ValueError(
                    f"family must be uniform: expected dim {self.k}, got {s.dim}"
                )
        if len({s.rows for s in self.members}) != len(self.members):
            raise ValueError("family members must be distinct")

    def __len__(self) -> int:
        return len(self.members)

    @classmethod
    def from_members(cls, members: Iterable[Subspace]) -> "SubspaceFamily":
        ms = tuple(members)
        if not ms:
            raise ValueError("cannot infer ambient parameters from an empty family")
        return cls(ms[0].n, ms[0].q, ms[0].dim, ms)


def enumerate_subspaces(
    n: int, k: int, q: int, cap: int = DEFAULT_ENUMERATION_CAP
) -> SubspaceFamily:
    """All k-dimensional subspaces of F_q^n in lexicographic order of their
    canonical matrices.  Refuses layers larger than ``cap``."""
    _require_prime(q)
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n (got k={k}, n={n})")
    expected = gaussian_binomial(n, k, q)
    if expected > cap:
        raise EnumerationCapExceeded(
            f"layer has {expected} subspaces, above the cap of {cap}"
        )
    members = []
    for pivots in combinations(range(n), k):
        pivot_set = set(pivots)
        free = [
            (i, j)
            for i, c in enumerate(pivots)
            for j in range(c + 1, n)
            if j not in pivot_set
        ]
        for values in product(range(q), repeat=len(free)):
            rows = [[0] * n for _ in range(k)]
            for i, c in enumerate(pivots):
                rows[i][c] = 1
            for (i, j), v in zip(free, values):
                rows[i][j] = v
            members.append(Subspace(n, q, tuple(tuple(r) for r in rows)))
    members.sort(key=lambda s: s.rows)
    return SubspaceFamily(n, q, k, tuple(members))


def subspaces_of(space: Subspace, t: int) -> list[Subspace]:
    """All t-dimensional subspaces of ``space``, as ambient Subspace values.

    Enumerates the t-subspaces of F_q^dim and maps their basis rows through
    the space's basis, so the cost depends on dim, never on the ambient n.
    """
    if not 0 <= t <= space.dim:
        return []
    inner = enumerate_subspaces(space.dim, t, space.q)
    out = []
    for small in inner.members:
        rows = []
        for coeffs in small.rows:
            vec = [0] * space.n
            for c, basis_row in zip(coeffs, space.rows):
                if c:
                    vec = [(a + c * b) % space.q for a, b in zip(vec, basis_row)]
            rows.append(tuple(vec))
        out.append(Subspace(space.n, space.q, rref(rows, space.q)))
    return out


def build_star(
    n: int, k: int, q: int, core: Subspace, cap: int = DEFAULT_ENUMERATION_CAP
) -> SubspaceFamily:
    """All k-subspaces of F_q^n containing ``core``; size equals
    [n - dim core, k - dim core]_q."""
    if core.n != n or core.q != q:
        raise ValueError("core must live in the requested ambient space")
    if core.dim > k:
        raise ValueError(f"core dimension {core.dim} exceeds k={k}")
    layer = enumerate_subspaces(n, k, q, cap)
    members = tuple(s for s in layer.members if contains(s, core))
    return SubspaceFamily(n, q, k, members)


# --- family file format ---------------------------------------------------
#
# header line:  q=<q> n=<n>
# then one block per subspace: dim lines of n space-separated digits,
# blocks separated by blank lines.  Rows are canonicalized on read.


def parse_subspace_family(text: str) -> SubspaceFamily:
    lines = text.splitlines()
    header_idx = None
    for idx, raw in enumerate(lines):
        if raw.strip():
            header_idx = idx
            break
    if header_idx is None:
        raise FamilyFormatError("empty file, expected header 'q=<q> n=<n>'")
    header = lines[header_idx].split()
    if (
        len(header) != 2
        or not header[0].startswith("q=")
        or not header[1].startswith("n=")
    ):
        raise FamilyFormatError(
            "expected header 'q=<q> n=<n>'", line=header_idx + 1
        )
    try:
        q = int(header[0][2:])
        n = int(header[1][2:])
    except ValueError:
        raise FamilyFormatError("header values must be integers", line=header_idx + 1)
    if not is_prime(q):
        raise FamilyFormatError(f"q must be prime (got {q})", line=header_idx + 1)
    if n < 1:
        raise FamilyFormatError(f"n must be >= 1 (got {n})", line=header_idx + 1)

    members: list[Subspace] = []
    seen: dict[tuple, int] = {}
    block: list[tuple[int, ...]] = []
    block_line = None

    def close_block(at_line: int) -> None:
        nonlocal block, block_line
        if not block:
            return
        sub = Subspace.from_vectors(block, n, q)
        if sub.rows in seen:
            raise FamilyFormatError(
                f"duplicate member (same subspace as block at line {seen[sub.rows]})",
                line=block_line,
            )
        seen[sub.rows] = block_line
        members.append(sub)
        block = []
        block_line = None

    for idx in range(header_idx + 1, len(lines)):
        raw = lines[idx]
        if not raw.strip():
            close_block(idx + 1)
            continue
        parts = raw.split()
        row = []
        for p in parts:
            try:
                v = int(p)
            except ValueError:
                raise FamilyFormatError(f"not an integer: {p!r}", line=idx + 1)
            if not 0 <= v < q:
                raise FamilyFormatError(
                    f"entry {v} out of range [0, {q})", line=idx + 1
                )
            row.append(v)
        if len(row) != n:
            raise FamilyFormatError(
                f"expected {n} entries per row, got {len(row)}", line=idx + 1
            )
        if not block:
            block_line = idx + 1
        block.append(tuple(row))
    close_block(len(lines) + 1)

    if not members:
        return SubspaceFamily(n, q, 0, ())
    dims = {s.dim for s in members}
    if len(dims) != 1:
        raise FamilyFormatError(
            f"family must be uniform; found dimensions {sorted(dims)}"
        )
    return SubspaceFamily(n, q, members[0].dim, tuple(members))


def format_subspace_family(family: SubspaceFamily) -> str:
    out = [f"q={family.q} n={family.n}"]
    for s in family.members:
        out.append("")
        for row in s.rows:
            out.append(" ".join(str(x) for x in row))
    return "\n".join(out) + "\n"
