"""Exact linear algebra over the prime field F_p.

Vectors and matrices hold machine-integer residues.  Subspaces are kept in
reduced-row-echelon (RREF) canonical form, so equality, hashing, sorting
and cache keys are bit-exact on the basis matrix.  All values are
immutable after construction and all operations are pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, NamedTuple, Sequence

from .counting import gaussian_binomial
from .errors import BudgetExceededError

DEFAULT_SUBSPACE_BUDGET = 4_000_000


def is_prime(n: int) -> bool:
    """Deterministic trial-division primality check."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True, order=True)
class PrimeModulus:
    """A prime field characteristic, validated at construction."""

    p: int

    def __post_init__(self):
        if not isinstance(self.p, int) or not is_prime(self.p):
            raise ValueError(f"modulus {self.p!r} is not a prime integer")
        if self.p > (1 << 16):
            raise ValueError("field characteristic limited to 16-bit primes")


def _as_modulus(p) -> PrimeModulus:
    return p if isinstance(p, PrimeModulus) else PrimeModulus(int(p))


@dataclass(frozen=True)
class FpVector:
    """A fixed-length vector of residues mod p."""

    modulus: PrimeModulus
    entries: tuple[int, ...]

    def __post_init__(self):
        p = self.modulus.p
        object.__setattr__(self, "entries", tuple(int(x) % p for x in self.entries))

    def __len__(self) -> int:
        return len(self.entries)

    def __add__(self, other: "FpVector") -> "FpVector":
        self._check_compatible(other)
        p = self.modulus.p
        return FpVector(self.modulus, tuple((a + b) % p for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "FpVector") -> "FpVector":
        self._check_compatible(other)
        p = self.modulus.p
        return FpVector(self.modulus, tuple((a - b) % p for a, b in zip(self.entries, other.entries)))

    def __rmul__(self, scalar: int) -> "FpVector":
        p = self.modulus.p
        return FpVector(self.modulus, tuple((scalar * a) % p for a in self.entries))

    @property
    def is_zero(self) -> bool:
        return not any(self.entries)

    def _check_compatible(self, other: "FpVector"):
        if self.modulus != other.modulus or len(self) != len(other):
            raise ValueError("mixed moduli or lengths")


def entries_of(v) -> tuple[int, ...]:
    """Coerce an FpVector or a plain integer sequence to an entries tuple."""
    return v.entries if isinstance(v, FpVector) else tuple(v)


def vadd(u: Sequence[int], v: Sequence[int], p: int) -> tuple[int, ...]:
    return tuple((a + b) % p for a, b in zip(u, v))


def vscale(c: int, u: Sequence[int], p: int) -> tuple[int, ...]:
    return tuple((c * a) % p for a in u)


def _rref_core(mat, p):
    """Full reduction; zero rows end up at the bottom.  Returns (rows, rank)."""
    rows = [list(r) for r in mat]
    m = len(rows)
    n = len(rows[0]) if m else 0
    r = 0
    for c in range(n):
        piv = None
        for i in range(r, m):
            if rows[i][c] % p:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c] % p, p - 2, p)
        rows[r] = [(x * inv) % p for x in rows[r]]
        prow = rows[r]
        for i in range(m):
            if i != r and rows[i][c] % p:
                f = rows[i][c] % p
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], prow)]
        r += 1
        if r == m:
            break
    return rows, r


def rref(matrix: Sequence[Sequence[int]], modulus) -> tuple[tuple[tuple[int, ...], ...], int]:
    """Unique reduced row echelon form over F_p, preserving the row count.

    Returns (echelon matrix, rank); rank is the number of nonzero rows.
    """
    mod = _as_modulus(modulus)
    rows, rank = _rref_core(matrix, mod.p)
    return tuple(tuple(x % mod.p for x in row) for row in rows), rank


def echelon_rows(vectors: Iterable[Sequence[int]], p: int) -> tuple[tuple[int, ...], ...]:
    """RREF basis of the span of the given vectors, zero rows dropped."""
    mat = [list(v) for v in vectors]
    if not mat:
        return ()
    rows, rank = _rref_core(mat, p)
    return tuple(tuple(x for x in row) for row in rows[:rank])


def row_pivot(row: Sequence[int]) -> int:
    for j, x in enumerate(row):
        if x:
            return j
    return -1


def echelon_insert(rows: tuple[tuple[int, ...], ...], vec: Sequence[int], p: int):
    """Insert vec into an RREF row set.

    Returns (new_rows, True) when vec is independent of rows, else
    (rows, False).  new_rows is again in RREF with pivots increasing.
    """
    v = list(vec)
    for row in rows:
        c = row_pivot(row)
        f = v[c] % p
        if f:
            v = [(x - f * y) % p for x, y in zip(v, row)]
    lead = row_pivot(v)
    if lead < 0:
        return rows, False
    inv = pow(v[lead], p - 2, p)
    v = [(x * inv) % p for x in v]
    new_rows = []
    inserted = False
    for row in rows:
        f = row[lead]
        if f:
            row = tuple((x - f * y) % p for x, y in zip(row, v))
        if not inserted and row_pivot(row) > lead:
            new_rows.append(tuple(v))
            inserted = True
        new_rows.append(row)
    if not inserted:
        new_rows.append(tuple(v))
    return tuple(new_rows), True


def reduce_mod_rows(vec: Sequence[int], rows: Sequence[Sequence[int]], p: int) -> tuple[int, ...]:
    """Remainder of vec after elimination against RREF rows."""
    v = list(vec)
    for row in rows:
        c = row_pivot(row)
        f = v[c] % p
        if f:
            v = [(x - f * y) % p for x, y in zip(v, row)]
    return tuple(v)


@dataclass(frozen=True, order=True)
class Subspace:
    """A subspace of F_p^n, canonically presented by its RREF basis.

    Two subspaces are equal iff their echelon bases agree entry for entry;
    ordering is by (dimension, basis) and gives the canonical sort used
    for splitting parts and enumeration output.
    """

    modulus: PrimeModulus
    ambient_dim: int
    basis: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        p = self.modulus.p
        last = -1
        for row in self.basis:
            if len(row) != self.ambient_dim:
                raise ValueError("basis row length does not match ambient dimension")
            lead = row_pivot(row)
            if lead <= last:
                raise ValueError("basis rows are not in echelon order")
            if row[lead] != 1:
                raise ValueError("basis rows must have unit pivots")
            if any(not 0 <= x < p for x in row):
                raise ValueError("basis entries not reduced mod p")
            last = lead
        pivots = [row_pivot(row) for row in self.basis]
        for i, row in enumerate(self.basis):
            for j, c in enumerate(pivots):
                if j != i and row[c] != 0:
                    raise ValueError("basis is not fully reduced")

    @classmethod
    def from_vectors(cls, vectors: Iterable[Sequence[int]], modulus, ambient_dim: int) -> "Subspace":
        mod = _as_modulus(modulus)
        ents = [entries_of(v) for v in vectors]
        for e in ents:
            if len(e) != ambient_dim:
                raise ValueError("mixed moduli or lengths")
        return cls(mod, ambient_dim, echelon_rows(ents, mod.p))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def is_zero(self) -> bool:
        return not self.basis

    def sort_key(self):
        return (self.dim, self.basis)

    def contains_vector(self, v) -> bool:
        e = entries_of(v)
        if len(e) != self.ambient_dim:
            raise ValueError("ambient mismatch")
        return not any(reduce_mod_rows(e, self.basis, self.modulus.p))

    def contains(self, other: "Subspace") -> bool:
        self._check_same_ambient(other)
        return all(self.contains_vector(row) for row in other.basis)

    def vectors(self):
        """All vectors of the subspace, in lexicographic coefficient order."""
        p = self.modulus.p
        for coeffs in product(range(p), repeat=self.dim):
            v = [0] * self.ambient_dim
            for c, row in zip(coeffs, self.basis):
                if c:
                    for j, x in enumerate(row):
                        v[j] = (v[j] + c * x) % p
            yield tuple(v)

    def _check_same_ambient(self, other: "Subspace"):
        if self.modulus != other.modulus or self.ambient_dim != other.ambient_dim:
            raise ValueError("ambient mismatch")


def zero_subspace(ambient_dim: int, modulus) -> Subspace:
    return Subspace(_as_modulus(modulus), ambient_dim, ())


def full_subspace(ambient_dim: int, modulus) -> Subspace:
    mod = _as_modulus(modulus)
    rows = tuple(tuple(1 if j == i else 0 for j in range(ambient_dim)) for i in range(ambient_dim))
    return Subspace(mod, ambient_dim, rows)


def span(vectors: Sequence, modulus=None, ambient_dim: int | None = None) -> Subspace:
    """Canonical subspace spanned by the given vectors.

    The span of an empty list is the zero subspace; in that case both
    modulus and ambient_dim must be supplied.
    """
    vectors = list(vectors)
    if vectors:
        first = vectors[0]
        if isinstance(first, FpVector):
            mod = first.modulus
            for v in vectors:
                if not isinstance(v, FpVector) or v.modulus != mod:
                    raise ValueError("mixed moduli or lengths")
        else:
            if modulus is None:
                raise ValueError("modulus required for plain-sequence vectors")
            mod = _as_modulus(modulus)
        if modulus is not None and _as_modulus(modulus) != mod:
            raise ValueError("mixed moduli or lengths")
        n = len(entries_of(vectors[0]))
        if ambient_dim is not None and ambient_dim != n:
            raise ValueError("mixed moduli or lengths")
        if any(len(entries_of(v)) != n for v in vectors):
            raise ValueError("mixed moduli or lengths")
        return Subspace.from_vectors(vectors, mod, n)
    if modulus is None or ambient_dim is None:
        raise ValueError("empty span needs explicit modulus and ambient_dim")
    return zero_subspace(ambient_dim, modulus)


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    a._check_same_ambient(b)
    return Subspace.from_vectors(list(a.basis) + list(b.basis), a.modulus, a.ambient_dim)


def subspace_intersection(a: Subspace, b: Subspace) -> Subspace:
    """Intersection via the Zassenhaus stacked-kernel construction."""
    a._check_same_ambient(b)
    if a.is_zero or b.is_zero:
        return zero_subspace(a.ambient_dim, a.modulus)
    n = a.ambient_dim
    p = a.modulus.p
    stacked = [list(r) + list(r) for r in a.basis]
    stacked += [list(r) + [0] * n for r in b.basis]
    rows, rank = _rref_core(stacked, p)
    inter = [tuple(row[n:]) for row in rows[:rank] if not any(row[:n])]
    return Subspace.from_vectors(inter, a.modulus, n)


class SubspaceOps(NamedTuple):
    sum: Subspace
    intersection: Subspace
    contains: bool
    is_direct_sum: bool


def subspace_ops(a: Subspace, b: Subspace) -> SubspaceOps:
    """Bundle of sum, intersection, containment (a >= b) and directness."""
    s = subspace_sum(a, b)
    i = subspace_intersection(a, b)
    return SubspaceOps(
        sum=s,
        intersection=i,
        contains=a.contains(b),
        is_direct_sum=s.dim == a.dim + b.dim,
    )


def enumerate_subspaces(
    n: int, modulus, k: int, max_subspaces: int = DEFAULT_SUBSPACE_BUDGET
) -> list[Subspace]:
    """All k-dimensional subspaces of F_p^n, in lexicographic order of their
    echelon basis matrices.  Exactly (n choose k)_p subspaces are produced."""
    mod = _as_modulus(modulus)
    p = mod.p
    if not 0 <= k <= n:
        raise ValueError(f"invalid dimension {k} for ambient {n}")
    count = gaussian_binomial(n, k, p)
    if count > max_subspaces:
        raise BudgetExceededError(
            f"{count} subspaces at (n={n}, p={p}, k={k}) exceeds budget {max_subspaces}"
        )
    if k == 0:
        return [zero_subspace(n, mod)]
    out = []
    for pivots in combinations(range(n), k):
        pivot_set = set(pivots)
        free_positions = [
            (i, j) for i in range(k) for j in range(pivots[i] + 1, n) if j not in pivot_set
        ]
        for values in product(range(p), repeat=len(free_positions)):
            mat = [[0] * n for _ in range(k)]
            for i, c in enumerate(pivots):
                mat[i][c] = 1
            for (i, j), v in zip(free_positions, values):
                mat[i][j] = v
            out.append(Subspace(mod, n, tuple(tuple(row) for row in mat)))
    out.sort(key=lambda s: s.basis)
    assert len(out) == count
    return out


def all_nonzero_vectors(n: int, p: int):
    """All nonzero vectors of F_p^n in lexicographic order."""
    for v in product(range(p), repeat=n):
        if any(v):
            yield v


def projective_points(n: int, p: int) -> list[tuple[int, ...]]:
    """One representative per line: first nonzero entry equals 1, lex order."""
    out = []
    for v in product(range(p), repeat=n):
        lead = row_pivot(v)
        if lead >= 0 and v[lead] == 1:
            out.append(v)
    return out


def solve_linear_system(rows: Sequence[Sequence[int]], rhs: Sequence[int], p: int):
    """Solve rows . x = rhs over F_p.

    Returns (particular, nullspace_rows) or None when inconsistent.  The
    particular solution sets all free variables to zero; nullspace rows are
    listed by increasing free-column index.
    """
    if not rows:
        n = None
        raise ValueError("need at least one equation row (use nullspace for none)")
    n = len(rows[0])
    aug = [list(r) + [b % p] for r, b in zip(rows, rhs)]
    red, rank = _rref_core(aug, p)
    pivots = []
    for row in red[:rank]:
        lead = row_pivot(row)
        if lead == n:
            return None
        pivots.append(lead)
    particular = [0] * n
    for i, c in enumerate(pivots):
        particular[c] = red[i][n]
    pivot_set = set(pivots)
    null_rows = []
    for j in range(n):
        if j in pivot_set:
            continue
        v = [0] * n
        v[j] = 1
        for i, c in enumerate(pivots):
            v[c] = (-red[i][j]) % p
        null_rows.append(tuple(v))
    return tuple(particular), tuple(null_rows)


def nullspace(rows: Sequence[Sequence[int]], n: int, p: int) -> tuple[tuple[int, ...], ...]:
    """Basis of {x : rows . x = 0} in F_p^n."""
    if not rows:
        return tuple(tuple(1 if j == i else 0 for j in range(n)) for i in range(n))
    sol = solve_linear_system(rows, [0] * len(rows), p)
    assert sol is not None
    return sol[1]


class RowSolver:
    """Coordinate solver over a fixed independent row set.

    Precomputes a transform T with T . rows = rref(rows) so that express(v)
    returns coefficients c with c . rows = v, or None when v is outside the
    row span.
    """

    def __init__(self, rows: Sequence[Sequence[int]], p: int):
        self.p = p
        self.m = len(rows)
        n = len(rows[0]) if rows else 0
        self.n = n
        aug = [list(r) + [1 if i == j else 0 for j in range(self.m)] for i, r in enumerate(rows)]
        red, rank = _rref_core(aug, p)
        if rank != self.m:
            raise ValueError("rows are not independent")
        self._ech = [tuple(row[:n]) for row in red[: self.m]]
        self._trans = [tuple(row[n:]) for row in red[: self.m]]
        self._pivots = [row_pivot(r) for r in self._ech]

    def express(self, v: Sequence[int]):
        p = self.p
        work = list(v)
        coeffs = [0] * self.m
        for i, (row, c) in enumerate(zip(self._ech, self._pivots)):
            f = work[c] % p
            if f:
                coeffs[i] = f
                work = [(x - f * y) % p for x, y in zip(work, row)]
        if any(work):
            return None
        out = [0] * self.m
        for i, f in enumerate(coeffs):
            if f:
                for j, t in enumerate(self._trans[i]):
                    out[j] = (out[j] + f * t) % p
        return tuple(out)
