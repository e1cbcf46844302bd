"""Complete-flag enumeration for F_p^n and the full flag chain complex.

The chain complex over all partial flags, with the augmentation in degree
-1, serves as an independent homology oracle for the top-degree cycle
space spanned by apartment classes.  Simplices are flags ordered by
increasing subspace dimension; boundary signs follow the alternating-face
rule in that canonical order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from . import ffspace
from .counting import complete_flag_count, steinberg_dim
from .errors import BudgetExceededError
from .ffspace import PrimeModulus, Subspace, echelon_insert, row_pivot

DEFAULT_FLAG_BUDGET = 1_000_000


@dataclass(frozen=True)
class BuildingContext:
    """Deterministic index of the complete flags of F_p^n.

    Subspace tables per dimension are in canonical (lexicographic echelon)
    order; a complete flag is stored as the tuple of its per-dimension
    table indices and flags are indexed in lexicographic order of those
    tuples.
    """

    n: int
    modulus: PrimeModulus
    tables: tuple[tuple[tuple[tuple[int, ...], ...], ...], ...]
    flags: tuple[tuple[int, ...], ...]
    _key_index: tuple[dict, ...] = field(repr=False, hash=False, compare=False, default=())
    _flag_index: dict = field(repr=False, hash=False, compare=False, default=None)

    @property
    def p(self) -> int:
        return self.modulus.p

    @property
    def flag_count(self) -> int:
        return len(self.flags)

    def table(self, dim: int):
        """Canonical echelon-basis tuples of the dim-dimensional subspaces."""
        return self.tables[dim - 1]

    def subspace_index(self, dim: int, basis_key) -> int:
        return self._key_index[dim - 1][basis_key]

    def subspace_at(self, dim: int, idx: int) -> Subspace:
        return Subspace(self.modulus, self.n, self.tables[dim - 1][idx])

    def flag_index(self, per_dim_indices) -> int:
        return self._flag_index[tuple(per_dim_indices)]


def build_context(n: int, p, flag_budget: int = DEFAULT_FLAG_BUDGET) -> BuildingContext:
    """Enumerate and index all complete flags of F_p^n."""
    mod = p if isinstance(p, PrimeModulus) else PrimeModulus(int(p))
    if n < 2:
        raise ValueError("ambient dimension must be >= 2")
    count = complete_flag_count(n, mod.p)
    if count > flag_budget:
        raise BudgetExceededError(
            f"{count} complete flags at (n={n}, p={mod.p}) exceeds budget {flag_budget}"
        )
    tables = tuple(
        tuple(s.basis for s in ffspace.enumerate_subspaces(n, mod, k))
        for k in range(1, n)
    )
    key_index = tuple({key: i for i, key in enumerate(tbl)} for tbl in tables)

    # Cover lists: for each dim-k subspace, indices of the dim-(k+1)
    # subspaces containing it, built by adjoining one vector at a time.
    pn = mod.p**n
    covers: list[list[list[int]]] = []
    for k in range(1, n - 1):
        level = []
        for key in tables[k - 1]:
            seen = set()
            ups = []
            for w in ffspace.all_nonzero_vectors(n, mod.p):
                if not any(ffspace.reduce_mod_rows(w, key, mod.p)):
                    continue
                up_rows, grew = echelon_insert(key, w, mod.p)
                assert grew
                idx = key_index[k][up_rows]
                if idx not in seen:
                    seen.add(idx)
                    ups.append(idx)
            ups.sort()
            level.append(ups)
        covers.append(level)

    flags: list[tuple[int, ...]] = []
    if n == 2:
        flags = [(i,) for i in range(len(tables[0]))]
    else:
        def descend(prefix):
            d = len(prefix)
            if d == n - 1:
                flags.append(tuple(prefix))
                return
            for up in covers[d - 1][prefix[-1]]:
                descend(prefix + [up])

        for i in range(len(tables[0])):
            descend([i])
    flags.sort()
    assert len(flags) == count
    flag_index = {f: i for i, f in enumerate(flags)}
    return BuildingContext(
        n=n,
        modulus=mod,
        tables=tables,
        flags=tuple(flags),
        _key_index=key_index,
        _flag_index=flag_index,
    )


@dataclass(frozen=True)
class BuildingChainComplex:
    """Augmented chain complex of the full flag complex.

    simplices[r] lists the r-simplices as tuples of (dim, table index)
    pairs in increasing dimension order, for r = 0 .. n-2.  boundary[r]
    gives, per r-simplex, its faces as (index into simplices[r-1], sign);
    degree 0 maps to the single augmentation coordinate.
    """

    ctx: BuildingContext
    simplices: tuple[tuple[tuple[tuple[int, int], ...], ...], ...]
    boundary: tuple[tuple[tuple[tuple[int, int], ...], ...], ...]

    @property
    def top_degree(self) -> int:
        return self.ctx.n - 2


def _contains(big_key, small_key, p) -> bool:
    return all(
        not any(ffspace.reduce_mod_rows(row, big_key, p)) for row in small_key
    )


def chain_complex(ctx: BuildingContext, simplex_budget: int = 5_000_000) -> BuildingChainComplex:
    """All partial flags of F_p^n with the alternating-face boundary."""
    n, p = ctx.n, ctx.p
    # Containment adjacency between consecutive-and-skipping dimension pairs.
    contain: dict[tuple[int, int], list[list[int]]] = {}
    for d1 in range(1, n - 1):
        for d2 in range(d1 + 1, n):
            lists = []
            for key in ctx.tables[d1 - 1]:
                ups = [
                    j
                    for j, big in enumerate(ctx.tables[d2 - 1])
                    if _contains(big, key, p)
                ]
                lists.append(ups)
            contain[(d1, d2)] = lists

    simplices: list[list[tuple[tuple[int, int], ...]]] = [[] for _ in range(n - 1)]
    total = 0
    for size in range(1, n):
        for dims in combinations(range(1, n), size):
            def grow(prefix, pos):
                nonlocal total
                if pos == len(dims):
                    simplices[size - 1].append(tuple(prefix))
                    total += 1
                    if total > simplex_budget:
                        raise BudgetExceededError("simplex budget exceeded")
                    return
                d = dims[pos]
                if not prefix:
                    for i in range(len(ctx.tables[d - 1])):
                        grow([(d, i)], pos + 1)
                else:
                    d_prev, i_prev = prefix[-1]
                    for i in contain[(d_prev, d)][i_prev]:
                        grow(prefix + [(d, i)], pos + 1)

            grow([], 0)
    ordered = tuple(tuple(sorted(level)) for level in simplices)
    index = [ {s: i for i, s in enumerate(level)} for level in ordered ]

    boundary: list[tuple[tuple[tuple[int, int], ...], ...]] = []
    for r, level in enumerate(ordered):
        faces_level = []
        for simplex in level:
            if r == 0:
                faces_level.append(((0, 1),))
                continue
            faces = []
            for i in range(len(simplex)):
                face = simplex[:i] + simplex[i + 1 :]
                faces.append((index[r - 1][face], (-1) ** i))
            faces_level.append(tuple(faces))
        boundary.append(tuple(faces_level))
    return BuildingChainComplex(ctx=ctx, simplices=ordered, boundary=tuple(boundary))


def complete_flag_simplex(ctx: BuildingContext, flag_idx: int) -> tuple[tuple[int, int], ...]:
    per_dim = ctx.flags[flag_idx]
    return tuple((d + 1, i) for d, i in enumerate(per_dim))


def boundary_of_flag_vector(coeffs: dict, ctx: BuildingContext) -> dict:
    """Boundary of a top-degree chain written in complete-flag coordinates.

    Keys of the result are face flags as (dim, index) tuples; for n = 2 the
    single augmentation coordinate is the empty tuple.
    """
    out: dict = {}
    for flag_idx, c in coeffs.items():
        simplex = complete_flag_simplex(ctx, flag_idx)
        if len(simplex) == 1:
            out[()] = out.get((), 0) + c
            continue
        for i in range(len(simplex)):
            face = simplex[:i] + simplex[i + 1 :]
            out[face] = out.get(face, 0) + (-1) ** i * c
    return {k: v for k, v in out.items() if v != 0}


def is_cycle(coeffs: dict, ctx: BuildingContext) -> bool:
    """True iff the top-degree flag vector has zero boundary."""
    return not boundary_of_flag_vector(coeffs, ctx)


def homology_ranks(ctx: BuildingContext, exact: bool | None = None, primes=None) -> list[int]:
    """Reduced Betti numbers of the flag complex over the rationals.

    Computed by rank-nullity on the boundary matrices.  Ranks run modulo
    two word-size primes by default (exact big-integer elimination for
    n <= 3 or on request); a modular Betti profile equal to the
    (0, ..., 0, p^(n choose 2)) target certifies the rational profile,
    since modular ranks only ever undercount.
    """
    from .steinberg import SpanBasis

    cx = chain_complex(ctx)
    n = ctx.n
    if exact is None:
        exact = n <= 3
    dims = [len(level) for level in cx.simplices]
    ranks = []
    for r, level in enumerate(cx.boundary):
        ncols = 1 if r == 0 else dims[r - 1]
        engine = SpanBasis(ncols, exact=exact, primes=primes)
        for faces in level:
            engine.insert(dict(faces))
        ranks.append(engine.rank)
    betti = []
    for r in range(len(dims)):
        b = dims[r] - ranks[r]
        if r + 1 < len(ranks):
            b -= ranks[r + 1]
        betti.append(b)
    return betti


def expected_betti_profile(n: int, p: int) -> list[int]:
    out = [0] * (n - 1)
    out[n - 2] = steinberg_dim(n, p)
    return out
