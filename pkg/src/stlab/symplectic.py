"""The standard symplectic form on F_p^2g and its splittings.

Hyperbolic basis convention: coordinates are interleaved as
(e1, f1, e2, f2, ..., eg, fg) with omega(e_i, f_i) = 1 and all other
basis pairings zero.  All values are immutable; operations are pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from . import ffspace
from .counting import partitions, splitting_count
from .errors import BudgetExceededError, NotABasisError, SplittingError
from .ffspace import (
    FpVector,
    PrimeModulus,
    Subspace,
    echelon_rows,
    entries_of,
    full_subspace,
    solve_linear_system,
)


def omega_entries(u, v, p: int) -> int:
    """omega(u, v) on raw entry tuples for the interleaved standard form."""
    s = 0
    for t in range(0, len(u), 2):
        s += u[t] * v[t + 1] - u[t + 1] * v[t]
    return s % p


@dataclass(frozen=True)
class SymplecticSpace:
    """F_p^2g with the standard symplectic form."""

    genus: int
    modulus: PrimeModulus

    def __post_init__(self):
        if self.genus < 1:
            raise ValueError("genus must be >= 1")

    @property
    def dim(self) -> int:
        return 2 * self.genus

    @property
    def p(self) -> int:
        return self.modulus.p

    @property
    def gram(self) -> tuple[tuple[int, ...], ...]:
        p = self.p
        n = self.dim
        rows = [[0] * n for _ in range(n)]
        for t in range(self.genus):
            rows[2 * t][2 * t + 1] = 1
            rows[2 * t + 1][2 * t] = (-1) % p
        return tuple(tuple(r) for r in rows)

    def vector(self, entries) -> FpVector:
        return FpVector(self.modulus, tuple(entries))

    def e(self, i: int) -> FpVector:
        """i-th vector of the first hyperbolic family (1-based)."""
        ent = [0] * self.dim
        ent[2 * (i - 1)] = 1
        return self.vector(ent)

    def f(self, i: int) -> FpVector:
        """i-th vector of the second hyperbolic family (1-based)."""
        ent = [0] * self.dim
        ent[2 * (i - 1) + 1] = 1
        return self.vector(ent)

    def omega(self, u, v) -> int:
        ue, ve = entries_of(u), entries_of(v)
        if len(ue) != self.dim or len(ve) != self.dim:
            raise ValueError("dimension mismatch")
        return omega_entries(ue, ve, self.p)

    def full(self) -> Subspace:
        return full_subspace(self.dim, self.modulus)


def space(g: int, p: int) -> SymplecticSpace:
    return SymplecticSpace(g, PrimeModulus(p))


def restricted_gram(w: Subspace, sp: SymplecticSpace) -> tuple[tuple[int, ...], ...]:
    rows = w.basis
    return tuple(
        tuple(omega_entries(a, b, sp.p) for b in rows) for a in rows
    )


def is_symplectic_subspace(w: Subspace, sp: SymplecticSpace) -> bool:
    """True iff the restriction of the form to w is nondegenerate."""
    if w.ambient_dim != sp.dim or w.modulus != sp.modulus:
        raise ValueError("ambient mismatch")
    if w.dim % 2 == 1:
        return False
    if w.dim == 0:
        return False
    g = restricted_gram(w, sp)
    _, rank = ffspace.rref(g, sp.modulus)
    return rank == w.dim


def orthogonal_complement(w: Subspace, sp: SymplecticSpace) -> Subspace:
    """{x : omega(b, x) = 0 for all b in w}."""
    if w.is_zero:
        return sp.full()
    gram = sp.gram
    p = sp.p
    rows = []
    for b in w.basis:
        rows.append(tuple(sum(b[i] * gram[i][j] for i in range(sp.dim)) % p for j in range(sp.dim)))
    null = ffspace.nullspace(rows, sp.dim, p)
    return Subspace.from_vectors(null, sp.modulus, sp.dim)


def _parts_orthogonal(a: Subspace, b: Subspace, p: int) -> bool:
    return all(omega_entries(x, y, p) == 0 for x in a.basis for y in b.basis)


@dataclass(frozen=True)
class SymplecticSplitting:
    """An unordered set of pairwise-orthogonal nonzero subspaces whose
    internal direct sum is the whole space; parts are canonically sorted."""

    space: SymplecticSpace
    parts: tuple[Subspace, ...]

    @property
    def k(self) -> int:
        return len(self.parts)

    @property
    def is_trivial(self) -> bool:
        return self.k == 1

    def type_partition(self) -> tuple[int, ...]:
        """Half-dimensions of the parts, descending."""
        return tuple(sorted((q.dim // 2 for q in self.parts), reverse=True))

    def sort_key(self):
        return tuple(q.sort_key() for q in self.parts)


def validate_splitting(parts, sp: SymplecticSpace) -> SymplecticSplitting:
    """Check the splitting conditions and return the canonical value.

    Raises SplittingError naming the first violated condition.  Each part of
    a valid splitting is forced to be a symplectic subspace; that is
    asserted and a failure raises RuntimeError (it would indicate an
    arithmetic bug, not bad input).
    """
    parts = list(parts)
    if not parts:
        raise SplittingError("no parts")
    p = sp.p
    for q in parts:
        if q.ambient_dim != sp.dim or q.modulus != sp.modulus:
            raise SplittingError("part has wrong ambient space")
        if q.is_zero:
            raise SplittingError("part is the zero subspace")
    for i in range(len(parts)):
        for j in range(i + 1, len(parts)):
            if parts[i] == parts[j]:
                raise SplittingError("parts are not distinct")
            if not _parts_orthogonal(parts[i], parts[j], p):
                raise SplittingError(f"parts {i} and {j} are not orthogonal")
    total = sum(q.dim for q in parts)
    if total != sp.dim:
        raise SplittingError("part dimensions do not sum to the ambient dimension")
    stacked = [row for q in parts for row in q.basis]
    if len(echelon_rows(stacked, p)) != sp.dim:
        raise SplittingError("parts do not form a direct sum")
    for q in parts:
        if not is_symplectic_subspace(q, sp):
            raise RuntimeError("orthogonal direct-sum part fails the symplectic check")
    return SymplecticSplitting(sp, tuple(sorted(parts, key=lambda q: q.sort_key())))


def trivial_splitting(sp: SymplecticSpace) -> SymplecticSplitting:
    return SymplecticSplitting(sp, (sp.full(),))


def refinement_leq(s1: SymplecticSplitting, s2: SymplecticSplitting) -> bool:
    """True iff s1 refines s2: every part of s2 is the direct sum of a
    subset of the parts of s1."""
    if s1.space != s2.space:
        raise ValueError("ambient mismatch")
    for big in s2.parts:
        inner = sum(q.dim for q in s1.parts if big.contains(q))
        if inner != big.dim:
            return False
    return True


def component_projection(x, s: SymplecticSplitting, part_index: int) -> FpVector:
    """Component of x in the chosen part under the direct-sum decomposition
    (equals orthogonal projection since distinct parts are orthogonal)."""
    sp = s.space
    ent = entries_of(x)
    if len(ent) != sp.dim:
        raise ValueError("dimension mismatch")
    rows = [row for q in s.parts for row in q.basis]
    solver = _splitting_solver(s)
    coeffs = solver.express(ent)
    assert coeffs is not None
    out = [0] * sp.dim
    offset = sum(q.dim for q in s.parts[:part_index])
    part = s.parts[part_index]
    p = sp.p
    for local_i in range(part.dim):
        c = coeffs[offset + local_i]
        if c:
            row = rows[offset + local_i]
            for j, v in enumerate(row):
                out[j] = (out[j] + c * v) % p
    return FpVector(sp.modulus, tuple(out))


_solver_cache: dict = {}


def _splitting_solver(s: SymplecticSplitting) -> ffspace.RowSolver:
    key = (s.space, s.sort_key())
    solver = _solver_cache.get(key)
    if solver is None:
        rows = [row for q in s.parts for row in q.basis]
        solver = ffspace.RowSolver(rows, s.space.p)
        _solver_cache[key] = solver
    return solver


@lru_cache(maxsize=None)
def symplectic_subspaces(g: int, p: int, dim: int) -> tuple[Subspace, ...]:
    """All symplectic subspaces of F_p^2g of the given even dimension,
    in canonical order."""
    sp = space(g, p)
    if dim % 2 or dim < 2 or dim > sp.dim:
        return ()
    subs = ffspace.enumerate_subspaces(sp.dim, sp.modulus, dim)
    return tuple(w for w in subs if is_symplectic_subspace(w, sp))


def _enumeration_allowed(g: int, p: int, extended: bool) -> bool:
    if g == 1:
        return True
    if g == 2 and p <= 3:
        return True
    if extended and (g, p) in {(2, 5), (3, 2)}:
        return True
    return False


def enumerate_splittings(g: int, p: int, extended: bool = False) -> list[SymplecticSplitting]:
    """All symplectic splittings of F_p^2g, the trivial one included.

    Deduplicated by choosing parts in strictly increasing canonical order;
    the per-type cardinalities match the group-order counting formula and
    are asserted here.
    """
    if not _enumeration_allowed(g, p, extended):
        raise BudgetExceededError(
            f"splitting enumeration at (g={g}, p={p}) needs extended mode or is out of budget"
        )
    sp = space(g, p)
    by_dim = {d: symplectic_subspaces(g, p, d) for d in range(2, sp.dim + 1, 2)}
    by_dim[sp.dim] = (sp.full(),)
    out: list[SymplecticSplitting] = []

    def extend(parts, span_rows, last_key):
        covered = len(span_rows)
        if covered == sp.dim:
            out.append(SymplecticSplitting(sp, tuple(parts)))
            return
        remaining = sp.dim - covered
        for d in range(2, remaining + 1, 2):
            for w in by_dim.get(d, ()):
                key = w.sort_key()
                if last_key is not None and key <= last_key:
                    continue
                if not all(
                    omega_entries(row, srow, p) == 0 for row in w.basis for srow in span_rows
                ):
                    continue
                new_rows = span_rows
                ok = True
                for row in w.basis:
                    new_rows, grew = ffspace.echelon_insert(new_rows, row, p)
                    if not grew:
                        ok = False
                        break
                if not ok:
                    continue
                extend(parts + [w], new_rows, key)

    extend([], (), None)
    counts: dict[tuple[int, ...], int] = {}
    for s in out:
        counts[s.type_partition()] = counts.get(s.type_partition(), 0) + 1
    for part in partitions(g):
        expected = splitting_count(part, g, p, ordered=False)
        got = counts.get(part.expanded(), 0)
        if got != expected:
            raise RuntimeError(
                f"splitting enumeration mismatch for type {part}: {got} != {expected}"
            )
    out.sort(key=lambda s: s.sort_key())
    return out


@dataclass(frozen=True)
class SeparationResult:
    """Connected components of the non-orthogonality graph of a basis."""

    components: tuple[tuple[int, ...], ...]
    splitting: SymplecticSplitting
    separated: bool


def separation_components(vectors, sp: SymplecticSpace) -> SeparationResult:
    """Partition the index set of a basis by the non-orthogonality graph.

    Vertices are indices; (i, j) is an edge iff omega(v_i, v_j) != 0.  The
    component spans form a symplectic splitting (validated); the basis is
    separated iff the graph is disconnected.
    """
    ents = [entries_of(v) for v in vectors]
    n = sp.dim
    p = sp.p
    if len(ents) != n or len(echelon_rows(ents, p)) != n:
        raise NotABasisError("input is not a basis of the ambient space")
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i in range(n):
        for j in range(i + 1, n):
            if omega_entries(ents[i], ents[j], p):
                ra, rb = find(i), find(j)
                if ra != rb:
                    parent[rb] = ra
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    comps = tuple(sorted(tuple(sorted(v)) for v in groups.values()))
    parts = [
        Subspace.from_vectors([ents[i] for i in comp], sp.modulus, n) for comp in comps
    ]
    splitting = validate_splitting(parts, sp)
    return SeparationResult(comps, splitting, len(comps) > 1)


def symplectic_basis(w: Subspace, sp: SymplecticSpace) -> tuple[tuple[int, ...], ...]:
    """Deterministic interleaved hyperbolic basis (u1, w1, u2, w2, ...) of a
    symplectic subspace: omega(u_i, w_i) = 1, all other pairings zero.

    Greedy pairing on the canonical echelon basis: take the first basis row,
    scale the first non-orthogonal partner, project the rest into the
    complement of the pair, re-echelonize, repeat.
    """
    p = sp.p
    if w.dim % 2:
        raise SplittingError("odd-dimensional subspace has no symplectic basis")
    out: list[tuple[int, ...]] = []
    work = list(w.basis)
    while work:
        u = work[0]
        partner = None
        for cand in work[1:]:
            c = omega_entries(u, cand, p)
            if c:
                partner = ffspace.vscale(pow(c, p - 2, p), cand, p)
                break
        if partner is None:
            raise SplittingError("subspace is degenerate: no hyperbolic partner")
        out.append(u)
        out.append(partner)
        projected = []
        for r in work[1:]:
            a = omega_entries(r, partner, p)
            b = omega_entries(r, u, p)
            r2 = tuple(
                (x - a * y + b * z) % p for x, y, z in zip(r, u, partner)
            )
            if any(r2):
                projected.append(r2)
        work = list(echelon_rows(projected, p))
    return tuple(out)


def is_separated_bruteforce(vectors, sp: SymplecticSpace, splittings) -> bool:
    """Oracle: separated iff some 2-part splitting has every vector inside
    one of its two parts.  splittings must enumerate all of them."""
    ents = [entries_of(v) for v in vectors]
    for s in splittings:
        if s.k != 2:
            continue
        a, b = s.parts
        if all(a.contains_vector(v) or b.contains_vector(v) for v in ents):
            return True
    return False


def chain_bases(g: int, p: int, extended: bool = False) -> list[tuple[FpVector, ...]]:
    """All ordered bases (v_1, ..., v_2g) with omega(v_i, v_{i+1}) = 1 and
    omega(v_i, v_j) = 0 for |i - j| > 1.

    Tuples failing the basis condition would be excluded, but the chain
    conditions force independence (the constraint Gram matrix is
    unimodular), so the filter never fires.
    """
    if not (g == 1 or (g == 2 and p <= 3) or (extended and (g, p) in {(2, 5), (3, 2)})):
        raise BudgetExceededError(
            f"chain-basis enumeration at (g={g}, p={p}) needs extended mode or is out of budget"
        )
    sp = space(g, p)
    n = sp.dim
    gram = sp.gram
    out: list[tuple[FpVector, ...]] = []

    def functional(v):
        return tuple(sum(v[i] * gram[i][j] for i in range(n)) % p for j in range(n))

    def extend(chosen):
        k = len(chosen)
        if k == n:
            if len(echelon_rows(chosen, p)) == n:
                out.append(tuple(FpVector(sp.modulus, v) for v in chosen))
            return
        rows = [functional(v) for v in chosen]
        rhs = [0] * k
        if k:
            rhs[-1] = 1
            sol = solve_linear_system(rows, rhs, p)
            if sol is None:
                return
            particular, null_rows = sol
            for coeffs in product(range(p), repeat=len(null_rows)):
                v = list(particular)
                for c, row in zip(coeffs, null_rows):
                    if c:
                        for j, x in enumerate(row):
                            v[j] = (v[j] + c * x) % p
                if any(v):
                    extend(chosen + [tuple(v)])
        else:
            for v in ffspace.all_nonzero_vectors(n, p):
                extend([v])

    extend([])
    return out
