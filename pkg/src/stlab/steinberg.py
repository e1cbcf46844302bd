"""Apartment classes over the complete-flag basis and the span engine.

An apartment class is the signed permutation sum of the complete flags of
partial spans of an ordered vector tuple; it is an exact integer vector
indexed by complete flags.  SpanBasis is the incremental rank engine:
modular elimination against one or more word-size primes by default, with
an exact big-integer mode.  Modular rank never exceeds rational rank, so
hitting a known theoretical ceiling certifies the result.
"""

from __future__ import annotations

import pickle
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import lcm

import numpy as np

from .building import BuildingContext, build_context
from .counting import steinberg_dim
from .errors import RankEngineError, RelationCheckError
from .ffspace import (
    echelon_insert,
    echelon_rows,
    entries_of,
    is_prime,
    projective_points,
    vadd,
    vscale,
)

# Default rank-engine primes: the first two primes above 2^24, small enough
# that a reduction step's int64 accumulation cannot overflow for ranks up
# to 16384 per chunk.
def _next_prime(n: int) -> int:
    while not is_prime(n):
        n += 1
    return n


_P1 = _next_prime((1 << 24) + 1)
DEFAULT_PRIMES = (_P1, _next_prime(_P1 + 1))

DENSE_COLUMN_LIMIT = 100_000
SNAPSHOT_FORMAT_VERSION = 1


@dataclass(frozen=True, eq=False)
class ApartmentClass:
    """Sparse integer vector over complete-flag coordinates."""

    ctx: BuildingContext
    coeffs: dict

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def support_size(self) -> int:
        return len(self.coeffs)

    def scaled(self, c: int) -> "ApartmentClass":
        if c == 0:
            return ApartmentClass(self.ctx, {})
        return ApartmentClass(self.ctx, {k: c * v for k, v in self.coeffs.items()})


def add_sparse(a: dict, b: dict, scale: int = 1) -> dict:
    out = dict(a)
    for k, v in b.items():
        nv = out.get(k, 0) + scale * v
        if nv:
            out[k] = nv
        elif k in out:
            del out[k]
    return out


def apartment(vectors, ctx: BuildingContext) -> ApartmentClass:
    """The apartment class of an ordered tuple of n nonzero vectors.

    Zero class when the tuple is not a basis; otherwise the support holds
    exactly n! flags with coefficients +-1.
    """
    n, p = ctx.n, ctx.p
    ents = [entries_of(v) for v in vectors]
    if len(ents) != n:
        raise ValueError(f"need exactly {n} vectors")
    for e in ents:
        if len(e) != n:
            raise ValueError("vector length mismatch")
        if not any(x % p for x in e):
            raise ValueError("zero vector in apartment tuple")
    ents = [tuple(x % p for x in e) for e in ents]
    if len(echelon_rows(ents, p)) < n:
        return ApartmentClass(ctx, {})

    coeffs: dict = {}
    subspace_index = ctx.subspace_index
    flag_index = ctx.flag_index

    def dfs(rows, used_mask, prefix, parity, depth):
        for j in range(n):
            if used_mask >> j & 1:
                continue
            skipped = 0
            for t in range(j):
                if not (used_mask >> t & 1):
                    skipped += 1
            new_rows, grew = echelon_insert(rows, ents[j], p)
            assert grew
            idx = subspace_index(depth + 1, new_rows)
            new_parity = parity ^ (skipped & 1)
            if depth + 1 == n - 1:
                fidx = flag_index(tuple(prefix + [idx]))
                coeffs[fidx] = 1 if new_parity == 0 else -1
            else:
                dfs(new_rows, used_mask | (1 << j), prefix + [idx], new_parity, depth + 1)

    dfs((), 0, [], 0, 0)
    return ApartmentClass(ctx, coeffs)


def staircase_tuples(n: int, p: int):
    """Unitriangular bases, one per matrix with unit diagonal and free
    entries below it: a fast-saturating deterministic generator block."""
    free = [(i, j) for i in range(n) for j in range(i)]
    from itertools import product

    for values in product(range(p), repeat=len(free)):
        rows = [[0] * n for _ in range(n)]
        for i in range(n):
            rows[i][i] = 1
        for (i, j), v in zip(free, values):
            rows[i][j] = v
        yield tuple(tuple(r) for r in rows)


def normalized_tuples(n: int, p: int):
    """Normalized apartment representatives: sorted tuples of projective
    points, in lexicographic order.  Non-bases are included (their
    apartment classes vanish)."""
    pts = projective_points(n, p)
    yield from combinations(pts, n)


def apartment_generator_stream(n: int, p: int):
    yield from staircase_tuples(n, p)
    yield from normalized_tuples(n, p)


class _DenseModularEngine:
    """Dense RREF elimination mod q on numpy int64 rows."""

    def __init__(self, q: int, ncols: int):
        self.q = q
        self.ncols = ncols
        self.rank = 0
        self._cap = 64
        self._mat = np.zeros((self._cap, ncols), dtype=np.int64)
        self._pivcols = np.zeros(self._cap, dtype=np.int64)
        # rows per accumulation chunk so sums of (q-1)^2 terms fit in int64
        self._chunk = max(1, (1 << 62) // ((q - 1) ** 2))

    def _as_array(self, coeffs: dict) -> np.ndarray:
        v = np.zeros(self.ncols, dtype=np.int64)
        for k, val in coeffs.items():
            v[k] = val % self.q
        return v

    def reduce(self, v: np.ndarray) -> np.ndarray:
        q = self.q
        r = self.rank
        v = v % q
        if r:
            cols = self._pivcols[:r]
            coeffs = v[cols]
            nz = np.nonzero(coeffs)[0]
            if nz.size:
                if nz.size <= self._chunk:
                    v = (v - coeffs[nz] @ self._mat[:r][nz]) % q
                else:
                    for s in range(0, nz.size, self._chunk):
                        part = nz[s : s + self._chunk]
                        v = (v - coeffs[part] @ self._mat[:r][part]) % q
        return v

    def insert(self, coeffs: dict) -> bool:
        v = self.reduce(self._as_array(coeffs))
        nz = np.nonzero(v)[0]
        if nz.size == 0:
            return False
        c = int(nz[0])
        inv = pow(int(v[c]), self.q - 2, self.q)
        v = (v * inv) % self.q
        r = self.rank
        if r:
            col = self._mat[:r, c].copy()
            rows_nz = np.nonzero(col)[0]
            if rows_nz.size:
                self._mat[rows_nz] = (
                    self._mat[rows_nz] - col[rows_nz, None] * v[None, :]
                ) % self.q
        if r == self._cap:
            self._cap *= 2
            mat = np.zeros((self._cap, self.ncols), dtype=np.int64)
            mat[:r] = self._mat
            self._mat = mat
            piv = np.zeros(self._cap, dtype=np.int64)
            piv[:r] = self._pivcols[:r]
            self._pivcols = piv
        self._mat[r] = v
        self._pivcols[r] = c
        self.rank = r + 1
        return True

    def state(self):
        return {
            "kind": "dense",
            "q": self.q,
            "ncols": self.ncols,
            "rows": self._mat[: self.rank].tolist(),
            "pivcols": self._pivcols[: self.rank].tolist(),
        }

    @classmethod
    def from_state(cls, st):
        eng = cls(st["q"], st["ncols"])
        rows = st["rows"]
        while eng._cap < max(64, len(rows)):
            eng._cap *= 2
        eng._mat = np.zeros((eng._cap, eng.ncols), dtype=np.int64)
        eng._pivcols = np.zeros(eng._cap, dtype=np.int64)
        for i, row in enumerate(rows):
            eng._mat[i] = row
            eng._pivcols[i] = st["pivcols"][i]
        eng.rank = len(rows)
        return eng


class _SparseModularEngine:
    """Profile-form sparse elimination mod q; rows keyed by pivot column."""

    def __init__(self, q: int, ncols: int):
        self.q = q
        self.ncols = ncols
        self.rows: dict = {}
        self.rank = 0

    def insert(self, coeffs: dict) -> bool:
        q = self.q
        d = {}
        for k, v in coeffs.items():
            v %= q
            if v:
                d[k] = v
        while d:
            c = min(d)
            row = self.rows.get(c)
            if row is None:
                inv = pow(d[c], q - 2, q)
                norm = {}
                for k, v in d.items():
                    nv = (v * inv) % q
                    if nv:
                        norm[k] = nv
                self.rows[c] = norm
                self.rank += 1
                return True
            f = d[c]
            for k, v in row.items():
                nv = (d.get(k, 0) - f * v) % q
                if nv:
                    d[k] = nv
                elif k in d:
                    del d[k]
        return False

    def state(self):
        return {"kind": "sparse", "q": self.q, "ncols": self.ncols, "rows": self.rows}

    @classmethod
    def from_state(cls, st):
        eng = cls(st["q"], st["ncols"])
        eng.rows = {int(k): {int(a): b for a, b in row.items()} for k, row in st["rows"].items()}
        eng.rank = len(eng.rows)
        return eng


class _ExactEngine:
    """Fraction-free integer elimination; rows keyed by pivot column."""

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows: dict = {}
        self.rank = 0

    @staticmethod
    def _strip(d: dict) -> dict:
        from math import gcd

        g = 0
        for v in d.values():
            g = gcd(g, v)
        if g > 1:
            d = {k: v // g for k, v in d.items()}
        return d

    def insert(self, coeffs: dict) -> bool:
        d = {k: int(v) for k, v in coeffs.items() if v}
        while d:
            c = min(d)
            row = self.rows.get(c)
            if row is None:
                d = self._strip(d)
                if d[c] < 0:
                    d = {k: -v for k, v in d.items()}
                self.rows[c] = d
                self.rank += 1
                return True
            pv = row[c]
            f = d[c]
            nd = {}
            for k in set(d) | set(row):
                val = d.get(k, 0) * pv - f * row.get(k, 0)
                if val:
                    nd[k] = val
            d = self._strip(nd)
        return False

    def state(self):
        return {"kind": "exact", "ncols": self.ncols, "rows": self.rows}

    @classmethod
    def from_state(cls, st):
        eng = cls(st["ncols"])
        eng.rows = {int(k): dict(row) for k, row in st["rows"].items()}
        eng.rank = len(eng.rows)
        return eng


def _integerize(coeffs: dict) -> dict:
    """Clear Fraction denominators (rank is scale-invariant)."""
    out = {}
    denoms = 1
    for v in coeffs.values():
        if isinstance(v, Fraction):
            denoms = lcm(denoms, v.denominator)
    for k, v in coeffs.items():
        iv = int(v * denoms) if isinstance(v, Fraction) else int(v) * denoms
        if iv:
            out[k] = iv
    return out


class SpanBasis:
    """Incrementally saturated echelon span of flag-coordinate vectors.

    Runs every configured engine (several modular primes, or one exact
    big-integer engine) in lockstep; a disagreement between engines raises
    RankEngineError and demands an exact rerun.  Optionally records the
    payload of every rank-increasing insertion, which lets callers recover
    a generating basis.
    """

    def __init__(self, ncols: int, primes=None, exact: bool = False, record_payloads: bool = False):
        self.ncols = ncols
        self.exact = exact
        self.inserted = 0
        if exact:
            self.primes = ()
            self._engines = [_ExactEngine(ncols)]
        else:
            self.primes = tuple(primes) if primes else DEFAULT_PRIMES
            if len(set(self.primes)) != len(self.primes):
                raise ValueError("rank-engine primes must be distinct")
            for q in self.primes:
                if not is_prime(q):
                    raise ValueError(f"rank-engine modulus {q} is not prime")
            if ncols <= DENSE_COLUMN_LIMIT:
                self._engines = [_DenseModularEngine(q, ncols) for q in self.primes]
            else:
                self._engines = [_SparseModularEngine(q, ncols) for q in self.primes]
        self.payloads: list | None = [] if record_payloads else None

    @property
    def rank(self) -> int:
        ranks = {eng.rank for eng in self._engines}
        if len(ranks) != 1:
            raise RankEngineError(f"engine ranks disagree: {sorted(ranks)}; rerun exact")
        return ranks.pop()

    def insert(self, coeffs: dict, payload=None) -> bool:
        self.inserted += 1
        ints = _integerize(coeffs)
        if not ints:
            return False
        results = [eng.insert(ints) for eng in self._engines]
        if len(set(results)) != 1:
            raise RankEngineError(
                f"modular engines disagree on insertion {self.inserted}; rerun exact"
            )
        if results[0] and self.payloads is not None:
            self.payloads.append(payload)
        return results[0]

    def contains(self, coeffs: dict) -> bool:
        """Membership test: true iff inserting would not increase the rank.

        Mutates the span when the vector is outside it, so callers use it
        on spans they own.  Exact engines give a sound answer; modular
        engines can only err toward 'not contained'.
        """
        return not self.insert(coeffs)

    def save(self, path):
        blob = {
            "format_version": SNAPSHOT_FORMAT_VERSION,
            "ncols": self.ncols,
            "exact": self.exact,
            "primes": self.primes,
            "inserted": self.inserted,
            "engines": [eng.state() for eng in self._engines],
            "payloads": self.payloads,
        }
        with open(path, "wb") as fh:
            pickle.dump(blob, fh)

    @classmethod
    def load(cls, path) -> "SpanBasis":
        with open(path, "rb") as fh:
            blob = pickle.load(fh)
        if blob.get("format_version") != SNAPSHOT_FORMAT_VERSION:
            raise ValueError("unsupported snapshot format version")
        self = cls.__new__(cls)
        self.ncols = blob["ncols"]
        self.exact = blob["exact"]
        self.primes = tuple(blob["primes"])
        self.inserted = blob["inserted"]
        kinds = {"dense": _DenseModularEngine, "sparse": _SparseModularEngine, "exact": _ExactEngine}
        self._engines = [kinds[st["kind"]].from_state(st) for st in blob["engines"]]
        self.payloads = blob["payloads"]
        return self


def span_dim(generators, ncols: int, ceiling: int | None = None, primes=None, exact: bool = False) -> int:
    """Rank of the span of a stream of ApartmentClass values (or raw coeff
    dicts), with early exit at a caller-supplied theoretical ceiling."""
    engine = SpanBasis(ncols, primes=primes, exact=exact)
    for gen in generators:
        coeffs = gen.coeffs if isinstance(gen, ApartmentClass) else gen
        engine.insert(coeffs)
        if ceiling is not None and engine.rank >= ceiling:
            break
    return engine.rank


def st_dim(
    n: int,
    p: int,
    ctx: BuildingContext | None = None,
    exact: bool | None = None,
    primes=None,
    snapshot_path=None,
    checkpoint_every: int = 50_000,
) -> int:
    """Dimension of the span of all apartment classes of F_p^n.

    Saturates a deterministic generator stream and stops at the ceiling
    p^(n choose 2); exhausting the stream below the ceiling is a hard
    error.  Exact elimination is mandatory for n <= 3 and optional above.
    """
    if ctx is None:
        ctx = build_context(n, p)
    if exact is None:
        exact = n <= 3
    ceiling = steinberg_dim(n, p)
    engine = None
    skip = 0
    if snapshot_path is not None:
        import os

        if os.path.exists(snapshot_path):
            engine = SpanBasis.load(snapshot_path)
            skip = engine.inserted
    if engine is None:
        engine = SpanBasis(ctx.flag_count, primes=primes, exact=exact)
    seen = 0
    for tup in apartment_generator_stream(n, p):
        seen += 1
        if seen <= skip:
            continue
        cls = apartment(tup, ctx)
        if cls.is_zero:
            engine.inserted += 1
        else:
            engine.insert(cls.coeffs)
        if engine.rank >= ceiling:
            return engine.rank
        if snapshot_path is not None and engine.inserted % checkpoint_every == 0:
            engine.save(snapshot_path)
    raise RankEngineError(
        f"apartment span saturated at {engine.rank} < ceiling {ceiling} for (n={n}, p={p})"
    )


@dataclass
class RelationReport:
    """Outcome of the randomized apartment-relation suite."""

    n: int
    p: int
    samples: int
    passed: dict = field(default_factory=dict)

    @property
    def all_passed(self) -> bool:
        return all(v == self.samples for v in self.passed.values())


def _random_nonzero_vector(rng, n, p):
    while True:
        v = tuple(rng.randrange(p) for _ in range(n))
        if any(v):
            return v


def _random_basis(rng, n, p):
    while True:
        vs = [_random_nonzero_vector(rng, n, p) for _ in range(n)]
        if len(echelon_rows(vs, p)) == n:
            return vs


def relation_checks(ctx: BuildingContext, samples: int = 1000, seed: int = 0) -> RelationReport:
    """Randomized verification of the four apartment-class relations:
    (1) nonzero iff basis, (2) permutation sign, (3) scalar invariance,
    (4) alternating sums over (n+1)-tuples vanish.  Aborts with a
    counterexample dump on any failure."""
    n, p = ctx.n, ctx.p
    rng = random.Random(seed)
    report = RelationReport(n=n, p=p, samples=samples)

    def fail(name, detail):
        raise RelationCheckError(f"relation {name} failed at (n={n}, p={p}): {detail}")

    count = 0
    for _ in range(samples):
        if rng.random() < 0.5:
            vs = _random_basis(rng, n, p)
            if rng.random() < 0.5:
                # overwrite one vector with a combination of two others
                i, a, b = rng.sample(range(n), 3) if n >= 3 else (0, 1, 1)
                comb = vadd(vs[a], vscale(rng.randrange(1, p) if p > 2 else 1, vs[b], p), p)
                if any(comb):
                    vs[i] = comb
        else:
            vs = [_random_nonzero_vector(rng, n, p) for _ in range(n)]
        is_basis = len(echelon_rows(vs, p)) == n
        cls = apartment(vs, ctx)
        if cls.is_zero == is_basis:
            fail("nonzero-iff-basis", vs)
        if not cls.is_zero:
            if cls.support_size != _factorial(n) or set(cls.coeffs.values()) - {1, -1}:
                fail("support-structure", vs)
        count += 1
    report.passed["nonzero_iff_basis"] = count

    count = 0
    for _ in range(samples):
        vs = _random_basis(rng, n, p)
        perm = list(range(n))
        rng.shuffle(perm)
        sign = _perm_sign(perm)
        a = apartment(vs, ctx)
        b = apartment([vs[i] for i in perm], ctx)
        if a.coeffs != {k: sign * v for k, v in b.coeffs.items()}:
            fail("permutation-sign", (vs, perm))
        count += 1
    report.passed["permutation_sign"] = count

    count = 0
    for _ in range(samples):
        vs = _random_basis(rng, n, p)
        scalars = [rng.randrange(1, p) for _ in range(n)]
        scaled = [vscale(c, v, p) for c, v in zip(scalars, vs)]
        if apartment(vs, ctx).coeffs != apartment(scaled, ctx).coeffs:
            fail("scalar-invariance", (vs, scalars))
        count += 1
    report.passed["scalar_invariance"] = count

    count = 0
    for _ in range(samples):
        ws = [_random_nonzero_vector(rng, n, p) for _ in range(n + 1)]
        total: dict = {}
        for i in range(n + 1):
            sub = ws[:i] + ws[i + 1 :]
            cls = apartment(sub, ctx)
            if not cls.is_zero:
                total = add_sparse(total, cls.coeffs, scale=(-1) ** i)
        if total:
            fail("alternating-sum", ws)
        count += 1
    report.passed["alternating_sum"] = count
    return report


def _factorial(n: int) -> int:
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


def _perm_sign(perm) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j = i
        length = 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign
