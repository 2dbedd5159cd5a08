"""Matroids on ``{0, ..., n-1}`` presented by their bases.

A matroid is stored as the ascending tuple of its bases (bitmasks).  Two
matroids are equal iff their tuples are equal; labelled matroids are never
identified up to isomorphism.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Iterable, NamedTuple

import numpy as np

from . import bits
from .bits import elements, full, popcount, subsets_of_size
from .errors import (
    EmptyFamily,
    ExchangeViolation,
    InvalidCertificate,
    MatroidError,
    NotIsolated,
    PreconditionViolated,
    TooLarge,
    WrongCardinality,
)

# Bulk queries tabulate all 2^n subsets.
TABLE_MAX_N = 16


class FlatWithRank(NamedTuple):
    flat: int
    rank: int

    def covers(self, x: int) -> bool:
        return popcount(x & self.flat) > self.rank


def flat_covers_set(f: FlatWithRank, x: int) -> bool:
    """True if ``|x & f.flat| > f.rank``, i.e. ``f`` certifies ``x`` dependent."""
    return popcount(x & f.flat) > f.rank


def _containment_table(n: int, bases: Iterable[int]) -> bytes:
    """Byte ``S`` is 1 iff the set ``S`` contains some basis."""
    arr = np.zeros(1 << n, dtype=np.bool_)
    arr[list(bases)] = True
    for i in range(n):
        view = arr.reshape(-1, 2, 1 << i)
        view[:, 1, :] |= view[:, 0, :]
    return arr.tobytes()


def find_exchange_violation(n: int, bases: tuple[int, ...]) -> tuple[int, int, int] | None:
    """Return ``(B, B2, e)`` violating basis exchange, or None if none exists.

    For fixed ``B`` and ``e`` let ``ok`` be the set of ``f`` with ``B - e + f`` a
    basis.  Exchange fails for some ``B2`` iff ``B2`` avoids both ``e`` and ``ok``.
    """
    base_set = set(bases)
    ground = full(n)
    table = None
    if n <= 20 and len(bases) > 8:
        table = _containment_table(n, bases)
    for b in bases:
        outside = elements(ground & ~b)
        for e in elements(b):
            be = b ^ (1 << e)
            ok = 0
            for f in outside:
                if be | (1 << f) in base_set:
                    ok |= 1 << f
            avoid = ok | (1 << e)
            if table is not None and not table[ground & ~avoid]:
                continue
            for b2 in bases:
                if not b2 & avoid:
                    return b, b2, e
    return None


@dataclass(frozen=True)
class Matroid:
    """Matroid of rank ``r`` on ``n`` elements.

    Build instances with :func:`matroid_from_bases`; the constructor itself
    trusts its arguments.
    """

    n: int
    r: int
    bases: tuple[int, ...]

    @property
    def ground(self) -> int:
        return full(self.n)

    def __repr__(self) -> str:
        shown = ", ".join("{" + ",".join(map(str, elements(b))) + "}" for b in self.bases[:6])
        more = ", ..." if len(self.bases) > 6 else ""
        return f"Matroid(n={self.n}, r={self.r}, bases=[{shown}{more}])"

    @cached_property
    def _base_set(self) -> frozenset[int]:
        return frozenset(self.bases)

    def is_basis(self, x: int) -> bool:
        return x in self._base_set

    def rank(self, x: int) -> int:
        """Largest ``|B & x|`` over bases ``B``."""
        if self.n <= TABLE_MAX_N:
            return int(self.rank_table[x])
        return self._rank_scan(x)

    def _rank_scan(self, x: int) -> int:
        cap = min(popcount(x), self.r)
        best = 0
        for b in self.bases:
            k = popcount(b & x)
            if k > best:
                best = k
                if best == cap:
                    break
        return best

    def is_independent(self, x: int) -> bool:
        return any(not x & ~b for b in self.bases)

    def is_dependent(self, x: int) -> bool:
        return not self.is_independent(x)

    def closure(self, x: int) -> int:
        if self.n <= TABLE_MAX_N:
            return int(self.closure_table[x])
        rx = self.rank(x)
        cl = x
        for e in elements(self.ground & ~x):
            if self.rank(x | (1 << e)) == rx:
                cl |= 1 << e
        return cl

    def flat_with_rank(self, x: int) -> FlatWithRank:
        """``(cl(x), r(x))``."""
        return FlatWithRank(self.closure(x), self.rank(x))

    def non_bases(self) -> list[int]:
        bs = self._base_set
        return [x for x in subsets_of_size(self.n, self.r) if x not in bs]

    def dual(self) -> Matroid:
        g = self.ground
        return Matroid(self.n, self.n - self.r, tuple(sorted(g & ~b for b in self.bases)))

    def unique_circuit(self, x: int) -> int:
        """The circuit inside an r-set of rank ``r - 1``."""
        if popcount(x) != self.r or self.rank(x) != self.r - 1:
            raise PreconditionViolated("unique_circuit needs an r-set of rank r-1")
        c = x
        for e in elements(x):
            smaller = c & ~(1 << e)
            if self.is_dependent(smaller):
                c = smaller
        return c

    # Whole-lattice queries, tabulated over all subsets.

    def _require_table(self) -> None:
        if self.n > TABLE_MAX_N:
            raise TooLarge(f"subset-lattice queries are capped at n <= {TABLE_MAX_N}")

    @cached_property
    def independent_table(self) -> np.ndarray:
        """``independent_table[X]`` is True iff ``X`` lies inside some basis."""
        self._require_table()
        indep = np.zeros(1 << self.n, dtype=np.bool_)
        indep[list(self.bases)] = True
        for i in range(self.n):
            view = indep.reshape(-1, 2, 1 << i)
            view[:, 0, :] |= view[:, 1, :]
        return indep

    @cached_property
    def rank_table(self) -> np.ndarray:
        """``rank_table[X] == rank(X)`` for every subset ``X``."""
        self._require_table()
        n = self.n
        indep = self.independent_table
        sizes = np.bitwise_count(np.arange(1 << n, dtype=np.uint64)).astype(np.int8)
        rk = np.where(indep, sizes, 0).astype(np.int8)
        for i in range(n):
            view = rk.reshape(-1, 2, 1 << i)
            np.maximum(view[:, 1, :], view[:, 0, :], out=view[:, 1, :])
        return rk

    @cached_property
    def closure_table(self) -> np.ndarray:
        self._require_table()
        rk = self.rank_table
        idx = np.arange(1 << self.n, dtype=np.int64)
        cl = idx.copy()
        for e in range(self.n):
            same = rk[idx | (1 << e)] == rk
            cl |= same.astype(np.int64) << e
        return cl

    def circuits(self) -> list[int]:
        """Minimal dependent sets, ascending."""
        self._require_table()
        n = self.n
        rk = self.rank_table
        idx = np.arange(1 << n, dtype=np.int64)
        sizes = np.bitwise_count(idx.astype(np.uint64)).astype(np.int8)
        dep = rk < sizes
        minimal = dep.copy()
        for e in range(n):
            has = (idx >> e) & 1 == 1
            minimal &= ~has | ~dep[idx & ~(1 << e)]
        return [int(c) for c in np.flatnonzero(minimal)]

    def flats(self) -> list[FlatWithRank]:
        cl = self.closure_table
        idx = np.arange(1 << self.n, dtype=np.int64)
        rk = self.rank_table
        return [FlatWithRank(int(f), int(rk[f])) for f in np.flatnonzero(cl == idx)]

    def is_paving(self) -> bool:
        """Every circuit has at least ``r`` elements.

        Checked as: every (r-1)-set is independent, which is equivalent.
        """
        if self.r == 0:
            return True
        if self.n <= TABLE_MAX_N:
            below = np.fromiter(subsets_of_size(self.n, self.r - 1), dtype=np.int64)
            return bool(self.independent_table[below].all())
        return all(self.is_independent(x) for x in subsets_of_size(self.n, self.r - 1))

    def is_sparse_paving(self) -> bool:
        return self.is_paving() and self.dual().is_paving()


def matroid_from_bases(n: int, r: int, candidate_bases: Iterable[int]) -> Matroid:
    """Validate a base family and return the canonical matroid.

    Raises EmptyFamily, WrongCardinality or ExchangeViolation.
    """
    if not 0 <= r <= n <= bits.MAX_N:
        raise ValueError(f"need 0 <= r <= n <= {bits.MAX_N}, got n={n}, r={r}")
    bases = tuple(sorted(set(candidate_bases)))
    if not bases:
        raise EmptyFamily()
    for b in bases:
        if b < 0 or b >> n or popcount(b) != r:
            raise WrongCardinality(b, r)
    bad = find_exchange_violation(n, bases)
    if bad is not None:
        raise ExchangeViolation(*bad)
    return Matroid(n, r, bases)


def uniform(r: int, n: int) -> Matroid:
    return Matroid(n, r, tuple(subsets_of_size(n, r)))


def free(n: int) -> Matroid:
    return Matroid(n, n, (full(n),))


# Piff's closure-of-circuits description.


def piff_encode(m: Matroid) -> frozenset[FlatWithRank]:
    """``{(cl(C), r(C)) : C a circuit}``."""
    cl = m.closure_table
    rk = m.rank_table
    return frozenset(FlatWithRank(int(cl[c]), int(rk[c])) for c in m.circuits())


def bases_avoiding(n: int, r: int, flats: Iterable[FlatWithRank], excluded: Iterable[int] = ()) -> list[int]:
    """r-sets covered by none of ``flats`` and not listed in ``excluded``."""
    verts = np.fromiter(subsets_of_size(n, r), dtype=np.uint64)
    keep = np.ones(len(verts), dtype=np.bool_)
    for f, k in flats:
        keep &= np.bitwise_count(verts & np.uint64(f)) <= k
    skip = set(excluded)
    return [x for x in map(int, verts[keep]) if x not in skip]


def piff_decode(n: int, r: int, entries: Iterable[FlatWithRank]) -> Matroid:
    try:
        return matroid_from_bases(n, r, bases_avoiding(n, r, entries))
    except MatroidError as exc:
        raise InvalidCertificate(f"Piff collection does not decode to a matroid: {exc}") from exc


# Circuit-hyperplane relaxation.


def isolated_non_bases(m: Matroid) -> list[int]:
    """Non-bases with no neighbouring non-basis in J(n, r)."""
    nb = m.non_bases()
    nb_set = set(nb)
    out = []
    outside_of = full(m.n)
    for x in nb:
        if not any(
            (x ^ (1 << e) ^ (1 << f)) in nb_set
            for e in elements(x)
            for f in elements(outside_of & ~x)
        ):
            out.append(x)
    return out


def relax(m: Matroid, u: Iterable[int]) -> Matroid:
    """Add the isolated non-bases ``u`` to the bases of ``m``."""
    if not 0 < m.r < m.n:
        raise PreconditionViolated("relaxation needs 0 < r < n")
    u = sorted(set(u))
    nb = set(m.non_bases())
    ground = full(m.n)
    for x in u:
        if x not in nb:
            raise PreconditionViolated(f"{x:#x} is not a non-basis")
        for e in elements(x):
            for f in elements(ground & ~x):
                if (x ^ (1 << e) ^ (1 << f)) in nb:
                    raise NotIsolated(x)
    return matroid_from_bases(m.n, m.r, m.bases + tuple(u))


def strip_circuit_hyperplanes(m: Matroid) -> tuple[Matroid, list[int]]:
    """Relax every circuit-hyperplane; returns the relaxed matroid and the list relaxed."""
    if not 0 < m.r < m.n:
        raise PreconditionViolated("relaxation needs 0 < r < n")
    u = isolated_non_bases(m)
    return relax(m, u), u


def unrelax(m: Matroid, u: Iterable[int]) -> Matroid:
    """Inverse of :func:`relax`: drop ``u`` from the bases."""
    drop = set(u)
    return matroid_from_bases(m.n, m.r, [b for b in m.bases if b not in drop])


# Text format, version 1.

HEADER = "matroid"


def dumps(m: Matroid) -> str:
    lines = [f"{HEADER} 1 {m.n} {m.r}"]
    lines.extend(bits.format_set(b) for b in m.bases)
    return "\n".join(lines) + "\n"


def loads(text: str) -> Matroid:
    """Parse and validate.  A rank-0 matroid has the single basis {} whatever follows."""
    lines = [ln.strip() for ln in io.StringIO(text)]
    body = [ln for ln in lines if ln and not ln.startswith("#")]
    if not body:
        raise MatroidError("empty matroid file")
    head = body[0].split()
    if len(head) != 4 or head[0] != HEADER or head[1] != "1":
        raise MatroidError(f"bad header: {body[0]!r}")
    n, r = int(head[2]), int(head[3])
    if r == 0:
        return matroid_from_bases(n, 0, [0])
    return matroid_from_bases(n, r, [bits.parse_set(ln) for ln in body[1:]])


def read_matroid(path: str | Path) -> Matroid:
    return loads(Path(path).read_text(encoding="utf-8"))


def write_matroid(m: Matroid, path: str | Path) -> None:
    Path(path).write_text(dumps(m), encoding="utf-8", newline="\n")
