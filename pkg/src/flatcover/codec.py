"""Lossless matroid certificates built from local flat covers.

A certificate lists flats with their ranks plus a residual list of r-sets.
An r-set is a non-basis iff some listed flat covers it or it is in the
residual; decoding rebuilds the bases from exactly that rule.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from functools import lru_cache
from math import ceil, comb, log2
from pathlib import Path
from typing import Iterable

from . import bits
from .errors import InvalidCertificate, MatroidError, NotDependent, RankOutOfRange
from .johnson import greedy_dominating_set, johnson
from .kw import kw_encode
from .matroid import FlatWithRank, Matroid, bases_avoiding, matroid_from_bases

METHODS = ("kw", "dominating")


@dataclass(frozen=True)
class LocalCover:
    at: int
    flats: tuple[FlatWithRank, ...]

    def covers(self, y: int) -> bool:
        return any(f.covers(y) for f in self.flats)


def _dedup(flats: Iterable[FlatWithRank]) -> tuple[FlatWithRank, ...]:
    return tuple(sorted(set(flats)))


def local_cover_general(m: Matroid, x: int) -> LocalCover:
    """``{(cl(x - e), r(x - e)) : e in x}``: at most r flats covering every non-basis in N[x]."""
    if bits.popcount(x) != m.r:
        raise ValueError("local cover needs an r-set")
    return LocalCover(x, _dedup(m.flat_with_rank(x & ~(1 << e)) for e in bits.elements(x)))


def local_cover_dependent(m: Matroid, x: int) -> LocalCover:
    """At most two flats covering every non-basis in N[x], for a dependent r-set ``x``.

    Rank below r-1: the closure of ``x`` alone.  Rank r-1: the closures of
    ``x`` and of the unique circuit inside it.
    """
    if bits.popcount(x) != m.r:
        raise ValueError("local cover needs an r-set")
    rx = m.rank(x)
    if rx == m.r:
        raise NotDependent(f"{bits.format_set(x)} is a basis")
    if rx < m.r - 1:
        return LocalCover(x, (FlatWithRank(m.closure(x), rx),))
    c = m.unique_circuit(x)
    return LocalCover(x, _dedup([m.flat_with_rank(c), FlatWithRank(m.closure(x), rx)]))


@dataclass(frozen=True)
class EncodedMatroid:
    """Certificate for a rank-``r`` matroid on ``n`` elements.

    With ``dualized`` set, ``cover`` and ``residual`` describe the dual
    matroid (rank ``n - r``); ``r`` is always the rank of the encoded matroid.
    """

    n: int
    r: int
    method: str
    dualized: bool
    cover: tuple[FlatWithRank, ...]
    residual: tuple[int, ...]

    @property
    def payload_rank(self) -> int:
        return self.n - self.r if self.dualized else self.r


@lru_cache(maxsize=None)
def _dominating_set(n: int, r: int) -> tuple[int, ...]:
    return tuple(greedy_dominating_set(johnson(n, r)))


def _trivial(m: Matroid, method: str) -> EncodedMatroid | None:
    if m.r in (0, m.n):
        return EncodedMatroid(m.n, m.r, method, False, (), ())
    return None


def encode_dominating(m: Matroid) -> EncodedMatroid:
    """Union of general local covers over a greedy dominating set of J(n, r)."""
    trivial = _trivial(m, "dominating")
    if trivial is not None:
        return trivial
    flats: set[FlatWithRank] = set()
    for x in _dominating_set(m.n, m.r):
        flats.update(local_cover_general(m, x).flats)
    return EncodedMatroid(m.n, m.r, "dominating", False, _dedup(flats), ())


def encode_kw(m: Matroid, dualize: bool = True) -> EncodedMatroid:
    """Run the selection procedure on the non-bases and cover each selected one.

    Ranks above n/2 are encoded through the dual when ``dualize`` is set.
    """
    trivial = _trivial(m, "kw")
    if trivial is not None:
        return trivial
    if 2 * m.r > m.n:
        if not dualize:
            raise RankOutOfRange(f"encode_kw needs r <= n/2, got n={m.n}, r={m.r}")
        inner = encode_kw(m.dual(), dualize=False)
        return EncodedMatroid(m.n, m.r, "kw", True, inner.cover, inner.residual)
    k = m.non_bases()
    enc = kw_encode(johnson(m.n, m.r), k)
    flats: set[FlatWithRank] = set()
    for x in enc.selected:
        flats.update(local_cover_dependent(m, x).flats)
    residual = sorted(set(k) & enc.available)
    return EncodedMatroid(m.n, m.r, "kw", False, _dedup(flats), tuple(residual))


def encode(m: Matroid, method: str = "kw") -> EncodedMatroid:
    if method == "kw":
        return encode_kw(m)
    if method == "dominating":
        return encode_dominating(m)
    raise ValueError(f"unknown method {method!r}")


def decode(e: EncodedMatroid) -> Matroid:
    """Bases = r-sets covered by no flat and absent from the residual."""
    n, r = e.n, e.payload_rank
    for x in e.residual:
        if x >> n or bits.popcount(x) != r:
            raise InvalidCertificate(f"residual entry {x:#x} is not an r-set")
    try:
        inner = matroid_from_bases(n, r, bases_avoiding(n, r, e.cover, e.residual))
    except MatroidError as exc:
        raise InvalidCertificate(f"certificate does not decode to a matroid: {exc}") from exc
    return inner.dual() if e.dualized else inner


def certificate_bits(e: EncodedMatroid) -> int:
    """Size of a plain binary packing: ``n + ceil(log2(n+1))`` bits per flat, ``ceil(log2 N)`` per residual set."""
    per_set = max(1, ceil(log2(comb(e.n, e.payload_rank)))) if 0 < e.payload_rank < e.n else 1
    return len(e.cover) * (e.n + ceil(log2(e.n + 1))) + len(e.residual) * per_set


def listing_bits(m: Matroid) -> int:
    """Size of listing every non-basis at ``ceil(log2 N)`` bits each."""
    per_set = max(1, ceil(log2(comb(m.n, m.r)))) if 0 < m.r < m.n else 1
    return len(m.non_bases()) * per_set


# Text format, version 1.

HEADER = "encmatroid"


def dumps(e: EncodedMatroid) -> str:
    lines = [f"{HEADER} 1 {e.n} {e.r} {e.method} {int(e.dualized)}"]
    for f in sorted(e.cover):
        elems = bits.format_set(f.flat)
        lines.append(f"F {f.rank} {elems}".rstrip())
    for x in sorted(e.residual):
        lines.append(f"N {bits.format_set(x)}")
    return "\n".join(lines) + "\n"


def loads(text: str) -> EncodedMatroid:
    body = [ln.strip() for ln in io.StringIO(text)]
    body = [ln for ln in body if ln and not ln.startswith("#")]
    if not body:
        raise InvalidCertificate("empty certificate")
    head = body[0].split()
    if len(head) != 6 or head[0] != HEADER or head[1] != "1" or head[4] not in METHODS or head[5] not in ("0", "1"):
        raise InvalidCertificate(f"bad header: {body[0]!r}")
    n, r = int(head[2]), int(head[3])
    if not 0 <= r <= n <= bits.MAX_N:
        raise InvalidCertificate(f"bad sizes n={n}, r={r}")
    cover, residual = [], []
    for ln in body[1:]:
        tag, _, rest = ln.partition(" ")
        if tag == "F":
            rank_text, _, elems = rest.partition(" ")
            cover.append(FlatWithRank(bits.parse_set(elems), int(rank_text)))
        elif tag == "N":
            residual.append(bits.parse_set(rest))
        else:
            raise InvalidCertificate(f"bad line: {ln!r}")
    for f in cover:
        if f.flat >> n or not 0 <= f.rank <= bits.popcount(f.flat):
            raise InvalidCertificate(f"bad flat line for {f}")
    return EncodedMatroid(n, r, head[4], head[5] == "1", tuple(sorted(cover)), tuple(sorted(residual)))


def read_encoded(path: str | Path) -> EncodedMatroid:
    return loads(Path(path).read_text(encoding="utf-8"))


def write_encoded(e: EncodedMatroid, path: str | Path) -> None:
    Path(path).write_text(dumps(e), encoding="utf-8", newline="\n")
