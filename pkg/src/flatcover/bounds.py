"""Finite-n evaluation of the counting bounds, with rigorous comparisons.

Values are log2 quantities held as mpmath intervals.  Sums of binomials are
exact big integers and logarithms are taken last.  A bound whose derivation
needs a side condition returns a :class:`BoundValue` with ``status`` set to
``"side-condition-unmet"`` (or raises :class:`SideConditionUnmet` from the
strict entry points) rather than a number.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Callable, Iterable

from mpmath import iv, mp

from .errors import RankOutOfRange, SideConditionUnmet
from .johnson import params
from .numeric import E, Interval, binomial_prefix_sum, certainly_le, ival, log2, lower, midpoint, upper

EXACT_RATIONAL = "exact-rational"
BIG_INTEGER = "big-integer"
FLOAT_WITH_ERROR = "float-with-error-bound"

MAX_BOUNDS_N = 64


@dataclass(frozen=True)
class BoundValue:
    name: str
    log2: Interval | None
    exactness: str
    status: str = "ok"
    exact: Fraction | int | None = None  # the log2 value itself when rational, the count when an integer

    @property
    def ok(self) -> bool:
        return self.status == "ok"

    def as_dict(self) -> dict:
        out: dict = {"name": self.name, "exactness": self.exactness, "status": self.status}
        if self.log2 is not None:
            out["log2_lower"] = _fmt(lower(self.log2))
            out["log2_upper"] = _fmt(upper(self.log2))
            out["log2"] = midpoint(self.log2)
        if self.exact is not None:
            out["exact"] = str(self.exact)
        return out


def _fmt(x) -> str:
    return mp.nstr(x, 30)


def _unmet(name: str, exactness: str, why: str) -> BoundValue:
    return BoundValue(name, None, exactness, status=f"side-condition-unmet: {why}")


# Binomial coefficient inequalities.


@dataclass(frozen=True)
class Verdict:
    name: str
    n: int
    k: int
    holds: bool
    detail: str = ""


def _eq_power(n: int, r: int) -> Verdict:
    # C(n,r) <= (e n / r)^r
    rhs = (E * ival(n) / ival(r)) ** r
    return Verdict("binomial-power", n, r, certainly_le(comb(n, r), rhs))


def _eq_central(n: int) -> tuple[Verdict, Interval]:
    # C(n, n//2) <= 2^n / sqrt(n) * sqrt(2/pi); also returns the gap sqrt(2/pi) - C sqrt(n) / 2^n
    c = comb(n, n // 2)
    root = iv.sqrt(ival(2) / iv.pi)
    scaled = ival(c) * iv.sqrt(ival(n)) / ival(2**n)
    return Verdict("binomial-central-upper", n, n // 2, certainly_le(scaled, root)), root - scaled


def _eq_prefix(n: int, k: int) -> Verdict:
    # sum_{i<=k} C(n,i) <= (n-k+1)/(n-2k+1) C(n,k), k < n/2, in exact rationals
    lhs = binomial_prefix_sum(n, k)
    rhs = Fraction(n - k + 1, n - 2 * k + 1) * comb(n, k)
    return Verdict("binomial-prefix", n, k, lhs <= rhs, f"{lhs} <= {rhs}")


def prefix_ratio_excess(n: int, k: int) -> Fraction:
    """``(n-k+1)/(n-2k+1) - 1 = k/(n-2k+1)``: the explicit o(1) when k = o(n)."""
    return Fraction(k, n - 2 * k + 1)


def binomial_bounds_check(n_max: int = MAX_BOUNDS_N) -> list[Verdict]:
    """Every binomial inequality for ``1 <= r <= n <= n_max``.

    The lower side of the central estimate is checked through its o(1) witness
    ``w(n) = sqrt(2/pi) - C(n, n//2) sqrt(n) / 2^n``: nonnegative and
    decreasing along each parity class of n.
    """
    if not 1 <= n_max <= MAX_BOUNDS_N:
        raise ValueError(f"n_max must lie in 1..{MAX_BOUNDS_N}")
    out = []
    witness: dict[int, Interval] = {}
    for n in range(1, n_max + 1):
        for r in range(1, n + 1):
            out.append(_eq_power(n, r))
        v, w = _eq_central(n)
        out.append(v)
        witness[n] = w
        for k in range(0, (n + 1) // 2):
            if 2 * k < n:
                out.append(_eq_prefix(n, k))
    for n in range(3, n_max + 1):
        out.append(Verdict("central-witness-decreasing", n, n // 2, certainly_le(witness[n], witness[n - 2])))
    return out


# Named bounds.


def knuth_lower(n: int, r: int) -> BoundValue:
    """``log2 s_{n,r} >= C(n,r)/n``."""
    if not 0 < r < n:
        raise RankOutOfRange(f"need 0 < r < n, got n={n}, r={r}")
    value = Fraction(comb(n, r), n)
    return BoundValue("knuth_lower", ival(value), EXACT_RATIONAL, exact=value)


def trivial_stable_bound(n: int, r: int) -> BoundValue:
    """``log2 sum_{j <= floor(alpha N)} C(N, j)``."""
    p = params(n, r)
    total = binomial_prefix_sum(p.N, p.floor_alpha_n)
    return BoundValue("trivial_stable_bound", log2(total), BIG_INTEGER, exact=total)


def piff_value(n: int) -> BoundValue:
    """log2 of the bound on m_n from circuit closures, at finite n.

    ``m_n <= sum_{i<=k} C(M, i)`` with ``M = 2^n (n+1)`` and ``k = floor(2^{n+1}/(n+1))``;
    the prefix sum is bounded by ``(M-k+1)/(M-2k+1) C(M,k)`` and
    ``C(M,k) <= (e M/k)^k <= (e (n+1)^2 / 2)^{2^{n+1}/(n+1)}``.
    """
    if n < 2:
        raise ValueError("piff bound needs n >= 2")
    big_m = 2**n * (n + 1)
    k_real = Fraction(2 ** (n + 1), n + 1)
    k = int(k_real)
    ratio = Fraction(big_m - k + 1, big_m - 2 * k + 1)
    value = log2(ratio) + ival(k_real) * log2(E * ival((n + 1) ** 2) / 2)
    return BoundValue("piff_log2", value, FLOAT_WITH_ERROR)


def piff_upper(n: int) -> BoundValue:
    """``log2 log2`` of :func:`piff_value`."""
    v = piff_value(n)
    return BoundValue("piff_upper", iv.log(v.log2) / iv.log(2), FLOAT_WITH_ERROR)


def piff_exact(n: int) -> int:
    """The big-integer sum ``sum_{i <= floor(2^{n+1}/(n+1))} C(2^n (n+1), i)``."""
    return binomial_prefix_sum(2**n * (n + 1), 2 ** (n + 1) // (n + 1))


def _kw_parts(n: int, r: int) -> tuple[int, int, Fraction]:
    p = params(n, r)
    return p.N, p.ceil_sigma_n, p.alpha_n


def kw_sn_value(n: int, r: int) -> BoundValue:
    """``log2 N + k log2(e N / k) + alpha N`` with ``k = ceil(sigma N)``; needs ``k < N/2``."""
    big_n, k, alpha_n = _kw_parts(n, r)
    if not 2 * k < big_n:
        return _unmet("kw_sn_upper", FLOAT_WITH_ERROR, f"ceil(sigma N) = {k} >= N/2 = {Fraction(big_n, 2)}")
    value = log2(big_n) + ival(k) * log2(E * ival(big_n) / ival(k)) + ival(alpha_n)
    return BoundValue("kw_sn_upper", value, FLOAT_WITH_ERROR)


def kw_mn_value(n: int, r: int) -> BoundValue:
    """``log2 k + k log2(eN/k) + log2 2k + 2k log2(e 2^n (n+1) / 2k) + alpha N``; needs ``2k < N/2``."""
    big_n, k, alpha_n = _kw_parts(n, r)
    if not 4 * k < big_n:
        return _unmet("kw_mn_upper", FLOAT_WITH_ERROR, f"2 ceil(sigma N) = {2 * k} >= N/2 = {Fraction(big_n, 2)}")
    flats = ival(2**n * (n + 1))
    value = (
        log2(k)
        + ival(k) * log2(E * ival(big_n) / ival(k))
        + log2(2 * k)
        + ival(2 * k) * log2(E * flats / ival(2 * k))
        + ival(alpha_n)
    )
    return BoundValue("kw_mn_upper", value, FLOAT_WITH_ERROR)


def _strict(v: BoundValue) -> Interval:
    if not v.ok:
        raise SideConditionUnmet(v.status)
    return v.log2  # type: ignore[return-value]


def kw_sn_upper(n: int, r: int) -> Interval:
    return _strict(kw_sn_value(n, r))


def kw_mn_upper(n: int, r: int) -> Interval:
    return _strict(kw_mn_value(n, r))


def kw_sn_exact(n: int, r: int) -> int:
    """``sum_{i <= k} C(N, i) * 2^{floor(alpha N)}``: the big-integer form before any estimate."""
    big_n, k, _ = _kw_parts(n, r)
    return binomial_prefix_sum(big_n, k) * 2 ** params(n, r).floor_alpha_n


def kw_mn_exact(n: int, r: int) -> int:
    """``sum_{i<=k} C(N,i) * sum_{j<=2k} C(2^n (n+1), j) * 2^{floor(alpha N)}``."""
    big_n, k, _ = _kw_parts(n, r)
    return binomial_prefix_sum(big_n, k) * binomial_prefix_sum(2**n * (n + 1), 2 * k) * 2 ** params(n, r).floor_alpha_n


def reduced_rank(n: int, r: int) -> int:
    """``min(r, n - r)``: bounds for r > n/2 are read through duality."""
    return min(r, n - r)


# Headline table.


PARTIAL = "partial"


@dataclass
class HeadlineRow:
    n: int
    knuth: Fraction  # C(n, n//2)/n
    headline: Fraction  # 2/n C(n, n//2)
    piff: BoundValue  # log2 scale
    piff_loglog: BoundValue
    kw_sn_max: BoundValue
    kw_mn_max: BoundValue
    census_m: int | None = None
    census_s: int | None = None
    sandwich: dict[str, bool] = field(default_factory=dict)

    @property
    def ratio(self) -> Fraction:
        return self.headline / self.knuth

    def as_dict(self) -> dict:
        out = {
            "n": self.n,
            "knuth_lower": {"exact": str(self.knuth), "log2": float(self.knuth), "exactness": EXACT_RATIONAL},
            "headline": {"exact": str(self.headline), "log2": float(self.headline), "exactness": EXACT_RATIONAL},
            "ratio": str(self.ratio),
            "piff": self.piff.as_dict(),
            "piff_upper": self.piff_loglog.as_dict(),
            "kw_sn_max": self.kw_sn_max.as_dict(),
            "kw_mn_max": self.kw_mn_max.as_dict(),
        }
        if self.census_m is not None:
            out["census"] = {"m_n": self.census_m, "s_n": self.census_s, "sandwich": self.sandwich}
        return out


def _max_over_ranks(n: int, fn: Callable[[int, int], BoundValue], name: str) -> BoundValue:
    """Largest per-rank value over ``0 < r <= n/2``.

    When some ranks miss their side condition the status is ``partial`` and
    the value is the maximum over the remaining ranks only.
    """
    vals = [fn(n, r) for r in range(1, n // 2 + 1)]
    good = [v for v in vals if v.ok]
    if not good:
        return _unmet(name, FLOAT_WITH_ERROR, f"all {len(vals)} ranks")
    best = max(good, key=lambda v: upper(v.log2))
    status = "ok" if len(good) == len(vals) else f"{PARTIAL}: {len(vals) - len(good)} of {len(vals)} ranks unmet"
    return BoundValue(name, best.log2, FLOAT_WITH_ERROR, status=status)


def log2_sum_bound(n: int, per_rank_max: Interval) -> Interval:
    """``log2((n+1) 2^x)``: turns a per-rank bound into one on the total."""
    return log2(n + 1) + per_rank_max


def headline_table(n_max: int, census: dict[int, tuple[int, int]] | None = None) -> list[HeadlineRow]:
    """One row per ``2 <= n <= n_max``; every value on the log2 scale except ``piff_loglog``.

    ``census`` maps n to labelled ``(m_n, s_n)``; rows that have it also
    record whether the census values sit between the lower and upper values.
    """
    if not 2 <= n_max <= MAX_BOUNDS_N:
        raise ValueError(f"n_max must lie in 2..{MAX_BOUNDS_N}")
    census = census or {}
    rows = []
    for n in range(2, n_max + 1):
        c = comb(n, n // 2)
        row = HeadlineRow(
            n=n,
            knuth=Fraction(c, n),
            headline=Fraction(2 * c, n),
            piff=piff_value(n),
            piff_loglog=piff_upper(n),
            kw_sn_max=_max_over_ranks(n, kw_sn_value, "kw_sn_max"),
            kw_mn_max=_max_over_ranks(n, kw_mn_value, "kw_mn_max"),
        )
        if n in census:
            m_n, s_n = census[n]
            row.census_m, row.census_s = m_n, s_n
            row.sandwich["knuth<=log2 s_n"] = certainly_le(row.knuth, log2(s_n))
            row.sandwich["s_n<=m_n"] = s_n <= m_n
            row.sandwich["log2 m_n<=piff"] = certainly_le(log2(m_n), row.piff.log2)
            if row.kw_sn_max.ok:
                row.sandwich["log2 s_n<=kw_sn"] = certainly_le(log2(s_n), log2_sum_bound(n, row.kw_sn_max.log2))
            if row.kw_mn_max.ok:
                row.sandwich["log2 m_n<=kw_mn"] = certainly_le(log2(m_n), log2_sum_bound(n, row.kw_mn_max.log2))
        rows.append(row)
    return rows


def _cell(v: BoundValue) -> str:
    if v.log2 is None:
        return "n/a"
    return f"{midpoint(v.log2):.6g}" + ("" if v.ok else "*")


def format_table(rows: Iterable[HeadlineRow]) -> str:
    """Fixed-column text; ``*`` marks a maximum over only the ranks whose side condition holds."""
    head = (
        f"{'n':>3} {'knuth':>10} {'headline':>10} {'ratio':>5} {'log2_m_n':>10} {'log2_s_n':>10} "
        f"{'kw_sn_max':>10} {'kw_mn_max':>10} {'piff':>10} {'piff_loglog':>11} sandwich"
    )
    lines = [head]
    for row in rows:
        sand = "-"
        if row.sandwich:
            sand = "ok" if all(row.sandwich.values()) else "FAIL"
        lm = f"{midpoint(log2(row.census_m)):.6g}" if row.census_m is not None else "-"
        ls = f"{midpoint(log2(row.census_s)):.6g}" if row.census_s is not None else "-"
        lines.append(
            f"{row.n:>3} {float(row.knuth):>10.6g} {float(row.headline):>10.6g} {str(row.ratio):>5} {lm:>10} {ls:>10} "
            f"{_cell(row.kw_sn_max):>10} {_cell(row.kw_mn_max):>10} {_cell(row.piff):>10} {_cell(row.piff_loglog):>11} {sand}"
        )
    return "\n".join(lines) + "\n"


def table_json(rows: Iterable[HeadlineRow]) -> str:
    return json.dumps([row.as_dict() for row in rows], indent=2, sort_keys=True) + "\n"


def per_rank_report(n: int, r: int) -> list[BoundValue]:
    """Every named per-rank bound for ``0 < r <= n/2``."""
    return [knuth_lower(n, r), trivial_stable_bound(n, r), kw_sn_value(n, r), kw_mn_value(n, r)]
