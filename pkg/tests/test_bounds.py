from __future__ import annotations

import json
import math
from fractions import Fraction

import pytest

from flatcover import bounds
from flatcover.errors import SideConditionUnmet
from flatcover.graphs import count_stable_sets
from flatcover.johnson import johnson
from flatcover.numeric import certainly_le, log2, lower, midpoint, upper

S6 = (1, 7, 76, 271, 76, 7, 1)


def test_binomial_examples():
    assert bounds._eq_power(10, 3).holds
    assert 120 <= (10 * math.e / 3) ** 3 and abs((10 * math.e / 3) ** 3 - 743.91) < 0.01
    central = 2**10 / math.sqrt(10) * math.sqrt(2 / math.pi)
    assert abs(central - 258.4) < 0.1 and 252 <= central
    v = bounds._eq_prefix(10, 2)
    assert v.holds and v.detail == "56 <= 405/7"
    assert bounds.prefix_ratio_excess(10, 2) == Fraction(2, 7)


def test_binomial_sweep():
    verdicts = bounds.binomial_bounds_check(64)
    assert verdicts and all(v.holds for v in verdicts)
    names = {v.name for v in verdicts}
    assert names == {"binomial-power", "binomial-central-upper", "binomial-prefix", "central-witness-decreasing"}


def test_knuth_and_trivial():
    k = bounds.knuth_lower(4, 2)
    assert k.exact == Fraction(3, 2) and k.exactness == bounds.EXACT_RATIONAL
    assert certainly_le(k.log2, log2(10))
    assert certainly_le(bounds.knuth_lower(6, 3).log2, log2(S6[3]))
    assert [bounds.knuth_lower(10, r).exact for r in range(1, 6)] == sorted(
        bounds.knuth_lower(10, r).exact for r in range(1, 6)
    )
    t = bounds.trivial_stable_bound(4, 2)
    assert t.exact == 22 and t.exactness == bounds.BIG_INTEGER
    t = bounds.trivial_stable_bound(6, 3)
    assert t.exact == sum(math.comb(20, j) for j in range(6))
    assert t.exact >= count_stable_sets(johnson(6, 3).adjacency_masks)


def test_piff_against_census():
    # m_4 = 17, m_6 = 98 as isomorphism classes; the labelled totals are larger still
    assert certainly_le(math.log2(math.log2(98)), bounds.piff_upper(6).log2)
    assert certainly_le(math.log2(math.log2(17)), bounds.piff_upper(4).log2)
    assert certainly_le(log2(3807), bounds.piff_value(6).log2)
    assert certainly_le(log2(68), bounds.piff_value(4).log2)
    for n in range(2, 9):
        assert certainly_le(log2(bounds.piff_exact(n)), bounds.piff_value(n).log2)


def test_piff_dominates_kw_mn():
    for n in range(10, 61):
        best = max(upper(bounds.kw_mn_upper(n, r)) for r in range(1, n // 2 + 1) if bounds.kw_mn_value(n, r).ok)
        assert best <= lower(bounds.piff_value(n).log2)


def test_kw_values():
    sn = bounds.kw_sn_value(6, 3)
    assert sn.ok and certainly_le(log2(S6[3]), sn.log2)
    for n in range(4, 30):
        for r in range(1, n // 2 + 1):
            a, b = bounds.kw_sn_value(n, r), bounds.kw_mn_value(n, r)
            if a.ok and b.ok:
                assert certainly_le(a.log2, b.log2)
    v = bounds.kw_sn_upper(12, 6)
    assert abs(midpoint(v) - 539.653028) < 1e-5
    assert abs(midpoint(bounds.kw_mn_upper(12, 6)) - 2114.838201) < 1e-5


def test_kw_exact_forms_below_estimates():
    for n, r in [(8, 4), (10, 5), (12, 6), (12, 3)]:
        if bounds.kw_sn_value(n, r).ok:
            assert certainly_le(log2(bounds.kw_sn_exact(n, r)), bounds.kw_sn_value(n, r).log2 + 1)
        if bounds.kw_mn_value(n, r).ok:
            assert certainly_le(log2(bounds.kw_mn_exact(n, r)), bounds.kw_mn_value(n, r).log2 + 2)


def test_side_condition():
    v = bounds.kw_mn_value(6, 1)
    assert not v.ok and v.status.startswith("side-condition-unmet")
    with pytest.raises(SideConditionUnmet):
        bounds.kw_mn_upper(6, 1)
    assert bounds.reduced_rank(10, 7) == 3


def test_headline_table():
    census = {4: (68, 16 + 0), 6: (3807, sum(S6))}
    rows = bounds.headline_table(12, census)
    assert all(row.ratio == 2 for row in rows)
    six = rows[4]
    assert six.n == 6 and six.knuth == Fraction(10, 3)
    assert six.sandwich["knuth<=log2 s_n"] and six.sandwich["log2 m_n<=piff"]
    assert all(rows[2].sandwich.values())
    text = bounds.format_table(rows)
    assert text.splitlines()[0].split()[0] == "n" and len(text.splitlines()) == 12
    data = json.loads(bounds.table_json(rows))
    assert data[0]["knuth_lower"]["exactness"] == "exact-rational"
    assert data[0]["piff"]["exactness"] == "float-with-error-bound"
    assert {row["ratio"] for row in data} == {"2"}


def test_per_rank_report_tags():
    tags = [v.exactness for v in bounds.per_rank_report(12, 6)]
    assert tags == [bounds.EXACT_RATIONAL, bounds.BIG_INTEGER, bounds.FLOAT_WITH_ERROR, bounds.FLOAT_WITH_ERROR]
