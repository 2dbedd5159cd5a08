from __future__ import annotations

import random
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from flatcover import matroid as mt
from flatcover.bits import from_elements as S
from flatcover.bits import subsets_of_size
from flatcover.census import enumerate_matroids
from flatcover.errors import (
    EmptyFamily,
    ExchangeViolation,
    InvalidCertificate,
    NotIsolated,
    PreconditionViolated,
    WrongCardinality,
)

U24 = mt.uniform(2, 4)
SOLE = mt.matroid_from_bases(4, 2, [x for x in subsets_of_size(4, 2) if x != S({0, 1})])


def small_matroids(n_max=5):
    for n in range(n_max + 1):
        for r in range(n + 1):
            yield from enumerate_matroids(n, r)


def brute_is_matroid(n, r, fam):
    """Exchange axiom straight from the definition."""
    fam = set(fam)
    if not fam:
        return False
    for b in fam:
        for b2 in fam:
            for e in range(n):
                if (b >> e) & 1 and not (b2 >> e) & 1:
                    if not any(
                        (b2 >> f) & 1 and not (b >> f) & 1 and (b & ~(1 << e)) | (1 << f) in fam for f in range(n)
                    ):
                        return False
    return True


def test_from_bases_examples():
    assert mt.matroid_from_bases(4, 2, list(subsets_of_size(4, 2))) == U24
    assert SOLE.non_bases() == [S({0, 1})]
    with pytest.raises(ExchangeViolation):
        mt.matroid_from_bases(4, 2, [S({0, 1}), S({2, 3})])
    with pytest.raises(EmptyFamily):
        mt.matroid_from_bases(4, 2, [])
    with pytest.raises(WrongCardinality):
        mt.matroid_from_bases(4, 2, [S({0, 1, 2})])


def test_from_bases_canonicalises():
    a = mt.matroid_from_bases(4, 2, [12, 3, 5, 3, 6, 9, 10])
    assert a.bases == (3, 5, 6, 9, 10, 12) and a == U24


def test_exchange_check_agrees_with_definition():
    rng = random.Random(7)
    for _ in range(400):
        n = rng.randint(1, 6)
        r = rng.randint(0, n)
        verts = list(subsets_of_size(n, r))
        fam = [x for x in verts if rng.random() < 0.7] or verts[:1]
        expect = brute_is_matroid(n, r, fam)
        try:
            mt.matroid_from_bases(n, r, fam)
            got = True
        except ExchangeViolation:
            got = False
        assert got == expect


def test_exchange_violation_is_genuine():
    rng = random.Random(3)
    seen = 0
    for _ in range(300):
        n = rng.randint(4, 7)
        r = rng.randint(2, n - 2)
        fam = [x for x in subsets_of_size(n, r) if rng.random() < 0.5]
        if not fam:
            continue
        try:
            mt.matroid_from_bases(n, r, fam)
        except ExchangeViolation as exc:
            seen += 1
            b, b2, e = exc.b, exc.b2, exc.e
            assert b in fam and b2 in fam and (b >> e) & 1 and not (b2 >> e) & 1
            for f in range(n):
                if (b2 >> f) & 1 and not (b >> f) & 1:
                    assert (b & ~(1 << e)) | (1 << f) not in fam
    assert seen > 0


def test_rank_examples():
    assert U24.rank(S({0, 1, 2})) == 2
    assert U24.rank(0) == 0
    assert SOLE.rank(S({0, 1})) == 1


def test_rank_table_matches_scan():
    for m in small_matroids(4):
        for x in range(1 << m.n):
            assert m.rank(x) == m._rank_scan(x)


def test_closure_examples():
    assert U24.closure(S({0})) == S({0})
    assert SOLE.closure(S({0})) == S({0, 1})
    for m in small_matroids(4):
        assert m.closure(m.ground) == m.ground


def test_circuit_examples():
    assert U24.circuits() == list(subsets_of_size(4, 3))
    want = sorted([S({0, 1})] + [x for x in subsets_of_size(4, 3) if x & 3 != 3])
    assert SOLE.circuits() == want
    assert mt.free(5).circuits() == []


def test_unique_circuit():
    assert SOLE.unique_circuit(S({0, 1})) == S({0, 1})
    # rank-3 on 5 elements with {0,1,2} as its only non-basis
    m = mt.matroid_from_bases(5, 3, [x for x in subsets_of_size(5, 3) if x != S({0, 1, 2})])
    assert m.unique_circuit(S({0, 1, 2})) == S({0, 1, 2})
    with pytest.raises(PreconditionViolated):
        U24.unique_circuit(S({0, 1}))


def test_dual_examples():
    assert U24.dual() == U24
    assert mt.free(3).dual() == mt.Matroid(3, 0, (0,))
    for m in small_matroids(4):
        assert m.dual().dual() == m
        assert m.dual().r == m.n - m.r


def test_paving_examples():
    assert U24.is_paving() and U24.is_sparse_paving()
    assert SOLE.is_paving() and SOLE.is_sparse_paving()
    loop = mt.matroid_from_bases(4, 2, [x for x in subsets_of_size(4, 2) if not x & 1])
    assert not loop.is_paving() and not loop.is_sparse_paving()


def test_paving_matches_circuit_definition():
    for m in small_matroids(5):
        assert m.is_paving() == all(bin(c).count("1") >= m.r for c in m.circuits())


def test_non_bases_examples():
    assert U24.non_bases() == []
    assert SOLE.non_bases() == [S({0, 1})]
    assert mt.Matroid(3, 0, (0,)).non_bases() == []


def test_flat_covers_set():
    f = mt.FlatWithRank(S({0, 1}), 1)
    assert mt.flat_covers_set(f, S({0, 1}))
    assert not mt.flat_covers_set(f, S({0, 2}))
    assert not mt.flat_covers_set(mt.FlatWithRank(15, 2), S({0, 3}))


def test_lattice_properties_exhaustive():
    for m in small_matroids(4):
        rk, cl = m.rank, m.closure
        flats = m.flats()
        for x in range(1 << m.n):
            assert cl(cl(x)) == cl(x) and rk(cl(x)) == rk(x)
            dependent = rk(x) < bin(x).count("1")
            assert dependent == any(bin(x & f.flat).count("1") > f.rank for f in flats)
            dual_rank = m.dual().rank(x)
            assert dual_rank == rk(m.ground & ~x) - m.r + bin(x).count("1")
            for y in range(1 << m.n):
                assert rk(x & y) + rk(x | y) <= rk(x) + rk(y)


@given(st.integers(0, 2**30))
def test_submodularity_random_pairs(seed):
    rng = random.Random(seed)
    n = rng.randint(6, 9)
    r = rng.randint(1, n - 1)
    verts = list(subsets_of_size(n, r))
    stable, blocked = [], set()
    for x in rng.sample(verts, len(verts)):
        if x not in blocked and rng.random() < 0.3:
            stable.append(x)
            blocked.update(x ^ (1 << e) ^ (1 << f) for e in range(n) for f in range(n) if (x >> e) & 1 and not (x >> f) & 1)
    m = mt.matroid_from_bases(n, r, [x for x in verts if x not in stable])
    for _ in range(30):
        x, y = rng.getrandbits(n), rng.getrandbits(n)
        assert m.rank(x & y) + m.rank(x | y) <= m.rank(x) + m.rank(y)


def test_piff_examples():
    u23 = mt.uniform(2, 3)
    assert u23.circuits() == [7]
    assert mt.piff_encode(u23) == {mt.FlatWithRank(7, 2)}
    assert mt.piff_encode(U24) == {mt.FlatWithRank(15, 2)}
    free = mt.free(4)
    assert mt.piff_encode(free) == frozenset()
    assert mt.piff_decode(4, 4, []) == free


def test_piff_round_trip_and_size():
    for m in small_matroids(5):
        k = mt.piff_encode(m)
        assert mt.piff_decode(m.n, m.r, k) == m
        assert len(k) * (m.n + 1) <= 2 ** (m.n + 1)


def test_piff_decode_rejects_garbage():
    with pytest.raises(InvalidCertificate):
        mt.piff_decode(4, 2, [mt.FlatWithRank(15, 0)])


def test_relaxation_examples():
    stripped, u = mt.strip_circuit_hyperplanes(SOLE)
    assert stripped == U24 and u == [S({0, 1})]
    assert mt.strip_circuit_hyperplanes(U24) == (U24, [])
    # a loop at 0 makes the three non-bases through 0 pairwise adjacent
    m = mt.matroid_from_bases(4, 2, [x for x in subsets_of_size(4, 2) if x & 1 == 0])
    nb = m.non_bases()
    assert mt.isolated_non_bases(m) == []
    with pytest.raises(NotIsolated):
        mt.relax(m, [nb[0]])
    with pytest.raises(PreconditionViolated):
        mt.relax(mt.free(3), [])


def test_relaxation_round_trip():
    for m in small_matroids(5):
        if not 0 < m.r < m.n:
            continue
        stripped, u = mt.strip_circuit_hyperplanes(m)
        assert mt.isolated_non_bases(stripped) == [] or stripped.non_bases() == []
        assert mt.unrelax(stripped, u) == m
        assert mt.relax(mt.unrelax(stripped, u), u) == stripped
        for size in range(len(u) + 1):
            for part in combinations(u, size):
                mt.relax(m, part)
        if m.is_sparse_paving():
            assert stripped == mt.uniform(m.r, m.n)


def test_text_format_round_trip(tmp_path):
    for m in [U24, SOLE, mt.free(3), mt.Matroid(3, 0, (0,))]:
        text = mt.dumps(m)
        assert mt.loads(text) == m
        path = tmp_path / "m.matroid"
        mt.write_matroid(m, path)
        assert path.read_bytes() == text.encode()
        assert mt.read_matroid(path) == m
    assert mt.dumps(SOLE).splitlines()[:2] == ["matroid 1 4 2", "0 2"]
    assert mt.loads("# c\nmatroid 1 4 2\n\n0 2\n1 2\n0 3\n1 3\n2 3\n") == SOLE
