import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import wlpgraph.rank as rank_mod
from oracles import fp_rank, fraction_rank
from wlpgraph._modp import NUMBA_PRIME_LIMIT, Elimination
from wlpgraph.graph import cycle, path, tadpole
from wlpgraph.levels import all_level_bases, level_map
from wlpgraph.rank import (
    Evidence,
    RankCertificate,
    RankIndeterminate,
    RankPolicy,
    SparseIntMatrix,
    certified_rank,
    is_prime,
    random_prime,
    rank_exact,
    rank_mod_p,
    verify_witness,
)

P = 1000003


def planted(rng, rows, cols, r, lo=-3, hi=3):
    """Integer matrix of rank <= r built as a product."""
    b = rng.integers(lo, hi + 1, size=(rows, r))
    c = rng.integers(lo, hi + 1, size=(r, cols))
    return SparseIntMatrix.from_dense(b @ c)


def planted01(rng, rows, cols, r):
    """0/1 matrix of rank <= r: rows copied (or ORed) from r random seed rows."""
    seeds = rng.integers(0, 2, size=(r, cols))
    pick = rng.integers(0, r, size=rows)
    return SparseIntMatrix.from_dense(seeds[pick])


def corpus_maps():
    out = []
    for g in [path(7), cycle(8), tadpole(4, 4), tadpole(5, 3), cycle(10)]:
        bases = all_level_bases(g)
        out += [level_map(g, j, bases).to_sparse() for j in range(len(bases) - 1)]
    return out


class TestSparseIntMatrix:
    def test_construction(self):
        m = SparseIntMatrix(2, 3, [1, 0, 0], [0, 2, 1], [5, 0, -1])
        assert m.nnz == 2 and m.shape == (2, 3)
        assert m.to_dense().tolist() == [[0, -1, 0], [5, 0, 0]]
        assert SparseIntMatrix.from_dense(m.to_dense()) == m
        assert m.T.to_dense().tolist() == m.to_dense().T.tolist()

    @pytest.mark.parametrize("args", [
        (2, 2, [0, 0], [1, 1], None),
        (2, 2, [2], [0], None),
        (2, 2, [0], [-1], None),
        (2, 2, [0, 1], [0], None),
    ])
    def test_rejects_bad_coordinates(self, args):
        with pytest.raises(ValueError):
            SparseIntMatrix(*args)

    def test_exact_products_with_big_ints(self):
        m = SparseIntMatrix.from_dense([[1, 2], [3, 4]])
        big = 10**40
        assert m.matvec([big, -big]) == [-big, -big]
        assert m.rmatvec([big, 1]) == [big + 3, 2 * big + 4]

    def test_restrict_columns(self):
        m = SparseIntMatrix.from_dense([[1, 2, 3], [4, 5, 6]])
        assert m.restrict_columns([2, 0]).to_dense().tolist() == [[3, 1], [6, 4]]


class TestPrimes:
    def test_is_prime(self):
        small = [k for k in range(200) if is_prime(k)]
        assert small == [k for k in range(2, 200) if all(k % d for d in range(2, int(k**0.5) + 1))]
        assert is_prime(2**61 - 1) and not is_prime(2**61 + 1)
        assert not is_prime(3215031751)  # strong pseudoprime to bases 2, 3, 5, 7

    @pytest.mark.parametrize("bits", [31, 62])
    def test_random_prime_window(self, bits):
        rng = random.Random(5)
        for _ in range(5):
            p = random_prime(rng, bits)
            assert 2 ** (bits - 1) <= p < 2**bits and is_prime(p)


class TestRankModP:
    def test_examples(self):
        ones = SparseIntMatrix(6, 1, range(6), [0] * 6)
        assert rank_mod_p(ones, P) == 1
        assert rank_mod_p(level_map(cycle(4), 1).to_sparse(), P) == 2
        assert rank_mod_p(SparseIntMatrix(4, 5, [], []), P) == 0

    @pytest.mark.parametrize("p", [2, 4, 1000001, 1])
    def test_rejects_bad_prime(self, p):
        with pytest.raises(ValueError):
            rank_mod_p(SparseIntMatrix(1, 1, [0], [0]), p)

    def test_characteristic_matters(self):
        m = SparseIntMatrix.from_dense([[3, 0], [0, 1]])
        assert rank_mod_p(m, 3) == 1 and rank_mod_p(m, 5) == 2

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 2**32), st.integers(1, 14), st.integers(1, 14), st.sampled_from([3, 7, 101, P]))
    def test_matches_dense_oracle(self, seed, rows, cols, p):
        rng = np.random.default_rng(seed)
        m = planted(rng, rows, cols, int(rng.integers(0, min(rows, cols) + 1)))
        assert rank_mod_p(m, p) == fp_rank(m.to_dense().tolist(), p)

    def test_python_and_numba_engines_agree(self):
        rng = np.random.default_rng(11)
        big = random_prime(random.Random(1), 40)
        assert big > NUMBA_PRIME_LIMIT
        small = random_prime(random.Random(1), 31)
        for _ in range(20):
            m = planted(rng, 15, 12, int(rng.integers(1, 12)))
            ip, ix, dv = m.csr()
            e_big = Elimination(m.rows, m.cols, ip, ix, dv, big)
            e_small = Elimination(m.rows, m.cols, ip, ix, dv, small)
            assert e_big.rank == e_small.rank == fraction_rank(m.to_dense().tolist())
            for e in (e_big, e_small):
                for f in e.free_columns().tolist():
                    x = e.kernel_vector(f)
                    assert all(v % e.p == 0 for v in m.matvec(x))

    def test_62_bit_prime(self):
        p = random_prime(random.Random(2), 62)
        m = level_map(path(10), 3).to_sparse()
        assert rank_mod_p(m, p) == rank_mod_p(m, P) == rank_exact(m)


class TestRankExact:
    def test_examples(self):
        assert rank_exact(level_map(path(3), 1).to_sparse()) == 1
        assert rank_exact(SparseIntMatrix(7, 7, range(7), range(7))) == 7
        assert rank_exact(level_map(cycle(4), 1).to_sparse()) == 2
        assert rank_exact(SparseIntMatrix(3, 3, [], [])) == 0

    def test_threshold(self):
        with pytest.raises(ValueError, match="certified_rank"):
            rank_exact(SparseIntMatrix(5, 5, range(5), range(5)), dense_threshold=4)

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 2**32), st.integers(1, 12), st.integers(1, 12))
    def test_matches_fraction_oracle(self, seed, rows, cols):
        rng = np.random.default_rng(seed)
        m = planted(rng, rows, cols, int(rng.integers(0, min(rows, cols) + 1)), -9, 9)
        assert rank_exact(m) == fraction_rank(m.to_dense().tolist())

    def test_corpus_agreement_and_transpose(self):
        for m in corpus_maps():
            r = rank_exact(m)
            assert r == rank_exact(m.T) == rank_mod_p(m, P) == rank_mod_p(m.T, P)
            if m.cols <= 60:
                assert r == fraction_rank(m.to_dense().tolist())


class TestCertifiedRank:
    def test_all_ones_column(self):
        c = certified_rank(SparseIntMatrix(9, 1, range(9), [0] * 9))
        assert c.rank == 1 and c.evidence is Evidence.FULL_RANK_MOD_P and c.primes_used

    def test_path16_degree4_is_deficient(self):
        # 792 x 715; rank_exact is the oracle
        m = level_map(path(16), 4).to_sparse()
        exact = rank_exact(m)
        assert exact == 701
        c = certified_rank(m)
        assert c.rank == exact and c.evidence is Evidence.KERNEL_WITNESS and c.side == "right"
        assert verify_witness(m, c.witness, "right") and c.verify(m)

    def test_surjectivity_failure_uses_left_witness(self):
        m = level_map(cycle(21), 6).to_sparse()
        c = certified_rank(m)
        assert m.rows < m.cols and c.rank < m.rows
        assert c.evidence is Evidence.KERNEL_WITNESS and c.side == "left"
        assert not any(m.rmatvec(c.witness))

    def test_square_deficient(self):
        m = SparseIntMatrix.from_dense([[1, 1, 0], [0, 1, 1], [1, 2, 1]])
        c = certified_rank(m)
        assert c.rank == 2 and c.evidence is Evidence.KERNEL_WITNESS and c.verify(m)

    def test_empty_and_zero(self):
        assert certified_rank(SparseIntMatrix(0, 4, [], [])).rank == 0
        c = certified_rank(SparseIntMatrix(3, 2, [], []))
        assert c.rank == 0 and c.verify(SparseIntMatrix(3, 2, [], []))
        c = certified_rank(SparseIntMatrix(2, 3, [], []))
        assert c.side == "left" and len(c.witness) == 2

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 2**32), st.integers(1, 16), st.integers(1, 16))
    def test_planted_rank_integer(self, seed, rows, cols):
        rng = np.random.default_rng(seed)
        m = planted(rng, rows, cols, int(rng.integers(0, min(rows, cols) + 1)), -5, 5)
        exact = fraction_rank(m.to_dense().tolist())
        c = certified_rank(m, RankPolicy(seed=seed))
        assert c.rank == exact and c.verify(m)
        assert rank_mod_p(m, P) <= exact

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 2**32), st.integers(2, 30), st.integers(2, 30))
    def test_planted_rank_01(self, seed, rows, cols):
        rng = np.random.default_rng(seed)
        m = planted01(rng, rows, cols, int(rng.integers(1, min(rows, cols) + 1)))
        c = certified_rank(m)
        assert c.rank == rank_exact(m) and c.verify(m)

    def test_witness_needs_rational_lift(self):
        # kernel spanned by (5, -3, 7); lift must recover non-unit entries
        m = SparseIntMatrix.from_dense([[3, 5, 0], [7, 0, -5], [0, 7, 3], [10, 5, -5]])
        c = certified_rank(m)
        assert c.rank == 2 and c.evidence is Evidence.KERNEL_WITNESS
        w = list(c.witness)
        assert sorted(map(abs, w)) == [3, 5, 7]

    def test_determinism(self):
        m = level_map(path(14), 4).to_sparse()
        a = certified_rank(m, RankPolicy(seed=3))
        b = certified_rank(m, RankPolicy(seed=3))
        assert a == b
        c = certified_rank(m, RankPolicy(seed=4))
        assert c.rank == a.rank and c.evidence == a.evidence

    def test_json_roundtrip(self):
        m = level_map(path(16), 4).to_sparse()
        c = certified_rank(m)
        back = RankCertificate.from_json(c.to_json())
        assert back == c and back.verify(m)

    def test_verify_rejects_tampering(self):
        m = level_map(path(16), 4).to_sparse()
        c = certified_rank(m)
        bad = list(c.witness)
        k = next(i for i, v in enumerate(bad) if v)
        bad[k] += 1
        assert not verify_witness(m, bad, "right")
        assert not verify_witness(m, [0] * m.cols, "right")
        assert not verify_witness(m, c.witness, "left")
        assert not c.verify(m.T)

    def test_falls_back_to_exact(self, monkeypatch):
        monkeypatch.setattr(rank_mod, "_lift_witness", lambda *a, **k: None)
        m = SparseIntMatrix.from_dense([[1, 1, 0], [0, 1, 1], [1, 2, 1]])
        c = certified_rank(m)
        assert c.evidence is Evidence.EXACT_ELIMINATION and c.rank == 2 and c.verify(m)

    def test_indeterminate_when_exhausted(self, monkeypatch):
        monkeypatch.setattr(rank_mod, "_lift_witness", lambda *a, **k: None)
        m = SparseIntMatrix.from_dense([[1, 1, 0], [0, 1, 1], [1, 2, 1]])
        with pytest.raises(RankIndeterminate, match="dense_threshold"):
            certified_rank(m, RankPolicy(dense_threshold=2))

    def test_time_budget(self):
        m = level_map(path(16), 4).to_sparse()
        with pytest.raises(RankIndeterminate, match="budget"):
            certified_rank(m, RankPolicy(time_budget=1e-9))

    @pytest.mark.parametrize("kw", [dict(extra_primes=-1), dict(dense_threshold=0), dict(prime_bits=2),
                                    dict(time_budget=0), dict(max_lift_primes=0)])
    def test_policy_validation(self, kw):
        with pytest.raises(ValueError):
            RankPolicy(**kw)

    def test_python_engine_path(self):
        m = level_map(path(12), 4).to_sparse()
        c = certified_rank(m, RankPolicy(prime_bits=40))
        assert c.rank == rank_exact(m) and c.verify(m)
        assert all(p > NUMBA_PRIME_LIMIT for p in c.primes_used)

    def test_corpus_matches_exact(self):
        for m in corpus_maps():
            c = certified_rank(m)
            assert c.rank == rank_exact(m) and c.verify(m)
