import itertools

import numpy as np
import pytest
from hypothesis import given, settings

from conftest import graphs
from wlpgraph.graph import cycle, is_independent, mask_of, pan, path, tadpole
from wlpgraph.indpoly import independence_polynomial
from wlpgraph.levels import (
    all_level_bases,
    format_matrix_dump,
    hilbert_data,
    level_basis,
    level_map,
    parse_matrix_dump,
)


def test_level_basis_examples():
    assert level_basis(cycle(4), 2).sets == (0b0101, 0b1010)
    assert len(level_basis(path(16), 5)) == 792
    for g in [path(1), cycle(7), tadpole(4, 3)]:
        assert level_basis(g, 0).sets == (0,)
    assert level_basis(path(3), 3).sets == ()
    with pytest.raises(ValueError):
        level_basis(path(3), -1)


def test_basis_is_sorted_and_independent(corpus):
    for name, g in corpus:
        for b in all_level_bases(g):
            assert list(b.sets) == sorted(b.sets), name
            assert all(is_independent(g, s) and s.bit_count() == b.degree for s in b.sets), name


def test_all_bases_match_single_degree(corpus):
    for name, g in corpus:
        bases = all_level_bases(g)
        assert [b.sets for b in bases] == [level_basis(g, k).sets for k in range(len(bases))], name


@pytest.mark.parametrize("g,h", [(pan(5), (1, 6, 9, 3)), (path(1), (1, 1))])
def test_hilbert_examples(g, h):
    hd = hilbert_data(g)
    assert hd.h == h and hd.socle_degree == len(h) - 1


def test_hilbert_equals_polynomial(corpus):
    for name, g in corpus:
        assert hilbert_data(g).h == independence_polynomial(g).coeffs, name
    assert hilbert_data(tadpole(4, 2)).h == independence_polynomial(tadpole(4, 2)).coeffs


def test_degree_zero_map_is_all_ones():
    for g in [path(5), cycle(6), tadpole(5, 2)]:
        m = level_map(g, 0)
        assert (m.rows, m.cols) == (g.n, 1)
        assert m.dense().tolist() == [[1]] * g.n


def test_cycle4_degree1():
    m = level_map(cycle(4), 1)
    assert (m.rows, m.cols) == (2, 4)
    assert m.dense().sum(axis=1).tolist() == [2, 2]
    # {0,2} extends x_0 and x_2; {1,3} extends x_1 and x_3
    assert m.dense().tolist() == [[1, 0, 1, 0], [0, 1, 0, 1]]


def test_path3_degree1():
    m = level_map(path(3), 1)
    assert (m.rows, m.cols) == (1, 3)
    assert m.entries == [(0, 0), (0, 2)]


def test_entries_are_column_major():
    m = level_map(tadpole(5, 3), 2)
    keys = list(zip(m.col_idx.tolist(), m.row_idx.tolist()))
    assert keys == sorted(keys)


def test_beyond_socle():
    with pytest.raises(ValueError, match="beyond socle degree"):
        level_map(pan(5), 3)
    with pytest.raises(ValueError):
        level_map(pan(5), -1)


@settings(max_examples=50, deadline=None)
@given(graphs(min_n=1, max_n=11))
def test_row_regularity_and_definition(g):
    bases = all_level_bases(g)
    for j in range(len(bases) - 1):
        m = level_map(g, j, bases)
        a = m.dense()
        assert (a.sum(axis=1) == j + 1).all()
        assert m.nnz == (j + 1) * len(bases[j + 1])
        # entry (T, S) present exactly when S is a j-subset of T
        for r, t in enumerate(bases[j + 1].sets):
            for c, s in enumerate(bases[j].sets):
                assert a[r, c] == int(s & t == s)


def test_top_map_shape(corpus):
    for name, g in corpus:
        bases = all_level_bases(g)
        d = len(bases) - 1
        if d >= 1:
            m = level_map(g, d - 1, bases)
            assert m.rows == len(bases[d]) and m.nnz == d * m.rows, name


def test_column_counts_match_extension_counts():
    g = tadpole(6, 4)
    bases = all_level_bases(g)
    m = level_map(g, 3, bases)
    counts = np.bincount(m.col_idx, minlength=m.cols)
    for c, s in enumerate(bases[3].sets):
        ext = sum(1 for v in range(g.n) if not (s >> v) & 1 and is_independent(g, s | (1 << v)))
        assert counts[c] == ext


def test_matrix_dump_roundtrip():
    m = level_map(cycle(7), 2)
    text = format_matrix_dump(m)
    header = text.splitlines()[0]
    assert header == f"{m.rows} {m.cols} {m.nnz}"
    pairs = [tuple(map(int, ln.split())) for ln in text.splitlines()[1:]]
    assert pairs == sorted(pairs)
    back = parse_matrix_dump(text)
    assert back == m.to_sparse()
    assert format_matrix_dump(back) == text


def test_matrix_dump_truncated():
    with pytest.raises(ValueError):
        parse_matrix_dump("2 2 3\n0 0\n1 1\n")


def test_enumeration_against_combinations():
    g = tadpole(5, 4)
    for k in range(5):
        expected = sorted(mask_of(s) for s in itertools.combinations(range(g.n), k) if is_independent(g, mask_of(s)))
        assert list(level_basis(g, k).sets) == expected
