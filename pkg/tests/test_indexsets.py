"""Index-set algebra: exactness against per-block brute force."""

import random
from fractions import Fraction

import pytest

from gennum.indexsets import (Diag, EQUAL_GERM, DISJOINT_GERM, FULL_AT_ZERO,
                              GRID, INCOMPARABLE, NULL_AT_ZERO, SPLITTING,
                              SUBSET_GERM, T_EMPTY, T_FULL, PieceFamily,
                              blocks_mod, block_single, boolean_ops,
                              classify_set, compl, diag_set, diff, empty_set,
                              family_piece, full_set, germ_relation, grid_mod,
                              grid_single, inter, interval_set, mkset, nu2,
                              nu2_ge, nu2_piece, nu2sq_index, nu2sq_piece,
                              same_germ, trace_compl, trace_fix0, trace_op,
                              union, _normalize_pieces, _pure_pieces)

N_BRUTE = 130


def traces_equal(a, b, n):
    a, b = trace_fix0(a, n), trace_fix0(b, n)
    pa = _pure_pieces(a.bits, n) if a.bits is not None else a.pieces
    pb = _pure_pieces(b.bits, n) if b.bits is not None else b.pieces
    return _normalize_pieces(pa) == _normalize_pieces(pb)


POOL = [
    full_set(), empty_set(),
    blocks_mod(0, 2), blocks_mod(1, 2), blocks_mod(1, 4), blocks_mod(3, 4),
    grid_mod(1, 2), grid_mod(0, 1), grid_mod(2, 4),
    nu2_piece(0), nu2_piece(1), nu2_piece(2), nu2_ge(3),
    nu2sq_piece(0, 0), nu2sq_piece(1, 1), nu2sq_piece(0, 2),
    interval_set(Fraction(1, 2), 1), interval_set(Fraction(1, 3), Fraction(2, 5)),
    interval_set(0, Fraction(1, 5)),
    block_single(5), grid_single(7),
    diag_set(Diag(1, 1, 0)), diag_set(Diag(3, 1, 0)), diag_set(Diag(3, 2, 0)),
    diag_set(Diag(2, 1, 1)), diag_set(Diag(8, 1, 4)),
]


def test_boolean_ops_against_trace_oracle():
    rnd = random.Random(7)
    for _ in range(300):
        a, b = rnd.choice(POOL), rnd.choice(POOL)
        op = rnd.choice(["union", "inter", "diff", "compl"])
        c = boolean_ops(a, b, op)
        for n in range(N_BRUTE):
            ta, tb = a.trace_at(n), b.trace_at(n)
            want = trace_compl(ta, n) if op == "compl" else trace_op(ta, tb, op, n)
            assert traces_equal(want, c.trace_at(n), n), (op, str(a), str(b), n)


def test_compl_involution():
    for a in POOL:
        c = compl(compl(a))
        for n in range(N_BRUTE):
            assert traces_equal(a.trace_at(n), c.trace_at(n), n)


def test_de_morgan_exact():
    rnd = random.Random(3)
    for _ in range(60):
        a, b = rnd.choice(POOL), rnd.choice(POOL)
        lhs = compl(union(a, b))
        rhs = inter(compl(a), compl(b))
        for n in range(N_BRUTE):
            assert traces_equal(lhs.trace_at(n), rhs.trace_at(n), n)


def test_partition_union_is_full_germ():
    u = union(blocks_mod(0, 2), blocks_mod(1, 2))
    assert classify_set(u) == FULL_AT_ZERO


def test_classify_examples():
    assert classify_set(interval_set(Fraction(1, 2), 1)) == NULL_AT_ZERO
    assert classify_set(blocks_mod(0, 2)) == SPLITTING
    assert classify_set(full_set()) == FULL_AT_ZERO
    # complement of a splitting set splits
    assert classify_set(compl(blocks_mod(0, 2))) == SPLITTING


def test_germ_relation_examples():
    s = blocks_mod(0, 2)
    assert germ_relation(union(s, interval_set(Fraction(1, 2), 1)), s) == EQUAL_GERM
    assert germ_relation(blocks_mod(0, 4), blocks_mod(0, 2)) == SUBSET_GERM
    assert germ_relation(grid_mod(1, 2), blocks_mod(0, 2)) == DISJOINT_GERM
    assert germ_relation(blocks_mod(0, 2), blocks_mod(1, 4)) == DISJOINT_GERM
    assert germ_relation(union(s, grid_mod(1, 2)), s) == "SupersetGerm"
    assert germ_relation(union(s, grid_mod(1, 4)),
                         union(s, grid_mod(3, 4))) == INCOMPARABLE


def test_germ_relation_matches_diff_classification():
    rnd = random.Random(11)
    for _ in range(80):
        a, b = rnd.choice(POOL), rnd.choice(POOL)
        rel = germ_relation(a, b)
        ab = diff(a, b).is_null_germ()
        ba = diff(b, a).is_null_germ()
        if ab and ba:
            assert rel == EQUAL_GERM
        elif ab:
            assert rel == SUBSET_GERM


def test_grid_inter_blocks_derived():
    # grid(odd) ∩ blocks(1 mod 4) == grid(1 mod 4), brute force n <= 64
    got = inter(grid_mod(1, 2), blocks_mod(1, 4))
    want = grid_mod(1, 4)
    for n in range(65):
        assert traces_equal(got.trace_at(n), want.trace_at(n), n)
    assert same_germ(got, want)


def test_nu2_piece_derived():
    # ν2 brute force over n <= 64: piece 2 is blocks ≡ 4 mod 8
    want = blocks_mod(4, 8)
    piece = family_piece(PieceFamily("nu2"), 2)
    for n in range(1, 65):
        in_piece = (nu2(n) == 2)
        assert (piece.trace_at(n).bits == 3) == in_piece
        assert (want.trace_at(n).bits == 3) == in_piece


def test_nu2sq_partition():
    seen = {}
    for n in range(1, 200):
        i, j = nu2sq_index(n)
        assert nu2sq_piece(i, j).trace_at(n).bits == 3
        seen[(i, j)] = seen.get((i, j), 0) + 1
    # pieces are pairwise disjoint by residues
    assert nu2sq_piece(0, 0).modulus == 4
    assert inter(nu2sq_piece(0, 0), nu2sq_piece(0, 1)).is_null_germ()
    assert inter(nu2sq_piece(1, 0), nu2sq_piece(2, 0)).is_null_germ()


def test_family_pieces():
    assert same_germ(family_piece(PieceFamily("nu2"), 0), blocks_mod(1, 2))
    b5 = family_piece(PieceFamily("blocks"), 5)
    assert classify_set(b5) == NULL_AT_ZERO
    assert b5.trace_at(5).bits == 3
    with pytest.raises(Exception):
        family_piece(PieceFamily("nu2sq"), 3)


def test_nu2_finite_union_complement():
    # union of pieces 0..k has complement blocks(ν2 >= k+1): still splitting
    u = empty_set()
    for k in range(4):
        u = union(u, nu2_piece(k))
        c = compl(u)
        assert classify_set(u) == SPLITTING
        assert classify_set(c) == SPLITTING
        assert same_germ(c, nu2_ge(k + 1))


def test_diag_membership_and_intersections():
    d = Diag(3, 1, 0)  # blocks 3, 6, 12, 24, ...
    assert [d.block(k) for k in range(4)] == [3, 6, 12, 24]
    assert d.k_of_block(12) == 2
    assert d.k_of_block(9) is None
    e = Diag(3, 2, 0)  # blocks 3, 12, 48
    subs, blocks = __import__("gennum.indexsets", fromlist=["diag_intersect"]).diag_intersect(d, e)
    got = set()
    for sd in subs:
        got |= {sd.block(k) for k in range(4)}
    got |= set(blocks)
    brute = {d.block(k) for k in range(12)} & {e.block(k) for k in range(12)}
    assert brute <= got


def test_diag_sets_in_algebra():
    d = diag_set(Diag(1, 1, 0))
    assert classify_set(d) == SPLITTING
    assert classify_set(diff(d, d)) == NULL_AT_ZERO
    assert classify_set(diff(full_set(), d)) == SPLITTING
    # removing sparse grid points never kills periodic accumulation
    assert classify_set(diff(blocks_mod(0, 2), d)) == SPLITTING


def test_membership_point_queries():
    s = blocks_mod(0, 2)
    assert s.contains(Fraction(3, 8))       # block 2, full
    assert not s.contains(Fraction(3, 16))  # block 3
    g = grid_mod(1, 2)
    assert g.contains(Fraction(1, 2))        # g_1
    assert not g.contains(Fraction(3, 8))
    iv = interval_set(Fraction(1, 3), Fraction(2, 5))
    assert iv.contains(Fraction(3, 8))
    assert not iv.contains(Fraction(1, 2))
