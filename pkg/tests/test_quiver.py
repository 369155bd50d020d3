"""Tests for quivers, doubling, the index map and sequence classes."""

import itertools

import pytest
from hypothesis import given, settings, strategies as st

from quiverhecke.quiver import (
    DimVec,
    DVert,
    IllegalSplit,
    Quiver,
    SeqClass,
    almost_ordered,
    classify_seq,
    double,
    double_cyclic,
    double_windowed,
    pi_e,
    seq_dimvec,
    sequences_of,
    upsilon,
)


def test_cyclic_quiver_shapes():
    g3 = Quiver.cyclic(3)
    assert g3.h(0, 1) == g3.h(1, 2) == g3.h(2, 0) == 1
    assert g3.h(1, 0) == 0
    assert g3.cartan(0, 0) == 2
    assert g3.cartan(0, 1) == -1
    g2 = Quiver.cyclic(2)
    assert g2.h(0, 1) == g2.h(1, 0) == 1
    assert g2.cartan(0, 1) == -2


def test_double_cyclic_is_next_cyclic():
    dq = double_cyclic(3, 1)
    labels = sorted(dq.label(v) for v in dq.vertices)
    assert labels == [0, 1, 2, 3]
    # arrows go label -> label+1 mod 4 exactly once each
    arrow_labels = sorted((dq.label(i), dq.label(j)) for (i, j) in dq.arrows)
    assert arrow_labels == [(0, 1), (1, 2), (2, 3), (3, 0)]


def test_double_empty_split_is_relabeling():
    g2 = Quiver.cyclic(2)
    dq = double(g2, set())
    assert sorted(v.base for v in dq.vertices) == [0, 1]
    assert all(v.tag == 0 for v in dq.vertices)
    assert len(dq.arrows) == len(g2.arrows)


def test_double_rejects_internal_arrows():
    with pytest.raises(IllegalSplit):
        double(Quiver.cyclic(3), {0, 1})


def test_double_windowed_labels():
    dq = double_windowed(2, 0, 5, 3, 1)
    v = DVert(1, (1, 2))
    assert dq.label(v) == (1, 2)
    assert dq.label(DVert(2, (1, 2))) == (2, 2)
    assert dq.label(DVert(0, (2, 1))) == (3, 1)


def test_phi_on_sequences_and_dimvecs():
    dq = double_cyclic(3, 1)
    seq = dq.phi_seq((0, 1, 2))
    assert [dq.label(v) for v in seq] == [0, 1, 2, 3]
    alpha = DimVec({0: 1, 1: 2})
    image = dq.phi_dimvec(alpha)
    assert image[DVert(0, 0)] == 1
    assert image[DVert(1, 1)] == 2
    assert image[DVert(2, 1)] == 2


def test_phi_weight_uses_first_copy():
    dq = double_cyclic(3, 1)
    from quiverhecke.quiver import WeightX

    w = WeightX({1: 1})
    assert dq.phi_weight(w).eps == {DVert(1, 1): 1}
    w0 = WeightX({0: 2}, delta=3)
    img = dq.phi_weight(w0)
    assert img.eps == {DVert(0, 0): 2}
    assert img.delta == 3


def test_upsilon_values():
    assert [upsilon(n, 3, 1) for n in range(6)] == [0, 1, 3, 4, 5, 7]
    assert upsilon(2, 2, 1) == 3


@given(st.integers(-30, 30), st.integers(2, 5), st.data())
def test_upsilon_shift_and_image(n, e, data):
    k = data.draw(st.integers(0, e - 1))
    assert upsilon(n + e, e, k) == upsilon(n, e, k) + e + 1
    assert upsilon(n, e, k) % (e + 1) != (k + 1) % (e + 1)
    assert upsilon(n + 1, e, k) > upsilon(n, e, k)


def test_pi_e_values():
    assert pi_e((5, 2), 3) == 2
    assert pi_e(((5, 2), (0, 1)), 3) == (2, 0)
    alpha = DimVec({(4, 1): 2, (1, 2): 1})
    assert pi_e(alpha, 3) == DimVec({1: 3})
    assert pi_e(alpha, 3).height() == alpha.height()


@settings(max_examples=50)
@given(st.lists(st.tuples(st.integers(0, 5), st.integers(1, 2)), max_size=4))
def test_pi_commutes_with_doubling(seq):
    # project-then-double equals double-then-project on labels
    e, k = 3, 1
    dw = double_windowed(2, 0, 5, e, k)
    dc = double_cyclic(e, k)
    seq = tuple(seq)
    lhs = tuple(pi_e(dw.label(v), e + 1) for v in dw.phi_seq(seq))
    rhs = tuple(dc.label(v) for v in dc.phi_seq(pi_e(seq, e)))
    assert lhs == rhs


def test_classify_examples():
    dq = double_cyclic(3, 1)
    one, two = DVert(1, 1), DVert(2, 1)
    v0, v3 = DVert(0, 0), DVert(0, 2)
    assert classify_seq((one, two)) == SeqClass.WELL_ORDERED
    assert classify_seq((two, one)) == SeqClass.UNORDERED
    assert almost_ordered((two, one))
    assert classify_seq((one, one, two, two)) == SeqClass.NEITHER
    assert not almost_ordered((one, one, two, two))
    assert classify_seq((v0, v3)) == SeqClass.WELL_ORDERED


def test_phi_image_well_ordered_and_unique():
    dq = double_cyclic(3, 1)
    alpha = DimVec({0: 1, 1: 2})
    bar = dq.phi_dimvec(alpha)
    images = set()
    for seq in sequences_of(alpha):
        img = dq.phi_seq(seq)
        assert classify_seq(img) == SeqClass.WELL_ORDERED
        assert dq.phi_seq_inverse(img) == seq
        images.add(img)
    # every well-ordered sequence with the image dimension vector is hit
    well = {s for s in sequences_of(bar)
            if classify_seq(s) == SeqClass.WELL_ORDERED}
    assert images == well


def test_almost_ordered_implies_unordered():
    dq = double_cyclic(2, 0)
    verts = dq.vertices
    for d in (2, 3, 4):
        for seq in itertools.product(verts, repeat=d):
            if almost_ordered(seq):
                assert classify_seq(seq) == SeqClass.UNORDERED


def test_phi_dimvec_image_characterization():
    dq = double_cyclic(2, 1)
    # phi images are exactly the balanced dimension vectors
    balanced = []
    for c0 in range(3):
        for c1 in range(3):
            alpha = DimVec({0: c0, 1: c1})
            balanced.append(dq.phi_dimvec(alpha))
    for bar in balanced:
        assert bar[DVert(1, 1)] == bar[DVert(2, 1)]
