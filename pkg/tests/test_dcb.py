"""Dual canonical basis slices: the sigma matrix, the triangular solve,
and the dual pair G^up / G^low."""

import itertools

import pytest

from qnil.dcb import (canonical_low_slice, dcb_slice, invert_unitriangular,
                      sigma_matrix, triangular_solve)
from qnil.pbw import build_chart, enumerate_compositions, expand_dual_pbw, f_up
from qnil.rootdata import CartanDatum, QnilUsageError
from qnil.scalars import LaurentPoly, as_ratfunc, bar_scalar, scalar_is_zero
from qnil.uqfull import Uq
from qnil.uqminus import FElement, felement_equal, sigma


A2 = Uq(CartanDatum.from_name("A2"))
B2 = Uq(CartanDatum.from_name("B2"))


def slices_up_to(chart, height):
    n = chart.uq.cartan.n
    for total in range(1, height + 1):
        for nu in itertools.product(range(total + 1), repeat=n):
            if sum(nu) == total and enumerate_compositions(chart, nu):
                yield nu


def is_q_int_poly(p):
    """Entry lies in qZ[q]: integer coefficients, strictly positive powers."""
    return all(e >= 1 and c == int(c) for e, c in p.items())


class TestSigmaMatrix:
    def test_frozen_a2(self):
        ch = build_chart(A2, (1, 2, 1))
        labels, R = sigma_matrix(ch, (1, 1))
        assert labels == [(0, 1, 0), (1, 0, 1)]
        assert R[(1, 0, 1)][(0, 1, 0)] == \
            LaurentPoly.q_power(-1) - LaurentPoly.q_power(1)
        assert R[(0, 1, 0)].get((1, 0, 1)) is None

    def test_unit_slice_identity(self):
        ch = build_chart(A2, (1, 2, 1))
        labels, R = sigma_matrix(ch, (1, 0))
        assert labels == [(1, 0, 0)]
        assert R[(1, 0, 0)] == {(1, 0, 0): LaurentPoly.one()}

    def test_empty_slice(self):
        ch = build_chart(A2, (1,))
        with pytest.raises(QnilUsageError):
            sigma_matrix(ch, (0, 1))


class TestTriangularSolve:
    def test_identity(self):
        labels = [(0,), (1,)]
        R = {(0,): {(0,): LaurentPoly.one()},
             (1,): {(1,): LaurentPoly.one()}}
        P = triangular_solve(labels, R)
        assert P == R

    def test_two_by_two(self):
        labels = [(0,), (1,)]
        R = {(0,): {(0,): LaurentPoly.one()},
             (1,): {(1,): LaurentPoly.one(),
                    (0,): LaurentPoly.q_power(-1) - LaurentPoly.q_power(1)}}
        P = triangular_solve(labels, R)
        assert P[(1,)][(0,)] == LaurentPoly.q_power(1, -1)

    def test_two_by_two_higher(self):
        labels = [(0,), (1,)]
        R = {(0,): {(0,): LaurentPoly.one()},
             (1,): {(1,): LaurentPoly.one(),
                    (0,): LaurentPoly.q_power(-3) - LaurentPoly.q_power(3)}}
        P = triangular_solve(labels, R)
        assert P[(1,)][(0,)] == LaurentPoly.q_power(3, -1)


class TestSlices:
    def test_frozen_a2(self):
        ch = build_chart(A2, (1, 2, 1))
        slc = dcb_slice(ch, (1, 1))
        assert slc.pmatrix[(1, 0, 1)][(0, 1, 0)] == LaurentPoly.q_power(1, -1)
        one_m_q2 = LaurentPoly.one() - LaurentPoly.q_power(2)
        want = (FElement.word((2, 1)) -
                FElement.word((1, 2), LaurentPoly.q_power(1))).scale(one_m_q2)
        assert felement_equal(A2, slc.elements[(0, 1, 0)], want)
        want = (FElement.word((1, 2)) -
                FElement.word((2, 1), LaurentPoly.q_power(1))).scale(one_m_q2)
        assert felement_equal(A2, slc.elements[(1, 0, 1)], want)

    def test_unit_slice_is_fup(self):
        ch = build_chart(A2, (1, 2, 1))
        slc = dcb_slice(ch, (1, 0))
        assert slc.elements[(1, 0, 0)] == f_up(ch, (1, 0, 0))
        want = FElement.word((1,), LaurentPoly.one() - LaurentPoly.q_power(2))
        assert felement_equal(A2, slc.elements[(1, 0, 0)], want)

    def test_characterization_properties(self):
        # (DCB1) sigma-invariance, (DCB2) off-diagonal entries in qZ[q]
        for uq, word, height in ((A2, (1, 2, 1), 4), (B2, (1, 2, 1, 2), 4)):
            ch = build_chart(uq, word)
            for nu in slices_up_to(ch, height):
                slc = dcb_slice(ch, nu)
                for c in slc.labels:
                    assert felement_equal(uq, sigma(uq, slc.elements[c]),
                                          slc.elements[c])
                    for c2, v in slc.pmatrix[c].items():
                        if c2 == c:
                            assert v == LaurentPoly.one()
                        else:
                            assert c2 < c
                            assert is_q_int_poly(v)

    def test_inverse_expansion_support(self):
        # F^up(c) = G^up(c) + (qZ[q] combinations of smaller labels)
        ch = build_chart(B2, (1, 2, 1, 2))
        slc = dcb_slice(ch, (2, 2))
        Q = invert_unitriangular(slc.labels, slc.pmatrix)
        for c in slc.labels:
            for c2, v in Q[c].items():
                if c2 == c:
                    assert v == LaurentPoly.one()
                else:
                    assert c2 < c
                    assert is_q_int_poly(v)

    def test_json_shape(self):
        ch = build_chart(A2, (1, 2, 1))
        data = dcb_slice(ch, (1, 1)).to_json()
        assert data["labels"] == [[0, 1, 0], [1, 0, 1]]
        assert len(data["pmatrix"]) == 2


class TestLowSlice:
    def test_frozen_a2(self):
        ch = build_chart(A2, (1, 2, 1))
        slc = dcb_slice(ch, (1, 1))
        lows = canonical_low_slice(slc)
        assert felement_equal(A2, lows[(0, 1, 0)], FElement.word((2, 1)))
        assert felement_equal(A2, lows[(1, 0, 1)], FElement.word((1, 2)))

    def test_bar_invariance(self):
        # bar fixes G^low; bar conjugates coefficients and keeps f-words
        for uq, word in ((A2, (1, 2, 1)), (B2, (1, 2, 1, 2))):
            ch = build_chart(uq, word)
            for nu in slices_up_to(ch, 4):
                lows = canonical_low_slice(dcb_slice(ch, nu))
                for g in lows.values():
                    barred = FElement({w: bar_scalar(as_ratfunc(c))
                                       for w, c in g.terms.items()})
                    assert felement_equal(uq, barred, g)

    def test_biorthogonality_cross_slice(self):
        # built-in check runs inside canonical_low_slice; exercise B2 deep
        ch = build_chart(B2, (1, 2, 1, 2))
        slc = dcb_slice(ch, (1, 2))
        assert set(canonical_low_slice(slc)) == set(slc.labels)
