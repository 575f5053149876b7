"""Longest elements, the induced diagram flip, and the identity
diagram-auto o star = twist along w_0, with its coefficient-table
corollary."""

import pytest

from qnil.dcb import dcb_slice, invert_unitriangular
from qnil.finitetype import (dynkin_theta, longest_word, theta_auto,
                             verify_theta_star)
from qnil.pbw import build_chart
from qnil.rootdata import CartanDatum, QnilUsageError
from qnil.scalars import LaurentPoly
from qnil.uqfull import Uq

A2 = Uq(CartanDatum.from_name("A2"))
B2 = Uq(CartanDatum.from_name("B2"))


class TestLongestWord:
    def test_pins(self):
        assert longest_word(CartanDatum.from_name("A1")) == (1,)
        assert longest_word(A2.cartan) == (1, 2, 1)
        assert longest_word(CartanDatum.from_name("A3")) == \
            (1, 2, 3, 1, 2, 1)
        assert longest_word(B2.cartan) == (2, 1, 2, 1)
        assert longest_word(CartanDatum.from_name("G2")) == \
            (2, 1, 2, 1, 2, 1)

    def test_is_reduced_and_maximal(self):
        for name in ("A1", "A2", "A3", "B2", "G2"):
            cd = CartanDatum.from_name(name)
            w0 = longest_word(cd)
            assert cd.is_reduced(w0)
            # every simple reflection shortens it from the right
            for i in range(1, cd.n + 1):
                assert not cd.is_reduced(w0 + (i,))

    def test_affine_rejected(self):
        cd = CartanDatum([[2, -2], [-2, 2]], [1, 1])
        with pytest.raises(QnilUsageError):
            longest_word(cd)


class TestDynkinTheta:
    def test_pins(self):
        assert dynkin_theta(A2.cartan) == {1: 2, 2: 1}
        assert dynkin_theta(CartanDatum.from_name("A3")) == \
            {1: 3, 2: 2, 3: 1}
        assert dynkin_theta(B2.cartan) == {1: 1, 2: 2}
        assert dynkin_theta(CartanDatum.from_name("G2")) == {1: 1, 2: 2}

    def test_theta_auto_on_generators(self):
        assert theta_auto(A2, A2.f(1)).terms == A2.f(2).terms
        assert theta_auto(A2, A2.t_i(1)).terms == A2.t_i(2).terms
        assert theta_auto(B2, B2.e(2)).terms == B2.e(2).terms


class TestThetaStar:
    def test_a2(self):
        r = verify_theta_star(A2, (1, 1))
        assert r["ok"] and r["low_table_ok"]
        assert all(row["equal"] for row in r["monomials"])
        assert all(row["equal"] for row in r["labels"])
        assert len(r["monomials"]) == 2 and len(r["labels"]) == 2

    def test_a2_bigger_slice(self):
        assert verify_theta_star(A2, (2, 1))["ok"]

    def test_alternate_longest_word(self):
        assert verify_theta_star(A2, (1, 1), word=(2, 1, 2))["ok"]

    def test_rejects_non_longest_word(self):
        with pytest.raises(QnilUsageError):
            verify_theta_star(A2, (1, 1), word=(1, 2))

    def test_b2(self):
        assert verify_theta_star(B2, (1, 1))["ok"]
        assert verify_theta_star(B2, (1, 2), monomial_cap=2)["ok"]

    def test_a3(self):
        a3 = Uq(CartanDatum.from_name("A3"))
        assert verify_theta_star(a3, (1, 0, 1))["ok"]


class TestLowCoeffTable:
    def test_a2_pinned_entry(self):
        # the single off-diagonal coefficient of the inverse transition
        # matrix in the height-2 slice of the full chart
        slc = dcb_slice(build_chart(A2, (1, 2, 1)), (1, 1))
        Q = invert_unitriangular(slc.labels, slc.pmatrix)
        assert Q[(1, 0, 1)][(0, 1, 0)] == LaurentPoly.q_power(1)
        assert Q[(1, 0, 1)][(1, 0, 1)] == LaurentPoly.one()
        assert (0, 1, 0) not in Q[(0, 1, 0)] or \
            Q[(0, 1, 0)].get((1, 0, 1)) is None
