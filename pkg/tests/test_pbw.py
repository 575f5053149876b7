"""PBW charts: root vectors, the two bases, orthogonality, expansion."""

import itertools
import random

import pytest

from qnil.pbw import (build_chart, enumerate_compositions, expand_dual_pbw,
                      f_low, f_up, norm_denominator)
from qnil.rootdata import CartanDatum, QnilUsageError
from qnil.scalars import LaurentPoly, RatFunc, as_ratfunc, scalar_is_zero
from qnil.uqfull import Uq
from qnil.uqminus import FElement, felement_equal, form


A2 = Uq(CartanDatum.from_name("A2"))
B2 = Uq(CartanDatum.from_name("B2"))


def slice_compositions(chart, height):
    """Every composition of every slice up to the given height."""
    out = []
    n = chart.uq.cartan.n
    for total in range(height + 1):
        for nu in itertools.product(range(total + 1), repeat=n):
            if sum(nu) == total:
                out.extend(enumerate_compositions(chart, nu))
    return out


class TestChart:
    def test_a2_rootvecs(self):
        ch = build_chart(A2, (1, 2, 1))
        assert ch.rootvecs[0] == FElement.word((1,))
        assert ch.rootvecs[2] == FElement.word((2,))
        want = FElement.word((2, 1)) - FElement.word((1, 2),
                                                     LaurentPoly.q_power(1))
        assert felement_equal(A2, ch.rootvecs[1], want)

    def test_single_letter(self):
        ch = build_chart(B2, (2,))
        assert ch.rootvecs == [FElement.word((2,))]

    def test_rejects_nonreduced(self):
        with pytest.raises(QnilUsageError):
            build_chart(A2, (1, 1))

    def test_label_weight(self):
        ch = build_chart(A2, (1, 2, 1))
        assert ch.label_weight((1, 0, 1)) == (1, 1)
        assert ch.label_weight((0, 1, 0)) == (1, 1)
        assert ch.label_weight((2, 1, 0)) == (3, 1)


class TestCompositions:
    def test_frozen(self):
        ch = build_chart(A2, (1, 2, 1))
        assert enumerate_compositions(ch, (1, 1)) == [(0, 1, 0), (1, 0, 1)]
        assert enumerate_compositions(ch, (0, 0)) == [(0, 0, 0)]
        assert enumerate_compositions(ch, (1, 0)) == [(1, 0, 0)]

    def test_left_lex_sorted(self):
        ch = build_chart(B2, (1, 2, 1, 2))
        for nu in ((1, 1), (1, 2), (2, 2), (2, 3)):
            comps = enumerate_compositions(ch, nu)
            assert comps == sorted(comps)
            for c in comps:
                assert ch.label_weight(c) == nu


class TestBases:
    def test_frozen_a2(self):
        ch = build_chart(A2, (1, 2, 1))
        assert f_low(ch, (1, 0, 1)) == FElement.word((1, 2))
        one_m_q2 = LaurentPoly.one() - LaurentPoly.q_power(2)
        want = FElement.word((1, 2), one_m_q2 * one_m_q2)
        assert f_up(ch, (1, 0, 1)) == want
        up = f_up(ch, (0, 1, 0))
        want = (FElement.word((2, 1)) -
                FElement.word((1, 2), LaurentPoly.q_power(1))).scale(one_m_q2)
        assert felement_equal(A2, up, want)

    def test_zero_composition(self):
        ch = build_chart(A2, (1, 2, 1))
        assert f_low(ch, (0, 0, 0)) == FElement.one()
        assert f_up(ch, (0, 0, 0)) == FElement.one()

    def test_divided_powers(self):
        # F^low along a single letter is f_i^{(n)}, norm (1-q^2)...(1-q^{2n})
        ch = build_chart(A2, (1,))
        lo = f_low(ch, (3,))
        dv3 = A2.inv_qfactorial(3, 1)
        assert lo == FElement.word((1, 1, 1)).scale(dv3)
        nd = norm_denominator(ch, (3,))
        got = as_ratfunc(form(A2, lo, lo)) * as_ratfunc(nd)
        assert got == RatFunc.one()

    def test_orthogonality_small_slices(self):
        # (F^low(c), F^low(c')) = delta / norm_denominator(c)
        for uq, word, height in ((A2, (1, 2, 1), 4), (B2, (1, 2, 1, 2), 4)):
            ch = build_chart(uq, word)
            comps = slice_compositions(ch, height)
            for c in comps:
                for c2 in comps:
                    got = as_ratfunc(form(uq, f_low(ch, c), f_low(ch, c2)))
                    if c == c2:
                        want = as_ratfunc(norm_denominator(ch, c)).inv()
                    else:
                        want = RatFunc.zero()
                    assert got == want, (word, c, c2)

    def test_duality(self):
        # (F^up(c), F^low(c')) = delta_{c,c'}
        ch = build_chart(B2, (1, 2, 1, 2))
        comps = enumerate_compositions(ch, (1, 2))
        for c in comps:
            for c2 in comps:
                got = as_ratfunc(form(B2, f_up(ch, c), f_low(ch, c2)))
                want = RatFunc.one() if c == c2 else RatFunc.zero()
                assert got == want


class TestExpansion:
    def test_frozen_a2(self):
        ch = build_chart(A2, (1, 2, 1))
        one_m_q2 = RatFunc.from_laurent(LaurentPoly.one()
                                        - LaurentPoly.q_power(2))
        pc = expand_dual_pbw(FElement.word((1, 2)), ch)
        assert pc.in_span()
        assert set(pc.coeffs) == {(1, 0, 1)}
        assert as_ratfunc(pc.coeffs[(1, 0, 1)]) == (one_m_q2 ** 2).inv()
        pc = expand_dual_pbw(FElement.word((2, 1)), ch)
        assert pc.in_span()
        assert as_ratfunc(pc.coeffs[(0, 1, 0)]) == one_m_q2.inv()
        assert as_ratfunc(pc.coeffs[(1, 0, 1)]) == \
            RatFunc.from_laurent(LaurentPoly.q_power(1)) * \
            (one_m_q2 ** 2).inv()

    def test_unit_coefficient_on_fup(self):
        ch = build_chart(B2, (1, 2, 1, 2))
        for c in ((1, 0, 1, 0), (0, 1, 0, 1), (2, 0, 0, 1)):
            pc = expand_dual_pbw(f_up(ch, c), ch)
            assert pc.in_span()
            assert set(pc.coeffs) == {c}
            assert as_ratfunc(pc.coeffs[c]) == RatFunc.one()

    def test_roundtrip_random_combos(self):
        rng = random.Random(41)
        ch = build_chart(B2, (1, 2, 1, 2))
        comps = enumerate_compositions(ch, (2, 2))
        for _ in range(5):
            coeffs = {c: LaurentPoly.q_power(rng.randrange(-2, 3),
                                             rng.randrange(-3, 4))
                      for c in comps if rng.random() < 0.7}
            x = FElement.zero()
            for c, coef in coeffs.items():
                x = x + f_up(ch, c).scale(coef)
            if x.is_zero_literal():
                continue
            pc = expand_dual_pbw(x, ch)
            assert pc.in_span()
            for c in comps:
                want = as_ratfunc(coeffs.get(c, LaurentPoly.zero()))
                got = as_ratfunc(pc.coeffs.get(c, RatFunc.zero()))
                assert got == want

    def test_residual_outside_span(self):
        # chart of w = s_1 spans only powers of f_1
        ch = build_chart(A2, (1,))
        pc = expand_dual_pbw(FElement.word((2,)), ch)
        assert not pc.in_span()
        assert pc.coeffs == {}
        pc = expand_dual_pbw(FElement.word((1, 2)), ch)
        assert not pc.in_span()

    def test_chart_independence(self):
        # same w, two reduced words: every F^up transfers with zero residual
        cha = build_chart(A2, (1, 2, 1))
        chb = build_chart(A2, (2, 1, 2))
        for c in slice_compositions(cha, 4):
            pc = expand_dual_pbw(f_up(cha, c), chb)
            assert pc.in_span(), c
            back = expand_dual_pbw(pc.element(), cha)
            assert back.in_span()
            assert set(back.coeffs) == {c}
            assert as_ratfunc(back.coeffs[c]) == RatFunc.one()

    def test_json_shape(self):
        ch = build_chart(A2, (1, 2, 1))
        pc = expand_dual_pbw(FElement.word((2, 1)), ch)
        data = pc.to_json()
        assert data["word"] == [1, 2, 1]
        assert data["in_span"] is True
        assert [c for c, _ in data["coeffs"]] == \
            sorted(c for c, _ in data["coeffs"])
