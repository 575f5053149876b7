"""Dual canonical basis slices over a PBW chart.

The slice at weight nu is found by expressing the dual bar involution in
dual-PBW coordinates (matrix R, unitriangular for the left-lex order on
compositions) and solving for the unique unitriangular P with strictly
positive q-powers off the diagonal such that bar(P) R = P.  Rows of P
give G^up; the inverse-transpose of P against F^low gives G^low.
"""

from .pbw import enumerate_compositions, expand_dual_pbw, f_low, f_up
from .rootdata import QnilInternalError, QnilUsageError
from .scalars import (LaurentPoly, as_ratfunc, scalar_is_zero,
                      scalar_to_json, simplify_scalar)
from .uqminus import FElement, felement_equal, form, sigma


def _as_laurent(x):
    if isinstance(x, LaurentPoly):
        return x
    lp = x.as_laurent()
    if lp is None:
        raise QnilInternalError("expected Laurent entry, got %s" % (x,))
    return lp


def sigma_matrix(chart, nu):
    """(labels, R) with sigma(F^up(c)) = sum_{c'} R[c][c'] F^up(c').

    Unitriangularity, Laurent-ness of the entries, and bar(R).R = id are
    all asserted here; any failure means a bug upstream, not bad input.
    """
    labels = enumerate_compositions(chart, nu)
    if not labels:
        raise QnilUsageError("empty weight slice at %r" % (nu,))
    uq = chart.uq
    R = {}
    for c in labels:
        img = sigma(uq, f_up(chart, c))
        pc = expand_dual_pbw(img, chart)
        if not pc.in_span():
            raise QnilInternalError("sigma image left the slice at %r" % (c,))
        row = {}
        for c2, v in pc.coeffs.items():
            row[c2] = _as_laurent(simplify_scalar(v))
        for c2 in labels:
            if c2 > c and not scalar_is_zero(row.get(c2, LaurentPoly.zero())):
                raise QnilInternalError(
                    "sigma matrix not triangular: %r -> %r" % (c, c2))
        if row.get(c) != LaurentPoly.one():
            raise QnilInternalError("sigma matrix diagonal != 1 at %r" % (c,))
        R[c] = row
    # bar(R) R = identity, equivalent to sigma being an involution
    for c in labels:
        for c2 in labels:
            acc = LaurentPoly.zero()
            for mid in labels:
                a = R[c].get(mid)
                b = R.get(mid, {}).get(c2)
                if a is not None and b is not None:
                    acc = acc + a.bar() * b
            want = LaurentPoly.one() if c == c2 else LaurentPoly.zero()
            if acc != want:
                raise QnilInternalError("bar(R).R != id at (%r,%r)" % (c, c2))
    return labels, R


def _positive_part(p):
    out = LaurentPoly.zero()
    for e, c in p.items():
        if e > 0:
            if c != int(c):
                raise QnilInternalError("non-integer triangular entry")
            out = out + LaurentPoly.q_power(e, int(c))
    return out


def triangular_solve(labels, R):
    """Unitriangular P, off-diagonal entries in q.Z[q], with bar(P)R = P."""
    P = {}
    for c in labels:
        row = {c: LaurentPoly.one()}
        for c2 in reversed([l for l in labels if l < c]):
            alpha = LaurentPoly.zero()
            for mid, pv in row.items():
                if mid <= c2:
                    continue
                rv = R[mid].get(c2)
                if rv is not None:
                    alpha = alpha + pv.bar() * rv
            if alpha.is_zero():
                continue
            if not scalar_is_zero(alpha + alpha.bar()) or \
                    alpha.coeff(0) != 0:
                raise QnilInternalError(
                    "triangular solve: rhs not antisymmetric at %r,%r"
                    % (c, c2))
            row[c2] = _positive_part(alpha)
        P[c] = {k: v for k, v in row.items() if not v.is_zero()}
    return P


class DCBSlice:
    """One weight slice of the dual canonical basis in a fixed chart."""

    __slots__ = ("chart", "weight", "labels", "pmatrix", "elements")

    def __init__(self, chart, weight, labels, pmatrix, elements):
        self.chart = chart
        self.weight = weight
        self.labels = labels
        self.pmatrix = pmatrix
        self.elements = elements

    def to_json(self):
        return {
            "word": list(self.chart.word),
            "weight": list(self.weight),
            "labels": [list(c) for c in self.labels],
            "pmatrix": [[scalar_to_json(as_ratfunc(
                self.pmatrix[c].get(c2, LaurentPoly.zero())))
                for c2 in self.labels] for c in self.labels],
            "elements": [[list(c), self.elements[c].to_json()]
                         for c in self.labels],
        }


def dcb_slice(chart, nu):
    labels, R = sigma_matrix(chart, nu)
    P = triangular_solve(labels, R)
    uq = chart.uq
    elements = {}
    for c in labels:
        g = FElement.zero()
        for c2, pv in P[c].items():
            g = g + f_up(chart, c2).scale(pv)
        # independent re-check of the defining fixed-point property
        if not felement_equal(uq, sigma(uq, g), g):
            raise QnilInternalError("G^up not sigma-fixed at %r" % (c,))
        elements[c] = g
    nu = chart.label_weight(labels[0])
    return DCBSlice(chart, nu, labels, P, elements)


def invert_unitriangular(labels, P):
    """Q with sum_mid Q[c][mid] P[mid][c2] = delta, same triangular shape."""
    Q = {}
    for c in labels:
        row = {c: LaurentPoly.one()}
        for c2 in reversed([l for l in labels if l < c]):
            acc = LaurentPoly.zero()
            for mid, qv in row.items():
                if mid <= c2:
                    continue
                pv = P[mid].get(c2)
                if pv is not None:
                    acc = acc + qv * pv
            if not acc.is_zero():
                row[c2] = -acc
        Q[c] = {k: v for k, v in row.items() if not v.is_zero()}
    return Q


def canonical_low_slice(slc):
    """G^low rows, dual to G^up under the form: M = (P^{-1})^T on F^low."""
    chart = slc.chart
    uq = chart.uq
    Q = invert_unitriangular(slc.labels, slc.pmatrix)
    lows = {}
    for c in slc.labels:
        g = FElement.zero()
        for c2 in slc.labels:
            qv = Q.get(c2, {}).get(c)
            if qv is not None and not qv.is_zero():
                g = g + f_low(chart, c2).scale(qv)
        lows[c] = g
    for c in slc.labels:
        for c2 in slc.labels:
            got = as_ratfunc(form(uq, lows[c], slc.elements[c2]))
            want = as_ratfunc(LaurentPoly.one() if c == c2
                              else LaurentPoly.zero())
            if got != want:
                raise QnilInternalError(
                    "G^low/G^up biorthogonality fails at (%r,%r)" % (c, c2))
    return lows
