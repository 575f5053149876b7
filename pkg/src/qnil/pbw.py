"""Root vectors along a reduced word and the two PBW-type bases.

A chart fixes a reduced word (i_1,...,i_l).  Root vector k is the braid
image T_{i_1}...T_{i_{k-1}}(f_{i_k}), extracted back into the negative
half and stored as an FElement.  F^low(c) is the ordered product of
divided powers of root vectors; F^up(c) rescales F^low(c) by the inverse
of its squared norm

    (F^low(c), F^low(c))_L = prod_k prod_{j=1..c_k} (1 - q_{i_k}^{2j})^{-1}

which is asserted against the directly computed form the first time each
composition is touched.
"""

from .rootdata import QnilInternalError, QnilUsageError
from .scalars import (LaurentPoly, as_ratfunc, scalar_is_zero,
                      simplify_scalar)
from .uqminus import (DualVector, FElement, dual_vector, felement_counts,
                      form, to_word_form, uq_to_felement)


class PBWChart:
    """Reduced word plus its root vectors; memoizes basis elements."""

    __slots__ = ("uq", "word", "roots", "root_counts", "rootvecs",
                 "_flow", "_fup", "_norms")

    def __init__(self, uq, word, roots, root_counts, rootvecs):
        self.uq = uq
        self.word = word
        self.roots = roots
        self.root_counts = root_counts
        self.rootvecs = rootvecs
        self._flow = {}
        self._fup = {}
        self._norms = {}

    def __len__(self):
        return len(self.word)

    def label_weight(self, c):
        """Root coordinates of sum c_k beta_k."""
        n = self.uq.cartan.n
        out = [0] * n
        for ck, beta in zip(c, self.root_counts):
            for a in range(n):
                out[a] += ck * beta[a]
        return tuple(out)


def build_chart(uq, word):
    cd = uq.cartan
    word = cd.check_word(word)
    if not cd.is_reduced(word):
        raise QnilUsageError("word is not reduced: %r" % (word,))
    roots = cd.positive_roots_along(word)
    root_counts = [cd.root_coords(b) for b in roots]
    rootvecs = []
    for k in range(len(word)):
        img = uq.braid_word(word[:k], 1, uq.f(word[k]))
        fe = uq_to_felement(uq, img)          # raises if outside U_q^-
        fe = to_word_form(uq, dual_vector(uq, fe))
        if felement_counts(uq, fe) != root_counts[k]:
            raise QnilInternalError("root vector weight mismatch at k=%d" % k)
        rootvecs.append(fe)
    return PBWChart(uq, word, roots, root_counts, rootvecs)


def norm_denominator(chart, c):
    """prod_k prod_{j<=c_k} (1 - q_{i_k}^{2j}) as a Laurent polynomial."""
    out = LaurentPoly.one()
    for ck, i in zip(c, chart.word):
        d = chart.uq.cartan.sym[i - 1]
        for j in range(1, ck + 1):
            out = out * (LaurentPoly.one() - LaurentPoly.q_power(2 * d * j))
    return out


def f_low(chart, c):
    c = _check_comp(chart, c)
    hit = chart._flow.get(c)
    if hit is not None:
        return hit
    uq = chart.uq
    out = FElement.one()
    for ck, i, vec in zip(c, chart.word, chart.rootvecs):
        if ck == 0:
            continue
        power = vec
        for _ in range(ck - 1):
            power = power * vec
        out = out * power.scale(uq.inv_qfactorial(ck, i))
    out = FElement._raw({w: simplify_scalar(cf) for w, cf in
                         out.terms.items()})
    chart._flow[c] = out
    return out


def f_up(chart, c):
    c = _check_comp(chart, c)
    hit = chart._fup.get(c)
    if hit is not None:
        return hit
    low = f_low(chart, c)
    denom = norm_denominator(chart, c)
    # closed-form norm must agree with the form itself; cheap self-check
    direct = as_ratfunc(form(chart.uq, low, low))
    if direct * as_ratfunc(denom) != as_ratfunc(LaurentPoly.one()):
        raise QnilInternalError("PBW norm formula mismatch at c=%r" % (c,))
    out = low.scale(denom)
    chart._fup[c] = out
    return out


def enumerate_compositions(chart, nu):
    """All c with sum c_k beta_k = nu, ascending left-lex order."""
    nu = _as_counts(chart, nu)
    if any(v < 0 for v in nu):
        return []
    l = len(chart.word)
    n = chart.uq.cartan.n
    out = []

    def rec(k, rem, acc):
        if k == l:
            if not any(rem):
                out.append(tuple(acc))
            return
        beta = chart.root_counts[k]
        # height decreases by ht(beta) per unit, bounding the exponent
        cap = min((rem[a] // beta[a]) for a in range(n) if beta[a])
        for ck in range(cap + 1):
            acc.append(ck)
            rec(k + 1, tuple(rem[a] - ck * beta[a] for a in range(n)), acc)
            acc.pop()

    rec(0, nu, [])
    return out


class PBWCoeffs:
    """Coordinates of an element in the dual PBW basis of one chart."""

    __slots__ = ("chart", "coeffs", "residual")

    def __init__(self, chart, coeffs, residual):
        self.chart = chart
        self.coeffs = coeffs
        self.residual = residual

    def in_span(self):
        return self.residual.is_zero()

    def element(self):
        out = FElement.zero()
        for c, coef in self.coeffs.items():
            out = out + f_up(self.chart, c).scale(coef)
        return out

    def to_json(self):
        from .scalars import scalar_to_json
        return {
            "word": list(self.chart.word),
            "coeffs": [[list(c), scalar_to_json(as_ratfunc(v))]
                       for c, v in sorted(self.coeffs.items())],
            "in_span": self.in_span(),
        }


def expand_dual_pbw(x, chart):
    """Coordinates of a homogeneous x in {F^up(c)}: the c-th coefficient
    is (x, F^low(c))_L.

    The residual dual vector x - sum coeffs[c] F^up(c) is returned inside
    the result; it vanishes exactly when x lies in the span.
    """
    uq = chart.uq
    counts = felement_counts(uq, x)
    if counts is None:                      # literal zero input
        zero_w = (0,) * uq.cartan.n
        return PBWCoeffs(chart, {},
                         DualVector(zero_w, {(): LaurentPoly.zero()}))
    coeffs = {}
    approx = FElement.zero()
    for c in enumerate_compositions(chart, counts):
        coef = simplify_scalar(as_ratfunc(form(uq, x, f_low(chart, c))))
        if scalar_is_zero(coef):
            continue
        coeffs[c] = coef
        approx = approx + f_up(chart, c).scale(coef)
    diff = x - approx
    if diff.is_zero_literal():
        residual = DualVector(counts, {})
    else:
        residual = dual_vector(uq, diff)
    return PBWCoeffs(chart, coeffs, residual)


def _check_comp(chart, c):
    c = tuple(int(v) for v in c)
    if len(c) != len(chart.word) or any(v < 0 for v in c):
        raise QnilUsageError("composition %r does not fit the chart" % (c,))
    return c


def _as_counts(chart, nu):
    if hasattr(nu, "coords"):
        return chart.uq.cartan.root_coords(nu)
    return tuple(int(v) for v in nu)
