"""Finite-type extras: the longest element, the diagram flip it induces,
and the identity theta o star = twist along w_0."""

from .dcb import dcb_slice, invert_unitriangular
from .pbw import build_chart
from .rootdata import QnilInternalError, QnilUsageError
from .scalars import LaurentPoly, scalar_is_zero
from .twist import _rev, right_lex_less, theta, twisted_counts
from .uqfull import UqElement
from .uqminus import (FElement, felement_to_uq, multiset_words, uq_equal,
                      uq_to_felement)


def longest_word(cd):
    """Reduced word of w_0 by steering rho to the antidominant chamber.

    Terminates within the step cap exactly for finite type; the cap is
    generous (10 n^2 + 10 >= number of positive roots at desk ranks).
    """
    n = cd.n
    mu = cd.rho()
    picked = []
    cap = 10 * n * n + 10
    for _ in range(cap):
        i = next((j for j in range(1, n + 1) if cd.pairing(mu, j) > 0), None)
        if i is None:
            return tuple(reversed(picked))
        picked.append(i)
        mu = cd.reflect(i, mu)
    raise QnilUsageError("not finite type: longest-element search exceeded "
                         "%d steps" % cap)


def dynkin_theta(cd):
    """Permutation theta with -w_0(alpha_i) = alpha_{theta(i)}."""
    w0 = longest_word(cd)
    n = cd.n
    out = {}
    for i in range(1, n + 1):
        img = cd.weyl_act(w0, cd.simple_root(i))
        coords = cd.root_coords(cd.zero_weight() - img)
        if sum(coords) != 1 or any(v not in (0, 1) for v in coords):
            raise QnilInternalError("-w0(alpha_%d) is not simple" % i)
        out[i] = coords.index(1) + 1
    if sorted(out.values()) != list(range(1, n + 1)):
        raise QnilInternalError("diagram map is not a permutation")
    return out


def theta_auto(uq, x):
    """The diagram automorphism on U_q: relabels generator indices and
    applies -w_0 to the torus part; no re-ordering is needed."""
    perm = dynkin_theta(uq.cartan)
    n = uq.cartan.n

    def rel(word):
        return tuple(perm[a] for a in word)

    def relk(kappa):
        out = [0] * n
        for a in range(n):
            if kappa[a]:
                out[perm[a + 1] - 1] = kappa[a]
        return tuple(out)

    return UqElement._raw({(rel(f), relk(k), rel(e)): c
                           for (f, k, e), c in x.terms.items()})


def verify_theta_star(uq, nu, word=None, monomial_cap=None):
    """Three-part report:
    (a) theta(star(m)) = twist along w_0 of m for every f-monomial m of
        the weight slice;
    (b) the same identity on dual canonical elements, matching labels
        c -> c^rev between the charts of word and reversed word;
    (c) (G^low(b(c)) : F^low(c')) table: reversal symmetry and support
        inside {c < c'} intersect {c <_r c'}.
    """
    cd = uq.cartan
    w0 = longest_word(cd)
    if word is None:
        word = w0
    word = cd.check_word(word)
    if not cd.word_equal(word, w0):
        raise QnilUsageError("word %r is not a longest-element word"
                             % (word,))
    nu = tuple(int(v) for v in nu)

    mono_rows = []
    ok = True
    words = multiset_words(nu)
    if monomial_cap is not None:
        words = words[:monomial_cap]
    for w in words:
        x = uq.f_word(w)
        lhs = theta_auto(uq, uq.star(x))
        rhs = theta(uq, word, x)
        equal = uq_equal(uq, lhs, rhs)
        ok = ok and equal
        mono_rows.append({"monomial": list(w), "equal": equal})

    chart = build_chart(uq, word)
    slc = dcb_slice(chart, nu)
    nu2 = twisted_counts(cd, word, nu)
    target = dcb_slice(build_chart(uq, _rev(word)), nu2)
    label_rows = []
    for c in slc.labels:
        lhs = theta_auto(uq, uq.star(felement_to_uq(uq, slc.elements[c])))
        rhs = felement_to_uq(uq, target.elements[_rev(c)])
        equal = uq_equal(uq, lhs, rhs)
        ok = ok and equal
        label_rows.append({"c": list(c), "equal": equal})

    # coefficient table of G^low over F^low: m[c][c'] = (P^{-1})[c'][c]
    Q = invert_unitriangular(slc.labels, slc.pmatrix)
    Qr = invert_unitriangular(target.labels, target.pmatrix)
    table_ok = True
    for c in slc.labels:
        for c2 in slc.labels:
            v = Q.get(c2, {}).get(c, LaurentPoly.zero())
            vr = Qr.get(_rev(c2), {}).get(_rev(c), LaurentPoly.zero())
            if v != vr:
                table_ok = False
            if c != c2 and not scalar_is_zero(v):
                if not (c < c2 and right_lex_less(c, c2)):
                    table_ok = False
    ok = ok and table_ok

    return {"ok": ok, "word": list(word), "weight": list(nu),
            "monomials": mono_rows, "labels": label_rows,
            "low_table_ok": table_ok}
