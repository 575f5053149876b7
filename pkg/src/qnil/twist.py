"""The twist anti-automorphism T_w o S o vee and its verification suite.

Conventions: for a reduced word i = (i_1,...,i_l) of w, the twist along
w^{-1} is computed with the reversed word.  All comparisons between
elements of the negative half go through dual vectors; comparisons in
the full algebra use the robust kernel-backed zero test.
"""

from .dcb import dcb_slice, invert_unitriangular
from .pbw import build_chart, f_up
from .rootdata import QnilInternalError, QnilUsageError
from .scalars import (LaurentPoly, as_ratfunc, scalar_is_zero,
                      scalar_to_json, simplify_scalar)
from .uqfull import UqElement
from .uqminus import (FElement, felement_counts, felement_equal,
                      felement_to_uq, form, sigma, uq_equal, uq_to_felement)


def theta_composed(uq, word, x):
    """Twist along the Weyl element of `word` by composing the three
    defining maps directly: T_w(S(x^vee))."""
    word = uq.cartan.check_word(word)
    return uq.braid_word(word, 1, uq.antipode(uq.vee(x)))


def _theta_caches(uq):
    gen = getattr(uq, "_theta_gen", None)
    if gen is None:
        gen = uq._theta_gen = {}
        uq._theta_mono = {}
    return gen, uq._theta_mono


def _theta_gen_image(uq, word, kind, val):
    gens, _ = _theta_caches(uq)
    key = (word, kind, val)
    hit = gens.get(key)
    if hit is None:
        if kind == 'f':
            base = uq.f(val)
        elif kind == 'e':
            base = uq.e(val)
        else:
            base = uq.t(val)
        hit = theta_composed(uq, word, base)
        gens[key] = hit
    return hit


def _theta_mono(uq, word, mono):
    _, monos = _theta_caches(uq)
    key = (word, mono)
    hit = monos.get(key)
    if hit is None:
        f, k, e = mono
        cur = uq.one()
        for j in reversed(e):
            cur = uq.multiply(cur, _theta_gen_image(uq, word, 'e', j))
        if any(k):
            cur = uq.multiply(cur, _theta_gen_image(uq, word, 't', k))
        for j in reversed(f):
            cur = uq.multiply(cur, _theta_gen_image(uq, word, 'f', j))
        monos[key] = hit = cur
    return hit


def theta(uq, word, x):
    """Twist along the Weyl element of `word`: T_w(S(x^vee)).

    The composition of the three defining maps reverses products, so a
    monomial's image is the reversed product of cached generator images;
    this avoids braiding whole intermediate elements through the word.
    """
    word = uq.cartan.check_word(word)
    out = {}
    for mono, c in x.terms.items():
        img = _theta_mono(uq, word, mono)
        for m, cc in img.terms.items():
            s = out.get(m, 0) + c * cc
            if scalar_is_zero(s):
                out.pop(m, None)
            else:
                out[m] = s
    return UqElement._raw({m: simplify_scalar(v) for m, v in out.items()})


def _rev(seq):
    return tuple(reversed(seq))


def theta_inverse_word(uq, word, x):
    """Twist along w^{-1} given a word of w."""
    return theta(uq, _rev(word), x)


def twisted_counts(cd, word, counts):
    """Letter counts of the twist image: nu |-> -w^{-1}(-nu)."""
    nu = cd.root_weight(counts)
    image = cd.weyl_act(_rev(word), nu)
    out = tuple(-v for v in cd.root_coords(image))
    if any(v < 0 for v in out):
        raise QnilUsageError(
            "weight %r does not twist into the negative half along %r"
            % (counts, word))
    return out


def verify_rootvector_images(uq, word):
    """Theta_{w^{-1}} sends the k-th root vector of i to the braid image
    T_{i_l}...T_{i_{k+1}}(f_{i_k}) of the reversed tail."""
    cd = uq.cartan
    word = cd.check_word(word)
    if not cd.is_reduced(word):
        raise QnilUsageError("word is not reduced: %r" % (word,))
    per_k = []
    ok = True
    for k in range(len(word)):
        rootvec = uq.braid_word(word[:k], 1, uq.f(word[k]))
        lhs = theta_inverse_word(uq, word, rootvec)
        rhs = uq.braid_word(_rev(word[k + 1:]), 1, uq.f(word[k]))
        equal = uq_equal(uq, lhs, rhs)
        ok = ok and equal
        per_k.append({"k": k + 1, "equal": equal})
    return {"ok": ok, "word": list(word), "per_k": per_k}


def verify_pbw_reversal(chart, c, target_chart=None):
    """Theta_{w^{-1}}(F^up(c,i)) = F^up(c^rev, i^rev), via dual vectors."""
    uq = chart.uq
    if target_chart is None:
        target_chart = build_chart(uq, _rev(chart.word))
    lhs_uq = theta_inverse_word(uq, chart.word,
                                felement_to_uq(uq, f_up(chart, c)))
    try:
        lhs = uq_to_felement(uq, lhs_uq)
    except QnilUsageError:
        return False
    rhs = f_up(target_chart, _rev(c))
    return felement_equal(uq, lhs, rhs)


def verify_dcb_twist(uq, word, nu):
    """Label-by-label check that the twist permutes dual canonical bases
    by (c, i) -> (c^rev, i^rev), and commutes with the dual bar map."""
    cd = uq.cartan
    word = cd.check_word(word)
    if not cd.is_reduced(word):
        raise QnilUsageError("word is not reduced: %r" % (word,))
    nu = tuple(int(v) for v in nu)
    chart = build_chart(uq, word)
    slc = dcb_slice(chart, nu)
    nu2 = twisted_counts(cd, word, nu)
    target = dcb_slice(build_chart(uq, _rev(word)), nu2)
    if sorted(_rev(c) for c in slc.labels) != sorted(target.labels):
        raise QnilInternalError("label sets do not reverse onto each other")
    rows = []
    ok = True
    for c in slc.labels:
        g = slc.elements[c]
        img_uq = theta_inverse_word(uq, word, felement_to_uq(uq, g))
        entry = {"c": list(c), "c_rev": list(_rev(c))}
        try:
            img = uq_to_felement(uq, img_uq)
        except QnilUsageError:
            entry.update(equal=False, reason="image left the negative half")
            rows.append(entry)
            ok = False
            continue
        want = target.elements[_rev(c)]
        equal = felement_equal(uq, img, want)
        # the twist must also intertwine the dual bar involutions
        sig_lhs = uq_to_felement(
            uq, theta_inverse_word(uq, word,
                                   felement_to_uq(uq, sigma(uq, g))))
        sig_ok = felement_equal(uq, sig_lhs, sigma(uq, img))
        entry.update(equal=equal, sigma_commutes=sig_ok)
        ok = ok and equal and sig_ok
        rows.append(entry)
    return {"ok": ok, "word": list(word), "weight": list(nu),
            "target_weight": list(nu2), "labels": rows}


def right_lex_less(a, b):
    return _rev(a) < _rev(b)


def reverse_coeff_table(uq, word, nu):
    """Coefficients [F^up(c) : G^up(b(c'))] agree under simultaneous
    reversal of c, c' and the word, and are supported on labels that are
    smaller in BOTH lexicographic orders."""
    cd = uq.cartan
    word = cd.check_word(word)
    nu = tuple(int(v) for v in nu)
    chart = build_chart(uq, word)
    slc = dcb_slice(chart, nu)
    Q = invert_unitriangular(slc.labels, slc.pmatrix)
    nu2 = twisted_counts(cd, word, nu)
    target = dcb_slice(build_chart(uq, _rev(word)), nu2)
    Qr = invert_unitriangular(target.labels, target.pmatrix)
    entries = []
    ok = True
    for c in slc.labels:
        for c2 in slc.labels:
            v = Q[c].get(c2, LaurentPoly.zero())
            vr = Qr[_rev(c)].get(_rev(c2), LaurentPoly.zero())
            equal = (v == vr)
            if c == c2:
                support_ok = v == LaurentPoly.one()
            elif scalar_is_zero(v):
                support_ok = True
            else:
                support_ok = (c2 < c) and right_lex_less(c2, c)
            ok = ok and equal and support_ok
            if scalar_is_zero(v) and scalar_is_zero(vr):
                continue
            entries.append({
                "c": list(c), "c2": list(c2),
                "coeff": scalar_to_json(as_ratfunc(v)),
                "reversed_coeff": scalar_to_json(as_ratfunc(vr)),
                "equal": equal, "support_ok": support_ok,
            })
    return {"ok": ok, "word": list(word), "weight": list(nu),
            "entries": entries}


def twist_scalar(cd, beta_counts):
    """(-1)^{ht beta} q^{(beta,beta)/2 - (rho,beta)} as a Laurent monomial."""
    beta = cd.root_weight(beta_counts)
    ht = sum(beta_counts)
    bb = cd.bilinear(beta, beta)
    if bb % 2:
        raise QnilInternalError("odd (beta,beta) for a root-lattice weight")
    expo = bb // 2 - cd.bilinear(cd.rho(), beta)
    return LaurentPoly.q_power(expo, -1 if ht % 2 else 1)


def cofinite_twist_check(uq, word, x, ambient_word=None):
    """For x in the intersection of U_q^- with T_w(U_q^-): the twist image
    is the predicted scalar times t_{beta} times the vee-image of some
    dual canonical basis element; we locate that element in a freshly
    computed slice.

    ambient_word: reduced word of the long element used for the ambient
    slice; computed for finite type when omitted.
    """
    cd = uq.cartan
    word = cd.check_word(word)
    counts = felement_counts(uq, x)
    if counts is None:
        return {"ok": True, "word": list(word), "trivial": True}
    # membership: T_w^{-1}(x) must land back in the negative half
    back = uq.braid_word(word, -1, felement_to_uq(uq, x))
    member = True
    try:
        uq_to_felement(uq, back)
    except QnilUsageError:
        member = False
    if not member:
        raise QnilUsageError(
            "element is not in the twisted cofinite subalgebra of %r"
            % (word,))
    # beta = -w^{-1} wt(x), a positive root-lattice element
    beta = cd.root_coords(cd.weyl_act(_rev(word), cd.root_weight(counts)))
    if any(v < 0 for v in beta):
        raise QnilInternalError("beta escaped the positive cone: %r"
                                % (beta,))
    img = theta_inverse_word(uq, word, felement_to_uq(uq, x))
    # strip t_beta from the right, then pull the e-part down with vee
    stripped = uq.multiply(img, uq.t(tuple(-v for v in beta)))
    candidate_uq = uq.vee(stripped)
    try:
        cand = uq_to_felement(uq, candidate_uq)
    except QnilUsageError:
        return {"ok": False, "word": list(word), "member": True,
                "reason": "twist image is not e-part times t_beta"}
    s = twist_scalar(cd, beta)
    cand = cand.scale(as_ratfunc(s).inv())
    if ambient_word is None:
        from .finitetype import longest_word
        ambient_word = longest_word(cd)
    slc = dcb_slice(build_chart(uq, ambient_word), beta)
    label = None
    for c in slc.labels:
        if felement_equal(uq, cand, slc.elements[c]):
            label = c
            break
    return {"ok": label is not None, "word": list(word), "member": True,
            "beta": list(beta), "scalar": scalar_to_json(as_ratfunc(s)),
            "label": list(label) if label is not None else None}
