"""Handlers mapping validated requests onto the core algebra."""

import itertools
from functools import lru_cache

from ..dcb import canonical_low_slice, dcb_slice
from ..finitetype import verify_theta_star
from ..minors import (MinorSpec, minor, minor_counts, minor_dual_vector,
                      minor_felement, verify_minor_twist, verify_tsystem,
                      verify_tsystem_twist)
from ..pbw import build_chart, enumerate_compositions, f_up
from ..rootdata import CartanDatum, QnilUsageError
from ..scalars import as_ratfunc, scalar_to_json
from ..twist import (cofinite_twist_check, reverse_coeff_table, theta,
                     theta_inverse_word, twisted_counts,
                     verify_dcb_twist, verify_pbw_reversal,
                     verify_rootvector_images)
from ..uqfull import Uq
from ..uqminus import (FElement, felement_counts, felement_to_uq,
                       uq_to_felement)
from . import models


@lru_cache(maxsize=32)
def _uq_cached(gcm, sym):
    return Uq(CartanDatum([list(r) for r in gcm], list(sym)))


def get_uq(spec: models.CartanSpec) -> Uq:
    cd = spec.datum()
    return _uq_cached(tuple(tuple(r) for r in cd.gcm), tuple(cd.sym))


def _chart(uq, word):
    return build_chart(uq, tuple(word))


def _slice_weights(chart, height):
    """Nonzero cone weights of the chart up to the given height, sorted."""
    n = chart.uq.cartan.n
    out = []
    for nu in itertools.product(range(height + 1), repeat=n):
        if 0 < sum(nu) <= height and enumerate_compositions(chart, nu):
            out.append(nu)
    return sorted(out)


def basis(kind: str, req: models.BasisRequest):
    uq = get_uq(req.cartan)
    chart = _chart(uq, req.word)
    if req.weight is not None:
        weights = [tuple(int(v) for v in req.weight)]
    else:
        weights = _slice_weights(chart, req.height)
    slices = []
    for nu in weights:
        if kind == "pbw":
            labels = enumerate_compositions(chart, nu)
            slices.append({
                "weight": list(nu),
                "labels": [list(c) for c in labels],
                "elements": [[list(c), f_up(chart, c).to_json()]
                             for c in labels],
            })
        elif kind == "dcb":
            slices.append(dcb_slice(chart, nu).to_json())
        else:  # glow
            slc = dcb_slice(chart, nu)
            lows = canonical_low_slice(slc)
            slices.append({
                "weight": list(nu),
                "labels": [list(c) for c in slc.labels],
                "elements": [[list(c), lows[c].to_json()]
                             for c in slc.labels],
            })
    return {"ok": True, "word": list(chart.word), "basis": kind,
            "slices": slices}


def _uqelement_json(x):
    rows = []
    for (f, k, e), c in sorted(x.terms.items()):
        rows.append([list(f), list(k), list(e),
                     scalar_to_json(as_ratfunc(c))])
    return rows


def twist(req: models.TwistRequest):
    uq = get_uq(req.cartan)
    cd = uq.cartan
    word = cd.check_word(req.word)
    if req.fup is not None:
        fe = f_up(_chart(uq, word), tuple(req.fup))
    else:
        fe = FElement.from_json(req.element)
    if req.direction == "inverse":
        img = theta_inverse_word(uq, word, felement_to_uq(uq, fe))
        count_word = word
    else:
        img = theta(uq, word, felement_to_uq(uq, fe))
        count_word = tuple(reversed(word))
    counts = felement_counts(uq, fe)
    twisted = None
    if counts is not None and any(counts):
        try:
            twisted = list(twisted_counts(cd, count_word, counts))
        except QnilUsageError:
            twisted = None
    report = {"ok": True, "word": list(word), "direction": req.direction,
              "input": fe.to_json(), "twisted_weight": twisted}
    try:
        image = uq_to_felement(uq, img)
    except QnilUsageError:
        report["in_negative_half"] = False
        report["image_terms"] = _uqelement_json(img)
        return report
    report["in_negative_half"] = True
    report["image"] = image.to_json()
    return report


def minor_report(req: models.MinorRequest):
    uq = get_uq(req.cartan)
    cd = uq.cartan
    spec = MinorSpec(cd.weight(tuple(req.lam)), tuple(req.u), tuple(req.w),
                     req.sign)
    counts = minor_counts(cd, spec)
    dv = minor_dual_vector(uq, spec)
    fe = minor_felement(uq, spec)
    report = {
        "ok": True,
        "lambda": list(req.lam), "u": list(spec.u), "w": list(spec.w),
        "sign": spec.sign, "weight": list(counts),
        "dual_vector": dv.to_json(), "element": fe.to_json(),
    }
    if req.chart is not None:
        pc = minor(spec, _chart(uq, req.chart))
        report["expansion"] = pc.to_json()
    return report


def verify_rootvectors(req: models.WordRequest):
    uq = get_uq(req.cartan)
    return verify_rootvector_images(uq, tuple(req.word))


def verify_pbwrev(req: models.PbwRevRequest):
    uq = get_uq(req.cartan)
    cd = uq.cartan
    word = cd.check_word(req.word)
    if not cd.is_reduced(word):
        raise QnilUsageError("word is not reduced: %r" % (word,))
    chart = _chart(uq, word)
    rows = []
    ok = True
    for nu in _slice_weights(chart, req.height):
        for c in enumerate_compositions(chart, nu):
            equal = verify_pbw_reversal(chart, c)
            ok = ok and equal
            rows.append({"c": list(c), "equal": equal})
    return {"ok": ok, "word": list(word), "height": req.height,
            "labels": rows}


def verify_dcbtwist(req: models.SliceRequest):
    uq = get_uq(req.cartan)
    return verify_dcb_twist(uq, tuple(req.word), tuple(req.weight))


def verify_revlex(req: models.SliceRequest):
    uq = get_uq(req.cartan)
    return reverse_coeff_table(uq, tuple(req.word), tuple(req.weight))


def verify_cofinite(req: models.CofiniteRequest):
    uq = get_uq(req.cartan)
    x = FElement.from_json(req.element)
    ambient = tuple(req.ambient) if req.ambient is not None else None
    return cofinite_twist_check(uq, tuple(req.word), x, ambient_word=ambient)


def verify_minortwist(req: models.MinorTwistRequest):
    uq = get_uq(req.cartan)
    return verify_minor_twist(uq, tuple(req.lam), tuple(req.u1),
                              tuple(req.u2), tuple(req.word))


def verify_tsys(req: models.TSystemRequest):
    uq = get_uq(req.cartan)
    order = tuple(req.order) if req.order is not None else None
    return verify_tsystem(uq, tuple(req.word), req.b, req.d, order=order)


def verify_tsystwist(req: models.TSystemTwistRequest):
    uq = get_uq(req.cartan)
    return verify_tsystem_twist(uq, tuple(req.word), req.b, req.d)


def verify_finitetype(req: models.ThetaStarRequest):
    uq = get_uq(req.cartan)
    word = tuple(req.word) if req.word is not None else None
    return verify_theta_star(uq, tuple(req.weight), word=word,
                             monomial_cap=req.monomial_cap)


def _a(type_):
    return models.CartanSpec(type=type_)


DEFAULT_SUITE = (
    ("rootvectors", lambda: verify_rootvectors(
        models.WordRequest(cartan=_a("A2"), word=[1, 2, 1]))),
    ("rootvectors", lambda: verify_rootvectors(
        models.WordRequest(cartan=_a("B2"), word=[1, 2, 1, 2]))),
    ("pbwrev", lambda: verify_pbwrev(
        models.PbwRevRequest(cartan=_a("A2"), word=[1, 2, 1], height=3))),
    ("pbwrev", lambda: verify_pbwrev(
        models.PbwRevRequest(cartan=_a("B2"), word=[1, 2, 1, 2], height=2))),
    ("dcbtwist", lambda: verify_dcbtwist(
        models.SliceRequest(cartan=_a("A2"), word=[1, 2, 1], weight=[1, 1]))),
    ("dcbtwist", lambda: verify_dcbtwist(
        models.SliceRequest(cartan=_a("B2"), word=[1, 2, 1, 2],
                            weight=[1, 2]))),
    ("revlex", lambda: verify_revlex(
        models.SliceRequest(cartan=_a("A2"), word=[1, 2, 1], weight=[1, 1]))),
    ("cofinite", lambda: verify_cofinite(
        models.CofiniteRequest(cartan=_a("A2"), word=[1],
                               element=[[[2], {"num": [[0, 1], [2, -1]],
                                               "den": [[0, 1]]}]]))),
    ("minortwist", lambda: verify_minortwist(
        models.MinorTwistRequest(cartan=_a("A2"), lam=[1, 0], u1=[], u2=[1],
                                 word=[1, 2, 1]))),
    ("minortwist", lambda: verify_minortwist(
        models.MinorTwistRequest(cartan=_a("B2"), lam=[0, 1], u1=[], u2=[2],
                                 word=[1, 2, 1, 2]))),
    ("tsystem", lambda: verify_tsys(
        models.TSystemRequest(cartan=_a("A2"), word=[1, 2, 1], b=1, d=3))),
    ("tsystem", lambda: verify_tsys(
        models.TSystemRequest(cartan=_a("B2"), word=[1, 2, 1, 2],
                              b=1, d=3))),
    ("tsystem", lambda: verify_tsys(
        models.TSystemRequest(cartan=_a("B2"), word=[1, 2, 1, 2],
                              b=2, d=4))),
    ("tsystemtwist", lambda: verify_tsystwist(
        models.TSystemTwistRequest(cartan=_a("A2"), word=[1, 2, 1],
                                   b=1, d=3))),
    ("finitetype", lambda: verify_finitetype(
        models.ThetaStarRequest(cartan=_a("A2"), weight=[1, 1]))),
)


def verify_all(req: models.AllRequest):
    checks = []
    ok = True
    for name, run in DEFAULT_SUITE:
        report = run()
        ok = ok and report["ok"]
        checks.append({"name": name, "ok": report["ok"], "report": report})
    return {"ok": ok, "checks": checks}


VERIFY_HANDLERS = {
    "rootvectors": (models.WordRequest, verify_rootvectors),
    "pbwrev": (models.PbwRevRequest, verify_pbwrev),
    "dcbtwist": (models.SliceRequest, verify_dcbtwist),
    "revlex": (models.SliceRequest, verify_revlex),
    "cofinite": (models.CofiniteRequest, verify_cofinite),
    "minortwist": (models.MinorTwistRequest, verify_minortwist),
    "tsystem": (models.TSystemRequest, verify_tsys),
    "tsystemtwist": (models.TSystemTwistRequest, verify_tsystwist),
    "finitetype": (models.ThetaStarRequest, verify_finitetype),
    "all": (models.AllRequest, verify_all),
}
