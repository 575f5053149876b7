"""The lower half U_q^- as free f-words plus the machinery that makes the
free presentation honest: q-derivations, the twisted pairing, dual word
vectors, and the dual bar-involution.

Equality of f-elements is decided by pairing against every f-word of the
right weight (the form is nondegenerate, so the dual vector is a faithful
normal form).  The pairing of two words of weight nu factors as

    (f_u, f_v) = kernel(u, v) * prod_i (1 - q_i^2)^{-nu_i}

with an integer Laurent kernel; kernels are memoized on the algebra
context, which is what keeps slice-level computations fast.

At heights where enumerating word-by-word kernels is too wide, pairings
are evaluated instead by a depth-first walk of the word tree that peels
one derivation per letter: (x, f_i v) = (e'_i x, f_v)/(1 - q_i^2), so a
whole weight slice costs one derivation chain per tree node, and branches
whose derivative is literally zero prune the entire subtree.
"""

from __future__ import annotations

from .rootdata import QnilUsageError, QnilInternalError
from .scalars import (LaurentPoly, RatFunc, as_ratfunc, bar_scalar,
                      scalar_is_zero, scalar_to_json, simplify_scalar)
from .uqfull import Uq, UqElement


class FElement:
    """Q(q)-combination of free f-words."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for w, c in terms.items():
                if not scalar_is_zero(c):
                    self.terms[tuple(w)] = c

    @staticmethod
    def _raw(d):
        x = FElement.__new__(FElement)
        x.terms = d
        return x

    @staticmethod
    def zero():
        return FElement._raw({})

    @staticmethod
    def one():
        return FElement({(): LaurentPoly.one()})

    @staticmethod
    def word(w, coeff=1):
        c = coeff if isinstance(coeff, (LaurentPoly, RatFunc)) else LaurentPoly.const(coeff)
        return FElement({tuple(w): c})

    def __add__(self, other):
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out.get(w, 0) + c
            if scalar_is_zero(s):
                out.pop(w, None)
            else:
                out[w] = s
        return FElement._raw(out)

    def __neg__(self):
        return FElement._raw({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        # multiplication in U_q^- is free concatenation of words
        if not isinstance(other, FElement):
            return NotImplemented
        out = {}
        for u, cu in self.terms.items():
            for v, cv in other.terms.items():
                w = u + v
                s = out.get(w, 0) + cu * cv
                if scalar_is_zero(s):
                    out.pop(w, None)
                else:
                    out[w] = s
        return FElement._raw({w: simplify_scalar(c) for w, c in out.items()})

    def scale(self, c):
        if scalar_is_zero(c):
            return FElement.zero()
        return FElement._raw({w: simplify_scalar(cc * c) for w, cc in self.terms.items()})

    def is_zero_literal(self):
        return not self.terms

    def __eq__(self, other):
        # literal; use felement_equal for equality modulo Serre
        return isinstance(other, FElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms))

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for w in sorted(self.terms, key=lambda t: (len(t), t)):
            body = " ".join(f"f{i}" for i in w) if w else "1"
            bits.append(f"({self.terms[w]}) {body}")
        return " + ".join(bits)

    def to_json(self):
        return [[list(w), scalar_to_json(c)]
                for w, c in sorted(self.terms.items(), key=lambda t: (len(t[0]), t[0]))]

    @staticmethod
    def from_json(data):
        return FElement({tuple(w): RatFunc.from_json(c) for w, c in data})


def word_counts(n, word):
    out = [0] * n
    for i in word:
        out[i - 1] += 1
    return tuple(out)


def felement_counts(uq, x):
    """Letter-multiset of a weight-homogeneous f-element (positive counts)."""
    cs = {word_counts(uq.cartan.n, w) for w in x.terms}
    if len(cs) > 1:
        raise QnilUsageError("f-element is not weight-homogeneous")
    return cs.pop() if cs else None


def homogeneous_parts(uq, x):
    parts = {}
    for w, c in x.terms.items():
        parts.setdefault(word_counts(uq.cartan.n, w), {})[w] = c
    return {k: FElement._raw(v) for k, v in parts.items()}


def multiset_words(counts):
    """All words with the given letter multiplicities, lexicographic."""
    counts = list(counts)
    if not any(counts):
        return [()]
    out = []
    for i, c in enumerate(counts):
        if c:
            counts[i] -= 1
            out.extend((i + 1,) + w for w in multiset_words(counts))
            counts[i] += 1
    return out


# ---------------------------------------------------------------------------
# q-derivations

def eprime(uq, i, x, side="left"):
    """The derivation dual to multiplication by f_i.

    side="left":  e'_i(xy) = e'_i(x) y + q_i^{<wt x, h_i>} x e'_i(y)
    side="right": the mirror derivation scanning from the other end.
    """
    if side not in ("left", "right"):
        raise QnilUsageError("side must be 'left' or 'right'")
    ap = uq._ap
    out = {}
    for w, c in x.terms.items():
        positions = [k for k, a in enumerate(w) if a == i]
        for k in positions:
            if side == "left":
                shift = -sum(ap[i - 1][a - 1] for a in w[:k])
            else:
                shift = -sum(ap[i - 1][a - 1] for a in w[k + 1:])
            sub = w[:k] + w[k + 1:]
            term = c * LaurentPoly.q_power(shift)
            s = out.get(sub, 0) + term
            if scalar_is_zero(s):
                out.pop(sub, None)
            else:
                out[sub] = s
    return FElement._raw(out)


# ---------------------------------------------------------------------------
# the pairing

def _kernel(uq, u, v):
    """Integer-Laurent kernel of the pairing on words (same multiset)."""
    cache = uq.__dict__.setdefault("_pair_kernel", {})
    one = LaurentPoly.one()
    zero = LaurentPoly.zero()
    ap = uq._ap

    def rec(u, v):
        if not u:
            return one
        key = (u, v)
        hit = cache.get(key)
        if hit is not None:
            return hit
        i = u[0]
        rest = u[1:]
        acc = {}
        shift = 0
        row = ap[i - 1]
        for k, a in enumerate(v):
            if a == i:
                child = rec(rest, v[:k] + v[k + 1:])
                if child._c:
                    for e, cc in child._c.items():
                        e2 = e - shift
                        s = acc.get(e2, 0) + cc
                        if s:
                            acc[e2] = s
                        else:
                            del acc[e2]
            shift += row[a - 1]
        val = LaurentPoly._raw(acc) if acc else zero
        cache[key] = val
        return val

    if word_counts(uq.cartan.n, u) != word_counts(uq.cartan.n, v):
        return zero
    return rec(u, v)


def slice_denominator(uq, counts):
    """prod_i (1 - q_i^2)^{counts_i} as a RatFunc denominator factor."""
    cache = uq.__dict__.setdefault("_slice_den", {})
    counts = tuple(counts)
    hit = cache.get(counts)
    if hit is None:
        den = LaurentPoly.one()
        for a, m in enumerate(counts):
            d = uq.cartan.sym[a]
            base = LaurentPoly({0: 1, 2 * d: -1})
            for _ in range(m):
                den = den * base
        hit = RatFunc.one() / RatFunc.from_laurent(den)
        cache[counts] = hit
    return hit


_FORM_SCAN_CUTOFF = 256


def _scan_pair_support(uq, z0, items):
    """sum_v c_v (z0, f_v) over the prefix tree of the given (word, coeff)
    support, peeling one derivation of z0 per letter."""
    acc = None

    def rec(z, pairs):
        nonlocal acc
        if not z.terms:
            return
        if not pairs[0][0]:
            c0 = z.terms.get(())
            if c0 is not None and not scalar_is_zero(c0):
                for _, cv in pairs:
                    term = cv * c0
                    acc = term if acc is None else acc + term
            return
        buckets = {}
        for s, cv in pairs:
            buckets.setdefault(s[0], []).append((s[1:], cv))
        for a, sub in buckets.items():
            rec(eprime(uq, a, z), sub)

    rec(z0, list(items))
    return acc


def form(uq, x, y):
    """The twisted pairing with (f_i x, y) = (x, e'_i y)/(1 - q_i^2).

    Bilinear; distinct weight components pair to zero.
    """
    if x.is_zero_literal() or y.is_zero_literal():
        return LaurentPoly.zero()
    xparts = homogeneous_parts(uq, x)
    yparts = homogeneous_parts(uq, y)
    total = LaurentPoly.zero()
    for counts, xp in xparts.items():
        yp = yparts.get(counts)
        if yp is None:
            continue
        if len(xp.terms) * len(yp.terms) > _FORM_SCAN_CUTOFF:
            # wide slice: derivation chains over the smaller support
            big, small = ((xp, yp) if len(xp.terms) >= len(yp.terms)
                          else (yp, xp))
            acc = _scan_pair_support(uq, big, small.terms.items())
        else:
            acc = None
            for u, cu in xp.terms.items():
                for v, cv in yp.terms.items():
                    k = _kernel(uq, u, v)
                    if k.is_zero():
                        continue
                    term = cu * cv * k
                    acc = term if acc is None else acc + term
        if acc is not None:
            total = total + acc * slice_denominator(uq, counts)
    return simplify_scalar(total)


class DualVector:
    """Pairings of an f-element against the words of its weight; words
    absent from `entries` pair to zero."""

    __slots__ = ("counts", "entries")

    def __init__(self, counts, entries):
        self.counts = tuple(counts)
        self.entries = dict(entries)

    def is_zero(self):
        return all(scalar_is_zero(c) for c in self.entries.values())

    def __sub__(self, other):
        if self.counts != other.counts:
            raise QnilUsageError("dual vectors of different weights")
        zero = LaurentPoly.zero()
        return DualVector(self.counts,
                          {w: self.entries.get(w, zero) - other.entries.get(w, zero)
                           for w in self.entries.keys() | other.entries.keys()})

    def __eq__(self, other):
        if not isinstance(other, DualVector) or self.counts != other.counts:
            return False
        zero = LaurentPoly.zero()
        return all(self.entries.get(w, zero) == other.entries.get(w, zero)
                   for w in self.entries.keys() | other.entries.keys())

    def __hash__(self):
        raise TypeError("DualVector is not hashable")

    def to_json(self):
        return {
            "weight": list(self.counts),
            "entries": [[list(w), scalar_to_json(c)]
                        for w, c in sorted(self.entries.items()) if not scalar_is_zero(c)],
        }


def _pairings_scan(uq, x, counts, record=None, den=None):
    """Walk every word of the letter multiset depth-first, carrying the
    derivation chain e'_{w_k}...e'_{w_1}(x); the constant term at a leaf
    is the kernel pairing of x against that word.

    Returns True as soon as some word pairs nonzero.  With `record` a
    dict, keeps going and stores every nonzero pairing times `den`.
    """
    n = uq.cartan.n
    state = False
    word = []

    def rec(z, rem):
        nonlocal state
        if not z.terms or (state and record is None):
            return
        if not any(rem):
            c0 = z.terms.get(())
            if c0 is not None and not scalar_is_zero(c0):
                state = True
                if record is not None:
                    record[tuple(word)] = simplify_scalar(c0 * den)
            return
        for a in range(n):
            if rem[a]:
                rem[a] -= 1
                word.append(a + 1)
                rec(eprime(uq, a + 1, z), rem)
                word.pop()
                rem[a] += 1

    rec(x, list(counts))
    return state


def dual_vector(uq, x):
    counts = felement_counts(uq, x)
    if counts is None:
        raise QnilUsageError("dual vector of 0 has no weight; handle separately")
    den = slice_denominator(uq, counts)
    entries = {}
    _pairings_scan(uq, x, counts, record=entries, den=den)
    return DualVector(counts, entries)


def felement_is_zero(uq, x):
    if x.is_zero_literal():
        return True
    for counts, part in homogeneous_parts(uq, x).items():
        if _pairings_scan(uq, part, counts):
            return False
    return True


def felement_equal(uq, x, y):
    return felement_is_zero(uq, x - y)


# ---------------------------------------------------------------------------
# the dual bar-involution

def root_pair_counts(uq, m1, m2):
    """(sum m1_a alpha_a, sum m2_b alpha_b)."""
    ap = uq._ap
    return sum(m1[a] * m2[b] * ap[a][b]
               for a in range(uq.cartan.n) if m1[a]
               for b in range(uq.cartan.n) if m2[b])


def sigma(uq, x):
    """Dual bar-involution: sign and q-power times bar-star, weightwise."""
    out = FElement.zero()
    for counts, part in homogeneous_parts(uq, x).items():
        ht = sum(counts)
        expo = root_pair_counts(uq, counts, counts) // 2 + \
            sum(counts[a] * uq.cartan.sym[a] for a in range(uq.cartan.n))
        pref = LaurentPoly.q_power(expo, -1 if ht % 2 else 1)
        terms = {}
        for w, c in part.terms.items():
            rw = tuple(reversed(w))
            cc = bar_scalar(c) * pref
            s = terms.get(rw, 0) + cc
            if scalar_is_zero(s):
                terms.pop(rw, None)
            else:
                terms[rw] = s
        out = out + FElement._raw({w: simplify_scalar(c) for w, c in terms.items()})
    return out


# ---------------------------------------------------------------------------
# word form from a dual vector (exact linear solve)

def to_word_form(uq, dv):
    """An f-element whose dual vector equals dv (free coordinates zeroed)."""
    words = multiset_words(dv.counts)
    den = slice_denominator(uq, dv.counts)
    mat = [[as_ratfunc(_kernel(uq, a, b)) for b in words] for a in words]
    rhs = [as_ratfunc(dv.entries.get(a, LaurentPoly.zero())) / den for a in words]
    m = len(words)
    # Gaussian elimination, first-nonzero pivoting (deterministic)
    piv_of_col = {}
    row = 0
    for col in range(m):
        piv = None
        for r in range(row, m):
            if not mat[r][col].is_zero():
                piv = r
                break
        if piv is None:
            continue
        mat[row], mat[piv] = mat[piv], mat[row]
        rhs[row], rhs[piv] = rhs[piv], rhs[row]
        inv = mat[row][col].inv()
        mat[row] = [v * inv for v in mat[row]]
        rhs[row] = rhs[row] * inv
        for r in range(m):
            if r != row and not mat[r][col].is_zero():
                f = mat[r][col]
                mat[r] = [a - f * b for a, b in zip(mat[r], mat[row])]
                rhs[r] = rhs[r] - f * rhs[row]
        piv_of_col[col] = row
        row += 1
    for r in range(row, m):
        if not rhs[r].is_zero():
            raise QnilInternalError("dual vector is not realized by any f-element")
    sol = [RatFunc.zero()] * m
    for col, r in piv_of_col.items():
        sol[col] = rhs[r]
    return FElement({words[k]: simplify_scalar(sol[k]) for k in range(m)
                     if not sol[k].is_zero()})


# ---------------------------------------------------------------------------
# robust membership / equality for full U_q elements

def felement_to_uq(uq, x):
    return UqElement({(w, uq.zero_kappa, ()): c for w, c in x.terms.items()})


def _uq_groups(uq, x):
    n = uq.cartan.n
    groups = {}
    for (f, k, e), c in x.terms.items():
        key = (k, word_counts(n, f), word_counts(n, e))
        groups.setdefault(key, []).append((f, e, c))
    return groups


def uq_is_zero(uq, x):
    """Zero test through the triangular decomposition: each (kappa, weight)
    block is paired against all f-word x e-word test pairs."""
    if not x.terms:
        return True
    for (kappa, fc, ec), items in _uq_groups(uq, x).items():
        fwords = multiset_words(fc)
        ewords = multiset_words(ec)
        for a in fwords:
            # precompute f-side kernels for this test word
            left = [(e, c * _kernel(uq, a, f)) for f, e, c in items]
            left = [(e, k) for e, k in left if not scalar_is_zero(k)]
            if not left:
                continue
            for b in ewords:
                acc = None
                for e, ck in left:
                    k2 = _kernel(uq, e, b)
                    if k2.is_zero():
                        continue
                    term = ck * k2
                    acc = term if acc is None else acc + term
                if acc is not None and not scalar_is_zero(acc):
                    return False
    return True


def uq_equal(uq, x, y):
    if x.terms == y.terms:
        return True
    return uq_is_zero(uq, x - y)


def uq_to_felement(uq, x):
    """Interpret x as an element of U_q^-; raises if some non-f block is
    nonzero (this IS the membership test for the lower half)."""
    pure = {}
    rest = {}
    for (f, k, e), c in x.terms.items():
        if not e and not any(k):
            pure[f] = pure.get(f, 0) + c
        else:
            rest[(f, k, e)] = c
    if rest and not uq_is_zero(uq, UqElement._raw(rest)):
        raise QnilUsageError("element does not lie in U_q^-")
    return FElement({w: c for w, c in pure.items() if not scalar_is_zero(c)})
