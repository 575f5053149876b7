"""The quantized enveloping algebra on its triangular normal form.

Elements are finite sums  coeff * f_word * t_kappa * e_word  with kappa in
the root lattice (simple-root coordinates).  Words are free: no Serre
straightening is ever applied; downstream equality goes through the
nondegenerate pairing instead (see uqminus).  The only rewriting used here
is the adopted-standard commutation

    e_i f_j - f_j e_i = delta_ij (t_i - t_i^{-1}) / (q_i - q_i^{-1})
    t_mu e_j = q^{(mu, alpha_j)} e_j t_mu ,   t_mu f_j = q^{-(mu, alpha_j)} f_j t_mu

which keeps every product normal-ordered.

A monomial is the plain tuple (fword, kappa, eword); an element wraps a
dict {monomial: scalar}.  Scalars are LaurentPoly when possible, RatFunc
otherwise (divided powers introduce genuine denominators).
"""

from __future__ import annotations

from .rootdata import CartanDatum, QnilUsageError, QnilInternalError
from .scalars import (LaurentPoly, RatFunc, qfactorial, scalar_is_zero,
                      simplify_scalar, bar_scalar)


class UqElement:
    """Sum of normal-ordered monomials; purely structural container."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for mono, c in terms.items():
                if not scalar_is_zero(c):
                    self.terms[mono] = c

    @staticmethod
    def _raw(d):
        x = UqElement.__new__(UqElement)
        x.terms = d
        return x

    def __add__(self, other):
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if scalar_is_zero(s):
                out.pop(m, None)
            else:
                out[m] = s
        return UqElement._raw(out)

    def __neg__(self):
        return UqElement._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        if scalar_is_zero(c):
            return UqElement._raw({})
        return UqElement._raw({m: simplify_scalar(cc * c) for m, cc in self.terms.items()})

    def is_zero_literal(self):
        return not self.terms

    def __eq__(self, other):
        # literal (free-presentation) equality; use uqminus.uq_equal for the
        # mathematically robust test
        return isinstance(other, UqElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms))

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for mono in sorted(self.terms, key=_mono_sort_key):
            f, k, e = mono
            parts = [f"f{i}" for i in f]
            if any(k):
                parts.append("t" + str(list(k)))
            parts += [f"e{i}" for i in e]
            body = " ".join(parts) if parts else "1"
            bits.append(f"({self.terms[mono]}) {body}")
        return " + ".join(bits)


def _mono_sort_key(mono):
    f, k, e = mono
    return (len(f), f, k, len(e), e)


class Uq:
    """Algebra context: Cartan datum plus memo tables."""

    def __init__(self, cartan: CartanDatum):
        self.cartan = cartan
        n = cartan.n
        self.zero_kappa = (0,) * n
        # (alpha_i, alpha_j) table
        self._ap = [[cartan.sym[i] * cartan.gcm[i][j] for j in range(n)]
                    for i in range(n)]
        self._ef_cache = {}      # (eword, j) -> tuple of (fp, kp, ep, coeff)
        self._braid_gen = {}     # (i, sign, kind, a) -> UqElement
        self._braid_mono = {}    # (i, sign, mono) -> UqElement
        self._inv_qfact = {}     # (n, d) -> RatFunc 1/[n]_d!

    # -- constructors ----------------------------------------------------------

    def zero(self):
        return UqElement._raw({})

    def one(self, coeff=1):
        return UqElement({((), self.zero_kappa, ()): LaurentPoly.const(coeff)})

    def f(self, i):
        return UqElement({((i,), self.zero_kappa, ()): LaurentPoly.one()})

    def e(self, i):
        return UqElement({((), self.zero_kappa, (i,)): LaurentPoly.one()})

    def t(self, kappa):
        kappa = tuple(int(c) for c in kappa)
        if len(kappa) != self.cartan.n:
            raise QnilUsageError("kappa must have one coordinate per simple root")
        return UqElement({((), kappa, ()): LaurentPoly.one()})

    def t_i(self, i, power=1):
        kappa = tuple(power if k == i - 1 else 0 for k in range(self.cartan.n))
        return self.t(kappa)

    def f_word(self, word, coeff=1):
        word = self.cartan.check_word(word)
        c = coeff if isinstance(coeff, (LaurentPoly, RatFunc)) else LaurentPoly.const(coeff)
        return UqElement({(word, self.zero_kappa, ()): c})

    def e_word(self, word, coeff=1):
        word = self.cartan.check_word(word)
        c = coeff if isinstance(coeff, (LaurentPoly, RatFunc)) else LaurentPoly.const(coeff)
        return UqElement({((), self.zero_kappa, word): c})

    def inv_qfactorial(self, m, i):
        d = self.cartan.sym[i - 1]
        key = (m, d)
        if key not in self._inv_qfact:
            self._inv_qfact[key] = RatFunc.one() / RatFunc.from_laurent(qfactorial(m, d))
        return self._inv_qfact[key]

    def f_divided(self, i, m):
        """f_i^{(m)} = f_i^m / [m]_i!."""
        return UqElement({((i,) * m, self.zero_kappa, ()):
                          simplify_scalar(self.inv_qfactorial(m, i))})

    def e_divided(self, i, m):
        return UqElement({((), self.zero_kappa, (i,) * m):
                          simplify_scalar(self.inv_qfactorial(m, i))})

    # -- gradings ---------------------------------------------------------------

    def word_counts(self, word):
        out = [0] * self.cartan.n
        for i in word:
            out[i - 1] += 1
        return tuple(out)

    def mono_weight(self, mono):
        """Root coordinates of the weight (e-letters minus f-letters)."""
        f, _, e = mono
        out = [0] * self.cartan.n
        for i in e:
            out[i - 1] += 1
        for i in f:
            out[i - 1] -= 1
        return tuple(out)

    def weight_of(self, x):
        """Common weight of a homogeneous element, as root coordinates."""
        wts = {self.mono_weight(m) for m in x.terms}
        if len(wts) > 1:
            raise QnilUsageError("element is not weight-homogeneous")
        return wts.pop() if wts else None

    # -- pairing helpers ----------------------------------------------------------

    def _alpha_pair(self, i, j):
        return self._ap[i - 1][j - 1]

    def _kappa_alpha(self, kappa, j):
        return sum(kappa[a] * self._ap[a][j - 1] for a in range(self.cartan.n) if kappa[a])

    def _kappa_counts(self, kappa, counts):
        s = 0
        for a in range(self.cartan.n):
            if kappa[a]:
                row = self._ap[a]
                s += kappa[a] * sum(row[b] * counts[b] for b in range(self.cartan.n) if counts[b])
        return s

    # -- multiplication -------------------------------------------------------------

    def _eword_times_f(self, eword, j):
        """Normal-order (e-word) * f_j; returns tuples (fpart, kappa, epart, coeff)."""
        key = (eword, j)
        hit = self._ef_cache.get(key)
        if hit is not None:
            return hit
        if not eword:
            out = (((j,), self.zero_kappa, (), LaurentPoly.one()),)
        else:
            head, i = eword[:-1], eword[-1]
            out = []
            for fp, kp, ep, c in self._eword_times_f(head, j):
                out.append((fp, kp, ep + (i,), c))
            if i == j:
                d = self.cartan.sym[i - 1]
                # 1/(q_i - q_i^{-1}) = q^d / (q^{2d} - 1)
                inv = RatFunc((0,) * d + (1,), (-1,) + (0,) * (2 * d - 1) + (1,))
                pair = sum(self._alpha_pair(i, a) for a in head)
                plus = tuple(1 if b == i - 1 else 0 for b in range(self.cartan.n))
                minus = tuple(-1 if b == i - 1 else 0 for b in range(self.cartan.n))
                out.append(((), plus, head,
                            simplify_scalar(LaurentPoly.q_power(-pair) * inv)))
                out.append(((), minus, head,
                            simplify_scalar(-(LaurentPoly.q_power(pair) * inv))))
            out = tuple(out)
        self._ef_cache[key] = out
        return out

    def _terms_mul_f(self, terms, j):
        out = {}
        for (f, k, e), c in terms.items():
            for fp, kp, ep, cc in self._eword_times_f(e, j):
                coeff = c * cc
                if fp:
                    # t_kappa walks past the new f_j
                    shift = -self._kappa_alpha(k, j)
                    if shift:
                        coeff = coeff * LaurentPoly.q_power(shift)
                kappa = k if not any(kp) else tuple(a + b for a, b in zip(k, kp))
                mono = (f + fp, kappa, ep)
                s = out.get(mono, 0) + coeff
                if scalar_is_zero(s):
                    out.pop(mono, None)
                else:
                    out[mono] = s
        return out

    def _terms_mul_t(self, terms, kappa2):
        if not any(kappa2):
            return dict(terms)
        out = {}
        for (f, k, e), c in terms.items():
            # e_j t_mu = q^{-(mu,alpha_j)} t_mu e_j, letter by letter
            shift = self._kappa_counts(kappa2, self.word_counts(e))
            coeff = c * LaurentPoly.q_power(-shift) if shift else c
            mono = (f, tuple(a + b for a, b in zip(k, kappa2)), e)
            s = out.get(mono, 0) + coeff
            if scalar_is_zero(s):
                out.pop(mono, None)
            else:
                out[mono] = s
        return out

    def _terms_mul_e(self, terms, j):
        return {(f, k, e + (j,)): c for (f, k, e), c in terms.items()}

    def multiply(self, x, y):
        total = {}
        for (f2, k2, e2), c2 in y.terms.items():
            cur = {m: c * c2 for m, c in x.terms.items()}
            for j in f2:
                cur = self._terms_mul_f(cur, j)
            cur = self._terms_mul_t(cur, k2)
            for j in e2:
                cur = self._terms_mul_e(cur, j)
            for m, c in cur.items():
                s = total.get(m, 0) + c
                if scalar_is_zero(s):
                    total.pop(m, None)
                else:
                    total[m] = s
        return UqElement._raw({m: simplify_scalar(c) for m, c in total.items()})

    def product(self, *xs):
        out = self.one()
        for x in xs:
            out = self.multiply(out, x)
        return out

    # -- involutions and the antipode ----------------------------------------------

    def bar(self, x):
        """Q-algebra involution: q -> q^{-1}, fixes e_i, f_i, inverts t."""
        return UqElement._raw({
            (f, tuple(-a for a in k), e): bar_scalar(c)
            for (f, k, e), c in x.terms.items()})

    def phi(self, x):
        """Anti-automorphism swapping e_i <-> f_i and fixing t."""
        return UqElement._raw({
            (tuple(reversed(e)), k, tuple(reversed(f))): c
            for (f, k, e), c in x.terms.items()})

    def star(self, x):
        """Anti-automorphism fixing e_i, f_i, inverting t."""
        out = self.zero()
        for (f, k, e), c in x.terms.items():
            gens = [('e', i) for i in reversed(e)]
            gens.append(('t', tuple(-a for a in k)))
            gens += [('f', i) for i in reversed(f)]
            out = out + self._gen_product(gens, c)
        return out

    def vee(self, x):
        """Algebra involution e_i <-> f_i, t -> t^{-1}."""
        out = self.zero()
        for (f, k, e), c in x.terms.items():
            gens = [('e', i) for i in f]
            gens.append(('t', tuple(-a for a in k)))
            gens += [('f', i) for i in e]
            out = out + self._gen_product(gens, c)
        return out

    def involution(self, kind, x):
        try:
            fn = {"bar": self.bar, "phi": self.phi, "star": self.star,
                  "vee": self.vee}[kind]
        except KeyError:
            raise QnilUsageError(f"unknown involution {kind!r}") from None
        return fn(x)

    def antipode(self, x):
        """S(e_i) = -e_i t_i, S(f_i) = -t_i^{-1} f_i, S(t) = t^{-1}; anti-hom."""
        out = self.zero()
        for (f, k, e), c in x.terms.items():
            gens = []
            sign = 1
            for i in reversed(e):
                gens += [('e', i), ('t', self._alpha_tuple(i, 1))]
                sign = -sign
            gens.append(('t', tuple(-a for a in k)))
            for i in reversed(f):
                gens += [('t', self._alpha_tuple(i, -1)), ('f', i)]
                sign = -sign
            out = out + self._gen_product(gens, c if sign > 0 else -c)
        return out

    def _alpha_tuple(self, i, mult):
        return tuple(mult if a == i - 1 else 0 for a in range(self.cartan.n))

    def _gen_product(self, gens, coeff):
        cur = {((), self.zero_kappa, ()): coeff}
        for kind, val in gens:
            if kind == 'f':
                cur = self._terms_mul_f(cur, val)
            elif kind == 'e':
                cur = self._terms_mul_e(cur, val)
            else:
                cur = self._terms_mul_t(cur, val)
        return UqElement._raw({m: simplify_scalar(c) for m, c in cur.items()})

    # -- braid-group operators --------------------------------------------------------

    def _braid_gen_image(self, i, sign, kind, a):
        """Image of one generator under T_i (sign=+1) or T_i^{-1} (sign=-1)."""
        key = (i, sign, kind, a)
        hit = self._braid_gen.get(key)
        if hit is not None:
            return hit
        d = self.cartan.sym[i - 1]
        if a == i:
            if kind == 'f' and sign > 0:      # -t_i^{-1} e_i
                img = UqElement({((), self._alpha_tuple(i, -1), (i,)):
                                 LaurentPoly.const(-1)})
            elif kind == 'f':                 # -e_i t_i
                img = UqElement({((), self._alpha_tuple(i, 1), (i,)):
                                 LaurentPoly.q_power(-2 * d, -1)})
            elif kind == 'e' and sign > 0:    # -f_i t_i
                img = UqElement({((i,), self._alpha_tuple(i, 1), ()):
                                 LaurentPoly.const(-1)})
            else:                             # -t_i^{-1} f_i
                img = UqElement({((i,), self._alpha_tuple(i, -1), ()):
                                 LaurentPoly.q_power(2 * d, -1)})
        else:
            m = -self.cartan.gcm[i - 1][a - 1]
            terms = {}
            for r in range(m + 1):
                s = m - r
                inv = self.inv_qfactorial(r, i) * self.inv_qfactorial(s, i)
                if kind == 'f':
                    qpow = LaurentPoly.q_power(d * r, -1 if r % 2 else 1)
                    if sign > 0:
                        word = (i,) * r + (a,) + (i,) * s
                    else:
                        word = (i,) * s + (a,) + (i,) * r
                    terms[(word, self.zero_kappa, ())] = simplify_scalar(qpow * inv)
                else:
                    qpow = LaurentPoly.q_power(-d * r, -1 if r % 2 else 1)
                    if sign > 0:
                        word = (i,) * s + (a,) + (i,) * r
                    else:
                        word = (i,) * r + (a,) + (i,) * s
                    terms[((), self.zero_kappa, word)] = simplify_scalar(qpow * inv)
            img = UqElement(terms)
        self._braid_gen[key] = img
        return img

    def braid(self, i, sign, x):
        """Apply T_i (sign=+1) or its inverse (sign=-1); algebra homomorphism."""
        if sign not in (1, -1):
            raise QnilUsageError("braid sign must be +1 or -1")
        out = {}
        for mono, c in x.terms.items():
            key = (i, sign, mono)
            img = self._braid_mono.get(key)
            if img is None:
                f, k, e = mono
                cur = self.one()
                for a in f:
                    cur = self.multiply(cur, self._braid_gen_image(i, sign, 'f', a))
                if any(k):
                    cur = self.multiply(cur, self.t(self.cartan.reflect_root(i, k)))
                for a in e:
                    cur = self.multiply(cur, self._braid_gen_image(i, sign, 'e', a))
                img = cur
                self._braid_mono[key] = img
            for m, cc in img.terms.items():
                s = out.get(m, 0) + c * cc
                if scalar_is_zero(s):
                    out.pop(m, None)
                else:
                    out[m] = s
        return UqElement._raw({m: simplify_scalar(c) for m, c in out.items()})

    def braid_word(self, word, sign, x):
        """T_w or T_w^{-1} along a word: T_w = T_{i_1} o ... o T_{i_l}."""
        word = self.cartan.check_word(word)
        if sign > 0:
            for i in reversed(word):
                x = self.braid(i, 1, x)
        else:
            for i in word:
                x = self.braid(i, -1, x)
        return x
