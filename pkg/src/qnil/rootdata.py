"""Symmetrizable Cartan data, the weight lattice, and the Weyl group.

Weights carry coordinates in the fundamental-weight basis, extended by
corank(gcm) auxiliary coordinates so the simple roots stay linearly
independent even for singular generalized Cartan matrices.  Simple coroots
pair only against the first block, so <lam, h_i> is just coords[i-1].

Root-lattice elements travel separately as plain integer tuples in the
simple-root basis (index = i-1); reflections act by the Cartan matrix on
either representation.

All indices in the public API are 1-based, matching reduced-word notation.
"""

from __future__ import annotations

from fractions import Fraction


class QnilUsageError(ValueError):
    """Bad input (maps to CLI exit code 2)."""


class QnilInternalError(AssertionError):
    """A checked internal invariant failed (maps to CLI exit code 3)."""


# ---------------------------------------------------------------------------
# built-in finite Cartan table, rank <= 4

def _type_a(n):
    gcm = [[2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(n)]
           for i in range(n)]
    return gcm, [1] * n


def _builtin(name):
    table = {}
    for n in range(1, 5):
        table[f"A{n}"] = _type_a(n)
    for n in (2, 3, 4):
        gcm, sym = _type_a(n)
        gcm[n - 1][n - 2] = -2          # short last simple root
        sym = [2] * (n - 1) + [1]
        table[f"B{n}"] = (gcm, sym)
    for n in (3, 4):
        gcm, sym = _type_a(n)
        gcm[n - 2][n - 1] = -2          # long last simple root
        sym = [1] * (n - 1) + [2]
        table[f"C{n}"] = (gcm, sym)
    table["D4"] = ([[2, -1, 0, 0], [-1, 2, -1, -1], [0, -1, 2, 0], [0, -1, 0, 2]],
                   [1, 1, 1, 1])
    table["G2"] = ([[2, -1], [-3, 2]], [3, 1])
    table["F4"] = ([[2, -1, 0, 0], [-1, 2, -1, 0], [0, -2, 2, -1], [0, 0, -1, 2]],
                   [2, 2, 1, 1])
    table["A1xA1"] = ([[2, 0], [0, 2]], [1, 1])
    return table.get(name)


class Weight:
    """Element of the (extended) weight lattice, immutable."""

    __slots__ = ("coords",)

    def __init__(self, coords):
        object.__setattr__(self, "coords", tuple(coords))

    def __setattr__(self, *a):
        raise AttributeError("Weight is immutable")

    def __add__(self, other):
        return Weight(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        return Weight(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return Weight(tuple(-a for a in self.coords))

    def __rmul__(self, k):
        return Weight(tuple(k * a for a in self.coords))

    def __eq__(self, other):
        return isinstance(other, Weight) and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        return f"Weight{self.coords}"

    def is_zero(self):
        return all(a == 0 for a in self.coords)


class CartanDatum:
    """GCM + symmetrizers; owns all root/weight/Weyl arithmetic."""

    def __init__(self, gcm, sym):
        gcm = [tuple(int(x) for x in row) for row in gcm]
        n = len(gcm)
        if n == 0 or any(len(row) != n for row in gcm):
            raise QnilUsageError("Cartan matrix must be square and nonempty")
        sym = tuple(int(d) for d in sym)
        if len(sym) != n or any(d <= 0 for d in sym):
            raise QnilUsageError("symmetrizers must be positive, one per row")
        for i in range(n):
            if gcm[i][i] != 2:
                raise QnilUsageError("diagonal Cartan entries must equal 2")
            for j in range(n):
                if i != j:
                    if gcm[i][j] > 0:
                        raise QnilUsageError("off-diagonal Cartan entries must be <= 0")
                    if (gcm[i][j] == 0) != (gcm[j][i] == 0):
                        raise QnilUsageError("zero pattern must be symmetric")
                    if sym[i] * gcm[i][j] != sym[j] * gcm[j][i]:
                        raise QnilUsageError("d_i a_ij must be symmetric")
        self.gcm = tuple(gcm)
        self.sym = sym
        self.n = n
        self._aux = self._dependent_columns()
        self.dim = n + len(self._aux)
        self._simple_roots = tuple(self._make_root(j) for j in range(1, n + 1))
        self._root_solver = None

    # -- construction ---------------------------------------------------------

    @staticmethod
    def from_name(name):
        data = _builtin(name)
        if data is None:
            raise QnilUsageError(f"unknown Cartan type {name!r}")
        return CartanDatum(*data)

    @staticmethod
    def from_json(obj):
        if "type" in obj:
            return CartanDatum.from_name(obj["type"])
        if "gcm" in obj and "sym" in obj:
            return CartanDatum(obj["gcm"], obj["sym"])
        raise QnilUsageError("Cartan input needs 'type' or 'gcm'+'sym'")

    def to_json(self):
        return {"gcm": [list(r) for r in self.gcm], "sym": list(self.sym)}

    def _dependent_columns(self):
        # Columns of the GCM that fail to enlarge the rank get an auxiliary
        # marker coordinate; n is tiny, so re-running elimination is fine.
        pivots = []
        dep = []
        for j in range(self.n):
            mat = [[Fraction(self.gcm[i][k]) for k in (pivots + [j])]
                   for i in range(self.n)]
            if _rank(mat) == len(pivots) + 1:
                pivots.append(j)
            else:
                dep.append(j)
        return tuple(dep)

    def _make_root(self, j):
        coords = [self.gcm[i][j - 1] for i in range(self.n)]
        coords += [1 if j - 1 == d else 0 for d in self._aux]
        return Weight(coords)

    # -- basic lattice elements ------------------------------------------------

    def simple_root(self, i):
        return self._simple_roots[i - 1]

    def fundamental_weight(self, i):
        return Weight(tuple(1 if k == i - 1 else 0 for k in range(self.dim)))

    def rho(self):
        return Weight(tuple(1 if k < self.n else 0 for k in range(self.dim)))

    def zero_weight(self):
        return Weight((0,) * self.dim)

    def weight(self, fund_coeffs):
        """Weight from fundamental-weight coefficients (auxiliary part 0)."""
        fund_coeffs = tuple(int(c) for c in fund_coeffs)
        if len(fund_coeffs) != self.n:
            raise QnilUsageError(f"expected {self.n} weight coordinates")
        return Weight(fund_coeffs + (0,) * len(self._aux))

    def root_weight(self, counts):
        """Weight of sum_i counts[i] alpha_i (counts 0-indexed)."""
        out = self.zero_weight()
        for i, c in enumerate(counts, start=1):
            if c:
                out = out + c * self.simple_root(i)
        return out

    # -- pairings ---------------------------------------------------------------

    def pairing(self, lam, i):
        """<lam, h_i> for 1 <= i <= n."""
        return lam.coords[i - 1]

    def is_dominant(self, lam):
        return all(lam.coords[k] >= 0 for k in range(self.n))

    def root_coords(self, lam):
        """Coefficients of lam in the simple-root basis, or None.

        Exact; entries are ints when possible, Fractions otherwise.
        """
        if self._root_solver is None:
            self._root_solver = _ColumnSolver(
                [list(self.simple_root(j).coords) for j in range(1, self.n + 1)])
        sol = self._root_solver.solve(lam.coords)
        if sol is None:
            return None
        return tuple(int(c) if c.denominator == 1 else c for c in sol)

    def bilinear(self, lam, mu):
        """Symmetric form with (alpha_i, alpha_j) = d_i a_ij; exact rational."""
        for a, b in ((mu, lam), (lam, mu)):
            cs = self.root_coords(a)
            if cs is not None:
                val = sum(c * self.sym[j] * self.pairing(b, j + 1)
                          for j, c in enumerate(cs) if c)
                if getattr(val, "denominator", 1) == 1:
                    val = int(val)
                return val
        raise QnilUsageError(
            "bilinear form needs at least one argument in the root span "
            "(always true for nonsingular Cartan matrices)")

    def height(self, lam):
        """Sum of root coordinates; errors if lam is not in the root span."""
        cs = self.root_coords(lam)
        if cs is None:
            raise QnilUsageError("height of a weight outside the root lattice")
        s = sum(cs)
        if getattr(s, "denominator", 1) != 1:
            raise QnilUsageError("height of a non-integral root combination")
        return int(s)

    # -- Weyl action -------------------------------------------------------------

    def reflect(self, i, lam):
        """s_i(lam) = lam - <lam,h_i> alpha_i."""
        c = lam.coords[i - 1]
        if c == 0:
            return lam
        return lam - c * self.simple_root(i)

    def weyl_act(self, word, lam):
        """Word (i_1..i_l) acts as s_{i_1} o ... o s_{i_l} (rightmost first)."""
        for i in reversed(word):
            lam = self.reflect(i, lam)
        return lam

    def reflect_root(self, i, counts):
        """s_i on a root-lattice tuple (simple-root coordinates)."""
        pair = sum(self.gcm[i - 1][j] * counts[j] for j in range(self.n))
        out = list(counts)
        out[i - 1] -= pair
        return tuple(out)

    # -- reduced words --------------------------------------------------------------

    def check_word(self, word):
        word = tuple(int(i) for i in word)
        for i in word:
            if not 1 <= i <= self.n:
                raise QnilUsageError(f"word letter {i} out of range 1..{self.n}")
        return word

    def partial_roots(self, word):
        """beta_k = s_{i_1}...s_{i_{k-1}}(alpha_{i_k}) as root tuples."""
        word = self.check_word(word)
        out = []
        for k in range(len(word)):
            c = tuple(1 if j == word[k] - 1 else 0 for j in range(self.n))
            for m in range(k - 1, -1, -1):
                c = self.reflect_root(word[m], c)
            out.append(c)
        return out

    def is_reduced(self, word):
        return all(all(x >= 0 for x in beta) for beta in self.partial_roots(word))

    def positive_roots_along(self, word):
        """The distinct positive roots flipped by w, as Weights; errors if not reduced."""
        roots = self.partial_roots(word)
        if any(any(x < 0 for x in beta) for beta in roots):
            raise QnilUsageError("word is not reduced")
        return [self.root_weight(beta) for beta in roots]

    def word_equal(self, w1, w2):
        w1, w2 = self.check_word(w1), self.check_word(w2)
        for i in range(1, self.n + 1):
            if self.weyl_act(w1, self.fundamental_weight(i)) != \
               self.weyl_act(w2, self.fundamental_weight(i)):
                return False
        return True

    def reduce_word(self, word):
        """A reduced word for the same element (left-to-right deletion)."""
        word = self.check_word(word)
        cur = []
        for i in word:
            cur.append(i)
            if self.is_reduced(cur):
                continue
            cur.pop()
            # exchange: appending s_i shortens, so some single deletion works
            for k in range(len(cur)):
                cand = cur[:k] + cur[k + 1:]
                if self.word_equal(tuple(cand), tuple(cur) + (i,)):
                    cur = cand
                    break
            else:
                raise QnilInternalError("deletion condition failed")
        return tuple(cur)

    def length(self, word):
        return len(self.reduce_word(word))

    def word_inverse(self, word):
        return tuple(reversed(self.check_word(word)))

    def weak_order_leq(self, u, w):
        """u <= w in weak right order: l(w) = l(u) + l(u^{-1} w)."""
        u, w = self.reduce_word(u), self.reduce_word(w)
        uw = self.word_inverse(u) + w
        return len(w) == len(u) + self.length(uw)


def _rank(mat):
    """Rank of a small matrix of Fractions (destructive on a copy)."""
    m = [row[:] for row in mat]
    rank = 0
    rows, cols = len(m), len(m[0]) if m else 0
    for c in range(cols):
        piv = None
        for r in range(rank, rows):
            if m[r][c]:
                piv = r
                break
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = Fraction(1) / m[rank][c]
        m[rank] = [x * inv for x in m[rank]]
        for r in range(rows):
            if r != rank and m[r][c]:
                f = m[r][c]
                m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


class _ColumnSolver:
    """Solve V x = b exactly for a fixed full-column-rank V (columns given)."""

    def __init__(self, columns):
        self.cols = [list(map(Fraction, c)) for c in columns]
        self.dim = len(self.cols[0])
        self.k = len(self.cols)
        # row-reduce [V | I] to find k independent rows and the local inverse
        aug = [[self.cols[j][i] for j in range(self.k)] + [Fraction(int(i == r))
               for r in range(self.dim)] for i in range(self.dim)]
        pivot_rows = []
        r = 0
        m = [row[:] for row in aug]
        for c in range(self.k):
            piv = None
            for rr in range(r, self.dim):
                if m[rr][c]:
                    piv = rr
                    break
            if piv is None:
                raise QnilInternalError("simple roots are dependent")
            m[r], m[piv] = m[piv], m[r]
            inv = Fraction(1) / m[r][c]
            m[r] = [x * inv for x in m[r]]
            for rr in range(self.dim):
                if rr != r and m[rr][c]:
                    f = m[rr][c]
                    m[rr] = [a - f * b for a, b in zip(m[rr], m[r])]
            r += 1
        self.reduced = m

    def solve(self, b):
        b = list(map(Fraction, b))
        # x_j = (reduced combination of b); then verify V x = b exactly
        x = []
        for r in range(self.k):
            row = self.reduced[r]
            x.append(sum(row[self.k + i] * b[i] for i in range(self.dim)))
        for i in range(self.dim):
            if sum(self.cols[j][i] * x[j] for j in range(self.k)) != b[i]:
                return None
        return x
