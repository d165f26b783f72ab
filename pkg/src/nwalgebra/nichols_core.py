"""Degree-by-degree construction of the Nichols-Woronowicz algebra B_W.

Words are tuples of positive-root indices; the class of the word
``(a_1, ..., a_n)`` is the product ``x_{a_1} ... x_{a_n}``.  Degree n is
built as the span of ``x_a * (degree n-1 basis)``, an element being zero
exactly when all its braided left derivatives vanish.  Everything is
graded by the group as well, and the construction eliminates per
group-degree block, which keeps the exact linear algebra small.

The braided derivative recursions used on words:

  left:   D_g(x_a z)  = d_{ga} z + sign * x_a D_{|s_a(g)|}(z)
  right:  (z x_b)D_g  = d_{gb} z + sign * ((z)D_g) x_{|s_g(b)|}

Two independent construction paths exist: this incremental one, and the
Woronowicz symmetrizer on raw words; their ranks are compared in tests
and in the acceptance suite.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .coxeter import GroupElement, RootSystem
from .exactlinalg import QQ, ColumnSolver

Word = tuple

#: known finite top degrees; everything else is built under a cap
KNOWN_TOP = {"A1": 1, "A2": 4, "A3": 12}

DEFAULT_DEGREE_CAP = 6
DEFAULT_MEMORY_BOUND = 50_000_000


class DegreeCapExceeded(RuntimeError):
    pass


class MemoryBoundExceeded(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# small dense-vector / sparse-matrix helpers (rows are {col: scalar} dicts)
# ---------------------------------------------------------------------------


def mat_vec(mat, vec, field):
    out = [field.zero] * len(mat)
    for i, row in enumerate(mat):
        acc = field.zero
        for c, v in row.items():
            x = vec[c]
            if x:
                acc = field.add(acc, field.mul(v, x))
        out[i] = acc
    return out


def mat_mul(a, b, field):
    out = [dict() for _ in range(len(a))]
    for i, row in enumerate(a):
        acc = out[i]
        for c, v in row.items():
            for j, w in b[c].items():
                x = field.add(acc.get(j, field.zero), field.mul(v, w))
                if x:
                    acc[j] = x
                else:
                    acc.pop(j, None)
    return out


def mat_identity(n, field):
    return [{i: field.one} for i in range(n)]


def mat_from_columns(cols, nrows, field):
    mat = [dict() for _ in range(nrows)]
    for j, col in enumerate(cols):
        for i, v in enumerate(col):
            if v:
                mat[i][j] = v
    return mat


def mat_column(mat, j, nrows, field):
    return [row.get(j, field.zero) for row in mat]


def mat_eq(a, b):
    return all(ra == rb for ra, rb in zip(a, b)) and len(a) == len(b)


def mat_scale(a, s, field):
    if not s:
        return [dict() for _ in a]
    return [{c: field.mul(v, s) for c, v in row.items()} for row in a]


def mat_pow(a, k, field):
    n = len(a)
    result = mat_identity(n, field)
    base = a
    while k:
        if k & 1:
            result = mat_mul(result, base, field)
        base = mat_mul(base, base, field)
        k >>= 1
    return result


def mat_inverse(a, field):
    """Dense Gauss-Jordan inverse; raises if singular."""
    n = len(a)
    m = [[row.get(j, field.zero) for j in range(n)] for row in a]
    inv = [[field.one if i == j else field.zero for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col]), None)
        if piv is None:
            raise ValueError("matrix is singular")
        m[col], m[piv] = m[piv], m[col]
        inv[col], inv[piv] = inv[piv], inv[col]
        f = field.inv(m[col][col])
        m[col] = [field.mul(x, f) for x in m[col]]
        inv[col] = [field.mul(x, f) for x in inv[col]]
        for r in range(n):
            if r != col and m[r][col]:
                g = m[r][col]
                m[r] = [field.sub(x, field.mul(g, y)) for x, y in zip(m[r], m[col])]
                inv[r] = [field.sub(x, field.mul(g, y)) for x, y in zip(inv[r], inv[col])]
    return [{j: v for j, v in enumerate(row) if v} for row in inv]


def vec_add(a, b, field):
    return [field.add(x, y) for x, y in zip(a, b)]


def vec_sub(a, b, field):
    return [field.sub(x, y) for x, y in zip(a, b)]


def vec_scale(a, s, field):
    return [field.mul(x, s) for x in a]


# ---------------------------------------------------------------------------
# words, braiding, word-level derivatives
# ---------------------------------------------------------------------------


def word_wdeg(sys: RootSystem, word) -> GroupElement:
    w = sys.identity()
    for a in word:
        w = w * sys.reflection(a)
    return w


def braid_apply(sys: RootSystem, word, i, inverse=False):
    """One braiding at position i: (sign, new_word).

    Forward: (a, b) -> (s_a(b), a).  Inverse: (a, b) -> (b, s_b(a)).
    """
    if not 0 <= i < len(word) - 1:
        raise IndexError("braiding position out of range")
    a, b = word[i], word[i + 1]
    if inverse:
        s = sys.refl[b][a]
        pair = (b, abs(s) - 1)
    else:
        s = sys.refl[a][b]
        pair = (abs(s) - 1, a)
    sign = 1 if s > 0 else -1
    return sign, word[:i] + pair + word[i + 2:]


def braid_transposition(sys: RootSystem, word, i, inverse=False) -> "TensorElement":
    sign, w = braid_apply(sys, word, i, inverse)
    return TensorElement(len(word), {w: Fraction(sign)})


def word_left_derivative(sys: RootSystem, word, gamma):
    """Signed words of D_gamma applied from the left, as (sign, word) pairs."""
    out = []
    g = gamma + 1
    for i, a in enumerate(word):
        if g == a + 1:
            out.append((1, word[:i] + word[i + 1:]))
        elif -g == a + 1:
            out.append((-1, word[:i] + word[i + 1:]))
        g = sys.reflect(a, g)
    return out


def word_right_derivative(sys: RootSystem, word, gamma):
    """Signed words of the right derivative by gamma, as (sign, word) pairs."""
    out = []
    for i, a in enumerate(word):
        if a == gamma:
            sign = 1
            tail = []
            for b in word[i + 1:]:
                s = sys.refl[gamma][b]
                if s < 0:
                    sign = -sign
                tail.append(abs(s) - 1)
            out.append((sign, word[:i] + tuple(tail)))
    return out


def act_on_word(w: GroupElement, word):
    """(sign, word) for the letterwise group action."""
    sign = 1
    out = []
    for a in word:
        s = w.act(a + 1)
        if s < 0:
            sign = -sign
        out.append(abs(s) - 1)
    return sign, tuple(out)


class TensorElement:
    """An element of the free braided algebra: a word -> scalar map."""

    def __init__(self, degree, terms=None):
        self.degree = degree
        self.terms = {}
        if terms:
            for w, c in terms.items():
                if len(w) != degree:
                    raise ValueError("word of wrong length")
                if c:
                    self.terms[w] = c

    def __add__(self, other):
        if self.degree != other.degree:
            raise ValueError("degrees differ")
        t = dict(self.terms)
        for w, c in other.terms.items():
            x = t.get(w, 0) + c
            if x:
                t[w] = x
            else:
                t.pop(w, None)
        return TensorElement(self.degree, t)

    def scale(self, s):
        return TensorElement(self.degree, {w: c * s for w, c in self.terms.items()})

    def reversed_words(self):
        return TensorElement(self.degree, {w[::-1]: c for w, c in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, TensorElement) and self.degree == other.degree and self.terms == other.terms

    def __repr__(self):
        return f"TensorElement({self.degree}, {self.terms})"

    def involves_only(self, theta) -> bool:
        theta = set(theta)
        return all(set(w) <= theta for w in self.terms)

    def starts_with(self, g) -> bool:
        """Syntactic check on representatives: every word begins with g."""
        return all(w and w[0] == g for w in self.terms)

    def ends_with(self, g) -> bool:
        return all(w and w[-1] == g for w in self.terms)


# ---------------------------------------------------------------------------
# graded basis data
# ---------------------------------------------------------------------------


class DegreeBasis:
    """Basis of one graded component with its structure matrices."""

    def __init__(self, degree, words, wdegs, parents):
        self.degree = degree
        self.words = tuple(words)
        self.dim = len(self.words)
        self.index = {w: i for i, w in enumerate(self.words)}
        self.wdegs = tuple(wdegs)
        self.parents = tuple(parents)  # (first letter, parent basis index) per word
        self.classes = {}
        for i, g in enumerate(self.wdegs):
            self.classes.setdefault(g, []).append(i)
        self.lmul = {}    # a -> matrix B^{n-1} -> B^n
        self.dleft = {}   # g -> matrix B^n -> B^{n-1}
        self._rmul = {}
        self._dright = {}
        self._act = {}
        self._gram = None
        self._gram_inv = None
        self._rho = None
        self._antipode = None
        self._antipode_inv = None


class AlgebraState:
    """Memoized degree-by-degree state of B_W over an exact field."""

    def __init__(self, system: RootSystem, field=QQ, degree_cap=None,
                 memory_bound=DEFAULT_MEMORY_BOUND):
        self.system = system
        self.field = field
        label = system.cartan.type_label
        self.predicted_top = KNOWN_TOP.get(label)
        if degree_cap is None:
            degree_cap = 10 ** 9 if self.predicted_top is not None else DEFAULT_DEGREE_CAP
        self.degree_cap = degree_cap
        self.memory_bound = memory_bound
        self.finite_top = None
        base = DegreeBasis(0, [()], [system.identity()], [None])
        self.bases = [base]
        self._ensure_degree_one()

    # -- construction ----------------------------------------------------

    def _ensure_degree_one(self):
        sys = self.system
        words = [(a,) for a in range(sys.nroots)]
        wdegs = [sys.reflection(a) for a in range(sys.nroots)]
        parents = [(a, 0) for a in range(sys.nroots)]
        basis = DegreeBasis(1, words, wdegs, parents)
        one = self.field.one
        for a in range(sys.nroots):
            basis.lmul[a] = [dict() for _ in range(sys.nroots)]
            basis.lmul[a][a][0] = one
            basis.dleft[a] = [{a: one}]
        self.bases.append(basis)

    @property
    def truncated(self) -> bool:
        return self.finite_top is None and len(self.bases) - 1 >= self.degree_cap

    def dims(self):
        return [b.dim for b in self.bases]

    def dim(self, n) -> int:
        if self.finite_top is not None and n > self.finite_top:
            return 0
        self.ensure_degree(n)
        return self.bases[n].dim

    def basis(self, n) -> DegreeBasis:
        self.ensure_degree(n)
        return self.bases[n]

    def ensure_degree(self, n):
        while len(self.bases) <= n:
            if self.finite_top is not None:
                self._append_empty()
                continue
            if len(self.bases) > self.degree_cap:
                raise DegreeCapExceeded(
                    f"degree {len(self.bases)} exceeds cap {self.degree_cap}")
            self.extend_degree()

    def _append_empty(self):
        n = len(self.bases)
        prev_dim = self.bases[n - 1].dim
        basis = DegreeBasis(n, [], [], [])
        for a in range(self.system.nroots):
            basis.lmul[a] = []
            basis.dleft[a] = [dict() for _ in range(prev_dim)]
        self.bases.append(basis)

    def construct_all(self):
        """Build degrees until the algebra tops out or the cap is reached."""
        while self.finite_top is None and len(self.bases) <= self.degree_cap:
            self.extend_degree()
        return self.dims()

    def extend_degree(self):
        """Build the next graded component from the previous one."""
        sys = self.system
        field = self.field
        n = len(self.bases)
        if self.finite_top is not None:
            raise DegreeCapExceeded("algebra is already complete")
        if n > self.degree_cap:
            raise DegreeCapExceeded(f"degree {n} exceeds cap {self.degree_cap}")
        prev = self.bases[n - 1]
        prev2 = self.bases[n - 2] if n >= 2 else None

        # candidates x_a * b_j grouped by group degree, in canonical word order
        cands = []  # (word, a, j, class element)
        for a in range(sys.nroots):
            ra = sys.reflection(a)
            for j, wj in enumerate(prev.words):
                cands.append(((a,) + wj, a, j, ra * prev.wdegs[j]))
        cands.sort(key=lambda t: t[0])

        by_class = {}
        for cand in cands:
            by_class.setdefault(cand[3], []).append(cand)

        coords_of = {}    # candidate word -> (chosen words, coordinates)
        vector_of = {}    # kept word -> (vector, rows layout)
        kept_words = []
        for g in sorted(by_class, key=lambda e: e.images):
            block = by_class[g]
            rows, offsets = self._class_rows(prev, g)
            nrows = offsets[-1] + len(rows[-1])
            if nrows * len(block) > self.memory_bound:
                raise MemoryBoundExceeded(
                    f"degree {n} class block needs {nrows * len(block)} entries")
            vectors = [self._candidate_vector(n, cand, rows, offsets) for cand in block]
            if field.prime is not None and len(block) > 8:
                sel, coords = self._solve_block_modp(vectors)
            else:
                sel, coords = self._solve_block_generic(vectors)
            chosen = [block[s][0] for s in sel]
            kept_words.extend(chosen)
            for s in sel:
                vector_of[block[s][0]] = (vectors[s], rows)
            for ci, cand in enumerate(block):
                coords_of[cand[0]] = (chosen, coords[ci])

        kept_words.sort()
        word_pos = {w: i for i, w in enumerate(kept_words)}
        cand_info = {c[0]: c for c in cands}
        wdegs = [cand_info[w][3] for w in kept_words]
        parents = [(cand_info[w][1], cand_info[w][2]) for w in kept_words]
        basis = DegreeBasis(n, kept_words, wdegs, parents)

        # multiplication matrices from the candidate coordinates
        dim = len(kept_words)
        for a in range(sys.nroots):
            basis.lmul[a] = [dict() for _ in range(dim)]
        for (w, a, j, g) in cands:
            chosen, coords = coords_of[w]
            col = basis.lmul[a]
            for local, c in enumerate(coords):
                if c:
                    col[word_pos[chosen[local]]][j] = c

        # left-derivative matrices: the candidate vectors of kept words
        for gam in range(sys.nroots):
            basis.dleft[gam] = [dict() for _ in range(prev.dim)]
        for w in kept_words:
            i = word_pos[w]
            vec, rows = vector_of[w]
            pos = 0
            for gam in range(sys.nroots):
                block_rows = rows[gam]
                for local, glob in enumerate(block_rows):
                    v = vec[pos + local]
                    if v:
                        basis.dleft[gam][glob][i] = v
                pos += len(block_rows)

        self.bases.append(basis)
        if dim == 0:
            self.finite_top = n - 1

    def _class_rows(self, prev: DegreeBasis, g: GroupElement):
        """Per-derivative-index row layout of the class-g derivative space."""
        sys = self.system
        rows = []
        offsets = []
        pos = 0
        for gam in range(sys.nroots):
            cls = sys.reflection(gam) * g
            idxs = prev.classes.get(cls, [])
            rows.append(idxs)
            offsets.append(pos)
            pos += len(idxs)
        return rows, offsets

    def _candidate_vector(self, n, cand, rows, offsets):
        """Joint left-derivative vector of x_a * b_j in class-row layout."""
        sys = self.system
        field = self.field
        word, a, j, g = cand
        prev = self.bases[n - 1]
        total = offsets[-1] + len(rows[-1])
        vec = [field.zero] * total
        # delta term: block gamma = a holds e_j
        local = {glob: k for k, glob in enumerate(rows[a])}
        vec[offsets[a] + local[j]] = field.one
        if n == 1:
            return vec
        prev_dl = prev.dleft
        lm = prev.lmul[a]
        for gam in range(sys.nroots):
            s = sys.refl[a][gam]
            delta = abs(s) - 1
            dj = [row.get(j) for row in prev_dl[delta]]
            if not any(v is not None for v in dj):
                continue
            # lmul(a) @ dleft(delta)[:, j], restricted to the class rows
            block_rows = rows[gam]
            base = offsets[gam]
            for k, glob in enumerate(block_rows):
                acc = field.zero
                row = lm[glob]
                for c, v in row.items():
                    x = dj[c]
                    if x:
                        acc = field.add(acc, field.mul(v, x))
                if acc:
                    if s < 0:
                        acc = field.neg(acc)
                    vec[base + k] = field.add(vec[base + k], acc)
        return vec

    def _solve_block_generic(self, vectors):
        if not vectors:
            return [], []
        solver = ColumnSolver(len(vectors[0]), self.field)
        sel = []
        coords = []
        for ci, v in enumerate(vectors):
            if solver.add(v):
                sel.append(ci)
        for v in vectors:
            coords.append(solver.coordinates(v))
        return sel, coords

    def _solve_block_modp(self, vectors):
        import numpy as np

        from . import modp

        p = self.field.prime
        if not vectors:
            return [], []
        a = np.array(vectors, dtype=np.int64).T % p
        sel, coords = modp.greedy_solve(a, p)
        sel = [int(s) for s in sel]
        out = [[int(x) for x in coords[:, c]] for c in range(a.shape[1])]
        return sel, out

    # -- lazily built structure matrices ----------------------------------

    def lmul(self, n, a):
        """Left multiplication by x_a as a matrix B^{n-1} -> B^n."""
        self.ensure_degree(n)
        return self.bases[n].lmul[a]

    def dleft(self, n, g):
        """Left derivative by gamma as a matrix B^n -> B^{n-1}."""
        self.ensure_degree(n)
        return self.bases[n].dleft[g]

    def rmul(self, n, a):
        """Right multiplication by x_a as a matrix B^{n-1} -> B^n."""
        self.ensure_degree(n)
        basis = self.bases[n]
        if a not in basis._rmul:
            field = self.field
            prev = self.bases[n - 1]
            cols = []
            if n == 1:
                col = [field.zero] * basis.dim
                col[basis.index[(a,)]] = field.one
                cols.append(col)
            else:
                r_prev = self.rmul(n - 1, a)
                for j in range(prev.dim):
                    beta, jp = prev.parents[j]
                    col_prev = mat_column(r_prev, jp, prev.dim, field)
                    cols.append(mat_vec(self.lmul(n, beta), col_prev, field))
            basis._rmul[a] = mat_from_columns(cols, basis.dim, field)
        return basis._rmul[a]

    def dright(self, n, g):
        """Right derivative by gamma as a matrix B^n -> B^{n-1}."""
        self.ensure_degree(n)
        basis = self.bases[n]
        if g not in basis._dright:
            field = self.field
            prev = self.bases[n - 1]
            cols = []
            if n == 1:
                for i in range(basis.dim):
                    col = [field.one] if basis.words[i][0] == g else [field.zero]
                    cols.append(col)
            else:
                dr_prev = self.dright(n - 1, g)
                act_prev = self.act_matrix(n - 1, self.system.reflection(g))
                for i in range(basis.dim):
                    beta, j = basis.parents[i]
                    col_prev = mat_column(dr_prev, j, prev.dim, field)
                    col = mat_vec(self.lmul(n - 1, beta), col_prev, field)
                    if beta == g:
                        col = vec_add(col, mat_column(act_prev, j, prev.dim, field), field)
                    cols.append(col)
            basis._dright[g] = mat_from_columns(cols, prev.dim, field)
        return basis._dright[g]

    def act_matrix(self, n, w: GroupElement):
        """Action of a group element on the degree-n component."""
        self.ensure_degree(n)
        basis = self.bases[n]
        key = w.images
        if key not in basis._act:
            field = self.field
            cols = []
            for word in basis.words:
                sign, img = act_on_word(w, word)
                col = self.project_word(img)
                if sign < 0:
                    col = [field.neg(x) for x in col]
                cols.append(col)
            basis._act[key] = mat_from_columns(cols, basis.dim, field)
        return basis._act[key]

    def project_word(self, word):
        """Coordinates of a word's class against the degree basis."""
        field = self.field
        n = len(word)
        self.ensure_degree(n)
        if self.finite_top is not None and n > self.finite_top:
            return []
        vec = [field.one]
        for k in range(n - 1, -1, -1):
            vec = mat_vec(self.lmul(n - k, word[k]), vec, field)
        return vec

    def project_tensor(self, t: TensorElement):
        field = self.field
        n = t.degree
        self.ensure_degree(n)
        dim = self.dim(n)
        vec = [field.zero] * dim
        for w, c in t.terms.items():
            col = self.project_word(w)
            fc = field.of(c)
            for i, v in enumerate(col):
                if v:
                    vec[i] = field.add(vec[i], field.mul(fc, v))
        return vec

    def gram(self, n):
        """Gram matrix of the duality pairing on the degree-n basis."""
        self.ensure_degree(n)
        basis = self.bases[n]
        if basis._gram is None:
            field = self.field
            if n == 0:
                basis._gram = [[field.one]]
            else:
                prev = self.bases[n - 1]
                g_prev = self.gram(n - 1)
                rows = [[field.zero] * basis.dim for _ in range(basis.dim)]
                for jcol in range(basis.dim):
                    beta, jp = basis.parents[jcol]
                    gb = [g_prev[l][jp] for l in range(prev.dim)]
                    dr = self.dright(n, beta)
                    for i in range(basis.dim):
                        acc = field.zero
                        for l in range(prev.dim):
                            v = dr[l].get(i)
                            if v:
                                acc = field.add(acc, field.mul(v, gb[l]))
                        rows[i][jcol] = acc
                basis._gram = rows
        return basis._gram

    def gram_inv(self, n):
        basis = self.basis(n)
        if basis._gram_inv is None:
            g = self.gram(n)
            gm = [{j: v for j, v in enumerate(row) if v} for row in g]
            basis._gram_inv = mat_inverse(gm, self.field)
        return basis._gram_inv

    def rho_matrix(self, n):
        """Word reversal as a matrix on the degree-n component."""
        basis = self.basis(n)
        if basis._rho is None:
            cols = [self.project_word(w[::-1]) for w in basis.words]
            basis._rho = mat_from_columns(cols, basis.dim, self.field)
        return basis._rho

    def antipode_matrix(self, n):
        """Antipode on degree n via S(x_a z) = -(s_a . S(z)) x_a."""
        basis = self.basis(n)
        if basis._antipode is None:
            field = self.field
            if n == 0:
                basis._antipode = mat_identity(1, field)
            else:
                s_prev = self.antipode_matrix(n - 1)
                cols = []
                for i in range(basis.dim):
                    a, j = basis.parents[i]
                    col = mat_column(s_prev, j, self.bases[n - 1].dim, field)
                    col = mat_vec(self.act_matrix(n - 1, self.system.reflection(a)), col, field)
                    col = mat_vec(self.rmul(n, a), col, field)
                    cols.append([field.neg(x) for x in col])
                basis._antipode = mat_from_columns(cols, basis.dim, field)
        return basis._antipode

    def antipode_inv_matrix(self, n):
        """Inverse antipode, columnwise via S^{-1} = (-1)^{l(g)} g^{-1} S."""
        basis = self.basis(n)
        if basis._antipode_inv is None:
            field = self.field
            s = self.antipode_matrix(n)
            cols = []
            for i in range(basis.dim):
                g = basis.wdegs[i]
                col = mat_column(s, i, basis.dim, field)
                col = mat_vec(self.act_matrix(n, g.inverse()), col, field)
                if g.length() % 2:
                    col = [field.neg(x) for x in col]
                cols.append(col)
            basis._antipode_inv = mat_from_columns(cols, basis.dim, field)
        return basis._antipode_inv

    def sbar_matrix(self, n):
        m = mat_mul(self.rho_matrix(n), self.antipode_matrix(n), self.field)
        if n % 2:
            m = mat_scale(m, self.field.neg(self.field.one), self.field)
        return m

    def hilbert(self):
        return list(self.dims())


# ---------------------------------------------------------------------------
# elements
# ---------------------------------------------------------------------------


class NicholsElement:
    """A graded element in coordinates against the per-degree bases."""

    __slots__ = ("state", "components")

    def __init__(self, state: AlgebraState, components=None):
        self.state = state
        self.components = {}
        if components:
            for n, vec in components.items():
                if any(vec):
                    self.components[n] = list(vec)

    @classmethod
    def zero(cls, state):
        return cls(state)

    @classmethod
    def unit(cls, state):
        return cls(state, {0: [state.field.one]})

    @classmethod
    def generator(cls, state, a):
        vec = [state.field.zero] * state.dim(1)
        vec[a] = state.field.one
        return cls(state, {1: vec})

    @classmethod
    def from_word(cls, state, word, coeff=1):
        col = state.project_word(tuple(word))
        c = state.field.of(coeff)
        return cls(state, {len(word): [state.field.mul(c, v) for v in col]})

    @classmethod
    def from_tensor(cls, state, t: TensorElement):
        return cls(state, {t.degree: state.project_tensor(t)})

    def is_zero(self):
        return not self.components

    def degrees(self):
        return sorted(self.components)

    def component(self, n):
        field = self.state.field
        if n in self.components:
            return list(self.components[n])
        return [field.zero] * self.state.dim(n)

    def homogeneous_part(self, n):
        return NicholsElement(self.state, {n: self.component(n)} if n in self.components else {})

    def __add__(self, other):
        field = self.state.field
        comps = {n: list(v) for n, v in self.components.items()}
        for n, v in other.components.items():
            if n in comps:
                comps[n] = vec_add(comps[n], v, field)
            else:
                comps[n] = list(v)
        return NicholsElement(self.state, comps)

    def __sub__(self, other):
        return self + other.scale(self.state.field.neg(self.state.field.one))

    def scale(self, s):
        field = self.state.field
        s = field.of(s)
        return NicholsElement(self.state, {n: vec_scale(v, s, field) for n, v in self.components.items()})

    def __neg__(self):
        return self.scale(-1)

    def __eq__(self, other):
        return isinstance(other, NicholsElement) and self.components == other.components

    def __repr__(self):
        parts = []
        for n in self.degrees():
            basis = self.state.bases[n]
            for i, c in enumerate(self.components[n]):
                if c:
                    parts.append(f"{c}*x{list(basis.words[i])}")
        return " + ".join(parts) if parts else "0"

    def proportional_to(self, other):
        """Scalar s with self = s * other, or None."""
        field = self.state.field
        if other.is_zero():
            return field.zero if self.is_zero() else None
        if self.is_zero():
            return field.zero
        n0 = other.degrees()[0]
        vo = other.components[n0]
        i0 = next(i for i, v in enumerate(vo) if v)
        vs = self.components.get(n0)
        if vs is None:
            return None
        s = field.div(vs[i0], vo[i0])
        return s if self == other.scale(s) else None


def multiply(a: NicholsElement, b: NicholsElement) -> NicholsElement:
    state = a.state
    field = state.field
    out = {}
    for na, va in a.components.items():
        basis_a = state.basis(na)
        for nb, vb in b.components.items():
            n = na + nb
            if state.finite_top is not None and n > state.finite_top:
                continue
            state.ensure_degree(n)
            acc = out.setdefault(n, [field.zero] * state.dim(n))
            for i, ci in enumerate(va):
                if not ci:
                    continue
                word = basis_a.words[i]
                vec = vb
                deg = nb
                for k in range(na - 1, -1, -1):
                    vec = mat_vec(state.lmul(deg + 1, word[k]), vec, field)
                    deg += 1
                for t, v in enumerate(vec):
                    if v:
                        acc[t] = field.add(acc[t], field.mul(ci, v))
    return NicholsElement(state, out)


def group_act(w: GroupElement, z: NicholsElement) -> NicholsElement:
    state = z.state
    out = {}
    for n, v in z.components.items():
        out[n] = mat_vec(state.act_matrix(n, w), v, state.field)
    return NicholsElement(state, out)


def pairing(a: NicholsElement, b: NicholsElement):
    state = a.state
    field = state.field
    total = field.zero
    for n, va in a.components.items():
        vb = b.components.get(n)
        if vb is None:
            continue
        g = state.gram(n)
        for i, x in enumerate(va):
            if not x:
                continue
            row = g[i]
            acc = field.zero
            for j, y in enumerate(vb):
                if y:
                    acc = field.add(acc, field.mul(row[j], y))
            total = field.add(total, field.mul(x, acc))
    return total


def right_derivative(z: NicholsElement, y: NicholsElement) -> NicholsElement:
    """(z) <- D_y, the right derivative action of y on z."""
    state = z.state
    field = state.field
    out = {}
    for ny, vy in y.components.items():
        basis_y = state.basis(ny)
        for nz, vz in z.components.items():
            if nz < ny:
                continue
            n = nz - ny
            acc = out.setdefault(n, [field.zero] * state.dim(n))
            for i, ci in enumerate(vy):
                if not ci:
                    continue
                vec = vz
                deg = nz
                for g in basis_y.words[i]:
                    vec = mat_vec(state.dright(deg, g), vec, field)
                    deg -= 1
                for t, v in enumerate(vec):
                    if v:
                        acc[t] = field.add(acc[t], field.mul(ci, v))
    return NicholsElement(state, out)


def left_derivative(y: NicholsElement, z: NicholsElement) -> NicholsElement:
    """D_y (z), the left derivative action of y on z."""
    state = z.state
    field = state.field
    out = {}
    for ny, vy in y.components.items():
        basis_y = state.basis(ny)
        for nz, vz in z.components.items():
            if nz < ny:
                continue
            n = nz - ny
            acc = out.setdefault(n, [field.zero] * state.dim(n))
            for i, ci in enumerate(vy):
                if not ci:
                    continue
                vec = vz
                deg = nz
                for g in reversed(basis_y.words[i]):
                    vec = mat_vec(state.dleft(deg, g), vec, field)
                    deg -= 1
                for t, v in enumerate(vec):
                    if v:
                        acc[t] = field.add(acc[t], field.mul(ci, v))
    return NicholsElement(state, out)


def derivative_by_root(z: NicholsElement, g: int, side="right") -> NicholsElement:
    state = z.state
    y = NicholsElement.generator(state, g)
    return right_derivative(z, y) if side == "right" else left_derivative(y, z)


def antipode(z: NicholsElement) -> NicholsElement:
    state = z.state
    return NicholsElement(state, {
        n: mat_vec(state.antipode_matrix(n), v, state.field)
        for n, v in z.components.items()})


def antipode_inv(z: NicholsElement) -> NicholsElement:
    state = z.state
    return NicholsElement(state, {
        n: mat_vec(state.antipode_inv_matrix(n), v, state.field)
        for n, v in z.components.items()})


def rho(z: NicholsElement) -> NicholsElement:
    state = z.state
    return NicholsElement(state, {
        n: mat_vec(state.rho_matrix(n), v, state.field)
        for n, v in z.components.items()})


def s_bar(z: NicholsElement) -> NicholsElement:
    state = z.state
    return NicholsElement(state, {
        n: mat_vec(state.sbar_matrix(n), v, state.field)
        for n, v in z.components.items()})


def counit(z: NicholsElement):
    vec = z.components.get(0)
    return vec[0] if vec else z.state.field.zero


def coproduct_split(z: NicholsElement, k: int):
    """The (k, n-k) coproduct legs of each component, as element pairs.

    Returns a list of (left, right) pairs whose sum of tensors is the
    degree-(k, n-k) part of the coproduct.
    """
    state = z.state
    field = state.field
    out = []
    for n, v in z.components.items():
        if k > n:
            continue
        basis_k = state.basis(k)
        ginv = state.gram_inv(k)
        comp = NicholsElement(state, {n: v})
        for i in range(basis_k.dim):
            dual = NicholsElement(state, {k: [
                ginv[l].get(i, field.zero) for l in range(basis_k.dim)]})
            t = left_derivative(dual, comp)
            if not t.is_zero():
                left = NicholsElement(state, {k: [
                    field.one if l == i else field.zero for l in range(basis_k.dim)]})
                out.append((left, t))
    return out


def coproduct_word_expansion(sys: RootSystem, word):
    """Full braided coproduct of a word on tensor representatives.

    Returns {(left_word, right_word): integer coefficient}.
    """
    terms = {((), ()): 1}
    wdeg_cache = {(): sys.identity()}
    for a in word:
        new = {}
        for (w1, w2), c in terms.items():
            g = wdeg_cache.get(w2)
            if g is None:
                g = word_wdeg(sys, w2)
                wdeg_cache[w2] = g
            s = g.act(a + 1)
            key1 = (w1 + (abs(s) - 1,), w2)
            val = c if s > 0 else -c
            new[key1] = new.get(key1, 0) + val
            key2 = (w1, w2 + (a,))
            new[key2] = new.get(key2, 0) + c
        terms = {k: v for k, v in new.items() if v}
    return terms


# ---------------------------------------------------------------------------
# monomial predicates and group-degree decomposition
# ---------------------------------------------------------------------------


def _span_solver(state: AlgebraState, columns, n):
    solver = ColumnSolver(state.dim(n), state.field)
    for col in columns:
        solver.add(col)
    return solver


def starts_with(z: NicholsElement, g: int) -> bool:
    """Whether z can be written as x_g * z' (per nonzero component)."""
    state = z.state
    field = state.field
    for n, v in z.components.items():
        if n == 0:
            return False
        lm = state.lmul(n, g)
        cols = [mat_column(lm, j, state.dim(n), field) for j in range(state.dim(n - 1))]
        if _span_solver(state, cols, n).coordinates(v) is None:
            return False
    return True


def ends_with(z: NicholsElement, g: int) -> bool:
    state = z.state
    field = state.field
    for n, v in z.components.items():
        if n == 0:
            return False
        rm = state.rmul(n, g)
        cols = [mat_column(rm, j, state.dim(n), field) for j in range(state.dim(n - 1))]
        if _span_solver(state, cols, n).coordinates(v) is None:
            return False
    return True


def starts_with_set(z: NicholsElement, theta) -> bool:
    """Whether z is a sum of monomials starting with letters from theta."""
    state = z.state
    field = state.field
    for n, v in z.components.items():
        if n == 0:
            return False
        cols = []
        for g in sorted(theta):
            lm = state.lmul(n, g)
            cols.extend(mat_column(lm, j, state.dim(n), field) for j in range(state.dim(n - 1)))
        if _span_solver(state, cols, n).coordinates(v) is None:
            return False
    return True


def ends_with_set(z: NicholsElement, theta) -> bool:
    state = z.state
    field = state.field
    for n, v in z.components.items():
        if n == 0:
            return False
        cols = []
        for g in sorted(theta):
            rm = state.rmul(n, g)
            cols.extend(mat_column(rm, j, state.dim(n), field) for j in range(state.dim(n - 1)))
        if _span_solver(state, cols, n).coordinates(v) is None:
            return False
    return True


def theta_span(state: AlgebraState, theta, n):
    """Basis (as coordinate vectors) of the degree-n span of words over theta."""
    key = (tuple(sorted(theta)), n)
    cache = getattr(state, "_theta_span_cache", None)
    if cache is None:
        cache = state._theta_span_cache = {}
    if key not in cache:
        field = state.field
        if n == 0:
            vecs = [[field.one]]
        else:
            prev = theta_span(state, theta, n - 1)
            solver = ColumnSolver(state.dim(n), field)
            vecs = []
            for g in sorted(theta):
                lm = state.lmul(n, g)
                for b in prev:
                    col = mat_vec(lm, b, field)
                    if solver.add(col):
                        vecs.append(col)
        cache[key] = vecs
    return cache[key]


def involves_only(z: NicholsElement, theta) -> bool:
    state = z.state
    for n, v in z.components.items():
        span = theta_span(state, theta, n)
        solver = _span_solver(state, span, n)
        if solver.coordinates(v) is None:
            return False
    return True


def w_degree_decompose(z: NicholsElement):
    """Split into group-homogeneous summands, keyed by group element."""
    state = z.state
    field = state.field
    out = {}
    for n, v in z.components.items():
        basis = state.basis(n)
        for g, idxs in basis.classes.items():
            if any(v[i] for i in idxs):
                comp = out.setdefault(g, {})
                vec = comp.setdefault(n, [field.zero] * basis.dim)
                for i in idxs:
                    vec[i] = v[i]
    return {g: NicholsElement(state, comps) for g, comps in out.items()}


def w_degree(z: NicholsElement):
    """The group degree of a homogeneous element (None if mixed or zero)."""
    d = w_degree_decompose(z)
    if len(d) != 1:
        return None
    return next(iter(d))


# ---------------------------------------------------------------------------
# the symmetrizer oracle
# ---------------------------------------------------------------------------


def _permutation_words(n):
    """A reduced word for every permutation of n letters, by BFS."""
    ident = tuple(range(n))
    words = {ident: ()}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for i in range(n - 1):
                q = p[:i] + (p[i + 1], p[i]) + p[i + 2:]
                if q not in words:
                    words[q] = words[p] + (i,)
                    nxt.append(q)
        frontier = nxt
    return words


def _braid_lift_terms(sys, word, braid_word):
    """Apply a sequence of forward braidings (rightmost first) to a word."""
    sign, w = 1, word
    for i in reversed(braid_word):
        s, w = braid_apply(sys, w, i)
        sign *= s
    return sign, w


def symmetrizer_oracle(sys: RootSystem, n: int, memory_bound=DEFAULT_MEMORY_BOUND):
    """The Woronowicz symmetrizer on all length-n words, as a sparse matrix.

    Its rank over the field equals the dimension of the degree-n
    component, independently of the derivative-based construction.
    """
    from .exactlinalg import SparseMatrix

    nwords = sys.nroots ** n
    if nwords * nwords > memory_bound:
        raise MemoryBoundExceeded(f"{nwords} words exceed the memory bound")
    words = list(itertools.product(range(sys.nroots), repeat=n))
    index = {w: i for i, w in enumerate(words)}
    perm_words = _permutation_words(n)
    m = SparseMatrix(nwords, nwords)
    for j, w in enumerate(words):
        acc = {}
        for bw in perm_words.values():
            sign, img = _braid_lift_terms(sys, w, bw)
            acc[img] = acc.get(img, 0) + sign
        for img, c in acc.items():
            if c:
                m[index[img], j] = Fraction(c)
    return m


def symmetrizer_rank(sys: RootSystem, n: int, field=QQ,
                     memory_bound=DEFAULT_MEMORY_BOUND) -> int:
    """Rank of the degree-n symmetrizer, computed per group-degree class."""
    nwords = sys.nroots ** n
    if nwords * n > memory_bound:
        raise MemoryBoundExceeded(f"{nwords} words exceed the memory bound")
    perm_words = _permutation_words(n)
    by_class = {}
    for w in itertools.product(range(sys.nroots), repeat=n):
        by_class.setdefault(word_wdeg(sys, w).images, []).append(w)
    total = 0
    for key in sorted(by_class):
        words = by_class[key]
        index = {w: i for i, w in enumerate(words)}
        solver = ColumnSolver(len(words), field)
        for w in words:
            acc = {}
            for bw in perm_words.values():
                sign, img = _braid_lift_terms(sys, w, bw)
                acc[img] = acc.get(img, 0) + sign
            col = [field.zero] * len(words)
            for img, c in acc.items():
                if c:
                    col[index[img]] = field.of(c)
            solver.add(col)
        total += solver.rank
    return total


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def element_to_json(z: NicholsElement):
    comps = []
    for n in z.degrees():
        basis = z.state.basis(n)
        terms = []
        for i, c in enumerate(z.components[n]):
            if c:
                terms.append({"word": list(basis.words[i]), "coeff": str(c)})
        comps.append({"degree": n, "terms": terms})
    return {"degree_components": comps}


def element_from_json(state: AlgebraState, data) -> NicholsElement:
    out = NicholsElement.zero(state)
    for comp in data["degree_components"]:
        for term in comp["terms"]:
            c = Fraction(term["coeff"])
            out = out + NicholsElement.from_word(state, tuple(term["word"]), c)
    return out
