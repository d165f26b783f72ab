"""Simply-laced crystallographic root systems and finite Weyl group arithmetic.

Roots are integer coefficient vectors over the simple roots, so every
computation here is exact integer arithmetic.  Positive roots get a fixed
canonical order (by height, then lexicographically on coefficients) and a
signed index encoding: the integer ``+(i+1)`` denotes the i-th positive
root, ``-(i+1)`` its negative.

Group elements are stored as the full signed permutation they induce on
the positive roots; this makes equality, length and conjugation of
reflections O(|R+|).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm

SIMPLY_LACED_LABELS = ("A", "D", "E")

#: default bound on full group enumeration
ENUMERATION_BOUND = 3628800  # 10!


class CoxeterError(ValueError):
    pass


class EnumerationBoundExceeded(CoxeterError):
    pass


@dataclass(frozen=True)
class CartanData:
    """A simply-laced Dynkin diagram: rank plus symmetric adjacency matrix."""

    rank: int
    adjacency: tuple
    type_label: str

    def __post_init__(self):
        if self.rank < 1:
            raise CoxeterError("rank must be >= 1")
        a = self.adjacency
        if len(a) != self.rank or any(len(row) != self.rank for row in a):
            raise CoxeterError("adjacency matrix has wrong shape")
        for i in range(self.rank):
            if a[i][i]:
                raise CoxeterError("diagram has a loop")
            for j in range(self.rank):
                if a[i][j] not in (0, 1):
                    raise CoxeterError("bond labels other than 3 are not simply laced")
                if a[i][j] != a[j][i]:
                    raise CoxeterError("adjacency matrix must be symmetric")
        edges = sum(sum(row) for row in a) // 2
        if edges >= self.rank and self.rank > 1:
            raise CoxeterError("diagram contains a cycle")


def _path_adjacency(n):
    a = [[0] * n for _ in range(n)]
    for i in range(n - 1):
        a[i][i + 1] = a[i + 1][i] = 1
    return a


def cartan_data(type_label: str, rank: int) -> CartanData:
    """Construct the Cartan datum of type A_n, D_n or E6/E7/E8."""
    t = type_label.upper()
    if t == "A":
        if rank < 1:
            raise CoxeterError("type A needs rank >= 1")
        a = _path_adjacency(rank)
    elif t == "D":
        if rank < 3:
            raise CoxeterError("type D needs rank >= 3")
        a = _path_adjacency(rank - 1)
        for row in a:
            row.append(0)
        a.append([0] * rank)
        # fork: last node attaches to node rank-3
        a[rank - 3][rank - 1] = a[rank - 1][rank - 3] = 1
    elif t == "E":
        if rank not in (6, 7, 8):
            raise CoxeterError("type E needs rank in {6, 7, 8}")
        a = _path_adjacency(rank - 1)
        for row in a:
            row.append(0)
        a.append([0] * rank)
        # branch node attached to the third vertex of the chain
        a[2][rank - 1] = a[rank - 1][2] = 1
    else:
        raise CoxeterError(f"not a simply-laced type: {type_label!r}")
    adj = tuple(tuple(row) for row in a)
    return CartanData(rank=rank, adjacency=adj, type_label=f"{t}{rank}")


class RootSystem:
    """Positive roots, reflection table and bilinear form of a Weyl group."""

    def __init__(self, cartan: CartanData):
        self.cartan = cartan
        self.rank = cartan.rank
        # symmetrized Cartan matrix: (b_i, b_j) = 2 d_ij - adjacency
        self.gram = tuple(
            tuple(2 if i == j else -cartan.adjacency[i][j] for j in range(self.rank))
            for i in range(self.rank)
        )
        self.roots = self._generate_positive_roots()
        self.nroots = len(self.roots)
        self.index = {r: i for i, r in enumerate(self.roots)}
        self.heights = tuple(sum(r) for r in self.roots)
        # simple root i (unit vector e_i) in the canonical order
        self.simple_index = tuple(
            self.index[tuple(1 if k == i else 0 for k in range(self.rank))]
            for i in range(self.rank)
        )
        self.refl = self._reflection_table()
        self._elements = None
        self._longest = None
        self._identity = None
        self._is_type_a = cartan.type_label.startswith("A")
        if self._is_type_a:
            self._init_type_a_pairs()

    # -- construction -------------------------------------------------

    def _generate_positive_roots(self):
        simples = [tuple(1 if k == i else 0 for k in range(self.rank)) for i in range(self.rank)]
        seen = set(simples)
        frontier = list(simples)
        while frontier:
            nxt = []
            for r in frontier:
                for i in range(self.rank):
                    s = self.reflect_coeffs(r, simples[i])
                    if all(c >= 0 for c in s) and s not in seen:
                        seen.add(s)
                        nxt.append(s)
            frontier = nxt
        return tuple(sorted(seen, key=lambda r: (sum(r), r)))

    def _reflection_table(self):
        table = []
        for t in range(self.nroots):
            rt = self.roots[t]
            row = []
            for i in range(self.nroots):
                img = self.reflect_coeffs(self.roots[i], rt)
                row.append(self._signed_index(img))
            table.append(tuple(row))
        return tuple(table)

    def _init_type_a_pairs(self):
        m = self.rank + 1
        pair_of = []
        of_pair = {}
        for idx, r in enumerate(self.roots):
            support = [k for k, c in enumerate(r) if c]
            a, b = support[0], support[-1]
            pair = (a + 1, b + 2)
            pair_of.append(pair)
            of_pair[pair] = idx
        self.pair_of_root = tuple(pair_of)
        self.root_of_pair = of_pair
        self.sym_m = m

    # -- root arithmetic ----------------------------------------------

    def ip(self, x, y) -> int:
        """W-invariant product normalized so (a, a) = 2 on roots."""
        g = self.gram
        return sum(x[i] * sum(g[i][j] * y[j] for j in range(self.rank)) for i in range(self.rank))

    def reflect_coeffs(self, x, alpha):
        c = self.ip(x, alpha)
        return tuple(x[k] - c * alpha[k] for k in range(self.rank))

    def _signed_index(self, coeffs) -> int:
        if coeffs in self.index:
            return self.index[coeffs] + 1
        neg = tuple(-c for c in coeffs)
        if neg in self.index:
            return -(self.index[neg] + 1)
        raise CoxeterError(f"not a root: {coeffs}")

    def reflect(self, t: int, signed: int) -> int:
        """Apply the reflection of positive root ``t`` to a signed root index."""
        if signed > 0:
            return self.refl[t][signed - 1]
        return -self.refl[t][-signed - 1]

    def reflect_root(self, x, alpha):
        """s_alpha(x) on coefficient vectors, validating both arguments."""
        for v in (alpha, x):
            v = tuple(v)
            if v not in self.index and tuple(-c for c in v) not in self.index:
                raise CoxeterError(f"not a root: {v}")
        return self.reflect_coeffs(tuple(x), tuple(alpha))

    def root_height(self, i: int) -> int:
        return self.heights[i]

    # -- distinguished elements ----------------------------------------

    def identity(self) -> "GroupElement":
        if self._identity is None:
            self._identity = GroupElement(self, tuple(range(1, self.nroots + 1)))
        return self._identity

    def simple_reflection(self, i: int) -> "GroupElement":
        return GroupElement(self, self.refl[self.simple_index[i]])

    def reflection(self, root_index: int) -> "GroupElement":
        return GroupElement(self, self.refl[root_index])

    def from_word(self, word) -> "GroupElement":
        w = self.identity()
        for i in word:
            w = w * self.simple_reflection(i)
        return w

    def longest_element(self) -> "GroupElement":
        if self._longest is None:
            w = self.identity()
            while True:
                for i in range(self.rank):
                    if w.images[self.simple_index[i]] > 0:
                        w = w * self.simple_reflection(i)
                        break
                else:
                    break
            self._longest = w
        return self._longest

    def elements(self, bound: int = ENUMERATION_BOUND):
        """All group elements by breadth-first closure, in a fixed order."""
        if self._elements is None:
            gens = [self.simple_reflection(i) for i in range(self.rank)]
            seen = {self.identity().images: self.identity()}
            frontier = [self.identity()]
            while frontier:
                nxt = []
                for w in frontier:
                    for g in gens:
                        u = w * g
                        if u.images not in seen:
                            if len(seen) >= bound:
                                raise EnumerationBoundExceeded(
                                    f"group larger than bound {bound}"
                                )
                            seen[u.images] = u
                            nxt.append(u)
                frontier = nxt
            self._elements = tuple(sorted(seen.values(), key=lambda w: w.images))
        return self._elements

    def exponent(self, bound: int = ENUMERATION_BOUND) -> int:
        """Least N > 0 with g^N = 1 for every group element."""
        if self._is_type_a:
            return lcm(*range(1, self.sym_m + 1))
        e = 1
        for w in self.elements(bound):
            e = lcm(e, w.order())
        return e

    def from_permutation(self, perm) -> "GroupElement":
        """Type A only: build the element from a one-line permutation of 1..m."""
        if not self._is_type_a:
            raise CoxeterError("one-line permutations only exist in type A")
        m = self.sym_m
        perm = tuple(perm)
        if sorted(perm) != list(range(1, m + 1)):
            raise CoxeterError(f"not a permutation of 1..{m}: {perm}")
        images = []
        for i, j in self.pair_of_root:
            a, b = perm[i - 1], perm[j - 1]
            if a < b:
                images.append(self.root_of_pair[(a, b)] + 1)
            else:
                images.append(-(self.root_of_pair[(b, a)] + 1))
        return GroupElement(self, tuple(images))


def build_root_system(cartan: CartanData) -> RootSystem:
    return RootSystem(cartan)


class GroupElement:
    """A Weyl group element as the signed permutation of the positive roots."""

    __slots__ = ("system", "images", "_hash")

    def __init__(self, system: RootSystem, images):
        self.system = system
        self.images = tuple(images)
        self._hash = hash(self.images)

    def __eq__(self, other):
        return isinstance(other, GroupElement) and self.images == other.images

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self.images < other.images

    def __repr__(self):
        if self.system._is_type_a:
            return "".join(str(k) for k in self.perm()) if self.system.sym_m < 10 else str(self.perm())
        return f"GroupElement{self.images}"

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        if self.system is not other.system:
            raise CoxeterError("elements of different root systems")
        mine = self.images
        out = []
        for s in other.images:
            if s > 0:
                out.append(mine[s - 1])
            else:
                out.append(-mine[-s - 1])
        return GroupElement(self.system, tuple(out))

    def inverse(self) -> "GroupElement":
        out = [0] * len(self.images)
        for i, s in enumerate(self.images):
            if s > 0:
                out[s - 1] = i + 1
            else:
                out[-s - 1] = -(i + 1)
        return GroupElement(self.system, tuple(out))

    def length(self) -> int:
        return sum(1 for s in self.images if s < 0)

    def is_identity(self) -> bool:
        return all(s == i + 1 for i, s in enumerate(self.images))

    def act(self, signed: int) -> int:
        """Image of a signed positive-root index."""
        if signed > 0:
            return self.images[signed - 1]
        return -self.images[-signed - 1]

    def order(self) -> int:
        n, w = 1, self
        e = self.system.identity()
        while w != e:
            w = w * self
            n += 1
        return n

    def conjugate_reflection(self, root_index: int) -> int:
        """Positive-root index t' with w s_t w^-1 = s_t'."""
        return abs(self.images[root_index]) - 1

    # -- descents, words, Bruhat order ---------------------------------

    def right_descents(self):
        sys = self.system
        return [i for i in range(sys.rank) if self.images[sys.simple_index[i]] < 0]

    def reduced_word(self):
        """A fixed reduced word (smallest descent first when read right to left)."""
        sys = self.system
        w = self
        rev = []
        while True:
            ds = w.right_descents()
            if not ds:
                break
            i = ds[0]
            rev.append(i)
            w = w * sys.simple_reflection(i)
        return tuple(reversed(rev))

    def bruhat_leq(self, other: "GroupElement") -> bool:
        """Strong Bruhat order: self <= other."""
        sys = self.system
        u, w = self, other
        if u.length() > w.length():
            return False
        word = w.reduced_word()
        for i in reversed(word):
            s = sys.simple_reflection(i)
            if u.images[sys.simple_index[i]] < 0:
                u = u * s
            w = w * s
        # w is now the identity
        return u.is_identity()

    def t_set(self) -> frozenset:
        """Positive-root indices a with s_a in w S w^-1."""
        sys = self.system
        return frozenset(abs(self.images[sys.simple_index[i]]) - 1 for i in range(sys.rank))

    # -- type A ---------------------------------------------------------

    def perm(self):
        """One-line permutation of 1..m (type A only)."""
        sys = self.system
        if not sys._is_type_a:
            raise CoxeterError("one-line permutations only exist in type A")
        m = sys.sym_m
        out = []
        for k in range(m - 1):
            s = self.images[sys.simple_index[k]]
            p, q = sys.pair_of_root[abs(s) - 1]
            a, b = (p, q) if s > 0 else (q, p)
            if not out:
                out.append(a)
            out.append(b)
        if m == 1:
            out = [1]
        return tuple(out)

    def to_json(self):
        if self.system._is_type_a:
            return {"perm": list(self.perm())}
        return {"word": list(self.reduced_word())}


def element_from_json(system: RootSystem, data) -> GroupElement:
    if "perm" in data:
        return system.from_permutation(data["perm"])
    return system.from_word(data["word"])


def centralizer_of_longest(system: RootSystem, bound: int = ENUMERATION_BOUND):
    """All elements commuting with the longest element, in canonical order.

    In type A the centralizer is generated directly from the mirror
    criterion p(i) + p(m+1-i) = m+1, so no full group enumeration happens.
    """
    if system._is_type_a:
        m = system.sym_m
        half = m // 2
        result = []
        img = {}
        if m % 2 == 1:
            # the fixed point of the mirror pairing must stay fixed
            img[(m + 1) // 2] = (m + 1) // 2

        def rec(pos, used):
            if pos > half:
                perm = tuple(img[i] for i in range(1, m + 1))
                result.append(system.from_permutation(perm))
                return
            for v in range(1, m + 1):
                if v in used or (m % 2 == 1 and v == (m + 1) // 2):
                    continue
                img[pos] = v
                img[m + 1 - pos] = m + 1 - v
                used.add(v)
                used.add(m + 1 - v)
                rec(pos + 1, used)
                used.discard(v)
                used.discard(m + 1 - v)
                del img[pos]
                del img[m + 1 - pos]

        rec(1, set())
        return tuple(sorted(result, key=lambda w: w.images))
    wo = system.longest_element()
    return tuple(w for w in system.elements(bound) if w * wo == wo * w)
