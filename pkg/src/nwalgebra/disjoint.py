"""Disjoint systems: sets of centralizer elements whose conjugated simple
reflections tile the reflections, with an exact-cover search for complete
systems and the integrality equivalence checks they feed.
"""

from __future__ import annotations

from dataclasses import dataclass

from .coxeter import ENUMERATION_BOUND, GroupElement, RootSystem, centralizer_of_longest
from .nichols_core import AlgebraState, NicholsElement, multiply


@dataclass
class DisjointSystem:
    elements: tuple
    blocks: dict          # element -> frozenset of positive-root indices
    order: int
    normalized: bool
    complete: bool

    def to_json(self):
        sys = self.elements[0].system if self.elements else None
        out = []
        for w in self.elements:
            block = sorted(self.blocks[w])
            if sys is not None and sys._is_type_a:
                roots = [list(sys.pair_of_root[t]) for t in block]
            else:
                roots = block
            out.append({"element": w.to_json(), "block": roots})
        return {
            "order": self.order,
            "normalized": self.normalized,
            "complete": self.complete,
            "members": out,
        }


@dataclass
class DisjointViolation:
    reason: str
    witness: tuple  # offending elements (and shared reflection index if any)

    def to_json(self):
        parts = []
        for x in self.witness:
            parts.append(x.to_json() if isinstance(x, GroupElement) else x)
        return {"reason": self.reason, "witness": parts}


def classify(elements, system: RootSystem):
    """Validate a set of group elements as a disjoint system.

    Returns a DisjointSystem on success, else a DisjointViolation naming
    the first offending element or pair (with a shared reflection).
    """
    elements = sorted(set(elements), key=lambda w: w.images)
    wo = system.longest_element()
    for w in elements:
        if w * wo != wo * w:
            return DisjointViolation("element does not centralize the longest element", (w,))
    blocks = {w: w.t_set() for w in elements}
    for i, w in enumerate(elements):
        for v in elements[:i]:
            shared = blocks[w] & blocks[v]
            if shared:
                return DisjointViolation(
                    "conjugated simple reflections overlap", (v, w, min(shared)))
    order = len(elements)
    covered = frozenset().union(*blocks.values()) if blocks else frozenset()
    complete = order * system.rank == system.nroots and len(covered) == system.nroots
    normalized = any(w.is_identity() for w in elements)
    return DisjointSystem(tuple(elements), blocks, order, normalized, complete)


def translate(d: DisjointSystem, v: GroupElement, system: RootSystem):
    """The translated system v D (valid for v in the centralizer)."""
    return classify([v * w for w in d.elements], system)


def normalize(d: DisjointSystem, v: GroupElement, system: RootSystem):
    """The normalized system v^{-1} D for v in D."""
    return translate(d, v.inverse(), system)


def search_complete(system: RootSystem, bound: int = ENUMERATION_BOUND):
    """All normalized complete disjoint systems, modulo w ~ w w_o per member.

    Exact-cover backtracking over the candidate blocks T_w of centralizer
    elements; the uncovered root with the fewest remaining candidate
    blocks is branched first, candidates in canonical element order.
    """
    rank = system.rank
    nroots = system.nroots
    if nroots % rank != 0:
        return []
    need = nroots // rank
    wo = system.longest_element()
    cent = centralizer_of_longest(system, bound)
    simple_set = frozenset(system.simple_index)
    # candidate representatives: w and w*wo share a block; keep the smaller
    cand = {}
    for w in cent:
        if w.is_identity() or w == wo:
            continue
        block = w.t_set()
        if block & simple_set:
            continue
        rep = min(w, w * wo, key=lambda u: u.images)
        cand.setdefault(block, rep)
    blocks = sorted(cand.items(), key=lambda kv: kv[1].images)
    universe = frozenset(range(nroots)) - simple_set
    by_root = {t: [i for i, (b, _) in enumerate(blocks) if t in b] for t in universe}

    solutions = []

    def recurse(uncovered, chosen):
        if not uncovered:
            solutions.append(tuple(chosen))
            return
        best_t, best_avail = None, None
        for t in sorted(uncovered):
            avail = [i for i in by_root[t] if blocks[i][0] <= uncovered]
            if best_avail is None or len(avail) < len(best_avail):
                best_t, best_avail = t, avail
                if not avail:
                    break
        for i in best_avail:
            b, w = blocks[i]
            chosen.append(w)
            recurse(uncovered - b, chosen)
            chosen.pop()

    recurse(universe, [])
    out = []
    for sol in sorted(solutions, key=lambda ws: tuple(w.images for w in ws)):
        if len(sol) != need - 1:
            continue
        d = classify((system.identity(),) + sol, system)
        if isinstance(d, DisjointSystem) and d.complete:
            out.append(d)
    return out


def motiv_check(d: DisjointSystem, ordering, state: AlgebraState):
    """Evaluate the three equivalent integrality statements for a complete
    system: some ordered product of the y's is a nonzero integral, all
    orderings are, and the y's commute up to the parity sign of the top
    word.  Reports each truth value and whether the pattern is consistent
    (all three equal)."""
    import itertools as it

    from .integrals import is_integral
    from .nilcoxeter import y_element

    sys = state.system
    wo = sys.longest_element()
    r = d.order
    lwo = wo.length()
    if state.finite_top is None:
        raise RuntimeError("integrality needs the fully constructed algebra")
    if r * lwo > state.finite_top:
        raise RuntimeError("product degree exceeds the top degree")
    ys = [y_element(w, state) for w in ordering]
    sign = -1 if lwo % 2 else 1

    def product(seq):
        acc = NicholsElement.unit(state)
        for y in seq:
            acc = multiply(acc, y)
        return acc

    given = product(ys)
    item1 = (not given.is_zero()) and is_integral(given, state)
    item2 = True
    for perm in it.permutations(range(r)):
        z = product([ys[i] for i in perm])
        if z.is_zero() or not is_integral(z, state):
            item2 = False
            break
    item3 = True
    for i in range(r):
        for j in range(r):
            lhs = multiply(ys[i], ys[j])
            rhs = multiply(ys[j], ys[i]).scale(sign)
            if lhs != rhs:
                item3 = False
    consistent = item1 == item2 == item3
    return {
        "order": r,
        "some_ordering_integral": item1,
        "all_orderings_integral": item2,
        "sign_commutation": item3,
        "equivalence_consistent": consistent,
    }
