"""The equivariant acyclic matching on the partition-lattice nerve.

The construction splits the cells of the nerve by the atom a chain
starts with: chains led by a "pair vertex" (a doubleton {1,k} plus
singletons) form one fiber per k, and everything else forms the zero
fiber.  The zero fiber collapses onto the split vertex {{1},{2,...,n}}
through a closure operator followed by a cone; the fiber over {1,n} is a
lifted copy of the whole construction one size down; the remaining
fibers are transported copies under the stabilizer of 1.  What survives
is the split vertex plus one free orbit of top-dimensional chains of
"anchored" partitions (all blocks away from 1 singleton).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

from .morse import (
    Matching,
    Pair,
    equivariant_patchwork_matching,
    patchwork_matching,
    closure_matching,
    cone_matching,
    quotient_matching,
)
from .ordercomplex import OrderComplex, Simplex, proper_part_complex
from .perm import ComplexAction, Perm, PermGroup, QuotientComplex, act
from .setpart import Partition


def split_vertex(n: int) -> Partition:
    """The partition {{1},{2,...,n}}: the unique critical vertex."""
    return Partition(n, [[1], list(range(2, n + 1))])


def pair_vertex(n: int, k: int) -> Partition:
    """The atom {{1,k}, singletons}."""
    if not 2 <= k <= n:
        raise ValueError(f"pair vertex needs 2 <= k <= n, got {k}")
    return Partition(n, [[1, k]] + [[j] for j in range(2, n + 1) if j != k])


def pair_vertices(n: int) -> list[Partition]:
    return [pair_vertex(n, k) for k in range(2, n + 1)]


def is_pair_vertex(p: Partition) -> bool:
    return p.num_blocks == p.n - 1 and len(p.block_containing(1)) == 2


def is_anchored(p: Partition) -> bool:
    """True when every block not containing 1 is a singleton."""
    return all(len(b) == 1 for b in p.blocks if 1 not in b)


def anchored_vertices(n: int) -> list[Partition]:
    from .setpart import enumerate_proper

    return [p for p in enumerate_proper(n) if is_anchored(p)]


def anchored_flags(n: int) -> list[Simplex]:
    """All chains of n-2 anchored partitions (dimension n-3).

    The block holding 1 must grow one element per step from size 2 to
    n-1, so the flags correspond to ordered choices of n-2 of the n-1
    other elements; there are (n-1)! of them.
    """
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    flags = []
    for added in permutations(range(2, n + 1), n - 2):
        block = [1]
        chain = []
        for e in added:
            block.append(e)
            rest = [[j] for j in range(2, n + 1) if j not in block]
            chain.append(Partition(n, [block[:]] + rest))
        flags.append(Simplex(tuple(chain)))
    flags.sort(key=lambda s: tuple(v.rgs for v in s.vertices))
    return flags


@dataclass
class SpecialCells:
    anchored: list[Partition]
    flags: list[Simplex]
    split: Partition
    pair_vertices: list[Partition]


def special_cells(n: int) -> SpecialCells:
    return SpecialCells(
        anchored=anchored_vertices(n),
        flags=anchored_flags(n),
        split=split_vertex(n),
        pair_vertices=pair_vertices(n),
    )


def fiber_of(s: Simplex):
    """The unique pair vertex of the chain, or 0 when it has none.

    Pair vertices are atoms of the refinement order, so a chain can hold
    at most one and only in front position.
    """
    hits = [v for v in s if is_pair_vertex(v)]
    if len(hits) > 1:
        raise AssertionError(f"chain {s} holds two pair vertices")
    return hits[0] if hits else 0


# -- lifting between ground-set sizes ---------------------------------


def lift_partition(p: Partition) -> Partition:
    """Add n to the block containing 1 (partition of [n-1] -> [n])."""
    n = p.n + 1
    blocks = [sorted(b) + [n] if 1 in b else list(b) for b in p.blocks]
    return Partition(n, blocks)


def unlift_partition(p: Partition) -> Partition:
    n = p.n
    b1 = p.block_containing(1)
    if n not in b1:
        raise ValueError(f"{p} does not carry {n} in the block of 1")
    blocks = [[e for e in b if e != n] for b in p.blocks]
    return Partition(n - 1, [b for b in blocks if b])


def lift_chain(s: Simplex) -> Simplex:
    """Send a chain over [n-1] into the fiber of the pair vertex {1,n}:
    add n to the block of 1 in every vertex and prepend the pair vertex."""
    n = s.vertices[0].n + 1
    return Simplex((pair_vertex(n, n),) + tuple(lift_partition(v) for v in s))


def unlift_chain(s: Simplex) -> Simplex:
    n = s.vertices[0].n
    if s.vertices[0] != pair_vertex(n, n) or len(s.vertices) < 2:
        raise ValueError(f"chain {s} is not a lifted chain")
    tail = []
    for v in s.vertices[1:]:
        q = unlift_partition(v)
        if q.is_discrete() or q.is_total():
            raise ValueError(f"chain {s} is not a lifted chain: {v} unlifts improperly")
        tail.append(q)
    return Simplex(tuple(tail))


def restrict_permutation(g: Perm) -> Perm:
    """Drop the last point from a permutation fixing both 1 and n."""
    n = g.n
    if g(1) != 1 or g(n) != n:
        raise ValueError(f"{g} does not fix 1 and {n}")
    return Perm(g.images[: n - 1])


# -- cached complexes, actions, matchings ------------------------------

_complexes: dict[int, OrderComplex] = {}
_actions: dict[int, ComplexAction] = {}
_matchings: dict[int, Matching] = {}


def get_complex(n: int) -> OrderComplex:
    if n not in _complexes:
        _complexes[n] = proper_part_complex(n)
    return _complexes[n]


def get_action(n: int) -> ComplexAction:
    """The stabilizer of 1 acting on the nerve cells."""
    if n not in _actions:
        _actions[n] = ComplexAction(get_complex(n), PermGroup.point_stabilizer(n))
    return _actions[n]


def _vertex_keys(cx: OrderComplex) -> list:
    return [p if is_pair_vertex(p) else 0 for p in cx.elements]


def cell_fiber_key(cx: OrderComplex):
    """cell id -> pair vertex leading the chain, or 0."""
    vkey = _vertex_keys(cx)

    def key(cell):
        d, i = cell
        return vkey[cx.cells[d][i][0]]

    return key


def _key_leq(a, b) -> bool:
    return a == b or a == 0


def _key_action(g: Perm, key):
    return act(g, key) if isinstance(key, Partition) else 0


def fiber_zero_matching(n: int) -> Matching:
    """Matching on the chains with no pair vertex; only the split vertex
    survives.

    Stage one collapses along the descending closure operator
    x -> meet(x, split): chains holding a vertex that does not keep 1
    in a singleton block are toggled on the split-off copy of their
    smallest such vertex.  Stage two cones what remains (chains of
    partitions with {1} a singleton) onto the split vertex.  The stages
    are glued along the indicator of the cone's ground set.
    """
    cx = get_complex(n)
    split = split_vertex(n)
    split_idx = cx.element_index[split]
    vkey = _vertex_keys(cx)
    ground = [v for v, k in enumerate(vkey) if k == 0]

    def descend(v: int) -> int:
        return cx.element_index[cx.elements[v].meet(split)]

    stage1 = closure_matching(cx, descend, ground)
    fixed = [v for v in ground if descend(v) == v]
    stage2 = cone_matching(cx, fixed, split_idx)

    fixed_set = set(fixed)
    ground_set = set(ground)

    def stage_key(cell):
        d, i = cell
        chain = cx.cells[d][i]
        if all(v in fixed_set for v in chain):
            return 0
        if all(v in ground_set for v in chain):
            return 1
        return 2

    return patchwork_matching(cx, stage_key, lambda a, b: a <= b, {0: stage2, 1: stage1, 2: []})


def build_main_matching(n: int) -> Matching:
    """The stabilizer-equivariant acyclic matching on the nerve of the
    proper partition lattice, assembled fiber by fiber.

    Critical cells: the split vertex and the (n-1)! anchored flags.
    """
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    if n in _matchings:
        return _matchings[n]
    cx = get_complex(n)
    action = get_action(n)

    zero_pairs = list(fiber_zero_matching(n).pairs)

    last_pairs: list[Pair] = []
    if n > 3:
        prev = build_main_matching(n - 1)
        prev_cx = prev.complex
        for (d, i), (e, j) in prev.pairs:
            a = cx.locate(lift_chain(prev_cx.simplex(d, i)))
            b = cx.locate(lift_chain(prev_cx.simplex(e, j)))
            last_pairs.append((a, b))
        # the lift leaves the bare pair-vertex chain unmatched; close it
        # off against the lift of the split vertex one size down
        bottom = cx.locate(Simplex((pair_vertex(n, n),)))
        first_edge = cx.locate(lift_chain(Simplex((split_vertex(n - 1),))))
        last_pairs.append((bottom, first_edge))

    matching = equivariant_patchwork_matching(
        cx,
        action,
        cell_fiber_key(cx),
        _key_action,
        _key_leq,
        {0: zero_pairs, pair_vertex(n, n): last_pairs},
    )
    _matchings[n] = matching
    return matching


# -- quotients and labels ----------------------------------------------


def quotient_critical_cells(n: int, subgroup: PermGroup):
    """Quotient the main matching by a subgroup fixing 1; returns the
    quotient matching and the quotient complex."""
    if not subgroup.fixes_point(1):
        raise ValueError("subgroup must fix 1")
    matching = build_main_matching(n)
    qc = QuotientComplex(get_complex(n), subgroup)
    qm = quotient_matching(matching, qc)
    return qm, qc


def block_size_label(p: Partition) -> str:
    """Number-partition label distinguishing the block of 1; the
    partition 1,2|3|4 gets "2⊕1+1", the split vertex 1|2,3,4 gets "1⊕3"."""
    first = len(p.block_containing(1))
    rest = sorted((len(b) for b in p.blocks if 1 not in b), reverse=True)
    return f"{first}⊕" + "+".join(str(v) for v in rest)


def orbit_vertex_label(qc: QuotientComplex, i: int) -> str:
    """Label of a vertex orbit of the quotient by the full stabilizer of 1."""
    n = qc.base.elements[0].n
    group = qc.group
    expected = 1
    for k in range(1, n):
        expected *= k
    if group.order != expected or not group.fixes_point(1):
        raise ValueError("labels require the quotient by the full stabilizer of 1")
    return block_size_label(qc.base.elements[qc.reps[0][i]])


def matching_report(n: int) -> dict:
    """Certificates and counts for the main matching at one size."""
    from .morse import check_equivariance, validate_matching
    from .perm import orbits

    matching = build_main_matching(n)
    cx = matching.complex
    action = get_action(n)
    cert = validate_matching(cx, matching)
    cells = special_cells(n)
    critical = {cx.simplex(d, i) for d, layer in enumerate(matching.critical_cells()) for i in layer}
    wanted = set(cells.flags) | {Simplex((cells.split,))}
    orbit_list = orbits(action.group, cells.flags)
    return {
        "n": n,
        "criticalCounts": matching.critical_counts(),
        "cardinalityCn": len(cells.flags),
        "certificates": {
            "acyclic": cert.is_acyclic,
            "equivariant": check_equivariance(matching, action),
            "criticalSetMatches": critical == wanted,
        },
        "orbitData": {
            "orbits": len(orbit_list),
            "stabilizerOrder": max(o.stabilizer_order for o in orbit_list),
        },
    }
