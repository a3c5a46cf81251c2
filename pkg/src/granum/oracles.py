"""Independent brute-force verifiers.

These deliberately avoid the code paths they grade: antichain enumeration is
a maximal-independent-set search over the conflict graph, signatures are
recomputed element by element from the definitions, and the inverse check
searches every partition of the universe.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Iterator, Sequence

from .core import Granulation, IndiscernibilityRelation, Region, Universe

Item = Hashable

MAX_ANTICHAIN_ITEMS = 20
MAX_SIGNATURE_UNIVERSE = 14
MAX_INVERSE_UNIVERSE = 10  # Bell(10) = 115975 partitions


def enumerate_maximal_antichains(conflict: Callable[[Item, Item], bool],
                                 collection: Iterable[Item]) -> list[tuple]:
    """All maximal conflict-free subsets, canonically ordered.

    Bron-Kerbosch with pivoting on the compatibility graph (two items are
    compatible when neither direction conflicts).
    """
    items = list(collection)
    n = len(items)
    if n > MAX_ANTICHAIN_ITEMS:
        raise ValueError(f"collection too large for exhaustive enumeration "
                         f"(n={n} > {MAX_ANTICHAIN_ITEMS})")
    if n == 0:
        return []
    compat = []
    for i, a in enumerate(items):
        bits = 0
        for j, b in enumerate(items):
            if i != j and not conflict(a, b) and not conflict(b, a):
                bits |= 1 << j
        compat.append(bits)

    found: list[int] = []

    def expand(r: int, p: int, x: int) -> None:
        if p == 0 and x == 0:
            found.append(r)
            return
        pool = p | x
        pivot = max(_bit_indices(pool), key=lambda u: (p & compat[u]).bit_count())
        candidates = p & ~compat[pivot]
        for v in _bit_indices(candidates):
            bit = 1 << v
            expand(r | bit, p & compat[v], x & compat[v])
            p &= ~bit
            x |= bit

    expand(0, (1 << n) - 1, 0)
    sets = [tuple(items[i] for i in _bit_indices(mask)) for mask in found]
    sets.sort(key=lambda s: tuple(items.index(m) for m in s))
    return sets


def _bit_indices(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class MirskyCover:
    """Height-leveling cover: as many antichains as the longest chain."""

    levels: tuple[tuple, ...]
    longest_chain: int

    def to_dict(self) -> dict:
        return {"levels": [list(l) for l in self.levels],
                "longest_chain": self.longest_chain}


def minimum_antichain_cover(le: Callable[[Item, Item], bool],
                            collection: Iterable[Item]) -> MirskyCover:
    """Cover a partial order by height levels.

    ``le`` must be a reflexive partial order on the collection; violations
    are rejected with a witness.  Level k collects the items whose longest
    descending chain has length k, so the number of levels equals the
    longest chain length.
    """
    items = list(collection)
    for a in items:
        if not le(a, a):
            raise ValueError(f"relation is not a partial order: not reflexive at {a!r}")
    for a in items:
        for b in items:
            if a != b and le(a, b) and le(b, a):
                raise ValueError(f"relation is not a partial order: "
                                 f"antisymmetry fails on ({a!r}, {b!r})")
    for a in items:
        for b in items:
            for c in items:
                if le(a, b) and le(b, c) and not le(a, c):
                    raise ValueError(f"relation is not a partial order: "
                                     f"transitivity fails on ({a!r}, {b!r}, {c!r})")

    height: dict[Item, int] = {}

    def h(x: Item) -> int:
        if x not in height:
            below = [y for y in items if y != x and le(y, x)]
            height[x] = (1 + max(h(y) for y in below)) if below else 0
        return height[x]

    for x in items:
        h(x)
    top = max(height.values(), default=0)
    levels = tuple(tuple(x for x in items if height[x] == k) for k in range(top + 1))
    return MirskyCover(levels, top + 1)


def brute_force_signatures(g: Granulation) -> dict[Region, tuple[Region, Region]]:
    """Recompute every region's (lower, upper) pair element by element.

    An element is in the lower approximation when some granule containing it
    lies inside the region, and in the upper when some granule containing it
    meets the region.  Pure set logic, no mask shortcuts.
    """
    universe = g.universe
    els = universe.elements
    n = len(els)
    if n > MAX_SIGNATURE_UNIVERSE:
        raise ValueError(f"universe too large for signature enumeration "
                         f"(n={n} > {MAX_SIGNATURE_UNIVERSE})")
    gsets = [frozenset(gr) for gr in g.granules]
    out: dict[Region, tuple[Region, Region]] = {}
    for bits in range(1 << n):
        s = frozenset(els[i] for i in range(n) if bits >> i & 1)
        lower = {e for e in els if any(e in gs and gs <= s for gs in gsets)}
        upper = {e for e in els if any(e in gs and gs & s for gs in gsets)}
        out[universe.region(s)] = (universe.region(lower), universe.region(upper))
    return out


def all_partitions(items: Sequence[str]) -> Iterator[tuple[tuple[str, ...], ...]]:
    """Every partition of the items, in restricted-growth-string order.

    The single-block partition comes first; the all-singletons partition
    comes last.  Deterministic, so "first witness" is well defined.
    """
    n = len(items)
    if n == 0:
        yield ()
        return
    rgs = [0] * n
    while True:
        nblocks = max(rgs) + 1
        blocks: list[list[str]] = [[] for _ in range(nblocks)]
        for i, b in enumerate(rgs):
            blocks[b].append(items[i])
        yield tuple(tuple(b) for b in blocks)
        # successor in lexicographic RGS order
        i = n - 1
        while i > 0:
            prefix_max = max(rgs[:i])
            if rgs[i] <= prefix_max:
                rgs[i] += 1
                for j in range(i + 1, n):
                    rgs[j] = 0
                break
            i -= 1
        else:
            return


@dataclass(frozen=True)
class PartitionWitness:
    """A partition plus one realizing region per requested signature pair."""

    partition: IndiscernibilityRelation
    realizations: tuple[Region, ...]

    def replays(self, pairs: Sequence[tuple[Region, Region]]) -> bool:
        """Recompute each realization's signature and compare exactly."""
        from .core import lower_approx, upper_approx
        g = self.partition.granulation()
        for region, (lo, up) in zip(self.realizations, pairs):
            if lower_approx(region, g) != lo or upper_approx(region, g) != up:
                return False
        return True

    def to_dict(self) -> dict:
        return {
            "partition": [sorted(b) for b in self.partition.blocks],
            "realizations": [{"pair": i, "region": sorted(r)}
                             for i, r in enumerate(self.realizations)],
        }


def inverse_rough_check(pairs: Sequence[tuple[Region, Region]], universe: Universe,
                        mode: str = "exists-partition") -> PartitionWitness | None:
    """Decide whether some partition realizes every (lower, upper) pair.

    Fast necessary filters run first: each pair must be nested, and no
    boundary may be a single element (boundaries are unions of blocks of at
    least two elements).  Then every partition of the universe is tried in
    restricted-growth order; the first that realizes all pairs is returned
    with per-pair realizing regions.  ``None`` means no partition works -
    the search is exhaustive, never sampled.
    """
    if mode != "exists-partition":
        raise ValueError(f"unknown inverse mode {mode!r}")
    n = len(universe)
    if n > MAX_INVERSE_UNIVERSE:
        raise ValueError(f"universe too large for exhaustive partition search "
                         f"(n={n} > {MAX_INVERSE_UNIVERSE})")
    for lo, up in pairs:
        if lo.universe != universe or up.universe != universe:
            raise ValueError("pair regions must live in the given universe")
        if not lo.issubset(up):
            return None
        if (up.bits & ~lo.bits).bit_count() == 1:
            return None

    for blocks in all_partitions(universe.elements):
        masks = [universe.region(b).bits for b in blocks]
        regions = _realize_all(pairs, masks, universe)
        if regions is not None:
            rel = IndiscernibilityRelation.from_sets(universe, blocks)
            return PartitionWitness(rel, tuple(regions))
    return None


def _realize_all(pairs: Sequence[tuple[Region, Region]], masks: list[int],
                 universe: Universe) -> list[Region] | None:
    out = []
    for lo, up in pairs:
        a, b = lo.bits, up.bits
        ok = True
        boundary_blocks = []
        for m in masks:
            if m & a and m & ~a:
                ok = False   # a is not a union of blocks
                break
            if m & b:
                if m & ~b:
                    ok = False   # b is not a union of blocks
                    break
                if not m & a:
                    if m.bit_count() < 2:
                        ok = False   # boundary block too small to stay proper
                        break
                    boundary_blocks.append(m)
        if not ok:
            return None
        bits = a
        for m in boundary_blocks:
            bits |= m & -m   # least element keeps the witness lexicographically least
        out.append(universe.region_from_bits(bits))
    return out
