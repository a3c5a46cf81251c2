"""Order-sensitive counting procedures that carve collections into antichains.

Four procedures are implemented over a finite ordered collection and a
symmetric conflict relation:

* ``hpc_count``   - primitive counting with full history: successor labels
                    within a run of pairwise-unrelated elements, a fresh type
                    whenever history shows a relation.
* ``pca_count``   - first-fit assignment into conflict-free categories with
                    per-category running count labels.
* ``hpca_count``  - builds one greedy category per pass; elements rejected by
                    the first pass receive deferred markers that seed later
                    passes over rotated orders, until the collection is
                    covered or the markers run out.
* ``fhca_count``  - same as hpca on coherent orders; otherwise collects
                    first-pass categories under permuted orders until covered.

Every run is deterministic in (sequence, conflict, strategy, seed) and the
trace records enough to replay each pass rule by rule.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Sequence

DEFAULT_SEED = 1729

Item = Hashable
ConflictFn = Callable[[Item, Item], bool]


@dataclass(frozen=True)
class OrderArrangement:
    """A total order on the counted collection, with its provenance."""

    sequence: tuple
    origin: str = "canonical"

    def __post_init__(self):
        if not isinstance(self.sequence, tuple):
            object.__setattr__(self, "sequence", tuple(self.sequence))
        if len(set(self.sequence)) != len(self.sequence):
            raise ValueError("arrangement contains duplicate items")

    def rotate(self, position: int) -> OrderArrangement:
        """Rotation starting at 1-based ``position`` of this arrangement."""
        if not 1 <= position <= len(self.sequence):
            raise ValueError(f"rotation position {position} out of range")
        seq = self.sequence[position - 1:] + self.sequence[:position - 1]
        return OrderArrangement(seq, f"rotation({position})")

    def permuted(self, indices: Sequence[int], origin: str) -> OrderArrangement:
        seq = tuple(self.sequence[i] for i in indices)
        return OrderArrangement(seq, origin)


def arrangement(items: Iterable[Item]) -> OrderArrangement:
    return OrderArrangement(tuple(items))


@dataclass(frozen=True)
class CountLabel:
    """One counting label: k_j (count), T_j (deferred) or s^r(1_j) (successor)."""

    form: str          # count | deferred | successor
    type_index: int    # j
    count: int = 0     # k, for count labels
    power: int = 0     # r, for successor labels

    def __post_init__(self):
        if self.form not in ("count", "deferred", "successor"):
            raise ValueError(f"unknown label form {self.form!r}")
        if self.type_index < 1:
            raise ValueError("type index must be >= 1")
        if self.form == "count" and self.count < 1:
            raise ValueError("count must be >= 1")
        if self.form == "successor" and self.power < 0:
            raise ValueError("successor power must be >= 0")

    def render(self) -> str:
        if self.form == "count":
            return f"{self.count}_{self.type_index}"
        if self.form == "deferred":
            return f"T_{self.type_index}"
        if self.power == 0:
            return f"1_{self.type_index}"
        if self.power == 1:
            return f"s(1_{self.type_index})"
        return f"s^{self.power}(1_{self.type_index})"

    def to_dict(self) -> dict:
        out = {"form": self.form, "type": self.type_index, "text": self.render()}
        if self.form == "count":
            out["count"] = self.count
        if self.form == "successor":
            out["power"] = self.power
        return out


def count_label(count: int, type_index: int) -> CountLabel:
    return CountLabel("count", type_index, count=count)


def deferred_label(type_index: int) -> CountLabel:
    return CountLabel("deferred", type_index)


def successor_label(power: int, type_index: int) -> CountLabel:
    return CountLabel("successor", type_index, power=power)


@dataclass(frozen=True)
class Category:
    index: int
    members: tuple

    def __contains__(self, item) -> bool:
        return item in self.members


@dataclass(frozen=True)
class PassRecord:
    """Everything one pass did: order scanned, assignments, rejections."""

    number: int
    order: OrderArrangement
    start: Item | None
    assigned: tuple            # (item, CountLabel) in scan order
    rejected: tuple            # items refused by this pass, in scan order
    category_index: int | None  # None when the pass result was discarded
    retained: bool = True

    def to_dict(self) -> dict:
        return {
            "pass": self.number,
            "order": list(self.order.sequence),
            "origin": self.order.origin,
            "start": self.start,
            "assigned": [[item, lab.to_dict()] for item, lab in self.assigned],
            "rejected": list(self.rejected),
            "category": self.category_index,
            "retained": self.retained,
        }


@dataclass
class CountingTrace:
    """Labeled outcome of a counting run."""

    algorithm: str
    orders: list[OrderArrangement]
    labels: dict[Item, list[tuple[int, CountLabel]]]   # item -> [(pass, label)]
    categories: list[Category]
    passes: list[PassRecord] = field(default_factory=list)
    incomplete: bool = False

    @property
    def collection(self) -> tuple:
        return self.orders[0].sequence

    def label_history(self, item: Item) -> list[CountLabel]:
        return [lab for _, lab in self.labels.get(item, [])]

    def rendered_labels(self) -> dict[Item, list[str]]:
        return {x: [lab.render() for lab in self.label_history(x)]
                for x in self.collection}

    def to_dict(self) -> dict:
        return {
            "algorithm": self.algorithm,
            "orders": [{"sequence": list(o.sequence), "origin": o.origin}
                       for o in self.orders],
            "labels": {str(x): [{"pass": p, **lab.to_dict()} for p, lab in
                                self.labels.get(x, [])] for x in self.collection},
            "categories": [{"index": c.index, "members": list(c.members)}
                           for c in self.categories],
            "passes": [p.to_dict() for p in self.passes],
            "incomplete": self.incomplete,
        }

    def render_text(self) -> str:
        lines = [f"algorithm: {self.algorithm}"]
        for x in self.collection:
            hist = ", ".join(f"{lab.render()}@{p}" for p, lab in self.labels.get(x, []))
            lines.append(f"  {x}: {hist}")
        for c in self.categories:
            lines.append(f"  C_{c.index} = {{{', '.join(str(m) for m in c.members)}}}")
        if self.incomplete:
            lines.append("  (incomplete: budget exhausted before coverage)")
        return "\n".join(lines)


@dataclass(frozen=True)
class CategoryVerdict:
    index: int
    members: tuple
    conflict_free: bool
    conflict_witness: tuple | None
    maximal: bool
    maximal_witness: Item | None   # an element that could still join

    def to_dict(self) -> dict:
        return {
            "index": self.index,
            "members": list(self.members),
            "conflict_free": self.conflict_free,
            "conflict_witness": list(self.conflict_witness) if self.conflict_witness else None,
            "maximal": self.maximal,
            "maximal_witness": self.maximal_witness,
        }


@dataclass(frozen=True)
class AntichainDecomposition:
    """Verified view of a run's categories against its conflict relation."""

    categories: tuple[tuple, ...]
    verdicts: tuple[CategoryVerdict, ...]
    coverage: bool
    missing: tuple
    sum_counts: int
    n_items: int
    counts_match: bool | None   # partition check, pca runs only
    coherent: bool | None = None

    @property
    def all_maximal(self) -> bool:
        return all(v.maximal for v in self.verdicts)

    @property
    def all_conflict_free(self) -> bool:
        return all(v.conflict_free for v in self.verdicts)

    def to_dict(self) -> dict:
        return {
            "categories": [list(c) for c in self.categories],
            "verdicts": [v.to_dict() for v in self.verdicts],
            "coverage": self.coverage,
            "missing": list(self.missing),
            "sum_counts": self.sum_counts,
            "n_items": self.n_items,
            "counts_match": self.counts_match,
            "coherent": self.coherent,
        }


def _require_symmetric(items: Sequence[Item], rel: ConflictFn) -> None:
    for i, a in enumerate(items):
        for b in items[i + 1:]:
            if rel(a, b) != rel(b, a):
                raise ValueError(f"relation is not symmetric: witness pair ({a!r}, {b!r})")


def _require_conflict(items: Sequence[Item], conflict: ConflictFn) -> None:
    for a in items:
        if conflict(a, a):
            raise ValueError(f"conflict relation is not irreflexive: witness ({a!r}, {a!r})")
    _require_symmetric(items, conflict)


def _require_items(seq: OrderArrangement) -> list[Item]:
    items = list(seq.sequence)
    if not items:
        raise ValueError("cannot count an empty collection")
    return items


def hpc_count(seq: OrderArrangement, relation: ConflictFn) -> CountingTrace:
    """History-based primitive counting over a symmetric relation.

    The first element opens type 1.  Each next element: related to its
    predecessor -> opens the next type; related to no earlier element ->
    successor of the current type; related to an earlier element but not the
    predecessor -> also opens the next type (history-aware gap rule).
    """
    items = _require_items(seq)
    _require_symmetric(items, relation)
    labels: dict[Item, list[tuple[int, CountLabel]]] = {}
    type_index = 1
    power = 0
    labels[items[0]] = [(1, successor_label(0, 1))]
    for i in range(1, len(items)):
        x = items[i]
        if relation(items[i - 1], x):
            type_index += 1
            power = 0
        elif any(relation(items[k], x) for k in range(i)):
            type_index += 1
            power = 0
        else:
            power += 1
        labels[x] = [(1, successor_label(power, type_index))]
    by_type: dict[int, list[Item]] = {}
    for x in items:
        by_type.setdefault(labels[x][0][1].type_index, []).append(x)
    categories = [Category(j, tuple(by_type[j])) for j in sorted(by_type)]
    rec = PassRecord(1, seq, items[0],
                     tuple((x, labels[x][0][1]) for x in items), (), None)
    return CountingTrace("hpc", [seq], labels, categories, [rec])


def pca_count(seq: OrderArrangement, conflict: ConflictFn) -> CountingTrace:
    """First-fit counting: join the least-indexed conflict-free category.

    An element that conflicts with every open category opens the next one.
    Labels are per-category running counts, so category j ends up labeled
    1_j .. Q_j with no gaps.
    """
    items = _require_items(seq)
    _require_conflict(items, conflict)
    cats: list[list[Item]] = []
    labels: dict[Item, list[tuple[int, CountLabel]]] = {}
    for x in items:
        for idx, members in enumerate(cats, start=1):
            if all(not conflict(x, m) for m in members):
                members.append(x)
                labels[x] = [(1, count_label(len(members), idx))]
                break
        else:
            cats.append([x])
            labels[x] = [(1, count_label(1, len(cats)))]
    categories = [Category(i, tuple(ms)) for i, ms in enumerate(cats, start=1)]
    rec = PassRecord(1, seq, items[0],
                     tuple((x, labels[x][0][1]) for x in items), (), None)
    return CountingTrace("pca", [seq], labels, categories, [rec])


def _greedy_pass(order: Sequence[Item], conflict: ConflictFn,
                 cat_index: int) -> tuple[list[Item], list[tuple[Item, CountLabel]], list[Item]]:
    """Scan the whole order once, growing one conflict-free category."""
    members: list[Item] = []
    assigned: list[tuple[Item, CountLabel]] = []
    rejected: list[Item] = []
    for x in order:
        if all(not conflict(x, m) for m in members):
            members.append(x)
            assigned.append((x, count_label(len(members), cat_index)))
        else:
            rejected.append(x)
    return members, assigned, rejected


def hpca_count(seq: OrderArrangement, conflict: ConflictFn) -> tuple[CountingTrace, AntichainDecomposition]:
    """History-aware counting on antichains with deferred restart markers.

    Pass 1 scans the whole sequence building category 1; every rejected
    element is marked T_j with j its 1-based position.  Each later pass
    consumes the smallest unconsumed marker, rotates the sequence to start
    there, and greedily builds the next category over all elements.  A pass
    whose category is contained in an earlier one is discarded (its marker
    stays consumed).  The run stops when the categories cover the collection
    and none contains another, or when no markers remain.
    """
    items = _require_items(seq)
    _require_conflict(items, conflict)
    n = len(items)
    position = {x: i + 1 for i, x in enumerate(items)}

    members, assigned, rejected = _greedy_pass(items, conflict, 1)
    labels: dict[Item, list[tuple[int, CountLabel]]] = {x: [] for x in items}
    for x, lab in assigned:
        labels[x].append((1, lab))
    markers: dict[Item, int] = {}
    for x in rejected:
        markers[x] = position[x]
        labels[x].append((1, deferred_label(position[x])))
    passes = [PassRecord(1, seq, items[0], tuple(assigned), tuple(rejected), 1)]
    orders = [seq]
    retained: list[Category] = [Category(1, tuple(members))]
    covered = set(members)

    def should_stop() -> bool:
        if len(covered) != n:
            return False
        sets = [set(c.members) for c in retained]
        for i, a in enumerate(sets):
            for j, b in enumerate(sets):
                if i != j and a <= b:
                    return False
        return True

    pass_no = 1
    while not should_stop() and markers:
        start = min(markers, key=markers.get)
        j = markers.pop(start)
        order = seq.rotate(j)
        pass_no += 1
        cat_index = len(retained) + 1
        members, assigned, rejected = _greedy_pass(order.sequence, conflict, cat_index)
        new = set(members)
        discarded = any(new <= set(c.members) for c in retained)
        if discarded:
            passes.append(PassRecord(pass_no, order, start, tuple(assigned),
                                     tuple(rejected), None, retained=False))
        else:
            retained.append(Category(cat_index, tuple(members)))
            covered |= new
            for x, lab in assigned:
                labels[x].append((pass_no, lab))
            passes.append(PassRecord(pass_no, order, start, tuple(assigned),
                                     tuple(rejected), cat_index))
        orders.append(order)

    trace = CountingTrace("hpca", orders, labels, retained, passes)
    decomposition = verify_decomposition(trace, conflict)
    return trace, decomposition


def verify_decomposition(trace: CountingTrace, conflict: ConflictFn) -> AntichainDecomposition:
    """Re-check a trace's categories: conflict-freeness, maximality, coverage.

    All verdicts are recomputed against the full collection; nothing is
    trusted from the run itself.
    """
    items = list(trace.collection)
    verdicts = []
    covered: set[Item] = set()
    total = 0
    for cat in trace.categories:
        members = list(cat.members)
        covered.update(members)
        total += len(members)
        cw = None
        for i, a in enumerate(members):
            for b in members[i + 1:]:
                if conflict(a, b):
                    cw = (a, b)
                    break
            if cw:
                break
        mw = None
        member_set = set(members)
        for x in items:
            if x not in member_set and all(not conflict(x, m) for m in members):
                mw = x
                break
        verdicts.append(CategoryVerdict(cat.index, cat.members,
                                        cw is None, cw, mw is None, mw))
    missing = tuple(x for x in items if x not in covered)
    counts_match = (total == len(items)) if trace.algorithm == "pca" else None
    coverage = not missing
    coherent = None
    if trace.algorithm in ("hpca", "fhca"):
        coherent = coverage and all(v.maximal and v.conflict_free for v in verdicts)
    return AntichainDecomposition(tuple(c.members for c in trace.categories),
                                  tuple(verdicts), coverage, missing, total,
                                  len(items), counts_match, coherent)


def is_hpca_coherent(seq: OrderArrangement, conflict: ConflictFn) -> bool:
    """True when the run covers the collection with maximal antichains."""
    _, decomposition = hpca_count(seq, conflict)
    return bool(decomposition.coherent)


@dataclass(frozen=True)
class CoherentOrderSearch:
    """Result of scanning arrangements for a coherent one."""

    found: OrderArrangement | None
    tried: int
    exhaustive: bool

    def to_dict(self) -> dict:
        return {
            "found": list(self.found.sequence) if self.found else None,
            "tried": self.tried,
            "exhaustive": self.exhaustive,
        }


EXHAUSTIVE_ARRANGEMENT_CAP = 8  # 8! = 40320 arrangements


def find_coherent_order(collection: Iterable[Item], conflict: ConflictFn,
                        budget: int | None = None,
                        seed: int = DEFAULT_SEED) -> CoherentOrderSearch:
    """Search arrangements of the collection for a coherent one.

    Exhaustive over all n! arrangements when n <= 8 and the budget allows;
    otherwise tries seeded random permutations.  A miss under sampling means
    "none found within budget", never nonexistence.
    """
    import itertools

    items = tuple(collection)
    if not items:
        raise ValueError("cannot search arrangements of an empty collection")
    _require_conflict(list(items), conflict)
    n = len(items)
    total = 1
    for i in range(2, n + 1):
        total *= i
    systematic = n <= EXHAUSTIVE_ARRANGEMENT_CAP
    limit = total if systematic else 1000
    if budget is not None:
        limit = min(limit, budget)
    covers_all = systematic and limit == total

    tried = 0
    if systematic:
        for perm in itertools.permutations(items):
            if tried >= limit:
                break
            tried += 1
            arr = OrderArrangement(perm, "canonical" if perm == items else "permutation")
            if is_hpca_coherent(arr, conflict):
                return CoherentOrderSearch(arr, tried, exhaustive=covers_all)
        return CoherentOrderSearch(None, tried, exhaustive=covers_all and tried == total)
    rng = random.Random(seed)
    order = list(items)
    while tried < limit:
        tried += 1
        rng.shuffle(order)
        arr = OrderArrangement(tuple(order), f"permutation(seed={seed},try={tried})")
        if is_hpca_coherent(arr, conflict):
            return CoherentOrderSearch(arr, tried, exhaustive=False)
    return CoherentOrderSearch(None, tried, exhaustive=False)


def rotation_strategy(base: OrderArrangement, covered: set[Item]) -> OrderArrangement | None:
    """Rotation bringing the least-index uncovered element to the front."""
    for i, x in enumerate(base.sequence, start=1):
        if x not in covered:
            return base.rotate(i)
    return None


def fhca_count(seq: OrderArrangement, conflict: ConflictFn,
               strategy: str = "rotation", budget: int | None = None,
               seed: int = DEFAULT_SEED) -> tuple[CountingTrace, list[tuple]]:
    """Full-history counting: permute and re-collect until covered.

    On a coherent order this is exactly the hpca run (same labels and
    categories).  Otherwise first-pass maximal antichains are collected
    under successive permuted orders - by default rotations that bring the
    least-index uncovered element to the front, falling back to seeded
    random permutations - until the collection is covered or the budget is
    exhausted (the trace is then flagged incomplete).
    """
    items = _require_items(seq)
    if budget is None:
        budget = len(items)
    if budget < 1:
        raise ValueError("budget must be >= 1")
    if strategy not in ("rotation", "random"):
        raise ValueError(f"unknown permutation strategy {strategy!r}")

    trace, decomposition = hpca_count(seq, conflict)
    if decomposition.coherent:
        trace.algorithm = "fhca"
        return trace, [c.members for c in trace.categories]
    return fhca_rounds(seq, conflict, strategy=strategy, budget=budget, seed=seed)


def fhca_rounds(seq: OrderArrangement, conflict: ConflictFn,
                strategy: str = "rotation", budget: int | None = None,
                seed: int = DEFAULT_SEED) -> tuple[CountingTrace, list[tuple]]:
    """The permuted-order collection rounds used by fhca past a non-coherent run.

    Each round takes the first-pass maximal antichain of the current order
    and then permutes; the default strategy rotates the least-index uncovered
    element to the front, which covers at least one new element per round.
    """
    items = _require_items(seq)
    _require_conflict(items, conflict)
    n = len(items)
    if budget is None:
        budget = n
    if budget < 1:
        raise ValueError("budget must be >= 1")

    labels: dict[Item, list[tuple[int, CountLabel]]] = {x: [] for x in items}
    passes: list[PassRecord] = []
    orders: list[OrderArrangement] = []
    collected: list[Category] = []
    covered: set[Item] = set()
    rng = random.Random(seed)

    order = seq
    used = 0
    while True:
        idx = len(collected) + 1
        members, assigned, rejected = _greedy_pass(order.sequence, conflict, idx)
        collected.append(Category(idx, tuple(members)))
        covered |= set(members)
        for x, lab in assigned:
            labels[x].append((idx, lab))
        passes.append(PassRecord(idx, order, order.sequence[0], tuple(assigned),
                                 tuple(rejected), idx))
        orders.append(order)
        if covered == set(items):
            incomplete = False
            break
        if used >= budget:
            incomplete = True
            break
        used += 1
        nxt = rotation_strategy(seq, covered) if strategy == "rotation" else None
        if nxt is None:
            perm = list(range(n))
            rng.shuffle(perm)
            nxt = seq.permuted(perm, f"permutation(seed={seed},round={used})")
        order = nxt

    trace = CountingTrace("fhca", orders, labels, collected, passes,
                          incomplete=incomplete)
    return trace, [c.members for c in collected]
