"""Finite universes, regions, information tables and approximation operators.

Regions are immutable bit-vector subsets of a fixed universe.  Granulations
are finite families of nonempty regions (they may overlap and need not cover
the universe); the lower/upper approximation of a region is the union of the
granules contained in it / meeting it.  Partition granulations recover the
classical operators.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Iterable, Iterator


class ParseError(ValueError):
    """Raised when an information table or context file is malformed."""


@dataclass(frozen=True)
class Universe:
    """Ordered finite set of distinct object identifiers.

    Element order is fixed at construction: it is the canonical order used
    by counting procedures and report serialization.
    """

    elements: tuple[str, ...]

    def __post_init__(self):
        if not isinstance(self.elements, tuple):
            object.__setattr__(self, "elements", tuple(self.elements))
        if len(self.elements) == 0:
            raise ValueError("universe must contain at least one element")
        if len(set(self.elements)) != len(self.elements):
            dupes = sorted({e for e in self.elements if self.elements.count(e) > 1})
            raise ValueError(f"duplicate element identifiers: {dupes}")

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[str]:
        return iter(self.elements)

    def index(self, element: str) -> int:
        try:
            return self.elements.index(element)
        except ValueError:
            raise ValueError(f"unknown element {element!r}") from None

    def region(self, members: Iterable[str] = ()) -> Region:
        bits = 0
        for m in members:
            bits |= 1 << self.index(m)
        return Region(self, bits)

    def region_from_bits(self, bits: int) -> Region:
        return Region(self, bits)

    def singleton(self, element: str) -> Region:
        return Region(self, 1 << self.index(element))

    def empty_region(self) -> Region:
        return Region(self, 0)

    def full_region(self) -> Region:
        return Region(self, (1 << len(self.elements)) - 1)

    def all_regions(self) -> Iterator[Region]:
        """All 2^n regions, in canonical (ascending bit-pattern) order."""
        for bits in range(1 << len(self.elements)):
            yield Region(self, bits)


@dataclass(frozen=True, slots=True)
class Region:
    """A subset of a universe, stored as a characteristic bit mask.

    Bit i corresponds to ``universe.elements[i]``.  All set algebra stays
    inside the one universe; mixing universes raises ``ValueError``.
    """

    universe: Universe
    bits: int

    def __post_init__(self):
        if not 0 <= self.bits < (1 << len(self.universe)):
            raise ValueError("region mask out of range for universe")

    def _check(self, other: Region) -> None:
        if self.universe != other.universe:
            raise ValueError("regions belong to different universes")

    def __or__(self, other: Region) -> Region:
        self._check(other)
        return Region(self.universe, self.bits | other.bits)

    def __and__(self, other: Region) -> Region:
        self._check(other)
        return Region(self.universe, self.bits & other.bits)

    def __sub__(self, other: Region) -> Region:
        self._check(other)
        return Region(self.universe, self.bits & ~other.bits)

    def complement(self) -> Region:
        full = (1 << len(self.universe)) - 1
        return Region(self.universe, full & ~self.bits)

    def issubset(self, other: Region) -> bool:
        self._check(other)
        return self.bits & ~other.bits == 0

    def __le__(self, other: Region) -> bool:
        return self.issubset(other)

    def __lt__(self, other: Region) -> bool:
        return self.issubset(other) and self.bits != other.bits

    def __contains__(self, element: str) -> bool:
        return bool(self.bits >> self.universe.index(element) & 1)

    def __iter__(self) -> Iterator[str]:
        for i, e in enumerate(self.universe.elements):
            if self.bits >> i & 1:
                yield e

    def __len__(self) -> int:
        return self.bits.bit_count()

    def members(self) -> tuple[str, ...]:
        return tuple(self)

    def is_empty(self) -> bool:
        return self.bits == 0

    def __repr__(self) -> str:
        return "Region{%s}" % ", ".join(self)


@dataclass(frozen=True)
class Granulation:
    """A finite family of nonempty granules over one universe.

    Granules may overlap and need not cover the universe; duplicates are
    rejected.  A partition is the special case of disjoint covering granules.
    """

    universe: Universe
    granules: tuple[Region, ...]

    def __post_init__(self):
        if not isinstance(self.granules, tuple):
            object.__setattr__(self, "granules", tuple(self.granules))
        if not self.granules:
            raise ValueError("granulation must contain at least one granule")
        seen = set()
        for g in self.granules:
            if g.universe != self.universe:
                raise ValueError("granule universe differs from granulation universe")
            if g.bits == 0:
                raise ValueError("granules must be nonempty")
            if g.bits in seen:
                raise ValueError(f"duplicate granule {g!r}")
            seen.add(g.bits)

    @classmethod
    def from_sets(cls, universe: Universe, sets: Iterable[Iterable[str]]) -> Granulation:
        return cls(universe, tuple(universe.region(s) for s in sets))

    @classmethod
    def from_partition(cls, partition: IndiscernibilityRelation) -> Granulation:
        return cls(partition.universe, partition.blocks)

    def masks(self) -> tuple[int, ...]:
        return tuple(g.bits for g in self.granules)

    def covers_universe(self) -> bool:
        bits = 0
        for g in self.granules:
            bits |= g.bits
        return bits == (1 << len(self.universe)) - 1

    def is_partition(self) -> bool:
        total = 0
        for g in self.granules:
            if total & g.bits:
                return False
            total |= g.bits
        return total == (1 << len(self.universe)) - 1


@dataclass(frozen=True)
class IndiscernibilityRelation:
    """An equivalence relation given by its partition into blocks."""

    universe: Universe
    blocks: tuple[Region, ...]

    def __post_init__(self):
        if not isinstance(self.blocks, tuple):
            object.__setattr__(self, "blocks", tuple(self.blocks))
        total = 0
        for b in self.blocks:
            if b.universe != self.universe:
                raise ValueError("block universe differs from relation universe")
            if b.bits == 0:
                raise ValueError("partition blocks must be nonempty")
            if total & b.bits:
                raise ValueError("partition blocks must be pairwise disjoint")
            total |= b.bits
        if total != (1 << len(self.universe)) - 1:
            raise ValueError("partition blocks must cover the universe")

    @classmethod
    def from_sets(cls, universe: Universe, sets: Iterable[Iterable[str]]) -> IndiscernibilityRelation:
        return cls(universe, tuple(universe.region(s) for s in sets))

    def block_of(self, element: str) -> Region:
        bit = 1 << self.universe.index(element)
        for b in self.blocks:
            if b.bits & bit:
                return b
        raise AssertionError("partition does not cover element")  # unreachable

    def granulation(self) -> Granulation:
        return Granulation.from_partition(self)


@dataclass(frozen=True, eq=False)
class InformationTable:
    """Total attribute-value table over a universe of objects.

    Values are opaque tokens compared for equality only.
    """

    objects: Universe
    attributes: tuple[str, ...]
    values: dict[str, dict[str, str]] = field(repr=False)  # attribute -> object -> token

    def value(self, attribute: str, obj: str) -> str:
        try:
            col = self.values[attribute]
        except KeyError:
            raise ValueError(f"unknown attribute {attribute!r}") from None
        try:
            return col[obj]
        except KeyError:
            raise ValueError(f"unknown object {obj!r}") from None


def parse_information_table(source: str | io.TextIOBase, format: str = "csv") -> InformationTable:
    """Parse a table from CSV (header ``id,attr,...``) or the JSON row format.

    JSON form: ``{"attributes": [...], "objects": [["id", v1, ...], ...]}``.
    Raises :class:`ParseError` naming the offending row/column on duplicate
    ids, ragged rows, or missing values.
    """
    text = source.read() if hasattr(source, "read") else source
    if format == "csv":
        rows = list(csv.reader(io.StringIO(text)))
        rows = [r for r in rows if r]  # ignore blank lines
        if not rows:
            raise ParseError("empty input: no header row")
        header = rows[0]
        if not header or header[0] != "id":
            raise ParseError("first column of the header must be 'id'")
        attributes = tuple(header[1:])
        body = rows[1:]
    elif format == "json":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from None
        if not isinstance(doc, dict) or "attributes" not in doc or "objects" not in doc:
            raise ParseError("JSON table must have 'attributes' and 'objects' keys")
        attributes = tuple(str(a) for a in doc["attributes"])
        body = [[str(v) for v in row] for row in doc["objects"]]
    else:
        raise ParseError(f"unknown table format {format!r}")

    if not body:
        raise ParseError("no objects: table body is empty")

    ids: list[str] = []
    values: dict[str, dict[str, str]] = {a: {} for a in attributes}
    width = 1 + len(attributes)
    for n, row in enumerate(body, start=2 if format == "csv" else 1):
        if len(row) < width:
            missing = attributes[len(row) - 1] if row else attributes[0]
            raise ParseError(f"row {n}: missing value for column {missing!r}")
        if len(row) > width:
            raise ParseError(f"row {n}: expected {width} values, got {len(row)}")
        oid = row[0]
        if oid in ids:
            raise ParseError(f"row {n}: duplicate object id {oid!r}")
        ids.append(oid)
        for a, v in zip(attributes, row[1:]):
            values[a][oid] = v
    return InformationTable(Universe(tuple(ids)), attributes, values)


def parse_context(source: str | io.TextIOBase) -> tuple[Universe, Granulation]:
    """Parse a JSON context: ``{"universe": [...], "granules": [[...], ...]}``.

    A ``"partition"`` key may be used instead of ``"granules"``; it is
    validated as a partition before being taken as the granulation.
    """
    text = source.read() if hasattr(source, "read") else source
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict) or "universe" not in doc:
        raise ParseError("context must be an object with a 'universe' key")
    universe = Universe(tuple(str(e) for e in doc["universe"]))
    if ("granules" in doc) == ("partition" in doc):
        raise ParseError("context needs exactly one of 'granules' or 'partition'")
    try:
        if "granules" in doc:
            gran = Granulation.from_sets(universe, doc["granules"])
        else:
            gran = IndiscernibilityRelation.from_sets(universe, doc["partition"]).granulation()
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    return universe, gran


def indiscernibility_partition(table: InformationTable, attrs: Iterable[str]) -> IndiscernibilityRelation:
    """Group objects that agree on every attribute in ``attrs``.

    Blocks are ordered by first occurrence of a member in the universe order.
    """
    attrs = tuple(attrs)
    if not attrs:
        raise ValueError("attribute subset must be nonempty")
    for a in attrs:
        if a not in table.attributes:
            raise ValueError(f"unknown attribute {a!r}")
    groups: dict[tuple[str, ...], list[str]] = {}
    for obj in table.objects:
        key = tuple(table.values[a][obj] for a in attrs)
        groups.setdefault(key, []).append(obj)
    blocks = tuple(table.objects.region(g) for g in groups.values())
    return IndiscernibilityRelation(table.objects, blocks)


def lower_bits(bits: int, masks: Iterable[int]) -> int:
    """Union of granule masks contained in ``bits``."""
    out = 0
    for m in masks:
        if m & ~bits == 0:
            out |= m
    return out


def upper_bits(bits: int, masks: Iterable[int]) -> int:
    """Union of granule masks meeting ``bits``."""
    out = 0
    for m in masks:
        if m & bits:
            out |= m
    return out


def lower_approx(a: Region, g: Granulation) -> Region:
    """Union of all granules contained in ``a``."""
    if a.universe != g.universe:
        raise ValueError("region and granulation universes differ")
    return Region(a.universe, lower_bits(a.bits, g.masks()))


def upper_approx(a: Region, g: Granulation) -> Region:
    """Union of all granules meeting ``a``."""
    if a.universe != g.universe:
        raise ValueError("region and granulation universes differ")
    return Region(a.universe, upper_bits(a.bits, g.masks()))


def rough_inclusion(a: Region, b: Region, g: Granulation) -> bool:
    """True when both the lower and upper approximations are nested."""
    return (lower_approx(a, g).issubset(lower_approx(b, g))
            and upper_approx(a, g).issubset(upper_approx(b, g)))


def rough_equality(a: Region, b: Region, g: Granulation) -> bool:
    """True when the two regions have identical approximation signatures."""
    return (lower_approx(a, g) == lower_approx(b, g)
            and upper_approx(a, g) == upper_approx(b, g))
