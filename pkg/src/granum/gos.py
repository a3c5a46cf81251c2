"""Granular operator spaces: axiom audits, rough quotients, representations.

A space bundles a universe, a granulation, lower/upper operators (derived
from the granulation by union, or supplied explicitly) and a parthood
variant.  The audits check the defining axioms empirically and report
witnesses; nothing is assumed that was not scanned.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping

from . import parthood as ph
from ._parallel import pmap
from .core import Granulation, Region, Universe, lower_bits, upper_bits

DEFAULT_SEED = 1729
EXHAUSTIVE_UNIVERSE_CAP = 14  # 16384 regions; beyond this audits sample
QUOTIENT_UNIVERSE_CAP = 14

OperatorLike = Callable[[Region], Region] | Mapping[Region, Region]


class GranularOperatorSpace:
    """Universe + granulation + lower/upper operators + parthood predicate."""

    def __init__(self, universe: Universe, granulation: Granulation,
                 lower: OperatorLike | None = None,
                 upper: OperatorLike | None = None,
                 parthood: ph.ParthoodVariant = ph.ROUGH_INCLUSION):
        if granulation.universe != universe:
            raise ValueError("granulation universe differs from space universe")
        if (lower is None) != (upper is None):
            raise ValueError("explicit mode needs both lower and upper operators")
        self.universe = universe
        self.granulation = granulation
        self.parthood = parthood
        self._masks = granulation.masks()
        self._lower_op = self._wrap(lower)
        self._upper_op = self._wrap(upper)
        self._cache: dict[int, tuple[int, int]] = {}

    @classmethod
    def from_sets(cls, elements: Iterable[str], granules: Iterable[Iterable[str]],
                  parthood: ph.ParthoodVariant = ph.ROUGH_INCLUSION) -> GranularOperatorSpace:
        u = Universe(tuple(elements))
        return cls(u, Granulation.from_sets(u, granules), parthood=parthood)

    def _wrap(self, op: OperatorLike | None) -> Callable[[Region], Region] | None:
        if op is None:
            return None
        if callable(op):
            return op
        table = dict(op)

        def lookup(a: Region) -> Region:
            try:
                return table[a]
            except KeyError:
                raise ValueError(f"operator table has no entry for {a!r}") from None
        return lookup

    @property
    def explicit(self) -> bool:
        return self._lower_op is not None

    def signature_bits(self, bits: int) -> tuple[int, int]:
        """(lower, upper) masks for a region given by its mask; memoized."""
        got = self._cache.get(bits)
        if got is not None:
            return got
        if self._lower_op is None:
            sig = (lower_bits(bits, self._masks), upper_bits(bits, self._masks))
        else:
            a = Region(self.universe, bits)
            lo, up = self._lower_op(a), self._upper_op(a)
            if lo.universe != self.universe or up.universe != self.universe:
                raise ValueError("explicit operator returned a foreign region")
            sig = (lo.bits, up.bits)
        self._cache[bits] = sig
        return sig

    def lower(self, a: Region) -> Region:
        return Region(self.universe, self.signature_bits(a.bits)[0])

    def upper(self, a: Region) -> Region:
        return Region(self.universe, self.signature_bits(a.bits)[1])

    def signature(self, a: Region) -> tuple[Region, Region]:
        lo, up = self.signature_bits(a.bits)
        return Region(self.universe, lo), Region(self.universe, up)

    def is_definite(self, a: Region) -> bool:
        return self.signature_bits(a.bits) == (a.bits, a.bits)

    def parthood_holds(self, a: Region, b: Region) -> bool:
        return ph.holds(self.parthood, a, b, self)

    def containment_violations(self, cap: int = 10) -> list[Region]:
        """Regions where upper does not contain lower (checked, not assumed)."""
        bad = []
        for a in self.universe.all_regions():
            lo, up = self.signature_bits(a.bits)
            if lo & ~up:
                bad.append(a)
                if len(bad) >= cap:
                    break
        return bad


@dataclass(frozen=True)
class AxiomReport:
    """Outcome of one axiom audit, with witnesses for every failure found."""

    axiom: str
    passed: bool
    mode: str                 # exhaustive | sampled
    checked: int
    witnesses: tuple = ()
    details: tuple = ()
    seed: int | None = None

    def to_dict(self) -> dict:
        out = {
            "axiom": self.axiom,
            "passed": self.passed,
            "mode": self.mode,
            "checked": self.checked,
            "witnesses": [_jsonify(w) for w in self.witnesses],
        }
        if self.details:
            out["details"] = [_jsonify(d) for d in self.details]
        if self.seed is not None:
            out["seed"] = self.seed
        return out


def _jsonify(x):
    if isinstance(x, Region):
        return sorted(x)
    if isinstance(x, dict):
        return {k: _jsonify(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonify(v) for v in x]
    return x


def _region_basis(gos: GranularOperatorSpace, cap: int, sample: int,
                  seed: int) -> tuple[list[int], str]:
    n = len(gos.universe)
    if n <= cap:
        return list(range(1 << n)), "exhaustive"
    rng = random.Random(seed)
    return sorted(rng.randrange(1 << n) for _ in range(sample)), "sampled"


def audit_weak_representability(gos: GranularOperatorSpace, cap: int = EXHAUSTIVE_UNIVERSE_CAP,
                                sample: int = 2048, seed: int = DEFAULT_SEED,
                                witness_cap: int = 10, workers: int = 1) -> AxiomReport:
    """Check that every region's lower and upper map to unions of granules."""
    basis, mode = _region_basis(gos, cap, sample, seed)
    masks = gos.granulation.masks()

    def probe(bits: int):
        lo, up = gos.signature_bits(bits)
        bad = []
        if lower_bits(lo, masks) != lo:
            bad.append(("lower", bits, lo))
        if lower_bits(up, masks) != up:
            bad.append(("upper", bits, up))
        return bad

    u = gos.universe
    witnesses = []
    failures = 0
    for found in pmap(probe, basis, workers):
        failures += len(found)
        for side, bits, value in found:
            if len(witnesses) < witness_cap:
                witnesses.append({"region": u.region_from_bits(bits), "side": side,
                                  "value": u.region_from_bits(value)})
    return AxiomReport("weak-representability", failures == 0, mode,
                       len(basis), tuple(witnesses),
                       seed=seed if mode == "sampled" else None)


def audit_lower_stability(gos: GranularOperatorSpace, cap: int = EXHAUSTIVE_UNIVERSE_CAP,
                          sample: int = 2048, seed: int = DEFAULT_SEED,
                          witness_cap: int = 10, workers: int = 1) -> AxiomReport:
    """For every granule y and region x: parthood y x implies parthood y x^lower."""
    basis, mode = _region_basis(gos, cap, sample, seed)
    u = gos.universe

    def probe(bits: int):
        x = u.region_from_bits(bits)
        xl = gos.lower(x)
        bad = []
        for y in gos.granulation.granules:
            if gos.parthood_holds(y, x) and not gos.parthood_holds(y, xl):
                bad.append((y, x))
        return bad

    witnesses = []
    failures = 0
    for found in pmap(probe, basis, workers):
        failures += len(found)
        for y, x in found:
            if len(witnesses) < witness_cap:
                witnesses.append({"granule": y, "region": x})
    return AxiomReport("lower-stability", failures == 0, mode,
                       len(basis) * len(gos.granulation.granules), tuple(witnesses),
                       seed=seed if mode == "sampled" else None)


def audit_full_underlap(gos: GranularOperatorSpace, cap: int = EXHAUSTIVE_UNIVERSE_CAP,
                        sample: int = 2048, seed: int = DEFAULT_SEED,
                        workers: int = 1) -> AxiomReport:
    """Search, per granule pair, for a definite region properly above both."""
    basis, mode = _region_basis(gos, cap, sample, seed)
    u = gos.universe
    granules = gos.granulation.granules
    pairs = [(granules[i], granules[j])
             for i in range(len(granules)) for j in range(i, len(granules))]

    def probe(pair):
        x, y = pair
        for bits in basis:
            z = u.region_from_bits(bits)
            if gos.signature_bits(bits) != (bits, bits):
                continue
            if ph.proper_part(gos.parthood, x, z, gos) and ph.proper_part(gos.parthood, y, z, gos):
                return z
        return None

    found = pmap(probe, pairs, workers)
    details = tuple({"pair": [a, b], "witness": w} for (a, b), w in zip(pairs, found))
    return AxiomReport("full-underlap", all(w is not None for w in found), mode,
                       len(pairs) * len(basis), (),
                       details=details, seed=seed if mode == "sampled" else None)


@dataclass(frozen=True)
class RoughClass:
    """A maximal set of regions sharing one (lower, upper) signature."""

    members: tuple[Region, ...]
    lower: Region
    upper: Region
    crisp: bool    # the signature is (A, A) for a definite member A
    stable: bool   # signature unchanged when the operators are repeated

    def representative(self) -> Region:
        return self.members[0]


@dataclass(frozen=True)
class RoughQuotient:
    """Signature classes of all regions, in canonical order of first member."""

    space: GranularOperatorSpace
    classes: tuple[RoughClass, ...]
    notion: str

    def class_of(self, a: Region) -> RoughClass:
        sig = self.space.signature(a)
        for c in self.classes:
            if (c.lower, c.upper) == sig:
                return c
        raise KeyError(f"no class with signature of {a!r}")


def rough_objects(gos: GranularOperatorSpace, notion: str = "maximal-consistent") -> RoughQuotient:
    """Partition all regions into rough-object classes by signature.

    ``maximal-consistent`` keeps every class; ``definite-only`` keeps classes
    whose signature is stable under repeated application of the operators.
    """
    if notion not in ("maximal-consistent", "definite-only"):
        raise ValueError(f"unknown rough-object notion {notion!r}")
    n = len(gos.universe)
    if n > QUOTIENT_UNIVERSE_CAP:
        raise ValueError(f"universe too large for quotient enumeration (n={n} > {QUOTIENT_UNIVERSE_CAP})")
    grouped: dict[tuple[int, int], list[Region]] = {}
    for a in gos.universe.all_regions():
        grouped.setdefault(gos.signature_bits(a.bits), []).append(a)
    classes = []
    for (lo, up), members in grouped.items():
        lower = gos.universe.region_from_bits(lo)
        upper = gos.universe.region_from_bits(up)
        crisp = lo == up and any(m.bits == lo for m in members)
        stable = (gos.signature_bits(lo)[0] == lo and gos.signature_bits(up)[1] == up)
        classes.append(RoughClass(tuple(members), lower, upper, crisp, stable))
    classes.sort(key=lambda c: c.members[0].bits)
    if notion == "definite-only":
        classes = [c for c in classes if c.stable]
    return RoughQuotient(gos, tuple(classes), notion)


@dataclass(frozen=True)
class BasicRoughOrder:
    """The parthood-induced relation between rough-object classes."""

    quotient: RoughQuotient
    matrix: tuple[tuple[bool, ...], ...]

    def holds(self, i: int, j: int) -> bool:
        return self.matrix[i][j]

    def reflexive_failures(self) -> list[int]:
        return [i for i in range(len(self.matrix)) if not self.matrix[i][i]]

    def transitive_failures(self) -> list[tuple[int, int, int]]:
        m = self.matrix
        n = len(m)
        return [(i, j, k) for i in range(n) for j in range(n) if m[i][j]
                for k in range(n) if m[j][k] and not m[i][k]]

    def antisymmetric_failures(self) -> list[tuple[int, int]]:
        m = self.matrix
        n = len(m)
        return [(i, j) for i in range(n) for j in range(i + 1, n) if m[i][j] and m[j][i]]

    def bottoms(self) -> list[int]:
        n = len(self.matrix)
        return [i for i in range(n) if all(self.matrix[i][j] for j in range(n))]

    def tops(self) -> list[int]:
        n = len(self.matrix)
        return [j for j in range(n) if all(self.matrix[i][j] for i in range(n))]

    def is_bounded(self) -> bool:
        return bool(self.bottoms()) and bool(self.tops())


def basic_rough_order(q: RoughQuotient) -> BasicRoughOrder:
    """Quantify the space's parthood over class members to order the quotient.

    Signature-based parthoods are decided on one representative per class;
    other variants quantify over every member pair.
    """
    gos = q.space
    v = gos.parthood
    classes = q.classes

    def related(alpha: RoughClass, beta: RoughClass) -> bool:
        if v.signature_based:
            return ph.holds(v, alpha.representative(), beta.representative(), gos)
        return all(ph.holds(v, a, b, gos) for a in alpha.members for b in beta.members)

    matrix = tuple(tuple(related(a, b) for b in classes) for a in classes)
    return BasicRoughOrder(q, matrix)


@dataclass(frozen=True)
class RoughRepresentation:
    """Interval representation of rough classes by pairs of definite regions."""

    crisp: tuple[Region, ...]
    rough: tuple[RoughClass, ...]
    phi: tuple[tuple[RoughClass, tuple[Region, Region]], ...]
    image: tuple[tuple[Region, Region], ...]
    unrepresentable: tuple[RoughClass, ...]
    n_classes: int
    n_crisp: int

    def to_dict(self) -> dict:
        return {
            "counts": {"classes": self.n_classes, "crisp": self.n_crisp,
                       "rough": self.n_classes - self.n_crisp},
            "crisp": [_jsonify(c) for c in self.crisp],
            "pairs": [{"lower": _jsonify(a), "upper": _jsonify(b)} for a, b in self.image],
            "unrepresentable": [_jsonify(c.representative()) for c in self.unrepresentable],
        }


def interval_representation(q: RoughQuotient) -> RoughRepresentation:
    """Map each non-crisp class to its (lower, upper) pair of definite regions.

    Classes whose signature is not a strictly nested pair of definite regions
    are listed as unrepresentable rather than forced.
    """
    gos = q.space
    crisp = tuple(c.lower for c in q.classes if c.crisp)
    rough = tuple(c for c in q.classes if not c.crisp)
    phi = []
    unrep = []
    image = []
    for c in rough:
        nested = c.lower.bits != c.upper.bits and c.lower.issubset(c.upper)
        if nested and gos.is_definite(c.lower) and gos.is_definite(c.upper):
            pair = (c.lower, c.upper)
            phi.append((c, pair))
            if pair not in image:
                image.append(pair)
        else:
            unrep.append(c)
    return RoughRepresentation(crisp, rough, tuple(phi), tuple(image), tuple(unrep),
                               n_classes=len(q.classes), n_crisp=len(crisp))


@dataclass(frozen=True)
class KnowledgeValidity:
    """Stability equations that must hold for approximations to read as knowledge."""

    region: Region
    equations: tuple[dict, ...]

    @property
    def all_hold(self) -> bool:
        return all(e["holds"] for e in self.equations)

    def to_dict(self) -> dict:
        return {
            "region": _jsonify(self.region),
            "equations": [_jsonify(e) for e in self.equations],
            "all_hold": self.all_hold,
        }


def knowledge_validity_check(a: Region, gos: GranularOperatorSpace) -> KnowledgeValidity:
    """Evaluate lower/upper stability of one region: ll=l, lu=l and uu=u."""
    lo, up = gos.signature(a)
    ll = gos.lower(lo)
    lu = gos.upper(lo)
    uu = gos.upper(up)
    eqs = (
        {"name": "lower-idempotent", "holds": ll == lo, "lhs": ll, "rhs": lo},
        {"name": "lower-upper-stable", "holds": lu == lo, "lhs": lu, "rhs": lo},
        {"name": "upper-idempotent", "holds": uu == up, "lhs": uu, "rhs": up},
    )
    return KnowledgeValidity(a, eqs)
