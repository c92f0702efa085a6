"""Closed-form computation on finitely presentable infinite spaces.

Two base spaces are supported: the natural numbers under the Scott topology
of the usual chain order (closed sets: the empty set, the principal down
sets, and the whole carrier) and the naturals under the cofinite topology
(closed sets: the finite sets and the whole carrier).  Reflections of these
spaces land in two further variants, the chain with one new top point and
the cofinite space with one generic point adjoined, so the variant set is
closed under reflection.  Anything outside this closed world raises
UnsupportedSpaceError rather than approximating.

Family descriptors record one bit beyond the ever-present point closures:
whether the whole carrier belongs to the family.  That is exact for every
family handled here:

* chain: the carrier is the closure of the unbounded directed set of all
  naturals, so it lies in D_c and everything above it in the sandwich
  S_c <= D_c <= RD <= WF <= Irr_c; it is not a point closure (no top).
* cofinite: the specialization order is discrete, so directed sets are
  singletons and D_c collapses to the point closures; the space is a
  d-space for the same reason, so its d-family also collapses.  The carrier
  is minimal among closed sets meeting every member of the filtered family
  of cofinite subsets (all of which are compact saturated), hence a Rudin
  set, hence in the well-filtered family and irreducible.

Not modelled: the Smyth power space of the cofinite space (its compact
saturated sets are all nonempty subsets, which has no finite presentation
here), so the known failure of the d-space property for that power space is
documentation only, never asserted.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator, Optional, Union

from .caps import Caps, default_caps
from .core_space import FiniteSpace, is_homeomorphic
from .errors import UnsupportedSpaceError, ValidationError
from .families import CategoryTag, irreducible_closed, point_closures
from .hyperspaces import ClosedFamily

GENERIC_POINT = "⊛"  # the adjoined generic point is always labelled so
OMEGA_POINT = "ω"


class SymbolicVariant(Enum):
    OMEGA_CHAIN = "omega_chain"
    OMEGA_PLUS_ONE = "omega_plus_one"
    COFINITE = "cofinite"
    COFINITE_PLUS_TOP = "cofinite_plus_top"
    FINITE = "finite"


CHAIN_VARIANTS = (SymbolicVariant.OMEGA_CHAIN, SymbolicVariant.OMEGA_PLUS_ONE)
COFINITE_VARIANTS = (SymbolicVariant.COFINITE, SymbolicVariant.COFINITE_PLUS_TOP)


@dataclass(frozen=True)
class SymbolicSpace:
    variant: SymbolicVariant
    finite: Optional[FiniteSpace] = None
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if self.variant is SymbolicVariant.FINITE:
            if self.finite is None:
                raise ValidationError("finite-embedded symbolic space needs a space")
        elif self.finite is not None:
            raise ValidationError("only the finite variant carries a finite space")

    @property
    def adjoined_point(self) -> Optional[str]:
        """Label of the point whose closure is the whole carrier, if any."""
        if self.variant is SymbolicVariant.OMEGA_PLUS_ONE:
            return OMEGA_POINT
        if self.variant is SymbolicVariant.COFINITE_PLUS_TOP:
            return GENERIC_POINT
        return None


OMEGA_CHAIN = SymbolicSpace(SymbolicVariant.OMEGA_CHAIN, name="omega_chain")
COFINITE = SymbolicSpace(SymbolicVariant.COFINITE, name="cofinite")
OMEGA_PLUS_ONE = SymbolicSpace(SymbolicVariant.OMEGA_PLUS_ONE, name="omega_plus_one")
COFINITE_PLUS_TOP = SymbolicSpace(SymbolicVariant.COFINITE_PLUS_TOP,
                                  name="cofinite_plus_top")


def sym_space_iso(a: SymbolicSpace, b: SymbolicSpace) -> bool:
    if a.variant is not b.variant:
        return False
    if a.variant is SymbolicVariant.FINITE:
        return is_homeomorphic(a.finite, b.finite)
    return True


# ---------------------------------------------------------------------------
# closed and open set descriptors


@dataclass(frozen=True)
class SymbolicClosed:
    """Closed-set descriptor: empty, a principal down set (chain variants),
    a finite set of naturals (cofinite variants), or the whole carrier."""

    kind: str  # "empty" | "down" | "finite_set" | "all"
    n: Optional[int] = None
    elems: Optional[frozenset[int]] = None

    def __post_init__(self):
        if self.kind not in ("empty", "down", "finite_set", "all"):
            raise ValidationError(f"unknown closed descriptor kind {self.kind!r}")
        if self.kind == "down" and (self.n is None or self.n < 0):
            raise ValidationError("down descriptor needs a natural number")
        if self.kind == "finite_set":
            if self.elems is None or not self.elems:
                raise ValidationError("finite-set descriptor needs a nonempty finite set")


def closed_empty() -> SymbolicClosed:
    return SymbolicClosed("empty")


def closed_down(n: int) -> SymbolicClosed:
    return SymbolicClosed("down", n=n)


def closed_finite(elems) -> SymbolicClosed:
    return SymbolicClosed("finite_set", elems=frozenset(elems))


def closed_all() -> SymbolicClosed:
    return SymbolicClosed("all")


@dataclass(frozen=True)
class SymbolicOpen:
    """Open-set descriptor: empty, an upper set starting at n (chain), or a
    cofinite set avoiding a finite exclusion (cofinite variants).  The whole
    carrier is up(0) respectively the cofinite set with empty exclusion."""

    kind: str  # "empty" | "up" | "cofinite"
    n: Optional[int] = None
    excluded: Optional[frozenset[int]] = None

    def __post_init__(self):
        if self.kind not in ("empty", "up", "cofinite"):
            raise ValidationError(f"unknown open descriptor kind {self.kind!r}")
        if self.kind == "up" and (self.n is None or self.n < 0):
            raise ValidationError("up descriptor needs a natural number")
        if self.kind == "cofinite" and self.excluded is None:
            raise ValidationError("cofinite descriptor needs an exclusion set")


def open_empty() -> SymbolicOpen:
    return SymbolicOpen("empty")


def open_up(n: int) -> SymbolicOpen:
    return SymbolicOpen("up", n=n)


def open_cofinite(excluded=()) -> SymbolicOpen:
    return SymbolicOpen("cofinite", excluded=frozenset(excluded))


def _check_chain(space: SymbolicSpace) -> None:
    if space.variant not in CHAIN_VARIANTS:
        raise UnsupportedSpaceError("descriptor belongs to the chain variants")


def _check_cofinite(space: SymbolicSpace) -> None:
    if space.variant not in COFINITE_VARIANTS:
        raise UnsupportedSpaceError("descriptor belongs to the cofinite variants")


def open_complement(space: SymbolicSpace, c: SymbolicClosed) -> SymbolicOpen:
    if space.variant in CHAIN_VARIANTS:
        if c.kind == "empty":
            return open_up(0)
        if c.kind == "down":
            return open_up(c.n + 1)
        if c.kind == "all":
            return open_empty()
        raise UnsupportedSpaceError("finite-set descriptors have no chain complement")
    if space.variant in COFINITE_VARIANTS:
        if c.kind == "empty":
            return open_cofinite()
        if c.kind == "finite_set":
            return open_cofinite(c.elems)
        if c.kind == "all":
            return open_empty()
        raise UnsupportedSpaceError("down descriptors have no cofinite complement")
    raise UnsupportedSpaceError("no symbolic complement for this variant")


def open_contains(space: SymbolicSpace, o: SymbolicOpen, point: Union[int, str]) -> bool:
    """Membership of a natural number or the adjoined point in an open."""
    if o.kind == "empty":
        return False
    adjoined = space.adjoined_point
    if isinstance(point, str):
        if point != adjoined:
            raise ValidationError(f"point {point!r} is not in the carrier")
        return True  # any nonempty open contains the adjoined top point
    if space.variant in CHAIN_VARIANTS:
        if o.kind != "up":
            raise UnsupportedSpaceError("chain opens are up sets")
        return point >= o.n
    if o.kind != "cofinite":
        raise UnsupportedSpaceError("cofinite opens are cofinite sets")
    return point not in o.excluded


def closed_meets_open(space: SymbolicSpace, c: SymbolicClosed, o: SymbolicOpen) -> bool:
    if c.kind == "empty" or o.kind == "empty":
        return False
    if space.variant in CHAIN_VARIANTS:
        if c.kind == "all":
            return True
        return c.n >= o.n
    if c.kind == "all":
        return True  # a cofinite set always meets an infinite carrier
    return bool(c.elems - o.excluded)


def sym_open_subset(space: SymbolicSpace, a: SymbolicOpen, b: SymbolicOpen) -> bool:
    if a.kind == "empty":
        return True
    if b.kind == "empty":
        return False
    if space.variant in CHAIN_VARIANTS:
        return a.n >= b.n
    return b.excluded <= a.excluded


def closed_generic_point(space: SymbolicSpace, c: SymbolicClosed) -> Optional[Union[int, str]]:
    """The point whose closure is `c`, when one exists."""
    if c.kind == "down":
        return c.n
    if c.kind == "finite_set" and len(c.elems) == 1:
        return next(iter(c.elems))
    if c.kind == "all":
        return space.adjoined_point
    return None


# ---------------------------------------------------------------------------
# families


@dataclass(frozen=True)
class SymbolicFamily:
    """A family of closed sets containing every point closure, plus possibly
    the whole carrier.  `status` is always exact for the supported spaces."""

    space: SymbolicSpace
    kind: str
    includes_all: bool
    status: str = "exact"

    def contains(self, c: SymbolicClosed) -> bool:
        if c.kind == "empty":
            return False
        if c.kind == "all":
            return self.includes_all or self.space.adjoined_point is not None
        if closed_generic_point(self.space, c) is not None:
            return True
        return False

    def members_are_point_closures(self) -> bool:
        """True iff every member is the closure of a point."""
        if not self.includes_all:
            return True
        return self.space.adjoined_point is not None

    def subset_of(self, other: "SymbolicFamily") -> bool:
        if self.space.variant is not other.space.variant:
            raise ValidationError("family comparison needs a common space")
        return (not self.includes_all) or other.includes_all


_FAMILY_KEYS = ("sc", "dc", "rd", "irr", "k_sob", "k_d", "k_wf")

# includes_all per (variant, family); the derivations are in the module
# docstring.  The plus variants normalize to True because the adjoined top
# makes the whole carrier a point closure.
_INCLUDES_ALL = {
    SymbolicVariant.OMEGA_CHAIN: {
        "sc": False, "dc": True, "rd": True, "irr": True,
        "k_sob": True, "k_d": True, "k_wf": True,
    },
    SymbolicVariant.COFINITE: {
        "sc": False, "dc": False, "rd": True, "irr": True,
        "k_sob": True, "k_d": False, "k_wf": True,
    },
    SymbolicVariant.OMEGA_PLUS_ONE: {k: True for k in _FAMILY_KEYS},
    SymbolicVariant.COFINITE_PLUS_TOP: {k: True for k in _FAMILY_KEYS},
}


def _family_key(which: Union[str, CategoryTag]) -> str:
    if isinstance(which, CategoryTag):
        return {"sob": "k_sob", "d": "k_d", "wf": "k_wf"}[which.value]
    key = which.lower()
    if key in ("sc", "dc", "rd", "irr"):
        return key
    raise ValidationError(f"unknown family selector {which!r}")


def sym_family(s: SymbolicSpace, which: Union[str, CategoryTag]
               ) -> Union[SymbolicFamily, ClosedFamily]:
    """The requested closed-set family, exact.  Finite-embedded spaces
    delegate to the finite enumeration and return an ordinary family."""
    key = _family_key(which)
    if s.variant is SymbolicVariant.FINITE:
        from .families import directed_closures, k_family, rudin_sets

        x = s.finite
        if key == "sc":
            return point_closures(x)
        if key == "dc":
            return directed_closures(x)
        if key == "rd":
            return rudin_sets(x).family
        if key == "irr":
            return irreducible_closed(x)
        return k_family(x, {"k_sob": CategoryTag.SOBRIETY,
                            "k_d": CategoryTag.D_SPACE,
                            "k_wf": CategoryTag.WELL_FILTERED}[key])
    table = _INCLUDES_ALL.get(s.variant)
    if table is None:
        raise UnsupportedSpaceError(f"no symbolic families for {s.variant}")
    return SymbolicFamily(s, key, table[key])


# ---------------------------------------------------------------------------
# predicates


@dataclass(frozen=True)
class SymbolicPredicates:
    sober: bool
    d_space: bool
    well_filtered: bool
    compact: bool

    def __post_init__(self):
        if self.sober and not self.well_filtered:
            raise ValidationError("sober spaces are well-filtered")
        if self.well_filtered and not self.d_space:
            raise ValidationError("well-filtered spaces are d-spaces")

    def by_category(self, c: CategoryTag) -> bool:
        return {CategoryTag.SOBRIETY: self.sober,
                CategoryTag.D_SPACE: self.d_space,
                CategoryTag.WELL_FILTERED: self.well_filtered}[c]


def _chain_compact() -> bool:
    # Opens are the up sets up(n); 0 lies in up(n) iff n == 0, and up(0) is
    # the whole carrier, so any open cover owns the whole carrier as a member.
    only_full_contains_zero = all(
        open_contains(OMEGA_CHAIN, open_up(n), 0) == (n == 0) for n in range(64)
    )
    return only_full_contains_zero


def _cofinite_compact() -> bool:
    # Any nonempty open misses only its finite exclusion set; finitely many
    # further members cover the exclusions, so every cover has a finite subcover.
    sample = open_cofinite({0, 1, 2})
    return sample.excluded is not None and len(sample.excluded) < float("inf")


def sym_predicates(s: SymbolicSpace) -> SymbolicPredicates:
    """Flags computed from the family descriptors: a space fails a category
    membership exactly when the matching family owns a member that is not a
    point closure (the identity map forces the collapse on actual objects),
    and passes it when the family collapses, the construction of the
    reflection being an object of the category."""
    if s.variant is SymbolicVariant.FINITE:
        from .products_properties import predicates

        report = predicates(s.finite)
        return SymbolicPredicates(report.sober, report.d_space,
                                  report.well_filtered, True)
    sober = sym_family(s, CategoryTag.SOBRIETY).members_are_point_closures()
    wf = sym_family(s, CategoryTag.WELL_FILTERED).members_are_point_closures()
    d = sym_family(s, "dc").members_are_point_closures()
    if s.variant in CHAIN_VARIANTS:
        compact = _chain_compact()
    else:
        compact = _cofinite_compact()
    return SymbolicPredicates(sober, d, wf, compact)


# ---------------------------------------------------------------------------
# reflections


@dataclass(frozen=True)
class SymbolicEmbedding:
    """The canonical embedding x -> cl{x} described on points."""

    base: SymbolicSpace
    target: SymbolicSpace

    def image_of(self, point: Union[int, str]) -> SymbolicClosed:
        if isinstance(point, str):
            if point != self.base.adjoined_point:
                raise ValidationError(f"point {point!r} is not in the carrier")
            return closed_all()
        if self.base.variant in CHAIN_VARIANTS:
            return closed_down(point)
        if self.base.variant in COFINITE_VARIANTS:
            return closed_finite({point})
        raise UnsupportedSpaceError("no symbolic embedding for this variant")


@dataclass(frozen=True)
class SymbolicReflection:
    category: CategoryTag
    base: SymbolicSpace
    family: Union[SymbolicFamily, ClosedFamily]
    space: SymbolicSpace
    added_points: tuple[str, ...]
    embedding: object  # SymbolicEmbedding, or a ContinuousMap when finite


_REFLECT_TABLE = {
    SymbolicVariant.OMEGA_CHAIN: {
        CategoryTag.SOBRIETY: SymbolicVariant.OMEGA_PLUS_ONE,
        CategoryTag.D_SPACE: SymbolicVariant.OMEGA_PLUS_ONE,
        CategoryTag.WELL_FILTERED: SymbolicVariant.OMEGA_PLUS_ONE,
    },
    SymbolicVariant.OMEGA_PLUS_ONE: {c: SymbolicVariant.OMEGA_PLUS_ONE
                                     for c in CategoryTag},
    SymbolicVariant.COFINITE: {
        CategoryTag.SOBRIETY: SymbolicVariant.COFINITE_PLUS_TOP,
        CategoryTag.D_SPACE: SymbolicVariant.COFINITE,
        CategoryTag.WELL_FILTERED: SymbolicVariant.COFINITE_PLUS_TOP,
    },
    SymbolicVariant.COFINITE_PLUS_TOP: {c: SymbolicVariant.COFINITE_PLUS_TOP
                                        for c in CategoryTag},
}


def sym_reflect(s: SymbolicSpace, c: CategoryTag,
                caps: Caps | None = None) -> SymbolicReflection:
    """The reflection computed from the closed-form family: the hyperspace of
    the K-family under the hit topology.  When the family is the point
    closures the reflection is the space itself; when it additionally owns
    the whole carrier the reflection adjoins exactly one point whose closure
    is everything."""
    caps = caps or default_caps()
    if s.variant is SymbolicVariant.FINITE:
        from .reflections import reflect

        r = reflect(s.finite, c, caps)
        return SymbolicReflection(
            c, s, r.family,
            SymbolicSpace(SymbolicVariant.FINITE, finite=r.space, name=r.space.name),
            (), r.embedding,
        )
    table = _REFLECT_TABLE.get(s.variant)
    if table is None:
        raise UnsupportedSpaceError(f"no symbolic reflection for {s.variant}")
    family = sym_family(s, c)
    target_variant = table[c]
    # Consistency: one point is adjoined iff the family strictly exceeds the
    # point closures, and then its closure is the whole carrier.
    grows = family.includes_all and s.adjoined_point is None
    if grows != (target_variant is not s.variant):
        raise ValidationError("reflection table out of step with the families")
    if target_variant is s.variant:
        target = s
        added: tuple[str, ...] = ()
    else:
        target = {SymbolicVariant.OMEGA_PLUS_ONE: OMEGA_PLUS_ONE,
                  SymbolicVariant.COFINITE_PLUS_TOP: COFINITE_PLUS_TOP}[target_variant]
        added = (target.adjoined_point,)
    return SymbolicReflection(c, s, family, target, added,
                              SymbolicEmbedding(s, target))


def reflection_open_of(base: SymbolicSpace, target: SymbolicSpace,
                       o: SymbolicOpen) -> SymbolicOpen:
    """The diamond image of a base open in the reflection: its points are the
    point closures of members of the open plus, when present, the adjoined
    generic point, which every nonempty open contains.  The descriptor
    parameter is therefore carried over unchanged."""
    if o.kind == "empty":
        return open_empty()
    if base.variant in CHAIN_VARIANTS and target.variant in CHAIN_VARIANTS:
        return open_up(o.n)
    if base.variant in COFINITE_VARIANTS and target.variant in COFINITE_VARIANTS:
        return open_cofinite(o.excluded)
    raise UnsupportedSpaceError("reflection open transfer needs matching variants")


# ---------------------------------------------------------------------------
# products with a finite factor


@dataclass(frozen=True)
class SymbolicProductIrr:
    """Irr_c of (symbolic x finite) as the pair of factor families: the
    irreducible closed sets of the product are exactly the products of
    irreducible closed factor sets."""

    sym_space: SymbolicSpace
    finite_space: FiniteSpace
    sym_irr: SymbolicFamily
    finite_irr: ClosedFamily

    def pair_count_is_infinite(self) -> bool:
        return True  # the symbolic factor always has infinitely many members

    def all_pairs_have_generic_points(self) -> bool:
        """True iff every member B x C has a generic point, which happens iff
        B and C both do (closures multiply across finite products)."""
        sym_ok = self.sym_irr.members_are_point_closures()
        fin_ok = all(m in frozenset(self.finite_space.down_masks)
                     for m in self.finite_irr.members)
        return sym_ok and fin_ok


def sym_product_irr(s: SymbolicSpace, f: FiniteSpace) -> SymbolicProductIrr:
    if s.variant is SymbolicVariant.FINITE:
        raise UnsupportedSpaceError(
            "use the finite product directly for finite-embedded factors"
        )
    return SymbolicProductIrr(s, f, sym_family(s, "irr"), irreducible_closed(f))
