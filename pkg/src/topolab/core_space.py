"""Finite T0 spaces, finite posets, and continuous point maps.

Subsets of a carrier are bit masks over the point index.  Families of
subsets are kept sorted by (popcount, numeric value) so that every
enumeration in the library is deterministic.  All values are immutable
after construction; validation is eager and names the violated axiom.

A finite topology is automatically Alexandrov: each point has a least open
neighbourhood (the finite intersection of its neighbourhoods), so the opens
of a valid space are exactly the upper sets of its specialization order.
Validation exploits this: a family containing the empty set and the carrier
is closed under union and intersection iff it equals the upper-set family
of the preorder it induces.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Iterable, Iterator, NamedTuple, Optional, Sequence

from .caps import Caps, default_caps
from .errors import ResourceCapError, ValidationError


# ---------------------------------------------------------------------------
# bit-mask helpers


def bit_indices(mask: int) -> Iterator[int]:
    """Indices of set bits, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_key(mask: int) -> tuple[int, int]:
    """Canonical (popcount, value) sort key for point-set masks."""
    return (mask.bit_count(), mask)


def canonical_masks(masks: Iterable[int]) -> tuple[int, ...]:
    return tuple(sorted(set(masks), key=mask_key))


def compress_mask(mask: int, positions: Sequence[int]) -> int:
    """Re-index a mask onto the sub-carrier given by `positions`."""
    out = 0
    for new, old in enumerate(positions):
        if mask >> old & 1:
            out |= 1 << new
    return out


def _upper_sets(up_rows: Sequence[int], limit: int) -> Optional[list[int]]:
    """All upper sets of the partial order whose row i is the mask above i.

    Membership is decided from maximal elements down, so each emitted set
    costs O(n).  Returns None as soon as more than `limit` sets exist.
    """
    n = len(up_rows)
    order = sorted(range(n), key=lambda i: (up_rows[i].bit_count(), i))
    out: list[int] = []

    def rec(k: int, mask: int) -> bool:
        if k == n:
            if len(out) >= limit:
                return False
            out.append(mask)
            return True
        i = order[k]
        if not rec(k + 1, mask):
            return False
        strict_up = up_rows[i] & ~(1 << i)
        if strict_up & ~mask == 0:
            return rec(k + 1, mask | (1 << i))
        return True

    if not rec(0, 0):
        return None
    return out


# ---------------------------------------------------------------------------
# posets


@dataclass(frozen=True)
class FinitePoset:
    """A finite partial order; row i of `leq` is the mask of elements above i."""

    elements: tuple[str, ...]
    leq: tuple[int, ...]

    def __post_init__(self):
        elements = tuple(self.elements)
        leq = tuple(self.leq)
        object.__setattr__(self, "elements", elements)
        object.__setattr__(self, "leq", leq)
        if not elements:
            raise ValidationError("poset must have at least one element")
        if len(set(elements)) != len(elements):
            raise ValidationError("poset elements must be distinct")
        if any(not isinstance(e, str) or not e for e in elements):
            raise ValidationError("poset element labels must be nonempty strings")
        n = len(elements)
        if len(leq) != n:
            raise ValidationError("leq must have one row per element")
        full = (1 << n) - 1
        for i, row in enumerate(leq):
            if row < 0 or row > full:
                raise ValidationError(f"leq row for {elements[i]!r} is out of range")
            if not row >> i & 1:
                raise ValidationError(f"order is not reflexive at {elements[i]!r}")
        for i in range(n):
            for j in bit_indices(leq[i]):
                if leq[j] & ~leq[i]:
                    k = next(bit_indices(leq[j] & ~leq[i]))
                    raise ValidationError(
                        "order is not transitive: "
                        f"{elements[i]!r} <= {elements[j]!r} <= {elements[k]!r} "
                        f"but not {elements[i]!r} <= {elements[k]!r}"
                    )
                if i != j and leq[j] >> i & 1:
                    raise ValidationError(
                        f"order is not antisymmetric: {elements[i]!r} and "
                        f"{elements[j]!r} are below each other"
                    )

    @classmethod
    def from_pairs(cls, elements: Sequence[str], pairs: Iterable[tuple[str, str]]) -> "FinitePoset":
        """Reflexive-transitive closure of a relation given as (a, b) with a <= b."""
        elements = tuple(elements)
        index = {e: i for i, e in enumerate(elements)}
        n = len(elements)
        rows = [1 << i for i in range(n)]
        for a, b in pairs:
            if a not in index or b not in index:
                missing = a if a not in index else b
                raise ValidationError(f"order mentions unknown element {missing!r}")
            rows[index[a]] |= 1 << index[b]
        changed = True
        while changed:
            changed = False
            for i in range(n):
                acc = rows[i]
                for j in bit_indices(rows[i]):
                    acc |= rows[j]
                if acc != rows[i]:
                    rows[i] = acc
                    changed = True
        for i in range(n):
            for j in bit_indices(rows[i]):
                if i != j and rows[j] >> i & 1:
                    raise ValidationError(
                        f"order contains a cycle through {elements[i]!r} and {elements[j]!r}"
                    )
        return cls(elements, tuple(rows))

    @property
    def n(self) -> int:
        return len(self.elements)

    def index(self, label: str) -> int:
        return self.elements.index(label)

    def le(self, i: int, j: int) -> bool:
        return bool(self.leq[i] >> j & 1)

    def up_mask(self, i: int) -> int:
        return self.leq[i]

    @cached_property
    def down_rows(self) -> tuple[int, ...]:
        rows = [0] * self.n
        for i in range(self.n):
            for j in bit_indices(self.leq[i]):
                rows[j] |= 1 << i
        return tuple(rows)

    def down_mask(self, i: int) -> int:
        return self.down_rows[i]

    def upper_closure(self, mask: int) -> int:
        out = 0
        for i in bit_indices(mask):
            out |= self.leq[i]
        return out

    def lower_closure(self, mask: int) -> int:
        out = 0
        for i in bit_indices(mask):
            out |= self.down_rows[i]
        return out

    def covers(self) -> list[tuple[int, int]]:
        """Hasse pairs (i, j) with i < j and nothing strictly between."""
        out = []
        for i in range(self.n):
            strict = self.leq[i] & ~(1 << i)
            for j in bit_indices(strict):
                between = strict & self.down_rows[j] & ~(1 << j)
                if not between:
                    out.append((i, j))
        return out

    def is_directed_subset(self, mask: int) -> bool:
        """Nonempty and every two members have an upper bound in the subset."""
        if not mask:
            return False
        members = list(bit_indices(mask))
        for a in members:
            for b in members:
                if not self.leq[a] & self.leq[b] & mask:
                    return False
        return True


# ---------------------------------------------------------------------------
# spaces


@dataclass(frozen=True)
class FiniteSpace:
    """A finite T0 space: a carrier plus its full open-set family."""

    points: tuple[str, ...]
    opens: tuple[int, ...]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        points = tuple(self.points)
        object.__setattr__(self, "points", points)
        if not points:
            raise ValidationError("space must have at least one point (empty spaces are rejected)")
        if len(set(points)) != len(points):
            raise ValidationError("point labels must be distinct")
        if any(not isinstance(p, str) or not p for p in points):
            raise ValidationError("point labels must be nonempty strings")
        n = len(points)
        full = (1 << n) - 1
        opens = canonical_masks(self.opens)
        object.__setattr__(self, "opens", opens)
        for u in opens:
            if u < 0 or u > full:
                raise ValidationError("an open set is not a subset of the carrier")
        opens_set = frozenset(opens)
        if 0 not in opens_set:
            raise ValidationError("the empty set is not open")
        if full not in opens_set:
            raise ValidationError("the full carrier is not open")

        up = [full] * n
        for u in opens:
            for i in bit_indices(u):
                up[i] &= u

        if len(opens) <= 256:
            for a in opens:
                for b in opens:
                    if a | b not in opens_set:
                        raise ValidationError(
                            "opens are not closed under union: "
                            f"{self._render(a)} | {self._render(b)} is missing"
                        )
                    if a & b not in opens_set:
                        raise ValidationError(
                            "opens are not closed under intersection: "
                            f"{self._render(a)} & {self._render(b)} is missing"
                        )
            self._check_t0(up)
        else:
            # Large families: closure under union/intersection holds iff the
            # family equals the upper sets of the induced order (Alexandrov).
            self._check_t0(up)
            ups = _upper_sets(up, limit=len(opens))
            if ups is None or set(ups) != opens_set:
                raise ValidationError(
                    "opens are not closed under union/intersection: the family "
                    "does not match the upper sets of its specialization order"
                )
        object.__setattr__(self, "_up_masks", tuple(up))

    def _check_t0(self, up: Sequence[int]) -> None:
        seen: dict[int, int] = {}
        for i, m in enumerate(up):
            if m in seen:
                raise ValidationError(
                    f"not T0: points {self.points[seen[m]]!r} and {self.points[i]!r} "
                    "have identical minimal neighbourhoods"
                )
            seen[m] = i

    def _render(self, mask: int) -> str:
        return "{" + ",".join(self.points[i] for i in bit_indices(mask)) + "}"

    # -- basic accessors ----------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    @cached_property
    def opens_set(self) -> frozenset[int]:
        return frozenset(self.opens)

    @cached_property
    def closed_sets(self) -> tuple[int, ...]:
        full = self.full_mask
        return canonical_masks(full ^ u for u in self.opens)

    @cached_property
    def closed_set_lookup(self) -> frozenset[int]:
        return frozenset(self.closed_sets)

    @property
    def up_masks(self) -> tuple[int, ...]:
        return self._up_masks  # type: ignore[attr-defined]

    @cached_property
    def down_masks(self) -> tuple[int, ...]:
        rows = [0] * self.n
        for i in range(self.n):
            for j in bit_indices(self.up_masks[i]):
                rows[j] |= 1 << i
        return tuple(rows)

    @cached_property
    def _index(self) -> dict[str, int]:
        return {p: i for i, p in enumerate(self.points)}

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise ValidationError(f"unknown point {label!r}") from None

    def mask_of(self, *labels: str) -> int:
        out = 0
        for label in labels:
            out |= 1 << self.index(label)
        return out

    def labels_of(self, mask: int) -> tuple[str, ...]:
        return tuple(self.points[i] for i in bit_indices(mask))

    def render_subset(self, mask: int) -> str:
        return self._render(mask)

    def is_open(self, mask: int) -> bool:
        return mask in self.opens_set

    def is_closed(self, mask: int) -> bool:
        return (self.full_mask ^ mask) in self.opens_set

    def leq(self, i: int, j: int) -> bool:
        """Specialization order: i <= j iff i lies in the closure of {j}."""
        return bool(self.up_masks[i] >> j & 1)

    # -- topological operators ----------------------------------------------

    def closure(self, mask: int) -> int:
        out = 0
        for i in bit_indices(mask):
            out |= self.down_masks[i]
        return out

    def interior(self, mask: int) -> int:
        return self.full_mask & ~self.closure(self.full_mask & ~mask)

    def saturation(self, mask: int) -> int:
        """Intersection of all opens containing the set; equals its upper closure."""
        out = 0
        for i in bit_indices(mask):
            out |= self.up_masks[i]
        return out

    def renamed(self, name: str) -> "FiniteSpace":
        return replace(self, name=name)

    def subspace(self, mask: int, name: str = "") -> "FiniteSpace":
        positions = list(bit_indices(mask))
        if not positions:
            raise ValidationError("subspace carrier must be nonempty")
        points = tuple(self.points[i] for i in positions)
        opens = {compress_mask(u & mask, positions) for u in self.opens}
        return FiniteSpace(points, canonical_masks(opens), name=name)


def from_poset(p: FinitePoset, caps: Caps | None = None) -> FiniteSpace:
    """The space whose opens are all upper sets of `p` (its Scott topology;
    on a finite poset every directed set has a maximum, so nothing more is
    required of an upper set)."""
    caps = caps or default_caps()
    if p.n > caps.max_points:
        raise ResourceCapError(f"poset has {p.n} elements, cap is {caps.max_points}")
    ups = _upper_sets(p.leq, limit=caps.max_opens)
    if ups is None:
        raise ResourceCapError(f"open lattice exceeds cap {caps.max_opens}")
    return FiniteSpace(p.elements, canonical_masks(ups))


def specialization_order(x: FiniteSpace) -> FinitePoset:
    """x <= y iff x is in the closure of {y}; a partial order because x is T0."""
    return FinitePoset(x.points, x.up_masks)


# ---------------------------------------------------------------------------
# continuous maps


class ContinuityReport(NamedTuple):
    ok: bool
    witness_open: Optional[int]  # an open of the target with non-open preimage


@dataclass(frozen=True)
class ContinuousMap:
    """A total point function between finite spaces.

    Construction validates totality only; use `check_continuous` to test the
    open-preimage property, or the `continuous_map` factory to require it.
    Every map produced by library operations satisfies it.
    """

    source: FiniteSpace
    target: FiniteSpace
    mapping: tuple[int, ...]

    def __post_init__(self):
        mapping = tuple(self.mapping)
        object.__setattr__(self, "mapping", mapping)
        if len(mapping) != self.source.n:
            raise ValidationError("mapping must assign every source point")
        for v in mapping:
            if not 0 <= v < self.target.n:
                raise ValidationError("mapping hits a point outside the target carrier")

    def __call__(self, label: str) -> str:
        return self.target.points[self.mapping[self.source.index(label)]]

    def image_mask(self, mask: int) -> int:
        out = 0
        for i in bit_indices(mask):
            out |= 1 << self.mapping[i]
        return out

    def preimage_mask(self, mask: int) -> int:
        out = 0
        for i, v in enumerate(self.mapping):
            if mask >> v & 1:
                out |= 1 << i
        return out

    def after(self, other: "ContinuousMap") -> "ContinuousMap":
        """self o other."""
        if other.target is not self.source and other.target != self.source:
            raise ValidationError("composition requires matching middle space")
        return ContinuousMap(other.source, self.target,
                             tuple(self.mapping[v] for v in other.mapping))

    def is_injective(self) -> bool:
        return len(set(self.mapping)) == len(self.mapping)

    def is_monotone(self) -> bool:
        for i in range(self.source.n):
            for j in bit_indices(self.source.up_masks[i]):
                if not self.target.leq(self.mapping[i], self.mapping[j]):
                    return False
        return True


def identity_map(x: FiniteSpace) -> ContinuousMap:
    return ContinuousMap(x, x, tuple(range(x.n)))


def continuous_map(source: FiniteSpace, target: FiniteSpace,
                   assignment: dict[str, str] | Sequence[int]) -> ContinuousMap:
    """Build a map and insist it is continuous."""
    if isinstance(assignment, dict):
        mapping = tuple(target.index(assignment[p]) for p in source.points)
    else:
        mapping = tuple(assignment)
    f = ContinuousMap(source, target, mapping)
    report = check_continuous(f)
    if not report.ok:
        raise ValidationError(
            "map is not continuous: preimage of open "
            f"{target.render_subset(report.witness_open)} is not open"
        )
    return f


def check_continuous(f: ContinuousMap) -> ContinuityReport:
    """True iff every open preimage is open; else reports an offending open."""
    for u in f.target.opens:
        if not f.source.is_open(f.preimage_mask(u)):
            return ContinuityReport(False, u)
    return ContinuityReport(True, None)


def enumerate_continuous_maps(x: FiniteSpace, y: FiniteSpace,
                              caps: Caps | None = None) -> list[ContinuousMap]:
    """All continuous maps x -> y, in lexicographic order of their point tables."""
    caps = caps or default_caps()
    total = y.n ** x.n
    if total > caps.max_maps:
        raise ResourceCapError(
            f"{total} candidate functions exceed the map enumeration cap {caps.max_maps}"
        )
    out = []
    for combo in itertools.product(range(y.n), repeat=x.n):
        f = ContinuousMap(x, y, combo)
        if check_continuous(f).ok:
            out.append(f)
    return out


# ---------------------------------------------------------------------------
# homeomorphism search


def _refine_fingerprints(x: FiniteSpace) -> list[int]:
    fps: list = [(x.down_masks[i].bit_count(), x.up_masks[i].bit_count())
                 for i in range(x.n)]
    for _ in range(3):
        table: dict = {}
        nxt = []
        for i in range(x.n):
            sig = (fps[i],
                   tuple(sorted(fps[j] for j in bit_indices(x.up_masks[i]))),
                   tuple(sorted(fps[j] for j in bit_indices(x.down_masks[i]))))
            nxt.append(table.setdefault(sig, len(table)))
        fps = nxt
    return fps


def find_homeomorphism(x: FiniteSpace, y: FiniteSpace,
                       caps: Caps | None = None) -> Optional[tuple[int, ...]]:
    """A bijection carrying opens to opens, or None.

    Both spaces are finite, hence Alexandrov, so a bijection is a
    homeomorphism iff it is an order isomorphism of the specialization
    orders; the search runs over those, pruned by iterated neighbourhood
    fingerprints, and re-verifies the open families at the end.
    """
    caps = caps or default_caps()
    if x.n != y.n or len(x.opens) != len(y.opens):
        return None
    if x.n > caps.max_iso_points:
        raise ResourceCapError(
            f"homeomorphism search is bounded to {caps.max_iso_points} points"
        )
    fx, fy = _refine_fingerprints(x), _refine_fingerprints(y)
    # fingerprints are table indices local to each space; compare by class sizes
    def classes(fps):
        out: dict = {}
        for i, f in enumerate(fps):
            out.setdefault(f, []).append(i)
        return out

    cx, cy = classes(fx), classes(fy)
    if sorted(len(v) for v in cx.values()) != sorted(len(v) for v in cy.values()):
        return None

    candidates: list[list[int]] = []
    for i in range(x.n):
        size = len(cx[fx[i]])
        cands = [j for j in range(y.n) if len(cy[fy[j]]) == size]
        candidates.append(cands)
    order = sorted(range(x.n), key=lambda i: len(candidates[i]))

    assign = [-1] * x.n
    used = [False] * y.n

    def backtrack(k: int) -> bool:
        if k == x.n:
            return True
        i = order[k]
        for j in candidates[i]:
            if used[j]:
                continue
            ok = True
            for m in range(k):
                p = order[m]
                if x.leq(i, p) != y.leq(j, assign[p]) or x.leq(p, i) != y.leq(assign[p], j):
                    ok = False
                    break
            if ok:
                assign[i] = j
                used[j] = True
                if backtrack(k + 1):
                    return True
                used[j] = False
                assign[i] = -1
        return False

    if not backtrack(0):
        return None
    phi = tuple(assign)
    f = ContinuousMap(x, y, phi)
    for u in x.opens:
        if not y.is_open(f.image_mask(u)):
            return None
    return phi


def is_homeomorphic(x: FiniteSpace, y: FiniteSpace, caps: Caps | None = None) -> bool:
    return find_homeomorphism(x, y, caps) is not None
