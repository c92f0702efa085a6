"""Core space construction, operators, continuous maps, and their oracles."""

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from topolab import (
    ContinuousMap,
    FinitePoset,
    FiniteSpace,
    ResourceCapError,
    ValidationError,
    check_continuous,
    continuous_map,
    enumerate_continuous_maps,
    find_homeomorphism,
    from_poset,
    identity_map,
    is_homeomorphic,
    random_space,
    specialization_order,
)
from topolab.caps import Caps


def brute_force_upper_sets(poset):
    """Oracle: every subset tested against the upper-set condition."""
    out = set()
    for mask in range(1 << poset.n):
        if all(poset.leq[i] & ~mask == 0 for i in range(poset.n) if mask >> i & 1):
            out.add(mask)
    return out


small_spaces = st.builds(
    random_space,
    st.integers(min_value=0, max_value=2**64 - 1),
    st.integers(min_value=1, max_value=5),
)

subsets = st.integers(min_value=0, max_value=(1 << 5) - 1)


# ---------------------------------------------------------------------------
# posets and from_poset


def test_from_poset_chain_is_sierpinski():
    p = FinitePoset.from_pairs(("a", "b"), [("a", "b")])
    space = from_poset(p)
    assert set(space.opens) == {0, space.mask_of("b"), space.mask_of("a", "b")}


def test_from_poset_antichain_is_discrete():
    p = FinitePoset.from_pairs(("a", "b"), [])
    assert len(from_poset(p).opens) == 4


def test_from_poset_vee_opens_match_brute_force():
    p = FinitePoset.from_pairs(("a", "b", "t"), [("a", "t"), ("b", "t")])
    space = from_poset(p)
    assert set(space.opens) == brute_force_upper_sets(p)
    expected = {0, space.mask_of("t"), space.mask_of("a", "t"),
                space.mask_of("b", "t"), space.mask_of("a", "b", "t")}
    assert set(space.opens) == expected


@given(small_spaces)
@settings(max_examples=60, deadline=None)
def test_opens_are_exactly_upper_sets(space):
    assert set(space.opens) == brute_force_upper_sets(specialization_order(space))


def test_poset_validation_names_axioms():
    with pytest.raises(ValidationError, match="reflexive"):
        FinitePoset(("a", "b"), (0b10, 0b10))
    with pytest.raises(ValidationError, match="transitive"):
        FinitePoset(("a", "b", "c"), (0b011, 0b110, 0b100))
    with pytest.raises(ValidationError, match="antisymmetric"):
        FinitePoset(("a", "b"), (0b11, 0b11))
    with pytest.raises(ValidationError, match="cycle"):
        FinitePoset.from_pairs(("a", "b"), [("a", "b"), ("b", "a")])


def test_specialization_round_trip_on_samples():
    for seed in range(40):
        space = random_space(seed, 1 + seed % 6)
        assert from_poset(specialization_order(space)) == space


def test_specialization_order_examples(sierpinski, discrete2):
    p = specialization_order(sierpinski)
    assert p.le(p.index("bot"), p.index("top"))
    assert not p.le(p.index("top"), p.index("bot"))
    q = specialization_order(discrete2)
    assert not q.le(0, 1) and not q.le(1, 0)


def test_specialization_agrees_with_closure_membership():
    space = random_space(99, 5)
    p = specialization_order(space)
    for i in range(space.n):
        for j in range(space.n):
            # x <= y iff x lies in the closure of {y}
            assert p.le(i, j) == bool(space.closure(1 << j) >> i & 1)


# ---------------------------------------------------------------------------
# closure / interior / saturation


def test_sierpinski_closure_and_saturation(sierpinski):
    top = sierpinski.mask_of("top")
    bot = sierpinski.mask_of("bot")
    assert sierpinski.closure(top) == sierpinski.full_mask
    assert sierpinski.saturation(bot) == sierpinski.full_mask
    assert sierpinski.closure(bot) == bot
    assert sierpinski.saturation(top) == top


def closure_oracle(space, a):
    """Complement of the union of the opens disjoint from a."""
    union = 0
    for u in space.opens:
        if u & a == 0:
            union |= u
    return space.full_mask & ~union


def saturation_oracle(space, a):
    out = space.full_mask
    for u in space.opens:
        if a & ~u == 0:
            out &= u
    return out


def interior_oracle(space, a):
    out = 0
    for u in space.opens:
        if u & ~a == 0:
            out |= u
    return out


def test_operators_match_definitional_oracles():
    space = random_space(7, 6)
    for a in range(1 << space.n):
        assert space.closure(a) == closure_oracle(space, a)
        assert space.saturation(a) == saturation_oracle(space, a)
        assert space.interior(a) == interior_oracle(space, a)


def test_closure_is_down_set_in_poset_spaces():
    for seed in (3, 11, 29):
        space = random_space(seed, 5)
        poset = specialization_order(space)
        for a in range(1 << space.n):
            assert space.closure(a) == poset.lower_closure(a)


@given(small_spaces, subsets, subsets)
@settings(max_examples=80, deadline=None)
def test_closure_properties(space, a, b):
    a &= space.full_mask
    b &= space.full_mask
    cl = space.closure
    assert cl(a) & ~cl(a | b) == 0          # monotone
    assert a & ~cl(a) == 0                  # extensive
    assert cl(cl(a)) == cl(a)               # idempotent
    sat = space.saturation(a)
    assert a & ~sat == 0 and space.is_open(sat)


# ---------------------------------------------------------------------------
# validation


def test_space_validation_names_axioms():
    with pytest.raises(ValidationError, match="at least one point"):
        FiniteSpace((), (0,))
    with pytest.raises(ValidationError, match="empty set"):
        FiniteSpace(("a",), (1,))
    with pytest.raises(ValidationError, match="carrier is not open"):
        FiniteSpace(("a", "b"), (0, 1))
    with pytest.raises(ValidationError, match="not T0"):
        FiniteSpace(("a", "b"), (0, 0b11))
    with pytest.raises(ValidationError, match="union"):
        FiniteSpace(("a", "b", "c"), (0, 0b001, 0b010, 0b111))
    with pytest.raises(ValidationError, match="intersection"):
        FiniteSpace(("a", "b", "c"), (0, 0b011, 0b110, 0b111))
    with pytest.raises(ValidationError, match="distinct"):
        FiniteSpace(("a", "a"), (0, 0b11))


def test_point_cap_is_enforced():
    labels = tuple(f"p{i}" for i in range(13))
    poset = FinitePoset.from_pairs(labels, [(labels[i], labels[i + 1])
                                            for i in range(12)])
    with pytest.raises(ResourceCapError):
        from_poset(poset)
    assert from_poset(poset, Caps(max_points=13)).n == 13


# ---------------------------------------------------------------------------
# continuous maps


def test_identity_and_constant_maps_are_continuous(vee):
    assert check_continuous(identity_map(vee)).ok
    for k in range(vee.n):
        const = ContinuousMap(vee, vee, (k,) * vee.n)
        assert check_continuous(const).ok


def test_sierpinski_swap_witness(sierpinski):
    swap = ContinuousMap(sierpinski, sierpinski, (1, 0))
    report = check_continuous(swap)
    assert not report.ok
    assert report.witness_open == sierpinski.mask_of("top")


def test_continuous_map_factory_rejects_discontinuous(sierpinski):
    with pytest.raises(ValidationError, match="not continuous"):
        continuous_map(sierpinski, sierpinski, {"bot": "top", "top": "bot"})


def enumerate_by_filtering(x, y):
    """Oracle: all |y|^|x| functions filtered by the preimage test."""
    out = []
    for combo in itertools.product(range(y.n), repeat=x.n):
        f = ContinuousMap(x, y, combo)
        if all(x.is_open(f.preimage_mask(u)) for u in y.opens):
            out.append(combo)
    return out


def test_enumerate_continuous_maps_examples(sierpinski, discrete2):
    point = from_poset(FinitePoset.from_pairs(("z",), []))
    assert len(enumerate_continuous_maps(point, sierpinski)) == sierpinski.n
    selfmaps = enumerate_continuous_maps(sierpinski, sierpinski)
    assert [f.mapping for f in selfmaps] == enumerate_by_filtering(sierpinski, sierpinski)
    assert len(selfmaps) == 3
    from_discrete = enumerate_continuous_maps(discrete2, sierpinski)
    assert len(from_discrete) == 4


def test_enumeration_cap():
    big = random_space(5, 6)
    with pytest.raises(ResourceCapError):
        enumerate_continuous_maps(big, big, Caps(max_maps=100))


def test_continuous_maps_are_monotone():
    x = random_space(21, 4)
    y = random_space(22, 4)
    for f in enumerate_continuous_maps(x, y):
        assert f.is_monotone()


def test_map_composition_and_images(vee, sierpinski):
    f = continuous_map(vee, sierpinski, {"a": "bot", "b": "bot", "t": "top"})
    g = identity_map(sierpinski)
    assert g.after(f).mapping == f.mapping
    assert f.image_mask(vee.mask_of("a", "t")) == sierpinski.full_mask
    assert f.preimage_mask(sierpinski.mask_of("top")) == vee.mask_of("t")


# ---------------------------------------------------------------------------
# homeomorphism search


def test_homeomorphism_finds_relabellings(sierpinski):
    other = from_poset(FinitePoset.from_pairs(("x", "y"), [("y", "x")]))
    phi = find_homeomorphism(sierpinski, other)
    assert phi is not None
    assert not is_homeomorphic(sierpinski, from_poset(
        FinitePoset.from_pairs(("x", "y"), [])))


def test_homeomorphism_distinguishes_vee_and_wedge(spaces):
    assert not is_homeomorphic(spaces["vee"], spaces["wedge"])
    assert is_homeomorphic(spaces["vee"], spaces["vee"])


def test_homeomorphism_cap():
    x = random_space(1, 6)
    with pytest.raises(ResourceCapError):
        is_homeomorphic(x, x, Caps(max_iso_points=5))


def test_homeomorphism_on_shuffled_random_spaces():
    base = random_space(77, 6)
    poset = specialization_order(base)
    perm = [3, 0, 5, 1, 4, 2]
    relabeled = FinitePoset(
        tuple(base.points[perm[i]] + "x" for i in range(6)),
        tuple_rows(poset, perm),
    )
    assert is_homeomorphic(base, from_poset(relabeled))


def tuple_rows(poset, perm):
    n = poset.n
    rows = []
    for i in range(n):
        row = 0
        for j in range(n):
            if poset.le(perm[i], perm[j]):
                row |= 1 << j
        rows.append(row)
    return tuple(rows)


def test_subspace_of_vee(vee):
    sub = vee.subspace(vee.mask_of("a", "t"))
    assert sub.points == ("a", "t")
    assert len(sub.opens) == 3  # a chain
