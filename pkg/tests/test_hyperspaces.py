"""Hyperspace constructions, the canonical embeddings, and their lattices."""

import pytest

from topolab import (
    ClosedFamily,
    ResourceCapError,
    ValidationError,
    box,
    diamond,
    eta,
    irreducible_closed,
    is_homeomorphic,
    lower_vietoris,
    point_closures,
    random_space,
    smyth_power,
    specialization_order,
    xi,
)
from topolab.caps import Caps
from topolab.hyperspaces import box_lattice, diamond_lattice
from topolab.products_properties import predicates


def family_of_point_closures(space):
    return point_closures(space)


# ---------------------------------------------------------------------------
# diamond / box


def test_diamond_box_on_sierpinski(sierpinski):
    g = ClosedFamily(sierpinski, (sierpinski.mask_of("bot"), sierpinski.full_mask))
    # canonical member order: {bot} then {bot,top}
    assert g.members == (sierpinski.mask_of("bot"), sierpinski.full_mask)
    assert diamond(g, sierpinski.mask_of("top")) == 0b10
    assert box(g, sierpinski.mask_of("bot")) == 0b01
    assert diamond(g, sierpinski.full_mask) == 0b11
    assert diamond(g, 0) == 0
    assert box(g, sierpinski.full_mask) == 0b11


def test_closed_family_validation(sierpinski):
    with pytest.raises(ValidationError, match="not closed"):
        ClosedFamily(sierpinski, (sierpinski.mask_of("top"),))
    with pytest.raises(ValidationError, match="upper member"):
        ClosedFamily(sierpinski, (sierpinski.mask_of("bot"),), status="interval")


def test_interval_family_bounds(sierpinski):
    bot = sierpinski.mask_of("bot")
    fam = ClosedFamily(sierpinski, (bot,), status="interval",
                       upper_members=(bot, sierpinski.full_mask))
    assert fam.members == (bot,)
    with pytest.raises(ValidationError, match="lower bound"):
        ClosedFamily(sierpinski, (sierpinski.full_mask,), status="interval",
                     upper_members=(bot,))
    with pytest.raises(ValidationError, match="exact"):
        ClosedFamily(sierpinski, (bot,), upper_members=(bot,))
    with pytest.raises(ValidationError, match="lower Vietoris"):
        lower_vietoris(fam)


# ---------------------------------------------------------------------------
# lower Vietoris


def test_lower_vietoris_of_point_closures_reproduces_space(sierpinski, vee):
    for space in (sierpinski, vee):
        hv = lower_vietoris(point_closures(space))
        assert is_homeomorphic(hv.space, space)


def test_lower_vietoris_of_irreducibles(discrete2, vee):
    assert is_homeomorphic(lower_vietoris(irreducible_closed(discrete2)).space,
                           discrete2)
    assert is_homeomorphic(lower_vietoris(irreducible_closed(vee)).space, vee)


def test_lower_vietoris_opens_equal_diamond_lattice():
    for seed in (2, 9, 17):
        space = random_space(seed, 4)
        g = point_closures(space)
        hv = lower_vietoris(g)
        assert set(hv.space.opens) == set(diamond_lattice(g))


def test_lower_vietoris_handles_reducible_members(discrete2):
    # all nonempty closed sets of the discrete space; {a,b} is reducible, so
    # the lattice generation needs the intersection step
    g = ClosedFamily(discrete2, tuple(m for m in discrete2.closed_sets if m))
    hv = lower_vietoris(g)
    assert set(hv.space.opens) == set(diamond_lattice(g))
    assert hv.space.n == 3


def test_lower_vietoris_specialization_is_inclusion(vee):
    g = irreducible_closed(vee)
    hv = lower_vietoris(g)
    poset = specialization_order(hv.space)
    for i, a in enumerate(g.members):
        for j, b in enumerate(g.members):
            assert poset.le(i, j) == (a & ~b == 0)


def test_lower_vietoris_preconditions(sierpinski):
    with pytest.raises(ValidationError, match="nonempty"):
        lower_vietoris(ClosedFamily(sierpinski, (0,)))
    big = random_space(4, 8, Caps(max_points=8))
    with pytest.raises(ResourceCapError):
        lower_vietoris(point_closures(big))


# ---------------------------------------------------------------------------
# Smyth power space


def test_smyth_power_of_point():
    point = random_space(0, 1)
    ps = smyth_power(point)
    assert ps.space.n == 1


def test_smyth_power_of_sierpinski(sierpinski):
    ps = smyth_power(sierpinski)
    top = sierpinski.mask_of("top")
    assert set(ps.members) == {top, sierpinski.full_mask}
    assert ps.box_points(top) == 1 << ps.point_of_member(top)
    assert is_homeomorphic(ps.space, sierpinski)


def test_smyth_power_of_discrete2(discrete2):
    ps = smyth_power(discrete2)
    assert ps.space.n == 3
    poset = specialization_order(ps.space)
    full = ps.point_of_member(discrete2.full_mask)
    a = ps.point_of_member(discrete2.mask_of("a"))
    b = ps.point_of_member(discrete2.mask_of("b"))
    # Smyth order: the whole carrier lies below each singleton
    assert poset.le(full, a) and poset.le(full, b)
    assert not poset.le(a, b) and not poset.le(b, a)


def test_smyth_opens_equal_box_lattice():
    for seed in (5, 23):
        space = random_space(seed, 4)
        ps = smyth_power(space)
        assert set(ps.space.opens) == set(box_lattice(ps))


def test_smyth_power_of_finite_space_is_sober():
    for seed in (1, 6, 14):
        space = random_space(seed, 4)
        ps = smyth_power(space)
        assert predicates(ps.space).sober


# ---------------------------------------------------------------------------
# eta and xi


def test_eta_on_sierpinski(sierpinski):
    g = irreducible_closed(sierpinski)
    f = eta(g)
    assert f("top") == sierpinski.render_subset(sierpinski.full_mask)
    assert f("bot") == sierpinski.render_subset(sierpinski.mask_of("bot"))


def test_eta_image_is_point_closures_and_embeds():
    for seed in (8, 31):
        space = random_space(seed, 5)
        g = irreducible_closed(space)
        f = eta(g)
        image = f.image_mask(space.full_mask)
        expected = 0
        for m in point_closures(space).members:
            expected |= 1 << g.member_position(m)
        assert image == expected
        assert is_homeomorphic(f.target.subspace(image), space)


def test_eta_preimage_of_diamond_is_the_open():
    space = random_space(12, 5)
    g = irreducible_closed(space)
    hv = lower_vietoris(g)
    f = eta(g, hv)
    for u in space.opens:
        assert f.preimage_mask(diamond(g, u)) == u


def test_eta_requires_point_closures(sierpinski):
    g = ClosedFamily(sierpinski, (sierpinski.full_mask,))
    with pytest.raises(ValidationError, match="missing"):
        eta(g)


def test_xi_on_sierpinski_and_discrete(sierpinski, discrete2):
    f = xi(sierpinski)
    assert f("bot") == sierpinski.render_subset(sierpinski.full_mask)
    g = xi(discrete2)
    ps = smyth_power(discrete2)
    image = g.image_mask(discrete2.full_mask)
    expected = 0
    for m in ps.supercompact_members():
        expected |= 1 << ps.point_of_member(m)
    assert image == expected


def test_xi_image_subspace_is_homeomorphic():
    space = random_space(42, 5)
    f = xi(space)
    image = f.image_mask(space.full_mask)
    assert is_homeomorphic(f.target.subspace(image), space)


# ---------------------------------------------------------------------------
# closure formula and subspace coherence


def test_closure_of_embedded_image_is_box_of_closure():
    for seed in (3, 19, 55):
        space = random_space(seed, 5)
        g = irreducible_closed(space)
        hv = lower_vietoris(g)
        f = eta(g, hv)
        for a in range(1 << space.n):
            assert hv.space.closure(f.image_mask(a)) == box(g, space.closure(a))


def test_subfamily_hyperspace_is_a_subspace(vee):
    g2 = irreducible_closed(vee)
    g1 = ClosedFamily(vee, g2.members[:2])
    small = lower_vietoris(g1)
    keep = 0
    for m in g1.members:
        keep |= 1 << g2.member_position(m)
    assert small.space == lower_vietoris(g2).space.subspace(keep)
