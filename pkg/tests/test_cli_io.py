"""The space DSL, exporters, seeded generation, the verify runner, and the CLI."""

import json

import pytest

from topolab import (
    DslError,
    FiniteSpace,
    SplitMix64,
    SymbolicSpace,
    ValidationError,
    VerifyConfig,
    parse,
    random_space,
    render,
    render_dot,
    render_json,
    verify,
    zoo,
    zoo_space,
)
from topolab.cli_io import main, to_jsonable
from topolab.symbolic import SymbolicVariant


# ---------------------------------------------------------------------------
# the DSL


def test_parse_poset_form(sierpinski):
    space = parse("space s\npoints a b\norder a < b\n")
    assert isinstance(space, FiniteSpace)
    assert space.n == 2 and len(space.opens) == 3
    assert space.leq(space.index("a"), space.index("b"))


def test_parse_topology_form():
    space = parse("space x\npoints 0 1\nopens {} {1} {0 1}\n")
    assert space.n == 2 and len(space.opens) == 3
    assert space.leq(space.index("0"), space.index("1"))


def test_parse_symbolic_form():
    space = parse("space w\nsymbolic cofinite\n")
    assert isinstance(space, SymbolicSpace)
    assert space.variant is SymbolicVariant.COFINITE
    assert space.name == "w"


def test_parse_order_chains_and_comments():
    space = parse("# three point chain\nspace c\npoints a b c\norder a < b < c\n")
    assert space.leq(space.index("a"), space.index("c"))


def test_parse_errors_carry_line_numbers():
    with pytest.raises(DslError) as err:
        parse("space s\npoints a b\norder a <\n")
    assert err.value.line == 3
    with pytest.raises(DslError):
        parse("points a b\n")
    with pytest.raises(DslError):
        parse("space s\npoints a b\nopens {a\n")
    with pytest.raises(DslError):
        parse("space s\npoints a b\norder a < b\nopens {} {a b}\n")
    with pytest.raises(ValidationError):
        parse("space s\npoints a b\norder a < b\norder b < a\n")


def test_parse_render_round_trip_on_zoo():
    for name, space in zoo().items():
        assert parse(render(space)) == space, name


def test_render_topology_form_normalizes():
    space = parse("space x\npoints 0 1\nopens {} {1} {0 1}\n")
    assert parse(render(space)) == space


# ---------------------------------------------------------------------------
# seeded randomness


def test_splitmix64_reference_vector():
    rng = SplitMix64(0)
    assert [rng.next_word() for _ in range(3)] == [
        0xE220A8397B1DCDAF, 0x6E789E6AA1B965F4, 0x06C45D188009454F]


def test_random_space_is_deterministic():
    a = random_space(12345, 5)
    b = random_space(12345, 5)
    assert a == b and a.points == b.points
    assert any(random_space(12345 + k, 5) != a for k in range(1, 6))


def test_random_space_one_point():
    assert random_space(1, 1).n == 1


def test_random_space_sweep_is_valid():
    for seed in range(25):
        space = random_space(seed, 5)
        assert space.n == 5  # construction validates the axioms


# ---------------------------------------------------------------------------
# JSON and DOT


def test_json_has_schema_version(sierpinski):
    doc = json.loads(render_json(sierpinski))
    assert doc["schema_version"] == "1"
    assert doc["points"] == ["bot", "top"]
    assert [set(u) for u in doc["opens"]] == [set(), {"top"}, {"bot", "top"}]


def test_json_for_reflection_and_report(vee):
    from topolab import CategoryTag, predicates, reflect

    r = reflect(vee, CategoryTag.SOBRIETY)
    doc = json.loads(render_json(r))
    assert doc["kind"] == "reflection"
    assert doc["embedding"]["t"] == "{a,b,t}"
    rep = json.loads(render_json(predicates(vee)))
    assert rep["flags"]["sober"] is True


def test_json_for_symbolic(sierpinski):
    doc = json.loads(render_json(zoo_space("cofinite")))
    assert doc["variant"] == "cofinite"
    with pytest.raises(ValidationError):
        to_jsonable(object())


def test_dot_sierpinski(sierpinski):
    dot = render_dot(sierpinski)
    nodes = [line for line in dot.splitlines()
             if line.strip().endswith('";') and "->" not in line]
    assert len(nodes) == 2
    assert dot.count("->") == 1


def test_dot_reflection_labels(vee):
    from topolab import CategoryTag, reflect

    dot = render_dot(reflect(vee, CategoryTag.SOBRIETY))
    assert '"{a,b,t}"' in dot


def test_dot_symbolic_has_ellipsis_and_generic_point():
    from topolab import CategoryTag, sym_reflect

    dot = render_dot(zoo_space("omega_chain"))
    assert '"..."' in dot and "->" in dot
    r = sym_reflect(zoo_space("cofinite"), CategoryTag.WELL_FILTERED)
    dot = render_dot(r)
    assert "⊛" in dot


# ---------------------------------------------------------------------------
# verify


def test_verify_small_config_passes():
    report = verify(VerifyConfig(samples=10))
    assert report.ok
    assert report.exit_code == 0
    names = [s.name for s in report.suites]
    assert "finite_collapse" in names and "transfer" in names


def test_verify_mutation_mode_fails():
    report = verify(VerifyConfig(samples=10, mutate=True))
    assert not report.ok
    assert report.exit_code == 1


def test_verify_config_validation():
    with pytest.raises(ValidationError):
        VerifyConfig(samples=0)
    with pytest.raises(ValidationError):
        VerifyConfig(max_points=99)


def test_cap_env_override(monkeypatch):
    from topolab.caps import default_caps

    monkeypatch.setenv("TOPOLAB_CAP", "15")
    caps = default_caps()
    assert caps.max_points == 15 and caps.max_hyper_base_points == 15
    monkeypatch.setenv("TOPOLAB_CAP", "max_opens=64,max_points=9")
    caps = default_caps()
    assert caps.max_opens == 64 and caps.max_points == 9
    monkeypatch.setenv("TOPOLAB_CAP", "bogus=1")
    with pytest.raises(ValidationError):
        default_caps()
    monkeypatch.delenv("TOPOLAB_CAP")
    assert default_caps().max_points == 12


# ---------------------------------------------------------------------------
# the CLI


def test_cli_info_and_exit_codes(tmp_path, capsys):
    doc = tmp_path / "s.topo"
    doc.write_text("space s\npoints a b\norder a < b\n")
    assert main(["info", str(doc)]) == 0
    out = capsys.readouterr().out
    assert "2 points" in out

    assert main(["check", str(doc), "--property", "sober"]) == 0
    assert main(["check", str(doc), "--property", "nonsense"]) == 2
    assert main(["info", str(tmp_path / "missing.topo")]) == 2

    bad = tmp_path / "bad.topo"
    bad.write_text("space b\npoints a b\nopens {} {a}\n")
    assert main(["info", str(bad)]) == 2


def test_cli_cap_exit_code(tmp_path, capsys):
    doc = tmp_path / "big.topo"
    labels = " ".join(f"p{i}" for i in range(14))
    doc.write_text(f"space big\npoints {labels}\n")
    assert main(["info", str(doc)]) == 3


def test_cli_zoo_reflect_product_families(capsys):
    assert main(["zoo"]) == 0
    assert "sierpinski" in capsys.readouterr().out
    assert main(["zoo", "vee", "--dot"]) == 0
    assert "->" in capsys.readouterr().out
    assert main(["reflect", "zoo:cofinite", "--category", "wf"]) == 0
    assert "cofinite_plus_top" in capsys.readouterr().out
    assert main(["product", "zoo:sierpinski", "zoo:sierpinski"]) == 0
    assert "4 points" in capsys.readouterr().out
    assert main(["families", "zoo:vee"]) == 0
    assert "Irr_c" in capsys.readouterr().out
    assert main(["product", "zoo:cofinite", "zoo:vee"]) == 2


def test_cli_json_outputs_are_parseable(capsys):
    assert main(["reflect", "zoo:vee", "--category", "sob", "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["kind"] == "reflection"
    assert main(["check", "zoo:omega_chain", "--property", "sober", "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["value"] is False


def test_cli_verify(capsys):
    assert main(["verify", "--samples", "5"]) == 0
    out = capsys.readouterr().out
    assert "finite_collapse" in out and "all suites passed" in out
    assert main(["verify", "--samples", "5", "--mutate"]) == 1
    capsys.readouterr()
    assert main(["verify", "--samples", "5", "--categories", "sob", "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["ok"] is True
