import pytest

from manifold.errors import DomainError, EliminationError, UnknownNameError
from manifold.families import build, build_m24, build_m25, wrap
from manifold.homology import AbelianGroup, h1
from manifold.modes import Family_Id, Preset_Id, Tree_Strategy
from manifold.presentation import (
    Presentation,
    displayed_product_relator,
    preset_presentation,
    presentation_from_cw,
    presentation_from_pairings,
    product_relator,
    product_relator_matches_display,
    reduced_family_presentation,
    reduction_steps,
    simplify,
    tietze_eliminate,
)
from manifold.words import Word, cyclically_equal, word


def m24_pairing_relators(n: int) -> list[Word]:
    relators = [Word(tuple((f"a{i}", 1) for i in range(1, n + 1)))]
    for i in range(1, n + 1):
        relators += [
            word(f"a{i} b{wrap(i + 2, n)} -d"),
            word(f"a{i} -c{wrap(i + 1, n)} -b{i}"),
            word(f"c{i} c{i} -b{i}"),
        ]
    return relators


@pytest.mark.parametrize("n", range(1, 6))
def test_m24_pairing_presentation(n):
    p = presentation_from_pairings(build_m24(n))
    assert set(p.generators) == {f"{s}{i}" for s in "abc" for i in range(1, n + 1)} | {"d"}
    assert p.cyclic_relators() == Presentation(p.generators, m24_pairing_relators(n)).cyclic_relators()


def test_m25_pairing_presentation_has_split_products():
    p = presentation_from_pairings(build_m25(4))
    assert len(p.generators) == 13
    assert len(p.relators) == 14
    for relator in ("a1 a3", "a2 a4"):
        assert any(cyclically_equal(r, word(relator)) for r in p.relators)


@pytest.mark.parametrize("n", range(3, 7))
def test_m24_cw_presentation_is_the_dual(n):
    p = presentation_from_cw(build_m24(n))
    dual = preset_presentation(Preset_Id.DUAL24, n)
    assert set(p.generators) == set(dual.generators)
    assert p.cyclic_relators() == dual.cyclic_relators()


@pytest.mark.parametrize("n", [3, 5, 7])
def test_m25_odd_cw_presentation_is_g(n):
    p = presentation_from_cw(build_m25(n))
    g = preset_presentation(Preset_Id.G25, n)
    assert set(p.generators) == set(g.generators)
    assert p.cyclic_relators() == g.cyclic_relators()


@pytest.mark.parametrize("n", [4, 6, 8])
def test_m25_even_cw_tree_kills_v(n):
    p = presentation_from_cw(build_m25(n), Tree_Strategy.LAST)
    assert {"u", "v"} <= set(p.generators)
    assert word("v") in p.relators
    reduced = tietze_eliminate(p, "v")
    assert reduced.cyclic_relators() == preset_presentation(Preset_Id.H25, n).cyclic_relators()


def test_tietze_eliminate_trivial():
    p = Presentation(("g", "h"), (word("g -h"),))
    assert tietze_eliminate(p, "g") == Presentation(("h",), ())


def test_tietze_eliminate_substitutes_everywhere():
    p = Presentation(("a", "b", "c"), (word("a b -c"), word("b b -a"), word("c c")))
    reduced = tietze_eliminate(p, "a", relator=1)
    assert reduced.generators == ("b", "c")
    assert reduced.relators == (word("b b b -c"), word("c c"))


def test_tietze_errors():
    p = Presentation(("g", "h"), (word("g g h"),))
    with pytest.raises(EliminationError):
        tietze_eliminate(p, "g")
    with pytest.raises(EliminationError):
        tietze_eliminate(p, "h", relator=5)
    with pytest.raises(UnknownNameError):
        tietze_eliminate(p, "k")


def test_presentation_checks_names():
    with pytest.raises(DomainError):
        Presentation(("a", "a"))
    with pytest.raises(UnknownNameError, match="unknown generator 'b'"):
        Presentation(("a",), (word("a b"),))


def test_first_scripted_step_replaces_b():
    steps = reduction_steps(Family_Id.M24, 3)
    assert steps[0].eliminated is None
    assert steps[1].eliminated == "b1"
    p = steps[1].presentation
    assert "b1" not in p.generators
    assert any(cyclically_equal(r, word("a1 -c2 -c1 -c1")) for r in p.relators)
    assert [step.eliminated for step in steps[1:]] == ["b1", "b2", "b3", "a1", "a2", "a3", "d"]


def test_reduced_m24_2():
    p = reduced_family_presentation(Family_Id.M24, 2)
    assert p.generators == ("c1", "c2")
    expected = Presentation(p.generators, (word("c1 c1 c1 c2 c2 c2"), word("c1 c1 c2 c1 c1 -c2 -c2 -c1 -c2 -c2")))
    assert p.cyclic_relators() == expected.cyclic_relators()


@pytest.mark.parametrize("family", list(Family_Id))
@pytest.mark.parametrize("n", range(1, 7))
def test_reduction_keeps_c_generators(family, n):
    p = reduced_family_presentation(family, n)
    assert p.generators == tuple(f"c{i}" for i in range(1, n + 1))


@pytest.mark.parametrize("n", range(1, 9))
def test_product_relator_matches_display(n):
    assert product_relator_matches_display(n)


def test_product_relator_m24_3():
    mechanical = word("c1 c1 c2 c2 c2 c3 c3 c3 c1")
    assert cyclically_equal(product_relator(3), mechanical)
    assert cyclically_equal(displayed_product_relator(3), mechanical)


@pytest.mark.parametrize("family", list(Family_Id))
@pytest.mark.parametrize("n", range(1, 13))
def test_scripted_steps_preserve_h1(family, n):
    groups = {h1(step.presentation) for step in reduction_steps(family, n)}
    assert len(groups) == 1


def test_simplify_preserves_h1():
    p = presentation_from_pairings(build_m25(4))
    simple = simplify(p)
    assert len(simple.generators) < len(p.generators)
    assert h1(simple) == h1(p)


def test_presets():
    g = preset_presentation(Preset_Id.G25, 3)
    assert (len(g.generators), len(g.relators)) == (10, 10)
    seifert = preset_presentation(Preset_Id.SEIFERT_M24_2)
    assert seifert.generators == ("x", "y", "z", "h")
    assert word("x x x h") in seifert.relators
    assert word("z z z -h") in seifert.relators
    h = preset_presentation(Preset_Id.H25, 4)
    assert word("x2 y2") in h.relators
    assert word("x4 y4") in h.relators
    with pytest.raises(DomainError):
        preset_presentation(Preset_Id.H25, 3)
    with pytest.raises(DomainError):
        preset_presentation(Preset_Id.G25, 0)


def route_groups(family: Family_Id, n: int) -> dict[str, AbelianGroup]:
    complex_ = build(family, n)
    routes = {
        "pairing": presentation_from_pairings(complex_),
        "cw first": presentation_from_cw(complex_, Tree_Strategy.FIRST),
        "cw last": presentation_from_cw(complex_, Tree_Strategy.LAST),
        "reduced": reduced_family_presentation(family, n),
    }
    if family == Family_Id.M24:
        routes["dual"] = preset_presentation(Preset_Id.DUAL24, n)
    else:
        routes["preset"] = preset_presentation(Preset_Id.G25 if n % 2 else Preset_Id.H25, n)
    return {route: h1(p) for route, p in routes.items()}


@pytest.mark.parametrize("family", list(Family_Id))
@pytest.mark.parametrize("n", range(1, 13))
def test_extraction_routes_agree(family, n):
    groups = route_groups(family, n)
    assert len(set(groups.values())) == 1, groups
