"""Static checker: all violations reported, with the right codes and spans."""

from __future__ import annotations

from policy_lab.dsl import check, parse_program


def codes(source, vocabulary, inputs=None):
    return [v.code for v in check(parse_program(source), vocabulary, inputs=inputs)]


def test_clean_script_empty_list(toy_vocabulary):
    source = "out.alpha.eolRecyclingMT = out.alpha.eolRecyclingMT + 1;"
    assert check(parse_program(source), toy_vocabulary) == []


def test_unknown_attribute(toy_vocabulary):
    assert codes("out.alpha.bogusMT = 1;", toy_vocabulary) == ["UnknownAttribute"]


def test_unknown_region(toy_vocabulary):
    assert codes("out.mars.eolRecyclingMT = 1;", toy_vocabulary) == ["UnknownRegion"]


def test_use_before_decl(toy_vocabulary):
    assert codes("var x = y + 1;", toy_vocabulary) == ["UseBeforeDecl"]


def test_decl_then_use_ok(toy_vocabulary):
    assert codes("var y = 1; var x = y + 1;", toy_vocabulary) == []


def test_duplicate_decl(toy_vocabulary):
    assert codes("var x = 1; var x = 2;", toy_vocabulary) == ["DuplicateDecl"]


def test_branch_local_not_visible_after_block(toy_vocabulary):
    source = """
    if 1 { var inner = 2; }
    var outer = inner;
    """
    assert codes(source, toy_vocabulary) == ["UseBeforeDecl"]


def test_outer_local_visible_inside_block(toy_vocabulary):
    source = """
    var outer = 1;
    if outer { out.alpha.eolRecyclingMT = outer; }
    """
    assert codes(source, toy_vocabulary) == []


def test_duplicate_decl_across_sibling_branches(toy_vocabulary):
    source = "if 1 { var x = 1; } else { var x = 2; }"
    assert codes(source, toy_vocabulary) == ["DuplicateDecl"]


def test_write_to_global_rejected(toy_vocabulary):
    assert codes("out.global.eolRecyclingMT = 1;", toy_vocabulary) == [
        "ReadOnlyAddress"
    ]


def test_read_of_global_allowed(toy_vocabulary):
    source = "out.alpha.eolRecyclingMT = out.global.eolRecyclingMT * 10%;"
    assert codes(source, toy_vocabulary) == []


def test_write_to_input_rejected(toy_vocabulary):
    assert codes("in.knob = 1;", toy_vocabulary, inputs={"knob"}) == ["WriteToInput"]


def test_lifecycle_requires_consumption_sector(toy_vocabulary):
    assert codes(
        "var years = lifecycle([out.alpha.eolRecyclingMT]);", toy_vocabulary
    ) == ["NotAConsumptionSector"]


def test_lifecycle_of_sector_ok(toy_vocabulary):
    assert (
        codes(
            "var years = lifecycle([out.alpha.consumptionPackagingMT]);",
            toy_vocabulary,
        )
        == []
    )


def test_unknown_input_with_declared_set(toy_vocabulary):
    assert codes(
        "out.alpha.eolRecyclingMT = in.mystery;", toy_vocabulary, inputs={"knob"}
    ) == ["UnknownInput"]


def test_any_input_accepted_without_set(toy_vocabulary):
    assert (
        codes("out.alpha.eolRecyclingMT = in.mystery;", toy_vocabulary, inputs=None)
        == []
    )


def test_all_violations_reported(toy_vocabulary):
    source = """
    out.alpha.bogusMT = missing + 1;
    out.global.eolLandfillMT = 2;
    """
    got = sorted(codes(source, toy_vocabulary))
    assert got == ["ReadOnlyAddress", "UnknownAttribute", "UseBeforeDecl"]


def test_violation_spans_point_at_problem(toy_vocabulary):
    source = "out.alpha.bogusMT = 1;"
    (violation,) = check(parse_program(source), toy_vocabulary)
    assert source[violation.span.start : violation.span.end] == "out.alpha.bogusMT"


def test_change_distribute_limit_targets_checked(toy_vocabulary):
    source = """
    change out.alpha.nopeMT by 1 over 2020 to 2021;
    distribute 1 across [out.beta.alsoNopeMT, in.knob];
    limit out.global.eolRecyclingMT to [0, 1];
    """
    got = sorted(codes(source, toy_vocabulary, inputs={"knob"}))
    assert got == [
        "ReadOnlyAddress",
        "UnknownAttribute",
        "UnknownAttribute",
        "WriteToInput",
    ]


def test_corpus_checks_clean(corpus_sources, desk_vocabulary):
    for name, source in corpus_sources.items():
        violations = check(
            parse_program(source, source_name=name), desk_vocabulary, inputs=None
        )
        assert violations == [], f"{name}: {[str(v) for v in violations]}"
