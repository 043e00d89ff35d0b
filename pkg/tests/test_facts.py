import pytest

from modgon.facts import (Fact, FactError, parse_curve_ref, parse_facts,
                          parse_generator_token)


def test_parse_generator_token():
    assert parse_generator_token("-1", 21) == 20
    assert parse_generator_token("2^13", 53) == pow(2, 13, 53)
    assert parse_generator_token("32", 121) == 32


@pytest.mark.parametrize("bad", ["^-1", "-1.4", "2^-3", "x", "1e3"])
def test_malformed_tokens_rejected(bad):
    with pytest.raises(FactError):
        parse_generator_token(bad, 72)


def test_parse_curve_ref():
    delta = parse_curve_ref("21:8")
    assert delta.N == 21
    assert delta.elements == (1, 8, 13, 20)
    # -1 is always included even if not written
    assert 20 in parse_curve_ref("21:4").elements


def test_parse_facts_lines_and_comments():
    text = """
    # comment
    global_class rational_cusp source=cusp
    point_count 71:5 5 2 182 source=tbl  # trailing comment
    """
    facts = parse_facts(text)
    assert len(facts) == 2
    assert facts[1].kind == "point_count"
    assert facts[1].payload == ("71:5", "5", "2", "182")


def test_source_is_mandatory():
    with pytest.raises(FactError):
        parse_facts("global_class rational_cusp\n")


def test_error_reports_line_number():
    with pytest.raises(FactError, match="line 2"):
        parse_facts("global_class rational_cusp source=x\n"
                    "map 72:^-1,13,25 P1 4 source=y\n")


def test_unknown_kind_rejected():
    with pytest.raises(FactError):
        Fact("frobnicate", ("x",), "src")


def test_bad_payloads_rejected():
    for line in [
        "gonality 29:12 R lo 5 source=s",       # bad field
        "gonality 29:12 Q sideways 5 source=s",  # bad bound kind
        "point_count 71:5 5 2 source=s",         # missing count
        "betti22 29:12 0 source=s",              # missing value
        "map 29:12 P1 0 source=s",               # degree must be positive
    ]:
        with pytest.raises(FactError):
            parse_facts(line)


def test_shipped_facts_parse(paper_facts):
    kinds = {f.kind for f in paper_facts}
    assert {"global_class", "classification", "point_count", "fp_lower",
            "map", "gonality", "genus", "betti22"} <= kinds
    assert all(f.source for f in paper_facts)
