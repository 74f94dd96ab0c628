import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from edeval.corpus import (
    Document,
    Manifest,
    ReferenceSet,
    Token,
    load_manifest,
    load_plain,
    match_eval_subset,
    parse_annotated,
    parse_plain,
    resolve_manifest,
    serialize_annotated,
    serialize_plain,
)
from edeval.errors import ParseError, ShapeError

from helpers import plain_doc

# -- strategies -------------------------------------------------------------

surface_st = st.text(alphabet="abcdeäöüß'-", min_size=1, max_size=5)
field_st = st.text(alphabet="abcde fg", min_size=1, max_size=5)
ann_token_st = st.builds(Token, surface_st, field_st, field_st)
ann_segment_st = st.lists(ann_token_st, max_size=6)
ann_doc_st = st.builds(
    Document.from_tokens, st.lists(ann_segment_st, max_size=6)
)
plain_line_st = st.lists(surface_st, max_size=6)


# -- plain format -----------------------------------------------------------

def test_parse_plain_basic():
    doc = parse_plain("a b c\nd e\n")
    assert [[t.surface for t in s.tokens] for s in doc] == [["a", "b", "c"], ["d", "e"]]
    assert [s.id for s in doc] == [0, 1]


def test_parse_plain_empty_input():
    assert len(parse_plain("")) == 0


def test_parse_plain_trailing_newline_optional():
    assert len(parse_plain("a b")) == 1
    assert len(parse_plain("a b\n")) == 1


def test_parse_plain_double_space_drops_empty_fields():
    doc = parse_plain("x  y\n")
    assert doc.segments[0].surfaces() == ("x", "y")


def test_parse_plain_empty_line_is_empty_segment():
    doc = parse_plain("a\n\nb\n")
    assert [len(s) for s in doc] == [1, 0, 1]


@given(st.lists(plain_line_st, max_size=8))
def test_plain_roundtrip_and_token_count(lines):
    doc = plain_doc(lines)
    text = serialize_plain(doc)
    reparsed = parse_plain(text)
    assert reparsed == doc
    # parse/serialize consistency: token totals match a whitespace split
    assert sum(len(s) for s in doc) == len(text.split())


@given(st.text(alphabet="abc \n", max_size=40))
def test_parse_plain_matches_whitespace_split_oracle(text):
    doc = parse_plain(text)
    flat = [t.surface for s in doc for t in s.tokens]
    assert flat == text.split()


# -- annotated format -------------------------------------------------------

def test_parse_annotated_basic():
    doc = parse_annotated("geht\tgehen\tV\n\nHaus\tHaus\tN\n")
    assert len(doc) == 2
    assert doc.annotated
    tok = doc.segments[0].tokens[0]
    assert (tok.surface, tok.lemma, tok.pos) == ("geht", "gehen", "V")


def test_parse_annotated_bad_field_count():
    with pytest.raises(ParseError, match="line 1"):
        parse_annotated("bad line with no tabs\n")


def test_parse_annotated_error_line_numbers():
    text = "a\ta\tX\nb\tb\tX\n\nc\tc\tX\nboom\n"
    with pytest.raises(ParseError, match="line 5"):
        parse_annotated(text)


def test_parse_annotated_line_numbers_after_empty_segment():
    # segment [a], empty segment (lines 2-4 are blank), then a bad line 5
    with pytest.raises(ParseError, match="line 5"):
        parse_annotated("a\ta\tX\n\n\n\nboom\n")


def test_parse_annotated_empty_field():
    with pytest.raises(ParseError, match="empty lemma"):
        parse_annotated("a\t\tX\n")


def test_parse_annotated_surface_whitespace():
    with pytest.raises(ParseError, match="whitespace"):
        parse_annotated("a b\tc\tX\n")


def test_parse_annotated_double_blank_is_empty_segment():
    doc = parse_annotated("a\ta\tX\n\n\n\nb\tb\tX\n")
    assert [len(s) for s in doc] == [1, 0, 1]


def test_parse_annotated_three_newlines_is_error():
    with pytest.raises(ParseError):
        parse_annotated("a\ta\tX\n\n\nb\tb\tX\n")


def test_parse_annotated_trailing_blank_line_permitted():
    assert len(parse_annotated("a\ta\tX\n\n")) == 1
    assert len(parse_annotated("a\ta\tX\n")) == 1
    assert len(parse_annotated("a\ta\tX")) == 1


def test_parse_annotated_empty():
    assert len(parse_annotated("")) == 0


def test_serialize_annotated_requires_annotation():
    with pytest.raises(Exception, match="annotated"):
        serialize_annotated(plain_doc([["a"]]))


@given(ann_doc_st)
@settings(max_examples=300)
def test_annotated_roundtrip_identity(doc):
    text = serialize_annotated(doc)
    assert parse_annotated(text) == doc
    # byte-exactness in the other direction too
    assert serialize_annotated(parse_annotated(text)) == text


def test_annotated_roundtrip_empty_segments():
    for token_lists in ([[]], [[], []], [[("a", "a", "X")], []], [[], [("a", "a", "X")]]):
        doc = Document.from_tokens(
            [Token(s, l, p) for s, l, p in seg] for seg in token_lists
        )
        assert parse_annotated(serialize_annotated(doc)) == doc


def test_load_reports_decode_error_offset(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_bytes(b"ok tok\n\xff\xfe\n")
    with pytest.raises(ParseError, match="byte offset 7"):
        load_plain(path)


# -- token/document invariants ----------------------------------------------

def test_token_validation():
    with pytest.raises(ValueError):
        Token("")
    with pytest.raises(ValueError):
        Token("a b")
    with pytest.raises(ValueError):
        Token("a\tb")
    with pytest.raises(ValueError):
        Token("a", lemma="")
    with pytest.raises(ValueError):
        Token("a", lemma="x\ty")


def test_document_annotated_flag():
    assert not plain_doc([["a"]]).annotated
    assert parse_annotated("a\ta\tX\n").annotated
    assert parse_annotated("").annotated  # vacuously


def test_reference_set_validation():
    with pytest.raises(ValueError):
        ReferenceSet(())
    with pytest.raises(ShapeError):
        ReferenceSet((plain_doc([["a"]]), plain_doc([["a"], ["b"]])))


# -- evaluation-subset matching ----------------------------------------------

def test_subset_single_match():
    cand = plain_doc([["a", "b"], ["c", "d"]])
    anchors = plain_doc([["c", "d"], ["x", "y"]])
    assert match_eval_subset(cand, anchors) == [(1, 0)]


def test_subset_empty_candidate():
    assert match_eval_subset(plain_doc([]), plain_doc([["a"]])) == []


def test_subset_duplicates_lowest_anchor():
    cand = plain_doc([["c", "d"], ["z"], ["c", "d"]])
    anchors = plain_doc([["q"], ["c", "d"], ["c", "d"]])
    assert match_eval_subset(cand, anchors) == [(0, 1), (2, 1)]


@given(
    st.lists(st.lists(st.sampled_from("ab"), max_size=2), max_size=6),
    st.lists(st.lists(st.sampled_from("ab"), max_size=2), max_size=6),
)
def test_subset_matches_bruteforce(cand_lines, anchor_lines):
    cand = plain_doc(cand_lines)
    anchors = plain_doc(anchor_lines)
    expected = []
    for i, cl in enumerate(cand_lines):
        for j, al in enumerate(anchor_lines):
            if cl == al:
                expected.append((i, j))
                break
    got = match_eval_subset(cand, anchors)
    assert got == expected
    assert len(got) <= len(cand_lines)
    for ci, ai in got:
        assert cand.segments[ci].surfaces() == anchors.segments[ai].surfaces()


# -- manifest -----------------------------------------------------------------

def test_manifest_roundtrip(tmp_path):
    (tmp_path / "sys_a.txt").write_text("a b\n", encoding="utf-8")
    (tmp_path / "sys_b.txt").write_text("a c\n", encoding="utf-8")
    (tmp_path / "ref.txt").write_text("a b\n", encoding="utf-8")
    manifest_path = tmp_path / "manifest.json"
    manifest_path.write_text(
        '{"systems": {"A": "sys_a.txt", "B": "sys_b.txt"}, '
        '"references": ["ref.txt"], "baseline": "A"}',
        encoding="utf-8",
    )
    manifest = load_manifest(manifest_path)
    assert manifest.baseline == "A"
    systems, refset = resolve_manifest(manifest)
    assert set(systems) == {"A", "B"}
    assert len(refset) == 1


def test_manifest_baseline_must_be_a_system():
    with pytest.raises(ParseError, match="baseline"):
        Manifest({"A": "a.txt"}, ["r.txt"], "missing")


def test_manifest_unequal_counts(tmp_path):
    (tmp_path / "sys_a.txt").write_text("a b\n", encoding="utf-8")
    (tmp_path / "ref.txt").write_text("a b\nc d\n", encoding="utf-8")
    manifest_path = tmp_path / "m.json"
    manifest_path.write_text(
        '{"systems": {"A": "sys_a.txt"}, "references": ["ref.txt"], "baseline": "A"}',
        encoding="utf-8",
    )
    with pytest.raises(ShapeError, match="segment counts"):
        resolve_manifest(load_manifest(manifest_path))
