import math
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from compass import dsl
from compass.dsl import (
    CallExpr,
    Emit,
    Given,
    Let,
    LexError,
    NameArg,
    NumberArg,
    ParseError,
    ScriptArityError,
    ScriptNameError,
    ScriptRuntimeError,
    ScriptTypeError,
    SelectorArg,
    format_script,
    interpret,
    parse_source,
    run_source,
    tokenize,
)
from compass.program import Selector, purity_audit

CORPUS = Path(__file__).parent / "corpus"

SQRT3_2 = math.sqrt(3.0) / 2.0
SQRT15_4 = math.sqrt(15.0) / 4.0
SQRT075 = math.sqrt(0.75)

# expected "name -> (x, y)" per good corpus script, at 1e-6 unless noted
GOOD_EXPECTED = {
    "01-apex.compass": {"C": (0.5, SQRT3_2)},
    "02-extend.compass": {"minus_one": (-1.0, 0.0), "two": (2.0, 0.0)},
    "03-midpoint.compass": {"M": (1.5, 0.0)},
    "04-diameter.compass": {"X": (0.0, 0.0), "Y": (2.0, 0.0)},
    "05-foot.compass": {"H": (1.0, 0.0)},
    "06-invert-exterior.compass": {"I": (0.75, 0.75)},
    "07-invert-interior.compass": {"J": (2.0, 0.0)},
    "08-linexline.compass": {"S": (1.0, 1.0)},
    "09-linexcircle.compass": {"X": (SQRT075, 0.5), "Y": (-SQRT075, 0.5)},
    "10-linexcircle-diameter.compass": {"X": (1.0, 0.0), "Y": (-1.0, 0.0)},
    "11-conjugate.compass": {"M1": (-1.0, 0.0), "Al": (0.75, SQRT15_4),
                             "Ar": (0.75, -SQRT15_4), "Astar": (0.75, -SQRT15_4)},
    "12-field.compass": {"T": (2.0, 0.0), "F": (4.0, 0.0), "N1": (-1.0, 0.0),
                         "H": (0.5, 0.0), "S": (3.0, 0.0)},
    "13-nth.compass": {"Q": (2.0, 1.0)},
}

BAD_EXPECTED = {
    "bad01.compass": (1, 9),
    "bad02.compass": (3, 20),
    "bad03.compass": (2, 19),
    "bad04.compass": (2, 13),
    "bad05.compass": (1, 14),
    "bad06.compass": (2, 5),
    "bad07.compass": (2, 9),
    "bad08.compass": (1, 18),
    "bad09.compass": (1, 1),
    "bad10.compass": (3, 22),
    "bad11.compass": (2, 6),
    "bad12.compass": (2, 8),
}


# --- lexer ----------------------------------------------------------------------

def kinds_of(source):
    return [t.kind for t in tokenize(source)]


def test_tokenize_given():
    toks = tokenize("given A = (0, 1)")
    assert [t.kind for t in toks] == ["Keyword", "Ident", "Punct", "Punct",
                                      "Number", "Punct", "Number", "Punct",
                                      "Eof"]
    assert toks[0].lexeme == "given"
    assert toks[0].line == 1 and toks[0].column == 1


def test_tokenize_comment_only_line():
    assert kinds_of("# comment only\n") == ["Newline", "Eof"]


def test_tokenize_let_token_count():
    assert len(tokenize("let M = midpoint(A, B)")) == 10


def test_tokenize_numbers():
    toks = tokenize("given A = (-1.5e-3, +.25)")
    numbers = [t.lexeme for t in toks if t.kind == "Number"]
    assert numbers == ["-1.5e-3", "+.25"]
    assert float(numbers[0]) == -0.0015


def test_tokenize_rejects_overflow():
    with pytest.raises(LexError):
        tokenize("given A = (1e999, 0)")


def test_tokenize_crlf():
    toks = tokenize("given A = (0, 0)\r\ngiven B = (1, 0)\r\n")
    assert sum(1 for t in toks if t.kind == "Newline") == 2
    assert toks[-1].kind == "Eof"


def test_positions_are_monotone():
    toks = tokenize("given A = (0, 1)\nlet M = midpoint(A, A)\n")
    seen = [(t.line, t.column) for t in toks]
    assert seen == sorted(seen)


# --- parser ---------------------------------------------------------------------

def test_parse_midpoint_demo_script():
    src = ("# demo\n"
           "given A = (0, 0)\n"
           "given B = (1, 0)\n"
           "let M = midpoint(A, B)\n"
           "emit points \"-\"\n"
           "emit svg \"m.svg\"\n")
    ast = parse_source(src)
    assert len(ast) == 5
    assert isinstance(ast[2], Let) and ast[2].call.op == "midpoint"
    assert ast[3] == Emit("points", "-")


def test_parse_two_name_let():
    (stmt,) = parse_source("let X, Y = intersect(c1, c2)\n")
    assert stmt.names == ("X", "Y")
    assert stmt.call == CallExpr("intersect", (NameArg("c1"), NameArg("c2")))


def test_parse_selector_and_number_args():
    (stmt,) = parse_source("let P = apex(A, B, right)\n")
    assert stmt.call.args[2] == SelectorArg(Selector.RIGHT)
    (stmt,) = parse_source("let Q = nth(A, B, 12)\n")
    assert stmt.call.args[2] == NumberArg(12.0)


def test_parse_missing_comma():
    with pytest.raises(ParseError) as err:
        parse_source("let M = midpoint(A B)")
    assert err.value.line == 1 and err.value.column == 20


@pytest.mark.parametrize("name", sorted(BAD_EXPECTED))
def test_malformed_corpus_positions(name):
    source = (CORPUS / "bad" / name).read_text()
    with pytest.raises((LexError, ParseError)) as err:
        parse_source(source)
    assert (err.value.line, err.value.column) == BAD_EXPECTED[name]
    assert f"line {err.value.line}:" in str(err.value)


# --- pretty printer round trip ---------------------------------------------------

@pytest.mark.parametrize("name", sorted(GOOD_EXPECTED))
def test_corpus_round_trip(name):
    ast = parse_source((CORPUS / "good" / name).read_text())
    assert parse_source(format_script(ast)) == ast


_ident = st.from_regex(r"[A-Za-z_][A-Za-z0-9_]{0,8}", fullmatch=True).filter(
    lambda s: s not in dsl.KEYWORDS)
_number = st.floats(allow_nan=False, allow_infinity=False,
                    min_value=-1e12, max_value=1e12)
_arg = st.one_of(
    st.builds(NameArg, _ident),
    st.builds(NumberArg, _number),
    st.builds(SelectorArg, st.sampled_from(list(Selector))))
_stmt = st.one_of(
    st.builds(Given, _ident, _number, _number),
    st.builds(Let,
              st.lists(_ident, min_size=1, max_size=2).map(tuple),
              st.builds(CallExpr, st.sampled_from(sorted(dsl.OP_NAMES)),
                        st.lists(_arg, max_size=4).map(tuple))),
    st.builds(Emit, st.sampled_from(["svg", "trace", "points"]),
              st.from_regex(r"[A-Za-z0-9._/-]{1,12}", fullmatch=True)))


@given(st.lists(_stmt, max_size=8))
@settings(max_examples=120, deadline=None)
def test_random_ast_round_trip(statements):
    printed = format_script(statements)
    assert parse_source(printed) == statements


# --- interpreter ------------------------------------------------------------------

@pytest.mark.parametrize("name", sorted(GOOD_EXPECTED))
def test_good_corpus_runs_green(name):
    result = run_source((CORPUS / "good" / name).read_text())
    for point_name, (x, y) in GOOD_EXPECTED[name].items():
        got = result.point(point_name)
        assert math.hypot(got.x - x, got.y - y) <= 1e-6, (name, point_name, got)
    purity_audit(result.trace)


def test_interpret_is_pure_no_files(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    result = run_source("given A = (0, 0)\n"
                        "given B = (1, 0)\n"
                        "let M = midpoint(A, B)\n"
                        "emit svg \"figure.svg\"\n")
    assert result.emits[0].target == "svg"
    assert list(tmp_path.iterdir()) == []  # interpretation wrote nothing


def test_unbound_name():
    with pytest.raises(ScriptNameError) as err:
        run_source("given A = (0, 0)\n"
                   "given B = (1, 0)\n"
                   "let M = midpoint(A, Q)\n")
    assert err.value.line == 3


def test_duplicate_binding():
    with pytest.raises(ScriptNameError) as err:
        run_source("given A = (0, 0)\ngiven B = (1, 0)\n"
                   "let A = extend(B, A)\n")
    assert err.value.line == 3


def test_arity_mismatch():
    with pytest.raises(ScriptArityError) as err:
        run_source("given A = (0, 0)\ngiven B = (1, 0)\n"
                   "let M = midpoint(A)\n")
    assert err.value.line == 3
    with pytest.raises(ScriptArityError):
        run_source("given A = (0, 0)\ngiven B = (1, 0)\n"
                   "let M, N = midpoint(A, B)\n")


def test_type_mismatch_point_vs_circle():
    with pytest.raises(ScriptTypeError) as err:
        run_source("given A = (0, 0)\ngiven B = (1, 0)\n"
                   "let c = circle(A, B)\nlet M = midpoint(A, c)\n")
    assert err.value.line == 4


def test_unknown_operation():
    with pytest.raises(ScriptNameError) as err:
        run_source("given A = (0, 0)\nlet M = trisect(A, A)\n")
    assert err.value.line == 2


def test_construction_error_carries_line():
    with pytest.raises(ScriptRuntimeError) as err:
        run_source("given A = (0, 0)\ngiven B = (0, 0)\n"
                   "let M = midpoint(A, B)\n")
    assert err.value.line == 3
    assert "DegenerateCircle" in str(err.value)


def test_intersect_selector_defaults():
    src = ("given A = (-1, 0)\ngiven B = (1, 0)\n"
           "let c1 = circle(A, B)\nlet c2 = circle(B, A)\n")
    left_only = run_source(src + "let X = intersect(c1, c2)\n")
    explicit = run_source(src + "let X = intersect(c1, c2, left)\n")
    assert left_only.point("X") == explicit.point("X")
    assert left_only.point("X").y > 0


def test_field_op_needs_pair_basis():
    with pytest.raises(ScriptTypeError) as err:
        run_source("given A = (0, 0)\ngiven B = (1, 0)\ngiven C = (0, 1)\n"
                   "let W = extend(C, B)\nlet M = mul(W, B)\n")
    assert err.value.line == 5
    with pytest.raises(ScriptTypeError):
        run_source("given A = (0, 0)\nlet H = half()\n")


def test_nth_rejects_non_integer():
    with pytest.raises(ScriptTypeError):
        run_source("given A = (0, 0)\ngiven B = (1, 0)\n"
                   "let Q = nth(A, B, 2.5)\n")


def test_emit_requests_in_order():
    result = run_source("given A = (0, 0)\ngiven B = (1, 0)\n"
                        "emit points \"a.txt\"\n"
                        "let M = midpoint(A, B)\n"
                        "emit trace \"b.json\"\n")
    assert [(e.target, e.path) for e in result.emits] == [
        ("points", "a.txt"), ("trace", "b.json")]


def test_linexcircle_dispatches_on_center():
    # same op name covers both cases; the center-on-line variant kicks in
    result = run_source(
        "given O = (0, 0)\ngiven A = (2, 0)\ngiven D = (0, 1)\n"
        "let X, Y = linexcircle(O, A, O, D)\n")
    xs = sorted((result.point("X").x, result.point("Y").x))
    assert xs[0] == pytest.approx(-1.0, abs=1e-6)
    assert xs[1] == pytest.approx(1.0, abs=1e-6)
