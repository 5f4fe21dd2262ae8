import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qpbw import catalog, twist
from qpbw.cli import run_command
from qpbw.engine import diamond_check
from qpbw.parse import Add, Gen, Mul, ParseError, UnknownGenerator, parse_element, parse_expression, to_source
from qpbw.presentation_io import FormatError, dumps, loads, read_presentation, write_presentation


def run(capsys, *argv):
    code = run_command(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_normalize_command(capsys):
    code, out, err = run(capsys, "normalize", "--algebra", "euclidean3", "--expr", "y2*x2")
    assert code == 0 and out.strip() == "x2*y2 - qhat*x1*y1" and err == ""


def test_normalize_trace_goes_to_stderr(capsys):
    code, out, err = run(capsys, "normalize", "--algebra", "euclidean3", "--expr", "y2*x2", "--trace")
    assert code == 0 and out.strip() == "x2*y2 - qhat*x1*y1"
    assert err.count("rewrite") == 1 and "y2*x2" in err


def test_verify_exit_codes(capsys):
    assert run(capsys, "verify", "thm-twisting-D", "--rank", "3")[0] == 0
    code, out, err = run(capsys, "verify", "prop-frt-kernel", "--rank", "99999")
    assert code == 2 and out == "" and "max-rank" in err
    assert run(capsys, "verify", "thm-nothing", "--rank", "3")[0] == 2
    assert run(capsys, "verify", "thm-twisting-D", "--rank", "2")[0] == 2
    assert run(capsys, "verify", "thm-twisting-D")[0] == 2


def test_rank_guard_runs_before_any_work(capsys, monkeypatch):
    def boom(*a, **k):
        raise AssertionError("computation started")

    monkeypatch.setattr(twist, "verify_claim", boom)
    assert run(capsys, "verify", "prop-frt-kernel", "--rank", "99999")[0] == 2
    assert run(capsys, "report", "--all", "--rank", "99999")[0] == 2


def test_failing_claim_exits_one(capsys, monkeypatch):
    original = catalog.xalgebra

    def dropped(n):
        p = original(n)
        return type(p)(p.name, p.family, p.rank, p.generators, p.relations[1:], p.provenance)

    monkeypatch.setattr(catalog, "xalgebra", dropped)
    code, out, _ = run(capsys, "verify", "prop-frt-kernel", "--rank", "3", "--json", "--no-meta")
    assert code == 1 and json.loads(out)["status"] != "pass"


def test_parse_errors_exit_two(capsys):
    code, out, err = run(capsys, "normalize", "--algebra", "euclidean3", "--expr", "w1*x1")
    assert code == 2 and out == "" and "w1" in err
    assert run(capsys, "normalize", "--algebra", "euclidean3", "--expr", "x1*(y1")[0] == 2
    assert run(capsys, "normalize", "--algebra", "nonsense", "--expr", "x1")[0] == 2


def test_verify_json_is_byte_stable(capsys):
    a = run(capsys, "verify", "thm-twisting-D", "--rank", "3", "--json", "--no-meta")[1]
    b = run(capsys, "verify", "thm-twisting-D", "--rank", "3", "--json", "--no-meta")[1]
    assert a == b
    bundle = json.loads(a)
    assert set(bundle) == {"claim", "rank", "status", "dimensions", "gap_basis", "failed_triples", "steps"}
    with_meta = json.loads(run(capsys, "verify", "thm-twisting-D", "--rank", "3", "--json")[1])
    assert "elapsed_seconds" in with_meta


def test_report_all_sorted(capsys):
    code, out, _ = run(capsys, "report", "--all", "--rank", "3", "--json", "--no-meta")
    bundles = json.loads(out)
    assert code == 0
    assert [b["claim"] for b in bundles] == sorted(twist.claim_ids())
    assert all(b["status"] == "pass" for b in bundles)


def test_build_then_read_round_trip(tmp_path, capsys):
    path = tmp_path / "e3.json"
    assert run(capsys, "build", "euclidean", "--rank", "3", "--out", str(path))[0] == 0
    p = read_presentation(path)
    e3 = catalog.euclidean(3)
    assert p.relations == e3.relations and p.generators == e3.generators and p.names == e3.names
    assert dumps(p) == path.read_text()


@pytest.mark.parametrize("name,rank", [("affineD", 3), ("xalgebra", 2), ("quantum_matrices", 3), ("smashA", 2)])
def test_text_round_trip_is_bit_exact(name, rank):
    p = catalog.build_named(name, rank)
    text = dumps(p)
    assert dumps(loads(text)) == text


def test_truncated_file_rejected(tmp_path):
    text = dumps(catalog.euclidean(3))
    with pytest.raises(FormatError):
        loads(text[: len(text) // 2])
    data = json.loads(text)
    data["colour"] = "blue"
    with pytest.raises(FormatError, match="colour"):
        loads(json.dumps(data))
    del data["colour"]
    data["version"] = 99
    with pytest.raises(FormatError):
        loads(json.dumps(data))


def test_read_then_confluence_matches_in_memory(tmp_path, capsys):
    path = tmp_path / "x3.json"
    write_presentation(catalog.xalgebra(3), path)
    code, out, _ = run(capsys, "confluence", "--algebra", str(path), "--json")
    from_file = json.loads(out)
    p = catalog.xalgebra(3)
    in_memory = {"algebra": p.name, "rank": p.rank, "generators": p.size,
                 "failed_triples": [list(t) for t in diamond_check(p.rewrite_system())]}
    assert code == 0 and from_file == in_memory
    assert json.loads(run(capsys, "confluence", "--algebra", "xalgebra3", "--json")[1]) == in_memory


def test_parser_examples():
    names = catalog.euclidean(3).names
    node = parse_expression("y2*x2", names)
    assert isinstance(node, Mul) and all(isinstance(f, Gen) for f in (node.left, node.right))
    x = parse_element("qhat*x1*y1 + q^-2*x2*y2", names)
    assert len(x) == 2
    with pytest.raises(UnknownGenerator) as info:
        parse_expression("w1*x1", names)
    assert info.value.pos == 0
    assert isinstance(parse_expression("x1 - x2", names), Add)
    with pytest.raises(ParseError):
        parse_expression("x1 +", names)


def test_parser_reads_bracketed_and_barred_names():
    x = catalog.xalgebra(3)
    assert parse_element("X[2,5]", x.names).words() == [(x.index("X[2,5]"),)]
    a = catalog.affineD(3)
    assert parse_element("Xb3*X3", a.names).words() == [(a.index("Xb3"), a.index("X3"))]


ALPHABET = ["x1", "x2", "y1", "Xb3", "X[1,2]"]
atoms = st.one_of(st.sampled_from(ALPHABET), st.integers(0, 9).map(str), st.sampled_from(["q", "q^-2", "qhat"]))


def _expr(children):
    return st.one_of(
        st.tuples(children, st.sampled_from([" + ", " - ", "*"]), children).map(lambda t: "".join(t)),
        children.map(lambda s: f"({s})"),
        children.map(lambda s: f"(-{s})"),
    )


@settings(max_examples=150, deadline=None)
@given(st.recursive(atoms, _expr, max_leaves=8))
def test_parse_print_parse_fixed_point(src):
    tree = parse_expression(src, ALPHABET)
    printed = to_source(tree)
    assert parse_expression(printed, ALPHABET) == tree
    assert to_source(parse_expression(printed, ALPHABET)) == printed
    assert parse_element(printed, ALPHABET) == parse_element(src, ALPHABET)
