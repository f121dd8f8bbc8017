import io as stdio
import json
from pathlib import Path

import pytest

import oracles
from conftest import grp
from permtriples import CapacityError, InputError, NotNormalError, make_triple
from permtriples import io
from permtriples.cli import RunConfig, main, run

GOLDEN = Path(__file__).parent / "golden"


def write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(json.dumps(obj, indent=2))
    return str(path)


def invoke(*argv, capsys=None):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# file formats


def test_parse_group_file_examples(tmp_path):
    G = io.parse_group_file(write(tmp_path, "g.json", {"degree": 3, "generators": ["(1 2)", "(1 2 3)"]}))
    assert G.order() == 6
    T = io.parse_group_file(write(tmp_path, "t.json", {"degree": 2, "generators": []}))
    assert T.order() == 1 and T.degree == 2


def test_parse_group_file_errors(tmp_path):
    path = write(tmp_path, "bad.json", {"degree": 3, "generators": ["(1 2)", "(1 4)"]})
    with pytest.raises(InputError, match=r"bad\.json:5: .*point 4 exceeds degree 3"):
        io.parse_group_file(path)
    with pytest.raises(InputError, match="missing field 'generators'"):
        io.parse_group_file(write(tmp_path, "m.json", {"degree": 3}))
    with pytest.raises(InputError, match="positive integer"):
        io.parse_group_file(write(tmp_path, "d.json", {"degree": 0, "generators": []}))
    broken = tmp_path / "broken.json"
    broken.write_text('{"degree": 3,\n "generators": [}')
    with pytest.raises(InputError, match=r"broken\.json:2: invalid JSON"):
        io.parse_group_file(str(broken))
    with pytest.raises(InputError, match="cannot read"):
        io.parse_group_file(str(tmp_path / "nope.json"))


def test_triple_file_round_trip(tmp_path, S3):
    t = make_triple(S3, grp(3, "(2 3)"))
    path = write(tmp_path, "t.json", io.triple_to_json(t))
    back = io.parse_triple_file(path)
    assert back.G == t.G and back.H == t.H


def test_triple_file_invariant_errors(tmp_path):
    obj = {"group": {"degree": 4, "generators": ["(1 2)", "(1 2 3 4)"]}, "h_generators": ["(3 4)"]}
    with pytest.raises(NotNormalError):
        io.parse_triple_file(write(tmp_path, "t.json", obj))
    with pytest.raises(InputError, match="missing field 'h_generators'"):
        io.parse_triple_file(write(tmp_path, "u.json", {"group": obj["group"]}))


def test_group_json_round_trip(S4):
    assert io.group_from_json(io.group_to_json(S4)) == S4


def test_describe_group(S4, A4, V4):
    assert [io.describe_group(g) for g in (S4, A4, V4, grp(4, "(1 2)(3 4)"), grp(4))] == ["S4", "A4", "V4", "C2", "1"]


# commands


@pytest.fixture
def files(tmp_path):
    return {
        "s4": write(tmp_path, "s4.json", {"degree": 4, "generators": ["(1 2)", "(1 2 3 4)"]}),
        "h": write(tmp_path, "h.json", {"degree": 4, "generators": ["(1 2)(3 4)"]}),
        "c3": write(tmp_path, "c3.json", {"degree": 3, "generators": ["(1 2 3)"]}),
        "s3": write(tmp_path, "s3.json", {"degree": 3, "generators": ["(1 2)", "(1 2 3)"]}),
        "t12": write(tmp_path, "t12.json", {"degree": 3, "generators": ["(1 2)"]}),
        "d4": write(tmp_path, "d4.json", {"group": {"degree": 4, "generators": ["(1 2 3 4)", "(2 4)"]},
                                          "h_generators": ["(2 4)"]}),
        "s3t": write(tmp_path, "s3t.json", {"group": {"degree": 3, "generators": ["(1 2)", "(1 2 3)"]},
                                            "h_generators": ["(2 3)"]}),
    }


def test_subnormal_command(files, capsys):
    code, out, _ = invoke("subnormal", files["s4"], files["h"], capsys=capsys)
    assert code == 0 and "chain: H ◁ V4 ◁ S4" in out
    code, out, _ = invoke("subnormal", files["s4"], files["h"], "--format", "json", capsys=capsys)
    data = json.loads(out)
    assert data["subnormal"] and data["chain_orders"] == [2, 4, 24]


def test_orbit_command(files, capsys):
    code, out, _ = invoke("orbit", files["c3"], "--point", "1", capsys=capsys)
    assert code == 0 and out.strip() == "{1, 2, 3}"
    code, _, err = invoke("orbit", files["c3"], "--point", "4", capsys=capsys)
    assert code == 2 and "out of range" in err


def test_order_command(files, capsys):
    code, out, _ = invoke("order", files["s4"], "--format", "json", capsys=capsys)
    data = json.loads(out)
    assert code == 0 and data["order"] == 24 and data["base"] == [1, 2, 3]


def test_wielandt_command(files, capsys):
    code, out, _ = invoke("wielandt", files["s3"], files["t12"], "--format", "json", capsys=capsys)
    data = json.loads(out)
    assert code == 0
    assert data == {"hypothesis": False, "conclusion": False, "witness_g": "(2 3)", "conjugates_checked": 2}
    code, out, _ = invoke("wielandt", files["s3"], files["t12"], "--bound", "3", capsys=capsys)
    assert code == 3


def test_wielandt_sweep_command(capsys):
    code, out, _ = invoke("wielandt", "--max-degree", "4", "--jobs", "1", "--format", "json", capsys=capsys)
    data = json.loads(out)
    assert code == 0 and data["violations"] == [] and data["groups_checked"] == 9


def test_triple_commands(files, capsys):
    code, out, _ = invoke("triple-check", files["s3t"], "--format", "json", capsys=capsys)
    assert code == 0
    assert json.loads(out) == {"special": False, "trivial": False, "condition1": True,
                               "condition2": False, "failing_pair": [1, 2]}
    code, out, _ = invoke("splitting", files["d4"], "--format", "json", capsys=capsys)
    assert json.loads(out) == {"classes": [[1, 3], [2, 4]], "factor_degree": 2, "script_h_order": 4}
    code, out, _ = invoke("chain", files["d4"], "--point", "3", "--format", "json", capsys=capsys)
    data = json.loads(out)
    assert code == 0 and data["reached_h"] and data["orders"] == [2]
    code, out, _ = invoke("chain", files["s3t"], "--point", "2", capsys=capsys)
    assert "stalled" in out
    code, _, err = invoke("chain", files["s3t"], capsys=capsys)
    assert code == 2 and "--point" in err


def test_input_errors_exit_2(files, tmp_path, capsys):
    bad = write(tmp_path, "bad.json", {"degree": 3, "generators": ["(1 4)"]})
    code, _, err = invoke("order", bad, capsys=capsys)
    assert code == 2 and "bad.json:4" in err and "(1 4)" in err
    code, _, _ = invoke("subnormal", files["c3"], files["t12"], capsys=capsys)
    assert code == 2
    code, _, _ = invoke("search-special", "--max-degree", "9", capsys=capsys)
    assert code == 2


def test_capacity_errors_exit_3(capsys):
    code, _, err = invoke("search-special", "--max-degree", "4", "--bound", "10", "--jobs", "1", capsys=capsys)
    assert code == 3 and "capacity" in err


def test_search_special_matches_golden(capsys):
    code, out, _ = invoke("search-special", "--max-degree", "4", "--format", "json", "--jobs", "1", capsys=capsys)
    assert code == 0
    assert out == (GOLDEN / "search_special_d4.json").read_text()
    data = json.loads(out)
    assert data["degrees"] == [2, 3, 4] and data["counterexamples"] == []


def test_out_flag(tmp_path, capsys):
    target = tmp_path / "report.json"
    code, out, _ = invoke("catalog", "--max-degree", "3", "--format", "json", "--out", str(target), capsys=capsys)
    assert code == 0 and out == ""
    data = json.loads(target.read_text())
    assert [c["count"] for c in data["catalogs"]] == [1, 1, 2]
    assert data["catalogs"][2]["dedup"] == "conjugacy"


def test_triples_checked_matches_independent_count(capsys):
    code, out, _ = invoke("search-special", "--max-degree", "5", "--format", "json", "--jobs", "1", capsys=capsys)
    reported = json.loads(out)["triples_checked"]
    expected = 0
    for d in range(2, 6):
        for G in oracles.transitive_classes(d):
            stab = frozenset(g for g in G if g[0] == 0)
            expected += sum(1 for K in oracles.all_subgroups(stab) if oracles.is_normal(K, stab))
    assert reported == expected == 26


def test_text_and_json_verdicts_agree(files):
    cases = [
        ("subnormal", [files["s4"], files["h"]], {"subnormal": "subnormal: "}),
        ("subnormal", [files["s3"], files["t12"]], {"subnormal": "subnormal: "}),
        ("wielandt", [files["s3"], files["t12"]], {"hypothesis": "hypothesis: ", "conclusion": "conclusion: "}),
        ("wielandt", [files["s4"], files["h"]], {"hypothesis": "hypothesis: ", "conclusion": "conclusion: "}),
        ("triple-check", [files["s3t"]], {"special": "special: ", "trivial": "trivial: ",
                                          "condition1": "condition1: ", "condition2": "condition2: "}),
        ("triple-check", [files["d4"]], {"special": "special: ", "condition1": "condition1: "}),
    ]
    for command, inputs, keys in cases:
        outs = {}
        for fmt in ("text", "json"):
            buf = stdio.StringIO()
            run(RunConfig(command=command, inputs=inputs, output_format=fmt), stdout=buf, stderr=stdio.StringIO())
            outs[fmt] = buf.getvalue()
        data = json.loads(outs["json"])
        lines = outs["text"].splitlines()
        for key, prefix in keys.items():
            text_value = next(line[len(prefix):] for line in lines if line.startswith(prefix))
            assert (text_value == "yes") == data[key], (command, key)


def test_run_config_validation():
    with pytest.raises(InputError):
        RunConfig(command="search-special", max_degree=8)
    with pytest.raises(InputError):
        RunConfig(command="order", enumeration_bound=0)
    with pytest.raises(InputError):
        RunConfig(command="nope")


def test_capacity_error_type():
    from permtriples import all_subgroups, symmetric_group
    with pytest.raises(CapacityError):
        all_subgroups(symmetric_group(4), order_bound=5)
