import json
from pathlib import Path

import pytest

from coordination_engine.errors import BoundExceeded, ParseError, WiringError
from coordination_engine.shell import commands
from coordination_engine.shell.manager import EXIT_FAILURE, EXIT_INPUT_ERROR, EXIT_OK, main, parse_domain
from coordination_engine.shell.spec import build_network, parse_spec

SPECS_DIR = Path(__file__).resolve().parents[2] / "specs"

BROKEN_PREDICATE = {
    "reo": [{"kind": "Sync", "name": "S", "ports": ["a", "b"],
             "predicate": {"kind": "ctx", "known": ["a"], "required": "*"}}],
}

LOSSY_FIFO_PAIR = {
    "reo": [
        {"kind": "LossySync", "name": "L", "ports": ["a", "b"]},
        {"kind": "FIFO1", "name": "F", "ports": ["b", "c"]},
    ],
}


def spec_path(name):
    return str(SPECS_DIR / f"{name}.json")


def write_spec(tmp_path, data, name="net"):
    path = tmp_path / f"{name}.json"
    path.write_text(json.dumps(data) if not isinstance(data, str) else data, encoding="utf-8")
    return str(path)


# Spec parsing

def test_parse_spec_reports_json_line():
    with pytest.raises(ParseError) as excinfo:
        parse_spec('{\n  "reo": [\n}')
    assert excinfo.value.line == 3


@pytest.mark.parametrize("data, field", [
    ({"reo": 3}, "reo"),
    ({"reo": [{"kind": "Bogus", "ports": []}]}, "reo[0].kind"),
    ({"reo": [{"kind": "Sync", "ports": "ab"}]}, "reo[0].ports"),
    ({"components": [{"kind": "Sync", "ports": ["a", "b"]}]}, "components[0].kind"),
    ({"domain": []}, "domain"),
    ({"reo": [{"kind": "Sync", "ports": ["a", "b"]}], "linda": {"processes": []}}, "linda"),
    ({"reo": [{"kind": "Sync", "name": "S", "ports": ["a", "b"]},
              {"kind": "Sync", "name": "S", "ports": ["c", "d"]}]}, "name"),
    ({"linda": {"processes": [{"id": "p", "source": "end"}, {"id": "p", "source": "end"}]}}, "linda.processes"),
    ({"linda": {"processes": [{"source": "out(1).end"}], "priority": ["q"]}}, "linda.priority"),
    ({"linda": {"processes": [{"source": "out(X).end"}]}}, "linda.processes[0].source"),
    ({"linda": {"processes": [{"source": "out(1)."}]}}, "linda.processes[0].source"),
    ({"linda": {"processes": [], "tuples": [[1.5]]}}, "linda.tuples[0]"),
])
def test_parse_spec_reports_field(data, field):
    with pytest.raises(ParseError) as excinfo:
        parse_spec(json.dumps(data))
    assert excinfo.value.field == field


def test_parse_spec_names_primitives():
    spec = parse_spec(json.dumps(LOSSY_FIFO_PAIR | {"components": [{"kind": "Writer", "ports": ["a"]}]}))
    assert [p.name for p in spec.primitives()] == ["L", "F", "Writer1"]


def test_port_used_three_times_is_rejected():
    data = {
        "reo": [{"kind": "Sync", "ports": ["x", "y"]}, {"kind": "Sync", "ports": ["x", "z"]}],
        "components": [{"kind": "Writer", "ports": ["x"]}],
    }
    with pytest.raises(WiringError) as excinfo:
        parse_spec(json.dumps(data))
    assert excinfo.value.port == "x"
    assert excinfo.value.count == 3


def test_linda_spec():
    spec = parse_spec((SPECS_DIR / "linda_example.json").read_text(encoding="utf-8"))
    assert spec.linda.ids == ["reader", "writer", "taker"]
    network = build_network(spec)
    assert network.names(range(4)) == ["reader", "writer", "taker", "T"]


# Commands

def test_empty_spec():
    spec = parse_spec("")
    assert spec.is_empty
    assert commands.cmd_explore(spec)["states"] == 1
    assert len(commands.cmd_compose(spec)["states"]) == 1


def test_compose_lossy_alternator(lossy_alternator_spec):
    result = commands.cmd_compose(lossy_alternator_spec)
    assert len(result["states"]) == 9
    assert len(result["initial"]) == 1
    assert "truncated" not in result


def test_compose_strict_truncation_keeps_partial_output(lossy_alternator_spec):
    with pytest.raises(BoundExceeded) as excinfo:
        commands.cmd_compose(lossy_alternator_spec, bound=2, strict=True)
    assert excinfo.value.partial["truncated"] is True
    assert len(excinfo.value.partial["states"]) == 2


def test_explore_lossy_alternator(lossy_alternator_spec):
    result = commands.cmd_explore(lossy_alternator_spec)
    assert result["states"] == 9
    assert not result["truncated"]
    assert all(result["certified"].values())


def test_check_lossy_alternator(lossy_alternator_spec):
    report = commands.cmd_check(lossy_alternator_spec)
    assert report["ok"], report
    assert {entry["automaton"] for entry in report["locality"]} == {"LF", "AC", "W1", "W2", "R"}
    assert report["ca_pairs"] == []


def test_check_ca_pairs():
    report = commands.cmd_check(parse_spec(json.dumps(LOSSY_FIFO_PAIR)))
    assert report["ca_pairs"] == [{"left": "L", "right": "F", "ok": True}]
    assert report["ok"]


def test_check_flags_non_local_predicate():
    report = commands.cmd_check(parse_spec(json.dumps(BROKEN_PREDICATE)))
    assert not report["ok"]
    assert report["failures"] == ["S"]
    (entry,) = report["locality"]
    assert entry["violations"]


def test_check_linda_example():
    spec = parse_spec((SPECS_DIR / "linda_example.json").read_text(encoding="utf-8"))
    report = commands.cmd_check(spec, depth=3)
    assert report["linda"]["ok"]
    assert all(entry.get("skipped") for entry in report["locality"])
    assert report["ok"]


def test_run_records(lossy_alternator_spec):
    records = commands.cmd_run(lossy_alternator_spec, rounds=5, seed=1, policy="random")
    assert len(records) == 6
    assert records[0]["policy"] == "random"


# Command line

def test_parse_domain():
    assert parse_domain("0,1") == [0, 1]
    assert parse_domain("a, 2,") == ["a", 2]


def test_main_compose(capsys):
    assert main(["compose", spec_path("lossy_alternator")]) == EXIT_OK
    result = json.loads(capsys.readouterr().out)
    assert len(result["states"]) == 9


def test_main_compose_truncated(capsys):
    assert main(["compose", spec_path("lossy_alternator"), "--bound", "2"]) == EXIT_FAILURE
    result = json.loads(capsys.readouterr().out)
    assert result["truncated"] is True


def test_main_compose_dot(capsys):
    assert main(["compose", spec_path("lossy_alternator"), "--format", "dot"]) == EXIT_OK
    assert capsys.readouterr().out.startswith("digraph {")


def test_main_compose_without_flattening(capsys):
    assert main(["compose", spec_path("lossy_alternator"), "--no-flatten"]) == EXIT_OK
    result = json.loads(capsys.readouterr().out)
    assert [entry["name"] for entry in result["automata"]] == ["LF", "AC", "W1", "W2", "R"]
    assert [len(entry["states"]) for entry in result["automata"]] == [3, 3, 1, 1, 1]

    assert main(["compose", spec_path("lossy_alternator"), "--no-flatten", "--format", "dot"]) == EXIT_OK
    assert capsys.readouterr().out.count("digraph {") == 5


def test_main_export_dot_to_file(tmp_path):
    target = tmp_path / "out.dot"
    assert main(["export-dot", spec_path("exclusive_router"), "--out", str(target)]) == EXIT_OK
    text = target.read_text(encoding="utf-8")
    assert "doublecircle" in text


def test_main_run_writes_ndjson(capsys):
    argv = ["run", spec_path("lossy_alternator"), "--rounds", "3", "--policy", "random", "--seed", "5"]
    assert main(argv) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    records = [json.loads(line) for line in lines]
    assert len(records) == 4
    assert records[0]["seed"] == 5


def test_main_uses_config_defaults(tmp_path, capsys):
    config = tmp_path / "engine.json"
    config.write_text(json.dumps({"_engine_settings": {"rounds": 2}}), encoding="utf-8")
    assert main(["--config", str(config), "run", spec_path("lossy_alternator")]) == EXIT_OK
    assert len(capsys.readouterr().out.splitlines()) == 3


def test_main_domain_precedence(tmp_path, capsys):
    declared = write_spec(tmp_path, {"domain": [0, 1, 2], "reo": [{"kind": "Sync", "ports": ["a", "b"]}]}, "declared")
    assert main(["compose", declared]) == EXIT_OK
    assert len(json.loads(capsys.readouterr().out)["transitions"]) == 3

    assert main(["compose", declared, "--domain", "7"]) == EXIT_OK
    assert len(json.loads(capsys.readouterr().out)["transitions"]) == 1

    config = tmp_path / "engine.json"
    config.write_text(json.dumps({"_engine_settings": {"domain": [4, 5, 6, 7]}}), encoding="utf-8")
    assert main(["--config", str(config), "compose", declared]) == EXIT_OK
    assert len(json.loads(capsys.readouterr().out)["transitions"]) == 3

    undeclared = write_spec(tmp_path, {"reo": [{"kind": "Sync", "ports": ["a", "b"]}]}, "undeclared")
    assert main(["--config", str(config), "compose", undeclared]) == EXIT_OK
    assert len(json.loads(capsys.readouterr().out)["transitions"]) == 4


def test_main_explore(capsys):
    assert main(["explore", spec_path("lossy_alternator")]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["states"] == 9


def test_main_check_passes(capsys):
    assert main(["check", spec_path("lossy_alternator")]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["ok"] is True


def test_main_check_fails(tmp_path, capsys):
    assert main(["check", write_spec(tmp_path, BROKEN_PREDICATE)]) == EXIT_FAILURE
    assert json.loads(capsys.readouterr().out)["failures"] == ["S"]


def test_main_input_errors(tmp_path, capsys):
    assert main(["compose", str(tmp_path / "missing.json")]) == EXIT_INPUT_ERROR
    assert main(["compose", write_spec(tmp_path, "{ nope", "bad")]) == EXIT_INPUT_ERROR
    wiring = {"components": [{"kind": "Writer", "ports": ["x"]}, {"kind": "Reader", "ports": ["x"]},
                             {"kind": "Reader", "ports": ["x"]}]}
    assert main(["compose", write_spec(tmp_path, wiring, "wiring")]) == EXIT_INPUT_ERROR
    assert "Error:" in capsys.readouterr().err


def test_main_creates_default_config(isolated_config):
    assert main(["explore", spec_path("exclusive_router")]) == EXIT_OK
    assert (isolated_config / "engine_config.json").exists()
