import json
import os
import subprocess
from pathlib import Path

import pytest

import modnet

FIXTURES = Path(os.environ.get("MODNET_FIXTURES", Path(__file__).parent.parent / "fixtures"))
CLI = os.environ.get("MODNET_CLI")
SCHEMA = os.environ.get("MODNET_SCHEMA")


def fixture(name):
    return modnet.load(str(FIXTURES / name))


def test_parse_and_render():
    net = modnet.parse_network("x = u & !y; y = x | 0;")
    assert net.agents == ["x", "y", "u"]
    assert net.inputs == ["u"]
    assert len(net) == 3
    assert modnet.parse_network(net.render()) == net
    assert net.evaluate("x", "001") is True


def test_errors():
    with pytest.raises(modnet.ParseError):
        modnet.parse_network("a = (b")
    with pytest.raises(modnet.TooManyAgents):
        modnet.parse_network("a = b | c | d;", max_agents=3)
    with pytest.raises(modnet.Error):
        modnet.parse_network("a = 1; a = 0;")
    assert issubclass(modnet.ParseError, modnet.Error)


def test_example1_attractors_and_orbit():
    net = fixture("example1.bnet")
    found = modnet.attractors(net)
    assert {"kind": "stable", "states": ["1100"]} in found
    limit = [a for a in found if a["kind"] == "limit"]
    assert len(limit) == 1 and limit[0]["states"] == [f"0{i:03b}" for i in range(8)]
    assert modnet.orbit(net, initial=["1111"]) == ["1100", "1101", "1111"]


def test_example2_regulation():
    net = fixture("example2.bnet")
    assert modnet.regulation_edges(net) == [("a1", "a1"), ("a2", "a1")]
    assert modnet.scc_ordering(net) == [["a2"], ["a1"]]


def test_example3_restricted_equilibria():
    net = fixture("example3.bnet")
    first = modnet.equilibria(net, ["a1", "a2"])
    assert first == ["110", "111"]
    assert modnet.equilibria(net, ["a3"], first) == ["111"]
    assert modnet.equilibria(net, ["a1", "a2"], modnet.equilibria(net, ["a3"])) == ["110", "111"]


def test_example4_modularity():
    net = fixture("example4.bnet")
    assert modnet.m_relation(net, ["a2"], ["a1", "a3"]) == (True, None)
    assert modnet.check_modular(net, "a2|a1,a3")["holds"] is True
    assert modnet.elementary(net, [["a1", "a2", "a3"]]) == [["a2"], ["a1", "a3"]]
    assert modnet.separable(net, [], ["a1", "a2", "a3"]) == (["a2"], ["a1", "a3"])
    assert modnet.modular_equilibria(net, "a2|a1,a3") == ["000", "001", "100", "101", "111"]


def test_example5_witness():
    net = fixture("example5.bnet")
    report = modnet.check_modular(net, [["a1"], ["a2"], ["a3"]])
    assert report["holds"] is False
    assert report["verdicts"][2]["witness"] == {"state": "110", "agent": "a3", "to": "111"}
    holds, witness = modnet.m_relation(net, ["a1", "a2"], ["a3"])
    assert not holds and witness["agent"] == "a3"
    assert modnet.elementary(net) == [["a1"], ["a2", "a3"]]
    with pytest.raises(modnet.PartitionNotValidated):
        modnet.modular_equilibria(net, "a1,a2|a3")
    assert modnet.modular_equilibria(net, "a1,a2|a3", strict=False) == []


def test_verify():
    report = modnet.verify(seed=42, networks=20)
    assert report["ok"] and report["networks"] == 20
    assert all(failed == 0 for _, failed in report["properties"].values())
    broken = modnet.verify(networks=20, mutate=True)
    assert not broken["ok"]
    assert modnet.parse_network(broken["counterexample"])


def test_dot_output_parses():
    pydot = pytest.importorskip("pydot")
    net = fixture("example1.bnet")
    (graph,) = pydot.graph_from_dot_data(modnet.state_graph_dot(net))
    assert len(graph.get_nodes()) >= 16
    assert len(graph.get_edges()) == 24
    (reg,) = pydot.graph_from_dot_data(modnet.regulation_dot(fixture("example2.bnet")))
    assert {(e.get_source(), e.get_destination()) for e in reg.get_edges()} == {('"a1"', '"a1"'), ('"a2"', '"a1"')}


CLI_RUNS = [
    (["attractors", "--format", "json", "example1.bnet"], 0),
    (["attractors", "--format", "json", "example4.bnet"], 0),
    (["state-graph", "--format", "json", "example2.bnet"], 0),
    (["regulation", "--format", "json", "example2.bnet"], 0),
    (["scc-order", "--format", "json", "--all-orders", "example1.bnet"], 0),
    (["check-mo", "--format", "json", "--partition", "a1|a2|a3", "example5.bnet"], 1),
    (["check-mo", "--format", "json", "--partition", "a1|a2,a3|a4", "example1.bnet"], 0),
    (["compose", "--format", "json", "--partition", "a2|a1,a3", "example4.bnet"], 0),
    (["elementary", "--format", "json", "--all-splits", "--partition", "a1,a2,a3", "example4.bnet"], 0),
    (["verify", "--format", "json", "--samples", "10"], 0),
    (["verify", "--format", "json", "--samples", "10", "--mutate"], 1),
]


@pytest.mark.skipif(not CLI or not SCHEMA, reason="CLI or schema path not provided")
@pytest.mark.parametrize("args,code", CLI_RUNS)
def test_cli_json_matches_schema(args, code):
    jsonschema = pytest.importorskip("jsonschema")
    schema = json.loads(Path(SCHEMA).read_text())
    argv = [CLI] + [str(FIXTURES / a) if a.endswith(".bnet") else a for a in args]
    first = subprocess.run(argv, capture_output=True, text=True)
    assert first.returncode == code, first.stderr
    jsonschema.validate(json.loads(first.stdout), schema)
    second = subprocess.run(argv, capture_output=True, text=True)
    assert first.stdout == second.stdout


@pytest.mark.skipif(not CLI, reason="CLI path not provided")
@pytest.mark.parametrize("name", ["example1.bnet", "example2.bnet", "example3.bnet", "example4.bnet", "example5.bnet"])
def test_cli_dot_parses(name):
    pydot = pytest.importorskip("pydot")
    for command in ("state-graph", "regulation"):
        out = subprocess.run([CLI, command, "--format", "dot", str(FIXTURES / name)], capture_output=True, text=True)
        assert out.returncode == 0
        assert pydot.graph_from_dot_data(out.stdout)
    out = subprocess.run([CLI, "scc-order", "--format", "dot", str(FIXTURES / name)], capture_output=True, text=True)
    assert pydot.graph_from_dot_data(out.stdout)
