"""Session parsing and the CLI contract: reports, determinism, exit codes."""

import json

import pytest
from click.testing import CliRunner

from flatcert import parse_session
from flatcert.cli import main
from flatcert.errors import DeterminantNotOne, DimensionMismatch, NotIrreducible, ParseError

SESSION = json.dumps(
    {
        "generators": {
            "a": [["2", "0"], ["0", "1/2"]],
            "b": [["3", "0"], ["0", "1/3"]],
            "c": [["4", "0"], ["0", "1/4"]],
            "u": [["1", "1"], ["0", "1"]],
        }
    }
)

def test_parse_session_ok():
    spec = parse_session(SESSION)
    assert set(spec.generators) == {"a", "b", "c", "u"}
    assert spec.places.primes == (2, 3)
    assert spec.field is None


def test_parse_session_field():
    # g = diag(sqrt2, 1/sqrt2) over Q(sqrt2); embeds to a 4x4 rational matrix
    doc = {
        "field": ["-2", "0", "1"],
        "generators": {"g": [[["0", "1"], "0"], ["0", ["0", "1/2"]]]},
    }
    spec = parse_session(json.dumps(doc))
    assert spec.field is not None and spec.field.degree == 2
    assert spec.embedded["g"].n == 4
    assert spec.places.primes == (2,)


def test_parse_session_errors():
    with pytest.raises(DeterminantNotOne) as exc:
        parse_session(json.dumps({"generators": {"g": [["2", "0"], ["0", "1"]]}}))
    assert exc.value.name == "g"
    with pytest.raises(NotIrreducible):
        parse_session(json.dumps({"field": ["-1", "0", "1"], "generators": {"g": [["1"]]}}))
    with pytest.raises(ParseError) as exc:
        parse_session("{not json")
    assert exc.value.line is not None
    with pytest.raises(DimensionMismatch):
        parse_session(
            json.dumps({"generators": {"a": [["1"]], "b": [["1", "0"], ["0", "1"]]}})
        )
    with pytest.raises(ParseError):
        parse_session(json.dumps({"generators": {"Bad": [["1"]]}}))


def _run(args, session=SESSION, files=None):
    runner = CliRunner()
    with runner.isolated_filesystem():
        with open("session.json", "w") as fh:
            fh.write(session)
        if files:
            for name, content in files.items():
                with open(name, "w") as fh:
                    fh.write(content)
        return runner.invoke(main, args, catch_exceptions=False)


def test_cli_classify_unipotent():
    res = _run(["-i", "session.json", "classify", "u"])
    assert res.exit_code == 0
    doc = json.loads(res.output)
    assert doc["tag"] == "Unipotent"


def test_cli_classify_ballistic_report_shape():
    res = _run(["-i", "session.json", "classify", "a"])
    assert res.exit_code == 0
    doc = json.loads(res.output)
    assert doc["tag"] == "Ballistic"
    assert doc["padic"]["2"] == ["1", "-1"]
    assert doc["length2"]["nonarch"] == "2"
    assert isinstance(doc["length2"]["arch"], float)


def test_cli_places():
    res = _run(["-i", "session.json", "places"])
    assert res.exit_code == 0
    assert json.loads(res.output) == {"archimedean": True, "primes": [2, 3]}


def test_cli_flat_exit_codes():
    res = _run(["-i", "session.json", "flat", "a", "b"])
    assert res.exit_code == 0
    assert json.loads(res.output)["tag"] == "Lattice"
    res = _run(["-i", "session.json", "flat", "a", "c"])
    assert res.exit_code == 2
    doc = json.loads(res.output)
    assert doc["tag"] == "Degenerate"
    assert doc["nullVector"] in ([2, -1], [-2, 1])
    assert doc["witness"] == "a^2*c^-1"


def test_cli_decompose():
    res = _run(["-i", "session.json", "decompose", "a", "b"])
    assert res.exit_code == 0
    doc = json.loads(res.output)
    assert [blk["size"] for blk in doc["blocks"]] == [1, 1]


def test_cli_error_exit_code():
    res = _run(["-i", "session.json", "flat", "a", "u"])
    assert res.exit_code == 1
    doc = json.loads(res.output)
    assert doc["error"]["type"] == "NotCommuting"
    assert doc["error"]["module"] == "flats"

    res = _run(["-i", "session.json", "classify", "a**b"])
    assert res.exit_code == 1
    assert json.loads(res.output)["error"]["type"] == "ParseError"


def test_cli_graph_exit_codes():
    npc = json.dumps(
        {
            "tori": [{"id": "T1", "A": [["2", "0"], ["0", "1/2"]], "B": [["3", "0"], ["0", "1/3"]]}],
            "gluings": [{"torus": "T1", "U": [[0, 1], [1, 0]], "secondBasisWords": ["b", "a"]}],
        }
    )
    res = _run(["graph", "graph.json"], files={"graph.json": npc})
    assert res.exit_code == 0
    doc = json.loads(res.output)
    assert doc["tag"] == "NPC"
    assert doc["gluings"][0]["ok"] is True

    obstructed = json.dumps(
        {"tori": [{"id": "T1", "A": [["1", "1"], ["0", "1"]], "B": [["1", "5"], ["0", "1"]]}]}
    )
    res = _run(["graph", "graph.json"], files={"graph.json": obstructed})
    assert res.exit_code == 2
    doc = json.loads(res.output)
    assert doc["tag"] == "Obstruction"
    assert doc["obstruction"]["witnessClass"]["tag"] == "Unipotent"


def test_report_determinism():
    out1 = _run(["-i", "session.json", "classify", "a*b^-1"]).output
    out2 = _run(["-i", "session.json", "classify", "a*b^-1"]).output
    assert out1 == out2
    out3 = _run(["-i", "session.json", "flat", "a", "b"]).output
    out4 = _run(["-i", "session.json", "flat", "a", "b"]).output
    assert out3 == out4


def test_text_mode():
    res = _run(["-i", "session.json", "--text", "places"])
    assert res.exit_code == 0
    assert "primes[0] = 2" in res.output


def test_usage_errors_exit_one():
    # exit code 2 is reserved for obstructions; usage problems must exit 1
    runner = CliRunner()
    res = runner.invoke(main, ["classify"])  # missing WORD argument
    assert res.exit_code == 1
    res = runner.invoke(main, ["classify", "a"])  # missing --input
    assert res.exit_code == 1


def test_tolerance_and_pd_epsilon_flags():
    res = _run(["-i", "session.json", "--tolerance", "1e-10", "--pd-epsilon", "1e-6", "flat", "a", "b"])
    assert res.exit_code == 0
    assert json.loads(res.output)["tag"] == "Lattice"
