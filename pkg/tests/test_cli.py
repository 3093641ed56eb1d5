"""Command-line interface: payload shapes, determinism, error kinds."""

import json

from foldline.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    output = capsys.readouterr().out
    return code, output


def run_json(capsys, *argv):
    code, output = run(capsys, *argv)
    return code, json.loads(output)


class TestDatum:
    def test_validate_builtin(self, capsys):
        code, doc = run_json(capsys, "datum", "validate", "--builtin", "B:n=2")
        assert code == 0
        assert doc["payload"]["pairing"] == [[2, -2], [-2, 4]]
        assert doc["payload"]["simply_laced"] is False

    def test_fold(self, capsys):
        code, doc = run_json(capsys, "datum", "fold", "--builtin", "A4+flip")
        assert code == 0
        assert doc["payload"]["folded"]["pairing"] == [[2, -2], [-2, 4]]
        assert doc["payload"]["delta"] == 2

    def test_fold_needs_sigma(self, capsys):
        code, doc = run_json(capsys, "datum", "fold", "--builtin", "A2")
        assert code == 2
        assert doc["status"] == "error" and doc["kind"] == "usage"

    def test_file_roundtrip(self, capsys, tmp_path):
        path = tmp_path / "datum.json"
        path.write_text(
            json.dumps(
                {
                    "labels": ["1", "2"],
                    "pairing": [[2, -1], [-1, 2]],
                    "sigma": {"1": "2", "2": "1"},
                }
            )
        )
        code, doc = run_json(capsys, "datum", "fold", "--file", str(path))
        assert code == 0
        assert doc["payload"]["folded"]["pairing"] == [[4]]

    def test_domain_error_kind(self, capsys):
        code, doc = run_json(capsys, "datum", "validate", "--builtin", "Z9")
        assert code == 1
        assert doc["kind"] == "unknown-builtin"


class TestWords:
    def test_enumerate(self, capsys):
        code, doc = run_json(capsys, "words", "enumerate", "--builtin", "A2")
        assert code == 0
        assert doc["payload"]["count"] == 2
        assert doc["payload"]["words"] == [["1", "2", "1"], ["2", "1", "2"]]

    def test_enumerate_dot(self, capsys):
        code, output = run(capsys, "words", "enumerate", "--builtin", "A2", "--dot")
        assert code == 0
        assert output.startswith("graph words")

    def test_neighbors(self, capsys):
        code, doc = run_json(
            capsys, "words", "neighbors", "--builtin", "B:n=2", "--word", "1,2,1,2"
        )
        assert code == 0
        assert doc["payload"] == [{"word": ["2", "1", "2", "1"], "k": 1, "r": 4}]


class TestTransition:
    def test_tropical(self, capsys):
        code, doc = run_json(
            capsys,
            "transition",
            "--builtin",
            "A2",
            "--from",
            "1,2,1",
            "--to",
            "2,1,2",
            "--coords",
            "0,1,2",
            "--semifield",
            "tropz",
        )
        assert code == 0
        assert [entry["c"] for entry in doc["payload"]] == [3, 0, 1]

    def test_trace(self, capsys):
        code, doc = run_json(
            capsys,
            "transition",
            "--builtin",
            "A2",
            "--from",
            "1,2,1",
            "--to",
            "2,1,2",
            "--coords",
            "0,1,2",
            "--trace",
        )
        assert code == 0
        assert len(doc["trace"]) == 2

    def test_rational(self, capsys):
        code, doc = run_json(
            capsys,
            "transition",
            "--builtin",
            "A2",
            "--from",
            "1,2,1",
            "--to",
            "2,1,2",
            "--coords",
            "2,3,2",
            "--semifield",
            "rat",
        )
        assert [entry["c"] for entry in doc["payload"]] == ["3/2", "4", "3/2"]

    def test_lambda_rho(self, capsys):
        code, doc = run_json(
            capsys,
            "lambda",
            "--builtin",
            "A2",
            "--word",
            "1,2,1",
            "--coords",
            "0,1,2",
            "--i",
            "2",
        )
        assert doc["payload"] == {"i": "2", "value": 3}
        code, doc = run_json(
            capsys,
            "rho",
            "--builtin",
            "A2",
            "--word",
            "1,2,1",
            "--coords",
            "0,1,2",
            "--i",
            "1",
        )
        assert doc["payload"] == {"i": "1", "value": 2}

    def test_byte_stability(self, capsys):
        args = (
            "transition",
            "--builtin",
            "A2",
            "--from",
            "1,2,1",
            "--to",
            "2,1,2",
            "--coords",
            "0,1,2",
        )
        _, first = run(capsys, *args)
        _, second = run(capsys, *args)
        assert first == second


class TestFolded:
    def test_transition(self, capsys):
        code, doc = run_json(
            capsys,
            "folded",
            "transition",
            "--model",
            "a3",
            "--from",
            "2,1,2,1",
            "--to",
            "1,2,1,2",
            "--coords",
            "1,1,1,1",
            "--semifield",
            "rat",
        )
        assert code == 0
        assert doc["payload"]["coords"] == ["1/5", "5/3", "9/5", "1/3"]

    def test_compare_models_symbolic(self, capsys):
        code, doc = run_json(
            capsys, "folded", "compare-models", "--coords", "d,c,b,a", "--semifield", "sym"
        )
        assert code == 0
        assert doc["payload"]["ok"] is True

    def test_tropnat_range_error_propagates(self, capsys):
        # moves never underflow on natural coordinates (closure), but a
        # negative input is rejected up front with its own kind
        code, doc = run_json(
            capsys,
            "transition",
            "--builtin",
            "A2",
            "--from",
            "1,2,1",
            "--to",
            "2,1,2",
            "--coords=-1,0,0",
            "--semifield",
            "tropn",
        )
        assert code == 1
        assert doc["kind"] == "tropnat-range"


class TestVerify:
    def test_chain(self, capsys):
        code, doc = run_json(capsys, "verify", "chain", "--id", "b2-from-a3")
        assert code == 0
        assert doc["payload"]["ok"] is True
        assert len(doc["payload"]["steps"]) == 5

    def test_chain_needs_id(self, capsys):
        code, doc = run_json(capsys, "verify", "chain")
        assert code == 2

    def test_word_counts(self, capsys):
        code, doc = run_json(capsys, "verify", "word-counts")
        assert code == 0
        assert doc["payload"]["ok"] is True

    def test_all_small(self, capsys):
        code, output = run(capsys, "verify", "all", "--trials", "20")
        assert code == 0
        assert output.count("PASS") >= 10


class TestMonoid:
    def test_mul(self, capsys):
        code, doc = run_json(
            capsys, "monoid", "mul", "--builtin", "A2", "--left", "0,0,0", "--right", "2,1,3"
        )
        assert doc["payload"]["coords"] == [0, 0, 0]

    def test_frobenius(self, capsys):
        code, doc = run_json(
            capsys, "monoid", "frobenius", "--builtin", "A2", "--e", "2", "--coords", "1,2,3"
        )
        assert doc["payload"]["coords"] == [2, 4, 6]

    def test_lstring(self, capsys):
        code, doc = run_json(
            capsys, "monoid", "lstring", "--builtin", "A2", "--i", "2", "--coords", "0,1,2"
        )
        assert doc["payload"]["l_scan"] == 3
        assert doc["payload"]["l_coordinate"] == 3

    def test_crystal_graph_dot(self, capsys):
        code, output = run(
            capsys, "monoid", "crystal-graph", "--builtin", "A2", "--bound", "1", "--dot"
        )
        assert code == 0
        assert output.startswith("digraph crystal")
