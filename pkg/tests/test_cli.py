"""Tests for the command-line interface and run orchestration."""
import json

import pytest
from click.testing import CliRunner

from src.cli import tessera
from src.core.config import RunConfig
from src.core.errors import FormatError
from src.core.runner import EXIT_ERROR, EXIT_OK, EXIT_VIOLATION, Runner
from src.core.serialization import read_graph, write_graph
from src.utils.logger import Logger


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def lattice_file(tmp_path, patch_63):
    path = tmp_path / "lattice.json"
    write_graph(patch_63, path)
    return path


@pytest.fixture
def wide_lattice_file(tmp_path, patch_63_wide):
    path = tmp_path / "wide.json"
    write_graph(patch_63_wide, path)
    return path


def _report(path):
    return json.loads(path.read_text(encoding="utf-8"))


class TestGenerate:
    """Test cases for tessera generate."""

    def test_regular_patch(self, runner, tmp_path):
        """Test a vertex-core (7,3) patch written to a file."""
        out = tmp_path / "g.json"
        result = runner.invoke(tessera, [
            "generate", "--p", "7", "--q", "3", "--height", "2", "--core", "vertex",
            "--out", str(out),
        ])
        assert result.exit_code == EXIT_OK
        assert read_graph(out).num_vertices == 29

    def test_platonic(self, runner, tmp_path):
        """Test that spherical degrees give the solid."""
        out = tmp_path / "cube.json"
        result = runner.invoke(tessera, ["generate", "--p", "3", "--q", "4", "--out", str(out)])
        assert result.exit_code == EXIT_OK
        g = read_graph(out)
        assert g.num_vertices == 8
        assert g.is_closed

    def test_perturbed(self, runner, tmp_path):
        """Test seeded perturbed generation."""
        out = tmp_path / "t.json"
        result = runner.invoke(tessera, [
            "generate", "--p", "6", "--q", "3", "--height", "2", "--core", "vertex",
            "--perturb", "8,3", "--seed", "4", "--out", str(out),
        ])
        assert result.exit_code == EXIT_OK
        assert read_graph(out).meta["kind"] == "perturbed"

    def test_bad_perturb(self, runner):
        """Test that a malformed --perturb is an input error."""
        result = runner.invoke(tessera, [
            "generate", "--p", "7", "--q", "3", "--perturb", "eight",
        ])
        assert result.exit_code == EXIT_ERROR
        assert "FormatError" in result.output


class TestAnalyzeAndVerify:
    """Test cases for analyze and verify commands."""

    def test_analyze_ball(self, runner, graph_file, tmp_path):
        """Test the report of the default unit ball."""
        out = tmp_path / "r.json"
        result = runner.invoke(tessera, ["analyze", "--graph", str(graph_file), "--out", str(out)])
        assert result.exit_code == EXIT_OK
        data = _report(out)
        assert data["vertices"] == 8
        assert data["kappa"] == {"numerator": -4, "denominator": 3}
        assert data["layers"] == [1, 7]
        assert all(check["passed"] for check in data["gauss_bonnet"])

    def test_gauss_bonnet_samples(self, runner, graph_file, tmp_path):
        """Test the sampled identities on a patch."""
        out = tmp_path / "r.json"
        result = runner.invoke(tessera, [
            "verify", "gauss-bonnet", "--graph", str(graph_file),
            "--samples", "20", "--seed", "3", "--out", str(out),
        ])
        assert result.exit_code == EXIT_OK
        assert _report(out)["failures"] == []

    def test_lemma(self, runner, graph_file, tmp_path):
        """Test the lemma on the radius-2 ball."""
        out = tmp_path / "r.json"
        result = runner.invoke(tessera, [
            "verify", "lemma", "--graph", str(graph_file), "--radius", "2", "--out", str(out),
        ])
        assert result.exit_code == EXIT_OK
        assert _report(out)["passed"] is True

    def test_proposition_violation_writes_witness(self, runner, graph_file, patch_73, tmp_path):
        """Test exit code 1 and the witness file when hypotheses fail."""
        a, b = patch_73.rotation(0)[0], patch_73.rotation(0)[3]
        sub = tmp_path / "pair.json"
        sub.write_text(json.dumps({"vertices": [a, b]}), encoding="utf-8")
        witness = tmp_path / "witness.json"
        result = runner.invoke(tessera, [
            "verify", "proposition", "--graph", str(graph_file), "--subgraph", str(sub),
            "--witness", str(witness), "--out", str(tmp_path / "r.json"),
        ])
        assert result.exit_code == EXIT_VIOLATION
        assert "edge_or_simple_cycle" in _report(tmp_path / "r.json")["failed_hypotheses"]
        assert _report(witness)["vertices"] == sorted([a, b])

    def test_weil_table(self, runner, tmp_path):
        """Test the equality table for the square grid."""
        out = tmp_path / "r.json"
        result = runner.invoke(tessera, ["verify", "weil", "--q", "4", "--n-max", "12", "--out", str(out)])
        assert result.exit_code == EXIT_OK
        results = _report(out)["results"]
        assert len(results) == 12
        assert "impossible" in results[2]

    def test_weil_search(self, runner, lattice_file, tmp_path):
        """Test the bound on small subgraphs of a lattice patch."""
        out = tmp_path / "r.json"
        result = runner.invoke(tessera, [
            "verify", "weil", "--graph", str(lattice_file), "--q", "3", "--budget", "4",
            "--out", str(out),
        ])
        assert result.exit_code == EXIT_OK
        assert _report(out)["violations"] == []


class TestSearchAndExtremal:
    """Test cases for search and extremal commands."""

    def test_min_ratio(self, runner, wide_lattice_file, tmp_path):
        """Test the certified hexagon minimum."""
        out = tmp_path / "r.json"
        witness = tmp_path / "w.json"
        result = runner.invoke(tessera, [
            "search", "min-ratio", "--graph", str(wide_lattice_file), "--max-size", "7",
            "--threads", "1", "--witness", str(witness), "--out", str(out),
        ])
        assert result.exit_code == EXIT_OK
        assert _report(out)["minimum"] == {"numerator": 18, "denominator": 7}
        assert _report(out)["certified_size"] == 7
        assert len(_report(witness)["vertices"]) == 7
        assert "certifies subgraphs up to" not in result.output

    def test_min_ratio_shallow_patch_warns(self, runner, lattice_file, tmp_path):
        """Test the warning when the patch is too shallow for the requested size."""
        out = tmp_path / "r.json"
        result = runner.invoke(tessera, [
            "search", "min-ratio", "--graph", str(lattice_file), "--max-size", "7",
            "--threads", "1", "--out", str(out),
        ])
        assert result.exit_code == EXIT_OK
        assert _report(out)["certified_size"] == 3
        assert "certifies subgraphs up to 3 vertices, not 7" in result.output

    def test_bounds_target(self, runner, graph_file, tmp_path):
        """Test the upper witness at height 10 against 0.169."""
        out = tmp_path / "r.json"
        result = runner.invoke(tessera, [
            "verify", "bounds", "--graph", str(graph_file), "--p1", "7", "--q1", "3",
            "--budget", "3", "--threads", "1", "--target-height", "10", "--target", "0.169",
            "--out", str(out),
        ])
        assert result.exit_code == EXIT_OK
        report = _report(out)
        assert report["target_met"] is True
        assert len(report["upper"]) == 11
        assert "gap to limit" in result.output

    def test_bounds_target_missed(self, runner, graph_file, tmp_path):
        """Test that a missed target is a violation."""
        result = runner.invoke(tessera, [
            "verify", "bounds", "--graph", str(graph_file), "--p1", "7", "--q1", "3",
            "--budget", "3", "--threads", "1", "--target", "1/5",
            "--witness", str(tmp_path / "w.json"), "--out", str(tmp_path / "r.json"),
        ])
        assert result.exit_code == EXIT_VIOLATION

    def test_extremal_weil_impossible(self, runner, tmp_path):
        """Test that q = 6, n = 1 is reported as impossible."""
        out = tmp_path / "r.json"
        result = runner.invoke(tessera, ["extremal", "weil", "--q", "6", "--n", "1", "--out", str(out)])
        assert result.exit_code == EXIT_OK
        assert "single vertex" in _report(out)["reason"]

    def test_puffed_ball(self, runner, tmp_path):
        """Test puffed-ball increments in the triangular lattice."""
        out = tmp_path / "r.json"
        result = runner.invoke(tessera, ["extremal", "puffed-ball", "--p", "6", "--n", "7", "--out", str(out)])
        assert result.exit_code == EXIT_OK
        assert _report(out)["sequence"]["deltas"] == [2, 1, 1, 1, 1, 0, 1]

    def test_recurrence(self, runner, tmp_path):
        """Test both comparison sequences on (7,3) layers."""
        out = tmp_path / "r.json"
        result = runner.invoke(tessera, [
            "extremal", "recurrence", "--p", "7", "--q", "3", "--height", "4", "--out", str(out),
        ])
        assert result.exit_code == EXIT_OK
        data = _report(out)
        assert data["lower"]["observed"] == [1, 7, 21, 56]
        assert data["upper"]["passed"] is True


class TestExportAndErrors:
    """Test cases for export and error handling."""

    def test_export_svg(self, runner, graph_file, tmp_path):
        """Test SVG export to a file."""
        out = tmp_path / "g.svg"
        result = runner.invoke(tessera, ["export", "svg", "--graph", str(graph_file), "--out", str(out)])
        assert result.exit_code == EXIT_OK
        assert "<svg" in out.read_text(encoding="utf-8")

    def test_missing_graph_file(self, runner, tmp_path):
        """Test exit code 2 and an error record for unreadable input."""
        result = runner.invoke(tessera, ["analyze", "--graph", str(tmp_path / "missing.json")])
        assert result.exit_code == EXIT_ERROR
        assert '"error": "FormatError"' in result.output

    def test_required_option(self, runner):
        """Test that click reports missing options."""
        result = runner.invoke(tessera, ["analyze"])
        assert result.exit_code == 2
        assert "--graph" in result.output

    def test_unknown_command(self, temp_logger):
        """Test that the runner refuses unknown commands."""
        with pytest.raises(FormatError):
            Runner(RunConfig(command="nope", threads=1), temp_logger).run()

    def test_runner_writes_output(self, tmp_path):
        """Test a direct run with an output file."""
        out = tmp_path / "g.json"
        config = RunConfig(command="generate", output=str(out),
                           params={"p": 6, "q": 3, "height": 2, "core": "vertex"}, threads=1)
        assert Runner(config, Logger(quiet=True)).run() == EXIT_OK
        assert read_graph(out).num_vertices == 19
