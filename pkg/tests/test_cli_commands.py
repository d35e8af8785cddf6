"""
Tests for CLI commands
"""

import json
from pathlib import Path
from typing import Any

from click.testing import CliRunner

from gdsp_solver import __version__
from gdsp_solver.cli import cli

TRIANGLE = {"num_vertices": 3, "hyperedges": [[1, 2], [1, 3], [2, 3]]}

PATH = {
    "num_vertices": 4,
    "edges": [[1, 2, 1], [2, 3, 1], [3, 4, 2]],
    "partition": {"color_classes": [[1], [2]], "vertex_clusters": [[1, 2], [3, 4]]},
}

ONE_SIDED = {
    "num_vertices": 3,
    "edges": [[1, 2, 1], [2, 3, 2]],
    "partition": {"color_classes": [[1], [2]], "vertex_clusters": [[1], [2, 3]]},
}

MIXING_CODE = {
    "spec": {"num_files": 2, "symbols_per_file": 1, "field_order": 5},
    "rows": [[[0, 1]], [[1, 1]], [[1, 0]]],
}


def write_json(directory: Path, name: str, data: Any) -> str:
    path = directory / name
    path.write_text(json.dumps(data), encoding="utf-8")
    return str(path)


class TestCLICommands:
    def setup_method(self):
        self.runner = CliRunner()

    def invoke(self, *args: str):
        return self.runner.invoke(cli, list(args))

    def test_cli_help(self):
        """Test CLI help"""
        result = self.invoke("--help")
        assert result.exit_code == 0
        assert "Minimum storage for graphical distributed storage" in result.output
        for command in ("solve", "decompose", "verify", "oracle", "bounds", "flow"):
            assert command in result.output

    def test_version(self):
        """Test version option"""
        result = self.invoke("--version")
        assert result.exit_code == 0
        assert __version__ in result.output

    def test_solve_missing_args(self):
        """Test solve command with missing args"""
        result = self.invoke("solve")
        assert result.exit_code != 0
        assert "Missing argument" in result.output

    def test_solve_triangle(self, tmp_path):
        """Test solve with an emitted MDS code"""
        instance = write_json(tmp_path, "triangle.json", TRIANGLE)
        code_path = str(tmp_path / "code.json")

        result = self.invoke("solve", instance, "--emit-code", code_path)

        assert result.exit_code == 0
        report = json.loads(result.stdout)
        assert report["optimum"] == {"exact": "3/2", "decimal": "1.500000"}
        assert [w["weight"]["exact"] for w in report["dual_certificate"]] == [
            "1/2",
            "1/2",
            "1/2",
        ]
        assert report["code"]["valid"] is True
        assert report["code"]["symbols_per_file"] == 2
        assert report["provenance"] == {
            "optimum": "covering-lp",
            "lower_bound": "dual-certificate",
            "witness": "mds-code",
        }
        assert Path(code_path).exists()

    def test_fixtures_then_verify(self, tmp_path):
        """Test the bundled files and verification of both codes"""
        result = self.invoke("fixtures", str(tmp_path))
        assert result.exit_code == 0
        totals = {f["name"]: f.get("total") for f in json.loads(result.stdout)["files"]}
        assert totals["storage-gap-optimal-code.json"]["exact"] == "12"
        assert totals["storage-gap-sup-code.json"]["exact"] == "27/2"

        instance = str(tmp_path / "storage-gap.json")
        for name, expected in (
            ("storage-gap-optimal-code.json", "12"),
            ("storage-gap-sup-code.json", "27/2"),
        ):
            result = self.invoke("verify", instance, str(tmp_path / name))
            assert result.exit_code == 0
            report = json.loads(result.stdout)
            assert report["valid"] is True
            assert report["total"]["exact"] == expected

    def test_decompose_fixture(self, tmp_path):
        """Test that the bundled instance is smooth and superposes to 27/2"""
        self.invoke("fixtures", str(tmp_path))

        result = self.invoke("decompose", str(tmp_path / "storage-gap.json"))

        assert result.exit_code == 0
        report = json.loads(result.stdout)
        assert report["smooth"] is True
        assert report["sup"]["total"]["exact"] == "27/2"
        assert report["sup"]["applicability"] == "heuristic-only"
        assert report["sup"]["clusters"][0]["colors"] == [1, 2, 3]

    def test_decompose_lp_solver_needs_one_color(self, tmp_path):
        """Test that the LP cluster solver refuses a multi-color class"""
        self.invoke("fixtures", str(tmp_path))

        result = self.invoke(
            "decompose",
            str(tmp_path / "storage-gap.json"),
            "--cluster-solver",
            "lp",
        )

        assert result.exit_code == 1
        assert "error" in result.output

    def test_decompose_global_allocation(self, tmp_path):
        """Test splitting a global allocation cluster by cluster"""
        instance = write_json(tmp_path, "path.json", PATH)
        allocation = write_json(tmp_path, "m.json", {"sizes": [0, 1, 1, 0]})

        result = self.invoke("decompose", instance, "--global", allocation)

        assert result.exit_code == 0
        report = json.loads(result.stdout)
        assert report["sup"]["applicability"] == "theorem1"
        assert report["theorem1"]["global_total"]["exact"] == "2"
        totals = [c["total"]["exact"] for c in report["theorem1"]["clusters"]]
        assert totals == ["1", "1"]

    def test_decompose_global_allocation_not_feasible(self, tmp_path):
        """Test that a failed hypothesis is named"""
        instance = write_json(tmp_path, "path.json", PATH)
        allocation = write_json(tmp_path, "m.json", {"sizes": [1, 0, 0, 1]})

        result = self.invoke("decompose", instance, "--global", allocation)

        assert result.exit_code == 1
        assert "hypothesis 'global-feasibility' does not hold" in result.output

    def test_decompose_code(self, tmp_path):
        """Test splitting a valid code along a one-sided partition"""
        instance = write_json(tmp_path, "one-sided.json", ONE_SIDED)
        code = write_json(tmp_path, "code.json", MIXING_CODE)

        result = self.invoke("decompose", instance, "--code", code)

        assert result.exit_code == 0
        report = json.loads(result.stdout)
        assert report["theorem2"]["total"]["exact"] == "2"
        assert report["theorem2"]["witness_total"]["exact"] == "3"

    def test_decompose_emit_code(self, tmp_path):
        """Test writing the explicit superposition code"""
        instance = write_json(tmp_path, "path.json", PATH)
        code_path = str(tmp_path / "sup-code.json")

        result = self.invoke("decompose", instance, "--emit-code", code_path)

        assert result.exit_code == 0
        assert json.loads(result.stdout)["code"]["total"]["exact"] == "2"
        verified = self.invoke("verify", instance, code_path)
        assert verified.exit_code == 0

    def test_decompose_emit_code_fixture_with_field_order(self, tmp_path):
        """Test that --field-order reaches the superposition code builder"""
        self.invoke("fixtures", str(tmp_path))
        instance = str(tmp_path / "storage-gap.json")
        code_path = str(tmp_path / "sup-code.json")

        result = self.invoke(
            "decompose", instance, "--emit-code", code_path, "--field-order", "11"
        )

        assert result.exit_code == 0
        code = json.loads(result.stdout)["code"]
        assert code["field_order"] == 11
        assert code["symbols_per_file"] == 2
        assert code["total"]["exact"] == "27/2"
        verified = self.invoke("verify", instance, code_path)
        assert verified.exit_code == 0
        assert json.loads(verified.stdout)["total"]["exact"] == "27/2"

    def test_decompose_emit_code_names_smallest_field(self, tmp_path):
        """Test that a too-small field reports the order that would work"""
        self.invoke("fixtures", str(tmp_path))

        result = self.invoke(
            "decompose",
            str(tmp_path / "storage-gap.json"),
            "--emit-code",
            str(tmp_path / "sup-code.json"),
        )

        assert result.exit_code == 1
        assert "q >= 11; got q = 5" in result.output

    def test_decompose_illegal_edge(self, tmp_path):
        """Test that an illegal instance is an input error"""
        data = {"num_vertices": 2, "num_files": 1, "edges": [[1, 2, 1], [1, 1, 1]]}
        instance = write_json(tmp_path, "loop.json", data)

        result = self.invoke("decompose", instance)

        assert result.exit_code == 1
        assert "illegal edge" in result.output

    def test_verify_invalid_code(self, tmp_path):
        """Test that an invalid code exits with the negative status"""
        edge = {"num_vertices": 2, "edges": [[1, 2, 1]]}
        empty = {
            "spec": {"num_files": 1, "symbols_per_file": 1, "field_order": 5},
            "rows": [[], []],
        }
        instance = write_json(tmp_path, "edge.json", edge)
        code = write_json(tmp_path, "code.json", empty)

        result = self.invoke("verify", instance, code)

        assert result.exit_code == 2
        report = json.loads(result.stdout)
        assert report["valid"] is False
        assert report["failures"] == [{"vertices": ["1", "2"], "color": 1}]

    def test_oracle_claims(self, tmp_path):
        """Test matched and too-high claims on the triangle"""
        instance = write_json(tmp_path, "triangle.json", TRIANGLE)

        matched = self.invoke("oracle", instance, "--claim", "3/2")
        too_high = self.invoke("oracle", instance, "--claim", "2")

        assert matched.exit_code == 0
        assert json.loads(matched.stdout)["certification"]["verdict"] == "matched"
        assert too_high.exit_code == 2
        report = json.loads(too_high.stdout)
        assert report["certification"]["verdict"] == "claimed-too-high"
        assert report["total"]["exact"] == "3/2"
        assert report["status"] == "exact"

    def test_oracle_rejects_bad_claim(self, tmp_path):
        """Test that a claim must be a rational"""
        instance = write_json(tmp_path, "triangle.json", TRIANGLE)

        result = self.invoke("oracle", instance, "--claim", "half")

        assert result.exit_code != 0
        assert "is not a rational number" in result.output

    def test_bounds_fixture(self, tmp_path):
        """Test the cut-set bound against the superposition totals"""
        self.invoke("fixtures", str(tmp_path))

        result = self.invoke("bounds", str(tmp_path / "storage-gap.json"))

        assert result.exit_code == 0
        report = json.loads(result.stdout)
        assert report["lower_bound"] == {
            "value": {"exact": "6", "decimal": "6.000000"},
            "source": "cut-set",
        }
        assert report["upper_bound"]["value"]["exact"] == "27/2"
        assert report["upper_bound"]["source"] == "partition-superposition"
        assert report["gap"]["exact"] == "15/2"

    def test_bounds_text_format(self, tmp_path):
        """Test the YAML text report"""
        instance = write_json(tmp_path, "triangle.json", TRIANGLE)

        result = self.invoke("bounds", instance, "--format", "text")

        assert result.exit_code == 0
        assert "command: bounds" in result.stdout
        assert "source: covering-lp" in result.stdout

    def test_flow_feasible_with_export(self, tmp_path):
        """Test a feasible allocation and the exported edge list"""
        instance = write_json(tmp_path, "triangle.json", TRIANGLE)
        allocation = write_json(tmp_path, "m.json", {"sizes": ["1/2", "1/2", "1/2"]})
        export = tmp_path / "net.txt"

        result = self.invoke("flow", instance, allocation, "--export", str(export))

        assert result.exit_code == 0
        report = json.loads(result.stdout)
        assert report["feasible"] is True
        assert report["covering_feasible"] is True
        assert [s["max_flow"]["exact"] for s in report["sinks"]] == ["1", "1", "1"]
        assert export.read_text(encoding="utf-8").splitlines()[0] == "0 1 1/2"

    def test_flow_infeasible(self, tmp_path):
        """Test that an infeasible allocation exits with the negative status"""
        instance = write_json(tmp_path, "triangle.json", TRIANGLE)
        allocation = write_json(tmp_path, "m.json", {"sizes": ["1/3", "1/2", "1/2"]})

        result = self.invoke("flow", instance, allocation)

        assert result.exit_code == 2
        assert json.loads(result.stdout)["feasible"] is False

    def test_output_file(self, tmp_path):
        """Test that --output writes the report to a file"""
        instance = write_json(tmp_path, "triangle.json", TRIANGLE)
        report_path = tmp_path / "report.json"

        result = self.invoke("solve", instance, "--output", str(report_path))

        assert result.exit_code == 0
        report = json.loads(report_path.read_text(encoding="utf-8"))
        assert report["command"] == "solve"
        assert len(report["instance_hash"]) == 64

    def test_reports_are_byte_identical_across_runs(self, tmp_path):
        """Test that every command prints the same bytes when rerun"""
        self.invoke("fixtures", str(tmp_path / "bundle"))
        gap = str(tmp_path / "bundle" / "storage-gap.json")
        sup_code = str(tmp_path / "bundle" / "storage-gap-sup-code.json")
        optimal_code = str(tmp_path / "bundle" / "storage-gap-optimal-code.json")
        triangle = write_json(tmp_path, "triangle.json", TRIANGLE)
        path = write_json(tmp_path, "path.json", PATH)
        one_sided = write_json(tmp_path, "one-sided.json", ONE_SIDED)
        mixing = write_json(tmp_path, "code.json", MIXING_CODE)
        halves = write_json(tmp_path, "m.json", {"sizes": ["1/2", "1/2", "1/2"]})
        global_m = write_json(tmp_path, "global.json", {"sizes": [0, 1, 1, 0]})

        invocations = [
            ("fixtures", str(tmp_path / "again")),
            ("solve", triangle, "--emit-code", str(tmp_path / "mds.json")),
            ("decompose", gap),
            ("decompose", gap, "--format", "text"),
            ("decompose", path, "--global", global_m),
            ("decompose", one_sided, "--code", mixing),
            ("verify", gap, sup_code),
            ("verify", gap, optimal_code),
            ("oracle", triangle, "--claim", "3/2"),
            ("oracle", gap),
            ("bounds", gap),
            ("flow", triangle, halves),
        ]
        for args in invocations:
            first = self.invoke(*args)
            second = self.invoke(*args)
            assert first.exit_code == 0, args
            assert first.stdout_bytes == second.stdout_bytes, args
