import json
import subprocess
import sys
from importlib import resources
from pathlib import Path

import jsonschema
import pytest
from click.testing import CliRunner

from varpart.cli import main

GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture()
def runner():
    return CliRunner()


def invoke(runner, *args, **kw):
    return runner.invoke(main, list(args), catch_exceptions=False, **kw)


def write(tmp_path, text, name="data.csv"):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return path


class TestGoldenOutputs:
    @pytest.mark.parametrize("cmd", ("fit", "decompose", "orderings", "venn"))
    def test_text(self, runner, cmd):
        res = invoke(runner, cmd, "--dwaine")
        assert res.exit_code == 0
        assert res.output == (GOLDEN / f"{cmd}_dwaine.txt").read_text()

    @pytest.mark.parametrize("cmd", ("fit", "decompose", "orderings", "venn"))
    def test_json(self, runner, cmd):
        res = invoke(runner, cmd, "--dwaine", "--format", "json")
        assert res.exit_code == 0
        assert res.output == (GOLDEN / f"{cmd}_dwaine.json").read_text()

    def test_svg(self, runner):
        res = invoke(runner, "venn", "--dwaine", "--format", "svg")
        assert res.exit_code == 0
        assert res.output == (GOLDEN / "venn_dwaine.svg").read_text()

    def test_decompose_csv(self, runner):
        res = invoke(runner, "decompose", "--dwaine", "--format", "csv")
        assert res.exit_code == 0
        assert res.output == (GOLDEN / "decompose_dwaine.csv").read_text()

    def test_fit_single_predictor(self, runner):
        res = invoke(runner, "fit", "--dwaine", "--model", "TARGTPOP")
        assert res.exit_code == 0
        assert res.output == (GOLDEN / "fit_targtpop.txt").read_text()

    @pytest.mark.parametrize("fmt", ("text", "json", "svg"))
    def test_byte_determinism(self, runner, fmt):
        a = invoke(runner, "venn", "--dwaine", "--format", fmt)
        b = invoke(runner, "venn", "--dwaine", "--format", fmt)
        assert a.output == b.output

    @pytest.mark.parametrize("cmd", ("fit", "decompose", "orderings", "venn"))
    def test_json_validates_against_schema(self, runner, cmd):
        res = invoke(runner, cmd, "--dwaine", "--format", "json")
        schema = json.loads(
            (resources.files("varpart.schemas") / f"{cmd}.schema.json").read_text()
        )
        jsonschema.validate(json.loads(res.output), schema)


class TestInputHandling:
    def test_csv_input_with_model_subset(self, runner, tmp_path):
        rows = "\n".join(f"{i},{2 * i + 1},{3 * i}" for i in range(1, 9))
        path = write(tmp_path, "y,a,b\n" + rows + "\n")
        res = invoke(
            runner,
            "fit",
            "--input", str(path),
            "--response", "y",
            "--predictors", "a,b",
            "--model", "a",
        )
        assert res.exit_code == 0
        assert "Model: y ~ a" in res.output

    def test_semicolon_delimiter(self, runner, tmp_path):
        rows = "\n".join(f"{i};{i * i}" for i in range(1, 9))
        path = write(tmp_path, "y;x\n" + rows + "\n")
        res = invoke(
            runner,
            "fit",
            "--input", str(path),
            "--response", "y",
            "--predictors", "x",
            "--delimiter", ";",
        )
        assert res.exit_code == 0

    def test_out_writes_file_and_keeps_stdout_empty(self, runner, tmp_path):
        target = tmp_path / "report.json"
        res = invoke(
            runner, "fit", "--dwaine", "--format", "json", "--out", str(target)
        )
        assert res.exit_code == 0
        assert res.output == ""
        assert target.read_text() == (GOLDEN / "fit_dwaine.json").read_text()


class TestExitCodes:
    def test_dwaine_conflicts_with_input(self, runner, tmp_path):
        path = write(tmp_path, "y,x\n1,2\n2,4\n3,5\n4,7\n")
        res = runner.invoke(main, ["fit", "--dwaine", "--input", str(path)])
        assert res.exit_code == 2

    def test_no_input_at_all(self, runner):
        res = runner.invoke(main, ["fit"])
        assert res.exit_code == 2

    def test_input_requires_column_names(self, runner, tmp_path):
        path = write(tmp_path, "y,x\n1,2\n2,4\n3,5\n4,7\n")
        res = runner.invoke(main, ["fit", "--input", str(path)])
        assert res.exit_code == 2

    def test_missing_file(self, runner, tmp_path):
        res = runner.invoke(
            main,
            [
                "fit",
                "--input", str(tmp_path / "nope.csv"),
                "--response", "y",
                "--predictors", "x",
            ],
        )
        assert res.exit_code == 2
        assert res.stderr.startswith("error:")

    def test_non_numeric_cell(self, runner, tmp_path):
        path = write(tmp_path, "y,x\n1,2\n2,oops\n3,5\n4,7\n")
        res = runner.invoke(
            main,
            ["fit", "--input", str(path), "--response", "y", "--predictors", "x"],
        )
        assert res.exit_code == 2
        assert "line 3" in res.stderr

    def test_unknown_model_name(self, runner):
        res = runner.invoke(main, ["fit", "--dwaine", "--model", "NOPE"])
        assert res.exit_code == 2

    def test_constant_column(self, runner, tmp_path):
        path = write(tmp_path, "y,x\n1,5\n2,5\n3,5\n4,5\n")
        res = runner.invoke(
            main,
            ["fit", "--input", str(path), "--response", "y", "--predictors", "x"],
        )
        assert res.exit_code == 3
        assert res.stderr.startswith("error:")

    def test_collinear_predictors(self, runner, tmp_path):
        rows = "\n".join(f"{i},{i},{2 * i}" for i in range(1, 9))
        path = write(tmp_path, "y,a,b\n" + rows + "\n")
        res = runner.invoke(
            main,
            [
                "decompose",
                "--input", str(path),
                "--response", "y",
                "--predictors", "a,b",
            ],
        )
        assert res.exit_code == 3

    def test_ordering_cap(self, runner, tmp_path):
        data = tmp_path / "wide.csv"
        gen = runner.invoke(
            main, ["synth", "--n", "30", "--p", "9", "--out", str(data)]
        )
        assert gen.exit_code == 0
        preds = ",".join(f"x{i}" for i in range(1, 10))
        res = runner.invoke(
            main,
            [
                "orderings",
                "--input", str(data),
                "--response", "y",
                "--predictors", preds,
            ],
        )
        assert res.exit_code == 4

    def test_explicit_order_bypasses_cap(self, runner, tmp_path):
        data = tmp_path / "wide.csv"
        runner.invoke(main, ["synth", "--n", "30", "--p", "9", "--out", str(data)])
        preds = ",".join(f"x{i}" for i in range(1, 10))
        res = runner.invoke(
            main,
            [
                "orderings",
                "--input", str(data),
                "--response", "y",
                "--predictors", preds,
                "--order", preds,
            ],
        )
        assert res.exit_code == 0

    def test_order_must_be_permutation(self, runner):
        res = runner.invoke(
            main, ["orderings", "--dwaine", "--order", "TARGTPOP"]
        )
        assert res.exit_code == 2

    def test_svg_is_venn_only(self, runner):
        res = runner.invoke(main, ["fit", "--dwaine", "--format", "svg"])
        assert res.exit_code == 2


class TestSynth:
    def test_hidden_from_help_but_invocable(self, runner):
        help_res = invoke(runner, "--help")
        assert "synth" not in help_res.output
        res = invoke(runner, "synth", "--help")
        assert res.exit_code == 0

    def test_deterministic(self, runner):
        a = invoke(runner, "synth", "--n", "12", "--p", "2", "--seed", "5")
        b = invoke(runner, "synth", "--n", "12", "--p", "2", "--seed", "5")
        assert a.output == b.output
        header = a.output.splitlines()[0]
        assert header == "x1,x2,y"
        assert len(a.output.splitlines()) == 13

    def test_env_seed_overrides_flag(self, runner):
        via_env = invoke(
            runner,
            "synth", "--n", "12", "--p", "2", "--seed", "1",
            env={"VARPART_SEED": "2"},
        )
        direct = invoke(runner, "synth", "--n", "12", "--p", "2", "--seed", "2")
        assert via_env.output == direct.output

    def test_bad_env_seed(self, runner):
        res = runner.invoke(
            main, ["synth", "--n", "12", "--p", "2"], env={"VARPART_SEED": "abc"}
        )
        assert res.exit_code == 2

    def test_bad_rho(self, runner):
        res = runner.invoke(main, ["synth", "--n", "12", "--p", "2", "--rho", "1.5"])
        assert res.exit_code == 2

    def test_output_feeds_back_into_fit(self, runner, tmp_path):
        data = tmp_path / "s.csv"
        invoke(
            runner,
            "synth", "--n", "25", "--p", "3", "--rho", "0.5", "--out", str(data),
        )
        res = invoke(
            runner,
            "decompose",
            "--input", str(data),
            "--response", "y",
            "--predictors", "x1,x2,x3",
        )
        assert res.exit_code == 0
        assert "Traditional vs corrected" in res.output


class TestRealProcess:
    """One end-to-end pass through the actual interpreter exit path."""

    def run(self, *args):
        return subprocess.run(
            [sys.executable, "-m", "varpart.cli", *args],
            capture_output=True,
            text=True,
        )

    def test_success_matches_golden(self):
        proc = self.run("fit", "--dwaine")
        assert proc.returncode == 0
        assert proc.stdout == (GOLDEN / "fit_dwaine.txt").read_text()
        assert proc.stderr == ""

    def test_singular_exit_code(self, tmp_path):
        path = write(tmp_path, "y,x\n1,5\n2,5\n3,5\n4,5\n")
        proc = self.run(
            "fit", "--input", str(path), "--response", "y", "--predictors", "x"
        )
        assert proc.returncode == 3
        assert proc.stderr.startswith("error:")
        assert proc.stdout == ""
