"""
Integration tests for the command-line front end.

Commands are invoked through typer's CliRunner; stderr is mixed into the output.
"""

import json
import tempfile
import unittest
from pathlib import Path
from unittest.mock import patch

from typer.testing import CliRunner

from app.cli import app

SAMPLE = "0011100011100"
DEPTHS_41 = "[1,1,1,1,1,1,1,2,1,2,3,2,1,2,3,3,3,2,1,1,2,3,3,3,3,2,3,4,3,2,3,2,2,2,2,2,2,2,1]"


class CliTestCase(unittest.TestCase):
    """Shared runner helpers."""

    def setUp(self):
        """Set up test fixtures."""
        self.runner = CliRunner()

    def invoke(self, *args):
        return self.runner.invoke(app, list(args))

    def lines(self, result):
        return result.output.strip().splitlines()


class TestGlobalOptions(CliTestCase):
    """Test cases for help, version and the global options."""

    def test_help_lists_commands(self):
        """Test that --help lists the commands and the global options."""
        result = self.invoke("--help")

        self.assertEqual(result.exit_code, 0)
        self.assertIn("gst", result.output)
        self.assertIn("torus-table", result.output)
        self.assertIn("--json", result.output)

    def test_version(self):
        """Test that --version prints the version and exits."""
        result = self.invoke("--version")

        self.assertEqual(result.exit_code, 0)
        self.assertIn("0.1.0", result.output)

    def test_log_level_is_case_insensitive(self):
        """Test that a lower-case log level is accepted."""
        result = self.invoke("--log-level", "error", "depth", "10101")

        self.assertEqual(result.exit_code, 0)
        self.assertEqual(self.lines(result)[-1], "4")

    def test_unknown_log_level_is_a_validation_error(self):
        """Test that an unknown log level prints an error and exits with status 2."""
        # Act
        result = self.invoke("--log-level", "loud", "gst", SAMPLE)

        # Assert
        self.assertEqual(result.exit_code, 2)
        self.assertIn("error: Unknown log level: loud", result.output)
        self.assertNotIn("Traceback", result.output)


class TestGiantStepCommands(CliTestCase):
    """Test cases for gst and depth."""

    def test_gst_plain(self):
        """Test the plain count of the sample string."""
        result = self.invoke("gst", SAMPLE)

        self.assertEqual(result.exit_code, 0)
        self.assertEqual(self.lines(result), ["4"])

    def test_gst_verbose_session(self):
        """Test the verbose trace of the sample string."""
        # Act
        result = self.invoke("gst", SAMPLE, "--verbose")

        # Assert
        self.assertEqual(result.exit_code, 0)
        self.assertEqual(
            self.lines(result),
            [
                "The intermediate configurations are L1, R2, R1.",
                "The transformation matrices are:",
                "[ [ 1, 0 ], [ 1, 1 ] ]",
                "[ [ 1, 1 ], [ 0, 0 ] ]",
                "[ [ 1, 1 ], [ 0, 1 ] ]",
                "and their product is [ [ 1, 2 ], [ 1, 2 ] ].",
                "The final block has configuration L2.",
                "This tunnel has 4 minimal giant step constructions.",
            ],
        )

    def test_gst_verbose_leftover(self):
        """Test the verbose trace of a string ending in a leftover 1."""
        result = self.invoke("gst", "111", "--verbose")

        self.assertEqual(result.exit_code, 0)
        self.assertIn("The string ends with a leftover 1.", result.output)
        self.assertIn("This tunnel has 3 minimal giant step constructions.", result.output)

    def test_depth_command(self):
        """Test the depth of the sample string."""
        result = self.invoke("depth", SAMPLE)

        self.assertEqual(result.exit_code, 0)
        self.assertEqual(self.lines(result), ["5"])


class TestBridgeCommands(CliTestCase):
    """Test cases for the bridge number commands."""

    def test_bridge_lb_verbose_session(self):
        """Test the verbose lower bound session of the sample string."""
        result = self.invoke("bridge-lb", SAMPLE, "--c2", "2", "--c3", "2", "--verbose")

        self.assertEqual(result.exit_code, 0)
        self.assertIn(
            "The bridge number sequence is 2, 2, 4, 6, 10, 14, 18, 22, 40, 62, 102, 142, 182.", result.output
        )
        self.assertEqual(self.lines(result)[-1], "The minimum bridge number of K-tau is 182.")

    def test_bridge_lb_help_says_the_bound_depends_on_the_seeds(self):
        """Test that bridge-lb documents that its bound is conditional on the seeds."""
        result = self.invoke("bridge-lb", "--help")

        self.assertEqual(result.exit_code, 0)
        self.assertIn("conditional", result.output)
        self.assertIn("--c2", result.output)

    def test_bridge_ub(self):
        """Test the upper bound of the sample string."""
        result = self.invoke("bridge-ub", SAMPLE)

        self.assertEqual(result.exit_code, 0)
        self.assertEqual(self.lines(result), ["414"])

    def test_closed_forms(self):
        """Test the closed-form bound commands."""
        self.assertEqual(self.lines(self.invoke("minbridge", "4")), ["24"])
        self.assertEqual(self.lines(self.invoke("torus-minbridge", "4")), ["29"])
        self.assertEqual(self.lines(self.invoke("maxbridge", "5")), ["13"])
        self.assertEqual(self.lines(self.invoke("fib-ub", "15", "4")), ["1076"])

    def test_minbridge_verbose_shows_an_attaining_tunnel(self):
        """Test that verbose minbridge names a tunnel attaining the minimum."""
        # Act
        result = self.invoke("minbridge", "4", "--verbose")

        # Assert
        self.assertEqual(result.exit_code, 0)
        self.assertEqual(
            self.lines(result),
            [
                "a_1, ..., a_4 = 2, 4, 10, 24",
                "The tunnel with parameter string 10101 attains it.",
                "24",
            ],
        )


class TestTorusCommands(CliTestCase):
    """Test cases for the torus knot commands."""

    def test_torus_slopes_byte_exact(self):
        """Test the slope line of the (41,29) torus knot."""
        result = self.invoke("torus-slopes", "41", "29")

        self.assertEqual(result.exit_code, 0)
        self.assertEqual(result.output, "[ 1/3 ], 5, 17, 29, 99, 169, 577\n")

    def test_torus_slopes_negative_argument(self):
        """Test that a negative coordinate is read as an argument, not an option."""
        result = self.invoke("torus-slopes", "181", "-48")

        self.assertEqual(result.exit_code, 0)
        self.assertEqual(result.output, "[ 6/7 ], -15, -23, -31, -151, -271, -883, -2157, -3431\n")

    def test_torus_slopes_trivial(self):
        """Test that a trivial knot prints trivial and succeeds."""
        result = self.invoke("torus-slopes", "5", "1")

        self.assertEqual(result.exit_code, 0)
        self.assertEqual(self.lines(result), ["trivial"])

    def test_torus_slopes_verbose_lists_steps(self):
        """Test that the verbose slope trace lists every cabling step."""
        result = self.invoke("torus-slopes", "41", "29", "--verbose")

        self.assertEqual(result.exit_code, 0)
        self.assertIn("cabling word UULLUUL", result.output)
        self.assertIn("knot (41,29)", result.output)
        self.assertEqual(self.lines(result)[-1], "[ 1/3 ], 5, 17, 29, 99, 169, 577")

    def test_torus_depth_and_sstring(self):
        """Test depth, parameter string and class of single torus knots."""
        self.assertEqual(self.lines(self.invoke("torus-depth", "41", "29")), ["4"])
        self.assertEqual(self.lines(self.invoke("torus-sstring", "41", "15")), ["0110"])
        self.assertEqual(self.lines(self.invoke("torus-classify", "41", "40")), ["Semisimple"])

    def test_torus_classify_verbose(self):
        """Test the verbose classification of a regular torus tunnel."""
        result = self.invoke("torus-classify", "41", "29", "--verbose")

        self.assertEqual(result.exit_code, 0)
        self.assertIn("The knot has three tunnels.", result.output)
        self.assertEqual(self.lines(result)[-1], "Regular")

    def test_torus_table_depth_list(self):
        """Test the depth table of the (41,n) torus knots."""
        result = self.invoke("torus-table", "41", "--from", "2", "--to", "40", "--field", "depth")

        self.assertEqual(result.exit_code, 0)
        self.assertEqual(self.lines(result), [DEPTHS_41])

    def test_torus_table_rows_and_output_file(self):
        """Test class rows on stdout and in the --output file."""
        with tempfile.TemporaryDirectory() as directory:
            # Arrange
            target = Path(directory) / "classes.tsv"

            # Act
            result = self.invoke(
                "torus-table", "10", "--from", "1", "--to", "7", "--field", "class", "--output", str(target)
            )

            # Assert
            self.assertEqual(result.exit_code, 0)
            self.assertEqual(self.lines(result), ["1\tTrivial", "3\tSemisimple", "7\tRegular"])
            self.assertEqual(target.read_text(), "1\tTrivial\n3\tSemisimple\n7\tRegular\n")


class TestValidationErrors(CliTestCase):
    """Test cases for invalid input."""

    def test_validation_errors_exit_2(self):
        """Test that every kind of invalid input prints an error and exits with status 2."""
        cases = [
            (["gst", "0x1"], "'x'"),
            (["torus-slopes", "6", "4"], "torus link"),
            (["bridge-lb", "000"], "has no 1"),
            (["minbridge", "0"], "at least 1"),
        ]
        for args, message in cases:
            with self.subTest(args=args):
                result = self.invoke(*args)
                self.assertEqual(result.exit_code, 2)
                self.assertIn("error:", result.output)
                self.assertIn(message, result.output)


class TestStructuredOutput(CliTestCase):
    """Test cases for --json."""

    def test_json_output(self):
        """Test that --json prints one record with the trace."""
        result = self.invoke("--json", "gst", SAMPLE)

        self.assertEqual(result.exit_code, 0)
        record = json.loads(result.output)
        self.assertEqual(record["command"], "gst")
        self.assertEqual(record["input"], {"sstring": SAMPLE})
        self.assertEqual(record["result"], 4)
        self.assertEqual(record["trace"]["configurations"], ["L1", "R2", "R1"])

    def test_human_and_json_agree(self):
        """Test that the human and structured outputs carry the same result."""
        commands = [
            ["gst", SAMPLE],
            ["depth", "10101"],
            ["bridge-lb", SAMPLE],
            ["bridge-ub", SAMPLE],
            ["minbridge", "5"],
            ["maxbridge", "7"],
            ["torus-depth", "41", "29"],
        ]
        for args in commands:
            with self.subTest(args=args):
                human = self.invoke(*args)
                structured = self.invoke("--json", *args)
                self.assertEqual(human.exit_code, 0)
                self.assertEqual(structured.exit_code, 0)
                self.assertEqual(int(human.output.strip()), json.loads(structured.output)["result"])

    def test_json_rerun_is_deterministic(self):
        """Test that feeding a record's input back in reproduces the record."""
        first = json.loads(self.invoke("--json", "torus-slopes", "181", "-48").output)
        again = self.invoke("--json", "torus-slopes", str(first["input"]["p"]), str(first["input"]["q"]))

        self.assertEqual(json.loads(again.output), first)


class TestVerifyCommand(CliTestCase):
    """Test cases for verify."""

    def test_verify_small(self):
        """Test a small passing verification run."""
        result = self.invoke("verify", "--max-len", "4", "--max-pq", "10", "--verbose")

        self.assertEqual(result.exit_code, 0)
        self.assertIn("giant_step_oracle: 30 cases, 0 violations", result.output)
        self.assertEqual(
            self.lines(result)[-1], "0 mismatches over 30 strings; 0 violations over all coprime pairs"
        )

    def test_verify_quiet_run_prints_only_the_summary(self):
        """Test that a passing run without --verbose prints the summary alone."""
        result = self.invoke("verify", "--max-len", "4", "--max-pq", "10")

        self.assertEqual(result.exit_code, 0)
        self.assertEqual(
            self.lines(result), ["0 mismatches over 30 strings; 0 violations over all coprime pairs"]
        )

    @patch("app.services.verification_service.upper_bound", return_value=0)
    def test_verify_failure_shows_counterexample_without_verbose(self, mock_upper_bound):
        """Test that a failing run names the failing check and its first counterexample."""
        # Act
        result = self.invoke("verify", "--max-len", "4", "--max-pq", "10")

        # Assert
        self.assertEqual(result.exit_code, 1)
        self.assertIn("bound_ordering: 26 cases, 26 violations (first: 1: 4 <= 0 <= 5)", result.output)
        self.assertIn("26 violations of the string and bound checks", self.lines(result)[-1])
        self.assertNotIn("giant_step_oracle", result.output)

    def test_verify_rejects_small_bounds(self):
        """Test that verify rejects a maximum length below 1."""
        result = self.invoke("verify", "--max-len", "0", "--max-pq", "10")

        self.assertEqual(result.exit_code, 2)
