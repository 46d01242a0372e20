from __future__ import annotations

import contextlib
import io
import json
import tempfile
import unittest
from pathlib import Path
from unittest import mock

from nslcheck.cli import EXIT_FINDING, EXIT_INTENDED_INVALID, EXIT_OK, EXIT_USAGE, run_cli
from nslcheck.config.settings import Settings


FIXTURE_DIR = Path(__file__).resolve().parents[1] / "fixtures"


class CliTestCase(unittest.TestCase):
    def setUp(self) -> None:
        patcher = mock.patch("nslcheck.cli._settings", return_value=Settings())
        patcher.start()
        self.addCleanup(patcher.stop)
        self._tmpdir = tempfile.TemporaryDirectory()
        self.addCleanup(self._tmpdir.cleanup)
        self.tmp = Path(self._tmpdir.name)

    def _run(self, *args: str):
        out, err = io.StringIO(), io.StringIO()
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            code = run_cli(list(args))
        return code, out.getvalue(), err.getvalue()

    def _json(self, *args: str):
        code, out, _ = self._run(*args)
        return code, json.loads(out)

    def _write(self, name: str, text: str) -> str:
        path = self.tmp / name
        path.write_text(text, encoding="utf-8")
        return str(path)

    def test_verify_exit_codes(self) -> None:
        code, report = self._json("verify", str(FIXTURE_DIR / "four-node-addition.nsl"))
        self.assertEqual(code, EXIT_FINDING)
        self.assertEqual(report["result"]["multiplicity"]["value"], 7)

        code, report = self._json("verify", str(FIXTURE_DIR / "mnist-half.nsl"), "--mode", "bij")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(report["result"]["status"], "shortcut-free")

        code, _ = self._json("verify", str(FIXTURE_DIR / "mnist-half.nsl"), "--mode", "fn")
        self.assertEqual(code, EXIT_FINDING)

        broken = self._write("bad.nsl", "outputs a b\nconcepts 0 1\nintended a=0 b=1\nconstraint pin a = 1\n")
        code, report = self._json("verify", broken)
        self.assertEqual(code, EXIT_INTENDED_INVALID)
        self.assertEqual(report["result"]["status"], "intended-invalid")

    def test_source_errors_exit_3(self) -> None:
        path = self._write("typo.nsl", "outputs a\nconcepts 0\nintended a=0\nconstraint pin z = 0\n")
        code, out, err = self._run("verify", path)
        self.assertEqual(code, EXIT_USAGE)
        self.assertEqual(out, "")
        self.assertIn("typo.nsl:4:16: undefined-output", err)

    def test_missing_file_and_bad_option(self) -> None:
        self.assertEqual(self._run("verify", str(self.tmp / "absent.nsl"))[0], EXIT_USAGE)
        self.assertEqual(self._run("verify", str(FIXTURE_DIR / "mnist-half.nsl"), "--mode", "x")[0], EXIT_USAGE)
        self.assertEqual(self._run("no-such-command")[0], EXIT_USAGE)

    def test_cap_saturation_is_reported(self) -> None:
        code, report = self._json("verify", str(FIXTURE_DIR / "four-node-addition.nsl"), "--mode", "fn", "--cap", "5")
        self.assertEqual(code, EXIT_FINDING)
        self.assertFalse(report["exact"])
        self.assertEqual(report["result"]["multiplicity"]["display"], "≥ 5")

    def test_measures_and_graph(self) -> None:
        code, report = self._json("measures", str(FIXTURE_DIR / "four-node-addition.nsl"))
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(report["result"]["ambiguity"]["value"], 4)

        code, report = self._json("graph", str(FIXTURE_DIR / "mnist-half.nsl"), "--mode", "fn")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(report["result"]["components"], [["n0", "n1"], ["n2", "n3", "n4"]])
        self.assertEqual([c["count"]["value"] for c in report["result"]["projection_counts"]], [1, 3])

    def test_symmetry_commands(self) -> None:
        code, report = self._json("discriminate", str(FIXTURE_DIR / "four-node-addition.nsl"))
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(report["result"]["witness"]["pair"], [0, 3])

        code, report = self._json("automorphisms", str(FIXTURE_DIR / "modulo-successor.nsl"))
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(report["result"]["order"], 3)
        self.assertEqual(report["result"]["witnesses"][0]["permutation"], "(0 1 2)")

    def test_repair(self) -> None:
        code, report = self._json("repair", str(FIXTURE_DIR / "four-node-addition.nsl"))
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(
            [it["added"] for it in report["result"]["iterations"]],
            ["constraint pin n1 = 1", "constraint pin n0 = 0"],
        )

        code, report = self._json("repair", str(FIXTURE_DIR / "four-node-addition.nsl"), "--T", "1")
        self.assertEqual(code, EXIT_FINDING)
        self.assertEqual(report["result"]["outcome"], "timeout")

        code, report = self._json("repair", str(FIXTURE_DIR / "four-node-addition.nsl"), "--strategy", "minimal")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(report["result"]["size"], 2)

        code, report = self._json(
            "repair", str(FIXTURE_DIR / "four-node-addition.nsl"), "--strategy", "random", "--runs", "3", "--seed", "4"
        )
        self.assertEqual(code, EXIT_OK)
        self.assertEqual([r["seed"] for r in report["result"]["per_seed"]], [4, 5, 6])

        self.assertEqual(self._run("repair", str(FIXTURE_DIR / "four-node-addition.nsl"), "--strategy", "x")[0], EXIT_USAGE)

    def test_queries(self) -> None:
        code, report = self._json("queries", str(FIXTURE_DIR / "four-node-addition.nsl"), "--strategy", "u")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(report["result"]["query_count"], 2)
        self.assertEqual(report["result"]["bounds"], {"lower": 2, "upper": 4})

        code, report = self._json("queries", str(FIXTURE_DIR / "four-node-addition.nsl"), "--strategy", "r", "--runs", "4")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(report["result"]["runs"], 4)

    def test_query_lower_bound_uses_the_declared_concepts(self) -> None:
        # four concepts declared, only 0 and 1 ever used by a valid mapping
        path = self._write(
            "narrow.nsl",
            "outputs a b\nconcepts 0 1 2 3\nintended a=0 b=1\n"
            "constraint domain a { 0, 1 }\nconstraint domain b { 0, 1 }\n",
        )
        code, report = self._json("queries", path, "--mode", "fn")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(report["result"]["bounds"], {"lower": 1, "upper": 2})

    def test_queries_refuse_a_capped_candidate_set(self) -> None:
        code, out, err = self._run("queries", str(FIXTURE_DIR / "four-node-addition.nsl"), "--cap", "3")
        self.assertEqual(code, EXIT_USAGE)
        self.assertEqual(out, "")
        self.assertIn("exact valid set", err)

    def test_reductions(self) -> None:
        written = self.tmp / "encoded.nsl"
        code, report = self._json("reduce-cnf", str(FIXTURE_DIR / "small.cnf"), "--write", str(written))
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(report["result"]["sharp_sat"], 4)
        self.assertTrue(report["result"]["identity_holds"])
        self.assertTrue(written.read_text(encoding="utf-8").startswith("outputs n1 nb1"))

        code, report = self._json("reduce-setcover", str(FIXTURE_DIR / "small.setcover"))
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(report["result"]["min_cover"], 2)

        bad = self._write("bad.cnf", "p cnf 1 1\n2 0\n")
        self.assertEqual(self._run("reduce-cnf", bad)[0], EXIT_USAGE)

    def test_export_asp(self) -> None:
        code, out, _ = self._run("export-asp", str(FIXTURE_DIR / "modulo-successor.nsl"))
        self.assertEqual(code, EXIT_OK)
        self.assertTrue(out.startswith("% nslcheck export, bijection mode\n"))
        target = self.tmp / "prog.lp"
        code, out, _ = self._run("export-asp", str(FIXTURE_DIR / "modulo-successor.nsl"), "-o", str(target))
        self.assertEqual(out, "")
        self.assertIn("#show maps_to/2.", target.read_text(encoding="utf-8"))

    def test_fixture_command(self) -> None:
        code, report = self._json("fixture", "four-node-repaired")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(report["result"]["expected_multiplicity"], {"bijection": 1, "function": 3})

        code, out, _ = self._run("fixture", "mnist-half", "--human", "--write", str(self.tmp))
        self.assertEqual(code, EXIT_OK)
        self.assertIn("meta task pairwise digit sums over 0..4", out)
        self.assertEqual(
            (self.tmp / "mnist-half.nsl").read_text(encoding="utf-8"),
            (FIXTURE_DIR / "mnist-half.nsl").read_text(encoding="utf-8"),
        )
        self.assertEqual(self._run("fixture", "nope")[0], EXIT_USAGE)

    def test_config_saves_settings(self) -> None:
        target = self.tmp / "settings.json"
        saved = {}

        def fake_save(settings, path=None):
            saved.update(vars(settings))
            return target

        with mock.patch.object(Settings, "save", fake_save):
            code, report = self._json("config", "--mode", "fn", "--cap", "50")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(saved["default_mode"], "fn")
        self.assertEqual(report["result"]["model_cap"], 50)
        self.assertEqual(report["result"]["default_mode"], "function")


if __name__ == "__main__":
    unittest.main()
