import json
from fractions import Fraction as F

import pytest

from hahnpoly.cli import (
    EXIT_INPUT,
    EXIT_MISMATCH,
    EXIT_NEGATIVE,
    EXIT_OK,
    main,
)
from hahnpoly.functional import MomentFunctional


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


CHARLIER_FLAGS = ["--d", "-1", "--e", "1/2", "--b", "1", "--q", "1", "--omega", "1"]


class TestArgumentHandling:
    def test_bad_rational(self, capsys):
        code, _, err = run(capsys, "classify", "--q", "2", "--omega", "0", "--d", "one")
        assert code == EXIT_INPUT
        assert "rational" in json.loads(err)["error"]

    def test_preset_exclusive_with_explicit(self, capsys):
        code, _, err = run(capsys, "classify", "--preset", "charlier", "--q", "2")
        assert code == EXIT_INPUT
        assert "mutually exclusive" in json.loads(err)["error"]

    def test_unknown_preset(self, capsys):
        code, _, err = run(capsys, "classify", "--preset", "legendre")
        assert code == EXIT_INPUT

    def test_explicit_needs_frame(self, capsys):
        code, _, err = run(capsys, "classify", "--d", "-1", "--e", "1/2")
        assert code == EXIT_INPUT
        assert "--q" in json.loads(err)["error"]

    def test_degenerate_frame_is_input_error(self, capsys):
        code, _, _ = run(capsys, "classify", "--d", "1", "--q", "1", "--omega", "0")
        assert code == EXIT_INPUT

    def test_depth_env_var(self, capsys, monkeypatch):
        monkeypatch.setenv("HAHNPOLY_DEPTH", "3")
        code, out, _ = run(capsys, "moments", "--preset", "charlier")
        assert code == EXIT_OK
        assert len(json.loads(out)["moments"]) == 4

    def test_depth_env_var_invalid(self, capsys, monkeypatch):
        monkeypatch.setenv("HAHNPOLY_DEPTH", "three")
        code, _, _ = run(capsys, "moments", "--preset", "charlier")
        assert code == EXIT_INPUT


class TestClassify:
    def test_regular_preset(self, capsys):
        code, out, _ = run(capsys, "classify", "--preset", "charlier", "--n", "10")
        assert code == EXIT_OK
        payload = json.loads(out)
        assert payload["regular"] is True
        assert payload["firstRegularityFailure"] is None

    def test_irregular_pair(self, capsys):
        code, out, _ = run(
            capsys, "classify", "--d", "-1", "--b", "1", "--q", "1", "--omega", "1"
        )
        assert code == EXIT_NEGATIVE
        payload = json.loads(out)
        assert payload["firstRegularityFailure"] == {
            "index": 0,
            "condition": "phi_root_condition",
        }

    def test_human_format(self, capsys):
        code, out, _ = run(
            capsys, "classify", "--preset", "meixner", "--n", "6", "--format", "human"
        )
        assert code == EXIT_OK and "regular up to N=6" in out


class TestRecurrence:
    def test_charlier_json(self, capsys):
        code, out, _ = run(capsys, "recurrence", *CHARLIER_FLAGS, "--n", "5")
        assert code == EXIT_OK
        payload = json.loads(out)
        assert payload["beta"][:3] == ["1/2", "3/2", "5/2"]
        assert payload["gamma"][1:4] == ["1/2", "1", "3/2"]

    def test_csv_header(self, capsys):
        code, out, _ = run(
            capsys, "recurrence", "--preset", "charlier", "--n", "3", "--format", "csv"
        )
        lines = out.strip().splitlines()
        assert code == EXIT_OK and lines[0] == "n,beta,gamma"
        assert lines[1].startswith("0,1/2,")

    def test_irregular_exits_negative(self, capsys):
        code, _, err = run(
            capsys, "recurrence", "--d", "-1", "--b", "1", "--q", "1", "--omega", "1"
        )
        assert code == EXIT_NEGATIVE
        assert "report" in json.loads(err)


class TestMoments:
    def test_round_trips_through_functional(self, capsys):
        code, out, _ = run(capsys, "moments", "--preset", "charlier", "--n", "8")
        assert code == EXIT_OK
        payload = json.loads(out)
        u = MomentFunctional.from_json_dict(payload)
        assert u.moments == tuple(F(1, 2) ** n for n in range(9))

    def test_y0_scaling(self, capsys):
        code, out, _ = run(capsys, "moments", "--preset", "charlier", "--n", "2", "--y0", "3")
        assert json.loads(out)["moments"][0] == "3"

    def test_rationals_never_floats(self, capsys):
        _, out, _ = run(capsys, "moments", "--preset", "little-q-laguerre", "--n", "6")
        payload = json.loads(out)
        for entry in payload["moments"] + payload["powerMoments"]:
            assert isinstance(entry, str) and "." not in entry

    def test_inadmissible_pair(self, capsys):
        code, _, err = run(
            capsys, "moments", "--a", "1", "--c", "1", "--d=-3/4", "--e", "1",
            "--q", "2", "--omega", "0",
        )
        assert code == EXIT_NEGATIVE
        assert json.loads(err)["index"] == 2


class TestVerify:
    def test_gram_suite_preset(self, capsys):
        code, out, _ = run(
            capsys, "verify", "--preset", "charlier", "--suite", "gram", "--n", "6"
        )
        assert code == EXIT_OK
        payload = json.loads(out)
        assert payload["passed"] is True
        assert all(c["passed"] for c in payload["checks"])
        assert all(c["name"].startswith("charlier:") for c in payload["checks"])

    def test_fuzzed_moment_detected(self, capsys):
        code, out, _ = run(
            capsys, "verify", "--preset", "charlier", "--suite", "gram",
            "--n", "6", "--fuzz-moment", "3",
        )
        assert code == EXIT_MISMATCH
        payload = json.loads(out)
        assert not payload["passed"]

    def test_identities_without_pair(self, capsys):
        code, out, _ = run(capsys, "verify", "--suite", "identities")
        assert code == EXIT_OK
        assert json.loads(out)["passed"] is True

    def test_rodrigues_explicit_pair(self, capsys):
        code, out, _ = run(
            capsys, "verify", "--suite", "rodrigues", *CHARLIER_FLAGS,
            "--n", "4", "--test-degree", "6",
        )
        assert code == EXIT_OK
        assert json.loads(out)["passed"] is True


class TestPresets:
    def test_catalog_json(self, capsys):
        code, out, _ = run(capsys, "presets")
        assert code == EXIT_OK
        payload = json.loads(out)
        assert set(payload) == {"charlier", "meixner", "al-salam-carlitz", "little-q-laguerre"}
        assert payload["charlier"]["e"] == "1/2"

    def test_catalog_csv(self, capsys):
        code, out, _ = run(capsys, "presets", "--format", "csv")
        lines = out.strip().splitlines()
        assert lines[0] == "name,a,b,c,d,e,q,omega"
        assert len(lines) == 5
