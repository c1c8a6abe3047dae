import json

import pytest

from eulersum import cli

CATALAN_30 = "0.915965594177219015054603514932"


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def strip_timing(records):
    for r in records:
        r.pop("wall_time_ms", None)
    return records


def test_eval_beta(capsys):
    code, out, _ = run(capsys, "eval", "beta", "2", "--digits", "30")
    rec = json.loads(out)[0]
    assert code == 0 and rec["value"] == CATALAN_30
    assert set(rec) >= {"command", "params", "digits", "value", "truncation", "wall_time_ms", "err_bound"}


def test_eval_bernoulli(capsys):
    code, out, err = run(capsys, "eval", "bernoulli", "12")
    assert code == 0 and json.loads(out)[0]["value"] == "-691/2730"
    assert "-691/2730" in err


def test_eval_s1_equals_beta2(capsys):
    _, out_s, _ = run(capsys, "eval", "S", "1", "--digits", "20")
    _, out_b, _ = run(capsys, "eval", "beta", "2", "--digits", "20")
    assert json.loads(out_s)[0]["value"] == json.loads(out_b)[0]["value"]


@pytest.mark.parametrize(
    "argv",
    [
        ("zeta", "3"),
        ("hurwitz", "3", "1/3"),
        ("li", "2", "1", "-1", "1"),
        ("li4", "1", "1", "i", "-i"),
        ("colored", "2", "1"),
        ("euler0", "5"),
    ],
)
def test_eval_names(capsys, argv):
    code, out, _ = run(capsys, "eval", *argv, "--digits", "15")
    assert code == 0 and json.loads(out)[0]["params"]["name"] == argv[0]


def test_eval_quartic_value(capsys):
    _, out, _ = run(capsys, "eval", "li4", "1", "1", "i", "-i")
    assert json.loads(out)[0]["value"] == {
        "re": "-0.453985269150295583314241923786",
        "im": "0.643767332889268748742017402653",
    }


@pytest.mark.parametrize(
    "argv",
    [
        ("eval", "zeta", "1"),
        ("eval", "beta"),
        ("eval", "S", "2"),
        ("eval", "hurwitz", "2", "abc"),
        ("eval", "beta", "2", "--digits", "5"),
        ("eval", "beta", "2", "--digits", "201"),
    ],
)
def test_domain_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and "error" in err


def test_unknown_name_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["eval", "gamma", "2"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit):
        cli.main(["verify", "--only", "nope"])


def test_env_digits(monkeypatch, capsys):
    monkeypatch.setenv(cli.ENV_DIGITS, "12")
    _, out, _ = run(capsys, "eval", "beta", "2")
    assert json.loads(out)[0]["digits"] == 12
    _, out, _ = run(capsys, "eval", "beta", "2", "--digits", "14")
    assert json.loads(out)[0]["digits"] == 14
    monkeypatch.setenv(cli.ENV_DIGITS, "9")
    assert run(capsys, "eval", "beta", "2")[0] == 2


def test_verify_thm1(capsys):
    code, out, _ = run(capsys, "verify", "--only", "thm1", "--m", "3", "--digits", "30")
    recs = json.loads(out)
    assert code == 0 and len(recs) == 1
    assert recs[0]["pass"] and recs[0]["digits_agreed"] >= 25
    assert set(recs[0]) >= {"command", "params", "digits", "lhs", "rhs", "abs_diff", "digits_agreed", "pass", "truncation", "wall_time_ms"}


def test_verify_lemma_h0(capsys):
    code, out, _ = run(capsys, "verify", "--only", "lemma", "--h", "0")
    rec = json.loads(out)[0]
    assert code == 0 and rec["lhs"].startswith("1.000") and rec["rhs"].startswith("1.000")


def test_verify_failure_exit_1(monkeypatch, capsys):
    real = cli.identities.thm1_check

    def bad(m, ctx):
        rep = real(m, ctx)
        rep.passed = False
        return rep

    monkeypatch.setattr(cli.identities, "thm1_check", bad)
    code, _, _ = run(capsys, "verify", "--only", "thm1", "--m", "1")
    assert code == 1


def test_verify_truncation_failure_recorded(monkeypatch, capsys):
    from eulersum.precision import PrecisionError

    def boom(h, ctx):
        raise PrecisionError("no convergence")

    monkeypatch.setattr(cli.identities, "lemma_check", boom)
    code, out, _ = run(capsys, "verify", "--only", "lemma", "--h", "2")
    rec = json.loads(out)[0]
    assert code == 1 and rec["pass"] is False and "no convergence" in rec["truncation"]["error"]


def test_verify_plan_order_is_deterministic():
    a = [ident for ident, _ in cli.verify_plan()]
    assert a == [ident for ident, _ in cli.verify_plan()]
    assert a[0] == "thm1" and a[-1] == "mahler_identity"
    assert len(a) == 5 + 72 + 9 + 27 + 6 + 192 + 11 + 3 + 2 * 8 + 4 + 1


def test_verify_out_file(tmp_path, capsys):
    path = tmp_path / "r.json"
    code, out, _ = run(capsys, "verify", "--only", "twist,mahler_identity", "--out", str(path))
    recs = json.loads(path.read_text(encoding="utf-8"))
    assert code == 0 and len(recs) == 5
    assert "5/5 passed" in out


def test_mahler_command(capsys):
    code, out, _ = run(capsys, "mahler", "--samples", "100000", "--seed", "7")
    rec = json.loads(out)[0]
    assert code == 0 and abs(float(rec["z_score"])) <= 3
    assert rec["value"]["samples_used"] == 100000


@pytest.mark.parametrize("mode", ["constant2", "monomial"])
def test_mahler_sanity(capsys, mode):
    code, out, _ = run(capsys, "mahler", "--samples", "20000", "--sanity", mode)
    assert code == 0 and json.loads(out)[0]["pass"]


def test_mahler_too_few_samples(capsys):
    assert run(capsys, "mahler", "--samples", "100")[0] == 2


def test_mahler_json_deterministic(capsys):
    _, a, _ = run(capsys, "mahler", "--samples", "20000", "--seed", "3")
    _, b, _ = run(capsys, "mahler", "--samples", "20000", "--seed", "3")
    assert strip_timing(json.loads(a)) == strip_timing(json.loads(b))
