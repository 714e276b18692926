"""CLI contract tests: exit codes, determinism, artifact round trips."""

import json

from gplab.cli import main


def run(args):
    return main(args)


def test_members_expression_string(tmp_path, capsys):
    out = tmp_path / "m.csv"
    code = run(
        [
            "members",
            "--expr",
            "let phi = root(x^2-x-1, 1, 2); "
            "floor(1 - frac(theta*floor(2*n*(n*phi - floor(n*phi)))))",
            "--from",
            "2",
            "--to",
            "60",
            "--out",
            str(out),
        ]
    )
    assert code == 0
    body = out.read_text().splitlines()
    assert body[0] == "n"
    # one branch of the Fibonacci indicator: a subset of the Fibonacci numbers
    got = [int(x) for x in body[1:]]
    assert set(got) <= {2, 3, 5, 8, 13, 21, 34, 55}


def test_members_certificate_file(tmp_path):
    cert_path = tmp_path / "fib.gp"
    code = run(["cert", "--construction", "fibonacci", "--a", "1", "--out", str(cert_path)])
    assert code == 0
    text = cert_path.read_text()
    program = text.split("\n\n", 1)[1]
    expr_path = tmp_path / "fib-expr.gp"
    expr_path.write_text(program)
    out = tmp_path / "members.csv"
    code = run(
        ["members", "--expr", str(expr_path), "--from", "2", "--to", "100", "--out", str(out)]
    )
    assert code == 0
    got = [int(x) for x in out.read_text().splitlines()[1:]]
    assert got == [2, 3, 5, 8, 13, 21, 34, 55, 89]


def test_exit_code_parse_error(capsys):
    assert run(["members", "--expr", "floor(n", "--from", "1", "--to", "2"]) == 2
    err = capsys.readouterr().err
    assert "line 1" in err


def test_exit_code_bad_construction_params():
    assert run(["cert", "--construction", "quadratic", "--a", "1", "--norm", "1"]) == 2
    assert run(["verify", "--construction", "cubic", "--a", "1", "--b", "3", "--to", "100"]) == 2


def test_exit_code_unknown_suite():
    assert run(["suite", "nope"]) == 2


def test_exit_code_precision_exhausted():
    # (theta + 1) - theta is exactly 1, but interval streams cannot certify
    # the cancellation, so the floor stays undecided up to any budget
    code = run(
        ["members", "--expr", "floor(theta + 1 - theta)", "--from", "1", "--to", "1",
         "--maxprec", "2048"]
    )
    assert code == 3


def test_eval_and_determinism(tmp_path):
    out1 = tmp_path / "a.csv"
    out2 = tmp_path / "b.csv"
    args = ["eval", "--expr", "n/2 - floor(n/2)", "--from", "0", "--to", "9", "--format", "json"]
    assert run(args + ["--out", str(out1)]) == 0
    assert run(args + ["--out", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()
    rows = json.loads(out1.read_text())
    assert rows[7]["value"] == 0.5


def test_members_jobs_stability(tmp_path):
    expr = "let phi = root(x^2-x-1, 1, 2); floor(1 - frac(theta*floor(2*n*(n*phi - floor(n*phi)))))"
    outs = []
    for jobs in ("1", "3"):
        out = tmp_path / f"j{jobs}.csv"
        assert run(["members", "--expr", expr, "--from", "2", "--to", "400",
                    "--jobs", jobs, "--out", str(out)]) == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]


def test_verify_command(tmp_path):
    out = tmp_path / "verify.txt"
    assert run(["verify", "--construction", "fibonacci", "--a", "1", "--to", "10000",
                "--out", str(out)]) == 0
    text = out.read_text()
    assert "symmetric_difference: \n" in text or "symmetric_difference:\n" in text


def test_cf_command_output(tmp_path):
    out = tmp_path / "cf.csv"
    assert run(["cf", "--expr", "let t = root(x^2-4*x+1, 3, 4); t", "--count", "6",
                "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0].startswith("# continued fraction: [3; (1,2)*]")


def test_suite_quick(tmp_path, capsys):
    out = tmp_path / "suite.txt"
    assert run(["suite", "quick", "--out", str(out)]) == 0
    text = out.read_text()
    assert "checks passed" in text and "FAIL" not in text


def test_heis_equidist_csv(tmp_path):
    out = tmp_path / "eq.csv"
    assert run(["heis", "--mode", "equidist", "--to", "2000", "--grid", "2",
                "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "box_index,count,volume,deviation"
    assert len(lines) == 2 + 8  # header + 8 boxes + discrepancy comment
    assert lines[-1].startswith("# max_discrepancy:")
    counts = [int(l.split(",")[1]) for l in lines[1:9]]
    assert sum(counts) == 2000
