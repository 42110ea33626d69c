import io
import re
import subprocess
import sys
from pathlib import Path

import pytest

from nonfree.cli import main

GOLDEN = Path(__file__).parent / "golden"
Q51 = "(match-all {2 8 2} (multiset integer) [<cons $m <cons ,m _>> m])"


def run(argv, stdin=""):
    out, err = io.StringIO(), io.StringIO()
    code = main(argv, stdin=io.StringIO(stdin), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_golden_script():
    code, out, err = run(["run", str(GOLDEN / "paper.egi")])
    assert (code, err) == (0, "")
    assert out == (GOLDEN / "paper.out").read_text()


def test_stdin_script():
    code, out, _ = run(["run", "-"], "(define $x 2)\n(+ x 1)\n")
    assert (code, out) == (0, "3\n")


def test_unbound_variable(tmp_path):
    f = tmp_path / "bad.egi"
    f.write_text("(+ 1\n   zz)\n")
    code, out, err = run(["run", str(f)])
    assert code == 1
    assert err == "error: unbound variable 'zz' at 2:4\n"


def test_parse_error_exit():
    code, _, err = run(["-e", "(+ 1"])
    assert code == 1 and err.startswith("error: unexpected end of input")


def test_missing_file():
    code, _, err = run(["run", "/no/such/file.egi"])
    assert code == 1 and err.startswith("error:")


def test_eval_flag():
    assert run(["-e", Q51]) == (0, "{2 2}\n", "")


def test_max_results_caps_infinite_output():
    code, out, _ = run(["--max-results", "4", "-e", "nats"])
    assert (code, out) == (0, "{1 2 3 4 …}\n")
    code, out, _ = run(["-e", "(match-all nats (set integer) [<cons $m _> m])", "--max-results", "3"])
    assert out == "{1 2 3 …}\n"


def test_repl_session():
    session = (
        "(match-all {2 8 2} (multiset integer) [<cons $m <cons ,m _>> m])\n"
        "(take 2 (match-all nats (set integer)\n"
        "   [<cons $m <cons $n _>> [m n]]))\n"
        "(car {})\n"
        "(+ 1 1)\n"
    )
    code, out, err = run(["repl"], session)
    assert code == 0
    assert out == "{2 2}\n{[1 1] [1 2]}\n2\n"
    # positions count from the start of each entry
    assert err == "error: car of empty collection at 1:1\n"


def test_no_prelude():
    code, _, err = run(["--no-prelude", "-e", "integer"])
    assert code == 1 and "unbound variable 'integer'" in err
    assert run(["run", "-", "--no-prelude"], "(+ 1 2)")[1] == "3\n"


def test_prelude_section():
    code, out, _ = run(["--prelude-section", "integer", "--prelude-section", "unordered-pair",
                        "-e", "(match-all <Pair 2 5> (unordered-pair integer) [<pair ,5 $x> x])"])
    assert (code, out) == (0, "{2}\n")


def test_trace_rounds():
    code, out, _ = run(["trace", "-e", Q51, "--rounds", "0"])
    assert out == "MState {[<cons $m <cons ,m _>> (multiset integer) {2 8 2}]} env {}\n"
    lines = run(["trace", "-e", Q51, "--rounds", "8"])[1].splitlines()
    assert "MState {[<cons ,m _> (multiset integer) {8 2}]} env {[m 2]}" in lines


def test_trace_needs_match_all():
    code, _, err = run(["trace", "-e", "(+ 1 2)"])
    assert code == 1 and "match-all" in err


def test_bench_line():
    code, out, err = run(["bench", "--k", "2", "--n", "10", "--reps", "2"])
    assert (code, out) == (0, "{}\n")
    m = re.fullmatch(r"bench k=2 n=10 calls=(\d+) ms=[\d.]+\n", err)
    assert m and int(m.group(1)) == 8 * 10 ** 2 + 6 * 10 + 5


def test_bench_rejects_small_n():
    with pytest.raises(SystemExit):
        run(["bench", "--n", "3"])


def test_module_entry_point():
    p = subprocess.run([sys.executable, "-m", "nonfree", "-e", "(+ 40 2)"],
                       capture_output=True, text=True, timeout=60)
    assert (p.returncode, p.stdout) == (0, "42\n")
