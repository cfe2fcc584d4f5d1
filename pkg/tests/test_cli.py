from __future__ import annotations

import io
import subprocess
import sys

import pytest

from kecs.cli import EXIT_INPUT, EXIT_OK, run
from kecs.coloring import parse_coloring, validate
from kecs.multigraph import Multigraph, format_edge_list, generate, parse_edge_list


def call(*argv: str) -> tuple[int, str, str]:
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def twins(tmp_path):
    path = tmp_path / "twins.txt"
    path.write_text(format_edge_list(generate("joinedTwins", 2)))
    return path


def test_gen_writes_edge_list():
    code, out, _ = call("gen", "cK3", "--c", "2")
    assert code == EXIT_OK
    assert parse_edge_list(out) == generate("cK3", 2)


def test_gen_random_is_seeded():
    a = call("gen", "random", "--n", "5", "--m", "9", "--seed", "4")[1]
    b = call("gen", "random", "--n", "5", "--m", "9", "--seed", "4")[1]
    assert a == b and "p multigraph 5" in a


def test_bounds_rho():
    assert call("bounds", "--delta", "6", "--k", "5", "--t", "8") == (EXIT_OK, "rho=7/2\n", "")


def test_bounds_fractions():
    code, out, _ = call("bounds", "--delta", "5")
    assert code == EXIT_OK
    assert out == "shannon=5/7\nbeyond=5/6\nconnected=11/15\n"


def test_bounds_report_for_graph(twins):
    code, out, _ = call("bounds", str(twins))
    assert out == "delta=5 t=6 k=3 theorem=thm:main guarantee=11/15 forbidden=2K3+e\n"


def test_bounds_usage_errors():
    assert call("bounds")[0] == EXIT_INPUT
    assert call("bounds", "--delta", "6", "--k", "5")[0] == EXIT_INPUT
    assert call("bounds", "--delta", "6", "--k", "9", "--t", "8")[0] == EXIT_INPUT


def test_color_then_verify(twins, tmp_path):
    code, out, _ = call("color", str(twins))
    assert code == EXIT_OK
    assert "s colored 11 total 15 k 5" in out
    assert "b delta=5 t=6 k=3 theorem=thm:main guarantee=11/15" in out
    assert "certification pass" in out
    coloring = tmp_path / "col.txt"
    coloring.write_text(out)
    assert call("verify", str(twins), str(coloring)) == (EXIT_OK, "ok\n", "")


def test_verify_rejects_conflict(twins, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("".join(f"c {e} 1\n" for e in range(15)) + "s colored 15 total 15 k 5\n")
    code, out, _ = call("verify", str(twins), str(bad))
    assert code == EXIT_INPUT
    assert out.startswith("invalid edges")


def test_approx_output(twins):
    code, out, _ = call("approx", str(twins), "--k", "4")
    lines = out.splitlines()
    assert code == EXIT_OK
    assert lines[0].startswith("f ")
    assert lines[1].startswith("component 0 ")
    assert lines[-1].startswith("ratio ")
    assert "guarantee" in lines[-1]


def test_oracle_output(twins):
    code, out, _ = call("oracle", str(twins), "--k", "5")
    assert code == EXIT_OK
    assert out.startswith("opt 11\n")
    col = parse_coloring(out.split("\n", 1)[1])
    assert validate(generate("joinedTwins", 2), col) == []


def test_oracle_defaults_to_max_degree(twins):
    assert call("oracle", str(twins))[1].startswith("opt 11\n")


def test_missing_file():
    code, _, err = call("color", "/nonexistent/graph.txt")
    assert code == EXIT_INPUT and "error" in err


def test_malformed_graph(tmp_path):
    path = tmp_path / "g.txt"
    path.write_text("p multigraph 2 1\ne 1 3\n")
    code, _, err = call("color", str(path))
    assert code == EXIT_INPUT and "out of range" in err


def test_unknown_verb():
    assert call("paint")[0] == EXIT_INPUT


def test_verbose_logs_to_stderr(tmp_path):
    # greedy leaves this graph one augmentation short
    g = Multigraph(5, ((2, 3), (3, 4), (1, 4), (0, 4), (1, 2), (2, 4), (0, 2)))
    path = tmp_path / "g.txt"
    path.write_text(format_edge_list(g))
    code, _, err = call("--verbose", "color", str(path))
    assert code == EXIT_OK
    assert err == "(6,0,1) -> (7,0,0) augment\n"


def test_output_is_byte_identical(twins):
    assert call("approx", str(twins), "--k", "5") == call("approx", str(twins), "--k", "5")


def test_module_entry_point(twins):
    proc = subprocess.run([sys.executable, "-m", "kecs", "bounds", str(twins)], capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.startswith("delta=5")
