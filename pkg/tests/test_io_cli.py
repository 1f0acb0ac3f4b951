"""Graph files, weight generation, records, sidecars, and the CLI."""

import io
import json
import subprocess
import sys

import pytest

from helpers import random_graph
from mwis import ParseError, WeightedGraph, brute_force_mwis, lift_solution
from mwis import graph_io
from mwis.cli import main
from mwis.solution import verify_independent_set

EDGE_FIXTURE = "2 1 10\n5 2\n1 1\n"


def test_parse_weighted_path():
    g = graph_io.parse_graph_text("3 2 10\n5 2\n7 1 3\n2 2\n")
    assert [g.weight(v) for v in range(3)] == [5, 7, 2]
    assert g.has_edge(0, 1) and g.has_edge(1, 2) and not g.has_edge(0, 2)


def test_parse_unweighted_then_generate():
    g = graph_io.parse_graph_text("3 2 0\n2\n1 3\n2\n")
    assert [g.weight(v) for v in range(3)] == [1, 1, 1]
    graph_io.generate_weights(g, seed=42)
    w1 = [g.weight(v) for v in range(3)]
    assert all(1 <= w <= 200 for w in w1)
    g2 = graph_io.parse_graph_text("3 2 0\n2\n1 3\n2\n")
    graph_io.generate_weights(g2, seed=42)
    assert [g2.weight(v) for v in range(3)] == w1


def test_parse_comments_skipped():
    g = graph_io.parse_graph_text("% header comment\n2 1 10\n% interior\n3 2\n4 1\n")
    assert g.weight(0) == 3 and g.weight(1) == 4


def test_parse_self_loop_reports_line():
    with pytest.raises(ParseError) as exc:
        graph_io.parse_graph_text("2 1 10\n3 1\n4 1\n")
    assert exc.value.line == 2


def test_parse_asymmetric_rejected():
    with pytest.raises(ParseError, match="asymmetric"):
        graph_io.parse_graph_text("3 2 0\n2 3\n1 3\n\n")


def test_parse_bad_header():
    with pytest.raises(ParseError, match="header"):
        graph_io.parse_graph_text("nope\n")


def test_parse_bad_weight():
    with pytest.raises(ParseError, match="weight"):
        graph_io.parse_graph_text("1 0 10\n0\n")


def test_parse_neighbor_out_of_range():
    with pytest.raises(ParseError, match="out of range"):
        graph_io.parse_graph_text("2 1 0\n2\n3\n")


def test_parse_edge_count_mismatch():
    with pytest.raises(ParseError, match="mentions"):
        graph_io.parse_graph_text("2 2 0\n2\n1\n")


def test_round_trip_serialization():
    for seed in range(10):
        g = random_graph(seed, 12, 0.3)
        text = graph_io.serialize_graph(g)
        g2 = graph_io.parse_graph_text(text)
        assert g2.canonical_serialization() == g.canonical_serialization()
        assert graph_io.serialize_graph(g2) == text


def test_weight_generation_degenerate_interval():
    g = WeightedGraph([1] * 5)
    graph_io.generate_weights(g, seed=0, lo=7, hi=7)
    assert all(g.weight(v) == 7 for v in range(5))


def test_weight_generation_mean():
    rng = graph_io.SplitMix64(123)
    draws = [1 + rng.below(200) for _ in range(100_000)]
    mean = sum(draws) / len(draws)
    assert abs(mean - 100.5) / 100.5 < 0.01
    assert min(draws) >= 1 and max(draws) <= 200


def test_convergence_csv_format():
    buf = io.StringIO()
    graph_io.write_convergence([(0.5, 10), (1.25, 12)], buf)
    assert buf.getvalue() == "elapsed_seconds,weight\n0.500000,10\n1.250000,12\n"


def test_lifting_sidecar_round_trip():
    from helpers import copy_graph
    from mwis import reduce_to_kernel
    # seed 4 leaves a nonempty kernel whose stack contains fold records, so
    # the sidecar has to carry folded vertex ids beyond the input range
    g = random_graph(4, 30, 0.15)
    original = copy_graph(g)
    kr = reduce_to_kernel(g)
    assert kr.kernel.n_alive > 0
    assert any(r.introduced is not None for r in kr.stack)
    kernel_map = sorted(kr.kernel.alive_vertices())
    buf = io.StringIO()
    graph_io.write_lifting(kr.offset, kernel_map, kr.stack, buf)
    buf.seek(0)
    offset, mapping, records = graph_io.read_lifting(buf)
    assert offset == kr.offset
    assert mapping == kernel_map
    assert records == kr.stack
    # lifting through the re-read records matches the in-process lift
    best = brute_force_mwis(kr.kernel)
    local = [mapping[kernel_map.index(v)] for v in best.vertices]
    lifted = lift_solution(local, records)
    assert lifted == lift_solution(best.vertices, kr.stack)
    assert verify_independent_set(original, lifted) == best.weight + offset
    from mwis import solve
    assert best.weight + offset == solve(original).solution.weight


# ----------------------------------------------------------------------
# CLI
# ----------------------------------------------------------------------

@pytest.fixture
def edge_graph(tmp_path):
    p = tmp_path / "edge.graph"
    p.write_text(EDGE_FIXTURE)
    return p


def test_cli_solve_record(edge_graph, capsys):
    assert main(["solve", str(edge_graph)]) == 0
    record = json.loads(capsys.readouterr().out)
    assert record["weight"] == 5
    assert record["optimal"] is True
    assert record["solution"] == [1]
    assert record["variant"] == "full"


def test_cli_verify_accepts_record(edge_graph, tmp_path, capsys):
    main(["solve", str(edge_graph)])
    sol = tmp_path / "sol.json"
    sol.write_text(capsys.readouterr().out)
    assert main(["verify", str(edge_graph), str(sol)]) == 0
    assert "OK" in capsys.readouterr().out


def test_cli_verify_rejects_edge(edge_graph, tmp_path, capsys):
    sol = tmp_path / "bad.txt"
    sol.write_text("1 2\n")
    assert main(["verify", str(edge_graph), str(sol)]) == 1
    assert "edge 0-1" in capsys.readouterr().err


def test_cli_reduce_and_external_lift(tmp_path, capsys):
    g = random_graph(8, 16, 0.25)
    gpath = tmp_path / "in.graph"
    gpath.write_text(graph_io.serialize_graph(g))
    kpath, lpath = tmp_path / "kernel.graph", tmp_path / "lift.side"
    assert main(["reduce", str(gpath), "--kernel-out", str(kpath),
                 "--lift", str(lpath)]) == 0
    record = json.loads(capsys.readouterr().out)
    kernel = graph_io.parse_graph(kpath)
    assert kernel.n_alive == record["kernel_n"]
    with open(lpath) as fh:
        offset, mapping, records = graph_io.read_lifting(fh)
    best = brute_force_mwis(kernel)  # kernel file uses dense local ids
    lifted = lift_solution([mapping[v] for v in best.vertices], records)
    assert verify_independent_set(g, lifted) == best.weight + offset
    assert best.weight + offset == brute_force_mwis(g).weight


def test_cli_ls_and_hybrid(tmp_path, capsys):
    g = random_graph(4, 30, 0.15)
    gpath = tmp_path / "g.graph"
    gpath.write_text(graph_io.serialize_graph(g))
    conv = tmp_path / "conv.csv"
    assert main(["ls", str(gpath), "--iterations", "200",
                 "--convergence", str(conv)]) == 0
    ls_rec = json.loads(capsys.readouterr().out)
    lines = conv.read_text().strip().splitlines()
    assert lines[0] == "elapsed_seconds,weight"
    weights = [int(line.split(",")[1]) for line in lines[1:]]
    assert weights == sorted(set(weights))
    assert main(["hybrid", str(gpath), "--iterations", "200"]) == 0
    hy_rec = json.loads(capsys.readouterr().out)
    assert hy_rec["weight"] >= ls_rec["weight"]
    assert hy_rec["optimal"] is False


def test_cli_gen_weights_and_fmt0_flow(tmp_path, capsys):
    raw = tmp_path / "raw.graph"
    raw.write_text("3 2 0\n2\n1 3\n2\n")
    out = tmp_path / "weighted.graph"
    assert main(["gen-weights", str(raw), "--seed", "9", "-o", str(out)]) == 0
    g = graph_io.parse_graph(out)
    assert all(1 <= g.weight(v) <= 200 for v in range(3))
    capsys.readouterr()
    assert main(["solve", str(raw), "--weights", "generate:1:200", "--seed", "9"]) == 0
    rec = json.loads(capsys.readouterr().out)
    assert rec["weight"] == brute_force_mwis(g).weight


def test_cli_oracle_size_cap(tmp_path, capsys):
    g = WeightedGraph([1] * 30)
    gpath = tmp_path / "big.graph"
    gpath.write_text(graph_io.serialize_graph(g))
    assert main(["oracle", str(gpath)]) == 1
    assert "limited" in capsys.readouterr().err


def test_cli_timeout_is_exit_zero(tmp_path, capsys):
    g = random_graph(7, 120, 0.5)
    gpath = tmp_path / "hard.graph"
    gpath.write_text(graph_io.serialize_graph(g))
    assert main(["solve", str(gpath), "--time-limit", "0.5"]) == 0
    rec = json.loads(capsys.readouterr().out)
    assert rec["optimal"] is False
    verify_independent_set(g, [v - 1 for v in rec["solution"]])


def test_console_script_entry_point(edge_graph):
    out = subprocess.run([sys.executable, "-m", "mwis.cli", "solve", str(edge_graph)],
                         capture_output=True, text=True)
    assert out.returncode == 0
    assert json.loads(out.stdout)["weight"] == 5
