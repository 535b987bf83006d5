from enumtw.cli import main

P3_HG = "p hg 3 2\ne 1 2\ne 2 3\n"
P3_GR = "p tw 3 2\n1 2\n2 3\n"


def _write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def run_cli(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_hitting_sets_basic(tmp_path, capsys):
    path = _write(tmp_path, "h.hg", P3_HG)
    code, out, _ = run_cli(capsys, ["hitting-sets", "-i", path])
    assert code == 0
    assert out.splitlines() == ["2", "1 3"]


def test_hitting_sets_count_and_check(tmp_path, capsys):
    path = _write(tmp_path, "h.hg", P3_HG)
    code, out, _ = run_cli(capsys, ["hitting-sets", "-i", path, "--count", "--check"])
    assert code == 0
    assert out.strip() == "2"


def test_hitting_sets_uniqueness_fast_path(tmp_path, capsys):
    path = _write(tmp_path, "h.hg", "p hg 2 2\ne 1\ne 2\n")
    code, out, _ = run_cli(capsys, ["hitting-sets", "-i", path])
    assert code == 0
    assert out.splitlines() == ["1 2"]


def test_hitting_sets_m_zero(tmp_path, capsys):
    path = _write(tmp_path, "h.hg", "p hg 3 0\n")
    code, out, _ = run_cli(capsys, ["hitting-sets", "-i", path])
    assert code == 0
    assert out.splitlines() == [""]


def test_hitting_sets_limit_and_stats(tmp_path, capsys):
    path = _write(tmp_path, "h.hg", P3_HG)
    code, out, _ = run_cli(capsys, ["hitting-sets", "-i", path, "--limit", "1",
                                    "--stats"])
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "2"
    assert any(l.startswith("# delay") for l in lines)


def test_hitting_sets_with_supplied_td(tmp_path, capsys):
    # decomposition of the incidence graph of H (5 vertices: 3 + 2 edges)
    td = "s td 2 3 5\nb 1 1 2 4\nb 2 2 3 5\n1 2\n"
    hg = _write(tmp_path, "h.hg", P3_HG)
    tdp = _write(tmp_path, "h.td", td)
    code, out, _ = run_cli(capsys, ["hitting-sets", "-i", hg, "--td", tdp])
    assert code == 0
    assert sorted(out.splitlines()) == ["1 3", "2"]


def test_edge_covers_names(tmp_path, capsys):
    path = _write(tmp_path, "h.hg", P3_HG)
    code, out, _ = run_cli(capsys, ["edge-covers", "-i", path])
    assert code == 0
    assert out.splitlines() == ["e0 e1"]


def test_edge_covers_uncoverable_exit_code(tmp_path, capsys):
    path = _write(tmp_path, "h.hg", "p hg 2 1\ne 1\n")
    code, out, err = run_cli(capsys, ["edge-covers", "-i", path])
    assert code == 3
    assert "uncoverable" in err


def test_dominating_sets(tmp_path, capsys):
    path = _write(tmp_path, "g.gr", P3_GR)
    code, out, _ = run_cli(capsys, ["dominating-sets", "-i", path, "--check"])
    assert code == 0
    assert out.splitlines() == ["2", "1 3"]


def test_dominating_sets_ids_format(tmp_path, capsys):
    path = _write(tmp_path, "g.gr", P3_GR)
    code, out, _ = run_cli(capsys, ["dominating-sets", "-i", path,
                                    "--format", "ids"])
    assert code == 0
    assert out.splitlines() == ["2", "1 3"]


def test_parse_error_exit_code(tmp_path, capsys):
    path = _write(tmp_path, "bad.hg", "p hg 2 1\ne\n")
    code, _, err = run_cli(capsys, ["hitting-sets", "-i", path])
    assert code == 3
    assert "parse error" in err


def test_oracle_cap_exit_code(tmp_path, capsys):
    n = 25
    lines = [f"p tw {n} {n-1}"] + [f"{i} {i+1}" for i in range(1, n)]
    path = _write(tmp_path, "big.gr", "\n".join(lines) + "\n")
    code, _, err = run_cli(capsys, ["dominating-sets", "-i", path, "--check"])
    assert code == 4
    assert "cap" in err


def test_dedupe_flag(tmp_path, capsys):
    path = _write(tmp_path, "h.hg", "p hg 2 2\ne 1 2\ne 1 2\n")
    code, out, _ = run_cli(capsys, ["hitting-sets", "-i", path, "--dedupe",
                                    "--count"])
    assert code == 0
    assert out.strip() == "2"


def test_td_validate(tmp_path, capsys):
    g = _write(tmp_path, "g.gr", P3_GR)
    td = _write(tmp_path, "g.td", "s td 2 2 3\nb 1 1 2\nb 2 2 3\n1 2\n")
    code, out, _ = run_cli(capsys, ["td", "validate", "-i", g, "--td", td])
    assert code == 0
    assert "valid, width 1" in out


def test_td_validate_bad(tmp_path, capsys):
    g = _write(tmp_path, "g.gr", P3_GR)
    td = _write(tmp_path, "g.td", "s td 2 2 3\nb 1 1 2\nb 2 2\n1 2\n")
    code, out, _ = run_cli(capsys, ["td", "validate", "-i", g, "--td", td])
    assert code == 3
    assert "uncovered" in out


def test_td_build_and_niceify(tmp_path, capsys):
    g = _write(tmp_path, "g.gr", P3_GR)
    code, out, _ = run_cli(capsys, ["td", "build", "-i", g])
    assert code == 0
    assert out.startswith("s td ")
    td = _write(tmp_path, "g.td", out)
    code, out2, _ = run_cli(capsys, ["td", "niceify", "-i", g, "--td", td])
    assert code == 0
    assert out2.startswith("s td ")


def test_td_dbtd_dump(tmp_path, capsys):
    g = _write(tmp_path, "g.gr", P3_GR)
    td = _write(tmp_path, "g.td", "s td 2 2 3\nb 1 1 2\nb 2 2 3\n1 2\n")
    code, out, _ = run_cli(capsys, ["td", "dbtd", "-i", g, "--td", td])
    assert code == 0
    assert all(line.startswith("node ") for line in out.strip().splitlines())


def test_bench_header_and_path_family(capsys):
    code, out, _ = run_cli(capsys, ["bench", "--family", "path",
                                    "--sizes", "8,12", "--limit", "5"])
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "n,m,w,effw,prep_ms,trie_bytes,solutions,max_gap,mean_gap"
    assert len(lines) == 3
    for row in lines[1:]:
        fields = row.split(",")
        assert fields[2] == "1"  # paths have width 1


def test_usage_error(capsys):
    code = main(["hitting-sets"])  # missing --input
    capsys.readouterr()
    assert code == 1


def test_td_validate_g9_fixture(tmp_path, capsys):
    from helpers import g9_graph, g9_plain_td
    from enumtw.graph import write_graph
    from enumtw.treedecomp import write_td
    g = _write(tmp_path, "g9.gr", write_graph(g9_graph()))
    td = _write(tmp_path, "g9.td", write_td(g9_plain_td()))
    code, out, _ = run_cli(capsys, ["td", "validate", "-i", g, "--td", td])
    assert code == 0
    assert "valid, width 2" in out


def test_bench_partial_2_trees_effective_width(capsys):
    code, out, _ = run_cli(capsys, ["bench", "--family", "ktree", "--k", "2",
                                    "--sizes", "12,20,28", "--limit", "10"])
    assert code == 0
    for row in out.strip().splitlines()[1:]:
        effw = int(row.split(",")[3])
        assert effw <= 4


def test_deterministic_output_bytes(tmp_path, capsys):
    path = _write(tmp_path, "g.gr", "p tw 6 6\n1 2\n2 3\n3 4\n4 5\n5 6\n1 6\n")
    outs = []
    for _ in range(2):
        code, out, _ = run_cli(capsys, ["dominating-sets", "-i", path,
                                        "--seed", "3", "--stats"])
        assert code == 0
        outs.append(out)
    assert outs[0] == outs[1]
