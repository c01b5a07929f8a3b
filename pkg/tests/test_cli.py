import json

import pytest

from tensorgraphs.cli import EXIT_CAP, EXIT_CLAIM, EXIT_OK, EXIT_USAGE, main
from tensorgraphs.graphio import read_graphs


def test_enumerate_then_classify(tmp_path, capsys):
    out = tmp_path / "g.jsonl"
    assert main(["enumerate", "--model", "mo3d", "--order", "2", "--external", "0",
                 "--out", str(out)]) == EXIT_OK
    assert len(read_graphs(out)) == 24
    ann = tmp_path / "c.jsonl"
    assert main(["classify", "--in", str(out), "--out", str(ann)]) == EXIT_OK
    docs = [json.loads(line) for line in ann.read_text().splitlines()]
    assert len(docs) == 24
    assert all("classification" in d and "topology" in d for d in docs)
    assert all(d["classification"]["is_multi_orientable"] for d in docs)


def test_enumerate_classes_carry_weights(tmp_path):
    out = tmp_path / "k.jsonl"
    assert main(["enumerate", "--model", "colored", "--order", "4", "--external", "2",
                 "--classes", "--out", str(out)]) == EXIT_OK
    docs = [json.loads(line) for line in out.read_text().splitlines()]
    assert sum(d["multiplicity"] for d in docs) == 128
    assert all(d["multiplicity"] * d["automorphisms"] == 4 for d in docs)


def test_enumerate_is_deterministic(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for p in (a, b):
        main(["enumerate", "--model", "mo3d", "--order", "3", "--external", "2",
              "--classes", "--out", str(p)])
    assert a.read_bytes() == b.read_bytes()


def test_verify_exit_codes(tmp_path, capsys):
    rep = tmp_path / "r.json"
    assert main(["verify", "--claim", "all", "--max-order", "2", "--report", str(rep)]) == EXIT_OK
    data = json.loads(rep.read_text())
    assert data["passed"] is True and len(data["table"]) == 6
    assert "[PASS] thm4.1" in capsys.readouterr().out
    # the loop-free witness does not exist at order 1
    assert main(["verify", "--claim", "converse", "--max-order", "1"]) == EXIT_CLAIM


def test_count_writes_table_and_figure(tmp_path):
    tsv, png = tmp_path / "c.tsv", tmp_path / "c.png"
    cache = tmp_path / "cache"
    args = ["count", "--model", "mo3d", "--max-order", "3", "--out", str(tsv),
            "--figure", str(png), "--cache", str(cache)]
    assert main(args) == EXIT_OK
    rows = [line.split("\t") for line in tsv.read_text().splitlines()]
    assert rows[0][0] == "model" and len(rows) == 7
    assert [r[4] for r in rows[1:]] == ["2", "4", "24", "96", "720", "4320"]
    assert png.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"
    first = tsv.read_text()
    assert main(args) == EXIT_OK  # second run served from the cache
    assert tsv.read_text() == first


def test_export_dot(tmp_path):
    g = tmp_path / "g.jsonl"
    main(["enumerate", "--model", "mo3d", "--order", "1", "--external", "2", "--out", str(g)])
    d = tmp_path / "dot"
    assert main(["export-dot", "--in", str(g), "--out", str(d), "--mode", "strand"]) == EXIT_OK
    assert sorted(p.name for p in d.iterdir()) == [f"graph_{i:05d}.dot" for i in range(4)]


def test_usage_and_input_errors(tmp_path, capsys):
    with pytest.raises(SystemExit) as exc:
        main(["enumerate", "--model", "nope", "--order", "1"])
    assert exc.value.code == EXIT_USAGE
    assert main(["enumerate", "--model", "mo3d", "--order", "1", "--external", "3"]) == EXIT_USAGE
    bad = tmp_path / "bad.jsonl"
    bad.write_text('{"schema_version": 1}\n')
    assert main(["classify", "--in", str(bad)]) == EXIT_USAGE
    assert "line 1" in capsys.readouterr().err
    assert main(["classify", "--in", str(tmp_path / "missing")]) == EXIT_USAGE


def test_cap_exceeded():
    assert main(["enumerate", "--model", "mo3d", "--order", "3", "--cap", "10"]) == EXIT_CAP
    assert main(["count", "--model", "mo3d", "--max-order", "3", "--cap", "10"]) == EXIT_CAP
