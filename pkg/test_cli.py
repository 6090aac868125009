"""
Tests for the command-line verbs
"""

import json

import pytest

from cli.commands import CommandLine
from config.settings import Settings
from mbr import SamplePool
from storage import PoolFile, read_decode_results, read_lines


@pytest.fixture
def cli():
    messages = []
    command_line = CommandLine(settings=Settings(), out=messages.append)
    command_line.messages = messages
    return command_line


def run(cli, *argv):
    return cli.execute(cli.parse(list(argv)))


def write_pools(path, pools):
    PoolFile(str(path)).write(pools)
    return str(path)


def write_lines(path, lines):
    path.write_text("".join(line + "\n" for line in lines), encoding="utf-8")
    return str(path)


def test_decode_single_sample_echo(cli, tmp_path):
    pools = write_pools(tmp_path / "one.jsonl", [SamplePool(id="x", source="s", samples=("only sample",))])
    result = run(cli, "decode", pools)
    assert result["success"]
    assert read_lines(result["selections"]) == ["only sample"]
    assert read_decode_results(result["output"])[0].selected_index == 0


def test_decode_worked_pool(cli, tmp_path):
    pools = write_pools(tmp_path / "p.jsonl", [SamplePool(id="w", source="s", samples=("a b", "a b", "a c"),
                                                          reference="a b")])
    output = str(tmp_path / "decoded.jsonl")
    result = run(cli, "decode", pools, "--utility", "unigram-f1", "--output", output)
    assert result["success"]
    assert read_decode_results(output)[0].selected_text == "a b"
    assert result["scores"]["chrf2"]["score"] == pytest.approx(1.0)
    assert read_decode_results(output)[0].utility_name == "unigram-f1"


def test_decode_subsamples_and_records_indices(cli, tmp_path):
    samples = tuple(f"word{i} shared" for i in range(8))
    pools = write_pools(tmp_path / "p.jsonl", [SamplePool(id="a", source="s", samples=samples)])
    result = run(cli, "decode", pools, "--num-samples", "3", "--seed", "4")
    decoded = read_decode_results(result["output"])[0]
    assert decoded.num_samples_used == 3 and len(decoded.sample_indices) == 3


def test_decode_empty_file(cli, tmp_path):
    empty = tmp_path / "empty.jsonl"
    empty.write_text("", encoding="utf-8")
    result = run(cli, "decode", str(empty))
    assert not result["success"]
    assert "no records" in result["error"]


def test_decode_evaluate_needs_references(cli, tmp_path):
    pools = write_pools(tmp_path / "p.jsonl", [SamplePool(id="noref", source="s", samples=("a",))])
    result = run(cli, "decode", pools, "--evaluate")
    assert not result["success"]
    assert "noref" in result["error"]


def test_run_exit_codes(cli, tmp_path, capsys):
    assert cli.run(["decode", str(tmp_path / "missing.jsonl")]) == 1
    assert "❌" in capsys.readouterr().err
    with pytest.raises(SystemExit) as usage:
        cli.run(["decode"])
    assert usage.value.code == 2


def curve_pools(tmp_path, n=6):
    pools = [SamplePool(id=f"p{k}", source="s", reference=f"the cat {k}",
                        samples=tuple(f"the cat {k + i % 3}" for i in range(n))) for k in range(3)]
    return write_pools(tmp_path / "curve.jsonl", pools)


def test_curve_full_grid_has_zero_std(cli, tmp_path):
    pools = curve_pools(tmp_path)
    result = run(cli, "curve", pools, "--grid", "6", "--reps", "3", "--report-dir", str(tmp_path / "r"))
    assert result["success"]
    assert result["summary"][0]["std"] == 0.0
    rows = [line for line in read_lines(result["paths"][0]) if not line.startswith("#")]
    assert rows[0] == "size\trep\tmetric\tvalue"
    assert len(rows) == 4


def test_curve_is_byte_reproducible(cli, tmp_path):
    pools = curve_pools(tmp_path)
    first = run(cli, "curve", pools, "--grid", "2,4", "--reps", "2", "--seed", "5", "--report-dir", str(tmp_path / "a"))
    second = run(cli, "curve", pools, "--grid", "2,4", "--reps", "2", "--seed", "5", "--report-dir", str(tmp_path / "b"))
    for path_a, path_b in zip(first["paths"], second["paths"]):
        assert open(path_a, "rb").read() == open(path_b, "rb").read()


def test_curve_grid_too_large(cli, tmp_path):
    pools = curve_pools(tmp_path, n=4)
    result = run(cli, "curve", pools, "--grid", "5", "--report-dir", str(tmp_path / "r"))
    assert not result["success"]
    assert "p0" in result["error"]


def test_score(cli, tmp_path):
    refs = write_lines(tmp_path / "ref.txt", ["the cat sat", "a dog ran"])
    result = run(cli, "score", refs, refs, "--metric", "chrf2,bleu")
    assert result["scores"]["chrf2"]["score"] == pytest.approx(1.0)
    assert result["scores"]["bleu"]["score"] == pytest.approx(1.0)
    assert any(message.startswith("📊 chrf2") and "nc:6" in message for message in cli.messages)
    assert "tok:13a" in result["scores"]["bleu"]["signature"]


def test_score_line_mismatch(cli, tmp_path):
    hyps = write_lines(tmp_path / "hyp.txt", ["a", "b", "c"])
    refs = write_lines(tmp_path / "ref.txt", ["a"])
    result = run(cli, "score", hyps, refs)
    assert not result["success"]
    assert "3" in result["error"] and "1" in result["error"]


def test_analyze_length_two_corpora(cli, tmp_path):
    first = write_lines(tmp_path / "a.txt", ["a b", "a b c d"])
    second = write_lines(tmp_path / "b.txt", ["x"])
    result = run(cli, "analyze", "length", "--corpus", f"first={first}", "--corpus", second,
                 "--report-dir", str(tmp_path / "r"))
    assert result["rows"] == {"first": 3.0, "b": 1.0}
    assert len([line for line in read_lines(result["paths"][0]) if not line.startswith("#")]) == 3


def test_analyze_length_from_pools_and_decodes(cli, tmp_path):
    pools = write_pools(tmp_path / "p.jsonl", [SamplePool(id="a", source="s", reference="x y z",
                                                          samples=("x", "x y"), beam=("x y z w",))])
    decoded = run(cli, "decode", pools, "--utility", "chrf-2")["output"]
    result = run(cli, "analyze", "length", "--pools", pools, "--decoded", decoded,
                 "--report-dir", str(tmp_path / "r"))
    assert set(result["rows"]) == {"reference", "sample", "beam", "chrf-2"}
    assert result["rows"]["sample"] == 1.5


def test_analyze_freq_self_consistency(cli, tmp_path):
    train = write_lines(tmp_path / "train.txt", ["the cat sat on the mat"] * 12 + ["rare words"])
    result = run(cli, "analyze", "freq", "--train", train, "--corpus", f"self={train}",
                 "--report-dir", str(tmp_path / "r"))
    assert result["success"]
    assert {label: value["mean"] for label, value in result["curves"]["self"].items()} == result["training"]
    header = read_lines(result["paths"][0])
    assert "# buckets: decade" in header


def test_analyze_missing_inputs(cli, tmp_path):
    assert "--train" in run(cli, "analyze", "freq")["error"]
    assert "--pools" in run(cli, "analyze", "hallucinations")["error"]
    assert "--pools" in run(cli, "analyze", "length")["error"]


def test_analyze_hallucinations(cli, tmp_path):
    pools = [SamplePool(id=f"p{k}", source="s", reference="the cat sat",
                        samples=("the cat sat", "the cat sat down", "a cat sat", "xyz qqq")) for k in range(3)]
    pool_path = write_pools(tmp_path / "p.jsonl", pools)
    decoded = run(cli, "decode", pool_path)["output"]
    result = run(cli, "analyze", "hallucinations", "--pools", pool_path, "--decoded", decoded,
                 "--report-dir", str(tmp_path / "r"))
    assert result["success"]
    assert result["report"]["flagged_rate_in_selections"] == 0.0
    assert result["report"]["flagged_rate_in_pools"] == 0.25
    document = json.loads(open(result["paths"][1], encoding="utf-8").read())
    assert document["config"]["halluc_threshold"] == 0.01


def test_analyze_copies_source_anchor(cli, tmp_path):
    pools = [SamplePool(id="p", source="das ist gut", reference="that is good",
                        samples=("das ist gut", "that is good", "that is good"))]
    pool_path = write_pools(tmp_path / "p.jsonl", pools)
    decoded = run(cli, "decode", pool_path)["output"]
    result = run(cli, "analyze", "copies", "--pools", pool_path, "--decoded", decoded,
                 "--copy-anchor", "source", "--report-dir", str(tmp_path / "r"))
    assert result["report"]["num_flagged_samples"] == 1
    assert result["report"]["flagged_rate_in_selections"] == 0.0


def test_noise_and_split(cli, tmp_path):
    src = write_lines(tmp_path / "c.src", [f"source {i}" for i in range(40)])
    tgt = write_lines(tmp_path / "c.tgt", [f"target {i}" for i in range(40)])
    result = run(cli, "noise", "--source", src, "--target", tgt, "--p", "0", "--out", str(tmp_path / "n"))
    assert result["success"]
    assert read_lines(str(tmp_path / "n.tgt")) == read_lines(tgt)
    assert set(read_lines(str(tmp_path / "n.tags"))) == {"0"}

    grid = run(cli, "noise", "--source", src, "--target", tgt, "--grid", "default", "--out", str(tmp_path / "g"))
    assert len(grid["outputs"]) == 7
    assert (tmp_path / "g.p0.5.tags").exists()

    split = run(cli, "split", "--source", src, "--target", tgt, "--size", "10", "--out", str(tmp_path / "s"))
    assert (split["train"], split["heldout"]) == (30, 10)
    assert len(read_lines(str(tmp_path / "s.heldout.src"))) == 10


def test_noise_needs_probability(cli, tmp_path):
    src = write_lines(tmp_path / "c.tsv", ["a\tb"])
    result = run(cli, "noise", "--source", src, "--out", str(tmp_path / "n"))
    assert not result["success"]
