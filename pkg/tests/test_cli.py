import json

import pytest

from affa.cli import run
from affa.diagram import Morphism
from affa.theory import Family, Label, Theory


AR1 = Theory(Family.ARROW_AODD, 1, 2, 1)
SH2 = Theory(Family.SHADED_AODD, 2, 2, 1)


@pytest.fixture
def bubble(tmp_path):
    path = tmp_path / "bubble.json"
    path.write_bytes(Morphism.loop(AR1, Label.DOWN).serialize())
    return str(path)


def test_eval_bubble(bubble, tmp_path, capsys):
    out = tmp_path / "out.json"
    assert run(["eval", "--in", bubble, "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["value"] == "1"
    assert doc["steps"] >= 1


def test_eval_malformed_input(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{nope")
    assert run(["eval", "--in", str(path)]) == 1


def test_eval_missing_file():
    assert run(["eval", "--in", "/nonexistent/morphism.json"]) == 1


def test_unknown_flag_is_an_input_error():
    assert run(["eval", "--frobnicate"]) == 1


def test_eval_batch_ordered_and_reports_errors(tmp_path):
    good = Morphism.loop(AR1, Label.PLAIN).serialize().decode()
    lines = [good.replace("\n", " "), "{bad", good.replace("\n", " ")]
    src = tmp_path / "batch.jsonl"
    src.write_text("\n".join(lines))
    out = tmp_path / "batch.out"
    assert run(["eval", "--batch", str(src), "--out", str(out)]) == 1
    rows = [json.loads(ln) for ln in out.read_text().splitlines()]
    assert [r["index"] for r in rows] == [0, 1, 2]
    assert rows[0]["value"] == "2" and rows[2]["value"] == "2"
    assert "error" in rows[1]


def test_label_emits_regions(tmp_path):
    from affa.testgen import random_closed
    m = Morphism.from_diagram(random_closed(SH2, 6, 0, 0))
    src = tmp_path / "closed.json"
    src.write_bytes(m.serialize())
    out = tmp_path / "label.json"
    assert run(["label", "--in", str(src), "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert set(doc) == {"faces", "labels", "ell", "value"}
    assert doc["faces"] == len(doc["labels"])


def test_relcheck_passes(tmp_path):
    out = tmp_path / "rel.json"
    assert run(["relcheck", "--family", "ShadedAodd", "--n", "2",
                "--root-exp", "1", "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["ok"] and all(r["ok"] for r in doc["relations"])


def test_homdim(tmp_path):
    out = tmp_path / "hd.json"
    assert run(["homdim", "--family", "UnshadedArrowAodd", "--n", "2",
                "--w1", "Down,Down", "--w2", "Down,Down",
                "--out", str(out)]) == 0
    assert json.loads(out.read_text())["hom_dim"] == 1


def test_graph_json_and_dot(tmp_path):
    out = tmp_path / "g.json"
    assert run(["graph", "--family", "UnshadedArrowAeven", "--n", "1",
                "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert len(doc["vertices"]) == 3
    assert doc["dot"].startswith("graph principal {")
    dot = tmp_path / "g.dot"
    assert run(["graph", "--family", "UnshadedArrowAeven", "--n", "1",
                "--format", "dot", "--out", str(dot)]) == 0
    assert dot.read_text() == doc["dot"]


def test_graph_output_is_deterministic(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for path in (a, b):
        assert run(["graph", "--family", "ShadedAodd", "--n", "3",
                    "--root-exp", "1", "--out", str(path)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_bratteli(tmp_path):
    out = tmp_path / "b.json"
    assert run(["bratteli", "--family", "UnshadedArrowAodd", "--n", "1",
                "--rows", "3", "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["dims"][0] == 1 and len(doc["dims"]) == 4


def test_gram(tmp_path):
    out = tmp_path / "gram.json"
    assert run(["gram", "--family", "UnshadedArrowAodd", "--n", "1",
                "--word", "Down,Up", "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["psd"] and doc["rank"] == 1


def test_functor_check(tmp_path):
    out = tmp_path / "fc.json"
    assert run(["functor-check", "--which", "vec", "--m", "3",
                "--zeta-exp", "1", "--out", str(out)]) == 0
    assert json.loads(out.read_text())["ok"]


def test_classify_counts(tmp_path):
    out = tmp_path / "cls.json"
    assert run(["classify", "--family", "unshaded-a-odd", "--n", "2",
                "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["count"] == 6
    assert len({row["class"] for row in doc["table"]}) == 6


def test_classify_bad_family_is_input_error():
    assert run(["classify", "--family", "nope", "--n", "2"]) == 1


def test_selftest_smoke(tmp_path):
    out = tmp_path / "st.json"
    assert run(["selftest", "--draws", "3", "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["ok"] and doc["relations_checked"] > 0
