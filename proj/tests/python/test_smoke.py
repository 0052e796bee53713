import math
import os
from pathlib import Path

import pytest

import tablesearch

DATA = Path(os.environ.get("TABLESEARCH_DATA_DIR", Path(__file__).resolve().parents[2] / "data"))


@pytest.fixture(scope="module")
def engine(tmp_path_factory):
    return tablesearch.Engine(DATA / "config.json", index=tmp_path_factory.mktemp("idx") / "none")


def test_tokenize_and_numeric():
    assert tablesearch.tokenize("Emission spectra of galaxies") == ["emission", "spectra", "galaxy"]
    assert tablesearch.is_numeric_cell("1.0-10.0 keV")
    assert not tablesearch.is_numeric_cell("Force of N")


def test_parse_xml():
    doc = "<tables><table><caption>Meson masses</caption><cell-values><cell-value>1.5</cell-value><cell-value>n/a</cell-value></cell-values></table></tables>"
    tables = tablesearch.parse_table_xml(doc, "d")
    assert len(tables) == 1
    assert tables[0].table_id == "d#0"
    assert tables[0].numeric_cell_count == 1
    assert tables[0].fields["caption"] == ["Meson masses"]
    with pytest.raises(tablesearch.FormatError):
        tablesearch.parse_table_xml("<tables><table>", "d")


def test_metrics():
    grades = {"a": 1, "c": 1, "e": 1}
    ap = tablesearch.average_precision(["a", "b", "c", "d", "e"], grades)
    assert ap == pytest.approx((1 + 2 / 3 + 3 / 5) / 3)
    assert tablesearch.ndcg(["a", "b", "c"], {"a": 3, "c": 1}) == pytest.approx(7.5 / (7 + 1 / math.log2(3)))
    assert tablesearch.err(["x", "a"], {"a": 3}) == pytest.approx(0.4375)
    assert tablesearch.average_precision(["a"], {"a": 0}) is None


def test_search_and_explain(engine):
    assert engine.table_count == 16
    ranking = engine.search("meson mass", k=3)
    assert ranking[0][0] == "mesons-t1"
    assert len(ranking) <= 3
    assert all(ranking[i][1] >= ranking[i + 1][1] for i in range(len(ranking) - 1))
    assert engine.search("meson mass", ranker="bm25", k=0) == []
    assert "#wand(" in engine.explain("meson mass")
    with pytest.raises(tablesearch.QueryError):
        engine.search("of the")
    with pytest.raises(ValueError):
        engine.search("meson", ranker="lucene")


def test_analyze(engine):
    q = engine.analyze("gravitational forces in newtonian gravity versus bimetric gravity")
    assert [c["text"] for c in q["concepts"]] == ["gravitational force", "newtonian gravity", "versus"]
    assert {u["type"] for u in q["quantities"]} == {"Force", "Acceleration"}
    np = engine.analyze("gravitational forces in newtonian gravity versus bimetric gravity", mode="noun_phrase")
    assert [c["source"] for c in np["concepts"]] == ["noun_phrase"] * 3


def test_evaluate_and_params(engine):
    run = {"q4": engine.search("meson mass")}
    report = engine.evaluate(run)
    assert report["per_query"]["q4"]["ap"] == pytest.approx(1.0)
    engine.set_params(alpha=0.0, beta=0.0, prior=False)
    assert engine.alpha == 0.0 and not engine.prior
    assert engine.search("meson mass") == engine.search("meson mass", ranker="terms")
    with pytest.raises(ValueError):
        engine.set_params(alpha=0.9, beta=0.5)
    engine.set_params(alpha=0.2, beta=0.1, prior=True)


def test_missing_config():
    with pytest.raises(tablesearch.FileError):
        tablesearch.Engine(DATA / "missing.json")
