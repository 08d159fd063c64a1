import pytest

from helpers import record
from namelens import classifier as classifier_module
from namelens.corpus import (
    Reject,
    category_filter,
    label_authors,
    load_labeled_names,
    load_publications,
    read_label_map,
    write_label_map,
)
from namelens.errors import AllLinesRejectedError, FileUnreadableError


class TestLoadLabeledNames:
    def test_nationality_grouping(self, tmp_path):
        path = tmp_path / "names.tsv"
        path.write_text(
            "Pierre Dupont\tFrench\n"
            "Ali Hassan\tEgyptian\n"
            "Jane Doe\tBritish\n"
            "Luis Mora\tVenezuelan\n",
            encoding="utf-8",
        )
        names, rejects = load_labeled_names(path)
        assert [n.label for n in names] == ["FRN", "ARA", "ENG", "SPA"]
        assert rejects == []

    def test_bare_class_codes_accepted(self, tmp_path):
        path = tmp_path / "names.tsv"
        path.write_text("Kim Lee\tKOR\nWei Chen\tchi\n", encoding="utf-8")
        names, _ = load_labeled_names(path)
        assert [n.label for n in names] == ["KOR", "CHI"]

    def test_rejects_with_line_numbers(self, tmp_path):
        path = tmp_path / "names.tsv"
        path.write_text(
            "good name\tFrench\n"
            "no tab here\n"
            "123\tGerman\n"
            "someone\tMartian\n",
            encoding="utf-8",
        )
        names, rejects = load_labeled_names(path)
        assert len(names) == 1
        assert [r.line_no for r in rejects] == [2, 3, 4]
        assert "no tab" in rejects[0].reason

    def test_rejects_reproducible(self, tmp_path):
        path = tmp_path / "names.tsv"
        path.write_text("x\ny\tFrench\n", encoding="utf-8")
        first = load_labeled_names(path)
        second = load_labeled_names(path)
        assert first == second

    def test_all_lines_rejected(self, tmp_path):
        path = tmp_path / "names.tsv"
        path.write_text("no tab\nstill none\n", encoding="utf-8")
        with pytest.raises(AllLinesRejectedError):
            load_labeled_names(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(FileUnreadableError):
            load_labeled_names(tmp_path / "absent.tsv")

    def test_custom_grouping_override(self, tmp_path):
        path = tmp_path / "names.tsv"
        path.write_text("A B\tklingon\n", encoding="utf-8")
        names, _ = load_labeled_names(path, grouping={"klingon": "CHI"})
        assert names[0].label == "CHI"


class TestCategoryFilter:
    # hand-built table: title -> expected keep decision
    TABLE = [
        ("Members of the Institut de France", True),
        ("entertainers", True),
        ("History", False),
        ("German people", True),
        ("People from Lyon", True),
        ("French mathematicians", True),
        ("Recipients of the Legion of Honour", True),
        ("Fellows of the Royal Society", True),
        ("Railway stations", True),
        ("Presidents of France", True),
        ("Novelists", True),
        ("Actors", True),
        ("Painters", True),
        ("Architecture", False),
        ("Geography of Italy", False),
        ("Mathematics", False),
        ("Physics", False),
        ("Economics", False),
        ("News", False),
        ("Census", False),
        ("Analysis", False),
        ("Atlas", False),
        ("Chaos", False),
        ("Campus", False),
        ("French cuisine", False),
        ("Italian opera", False),
        ("Music festivals", True),
        ("Bridges", True),
        ("Words of wisdom", True),
        ("Russian painters", True),
    ]

    @pytest.mark.parametrize("title,expected", TABLE)
    def test_table(self, title, expected):
        assert category_filter(title) is expected

    def test_table_has_thirty_titles(self):
        assert len(self.TABLE) == 30

    def test_case_insensitive(self):
        assert category_filter("GERMAN PEOPLE")
        assert category_filter("MEMBERS OF THE INSTITUT")


class TestLoadPublications:
    def test_happy_path(self, tmp_path):
        path = tmp_path / "pubs.jsonl"
        path.write_text(
            '{"title": "T", "authors": ["A One", "B Two", "C Three"], "year": 1999, "venue": "SIGIR"}\n',
            encoding="utf-8",
        )
        records, rejects = load_publications(path)
        assert rejects == []
        assert len(records[0].authors) == 3
        assert records[0].year == 1999
        assert records[0].venue == "SIGIR"
        assert records[0].authors[0].normalized == "a one"

    @pytest.mark.parametrize(
        "line,reason_part",
        [
            ('{"title": "T", "authors": [], "year": 1999, "venue": ""}', "empty author"),
            ('{"title": "T", "authors": ["A"], "year": 3000, "venue": ""}', "year"),
            ('{"title": "T", "authors": ["A"], "year": 1899, "venue": ""}', "year"),
            ("not json at all", "invalid JSON"),
            ('{"title": 3, "authors": ["A"], "year": 1999, "venue": ""}', "title"),
            ('{"title": "T", "authors": ["123"], "year": 1999, "venue": ""}', "no letters"),
            ('{"title": "T", "authors": [7], "year": 1999, "venue": ""}', "non-string author"),
        ],
    )
    def test_rejects(self, tmp_path, line, reason_part):
        path = tmp_path / "pubs.jsonl"
        path.write_text(line + "\n", encoding="utf-8")
        records, rejects = load_publications(path)
        assert records == []
        assert len(rejects) == 1
        assert reason_part in rejects[0].reason

    def test_venue_optional(self, tmp_path):
        path = tmp_path / "pubs.jsonl"
        path.write_text('{"title": "T", "authors": ["A B"], "year": 2000}\n', encoding="utf-8")
        records, rejects = load_publications(path)
        assert records[0].venue == ""
        assert rejects == []

    def test_reject_line_numbers_stable(self, tmp_path):
        path = tmp_path / "pubs.jsonl"
        path.write_text(
            '{"title": "T", "authors": ["A B"], "year": 2000, "venue": ""}\n'
            "broken\n",
            encoding="utf-8",
        )
        _, rejects = load_publications(path)
        assert rejects == [Reject(2, "invalid JSON: Expecting value")]


class TestLabelAuthors:
    def test_memoization_one_call_per_distinct_name(self, toy_model, monkeypatch):
        calls = []
        real_predict = classifier_module.predict

        def counting_predict(model, name):
            calls.append(name.normalized)
            return real_predict(model, name)

        monkeypatch.setattr(classifier_module, "predict", counting_predict)
        records = [record(f"p{i}", ["Abba Baab"], 1990 + i) for i in range(50)]
        labels = label_authors(records, toy_model)
        assert len(calls) == 1
        assert set(labels) == {"abba baab"}

    def test_empty_corpus(self, toy_model):
        assert label_authors([], toy_model) == {}

    def test_case_whitespace_variants_merge(self, toy_model):
        records = [
            record("p1", ["Abba  Baab"], 1990),
            record("p2", ["ABBA BAAB"], 1991),
        ]
        labels = label_authors(records, toy_model)
        assert list(labels) == ["abba baab"]

    def test_cache_short_circuits(self, toy_model, monkeypatch):
        def exploding_predict(model, name):
            raise AssertionError("classifier should not run for cached names")

        monkeypatch.setattr(classifier_module, "predict", exploding_predict)
        records = [record("p1", ["Abba Baab"], 1990)]
        labels = label_authors(records, toy_model, cache={"abba baab": "ENG"})
        assert labels == {"abba baab": "ENG"}


class TestLabelMapRoundTrip:
    def test_round_trip(self, tmp_path):
        path = tmp_path / "labels.tsv"
        mapping = {"a b": "ENG", "c d": "OTH"}
        write_label_map(mapping, path)
        assert read_label_map(path) == mapping
