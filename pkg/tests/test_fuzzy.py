"""Fuzzy index tests: tokenizing, budgets, suggestions, ranked search."""

from __future__ import annotations

import random
from datetime import datetime, timedelta, timezone

import pytest

from arsip.fuzzy import (
    BudgetPolicy,
    MatchedTerm,
    SearchIndex,
    Suggestion,
    distance_budget,
    rebuild_index,
    suggest,
    tokenize,
)
from arsip.records import CATEGORIES, DocumentRecord, InvalidCategoryError

from .oracles import naive_levenshtein

T0 = datetime(2015, 8, 11, 9, 0, 0, tzinfo=timezone.utc)


def make_doc(
    doc_id: str,
    perihal: str,
    no_surat: str = "",
    deskripsi: str = "",
    kategori: str = "Dokumen Surat Masuk",
    at: datetime = T0,
) -> DocumentRecord:
    return DocumentRecord(
        id=doc_id,
        perihal=perihal,
        no_surat=no_surat,
        deskripsi=deskripsi,
        kategori=kategori,
        file_name=f"{doc_id}.pdf",
        file_ref=f"blobs/{doc_id}",
        content_type="application/pdf",
        uploaded_by="admin",
        uploaded_at=at,
    )


class TestTokenize:
    @pytest.mark.parametrize(
        "text,expected",
        [
            ("Surat Masuk 2015", ["surat", "masuk", "2015"]),
            ("", []),
            ("gotong-royong", ["gotong", "royong"]),
            ("  --  ", []),
            ("No.005/SU2/VIII/2015", ["no", "005", "su2", "viii", "2015"]),
            ("Ijazah_scan", ["ijazah", "scan"]),
            ("CafÉ", ["café"]),
        ],
    )
    def test_examples(self, text, expected):
        assert tokenize(text) == expected

    def test_tokens_are_lowercase_alnum(self):
        for token in tokenize("Laporan KEGIATAN gotong-royong (2015)!"):
            assert token
            assert token == token.lower()
            assert all(ch.isalnum() for ch in token)


class TestBudgetPolicy:
    @pytest.mark.parametrize(
        "token,expected",
        [("ktp", 1), ("srt", 1), ("abcd", 1), ("surat", 2), ("dokumens", 2), ("kependudukan", 3)],
    )
    def test_default_bands(self, token, expected):
        assert distance_budget(token) == expected

    def test_empty_token_rejected(self):
        with pytest.raises(ValueError):
            distance_budget("")

    def test_parse_roundtrip(self):
        policy = BudgetPolicy.parse("4:1,8:2,3")
        assert policy == BudgetPolicy()
        custom = BudgetPolicy.parse("3:0,6:1,2")
        assert custom.budget("abc") == 0
        assert custom.budget("abcdef") == 1
        assert custom.budget("abcdefg") == 2

    @pytest.mark.parametrize("spec", ["", "4:1", "8:2,4:1,3", "a:b,c:d,e"])
    def test_parse_rejects_garbage(self, spec):
        with pytest.raises(ValueError):
            BudgetPolicy.parse(spec)


class TestSuggest:
    def test_misspelling_orders_by_distance_first(self):
        # Oracle distances: surta->serta is 1 (single substitution),
        # surta->surat is 2 (the transposition costs two edits). Ascending
        # distance therefore puts the rarer but closer token first.
        assert naive_levenshtein("surta", "serta") == 1
        assert naive_levenshtein("surta", "surat") == 2
        got = suggest("surta", {"surat": 10, "serta": 2}, limit=5)
        assert got == [Suggestion("serta", 1, 2), Suggestion("surat", 2, 10)]

    def test_exact_match_ranks_first(self):
        got = suggest("surat", {"surat": 10, "surau": 3}, limit=5)
        assert got[0] == Suggestion("surat", 0, 10)

    def test_nothing_within_budget(self):
        assert naive_levenshtein("zzzz", "surat") == 5
        assert suggest("zzzz", {"surat": 10}, limit=5) == []

    def test_frequency_breaks_distance_ties(self):
        got = suggest("surat", {"surah": 2, "sura": 9}, limit=5)
        # both at distance 1: higher frequency wins
        assert [s.candidate for s in got] == ["sura", "surah"]

    def test_lexicographic_last_resort(self):
        got = suggest("abcde", {"abcdx": 4, "abcdy": 4}, limit=5)
        assert [s.candidate for s in got] == ["abcdx", "abcdy"]

    def test_limit_truncates(self):
        vocab = {f"sura{c}": 1 for c in "bcdefg"}
        got = suggest("surat", vocab, limit=2)
        assert len(got) == 2

    def test_ordering_is_total(self):
        rng = random.Random(5)
        vocab = {}
        for _ in range(120):
            word = "".join(rng.choice("abcdef") for _ in range(rng.randint(3, 9)))
            vocab[word] = rng.randint(1, 20)
        got = suggest("abcdef", vocab, limit=len(vocab))
        keys = [(s.distance, -s.frequency, s.candidate) for s in got]
        assert keys == sorted(keys)
        assert len(set(keys)) == len(keys)

    def test_distances_verified_against_oracle(self):
        vocab = {"surat": 3, "serta": 1, "murat": 2, "surga": 9, "laporan": 4}
        for s in suggest("surat", vocab, limit=10):
            assert s.distance == naive_levenshtein("surat", s.candidate)
            assert s.distance <= distance_budget("surat")


class TestIndexBookkeeping:
    def test_index_adds_vocabulary(self):
        index = SearchIndex()
        index.index_document(make_doc("a", "Surat Masuk"))
        assert index.vocabulary() == {"surat": 1, "masuk": 1}

    def test_deindex_restores_prior_state(self):
        index = SearchIndex()
        index.index_document(make_doc("a", "Surat Masuk", deskripsi="surat penting"))
        before = index.vocabulary()
        doc_b = make_doc("b", "Laporan Kegiatan", no_surat="005/2015")
        index.index_document(doc_b)
        index.deindex_document(doc_b)
        assert index.vocabulary() == before

    def test_shared_token_counts(self):
        index = SearchIndex()
        doc_a = make_doc("a", "Surat Keterangan")
        doc_b = make_doc("b", "Surat Pengantar")
        index.index_document(doc_a)
        index.index_document(doc_b)
        assert index.vocabulary()["surat"] == 2
        index.deindex_document(doc_a)
        assert index.vocabulary()["surat"] == 1
        assert index.suggest("surat")[0].candidate == "surat"

    def test_reindex_same_id_replaces(self):
        index = SearchIndex()
        index.index_document(make_doc("a", "Surat Masuk"))
        index.index_document(make_doc("a", "Laporan Tahunan"))
        assert index.vocabulary() == {"laporan": 1, "tahunan": 1}

    def test_deindex_unknown_id_is_noop(self, caplog):
        index = SearchIndex()
        index.index_document(make_doc("a", "Surat"))
        with caplog.at_level("WARNING"):
            index.deindex_id("ghost")
        assert index.vocabulary() == {"surat": 1}
        assert any("ghost" in r.message for r in caplog.records)

    def test_duplicate_tokens_in_one_field_counted(self):
        index = SearchIndex()
        index.index_document(make_doc("a", "surat tentang surat"))
        assert index.vocabulary()["surat"] == 2
        index.deindex_id("a")
        assert index.vocabulary() == {}


class TestSearch:
    def test_single_typo_hit_with_hand_scored_formula(self):
        index = SearchIndex()
        index.index_document(make_doc("A", "gotong royong"))
        hits = index.search("gotonk")
        assert len(hits) == 1
        hit = hits[0]
        assert hit.document_id == "A"
        assert hit.matched_terms == (MatchedTerm("gotonk", "gotong", 1),)
        assert hit.score == pytest.approx(3.0 * (1 - 1 / 6))

    def test_empty_query(self):
        index = SearchIndex()
        index.index_document(make_doc("A", "gotong royong"))
        assert index.search("") == []
        assert index.search("  --  ") == []

    def test_category_filter_excludes(self):
        index = SearchIndex()
        index.index_document(make_doc("A", "gotong royong", kategori="Dokumen Surat Masuk"))
        assert index.search("gotonk", category="Gambar") == []
        assert [h.document_id for h in index.search("gotonk", category="Dokumen Surat Masuk")] == ["A"]

    def test_unknown_category_rejected(self):
        index = SearchIndex()
        with pytest.raises(InvalidCategoryError):
            index.search("gotong", category="Rahasia")

    def test_unfiltered_is_union_of_category_searches(self):
        rng = random.Random(17)
        index = SearchIndex()
        words = ["surat", "laporan", "gotong", "royong", "penduduk", "kegiatan", "arsip"]
        for i in range(30):
            index.index_document(
                make_doc(
                    f"d{i:02d}",
                    " ".join(rng.choice(words) for _ in range(3)),
                    kategori=rng.choice(CATEGORIES),
                    at=T0 + timedelta(minutes=i),
                )
            )
        for query in ["surap", "gotonk laporan", "arsib penduduk"]:
            combined = {h.document_id: h.score for h in index.search(query)}
            unioned: dict[str, float] = {}
            for cat in CATEGORIES:
                for h in index.search(query, category=cat):
                    unioned[h.document_id] = h.score
            assert combined == unioned

    def test_field_weights_prefer_perihal(self):
        index = SearchIndex()
        index.index_document(make_doc("in_desc", "Lain", deskripsi="gotong"))
        index.index_document(make_doc("in_subject", "gotong", deskripsi="Lain"))
        hits = index.search("gotong")
        assert [h.document_id for h in hits] == ["in_subject", "in_desc"]
        assert hits[0].score == pytest.approx(3.0)
        assert hits[1].score == pytest.approx(1.0)

    def test_verbatim_beats_approximate_in_same_field(self):
        index = SearchIndex()
        index.index_document(make_doc("exact", "penduduk"))
        index.index_document(make_doc("typo", "pendudok"))
        hits = index.search("penduduk")
        assert hits[0].document_id == "exact"
        assert hits[0].score > hits[1].score

    def test_multi_token_scores_sum(self):
        index = SearchIndex()
        index.index_document(make_doc("A", "gotong royong"))
        one = index.search("gotong")[0].score
        other = index.search("royong")[0].score
        both = index.search("gotong royong")[0].score
        assert both == pytest.approx(one + other)

    def test_ordering_newest_first_then_id(self):
        index = SearchIndex()
        index.index_document(make_doc("b", "surat", at=T0))
        index.index_document(make_doc("a", "surat", at=T0))
        index.index_document(make_doc("c", "surat", at=T0 + timedelta(hours=1)))
        assert [h.document_id for h in index.search("surat")] == ["c", "a", "b"]

    def test_determinism(self):
        rng = random.Random(23)
        index = SearchIndex()
        words = ["surat", "keterangan", "penduduk", "pindah", "datang", "kematian"]
        for i in range(40):
            index.index_document(
                make_doc(
                    f"d{i:02d}",
                    " ".join(rng.choice(words) for _ in range(4)),
                    deskripsi=" ".join(rng.choice(words) for _ in range(6)),
                    at=T0 + timedelta(seconds=i),
                )
            )
        first = index.search("surat pendudok ketorangan")
        for _ in range(5):
            assert index.search("surat pendudok ketorangan") == first

    def test_all_match_distances_within_budget_and_oracle_checked(self):
        index = SearchIndex()
        index.index_document(make_doc("A", "gotong royong", deskripsi="kerja bakti warga"))
        index.index_document(make_doc("B", "laporan kegiatan", deskripsi="gotong"))
        for hit in index.search("gotonk warge"):
            for term in hit.matched_terms:
                assert term.distance <= distance_budget(term.query)
                assert term.distance == naive_levenshtein(term.query, term.matched)

    def test_rebuild_skips_tombstones(self):
        live = make_doc("live", "surat masuk")
        dead = make_doc("dead", "laporan").tombstoned()
        index = rebuild_index([live, dead])
        assert index.vocabulary() == {"surat": 1, "masuk": 1}
