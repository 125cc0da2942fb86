import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dualspace import corpus

TOKENS = st.text(alphabet="abcde", min_size=1, max_size=4)
SENTENCES = st.lists(st.lists(TOKENS, min_size=0, max_size=6), min_size=0, max_size=8)


class TestNormalize:
    def test_pipeline_hand_trace(self):
        out = corpus.normalize("The cat sat. Dogs ran!", stopwords={"the"})
        assert out == [["cat", "sat"], ["dogs", "ran"]]

    def test_empty_input(self):
        assert corpus.normalize("") == []

    def test_punctuation_deleted(self):
        assert corpus.normalize("Hello, world") == [["hello", "world"]]

    def test_mode_none_keeps_case(self):
        out = corpus.normalize("The Cat", normalizer="none")
        assert out == [["The", "Cat"]]

    def test_stopwords_matched_after_normalization(self):
        out = corpus.normalize("THE cat", stopwords={"the"}, normalizer="lowercase")
        assert out == [["cat"]]

    def test_suffix_strip_mode(self):
        out = corpus.normalize("dogs running boxes", normalizer="lowercase+suffix-strip")
        assert out == [["dog", "runn", "box"]]

    def test_newline_is_sentence_boundary(self):
        assert corpus.normalize("cat dog\nbird fish") == [["cat", "dog"], ["bird", "fish"]]

    def test_unknown_mode_rejected(self):
        with pytest.raises(ValueError, match="normalizer"):
            corpus.normalize("x", normalizer="stem")


class TestStripSuffix:
    @pytest.mark.parametrize(
        "token,expected",
        [
            ("berries", "berry"),
            ("classes", "class"),
            ("walking", "walk"),
            ("walked", "walk"),
            ("cats", "cat"),
            ("glass", "glass"),
            ("it", "it"),
        ],
    )
    def test_rules(self, token, expected):
        assert corpus.strip_suffix(token) == expected


class TestBuildVocab:
    def test_counts_by_hand(self):
        vocab = corpus.build_vocab([["a", "a", "a", "b", "b", "c"]], min_count=2)
        assert vocab.token_to_id == {"a": 0, "b": 1}
        assert vocab.counts == [3, 2]
        assert vocab.total_tokens == 6

    def test_min_count_one_keeps_everything(self):
        vocab = corpus.build_vocab([["x", "y"], ["z"]], min_count=1)
        assert len(vocab) == 3

    def test_all_pruned_is_error(self):
        with pytest.raises(ValueError, match="empty vocabulary"):
            corpus.build_vocab([["a", "b"]], min_count=10)

    def test_ties_broken_lexicographically(self):
        vocab = corpus.build_vocab([["zeta", "eta", "zeta", "eta"]], min_count=1)
        assert vocab.id_to_token == ["eta", "zeta"]

    def test_invalid_min_count(self):
        with pytest.raises(ValueError, match="min_count"):
            corpus.build_vocab([["a"]], min_count=0)

    @given(SENTENCES)
    @settings(max_examples=50)
    def test_deterministic(self, sentences):
        try:
            first = corpus.build_vocab(sentences, min_count=1)
        except ValueError:
            return
        second = corpus.build_vocab([list(s) for s in sentences], min_count=1)
        assert first.id_to_token == second.id_to_token
        assert first.counts == second.counts

    @given(SENTENCES, st.integers(min_value=1, max_value=3))
    @settings(max_examples=50)
    def test_counts_bounded_by_total(self, sentences, min_count):
        try:
            vocab = corpus.build_vocab(sentences, min_count=min_count)
        except ValueError:
            return
        assert sum(vocab.counts) <= vocab.total_tokens
        assert all(c >= min_count for c in vocab.counts)


class TestEncode:
    def test_oov_dropped(self):
        vocab = corpus.build_vocab([["a", "a", "b"]], min_count=1)
        assert corpus.encode([["a", "x", "b"]], vocab) == [[0, 1]]

    def test_all_oov_sentence_dropped(self):
        vocab = corpus.build_vocab([["a"], ["b"]], min_count=1)
        assert corpus.encode([["x"]], vocab) == []

    def test_identity_on_in_vocab(self):
        vocab = corpus.build_vocab([["a", "a"], ["b"]], min_count=1)
        assert corpus.encode([["a"], ["b"]], vocab) == [[0], [1]]

    def test_streaming_single_pass(self):
        vocab = corpus.build_vocab([["a", "b"]], min_count=1)

        def one_shot():
            yield ["a", "b"]
            yield ["b", "a"]

        assert list(corpus.iter_encode(one_shot(), vocab)) == [[0, 1], [1, 0]]

    @given(SENTENCES)
    @settings(max_examples=50)
    def test_round_trip(self, sentences):
        try:
            vocab = corpus.build_vocab(sentences, min_count=1)
        except ValueError:
            return
        decoded = corpus.decode(corpus.encode(sentences, vocab), vocab)
        expected = [list(s) for s in sentences if s]
        assert decoded == expected


class TestPersistence:
    def test_vocab_round_trip(self, tmp_path):
        vocab = corpus.build_vocab([["dog", "dog", "cat"], ["bird"]], min_count=1)
        path = tmp_path / "vocab.txt"
        corpus.save_vocabulary(vocab, path)
        back = corpus.load_vocabulary(path)
        assert back.token_to_id == vocab.token_to_id
        assert back.counts == vocab.counts
        assert back.total_tokens == vocab.total_tokens
        header = path.read_text().splitlines()[0]
        assert header == f"VOCAB {len(vocab)} {vocab.total_tokens}"

    def test_vocab_bad_header(self, tmp_path):
        path = tmp_path / "vocab.txt"
        path.write_text("WRONG 1\n")
        with pytest.raises(ValueError, match="header"):
            corpus.load_vocabulary(path)

    def test_vocab_size_mismatch(self, tmp_path):
        path = tmp_path / "vocab.txt"
        path.write_text("VOCAB 2 5\na\t3\n")
        with pytest.raises(ValueError, match="header says 2"):
            corpus.load_vocabulary(path)

    def test_stream_round_trip(self, tmp_path):
        stream = [[0, 3, 2], [1], [4, 4]]
        path = tmp_path / "stream.txt"
        corpus.save_stream(stream, path)
        assert corpus.load_stream(path) == stream

    def test_stopwords_loader(self, tmp_path):
        path = tmp_path / "stop.txt"
        path.write_text("# comment\nthe\n\nand\n")
        assert corpus.load_stopwords(path) == frozenset({"the", "and"})

    def test_bundled_stopwords(self, data_dir):
        words = corpus.load_stopwords(data_dir / "stopwords_en.txt")
        assert "the" in words and "and" in words
