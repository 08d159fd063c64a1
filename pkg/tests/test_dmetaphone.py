import pytest
from hypothesis import given, settings, strategies as st

from namelens.dmetaphone import double_metaphone
from namelens.errors import NotEncodableError
from namelens.names import to_ascii_letters
from reference.dmetaphone_ref import reference_double_metaphone

OUTPUT_ALPHABET = set("AFHJKLMNPRSTX0")


def canonical_reference(word: str) -> tuple[str, str | None]:
    """Reference codes with the literal-space quirk stripped out."""
    primary, secondary = reference_double_metaphone(word)
    primary = primary.replace(" ", "")
    secondary = (secondary or "").replace(" ", "")
    if not secondary or secondary == primary:
        return primary, None
    return primary, secondary


class TestKnownCodes:
    @pytest.mark.parametrize(
        "word,primary,alternate",
        [
            ("smith", "SM0", "XMT"),
            ("thomas", "TMS", None),
            ("a", "A", None),
            ("dumb", "TM", None),  # silent trailing B
            ("berger", "PRKR", "PRJR"),
            ("jose", "HS", None),
            ("school", "SKL", None),
            ("Xavier", "SF", "SFR"),
            ("Wasserman", "ASRM", "FSRM"),
            ("nguyen", "NKN", None),
            ("Filipowicz", "FLPT", "FLPF"),
            ("zhao", "J", None),
            ("knight", "NT", None),
        ],
    )
    def test_default_length(self, word, primary, alternate):
        code = double_metaphone(word)
        assert (code.primary, code.alternate) == (primary, alternate)

    def test_unbounded_codes(self):
        code = double_metaphone("Wasserman", max_length=None)
        assert (code.primary, code.alternate) == ("ASRMN", "FSRMN")

    def test_truncation_prefix(self):
        full = double_metaphone("schermerhorn", max_length=None)
        short = double_metaphone("schermerhorn", max_length=4)
        assert full.primary.startswith(short.primary)
        assert len(short.primary) <= 4

    def test_alternate_collapses_after_truncation(self):
        # codes differing only beyond the cut have no alternate at length 4
        full = double_metaphone("mistberger", max_length=None)
        assert (full.primary, full.alternate) == ("MSTPRKR", "MSTPRJR")
        assert double_metaphone("mistberger", max_length=4).alternate is None

    def test_not_encodable(self):
        with pytest.raises(NotEncodableError):
            double_metaphone("42")


class TestProperties:
    @given(st.text(alphabet="ABCDEFGHIJKLMNOPQRSTUVWXYZ", min_size=1, max_size=14))
    def test_output_alphabet_and_alternate(self, word):
        code = double_metaphone(word, max_length=None)
        assert set(code.primary) <= OUTPUT_ALPHABET
        if code.alternate is not None:
            assert set(code.alternate) <= OUTPUT_ALPHABET
            assert code.alternate != code.primary

    @given(st.text(alphabet="abcdefghijklmnopqrstuvwxyz", min_size=1, max_size=12))
    def test_case_insensitive_and_pure(self, word):
        lower = double_metaphone(word)
        assert lower == double_metaphone(word.upper())
        assert lower == double_metaphone(word)

    @settings(max_examples=300)
    @given(st.text(alphabet="ABCDEFGHIJKLMNOPQRSTUVWXYZ", min_size=1, max_size=14))
    def test_matches_reference(self, word):
        code = double_metaphone(word, max_length=None)
        assert (code.primary, code.alternate) == canonical_reference(word)


class TestReferenceAgreement:
    def test_fixture_list_exact_match(self, phonetic_words):
        for word in phonetic_words:
            ascii_word = to_ascii_letters(word)
            code = double_metaphone(word, max_length=None)
            assert (code.primary, code.alternate) == canonical_reference(ascii_word), word
