"""Full-name normalization and the classic Soundex encoder.

Names are handled as single units: normalization canonicalizes case and
whitespace but keeps diacritics, so downstream features can still see them.
Phonetic encoders work per token and transliterate to ASCII first, since both
Soundex and Double Metaphone are defined over A-Z only.
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass

from .errors import EmptyNameError, NotEncodableError

# Characters that NFKD decomposition alone does not reduce to ASCII letters.
_SPECIAL_TRANSLITERATIONS = {
    "ß": "ss",
    "æ": "ae",
    "œ": "oe",
    "ø": "o",
    "đ": "d",
    "ð": "d",
    "þ": "th",
    "ł": "l",
    "ŋ": "ng",
    "ı": "i",
    "ħ": "h",
    "ĸ": "k",
}


@dataclass(frozen=True)
class FullName:
    """A personal name: the raw source string and its normalized form."""

    raw: str
    normalized: str

    def tokens(self) -> list[str]:
        return self.normalized.split(" ")


@dataclass(frozen=True)
class PhoneticCode:
    """Phonetic encoding of a single token.

    Soundex yields only a primary code; Double Metaphone may add an alternate
    pronunciation, which is dropped whenever identical to the primary.
    """

    primary: str
    alternate: str | None = None


def normalize(raw: str) -> FullName:
    """Canonicalize a raw name: lowercase, collapse whitespace, keep diacritics.

    Raises EmptyNameError if the string contains no letters at all.
    """
    if not any(ch.isalpha() for ch in raw):
        raise EmptyNameError(f"no letters in name: {raw!r}")
    normalized = " ".join(raw.lower().split())
    return FullName(raw=raw, normalized=normalized)


def to_ascii_letters(token: str) -> str:
    """Transliterate a token to uppercase ASCII letters, dropping everything else.

    Diacritics are stripped via canonical decomposition (é -> e); a small fixed
    table covers letters with no decomposition (ß -> ss). Characters that still
    are not ASCII letters are dropped.
    """
    expanded = "".join(_SPECIAL_TRANSLITERATIONS.get(ch, ch) for ch in token.lower())
    decomposed = unicodedata.normalize("NFKD", expanded)
    return "".join(ch for ch in decomposed.upper() if "A" <= ch <= "Z")


# Soundex consonant classes; vowels, H and W carry no digit.
_SOUNDEX_DIGITS = str.maketrans(
    {
        **{c: "1" for c in "BFPV"},
        **{c: "2" for c in "CGJKQSXZ"},
        **{c: "3" for c in "DT"},
        **{c: "4" for c in "L"},
        **{c: "5" for c in "MN"},
        **{c: "6" for c in "R"},
    }
)


def _soundex_digit(letter: str) -> str:
    return letter.translate(_SOUNDEX_DIGITS) if letter not in "AEIOUYHW" else ""


def soundex(token: str) -> PhoneticCode:
    """Encode one word as the classic letter + 3 digit Soundex code.

    Adjacent letters sharing a digit collapse to one; H and W are transparent
    (they do not break such a run) while vowels do.

    Raises NotEncodableError if nothing ASCII-mappable survives transliteration.
    """
    word = to_ascii_letters(token)
    if not word:
        raise NotEncodableError(f"token has no encodable letters: {token!r}")

    digits = []
    previous = _soundex_digit(word[0])
    for letter in word[1:]:
        if letter in "HW":
            continue
        digit = _soundex_digit(letter)
        if digit and digit != previous:
            digits.append(digit)
        previous = digit
    code = word[0] + "".join(digits[:3])
    return PhoneticCode(primary=code.ljust(4, "0"))
