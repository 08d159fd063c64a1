"""Double Metaphone phonetic encoder (Philips, 2000).

Produces a primary code and, for tokens with plausible alternate
pronunciations, a secondary one. The rule set is the classic one: the engine
walks the uppercased ASCII word once, emitting code fragments per letter
group with contextual lookarounds. Output alphabet: A F H J K L M N P R S T X
plus "0" for the th sound.
"""

from __future__ import annotations

from .errors import NotEncodableError
from .names import PhoneticCode, to_ascii_letters

_VOWELS = frozenset("AEIOUY")
_SILENT_STARTS = ("GN", "KN", "PN", "WR", "PS")


def double_metaphone(token: str, max_length: int | None = 4) -> PhoneticCode:
    """Encode one word; codes are truncated to max_length (None = unbounded).

    The alternate is omitted whenever it coincides with the primary after
    truncation. Raises NotEncodableError when transliteration leaves no ASCII
    letter to encode.
    """
    word = to_ascii_letters(token)
    if not word:
        raise NotEncodableError(f"token has no encodable letters: {token!r}")
    primary, alternate = _encode(word)
    # A handful of rules emit a literal space to force the codes apart; it is
    # not part of the output alphabet.
    primary = primary.replace(" ", "")
    alternate = alternate.replace(" ", "")
    if max_length is not None:
        primary = primary[:max_length]
        alternate = alternate[:max_length]
    if not alternate or alternate == primary:
        return PhoneticCode(primary, None)
    return PhoneticCode(primary, alternate)


def _encode(word: str) -> tuple[str, str]:
    # Two leading dashes and trailing spaces let every contextual slice be
    # taken without bounds checks; `first`/`last` index the real letters.
    s = "--" + word + "     "
    first = 2
    last = first + len(word) - 1
    slavo = ("W" in word) or ("K" in word) or ("CZ" in word) or ("WITZ" in word)

    pri: list[str] = []
    alt: list[str] = []

    def add(p: str, a: str | None = None) -> None:
        pri.append(p)
        alt.append(p if a is None else a)

    i = first
    if s[first : first + 2] in _SILENT_STARTS:
        i += 1
    if s[i] == "X" and i == first:
        add("S")  # initial X as in 'Xavier'
        i += 1

    while i <= last:
        ch = s[i]
        skip = 1

        if ch in _VOWELS:
            if i == first:
                add("A")  # all initial vowels map to A

        elif ch == "B":
            add("P")
            if s[i + 1] == "B":
                skip = 2

        elif ch == "C":
            skip = _consume_c(s, i, first, add, slavo)

        elif ch == "D":
            if s[i : i + 2] == "DG":
                if s[i + 2] in "IEY":
                    add("J")  # 'edge'
                    skip = 3
                else:
                    add("TK")  # 'edgar'
                    skip = 2
            elif s[i : i + 2] in ("DT", "DD"):
                add("T")
                skip = 2
            else:
                add("T")

        elif ch == "F":
            add("F")
            if s[i + 1] == "F":
                skip = 2

        elif ch == "G":
            skip = _consume_g(s, i, first, last, add, slavo)

        elif ch == "H":
            # keep only between vowels or when word-initial before a vowel
            if (i == first or s[i - 1] in _VOWELS) and s[i + 1] in _VOWELS:
                add("H")
                skip = 2

        elif ch == "J":
            skip = _consume_j(s, i, first, last, add, slavo)

        elif ch == "K":
            add("K")
            if s[i + 1] == "K":
                skip = 2

        elif ch == "L":
            if s[i + 1] == "L":
                # spanish 'cabrillo', 'gallegos': alternate drops the L
                if (i == last - 2 and s[i - 1 : i + 3] in ("ILLO", "ILLA", "ALLE")) or (
                    (s[last - 1 : last + 1] in ("AS", "OS") or s[last] in "AO")
                    and s[i - 1 : i + 3] == "ALLE"
                ):
                    add("L", "")
                else:
                    add("L")
                skip = 2
            else:
                add("L")

        elif ch == "M":
            add("M")
            # 'dumb', 'thumb': silent B handled here
            if (
                s[i - 1 : i + 2] == "UMB" and (i + 1 == last or s[i + 2 : i + 4] == "ER")
            ) or s[i + 1] == "M":
                skip = 2

        elif ch == "N":
            add("N")
            if s[i + 1] == "N":
                skip = 2

        elif ch == "P":
            if s[i + 1] == "H":
                add("F")
                skip = 2
            else:
                add("P")
                if s[i + 1] in "PB":  # 'campbell', 'raspberry'
                    skip = 2

        elif ch == "Q":
            add("K")
            if s[i + 1] == "Q":
                skip = 2

        elif ch == "R":
            # french final -ier as in 'rogier', excluding 'hochmeier'
            if (
                i == last
                and not slavo
                and s[i - 2 : i] == "IE"
                and s[i - 4 : i - 2] not in ("ME", "MA")
            ):
                add("", "R")
            else:
                add("R")
            if s[i + 1] == "R":
                skip = 2

        elif ch == "S":
            skip = _consume_s(s, i, first, last, add, slavo)

        elif ch == "T":
            if s[i : i + 4] == "TION" or s[i : i + 3] in ("TIA", "TCH"):
                add("X")
                skip = 3
            elif s[i : i + 2] == "TH" or s[i : i + 3] == "TTH":
                if s[i + 2 : i + 4] in ("OM", "AM") or s[first : first + 4] in (
                    "VAN ",
                    "VON ",
                ) or s[first : first + 3] == "SCH":
                    add("T")  # 'thomas', 'thames', germanic
                else:
                    add("0", "T")
                skip = 2
            elif s[i + 1] in "TD":
                add("T")
                skip = 2
            else:
                add("T")

        elif ch == "V":
            add("F")
            if s[i + 1] == "V":
                skip = 2

        elif ch == "W":
            skip = _consume_w(s, i, first, last, add)

        elif ch == "X":
            # final X silent in french 'breaux'
            if not (
                i == last
                and (s[i - 3 : i] in ("IAU", "EAU") or s[i - 2 : i] in ("AU", "OU"))
            ):
                add("KS")
            if s[i + 1] in "CX":
                skip = 2

        elif ch == "Z":
            if s[i + 1] == "H":
                add("J")  # pinyin 'zhao'
            elif s[i + 1 : i + 3] in ("ZO", "ZI", "ZA") or (
                slavo and i > first and s[i - 1] != "T"
            ):
                add("S", "TS")
            else:
                add("S")
            if s[i + 1] == "Z":
                skip = 2

        i += skip

    return "".join(pri), "".join(alt)


def _consume_c(s: str, i: int, first: int, add, slavo: bool) -> int:
    # germanic '-ACH-' as in 'bacher', 'macher'
    if (
        i > first + 1
        and s[i - 2] not in _VOWELS
        and s[i - 1 : i + 2] == "ACH"
        and (s[i + 2] not in "IE" or s[i - 2 : i + 4] in ("BACHER", "MACHER"))
    ):
        add("K")
        return 2
    if i == first and s[first : first + 6] == "CAESAR":
        add("S")
        return 2
    if s[i : i + 4] == "CHIA":  # italian 'chianti'
        add("K")
        return 2
    if s[i : i + 2] == "CH":
        if i > first and s[i : i + 4] == "CHAE":  # 'michael'
            add("K", "X")
            return 2
        if (
            i == first
            and (s[i + 1 : i + 6] in ("HARAC", "HARIS") or s[i + 1 : i + 4] in ("HOR", "HYM", "HIA", "HEM"))
            and s[first : first + 5] != "CHORE"
        ):
            add("K")  # greek roots 'chorus', 'chymera'
            return 2
        if (
            s[first : first + 4] in ("VAN ", "VON ")
            or s[first : first + 3] == "SCH"
            or s[i - 2 : i + 4] in ("ORCHES", "ARCHIT", "ORCHID")
            or s[i + 2] in "TS"
            or (
                (s[i - 1] in "AOUE" or i == first)
                and s[i + 2] in ("L", "R", "N", "M", "B", "H", "F", "V", "W", " ")
            )
        ):
            add("K")  # germanic/greek 'kh' sound
            return 1
        if i > first:
            if s[first : first + 2] == "MC":
                add("K")  # 'mac caffrey' style
            else:
                add("X", "K")
        else:
            add("X")
        return 2
    if s[i : i + 2] == "CZ" and s[i - 2 : i + 2] != "WICZ":
        add("S", "X")  # 'czerny'
        return 2
    if s[i + 1 : i + 4] == "CIA":
        add("X")  # 'focaccia'
        return 3
    if s[i : i + 2] == "CC" and not (i == first + 1 and s[first] == "M"):
        if s[i + 2] in "IEH" and s[i + 2 : i + 4] != "HU":
            if (i == first + 1 and s[first] == "A") or s[i - 1 : i + 4] in (
                "UCCEE",
                "UCCES",
            ):
                add("KS")  # 'accident', 'succeed'
            else:
                add("X")  # 'bacci', 'bertucci'
            return 3
        add("K")  # 'bacchus'
        return 2
    if s[i : i + 2] in ("CK", "CG", "CQ"):
        add("K")
        return 2
    if s[i : i + 2] in ("CI", "CE", "CY"):
        if s[i : i + 3] in ("CIO", "CIE", "CIA"):
            add("S", "X")
        else:
            add("S")
        return 2
    add("K")
    if s[i + 1 : i + 3] in (" C", " Q", " G"):
        return 3
    if s[i + 1] in "CKQ" and s[i + 1 : i + 3] not in ("CE", "CI"):
        return 2
    return 1


def _consume_g(s: str, i: int, first: int, last: int, add, slavo: bool) -> int:
    if s[i + 1] == "H":
        if i > first and s[i - 1] not in _VOWELS:
            add("K")
            return 2
        if i == first:
            if s[i + 2] == "I":
                add("J")  # 'ghislane'
            else:
                add("K")  # 'ghiradelli'
            return 2
        # Parker's rule: silent GH after B/H/D a few letters back, e.g. 'hugh'
        if (
            (i > first + 1 and s[i - 2] in "BHD")
            or (i > first + 2 and s[i - 3] in "BHD")
            or (i > first + 3 and s[i - 4] in "BH")
        ):
            return 2
        # 'laugh', 'cough', 'rough'
        if i > first + 2 and s[i - 1] == "U" and s[i - 3] in "CGLRT":
            add("F")
        elif i > first and s[i - 1] != "I":
            add("K")
        return 2
    if s[i + 1] == "N":
        if i == first + 1 and s[first] in _VOWELS and not slavo:
            add("KN", "N")
        elif s[i + 2 : i + 4] != "EY" and s[i + 1] != "Y" and not slavo:
            add("N", "KN")  # not 'cagney'
        else:
            add("KN")
        return 2
    if s[i + 1 : i + 3] == "LI" and not slavo:
        add("KL", "L")  # 'tagliaro'
        return 2
    if i == first and (
        s[i + 1] == "Y"
        or s[i + 1 : i + 3]
        in ("ES", "EP", "EB", "EL", "EY", "IB", "IL", "IN", "IE", "EI", "ER")
    ):
        add("K", "J")  # initial 'ges-', 'gy-'
        return 2
    if (
        (s[i + 1 : i + 3] == "ER" or s[i + 1] == "Y")
        and s[first : first + 6] not in ("DANGER", "RANGER", "MANGER")
        and s[i - 1] not in "EI"
        and s[i - 1 : i + 2] not in ("RGY", "OGY")
    ):
        add("K", "J")  # '-ger-', '-gy-'
        return 2
    if s[i + 1] in "EIY" or s[i - 1 : i + 3] in ("AGGI", "OGGI"):
        if (
            s[first : first + 4] in ("VAN ", "VON ")
            or s[first : first + 3] == "SCH"
            or s[i + 1 : i + 3] == "ET"
        ):
            add("K")  # obvious germanic
        elif s[i + 1 : i + 5] == "IER ":
            add("J")  # always soft french ending
        else:
            add("J", "K")  # italian 'biaggi'
        return 2
    add("K")
    if s[i + 1] == "G":
        return 2
    return 1


def _consume_j(s: str, i: int, first: int, last: int, add, slavo: bool) -> int:
    if s[i : i + 4] == "JOSE" or s[first : first + 4] == "SAN ":
        if (i == first and s[i + 4] == " ") or s[first : first + 4] == "SAN ":
            add("H")  # spanish 'jose', 'san jacinto'
        else:
            add("J", "H")
    elif i == first:
        add("J", "A")  # Yankelovich / Jankelowicz
    elif s[i - 1] in _VOWELS and not slavo and s[i + 1] in "AO":
        add("J", "H")  # spanish 'bajador'
    elif i == last:
        add("J", " ")
    elif s[i + 1] not in ("L", "T", "K", "S", "N", "M", "B", "Z") and s[i - 1] not in "SKL":
        add("J")
    return 2 if s[i + 1] == "J" else 1


def _consume_s(s: str, i: int, first: int, last: int, add, slavo: bool) -> int:
    if s[i - 1 : i + 2] in ("ISL", "YSL"):
        return 1  # silent in 'island', 'carlisle'
    if i == first and s[first : first + 5] == "SUGAR":
        add("X", "S")
        return 1
    if s[i : i + 2] == "SH":
        if s[i + 1 : i + 5] in ("HEIM", "HOEK", "HOLM", "HOLZ"):
            add("S")  # germanic
        else:
            add("X")
        return 2
    if s[i : i + 3] in ("SIO", "SIA") or s[i : i + 4] == "SIAN":
        if not slavo:
            add("S", "X")  # italian & armenian
        else:
            add("S")
        return 3
    if (i == first and s[i + 1] in "MNLW") or s[i + 1] == "Z":
        add("S", "X")  # 'smith' matching 'schmidt', '-sz-'
        return 2 if s[i + 1] == "Z" else 1
    if s[i : i + 2] == "SC":
        if s[i + 2] == "H":
            if s[i + 3 : i + 5] in ("OO", "ER", "EN", "UY", "ED", "EM"):
                if s[i + 3 : i + 5] in ("ER", "EN"):
                    add("X", "SK")  # 'schermerhorn', 'schenker'
                else:
                    add("SK")  # dutch 'school', 'schooner'
            elif i == first and s[first + 3] not in _VOWELS and s[first + 3] != "W":
                add("X", "S")
            else:
                add("X")
            return 3
        if s[i + 2] in "IEY":
            add("S")
            return 3
        add("SK")
        return 3
    if i == last and s[i - 2 : i] in ("AI", "OI"):
        add("", "S")  # french 'resnais', 'artois'
        return 1
    add("S")
    return 2 if s[i + 1] in "SZ" else 1


def _consume_w(s: str, i: int, first: int, last: int, add) -> int:
    if s[i : i + 2] == "WR":
        add("R")
        return 2
    if i == first and (s[i + 1] in _VOWELS or s[i : i + 2] == "WH"):
        if s[i + 1] in _VOWELS:
            add("A", "F")  # Wasserman matching Vasserman
        else:
            add("A")
        return 1
    if (
        (i == last and s[i - 1] in _VOWELS)
        or s[i - 1 : i + 5] in ("EWSKI", "EWSKY", "OWSKI", "OWSKY")
        or s[first : first + 3] == "SCH"
    ):
        add("", "F")  # Arnow matching Arnoff
        return 1
    if s[i : i + 4] in ("WICZ", "WITZ"):
        add("TS", "FX")  # polish 'filipowicz'
        return 4
    return 1
