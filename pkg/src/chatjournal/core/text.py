"""Text length units.

Message length is measured in "length units": grapheme clusters counted
after dropping whitespace and punctuation. Each precomposed or
jamo-composed Hangul syllable block counts as exactly one unit, which is
the case the rule must get right; for other scripts the segmentation is a
close approximation of extended grapheme clusters (combining marks,
zero-width joins, variation selectors, and regional-indicator pairs are
folded into their base cluster).
"""

from __future__ import annotations

import unicodedata

_ZWJ = "‍"

# Hangul jamo ranges (conjoining): leading, vowel, trailing.
_L = ((0x1100, 0x115F), (0xA960, 0xA97C))
_V = ((0x1160, 0x11A7), (0xD7B0, 0xD7C6))
_T = ((0x11A8, 0x11FF), (0xD7CB, 0xD7FB))
# Precomposed syllables. LV blocks fall every 28 code points.
_SYL_BASE, _SYL_LAST = 0xAC00, 0xD7A3


def _in_ranges(cp: int, ranges: tuple[tuple[int, int], ...]) -> bool:
    return any(lo <= cp <= hi for lo, hi in ranges)


def _hangul_class(ch: str) -> str | None:
    cp = ord(ch)
    if _SYL_BASE <= cp <= _SYL_LAST:
        return "LV" if (cp - _SYL_BASE) % 28 == 0 else "LVT"
    if _in_ranges(cp, _L):
        return "L"
    if _in_ranges(cp, _V):
        return "V"
    if _in_ranges(cp, _T):
        return "T"
    return None


# prev-class -> classes that continue the same syllable block
_HANGUL_JOINS = {
    "L": {"L", "V", "LV", "LVT"},
    "V": {"V", "T"},
    "LV": {"V", "T"},
    "LVT": {"T"},
    "T": {"T"},
}


def _is_extender(ch: str) -> bool:
    if ch == _ZWJ or "︀" <= ch <= "️":
        return True
    return unicodedata.category(ch) in ("Mn", "Mc", "Me")


def _is_regional_indicator(ch: str) -> bool:
    return "\U0001f1e6" <= ch <= "\U0001f1ff"


def _is_counted(ch: str) -> bool:
    if ch.isspace():
        return False
    cat = unicodedata.category(ch)
    if cat.startswith("P") or cat == "Cc":
        return False
    if cat == "Cf" and ch != _ZWJ:
        return False
    return True


def syllable_count(text: str) -> int:
    """Count length units in ``text``. Total on all strings; empty -> 0."""
    count = 0
    base: str | None = None  # base char of the open cluster, None after a break
    pending_zwj = False  # last counted char was a ZWJ, next char joins
    ri_open = False  # cluster currently holds a single regional indicator
    for ch in text:
        if not _is_counted(ch):
            base, pending_zwj, ri_open = None, False, False
            continue

        if base is None:
            starts_cluster = True
        elif _is_extender(ch) or pending_zwj:
            starts_cluster = False
        elif _is_regional_indicator(ch):
            starts_cluster = not ri_open  # RIs pair up two at a time
        else:
            pc, cc = _hangul_class(base), _hangul_class(ch)
            starts_cluster = not (pc is not None and cc is not None and cc in _HANGUL_JOINS[pc])

        if starts_cluster:
            count += 1
            ri_open = _is_regional_indicator(ch)
            base = ch
        else:
            if _is_regional_indicator(ch):
                ri_open = False  # second RI closes the pair
            if not _is_extender(ch):
                base = ch
        pending_zwj = ch == _ZWJ
        if base is None:
            base = ch  # a lone extender opens its own cluster
    return count
