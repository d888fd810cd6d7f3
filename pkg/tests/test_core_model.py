"""Core domain types: banding, length units, gate rule, invariants."""

import itertools
import unicodedata
from datetime import date, timedelta

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chatjournal.clock import utc
from chatjournal.core import (
    AffirmativeRules,
    Assessment,
    Author,
    JournalEntry,
    Message,
    ParticipantProfile,
    ParticipantStatus,
    SeverityBand,
    Stage,
    affirmative,
    band_rank,
    classify_cesdc,
    gate_verdict,
    syllable_count,
)
from chatjournal.core.serialize import (
    assessment_from_json,
    assessment_to_json,
    message_from_json,
    message_to_json,
    participant_from_json,
    participant_to_json,
)

FIXTURE_RULES = AffirmativeRules(terms=("attempted", "hurt myself"), negators=("no", "not", "never", "none"))


class TestClassifyCesdc:
    @pytest.mark.parametrize(
        "score,band",
        [
            (15, SeverityBand.MINIMAL),
            (16, SeverityBand.MILD),
            (25, SeverityBand.SEVERE),
            (0, SeverityBand.MINIMAL),
            (24, SeverityBand.MILD),
            (60, SeverityBand.SEVERE),
        ],
    )
    def test_bands(self, score, band):
        assert classify_cesdc(score) is band

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            classify_cesdc(-1)

    @given(st.integers(min_value=0, max_value=80), st.integers(min_value=0, max_value=80))
    def test_monotone(self, s1, s2):
        if s1 <= s2:
            assert band_rank(classify_cesdc(s1)) <= band_rank(classify_cesdc(s2))


class TestSyllableCount:
    @pytest.mark.parametrize(
        "text,expected",
        [
            ("", 0),
            ("안녕하세요", 5),  # five precomposed syllable blocks
            ("hi there!", 7),  # seven letters, space and bang dropped
            ("한", 1),  # decomposed jamo L+V+T forms one block
            ("오늘 기분이 좋아요!", 8),
            ("a  b", 2),
            ("?!.,;", 0),
            ("café", 4),  # combining acute folds into the 'e'
        ],
    )
    def test_examples(self, text, expected):
        assert syllable_count(text) == expected

    @given(st.text(max_size=40), st.text(max_size=40))
    def test_subadditive(self, a, b):
        assert syllable_count(a + b) <= syllable_count(a) + syllable_count(b)

    @given(st.text(alphabet=st.characters(whitelist_categories=("Lu", "Ll", "Nd")), max_size=60))
    def test_plain_text_counts_non_separator_chars(self, text):
        # no combining marks in the alphabet, so every kept char is a unit
        expected = sum(1 for ch in text if not ch.isspace() and not unicodedata.category(ch).startswith("P"))
        assert syllable_count(text) == expected


class TestAffirmative:
    def test_empty_is_false(self):
        assert affirmative("", FIXTURE_RULES) is False

    def test_lexicon_term_matches(self):
        assert affirmative("I attempted it last week", FIXTURE_RULES) is True

    def test_negated_term_is_false(self):
        assert affirmative("no, I have not hurt myself", FIXTURE_RULES) is False

    def test_calm_answer_default_lexicon(self):
        assert affirmative("none, I had a calm week") is False

    def test_case_folded(self):
        assert affirmative("ATTEMPTED", FIXTURE_RULES) is True


class TestAssessment:
    def _build(self, items, answer="", when=utc(2026, 3, 1, 10)):
        return Assessment.build("a-1", "p-1", items, answer, when, FIXTURE_RULES)

    def test_total_is_item_sum(self):
        a = self._build([1, 2, 0, 3, 1, 0, 2, 1, 0])
        assert a.total == 10

    def test_gate_trips_on_item9(self):
        assert self._build([0] * 8 + [2]).gate_tripped is True
        assert self._build([0] * 8 + [1]).gate_tripped is False

    def test_gate_trips_on_affirmative_answer(self):
        a = self._build([0] * 9, answer="I attempted last month")
        assert a.gate_tripped is True

    def test_inconsistent_total_rejected(self):
        with pytest.raises(ValueError):
            Assessment("a-1", "p-1", (0,) * 9, "", total=5, gate_tripped=False, created_at=utc(2026, 3, 1))

    def test_item_bounds_enforced(self):
        with pytest.raises(ValueError):
            self._build([0] * 8 + [4])

    @given(st.lists(st.integers(0, 3), min_size=9, max_size=9), st.booleans())
    @settings(max_examples=200)
    def test_gate_depends_only_on_item9_and_answer(self, items, affirm):
        answer = "attempted" if affirm else "fine"
        base = gate_verdict(tuple(items), answer, FIXTURE_RULES)
        shuffled = items[:8][::-1] + [items[8]]
        assert gate_verdict(tuple(shuffled), answer, FIXTURE_RULES) == base
        assert base == (items[8] >= 2 or affirm)


class TestMessage:
    def test_length_units_cached(self):
        m = Message("m-1", "s-1", Author.PATIENT, "안녕하세요", utc(2026, 3, 1, 9))
        assert m.length_units == 5

    def test_stale_length_rejected(self):
        with pytest.raises(ValueError):
            Message("m-1", "s-1", Author.PATIENT, "hi", utc(2026, 3, 1, 9), length_units=99)

    def test_round_trip(self):
        m = Message("m-1", "s-1", Author.ASSISTANT, "how was it?", utc(2026, 3, 1, 9), Stage.EXPLORATION)
        assert message_from_json(message_to_json(m)) == m


class TestParticipantProfile:
    def _profile(self, **kw):
        defaults = dict(
            participant_id="p-1",
            alias="P1",
            age=16,
            gender="F",
            severity_band=SeverityBand.MILD,
            enrollment_date=date(2026, 2, 1),
            timezone="Asia/Seoul",
            cesdc_score=18,
        )
        defaults.update(kw)
        return ParticipantProfile(**defaults)

    def test_band_must_match_score(self):
        with pytest.raises(ValueError):
            self._profile(severity_band=SeverityBand.SEVERE, cesdc_score=10)

    def test_suspension_carries_until(self):
        with pytest.raises(ValueError):
            self._profile(status=ParticipantStatus.SUSPENDED)

    def test_suspension_window(self):
        until = utc(2026, 3, 4, 12)
        p = self._profile(status=ParticipantStatus.SUSPENDED, suspended_until=until)
        assert p.is_suspended(until - timedelta(seconds=1))
        assert not p.is_suspended(until)

    def test_round_trip(self):
        p = self._profile()
        assert participant_from_json(participant_to_json(p)) == p


class TestJournalEntryAndSerialization:
    def test_entry_versions_non_negative(self):
        with pytest.raises(ValueError):
            JournalEntry(-1, "text", Author.ASSISTANT, utc(2026, 3, 1))

    def test_assessment_round_trip(self):
        a = Assessment.build("a-9", "p-2", [3, 0, 1, 2, 0, 0, 1, 0, 2], "", utc(2026, 4, 2, 8), FIXTURE_RULES)
        assert assessment_from_json(assessment_to_json(a)) == a


def test_gate_exhaustive_corner():
    # spot-check the full cartesian logic the acceptance suite sweeps
    for i9 in range(4):
        for affirm in (False, True):
            items = (0,) * 8 + (i9,)
            answer = "attempted" if affirm else ""
            assert gate_verdict(items, answer, FIXTURE_RULES) == (i9 >= 2 or affirm)


def test_item_permutations_never_change_verdict():
    items = [0, 1, 2, 3, 0, 1, 2, 3]
    for perm in itertools.islice(itertools.permutations(items, 8), 50):
        assert gate_verdict(tuple(perm) + (1,), "", FIXTURE_RULES) is False
        assert gate_verdict(tuple(perm) + (3,), "", FIXTURE_RULES) is True
