"""Safety protocols: lexicon matching, gate, adherence streaks, suspension, review."""

from datetime import date, timedelta

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chatjournal.clock import utc
from chatjournal.core import SeverityBand
from chatjournal.core.types import (
    AlertEvent,
    AlertKind,
    Assessment,
    ParticipantProfile,
    ParticipantStatus,
    Session,
    SessionMode,
    SessionStatus,
)
from chatjournal.errors import ConfigError, DateOutOfRange
from chatjournal.safety import (
    AdherenceRecord,
    AdherenceSignal,
    FlaggedSession,
    GateVerdict,
    LexiconTerm,
    SensitiveCategory,
    SensitiveLexicon,
    SuspensionPolicy,
    apply_suspension_policy,
    check_adherence,
    detect_sensitive,
    dump_lexicon,
    evaluate_gate,
    load_lexicon,
    record_interaction_day,
    review_queue,
)

FIXTURE_LEXICON = SensitiveLexicon(
    version=1,
    terms=(
        LexiconTerm("self-harm", SensitiveCategory.SELF_HARM),
        LexiconTerm("thoughts of self-harm", SensitiveCategory.SELF_HARM),
        LexiconTerm("want to die", SensitiveCategory.SUICIDE),
    ),
)


def brute_force_matches(text, lexicon):
    """Oracle: enumerate every substring, keep lexicon hits, longest wins on overlap."""
    folded = text.casefold()
    hits = []
    patterns = {t.pattern.casefold(): t for t in lexicon.terms}
    for start in range(len(folded)):
        for end in range(start + 1, len(folded) + 1):
            term = patterns.get(folded[start:end])
            if term is not None:
                hits.append((start, end, term.pattern))
    hits.sort(key=lambda h: (-(h[1] - h[0]), h[0], h[2]))
    kept = []
    for h in hits:
        if not any(h[0] < k[1] and k[0] < h[1] for k in kept):
            kept.append(h)
    return sorted((s, e) for s, e, _ in kept)


class TestDetectSensitive:
    def test_empty(self):
        assert detect_sensitive("", FIXTURE_LEXICON) == []

    def test_clean_text(self):
        assert detect_sensitive("went for a walk, ate lunch", FIXTURE_LEXICON) == []

    def test_same_term_twice_two_spans(self):
        text = "want to die... I said I want to die"
        matches = detect_sensitive(text, FIXTURE_LEXICON)
        assert len(matches) == 2
        assert all(m.term == "want to die" for m in matches)
        assert matches[0].start != matches[1].start

    def test_nested_pattern_longest_wins(self):
        text = "I had thoughts of self-harm today"
        matches = detect_sensitive(text, FIXTURE_LEXICON)
        assert [m.term for m in matches] == ["thoughts of self-harm"]
        assert [(m.start, m.end) for m in matches] == brute_force_matches(text, FIXTURE_LEXICON)

    def test_case_folded(self):
        assert detect_sensitive("SELF-HARM", FIXTURE_LEXICON)[0].term == "self-harm"

    @given(st.text(alphabet="adefhlmorst- iw", max_size=60))
    @settings(max_examples=200)
    def test_matches_brute_force(self, text):
        ours = [(m.start, m.end) for m in detect_sensitive(text, FIXTURE_LEXICON)]
        assert sorted(ours) == brute_force_matches(text, FIXTURE_LEXICON)

    def test_lexicon_versions_move_forward(self):
        bumped = FIXTURE_LEXICON.bump(FIXTURE_LEXICON.terms[:1])
        assert bumped.version == 2

    def test_empty_pattern_rejected(self):
        with pytest.raises(ValueError):
            LexiconTerm("  ", SensitiveCategory.OTHER)

    def test_file_round_trip(self, tmp_path):
        path = tmp_path / "lexicon.txt"
        dump_lexicon(FIXTURE_LEXICON, path)
        loaded = load_lexicon(path)
        assert loaded == FIXTURE_LEXICON

    def test_malformed_file(self, tmp_path):
        path = tmp_path / "lexicon.txt"
        path.write_text("version 1\nno separator here\n", encoding="utf-8")
        with pytest.raises(ConfigError):
            load_lexicon(path)


class TestEvaluateGate:
    def _assessment(self, items, answer=""):
        return Assessment.build("a-1", "p-1", items, answer, utc(2026, 3, 1, 9))

    def test_all_clear(self):
        assert evaluate_gate(self._assessment([0] * 9)) is GateVerdict.PROCEED

    def test_item9_moderate_trips(self):
        assert evaluate_gate(self._assessment([0] * 8 + [2])) is GateVerdict.CALMING_CONTENT

    def test_affirmative_answer_trips(self):
        a = self._assessment([0] * 9, answer="I attempted it last week")
        assert evaluate_gate(a) is GateVerdict.CALMING_CONTENT


def oracle_signals(missed, n_days):
    """Brute-force day scanner: walk the calendar, flag 3rd and 4th missed day of each streak."""
    out = {}
    streak = 0
    for day in range(n_days):
        streak = streak + 1 if day in missed else 0
        if streak == 3:
            out[day] = AdherenceSignal.REMINDER_DUE
        elif streak == 4:
            out[day] = AdherenceSignal.DROPOUT_FLAG
        else:
            out[day] = AdherenceSignal.NONE
    return out


class TestAdherence:
    ENROLL = date(2026, 3, 1)

    def _record(self, interacted_days):
        days = frozenset(self.ENROLL + timedelta(days=d) for d in interacted_days)
        return AdherenceRecord("p-1", self.ENROLL, days)

    def test_daily_use_never_flags(self):
        record = self._record(range(28))
        for d in range(28):
            assert check_adherence(record, self.ENROLL + timedelta(days=d)) is AdherenceSignal.NONE

    def test_reminder_on_third_missed_day_only(self):
        record = self._record([0])  # misses start on day 1
        signals = [check_adherence(record, self.ENROLL + timedelta(days=d)) for d in range(1, 6)]
        assert signals == [
            AdherenceSignal.NONE,
            AdherenceSignal.NONE,
            AdherenceSignal.REMINDER_DUE,
            AdherenceSignal.DROPOUT_FLAG,
            AdherenceSignal.NONE,  # day 5 of the same streak stays silent
        ]

    def test_new_streak_flags_again(self):
        record = self._record([0, 4])
        assert check_adherence(record, self.ENROLL + timedelta(days=3)) is AdherenceSignal.REMINDER_DUE
        assert check_adherence(record, self.ENROLL + timedelta(days=7)) is AdherenceSignal.REMINDER_DUE

    def test_date_before_enrollment_rejected(self):
        record = self._record([0])
        with pytest.raises(DateOutOfRange):
            check_adherence(record, self.ENROLL - timedelta(days=1))
        with pytest.raises(DateOutOfRange):
            record_interaction_day(record, self.ENROLL - timedelta(days=1))

    def test_record_interaction_day(self):
        record = record_interaction_day(self._record([]), self.ENROLL)
        assert self.ENROLL in record.interaction_days

    @given(st.sets(st.integers(min_value=0, max_value=27)))
    @settings(max_examples=300)
    def test_matches_brute_force_scanner(self, interacted):
        record = self._record(interacted)
        missed = set(range(28)) - interacted
        expected = oracle_signals(missed, 28)
        for day in range(28):
            got = check_adherence(record, self.ENROLL + timedelta(days=day))
            assert got is expected[day], f"day {day}: {got} != {expected[day]}"


class TestSuspension:
    def _participant(self, status=ParticipantStatus.ACTIVE, until=None):
        return ParticipantProfile(
            participant_id="p-1",
            alias="P1",
            age=17,
            gender="F",
            severity_band=SeverityBand.SEVERE,
            enrollment_date=date(2026, 2, 1),
            timezone="Asia/Seoul",
            status=status,
            suspended_until=until,
            cesdc_score=30,
        )

    def test_below_threshold_no_change(self):
        policy = SuspensionPolicy(trigger_count=2, window_days=7, suspension_days=3)
        history = [FlaggedSession("s-1", utc(2026, 3, 1, 10))]
        assert apply_suspension_policy(self._participant(), history, policy, utc(2026, 3, 1, 12)) is None

    def test_threshold_reached_suspends_for_policy_days(self):
        policy = SuspensionPolicy(trigger_count=2, window_days=7, suspension_days=3)
        history = [FlaggedSession("s-1", utc(2026, 3, 1, 10)), FlaggedSession("s-2", utc(2026, 3, 3, 10))]
        until = apply_suspension_policy(self._participant(), history, policy, utc(2026, 3, 3, 10))
        assert until == utc(2026, 3, 6, 10)

    def test_old_flags_outside_window_ignored(self):
        policy = SuspensionPolicy(trigger_count=2, window_days=7, suspension_days=3)
        history = [FlaggedSession("s-1", utc(2026, 2, 1, 10)), FlaggedSession("s-2", utc(2026, 3, 3, 10))]
        assert apply_suspension_policy(self._participant(), history, policy, utc(2026, 3, 3, 12)) is None

    def test_same_session_counted_once(self):
        policy = SuspensionPolicy(trigger_count=2, window_days=7, suspension_days=3)
        history = [FlaggedSession("s-1", utc(2026, 3, 1, 10)), FlaggedSession("s-1", utc(2026, 3, 1, 11))]
        assert apply_suspension_policy(self._participant(), history, policy, utc(2026, 3, 1, 12)) is None

    def test_already_suspended_no_change(self):
        policy = SuspensionPolicy()
        participant = self._participant(ParticipantStatus.SUSPENDED, utc(2026, 3, 9))
        history = [FlaggedSession("s-1", utc(2026, 3, 1)), FlaggedSession("s-2", utc(2026, 3, 2))]
        assert apply_suspension_policy(participant, history, policy, utc(2026, 3, 2, 12)) is None

    def test_policy_validation(self):
        with pytest.raises(ValueError):
            SuspensionPolicy(trigger_count=0)


class TestReviewQueue:
    def _session(self, sid, ended_at):
        return Session(
            session_id=sid,
            participant_id="p-1",
            assessment_id="a-1",
            started_at=ended_at - timedelta(minutes=10),
            ended_at=ended_at,
            mode=SessionMode.STANDARD,
            status=SessionStatus.CLOSED,
        )

    def _review_alert(self, sid, created_at, acked=False):
        return AlertEvent(
            alert_id=f"al-{sid}",
            kind=AlertKind.REVIEW_DUE,
            participant_id="p-1",
            session_id=sid,
            created_at=created_at,
            acknowledged_at=created_at + timedelta(hours=1) if acked else None,
            acknowledged_by="c-1" if acked else None,
        )

    def test_past_due_included(self):
        ended = utc(2026, 3, 1, 9)
        sessions = [self._session("s-1", ended)]
        alerts = [self._review_alert("s-1", ended)]
        assert [s.session_id for s in review_queue(sessions, alerts, ended + timedelta(hours=13))] == ["s-1"]

    def test_recent_close_excluded(self):
        ended = utc(2026, 3, 1, 9)
        sessions = [self._session("s-1", ended)]
        alerts = [self._review_alert("s-1", ended)]
        assert review_queue(sessions, alerts, ended + timedelta(hours=1)) == []

    def test_exact_deadline_boundary(self):
        ended = utc(2026, 3, 1, 9)
        sessions = [self._session("s-1", ended)]
        alerts = [self._review_alert("s-1", ended)]
        assert review_queue(sessions, alerts, ended + timedelta(hours=12)) != []
        assert review_queue(sessions, alerts, ended + timedelta(hours=12, seconds=-1)) == []

    def test_acknowledged_excluded(self):
        ended = utc(2026, 3, 1, 9)
        sessions = [self._session("s-1", ended)]
        alerts = [self._review_alert("s-1", ended, acked=True)]
        assert review_queue(sessions, alerts, ended + timedelta(hours=20)) == []

    def test_oldest_first(self):
        s1 = self._session("s-1", utc(2026, 3, 1, 9))
        s2 = self._session("s-2", utc(2026, 3, 1, 7))
        alerts = [self._review_alert("s-1", s1.ended_at), self._review_alert("s-2", s2.ended_at)]
        queue = review_queue([s1, s2], alerts, utc(2026, 3, 2, 9))
        assert [s.session_id for s in queue] == ["s-2", "s-1"]
