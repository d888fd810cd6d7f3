"""Analytics: engagement against hand-computed oracles, word frequencies,
trend ordering, bundle caveat behavior."""

import math
from datetime import date, timedelta

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chatjournal.clock import utc
from chatjournal.core import Author, Message, SeverityBand, Stage
from chatjournal.core.types import (
    Assessment,
    ParticipantProfile,
    Session,
    SessionMode,
    SessionStatus,
)
from chatjournal.errors import ProviderUnavailable
from chatjournal.gateway import Gateway, ScriptRule, ScriptedProvider
from chatjournal.insights import (
    ACCURACY_CAVEAT,
    InsightBundle,
    Period,
    StopwordTokenizer,
    SummaryKind,
    build_insight_bundle,
    compute_engagement,
    phq9_trend,
    stage_distribution,
    summarize_period,
    word_frequencies,
)


def _participant(pid, enrollment=date(2026, 3, 1)):
    return ParticipantProfile(
        participant_id=pid,
        alias=pid,
        age=17,
        gender="F",
        severity_band=SeverityBand.MINIMAL,
        enrollment_date=enrollment,
        timezone="UTC",
        cesdc_score=5,
    )


def _session(sid, pid, started, duration_s=None, texts=(), stages=()):
    messages = []
    t = started
    for i, text in enumerate(texts):
        author = Author.PATIENT if i % 2 == 0 else Author.ASSISTANT
        stage = stages[i] if i < len(stages) else (Stage.EXPLORATION if author is Author.ASSISTANT else None)
        messages.append(Message(f"{sid}-m{i}", sid, author, text, t, stage))
    assistant_count = sum(1 for m in messages if m.author is Author.ASSISTANT)
    ended = started + timedelta(seconds=duration_s) if duration_s is not None else None
    return Session(
        session_id=sid,
        participant_id=pid,
        assessment_id="a-1",
        started_at=started,
        ended_at=ended,
        mode=SessionMode.STANDARD,
        status=SessionStatus.CLOSED if ended else SessionStatus.OPEN,
        messages=tuple(messages),
        stage_trace=tuple((i + 1, Stage.EXPLORATION) for i in range(assistant_count)),
    )


class TestComputeEngagement:
    def test_five_session_fixture_matches_hand_oracle(self):
        start = utc(2026, 3, 2, 9)
        durations = [100, 200, 300, 400, 500]
        texts = ["hello there", "ok", "more text here"]
        sessions = [
            _session(f"s-{i}", "p-1", start + timedelta(days=i), d, texts) for i, d in enumerate(durations)
        ]
        participants = [_participant("p-1")]
        metrics = compute_engagement(sessions, participants, as_of=utc(2026, 3, 10))

        # independent recomputation, spreadsheet style
        exp_mean = sum(durations) / 5
        exp_sd = math.sqrt(sum((d - exp_mean) ** 2 for d in durations) / 5)
        assert metrics.entries_total == 5
        assert metrics.session_duration_mean_s == pytest.approx(exp_mean, rel=1e-12)
        assert metrics.session_duration_sd_s == pytest.approx(exp_sd, rel=1e-12)

        lengths = [m.length_units for s in sessions for m in s.messages]
        l_mean = sum(lengths) / len(lengths)
        l_sd = math.sqrt(sum((v - l_mean) ** 2 for v in lengths) / len(lengths))
        assert metrics.message_length_mean_units == pytest.approx(l_mean, rel=1e-12)
        assert metrics.message_length_sd_units == pytest.approx(l_sd, rel=1e-12)
        assert metrics.messages_per_session_mean == pytest.approx(3.0)
        assert metrics.messages_per_session_sd == pytest.approx(0.0)

    def test_entries_per_participant_cohort(self):
        start = utc(2026, 3, 2, 9)
        participants = [_participant("p-1"), _participant("p-2")]
        sessions = [_session(f"s-{i}", "p-1", start + timedelta(hours=i), 60) for i in range(3)]
        metrics = compute_engagement(sessions, participants, as_of=utc(2026, 3, 3))
        assert metrics.entries_per_participant_mean == pytest.approx(1.5)

    def test_zero_sessions_flagged_empty(self):
        metrics = compute_engagement([], [_participant("p-1")], as_of=utc(2026, 3, 10))
        assert metrics.empty_period is True
        assert metrics.entries_total == 0
        assert metrics.session_duration_mean_s == 0.0

    def test_open_sessions_contribute_messages_not_durations(self):
        start = utc(2026, 3, 2, 9)
        sessions = [
            _session("s-closed", "p-1", start, 120, ("hi", "yes")),
            _session("s-open", "p-1", start + timedelta(hours=1), None, ("hello there friend",)),
        ]
        metrics = compute_engagement(sessions, [_participant("p-1")], as_of=utc(2026, 3, 3))
        assert metrics.session_duration_mean_s == pytest.approx(120.0)
        assert metrics.entries_total == 2
        assert metrics.stage_distribution.message_total == 3

    def test_period_filter_and_weekly_buckets(self):
        start = utc(2026, 3, 2, 9)
        sessions = [_session(f"s-{i}", "p-1", start + timedelta(days=i), 60) for i in range(15)]
        period = Period(start, start + timedelta(days=14))
        metrics = compute_engagement(sessions, [_participant("p-1")], as_of=utc(2026, 4, 1), period=period)
        assert metrics.entries_total == 14
        assert metrics.weekly_entry_counts == (7, 7)

    def test_entries_per_day_definition(self):
        # 4 entries over an enrollment horizon of 8 days (Mar 1 .. as-of Mar 8)
        start = utc(2026, 3, 2, 9)
        sessions = [_session(f"s-{i}", "p-1", start + timedelta(days=i), 60) for i in range(4)]
        metrics = compute_engagement(sessions, [_participant("p-1")], as_of=utc(2026, 3, 8, 23))
        assert metrics.entries_per_day_mean == pytest.approx(4 / 8)


class TestStageDistribution:
    def test_reported_partition_counts(self):
        msgs = []
        t = utc(2026, 3, 1, 9)
        spec = [
            (Stage.EXPLORATION, 2732),
            (Stage.RAPPORT_BUILDING, 1220),
            (Stage.SENSITIVE_TOPIC, 282),
            (Stage.WRAP_UP, 62),
            (None, 14),
        ]
        i = 0
        for stage, n in spec:
            for _ in range(n):
                msgs.append(Message(f"m-{i}", "s-1", Author.ASSISTANT, "x", t, stage))
                i += 1
        for _ in range(100):  # non-assistant traffic in the same corpus
            msgs.append(Message(f"m-{i}", "s-1", Author.PATIENT, "y", t))
            i += 1
        dist = stage_distribution(msgs)
        assert dist.counts["Exploration"] == 2732
        assert dist.counts["RapportBuilding"] == 1220
        assert dist.counts["SensitiveTopic"] == 282
        assert dist.counts["WrapUp"] == 62
        assert dist.not_selected == 14
        assert dist.staged_total == 4296
        assert dist.message_total == 4410
        assert sum(dist.fractions.values()) == pytest.approx(1.0, abs=1e-9)
        assert dist.share_of_total["Exploration"] == pytest.approx(2732 / 4410)

    def test_single_stage_fraction_one(self):
        msgs = [
            Message(f"m-{i}", "s", Author.ASSISTANT, "x", utc(2026, 3, 1, 9), Stage.EXPLORATION)
            for i in range(5)
        ]
        dist = stage_distribution(msgs)
        assert dist.fractions["Exploration"] == 1.0

    @given(st.lists(st.sampled_from(list(Stage) + [None]), max_size=40))
    @settings(max_examples=100)
    def test_fractions_sum_to_one(self, stages):
        msgs = [
            Message(f"m-{i}", "s", Author.ASSISTANT, "x", utc(2026, 3, 1, 9), stage)
            for i, stage in enumerate(stages)
        ]
        dist = stage_distribution(msgs)
        if dist.staged_total:
            assert sum(dist.fractions.values()) == pytest.approx(1.0, abs=1e-9)
        assert dist.staged_total + dist.not_selected == len(msgs)


class TestWordFrequencies:
    def test_empty_corpus(self):
        report = word_frequencies([], top_n=5)
        assert report.ranked == ()
        assert report.total_tokens == 0

    def test_hand_counted_example(self):
        report = word_frequencies(["a b b", "b c"], stopwords={"a"}, top_n=10)
        assert report.ranked == (("b", 3), ("c", 1))

    def test_truncation(self):
        report = word_frequencies(["a b b", "b c"], stopwords={"a"}, top_n=1)
        assert report.ranked == (("b", 3),)

    def test_ranking_ties_lexicographic(self):
        report = word_frequencies(["pear apple"], stopwords=set(), top_n=10)
        assert report.ranked == (("apple", 1), ("pear", 1))

    def test_total_matches_tokenizer_output(self):
        tokenizer = StopwordTokenizer(frozenset({"the"}))
        corpus = ["the cat sat", "the cat ran away"]
        report = word_frequencies(corpus, tokenizer=tokenizer, top_n=50)
        assert report.total_tokens == sum(len(tokenizer(t)) for t in corpus)
        assert sum(n for _, n in report.ranked) == report.total_tokens

    def test_csv_export(self):
        report = word_frequencies(["b b a"], stopwords=set(), top_n=10)
        assert report.to_csv() == "token,count\nb,2\na,1\n"

    def test_top_n_validation(self):
        with pytest.raises(ValueError):
            word_frequencies(["x"], top_n=0)


class TestPhq9Trend:
    def _assessment(self, aid, when, items):
        return Assessment.build(aid, "p-1", items, "", when)

    def test_empty(self):
        assert phq9_trend([]) == []

    def test_three_points_ordered(self):
        a1 = self._assessment("a-1", utc(2026, 3, 3, 9), [1] * 9)
        a2 = self._assessment("a-2", utc(2026, 3, 1, 9), [0] * 9)
        a3 = self._assessment("a-3", utc(2026, 3, 2, 9), [2] * 9)
        trend = phq9_trend([a1, a2, a3])
        assert [t for _, t in trend] == [0, 18, 9]
        assert [at for at, _ in trend] == sorted(at for at, _ in trend)

    def test_same_day_stable_order(self):
        a1 = self._assessment("a-1", utc(2026, 3, 1, 9), [0] * 9)
        a2 = self._assessment("a-2", utc(2026, 3, 1, 9), [1] * 9)
        trend = phq9_trend([a2, a1])
        assert [t for _, t in trend] == [0, 9]


class TestInsightBundle:
    def _gateway(self):
        return Gateway(
            ScriptedProvider(
                [
                    ScriptRule("insight", "recap <<digest8>>", match_contains=("insight-summary",)),
                    ScriptRule("fb", "x"),
                ]
            )
        )

    def test_summaries_deterministic(self):
        out1 = summarize_period(["day one", "day two"], SummaryKind.EVENTS, self._gateway())
        out2 = summarize_period(["day one", "day two"], SummaryKind.EVENTS, self._gateway())
        assert out1 == out2
        assert out1.startswith("recap ")

    def test_empty_period_rejected(self):
        with pytest.raises(ValueError):
            summarize_period([], SummaryKind.EVENTS, self._gateway())

    def test_bundle_has_caveat_and_summaries(self):
        bundle = build_insight_bundle(
            patient_texts=["walked a lot today"],
            session_summaries=["a walk"],
            assessments=[],
            gateway=self._gateway(),
            period_selected=True,
        )
        assert bundle.accuracy_caveat == ACCURACY_CAVEAT
        assert bundle.events_summary and bundle.emotions_summary and bundle.period_summary

    def test_provider_down_keeps_caveat_and_data(self):
        class Down:
            name = "down"

            def complete(self, segments, params):
                raise ProviderUnavailable("down")

        bundle = build_insight_bundle(
            patient_texts=["walked a lot today"],
            session_summaries=["a walk"],
            assessments=[Assessment.build("a-1", "p-1", [0] * 9, "", utc(2026, 3, 1, 9))],
            gateway=Gateway(Down()),
        )
        assert bundle.events_summary is None
        assert bundle.period_summary is None
        assert bundle.word_frequencies.ranked
        assert len(bundle.phq9_trend) == 1
        assert bundle.accuracy_caveat == ACCURACY_CAVEAT

    def test_caveat_cannot_be_dropped(self):
        with pytest.raises(ValueError):
            InsightBundle(
                word_frequencies=word_frequencies([], top_n=1),
                events_summary=None,
                emotions_summary=None,
                period_summary=None,
                phq9_trend=(),
                accuracy_caveat="",
            )
