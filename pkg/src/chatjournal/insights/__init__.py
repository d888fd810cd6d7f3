from .engagement import EngagementMetrics, Period, StageDistribution, compute_engagement, stage_distribution
from .summaries import (
    ACCURACY_CAVEAT,
    INSIGHT_MARKER,
    InsightBundle,
    SummaryKind,
    build_insight_bundle,
    phq9_trend,
    summarize_period,
)
from .wordfreq import (
    DEFAULT_STOPWORDS,
    ContentTokenizer,
    StopwordTokenizer,
    WordFrequencyReport,
    word_frequencies,
)

__all__ = [
    "EngagementMetrics",
    "Period",
    "StageDistribution",
    "compute_engagement",
    "stage_distribution",
    "ACCURACY_CAVEAT",
    "INSIGHT_MARKER",
    "InsightBundle",
    "SummaryKind",
    "build_insight_bundle",
    "phq9_trend",
    "summarize_period",
    "DEFAULT_STOPWORDS",
    "ContentTokenizer",
    "StopwordTokenizer",
    "WordFrequencyReport",
    "word_frequencies",
]
