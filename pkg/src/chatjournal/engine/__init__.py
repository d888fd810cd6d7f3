from .analyzer import (
    ANALYZER_MARKER,
    AnalyzerInput,
    AnalyzerOutput,
    analyzer_segments,
    parse_analyzer_payload,
    parse_stage_name,
    run_analyzer,
    transcript,
)
from .pipeline import (
    RECENT_WINDOW,
    RESPONDER_MARKER,
    SUMMARY_MARKER,
    SUMMARY_TURN_THRESHOLD,
    ClosePlan,
    GeneratorInput,
    TurnPlan,
    assemble_generator_input,
    generator_segments,
    maybe_emit_summary,
    plan_close,
    plan_turn,
    summary_segments,
)
from .prompts import (
    DEFAULT_STAGE_CONFIG,
    PromptRegistry,
    StagePrompt,
    default_registry,
    load_stage_config,
    write_default_config,
)
from .transitions import decide_stage

__all__ = [
    "ANALYZER_MARKER",
    "AnalyzerInput",
    "AnalyzerOutput",
    "analyzer_segments",
    "parse_analyzer_payload",
    "parse_stage_name",
    "run_analyzer",
    "transcript",
    "RECENT_WINDOW",
    "RESPONDER_MARKER",
    "SUMMARY_MARKER",
    "SUMMARY_TURN_THRESHOLD",
    "ClosePlan",
    "GeneratorInput",
    "TurnPlan",
    "assemble_generator_input",
    "generator_segments",
    "maybe_emit_summary",
    "plan_close",
    "plan_turn",
    "summary_segments",
    "DEFAULT_STAGE_CONFIG",
    "PromptRegistry",
    "StagePrompt",
    "default_registry",
    "load_stage_config",
    "write_default_config",
    "decide_stage",
]
