"""Script language, command runner, reports, corpus and the regularity-criterion driver."""

from .corpus import corpus_names, corpus_run, corpus_text
from .dsl import Command, ModuleDecl, RingDecl, ScriptError, SessionScript, format_script, parse
from .report import CheckRecord, VerificationReport
from .session import RunConfig, Session, run
from .theorem import CriterionResult, verify_regularity_criterion

__all__ = [
    "corpus_names", "corpus_run", "corpus_text",
    "Command", "ModuleDecl", "RingDecl", "ScriptError", "SessionScript", "format_script", "parse",
    "CheckRecord", "VerificationReport", "RunConfig", "Session", "run",
    "CriterionResult", "verify_regularity_criterion",
]
