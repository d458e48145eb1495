"""Exception taxonomy. Every error carries a stable machine code so the
HTTP layer can map failures one-to-one onto API error responses."""
from __future__ import annotations


class FafError(Exception):
    """Base class; `code` is the stable machine-readable identifier."""

    code = "internal"

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message


class OffGridError(FafError, ValueError):
    code = "off_grid"


class UnknownSessionError(FafError):
    code = "unknown_session"


class UnknownFrameworkError(FafError):
    code = "unknown_framework"


class UnknownAgentError(FafError):
    code = "unknown_agent"


class MissingAgentError(FafError):
    code = "missing_agent"


class UnknownArgumentError(FafError):
    code = "unknown_argument"


class DuplicateArgumentError(FafError):
    code = "duplicate_argument"


class EdgeTypingError(FafError):
    code = "edge_typing"


class CycleError(FafError):
    code = "cycle"


class VoteTargetError(FafError):
    code = "vote_target_invalid"


class InvalidVoteError(FafError):
    code = "invalid_vote_value"


class DegenerateProposalError(FafError):
    code = "degenerate_proposal"


class EmptyRationalIntervalError(FafError):
    code = "empty_rational_interval"


class ObligationPendingError(FafError):
    code = "pending_obligations"


class FrameworkNotOpenError(FafError):
    code = "framework_not_open"


class ConcurrentOpenError(FafError):
    code = "framework_already_open"


class FrameworkExistsError(FafError):
    code = "framework_exists"


class DeadlinePassedError(FafError):
    code = "deadline_passed"


class NotStableError(FafError):
    code = "framework_not_stable"


class SessionClosedError(FafError):
    code = "session_closed"


class SessionExistsError(FafError):
    code = "session_exists"


class InvalidFrameworkError(FafError):
    code = "invalid_framework"


class StaleSequenceError(FafError):
    code = "stale_sequence"


class InvalidIdError(FafError, ValueError):
    code = "invalid_id"


class CorruptLogError(FafError):
    code = "corrupt_log"

    def __init__(self, message: str, line_number: int):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


class ScriptError(FafError):
    code = "invalid_script"


class MissingFieldError(FafError):
    code = "missing_field"
