"""Job files, the verification suite, caching and report emission."""

from .analysis import SCHEMA_VERSION, analyze
from .jobs import EXPECTATION_KEYS, GroupJob, InputError, load_group, load_suite
from .main import main
from .runner import JobResult, run_job, run_jobs, run_suite

__all__ = [
    "SCHEMA_VERSION",
    "analyze",
    "EXPECTATION_KEYS",
    "GroupJob",
    "InputError",
    "load_group",
    "load_suite",
    "main",
    "JobResult",
    "run_job",
    "run_jobs",
    "run_suite",
]
