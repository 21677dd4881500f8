"""Terminal and CI environment detection."""

import os
import sys

CI_INDICATORS = (
    "CI",
    "CONTINUOUS_INTEGRATION",
    "GITHUB_ACTIONS",
    "GITLAB_CI",
    "TRAVIS",
    "CIRCLECI",
    "JENKINS_URL",
    "AZURE_PIPELINES",
    "BITBUCKET_BUILD_NUMBER",
)


def is_ci_environment() -> bool:
    """Detect if running in CI/CD environment."""
    return any(indicator in os.environ for indicator in CI_INDICATORS)


def is_tty() -> bool:
    """Check if stderr, where logs go, is a TTY."""
    return sys.stderr.isatty()


def should_disable_color() -> bool:
    """Check if log colours should be disabled."""
    if os.environ.get("NO_COLOR"):
        return True
    if is_ci_environment() or not is_tty():
        return True
    return os.environ.get("TERM", "") in ("dumb", "unknown", "")
