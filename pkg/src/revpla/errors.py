"""Exception hierarchy shared by the library and the command line."""

# Exit codes used by the CLI contract.
EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_INPUT_ERROR = 2


class RevPLAError(Exception):
    """Base exception for revpla errors."""

    exit_code: int = EXIT_INPUT_ERROR

    def __init__(self, message: str, exit_code: int | None = None):
        """Initialize the exception.

        Args:
            message: Error message
            exit_code: Exit code for CLI, defaults to the class code
        """
        self.message = message
        if exit_code is not None:
            self.exit_code = exit_code
        super().__init__(message)


class UsageError(RevPLAError):
    """Caller passed arguments outside an operation's domain."""

    pass


class PlaFormatError(RevPLAError):
    """Malformed PLA text."""

    def __init__(self, message: str, line: int | None = None):
        """Initialize the exception.

        Args:
            message: Error message
            line: 1-based line number of the offending input line
        """
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(f"{prefix}{message}")


class ParameterError(RevPLAError):
    """Invalid electrical parameters or parameter/calibration files."""

    pass


class NetlistError(RevPLAError):
    """Netlist cannot be evaluated as given."""

    pass


class VerificationError(RevPLAError):
    """Synthesized netlist disagrees with its specification."""

    exit_code = EXIT_VERIFICATION_FAILED
