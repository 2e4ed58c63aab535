
import sys

class CustomException(Exception):
    """
    Base exception for the upq-screen application.
    Captures error message, file name, and line number for easier debugging,
    and carries the process exit code the command line front end should use.
    """

    exit_code: int = 1
    kind: str = "error"

    def __init__(self, error_message: Exception | str, error_details=sys) -> None:
        """
        Initializes the CustomException.

        Parameters
        ----------
        error_message : Exception or str
            The original exception or a plain message.
        error_details : sys
            The sys module, used to extract traceback information.
        """
        super().__init__(str(error_message))
        self.error_message: Exception | str = error_message
        _, _, exc_tb = error_details.exc_info()
        self.lineno = exc_tb.tb_lineno if exc_tb else None
        self.file_name = exc_tb.tb_frame.f_code.co_filename if exc_tb else None

    def __str__(self) -> str:
        """
        Returns a formatted string representation of the exception.

        Returns
        -------
        str
            The formatted error message with file name and line number.
        """
        if self.file_name is None:
            return str(self.error_message)
        return (
            f"Error occurred in python script name [{self.file_name}] "
            f"line number [{self.lineno}] error message [{self.error_message}]"
        )

    def to_dict(self) -> dict:
        """Structured form written to stderr by the CLI."""
        return {"error": self.kind, "message": str(self.error_message)}


class ConfigError(CustomException):
    kind = "config"


class ParseError(CustomException):
    """Input could not be parsed (malformed JSON, bad weight or rational string)."""
    exit_code = 2
    kind = "parse"


class DatumValidationError(CustomException):
    """A weight, block, datum or nu assignment violates its invariants."""
    exit_code = 3
    kind = "validation"


class NonDominantWeightError(DatumValidationError):
    pass


class LengthMismatchError(DatumValidationError):
    pass


class NotLambdaLargeError(DatumValidationError):
    pass


class GuardExceededError(CustomException):
    """An exhaustive computation was asked for beyond its configured size guard."""
    exit_code = 4
    kind = "guard"


class SelftestFailure(CustomException):
    kind = "selftest"
