class ChainmixError(Exception):
    pass


class UsageError(ChainmixError):
    """Invalid flag value or combination (exit code 1)"""


class DataValidationError(ChainmixError):
    """Input data that can't be used as given (exit code 3)"""
