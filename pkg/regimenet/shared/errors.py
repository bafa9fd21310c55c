class RegimenetError(Exception):
    """
    Every error carries the exit code of its family
    """

    code = 3


class ConfigError(RegimenetError):
    code = 1


class DataError(RegimenetError, ValueError):
    code = 2


class TrainingError(RegimenetError):
    code = 3


class DegenerateColumn(UserWarning):
    pass
