class TamregError(Exception):
    """Base class for data errors raised by this package."""


class CorpusFormatError(TamregError):
    def __init__(self, path, lineno, message):
        self.path = path
        self.lineno = lineno
        super().__init__(f"{path}:{lineno}: {message}")


class RuleFileError(TamregError):
    def __init__(self, path, lineno, message):
        self.path = path
        self.lineno = lineno
        super().__init__(f"{path}:{lineno}: {message}")


class ModelFileError(TamregError):
    pass


class ModelFormatError(ModelFileError):
    """Wrong magic bytes or undecodable body."""


class ModelVersionError(ModelFileError):
    pass


class ModelTruncatedError(ModelFileError):
    pass


class ModelChecksumError(ModelFileError):
    pass
