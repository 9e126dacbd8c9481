class AtlscError(Exception):
    """Base class for all toolkit errors."""


class GameFileError(AtlscError):
    def __init__(self, message, line=None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class InvalidGame(AtlscError):
    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(self.diagnostics))


class NotUniform(AtlscError):
    pass


class InvalidPath(AtlscError):
    pass


class UnknownAgent(AtlscError):
    pass


class UnknownProp(AtlscError):
    pass


class FormulaSyntaxError(AtlscError):
    def __init__(self, message, line, column):
        self.line = line
        self.column = column
        super().__init__(f"{line}:{column}: {message}")


class StratificationError(AtlscError):
    pass


class ComplementPresent(AtlscError):
    pass


class MemoryfulQuantifier(AtlscError):
    pass


class TranslationError(AtlscError):
    pass


class IncompatibleTable(AtlscError):
    pass


class ResourceLimit(AtlscError):
    pass
