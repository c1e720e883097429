class GrammarError(Exception):
    """Base class for everything this package raises on bad input."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class UndeclaredSymbol(GrammarError):
    def __init__(self, token, line=None):
        self.token = token
        super().__init__(f"undeclared symbol {token!r}", line)


class InitialNotDeclared(GrammarError):
    pass


class NameCollision(GrammarError):
    pass


class NoNonterminalOnLhs(GrammarError):
    pass


class NotContextFree(GrammarError):
    pass


class GrammarSyntaxError(GrammarError):
    pass


class InvalidMatch(GrammarError):
    pass


class InvalidTrace(GrammarError):
    pass


class TraceMismatch(GrammarError):
    pass


class BoundMismatch(GrammarError):
    pass


class InsufficientInputBound(GrammarError):
    pass
