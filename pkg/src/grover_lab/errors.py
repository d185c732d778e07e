class GroverLabError(ValueError):
    """Raised for invalid inputs. ``code`` is a short stable identifier
    (``bad-index``, ``bad-count``, ...) used by the CLI and in tests."""

    def __init__(self, code, message=""):
        self.code = code
        super().__init__(f"{code}: {message}" if message else code)
