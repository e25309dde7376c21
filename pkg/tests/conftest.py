import pytest

ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def criterion(request):
    """Record pass/fail for one acceptance criterion: ``criterion(n, text)`` returns a context manager."""

    class _Recorder:
        def __call__(self, number: int, text: str):
            self.number, self.text = number, text
            return self

        def __enter__(self):
            return self

        def __exit__(self, exc_type, exc, tb):
            ok = exc_type is None
            line = f"criterion {self.number}: {'PASS' if ok else 'FAIL'} - {self.text}"
            if not ok:
                line += f" ({exc_type.__name__}: {exc})"
            ACCEPTANCE[self.number] = (ok, line)
            print(line)
            return False

    return _Recorder()


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[n][1])
