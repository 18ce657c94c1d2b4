import sys


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for cid, (ok, detail) in results.items():
        terminalreporter.write_line(f"criterion {cid}: {'PASS' if ok else 'FAIL'} {detail}")
