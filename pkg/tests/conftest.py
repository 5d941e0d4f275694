import sys

import hypothesis

# statistical helpers make individual examples slow on a loaded machine;
# the per-example deadline adds noise without catching anything here
hypothesis.settings.register_profile("dilastab", deadline=None)
hypothesis.settings.load_profile("dilastab")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    # echo the acceptance criterion lines even when capture ate the prints
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    lines = getattr(mod, "CRITERION_LINES", None) if mod else None
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
