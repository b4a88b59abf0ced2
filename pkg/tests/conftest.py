import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

from hypothesis import HealthCheck, settings  # noqa: E402

import helpers  # noqa: E402

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def pytest_terminal_summary(terminalreporter):
    if not helpers.ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for num in sorted(helpers.ACCEPTANCE):
        ok, title, detail = helpers.ACCEPTANCE[num]
        tr.write_line(f"criterion {num:>2}: {'PASS' if ok else 'FAIL'}  {title}"
                      + (f"  [{detail}]" if detail else ""))
