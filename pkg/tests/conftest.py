import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

# criterion number -> list of (ok, note)
ACCEPTANCE: dict = {}

TITLES = {
    1: "Klein-four golden table",
    2: "C2 x C6 golden table",
    3: "double dihedral pairs",
    4: "semisimple dimension 4 counts",
    5: "n = 3 lattice and example families",
    6: "cross-oracle equivalence",
    7: "cocycle identities",
    8: "quasi-Hopf axiom suite",
    9: "twist suite",
    10: "biproduct suite",
}


def record(criterion: int, ok: bool, note: str = "") -> bool:
    ACCEPTANCE.setdefault(criterion, []).append((bool(ok), note))
    return ok


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for k in sorted(TITLES):
        entries = ACCEPTANCE.get(k)
        if not entries:
            tr.write_line(f"CRITERION {k:2d} ({TITLES[k]}): NOT RUN")
            continue
        bad = [note for ok, note in entries if not ok]
        status = "PASS" if not bad else "FAIL"
        detail = f"  [{len(entries) - len(bad)}/{len(entries)} checks; failing: {'; '.join(bad)}]" if bad else \
            f"  [{len(entries)} checks]"
        tr.write_line(f"CRITERION {k:2d} ({TITLES[k]}): {status}{detail}")
