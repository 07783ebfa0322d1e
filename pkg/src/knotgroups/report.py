"""Table of symbolic checks behind ``verify-theorems``.

Each row is ``{"check", "pass", "detail", "expected"}``; rows with
``expected=False`` are informational and do not affect the exit status.
"""

from __future__ import annotations

from .formal import NO_DECLS, CommutationDecl, normalize, parse_formal
from .proofs import (
    FAMILIES,
    PARITY_DECLS,
    audit_printed,
    check_r3_invariance,
    four_commutators,
    no_go_check,
    r3_reduce,
    r3_report,
    refute_family,
    vr4_check,
)

EQ1 = {"x": "a b^-1 c theta(phi(b a^-1))", "y": "b", "z": "b theta(phi(a b^-1))"}
EQ2 = {"x": "a b^-1 c phi(theta(b a^-1))", "y": "b", "z": "b phi(theta(a b^-1))"}
THETA_PHI = CommutationDecl.of([("theta", "phi")])
VR4_PAIRS = (("theta", "phi"), ("theta", "eta"), ("phi", "eta"))
EXPECTED_COMMUTATORS = ("[E,O]", "[e,o]", "[O,o]", "[E,e]")
EXPECTED_FORCED = {"B": ("e", "o"), "S": ("E", "O"), "I": ("E", "O"), "Q": ("E", "O")}


def _row(check, ok, detail, expected=True):
    return {"check": check, "pass": bool(ok), "detail": detail, "expected": expected}


def _matches(side: str, printed: dict) -> tuple[bool, str]:
    got = r3_reduce(side, "Even3")
    ok = all(normalize(got[o]) == normalize(parse_formal(printed[o])) for o in "xyz")
    return ok, ", ".join(f"{o} = {got[o]}" for o in "xyz")


def even3_rows():
    rows = []
    for side, printed in (("LHS", EQ1), ("RHS", EQ2)):
        ok, detail = _matches(side, printed)
        rows.append(_row(f"r3.even.{side.lower()}-form", ok, detail))
    rows.append(_row("r3.even.invariant-with-commuting", check_r3_invariance("Even3", THETA_PHI), "{theta,phi} declared"))
    rows.append(_row("r3.even.differs-without", not check_r3_invariance("Even3", NO_DECLS), "no declarations"))
    return rows


def vr4_rows():
    all3 = CommutationDecl.of(VR4_PAIRS)
    rows = [_row("vr4.invariant-all-commuting", vr4_check(all3), "all three pairs declared")]
    only = CommutationDecl.of([("theta", "phi")])
    rows.append(_row("vr4.differs-only-theta-phi", not vr4_check(only), "only {theta,phi} declared"))
    eta_id = CommutationDecl.of([("theta", "phi")], [("eta", "Id")])
    rows.append(_row("vr4.invariant-eta-identity", vr4_check(eta_id), "eta = Id, {theta,phi} declared"))
    for pair in VR4_PAIRS:
        held = vr4_check(all3.without_commute(pair))
        rows.append(
            _row(
                f"vr4.needs-{pair[0]}-{pair[1]}",
                not held,
                "still invariant without this pair" if held else "invariance lost without this pair",
                expected=False,
            )
        )
    return rows


def case_rows(case: str):
    rep = r3_report(case, PARITY_DECLS)
    detail = " ".join(f"{o}:{'=' if v else '!='}" for o, v in rep.items())
    rows = [_row(f"r3.{case.lower()}.four-commutators", all(rep.values()), detail, expected=False)]
    blind = PARITY_DECLS.with_identify(("O", "E"), ("o", "e"))
    rows.append(_row(f"r3.{case.lower()}.parity-blind", check_r3_invariance(case, blind), "E = O, e = o"))
    return rows


def constraint_rows():
    rows = []
    for src in ("derived", "printed"):
        found = four_commutators(src)
        for ext, want in zip(found, EXPECTED_COMMUTATORS):
            subs = ",".join(f"{v}=1" for v in ext.substitution) or "none"
            rows.append(
                _row(
                    f"parity.commutator.{src}.{ext.source}",
                    str(ext.constraint) == want,
                    f"substitution {subs}: {ext.residual[0]} = {ext.residual[1]} gives {ext.constraint}",
                )
            )
    return rows


def nogo_rows():
    rows = []
    for fam in FAMILIES:
        r = no_go_check(fam)
        subs = ",".join(f"{v}=1" for v in r.substitution) or "none"
        rows.append(
            _row(
                f"nogo.{fam}.forced",
                r.forced == EXPECTED_FORCED[fam],
                f"{r.equation} with {subs}: {r.residual[0]} = {r.residual[1]} gives {r.constraint}",
            )
        )
        ce = refute_family(fam)
        detail = "none found" if ce is None else (
            f"{ce.case}.{ce.output} at " + ", ".join(f"{k}={v.to_text()}" for k, v in ce.values.items())
        )
        rows.append(_row(f"nogo.{fam}.counterexample", ce is not None, detail))
        control = refute_family(fam, max_len=1, distinguish=False)
        rows.append(_row(f"nogo.{fam}.control", control is None, "even and odd maps equal"))
    return rows


def transcription_rows():
    rows = []
    for t in audit_printed():
        if not t.matches:
            rows.append(
                _row(
                    f"printed.{t.case.lower()}.{t.output}.{t.side.lower()}",
                    False,
                    f"derived {t.derived} vs printed {t.printed}",
                    expected=False,
                )
            )
    rows.append(
        _row(
            "printed.case3.s-definition",
            True,
            "s is taken as o(a); the printed s = o(z) would make z depend on itself",
            expected=False,
        )
    )
    return rows


SECTIONS = {
    "even3": even3_rows,
    "vr4": vr4_rows,
    "case1": lambda: case_rows("Case1"),
    "case2": lambda: case_rows("Case2"),
    "case3": lambda: case_rows("Case3"),
    "constraints": constraint_rows,
    "nogo": nogo_rows,
    "transcription": transcription_rows,
}


def theorem_checks(case: str = "all") -> list[dict]:
    if case == "all":
        return [row for fn in SECTIONS.values() for row in fn()]
    return SECTIONS[case]()
