"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest -s tests/test_acceptance.py`` to see the per-criterion
lines.  Everything here is exact arithmetic; there are no tolerances.
"""

import time

import pytest

from permdyck import bijections, census, paths, series
from permdyck.perms import all_permutations, find_occurrences

CATALAN_10 = (1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862)

REFERENCE_SEQUENCES = {
    ("312", 1): (0, 0, 0, 1, 5, 21, 84, 330, 1287, 5005, 19448, 75582, 293930),
    ("312", 2): (0, 0, 0, 0, 4, 23, 107, 464, 1950, 8063, 33033, 134576, 546312),
    ("321", 1): (0, 0, 0, 1, 6, 27, 110, 429, 1638, 6188, 23256, 87210, 326876),
    ("321", 2): (0, 0, 0, 0, 3, 24, 133, 635, 2807, 11864, 48756, 196707, 783750),
}

BASES_312_R2 = {
    (3, 4, 1, 2),
    (4, 1, 3, 2),
    (4, 2, 1, 3),
    (4, 3, 1, 2),
    (3, 1, 5, 2, 4),
    (3, 1, 2, 6, 4, 5),
    (3, 1, 6, 4, 5, 2),
    (4, 2, 3, 6, 1, 5),
}
BASES_321_R2 = {
    (3, 4, 2, 1),
    (4, 2, 3, 1),
    (4, 3, 1, 2),
    (3, 2, 5, 4, 1),
    (5, 2, 1, 4, 3),
    (3, 2, 1, 6, 5, 4),
    (3, 2, 6, 1, 5, 4),
    (4, 2, 1, 6, 5, 3),
    (4, 2, 6, 1, 5, 3),
}

EXPECTED_321_POLYNOMIALS = {
    1: ((1, -6, 9, -2), (-1, 4, -3)),
    2: ((1, -8, 20, -17, 7, -5), (-1, 6, -10, 5, -3, 1)),
    3: ((1, -10, 33, -32, -31, 70, -35, 0, 2), (-1, 8, -19, 6, 27, -28, 7, 2)),
    4: (
        (1, -12, 50, -65, -107, 437, -588, 492, -314, 108, -3),
        (-1, 10, -32, 17, 107, -245, 256, -192, 102, -18, -1),
    ),
}


def report(num: int, description: str, ok: bool, detail: str = "") -> None:
    status = "PASS" if ok else "FAIL"
    line = f"ACCEPTANCE {num} {status}: {description}"
    if detail and not ok:
        line += f" [{detail}]"
    print(line)
    assert ok, line


@pytest.fixture(scope="module")
def tables():
    """Distribution tables for n = 0..9, both patterns, timed."""
    start = time.monotonic()
    data = {
        n: {tau: census.brute_distribution(n, tau) for tau in ("312", "321")}
        for n in range(10)
    }
    elapsed = time.monotonic() - start
    return data, elapsed


def test_criterion_1_catalan_baseline(tables):
    data, elapsed = tables
    ok = all(
        data[n][tau].count(0) == CATALAN_10[n] for n in range(10) for tau in ("312", "321")
    )
    ok = ok and elapsed < 300.0
    report(
        1,
        f"avoider counts for n<=9 equal the Catalan numbers (computed in {elapsed:.1f}s)",
        ok,
    )


def test_criterion_2_proven_formulas(tables):
    data, _ = tables
    bad = []
    for n in range(10):
        for (tau, r), _seq in REFERENCE_SEQUENCES.items():
            if data[n][tau].count(r) != series.count_closed_form(tau, r, n):
                bad.append((tau, r, n))
    for (tau, r), seq in REFERENCE_SEQUENCES.items():
        got = tuple(series.count_closed_form(tau, r, n) for n in range(13))
        if got != seq:
            bad.append((tau, r, "sequence"))
    report(2, "closed-form counts match brute force (n<=9) and the reference sequences (n<=12)",
           not bad, str(bad[:3]))


def test_criterion_3_gf_formula_agreement():
    bad = []
    for tau, r in (("312", 0), ("321", 0), ("312", 1), ("312", 2), ("321", 1), ("321", 2)):
        g = series.gf(tau, r, 80)
        for n in range(41):
            if g.x_coeff(n) != series.count_closed_form(tau, r, n):
                bad.append((tau, r, n))
                break
    report(3, "generating-function coefficients equal closed-form counts for n<=40", not bad,
           str(bad))


def test_criterion_4_conjectures(tables):
    data, _ = tables
    first_bad = None
    for r in (3, 4):
        g = series.gf("321", r, 20)
        for n in range(10):
            if g.x_coeff(n) != data[n]["321"].count(r):
                first_bad = (r, n, int(g.x_coeff(n)), data[n]["321"].count(r))
                break
        if first_bad:
            break
    report(
        4,
        "conjectured (3,2,1) r=3,4 generating functions match brute counts for n<=9",
        first_bad is None,
        f"first mismatch {first_bad}",
    )


def test_criterion_5_assembly_identities():
    rep = series.check_assemblies(40)
    failures = [str(c) for c in rep.checks if not c.passed]
    report(5, "assembly identities and c-form/sqrt-form agreement at order 40", rep.passed,
           "; ".join(failures[:3]))


def test_criterion_6_bijection_audit():
    start = time.monotonic()
    reports = [census.audit_bijections(7, tau) for tau in ("312", "321")]
    elapsed = time.monotonic() - start
    failures = [
        f"{rep.pattern}:{chk.name}" for rep in reports for chk in rep.checks if not chk.passed
    ]
    ok = not failures and elapsed <= 60.0
    report(6, f"full bijection audit over S_7, both patterns ({elapsed:.1f}s)", ok,
           "; ".join(failures[:3]))


def test_criterion_7_jump_prediction_suite():
    bad = []
    for tau in ("312", "321"):
        for rho in all_permutations(7):
            path = bijections.psi_tau(rho, tau)
            jump_count = len(paths.jumps(path))
            if jump_count == 0:
                continue
            truth = set(find_occurrences(rho, tau).positions)
            predicted = set(bijections.predicted_occurrences(rho, tau))
            if jump_count == 1 and not predicted <= truth:
                bad.append((tau, tuple(rho), "subset"))
            if len(truth) in (1, 2) and len(predicted) != len(truth):
                bad.append((tau, tuple(rho), "total"))
    # the worked depth-1/length-4 example: per-maximum counts 0, 1, 2, 2, 4
    rho = bijections.Permutation((6, 1, 8, 2, 10, 3, 11, 4, 14, 7, 9, 12, 13, 5))
    analysis = bijections.analyze_jumps(rho, "321")[0]
    ctx = analysis.context
    reaches = [
        min(m.height - ctx.jump.depth - m.steps_between, ctx.l) for m in ctx.maxima_before
    ]
    if reaches != [0, 1, 2, 2, 4]:
        bad.append(("321", "worked-example", reaches))
    if analysis.prediction.total != 9 or find_occurrences(rho, "321").count != 9:
        bad.append(("321", "worked-example", "total"))
    report(7, "jump-forced occurrence triples on S_7 (subsets, exact totals, worked numbers)",
           not bad, str(bad[:3]))


def test_criterion_8_tau_base_catalogs():
    ok = True
    detail = ""
    for tau, r, expected in (("312", 1, {(3, 1, 2)}), ("321", 1, {(3, 2, 1)}),
                             ("312", 2, BASES_312_R2), ("321", 2, BASES_321_R2)):
        catalog = census.enumerate_tau_bases(tau, r)
        got = {tuple(b) for b in catalog.bases}
        if got != expected or any(len(b) > 3 * r for b in got):
            ok = False
            detail = f"{tau} r={r}: {sorted(got ^ expected)}"
            break
    report(8, "pattern-base catalogs match the named bases exactly (8 + 9 at r=2)", ok, detail)


def test_criterion_9_general_form():
    bad = []
    for r in (1, 2):
        rep = series.check_general_form("312", r, 80)
        if not (rep.passed and rep.denominator == f"sqrt(1-4x)^{2 * r - 1}"):
            bad.append(("312", r, rep.detail))
    for r in (1, 2, 3, 4):
        rep = series.check_general_form("321", r, 80)
        p, q = EXPECTED_321_POLYNOMIALS[r]
        if not rep.passed or tuple(int(c) for c in rep.p_coeffs) != p or tuple(
            int(c) for c in rep.q_coeffs
        ) != q:
            bad.append(("321", r, rep.detail))
    report(9, "general-form checks: odd sqrt(1-4x) denominators and P_r, Q_r recovery at order 80",
           not bad, str(bad))
