"""One test per acceptance criterion; each prints a PASS/FAIL line, and the
lines are repeated in the terminal summary."""

import time

import pytest
import sympy

from idemring.deciders import (KBAR, K, has_property_k, has_property_kbar, k_iff_kbar_check, matrix_criteria_2x2,
                               one_sum_two_units, property_k_via_units, property_kbar_via_units,
                               property_via_theorem, quotient_transfer)
from idemring.fixtures import (TRACE_BASES, completable_idempotent_variants, nilpotent_completable_3x3,
                               one_sided_bd_invertibility, similar_without_unit_commutator, sum_unit_difference_zero,
                               trace_obstruction, tripotent_completable_3x3)
from idemring.idem_ops import pair_report, sweep_bott_duffin, sweep_identities, sweep_jacobson, sweep_pair_logic
from idemring.recognizer import (base_ring_from_k_witness, companion, henriksen_two_units, k_pipeline,
                                 k_witness_from_sum, not_m2_certificate)
from idemring.rings import build_ring
from idemring.structure import jacobson_radical

CLASSIFICATION = [
    ("M(2,Z(2))", False, False),
    ("M(2,Z(3))", True, True),
    ("M(2,Z(4))", False, False),
    ("M(2,Z(5))", True, None),
    ("M(2,Z(6))", False, False),
    ("M(3,Z(2))", False, False),
    ("M(3,Z(3))", False, True),
    ("M(4,Z(2))", True, True),
]
SWEEP_RINGS = ["M(2,Z(2))", "M(2,Z(3))", "M(2,Z(4))", "UT(2,Z(3))"]


def _k_pairs(R):
    I = R.idempotent_codes
    out = []
    for a in I:
        c = R._sub(R._mul(a, I), R._mul(I, a))
        out += [(int(a), int(b)) for b in I[R.unit_mask[c]]]
    return out


def test_criterion_01_classification(acceptance):
    t0 = time.perf_counter()
    bad = []
    for text, k_exp, kb_exp in CLASSIFICATION:
        R = build_ring(text)
        k, kb = has_property_k(R), has_property_kbar(R)
        tk, tkb = property_via_theorem(R, K), property_via_theorem(R, KBAR)
        if k.holds != k_exp or tk.holds != k.holds or tkb.holds != kb.holds:
            bad.append(text)
        if kb_exp is not None and kb.holds != kb_exp:
            bad.append(text)
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed <= 60
    acceptance(1, ok, f"{len(CLASSIFICATION)} rings, brute == theorem == expected, "
                      f"mismatches {bad or 'none'}, {elapsed:.1f}s (limit 60s)")
    assert ok


def test_criterion_02_identity_sweeps(acceptance):
    t0 = time.perf_counter()
    parts = []
    violations = 0
    for text in SWEEP_RINGS:
        R = build_ring(text)
        sweeps = [*sweep_identities(R).values(), sweep_bott_duffin(R), sweep_jacobson(R)]
        violations += sum(s.violations for s in sweeps)
        ids = sweeps[0].checked
        parts.append(f"{text}: {ids} idem pairs, {sweeps[-2].checked} (a,e), {sweeps[-1].checked} Jacobson")
    elapsed = time.perf_counter() - t0
    ok = violations == 0 and elapsed <= 10
    acceptance(2, ok, f"{violations} violations; " + "; ".join(parts) + f"; {elapsed:.1f}s (limit 10s)")
    assert ok


def test_criterion_03_unit_flag_logic(acceptance):
    names = ["comm_iff_diff_and_fdiff", "anti_iff_sum_and_fdiff", "comm_implies_anti"]
    checked = violations = 0
    for text in SWEEP_RINGS:
        res = sweep_pair_logic(build_ring(text))
        for n in names:
            checked += res[n].checked
            violations += res[n].violations
    ok = violations == 0
    acceptance(3, ok, f"{checked} pair checks over {len(SWEEP_RINGS)} rings, {violations} violations")
    assert ok


def test_criterion_04_similarity_and_direct_sum(acceptance):
    t0 = time.perf_counter()
    failures, counts = 0, []
    for text in ["M(2,Z(3))", "M(2,Z(5))", "M(4,Z(2))"]:
        R = build_ring(text)
        pairs = _k_pairs(R)
        counts.append(f"{text}: {len(pairs)}")
        for a, b in pairs:
            rep = pair_report(R, R.element(a), R.element(b))
            if not (rep.all_similar and rep.direct_sum and rep.left_direct_sum):
                failures += 1
    ok = failures == 0
    acceptance(4, ok, f"every K-witness pair ({', '.join(counts)}): all four conjugators and "
                      f"R = eR + e'R direct, {failures} failures, {time.perf_counter() - t0:.1f}s")
    assert ok


def test_criterion_05_unit_characterizations(acceptance):
    bad = []
    for text, _, _ in CLASSIFICATION:
        R = build_ring(text)
        if property_k_via_units(R).holds != has_property_k(R).holds:
            bad.append(f"{text} K")
        if property_kbar_via_units(R).holds != has_property_kbar(R).holds:
            bad.append(f"{text} Kbar")
    ok = not bad
    acceptance(5, ok, f"unit-based verdicts vs brute on {len(CLASSIFICATION)} rings, mismatches {bad or 'none'}")
    assert ok


def test_criterion_06_k_iff_kbar(acceptance):
    bases = ["Z(2)", "Z(3)", "Z(4)", "Z(5)", "Z(6)", "GF(2,[1,1,1])"]
    bad = [b for b in bases if not k_iff_kbar_check(build_ring(b))]
    ok = not bad
    acceptance(6, ok, f"K == Kbar by brute on M_2(T) for {len(bases)} bases, mismatches {bad or 'none'}")
    assert ok


def test_criterion_07_recognition_pipeline(acceptance):
    details, ok = [], True
    for text in ["M(2,Z(3))", "M(4,Z(2))"]:
        t0 = time.perf_counter()
        R = build_ring(text)
        v = has_property_k(R)
        out = k_pipeline(R, *v.witness)
        cert, mus = out["certificate"], out["matrix_units"]
        elapsed = time.perf_counter() - t0
        good = (out["f_witness"].path == ["IDEM", "H", "D", "G", "F"] and cert.bijection_verified
                and cert.homomorphism_verified and cert.corner.card ** 4 == R.card
                and all(mus.relations().values()))
        if text == "M(4,Z(2))":
            good = good and elapsed <= 30
        ok &= good
        details.append(f"{text}: corner {cert.corner.card}, {cert.pairs_checked} pairs, {elapsed:.1f}s")
    acceptance(7, ok, "; ".join(details) + " (limit 30s for M(4,Z(2)))")
    assert ok


def test_criterion_08_two_unit_roundtrip(acceptance):
    bad = []
    for text in ["Z(3)", "Z(5)", "Z(7)"]:
        S = build_ring(text)
        a, b = one_sum_two_units(S)
        M, e, e2 = k_witness_from_sum(S, a, b)
        C, (x, y) = base_ring_from_k_witness(M, e, e2)
        if not ((e * e2 - e2 * e).is_unit() and C.card == S.card and x.is_unit() and y.is_unit()
                and x + y == C.one):
            bad.append(text)
    ok = not bad
    acceptance(8, ok, f"S in Z(3), Z(5), Z(7): corner units sum to the corner identity, failures {bad or 'none'}")
    assert ok


def test_criterion_09_henriksen(acceptance):
    bad = []
    for m in (2, 3, 4, 5):
        U = sympy.Matrix(companion([-1, 1] + [0] * (m - 2)))
        # integer determinant oracle first
        if abs(U.det()) != 1 or abs((sympy.eye(m) - U).det()) != 1:
            bad.append(f"m={m} det")
            continue
        for base in ("Z(2)", "Z(6)"):
            try:
                res = henriksen_two_units(m, build_ring(base))
            except Exception as err:  # reported below
                bad.append(f"m={m} {base}: {err}")
                continue
            if res.det_U != U.det():
                bad.append(f"m={m} {base}")
    ok = not bad
    acceptance(9, ok, f"m in 2..5 over Z(2), Z(6): U, I-U invertible, U+V=I, integer det +-1; "
                      f"failures {bad or 'none'}")
    assert ok


def _trace_literal():
    """Literal reading: no [p,q] = 1 with p^2 = q^2 = 0 over any tested S."""
    return {b: trace_obstruction(b) for b in TRACE_BASES}


def test_criterion_10_fixtures(acceptance):
    fixtures = [
        tripotent_completable_3x3("M(3,Z(2))"), tripotent_completable_3x3("M(3,Z(3))"),
        nilpotent_completable_3x3("M(3,Z(2))"), nilpotent_completable_3x3("M(3,Z(3))"),
        similar_without_unit_commutator("M(2,Z(2))"),
        one_sided_bd_invertibility("M(2,Z(2))"),
        sum_unit_difference_zero("Z(5)"),
        completable_idempotent_variants("M(2,Z(5))"),
    ]
    fixtures_ok = all(f.passed for f in fixtures) and not_m2_certificate(build_ring("M(3,Z(2))")) is not None
    trace = _trace_literal()
    faithful = all(r.passed for r in trace.values())
    solvable = [b for b, r in trace.items() if r.details["solution"] is not None]
    literal = not solvable
    acceptance(10, fixtures_ok and faithful and literal,
               f"{len(fixtures)} fixtures {'pass' if fixtures_ok else 'FAIL'}; every commutator has trace 0 and "
               f"[p,q] = 1 exists iff 2 = 0 ({'holds' if faithful else 'FAILS'}); the literal 'no solution for "
               f"|S| <= 4' fails for char-2 S {solvable}, where [E12,E21] = E11 - E22 = 1")
    # the fixtures and the trace argument itself must hold
    assert fixtures_ok and faithful


@pytest.mark.xfail(strict=True, reason="in characteristic 2, [E12,E21] = 1 with E12^2 = E21^2 = 0; the trace "
                                       "argument needs 2 != 0")
def test_criterion_10_literal_trace_claim():
    assert all(r.details["solution"] is None for r in _trace_literal().values())


def test_criterion_11_quotient_transfer(acceptance):
    cases = [("M(2,Z(4))", "M(2,Z(2))"), ("UT(2,Z(3))", "Prod(Z(3),Z(3))"), ("UT(3,Z(2))", "Prod(Z(2),Z(2),Z(2))")]
    bad, shown = [], []
    for big, small in cases:
        R = build_ring(big)
        rep = quotient_transfer(R, jacobson_radical(R))
        S = build_ring(small)
        direct = (has_property_k(S).holds, has_property_kbar(S).holds)
        if not rep.agree or direct != (rep.quotient_k, rep.quotient_kbar) or direct != (rep.ring_k, rep.ring_kbar):
            bad.append(big)
        shown.append(f"{big}/rad ~ {small}: K={rep.ring_k} Kbar={rep.ring_kbar}")
    ok = not bad
    acceptance(11, ok, "; ".join(shown) + f"; disagreements {bad or 'none'}")
    assert ok


def test_criterion_12_four_way(acceptance):
    bases = ["Z(2)", "Z(3)", "Z(4)", "Z(5)", "Z(6)"]
    rows = {b: matrix_criteria_2x2(build_ring(b)) for b in bases}
    bad = [b for b, r in rows.items() if not r["agree"]]
    ok = not bad
    summary = ", ".join(f"{b}={r['statements'][1]}" for b, r in rows.items())
    acceptance(12, ok, f"statements 1-4 agree per base ({summary}), disagreements {bad or 'none'}")
    assert ok
