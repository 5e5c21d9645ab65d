import json

import pytest

from idemring import certify
from idemring.deciders import K, has_property_k
from idemring.fixtures import TRACE_BASES, run_fixtures, trace_obstruction
from idemring.recognizer import henriksen_two_units, k_pipeline
from idemring.rings import build_ring
from idemring.structure import matrix_unit


def test_all_fixtures_pass():
    results = run_fixtures()
    assert len(results) == 12 + len(TRACE_BASES)
    for r in results:
        assert r.passed, (r.name, r.ring, r.checks)
        json.dumps(r.to_dict())


@pytest.mark.parametrize("base, solvable", [("Z(2)", True), ("Z(3)", False), ("Z(4)", False),
                                            ("GF(2,[1,1,1])", True), ("Prod(Z(2),Z(2))", True)])
def test_trace_obstruction_details(base, solvable):
    r = trace_obstruction(base)
    assert r.checks["commutators have zero trace"]
    assert (r.details["solution"] is not None) == solvable
    assert r.details["obstruction_applies"] == (not solvable)


def _report(*certs):
    return {"payload": {"nested": [{"certificates": list(certs)}]}}


def test_recheck_accepts_valid_certificates():
    R = build_ring("M(2,Z(3))")
    v = has_property_k(R)
    out = k_pipeline(R, *v.witness)
    certs = [
        certify.property_pair(R, K, *v.witness),
        certify.matrix_units(out["matrix_units"]),
        certify.witness(out["f_witness"]),
        certify.henriksen(henriksen_two_units(3, build_ring("Z(6)"))),
        certify.two_units(build_ring("Z(5)"), build_ring("Z(5)")(2), build_ring("Z(5)")(4)),
        certify.cardinality_obstruction(build_ring("M(3,Z(2))")),
        certify.direct_sum(R, *v.witness),
    ]
    report = json.loads(json.dumps(_report(*certs)))
    results = certify.recheck(report)
    assert len(results) == len(certs) and all(r["ok"] for r in results)


def test_recheck_rejects_tampering():
    R = build_ring("M(2,Z(2))")
    bad = [
        certify.property_pair(R, K, matrix_unit(R, 1, 1), matrix_unit(R, 2, 2)),
        {**certify.henriksen(henriksen_two_units(2, build_ring("Z(2)"))), "V": [["1", "0"], ["0", "1"]]},
        {"type": "not_m2", "ring": "M(2,Z(2))", "cardinality": 16},
        {"type": "similarity", "ring": "M(2,Z(2))", "source": "[[1,0],[0,0]]", "target": "[[0,0],[0,1]]",
         "conjugator": "[[1,0],[0,1]]"},
    ]
    results = certify.recheck(_report(*bad))
    assert [r["ok"] for r in results] == [False] * len(bad)
    assert all(r["error"] for r in results)
