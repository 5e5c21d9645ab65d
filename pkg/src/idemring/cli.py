"""Command line front end.

Exit codes: 0 completed run, 2 parse error or invalid input, 3 cap exceeded,
4 verification failure (an identity or certificate that must hold did not).
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import __version__, certify
from .deciders import DEFAULT_MAX_PAIRS, K, KBAR, decide
from .errors import CapExceeded, NotApplicable, ParseError, RingError, VerificationFailed
from .expr import parse_literal_list
from .fixtures import run_fixtures
from .idem_ops import pair_report, sweep_bott_duffin, sweep_identities, sweep_jacobson, sweep_pair_logic
from .recognizer import (base_ring_from_k_witness, henriksen_two_units, k_pipeline, k_witness_from_sum,
                         make_witness, not_m2_certificate, recognize)
from .rings import DEFAULT_MAX_CARD, build_ring, write_table
from .structure import describe, jacobson_radical

EXIT_OK, EXIT_PARSE, EXIT_CAP, EXIT_VERIFY = 0, 2, 3, 4

LIST_LIMIT = 64  # describe lists elements only for small rings

METHOD_SETS = {
    "brute": ("brute",),
    "units": ("units",),
    "theorem": ("theorem",),
    "both": ("brute", "units"),
    "all": ("brute", "units", "theorem"),
}


class Failure(Exception):
    """A completed computation whose checks failed (exit 4)."""

    def __init__(self, message, payload=None):
        super().__init__(message)
        self.payload = payload


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-card", type=int, default=DEFAULT_MAX_CARD, help="enumeration cap")
    common.add_argument("--max-pairs", type=int, default=DEFAULT_MAX_PAIRS, help="idempotent pair budget")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for pair scans")
    common.add_argument("--seed", type=int, default=0, help="seed for sampled checks")
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="fmt", action="store_const", const="json")
    fmt.add_argument("--text", dest="fmt", action="store_const", const="text")
    common.set_defaults(fmt="text")

    p = argparse.ArgumentParser(prog="idemring", description="Idempotents, commutators and 2x2 matrix rings "
                                                              "over finite rings.")
    p.add_argument("--version", action="version", version=f"idemring {__version__}")
    sub = p.add_subparsers(dest="verb", required=True)

    s = sub.add_parser("describe", parents=[common], help="ring summary")
    s.add_argument("ring")

    s = sub.add_parser("decide", parents=[common], help="decide property K or K-bar")
    s.add_argument("ring")
    s.add_argument("--property", choices=["k", "kbar"], default="k")
    s.add_argument("--method", choices=list(METHOD_SETS), default="brute")

    s = sub.add_parser("pair", parents=[common], help="diagnostics for an idempotent pair")
    s.add_argument("ring")
    s.add_argument("--elems", nargs="+", required=True, help="two element literals")

    s = sub.add_parser("identities", parents=[common], help="sweep the idempotent identities")
    s.add_argument("ring")
    s.add_argument("--exhaustive", action="store_true",
                   help="also sweep Jacobson's lemma over R x R and Bott-Duffin conditions over R x idem(R)")

    s = sub.add_parser("recognize", parents=[common], help="recognize R as a 2x2 matrix ring")
    s.add_argument("ring")
    s.add_argument("--witness-kind", choices=sorted(certify.KINDS), type=str.upper)
    s.add_argument("--elems", nargs="+", help="witness element literals")
    s.add_argument("--emit-corner", metavar="PATH", help="write the corner ring as a table file")

    s = sub.add_parser("sum2units", parents=[common], help="write 1 as a sum of two units")
    s.add_argument("ring")

    s = sub.add_parser("henriksen", parents=[common], help="identity of M_m(T) as a sum of two units")
    s.add_argument("ring")
    s.add_argument("--m", type=int, default=2)

    s = sub.add_parser("fixtures", parents=[common], help="run the fixed examples or recheck a report")
    s.add_argument("--recheck", metavar="REPORT", help="re-verify the certificates in a JSON report")
    return p


def _elems(R, items, count=None):
    values = []
    for item in items or []:
        values.extend(parse_literal_list(item))
    if count is not None and len(values) != count:
        raise ParseError(f"expected {count} element literals, got {len(values)}")
    return [R(v) for v in values]


# ---------------------------------------------------------------------------
# verbs


def _describe(R, args):
    out = {"additive_generators": len(R.additive_generators)}
    if R.card <= LIST_LIMIT:
        out["units"] = [R.render(c) for c in range(R.card) if R.unit_mask[c]]
        out["idempotents"] = [R.render(c) for c in R.idempotent_codes]
        out["radical"] = [R.render(c) for c in jacobson_radical(R).members]
    return out


def _decide(R, args):
    methods = METHOD_SETS[args.method]
    verdicts, skipped = [], []
    for m in methods:
        try:
            verdicts.extend(decide(R, args.property, (m,), args.max_pairs, args.jobs)[0])
        except NotApplicable as err:
            if args.method != "all":
                raise
            skipped.append({"method": m, "reason": str(err)})
    agree = len({v.holds for v in verdicts}) <= 1
    prop = K if args.property == "k" else KBAR
    certs = []
    for v in verdicts:
        if v.witness is not None:
            certs.append(certify.property_pair(R, prop, *v.witness))
    payload = {"property": prop, "holds": verdicts[0].holds if verdicts and agree else None,
               "agree": agree, "verdicts": [v.to_dict() for v in verdicts],
               "not_applicable": skipped, "certificates": certs}
    if not agree:
        raise Failure("methods disagree", payload)
    return payload


def _pair(R, args):
    e, e2 = _elems(R, args.elems, 2)
    rep = pair_report(R, e, e2)
    payload = rep.to_dict()
    certs = []
    for sim in rep.similarities.values():
        names = {"e": e, "e'": e2, "f": rep.f, "f'": rep.f2}
        certs.append(certify.similarity(R, names[sim.source], names[sim.target], sim.conjugator))
    if rep.comm_unit:
        certs.append(certify.property_pair(R, K, e, e2))
        if rep.direct_sum:
            certs.append(certify.direct_sum(R, e, e2))
    payload["certificates"] = certs
    failed = [k for k, ok in rep.kato.items() if not ok] + [k for k, ok in rep.kr.items() if not ok]
    if rep.comm_unit and not (rep.all_similar and rep.direct_sum and rep.left_direct_sum):
        failed.append("unit commutator consequences")
    if failed:
        raise Failure(f"checks failed: {', '.join(failed)}", payload)
    return payload


def _identities(R, args):
    sweeps = list(sweep_identities(R).values()) + list(sweep_pair_logic(R).values())
    if args.exhaustive:
        sweeps += [sweep_bott_duffin(R), sweep_jacobson(R)]
    payload = {
        "idempotent_pairs": len(R.idempotent_codes) ** 2,
        "sweeps": [s.to_dict() for s in sweeps],
        "violations": sum(s.violations for s in sweeps),
    }
    if payload["violations"]:
        raise Failure("identity violations found", payload)
    return payload


def _recognize(R, args):
    if args.witness_kind:
        names = certify.KINDS[args.witness_kind][0]
        w = make_witness(R, args.witness_kind, *_elems(R, args.elems, len(names)))
        fw, mus, cert = recognize(R, w, seed=args.seed)
        source = {"witness": w.to_dict()}
    else:
        if args.elems:
            raise ParseError("--elems needs --witness-kind")
        v = decide(R, "k", ("brute",), args.max_pairs, args.jobs)[0][0]
        if not v.holds:
            obstruction = not_m2_certificate(R)
            payload = {"recognized": False, "reason": "no idempotent pair with unit commutator",
                       "obstruction": obstruction,
                       "certificates": [certify.cardinality_obstruction(R)] if obstruction else []}
            return payload
        out = k_pipeline(R, *v.witness, seed=args.seed)
        w, fw, mus, cert = out["idempotent_witness"], out["f_witness"], out["matrix_units"], out["certificate"]
        source = {"k_pair": [str(x) for x in v.witness], "witness": w.to_dict()}
    payload = {"recognized": True, **source, "f_witness": fw.to_dict(), "isomorphism": cert.to_dict(),
               "certificates": [certify.witness(w), certify.witness(fw), certify.matrix_units(mus)]}
    if args.emit_corner:
        write_table(cert.corner, args.emit_corner)
        payload["corner_table"] = args.emit_corner
    return payload


def _sum2units(R, args):
    from .deciders import one_sum_two_units
    pair = one_sum_two_units(R)
    if pair is None:
        return {"pair": None, "certificates": []}
    a, b = pair
    M, e, e2 = k_witness_from_sum(R, a, b)
    S, (x, y) = base_ring_from_k_witness(M, e, e2)
    return {
        "pair": [str(a), str(b)],
        "matrix_ring": str(M.expr),
        "e": str(e), "e'": str(e2),
        "commutator": str(e * e2 - e2 * e),
        "corner": str(S.expr), "corner_cardinality": S.card,
        "corner_parts": [str(x), str(y)],
        "certificates": [certify.two_units(R, a, b), certify.property_pair(M, K, e, e2),
                         certify.two_units(S, x, y)],
    }


def _henriksen(R, args):
    res = henriksen_two_units(args.m, R)
    payload = res.to_dict()
    payload["certificates"] = [certify.henriksen(res)]
    return payload


def _fixtures(args):
    if args.recheck:
        try:
            with open(args.recheck) as fh:
                report = json.load(fh)
        except (OSError, json.JSONDecodeError) as err:
            raise ParseError(f"cannot read report {args.recheck}: {err}") from err
        results = certify.recheck(report, args.max_card, args.seed)
        payload = {"rechecked": len(results), "failed": sum(not r["ok"] for r in results), "results": results}
        if payload["failed"]:
            raise Failure("certificates failed to re-verify", payload)
        return payload
    results = run_fixtures()
    payload = {"fixtures": [r.to_dict() for r in results], "failed": sum(not r.passed for r in results)}
    if payload["failed"]:
        raise Failure("fixtures failed", payload)
    return payload


VERBS = {
    "describe": _describe,
    "decide": _decide,
    "pair": _pair,
    "identities": _identities,
    "recognize": _recognize,
    "sum2units": _sum2units,
    "henriksen": _henriksen,
}


# ---------------------------------------------------------------------------
# output


def _echo(args) -> dict:
    skip = {"fmt", "verb"}
    return {"verb": args.verb, **{k: v for k, v in sorted(vars(args).items()) if k not in skip}}


def _text(obj, indent=0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.extend(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}-")
                lines.extend(_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar(v)}")
    else:
        lines.append(pad + _scalar(obj))
    return lines


def _scalar(v) -> str:
    if isinstance(v, (dict, list)):
        return "[]" if isinstance(v, list) else "{}"
    if v is None:
        return "-"
    return str(v)


def emit(report: dict, fmt: str, stream=None):
    stream = stream or sys.stdout
    if fmt == "json":
        stream.write(json.dumps(report, indent=2) + "\n")
    else:
        stream.write("\n".join(_text(report)) + "\n")


def run(argv=None, stream=None) -> tuple[dict, int]:
    """Parse ``argv``, execute, write the report; returns (report, exit code)."""
    args = _parser().parse_args(argv)
    t0 = time.perf_counter()
    report = {"command": _echo(args), "ring": None, "payload": None}
    code = EXIT_OK
    try:
        if args.verb == "fixtures":
            report["payload"] = _fixtures(args)
        else:
            R = build_ring(args.ring, args.max_card)
            report["ring"] = describe(R)
            report["payload"] = VERBS[args.verb](R, args)
    except Failure as err:
        report["payload"] = err.payload
        report["error"] = {"type": "VerificationFailed", "message": str(err)}
        code = EXIT_VERIFY
    except ParseError as err:
        report["error"] = {"type": "ParseError", "message": str(err), "position": err.position,
                           "expected": err.expected}
        code = EXIT_PARSE
    except CapExceeded as err:
        report["error"] = {"type": "CapExceeded", "message": str(err)}
        code = EXIT_CAP
    except VerificationFailed as err:
        report["error"] = {"type": type(err).__name__, "message": str(err)}
        code = EXIT_VERIFY
    except RingError as err:
        # invalid input that parsed: non-idempotents, bad witnesses, ...
        report["error"] = {"type": type(err).__name__, "message": str(err)}
        code = EXIT_PARSE
    report["elapsed_ms"] = round(1000 * (time.perf_counter() - t0), 3)
    report["version"] = __version__
    emit(report, args.fmt, stream)
    if code and args.fmt == "text":
        print(f"error: {report['error']['message']}", file=sys.stderr)
    return report, code


def main(argv=None) -> int:
    return run(argv)[1]


if __name__ == "__main__":
    sys.exit(main())
