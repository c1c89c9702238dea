"""Command-line interface: ``matlength {length,verify,oracle,search}``."""
from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import __version__
from .constructions import jordan_power_pair, nilpotent_pair
from .documents import canonical_json, document_hash, dump_document, loads_document
from .errors import ParseError, ResourceLimitError
from .fields import parse_field
from .span import brute_force_profile, evaluate_word, length_profile
from .verify import CLAIM, PAZ_N_CAP, SUITES, SearchConfig, paz_search, run_suite

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_RESOURCE = 3
EXIT_VERIFY = 4
EXIT_FINDING = 5

NMAX_CAP = 10


def _read_document(path, field_override=None):
    try:
        text = Path(path).read_text() if path != "-" else sys.stdin.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    override = parse_field(field_override) if field_override else None
    return loads_document(text, override)


def _emit(report: dict, fmt: str, out=None):
    out = out or sys.stdout
    if fmt == "json":
        out.write(json.dumps(report, indent=2) + "\n")
        return
    for key, value in report.items():
        if isinstance(value, (dict, list)):
            value = canonical_json(value)
        out.write(f"{key}: {value}\n")


def length_report(doc, include_identity: bool, witnesses: bool = False, timing: bool = True) -> dict:
    """Run the length computation on a parsed document and build the report."""
    input_doc = dump_document(doc.matrices, include_identity, doc.max_len, doc.field, doc.n)
    t0 = time.perf_counter()
    prof = length_profile(doc.matrices, include_identity, n=doc.n)
    elapsed = time.perf_counter() - t0
    report = {
        "version": __version__,
        "command": "length",
        "input_sha256": document_hash(input_doc),
        "field": str(doc.field),
        "n": doc.n,
        "include_identity": include_identity,
        "dims": list(prof.dims),
        "length": prof.length,
        "generates": prof.generates,
        "final_dim": prof.final_dim,
    }
    if prof.notes:
        report["notes"] = list(prof.notes)
    if witnesses:
        report["witnesses"] = [
            {"word": list(w), "layer": lay, "matrix": evaluate_word(doc.matrices, w, doc.n).render()}
            for w, lay in zip(prof.witnesses, prof.witness_layers)
        ]
    report["input"] = input_doc
    if timing:
        report["timing_s"] = round(elapsed, 6)
    return report


def cmd_length(args) -> int:
    doc = _read_document(args.input, args.field_override)
    include_identity = doc.include_identity and not args.no_identity
    _emit(length_report(doc, include_identity, args.witnesses, not args.no_timing), args.format)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.nmax > NMAX_CAP:
        raise ResourceLimitError(f"--nmax {args.nmax} exceeds the cap of {NMAX_CAP}")
    if args.nmax < 2:
        raise ParseError("--nmax must be at least 2")
    reports = run_suite(args.suite, args.nmax, args.m3_trials, args.seed)
    failed = [r for r in reports if not r.passed]
    for r in reports:
        d = r.to_dict(timing=not args.no_timing)
        if args.format == "json":
            sys.stdout.write(json.dumps(d) + "\n")
        else:
            status = "PASS" if r.passed else "FAIL"
            sys.stdout.write(f"{status} {r.check_id} expected={canonical_json(r.expected)} computed={canonical_json(r.computed)}\n")
    sys.stdout.flush()
    for r in failed:
        sys.stderr.write(f"FAILED {r.check_id} ({r.provenance}): {r.claim}\n")
    summary = f"{len(reports) - len(failed)}/{len(reports)} checks passed\n"
    sys.stderr.write(summary)
    return EXIT_VERIFY if any(r.provenance == CLAIM for r in failed) else EXIT_OK


def cmd_oracle(args) -> int:
    doc = _read_document(args.input, args.field_override)
    include_identity = doc.include_identity and not args.no_identity
    k = args.max_len if args.max_len is not None else (doc.max_len if doc.max_len is not None else 3)
    t0 = time.perf_counter()
    oracle = brute_force_profile(doc.matrices, include_identity, k, budget=args.budget, n=doc.n)
    engine = length_profile(doc.matrices, include_identity, n=doc.n)
    engine_dims = list(engine.dims_through(k))
    verdict = "match" if list(oracle.dims) == engine_dims else "mismatch"
    input_doc = dump_document(doc.matrices, include_identity, k, doc.field, doc.n)
    report = {
        "version": __version__,
        "command": "oracle",
        "input_sha256": document_hash(input_doc),
        "field": str(doc.field),
        "n": doc.n,
        "include_identity": include_identity,
        "max_len": k,
        "oracle_dims": list(oracle.dims),
        "engine_dims": engine_dims,
        "verdict": verdict,
        "input": input_doc,
    }
    if not args.no_timing:
        report["timing_s"] = round(time.perf_counter() - t0, 6)
    _emit(report, args.format)
    return EXIT_OK if verdict == "match" else EXIT_VERIFY


def cmd_search(args) -> int:
    field = parse_field(args.field)
    config = SearchConfig(args.n, field, args.size, args.trials, args.seed, args.bound, args.density)
    seeds = []
    if args.known_seeds:
        if args.n >= 3:
            seeds.append(list(nilpotent_pair(args.n, field)))
        if args.n >= 2:
            seeds.append(list(jordan_power_pair(args.n, 1, field)))
    rep = paz_search(config, seeds)
    out = rep.to_dict(timing=not args.no_timing)
    out = {"version": __version__, "command": "search", **out}
    _emit(out, args.format)
    if rep.findings:
        for f in rep.findings:
            sys.stderr.write(f"FINDING: l(S) = {f['l']} > {2 * args.n - 2} from {f['source']}\n")
        return EXIT_FINDING
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="matlength", description="Lengths of generating sets of matrix algebras")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--format", choices=("json", "text"), default="json")
        sp.add_argument("--no-timing", action="store_true", help="omit wall-clock fields (byte-stable output)")

    sp = sub.add_parser("length", help="layer dimensions and length of a generating set")
    sp.add_argument("input", help="input document path, or - for stdin")
    sp.add_argument("--no-identity", action="store_true", help="do not assume the identity (length l0)")
    sp.add_argument("--witnesses", action="store_true", help="include basis witness words")
    sp.add_argument("--field-override", metavar="FIELD", help="reinterpret entries over Q or GF(p)")
    common(sp)
    sp.set_defaults(func=cmd_length)

    sp = sub.add_parser("verify", help="run the verification suites")
    sp.add_argument("--nmax", type=int, default=8)
    sp.add_argument("--suite", choices=SUITES, default="all")
    sp.add_argument("--m3-trials", type=int, default=1000, help="generating samples per field for the M_3 suite")
    sp.add_argument("--seed", type=int, default=0)
    common(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("oracle", help="brute-force word enumeration cross-check")
    sp.add_argument("input")
    sp.add_argument("--max-len", type=int, default=None)
    sp.add_argument("--no-identity", action="store_true")
    sp.add_argument("--budget", type=int, default=None, help="word evaluation budget (default: $MATLENGTH_ORACLE_BUDGET or 10^7)")
    sp.add_argument("--field-override", metavar="FIELD")
    common(sp)
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("search", help="seeded random search for long generating sets")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--size", type=int, default=2)
    sp.add_argument("--trials", type=int, default=1000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--field", default="Q")
    sp.add_argument("--bound", type=int, default=3, help="entry magnitude bound over Q")
    sp.add_argument("--density", type=float, default=1.0, help="probability an entry is drawn nonzero")
    sp.add_argument("--known-seeds", action="store_true", help=f"also evaluate {{J_n, B_n}} and {{J_n, (J_n^T)^(n-1)}}; n <= {PAZ_N_CAP}")
    common(sp)
    sp.set_defaults(func=cmd_search)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        sys.stderr.write(f"parse error: {exc}\n")
        return EXIT_PARSE
    except ResourceLimitError as exc:
        sys.stderr.write(f"resource limit: {exc}\n")
        return EXIT_RESOURCE
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
