"""Command-line interface.

Subcommands: gen, prove, verify, soundness-mc, report-complexity,
check-bounds.  Every command is deterministic given --seed and produces
byte-identical reports on identical invocations.  verify exits 0 on accept,
1 on reject, 2 on malformed input.  FLOWERING_CAP overrides the brute-force
size caps used by check-bounds.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .errors import FloweringError
from .experiments import (
    Instance,
    complexity_report,
    derive_seed,
    gen_instance,
    honest_run,
    random_codeword_word,
    soundness_mc,
)
from .graph_code import DEFAULT_ENUM_CAP, DEFAULT_MATRIX_CAP, Word
from .iopp import HonestProver, ProtocolParams, replay_transcript, run_protocol
from .niproof import MalformedProofError, NIProof, prove_noninteractive, verify_noninteractive

TRANSCRIPT_FORMAT = "flowering-transcript-v1"


def _dump_json(path: str, data: dict) -> None:
    with open(path, "w") as fh:
        fh.write(json.dumps(data, sort_keys=True, indent=2) + "\n")


def _load_instance(path: str) -> Instance:
    with open(path) as fh:
        return Instance.from_json(json.load(fh))


def _caps() -> tuple[int, int]:
    cap = os.environ.get("FLOWERING_CAP")
    if cap:
        return int(cap), int(cap)
    return DEFAULT_ENUM_CAP, DEFAULT_MATRIX_CAP


def cmd_gen(args) -> int:
    instance = gen_instance(args.r, args.p, args.k, args.genset, args.d)
    _dump_json(args.out, instance.to_json())
    print(f"wrote instance: r={instance.r} n={instance.n} k={instance.rs.k} "
          f"p={instance.field.p} -> {args.out}")
    return 0


def cmd_prove(args) -> int:
    instance = _load_instance(args.instance)
    params = ProtocolParams(args.m, args.t)
    params.check(instance.n)
    if args.word:
        with open(args.word) as fh:
            word = Word.from_json(instance.seq.graphs[0], instance.field, json.load(fh))
    else:
        import random

        word = random_codeword_word(instance, random.Random(derive_seed(args.seed, 1)))

    if args.mode == "ni":
        proof, transcript = prove_noninteractive(instance.seq, instance.rs, word, params)
        blob = proof.serialize()
        if args.json:
            _dump_json(args.out, {"format": "flowering-ni-proof-v1", "hex": blob.hex()})
        else:
            with open(args.out, "wb") as fh:
                fh.write(blob)
    else:
        transcript = run_protocol(instance.seq, instance.rs, HonestProver(word),
                                  params, derive_seed(args.seed, 2))
        _dump_json(args.out, {
            "format": TRANSCRIPT_FORMAT,
            "p": str(instance.field.p),
            "graph_hash": instance.seq.graphs[0].hash_hex(),
            "m": params.m,
            "t": params.t,
            "transcript": transcript.to_json(),
        })
    print(f"proof written to {args.out} (accept={transcript.accept}, "
          f"oracle_reads={transcript.counters.oracle_reads})")
    return 0 if transcript.accept else 1


def _verify_transcript_file(instance: Instance, data: dict) -> int:
    try:
        if data.get("p") != str(instance.field.p):
            return 1
        if data.get("graph_hash") != instance.seq.graphs[0].hash_hex():
            return 1
        params = ProtocolParams(int(data["m"]), int(data["t"]))
        params.check(instance.n)
        tr = data["transcript"]
        challenges = [int(a) for a in tr["challenges"]]
        if len(tr["queries"]) != params.m:
            return 1
        randomness = [(q["v0"], tuple(q["indices"])) for q in tr["queries"]]
        openings = {}
        for q in tr["queries"]:
            for level, cid, value in q["openings"]:
                openings[(level, cid)] = value
    except (KeyError, TypeError, ValueError, FloweringError):
        return 2
    try:
        replayed = replay_transcript(instance.seq, instance.rs, params, challenges,
                                     randomness, openings)
    except KeyError:
        return 1
    return 0 if replayed.accept and tr.get("accept") is True else 1


def cmd_verify(args) -> int:
    try:
        instance = _load_instance(args.instance)
    except (OSError, ValueError, KeyError, FloweringError):
        print("malformed instance file", file=sys.stderr)
        return 2
    try:
        with open(args.proof, "rb") as fh:
            blob = fh.read()
    except OSError as exc:
        print(f"cannot read proof: {exc}", file=sys.stderr)
        return 2

    if blob[:1] in (b"{", b" "):
        try:
            data = json.loads(blob.decode())
        except (UnicodeDecodeError, json.JSONDecodeError):
            print("malformed proof file", file=sys.stderr)
            return 2
        if data.get("format") == TRANSCRIPT_FORMAT:
            code = _verify_transcript_file(instance, data)
            print("accept" if code == 0 else "reject")
            return code
        try:
            blob = bytes.fromhex(data["hex"])
        except (KeyError, TypeError, ValueError):
            print("malformed proof file", file=sys.stderr)
            return 2
    try:
        proof = NIProof.parse(blob)
    except MalformedProofError as exc:
        print(f"malformed proof: {exc}", file=sys.stderr)
        return 2
    accept, _ = verify_noninteractive(instance.seq, instance.rs, proof)
    print("accept" if accept else "reject")
    return 0 if accept else 1


def cmd_soundness_mc(args) -> int:
    instance = _load_instance(args.instance)
    with open(args.config) as fh:
        cfg = json.load(fh)
    report = soundness_mc(
        instance,
        adversaries=cfg.get("adversaries", ["far-word-honest-fold", "lazy-copy"]),
        deltas=[Fraction(d) for d in cfg.get("deltas", ["1/2"])],
        ms=cfg.get("ms", [10]),
        ts=cfg.get("ts", [2]),
        trials=cfg.get("trials", 1000),
        seed=args.seed,
        workers=cfg.get("workers", 1),
    )
    _dump_json(args.out, report)
    header = f"{'adversary':24} {'delta':>8} {'m':>3} {'t':>3} {'accept':>8} {'wilson99':>9} {'bound':>9} ok"
    print(header)
    for pt in report["points"]:
        print(f"{pt['adversary']:24} {pt['delta_target']:>8} {pt['m']:>3} {pt['t']:>3} "
              f"{pt['acceptance_rate']:8.4f} {pt['wilson_upper_99']:9.4f} "
              f"{pt['soundness_bound']:9.4f} {'yes' if pt['within_bound'] else 'NO'}")
    print(f"violations: {report['violations']}")
    if args.csv:
        cols = ["adversary", "delta_target", "m", "t", "trials", "accepts",
                "acceptance_rate", "wilson_upper_99", "soundness_bound", "within_bound"]
        lines = [",".join(cols)]
        lines += [",".join(str(pt[c]) for c in cols) for pt in report["points"]]
        with open(args.csv, "w") as fh:
            fh.write("\n".join(lines) + "\n")
    return 0


def cmd_report_complexity(args) -> int:
    instance = _load_instance(args.instance)
    params = ProtocolParams(args.m, args.t)
    report = complexity_report(instance, params, args.seed)
    _dump_json(args.out, report)
    print(f"{'counter':28} {'measured':>12} {'bound':>14}")
    meas, bounds = report["measured"], report["bounds"]
    rows = [
        ("proof_length", meas["proof_length"], bounds["proof_length_max"]),
        ("oracle_reads", meas["oracle_reads"], bounds["oracle_reads_max"]),
        ("rounds", meas["rounds"], f"{bounds['rounds_asymptotic_log2N']:.2f}"),
        ("prover_field_ops", meas["prover_field_ops"], bounds["prover_ops_max"]),
        ("verifier_fold_ops", meas["verifier_field_ops"], bounds["verifier_fold_ops_4rmt"]),
    ]
    for name, measured, bound in rows:
        print(f"{name:28} {measured:>12} {bound:>14}")
    print(f"asserted bounds hold: {report['all_asserted_hold']}")
    return 0 if report["all_asserted_hold"] else 1


def cmd_check_bounds(args) -> int:
    from .experiments import bounds_report

    instance = _load_instance(args.instance)
    enum_cap, matrix_cap = _caps()
    report = bounds_report(instance, enum_cap, matrix_cap)
    _dump_json(args.out, report)
    print(f"{'level':>5} {'|V|':>6} {'classes':>8} {'petals':>7} {'dim':>6} {'bound':>6} ok")
    for lv in report["levels"]:
        dim = lv["dimension"] if lv["dimension"] is not None else "-"
        ok = {True: "yes", False: "NO", None: "skip"}[lv["bound_holds"]]
        print(f"{lv['level']:>5} {lv['vertices']:>6} {lv['classes']:>8} "
              f"{lv['petals']:>7} {dim!s:>6} {lv['dimension_lower_bound']:>6} {ok}")
    for key, value in sorted(report["distance"].items()):
        print(f"  distance.{key}: {value}")
    print(f"violations: {report['violations']}")
    return 0 if report["violations"] == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="flowering",
                                     description="Proximity testing for codes on graphs")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a blossoming Cayley instance")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--genset", default="full",
                   help="'full' or a JSON file with a genset or parity-check matrix")
    p.add_argument("--d", type=int, default=3)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("prove", help="run the prover and write a proof")
    p.add_argument("--instance", required=True)
    p.add_argument("--m", type=int, default=10)
    p.add_argument("--t", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--word", help="word JSON to prove; default: seed-derived codeword")
    p.add_argument("--mode", choices=["ni", "interactive"], default="ni")
    p.add_argument("--json", action="store_true", help="hex-encode the NI proof as JSON")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_prove)

    p = sub.add_parser("verify", help="verify a proof (exit 0/1/2)")
    p.add_argument("--instance", required=True)
    p.add_argument("--proof", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("soundness-mc", help="Monte-Carlo soundness study")
    p.add_argument("--instance", required=True)
    p.add_argument("--config", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--csv", help="also write the points as CSV")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_soundness_mc)

    p = sub.add_parser("report-complexity", help="counters vs bound expressions")
    p.add_argument("--instance", required=True)
    p.add_argument("--m", type=int, default=10)
    p.add_argument("--t", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_report_complexity)

    p = sub.add_parser("check-bounds", help="dimension and distance bound report")
    p.add_argument("--instance", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_check_bounds)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FloweringError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
