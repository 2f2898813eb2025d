"""Command line entry point.

Exit codes: 0 success or valid, 1 negative result, 2 input error, 3 a
resource cap was hit.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import core, inference, polygraph, semantics
from .errors import CompositionError, ParseError, ResourceError, SyllogisticError

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT, EXIT_RESOURCE = 0, 1, 2, 3


def _text(arg: str) -> str:
    return sys.stdin.read().strip() if arg == "-" else arg


def _emit(args, payload: dict, lines: list[str]) -> None:
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print("\n".join(lines))


def inference_diagram(premise_chain: core.ChainDiagram, conclusion_chain: core.ChainDiagram) -> str:
    return f"   {core.render_chain(premise_chain)}\n|= {core.render_chain(conclusion_chain)}"


def _canonical(word: core.Word):
    if all(v.is_canonical for v in word.variables()):
        return word, {}
    return core.canonicalize(word)


def cmd_check(args) -> int:
    s = inference.Syllogism.parse(_text(args.syllogism))
    v = inference.check_validity(s)
    mf = inference.mood_and_figure(s)
    model = None
    if not v.valid and args.countermodel:
        model = semantics.find_countermodel(s, args.max_universe)
    payload = {
        "syllogism": str(s),
        "valid": v.valid,
        "reason": v.reason or None,
        "premise_chain": core.render_chain(v.premise_chain),
        "normal_form": core.render_chain(v.normal_form),
        "conclusion_chain": core.render_chain(v.conclusion_chain),
        "case": str(v.matched_case),
        "deleted": list(v.derivation),
        "mood_figure": {"mood": mf[0], "figure": mf[1]} if mf else None,
    }
    if args.countermodel and not v.valid:
        payload["countermodel"] = model.to_json() if model else None
    lines = ["VALID" if v.valid else f"INVALID: {v.reason}"]
    if v.valid:
        lines.append(inference_diagram(v.premise_chain, v.conclusion_chain))
    else:
        lines.append(f"premises:    {core.render_chain(v.premise_chain)}")
        lines.append(f"normal form: {core.render_chain(v.normal_form)}")
        lines.append(f"conclusion:  {core.render_chain(v.conclusion_chain)}")
    if mf:
        lines.append(f"mood {mf[0]}, figure {mf[1]}")
    lines.append(f"chain case: {v.matched_case}")
    if args.trace:
        c = v.premise_chain
        for pos in v.derivation:
            lines.append(f"  delete {c.nodes[pos]} at position {pos}")
    if args.countermodel and not v.valid:
        lines.append("countermodel:" if model else "countermodel: none within bound")
        if model:
            lines.extend("  " + ln for ln in model.describe().splitlines())
    _emit(args, payload, lines)
    return EXIT_OK if v.valid else EXIT_NEGATIVE


def cmd_normalize(args) -> int:
    word, mapping = _canonical(core.parse_word(_text(args.word)))
    strategy = args.strategy or ("random" if args.seed is not None else "leftmost")
    nf, deriv = polygraph.normalize_word(word, strategy, args.seed)
    payload = {
        "input": str(word),
        "mapping": {str(k): str(v) for k, v in mapping.items()},
        "strategy": strategy,
        "normal_form": str(nf),
        "derivation": deriv.trace(),
    }
    lines = []
    if mapping:
        lines.append("renamed: " + ", ".join(f"{k} -> {v}" for k, v in mapping.items()))
    lines.append(str(nf))
    if args.trace:
        lines.append(deriv.render())
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_render(args) -> int:
    word = core.parse_word(_text(args.word))
    chain = core.chain_of_word(word)
    _emit(args, {"word": str(word), "chain": core.render_chain(chain)}, [core.render_chain(chain)])
    return EXIT_OK


def cmd_classify(args) -> int:
    word = core.parse_word(_text(args.word))
    chain = core.chain_of_word(word)
    case = inference.classify(chain)
    nf, _ = inference.normalize_chain(chain)
    payload = {
        "chain": core.render_chain(chain),
        "case": case.kind.value if case else None,
        "i": case.i,
        "j": case.j,
        "normal_form": core.render_chain(nf),
    }
    _emit(args, payload, [core.render_chain(chain), f"case {case}", f"normal form {core.render_chain(nf)}"])
    return EXIT_OK if case else EXIT_NEGATIVE


def cmd_enumerate(args) -> int:
    n = _need_n(args)
    valid = inference.enumerate_valid(n, cap=args.cap or inference.DEFAULT_ENUMERATION_CAP)
    summary = inference.summarize(valid, n)
    payload = {"syllogisms": [e.to_json() for e in valid], "summary": summary}
    lines = []
    family = None
    for e in valid:
        if e.family != family:
            family = e.family
            lines.append(f"[{family}] {inference.FAMILY_ROWS[family]}")
        mf = inference.mood_and_figure(e.syllogism)
        extra = f"    {mf[0]}-{mf[1]}" if mf else ""
        lines.append(f"  {e.syllogism}{extra}")
    lines.append(f"total {summary['total']} (3n^2-n = {inference.valid_count(n)})")
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_critical_pairs(args) -> int:
    n = _need_n(args)
    pairs = polygraph.critical_pairs(n, cap=args.cap or polygraph.DEFAULT_CRITICAL_PAIR_CAP)
    families = polygraph.overlap_families(pairs)
    bad = [cp for cp in pairs if not cp.joinable]
    lines = []
    for cp in pairs:
        mark = "joinable" if cp.joinable else "NOT JOINABLE"
        lines.append(f"{cp.peak}\n    {cp.left_step[0].name} -> {cp.left_nf}"
                     f"\n    {cp.right_step[0].name} -> {cp.right_nf}\n    {mark}")
    lines.append(f"{len(pairs)} critical pairs in {len(families)} overlap families, "
                 f"{len(bad)} not joinable up to renaming")
    if args.json:
        print(json.dumps([cp.to_json() for cp in pairs], indent=2))
    else:
        print("\n".join(lines))
    return EXIT_NEGATIVE if bad else EXIT_OK


def cmd_countermodel(args) -> int:
    s = inference.Syllogism.parse(_text(args.syllogism))
    model = semantics.find_countermodel(s, args.max_universe)
    payload = model.to_json() if model else None
    lines = [model.describe()] if model else ["none within bound"]
    _emit(args, payload, lines)
    return EXIT_OK if model else EXIT_NEGATIVE


def cmd_audit(args) -> int:
    n = _need_n(args)
    term = polygraph.termination_audit(n)
    sound = semantics.audit_soundness(n, args.max_universe)
    violations = [v for w in term for v in w.violations]
    payload = {"termination": [w.to_json() for w in term], "soundness": sound.to_json()}
    lines = ["termination:"]
    for w in term:
        d = w.to_json()
        lines.append(f"  {d['family']:<18} instances={d['instances']:<3} "
                     f"dlength={d['delta_length']} ddual={d['delta_dual']}")
    lines.append(f"  violations: {len(violations)}")
    lines.append("soundness:")
    lines.append(f"  rules checked {sound.rules_checked}, unsound {len(sound.unsound_rules)}")
    lines.append(f"  accepted {sound.accepted}, with countermodel {len(sound.accepted_with_countermodel)}")
    lines.append(f"  rejected {sound.rejected}, with countermodel {sound.rejected_with_countermodel}, "
                 f"redundant assumption of existence {len(sound.redundant_existential)}")
    for d in sound.divergences:
        tag = "whitelisted" if d["whitelisted"] else "UNEXPLAINED"
        lines.append(f"  divergence ({tag}): {d['syllogism']} {d['note']}".rstrip())
    _emit(args, payload, lines)
    return EXIT_OK if sound.ok and not violations else EXIT_NEGATIVE


def _need_n(args) -> int:
    if args.n is None or args.n < 1:
        raise _UsageError("--n <k> with k >= 1 is required")
    return args.n


class _UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="syllogistic", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, *, text=None, n=False, **flags):
        p = sub.add_parser(name)
        if text:
            p.add_argument(text, help="input text, or - to read stdin")
        if n:
            p.add_argument("--n", type=int)
            p.add_argument("--cap", type=int)
        p.add_argument("--json", action="store_true")
        if flags.get("trace"):
            p.add_argument("--trace", action="store_true")
        if flags.get("universe"):
            p.add_argument("--max-universe", type=int)
        p.set_defaults(func=func)
        return p

    check = add("check", cmd_check, text="syllogism", trace=True, universe=True)
    check.add_argument("--countermodel", action="store_true")
    norm = add("normalize", cmd_normalize, text="word", trace=True)
    norm.add_argument("--strategy", choices=polygraph.STRATEGIES)
    norm.add_argument("--seed", type=int)
    add("render", cmd_render, text="word")
    add("classify", cmd_classify, text="word")
    add("enumerate", cmd_enumerate, n=True)
    add("critical-pairs", cmd_critical_pairs, n=True)
    add("countermodel", cmd_countermodel, text="syllogism", universe=True)
    add("audit", cmd_audit, n=True, universe=True)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as e:
        print(f"error: {e}", file=sys.stderr)
        if e.text:
            print(f"  {e.text}\n  {' ' * e.position}^", file=sys.stderr)
        return EXIT_INPUT
    except (CompositionError, _UsageError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except ResourceError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_RESOURCE
    except SyllogisticError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
