"""Command-line front end.

    commamodel classify  --input sigma.json [--structure linj]
    commamodel factorize --input sigma.json --structure lproj --kind tcf [--trace]
    commamodel lift      --input square.json --structure linj [--method structural]
    commamodel check     --suite class-equalities --seed 42 --cases 200
    commamodel demo      main-theorem --variant linj --seed 7
    commamodel gen       --kind comma-morphism --seed 7 --count 3

Exit codes: 0 pass, 1 verification failure, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import asdict

from . import serialize as ser
from .chain import FactorKind
from .checks import SUITES, RunConfig, run_main_theorem, run_suite
from .comma import StructureId
from .factor import LiftingProblem, check_factorization, factorize_traced, lift_comma
from .generate import Generator
from .monoidal import UnsupportedInstance

log = logging.getLogger("commamodel")

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
KINDS = {"ctf": FactorKind.CofThenTrivFib, "tcf": FactorKind.TrivCofThenFib}
CLASSES = ("cof", "fib", "we", "triv_cof", "triv_fib")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _common(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--adjunction", default="identity", choices=("identity", "hom-tensor"))
    sp.add_argument("--hom-object", default="disk:1", help="P for hom-tensor, e.g. disk:1 or sphere:1")
    sp.add_argument("-p", "--prime", type=int, default=None)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--cases", type=int, default=50)
    sp.add_argument("--max-dim", type=int, default=2)
    sp.add_argument("--window", type=int, default=3)
    sp.add_argument("--structure", default=None)
    sp.add_argument("-o", "--output", default=None, help="write the report here instead of stdout")
    sp.add_argument("--timing", action="store_true", help="include wall-clock timings in reports")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="commamodel", description="Model structures on comma categories of chain complexes")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    sp = sub.add_parser("classify", help="class flags of a comma morphism")
    _common(sp)
    sp.add_argument("--input", required=True)

    sp = sub.add_parser("factorize", help="factor a comma morphism")
    _common(sp)
    sp.add_argument("--input", required=True)
    sp.add_argument("--kind", choices=tuple(KINDS), default="ctf")
    sp.add_argument("--trace", action="store_true")

    sp = sub.add_parser("lift", help="solve a lifting square")
    _common(sp)
    sp.add_argument("--input", required=True)
    sp.add_argument("--method", choices=("auto", "structural", "linear"), default="auto")

    sp = sub.add_parser("check", help="run verification suites")
    _common(sp)
    sp.add_argument("--suite", default="all", choices=("all",) + SUITES)

    sp = sub.add_parser("demo", help="main-theorem harness")
    _common(sp)
    sp.add_argument("name", choices=("main-theorem",))
    sp.add_argument("--variant", default=None, help="linj, lproj, rinj or rproj (default: all four)")

    sp = sub.add_parser("gen", help="seeded random data")
    _common(sp)
    sp.add_argument("--kind", default="comma-morphism",
                    choices=("complex", "map", "comma-object", "comma-morphism", "in-class"))
    sp.add_argument("--count", type=int, default=1)
    sp.add_argument("--class", dest="cls", choices=CLASSES, default="cof")
    sp.add_argument("--attempts", type=int, default=20)
    return ap


def _config(args, p: int) -> RunConfig:
    return RunConfig(seed=args.seed, cases=args.cases, p=p, max_dim=args.max_dim, window=args.window,
                     adjunction=args.adjunction, structure=args.structure, hom_object=args.hom_object)


def _structure(args, default=None) -> StructureId | None:
    if args.structure is None:
        return default
    try:
        return StructureId.parse(args.structure)
    except ValueError as e:
        raise UsageError(str(e)) from e


def _read(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return ser.loads(fh.read())
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from e


def _prime_of(payload) -> int:
    """The prime declared by the first complex found in a payload."""
    stack = [payload]
    while stack:
        x = stack.pop()
        if isinstance(x, dict):
            if "p" in x and "dims" in x:
                return int(x["p"])
            stack.extend(x.values())
    raise ser.PayloadError("payload declares no prime")


def _resolve_prime(args, payload=None) -> int:
    if payload is not None:
        q = _prime_of(payload)
        if args.prime is not None and args.prime != q:
            raise ser.PayloadError(f"inconsistent prime: --prime {args.prime} but input uses {q}")
        return q
    return args.prime if args.prime is not None else 2


def _envelope(verb: str, cfg: RunConfig, result: dict) -> dict:
    return {"schema_version": ser.SCHEMA_VERSION, "verb": verb, "config": asdict(cfg), "result": result}


def cmd_classify(args):
    payload = _read(args.input)
    cfg = _config(args, _resolve_prime(args, payload))
    C = cfg.comma()
    s = ser.comma_morphism_from_json(payload, C)
    sts = (_structure(args),) if args.structure else tuple(StructureId)
    flags = {st.name: C.classify(s, st).as_dict() for st in sts}
    return EXIT_OK, _envelope("classify", cfg, {"flags": flags})


def cmd_factorize(args):
    payload = _read(args.input)
    cfg = _config(args, _resolve_prime(args, payload))
    C = cfg.comma()
    s = ser.comma_morphism_from_json(payload, C)
    st = _structure(args, StructureId.LInj)
    kind = KINDS[args.kind]
    fac = factorize_traced(C, s, st, kind)
    bad = check_factorization(C, s, fac.l, fac.r, st, kind)
    result = {"structure": st.name, "kind": kind.value, "route": fac.route,
              "l": ser.comma_morphism_to_json(fac.l), "r": ser.comma_morphism_to_json(fac.r),
              "verified": not bad, "failures": bad}
    if args.trace:
        result["trace"] = _trace_json(fac.trace)
    return (EXIT_FAIL if bad else EXIT_OK), _envelope("factorize", cfg, result)


def _trace_json(trace: dict) -> dict:
    out = {}
    for k, v in trace.items():
        if isinstance(v, dict):
            out[k] = _trace_json(v)
        else:
            try:
                out[k] = ser.to_json(getattr(v, "base", v))
            except TypeError:
                out[k] = repr(v)
    return out


def cmd_lift(args):
    payload = _read(args.input)
    cfg = _config(args, _resolve_prime(args, payload))
    C = cfg.comma()
    try:
        parts = {k: ser.comma_morphism_from_json(payload[k], C) for k in ("sigma", "beta", "top", "bottom")}
    except KeyError as e:
        raise ser.PayloadError(f"lifting square needs sigma, beta, top and bottom; missing {e}") from e
    prob = LiftingProblem(**parts)
    if not prob.commutes():
        raise ser.PayloadError("lifting square does not commute")
    st = _structure(args, StructureId.LInj)
    try:
        s = lift_comma(C, prob, st, args.method)
    except AssertionError as e:
        return EXIT_FAIL, _envelope("lift", cfg, {"solved": False, "failures": [str(e)]})
    if s is None:
        return EXIT_FAIL, _envelope("lift", cfg, {"solved": False, "failures": ["no diagonal filler"],
                                                  "problem": payload})
    return EXIT_OK, _envelope("lift", cfg, {"solved": True, "structure": st.name,
                                            "lift": ser.comma_morphism_to_json(s)})


def cmd_check(args):
    cfg = _config(args, _resolve_prime(args))
    names = SUITES if args.suite == "all" else (args.suite,)
    results = []
    for name in names:
        try:
            res = run_suite(name, cfg)
        except UnsupportedInstance as e:
            results.append({"suite": name, "status": "unsupported", "reason": str(e)})
            continue
        log.info("%s: %s (%d checked)", name, "pass" if res.ok else "FAIL", res.checked)
        results.append(res.as_dict(args.timing))
    failed = any(r["status"] == "fail" for r in results)
    return (EXIT_FAIL if failed else EXIT_OK), _envelope("check", cfg, {"suites": results})


def cmd_demo(args):
    cfg = _config(args, _resolve_prime(args))
    variants = None
    if args.variant:
        v = StructureId.parse(args.variant)
        if v not in (StructureId.LInj, StructureId.LProj, StructureId.RInj, StructureId.RProj):
            raise UsageError("variant must be linj, lproj, rinj or rproj")
        variants = (v,)
    res = run_main_theorem(cfg, variants)
    return (EXIT_OK if res.ok else EXIT_FAIL), _envelope("demo", cfg, res.as_dict(args.timing))


def cmd_gen(args):
    cfg = _config(args, _resolve_prime(args))
    if args.max_dim < 0 or args.window < 0 or args.count < 0:
        raise UsageError("bounds and count must be non-negative")
    gen = Generator(cfg.seed, cfg.p, cfg.bounds)
    C = cfg.comma()
    out = []
    for _ in range(args.count):
        if args.kind == "complex":
            x = gen.complex()
        elif args.kind == "map":
            x = gen.any_chain_map()
        elif args.kind == "comma-object":
            x = gen.comma_object(C)
        elif args.kind == "comma-morphism":
            x = gen.comma_morphism(C)
        else:
            st = _structure(args, StructureId.LInj)
            try:
                x = gen.in_class(C, st, args.cls, args.attempts)
            except RuntimeError as e:
                raise UsageError(str(e)) from e
        out.append(ser.to_json(x))
    return EXIT_OK, _envelope("gen", cfg, {"kind": args.kind, "values": out})


COMMANDS = {"classify": cmd_classify, "factorize": cmd_factorize, "lift": cmd_lift,
            "check": cmd_check, "demo": cmd_demo, "gen": cmd_gen}


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        code, report = COMMANDS[args.verb](args)
    except (UsageError, ser.PayloadError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    text = ser.dumps(report) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
