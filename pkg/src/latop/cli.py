"""``latop`` command line.

Exit codes: 0 success, 1 a law failed or a computed value disagreed with its
expected value, 2 bad usage (unknown operad, unparsable element, bad slot).
Elements are written in the canonical text forms of the operad zoo; quote
words containing ``+``/``-`` or brackets in the shell.
"""
from __future__ import annotations

import argparse
import json
import os
import random
import sys
from dataclasses import dataclass, field
from typing import Optional, Sequence

from . import enumeration_series as es
from .errors import LatopError
from .lattice_core import lattice_law_failures
from .operad_core import all_passed, check_lattice_compatibility, check_operad_laws
from .operad_zoo import REGISTRY, get, polygons, tamari, walks, words

LAW_SUITES = ("operad", "lattice", "components", "hyperoctahedral")


@dataclass
class RunConfig:
    """Everything that determines a run's output."""

    subcommand: str
    operad: Optional[str] = None
    nmax: Optional[int] = None
    out: Optional[str] = None
    fmt: str = "json-lines"
    seed: int = 0
    sample: Optional[int] = None
    options: dict = field(default_factory=dict)


class UsageError(Exception):
    pass


def _operad(tag: str):
    if tag not in REGISTRY:
        raise UsageError(f"unknown operad {tag!r}; known: {', '.join(sorted(REGISTRY))}")
    return get(tag)


def _write(path: Optional[str], text: str) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        d = os.path.dirname(path)
        if d:
            os.makedirs(d, exist_ok=True)
        with open(path, "w") as fh:
            fh.write(text)


# --------------------------------------------------------------- subcommands

def cmd_compose(cfg: RunConfig, a: str, i: str, b: str) -> int:
    op = _operad(cfg.operad)
    try:
        slot = int(i)
    except ValueError:
        raise UsageError(f"slot {i!r} is not an integer") from None
    x, y = op.parse(a), op.parse(b)
    print(op.fmt(op.compose(x, slot, y)))
    return 0


def _window(op, cfg: RunConfig):
    if cfg.sample is None:
        return None
    rng = random.Random(cfg.seed)

    def window(n):
        els = es.enumerate_component(op, n)
        return els if len(els) <= cfg.sample else sorted(rng.sample(els, cfg.sample), key=els.index)

    return window


def cmd_check(cfg: RunConfig, laws: Sequence[str], mode: Optional[str]) -> int:
    op = _operad(cfg.operad)
    entry = REGISTRY[cfg.operad]
    nmax = cfg.nmax if cfg.nmax is not None else entry.nmax
    window = _window(op, cfg)
    if "all" in laws:
        suites = [x for x in LAW_SUITES if x != "hyperoctahedral" or cfg.operad in ("t", "tv")]
    else:
        suites = laws
    reports = []
    for law in suites:
        if law == "operad":
            reports += check_operad_laws(op, nmax, window)
        elif law == "lattice":
            reports += check_lattice_compatibility(op, nmax, window, mode=mode or entry.lattice_mode or "full")
        elif law == "components":
            from .operad_core import LawReport

            for n in range(op.min_arity, nmax + 1):
                L = op.component(n)
                els = op.elements(n, window)
                bad = lattice_law_failures(L, els, limit=1)
                reports.append(LawReport(f"lattice_axioms:{n}", nmax, "fail" if bad else "pass",
                                         tuple(bad) or None, len(els)))
        elif law == "hyperoctahedral":
            if cfg.operad not in ("t", "tv"):
                raise UsageError("the hyperoctahedral suite applies to t and tv")
            reports += words.check_hyperoctahedral(op, nmax)
        else:
            raise UsageError(f"unknown law suite {law!r}; choose from {', '.join(LAW_SUITES + ('all',))}")
    for r in reports:
        print(r.to_json())
    return 0 if all_passed(reports) else 1


def cmd_enumerate(cfg: RunConfig, n: int, count: bool) -> int:
    op = _operad(cfg.operad)
    els = es.enumerate_component(op, n)
    if count:
        print(len(els))
    else:
        for x in els:
            print(op.fmt(x))
    return 0


def cmd_hasse(cfg: RunConfig, n: int) -> int:
    op = _operad(cfg.operad)
    _write(cfg.out, es.component_dot(op, n))
    return 0


CLOSED_FORMS = {"comp": es.comp_closed_form, "comp_b": es.comp_b_closed_form}


def cmd_series(cfg: RunConfig, bivariate: bool, compare: bool) -> int:
    op = _operad(cfg.operad)
    nmin = 2 if compare else None
    sc = es.series_coefficients(op, cfg.nmax, bivariate=bivariate, nmin=nmin)
    _write(cfg.out, sc.to_csv())
    if compare:
        if cfg.operad not in CLOSED_FORMS:
            raise UsageError(f"no closed form is known for {cfg.operad}")
        closed = CLOSED_FORMS[cfg.operad](cfg.nmax)
        if not bivariate:
            # univariate tables compare against the closed form at t = 1
            flat: dict = {}
            for (n, _), c in closed.items():
                flat[(n, None)] = flat.get((n, None), 0) + c
            closed = flat
        bad = es.closed_form_mismatches(sc, closed, nmin=2)
        for n, k, got, want in bad:
            print(json.dumps({"n": n, "k": k, "computed": str(got), "expected": str(want)}), file=sys.stderr)
        return 1 if bad else 0
    return 0


def cmd_filtration(cfg: RunConfig, config_path: str, kind: str, graded: bool) -> int:
    from . import linear_filtration as lf

    with open(config_path) as fh:
        try:
            doc = lf.load_config(fh.read())
        except (ValueError, json.JSONDecodeError) as exc:
            raise UsageError(f"{config_path}: {exc}") from None
    P, I, seed = lf.config_setup(doc)
    policy = doc.get("on_overflow", "raise")
    if kind == "standard":
        res = lf.standard_d_filtration(seed, on_overflow=policy)
    else:
        res = lf.closure(kind, seed, on_overflow=policy)
    F = res.filtration
    reports = lf.check_filtration(F)
    if kind in ("d", "standard"):
        reports.append(lf.check_d_filtration(F))
    out = cfg.out or "."
    os.makedirs(out, exist_ok=True)
    lines = []
    for (n, p), V in sorted(F.spaces.items(), key=lambda kv: (kv[0][0], I.fmt(kv[0][1]))):
        lines.append(json.dumps({"arity": n, "index": I.fmt(p), "dim": V.rank,
                                 "basis": [P.fmt_vector(n, v) for v in V.basis()]}))
    _write(os.path.join(out, "filtration.jsonl"), "".join(s + "\n" for s in lines))
    _write(os.path.join(out, "checks.jsonl"), "".join(r.to_json() + "\n" for r in reports))
    summary = {"closure": kind, "operad": P.name, "index": I.op.tag, "sweeps": res.sweeps,
               "nonzero": len(F.spaces), "overflows": len(res.overflows),
               "fixed": {k: bool(v) for k, v in sorted(res.fixed.items())}}
    if graded:
        gr = lf.associated_graded(F, check_nmax=min(3, I.nmax))
        _write(os.path.join(out, "graded.csv"), gr.to_csv())
    _write(os.path.join(out, "summary.json"), json.dumps(summary, sort_keys=True, indent=1) + "\n")
    for r in reports:
        print(r.to_json())
    failed = [r for r in reports if r.status == "fail"]
    return 1 if failed else 0


def cmd_appendix(cfg: RunConfig) -> int:
    rep = es.reproduce_appendix(cfg.nmax, out_dir=cfg.out)
    for line in rep.lines():
        print(line)
    return 0 if rep.ok else 1


def _parse_partition_b(text: str):
    body = text.strip()
    if not (body.startswith("{{") and body.endswith("}}")):
        raise ValueError("expected {{..},{..}}")
    return [[int(x) for x in blk.split(",") if x] for blk in body[2:-2].split("},{")]


CODECS = {
    "word-to-colored": lambda s: words.fmt_colored(words.word_to_colored(s)),
    "colored-to-word": lambda s: words.colored_to_word(words.parse_colored(s)),
    "word-to-partition-b": lambda s: words.fmt_partition_b(words.word_to_partition_b(s)),
    "partition-b-to-word": lambda s: str(words.partition_b_to_word(_parse_partition_b(s))),
    "partition-to-walk": lambda s: walks.partition_to_walk(tuple(int(x) for x in s.split(","))),
    "walk-to-partition": lambda s: ",".join(map(str, walks.walk_to_partition(s))),
    "tamari-h": lambda s: ",".join(map(str, tamari.normalize_h(tuple(int(x) for x in s.split(","))))),
    "tamari-split": lambda s: " ".join(",".join(map(str, w)) for w in tamari.split(tamari._parse(s))),
    "tree-to-subdivision": lambda s: polygons.fmt_subdivision(
        polygons.tree_to_subdivision(tamari.weights_to_tree(tamari._parse(s)))),
}


def cmd_codec(name: str, value: str) -> int:
    if name not in CODECS:
        raise UsageError(f"unknown codec {name!r}; known: {', '.join(sorted(CODECS))}")
    try:
        print(CODECS[name](value))
    except (ValueError, KeyError, IndexError) as exc:
        raise UsageError(f"cannot decode {value!r}: {exc}") from None
    return 0


def cmd_act(cfg: RunConfig, element: str, action: str) -> int:
    op = _operad(cfg.operad)
    x = op.parse(element)
    names = [ea.name for ea in op.extra_actions]
    if action in names:
        print(op.fmt(op.action(action).fn(x)))
        return 0
    if op.act is not None and action.isdigit():
        print(op.fmt(op.act(x, tuple(int(c) for c in action))))
        return 0
    raise UsageError(f"{cfg.operad} has no action {action!r}; declared: {', '.join(names) or 'none'}")


# -------------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="latop", description="Lattice-valued operads: compose, check, enumerate.")
    sub = p.add_subparsers(dest="cmd", required=True)

    s = sub.add_parser("compose", help="print a o_i b")
    s.add_argument("operad")
    s.add_argument("a")
    s.add_argument("i")
    s.add_argument("b")

    s = sub.add_parser("check", help="run law suites; exit 1 on any failure")
    s.add_argument("operad")
    s.add_argument("--laws", default="operad,lattice",
                   help=f"comma list from {', '.join(LAW_SUITES)} or 'all'")
    s.add_argument("--nmax", type=int)
    s.add_argument("--mode", choices=["full", "separate", "weak"])
    s.add_argument("--profile", choices=["desk"], help="use the pinned arity bound of the registry")
    s.add_argument("--sample", type=int, help="check at most this many elements per arity")
    s.add_argument("--seed", type=int, default=0)

    s = sub.add_parser("enumerate", help="list a component")
    s.add_argument("operad")
    s.add_argument("n", type=int)
    s.add_argument("--count", action="store_true")

    s = sub.add_parser("hasse", help="Hasse diagram of a component as DOT")
    s.add_argument("operad")
    s.add_argument("n", type=int)
    s.add_argument("--out", default="-")

    s = sub.add_parser("series", help="counting series coefficients as CSV")
    s.add_argument("operad")
    s.add_argument("--nmax", type=int, required=True)
    s.add_argument("--bivariate", action="store_true")
    s.add_argument("--compare", action="store_true", help="compare with the known closed form")
    s.add_argument("--out", default="-")

    s = sub.add_parser("filtration", help="close a seed described by a JSON config")
    s.add_argument("config")
    s.add_argument("--closure", choices=["generated", "saturated", "d", "standard"], default="generated")
    s.add_argument("--out", default=".")
    s.add_argument("--graded", action="store_true", help="also write the associated graded table")

    s = sub.add_parser("reproduce-appendix", help="multi-index suboperad tables and Hasse diagrams")
    s.add_argument("--nmax", type=int, default=6)
    s.add_argument("--out")

    s = sub.add_parser("codec", help="convert between encodings")
    s.add_argument("name", choices=sorted(CODECS))
    s.add_argument("value")

    s = sub.add_parser("act", help="apply a declared involution or a permutation")
    s.add_argument("operad")
    s.add_argument("element")
    s.add_argument("action")
    return p


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    # these subcommands take no options, so words such as -0+- are positional
    if argv and argv[0] in ("compose", "codec", "act") and not ({"-h", "--help", "--"} & set(argv)):
        argv = argv[:1] + ["--"] + argv[1:]
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and 2
    cfg = RunConfig(args.cmd, getattr(args, "operad", None), getattr(args, "nmax", None),
                    getattr(args, "out", None), seed=getattr(args, "seed", 0),
                    sample=getattr(args, "sample", None))
    try:
        if args.cmd == "compose":
            return cmd_compose(cfg, args.a, args.i, args.b)
        if args.cmd == "check":
            if args.profile == "desk":
                cfg.nmax = REGISTRY[args.operad].nmax if args.operad in REGISTRY else None
            laws = [x.strip() for x in args.laws.split(",") if x.strip()]
            return cmd_check(cfg, laws, args.mode)
        if args.cmd == "enumerate":
            return cmd_enumerate(cfg, args.n, args.count)
        if args.cmd == "hasse":
            return cmd_hasse(cfg, args.n)
        if args.cmd == "series":
            return cmd_series(cfg, args.bivariate, args.compare)
        if args.cmd == "filtration":
            return cmd_filtration(cfg, args.config, args.closure, args.graded)
        if args.cmd == "reproduce-appendix":
            return cmd_appendix(cfg)
        if args.cmd == "codec":
            return cmd_codec(args.name, args.value)
        if args.cmd == "act":
            return cmd_act(cfg, args.element, args.action)
    except UsageError as exc:
        print(f"latop: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"latop: {exc}", file=sys.stderr)
        return 2
    except LatopError as exc:
        print(f"latop: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    return 2  # pragma: no cover - argparse rejects unknown commands


def main() -> None:
    sys.exit(run())
