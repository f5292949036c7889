"""Command-line front end.

Exit status: 0 on success, 1 on a malformed or invalid input, 2 when an
internal consistency check (base-change verification, oracle agreement)
fails.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections import Counter
from typing import Dict, Optional, Sequence

from . import document
from .decompose import decompose
from .ext import cohomology
from .fukaya import CHECKS, ModelParams, hom_from_F0_raw, scan
from .linalg import ScalarField
from .oracle import exhaustive_agreement
from .quiver import (
    FAMILIES,
    IndecomposableLabel,
    RepresentationError,
    direct_sum_all,
    normal_form,
    random_base_change,
    random_rep,
)

EXIT_OK, EXIT_INVALID, EXIT_INCONSISTENT = 0, 1, 2


class UsageError(ValueError):
    pass


def parse_label(text: str) -> IndecomposableLabel:
    """``Family:k[:shift]``, e.g. ``TorsionInfinity:1`` or ``LineBundle:-2:3``."""
    parts = text.split(":")
    if len(parts) not in (2, 3) or parts[0] not in FAMILIES:
        raise UsageError(f"bad label {text!r}; expected Family:k[:shift] with Family in {', '.join(FAMILIES)}")
    try:
        nums = [int(x) for x in parts[1:]]
        return IndecomposableLabel(parts[0], *nums)
    except ValueError as exc:
        raise UsageError(f"bad label {text!r}: {exc}") from None


def parse_profile(text: str) -> Dict[int, int]:
    """``deg=dim,deg=dim``; empty string is the zero profile."""
    out: Dict[int, int] = {}
    for item in filter(None, (s.strip() for s in text.split(","))):
        try:
            g, n = item.split("=")
            out[int(g)] = int(n)
        except ValueError:
            raise UsageError(f"bad profile entry {item!r}; expected deg=dim") from None
    return out


def _fmt_label(lab: IndecomposableLabel) -> str:
    return f"{lab.family} k={lab.k} shift={lab.shift}"


def _matrix_text(m, F) -> str:
    return "[" + "; ".join(" ".join(F.format(x) for x in row) for row in m) + "]"


def _profile_text(p: Dict[int, int]) -> str:
    return ", ".join(f"{g}:{n}" for g, n in sorted(p.items())) or "0"


# ---------------------------------------------------------------------------
# commands


def cmd_decompose(args) -> int:
    rep = document.load(args.file)
    dec = decompose(rep)
    ok = dec.verify(rep)
    counts = Counter(dec.summands)
    if args.json:
        out = {
            "count": len(dec.summands),
            "summands": [
                {"family": lab.family, "k": lab.k, "shift": lab.shift, "multiplicity": m}
                for lab, m in sorted(counts.items())
            ],
            "base_change": {
                "phi": document.square_blocks(dec.base_change.phi),
                "psi": document.square_blocks(dec.base_change.psi),
            },
            "verified": ok,
        }
        print(json.dumps(out, indent=2))
    else:
        n = len(dec.summands)
        print(f"{n} summand{'' if n == 1 else 's'} ({'verified' if ok else 'VERIFICATION FAILED'})")
        for lab, m in sorted(counts.items()):
            print(f"  {m} x {_fmt_label(lab)}")
        F = rep.field
        for name, f in (("phi (V)", dec.base_change.phi), ("psi (W)", dec.base_change.psi)):
            if f.source.support:
                print(f"base change {name}:")
                for g in f.source.support:
                    print(f"  degree {g:>3}: {_matrix_text(f.block(g), F)}")
    return EXIT_OK if ok else EXIT_INCONSISTENT


def cmd_ext(args) -> int:
    rep = document.load(args.file)
    h = cohomology(rep)
    total = h.total()
    raw = hom_from_F0_raw(rep) if args.f0_raw else None
    if args.json:
        out = {
            "bigraded": [{"h": hh, "internal": i, "dim": n} for (hh, i), n in sorted(h.table.items())],
            "total": {str(g): n for g, n in total.items()},
            "dimension": h.dimension,
        }
        if raw is not None:
            out["f0_raw"] = {k: {str(g): n for g, n in v.items()} for k, v in raw.items()}
        print(json.dumps(out, indent=2))
        return EXIT_OK
    internal = sorted({i for _, i in h.table})
    if internal:
        width = max(3, max(len(str(i)) for i in internal) + 1)
        print("h \\ i " + "".join(f"{i:>{width}}" for i in internal))
        for hh in (0, 1):
            row = "".join(f"{h.table.get((hh, i), '.'):>{width}}" for i in internal)
            print(f"{hh:<6}{row}")
    else:
        print("cohomology is zero")
    print(f"total: {_profile_text(total)}  (dimension {h.dimension})")
    if raw is not None:
        print(f"f0 raw kernel: {_profile_text(raw['kernel'])}")
        print(f"f0 raw cokernel: {_profile_text(raw['cokernel'])}")
    return EXIT_OK


def cmd_classify(args) -> int:
    rep = document.load(args.file)
    dec = decompose(rep)
    if not dec.verify(rep):
        print("error: decomposition failed verification", file=sys.stderr)
        return EXIT_INCONSISTENT
    if len(dec.summands) != 1:
        listing = "; ".join(_fmt_label(lab) for lab in dec.summands) or "none"
        print(f"error: not indecomposable ({len(dec.summands)} summands: {listing})", file=sys.stderr)
        return EXIT_INVALID
    lab = dec.summands[0]
    if args.json:
        print(json.dumps({"family": lab.family, "k": lab.k, "shift": lab.shift}))
    else:
        print(_fmt_label(lab))
    return EXIT_OK


def _sphere_line(profile: Dict[int, int], shift: int, n: int) -> str:
    moved = {g - shift: m for g, m in profile.items()}
    return ",".join(str(moved.get(i, 0)) for i in range(n + 1))


def cmd_scan_manifolds(args) -> int:
    checks = tuple(c for c in args.checks.split(",") if c) if args.checks is not None else CHECKS
    bad = set(checks) - set(CHECKS)
    if bad:
        raise UsageError(f"unknown checks {sorted(bad)}; choose from {', '.join(CHECKS)}")
    p = ModelParams(args.n)
    results = scan(p, args.kmax, checks)
    admissible = [(lab, r) for lab, r in results if r.admissible]
    rejected = [(lab, r) for lab, r in results if not r.admissible]
    if args.json:
        out = {
            "n": p.n,
            "d": p.d,
            "kmax": args.kmax,
            "checks": list(checks),
            "admissible": [
                {
                    "family": lab.family,
                    "k": lab.k,
                    "witness_shift": r.witness_shift,
                    "cohomology": _sphere_line(r.profile, r.witness_shift, p.n),
                }
                for lab, r in admissible
            ],
            "rejected": [{"family": lab.family, "k": lab.k, "failures": r.failures} for lab, r in rejected],
        }
        print(json.dumps(out, indent=2))
        return EXIT_OK
    print(f"# n={p.n} d={p.d} kmax={args.kmax} checks={','.join(checks)}")
    print(f"# admissible: {len(admissible)}")
    for lab, r in admissible:
        print(f"{lab.family} k={lab.k}  cohomology {_sphere_line(r.profile, r.witness_shift, p.n)}")
    print(f"# rejected: {len(rejected)}")
    width = max((len(f"{lab.family} k={lab.k}") for lab, _ in rejected), default=0)
    for lab, r in rejected:
        name = f"{lab.family} k={lab.k}"
        print(f"{name:<{width}}  fails {','.join(r.failures)}")
    return EXIT_OK


def cmd_random(args) -> int:
    F = ScalarField.parse(args.field)
    if args.d == 0:
        raise RepresentationError("d must be nonzero")
    if args.labels:
        labels = [parse_label(s) for s in args.labels.split(",") if s]
        rep = direct_sum_all([normal_form(lab, args.d, F) for lab in labels], args.d, F)
    else:
        if args.profile is None:
            raise UsageError("give --profile V/W or --labels")
        if "/" not in args.profile:
            raise UsageError("--profile must look like '0=1,2=1/0=2' (V profile / W profile)")
        v, w = args.profile.split("/", 1)
        rep = random_rep(parse_profile(v), parse_profile(w), args.d, args.seed, F)
    if args.scramble:
        rep, _ = random_base_change(rep, args.seed)
    sys.stdout.write(document.dumps(rep))
    return EXIT_OK


def cmd_normal_form(args) -> int:
    lab = parse_label(args.label)
    sys.stdout.write(document.dumps(normal_form(lab, args.d, ScalarField.parse(args.field))))
    return EXIT_OK


def cmd_check(args) -> int:
    d_values = [int(x) for x in args.d.split(",")]
    if 0 in d_values:
        raise RepresentationError("d must be nonzero")
    report = exhaustive_agreement(args.prime, d_values, args.max_dim, args.window)
    if args.json:
        print(json.dumps({
            "prime": report.prime,
            "d": d_values,
            "max_dim": args.max_dim,
            "window": args.window,
            "instances": report.instances,
            "indecomposable": report.indecomposable,
            "disagreements": report.disagreements,
            "witness_failures": report.witness_failures,
            "ok": report.ok,
        }, indent=2))
    else:
        print(f"prime={report.prime} d={','.join(map(str, d_values))} max_dim={args.max_dim} window={args.window}")
        print(f"instances        {report.instances}")
        print(f"indecomposable   {report.indecomposable}")
        print(f"disagreements    {len(report.disagreements)}")
        print(f"witness failures {len(report.witness_failures)}")
        for line in report.disagreements + report.witness_failures:
            print(f"  {line}")
        print("consistent" if report.ok else "INCONSISTENT")
    return EXIT_OK if report.ok else EXIT_INCONSISTENT


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="graded-kronecker",
        description="Decompose graded Kronecker representations and compute their endomorphism complexes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.set_defaults(func=func)
        return p

    p = add("decompose", cmd_decompose, "split a representation into indecomposables")
    p.add_argument("file")
    p = add("ext", cmd_ext, "bigraded cohomology of the endomorphism complex")
    p.add_argument("file")
    p.add_argument("--f0-raw", action="store_true", help="also report kernel/cokernel of (alpha, beta): V -> W + W[d]")
    p = add("classify", cmd_classify, "label of an indecomposable representation")
    p.add_argument("file")
    p = add("scan-manifolds", cmd_scan_manifolds, "which indecomposables look like closed n-manifold cohomology")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--kmax", type=int, default=6)
    p.add_argument("--checks", default=None, help=f"comma list from {','.join(CHECKS)} (default: all)")
    p = add("random", cmd_random, "emit a random representation document")
    p.add_argument("--profile", help="V/W profiles, e.g. '0=1,2=1/0=2'")
    p.add_argument("--labels", help="direct sum of normal forms, e.g. 'TorsionInfinity:1,LineBundle:-2:1'")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--field", default="Q")
    p.add_argument("--scramble", action="store_true", help="apply a seeded random base change")
    p = add("normal-form", cmd_normal_form, "emit the normal form of a label")
    p.add_argument("--label", required=True, help="Family:k[:shift]")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--field", default="Q")
    p = add("check", cmd_check, "exhaustive oracle agreement over a prime field")
    p.add_argument("--max-dim", type=int, default=3)
    p.add_argument("--prime", type=int, default=2)
    p.add_argument("--window", type=int, default=4)
    p.add_argument("--d", default="-2,-1,1", help="comma list of d values")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (document.DocumentError, RepresentationError, UsageError) as exc:
        where = f"{args.file}: " if getattr(args, "file", None) else ""
        print(f"error: {where}{exc}", file=sys.stderr)
        return EXIT_INVALID
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
