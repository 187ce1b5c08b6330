"""Command-line front end.

Exit status: 0 when every identity holds, 1 when one fails, 2 on bad input
or a failed precondition (such as ``q`` too small).
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from . import catalog
from .arrangement import Arrangement, bounded_regions, char_poly, rank, regions, verify_interval_convolution, verify_region_convolution
from .finite_field import GuardError, q_summary, verify_point_count, verify_reciprocity
from .matroid import Matroid, MatroidError, subset_corank_poly, tutte_poly, verify_krs, verify_kung_identity1, verify_kung_identity5
from .polynomial import Polynomial
from .poset import Poset, PosetError, verify_conjugation_homomorphism
from .report import SCHEMA_VERSION

KINDS = ("conjugation", "arr-conv", "region-conv", "finite-field", "reciprocity", "krs", "kung1", "kung5")


class InputError(Exception):
    pass


def _load(path: str, loader):
    try:
        return loader(path)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    except (OSError, KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{path}: {exc}") from exc


def _primes(text: str | None) -> list[int]:
    if not text:
        return []
    try:
        return sorted({int(v) for v in text.split(",") if v.strip()})
    except ValueError as exc:
        raise InputError(f"bad --q list {text!r}") from exc


def random_point_poly(rng: random.Random, variables=("s", "t"), terms: int = 3, degree: int = 2) -> Polynomial:
    out = Polynomial.const(rng.randint(-3, 3))
    for _ in range(terms):
        exps = {v: rng.randint(0, degree) for v in variables}
        out = out + Polynomial.monomial(rng.randint(-3, 3), exps)
    return out


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps({"schema": SCHEMA_VERSION, **payload}, indent=2, sort_keys=False))
    else:
        print(text)


def cmd_charpoly(args) -> int:
    A = _load(args.input, Arrangement.load)
    chi = char_poly(A)
    _emit(args, {"command": "charpoly", "charpoly": str(chi)}, str(chi))
    return 0


def cmd_regions(args) -> int:
    A = _load(args.input, Arrangement.load)
    r, b = regions(A), bounded_regions(A)
    _emit(args, {"command": "regions", "regions": r, "bounded_regions": b, "rank": rank(A),
                 "charpoly": str(char_poly(A))}, f"r={r}, b={b}")
    return 0


def cmd_tutte(args) -> int:
    M = _load(args.input, Matroid.load)
    T = tutte_poly(M)
    _emit(args, {"command": "tutte", "tutte": str(T)}, str(T))
    return 0


def cmd_sc(args) -> int:
    M = _load(args.input, Matroid.load)
    sc = subset_corank_poly(M)
    _emit(args, {"command": "sc", "subset_corank": str(sc)}, str(sc))
    return 0


def _verify_reports(args):
    kind = args.kind
    if kind == "conjugation":
        P = _load(args.input, Poset.load)
        rng = random.Random(args.seed)
        out = []
        for i in range(args.trials):
            f = {x: random_point_poly(rng) for x in range(P.size)}
            g = {x: random_point_poly(rng) for x in range(P.size)}
            rep = verify_conjugation_homomorphism(P, f, g)
            rep.details["trial"] = i
            out.append(rep)
        return out
    if kind in ("arr-conv", "region-conv", "finite-field", "reciprocity"):
        A = _load(args.input, Arrangement.load)
        if kind == "arr-conv":
            return [verify_interval_convolution(A)]
        if kind == "region-conv":
            return [verify_region_convolution(A)]
        qs = _primes(args.q)
        if not qs:
            raise InputError(f"verify {kind} needs --q")
        check = verify_point_count if kind == "finite-field" else verify_reciprocity
        return [check(A, q, workers=args.workers) for q in qs]
    M = _load(args.input, Matroid.load)
    return [{"krs": verify_krs, "kung1": verify_kung_identity1, "kung5": verify_kung_identity5}[kind](M)]


def cmd_verify(args) -> int:
    reports = _verify_reports(args)
    ok = all(r.passed for r in reports)
    if args.json:
        payload = {"command": "verify", "kind": args.kind, "pass": ok,
                   "reports": [r.to_dict() for r in reports]}
        print(json.dumps({"schema": SCHEMA_VERSION, **payload}, indent=2))
    else:
        for r in reports:
            print(f"{r.summary()}  ({r.elapsed:.3f}s)" if "\n" not in r.summary() else r.summary())
    return 0 if ok else 1


def cmd_catalog(args) -> int:
    out = Path(args.out)
    (out / "arrangements").mkdir(parents=True, exist_ok=True)
    (out / "matroids").mkdir(parents=True, exist_ok=True)
    for name, A in catalog.arrangements().items():
        (out / "arrangements" / f"{name}.json").write_text(json.dumps(A.to_json()) + "\n")
    for name, M in catalog.matroids().items():
        safe = name.replace("(", "").replace(")", "").replace(",", "-")
        (out / "matroids" / f"{safe}.json").write_text(json.dumps(M.to_json()) + "\n")
    print(f"wrote catalog to {out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--workers", type=int, default=1, help="processes for exhaustive scans")
    common.add_argument("--q", help="comma-separated primes, e.g. 5,7")

    parser = argparse.ArgumentParser(prog="mobconj", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, fn, what in [
        ("charpoly", cmd_charpoly, "arrangement"),
        ("regions", cmd_regions, "arrangement"),
        ("tutte", cmd_tutte, "matroid"),
        ("sc", cmd_sc, "matroid"),
    ]:
        p = sub.add_parser(name, parents=[common])
        p.add_argument("input", help=f"{what} JSON file")
        p.set_defaults(func=fn)
    p = sub.add_parser("verify", parents=[common])
    p.add_argument("kind", choices=KINDS)
    p.add_argument("input", help="poset, arrangement or matroid JSON file")
    p.add_argument("--trials", type=int, default=10, help="random trials for 'conjugation'")
    p.set_defaults(func=cmd_verify)
    p = sub.add_parser("catalog", help="write the built-in catalog as JSON files")
    p.add_argument("--out", default="catalog")
    p.set_defaults(func=cmd_catalog)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except GuardError as exc:
        print(f"guard error: {exc}", file=sys.stderr)
        return 2
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except (PosetError, MatroidError, ValueError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
