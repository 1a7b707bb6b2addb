"""Command-line interface: ``monadkit <command> ...``.

Exit codes: 0 success, 1 domain failure (a check fails, engines disagree,
no certificate), 2 input failure (unreadable or malformed file, bad flags).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction

from . import __version__
from .cech import cech_hypercohomology
from .cohom import EngineDisagreement, cohomology_table, h1_module_generators
from .complexes import dual_monad, sym_part, tensor_total, validate_monad
from .exactla import RationalMatrix
from .graded import ShapeError
from .invariants import (alpha_invariant, chern, classify_b5, dim_g_a1, euler_char, spectrum_of,
                         stability_probe)
from .monadfile import MonadFileError, read_monad, write_monad
from .polyring import PolyError

SCHEMA_VERSION = 1
DEFAULT_SEED = 0


class DomainFailure(Exception):
    """Raised inside a command to exit with status 1."""


def _twist_range(text: str) -> list[int]:
    try:
        if ".." in text:
            lo, hi = (int(p) for p in text.split("..", 1))
        else:
            lo = hi = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected lo..hi, got {text!r}")
    if hi < lo:
        raise argparse.ArgumentTypeError("empty twist range")
    return list(range(lo, hi + 1))


def _report(command: str, **fields) -> dict:
    return {"schema_version": SCHEMA_VERSION, "command": command, **fields}


def _emit(args, report: dict, text: str) -> None:
    if getattr(args, "json", False):
        print(json.dumps(report, indent=2, default=str))
    else:
        print(text)


# ----------------------------------------------------------------------
# commands


def cmd_validate(args) -> int:
    m = read_monad(args.path)
    level = "fiberwise" if args.fiberwise else "algebraic"
    rep = validate_monad(m, level, args.mode)
    _emit(args, _report("validate", level=level, ok=rep.ok, checks=[c.to_json() for c in rep.checks]), str(rep))
    return 0 if rep.ok else 1


def cmd_cohomology(args) -> int:
    m = read_monad(args.path)
    kw = {}
    if args.engine != "ladder":
        kw = {"strategy": args.strategy, "seed": args.seed}
        if args.bound is not None:
            kw["bound"] = args.bound
    try:
        table = cohomology_table(m, args.twists, args.engine, **kw)
    except EngineDisagreement as exc:
        raise DomainFailure(f"engines disagree: {exc}")
    text = str(table)
    if args.engine != "ladder":
        text += f"\n(cech ranks: {args.strategy}, seed {args.seed})"
    _emit(args, _report("cohomology", cohomology=table.to_json()), text)
    return 0


def cmd_invariants(args) -> int:
    m = read_monad(args.path)
    cd = chern(m)
    out = {"chern": {"rank": cd.rank, "c1": cd.c1, "c2": cd.c2, "c3": cd.c3}}
    lines = [f"rank {cd.rank}, c1 = {cd.c1}, c2 = {cd.c2}, c3 = {cd.c3}"]
    if cd.c1 == 0:
        chis = {l: euler_char(cd, l) for l in args.twists}
        out["euler_characteristic"] = {str(l): v for l, v in chis.items()}
        lines.append("chi(E(l)): " + ", ".join(f"{l}: {v}" for l, v in chis.items()))
    if cd.rank == 2 and cd.c1 == 0:
        spec = spectrum_of(m)
        a = alpha_invariant(m)
        st = stability_probe(m)
        out.update(spectrum=list(spec.values), alpha_invariant=a, stability=st.to_json())
        lines.append(f"spectrum {spec}")
        lines.append(f"alpha-invariant {a}")
        lines.append(f"h0(E) = {st.h0_E}, h0(E(-1)) = {st.h0_E_minus1}: {st.verdict}")
    gens = h1_module_generators(m)
    out["h1_generators"] = gens
    lines.append("H^1_* generators in degrees " + (str(sorted(gens)) if gens else "(none)"))
    _emit(args, _report("invariants", **out), "\n".join(lines))
    return 0


def cmd_classify(args) -> int:
    m = read_monad(args.path)
    rep = classify_b5(m, strict=False)
    _emit(args, _report("classify", component=rep.to_json(), chern=list(rep.chern.as_tuple()),
                        spectrum=list(rep.spectrum.values), alpha_invariant=rep.alpha_invariant,
                        dimensions={"component": rep.dimension}), str(rep))
    if not rep.consistent:
        print("inconsistent: " + "; ".join(rep.notes), file=sys.stderr)
        return 1
    return 0


def cmd_end(args) -> int:
    m = read_monad(args.path)
    if args.sym:
        T, label = sym_part(m), "S^2 E"
    else:
        T, label = tensor_total(m, dual_monad(m)), "End E"
    res = cech_hypercohomology(T, args.twist, bound=args.bound, strategy=args.strategy, seed=args.seed)
    dims = res.as_list()
    text = "\n".join(f"h{i}({label}({args.twist})) = {d}" for i, d in enumerate(dims))
    text += f"\n(truncation bound {res.bound}, ranks {res.strategy}, seed {args.seed})"
    _emit(args, _report("end", object=label, twist=args.twist, cohomology=dims, bound=res.bound,
                        strategy=res.strategy, seed=args.seed), text)
    return 0


def cmd_symplectic(args) -> int:
    from .monadlib import Unsolvable, printed_j, solve_symplectic, verify_q
    m = read_monad(args.path)
    if args.printed_j or args.verify_q:
        if args.printed_j:
            q = printed_j()
        else:
            try:
                rows = json.loads(open(args.verify_q).read())
                q = RationalMatrix.from_dense([[Fraction(str(v)) for v in r] for r in rows])
            except (OSError, ValueError, TypeError) as exc:
                raise MonadFileError(f"cannot read matrix: {exc}")
        verdict = verify_q(m, q)
        text = "\n".join(f"{k}: {v}" for k, v in verdict.items())
        _emit(args, _report("symplectic", mode="verify", verdict=verdict), text)
        return 0
    try:
        cert = solve_symplectic(m, seed=args.seed)
    except Unsolvable as exc:
        raise DomainFailure(str(exc))
    text = "q =\n" + "\n".join("  " + " ".join(f"{str(v):>4}" for v in r) for r in cert.q.to_dense())
    text += f"\ng = {[[str(v) for v in r] for r in cert.g.to_dense()]}"
    text += f"\nh = {[[str(v) for v in r] for r in cert.h.to_dense()]}"
    text += f"\nseed {args.seed}; " + "; ".join(cert.notes)
    _emit(args, _report("symplectic", mode="solve", certificate=cert.to_json(), seed=args.seed), text)
    return 0


def _numbers(text: str, n: int) -> list[Fraction]:
    parts = [p for p in text.replace(" ", "").split(",") if p]
    if len(parts) != n:
        raise argparse.ArgumentTypeError(f"expected {n} comma-separated numbers, got {text!r}")
    return [Fraction(p) for p in parts]


def cmd_construct(args) -> int:
    from . import monadlib as ml
    fam = args.family
    try:
        if fam == "nullcorr":
            m = ml.make_null_correlation(_numbers(args.form, 6))
        elif fam == "rank4":
            vs = [_numbers(getattr(args, f"v{i}"), 2) for i in range(1, 5)]
            m = ml.make_rank4_charge1(ml.ExtensionData(*vs))
        elif fam == "split-rank4":
            m = ml.make_split_rank4()
        elif fam == "instanton":
            m = ml.make_instanton(args.charge)
        elif fam == "ein":
            params = {k: getattr(args, k) for k in ("f5", "g3", "h3", "l1") if getattr(args, k)}
            m = ml.make_ein(params)
        elif fam == "modified":
            m = ml.make_modified(args.a, args.k, seed=args.seed)
            print(f"seed {args.seed}", file=sys.stderr)
        else:  # pragma: no cover - argparse restricts choices
            raise MonadFileError(f"unknown family {fam}")
    except argparse.ArgumentTypeError as exc:
        raise MonadFileError(str(exc))
    except ml.ValidationFailed as exc:
        raise DomainFailure(str(exc))
    if args.output:
        write_monad(m, args.output)
        print(f"wrote {args.output}: {m}")
    else:
        from .monadfile import dumps
        sys.stdout.write(dumps(m))
    return 0


def cmd_dimension(args) -> int:
    rep = dim_g_a1(args.a)
    text = (f"a = {rep.a}: 4*C(a+3,3) - a - 1 = {rep.formula_value}\n"
            f"5 + h0(N(a)) + 2*(C(a+3,3) - 2) = {' + '.join(map(str, rep.breakdown))} = {sum(rep.breakdown)}"
            f" ({'agrees' if rep.identity_holds else 'DISAGREES'})\n"
            f"h1(End E) prediction {rep.h1_end_prediction} (epsilon {rep.epsilon})\n"
            f"8(a^2+1) - 3 = {rep.comparison}; formula is {'larger' if rep.exceeds_comparison else 'not larger'}")
    _emit(args, _report("dimension", dimensions=rep.to_json()), text)
    return 0 if rep.identity_holds else 1


# ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="monadkit", description="Monads of line-bundle sums on P^3.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("-v", "--verbose", action="store_true", help="log engine details to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    def with_json(sp):
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        return sp

    sp = with_json(sub.add_parser("validate", help="check a monad file"))
    sp.add_argument("path")
    sp.add_argument("--fiberwise", action="store_true", help="also check the fiberwise rank conditions")
    sp.add_argument("--mode", choices=["linear_exact", "sample", "groebner"])
    sp.set_defaults(func=cmd_validate)

    sp = with_json(sub.add_parser("cohomology", help="table of h^i(E(l))"))
    sp.add_argument("path")
    sp.add_argument("--twists", type=_twist_range, default=_twist_range("-4..0"), metavar="LO..HI")
    sp.add_argument("--engine", choices=["ladder", "cech", "both"], default="ladder")
    sp.add_argument("--strategy", choices=["exact", "modular", "hybrid"], default="modular")
    sp.add_argument("--bound", type=int)
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sp.set_defaults(func=cmd_cohomology)

    sp = with_json(sub.add_parser("invariants", help="Chern data, spectrum, alpha-invariant, generators"))
    sp.add_argument("path")
    sp.add_argument("--twists", type=_twist_range, default=_twist_range("-4..0"), metavar="LO..HI")
    sp.set_defaults(func=cmd_invariants)

    sp = with_json(sub.add_parser("classify", help="component of B(5)"))
    sp.add_argument("path")
    sp.set_defaults(func=cmd_classify)

    sp = with_json(sub.add_parser("end", help="cohomology of End E (or S^2 E) via Čech"))
    sp.add_argument("path")
    sp.add_argument("--twist", type=int, default=0)
    sp.add_argument("--sym", action="store_true", help="symmetric square instead of End")
    sp.add_argument("--strategy", choices=["exact", "modular", "hybrid"], default="modular")
    sp.add_argument("--bound", type=int)
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sp.set_defaults(func=cmd_end)

    sp = with_json(sub.add_parser("symplectic", help="solve for or verify a symplectic certificate"))
    sp.add_argument("path")
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--printed-j", action="store_true", help="verify the printed 6x6 matrix J")
    g.add_argument("--verify-q", metavar="FILE", help="verify a JSON matrix instead of solving")
    sp.set_defaults(func=cmd_symplectic)

    sp = sub.add_parser("construct", help="write a monad of a given family")
    sp.add_argument("family", choices=["nullcorr", "rank4", "split-rank4", "instanton", "ein", "modified"])
    sp.add_argument("-o", "--output")
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sp.add_argument("--form", default="1,0,0,0,0,1", help="2-form coefficients on xy,xz,xw,yz,yw,zw")
    for i, default in zip(range(1, 5), ("0,0", "0,0", "1,0", "0,1")):
        sp.add_argument(f"--v{i}", default=default)
    sp.add_argument("--charge", type=int, default=5)
    sp.add_argument("--a", type=int, default=2)
    sp.add_argument("--k", type=int, default=1)
    for name in ("f5", "g3", "h3", "l1"):
        sp.add_argument(f"--{name}")
    sp.set_defaults(func=cmd_construct)

    sp = with_json(sub.add_parser("dimension", help="dimension formula for G(a,1)"))
    sp.add_argument("--a", type=int, default=2)
    sp.set_defaults(func=cmd_dimension)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except (MonadFileError, PolyError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except DomainFailure as exc:
        print(f"failed: {exc}", file=sys.stderr)
        return 1
    except (ShapeError, ValueError, RuntimeError) as exc:
        print(f"failed: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
