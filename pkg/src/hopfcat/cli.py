"""``hopfcat`` command line: verify files, compute functor images, run cross-checks, demos.

Exit status: 0 when every check passes, 1 when a check fails, 2 on parse or usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import groupcase as gc
from .fileio import (
    AxiomError, ParseError, bundled_names, dump_structure, load_hopf, load_structure, parse_hopf,
    resolve_hopf_path,
)
from .functors import (
    ZeroIntegral, check_adjunction, check_bimodule_isos, check_equalizer, check_first_periodicity,
    fd_equivalence_formula, hat, prime, second_periodicity_triangle, stability_transport,
)
from .hopf import GroupTable, verify_hopf_axioms
from .instances import adjoint_yd_module, seed_from_env, sweep_instances
from .report import Report
from .reps import verify_bistructure, verify_comodule, verify_contramodule, verify_module
from .yd import (
    ChargeMismatch, NotVerified, YdContramodule, YdModule, check_sigma, check_tau_center,
    check_yd_contramodule, check_yd_module, right_integrals, sigma,
)

PROPERTIES = ("adjunction", "bimodule-iso", "periodicity1", "periodicity2", "tau-center",
              "equalizer", "fd-equivalence", "stability-transport")


class UsageError(ValueError):
    pass


def _out(text: str = ""):
    print(text, flush=True)


def _emit(reports: list[Report], json_path: str | None) -> int:
    for r in reports:
        _out(r.format_text())
    if json_path:
        Path(json_path).write_text(json.dumps([r.to_dict() for r in reports], indent=2, ensure_ascii=False)
                                   + "\n", encoding="utf-8")
    return 0 if all(r.passed for r in reports) else 1


def _is_structure(path: str) -> bool:
    p = Path(path)
    if p.suffix == ".struct":
        return True
    if p.is_file():
        for line in p.read_text(encoding="utf-8").splitlines():
            toks = line.split("#", 1)[0].split()
            if toks:
                return toks[0] == "structure"
    return False


def _module_charge(sf, charge: int | None, shift: int) -> int:
    """Charge of the stored object; ``charge`` is the functor index i and ``shift`` the offset."""
    if sf.charge is not None:
        if charge is not None and sf.charge != charge + shift:
            raise UsageError(f"{sf.name} declares charge {sf.charge}, but --charge {charge} "
                             f"needs {charge + shift}")
        return sf.charge
    return (0 if charge is None else charge) + shift


def _yd_module(sf, charge: int | None) -> YdModule:
    if sf.kind != "bistructure" or sf.comodule is None:
        raise UsageError(f"{sf.name}: expected a module + comodule structure file")
    return YdModule.make(sf.module, sf.comodule, _module_charge(sf, charge, -1))


def _yd_contramodule(sf, charge: int | None) -> YdContramodule:
    if sf.kind != "bistructure" or sf.contramodule is None:
        raise UsageError(f"{sf.name}: expected a module + contramodule structure file")
    return YdContramodule.make(sf.module, sf.contramodule, _module_charge(sf, charge, 1))


def _hopf_ref(sf, source: Path) -> str:
    """How an output file should point at the algebra of ``sf``."""
    ref = sf.hopf_ref
    for cand in (source.parent / ref, Path(ref)):
        if cand.is_file():
            return str(cand.resolve())
    return ref  # a bundled name


# ---------------------------------------------------------------------------
# verify


def cmd_verify(args) -> int:
    reports = []
    for path in args.paths:
        if args.suite == "hopf":
            h = parse_hopf(resolve_hopf_path(path).read_text(encoding="utf-8"), source=path, verify=False)
            reports.append(verify_hopf_axioms(h))
            continue
        sf = load_structure(path)
        if args.suite == "module":
            obj = sf.module
            rep = verify_module(obj) if obj is not None else None
        elif args.suite == "comodule":
            obj = sf.comodule
            rep = verify_comodule(obj) if obj is not None else None
        elif args.suite == "contramodule":
            obj = sf.contramodule
            rep = verify_contramodule(obj) if obj is not None else None
        else:
            b = sf.bistructure
            i = args.charge if args.charge is not None else (sf.charge if sf.charge is not None else -1)
            rep = verify_bistructure(b)
            check = check_yd_module if b.comodule is not None else check_yd_contramodule
            rep.extend(check(b, i), f"charge {i}.")
            rep.suite = f"YD conditions at charge {i}: {sf.name}"
        if rep is None:
            raise UsageError(f"{path} has no {args.suite} structure")
        reports.append(rep)
    return _emit(reports, args.json)


# ---------------------------------------------------------------------------
# compute


def _write(out_dir: Path, stem: str, text: str) -> Path:
    out_dir.mkdir(parents=True, exist_ok=True)
    p = out_dir / f"{stem}.struct"
    p.write_text(text, encoding="utf-8")
    return p


def cmd_compute(args) -> int:
    reports = []
    out_dir = Path(args.out)
    for path in args.paths:
        rep = Report(f"compute {args.what}: {path}")
        if args.what == "integrals":
            h = load_hopf(path)
            ints = right_integrals(h)
            J, K = ints.J, ints.K
            _out(f"{h.name}: dim J = {J.dim}, dim K = {K.space.dim}")
            for k in range(J.dim):
                vec = J.basis[:, k]
                _out("  J basis: " + " + ".join(f"({v})*{lab}" for v, lab in zip(vec, J.ambient.labels) if v != 0))
            rep.add("dim-J", "the space of right integrals on H is a line", J.dim == 1, detail=f"dim J = {J.dim}")
            rep.add("dim-K", "the coinvariants of the left-integral relations form a line", K.space.dim == 1,
                    detail=f"dim K = {K.space.dim}")
            reports.append(rep)
            continue
        sf = load_structure(path)
        src = Path(path)
        ref = _hopf_ref(sf, src)
        if args.what == "hat":
            m = _yd_module(sf, args.charge)
            img = hat(m)
            c = img.carrier
            _out(f"{sf.name}: dim M = {m.dim}, dim hat(M) = {c.dim}, charge {m.charge} -> {c.charge}")
            p = _write(out_dir, f"{src.stem}.hat", dump_structure(ref, f"hat({sf.name})", c.module,
                                                                  contramodule=c.contramodule, charge=c.charge))
            _out(f"  wrote {p}")
            rep.add("verified", "hat(M) is a YD contramodule of charge +2", c.verified,
                    detail=f"sigma = id: {str(sigma(c).is_identity()).lower()}")
        elif args.what == "prime":
            n = _yd_contramodule(sf, args.charge)
            img = prime(n)
            c = img.carrier
            _out(f"{sf.name}: dim N = {n.dim}, dim N' = {c.dim}, charge {n.charge} -> {c.charge}")
            p = _write(out_dir, f"{src.stem}.prime", dump_structure(ref, f"prime({sf.name})", c.module,
                                                                    comodule=c.comodule, charge=c.charge))
            _out(f"  wrote {p}")
            rep.add("descends", "action and coaction descend to H ⊙_H N",
                    img.action_descends and img.coaction_descends)
            rep.add("verified", "N' is a YD module of charge -2", c.verified)
        elif args.what == "tau":
            m = _yd_module(sf, args.charge)
            rep.extend(check_tau_center(m))
        else:
            b = sf.bistructure
            x = _yd_module(sf, args.charge) if b.comodule is not None else _yd_contramodule(sf, args.charge)
            ident = sigma(x).is_identity()
            _out(f"{sf.name}: sigma = id: {str(ident).lower()}")
            rep.extend(check_sigma(x))
            rep.add("identity", "σ = id (stable)", ident, detail=f"sigma = id: {str(ident).lower()}")
        reports.append(rep)
    return _emit(reports, args.json)


# ---------------------------------------------------------------------------
# check


def _instances(path: str, charge: int | None, count: int, seed: int, max_dim: int):
    """Structure file -> that module; algebra -> its adjoint module and seeded random ones."""
    if _is_structure(path):
        sf = load_structure(path)
        return sf.hopf.name, [_yd_module(sf, charge)]
    h = load_hopf(path)
    i = 0 if charge is None else charge
    out = []
    adj = adjoint_yd_module(h, i - 1)
    if adj.verified and adj.dim <= max_dim:
        out.append(adj)
    out += sweep_instances(h, i - 1, count, seed, max_dim=max_dim)
    return h.name, out


def _run_property(prop: str, m: YdModule, no_twist: bool) -> Report:
    if prop == "adjunction":
        return check_adjunction(m).report
    if prop == "bimodule-iso":
        return check_bimodule_isos(m.comodule, twists=not no_twist)
    if prop == "periodicity1":
        return check_first_periodicity(m)
    if prop == "periodicity2":
        return second_periodicity_triangle(m)
    if prop == "tau-center":
        return check_tau_center(m)
    if prop == "equalizer":
        return check_equalizer(m)
    if prop == "fd-equivalence":
        try:
            return fd_equivalence_formula(m.comodule, no_twist=no_twist).report
        except ZeroIntegral as exc:
            rep = Report("fd formula")
            rep.add("integral", "a nonzero right integral exists", False, str(exc))
            return rep
    return stability_transport(m)


def cmd_check(args) -> int:
    paths = args.paths or bundled_names()
    seed = seed_from_env(args.seed)
    if args.property == "tau-center" and args.charge not in (None, 0):
        raise UsageError("tau-center is defined for aYD modules (--charge 0)")
    max_dim = args.max_dim or (2 if args.property == "bimodule-iso" else 4)
    reports = []
    for path in paths:
        name, insts = _instances(path, args.charge, args.count, seed, max_dim)
        rep = Report(f"{args.property} on {name}" + (" (no twist)" if args.no_twist else ""))
        for k, m in enumerate(insts):
            rep.extend(_run_property(args.property, m, args.no_twist), f"#{k}[dim {m.dim}].")
        reports.append(rep)
    return _emit(reports, args.json)


# ---------------------------------------------------------------------------
# demo


def _group(name: str):
    if name == "Z":
        return gc.Z
    return GroupTable.cyclic(2) if name == "Z2" else GroupTable.symmetric(3)


def cmd_demo(args) -> int:
    group = _group(args.group)
    seed = seed_from_env(args.seed)
    if args.scenario == "kgeq":
        if group is gc.Z:
            rep = Report("graded engine on ℤ")
            v = gc.direct_sum(gc.integer_point(-1, 2), gc.integer_point(4))
            w = gc.hat_graded(v)
            rep.add("components", "hat_graded leaves every component unchanged",
                    w.grades == v.grades and np.array_equal(w.act(1), v.act(1)))
            rep.add("assembly", "the contramodule side assembles components as a product",
                    w.assembly == "product")
            try:
                gc.gamma_c(v)
                rep.add("infinite", "kℤ has no finite structure constants", False)
            except gc.InfiniteGroup:
                rep.add("infinite", "kℤ has no finite structure constants", True)
            return _emit([rep], args.json)
        cmp = gc.compare_engines(group, args.count, seed)
        n_ayd = sum(v.ayd for v in cmp.graded)
        n_st = sum(v.stable for v in cmp.graded)
        _out(f"k{group.name}: {len(cmp.instances)} instances, {n_ayd} aYD, {n_st} stable")
        return _emit([cmp.report], args.json)
    return _emit([_contratrace_demo(group)], args.json)


def _contratrace_demo(group) -> Report:
    if group is gc.Z:
        v = gc.direct_sum(gc.integer_point(3), gc.integer_point(5))
        w = gc.integer_point(5, 2)
        classes = list(range(0, 9))
    else:
        v = gc.direct_sum(*(gc.class_space(group, c[0]) for c in group.conjugacy_classes()))
        w = gc.class_space(group, group.conjugacy_classes()[-1][0])
        classes = [c[0] for c in group.conjugacy_classes()]
    coeffs = [gc.class_coefficient(group, g) for g in classes]
    led_v = gc.contratrace_eval(v, coeffs)
    led_w = gc.contratrace_eval(w, coeffs)
    led_vw = gc.contratrace_eval(gc.direct_sum(v, w), coeffs)
    _out("F(V) per class:")
    _out(led_v.format_text())
    rep = Report(f"contratrace on {group.name}")
    rep.extend(led_v.report)
    add = all(a[1] + b[1] == c[1] for a, b, c in zip(led_v.rows, led_w.rows, led_vw.rows))
    rep.add("additive", "F(V⊕W) = F(V) ⊕ F(W) classwise", add,
            detail=f"totals {led_v.total} + {led_w.total} = {led_vw.total}")
    return rep


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hopfcat", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run an axiom suite on files")
    v.add_argument("paths", nargs="+")
    v.add_argument("--suite", required=True, choices=("hopf", "module", "comodule", "contramodule", "yd"))
    v.add_argument("--charge", type=int)
    v.add_argument("--json")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("compute", help="compute integrals, functor images, τ or σ")
    c.add_argument("paths", nargs="+")
    c.add_argument("--what", required=True, choices=("integrals", "hat", "prime", "tau", "sigma"))
    c.add_argument("--charge", type=int, help="functor index i (hat takes charge i-1 to i+1)")
    c.add_argument("--out", default=".", help="directory for computed structure files")
    c.add_argument("--json")
    c.set_defaults(func=cmd_compute)

    k = sub.add_parser("check", help="run a cross-check on files or the bundled corpus")
    k.add_argument("paths", nargs="*")
    k.add_argument("--property", required=True, choices=PROPERTIES)
    k.add_argument("--charge", type=int, help="functor index i; random modules have charge i-1")
    k.add_argument("--no-twist", action="store_true", help="drop the S² twists (negative control)")
    k.add_argument("--count", type=int, default=3)
    k.add_argument("--max-dim", type=int)
    k.add_argument("--seed", type=int, default=None)
    k.add_argument("--json")
    k.set_defaults(func=cmd_check)

    d = sub.add_parser("demo", help="group-algebra demonstrations")
    d.add_argument("--group", required=True, choices=("Z2", "S3", "Z"))
    d.add_argument("--scenario", required=True, choices=("kgeq", "contratrace"))
    d.add_argument("--count", type=int, default=20)
    d.add_argument("--seed", type=int, default=None)
    d.add_argument("--json")
    d.set_defaults(func=cmd_demo)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "seed", None) is None and hasattr(args, "seed"):
        args.seed = seed_from_env()
    try:
        return args.func(args)
    except (ParseError, UsageError, ChargeMismatch, FileNotFoundError) as exc:
        print(f"hopfcat: error: {exc}", file=sys.stderr)
        return 2
    except AxiomError as exc:
        print(exc.report.format_text())
        print(f"hopfcat: {exc}", file=sys.stderr)
        return 1
    except NotVerified as exc:
        print(f"hopfcat: input fails its checks: {exc}", file=sys.stderr)
        return 1
    except BrokenPipeError:
        sys.stderr.close()
        return 0


if __name__ == "__main__":
    sys.exit(main())
