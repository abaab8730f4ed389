"""Command-line surface.

Subcommands: cosets, dualbases, solve-t, forcing, probe-naive, closed-form,
iterated, selftest.  Reports are deterministic: a fixed seed and config
produce byte-identical output.  Exit status: 0 when every requested check
passes, 1 when a check fails (including infeasibility where a theorem
guarantees feasibility), 2 for configuration errors.

Realizations are named ``perm:N`` (permutation realization of S_N over ZZ,
the default), ``root:A:n`` / ``root:BC:n`` / ``root:D:n`` / ``root:I2:m``
(root realizations), or a path to a JSON config file with keys
coxeter_matrix, variables, roots, coroots (see realization_from_config).
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Sequence

from . import typea
from .cosets import (all_atomic_cosets, atomic_coset, enumerate_cosets,
                     grassmannian_catalog)
from .coxeter import (coxeter_A, coxeter_BC, coxeter_D, dihedral, longest_element,
                      symmetric_group)
from .frobenius import divisibility_witness, dual_bases, frobenius_witness
from .leibniz import (Infeasible, LEFT, RIGHT, atom_solver, certificate_to_dict,
                      closed_form_type_a, iterated_leibniz, naive_rule_probe,
                      solve_T, transport_certificate)
from .poly import random_polynomial
from .realization import (Realization, permutation_realization,
                          realization_from_config, root_realization)


class ConfigError(Exception):
    pass


def load_realization(spec: str) -> Realization:
    if spec.startswith("perm:"):
        return permutation_realization(int(spec.split(":")[1]))
    if spec.startswith("root:"):
        _, typ, arg = spec.split(":")
        builders = {"A": coxeter_A, "BC": coxeter_BC, "D": coxeter_D, "I2": dihedral}
        if typ not in builders:
            raise ConfigError(f"unknown root realization type {typ!r}")
        return root_realization(builders[typ](int(arg)))
    try:
        with open(spec) as fh:
            return realization_from_config(json.load(fh))
    except OSError as exc:
        raise ConfigError(f"cannot read realization config {spec!r}: {exc}") from exc
    except (KeyError, ValueError) as exc:
        raise ConfigError(f"bad realization config {spec!r}: {exc}") from exc


def parse_word(r: Realization, text: str) -> list[int]:
    """Parse a word like 'sut' (single-letter names) or 's1,s2' (commas)."""
    if not text or text == "e":
        return []
    if "," in text:
        return [r.system.gen_index(p) for p in text.split(",")]
    if all(len(nm) == 1 for nm in r.system.names):
        return [r.system.gen_index(ch) for ch in text]
    raise ConfigError(f"cannot parse word {text!r}; use comma-separated names")


def emit(report: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(report, indent=2))
        return
    def walk(obj, indent=0):
        pad = "  " * indent
        if isinstance(obj, dict):
            for k, v in obj.items():
                if isinstance(v, (dict, list)):
                    print(f"{pad}{k}:")
                    walk(v, indent + 1)
                else:
                    print(f"{pad}{k}: {v}")
        elif isinstance(obj, list):
            for v in obj:
                if isinstance(v, (dict, list)):
                    walk(v, indent + 1)
                    print()
                else:
                    print(f"{pad}- {v}")
        else:
            print(f"{pad}{obj}")
    walk(report)


# -- subcommands -------------------------------------------------------------------


def cmd_cosets(args) -> int:
    r = load_realization(args.realization)
    system = r.system
    I = system.subset(args.I)
    J = system.subset(args.J)
    M = system.subset(args.M) if args.M else frozenset(range(system.rank))
    records = []
    for c in enumerate_cosets(system, I, J, M, args.cap):
        records.append({
            "min_word": c.min.names(),
            "max_word": c.max.names(),
            "leftred": system.subset_names(c.leftred()),
            "rightred": system.subset_names(c.rightred()),
            "core_min_word": c.core().min.names(),
            "atomic": c.is_atomic(),
            "y_word": c.y().names(),
        })
    emit(records if args.format == "json" else {"cosets": records}, args.format)
    return 0


def cmd_dualbases(args) -> int:
    r = load_realization(args.realization)
    M = r.system.subset(args.M)
    J = r.system.subset(args.J)
    db = dual_bases(r, M, J, cap=args.cap)
    delta_ok = db.verify_delta()
    report = {
        "M": r.system.subset_names(M),
        "J": r.system.subset_names(J),
        "method": db.method,
        "pairs": [{"c": str(c), "d": str(d)} for c, d in zip(db.cs, db.ds)],
        "delta_check": "PASS" if delta_ok else "FAIL",
    }
    emit(report, args.format)
    return 0 if delta_ok else 1


def _atom_from_args(r, args):
    M = r.system.subset(args.M)
    s = r.system.gen_index(args.s)
    return atomic_coset(r.system, M, s, args.cap)


def cmd_solve_t(args) -> int:
    r = load_realization(args.realization)
    atom = _atom_from_args(r, args)
    f = r.ring.parse(args.f)
    direction = LEFT if args.direction == "leftward" else RIGHT
    out = solve_T(r, atom, f, direction, args.cap)
    if isinstance(out, Infeasible):
        emit({"status": "infeasible", "reason": out.reason}, args.format)
        return 1
    emit(certificate_to_dict(out), args.format)
    return 0


def cmd_forcing(args) -> int:
    r = load_realization(args.realization)
    atom = _atom_from_args(r, args)
    f = r.ring.parse(args.f)
    out = atom_solver(r, atom, args.cap).forcing(f)
    if isinstance(out, Infeasible):
        emit({"status": "infeasible", "reason": out.reason}, args.format)
        return 1
    report = {
        "atom_min_word": atom.coset.min.names(),
        "f": str(out.f),
        "coords": [{"coset_min_word": q.min.names(), "b": str(b),
                    "invariance": r.system.subset_names(q.rightred())}
                   for q, b in sorted(out.coords.items(),
                                      key=lambda kv: (-kv[0].min.length(), kv[0].min.word()))],
        "verified_on": out.verified_on,
        "unique": out.unique,
    }
    emit(report, args.format)
    return 0


def cmd_probe_naive(args) -> int:
    r = load_realization(args.realization)
    system = r.system
    I = system.subset(args.I)
    J = system.subset(args.J)
    w = system.from_word(parse_word(r, args.min_word))
    from .cosets import coset_of
    q = coset_of(system, I, w, J, args.cap)
    twist = parse_word(r, args.twist) if args.twist else None
    res = naive_rule_probe(r, q, args.shape, fdeg=args.degmax,
                           twist=twist, cap=args.cap)
    report = {
        "coset_min_word": q.min.names(),
        "shape": args.shape,
        "feasible": res.feasible,
        "detail": res.detail,
    }
    if res.counterexample:
        f, g = res.counterexample
        report["counterexample"] = {"f": str(f), "g": str(g)}
    emit(report, args.format)
    return 0


def cmd_closed_form(args) -> int:
    r = permutation_realization(args.a + args.b)
    cat = grassmannian_catalog(args.a, args.b, args.cap)
    solver = atom_solver(r, cat.atom, args.cap)
    checks = []
    ok = True
    for i in range(args.imax + 1):
        cert = closed_form_type_a(r, cat, i, verify=True, cap=args.cap)
        f = typea.complete_symmetric(r.ring, list(range(args.a)), i)
        via = solver.solve(f)
        agree = (not isinstance(via, Infeasible)
                 and all(via.terms[q] == cert.terms[q] for q in cert.terms)
                 and via.unique)
        ok = ok and agree
        checks.append({"i": i, "verified_on": cert.verified_on,
                       "solver_agrees": agree,
                       "status": "PASS" if agree else "FAIL"})
    emit({"a": args.a, "b": args.b, "checks": checks,
          "status": "PASS" if ok else "FAIL"}, args.format)
    return 0 if ok else 1


def cmd_iterated(args) -> int:
    r = load_realization(args.realization)
    word = parse_word(r, args.word)
    f = r.ring.parse(args.f)
    T = iterated_leibniz(r, word, f)
    entries = [{"x": x.names(), "T": str(v)}
               for x, v in sorted(T.items(), key=lambda kv: (kv[0].length(), kv[0].word()))]
    emit({"word": args.word, "f": args.f, "terms": entries}, args.format)
    return 0


# -- selftest suites ------------------------------------------------------------------


def _suite_relations(r, rng, lines) -> bool:
    from .poly import random_polynomial
    ok = True
    for trial in range(20):
        f = random_polynomial(r.ring, rng, 4)
        g = random_polynomial(r.ring, rng, 4)
        for s in range(min(3, r.system.rank)):
            lhs = r.demazure(s, f * g)
            rhs = r.act_gen(s, f) * r.demazure(s, g) + r.demazure(s, f) * g
            if lhs != rhs:
                ok = False
    lines.append(("twisted Leibniz (random)", ok))
    f = random_polynomial(r.ring, rng, 5)
    checks = [
        ("del_s(s f) = -del_s f", r.demazure(0, r.act_gen(0, f)) == -r.demazure(0, f)),
        ("s del_s f = del_s f", r.act_gen(0, r.demazure(0, f)) == r.demazure(0, f)),
        ("del_s del_s = 0", r.demazure(0, r.demazure(0, f)).is_zero()),
        ("alpha_s del_s f = f - s f",
         r.roots[0] * r.demazure(0, f) == f - r.act_gen(0, f)),
        ("del_st(s f) + del_ts(f) = t del_st(f)",
         r.demazure_word([0, 1], r.act_gen(0, f)) + r.demazure_word([1, 0], f)
         == r.act_gen(1, r.demazure_word([0, 1], f))),
    ]
    for name, val in checks:
        lines.append((name, val))
        ok = ok and val
    return ok


def _suite_s4_examples(rng, lines) -> bool:
    r = permutation_realization(4)
    W = r.system
    ok = True
    atom22 = atomic_coset(W, frozenset({0, 1, 2}), 1)
    sol = atom_solver(r, atom22)
    su = frozenset({0, 2})
    q_sub = next(q for q in sol.lower if q.min.names() == "t")
    q_min = next(q for q in sol.lower if q.min.names() == "e")
    good = True
    for d in range(4):
        for f in r.invariant_basis(su, d):
            cert = sol.solve(f)
            if isinstance(cert, Infeasible):
                good = False
                continue
            Tq = r.act([0, 2], r.demazure(1, f))
            Tr = r.demazure_word([1, 0, 2, 1], f) - r.demazure_word([0, 2, 1], Tq)
            good = good and cert.terms[q_sub] == Tq and cert.terms[q_min] == Tr
    lines.append(("S2xS2 atom: T_q = su del_t, T_r = del_tsut - del_sut su del_t", good))
    ok = ok and good

    atom31 = atomic_coset(W, frozenset({0, 1, 2}), 0)
    sol31 = atom_solver(r, atom31)
    good = True
    for d in range(4):
        for f in r.invariant_basis(frozenset({0, 1}), d):
            cert = sol31.solve(f)
            if isinstance(cert, Infeasible):
                good = False
                continue
            (q,) = sol31.lower
            good = good and cert.terms[q] == r.act([0, 1], r.demazure(2, f))
    lines.append(("S3xS1 atom: T_q = st del_u", good))
    ok = ok and good

    q = next(c for c in enumerate_cosets(W, su, su) if c.min.names() == "t")
    res = naive_rule_probe(r, q, "two_term", fdeg=3)
    good = (not res.feasible and res.counterexample is not None
            and res.counterexample[1].degree() == 1
            and r.demazure(1, res.counterexample[1]) == r.ring.one())
    lines.append(("naive rule fails at qmin = sut (linear g, del_t g = 1)", good))
    ok = ok and good
    res2 = naive_rule_probe(r, q, "two_term", fdeg=3, twist=[1])
    lines.append(("restricted rule holds for f in t(R^su)", res2.feasible))
    return ok and res2.feasible


def _suite_frobenius(rng, lines) -> bool:
    import itertools
    r = permutation_realization(4)
    ok = True
    for msize in range(4):
        for M in itertools.combinations(range(3), msize):
            for jsize in range(msize + 1):
                for J in itertools.combinations(M, jsize):
                    db = dual_bases(r, set(M), set(J))
                    good = db.verify_delta()
                    for d in range(3):
                        for b in r.invariant_basis(set(J), d):
                            good = good and db.reproducing_check(b)
                    if not good:
                        ok = False
    lines.append(("S4 parabolic pairs: delta + reproducing (deg <= 2)", ok))
    return ok


def cmd_selftest(args) -> int:
    rng = random.Random(args.seed)
    lines: list[tuple[str, bool]] = []
    suites = {
        "relations": lambda: _suite_relations(load_realization(args.realization), rng, lines),
        "s4-examples": lambda: _suite_s4_examples(rng, lines),
        "frobenius": lambda: _suite_frobenius(rng, lines),
    }
    if args.suite == "all":
        selected = list(suites)
    elif args.suite in suites:
        selected = [args.suite]
    else:
        raise ConfigError(f"unknown suite {args.suite!r}; "
                          f"choose from {', '.join(suites)} or all")
    overall = True
    for name in selected:
        overall = suites[name]() and overall
    report = {
        "seed": args.seed,
        "suites": selected,
        "checks": [{"name": n, "status": "PASS" if v else "FAIL"} for n, v in lines],
        "status": "PASS" if overall else "FAIL",
    }
    emit(report, args.format)
    return 0 if overall else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="demazure",
        description="Exact Demazure / double-coset / atomic-Leibniz calculator")
    ap.add_argument("--realization", default="perm:4",
                    help="perm:N, root:TYPE:RANK, or a JSON config path")
    ap.add_argument("--degmax", type=int, default=8, help="degree bound for searches")
    ap.add_argument("--cap", type=int, default=10080, help="parabolic enumeration cap")
    ap.add_argument("--format", choices=("json", "text"), default="json")
    ap.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cosets", help="enumerate (I,J)-cosets")
    p.add_argument("--type", dest="typ", default="A", help="(accepted for convenience)")
    p.add_argument("--n", type=int, default=None, help="use the permutation realization of S_n")
    p.add_argument("--I", required=True)
    p.add_argument("--J", required=True)
    p.add_argument("--M", default=None)
    p.set_defaults(func=cmd_cosets)

    p = sub.add_parser("dualbases", help="dual bases for R^M in R^J")
    p.add_argument("--M", required=True)
    p.add_argument("--J", required=True)
    p.set_defaults(func=cmd_dualbases)

    for name, fn in (("solve-t", cmd_solve_t), ("forcing", cmd_forcing)):
        p = sub.add_parser(name, help=f"{name} for an atomic coset")
        p.add_argument("--M", required=True, help="generators of M, e.g. s,t,u")
        p.add_argument("--s", required=True, help="the generator s of the atom")
        p.add_argument("--f", required=True, help="polynomial in canonical text form")
        if name == "solve-t":
            p.add_argument("--direction", choices=("rightward", "leftward"),
                           default="rightward")
        p.set_defaults(func=fn)

    p = sub.add_parser("probe-naive", help="probe Leibniz shapes for a coset")
    p.add_argument("--I", required=True)
    p.add_argument("--J", required=True)
    p.add_argument("--min-word", required=True, help="word of an element of the coset")
    p.add_argument("--shape", choices=("two_term", "atomic"), default="two_term")
    p.add_argument("--twist", default=None, help="restrict f to w(R^J) for this word")
    p.set_defaults(func=cmd_probe_naive)

    p = sub.add_parser("closed-form", help="type-A closed form vs solver")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--imax", type=int, default=5)
    p.set_defaults(func=cmd_closed_form)

    p = sub.add_parser("iterated", help="iterated Leibniz operators for a word")
    p.add_argument("--word", required=True)
    p.add_argument("--f", required=True)
    p.set_defaults(func=cmd_iterated)

    p = sub.add_parser("selftest", help="run a verification suite")
    p.add_argument("--suite", default="all")
    p.set_defaults(func=cmd_selftest)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if getattr(args, "n", None):
        args.realization = f"perm:{args.n}"
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (KeyError, ValueError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
