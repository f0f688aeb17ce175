"""Command-line front end.

Every subcommand emits a report {command, inputs, outputs, checks}; --json
prints it as JSON, otherwise a human-readable table.  Exit codes: 0 all
checks pass, 1 verification failure, 2 invalid input.
"""

from __future__ import annotations

import argparse
import json
import re
import sys

from . import classify, density, k3assoc, lattice, periods, serialize, verify
from .errors import BBFlatError, InputError, InvariantError
from .lattice import standard_lattice
from .verify import Check

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2

_STANDARD_NAMES = {"U": ("U", None), "E8(-1)": ("E8minus", None),
                   "E8minus": ("E8minus", None), "K3": ("K3", None),
                   "Mukai": ("Mukai", None)}


def resolve_lattice_label(label: str) -> lattice.IntLattice:
    if label in _STANDARD_NAMES:
        name, n = _STANDARD_NAMES[label]
        return standard_lattice(name, n)
    m = re.fullmatch(r"K3n\((\d+)\)", label)
    if m:
        return standard_lattice("K3n", int(m.group(1)))
    if label == "Mukai(r,c,s)":
        return classify.mukai_rcs_lattice()
    raise InputError(f"unknown lattice label {label!r}; pass --lattice-file")


def _load_lattice(args, label: str | None) -> lattice.IntLattice:
    if getattr(args, "lattice_file", None):
        return serialize.lattice_from_dict(serialize.load(args.lattice_file))
    if label is None:
        raise InputError("no lattice label in file; pass --lattice-file")
    return resolve_lattice_label(label)


class Report:
    def __init__(self, command: str, inputs: dict):
        self.command = command
        self.inputs = inputs
        self.outputs: dict = {}
        self.checks: list[Check] = []

    def check(self, name: str, passed: bool, detail: str = ""):
        self.checks.append(Check(name, bool(passed), detail))

    def as_dict(self) -> dict:
        return {
            "command": self.command,
            "inputs": self.inputs,
            "outputs": self.outputs,
            "checks": [c.as_dict() for c in self.checks],
        }

    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def render(self, as_json: bool) -> str:
        if as_json:
            return json.dumps(self.as_dict(), indent=2)
        lines = [f"command: {self.command}"]
        for k, v in self.inputs.items():
            lines.append(f"  in  {k} = {v}")
        for k, v in self.outputs.items():
            lines.append(f"  out {k} = {v}")
        if self.checks:
            lines.append(f"  {'check':40s} result")
            for c in self.checks:
                status = "pass" if c.passed else "FAIL"
                detail = f"  ({c.detail})" if c.detail else ""
                lines.append(f"  {c.name:40s} {status}{detail}")
        return "\n".join(lines)


def _read_alpha(args, n: int) -> lattice.LatticeVec:
    L = standard_lattice("K3n", n)
    if args.alpha_file:
        return serialize.vector_from_dict(serialize.load(args.alpha_file), L)
    if args.alpha:
        coords = [int(v) for v in args.alpha.replace(",", " ").split()]
        return L.vec(coords)
    raise InputError("provide --alpha-file or --alpha")


def cmd_classify(args) -> Report:
    rep = Report("classify", {"n": args.n})
    alpha = _read_alpha(args, args.n)
    rep.inputs["alpha"] = list(alpha.coords)
    inv = classify.classify_isotropic(args.n, alpha)
    rep.outputs["d"] = inv.d
    rep.outputs["b_star"] = inv.b_star
    rep.check("d_squared_divides_n_minus_1", (args.n - 1) % (inv.d ** 2) == 0)
    return rep


def cmd_construct(args) -> Report:
    rep = Report("construct", {"n": args.n, "d": args.d, "b": args.b})
    alpha = classify.construct_alpha(args.n, args.d, args.b)
    rep.outputs["alpha"] = list(alpha.coords)
    L = alpha.lattice
    rep.check("alpha_primitive", lattice.is_primitive(L, alpha))
    rep.check("alpha_isotropic", lattice.pairing(L, alpha, alpha) == 0)
    inv = classify.classify_isotropic(args.n, alpha)
    rep.check("round_trip", inv.d == args.d
              and inv.b_star == (min(args.b % args.d, (-args.b) % args.d)
                                 if args.d > 1 else 0),
              f"classified as {inv.as_dict()}")
    if args.out:
        serialize.dump(serialize.vector_to_dict(alpha), args.out)
        rep.outputs["written"] = args.out
    return rep


def cmd_orbits(args) -> Report:
    rep = Report("orbits", {"n": args.n, "d": args.d, "oracle": args.oracle})
    reps = classify.enumerate_orbit_reps(args.n, args.d)
    rep.outputs["count"] = len(reps)
    rep.outputs["b_star_values"] = [r.b_star for r in reps]
    rep.check("count_equals_nu", len(reps) == classify.nu(args.d),
              f"nu({args.d}) = {classify.nu(args.d)}")
    if args.oracle:
        count, range_used = classify.stabilized_orbit_count(args.n, args.d)
        rep.outputs["oracle_count"] = count
        rep.outputs["oracle_range"] = range_used
        rep.check("oracle_agrees", count == len(reps))
    return rep


def cmd_mukai(args) -> Report:
    rep = Report("mukai-example", {"n": args.n, "d": args.d, "b": args.b})
    setup = classify.mukai_example(args.n, args.d, args.b)
    rep.outputs["s"] = setup.s
    rep.outputs["v"] = [str(c) for c in setup.v.coords]
    rep.outputs["v_square"] = lattice.pairing(setup.lattice, setup.v, setup.v)
    for name, okc, detail in setup.verification:
        rep.check(name, okc, detail)
    return rep


def cmd_associate(args) -> Report:
    rep = Report("associate", {"n": args.n})
    alpha = _read_alpha(args, args.n)
    rep.inputs["alpha"] = list(alpha.coords)
    assoc = k3assoc.associate_k3(args.n, alpha)
    rep.outputs["d"] = assoc.d
    rep.outputs["v_bar"] = list(assoc.v_bar.coords)
    rep.outputs["xi"] = list(assoc.xi.coords)
    rep.outputs["invariant_report"] = assoc.invariant_report.as_dict()
    for name, okc, detail in assoc.checks:
        rep.check(name, okc, detail)
    rep.check("invariant_match", assoc.invariant_report.match)
    if args.qalpha_out:
        serialize.dump(serialize.lattice_to_dict(assoc.q_alpha), args.qalpha_out)
        rep.outputs["qalpha_written"] = args.qalpha_out
    return rep


def cmd_sha_kernel(args) -> Report:
    """Order of the finite quotient H2/(Sigma^perp + NS) for a K3 whose
    Picard group is generated by a single class of degree (2n-2)/d^2."""
    rep = Report("sha-kernel", {"n": args.n, "d": args.d})
    n, d = args.n, args.d
    if n < 2 or d < 1 or (n - 1) % (d * d):
        raise InputError("need n >= 2 and d^2 | n-1")
    k3 = standard_lattice("K3")
    lam_coords = [0] * 22
    lam_coords[0] = 1
    lam_coords[1] = -(n - 1) // (d * d)
    lam = k3.vec(lam_coords)
    ns = lattice.SublatticeBasis(k3, (lam,))
    sigma_perp = lattice.orthogonal_complement(k3, ns)
    divisors = lattice.quotient_group_order(k3, sigma_perp, ns)
    rep.outputs["lambda"] = list(lam.coords)
    rep.outputs["lambda_square"] = lattice.pairing(k3, lam, lam)
    rep.outputs["elementary_divisors"] = list(divisors)
    nontrivial = [v for v in divisors if v != 0]
    rep.check("kernel_is_cyclic", len(nontrivial) <= 1,
              f"divisors={list(divisors)}")
    expected = (2 * n - 2) // (d * d)
    order = nontrivial[0] if nontrivial else 1
    rep.outputs["order"] = order
    rep.check("order_is_degree", order == expected, f"expected {expected}")
    return rep


def cmd_sample_period(args) -> Report:
    rep = Report("sample-period", {"lattice": args.lattice, "D": args.D,
                                   "seed": args.seed})
    L = _load_lattice(args, args.lattice)
    p = periods.sample_nonspecial_period(
        L, args.D, args.seed, height=args.height,
        sqrt_height=args.sqrt_height, max_tries=args.max_tries)
    special, _ = periods.is_special(p)
    rep.check("non_special", not special)
    if args.out:
        serialize.dump(serialize.period_to_dict(p), args.out)
        rep.outputs["written"] = args.out
    else:
        rep.outputs["period"] = serialize.period_to_dict(p)
    return rep


def cmd_density(args) -> Report:
    rep = Report("density", {"period_file": args.period_file,
                             "target": args.target, "epsilon": args.epsilon})
    data = serialize.load(args.period_file)
    L = _load_lattice(args, data.get("lattice") or None)
    p = serialize.period_from_dict(data, L)
    target = complex(args.target.replace("i", "j"))
    cert = density.density_approximate(p, target, args.epsilon)
    rep.outputs["certificate"] = cert.as_dict()
    err2 = density.reverify_certificate(p, cert, 2 * cert.verify_bits)
    rep.check("error_below_epsilon", cert.achieved_error < args.epsilon,
              f"error={cert.achieved_error:.3e}")
    rep.check("reverified_at_double_precision",
              err2 <= 2 * cert.achieved_error + 1e-15, f"err2={err2:.3e}")
    rep.check("shrink_factor",
              all(r <= 11 / 12 + 1e-9 for r in cert.shrink_trace),
              f"{cert.iterations} iterations")
    if args.out:
        serialize.dump(cert.as_dict(), args.out)
        rep.outputs["written"] = args.out
    return rep


def cmd_lattice(args) -> Report:
    rep = Report("lattice", {"name": args.name})
    L = resolve_lattice_label(args.name)
    rep.outputs["rank"] = L.rank
    sig = lattice.signature_with_radical(L)
    rep.outputs["signature"] = [sig[0], sig[1]]
    if sig[2]:
        rep.outputs["radical_rank"] = sig[2]
    else:
        rep.outputs["elementary_divisors"] = list(lattice.discriminant_group(L))
    if args.out:
        serialize.dump(serialize.lattice_to_dict(L), args.out)
        rep.outputs["written"] = args.out
    return rep


def cmd_verify(args) -> Report:
    names = list(verify.SUITES) if args.suite == "all" else [args.suite]
    rep = Report("verify", {"suite": args.suite, "budget": args.budget,
                            "seed": args.seed})
    checks = verify.run_suites(names, budget=args.budget, seed=args.seed,
                               tamper=args.tamper)
    rep.checks.extend(checks)
    rep.outputs["total"] = len(checks)
    rep.outputs["failed"] = sum(1 for c in checks if not c.passed)
    return rep


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="bbflat",
        description="Exact lattice invariants, orbit classification, and "
                    "period-domain density certificates.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON reports")
    common.add_argument("--seed", type=int, default=0,
                        help="seed for randomized runs")
    sub = ap.add_subparsers(dest="cmd", required=True,
                            parser_class=lambda **kw: argparse.ArgumentParser(
                                parents=[common], **kw))

    p = sub.add_parser("classify", help="monodromy invariant of an isotropic class")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha-file")
    p.add_argument("--alpha", help="comma-separated coordinates")
    p.set_defaults(fn=cmd_classify)

    p = sub.add_parser("construct", help="witness class for an invariant (d, b)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(fn=cmd_construct)

    p = sub.add_parser("orbits", help="orbit representatives for fixed (n, d)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--oracle", action="store_true",
                   help="cross-check against brute-force enumeration")
    p.set_defaults(fn=cmd_orbits)

    p = sub.add_parser("mukai-example", help="Mukai-vector witness setup")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.set_defaults(fn=cmd_mukai)

    p = sub.add_parser("associate", help="associated K3 lattice pipeline")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha-file")
    p.add_argument("--alpha")
    p.add_argument("--qalpha-out", help="write the Q_alpha lattice as JSON")
    p.set_defaults(fn=cmd_associate)

    p = sub.add_parser("sha-kernel", help="finite quotient H2/(Sigma^perp+NS)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, default=1)
    p.set_defaults(fn=cmd_sha_kernel)

    p = sub.add_parser("sample-period", help="sample a non-special period")
    p.add_argument("--lattice", help="standard lattice label")
    p.add_argument("--lattice-file")
    p.add_argument("--D", type=int, default=2)
    p.add_argument("--height", type=int, default=2)
    p.add_argument("--sqrt-height", type=int, default=None)
    p.add_argument("--max-tries", type=int, default=300)
    p.add_argument("--out")
    p.set_defaults(fn=cmd_sample_period)

    p = sub.add_parser("density", help="approximate a target by the period functional")
    p.add_argument("--period-file", required=True)
    p.add_argument("--lattice-file")
    p.add_argument("--target", required=True, help='complex, e.g. "0.125+0.375i"')
    p.add_argument("--epsilon", type=float, default=1e-3)
    p.add_argument("--out")
    p.set_defaults(fn=cmd_density)

    p = sub.add_parser("lattice", help="inspect or dump a standard lattice")
    p.add_argument("--name", required=True)
    p.add_argument("--out")
    p.set_defaults(fn=cmd_lattice)

    p = sub.add_parser("verify", help="run the property suites")
    p.add_argument("--suite", choices=[*verify.SUITES, "all"], default="all")
    p.add_argument("--budget", choices=["small", "full"], default="small")
    p.add_argument("--tamper", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(fn=cmd_verify)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if not hasattr(args, "seed"):
        args.seed = 0
    try:
        rep = args.fn(args)
    except (InputError, FileNotFoundError, KeyError, json.JSONDecodeError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InvariantError as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except BBFlatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    print(rep.render(args.json))
    return EXIT_OK if rep.all_passed() else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
