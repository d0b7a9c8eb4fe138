"""Command-line interface.

Every command prints a certificate {command, inputs, outputs, cross_checks,
seed, version}.  Exit codes: 0 success, 1 usage or input error, 2 a size cap
was hit, 3 a cross-check failed (the certificate names it).
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import __version__, acceptance, config, cs, liealg, lifting, regsub
from .errors import CapExceeded, HololabError, InvalidInput, VerificationError
from .groups import center, element_order_profile, is_decomposable, normal_subgroups
from .holomorph import centralizer_of_regular, hol, hol_inv, inhol, inhol_inv, lambda_rep, nhol, rho_rep
from .homs import automorphisms, inner_automorphisms
from .io import dumps, load_group, parse_perm_subgroup
from .perms import generating_subset, normalizer_in_sym

log = logging.getLogger("hololab")

EXIT_OK, EXIT_USAGE, EXIT_CAP, EXIT_VERIFY = 0, 1, 2, 3


class CheckFailed(VerificationError):
    def __init__(self, certificate: dict):
        self.certificate = certificate
        names = [c["name"] for c in certificate["cross_checks"] if not c["ok"]]
        super().__init__("failed cross-checks: " + ", ".join(names))


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _checks(d: dict[str, bool]) -> list[dict]:
    return [{"name": k, "ok": bool(v)} for k, v in d.items()]


def _arg_inputs(args) -> dict:
    skip = {"command", "format", "out", "verbose", "threads", "seed", "max_degree"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def _perm_summary(P) -> dict:
    gens = P.generators
    if len(gens) > 4:
        gens = generating_subset(P.degree, P.elements)
    return {"degree": P.degree, "order": P.order, "generators": [g.to_list() for g in gens]}


# ---------------------------------------------------------------------------
# commands; each returns (inputs, outputs, cross_checks)


def cmd_group(args):
    G = load_group(args.group)
    decomp = is_decomposable(G)
    n_aut = len(automorphisms(G))
    n_inn = len(inner_automorphisms(G))
    outputs = {
        "order": G.order, "abelian": G.is_abelian, "center_order": center(G).order,
        "element_orders": list(element_order_profile(G)),
        "normal_subgroup_orders": sorted(S.order for S in normal_subgroups(G)),
        "decomposition": None if decomp is None else [decomp[0].order, decomp[1].order],
        "aut_order": n_aut, "inn_order": n_inn, "out_order": n_aut // n_inn,
        "table": G.to_dict(),
    }
    checks = {"inn_divides_aut": n_aut % n_inn == 0,
              "inn_is_quotient_by_center": n_inn * center(G).order == G.order}
    return {"group": args.group}, outputs, checks


def cmd_hol(args):
    G = load_group(args.group)
    H = hol(G)
    n_aut = len(automorphisms(G))
    outputs = {"hol": _perm_summary(H)}
    checks = {"order_is_G_times_aut": H.order == G.order * n_aut,
              "contains_lambda": lambda_rep(G).subgroup.is_subgroup_of(H)}
    if G.order <= args.max_degree:
        N = normalizer_in_sym(lambda_rep(G).subgroup, max_degree=args.max_degree, threads=args.threads)
        checks["equals_normalizer_of_lambda"] = N.same_elements(H)
    return {"group": args.group}, outputs, checks


def cmd_inhol(args):
    G = load_group(args.group)
    H = inhol(G)
    lam, rho = lambda_rep(G).subgroup, rho_rep(G).subgroup
    outputs = {"inhol": _perm_summary(H), "inhol_inv_order": inhol_inv(G).order}
    checks = {"order_is_G_squared_over_center": H.order * center(G).order == G.order ** 2,
              "rho_centralizes_lambda": centralizer_of_regular(lam).same_elements(rho)}
    return {"group": args.group}, outputs, checks


def cmd_nhol(args):
    G = load_group(args.group)
    N = nhol(G, max_degree=args.max_degree, threads=args.threads)
    H = hol(G)
    outputs = {"nhol": _perm_summary(N), "hol_order": H.order, "index": N.order // H.order}
    checks = {"contains_hol": H.is_subgroup_of(N), "hol_index_integral": N.order % H.order == 0}
    return {"group": args.group}, outputs, checks


SUBGROUPS = {"lambda": lambda G: lambda_rep(G).subgroup, "rho": lambda G: rho_rep(G).subgroup,
             "hol": hol, "inhol": inhol, "hol-inv": hol_inv, "inhol-inv": inhol_inv}


def cmd_normalizer(args):
    G = load_group(args.group)
    K = SUBGROUPS[args.of](G)
    N = normalizer_in_sym(K, max_degree=args.max_degree, threads=args.threads)
    outputs = {"subgroup": args.of, "subgroup_order": K.order, "normalizer": _perm_summary(N),
               "equals_hol_inv": N.same_elements(hol_inv(G))}
    checks = {"contains_subgroup": K.is_subgroup_of(N), "index_integral": N.order % K.order == 0}
    return {"group": args.group, "of": args.of}, outputs, checks


def cmd_regsub(args):
    G = load_group(args.group)
    domains = [load_group(d) for d in args.domains] if args.domains else [G]
    outputs = {"domains": {}}
    for N, name in zip(domains, args.domains or [args.group]):
        pairs = regsub.enumerate_fpf_pairs(N, G)
        counts: dict[str, int] = {}
        for p in pairs:
            c = regsub.classify_pair(p).value
            counts[c] = counts.get(c, 0) + 1
        outputs["domains"][name] = {"fpf_pairs": len(pairs), "classification": counts}
    real = regsub.realization_set(G, domains)
    outputs["realizations"] = len(real)
    checks = {"realizations_regular": all(len(set(R.elements[:, 0].tolist())) == G.order for R in real)}
    if args.brute:
        brute = regsub.enumerate_regular_subgroups_brute(G)
        outputs["brute_force"] = len(brute)
        checks["matches_brute_force"] = ({R.elements.tobytes() for R in real}
                                         == {R.elements.tobytes() for R in brute})
    return {"group": args.group, "domains": args.domains or [args.group], "brute": args.brute}, outputs, checks


def cmd_decomposition(args):
    G = load_group(args.group)
    rep = regsub.decomposition_check(G)
    out = rep.to_dict()
    return {"group": args.group}, {k: v for k, v in out.items() if k != "cross_checks"}, rep.cross_checks


def _cs_group(args):
    T = load_group(args.t)
    return cs.build(cs.CsParams(T, args.p))


def cmd_cs_build(args):
    G = _cs_group(args)
    rel_ok = all(set(G.basis.degrees[row != 0].tolist()) <= {G.n} for row in G.relation_space)
    checks = {"dims_match_witt": list(G.dims) == [liealg.witt_dimension(G.n, k) for k in range(1, G.n + 1)],
              "relations_in_top_degree": rel_ok, "rank_at_most_n": G.r <= G.n}
    return {"t": args.t, "p": args.p}, cs.build_certificate(G), checks


def cmd_cs_center(args):
    G = _cs_group(args)
    cert = cs.center_certificate(G, samples=args.samples, seed=args.seed, strict=False)
    return {"t": args.t, "p": args.p, "samples": args.samples}, cert.to_dict(), cert.checks


def cmd_lift(args):
    H = parse_perm_subgroup(args.h, args.n)
    T = load_group(args.expect)
    rep = lifting.lift_check(H, args.n, args.m, T, max_degree=args.max_degree, threads=args.threads)
    checks = dict(rep.cross_checks)
    checks["SYM_quotient_iso_expected"] = rep.iso_sym
    checks["ALT_quotient_iso_expected"] = rep.iso_alt
    return {"h": args.h, "n": args.n, "m": args.m, "expect": args.expect}, rep.to_dict(), checks


def cmd_assemble(args):
    G = load_group(args.group)
    rep = lifting.holomorph_assembly(G, max_degree=args.max_degree, threads=args.threads)
    return {"group": args.group}, rep.to_dict(), rep.cross_checks


def cmd_selftest(args):
    results = acceptance.run_all(threads=args.threads, only=args.only)
    for r in results:
        print(r.line(), file=sys.stderr)
    outputs = {"criteria": [r.to_dict() for r in results]}
    checks = {f"criterion_{r.number}": r.passed for r in results}
    return {"only": args.only}, outputs, checks


COMMANDS = {
    "group": cmd_group, "hol": cmd_hol, "inhol": cmd_inhol, "nhol": cmd_nhol,
    "normalizer": cmd_normalizer, "regsub": cmd_regsub, "thm13": cmd_decomposition,
    "cs-build": cmd_cs_build, "cs-center": cmd_cs_center, "lift": cmd_lift,
    "assemble": cmd_assemble, "selftest": cmd_selftest,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "text"], default="json")
    common.add_argument("--max-degree", type=int, default=None,
                        help="largest degree for brute-force Sym(d) scans (env HOLOLAB_MAX_DEGREE)")
    common.add_argument("--threads", type=int, default=1, help="worker processes for scans")
    common.add_argument("--seed", type=int, default=config.DEFAULT_SEED)
    common.add_argument("--out", type=Path, default=None, help="write the certificate here")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = _Parser(prog="hololab", description="Holomorphs, regular subgroups and normalizer quotients.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help, group=False):
        p = sub.add_parser(name, help=help, parents=[common])
        if group:
            p.add_argument("--group", required=True, help="builtin:NAME, NAME or a JSON table file")
        return p

    add("group", "basic invariants of a group", group=True)
    add("hol", "the holomorph Hol(G)", group=True)
    add("inhol", "the inner holomorph InHol(G)", group=True)
    add("nhol", "the multiple holomorph NHol(G) by brute force", group=True)
    p = add("normalizer", "brute-force normalizer in Sym(G)", group=True)
    p.add_argument("--of", choices=sorted(SUBGROUPS), default="inhol")
    p = add("regsub", "regular subgroups of InHol(G) from fixed-point-free pairs", group=True)
    p.add_argument("--domains", nargs="*", default=None, help="domain groups N (default: G itself)")
    p.add_argument("--brute", action="store_true", help="cross-check against brute-force enumeration")
    add("thm13", "minimality verdict and decomposability cross-checks", group=True)
    for name, help in (("cs-build", "build CS(T, p)"), ("cs-center", "trivial-center certificate for CS(T, p)")):
        p = add(name, help)
        p.add_argument("--t", required=True, help="the group T")
        p.add_argument("--p", type=int, required=True, help="a prime p > |T| + 1")
        if name == "cs-center":
            p.add_argument("--samples", type=int, default=cs.CENTER_SAMPLES)
    p = add("lift", "normalizer quotients of H x S_{m-n} in S_m and A_m")
    p.add_argument("--h", required=True, help="trivial, symmetric, alternating or images like 1,2,0;...")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--expect", required=True, help="the expected quotient group")
    add("assemble", "N(H)/H for H = <InHol(G), inv> compared with Out(G)", group=True)
    p = add("selftest", "run the acceptance suite")
    p.add_argument("--only", type=int, nargs="*", default=None, help="criterion numbers")
    return parser


def render_text(cert: dict) -> str:
    lines = [f"command: {cert['command']}"]
    for k, v in cert["inputs"].items():
        lines.append(f"input {k}: {v}")
    for k, v in cert["outputs"].items():
        if isinstance(v, (dict, list)) and len(str(v)) > 200:
            v = f"<{type(v).__name__} with {len(v)} entries>"
        lines.append(f"{k}: {v}")
    for c in cert["cross_checks"]:
        lines.append(f"check {c['name']}: {'ok' if c['ok'] else 'FAILED'}")
    if "error" in cert:
        lines.append(f"error: {cert['error']}")
    return "\n".join(lines) + "\n"


def _emit(cert: dict, args) -> None:
    text = dumps(cert) if args.format == "json" else render_text(cert)
    if args.out is not None:
        args.out.write_text(text)
    else:
        sys.stdout.write(text)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.max_degree is None:
        try:
            args.max_degree = config.max_degree_from_env()
        except ValueError:
            parser.error("HOLOLAB_MAX_DEGREE must be an integer")
    cert = {"command": args.command, "inputs": _arg_inputs(args), "outputs": {}, "cross_checks": [],
            "seed": args.seed, "version": __version__}
    try:
        inputs, outputs, checks = COMMANDS[args.command](args)
        cert.update(inputs=inputs, outputs=outputs, cross_checks=_checks(checks))
        if not all(checks.values()):
            raise CheckFailed(cert)
    except CheckFailed as exc:
        cert["failed"] = [c["name"] for c in exc.certificate["cross_checks"] if not c["ok"]]
        cert["error"] = str(exc)
        _emit(cert, args)
        return EXIT_VERIFY
    except VerificationError as exc:
        cert["failed"] = [type(exc).__name__]
        cert["cross_checks"] = [{"name": type(exc).__name__, "ok": False}]
        cert["error"] = str(exc)
        _emit(cert, args)
        return EXIT_VERIFY
    except CapExceeded as exc:
        cert["error"] = f"CapExceeded: {exc}"
        _emit(cert, args)
        return EXIT_CAP
    except InvalidInput as exc:
        print(f"hololab {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except HololabError as exc:
        print(f"hololab {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _emit(cert, args)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
