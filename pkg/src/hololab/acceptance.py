"""The acceptance suite as plain functions, shared by ``hololab selftest`` and
the test-suite.  Each criterion recomputes its values from scratch, compares
them with an independent route (brute force, a formula, or a second
construction) and records its wall time against the allowed bound.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import cs, liealg, lifting, regsub, standard
from .groups import index_two_abelian_subgroups
from .holomorph import hol_inv, inhol
from .perms import Permutation, PermSubgroup, normalizer_in_sym

SEED = 20240601


@dataclass
class CriterionResult:
    number: int
    title: str
    checks: dict[str, bool]
    seconds: float
    limit: float
    detail: dict = field(default_factory=dict)

    @property
    def in_time(self) -> bool:
        return self.seconds < self.limit

    @property
    def passed(self) -> bool:
        return all(self.checks.values()) and self.in_time

    def failing(self) -> list[str]:
        out = [k for k, v in self.checks.items() if not v]
        if not self.in_time:
            out.append(f"runtime {self.seconds:.2f}s >= {self.limit}s")
        return out

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = "" if self.passed else "  [" + "; ".join(self.failing()) + "]"
        return f"{status} criterion {self.number:2d}: {self.title} ({self.seconds:.2f}s){extra}"

    def to_dict(self) -> dict:
        return {"number": self.number, "title": self.title, "passed": self.passed,
                "seconds": round(self.seconds, 3), "limit": self.limit,
                "checks": self.checks, "detail": self.detail}


def _timed(number: int, title: str, limit: float, body: Callable[[], tuple[dict, dict]]) -> CriterionResult:
    start = time.perf_counter()
    checks, detail = body()
    return CriterionResult(number, title, checks, time.perf_counter() - start, limit, detail)


def criterion_1(threads: int = 1) -> CriterionResult:
    def body():
        G = standard.builtin("S3")
        N = normalizer_in_sym(inhol(G), threads=threads)
        verdict = regsub.minimality_verdict(G)
        return ({"normalizer_order_72": N.order == 72,
                 "normalizer_equals_hol_inv": N.same_elements(hol_inv(G)),
                 "verdict_minimal": verdict.verdict == "MINIMAL"},
                {"normalizer_order": N.order, "verdict": verdict.verdict})
    return _timed(1, "S3: N(InHol) = <Hol, inv> of order 72, verdict MINIMAL", 1.0, body)


def criterion_2(threads: int = 1) -> CriterionResult:
    def body():
        G = standard.builtin("D5")
        N = normalizer_in_sym(inhol(G), threads=threads)
        verdict = regsub.minimality_verdict(G)
        return ({"normalizer_order_400": N.order == 400,
                 "verdict_minimal": verdict.verdict == "MINIMAL"},
                {"normalizer_order": N.order, "verdict": verdict.verdict})
    return _timed(2, "D5: N(InHol) in Sym(10) has order 400, verdict MINIMAL", 180.0, body)


def criterion_3(threads: int = 1) -> CriterionResult:
    def body():
        checks, detail = {}, {}
        for name in ("S3xS3", "S3xD5"):
            rep = regsub.decomposition_check(standard.builtin(name))
            checks[f"{name}_strictly_larger"] = rep.verdict.verdict == "STRICTLY_LARGER"
            checks[f"{name}_projection_witness"] = rep.projection_witness is not None
            for key in ("witness_kernels_direct", "kernels_match_factors",
                        "projection_kernels_direct", "projection_kernels_match_factors"):
                checks[f"{name}_{key}"] = bool(rep.cross_checks.get(key))
            detail[name] = {"n_witnesses": len(rep.verdict.witnesses), "n_fpf_pairs": rep.verdict.n_fpf_pairs}
        return checks, detail
    return _timed(3, "S3xS3, S3xD5: STRICTLY_LARGER with projection-pair witness", 30.0, body)


def criterion_4(threads: int = 1) -> CriterionResult:
    def body():
        checks, detail = {}, {}
        cases = {"S3": ["C6", "S3"], "D5": ["C10", "D5"]}
        for name, domains in cases.items():
            G = standard.builtin(name)
            real = regsub.realization_set(G, [standard.builtin(d) for d in domains])
            brute = regsub.enumerate_regular_subgroups_brute(G)
            a = {R.elements.tobytes() for R in real}
            b = {R.elements.tobytes() for R in brute}
            checks[f"{name}_sets_equal"] = a == b
            detail[name] = {"realizations": len(a), "brute_force": len(b)}
        return checks, detail
    return _timed(4, "S3, D5: fpf-pair realizations = brute-force regular subgroups of InHol", 60.0, body)


def criterion_5(threads: int = 1) -> CriterionResult:
    def body():
        checks, detail = {}, {}
        factors = {"C3": standard.cyclic(3), "C4": standard.cyclic(4),
                   "C2xC2": standard.builtin("C2xC2"), "C5": standard.cyclic(5), "C2": standard.cyclic(2)}
        for name, A in factors.items():
            M = standard.semidirect_product(standard.swap_action(A))
            subs = index_two_abelian_subgroups(M)
            base = tuple(range(A.order ** 2))
            if name == "C2":
                checks["C2_more_than_one"] = len(subs) > 1
            else:
                checks[f"{name}_unique"] = len(subs) == 1
                checks[f"{name}_is_AxA"] = len(subs) == 1 and subs[0].elements == base
            detail[name] = len(subs)
        return checks, detail
    return _timed(5, "(AxA):C2 has a unique abelian index-2 subgroup, except A = C2", 1.0, body)


def criterion_6(threads: int = 1) -> CriterionResult:
    def body():
        checks, detail = {}, {}
        for n, c in [(2, 2), (2, 3), (3, 3), (4, 4)]:
            dims = liealg.hall_basis(n, c).dims
            witt = tuple(liealg.witt_dimension(n, k) for k in range(1, c + 1))
            checks[f"({n},{c})"] = dims == witt
            detail[f"({n},{c})"] = list(dims)
        checks["(3,3)->(3,3,8)"] = detail["(3,3)"] == [3, 3, 8]
        checks["(4,4)->(4,6,20,60)"] = detail["(4,4)"] == [4, 6, 20, 60]
        return checks, detail
    return _timed(6, "Hall basis dimensions equal Witt numbers", 1.0, body)


def bch_properties(n: int, c: int, p: int, samples: int = 1000, seed: int = SEED) -> dict[str, bool]:
    B = liealg.hall_basis(n, c)
    rng = np.random.default_rng(seed)
    X, Y, Z = (rng.integers(0, p, size=(samples, len(B))) for _ in range(3))
    mul = lambda U, V: liealg.bch_rows(B, U, V, p)
    br = lambda U, V: liealg.bracket_rows(B, U, V, p)
    assoc = np.array_equal(mul(mul(X, Y), Z), mul(X, mul(Y, Z)))
    zero = np.zeros_like(X)
    identity = np.array_equal(mul(X, zero), X % p) and np.array_equal(mul(zero, X), X % p)
    inverse = not mul(X, -X % p).any()
    power = zero
    for _ in range(p):
        power = mul(power, X)
    jacobi = (br(X, br(Y, Z)) + br(Y, br(Z, X)) + br(Z, br(X, Y))) % p
    return {"associative": assoc, "identity": identity, "inverse": inverse,
            "p_power_zero": not power.any(), "jacobi": not jacobi.any()}


def criterion_7(threads: int = 1) -> CriterionResult:
    def body():
        checks = {}
        for n, c, p in [(3, 3, 5), (3, 3, 7), (4, 4, 5)]:
            for k, v in bch_properties(n, c, p).items():
                checks[f"({n},{c},{p})_{k}"] = v
        return checks, {"samples": 1000, "seed": SEED}
    return _timed(7, "BCH group axioms, exponent p and Jacobi on 1000 seeded triples", 10.0, body)


def criterion_8(threads: int = 1) -> CriterionResult:
    def body():
        checks, detail = {}, {}
        for T, p in [(standard.cyclic(3), 5), (standard.cyclic(4), 7)]:
            G = cs.build(cs.CsParams(T, p))
            cert = cs.center_certificate(G, strict=False)
            key = f"CS({T.name},{p})"
            if T.order == 3:
                checks[f"{key}_D_14"] = G.D == 14
                checks[f"{key}_order"] = G.order == 5 ** (14 - G.r) * 64
            else:
                checks[f"{key}_order"] = G.order == p ** (G.D - G.r) * (p - 1) ** 4
            for name, ok in cert.checks.items():
                checks[f"{key}_{name}"] = ok
            detail[key] = {"D": G.D, "r": G.r, "order_factored": G.order_factored}
        return checks, detail
    return _timed(8, "CS(C3,5), CS(C4,7): build and trivial-center certificate", 30.0, body)


def lift_cases() -> list[tuple[str, PermSubgroup, int, int, str]]:
    return [
        ("trivial<=S2", PermSubgroup(2, []), 2, 5, "C2"),
        ("<3-cycle><=S3", PermSubgroup(3, [Permutation([1, 2, 0])]), 3, 7, "C2"),
        ("S2<=S2", PermSubgroup(2, [Permutation([1, 0])]), 2, 5, "C1"),
    ]


def criterion_9(threads: int = 1) -> CriterionResult:
    def body():
        checks, detail = {}, {}
        for label, H, n, m, expect in lift_cases():
            rep = lifting.lift_check(H, n, m, standard.builtin(expect), threads=threads)
            checks[f"{label}_SYM"] = rep.iso_sym
            checks[f"{label}_ALT"] = rep.iso_alt
            checks[f"{label}_structural"] = rep.cross_checks["structural_normalizer_sym"]
            checks[f"{label}_cross_checks"] = all(rep.cross_checks.values())
            detail[label] = {"H1": rep.H1_order, "H2": rep.H2_order,
                             "quotients": [rep.sym.order, rep.alt.order]}
        return checks, detail
    return _timed(9, "normalizer quotients lift to S_m and A_m", 120.0, body)


def criterion_10(threads: int = 1) -> CriterionResult:
    def body():
        s3 = lifting.holomorph_assembly(standard.builtin("S3"), threads=threads)
        d5 = lifting.holomorph_assembly(standard.builtin("D5"), threads=threads)
        checks = {
            "S3_H_order_72": s3.H_order == 72,
            "S3_self_normalizing": s3.self_normalizing,
            "S3_quotient_trivial": s3.quotient.order == 1,
            "S3_out_trivial": s3.out.order == 1,
            "S3_quotient_iso_out": s3.quotient_iso_out,
            "D5_completed": d5.H_order == 200,
            "D5_out_C2": d5.out.order == 2,
            "D5_exploratory": d5.label == "EXPLORATORY",
        }
        detail = {"S3": {"H": s3.H_order, "N": s3.normalizer_order},
                  "D5": {"H": d5.H_order, "N": d5.normalizer_order, "quotient_order": d5.quotient.order,
                         "quotient_iso_out": d5.quotient_iso_out, "label": d5.label}}
        return checks, detail
    return _timed(10, "assembly: S3 self-normalizing with trivial quotient; D5 exploratory", 300.0, body)


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


def run_all(threads: int = 1, only: list[int] | None = None) -> list[CriterionResult]:
    return [crit(threads) for i, crit in enumerate(CRITERIA, 1) if only is None or i in only]
