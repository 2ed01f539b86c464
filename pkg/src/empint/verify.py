"""Self-verification suites: desk-scale, deterministic, exact where the
identity being checked is exact.

Six suites, each with its own exit code for the command line driver:

    10 diagram      product formula and the canonical U-statistic identity
    11 expectation  enumeration oracle against the closed-form coefficient
    12 norms        contraction norm inequalities, exactly
    13 moments      exact moments against the growth bounds (frozen C)
    14 dominance    certificate transport through contractions
    15 constants    recursion constants, coefficients, partition bounds

All randomness is drawn from the configured seed; there is no wall-clock
entropy anywhere.  Identity suites refuse float mode.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import bounds, combinatorics, diagrams, dominance, integrals, kernels, space

SUITE_CODES = {
    "diagram": 10,
    "expectation": 11,
    "norms": 12,
    "moments": 13,
    "dominance": 14,
    "constants": 15,
}

# Frozen empirical constants for the moment suite.  Measured over exact
# sweeps (k <= 2, M <= 2, n <= 6, random kernels with sup <= 1) the
# tightest values are ~1.0 and ~1.5; frozen with margin so the suite only
# trips on real regressions.
MOMENT_SHAPE_C = 2.0
MOMENT_SHAPE_C_RANKED = 3.0
SECOND_MOMENT_C = 100.0


@dataclass
class SuiteResult:
    name: str
    exit_code: int
    checks: int = 0
    failures: int = 0
    worst: float = 0.0
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def record(self, ok: bool, discrepancy: float = 0.0, note: str = ""):
        self.checks += 1
        self.worst = max(self.worst, abs(discrepancy))
        if not ok:
            self.failures += 1
            if note and len(self.notes) < 20:
                self.notes.append(note)

    def as_dict(self) -> dict:
        return {"suite": self.name, "exit_code": self.exit_code,
                "checks": self.checks, "failures": self.failures,
                "worst_discrepancy": self.worst, "status": "pass" if self.passed else "fail",
                "notes": self.notes}


def run_suite_diagram(seed: int) -> SuiteResult:
    """Exact pathwise identities: the product expansion over contraction
    classes, and U-statistic equality for canonical kernels."""
    res = SuiteResult("diagram", SUITE_CODES["diagram"])
    rng = np.random.default_rng(seed)
    for k1, k2 in [(1, 1), (1, 2), (2, 2)]:
        for A in (2, 3):
            sp = space.uniform_space(A)
            f = kernels.random_kernel(sp, k1, rng)
            g = kernels.random_kernel(sp, k2, rng)
            terms = integrals.product_formula_terms(f, g)
            for n in (2, 3, 4):
                for _ in range(4):
                    s = space.draw_sample(sp, n, rng)
                    r = integrals.check_product_formula(f, g, s, terms)
                    res.record(r.ok, r.discrepancy,
                               f"product formula k=({k1},{k2}) A={A} n={n}")
    for k in (1, 2, 3):
        sp = space.uniform_space(3)
        f = kernels.canonical_project(kernels.random_kernel(sp, k, rng))
        for n in (2, 4):
            for _ in range(4):
                s = space.draw_sample(sp, n, rng)
                r = integrals.check_canonical_ustat_identity(f, s)
                res.record(r.ok, r.discrepancy, f"canonical identity k={k} n={n}")
    return res


def run_suite_expectation(seed: int) -> SuiteResult:
    """E[q] from exhaustive enumeration equals the closed-form coefficient
    times the plain k-fold integral, exactly."""
    res = SuiteResult("expectation", SUITE_CODES["expectation"])
    rng = np.random.default_rng(seed)
    for k in (1, 2, 3):
        for A in (2, 3):
            sp = space.uniform_space(A)
            for n in (2, 3, 5):
                for _ in range(3):
                    f = kernels.random_kernel(sp, k, rng)
                    got = combinatorics.expected_integral_oracle(f, n)
                    plain = f
                    for j in plain.axis_labels:
                        plain = kernels.integrate_axis(plain, j)
                    want = combinatorics.expectation_coefficient(n, k) * plain.values[()]
                    res.record(got == want, float(got - want),
                               f"expectation k={k} n={n} A={A}")
    return res


def run_suite_norms(seed: int) -> SuiteResult:
    """Contraction norm inequalities, in squared (rational) form."""
    res = SuiteResult("norms", SUITE_CODES["norms"])
    rng = np.random.default_rng(seed)
    for k1, k2 in [(1, 1), (1, 2), (2, 2)]:
        for _ in range(4):
            sp = space.uniform_space(int(rng.integers(2, 4)))
            f = kernels.random_kernel(sp, k1, rng)
            g = kernels.random_kernel(sp, k2, rng)
            nf, ng = kernels.l2_norm_sq(f), kernels.l2_norm_sq(g)
            for l in range(min(k1, k2) + 1):
                for p in range(l + 1):
                    for d in diagrams.enumerate_diagrams(diagrams.DiagramClass(k1, k2, l, p)):
                        h = diagrams.contract(f, g, d)
                        nh = kernels.l2_norm_sq(h)
                        res.record(nh * nh <= nf * ng, 0.0,
                                   f"squared contraction bound {diagrams.format_diagram(d)}")
                        if diagrams.is_gaussian(d):
                            res.record(nh <= nf * ng, 0.0,
                                       f"colored contraction bound {diagrams.format_diagram(d)}")
            ff = diagrams.contract(f, f, _full_pairing(k1, colored=False))
            res.record(kernels.l1_norm(ff) <= nf, 0.0, "self-pairing L1 bound")
    return res


def _full_pairing(k: int, colored: bool) -> diagrams.ColoredDiagram:
    edges = tuple((j, k + j) for j in range(1, k + 1))
    cset = frozenset(range(1, k + 1)) if colored else frozenset()
    return diagrams.ColoredDiagram(k, k, edges, cset)


def run_suite_moments(seed: int) -> SuiteResult:
    """Exact even moments stay under the growth-bound shapes with the
    frozen constants."""
    res = SuiteResult("moments", SUITE_CODES["moments"])
    rng = np.random.default_rng(seed)
    for k in (1, 2):
        for M in (1, 2):
            for n in (max(2, k * M), 6):
                sp = space.uniform_space(2)
                for _ in range(3):
                    f = kernels.random_kernel(sp, k, rng)
                    s2 = kernels.l2_norm_sq(f)
                    if s2 == 0:
                        continue
                    ej = float(combinatorics.moment_oracle(f, n, 2 * M) * Fraction(n) ** (k * M))
                    cap = bounds.moment_growth_bound(k, M, math.sqrt(float(s2)), n,
                                                    MOMENT_SHAPE_C)
                    res.record(ej <= cap, max(0.0, ej - cap), f"plain shape k={k} M={M} n={n}")
                    if k * M <= n:
                        cap_r = bounds.moment_growth_bound(k, M, math.sqrt(float(s2)), n,
                                                          MOMENT_SHAPE_C_RANKED, r=1)
                        res.record(ej <= cap_r, max(0.0, ej - cap_r),
                                   f"ranked shape k={k} M={M} n={n}")
    for k in (1, 2, 3):
        sp = space.uniform_space(2)
        for n in (max(2, k), 5):
            for _ in range(3):
                f = kernels.random_kernel(sp, k, rng)
                s2 = kernels.l2_norm_sq(f)
                ej2 = float(combinatorics.moment_oracle(f, n, 2) * Fraction(n) ** k)
                cap = SECOND_MOMENT_C**k / float(k) ** k * float(s2)
                res.record(ej2 <= cap, max(0.0, ej2 - cap), f"second moment k={k} n={n}")
    return res


def run_suite_dominance(seed: int) -> SuiteResult:
    """Transformed certificates really dominate the contraction, at the
    exact rank target; the rank-1 fallback also verifies."""
    res = SuiteResult("dominance", SUITE_CODES["dominance"])
    rng = np.random.default_rng(seed)
    sp = space.uniform_space(3)
    shapes = [(1, ((1,),)), (2, ((1,), (2,))), (2, ((1, 2),))]
    for (k1, b1), (k2, b2) in itertools.product(shapes, repeat=2):
        f, cf = dominance.random_dominated_pair(sp, b1, rng)
        g, cg = dominance.random_dominated_pair(sp, b2, rng)
        s2 = max(cf.sigma_sq, cg.sigma_sq)
        cf, cg = dominance.relax_sigma(cf, s2), dominance.relax_sigma(cg, s2)
        res.record(dominance.verify_certificate(f, cf), 0.0, "input certificate f")
        res.record(dominance.verify_certificate(g, cg), 0.0, "input certificate g")
        for l in range(min(k1, k2) + 1):
            for p in range(l + 1):
                for d in diagrams.enumerate_diagrams(diagrams.DiagramClass(k1, k2, l, p)):
                    target = cf.rank + cg.rank - (l - p)
                    if target < 1:
                        continue
                    h = diagrams.compact_relabel(diagrams.contract(f, g, d))
                    ct = dominance.contract_certificate(cf, cg, d)
                    res.record(ct.rank == target, 0.0,
                               f"rank {ct.rank} != {target} for {diagrams.format_diagram(d)}")
                    res.record(dominance.verify_certificate(h.as_float(), ct), 0.0,
                               f"transport {diagrams.format_diagram(d)}")
                    cc = dominance.collapse_certificate(h, cf, cg)
                    res.record(dominance.verify_certificate(h, cc), 0.0,
                               f"fallback {diagrams.format_diagram(d)}")
    return res


def run_suite_constants(seed: int) -> SuiteResult:
    """Frozen values and exact inequalities for the constant tables."""
    res = SuiteResult("constants", SUITE_CODES["constants"])
    res.record(combinatorics.damping_factor(0) == 17, note="damping(0)")
    res.record(combinatorics.damping_factor(4) == 2, note="damping(4)")
    res.record(combinatorics.damping_factor(10) == Fraction(65, 64), note="damping(10)")
    for k in range(1, 5):
        res.record(combinatorics.cumulative_constant(k, 0) == 1, note=f"cumulative({k},0)")
    res.record(combinatorics.cumulative_constant(1, 1) == 17, note="cumulative(1,1)")
    bad = combinatorics.check_moment_recursion(4, 8)
    res.record(not bad, float(len(bad)), f"recursion violations: {bad[:3]}")
    for k in range(1, 5):
        for m in range(0, 9):
            v = combinatorics.profile_maximizer(k, m)
            got = combinatorics.profile_weight(k, m, v)
            want = float(combinatorics.damping_factor(m)) ** (2 * k)
            rel = abs(got - want) / want
            res.record(rel <= 1e-12, rel, f"profile max k={k} m={m}")
    for n in range(2, 9):
        res.record(combinatorics.expectation_coefficient(n, 1) == 0, note=f"coeff(n={n},1)")
        res.record(combinatorics.expectation_coefficient(n, 2) == Fraction(-1, 2 * n),
                   note=f"coeff(n={n},2)")
        res.record(combinatorics.expectation_coefficient(n, 3) == Fraction(1, 3 * n**2),
                   note=f"coeff(n={n},3)")
    for k in range(1, 9):
        for n in range(max(2, math.ceil(k / 2)), 31, 7):
            b = abs(combinatorics.expectation_coefficient(n, k)) * Fraction(n) ** k
            val = float(b) * float(k) ** (k / 2) / float(n) ** (k / 2)
            res.record(val <= 10.0**k, max(0.0, val - 10.0**k), f"coefficient growth k={k} n={n}")
    for k in range(1, 9):
        for s in range(1, k + 1):
            res.record(combinatorics.stirling2(k, s) <= combinatorics.partition_count_bound(k, s),
                       note=f"partition bound k={k} s={s}")
    return res


_RUNNERS = {
    "diagram": run_suite_diagram,
    "expectation": run_suite_expectation,
    "norms": run_suite_norms,
    "moments": run_suite_moments,
    "dominance": run_suite_dominance,
    "constants": run_suite_constants,
}


def run_all(seed: int, suites: list[str] | None = None) -> list[SuiteResult]:
    names = suites if suites is not None else list(_RUNNERS)
    unknown = [s for s in names if s not in _RUNNERS]
    if unknown:
        raise ValueError(f"unknown suites: {unknown}")
    return [_RUNNERS[name](seed) for name in names]
