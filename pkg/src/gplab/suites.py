"""Named check batteries: the acceptance criteria and a quick property suite.

Each check raises AssertionError (with a diagnostic message) on failure and
returns a human-readable detail string on success.  ``run_suite`` wraps the
battery with timing and one pass/fail line per check.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .cf import best_approx_1d, best_approx_2d, cf_expand, convergents, legendre_check
from .constructions import (
    cubic_pisot_set,
    fibonacci_like_set,
    norm_plus_filtered_set,
    recurrence_terms,
    very_sparse_alpha,
    very_sparse_set,
    verify_certificate,
)
from .constructions.recurrence import LinearRecurrence
from .errors import GPLabError
from .gpexpr import (
    N,
    RationalConst,
    discrete_difference,
    parse,
    to_text,
)
from .ipsearch import ap_witness_in_small_dist_set, find_ipr_in_set, translated_ip_probe
from .nilorbit import (
    default_orbit_spec,
    elem,
    growth_count,
    heis_inv,
    heis_mul,
    heis_reduce,
    orbit_point,
)
from .realnum import (
    NumberField,
    compare,
    dist_of,
    floor_frac,
    frac_of,
    nint_of,
    radd,
    rsub,
    sign_of,
)


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str
    seconds: float


def _fib_oracle(bound: int) -> list[int]:
    return recurrence_terms(LinearRecurrence((1, 1), (0, 1)), bound)


# ---------------------------------------------------------------------------
# acceptance criteria
# ---------------------------------------------------------------------------

def check_fibonacci_certificate(to: int = 10**6) -> str:
    cert = fibonacci_like_set(1)
    report = verify_certificate(cert, _fib_oracle(to), 2, to)
    assert report.symmetric_difference == (), (
        f"unexpected mismatches: {report.symmetric_difference}"
    )
    return (
        f"certificate = Fibonacci numbers exactly on [2, {to}]; "
        f"symmetric difference empty"
    )


def check_fibonacci_constant() -> str:
    fld = NumberField((-1, -1, 1), 1, 2, "phi")
    phi = fld.generator()
    fib = _fib_oracle(10**12)
    n = fib[-1]
    d = (phi * n).dist_to_int() * n
    # |n ||n phi|| - 1/sqrt(5)| < 1e-6, exactly: sqrt5 = 2 phi - 1
    inv_sqrt5 = (phi * 2 - 1).inverse()
    err = d - inv_sqrt5
    tol = Fraction(1, 10**6)
    assert (err - tol).sign() < 0 and (err + tol).sign() > 0, "constant mismatch"
    lo, hi = err.enclosure(Fraction(1, 2**80))
    return f"n={n}: |n*dist - 1/sqrt5| = {abs(float((lo + hi) / 2)):.3e} < 1e-6 (exact)"


def check_quadratic_norm_plus(to: int = 10**6) -> str:
    cert = norm_plus_filtered_set(4)
    a = 4
    odd = [1, a]
    while odd[-1] <= to:
        odd.append(a * odd[-1] - odd[-2])
    report = verify_certificate(cert, [t for t in odd if t <= to], 1, to)
    assert report.clean_beyond_bound, f"mismatch beyond bound: {report.symmetric_difference}"
    assert report.exceptional_bound <= 2, f"exceptional bound {report.exceptional_bound}"
    return (
        f"filtered set on [1, {to}] = odd-index denominators; "
        f"exceptional: {report.symmetric_difference}"
    )


def check_cubic(to: int = 10**6, h_to: int = 10**4, i_max: int = 20) -> str:
    cons = cubic_pisot_set(1, 1)
    cert = cons.certificate
    report = verify_certificate(cert, recurrence_terms(cons.recurrence, to), 1, to)
    assert report.symmetric_difference == (), (
        f"unexpected mismatches: {report.symmetric_difference}"
    )
    # closed form vs brute force wherever the distance is below Im(alpha)/2
    im_sq = cons.norm.im_u_sq
    checked = 0
    for q in range(1, h_to + 1):
        n0 = cons.n0_sq(q)
        if (n0 * 4 - im_sq).sign() < 0:
            assert (cons.h_sq(q) - n0).is_zero(), f"h^2 != N0^2 at q={q}"
            checked += 1
    # record law with the measured alignment, exact (implies 1e-6 relative)
    terms = recurrence_terms(cons.recurrence, 10**7)
    k = cons.plateau_pow
    m1_4 = cons.m1_sq * cons.m1_sq
    exact_from = None
    for i in range(2, min(i_max, len(terms) - 1) + 1):
        n0 = cons.n0_sq(terms[i])
        if (n0 * n0 * cons.beta ** (2 * i - k) - m1_4).is_zero():
            if exact_from is None:
                exact_from = i
        else:
            exact_from = None
    assert exact_from is not None and exact_from <= 4, "record law failed"
    return (
        f"set = recurrence values exactly on [1, {to}]; h == N0 at {checked} points "
        f"of [1, {h_to}]; records m(R_i) = m1 * beta^(({k} - 2i)/4)... exact from i={exact_from}"
    )


def check_very_sparse() -> str:
    params = very_sparse_alpha([2, 128, 128**7], 5, 6)
    cert = very_sparse_set(params)
    mem = cert.members(2, 10**5)
    assert mem == [2, 128], f"members {mem}"
    assert cert.member(128**7), "spot membership of the deepest term failed"
    return "members on [2, 1e5] = {2, 128}; spot check at 128^7 passed"


def check_heisenberg_growth() -> str:
    spec = default_orbit_spec(Fraction(1, 20))
    rows = growth_count(spec, (10**3, 10**4, 10**5, 10**6))
    ratios = [r.ratio for r in rows]
    assert all(r > 0 for r in ratios), "ratio not positive"
    spread = max(ratios) / min(ratios)
    assert spread < 4, f"ratio spread {spread:.2f} >= 4"
    assert all(r.skipped == 0 for r in rows), "precision skips occurred"
    for n in range(1, 1001):
        orbit_point(spec, n)  # raises if the third-coordinate identity fails
    detail = ", ".join(f"S({r.N})={r.count}" for r in rows)
    return f"{detail}; ratio spread {spread:.2f} < 4; z-identity exact for n <= 1000"


def check_ip_witness() -> str:
    rep = ap_witness_in_small_dist_set(5)
    assert rep.witness is not None and rep.witness[0] == 169, f"witness {rep.witness}"
    return f"m=169: progression {rep.witness} verified exactly"


def check_finite_sums_probe() -> str:
    fib = fibonacci_like_set(1)
    rep = find_ipr_in_set(fib, 4, 10**4)
    assert rep.exhaustive and rep.witness is None, f"unexpected witness {rep.witness}"
    rep_t = translated_ip_probe(fib, 3, 10**4, range(0, 11))
    assert rep_t.exhaustive and rep_t.witness is None, f"unexpected witness {rep_t.witness}"
    return (
        f"no FS(n1..n4) <= 1e4 ({rep.nodes_explored} nodes); no translated FS(n1..n3) "
        f"with shifts 0..10 ({rep_t.nodes_explored} nodes); one-sided probes"
    )


# ---------------------------------------------------------------------------
# property battery (criterion 9 and the quick suite)
# ---------------------------------------------------------------------------

def check_floor_family_identities(samples: int = 10**4) -> str:
    rng = random.Random(20260811)
    fld = NumberField((-2, 0, 1), 1, 2, "s")
    sq2 = fld.generator()
    for _ in range(samples):
        kind = rng.randrange(3)
        if kind == 0:
            x = Fraction(rng.randrange(-10**6, 10**6), rng.randrange(1, 10**3))
        else:
            x = sq2 * rng.randrange(-10**4, 10**4) + Fraction(rng.randrange(-100, 100), 7)
        m, f = floor_frac(x)
        assert sign_of(f) >= 0 and sign_of(rsub(f, Fraction(1))) < 0
        assert compare(radd(f, Fraction(m)), x) == 0
        assert nint_of(x) == floor_frac(radd(x, Fraction(1, 2)))[0]
        d = dist_of(x)
        f2 = frac_of(x)
        alt = rsub(Fraction(1), f2)
        expected = f2 if compare(f2, alt) <= 0 else alt
        assert compare(d, expected) == 0
    return f"floor/frac/nint/dist identities hold on {samples} sampled values"


def check_discrete_difference(cases: int = 100) -> str:
    rng = random.Random(987654321)
    for _ in range(cases):
        deg = rng.randrange(0, 4)
        d = deg + 1 + rng.randrange(0, 2)
        poly = RationalConst(Fraction(rng.randrange(-9, 10), rng.randrange(1, 5)))
        expr = poly
        for j in range(deg):
            c = Fraction(rng.randrange(-9, 10), rng.randrange(1, 5))
            expr = radd_expr(expr, c, j + 1)
        shifts = [rng.randrange(1, 50) for _ in range(d)]
        val = discrete_difference(expr, shifts)
        assert isinstance(val, Fraction) and val == 0, f"nonzero difference {val}"
    return f"{cases} random polynomials of degree < d vanish under d shifts"


def radd_expr(expr, c: Fraction, power: int):
    from .gpexpr import Add, Mul, Pow

    return Add(expr, Mul(RationalConst(c), Pow(N, power)))


def check_parser_roundtrip(cases: int = 120) -> str:
    rng = random.Random(13579)
    phi_field = NumberField((-1, -1, 1), 1, 2, "phi")

    def gen(depth: int):
        from .gpexpr import Add, Const, Dist, Floor, Frac, Mul, Nint, Pow, Sub

        if depth == 0:
            leaves = [
                N,
                RationalConst(Fraction(rng.randrange(0, 30))),
                RationalConst(Fraction(rng.randrange(1, 9), rng.randrange(2, 9))),
                Const("phi", phi_field.generator()),
                Const(
                    "phi",
                    phi_field.element(
                        Fraction(rng.randrange(-4, 5), rng.randrange(1, 4)),
                        Fraction(rng.randrange(-4, 5)),
                    ),
                ),
            ]
            return rng.choice(leaves)
        op = rng.randrange(7)
        if op == 0:
            return Add(gen(depth - 1), gen(depth - 1))
        if op == 1:
            return Sub(gen(depth - 1), gen(depth - 1))
        if op == 2:
            return Mul(gen(depth - 1), gen(depth - 1))
        if op == 3:
            return Pow(gen(depth - 1), rng.randrange(0, 4))
        if op == 4:
            return Floor(gen(depth - 1))
        if op == 5:
            return Frac(gen(depth - 1))
        return rng.choice([Nint, Dist])(gen(depth - 1))

    for _ in range(cases):
        e = gen(rng.randrange(1, 4))
        text = to_text(e)
        reparsed = parse(text)
        assert to_text(reparsed) == text, f"round trip failed for {text!r}"
        assert parse(to_text(reparsed)) == reparsed
    return f"print-parse round trip stable on {cases} generated expressions"


def check_heisenberg_axioms(cases: int = 60) -> str:
    rng = random.Random(24680)
    fld = NumberField((-2, 0, 1), 1, 2, "s")
    s = fld.generator()

    def rand_elem():
        def coord():
            return s * rng.randrange(-20, 21) + Fraction(rng.randrange(-20, 21), 7)

        return elem(coord(), coord(), coord())

    for _ in range(cases):
        g, h, k = rand_elem(), rand_elem(), rand_elem()
        lhs = heis_mul(heis_mul(g, h), k)
        rhs = heis_mul(g, heis_mul(h, k))
        for a, b in zip(lhs, rhs):
            assert compare(a, b) == 0
        for a in heis_mul(g, heis_inv(g)):
            assert compare(a, Fraction(0)) == 0
        frac, integral = heis_reduce(g)
        for a in integral:
            assert isinstance(a, Fraction) and a.denominator == 1
        for a in frac:
            assert sign_of(a) >= 0 and compare(a, Fraction(1)) < 0
        back = heis_mul(frac, integral)
        for a, b in zip(back, g):
            assert compare(a, b) == 0
    return f"group axioms, inverses and reduction verified on {cases} random triples"


def check_legendre_completeness(n_max: int = 1000) -> str:
    fld_phi = NumberField((-1, -1, 1), 1, 2, "phi")
    fld_s2 = NumberField((-2, 0, 1), 1, 2, "s")
    fld_s3 = NumberField((1, -4, 1), 3, 4, "t")
    count = 0
    for x in (fld_phi.generator(), fld_s2.generator(), fld_s3.generator()):
        conv = {pq for pq in convergents(cf_expand(x), 40)}
        import math as _math

        for n in range(1, n_max + 1):
            m = (x * n).nint()
            if _math.gcd(m, n) != 1:
                continue
            if legendre_check(x, m, n):
                assert (m, n) in conv, f"({m},{n}) passes but is not a convergent"
                count += 1
    return f"all {count} passing pairs with n <= {n_max} are convergents (3 constants)"


def check_best_approx_2d_monotone(Q: int = 100) -> str:
    fld = NumberField((-1, -1, -1, 1), 1, 2, "b")
    from .cf import RauzyNorm

    norm = RauzyNorm.for_cubic_field(fld, 1)
    beta = fld.generator()
    ba = best_approx_2d((beta.inverse(), (beta * beta).inverse()), norm, Q)
    for prev, cur in zip(ba, ba[1:]):
        assert (cur.value_sq - prev.value_sq).sign() < 0, "records not strictly decreasing"
    qs = [b.q for b in ba]
    return f"record values strictly decrease along q = {qs}"


def check_best_approx_1d_matches_convergents(Q: int = 10**4) -> str:
    fields = [
        NumberField((-1, -1, 1), 1, 2, "phi"),
        NumberField((-2, 0, 1), 1, 2, "s"),
        NumberField((1, -4, 1), 3, 4, "t"),
    ]
    for fld in fields:
        x = fld.generator()
        ba = [b.q for b in best_approx_1d(x, Q)]
        conv = [q for _, q in convergents(cf_expand(x), 60) if q <= Q]
        # initial duplicated denominator collapses in the best-approx list
        dedup = sorted(set(conv))
        assert ba == [q for q in dedup if q <= Q], f"{fld.name}: {ba[:8]} vs {dedup[:8]}"
    return f"best approximations = convergent denominators up to {Q} (3 constants)"


def check_error_term_sandwich() -> str:
    fields = [
        NumberField((-1, -1, 1), 1, 2, "phi"),
        NumberField((-2, 0, 1), 1, 2, "s"),
        NumberField((1, -4, 1), 3, 4, "t"),
    ]
    for fld in fields:
        x = fld.generator()
        conv = convergents(cf_expand(x), 31)
        for (p1, q1), (p2, q2) in zip(conv, conv[1:]):
            err = (x - Fraction(p1, q1)).abs()
            lo = Fraction(1, 2 * q1 * q2)
            hi = Fraction(1, q1 * q2)
            assert (err - lo).sign() >= 0, f"{fld.name}: error below sandwich at q={q1}"
            assert (err - hi).sign() <= 0, f"{fld.name}: error above sandwich at q={q1}"
    return "1/(2 q_j q_{j+1}) <= |x - p_j/q_j| <= 1/(q_j q_{j+1}) for j <= 30 (3 constants)"


# ---------------------------------------------------------------------------
# suite runner
# ---------------------------------------------------------------------------

QUICK_CHECKS: list[tuple[str, Callable[[], str]]] = [
    ("floor-family-identities", check_floor_family_identities),
    ("discrete-difference-vanishing", check_discrete_difference),
    ("parser-roundtrip", check_parser_roundtrip),
    ("heisenberg-axioms", lambda: check_heisenberg_axioms(40)),
    ("legendre-completeness", check_legendre_completeness),
    ("best-approx-2d-monotone", check_best_approx_2d_monotone),
    ("error-term-sandwich", check_error_term_sandwich),
    ("best-approx-1d-vs-convergents", lambda: check_best_approx_1d_matches_convergents(2000)),
]

PAPER_CHECKS: list[tuple[str, Callable[[], str]]] = [
    ("fibonacci-certificate", check_fibonacci_certificate),
    ("fibonacci-constant", check_fibonacci_constant),
    ("quadratic-norm-plus", check_quadratic_norm_plus),
    ("cubic-tribonacci", check_cubic),
    ("very-sparse-compiler", check_very_sparse),
    ("heisenberg-growth", check_heisenberg_growth),
    ("ip-r-witness", check_ip_witness),
    ("finite-sums-probe", check_finite_sums_probe),
    ("property-battery", lambda: "; ".join(fn() for _, fn in QUICK_CHECKS)),
]

SUITES = {"quick": QUICK_CHECKS, "paper-checks": PAPER_CHECKS}


def run_suite(name: str) -> list[CheckResult]:
    if name not in SUITES:
        raise GPLabError(f"unknown suite {name!r}; available: {sorted(SUITES)}")
    results = []
    for check_name, fn in SUITES[name]:
        t0 = time.perf_counter()
        try:
            detail = fn()
            results.append(CheckResult(check_name, True, detail, time.perf_counter() - t0))
        except (AssertionError, GPLabError) as exc:
            results.append(CheckResult(check_name, False, str(exc), time.perf_counter() - t0))
    return results
