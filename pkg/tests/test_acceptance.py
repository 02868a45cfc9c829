"""Acceptance gate: nine end-to-end criteria, one summary line each.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
lines; each test prints exactly one PASS/FAIL line with the measured
figures before asserting.
"""
from __future__ import annotations

import time
from fractions import Fraction

import numpy as np

from fibweave import chain, converge, distill, weave, words
from fibweave.chain import Chain
from fibweave.model import TAU_F, make_constants
from fibweave.numerics import BigComplex, Mat2, big_sqrt, exp_i_pi


def _line(n, ok, detail):
    print(f"criterion {n}: {'PASS' if ok else 'FAIL'} — {detail}")
    return ok


def _rand_unitary(rng):
    z = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    q, r = np.linalg.qr(z)
    return q @ np.diag(np.diag(r) / np.abs(np.diag(r)))


def _rand_unitary_big(rng, bits):
    """Exactly unitary at full precision: one rotation angle, three phases,
    every entry built from exp_i_pi."""
    th, ph, ps, al = rng.uniform(-1, 1, size=4)
    e = exp_i_pi(th, bits)
    cos_t = (e + e.conjugate()) * 0.5
    sin_t = (e - e.conjugate()) * complex(0, -0.5)
    e_ph, e_ps, e_al = (exp_i_pi(x, bits) for x in (ph, ps, al))
    return Mat2(
        e_al * e_ph * cos_t,
        e_al * e_ps * sin_t,
        -e_al * e_ps.conjugate() * sin_t,
        e_al * e_ph.conjugate() * cos_t,
    )


def _big_pow(x, k):
    out = BigComplex.one(x.precision_bits)
    for _ in range(k):
        out = out * x
    return out


def _abs_pow5(z):
    a = abs(z)
    return a * a * a * a * a


def test_criterion_1_product_laws():
    """Both five-factor entry laws on 200 random unitaries, double and
    256-bit, inside 1e-12 / 1e-60."""
    t0 = time.monotonic()
    rng = np.random.default_rng(101)
    worst_d = 0.0
    for _ in range(200):
        u = _rand_unitary(rng)
        w = converge.iconverge(u)
        worst_d = max(worst_d, abs(abs(w[1, 0]) - abs(u[1, 0]) ** 5))
        w = converge.xconverge(u)
        worst_d = max(worst_d, abs(abs(w[0, 0]) - abs(u[0, 0]) ** 5))
    worst_b = 0.0
    for _ in range(200):
        u = _rand_unitary_big(rng, 256)
        w = converge.iconverge(u)
        worst_b = max(worst_b, abs(float(abs(abs(w.a10) - _abs_pow5(u.a10)))))
        w = converge.xconverge(u)
        worst_b = max(worst_b, abs(float(abs(abs(w.a00) - _abs_pow5(u.a00)))))
    dt = time.monotonic() - t0
    ok = worst_d <= 1e-12 and worst_b <= 1e-60 and dt < 1.0
    assert _line(
        1,
        ok,
        f"200 unitaries, double worst {worst_d:.2e} (<=1e-12), "
        f"256-bit worst {worst_b:.2e} (<=1e-60), {dt:.2f}s (<1s)",
    )


def test_criterion_2_exact_error_laws():
    """Entry magnitudes of the recursed words against golden-ratio powers,
    relative error 1e-20 at 256 bits, order 3 at 1024 bits."""
    t0 = time.monotonic()
    worst = 0.0

    def check(bits, orders):
        nonlocal worst
        consts = make_constants(bits)
        tau = consts.tau
        for j in orders:
            m = words.evaluate(words.m_word(j, words.SEED_S), consts)
            target = 1 / _big_pow(tau, 5**j)
            worst = max(worst, float(abs(abs(abs(m.a00) - target) / target)))
            m = words.evaluate(words.m_word(j, words.SEED_WEAVE), consts)
            target = 1 / _big_pow(tau, 2 * 5**j)
            worst = max(worst, float(abs(abs(abs(m.a00) - target) / target)))
            n = words.evaluate(words.n_word(j), consts)
            target = 1 / big_sqrt(_big_pow(tau, 5**j))
            worst = max(worst, float(abs(abs(abs(n.a10) - target) / target)))

    check(256, (0, 1, 2))
    check(1024, (3,))
    dt = time.monotonic() - t0
    ok = worst <= 1e-20 and dt < 10.0
    assert _line(
        2,
        ok,
        f"three laws, orders 0-2 at 256b and 3 at 1024b, worst relative "
        f"{worst:.2e} (<=1e-20), {dt:.2f}s (<10s)",
    )


def test_criterion_3_length_and_permutation():
    t0 = time.monotonic()
    counts = [
        words.word_metrics(words.m_word(j, words.SEED_S))["elementary_braid_count"]
        for j in range(4)
    ]
    gcounts = [words.generator_braid_count(words.generator_word(j)) for j in range(4)]
    counts_ok = counts == [1, 13, 73, 373] == [3 * 5**j - 2 for j in range(4)]
    counts_ok &= gcounts == counts
    perm_ok = all(
        words.word_permutation(j) == ((0, 2, 1) if j % 2 == 0 else (2, 1, 0))
        for j in range(9)
    )
    dt = time.monotonic() - t0
    ok = counts_ok and perm_ok and dt < 1.0
    assert _line(
        3,
        ok,
        f"exchange counts {counts}, permutations alternate through order 8, "
        f"{dt:.2f}s (<1s)",
    )


def test_criterion_4_machine_closure_and_semantics():
    t0 = time.monotonic()
    closure_ok = True
    for j in range(4):
        w = words.m_word(j, words.SEED_WEAVE)
        for s in weave.STATES:
            prog = weave.compile_weave(w, s)
            closure_ok &= prog.end_state == s and len(prog.closing) <= 2
    for j in (0, 2):
        prog = weave.compile_weave(words.n_word(j), ("Pair", "D"))
        closure_ok &= prog.end_state == ("Nested", "D") and prog.closing == ()

    worst = 0.0
    semantic_cases = [
        (words.m_word(j, words.SEED_WEAVE), ("Nested", "D")) for j in (0, 1, 2)
    ] + [(words.n_word(j), ("Pair", "D")) for j in (0, 1, 2)]
    rng = np.random.default_rng(77)
    states = list(weave.STATES)
    for _ in range(100):
        length = int(rng.integers(1, 51))
        first_f = bool(rng.integers(0, 2))
        word = []
        for i in range(length):
            if (i % 2 == 0) == first_f:
                word.append(("F",))
            else:
                a = int(rng.integers(1, 4)) * (1 if rng.integers(0, 2) else -1)
                word.append(("R", a))
        semantic_cases.append((tuple(word), states[int(rng.integers(0, 6))]))
    for word, start in semantic_cases:
        m, pe, _end = weave.weave_semantics(word, start)
        gap = np.abs(np.exp(-1j * np.pi / 5 * pe) * m - words.evaluate(word)).max()
        worst = max(worst, float(gap))
    dt = time.monotonic() - t0
    ok = closure_ok and worst <= 1e-12 and dt < 30.0
    assert _line(
        4,
        ok,
        f"closure from all six starts through order 3, semantics gap "
        f"{worst:.2e} (<=1e-12) over {len(semantic_cases)} words, "
        f"{dt:.2f}s (<30s)",
    )


def test_criterion_5_chain_oracle():
    t0 = time.monotonic()
    rng = np.random.default_rng(55)
    worst = 0.0
    for _ in range(12):
        n = int(rng.integers(4, 9))
        charges = [int(rng.integers(0, 2)) for _ in range(n)]
        paths = chain.paths_for(charges)
        v = rng.normal(size=len(paths)) + 1j * rng.normal(size=len(paths))
        v /= np.linalg.norm(v)
        st = Chain({(tuple(charges), p): v[i] for i, p in enumerate(paths)})
        i = int(rng.integers(1, n - 1))
        a = st.braid_adjacent(i).braid_adjacent(i + 1).braid_adjacent(i)
        b = st.braid_adjacent(i + 1).braid_adjacent(i).braid_adjacent(i + 1)
        keys = set(a.amps) | set(b.amps)
        worst = max(
            worst, max(abs(a.amps.get(k, 0) - b.amps.get(k, 0)) for k in keys)
        )
        if n >= 4:
            k = 1 if i >= 3 else n - 1
            if abs(k - i) >= 2:
                c = st.braid_adjacent(i).braid_adjacent(k)
                d = st.braid_adjacent(k).braid_adjacent(i)
                keys = set(c.amps) | set(d.amps)
                worst = max(
                    worst,
                    max(abs(c.amps.get(kk, 0) - d.amps.get(kk, 0)) for kk in keys),
                )
    dims = [
        len([p for p in chain.paths_for([1] * n) if p[-1] == 0])
        for n in range(2, 17)
    ]
    fib = [1, 1]
    while len(fib) < 15:
        fib.append(fib[-1] + fib[-2])
    dims_ok = dims == fib

    st = Chain.from_path((1, 0, 0, 1), (0, 1, 1, 1, 0), 0.6 + 0.8j)
    moved = st.braid_adjacent(3).braid_adjacent(2)
    back = moved.braid_adjacent(2, False).braid_adjacent(3, False)
    transparent_ok = (
        back.amps == st.amps
        and list(moved.amps.values()) == [0.6 + 0.8j]
    )
    dt = time.monotonic() - t0
    ok = worst <= 1e-12 and dims_ok and transparent_ok
    assert _line(
        5,
        ok,
        f"braid relations worst {worst:.2e} (<=1e-12), state-space "
        f"dimensions follow the Fibonacci sequence through 16 anyons, "
        f"vacuum transparency bitwise exact, {dt:.2f}s",
    )


def test_criterion_6_end_to_end_distillation():
    t0 = time.monotonic()
    target = 1 - TAU_F**-20

    # (a) the compiled order-1 addition gadget on two nontrivial pairs
    prog = weave.compile_weave(words.m_word(1, words.SEED_WEAVE), ("Pair", "D"))
    st = Chain.init_pairs([1, 1]).apply_exchanges(weave.gadget_exchanges(prog, 2))
    p11 = st.cut_distribution(2)[1]
    a_ok = p11 >= target - 1e-12
    marg = distill.run_end_to_end([1], [1], 1)["marginal_left"]
    a_ok &= marg >= target - 1e-12

    # (b) the generator realisation moves charge across the cut whenever
    # either pair is nontrivial
    gw = words.generator_word(1)
    b_vals = {}
    for pc in ((1, 0), (0, 1), (1, 1), (0, 0)):
        stg = Chain.init_pairs(pc)
        for s, a in reversed(gw):
            for _ in range(abs(a)):
                stg = stg.braid_adjacent(s, a > 0)
        b_vals[pc] = stg.cut_distribution(2)[1]
    b_ok = (
        abs(b_vals[(1, 0)] - 1) <= 1e-9
        and abs(b_vals[(0, 1)] - 1) <= 1e-9
        and abs(b_vals[(1, 1)] - (1 - TAU_F**-10)) <= 1e-9
        and b_vals[(0, 0)] <= 1e-12
    )

    # (c) full enumeration over two pairs per side agrees with the exact
    # aggregation, on the independently expanded route
    probs = {}
    for left in ((0, 1), (1, 0), (1, 1)):
        for right in ((0, 1), (1, 0), (1, 1)):
            probs[(left, right)] = distill.run_end_to_end(left, right, 2)[
                "probability"
            ]
    c_gap = 0.0
    for p in (0.3, 0.7):
        agg = 0.0
        for left in ((0, 0), (0, 1), (1, 0), (1, 1)):
            for right in ((0, 0), (0, 1), (1, 0), (1, 1)):
                wgt = 1.0
                for c in left + right:
                    wgt *= p if c else 1 - p
                if any(left) and any(right):
                    agg += wgt * probs[(left, right)]
        c_gap = max(c_gap, abs(agg - distill.exact_success("one-mobile", 2, p, j=2)))
    c_ok = c_gap <= 1e-9

    dt = time.monotonic() - t0
    ok = a_ok and b_ok and c_ok and dt < 120.0
    assert _line(
        6,
        ok,
        f"gadget cut probability {p11:.12f} >= {target:.12f}, one-sided "
        f"generator runs {b_vals[(1, 0)]:.9f}/{b_vals[(0, 1)]:.9f} (=1±1e-9), "
        f"enumeration gap {c_gap:.2e} (<=1e-9), {dt:.1f}s (<120s)",
    )


def test_criterion_7_protocol_probabilities():
    t0 = time.monotonic()
    trials = 100000
    worst_sigma = 0.0
    bound_ok = True
    seed = 1000
    for p in (0.3, 0.5, 0.9):
        pf = Fraction(str(p))
        for n in (2, 4, 8):
            for scheme, exact in (
                ("one-mobile", distill.one_mobile_floor(n, pf)),
                ("hierarchical", distill.hierarchical_success(n, pf, 0)),
            ):
                seed += 1
                mc = distill.monte_carlo(scheme, n, p, trials, seed)
                q = float(exact)
                se = max(np.sqrt(q * (1 - q) / trials), 1e-12)
                worst_sigma = max(worst_sigma, abs(mc["estimate"] - q) / se)
            m = n * p
            bound_ok &= float(distill.one_mobile_floor(n, pf)) >= 1 - 2 / np.exp(m)
    # one merge with a substantial failure rate exercises the eps term
    exact = float(distill.hierarchical_success(2, Fraction(1, 2), Fraction(1, 5)))
    mc = distill.monte_carlo("hierarchical", 2, 0.5, trials, 99, eps=0.2)
    se = np.sqrt(exact * (1 - exact) / trials)
    worst_sigma = max(worst_sigma, abs(mc["estimate"] - exact) / se)
    dt = time.monotonic() - t0
    ok = worst_sigma <= 3.0 and bound_ok and dt < 30.0
    assert _line(
        7,
        ok,
        f"18 scheme/size/rate combinations plus a lossy merge, worst "
        f"deviation {worst_sigma:.2f} standard errors (<=3), exponential "
        f"floor bound holds, {dt:.1f}s (<30s)",
    )


def test_criterion_8_cost_scaling():
    t0 = time.monotonic()
    ratio_ok = True
    ratios = []
    for j in (1, 2):
        totals = [distill.braid_cost(n, j)["total_dominant"] for n in (2, 4, 8, 16)]
        rs = [totals[i + 1] / totals[i] for i in range(3)]
        ratios.append(rs)
        ratio_ok &= all(3.5 <= r <= 4.5 for r in rs)
    sweep_ok = all(
        distill.braid_cost(2, j)["word_length"] == 3 * 5**j - 2 for j in range(4)
    )
    dt = time.monotonic() - t0
    ok = ratio_ok and sweep_ok
    assert _line(
        8,
        ok,
        f"doubling ratios {ratios[0]} within [3.5, 4.5], per-gadget lengths "
        f"exact through order 3, {dt:.2f}s",
    )


def test_criterion_9_order_fits():
    t0 = time.monotonic()
    r1 = converge.order_estimate(1)["offdiagonal"]["slope"]
    r2 = converge.order_estimate(2)["offdiagonal"]["slope"]
    r3 = converge.order_estimate(3)["offdiagonal"]["slope"]
    dt = time.monotonic() - t0
    ok = abs(r1 - 3) <= 0.1 and abs(r2 - 5) <= 0.1
    assert _line(
        9,
        ok,
        f"fitted orders {r1:.4f} (3±0.1) and {r2:.4f} (5±0.1); order-3 "
        f"fit {r3:.4f} recorded, not asserted, {dt:.2f}s",
    )
