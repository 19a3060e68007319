#!/usr/bin/env python3
"""Best uniform rational approximation of exp(-x) on [0, inf).

Runs a rational Remez exchange in the variable u = (x - c) / (x + c), which
maps [0, inf) onto [-1, 1] and preserves the rational type (r, r). The result
is written as partial fractions

    exp(-x) ~ a0 + sum_j a_j / (1 + b_j x)

and emitted as the C++ header include/specbasis/exp_rational_table.hpp.

Usage: gen_exp_rational.py [--out PATH] [--rmin 3] [--rmax 14]
"""

import argparse
import sys

import mpmath as mp

mp.mp.dps = 80


def cheb_eval(coeffs, u):
    # Clenshaw
    b1 = mp.mpf(0)
    b2 = mp.mpf(0)
    for a in reversed(coeffs[1:]):
        b1, b2 = 2 * u * b1 - b2 + a, b1
    return u * b1 - b2 + coeffs[0]


def cheb_to_monomial(coeffs):
    n = len(coeffs)
    t_prev = [mp.mpf(1)]
    t_cur = [mp.mpf(0), mp.mpf(1)]
    out = [mp.mpf(0)] * n
    out[0] += coeffs[0]
    if n > 1:
        out[1] += coeffs[1]
    for k in range(2, n):
        t_next = [mp.mpf(0)] * (k + 1)
        for i, v in enumerate(t_cur):
            t_next[i + 1] += 2 * v
        for i, v in enumerate(t_prev):
            t_next[i] -= v
        for i, v in enumerate(t_next):
            out[i] += coeffs[k] * v
        t_prev, t_cur = t_cur, t_next
    return out


class Problem:
    def __init__(self, r, c, proper):
        self.r = r
        self.c = mp.mpf(c)
        # proper: type (r-1, r) in x, i.e. numerator (1 - u) * poly_{r-1}(u)
        self.proper = proper
        self.np = r if proper else r + 1

    def num_basis(self, k, u):
        if self.proper:
            return (1 - u) * mp.chebyt(k, u)
        return mp.chebyt(k, u)

    def num_eval(self, p, u):
        if self.proper:
            return (1 - u) * cheb_eval(p, u)
        return cheb_eval(p, u)

    def f(self, u):
        if u >= 1:
            return mp.mpf(0)
        x = self.c * (1 + u) / (1 - u)
        return mp.e ** (-x)

    def solve_reference(self, ref):
        r = self.r
        npn = self.np
        m = npn + r + 1
        A = mp.matrix(m, m)
        C = mp.matrix(m, m)
        for i, u in enumerate(ref):
            fu = self.f(u)
            sign = 1 if i % 2 == 0 else -1
            tk = [mp.chebyt(k, u) for k in range(r + 1)]
            for k in range(npn):
                A[i, k] = self.num_basis(k, u)
            for k in range(r + 1):
                A[i, npn + k] = -fu * tk[k]
                C[i, npn + k] = sign * tk[k]
        # A v = E C v  <=>  (A^-1 C) v = (1/E) v
        M = mp.inverse(A) * C
        evals, evecs = mp.eig(M)
        best = None
        for idx, mu in enumerate(evals):
            if abs(mp.im(mu)) > mp.mpf(10) ** (-30) * (1 + abs(mu)):
                continue
            mu = mp.re(mu)
            if mu == 0:
                continue
            v = [mp.re(evecs[j, idx]) for j in range(m)]
            p = v[:npn]
            q = v[npn:]
            # pole-free denominator on [-1, 1]
            grid = [mp.cos(mp.pi * j / 400) for j in range(401)]
            vals = [cheb_eval(q, g) for g in grid]
            if not (all(x > 0 for x in vals) or all(x < 0 for x in vals)):
                continue
            E = 1 / mu
            if best is None or abs(E) < abs(best[0]):
                best = (E, p, q)
        if best is None:
            raise RuntimeError("no admissible reference solution")
        return best

    def error(self, p, q, u):
        return self.f(u) - self.num_eval(p, u) / cheb_eval(q, u)


def locate_extrema(prob, p, q, npts=6000):
    # Cluster samples near u = -1 and u = 1 where the error oscillates fastest.
    us = [-mp.cos(mp.pi * j / npts) for j in range(npts + 1)]
    if prob.proper:
        us = us[:-1]
    es = [prob.error(p, q, u) for u in us]
    # split into runs of constant sign, take the max |e| in each run
    runs = []
    start = 0
    for j in range(1, len(us) + 1):
        if j == len(us) or mp.sign(es[j]) != mp.sign(es[start]):
            seg = range(start, j)
            jm = max(seg, key=lambda t: abs(es[t]))
            runs.append(jm)
            start = j
    refined = []
    for jm in runs:
        if jm == 0 or jm == len(us) - 1:
            refined.append(us[jm])
            continue
        a, b = us[jm - 1], us[jm + 1]
        s = mp.sign(es[jm])
        g = lambda u: -s * prob.error(p, q, u)
        # golden-section search
        phi = (mp.sqrt(5) - 1) / 2
        x1 = b - phi * (b - a)
        x2 = a + phi * (b - a)
        f1, f2 = g(x1), g(x2)
        for _ in range(120):
            if f1 < f2:
                b, x2, f2 = x2, x1, f1
                x1 = b - phi * (b - a)
                f1 = g(x1)
            else:
                a, x1, f1 = x1, x2, f2
                x2 = a + phi * (b - a)
                f2 = g(x2)
        refined.append((a + b) / 2)
    return refined


def remez(r, c, proper, iters=60, verbose=False):
    prob = Problem(r, c, proper)
    m = prob.np + r + 1
    if proper:
        ref = [-mp.cos(mp.pi * i / m) for i in range(m)]
    else:
        ref = [-mp.cos(mp.pi * i / (m - 1)) for i in range(m)]
    E, p, q = None, None, None
    for it in range(iters):
        E, p, q = prob.solve_reference(ref)
        ext = locate_extrema(prob, p, q)
        errs = [abs(prob.error(p, q, u)) for u in ext]
        emax = max(errs)
        if verbose:
            print(f"r={r} it={it} |E|={mp.nstr(abs(E), 8)} max={mp.nstr(emax, 8)} n_ext={len(ext)}", file=sys.stderr)
        if len(ext) < m:
            raise RuntimeError(f"lost alternation at r={r}: {len(ext)} < {m}")
        # keep m alternating extrema with the largest errors
        while len(ext) > m:
            if abs(prob.error(p, q, ext[0])) < abs(prob.error(p, q, ext[-1])):
                ext = ext[1:]
            else:
                ext = ext[:-1]
        ref = ext
        if abs(emax - abs(E)) < mp.mpf(10) ** (-12) * abs(E):
            break
    return prob, E, p, q


def partial_fractions(prob, p, q):
    c = prob.c
    qm = cheb_to_monomial(q)
    while abs(qm[-1]) < mp.mpf(10) ** (-60):
        qm.pop()
    roots = mp.polyroots(list(reversed(qm)), maxsteps=400, extraprec=400)
    dq = [k * qm[k] for k in range(1, len(qm))]
    a0 = prob.num_eval(p, mp.mpf(1)) / cheb_eval(q, mp.mpf(1))
    poles = []
    for uj in roots:
        theta = c * (1 + uj) / (1 - uj)
        pu = sum(pk * prob.num_basis(k, uj) for k, pk in enumerate(p))
        qpu = sum(dk * uj ** k for k, dk in enumerate(dq))
        dudx = 2 * c / (theta + c) ** 2
        res = pu / (qpu * dudx)
        beta = -1 / theta
        alpha = -res / theta
        poles.append((alpha, beta))
    return a0, poles


def evaluate_pf(a0, poles, x):
    s = mp.mpc(a0)
    for a, b in poles:
        s += a / (1 + b * x)
    return s


def canonical(poles):
    # real pole first, then conjugate pairs as (Im b > 0, Im b < 0), ordered by |b|
    tol = mp.mpf(10) ** (-40)
    real = [(mp.re(a), mp.re(b)) for a, b in poles if abs(mp.im(b)) < tol]
    upper = [(a, b) for a, b in poles if mp.im(b) >= tol]
    upper.sort(key=lambda ab: abs(ab[1]))
    out = [(mp.mpc(a, 0), mp.mpc(b, 0)) for a, b in real]
    for a, b in upper:
        out.append((a, b))
        out.append((mp.conj(a), mp.conj(b)))
    return out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default=None)
    ap.add_argument("--rmin", type=int, default=3)
    ap.add_argument("--rmax", type=int, default=14)
    ap.add_argument("-v", action="store_true")
    ap.add_argument("--type", choices=["proper", "square"], default="proper",
                    help="proper: type (r-1, r), no constant term; square: type (r, r)")
    args = ap.parse_args()

    tables = []
    for r in range(args.rmin, args.rmax + 1):
        prob, E, p, q = remez(r, c=mp.mpf(r) / 2 + 1, proper=(args.type == "proper"), verbose=args.v)
        a0, poles = partial_fractions(prob, p, q)
        poles = canonical(poles)
        # independent check on a log grid in x
        xs = [mp.mpf(0)] + [mp.mpf(10) ** (mp.mpf(k) / 200) for k in range(-1600, 1001)]
        err = max(abs(evaluate_pf(a0, poles, x) - mp.e ** (-x)) for x in xs)
        print(f"r={r:2d} minimax error {mp.nstr(abs(E), 10)} grid check {mp.nstr(err, 10)}", file=sys.stderr)
        tables.append((r, abs(E), a0, poles))

    lines = []
    lines.append("// Generated by tools/gen_exp_rational.py. Do not edit.")
    lines.append("//")
    lines.append("// Best uniform rational approximation of exp(-s) on [0, inf), type (r - 1, r)")
    lines.append("// unless noted, in partial-fraction form  a0 + sum_j a_j / (1 + b_j s).")
    lines.append("#pragma once")
    lines.append("")
    lines.append("#include <array>")
    lines.append("#include <complex>")
    lines.append("#include <span>")
    lines.append("")
    lines.append("namespace specbasis::detail {")
    lines.append("")
    lines.append("struct ExpRationalTerm {")
    lines.append("  double weight_re, weight_im;")
    lines.append("  double node_re, node_im;")
    lines.append("};")
    lines.append("")
    lines.append("struct ExpRationalEntry {")
    lines.append("  int degree;")
    lines.append("  double minimax_error;")
    lines.append("  double constant;")
    lines.append("  std::span<const ExpRationalTerm> terms;")
    lines.append("};")
    lines.append("")
    for r, E, a0, poles in tables:
        lines.append(f"inline constexpr std::array<ExpRationalTerm, {r}> kExpRational{r} = {{{{")
        for a, b in poles:
            lines.append(
                "    {%s, %s, %s, %s},"
                % tuple(mp.nstr(v, 17, strip_zeros=False, min_fixed=1, max_fixed=0)
                        for v in (mp.re(a), mp.im(a), mp.re(b), mp.im(b)))
            )
        lines.append("}};")
        lines.append("")
    lines.append(f"inline constexpr std::array<ExpRationalEntry, {len(tables)}> kExpRationalTable = {{{{")
    for r, E, a0, poles in tables:
        lines.append(
            "    {%d, %s, %s, kExpRational%d},"
            % (r, mp.nstr(E, 6, min_fixed=1, max_fixed=0), mp.nstr(mp.re(a0), 17, strip_zeros=False, min_fixed=1, max_fixed=0), r)
        )
    lines.append("}};")
    lines.append("")
    lines.append("}  // namespace specbasis::detail")
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


if __name__ == "__main__":
    main()
