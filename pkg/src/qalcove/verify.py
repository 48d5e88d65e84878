r"""Identity verification engine and proof-machinery property checks.

Every identity is checked as an exact equality of formal Demazure
combinations: the shifted-weight symbols on each side are rewritten through
``chevalley_expand`` down to the base weight, denominators are cleared, and
the residual (difference) must vanish.  Failures produce a
``VerificationReport`` carrying the residual for inspection.

Alongside the identity checks this module houses the mechanisms the proofs
rest on: the six-case pairing on (B, A1) subset pairs, the group-algebra
collapse of chained filtered sums onto a single directed path, the
cancellation certificate for streamed summands, and the scan over the
conjectured collapsed second-form identities.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Iterable

from .alcove import admissible_subsets, make_chain, subset_stats
from .expansions import (
    AffinePair,
    Term,
    chained_filtered,
    enumerate_S,
    expand_to_base,
    fold_terms,
    ic_conj_second_terms,
    ic_lhs,
    ic_rhs_conjecture_second,
    ic_rhs_first,
    ic_rhs_second,
)
from .qbg import QBG
from .ring import Coeff, DemazureCombo, RationalCoeff, clear_denominators, normalize
from .typec import (
    Vec,
    Window,
    act,
    alpha_coords,
    eps_vec,
    reduced_word,
    vec_add,
    vec_neg,
    window_str,
    word_str,
    zero_vec,
)


def _sgn(c: int) -> int:
    return -1 if c % 2 else 1


# -- report plumbing -----------------------------------------------------


@dataclass
class VerificationReport:
    instance: str
    status: str  # "verified" | "failed"
    lhs_terms: int
    rhs_terms: int
    seconds: float
    residual: DemazureCombo | None = None

    @property
    def ok(self) -> bool:
        return self.status == "verified"

    def to_json(self):
        out = {
            "instance": self.instance,
            "status": self.status,
            "lhs_terms": self.lhs_terms,
            "rhs_terms": self.rhs_terms,
            "seconds": round(self.seconds, 6),
        }
        if self.residual is not None:
            out["residual"] = self.residual.to_json()
            out["residual_latex"] = combo_latex(self.residual)
        return out

    def __str__(self) -> str:
        line = (f"[{'ok' if self.ok else 'FAIL'}] {self.instance} "
                f"(lhs {self.lhs_terms}, rhs {self.rhs_terms}, "
                f"{self.seconds:.3f}s)")
        if self.residual is not None:
            line += "\n  residual: " + str(self.residual)
            line += "\n  residual latex: " + combo_latex(self.residual)
        return line


def _compare(instance: str, lhs: DemazureCombo, rhs: DemazureCombo,
             t0: float) -> VerificationReport:
    pl, pr, _ = clear_denominators(lhs, rhs)
    residual = pl - pr
    ok = residual.is_zero()
    return VerificationReport(instance, "verified" if ok else "failed",
                              len(lhs.terms), len(rhs.terms),
                              time.time() - t0,
                              None if ok else residual)


# -- identity checks -----------------------------------------------------


def verify_first_half(qbg: QBG, w: Window, m: int,
                      xi: Vec | None = None) -> VerificationReport:
    """Check e^{+w(eps_m)} gch V_{w t_xi}(lam) against its expansion."""
    t0 = time.time()
    xi = zero_vec(qbg.n) if xi is None else tuple(xi)
    x = (w, xi)
    lhs = ic_lhs(qbg, x, m, "+")
    rhs = expand_to_base(qbg, ic_rhs_first(qbg, x, m))
    inst = f"first-half w={window_str(w)} m={m} xi={window_str(xi)}"
    return _compare(inst, lhs, rhs, t0)


def verify_second_half(qbg: QBG, w: Window, m: int,
                       xi: Vec | None = None) -> VerificationReport:
    """Check e^{-w(eps_m)} gch V_{w t_xi}(lam) against its expansion."""
    t0 = time.time()
    xi = zero_vec(qbg.n) if xi is None else tuple(xi)
    x = (w, xi)
    lhs = ic_lhs(qbg, x, m, "-")
    rhs = expand_to_base(qbg, ic_rhs_second(qbg, x, m))
    inst = f"second-half w={window_str(w)} m={m} xi={window_str(xi)}"
    return _compare(inst, lhs, rhs, t0)


def key_first_sides(qbg: QBG, w: Window, k: int) -> tuple[DemazureCombo, DemazureCombo]:
    """Both sides of the first key identity, unexpanded.

    LHS: sum over B in A(w, Gamma_k(k)) of (-1)^{|B|} V_{ed t_down}(lam+eps_k).
    RHS: sum over A in A(w, Theta_k) of (-1)^{|A|} e^{w eps_k} V_{ed t_down}(lam).
    """
    n = qbg.n
    lhs = DemazureCombo(n)
    for B in admissible_subsets(qbg, w, make_chain("gamma", k, n)):
        lhs.add_symbol((B.end, B.down), eps_vec(k, n),
                       Coeff.monomial(n, _sgn(len(B.positions))))
    rhs = DemazureCombo(n)
    nu = act(w, eps_vec(k, n))
    for A in admissible_subsets(qbg, w, make_chain("theta", k, n)):
        rhs.add_symbol((A.end, A.down), zero_vec(n),
                       Coeff.monomial(n, _sgn(len(A.positions)), nu=nu))
    return lhs, rhs


def key_second_sides(qbg: QBG, w: Window, k: int) -> tuple[DemazureCombo, DemazureCombo]:
    """Both sides of the second key identity, unexpanded.

    LHS: sum over B in A(w, Theta_k) of (-1)^{|B|} V_{ed t_down}(lam-eps_k).
    RHS: sum over A in A(w, Gamma_k(k)) of (-1)^{|A|} e^{-w eps_k} V_{ed t_down}(lam).
    """
    n = qbg.n
    lhs = DemazureCombo(n)
    for B in admissible_subsets(qbg, w, make_chain("theta", k, n)):
        lhs.add_symbol((B.end, B.down), vec_neg(eps_vec(k, n)),
                       Coeff.monomial(n, _sgn(len(B.positions))))
    rhs = DemazureCombo(n)
    nu = vec_neg(act(w, eps_vec(k, n)))
    for A in admissible_subsets(qbg, w, make_chain("gamma", k, n)):
        rhs.add_symbol((A.end, A.down), zero_vec(n),
                       Coeff.monomial(n, _sgn(len(A.positions)), nu=nu))
    return lhs, rhs


def verify_key_props(qbg: QBG, w: Window, k: int) -> VerificationReport:
    """Check both key identities for (w, k) through the expansion oracle."""
    t0 = time.time()
    l1, r1 = key_first_sides(qbg, w, k)
    l2, r2 = key_second_sides(qbg, w, k)
    inst = f"key-props w={window_str(w)} k={k}"
    rep1 = _compare(inst, expand_to_base(qbg, l1), r1, t0)
    rep2 = _compare(inst, expand_to_base(qbg, l2), r2, t0)
    ok = rep1.ok and rep2.ok
    return VerificationReport(
        inst, "verified" if ok else "failed",
        rep1.lhs_terms + rep2.lhs_terms, rep1.rhs_terms + rep2.rhs_terms,
        time.time() - t0,
        None if ok else (rep1.residual or rep2.residual))


def specialized_equal(a: DemazureCombo, b: DemazureCombo, lam: Vec) -> bool:
    """Equality after substituting x_i = q^{<lam, alpha_i^vee>}."""
    pa, pb, _ = clear_denominators(a, b)
    for key in set(pa.terms) | set(pb.terms):
        ca, cb = pa.terms.get(key), pb.terms.get(key)
        sa = ca.numer.specialize(lam) if ca else Coeff.zero(a.n)
        sb = cb.numer.specialize(lam) if cb else Coeff.zero(b.n)
        if sa != sb:
            return False
    return True


# -- the six-case pairing ------------------------------------------------


def pair_involution(qbg: QBG, w: Window, k: int,
                    B: Iterable[int], A1: Iterable[int]):
    """One application of the six-case pairing to (B, A1); returns
    (B', A1', case) with case in 1..6.

    B is a set of 1-based positions in Gamma_k(k) admissible from w; A1 a
    set of positions in Gamma*_k(k) admissible from ed(B).  With
    L = len(Gamma_k(k)), the element of B at position p has rank L+1-p and
    the element of A1 at position p' has rank p'; ranks can only coincide
    at rank 1 (the unique simple label, position L resp. 1), since equal
    ranks elsewhere would force a two-cycle on a non-simple root.

    Cases: (6) both empty and (5) B={L}, A1={1} are fixed; otherwise the
    element of smallest rank moves across: from B to the front of A1 when
    B's last rank is smaller (case 1), from A1 to the end of B when A1's
    first rank is smaller (case 2); cases 3 and 4 do the same after
    setting aside the rank-1 pair when both L in B and 1 in A1.
    """
    n = qbg.n
    L = 2 * n - k
    B = tuple(sorted(set(B)))
    A1 = tuple(sorted(set(A1)))
    gamma = make_chain("gamma", k, n)
    gstar = make_chain("gamma_star", k, n)
    sB = subset_stats(qbg, w, gamma, B)
    subset_stats(qbg, sB.end, gstar, A1)

    if not B and not A1:
        return B, A1, 6
    if B == (L,) and A1 == (1,):
        return B, A1, 5
    if B and A1 and B[-1] == L and A1[0] == 1:
        B0, A0 = B[:-1], A1[1:]
        rb0 = L + 1 - B0[-1] if B0 else None
        ra0 = A0[0] if A0 else None
        if rb0 is not None and rb0 == ra0:
            raise AssertionError(f"equal ranks off the simple label: {B} {A1}")
        if ra0 is None or (rb0 is not None and rb0 < ra0):
            p = B0[-1]
            return (tuple(sorted(B0[:-1] + (L,))),
                    tuple(sorted(A1 + (L + 1 - p,))), 3)
        p = A0[0]
        return (tuple(sorted(B + (L + 1 - p,))),
                tuple(sorted((1,) + A0[1:])), 4)
    rb = L + 1 - B[-1] if B else None
    ra = A1[0] if A1 else None
    if rb is not None and rb == ra:
        raise AssertionError(f"equal ranks off the simple label: {B} {A1}")
    if ra is None or (rb is not None and rb < ra):
        p = B[-1]
        return B[:-1], tuple(sorted(A1 + (L + 1 - p,))), 1
    p = A1[0]
    return tuple(sorted(B + (L + 1 - p,))), A1[1:], 2


def pair_domain(qbg: QBG, w: Window, k: int):
    """All (B, A1) pairs: B admissible over Gamma_k(k) from w, A1
    admissible over Gamma*_k(k) from ed(B)."""
    n = qbg.n
    gamma = make_chain("gamma", k, n)
    gstar = make_chain("gamma_star", k, n)
    out = []
    for sB in admissible_subsets(qbg, w, gamma):
        for sA in admissible_subsets(qbg, sB.end, gstar):
            out.append((sB.positions, sA.positions))
    return out


# -- collapse of chained sums --------------------------------------------


def collapse_check(qbg: QBG, w: Window, m: int, j: int) -> bool:
    """Group-algebra collapse of the chained filtered sums onto one path.

    The signed sum over decreasing sequences m -> j and chained filtered
    subsets of q^{-<lam, down>} ed, with q^{-<lam, xi>} carried as the
    x-monomial with exponents -alpha_coords(xi), must equal the single
    term q^{-<lam, wt(p)>} ed(p) for the greedy directed path p: w -> j.
    """
    n = qbg.n
    if not 1 <= j < m <= n:
        raise ValueError(f"need 1 <= j < m <= n, got j={j} m={m}")
    acc: dict[Window, Coeff] = {}
    for seq in enumerate_S(m, j, n):
        for v, d, s in chained_filtered(qbg, w, m, seq):
            c = Coeff.monomial(n, s, x=vec_neg(alpha_coords(d)))
            acc[v] = acc.get(v, Coeff.zero(n)) + c
    acc = {v: c for v, c in acc.items() if not c.is_zero()}
    p = qbg.p_path(w, m, j)
    want = {p.end: Coeff.monomial(n, 1, x=vec_neg(alpha_coords(p.weight)))}
    return acc == want


# -- cancellation certificates and the conjecture scan --------------------


def cancellation_certificate(terms: Iterable[Term]) -> bool:
    """True iff no two streamed summands cancel.

    Each summand is normalized to (symbol key, q-, x-, e^nu-exponents);
    the stream is cancellation-free when no normalized key is hit with
    both signs.
    """
    seen: dict[tuple, int] = {}
    for sym, mu, c in terms:
        key, mult = normalize(sym, mu)
        prod = c * mult
        for mono, coef in prod.terms.items():
            s = 1 if coef > 0 else -1
            full = (key, mono)
            prev = seen.get(full)
            if prev is not None and prev != s:
                return False
            seen[full] = s
    return True


@dataclass
class ConjectureScanResult:
    n: int
    working: dict[tuple[Window, int], tuple[int, ...]]
    expectation_holds: bool  # every working set meets {m, n}
    counterexamples: list[tuple[Window, int]] = field(default_factory=list)
    certificates: dict[tuple[Window, int, int], bool] = field(default_factory=dict)

    def to_json(self):
        return {
            "n": self.n,
            "working": [
                {"w": list(w), "m": m, "l_set": list(ls)}
                for (w, m), ls in sorted(self.working.items())
            ],
            "expectation_holds": self.expectation_holds,
            "counterexamples": [{"w": list(w), "m": m}
                                for w, m in self.counterexamples],
            "certificates": [
                {"w": list(w), "m": m, "l": l, "cancellation_free": ok}
                for (w, m, l), ok in sorted(self.certificates.items())
            ],
        }


def conjecture_scan(qbg: QBG, ms: Iterable[int] | None = None,
                    elements: Iterable[Window] | None = None) -> ConjectureScanResult:
    """Scan the collapsed second-form identity over (w, m) and cut points l.

    For each instance the working set is every l in m..n whose collapsed
    combination expands to e^{-w(eps_m)} gch V_w(lam); an empty working
    set is recorded as a counterexample.  For each working l the
    pre-summation stream is tested for cancellation-freeness.
    """
    n = qbg.n
    working: dict[tuple[Window, int], tuple[int, ...]] = {}
    certs: dict[tuple[Window, int, int], bool] = {}
    counter: list[tuple[Window, int]] = []
    for w in (tuple(elements) if elements is not None else qbg.group):
        for m in (tuple(ms) if ms is not None else range(1, n + 1)):
            x = (w, zero_vec(n))
            lhs = ic_lhs(qbg, x, m, "-")
            ls = []
            for l in range(m, n + 1):
                rhs = expand_to_base(qbg, ic_rhs_conjecture_second(qbg, x, m, l))
                if (lhs - rhs).is_zero():
                    ls.append(l)
                    certs[(w, m, l)] = cancellation_certificate(
                        ic_conj_second_terms(qbg, x, m, l))
            working[(w, m)] = tuple(ls)
            if not ls:
                counter.append((w, m))
    expectation = all(set(ls) & {m, n}
                      for (w, m), ls in working.items())
    return ConjectureScanResult(n, working, expectation, counter, certs)


# -- LaTeX rendering ------------------------------------------------------


def _eps_latex(nu: Vec) -> str:
    parts = []
    for i, c in enumerate(nu, start=1):
        if not c:
            continue
        if c == 1:
            s = ""
        elif c == -1:
            s = "-"
        else:
            s = str(c)
        s += f"\\varepsilon_{{{i}}}"
        if parts and not s.startswith("-"):
            parts.append("+")
        parts.append(s)
    return "".join(parts) if parts else "0"


def coeff_latex(c: Coeff) -> str:
    if c.is_zero():
        return "0"
    parts = []
    for (qe, xv, nu), co in c.sorted_terms():
        bits = []
        if qe:
            bits.append(f"q^{{{qe}}}")
        for i, e in enumerate(xv, start=1):
            if e:
                bits.append(f"x_{{{i}}}^{{{e}}}" if e != 1 else f"x_{{{i}}}")
        if any(nu):
            bits.append(f"e^{{{_eps_latex(nu)}}}")
        mag = "" if abs(co) == 1 and bits else str(abs(co))
        body = (mag + " ".join(bits)).strip() or "1"
        parts.append(("-" if co < 0 else "+", body))
    out = ""
    for sign, body in parts:
        if not out:
            out = ("-" if sign == "-" else "") + body
        else:
            out += f" {sign} {body}"
    return out


def rc_latex(rc: RationalCoeff) -> str:
    num = coeff_latex(rc.numer)
    if not rc.atoms:
        return num
    den = " ".join(f"(1 - q^{{-1}} x_{{{k}}}^{{-1}})" for k in rc.atoms)
    return f"\\frac{{{num}}}{{{den}}}"


def symbol_latex(key: tuple[Window, Vec]) -> str:
    w, mu = key
    arg = "\\lambda"
    if any(mu):
        s = _eps_latex(mu)
        arg += s if s.startswith("-") else "+" + s
    word = reduced_word(w)
    sub = "e" if not word else "".join(f"s_{{{i}}}" for i in word)
    return f"\\operatorname{{gch}} V^{{-}}_{{{sub}}}({arg})"


def combo_latex(combo: DemazureCombo) -> str:
    if combo.is_zero():
        return "0"
    lines = []
    for key, rc in combo.sorted_items():
        lines.append(f"\\left({rc_latex(rc)}\\right) {symbol_latex(key)}")
    return " + ".join(lines)
