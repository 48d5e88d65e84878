r"""Quantum alcove model: root chains, geometric alcove walks, admissible subsets.

The six chain kinds at rank n, for 1 <= k <= n (letter j with a minus sign
denotes a barred letter, so (k,-j) is the root eps_k + eps_j):

* gamma      Gamma_k(k)  = (-(1,-k),..,-(k-1,-k), -(k,-(k+1)),..,-(k,-n),
                            -(k,-k), -(k,n),..,-(k,k+1))
* gamma_star Gamma*_k(k) = reverse of gamma with all entries negated
* theta      Theta_k     = (-(1,k), ..., -(k-1,k))
* theta_star Theta*_k    = reverse of theta negated
* eps        Gamma*_k(k) * Theta_k     -- a reduced eps_k-chain
* eps_neg    Theta*_k * Gamma_k(k)     -- a reduced (-eps_k)-chain

A mu-chain (gamma_1,...,gamma_r) encodes an alcove path A_0 = fundamental
alcove, A_{t-1} -> A_t crossing in the direction -gamma_t, ending at
A_0 - mu.  The wall of step t lies in H_{gamma_t, -l_t}; the level l_t is
computed geometrically by tracking a rational interior point, not read off
any formula, so the level pattern of the eps-chains is a checked fact.

A subset A = {i_1 < ... < i_s} of chain positions (1-based) is w-admissible
when the unsigned labels |gamma_{i_j}| trace a directed path in the quantum
Bruhat graph starting at w.  Statistics: ed(A) = endpoint; down(A) = sum of
|gamma|^vee over quantum steps; n(A) = number of negative chain entries in
A; and for mu-chains wt(A) = -w s_{gamma_{i_1},-l_{i_1}} ... (-mu) and
height(A) = sum over quantum steps of sgn(gamma)(<mu,gamma^vee> - l).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .qbg import QBG
from .typec import (
    Vec,
    Window,
    act,
    coroot,
    eps_vec,
    inv,
    is_positive_root,
    letter_pos,
    mul,
    pair,
    positive_roots,
    refl_window,
    root_abs,
    root_from_letters,
    vec_neg,
    zero_vec,
)

CHAIN_KINDS = ("gamma", "gamma_star", "theta", "theta_star", "eps", "eps_neg")


@dataclass(frozen=True)
class RootChain:
    entries: tuple[Vec, ...]
    kind: str
    k: int
    n: int
    mu: Vec | None  # set only when the chain is a mu-chain


def make_chain(kind: str, k: int, n: int) -> RootChain:
    if not 1 <= k <= n:
        raise ValueError(f"k must be in 1..{n}, got {k}")
    if kind not in CHAIN_KINDS:
        raise ValueError(f"unknown chain kind {kind!r}")

    gamma = (
        [vec_neg(root_from_letters(i, -k, n)) for i in range(1, k)]
        + [vec_neg(root_from_letters(k, -j, n)) for j in range(k + 1, n + 1)]
        + [vec_neg(root_from_letters(k, -k, n))]
        + [vec_neg(root_from_letters(k, j, n)) for j in range(n, k, -1)]
    )
    theta = [vec_neg(root_from_letters(i, k, n)) for i in range(1, k)]
    gamma_star = [vec_neg(a) for a in reversed(gamma)]
    theta_star = [vec_neg(a) for a in reversed(theta)]

    entries: list[Vec]
    mu: Vec | None = None
    if kind == "gamma":
        entries = gamma
    elif kind == "gamma_star":
        entries = gamma_star
    elif kind == "theta":
        entries = theta
    elif kind == "theta_star":
        entries = theta_star
    elif kind == "eps":
        entries = gamma_star + theta
        mu = eps_vec(k, n)
    else:
        entries = theta_star + gamma
        mu = vec_neg(eps_vec(k, n))
    return RootChain(tuple(entries), kind, k, n, mu)


# --- geometric walk ---------------------------------------------------------

def _interior_point(n: int) -> tuple[Fraction, ...]:
    # all simple-coroot pairings equal 1/(2n+2); lies in the open fundamental alcove
    return tuple(Fraction(n + 1 - i, 2 * n + 2) for i in range(1, n + 1))


def _fpair(p, cv: Vec) -> Fraction:
    return sum((a * b for a, b in zip(p, cv, strict=True)), start=Fraction(0))


def _ints_between(a: Fraction, b: Fraction) -> int:
    lo, hi = min(a, b), max(a, b)
    return max(0, math.floor(hi) - math.floor(lo) - (1 if hi == math.floor(hi) else 0))


@dataclass(frozen=True)
class AlcoveWalk:
    chain: RootChain
    levels: tuple[int, ...]


@lru_cache(maxsize=None)
def alcove_walk(chain: RootChain) -> AlcoveWalk:
    """Walk the chain from the fundamental alcove, reading off wall levels.

    Raises ValueError if some step fails to cross exactly one wall, or if a
    mu-chain does not end at the alcove A_0 - mu.
    """
    n = chain.n
    pos = positive_roots(n)
    p = _interior_point(n)
    levels = []
    for t, gamma in enumerate(chain.entries, start=1):
        alpha = root_abs(gamma)
        av = coroot(alpha)
        a = _fpair(p, av)
        if a.denominator == 1:
            raise ValueError(f"step {t}: point lies on a wall of H_{alpha}")
        positive = is_positive_root(gamma)
        # crossing direction is -gamma: pairing with alpha^vee decreases for
        # positive entries, increases for negative ones
        c = math.floor(a) if positive else math.floor(a) + 1
        p_new = tuple(pi - (a - c) * ai for pi, ai in zip(p, alpha, strict=True))
        crossed = sum(_ints_between(_fpair(p, coroot(b)), _fpair(p_new, coroot(b))) for b in pos)
        if crossed != 1:
            raise ValueError(f"step {t} crosses {crossed} walls; not an alcove path")
        # the wall H_{alpha,c} rewritten as H_{gamma,-l}
        levels.append(-c if positive else c)
        p = p_new
    if chain.mu is not None:
        q = tuple(pi + mi for pi, mi in zip(p, chain.mu, strict=True))
        for b in pos:
            v = _fpair(q, coroot(b))
            if not 0 < v < 1:
                raise ValueError("mu-chain does not end at A_0 - mu")
    return AlcoveWalk(chain, tuple(levels))


def reducedness_check(chain: RootChain) -> bool:
    """True iff the mu-chain has minimal length.

    The minimal length is the number of affine hyperplanes separating the
    fundamental alcove from its -mu translate, counted by brute force.
    """
    if chain.mu is None:
        raise ValueError("reducedness is defined for mu-chains only")
    alcove_walk(chain)  # validates the path
    n = chain.n
    p = _interior_point(n)
    q = tuple(pi - mi for pi, mi in zip(p, chain.mu, strict=True))
    separating = sum(
        _ints_between(_fpair(p, coroot(b)), _fpair(q, coroot(b)))
        for b in positive_roots(n)
    )
    return len(chain.entries) == separating


# --- admissible subsets ------------------------------------------------------

@dataclass(frozen=True)
class AdmissibleSubset:
    base: Window
    chain: RootChain
    positions: tuple[int, ...]  # 1-based chain positions
    end: Window
    down: Vec
    n_neg: int
    wt: Vec | None = None
    height: int | None = None

    def __len__(self) -> int:
        return len(self.positions)


def admissible_subsets(qbg: QBG, w: Window, chain: RootChain) -> list[AdmissibleSubset]:
    """All w-admissible subsets of the chain, with cached statistics.

    Depth-first over positions, pruning on edge existence; results are
    memoized on (w, chain) inside the QBG instance.
    """
    cache = getattr(qbg, "_adm_cache", None)
    if cache is None:
        cache = qbg._adm_cache = {}
    key = (w, chain)
    hit = cache.get(key)
    if hit is not None:
        return hit

    n = chain.n
    mu = chain.mu
    levels = alcove_walk(chain).levels if mu is not None else None
    entries = chain.entries
    out: list[AdmissibleSubset] = []

    def close(taken, u, t, down, n_neg, height):
        if mu is not None:
            wt = tuple(a - b for a, b in zip(act(u, mu), t, strict=True))
            out.append(AdmissibleSubset(w, chain, tuple(taken), u, down, n_neg, wt, height))
        else:
            out.append(AdmissibleSubset(w, chain, tuple(taken), u, down, n_neg))

    def rec(i, taken, u, t, down, n_neg, height):
        if i == len(entries):
            close(taken, u, t, down, n_neg, height)
            return
        rec(i + 1, taken, u, t, down, n_neg, height)
        gamma = entries[i]
        alpha = root_abs(gamma)
        kind = qbg.edge_kind(u, alpha)
        if kind is None:
            return
        taken.append(i + 1)
        if mu is not None:
            c = -levels[i]
            t2 = tuple(a + c * b for a, b in zip(t, act(u, gamma), strict=True))
        else:
            t2 = t
        u2 = mul(u, refl_window(alpha))
        down2, h2 = down, height
        if kind == "Q":
            down2 = tuple(a + b for a, b in zip(down, coroot(alpha), strict=True))
            if mu is not None:
                sg = 1 if is_positive_root(gamma) else -1
                h2 = height + sg * (pair(mu, coroot(gamma)) - levels[i])
        rec(i + 1, taken, u2, t2, down2, n_neg + (0 if is_positive_root(gamma) else 1), h2)
        taken.pop()

    rec(0, [], w, zero_vec(n), zero_vec(n), 0, 0)
    out.sort(key=lambda s: s.positions)
    cache[key] = out
    return out


def subset_stats(qbg: QBG, w: Window, chain: RootChain, positions) -> AdmissibleSubset:
    """Statistics of one subset, verifying admissibility along the way."""
    n = chain.n
    mu = chain.mu
    levels = alcove_walk(chain).levels if mu is not None else None
    u, t = w, zero_vec(n)
    down, n_neg, height = zero_vec(n), 0, 0
    for p in positions:
        gamma = chain.entries[p - 1]
        alpha = root_abs(gamma)
        kind = qbg.edge_kind(u, alpha)
        if kind is None:
            raise ValueError(f"positions {positions} not admissible from {w}")
        if mu is not None:
            c = -levels[p - 1]
            t = tuple(a + c * b for a, b in zip(t, act(u, gamma), strict=True))
        if kind == "Q":
            down = tuple(a + b for a, b in zip(down, coroot(alpha), strict=True))
            if mu is not None:
                sg = 1 if is_positive_root(gamma) else -1
                height += sg * (pair(mu, coroot(gamma)) - levels[p - 1])
        if not is_positive_root(gamma):
            n_neg += 1
        u = mul(u, refl_window(alpha))
    wt = None
    if mu is not None:
        wt = tuple(a - b for a, b in zip(act(u, mu), t, strict=True))
        return AdmissibleSubset(w, chain, tuple(positions), u, down, n_neg, wt, height)
    return AdmissibleSubset(w, chain, tuple(positions), u, down, n_neg)


def filtered_A(qbg: QBG, w: Window, src: int, dst: int) -> list[AdmissibleSubset]:
    """Nonempty admissible subsets with the prescribed endpoint twist.

    src = k > 0: subsets of Theta_k with ed(A)^{-1} w eps_k = eps_dst
    (requires 1 <= dst < k).  src = -k < 0 ("k bar"): subsets of
    Gamma_k(k) with ed(A)^{-1} w (-eps_k) = eps_dst, dst any letter below
    -k in the total order; eps of a barred letter -m means -eps_m.
    """
    n = qbg.n
    if src > 0:
        if not 1 <= dst < src:
            raise ValueError(f"need 1 <= dst < src, got {src=} {dst=}")
        chain = make_chain("theta", src, n)
    else:
        if not letter_pos(dst, n) < letter_pos(src, n):
            raise ValueError(f"need dst < src in the letter order, got {src=} {dst=}")
        chain = make_chain("gamma", -src, n)
    out = []
    for A in admissible_subsets(qbg, w, chain):
        if not A.positions:
            continue
        u = mul(inv(A.end), w)
        # u(eps_src) = eps_dst, reading eps of a barred letter as its negative
        if (u[src - 1] if src > 0 else -u[-src - 1]) == dst:
            out.append(A)
    return out


def split_stats(qbg: QBG, A: AdmissibleSubset) -> tuple[AdmissibleSubset, AdmissibleSubset]:
    """Split a subset of the eps_k-chain at the Gamma*/Theta junction.

    Returns (A1 over Gamma*_k(k) from the same base, A2 over Theta_k from
    ed(A1)) and asserts the statistics identities
      height(A) = <eps_k, down(A1)>,  wt(A) = ed(A1) eps_k,  n(A) = |A2|.
    """
    if A.chain.kind != "eps":
        raise ValueError("split_stats needs a subset of an eps-chain")
    k, n = A.chain.k, A.chain.n
    cut = 2 * n - k  # length of Gamma*_k(k)
    pos1 = tuple(p for p in A.positions if p <= cut)
    pos2 = tuple(p - cut for p in A.positions if p > cut)
    A1 = subset_stats(qbg, A.base, make_chain("gamma_star", k, n), pos1)
    A2 = subset_stats(qbg, A1.end, make_chain("theta", k, n), pos2)
    ek = eps_vec(k, n)
    assert A.height == pair(ek, A1.down)
    assert A.wt == act(A1.end, ek)
    assert A.n_neg == len(A2.positions)
    assert A.end == A2.end
    assert A.down == tuple(a + b for a, b in zip(A1.down, A2.down, strict=True))
    return A1, A2
