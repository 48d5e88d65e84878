r"""Exact coefficient ring and formal Demazure-symbol combinations.

A ``Coeff`` is an integer Laurent polynomial in q, x_1..x_n together with a
formal exponential e^nu (nu a weight): a sparse dict mapping
(q-exponent, x-exponent tuple, nu) to an integer.  The variable x_i stands
for q^{<lam, alpha_i^vee>} where lam is a symbolic dominant weight, so any
factor q^{-<lam, xi>} with xi = sum c_i alpha_i^vee in the coroot lattice
is the monomial prod x_i^{-c_i}.

A ``RationalCoeff`` divides a Coeff by a multiset of atoms
1 - q^{-1} x_k^{-1} (the factor 1 - q^{-<lam+w_k, alpha_k^vee>} of the
eps_k Chevalley expansion).  Fractions stay reduced: an atom that divides
the numerator exactly is cancelled.  Equality clears denominators and is
exact (the ring is an integral domain).

A ``DemazureCombo`` is a finite sum  sum_{(y,mu)} c_{y,mu} V_y(lam+mu)
of level-zero Demazure characters with RationalCoeff coefficients;
translation parts are absorbed on insertion:
V_{y t_xi}(lam+mu) = q^{-<mu,xi>} prod x_i^{-c_i} V_y(lam+mu).
"""

from __future__ import annotations

from .typec import (
    Vec,
    Window,
    alpha_coords,
    pair,
    simple_coroot,
    vec_add,
    window_str,
    zero_vec,
)

TermKey = tuple[int, tuple[int, ...], tuple[int, ...]]  # (q-exp, x-exps, nu)


class Coeff:
    """Sparse integer Laurent polynomial in q, x_1..x_n, e^nu."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: dict[TermKey, int] | None = None):
        self.n = n
        self.terms = {k: c for k, c in (terms or {}).items() if c}

    # -- constructors --

    @classmethod
    def zero(cls, n: int) -> "Coeff":
        return cls(n)

    @classmethod
    def monomial(cls, n: int, c: int = 1, q: int = 0,
                 x: Vec | None = None, nu: Vec | None = None) -> "Coeff":
        return cls(n, {(q, x or zero_vec(n), nu or zero_vec(n)): c})

    @classmethod
    def one(cls, n: int) -> "Coeff":
        return cls.monomial(n)

    # -- ring operations --

    def __add__(self, other: "Coeff") -> "Coeff":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return Coeff(self.n, out)

    def __neg__(self) -> "Coeff":
        return Coeff(self.n, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "Coeff") -> "Coeff":
        return self + (-other)

    def __mul__(self, other: "Coeff") -> "Coeff":
        out: dict[TermKey, int] = {}
        for (q1, x1, n1), c1 in self.terms.items():
            for (q2, x2, n2), c2 in other.terms.items():
                k = (q1 + q2, vec_add(x1, x2), vec_add(n1, n2))
                out[k] = out.get(k, 0) + c1 * c2
        return Coeff(self.n, out)

    def scale(self, c: int) -> "Coeff":
        return Coeff(self.n, {k: c * v for k, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, Coeff) and self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, tuple(sorted(self.terms.items()))))

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- substitutions --

    def specialize(self, lam: Vec) -> "Coeff":
        """Evaluate x_i = q^{<lam, alpha_i^vee>} at a concrete weight lam."""
        pairs = [pair(lam, simple_coroot(i, self.n)) for i in range(1, self.n + 1)]
        out: dict[TermKey, int] = {}
        for (q, x, nu), c in self.terms.items():
            k = (q + sum(b * p for b, p in zip(x, pairs)), zero_vec(self.n), nu)
            out[k] = out.get(k, 0) + c
        return Coeff(self.n, out)

    def shift_lambda(self, delta: Vec) -> "Coeff":
        """Substitute lam -> lam + delta, i.e. x_i -> q^{<delta,alpha_i^vee>} x_i."""
        pairs = [pair(delta, simple_coroot(i, self.n)) for i in range(1, self.n + 1)]
        out: dict[TermKey, int] = {}
        for (q, x, nu), c in self.terms.items():
            k = (q + sum(b * p for b, p in zip(x, pairs)), x, nu)
            out[k] = out.get(k, 0) + c
        return Coeff(self.n, out)

    # -- rendering --

    def sorted_terms(self):
        return sorted(self.terms.items())

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (q, x, nu), c in self.sorted_terms():
            factors = []
            if abs(c) != 1 or (q == 0 and not any(x) and not any(nu)):
                factors.append(str(abs(c)))
            if q:
                factors.append(f"q^{q}" if q != 1 else "q")
            for i, b in enumerate(x, start=1):
                if b:
                    factors.append(f"x{i}^{b}" if b != 1 else f"x{i}")
            if any(nu):
                factors.append("e[" + ",".join(str(v) for v in nu) + "]")
            mono = "*".join(factors) or "1"
            parts.append(("-" if c < 0 else "+") + mono)
        s = " ".join(parts)
        return s[1:] if s.startswith("+") else s

    __repr__ = __str__


def atom_coeff(n: int, k: int) -> Coeff:
    """The denominator atom 1 - q^{-1} x_k^{-1}."""
    xk = tuple(-1 if i == k else 0 for i in range(1, n + 1))
    return Coeff(n, {(0, zero_vec(n), zero_vec(n)): 1, (-1, xk, zero_vec(n)): -1})


def divide_by_atom(c: Coeff, k: int) -> Coeff | None:
    """Exact quotient c / (1 - q^{-1}x_k^{-1}), or None if not divisible.

    Substituting y = q^{-1}x_k^{-1} groups terms into univariate Laurent
    polynomials in y; each group must have coefficient sum zero.
    """
    n = c.n
    groups: dict[tuple, dict[int, int]] = {}
    for (q, x, nu), v in c.terms.items():
        bk = x[k - 1]
        rest = tuple(0 if i == k - 1 else b for i, b in enumerate(x))
        g = groups.setdefault((q - bk, rest, nu), {})
        g[-bk] = g.get(-bk, 0) + v
    out: dict[TermKey, int] = {}
    for (qa, rest, nu), poly in groups.items():
        if sum(poly.values()) != 0:
            return None
        lo, hi = min(poly), max(poly)
        run = 0
        for j in range(lo, hi):  # quotient degrees lo..hi-1
            run += poly.get(j, 0)
            if run:
                x = tuple(-j if i == k - 1 else b for i, b in enumerate(rest))
                key = (qa - j, x, nu)
                out[key] = out.get(key, 0) + run
    return Coeff(n, out)


class RationalCoeff:
    """Coeff divided by a multiset of atoms 1 - q^{-1}x_k^{-1}, kept reduced."""

    __slots__ = ("numer", "atoms")

    def __init__(self, numer: Coeff, atoms=()):
        self.numer = numer
        self.atoms = tuple(sorted(atoms))
        self._reduce()

    def _reduce(self):
        if self.numer.is_zero():
            self.atoms = ()
            return
        atoms = list(self.atoms)
        changed = True
        while changed:
            changed = False
            for k in list(atoms):
                q = divide_by_atom(self.numer, k)
                if q is not None:
                    self.numer = q
                    atoms.remove(k)
                    changed = True
        self.atoms = tuple(atoms)

    @classmethod
    def from_coeff(cls, c: Coeff) -> "RationalCoeff":
        return cls(c)

    @classmethod
    def zero(cls, n: int) -> "RationalCoeff":
        return cls(Coeff.zero(n))

    @property
    def n(self) -> int:
        return self.numer.n

    def _with_extra_atoms(self, extra) -> Coeff:
        c = self.numer
        for k in extra:
            c = c * atom_coeff(self.n, k)
        return c

    def __add__(self, other: "RationalCoeff") -> "RationalCoeff":
        lcm = _multiset_max(self.atoms, other.atoms)
        a = self._with_extra_atoms(_multiset_sub(lcm, self.atoms))
        b = other._with_extra_atoms(_multiset_sub(lcm, other.atoms))
        return RationalCoeff(a + b, lcm)

    def __neg__(self) -> "RationalCoeff":
        return RationalCoeff(-self.numer, self.atoms)

    def __sub__(self, other: "RationalCoeff") -> "RationalCoeff":
        return self + (-other)

    def __mul__(self, other) -> "RationalCoeff":
        if isinstance(other, Coeff):
            other = RationalCoeff(other)
        return RationalCoeff(self.numer * other.numer, self.atoms + other.atoms)

    def scale(self, c: int) -> "RationalCoeff":
        return RationalCoeff(self.numer.scale(c), self.atoms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalCoeff):
            return NotImplemented
        return (self._with_extra_atoms(other.atoms).terms
                == other._with_extra_atoms(self.atoms).terms)

    def __hash__(self):
        raise TypeError("RationalCoeff is unhashable")

    def is_zero(self) -> bool:
        return self.numer.is_zero()

    def __str__(self) -> str:
        if not self.atoms:
            return str(self.numer)
        den = " * ".join(f"(1 - q^-1*x{k}^-1)" for k in self.atoms)
        return f"({self.numer}) / ({den})"

    __repr__ = __str__


def _multiset_max(a, b):
    out = []
    for k in sorted(set(a) | set(b)):
        out.extend([k] * max(a.count(k), b.count(k)))
    return tuple(out)


def _multiset_sub(a, b):
    out = list(a)
    for k in b:
        out.remove(k)
    return tuple(out)


# --- formal Demazure combinations -------------------------------------------

def normalize(x: tuple[Window, Vec], mu: Vec) -> tuple[tuple[Window, Vec], Coeff]:
    """Absorb the translation of an affine index into a coefficient.

    V_{w t_xi}(lam+mu) = q^{-<lam+mu, xi>} V_w(lam+mu); the lam-pairing is
    the monomial prod x_i^{-c_i} with xi = sum c_i alpha_i^vee.
    """
    w, xi = x
    n = len(w)
    coords = alpha_coords(xi)
    mult = Coeff.monomial(n, 1, q=-pair(mu, xi), x=tuple(-c for c in coords))
    return (w, mu), mult


class DemazureCombo:
    """Finite formal sum of V_y(lam+mu) with RationalCoeff coefficients."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int):
        self.n = n
        self.terms: dict[tuple[Window, Vec], RationalCoeff] = {}

    def add_term(self, key: tuple[Window, Vec], rc: RationalCoeff):
        cur = self.terms.get(key)
        new = rc if cur is None else cur + rc
        if new.is_zero():
            self.terms.pop(key, None)
        else:
            self.terms[key] = new

    def add_symbol(self, x: tuple[Window, Vec], mu: Vec, rc):
        """Add coeff * V_{x}(lam+mu) with x affine; translation is absorbed."""
        if isinstance(rc, Coeff):
            rc = RationalCoeff(rc)
        key, mult = normalize(x, mu)
        self.add_term(key, rc * mult)

    def __add__(self, other: "DemazureCombo") -> "DemazureCombo":
        out = self.copy()
        for k, rc in other.terms.items():
            out.add_term(k, rc)
        return out

    def __sub__(self, other: "DemazureCombo") -> "DemazureCombo":
        out = self.copy()
        for k, rc in other.terms.items():
            out.add_term(k, -rc)
        return out

    def scale(self, rc) -> "DemazureCombo":
        if isinstance(rc, Coeff):
            rc = RationalCoeff(rc)
        out = DemazureCombo(self.n)
        for k, v in self.terms.items():
            out.add_term(k, v * rc)
        return out

    def copy(self) -> "DemazureCombo":
        out = DemazureCombo(self.n)
        out.terms = dict(self.terms)
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, DemazureCombo):
            return NotImplemented
        zero = RationalCoeff.zero(self.n)
        keys = set(self.terms) | set(other.terms)
        return all(self.terms.get(k, zero) == other.terms.get(k, zero) for k in keys)

    def __hash__(self):
        raise TypeError("DemazureCombo is unhashable")

    def is_zero(self) -> bool:
        return all(rc.is_zero() for rc in self.terms.values())

    def sorted_items(self):
        return sorted(self.terms.items(), key=lambda kv: (kv[0][1], kv[0][0]))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        lines = []
        for (y, mu), rc in self.sorted_items():
            lines.append(f"({rc}) * V{window_str(y)}(lam{_mu_str(mu)})")
        return "\n".join(lines)

    __repr__ = __str__

    def to_json(self):
        return [
            {
                "w": list(y),
                "mu": list(mu),
                "numer": [
                    {"c": c, "q": q, "x": list(x), "nu": list(nu)}
                    for (q, x, nu), c in rc.numer.sorted_terms()
                ],
                "atoms": list(rc.atoms),
            }
            for (y, mu), rc in self.sorted_items()
        ]


def _mu_str(mu: Vec) -> str:
    if not any(mu):
        return ""
    parts = []
    for i, c in enumerate(mu, start=1):
        if c:
            sign = "+" if c > 0 else "-"
            mag = "" if abs(c) == 1 else str(abs(c))
            parts.append(f"{sign}{mag}e{i}")
    return "".join(parts)


def combo_add(a: DemazureCombo, b: DemazureCombo) -> DemazureCombo:
    return a + b


def combo_scale(a: DemazureCombo, rc) -> DemazureCombo:
    return a.scale(rc)


def clear_denominators(a: DemazureCombo, b: DemazureCombo):
    """Common-denominator form of two combos: polynomial coefficients only.

    Returns (a', b', atoms) where every coefficient of a' and b' is
    atom-free, a' = a * prod(atoms), b' = b * prod(atoms).
    """
    lcm: tuple[int, ...] = ()
    for combo in (a, b):
        for rc in combo.terms.values():
            lcm = _multiset_max(lcm, rc.atoms)
    out = []
    for combo in (a, b):
        res = DemazureCombo(combo.n)
        for key, rc in combo.terms.items():
            res.add_term(key, RationalCoeff(rc._with_extra_atoms(_multiset_sub(lcm, rc.atoms))))
        out.append(res)
    return out[0], out[1], lcm
