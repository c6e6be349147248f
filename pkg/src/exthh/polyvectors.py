"""Polyvector fields, differential forms and the maps into Hochschild (co)chains.

Two coordinate pictures are supported:

* ``odd``: odd coordinates ``xi_i`` with even derivations ``theta_i = d/dxi_i``.
  This is the polyvector algebra whose even-weight part computes HH^* of the
  exterior algebra; there ``xi_J theta_I`` is written ``x_J d_I``.
* ``even``: ordinary polyvectors on an even space, with coordinates ``y_i`` and
  odd derivations ``dy_i``. The Koszul interchange maps one picture to the other.

A monomial is ``(coefficient indices, derivative indices)``, both sorted.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from . import algebra as alg
from .algebra import AlgebraSpec, Element, Monomial
from .complexes import Cochain, ParityError, transfer_sign

ODD = "odd"
EVEN = "even"

PVMono = Tuple[Monomial, Monomial]


class ParseError(ValueError):
    pass


def _sgn(k: int) -> int:
    return -1 if k % 2 else 1


def _block_comm(picture: str) -> Tuple[int, int]:
    """Commutation parities of (coefficient, derivative) letters."""
    return (1, 0) if picture == ODD else (0, 1)


def _letters(picture: str, mono: PVMono) -> List[Tuple[str, int, int]]:
    cc, dc = _block_comm(picture)
    return [("c", i, cc) for i in mono[0]] + [("d", i, dc) for i in mono[1]]


def _normal(picture: str, coeff: Iterable[int], derivs: Iterable[int]) -> Tuple[int, PVMono]:
    cc, dc = _block_comm(picture)
    s1, c = alg._normal_form(cc, tuple(coeff))
    if not s1:
        return 0, ((), ())
    s2, d = alg._normal_form(dc, tuple(derivs))
    if not s2:
        return 0, ((), ())
    return s1 * s2, (c, d)


def _mono_mul(picture: str, u: PVMono, v: PVMono) -> Tuple[int, PVMono]:
    # coefficient and derivative letters always commute (one block is even)
    return _normal(picture, u[0] + v[0], u[1] + v[1])


class Polyvector:
    """Sparse combination of monomials ``coeff-letters * derivative-letters``."""

    __slots__ = ("n_gens", "picture", "terms")

    def __init__(self, n_gens: int, terms=None, picture: str = ODD):
        if picture not in (ODD, EVEN):
            raise ValueError(f"unknown picture {picture!r}")
        self.n_gens = n_gens
        self.picture = picture
        self.terms: Dict[PVMono, Fraction] = {}
        for (c, d), v in (terms or {}).items():
            if any(not (1 <= i <= n_gens) for i in tuple(c) + tuple(d)):
                raise ValueError(f"index out of range in {(c, d)}")
            s, key = _normal(picture, c, d)
            if s:
                self._add(key, s * Fraction(v))

    def _add(self, key: PVMono, v: Fraction) -> None:
        if not v:
            return
        s = self.terms.get(key, 0) + v
        if s:
            self.terms[key] = s
        else:
            self.terms.pop(key, None)

    def _new(self, terms=None) -> "Polyvector":
        return Polyvector(self.n_gens, terms, self.picture)

    @classmethod
    def monomial(cls, n_gens: int, coeff=(), derivs=(), c=1, picture: str = ODD) -> "Polyvector":
        return cls(n_gens, {(tuple(coeff), tuple(derivs)): c}, picture)

    @classmethod
    def one(cls, n_gens: int, picture: str = ODD) -> "Polyvector":
        return cls.monomial(n_gens, picture=picture)

    # gradings
    def _homog(self, fn) -> int:
        vals = {fn(k) for k in self.terms}
        if len(vals) > 1:
            raise ValueError("polyvector is not homogeneous")
        return vals.pop() if vals else 0

    @property
    def degree(self) -> int:
        """Cohomological degree: the number of derivative letters."""
        return self._homog(lambda k: len(k[1]))

    @property
    def weight(self) -> int:
        if self.picture == ODD:
            return self._homog(lambda k: len(k[0]) - len(k[1]))
        return self._homog(lambda k: len(k[1]) - len(k[0]))

    @property
    def parity(self) -> int:
        """Number of odd letters mod 2; the Gerstenhaber degree mod 2."""
        idx = 0 if self.picture == ODD else 1
        return self._homog(lambda k: len(k[idx]) % 2)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "Polyvector") -> "Polyvector":
        self._check(other)
        out = self._new(self.terms)
        for k, v in other.terms.items():
            out._add(k, v)
        return out

    def scale(self, c) -> "Polyvector":
        c = Fraction(c)
        return self._new({k: v * c for k, v in self.terms.items()} if c else {})

    def __neg__(self) -> "Polyvector":
        return self.scale(-1)

    def __sub__(self, other: "Polyvector") -> "Polyvector":
        return self + (-other)

    def __rmul__(self, c) -> "Polyvector":
        return self.scale(c)

    def __mul__(self, other: "Polyvector") -> "Polyvector":
        return wedge(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polyvector):
            return NotImplemented
        return (self.n_gens, self.picture, self.terms) == (other.n_gens, other.picture, other.terms)

    def __hash__(self):
        return hash((self.n_gens, self.picture, tuple(sorted(self.terms.items()))))

    def _check(self, other: "Polyvector") -> None:
        if (self.n_gens, self.picture) != (other.n_gens, other.picture):
            raise ValueError("polyvectors live on different spaces")

    def homogeneous_parts(self) -> List["Polyvector"]:
        idx = 0 if self.picture == ODD else 1
        parts: Dict[Tuple[int, int, int], Dict] = {}
        for k, v in self.terms.items():
            key = (len(k[0]), len(k[1]), len(k[idx]) % 2)
            parts.setdefault(key, {})[k] = v
        return [self._new(t) for _, t in sorted(parts.items())]

    def __repr__(self) -> str:
        return f"Polyvector({render(self)!r})"

    def __str__(self) -> str:
        return render(self)


# ---------- derivatives ----------

def _derive(p: Polyvector, block: str, i: int, side: str) -> Polyvector:
    """One-sided partial derivative in a letter of ``block`` ('c' or 'd')."""
    out = p._new()
    for mono, v in p.terms.items():
        word = _letters(p.picture, mono)
        for pos, (b, j, par) in enumerate(word):
            if b != block or j != i:
                continue
            others = word[:pos] if side == "left" else word[pos + 1 :]
            s = _sgn(par * sum(q for _, _, q in others))
            rest = word[:pos] + word[pos + 1 :]
            sn, key = _normal(p.picture, [j for b2, j, _ in rest if b2 == "c"], [j for b2, j, _ in rest if b2 == "d"])
            if sn:
                out._add(key, s * sn * v)
    return out


def d_left(p: Polyvector, block: str, i: int) -> Polyvector:
    return _derive(p, block, i, "left")


def d_right(p: Polyvector, block: str, i: int) -> Polyvector:
    return _derive(p, block, i, "right")


# ---------- Gerstenhaber / BV structure ----------

def wedge(a: Polyvector, b: Polyvector) -> Polyvector:
    a._check(b)
    out = a._new()
    for u, x in a.terms.items():
        for v, y in b.terms.items():
            s, key = _mono_mul(a.picture, u, v)
            if s:
                out._add(key, s * x * y)
    return out


def schouten_bracket(f: Polyvector, g: Polyvector) -> Polyvector:
    """``[F, G] = sum_i (F d<-D_i)(d->C_i G) - (F d<-C_i)(d->D_i G)``.

    ``C_i`` is the ``i``-th coordinate letter and ``D_i`` its derivation letter.
    On the odd picture this gives ``[theta_i, xi_j] = delta_ij``.
    """
    f._check(g)
    out = f._new()
    for i in range(1, f.n_gens + 1):
        out = out + wedge(d_right(f, "d", i), d_left(g, "c", i))
        out = out - wedge(d_right(f, "c", i), d_left(g, "d", i))
    return out


def divergence(p: Polyvector) -> Polyvector:
    """BV operator for the determinant form ``xi_1 ... xi_N``: ``sum_i d/dxi_i d/dtheta_i``."""
    out = p._new()
    odd_block, even_block = ("c", "d") if p.picture == ODD else ("d", "c")
    for i in range(1, p.n_gens + 1):
        out = out + d_left(d_left(p, even_block, i), odd_block, i)
    return out


def bv_expression(f: Polyvector, g: Polyvector) -> Polyvector:
    """``Delta(fg) - Delta(f) g - (-1)^{|f|} f Delta(g)`` for homogeneous ``f``."""
    return divergence(wedge(f, g)) - wedge(divergence(f), g) - wedge(f, divergence(g)).scale(_sgn(f.parity))


def bv_bracket(f: Polyvector, g: Polyvector) -> Polyvector:
    """The bracket generated by the divergence, normalized to match ``schouten_bracket``.

    With ``Delta(xi theta) = 1`` the raw expression gives ``[xi theta, xi] = -xi``;
    the factor ``(-1)^{|f|}`` restores the Schouten sign on every homogeneous pair.
    """
    out = f._new()
    for part in f.homogeneous_parts():
        out = out + bv_expression(part, g).scale(_sgn(part.parity))
    return out


# ---------- Koszul interchange ----------

def koszul_interchange(p: Polyvector) -> Polyvector:
    """Swap coefficient and derivative indices: ``xi_J theta_I <-> y_I dy_J`` (no signs)."""
    target = EVEN if p.picture == ODD else ODD
    return Polyvector(p.n_gens, {(d, c): v for (c, d), v in p.terms.items()}, target)


# ---------- basis enumeration ----------

def basis(n_gens: int, degree: int, weight: Optional[int] = None, picture: str = ODD) -> List[Polyvector]:
    """Monomial basis of the given cohomological degree (optionally weight)."""
    idx = range(1, n_gens + 1)
    if picture == ODD:
        coeffs = [c for k in range(n_gens + 1) for c in itertools.combinations(idx, k)]
        derivs = list(itertools.combinations_with_replacement(idx, degree))
    else:
        derivs = list(itertools.combinations(idx, degree))
        top = max(0, degree + (weight if weight is not None else 0))
        coeffs = [c for k in range(0, top + 1) for c in itertools.combinations_with_replacement(idx, k)]
    out = []
    for d in derivs:
        for c in coeffs:
            p = Polyvector.monomial(n_gens, c, d, picture=picture)
            if weight is None or p.weight == weight:
                out.append(p)
    return out


def even_weight_basis(n_gens: int, degree: int) -> List[Polyvector]:
    """Odd-picture monomials ``xi_J theta_I`` with ``|J| + |I|`` even."""
    return [p for p in basis(n_gens, degree) if p.weight % 2 == 0]


def determinant_form(n_gens: int) -> Polyvector:
    return Polyvector.monomial(n_gens, tuple(range(1, n_gens + 1)))


# ---------- HKR maps ----------

def _derivation_product(spec: AlgebraSpec, idx: Sequence[int], args: Sequence[Monomial], picture: str) -> Element:
    """``(1/n!) sum_sigma eps_sigma d_{i_s(1)}(a_1) ... d_{i_s(n)}(a_n)``."""
    n = len(idx)
    out: Element = {}
    for perm in itertools.permutations(range(n)):
        sign = alg._perm_sign(perm) if picture == EVEN else 1
        acc: Element = {(): Fraction(sign)}
        for k, a in zip(perm, args):
            acc = alg.multiply(spec, acc, alg.derivative(spec, idx[k], a))
            if not acc:
                break
        for m, c in acc.items():
            alg.add_to(out, m, c)
    return alg.scale(out, Fraction(1, factorial(n)))


def _hkr_values(p: Polyvector, spec: AlgebraSpec, truncation: Optional[int], signed: bool) -> Cochain:
    if p.is_zero():
        return Cochain.zero(spec, 0, 0, truncation)
    n = p.degree
    w = p._homog(lambda k: len(k[0]) - len(k[1]))
    probe = Cochain.zero(spec, n, w, truncation)
    vals: Dict[tuple, Element] = {}
    for a in probe.inputs():
        out: Element = {}
        for (c, d), v in p.terms.items():
            prod = _derivation_product(spec, d, a, p.picture)
            if not prod:
                continue
            val = alg.multiply(spec, {c: Fraction(1)}, prod)
            s = transfer_sign(a) if signed else 1
            for m, x in val.items():
                alg.add_to(out, m, s * v * x)
        if out:
            vals[a] = out
    return Cochain(spec, n, w, vals, truncation)


def _check_hkr_spec(p: Polyvector, spec: AlgebraSpec) -> None:
    if spec.n_gens != p.n_gens:
        raise ValueError("generator counts differ")
    if p.picture == ODD and spec.comm != 1:
        raise ValueError("odd-picture polyvectors act on anticommuting generators")
    if p.picture == EVEN and spec.comm != 0:
        raise ValueError("even-picture polyvectors act on commuting generators")


def hkr_cochain(p: Polyvector, spec: AlgebraSpec, truncation: Optional[int] = None) -> Cochain:
    """Symmetrized polydifferential cochain of a homogeneous polyvector.

    On a graded-symmetric ``spec`` (generators of the polyvector's picture)
    this is the classical HKR map. On the exterior algebra, which shares the
    odd picture's multiplication table, the result is transported by the
    weight-sign identification and equals ``transfer_to_exterior``.
    """
    _check_hkr_spec(p, spec)
    if spec.e == 0 and spec.comm == 1:
        return transfer_to_exterior(p, spec)
    return _hkr_values(p, spec, truncation, signed=False)


def transfer_to_exterior(p: Polyvector, spec: Optional[AlgebraSpec] = None) -> Cochain:
    """Cocycle on the exterior algebra representing an odd-picture polyvector.

    ``x_J (1/n!) sum_sigma d(a_1)...d(a_n)`` times ``(-1)^{(n-1)w(a_1)+...+w(a_{n-1})}``.
    Accepts even-weight polyvectors and, for odd ``N``, the determinant form.
    """
    spec = spec or alg.exterior(p.n_gens)
    if p.picture != ODD:
        raise ValueError("transfer needs an odd-picture polyvector")
    if spec.comm != 1 or spec.e != 0:
        raise ValueError(f"{spec.label} is not an exterior algebra in the unsheared grading")
    if p.is_zero():
        return Cochain.zero(spec, 0, 0)
    if p.weight % 2:
        if not (p.n_gens % 2 and set(p.terms) == set(determinant_form(p.n_gens).terms)):
            raise ParityError("only even-weight polyvectors (or the determinant form) transfer")
        return Cochain.constant(spec, {k[0]: v for k, v in p.terms.items()})
    return _hkr_values(p, spec, None, signed=True)


# ---------- differential forms and the chain-level HKR map ----------

class DifferentialForm:
    """Sparse combination of ``coeff-letters * d-letters`` for a spec with ``c == e``.

    Letters carry a bidegree (cohomological, internal): ``xi ~ (0, e)``,
    ``d xi ~ (1, e)``; swapping two letters costs ``coh*coh' + int*int'``.
    """

    __slots__ = ("spec", "terms")

    def __init__(self, spec: AlgebraSpec, terms=None):
        if spec.comm != spec.e:
            raise ValueError("forms need a graded-commutative algebra in its own sign rule")
        self.spec = spec
        self.terms: Dict[PVMono, Fraction] = {}
        for (c, d), v in (terms or {}).items():
            s, key = self._normal(tuple(c), tuple(d))
            if s:
                self._add(key, s * Fraction(v))

    def _normal(self, c, d):
        e = self.spec.e
        s1, c2 = alg._normal_form(e, c)
        s2, d2 = alg._normal_form((1 + e) % 2, d)
        if not (s1 and s2):
            return 0, ((), ())
        return s1 * s2, (c2, d2)

    def _add(self, key, v):
        if not v:
            return
        s = self.terms.get(key, 0) + v
        if s:
            self.terms[key] = s
        else:
            self.terms.pop(key, None)

    def __mul__(self, other: "DifferentialForm") -> "DifferentialForm":
        e = self.spec.e
        out = DifferentialForm(self.spec)
        for (c1, d1), x in self.terms.items():
            for (c2, d2), y in other.terms.items():
                # move c2 left past d1
                s0 = _sgn(e * len(d1) * len(c2))
                s, key = self._normal(c1 + c2, d1 + d2)
                if s:
                    out._add(key, s0 * s * x * y)
        return out

    def __add__(self, other: "DifferentialForm") -> "DifferentialForm":
        out = DifferentialForm(self.spec, self.terms)
        for k, v in other.terms.items():
            out._add(k, v)
        return out

    def scale(self, c) -> "DifferentialForm":
        return DifferentialForm(self.spec, {k: v * c for k, v in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, DifferentialForm):
            return NotImplemented
        return self.spec == other.spec and self.terms == other.terms

    def __repr__(self) -> str:
        return f"DifferentialForm({self.terms})"


def form_of(spec: AlgebraSpec, a: Element) -> DifferentialForm:
    return DifferentialForm(spec, {(m, ()): c for m, c in a.items()})


def exterior_derivative(spec: AlgebraSpec, mono: Monomial) -> DifferentialForm:
    """``d`` has bidegree (1, 0) and so passes every letter without sign."""
    out = DifferentialForm(spec)
    for pos, j in enumerate(mono):
        left = DifferentialForm(spec, {(mono[:pos], ()): 1})
        right = DifferentialForm(spec, {(mono[pos + 1 :], ()): 1})
        out = out + left * DifferentialForm(spec, {((), (j,)): 1}) * right
    return out


def hkr_chain(spec: AlgebraSpec, chain: Dict) -> DifferentialForm:
    """``a_0[a_1|...|a_n] -> (1/n!) a_0 da_1 ... da_n`` extended linearly."""
    out = DifferentialForm(spec)
    for (a0, bar), c in chain.items():
        t = DifferentialForm(spec, {(a0, ()): 1})
        for a in bar:
            t = t * exterior_derivative(spec, a)
        out = out + t.scale(Fraction(c, factorial(len(bar))))
    return out


# ---------- Kontsevich graph operators ----------

@dataclass
class KontsevichGraph:
    """``n`` type-I vertices ``0..n-1``, ``m`` type-II vertices ``n..n+m-1``.

    ``edges`` are ``(source, target)`` pairs; sources must be type I. The edge
    list order fixes the order in which the edge operators are composed.
    """

    n: int
    m: int
    edges: List[Tuple[int, int]] = field(default_factory=list)

    def __post_init__(self):
        for s, t in self.edges:
            if not (0 <= s < self.n):
                raise ValueError(f"edge source {s} is not a type-I vertex")
            if not (0 <= t < self.n + self.m) or t == s:
                raise ValueError(f"bad edge target {t}")


def graph_operator(graph: KontsevichGraph, polyvectors: Sequence[Polyvector], functions: Sequence[Element]) -> Element:
    """``pi mu (prod_edges sum_k d/dtheta_k^(s) (x) d/dxi_k^(t))`` on the odd picture.

    Edge operators are applied in reverse list order (composition order);
    an odd ``d/dxi`` at factor ``t`` picks up the parity of the factors before it.
    """
    if len(polyvectors) != graph.n or len(functions) != graph.m:
        raise ValueError("argument counts do not match the graph")
    if not polyvectors and not functions:
        return {(): Fraction(1)}
    N = (polyvectors[0].n_gens if polyvectors else max((max(k, default=0) for f in functions for k in f), default=1))
    for p in polyvectors:
        if p.picture != ODD or p.n_gens != N:
            raise ValueError("graph operators act on odd-picture polyvectors of one space")
    factors = list(polyvectors) + [Polyvector(N, {(k, ()): v for k, v in f.items()}) for f in functions]
    # expand into a list of (coef, [monomials])
    states = [(Fraction(1), [])]
    for fac in factors:
        states = [(c * v, ms + [k]) for c, ms in states for k, v in fac.terms.items()]
    for s, t in reversed(graph.edges):
        new = []
        for c, ms in states:
            for k in range(1, N + 1):
                a = Polyvector(N, {ms[s]: 1})
                da = d_left(a, "d", k)
                if da.is_zero():
                    continue
                b = Polyvector(N, {ms[t]: 1})
                db = d_left(b, "c", k)
                if db.is_zero():
                    continue
                # d/dtheta is even; d/dxi passes the odd parity of earlier factors
                ms_after = list(ms)
                for (ka, va) in da.terms.items():
                    ms_after[s] = ka
                    before = sum(len(ms_after[q][0]) for q in range(t)) % 2
                    for kb, vb in db.terms.items():
                        ms2 = list(ms_after)
                        ms2[t] = kb
                        new.append((c * va * vb * _sgn(before), ms2))
        states = new
    out: Element = {}
    for c, ms in states:
        acc = Polyvector(N, {((), ()): c})
        for k in ms:
            acc = wedge(acc, Polyvector(N, {k: 1}))
        for (cf, dv), v in acc.terms.items():
            if not dv:
                alg.add_to(out, cf, v)
    return out


# ---------- formal families and Maurer-Cartan ----------

@dataclass
class FormalPolyvectorFamily:
    """``sum_k gamma_k hbar^k`` truncated at order ``K``."""

    coefficients: Dict[int, Polyvector]
    K: int
    n_gens: int = 0

    def __post_init__(self):
        for k in self.coefficients:
            if not (1 <= k <= self.K):
                raise ValueError(f"order {k} outside 1..{self.K}")
        if not self.n_gens and self.coefficients:
            self.n_gens = next(iter(self.coefficients.values())).n_gens

    @property
    def picture(self) -> str:
        pics = {p.picture for p in self.coefficients.values()}
        if len(pics) > 1:
            raise ValueError("family mixes polyvector pictures")
        return pics.pop() if pics else ODD

    def get(self, k: int) -> Polyvector:
        return self.coefficients.get(k) or Polyvector(self.n_gens or 1, picture=self.picture)


@dataclass
class MCOrder:
    order: int
    value: Polyvector
    zero: bool


def mc_check(family: FormalPolyvectorFamily) -> List[MCOrder]:
    """Per order ``k``, ``sum_{i+j=k} [gamma_i, gamma_j]_SN``."""
    out = []
    for k in range(1, family.K + 1):
        acc = Polyvector(family.n_gens or 1, picture=family.picture)
        for i in range(1, k):
            acc = acc + schouten_bracket(family.get(i), family.get(k - i))
        out.append(MCOrder(k, acc, acc.is_zero()))
    return out


# ---------- text format ----------

_SUB = str.maketrans("₀₁₂₃₄₅₆₇₈₉", "0123456789")
_SUP = str.maketrans("⁰¹²³⁴⁵⁶⁷⁸⁹", "0123456789")
_SUBOUT = str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉")

_TOKEN = re.compile(
    r"(?P<sym>∂y|dy|θ|theta|ξ|xi|∂|d|x|y)(?P<idx>[0-9₀-₉]*)(?:\^(?P<pow>[0-9]+)|(?P<sup>[⁰-⁹¹²³]+))?"
)
_COEF = re.compile(r"^\s*([+-]?)\s*([0-9]+(?:/[0-9]+)?)?\s*\*?\s*")

_ODD_C = {"ξ", "xi", "x"}
_ODD_D = {"θ", "theta", "∂", "d"}
_EVEN_C = {"y"}
_EVEN_D = {"∂y", "dy"}


def _split_terms(text: str) -> List[str]:
    text = text.strip()
    parts, cur = [], ""
    for ch in text:
        if ch in "+-" and cur.strip() and not cur.rstrip().endswith(("^", "*")):
            parts.append(cur)
            cur = ch
        else:
            cur += ch
    if cur.strip():
        parts.append(cur)
    return parts


def parse(text: str, n_gens: int) -> Polyvector:
    """Parse ``"x∂"``, ``"ξ1 θ1 - 2 θ1θ2"``, ``"y1 ∂y2"`` and ASCII spellings.

    Letters are multiplied in the order written, so reordering signs apply.
    A missing index means generator 1.
    """
    picture = None
    out: Optional[Polyvector] = None
    for term in _split_terms(text):
        m = _COEF.match(term)
        sign = -1 if m.group(1) == "-" else 1
        coef = Fraction(m.group(2)) if m.group(2) else Fraction(1)
        rest = term[m.end() :].replace(" ", "").replace("*", "").replace("·", "")
        letters: List[Tuple[str, int]] = []
        pos = 0
        if rest in ("", "1"):
            pos = len(rest)
        while pos < len(rest):
            t = _TOKEN.match(rest, pos)
            if not t or t.end() == pos:
                raise ParseError(f"cannot parse {rest[pos:]!r} in {text!r}")
            sym = t.group("sym")
            idx = int(t.group("idx").translate(_SUB)) if t.group("idx") else 1
            power = int(t.group("pow") or (t.group("sup") or "1").translate(_SUP))
            if sym in _ODD_C | _ODD_D:
                pic, block = ODD, ("c" if sym in _ODD_C else "d")
            else:
                pic, block = EVEN, ("c" if sym in _EVEN_C else "d")
            if picture is None:
                picture = pic
            elif picture != pic:
                raise ParseError("cannot mix odd and even coordinates")
            if not (1 <= idx <= n_gens):
                raise ParseError(f"index {idx} outside 1..{n_gens}")
            letters.extend([(block, idx)] * power)
            pos = t.end()
        picture = picture or ODD
        acc = Polyvector.monomial(n_gens, c=sign * coef, picture=picture)
        for block, idx in letters:
            key = ((idx,), ()) if block == "c" else ((), (idx,))
            acc = wedge(acc, Polyvector(n_gens, {key: 1}, picture))
        out = acc if out is None else out + acc
    if out is None:
        raise ParseError("empty polyvector")
    return out


def _names(picture: str, exterior_names: bool) -> Tuple[str, str]:
    if picture == EVEN:
        return "y", "∂y"
    return ("x", "∂") if exterior_names else ("ξ", "θ")


def render_mono(n_gens: int, mono: PVMono, picture: str = ODD, exterior_names: bool = False) -> str:
    cs, ds = _names(picture, exterior_names)
    c = alg.render_monomial(mono[0], cs, n_gens) if mono[0] else ""
    d = alg.render_monomial(mono[1], ds, n_gens) if mono[1] else ""
    return (c + d) or "1"


def render(p: Polyvector, exterior_names: bool = False) -> str:
    if p.is_zero():
        return "0"
    items = sorted(p.terms.items(), key=lambda t: (len(t[0][1]), len(t[0][0]), t[0]))
    return " ".join(
        alg.format_term(v, render_mono(p.n_gens, k, p.picture, exterior_names), i == 0) for i, (k, v) in enumerate(items)
    )


def _idx_word(prefix: str, idx: Monomial) -> str:
    return "".join(f"{prefix}{i}" for i in idx) or "1"


def serialize(p: Polyvector, order: Optional[int] = None) -> str:
    """One term per line: ``coeff  coefficient-monomial  derivative-multiset  [order]``."""
    cs, ds = ("ξ", "θ") if p.picture == ODD else ("y", "∂y")
    lines = []
    for (c, d), v in sorted(p.terms.items()):
        fields = [str(v), _idx_word(cs, c), _idx_word(ds, d) if d else "-"]
        if order is not None:
            fields.append(str(order))
        lines.append("  ".join(fields))
    return "\n".join(lines) + ("\n" if lines else "")


def serialize_family(fam: FormalPolyvectorFamily) -> str:
    return "".join(serialize(fam.coefficients[k], k) for k in sorted(fam.coefficients))


def parse_lines(text: str, n_gens: int) -> Dict[Optional[int], Polyvector]:
    """Inverse of ``serialize``; lines without an order go under key ``None``."""
    out: Dict[Optional[int], Polyvector] = {}
    for ln in text.splitlines():
        ln = ln.split("#", 1)[0].strip()
        if not ln:
            continue
        fields = ln.split()
        if len(fields) not in (3, 4):
            raise ParseError(f"expected 3 or 4 fields: {ln!r}")
        coef = Fraction(fields[0])
        body = "" if fields[1] == "1" else fields[1]
        body += "" if fields[2] == "-" else fields[2]
        order = int(fields[3]) if len(fields) == 4 else None
        p = parse(body or "1", n_gens).scale(coef)
        out[order] = out[order] + p if order in out else p
    return out


def parse_family(text: str, n_gens: int, K: Optional[int] = None) -> FormalPolyvectorFamily:
    by_order = parse_lines(text, n_gens)
    if None in by_order:
        raise ParseError("family lines need an order column")
    top = max(by_order) if by_order else 1
    return FormalPolyvectorFamily(dict(by_order), K if K is not None else top, n_gens)
