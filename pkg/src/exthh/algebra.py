"""Exterior and graded-symmetric algebras on N generators.

A monomial is a sorted tuple of generator indices ``1..N``; an element is a
dict ``monomial -> Fraction``. Two parities govern everything:

* the *commutation parity* ``c``: ``x_i x_j = (-1)^c x_j x_i``. Squares of
  generators vanish exactly when ``c`` is odd.
* the *degree parity* ``e``: the internal degree of a weight-``w`` element is
  ``e * w`` mod 2. This is what enters the Hochschild sign rules.

Shearing flips ``e`` and leaves the multiplication table alone.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Tuple

Monomial = Tuple[int, ...]
Element = Dict[Monomial, Fraction]

EXTERIOR = "exterior"
SYMMETRIC = "symmetric"

UNIT: Monomial = ()


class SpecMismatch(ValueError):
    pass


@dataclass(frozen=True)
class AlgebraSpec:
    kind: str
    n_gens: int
    m: int = 0
    sheared: bool = False

    def __post_init__(self):
        if self.kind not in (EXTERIOR, SYMMETRIC):
            raise ValueError(f"unknown algebra kind {self.kind!r}")
        if self.n_gens < 1:
            raise ValueError("need at least one generator")
        object.__setattr__(self, "m", self.m % 2)

    @property
    def comm(self) -> int:
        return self.m if self.kind == SYMMETRIC else (self.m + 1) % 2

    @property
    def e(self) -> int:
        return (self.m + int(self.sheared)) % 2

    @property
    def finite(self) -> bool:
        return self.comm == 1

    @property
    def top_weight(self) -> Optional[int]:
        return self.n_gens if self.finite else None

    def degree(self, weight: int) -> int:
        """Internal degree parity of a weight-``weight`` element."""
        return (self.e * weight) % 2

    def effective_parity(self, weight: int) -> int:
        return self.degree(weight)

    @property
    def label(self) -> str:
        s = f"{self.kind}(N={self.n_gens}, m={self.m}"
        return s + (", sheared)" if self.sheared else ")")

    def key(self) -> dict:
        return {"kind": self.kind, "N": self.n_gens, "m": self.m, "sheared": self.sheared}


def exterior(n: int, m: int = 0) -> AlgebraSpec:
    return AlgebraSpec(EXTERIOR, n, m)


def graded_symmetric(n: int, m: int = 1, sheared: bool = False) -> AlgebraSpec:
    return AlgebraSpec(SYMMETRIC, n, m, sheared)


def shear(spec: AlgebraSpec) -> AlgebraSpec:
    return replace(spec, sheared=not spec.sheared)


def weight(mono: Monomial) -> int:
    return len(mono)


# ---------- monomial arithmetic ----------

@lru_cache(maxsize=None)
def _normal_form(comm: int, word: Tuple[int, ...]) -> Tuple[int, Monomial]:
    """Sort ``word`` with Koszul signs; sign 0 means the product vanishes."""
    w = list(word)
    sign = 1
    # insertion sort, counting transpositions of distinct letters
    for i in range(1, len(w)):
        j = i
        while j > 0 and w[j - 1] > w[j]:
            w[j - 1], w[j] = w[j], w[j - 1]
            if comm:
                sign = -sign
            j -= 1
    if comm and any(a == b for a, b in zip(w, w[1:])):
        return 0, ()
    return sign, tuple(w)


def normal_form(spec: AlgebraSpec, word: Iterable[int]) -> Tuple[int, Monomial]:
    return _normal_form(spec.comm, tuple(word))


def mono_mul(spec: AlgebraSpec, u: Monomial, v: Monomial) -> Tuple[int, Monomial]:
    if not u:
        return 1, v
    if not v:
        return 1, u
    return _normal_form(spec.comm, u + v)


def element(*terms, **_) -> Element:
    """``element((coef, mono), ...)`` with zero coefficients dropped."""
    out: Element = {}
    for c, mono in terms:
        add_to(out, tuple(mono), c)
    return out


def add_to(target: Element, mono: Monomial, c) -> None:
    if not c:
        return
    s = target.get(mono, 0) + Fraction(c)
    if s:
        target[mono] = s
    else:
        target.pop(mono, None)


def check_monomial(spec: AlgebraSpec, mono: Monomial) -> None:
    if any(not (1 <= i <= spec.n_gens) for i in mono):
        raise SpecMismatch(f"monomial {mono} not in {spec.label}")
    s, nf = normal_form(spec, mono)
    if s != 1 or nf != mono:
        raise SpecMismatch(f"monomial {mono} is not in normal form for {spec.label}")


def multiply(spec: AlgebraSpec, a: Element, b: Element) -> Element:
    out: Element = {}
    for u, x in a.items():
        for v, y in b.items():
            s, w = mono_mul(spec, u, v)
            if s:
                add_to(out, w, s * x * y)
    return out


def scale(a: Element, c) -> Element:
    c = Fraction(c)
    return {k: v * c for k, v in a.items()} if c else {}


def add(a: Element, b: Element) -> Element:
    out = dict(a)
    for k, v in b.items():
        add_to(out, k, v)
    return out


def basis_slice(spec: AlgebraSpec, w: int) -> List[Monomial]:
    if w < 0:
        return []
    idx = range(1, spec.n_gens + 1)
    if spec.finite:
        return list(itertools.combinations(idx, w))
    return list(itertools.combinations_with_replacement(idx, w))


def basis_upto(spec: AlgebraSpec, max_w: int) -> List[Monomial]:
    out = []
    for w in range(max_w + 1):
        out.extend(basis_slice(spec, w))
    return out


def dimension(spec: AlgebraSpec, w: int) -> int:
    return len(basis_slice(spec, w))


def derivative(spec: AlgebraSpec, i: int, mono: Monomial) -> Element:
    """Left partial derivative in the ``i``-th generator.

    For anticommuting generators removing the letter at position ``l`` costs
    ``(-1)^l``; for commuting ones this is the ordinary derivative.
    """
    out: Element = {}
    for l, j in enumerate(mono):
        if j == i:
            s = -1 if (spec.comm and l % 2) else 1
            add_to(out, mono[:l] + mono[l + 1:], s)
    return out


def derivative_el(spec: AlgebraSpec, i: int, a: Element) -> Element:
    out: Element = {}
    for mono, c in a.items():
        for m2, d in derivative(spec, i, mono).items():
            add_to(out, m2, c * d)
    return out


# ---------- Koszul dual coalgebra ----------

@dataclass(frozen=True)
class KoszulGenerator:
    """Element of ``W_n`` given as a (signed) symmetrization of one word.

    ``indices`` is the sorted multiset (or set); ``words`` maps each word in
    ``V^{(x)n}`` to its coefficient.
    """

    indices: Monomial
    words: Tuple[Tuple[Tuple[int, ...], int], ...]

    @property
    def n(self) -> int:
        return len(self.indices)

    def as_dict(self) -> Dict[Tuple[int, ...], int]:
        return dict(self.words)

    @property
    def lead(self) -> int:
        """Coefficient of the sorted word."""
        return dict(self.words)[self.indices]


def _perm_sign(p) -> int:
    s = 1
    p = list(p)
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if p[i] > p[j]:
                s = -s
    return s


@lru_cache(maxsize=None)
def _koszul_generator(comm: int, indices: Monomial) -> KoszulGenerator:
    words: Dict[Tuple[int, ...], int] = {}
    n = len(indices)
    for perm in itertools.permutations(range(n)):
        sgn = _perm_sign(perm) if comm == 0 else 1
        wd = tuple(indices[k] for k in perm)
        words[wd] = words.get(wd, 0) + sgn
    return KoszulGenerator(indices, tuple(sorted((k, v) for k, v in words.items() if v)))


def koszul_basis(spec: AlgebraSpec, n: int) -> List[KoszulGenerator]:
    """Basis of ``W_n``: symmetric tensors when ``c`` is odd, alternating otherwise.

    The relations of the algebra are ``x(x)y - (-1)^c y(x)x``, so the
    intersection ``W_n`` is the space of tensors (anti)invariant under
    permutation; this is identified with a monomial of ``Sym^n(V[1])``.
    """
    idx = range(1, spec.n_gens + 1)
    if spec.comm:
        sets = itertools.combinations_with_replacement(idx, n)
    else:
        sets = itertools.combinations(idx, n)
    return [_koszul_generator(spec.comm, s) for s in sets]


def koszul_dimension(spec: AlgebraSpec, n: int) -> int:
    from math import comb

    N = spec.n_gens
    return comb(N + n - 1, n) if spec.comm else comb(N, n)


# ---------- rendering ----------

_SUB = str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉")
_SUP = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")


def symbol(spec: AlgebraSpec) -> str:
    return "x" if spec.kind == EXTERIOR else "ξ"


def render_monomial(mono: Monomial, sym: str = "x", n_gens: int = 2) -> str:
    if not mono:
        return "1"
    out = []
    for i, grp in itertools.groupby(mono):
        k = len(list(grp))
        s = sym if n_gens == 1 else sym + str(i).translate(_SUB)
        out.append(s + (str(k).translate(_SUP) if k > 1 else ""))
    return "".join(out)


def format_term(c: Fraction, body: str, first: bool) -> str:
    """Render ``c * body`` as a term of a sum; ``body == "1"`` for scalars."""
    a = abs(c)
    mag = str(a) if (a != 1 or body == "1") else ""
    core = mag + ("" if body == "1" else body)
    if first:
        return ("-" if c < 0 else "") + core
    return ("- " if c < 0 else "+ ") + core


def render(spec: AlgebraSpec, a: Element) -> str:
    if not a:
        return "0"
    terms = sorted(a.items(), key=lambda t: (len(t[0]), t[0]))
    return " ".join(
        format_term(c, render_monomial(mono, symbol(spec), spec.n_gens), k == 0)
        for k, (mono, c) in enumerate(terms)
    )
