"""Hochschild chain and cochain complexes, bar and Koszul models.

Everything is sliced by bidegree. Chains of arity ``n`` and total weight ``w``
live in ``A (x) Abar^{(x)n}``; cochains of arity ``n`` and weight ``w_f`` are
value tables on the reduced bar basis (``Abar`` = positive weight part).

Sign conventions follow the bigraded (internal-degree) formalism; the
cochain differential additionally has a ``dg`` flavour, the totalized
complex in which cup products and braces carry Koszul signs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from . import algebra as alg
from .algebra import AlgebraSpec, Element, Monomial
from .linalg import SparseMatrix, SubquotientReport, cohomology_at

BarElement = Tuple[Monomial, ...]

HOMOLOGY = "homology"
COHOMOLOGY = "cohomology"
BAR = "bar"
KOSZUL = "koszul"


class TruncationError(ValueError):
    pass


class ParityError(ValueError):
    pass


def _sgn(k: int) -> int:
    return -1 if k % 2 else 1


def needs_truncation(spec: AlgebraSpec) -> bool:
    """Graded-symmetric specs always take an explicit weight cap."""
    return spec.kind == alg.SYMMETRIC


def _check_truncation(spec: AlgebraSpec, truncation: Optional[int], needed: int) -> None:
    if needs_truncation(spec):
        if truncation is None:
            raise TruncationError(f"{spec.label} needs an explicit weight truncation")
        if truncation < needed:
            raise TruncationError(f"truncation {truncation} < required weight {needed}")


# ---------- bases ----------

@lru_cache(maxsize=None)
def _compositions(total: int, parts: int, lo: int, hi: int) -> Tuple[Tuple[int, ...], ...]:
    if parts == 0:
        return ((),) if total == 0 else ()
    out = []
    for first in range(lo, min(hi, total) + 1):
        for rest in _compositions(total - first, parts - 1, lo, hi):
            out.append((first,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def bar_basis(spec: AlgebraSpec, n: int, u: int, reduced: bool = True) -> Tuple[BarElement, ...]:
    """Arity-``n`` tensors of normal-form monomials with total weight ``u``."""
    top = spec.top_weight if spec.finite else u
    lo = 1 if reduced else 0
    out: List[BarElement] = []
    for comp in _compositions(u, n, lo, top):
        out.extend(itertools.product(*(alg.basis_slice(spec, k) for k in comp)))
    return tuple(out)


def bar_weight(b: BarElement) -> int:
    return sum(len(a) for a in b)


def input_weights(spec: AlgebraSpec, n: int, truncation: Optional[int] = None) -> range:
    if spec.finite and truncation is None:
        return range(n, n * spec.n_gens + 1)
    return range(n, (truncation if truncation is not None else n) + 1)


@dataclass
class ComplexSlice:
    """Matrix of one differential between enumerated bases.

    ``matrix`` has rows indexed by ``target`` and columns by ``source``.
    ``source_weights``/``target_weights`` record the weight used for the
    even/odd split (total weight for chains, ``w(f)`` for cochains).
    """

    source: list
    target: list
    matrix: SparseMatrix
    bidegree: tuple
    source_weights: List[int] = field(default_factory=list)
    target_weights: List[int] = field(default_factory=list)
    kind: str = ""

    def __post_init__(self):
        assert self.matrix.rows == len(self.target) and self.matrix.cols == len(self.source)


def _assemble(source, target, entries, bidegree, sw, tw, kind) -> ComplexSlice:
    sidx = {b: i for i, b in enumerate(source)}
    tidx = {b: i for i, b in enumerate(target)}
    m = SparseMatrix(len(target), len(source))
    for (t, s), v in entries.items():
        if v:
            m.add(tidx[t], sidx[s], v)
    return ComplexSlice(list(source), list(target), m, bidegree, sw, tw, kind)


def _weights(w: Union[int, Iterable[int]]) -> List[int]:
    return [w] if isinstance(w, int) else list(w)


# ---------- chains ----------

def chain_basis(spec: AlgebraSpec, n: int, w: int, reduced: bool = True) -> List[Tuple[Monomial, BarElement]]:
    out = []
    for wa in range(0, w + 1):
        for a in alg.basis_slice(spec, wa):
            for b in bar_basis(spec, n, w - wa, reduced):
                out.append((a, b))
    return out


def _chain_terms(spec: AlgebraSpec, a: Monomial, bar: BarElement, reduced: bool):
    """Terms of the Hochschild boundary of ``a[a_1|...|a_n]``."""
    n = len(bar)
    e = spec.e
    # a * a1 [a2 | ... | an]
    s, prod = alg.mono_mul(spec, a, bar[0])
    if s:
        yield s, (prod, bar[1:])
    for i in range(1, n):
        s, prod = alg.mono_mul(spec, bar[i - 1], bar[i])
        if s and (prod or not reduced):
            yield _sgn(i) * s, (a, bar[: i - 1] + (prod,) + bar[i + 1:])
    # wrap-around: (-1)^eps a_n a [a1 | ... | a_{n-1}]
    wn = len(bar[-1])
    eps = n + e * wn * (len(a) + sum(len(x) for x in bar[:-1]))
    s, prod = alg.mono_mul(spec, bar[-1], a)
    if s:
        yield _sgn(eps) * s, (prod, bar[:-1])


def chain_differential(spec: AlgebraSpec, n: int, w, reduced: bool = True) -> ComplexSlice:
    """Hochschild boundary ``C_n -> C_{n-1}`` on the weight slice(s) ``w``."""
    if n < 1:
        raise ValueError("chain differential needs n >= 1")
    src, tgt, sw, tw = [], [], [], []
    for wt in _weights(w):
        s = chain_basis(spec, n, wt, reduced)
        t = chain_basis(spec, n - 1, wt, reduced)
        src += s
        tgt += t
        sw += [wt] * len(s)
        tw += [wt] * len(t)
    entries: Dict = {}
    for a, bar in src:
        for s, term in _chain_terms(spec, a, bar, reduced):
            key = (term, (a, bar))
            entries[key] = entries.get(key, 0) + s
    return _assemble(src, tgt, entries, (n, w), sw, tw, "chain")


def bimodule_bar_basis(spec: AlgebraSpec, n: int, w: int, reduced: bool = True):
    out = []
    for wl in range(0, w + 1):
        for wr in range(0, w - wl + 1):
            for a0 in alg.basis_slice(spec, wl):
                for a1 in alg.basis_slice(spec, wr):
                    for b in bar_basis(spec, n, w - wl - wr, reduced):
                        out.append((a0, b, a1))
    return out


def bar_differential(spec: AlgebraSpec, n: int, w: int, reduced: bool = True) -> ComplexSlice:
    """Two-sided bar differential ``a0[a1|..|an]a_{n+1}`` with signs ``(-1)^i``, ``(-1)^n``."""
    if n < 1:
        raise ValueError("bar differential needs n >= 1")
    src = bimodule_bar_basis(spec, n, w, reduced)
    tgt = bimodule_bar_basis(spec, n - 1, w, reduced)
    entries: Dict = {}

    def put(t, s, v):
        entries[(t, s)] = entries.get((t, s), 0) + v

    for a0, bar, a1 in src:
        key = (a0, bar, a1)
        s, p = alg.mono_mul(spec, a0, bar[0])
        if s:
            put((p, bar[1:], a1), key, s)
        for i in range(1, n):
            s, p = alg.mono_mul(spec, bar[i - 1], bar[i])
            if s and (p or not reduced):
                put((a0, bar[: i - 1] + (p,) + bar[i + 1:], a1), key, _sgn(i) * s)
        s, p = alg.mono_mul(spec, bar[-1], a1)
        if s:
            put((a0, bar[:-1], p), key, _sgn(n) * s)
    return _assemble(src, tgt, entries, (n, w), [w] * len(src), [w] * len(tgt), "bar")


# ---------- cochains ----------

def cochain_basis(spec: AlgebraSpec, n: int, w_f: int, truncation: Optional[int] = None):
    """Pairs ``(input, output monomial)`` spanning arity-``n`` cochains of weight ``w_f``."""
    out = []
    for u in input_weights(spec, n, truncation):
        outs = alg.basis_slice(spec, u + w_f)
        if not outs:
            continue
        for b in bar_basis(spec, n, u):
            for o in outs:
                out.append((b, o))
    return out


def _cochain_terms(spec: AlgebraSpec, a: BarElement, w_f: int, convention: str):
    """Terms of ``(df)(a)`` as ``(sign, source input, left factor, right factor)``.

    ``a`` has arity ``N``; ``f`` has arity ``N - 1`` and weight ``w_f``.
    """
    N = len(a)
    e = spec.e
    wts = [len(x) for x in a]
    if convention == "bigraded":
        delta = N + e * wts[0] * w_f
        yield _sgn(delta), a[1:], a[0], ()
        for i in range(1, N):
            s, p = alg.mono_mul(spec, a[i - 1], a[i])
            if s:
                yield _sgn(i + N) * s, a[: i - 1] + (p,) + a[i + 1:], (), ()
        yield 1, a[:-1], (), a[-1]
    elif convention == "dg":
        deg_f = (N - 1) + e * w_f
        pre = -_sgn(deg_f)
        degs = [e * x for x in wts]
        yield pre * _sgn(deg_f * degs[0]), a[1:], a[0], ()
        acc = 0
        for i in range(1, N):
            acc += degs[i - 1]
            s, p = alg.mono_mul(spec, a[i - 1], a[i])
            if s:
                yield pre * _sgn(acc + i) * s, a[: i - 1] + (p,) + a[i + 1:], (), ()
        yield pre * _sgn(sum(degs[:-1]) + N), a[:-1], (), a[-1]
    else:
        raise ValueError(f"unknown convention {convention!r}")


def cochain_differential(
    spec: AlgebraSpec,
    n: int,
    w_f,
    truncation: Optional[int] = None,
    convention: str = "bigraded",
) -> ComplexSlice:
    """Hochschild codifferential from arity ``n`` to arity ``n + 1``."""
    if n < 0:
        raise ValueError("arity must be >= 0")
    if not spec.finite:
        _check_truncation(spec, truncation, n + 1)
    src, tgt, sw, tw = [], [], [], []
    for wf in _weights(w_f):
        s = cochain_basis(spec, n, wf, truncation)
        t = cochain_basis(spec, n + 1, wf, truncation)
        src += s
        tgt += t
        sw += [wf] * len(s)
        tw += [wf] * len(t)
    src_set = set(src)
    entries: Dict = {}
    by_input: Dict[BarElement, List[Monomial]] = {}
    for b, o in src:
        by_input.setdefault(b, []).append(o)
    for wf in _weights(w_f):
        for u in input_weights(spec, n + 1, truncation):
            if not alg.basis_slice(spec, u + wf):
                continue
            for a in bar_basis(spec, n + 1, u):
                for sign, b, left, right in _cochain_terms(spec, a, wf, convention):
                    for o in by_input.get(b, ()):
                        if (b, o) not in src_set or len(o) - bar_weight(b) != wf:
                            continue
                        s1, p = alg.mono_mul(spec, left, o)
                        if not s1:
                            continue
                        s2, p = alg.mono_mul(spec, p, right)
                        if not s2:
                            continue
                        key = ((a, p), (b, o))
                        entries[key] = entries.get(key, 0) + sign * s1 * s2
    entries = {k: v for k, v in entries.items() if v}
    return _assemble(src, tgt, entries, (n, w_f), sw, tw, "cochain")


# ---------- Koszul models ----------

def _koszul_coords(spec: AlgebraSpec, n: int, words: Dict[Tuple[int, ...], Fraction]) -> Dict[Monomial, Fraction]:
    """Coordinates of a tensor in ``W_n`` relative to ``koszul_basis``.

    Reads off the coefficient of each sorted word, then checks the tensor is
    reproduced exactly (so the input really lies in ``W_n``).
    """
    words = {k: v for k, v in words.items() if v}
    coords: Dict[Monomial, Fraction] = {}
    for g in alg.koszul_basis(spec, n):
        c = words.get(g.indices)
        if c:
            coords[g.indices] = Fraction(c) / g.lead
    rebuilt: Dict[Tuple[int, ...], Fraction] = {}
    for idx, c in coords.items():
        for wd, k in alg._koszul_generator(spec.comm, idx).words:
            rebuilt[wd] = rebuilt.get(wd, 0) + c * k
    rebuilt = {k: v for k, v in rebuilt.items() if v}
    if rebuilt != words:
        raise ValueError("tensor does not lie in W_n")
    return coords


def koszul_chain_basis(spec: AlgebraSpec, n: int, w: int):
    gens = alg.koszul_basis(spec, n)
    return [(a, g.indices) for a in alg.basis_slice(spec, w - n) for g in gens]


def koszul_chain_differential(spec: AlgebraSpec, n: int, w) -> ComplexSlice:
    """Two-term boundary on ``A (x) W_n`` with ``eps_n = n + e (w(a) + n - 1)``."""
    src, tgt, sw, tw = [], [], [], []
    for wt in _weights(w):
        s = koszul_chain_basis(spec, n, wt) if n >= 0 else []
        t = koszul_chain_basis(spec, n - 1, wt) if n >= 1 else []
        src += s
        tgt += t
        sw += [wt] * len(s)
        tw += [wt] * len(t)
    entries: Dict = {}
    if n >= 1:
        e = spec.e
        for a, idx in src:
            g = alg._koszul_generator(spec.comm, idx)
            eps = n + e * (len(a) + n - 1)
            out: Dict[Monomial, Dict[Tuple[int, ...], Fraction]] = {}
            for wd, lam in g.words:
                s, p = alg.mono_mul(spec, a, (wd[0],))
                if s:
                    d = out.setdefault(p, {})
                    d[wd[1:]] = d.get(wd[1:], 0) + s * lam
                s, p = alg.mono_mul(spec, (wd[-1],), a)
                if s:
                    d = out.setdefault(p, {})
                    d[wd[:-1]] = d.get(wd[:-1], 0) + _sgn(eps) * s * lam
            for p, words in out.items():
                for idx2, c in _koszul_coords(spec, n - 1, words).items():
                    key = ((p, idx2), (a, idx))
                    entries[key] = entries.get(key, 0) + c
    return _assemble(src, tgt, entries, (n, w), sw, tw, "koszul-chain")


def koszul_cochain_basis(spec: AlgebraSpec, n: int, w_f: int):
    return [(g.indices, o) for g in alg.koszul_basis(spec, n) for o in alg.basis_slice(spec, n + w_f)]


def koszul_cochain_differential(spec: AlgebraSpec, n: int, w_f) -> ComplexSlice:
    """Two-term codifferential on ``Hom(W_n, A)``, ``delta = n + 1 + e w(f)``."""
    src, tgt, sw, tw = [], [], [], []
    for wf in _weights(w_f):
        s = koszul_cochain_basis(spec, n, wf)
        t = koszul_cochain_basis(spec, n + 1, wf)
        src += s
        tgt += t
        sw += [wf] * len(s)
        tw += [wf] * len(t)
    src_set = set(src)
    entries: Dict = {}
    e = spec.e
    N = n + 1
    for wf in _weights(w_f):
        outs = alg.basis_slice(spec, n + wf)
        delta = N + e * wf
        for g in alg.koszul_basis(spec, N):
            left: Dict[int, Dict] = {}
            right: Dict[int, Dict] = {}
            for wd, lam in g.words:
                left.setdefault(wd[0], {})
                left[wd[0]][wd[1:]] = left[wd[0]].get(wd[1:], 0) + lam
                right.setdefault(wd[-1], {})
                right[wd[-1]][wd[:-1]] = right[wd[-1]].get(wd[:-1], 0) + lam
            for sides, sgn in ((left, _sgn(delta)), (right, 1)):
                for x, words in sides.items():
                    for idx, c in _koszul_coords(spec, n, words).items():
                        for o in outs:
                            if (idx, o) not in src_set:
                                continue
                            if sides is left:
                                s, p = alg.mono_mul(spec, (x,), o)
                            else:
                                s, p = alg.mono_mul(spec, o, (x,))
                            if s:
                                key = ((g.indices, p), (idx, o))
                                entries[key] = entries.get(key, 0) + sgn * s * c
    entries = {k: v for k, v in entries.items() if v}
    return _assemble(src, tgt, entries, (n, w_f), sw, tw, "koszul-cochain")


# ---------- parity splitting and transfers ----------

def weight_parity_restrict(sl: ComplexSlice, parity: int) -> ComplexSlice:
    parity %= 2
    si = [i for i, w in enumerate(sl.source_weights) if w % 2 == parity]
    ti = [i for i, w in enumerate(sl.target_weights) if w % 2 == parity]
    smap = {old: new for new, old in enumerate(si)}
    tmap = {old: new for new, old in enumerate(ti)}
    m = SparseMatrix(len(ti), len(si))
    for (r, c), v in sl.matrix.entries.items():
        if r in tmap and c in smap:
            m.add(tmap[r], smap[c], v)
    return ComplexSlice(
        [sl.source[i] for i in si],
        [sl.target[i] for i in ti],
        m,
        sl.bidegree + (("even", "odd")[parity],),
        [sl.source_weights[i] for i in si],
        [sl.target_weights[i] for i in ti],
        sl.kind,
    )


def cross_block_is_zero(sl: ComplexSlice) -> bool:
    return all(sl.source_weights[c] % 2 == sl.target_weights[r] % 2 for (r, c) in sl.matrix.entries)


def shear_transfer_chain(spec: AlgebraSpec, chain: Dict) -> Dict:
    """Levelwise identification of odd-weight chains of ``spec`` and its shear.

    Only the suspension bookkeeping changes, so on coordinates this is the
    identity; it commutes with the boundaries only on odd total weight.
    """
    for (a, bar), c in chain.items():
        if c and (len(a) + bar_weight(bar)) % 2 == 0:
            raise ParityError("shear transfer on chains is defined on odd total weight only")
    return dict(chain)


def transfer_sign(bar: BarElement) -> int:
    """``(-1)^{(n-1) w(a_1) + (n-2) w(a_2) + ... + w(a_{n-1})}``."""
    n = len(bar)
    return _sgn(sum((n - 1 - k) * len(x) for k, x in enumerate(bar)))


def shear_transfer_matrix(sl_basis: list) -> SparseMatrix:
    """Diagonal sign matrix of the cochain transfer on a cochain basis."""
    return SparseMatrix(len(sl_basis), len(sl_basis), {(i, i): transfer_sign(b) for i, (b, _) in enumerate(sl_basis)})


def totalize_sign(spec: AlgebraSpec, a0: Monomial, bar: BarElement) -> int:
    """Sign of ``s^n a0[a1|..|an] -> a0[s a1|..|s an]`` between bigraded and dg bar models."""
    n = len(bar)
    factors = (a0,) + tuple(bar)
    return _sgn(sum((n - k) * spec.degree(len(x)) for k, x in enumerate(factors[:n])))


# ---------- (co)homology ----------

def _empty(rows: int, cols: int) -> SparseMatrix:
    return SparseMatrix(rows, cols)


def hh_matrices(
    spec: AlgebraSpec,
    mode: str,
    model: str,
    n: int,
    w: int,
    truncation: Optional[int] = None,
) -> Tuple[SparseMatrix, SparseMatrix]:
    """Incoming and outgoing differentials ``(d_in, d_out)`` around slice ``(n, w)``."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if mode == HOMOLOGY:
        _check_truncation(spec, truncation, w)
        if model == BAR:
            d_in = chain_differential(spec, n + 1, w).matrix
            d_out = chain_differential(spec, n, w).matrix if n >= 1 else _empty(0, d_in.rows)
        elif model == KOSZUL:
            d_in = koszul_chain_differential(spec, n + 1, w).matrix
            d_out = koszul_chain_differential(spec, n, w).matrix if n >= 1 else _empty(0, d_in.rows)
        else:
            raise ValueError(f"unknown model {model!r}")
    elif mode == COHOMOLOGY:
        if model == BAR:
            if needs_truncation(spec):
                _check_truncation(spec, truncation, n + 1)
            trunc = truncation if not spec.finite else None
            d_out = cochain_differential(spec, n, w, trunc).matrix
            d_in = cochain_differential(spec, n - 1, w, trunc).matrix if n >= 1 else _empty(d_out.cols, 0)
        elif model == KOSZUL:
            d_out = koszul_cochain_differential(spec, n, w).matrix
            d_in = koszul_cochain_differential(spec, n - 1, w).matrix if n >= 1 else _empty(d_out.cols, 0)
        else:
            raise ValueError(f"unknown model {model!r}")
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return d_in, d_out


def compute_hh(
    spec: AlgebraSpec,
    mode: str,
    model: str,
    n: int,
    w: int,
    truncation: Optional[int] = None,
) -> SubquotientReport:
    """Dimension and representatives of HH at arity ``n`` and weight ``w``.

    For cohomology ``w`` is the cochain weight ``w(f)``.
    """
    d_in, d_out = hh_matrices(spec, mode, model, n, w, truncation)
    return cohomology_at(d_in, d_out, label=(mode, model, n, w))


def weight_range(spec: AlgebraSpec, mode: str, model: str, n: int, truncation: Optional[int] = None) -> range:
    """All weights at which arity-``n`` (co)chains can be nonzero."""
    top = spec.top_weight if spec.finite else truncation
    if top is None:
        raise TruncationError(f"{spec.label} needs an explicit weight truncation")
    if mode == HOMOLOGY:
        hi = top + (n * top if model == BAR else n)
        return range(n, hi + 1)
    lo = -(n * top if model == BAR else n)
    return range(lo, top - n + 1)


def hh_total(spec: AlgebraSpec, mode: str, model: str, n: int, truncation: Optional[int] = None) -> int:
    return sum(
        compute_hh(spec, mode, model, n, w, truncation).dimension
        for w in weight_range(spec, mode, model, n, truncation)
    )


# ---------- export ----------

def to_matrix_market(m: SparseMatrix) -> str:
    """``rows cols nnz`` header, then ``row col num/den`` lines (1-based)."""
    ents = sorted(m.entries.items())
    lines = [f"{m.rows} {m.cols} {len(ents)}"]
    for (r, c), v in ents:
        lines.append(f"{r + 1} {c + 1} {v.numerator}/{v.denominator}")
    return "\n".join(lines) + "\n"


def from_matrix_market(text: str) -> SparseMatrix:
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.startswith("%")]
    rows, cols, nnz = map(int, lines[0].split())
    m = SparseMatrix(rows, cols)
    for ln in lines[1 : nnz + 1]:
        r, c, v = ln.split()
        m.add(int(r) - 1, int(c) - 1, Fraction(v))
    return m


# ---------- cochains as value tables ----------

def default_convention(spec: AlgebraSpec) -> str:
    """Sheared/odd specs carry internal degrees, so they use the totalized signs."""
    return "dg" if spec.e else "bigraded"


class Cochain:
    """Weight-homogeneous normalized cochain stored as ``input -> Element``.

    ``weight`` is ``w(f)``: every value has weight ``w(input) + w(f)``. For
    infinite algebras ``truncation`` caps the input weights that are stored.
    """

    __slots__ = ("spec", "arity", "weight", "values", "truncation")

    def __init__(self, spec: AlgebraSpec, arity: int, weight: int, values=None, truncation: Optional[int] = None):
        if not spec.finite and truncation is None:
            raise TruncationError(f"{spec.label} cochains need a truncation")
        self.spec = spec
        self.arity = arity
        self.weight = weight
        self.truncation = None if spec.finite else truncation
        self.values: Dict[BarElement, Element] = {}
        for b, v in (values or {}).items():
            b = tuple(tuple(x) for x in b)
            v = {tuple(k): Fraction(c) for k, c in v.items() if c}
            if not v:
                continue
            if len(b) != arity or any(not x for x in b):
                raise ValueError(f"input {b} is not an arity-{arity} reduced bar element")
            for k in v:
                if len(k) != bar_weight(b) + weight:
                    raise ValueError(f"value {k} at {b} breaks weight {weight}")
            self.values[b] = v

    # shifted and total degrees
    @property
    def degree(self) -> int:
        return self.arity + self.spec.e * self.weight

    @property
    def shifted_degree(self) -> int:
        return self.degree - 1

    @classmethod
    def zero(cls, spec: AlgebraSpec, arity: int, weight: int, truncation: Optional[int] = None) -> "Cochain":
        return cls(spec, arity, weight, {}, truncation)

    @classmethod
    def constant(cls, spec: AlgebraSpec, a: Element, truncation: Optional[int] = None) -> "Cochain":
        """Arity-0 cochain with value ``a`` (homogeneous)."""
        ws = {len(k) for k in a}
        if len(ws) > 1:
            raise ValueError("constant cochain must be weight-homogeneous")
        return cls(spec, 0, ws.pop() if ws else 0, {(): a}, truncation)

    def basis(self) -> list:
        return cochain_basis(self.spec, self.arity, self.weight, self.truncation)

    def inputs(self) -> List[BarElement]:
        out: List[BarElement] = []
        for u in input_weights(self.spec, self.arity, self.truncation):
            if alg.basis_slice(self.spec, u + self.weight):
                out.extend(bar_basis(self.spec, self.arity, u))
        return out

    def __call__(self, bar: Sequence[Monomial]) -> Element:
        return self.values.get(tuple(bar), {})

    def evaluate(self, args: Sequence[Element]) -> Element:
        """Multilinear evaluation; unit components are killed (normalization)."""
        if len(args) != self.arity:
            raise ValueError(f"expected {self.arity} arguments")
        out: Element = {}
        for combo in itertools.product(*(a.items() for a in args)):
            bar = tuple(m for m, _ in combo)
            val = self.values.get(bar)
            if not val:
                continue
            c = Fraction(1)
            for _, x in combo:
                c *= x
            for k, v in val.items():
                alg.add_to(out, k, c * v)
        return out

    def _compatible(self, other: "Cochain") -> None:
        if (self.spec, self.arity) != (other.spec, other.arity):
            raise ValueError("cochains live in different slices")
        if self.weight != other.weight and self.values and other.values:
            raise ValueError("cochains have different weights")

    def __add__(self, other: "Cochain") -> "Cochain":
        # zero cochains (possibly of degenerate arity) are neutral
        if other.is_zero():
            return self.scale(1)
        if self.is_zero():
            return other.scale(1)
        self._compatible(other)
        vals = {b: dict(v) for b, v in self.values.items()}
        for b, v in other.values.items():
            tgt = vals.setdefault(b, {})
            for k, c in v.items():
                alg.add_to(tgt, k, c)
        w = self.weight if self.values else other.weight
        return Cochain(self.spec, self.arity, w, vals, _tmin(self.truncation, other.truncation))

    def __neg__(self) -> "Cochain":
        return self.scale(-1)

    def __sub__(self, other: "Cochain") -> "Cochain":
        return self + (-other)

    def scale(self, c) -> "Cochain":
        c = Fraction(c)
        vals = {b: alg.scale(v, c) for b, v in self.values.items()} if c else {}
        return Cochain(self.spec, self.arity, self.weight, vals, self.truncation)

    def __rmul__(self, c) -> "Cochain":
        return self.scale(c)

    def is_zero(self) -> bool:
        return not self.values

    def __eq__(self, other) -> bool:
        if not isinstance(other, Cochain):
            return NotImplemented
        return (self - other).is_zero()

    def __repr__(self) -> str:
        return f"Cochain(arity={self.arity}, weight={self.weight}, terms={len(self.values)})"

    def to_vector(self, basis: Optional[list] = None) -> Dict[int, Fraction]:
        basis = basis if basis is not None else self.basis()
        index = {b: i for i, b in enumerate(basis)}
        vec: Dict[int, Fraction] = {}
        for b, v in self.values.items():
            for k, c in v.items():
                vec[index[(b, k)]] = c
        return vec

    @classmethod
    def from_vector(cls, spec, arity, weight, vec, basis=None, truncation=None) -> "Cochain":
        basis = basis if basis is not None else cochain_basis(spec, arity, weight, truncation)
        vals: Dict[BarElement, Element] = {}
        for i, c in vec.items():
            b, k = basis[i]
            alg.add_to(vals.setdefault(b, {}), k, c)
        return cls(spec, arity, weight, vals, truncation)


def _tmin(a: Optional[int], b: Optional[int]) -> Optional[int]:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def coboundary(f: Cochain, convention: Optional[str] = None) -> Cochain:
    """``df`` computed directly from the three-term formula."""
    spec = f.spec
    convention = convention or default_convention(spec)
    vals: Dict[BarElement, Element] = {}
    n = f.arity + 1
    if f.is_zero():
        return Cochain(spec, n, f.weight, {}, f.truncation)
    trunc = f.truncation
    for u in input_weights(spec, n, trunc):
        if not alg.basis_slice(spec, u + f.weight):
            continue
        for a in bar_basis(spec, n, u):
            out: Element = {}
            for sign, b, left, right in _cochain_terms(spec, a, f.weight, convention):
                for k, c in f(b).items():
                    s1, p = alg.mono_mul(spec, left, k)
                    if not s1:
                        continue
                    s2, p = alg.mono_mul(spec, p, right)
                    if s2:
                        alg.add_to(out, p, sign * s1 * s2 * c)
            if out:
                vals[a] = out
    return Cochain(spec, n, f.weight, vals, trunc)


def is_shear_pair(a: AlgebraSpec, b: AlgebraSpec) -> bool:
    """Same generators and products, opposite internal-degree parity."""
    return a.n_gens == b.n_gens and a.comm == b.comm and a.e != b.e


def shear_transfer_cochain(spec: AlgebraSpec, f: Cochain) -> Cochain:
    """Signed identification of even-weight cochains of ``f.spec`` with those of ``spec``.

    Each value is multiplied by ``(-1)^{(n-1)w(a_1) + ... + w(a_{n-1})}``.
    ``spec`` must have the multiplication table of ``f.spec`` with the opposite
    degree parity (the map is an involution).
    """
    if not is_shear_pair(f.spec, spec):
        raise ValueError(f"{spec.label} is not the shear of {f.spec.label}")
    if f.weight % 2:
        raise ParityError("shear transfer on cochains is defined on even w(f) only")
    vals = {b: alg.scale(v, transfer_sign(b)) for b, v in f.values.items()}
    return Cochain(spec, f.arity, f.weight, vals, f.truncation)
