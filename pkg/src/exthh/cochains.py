"""Cup product, braces, Gerstenhaber bracket and Massey products on cochains.

Signs follow the Koszul rule for the internal degree ``|a| = e * w(a)`` and
the shifted cochain degree ``|f|' = arity - 1 + e * w(f)``. When ``e = 0`` the
brace reduces to Gerstenhaber's ``(-1)^{(p-1)(i-1)}`` insertion sign.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

from . import algebra as alg
from .algebra import Element
from .complexes import (
    BarElement,
    Cochain,
    _tmin,
    bar_weight,
    coboundary,
    cochain_basis,
    cochain_differential,
    default_convention,
)
from .linalg import SparseMatrix, Vector, image_membership, kernel_basis, span_echelon


def _sgn(k: int) -> int:
    return -1 if k % 2 else 1


def _same_spec(*cs: Cochain) -> None:
    if len({c.spec for c in cs}) > 1:
        raise ValueError("cochains belong to different algebras")


def _result_truncation(f: Cochain, *gs: Cochain) -> Optional[int]:
    t = f.truncation
    for g in gs:
        t = _tmin(t, g.truncation)
    if t is None:
        return None
    # inner outputs may be heavier than their inputs
    return t - max(0, sum(g.weight for g in gs))


def cup(f: Cochain, g: Cochain) -> Cochain:
    """``(f u g)(a) = (-1)^{|g| (|a_1|+...+|a_n| + n)} f(a_1..a_n) g(a_{n+1}..)``."""
    _same_spec(f, g)
    spec = f.spec
    e = spec.e
    n, p = f.arity, g.arity
    trunc = _tmin(f.truncation, g.truncation)
    vals: Dict[BarElement, Element] = {}
    for b1, v1 in f.values.items():
        s_in = e * bar_weight(b1) + n
        sign = _sgn(g.degree * s_in)
        for b2, v2 in g.values.items():
            b = b1 + b2
            if trunc is not None and bar_weight(b) > trunc:
                continue
            prod = alg.multiply(spec, v1, v2)
            if prod:
                tgt = vals.setdefault(b, {})
                for k, c in prod.items():
                    alg.add_to(tgt, k, sign * c)
    return Cochain(spec, n + p, f.weight + g.weight, vals, trunc)


def brace(f: Cochain, args: Sequence[Cochain]) -> Cochain:
    """``f{g_1,...,g_k}``: sum over ordered insertions of the ``g_i`` into ``f``.

    ``g_p`` passing an input ``a`` contributes ``|g_p|' * (|a| + 1)``.
    """
    args = list(args)
    if not args:
        return f.scale(1)
    _same_spec(f, *args)
    spec = f.spec
    e = spec.e
    k = len(args)
    n0 = f.arity
    arity = n0 + sum(g.arity for g in args) - k
    weight = f.weight + sum(g.weight for g in args)
    trunc = _result_truncation(f, *args)
    if k > n0 or f.is_zero() or any(g.is_zero() for g in args):
        return Cochain(spec, arity, weight, {}, trunc)
    probe = Cochain.zero(spec, arity, weight, trunc)
    vals: Dict[BarElement, Element] = {}
    shifted = [g.shifted_degree for g in args]
    for a in probe.inputs():
        out: Element = {}
        for slots in itertools.combinations(range(n0), k):
            # lay out f's slots: free slots eat one input, slot j_p eats g_p's arity
            pieces: List[Element] = []
            pos = 0
            sign_exp = 0
            gi = 0
            ok = True
            for s in range(n0):
                if gi < k and slots[gi] == s:
                    g = args[gi]
                    before = sum(e * len(x) + 1 for x in a[:pos])
                    sign_exp += shifted[gi] * before
                    val = g(a[pos : pos + g.arity])
                    pos += g.arity
                    gi += 1
                    if not val:
                        ok = False
                        break
                    pieces.append(val)
                else:
                    pieces.append({a[pos]: Fraction(1)})
                    pos += 1
            if not ok:
                continue
            res = f.evaluate(pieces)
            if res:
                sg = _sgn(sign_exp)
                for m, c in res.items():
                    alg.add_to(out, m, sg * c)
        if out:
            vals[a] = out
    return Cochain(spec, arity, weight, vals, trunc)


def circle(f: Cochain, g: Cochain) -> Cochain:
    """Gerstenhaber circle product ``f o g = f{g}``."""
    return brace(f, [g])


def gerstenhaber_bracket(f: Cochain, g: Cochain) -> Cochain:
    """``[f, g] = f{g} - (-1)^{|f|'|g|'} g{f}``."""
    a = brace(f, [g])
    b = brace(g, [f])
    return a - b.scale(_sgn(f.shifted_degree * g.shifted_degree))


def is_cocycle(f: Cochain, convention: Optional[str] = None) -> bool:
    return coboundary(f, convention).is_zero()


def coboundary_witness(f: Cochain, convention: Optional[str] = None) -> Optional[Cochain]:
    """``gamma`` with ``d gamma = f`` inside the slice, or ``None``.

    The returned witness is re-substituted before being handed back.
    """
    spec = f.spec
    convention = convention or default_convention(spec)
    if f.is_zero():
        return Cochain.zero(spec, max(f.arity - 1, 0), f.weight, f.truncation)
    if f.arity == 0:
        return None
    trunc = f.truncation
    sl = cochain_differential(spec, f.arity - 1, f.weight, trunc, convention)
    x = image_membership(sl.matrix, f.to_vector(sl.target))
    if x is None:
        return None
    gamma = Cochain.from_vector(spec, f.arity - 1, f.weight, x, sl.source, trunc)
    if coboundary(gamma, convention) != f:
        raise AssertionError("coboundary witness failed to re-verify")
    return gamma


def cocycle_basis(spec, arity: int, weight: int, truncation=None, convention=None) -> List[Cochain]:
    if arity < 0:
        return []
    convention = convention or default_convention(spec)
    sl = cochain_differential(spec, arity, weight, truncation, convention)
    return [Cochain.from_vector(spec, arity, weight, v, sl.source, truncation) for v in kernel_basis(sl.matrix)]


def coboundary_basis(spec, arity: int, weight: int, truncation=None, convention=None) -> List[Cochain]:
    if arity <= 0:
        return []
    convention = convention or default_convention(spec)
    sl = cochain_differential(spec, arity - 1, weight, truncation, convention)
    basis = sl.target
    return [Cochain.from_vector(spec, arity, weight, col, basis, truncation) for col in sl.matrix.columns() if col]


# ---------- Massey products ----------

@dataclass
class MasseyReport:
    """Outcome of a Massey triple product computation.

    ``representative`` is ``[a, w_bc] + (-1)^{|a|'} [w_ab, c]`` with
    ``d w_ab = [a, b]`` and ``d w_bc = [b, c]``. ``nonzero`` means it is not in
    the span of ``[a, z]``, ``[z', c]`` (``z, z'`` cocycles) and coboundaries.
    """

    defined: bool
    nonzero: Optional[bool]
    representative: Optional[Cochain] = None
    w_ab: Optional[Cochain] = None
    w_bc: Optional[Cochain] = None
    indeterminacy_dim: int = 0
    failure: str = ""
    certificate: dict = field(default_factory=dict)


def massey_triple(a: Cochain, b: Cochain, c: Cochain) -> MasseyReport:
    _same_spec(a, b, c)
    for name, x in (("a", a), ("b", b), ("c", c)):
        if not is_cocycle(x):
            return MasseyReport(False, None, failure=f"{name} is not a cocycle")
    ab = gerstenhaber_bracket(a, b)
    bc = gerstenhaber_bracket(b, c)
    w_ab = coboundary_witness(ab)
    if w_ab is None:
        return MasseyReport(False, None, failure="[a, b] does not bound")
    w_bc = coboundary_witness(bc)
    if w_bc is None:
        return MasseyReport(False, None, failure="[b, c] does not bound", w_ab=w_ab)
    r = gerstenhaber_bracket(a, w_bc) + gerstenhaber_bracket(w_ab, c).scale(_sgn(a.shifted_degree))
    if not is_cocycle(r):
        raise AssertionError("Massey representative is not a cocycle")

    spec = a.spec
    if r.arity < 0:
        # no cochains of negative arity: the class lives in the zero space
        return MasseyReport(True, False, r, w_ab, w_bc, 0, certificate={"in_indeterminacy": True})
    trunc = r.truncation
    basis = cochain_basis(spec, r.arity, r.weight, trunc)
    span: List[Vector] = []
    # witnesses live one arity below the brackets they bound
    bc_arity = b.arity + c.arity - 2
    ab_arity = a.arity + b.arity - 2
    if bc_arity >= 0:
        for z in cocycle_basis(spec, bc_arity, b.weight + c.weight, w_bc.truncation):
            span.append(_vec(gerstenhaber_bracket(a, z), basis))
    if ab_arity >= 0:
        for z in cocycle_basis(spec, ab_arity, a.weight + b.weight, w_ab.truncation):
            span.append(_vec(gerstenhaber_bracket(z, c), basis))
    for z in coboundary_basis(spec, r.arity, r.weight, trunc):
        span.append(_vec(z, basis))
    span = [v for v in span if v]
    indet = span_echelon(span).rank
    target = _vec(r, basis)
    m = SparseMatrix(len(basis), len(span))
    for j, v in enumerate(span):
        for i, x in v.items():
            m.add(i, j, x)
    sol = image_membership(m, target) if target else {}
    cert = {
        "representative_terms": len(r.values),
        "indeterminacy_dim": indet,
        "in_indeterminacy": sol is not None,
    }
    return MasseyReport(True, sol is None, r, w_ab, w_bc, indet, certificate=cert)


def _vec(f: Cochain, basis: list) -> Vector:
    if f.is_zero():
        return {}
    return f.to_vector(basis)
