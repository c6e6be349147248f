from __future__ import annotations

import itertools
from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from exthh import algebra as alg


def test_exterior_products():
    s = alg.exterior(2)
    assert alg.multiply(s, {(1,): 1}, {(2,): 1}) == {(1, 2): 1}
    assert alg.multiply(s, {(2,): 1}, {(1,): 1}) == {(1, 2): -1}
    assert alg.multiply(s, {(1,): 1}, {(1,): 1}) == {}


def test_odd_symmetric_products():
    s = alg.graded_symmetric(2, 1)
    assert alg.multiply(s, {(1,): 1}, {(2,): 1}) == {(1, 2): 1}
    assert alg.multiply(s, {(2,): 1}, {(1,): 1}) == {(1, 2): -1}


def test_even_symmetric_commutes():
    s = alg.graded_symmetric(2, 0)
    assert alg.multiply(s, {(2,): 1}, {(1,): 1}) == {(1, 2): 1}
    assert alg.multiply(s, {(1,): 1}, {(1,): 1}) == {(1, 1): 1}


def test_shear_parities():
    sym_odd = alg.graded_symmetric(3, 1)
    assert sym_odd.e == 1 and alg.shear(sym_odd).e == 0
    assert alg.shear(sym_odd).comm == alg.exterior(3).comm
    ext = alg.exterior(2)
    assert alg.shear(alg.shear(ext)) == ext
    sheared_poly = alg.graded_symmetric(2, 0, sheared=True)
    assert sheared_poly.degree(3) == 1


def test_basis_slices():
    assert alg.basis_slice(alg.exterior(2), 1) == [(1,), (2,)]
    assert alg.basis_slice(alg.exterior(2), 3) == []
    assert alg.basis_slice(alg.graded_symmetric(2, 0), 2) == [(1, 1), (1, 2), (2, 2)]


def test_koszul_basis_examples():
    ext_presentation = alg.graded_symmetric(1, 1, sheared=True)
    assert len(alg.koszul_basis(ext_presentation, 3)) == 1
    assert len(alg.koszul_basis(alg.graded_symmetric(2, 0), 2)) == 1
    for s in (alg.exterior(2), alg.graded_symmetric(3, 0)):
        gens = alg.koszul_basis(s, 0)
        assert len(gens) == 1 and gens[0].indices == ()


def _relation_space(spec):
    """Spanning vectors of R in V (x) V as dicts word -> coefficient."""
    N = spec.n_gens
    rel = []
    for i, j in itertools.product(range(1, N + 1), repeat=2):
        s, mono = alg.normal_form(spec, (i, j))
        if s == 0:
            rel.append({(i, j): 1})
        elif (i, j) != mono:
            rel.append({(i, j): 1, mono: -s})
    return rel


def _intersection_dim(spec, n):
    """dim of the intersection of V^i (x) R (x) V^{n-2-i}, by brute-force linear algebra."""
    N = spec.n_gens
    words = list(itertools.product(range(1, N + 1), repeat=n))
    index = {w: k for k, w in enumerate(words)}
    rel = _relation_space(spec)
    R = sympy.Matrix([[r.get(p, 0) for p in itertools.product(range(1, N + 1), repeat=2)] for r in rel])
    annihilator = R.nullspace()  # functionals on V (x) V vanishing on R
    pairs = list(itertools.product(range(1, N + 1), repeat=2))
    rows = []
    for i in range(n - 1):
        for phi in annihilator:
            for rest in itertools.product(range(1, N + 1), repeat=n - 2):
                row = [0] * len(words)
                for (a, b), c in zip(pairs, phi):
                    if c:
                        w = rest[:i] + (a, b) + rest[i:]
                        row[index[w]] += c
                rows.append(row)
    if not rows:
        return len(words), None
    M = sympy.Matrix(rows)
    return len(words) - M.rank(), M


@pytest.mark.parametrize("spec", [alg.exterior(2), alg.graded_symmetric(2, 0), alg.graded_symmetric(3, 0), alg.exterior(1)])
@pytest.mark.parametrize("n", [2, 3])
def test_koszul_dual_matches_brute_force_intersection(spec, n):
    dim, M = _intersection_dim(spec, n)
    gens = alg.koszul_basis(spec, n)
    assert len(gens) == dim == alg.koszul_dimension(spec, n)
    words = list(itertools.product(range(1, spec.n_gens + 1), repeat=n))
    for g in gens:
        if M is None:
            break
        vec = sympy.Matrix([g.as_dict().get(w, 0) for w in words])
        assert (M * vec).is_zero_matrix


monos = st.lists(st.integers(1, 3), max_size=4).map(tuple)


@given(monos, monos, monos, st.sampled_from([alg.exterior(3), alg.graded_symmetric(3, 0), alg.graded_symmetric(3, 1)]))
def test_associativity(a, b, c, spec):
    x, y, z = ({alg.normal_form(spec, m)[1]: alg.normal_form(spec, m)[0]} for m in (a, b, c))
    x, y, z = ({k: v for k, v in d.items() if v} for d in (x, y, z))
    assert alg.multiply(spec, alg.multiply(spec, x, y), z) == alg.multiply(spec, x, alg.multiply(spec, y, z))


@given(st.lists(st.integers(1, 3), min_size=1, max_size=3).map(lambda l: tuple(sorted(set(l)))), st.integers(1, 3))
def test_derivative_leibniz_on_exterior(mono, i):
    spec = alg.exterior(3)
    # d_i(x_j m) = delta_ij m - x_j d_i(m)
    j = 1
    lhs = alg.derivative_el(spec, i, alg.multiply(spec, {(j,): 1}, {mono: 1}))
    rhs = alg.add({mono: Fraction(1)} if i == j else {}, alg.scale(alg.multiply(spec, {(j,): 1}, alg.derivative(spec, i, mono)), -1))
    assert lhs == rhs


def test_render():
    assert alg.render(alg.exterior(2), {(1, 2): Fraction(1), (): Fraction(-2)}) == "-2 + x₁x₂"
    assert alg.render(alg.exterior(1), {(1,): Fraction(1)}) == "x"
