import json

import pytest
from hypothesis import given, settings, strategies as st

from liefact.errors import CharTwo, FieldMismatch, FormatError
from liefact.exactmath import Field, Matrix, basis_vector, is_zero_vector, vadd, zero_vector
from liefact import liecore, matched, deform
from liefact.liecore import (
    BilinearForm,
    LieAlgebra,
    LinearMap,
    Subspace,
    center,
    derived_dims,
    derived_series,
    direct_product,
    invariant_bilinear_forms,
    is_metabelian,
    is_perfect,
    is_product_structure,
    lower_central_series,
    self_dual,
    solvable_length,
    split_product_structure,
    subalgebra_structure,
)

Q = Field.rationals()
F2 = Field.gf(2)
F3 = Field.gf(3)
F5 = Field.gf(5)


def jacobi_defect_oracle(alg, i, j, l):
    """Direct expansion of one Jacobi triple, independent of check_jacobi."""
    ei = basis_vector(alg.field, alg.dim, i)
    ej = basis_vector(alg.field, alg.dim, j)
    el = basis_vector(alg.field, alg.dim, l)
    term1 = alg.bracket(alg.bracket(ei, ej), el)
    term2 = alg.bracket(alg.bracket(ej, el), ei)
    term3 = alg.bracket(alg.bracket(el, ei), ej)
    return vadd(vadd(term1, term2), term3)


# -- bracket ------------------------------------------------------------------


def test_bracket_on_l3():
    l3 = matched.make_l(1, Q)
    E, F, G = (basis_vector(Q, 3, i) for i in range(3))
    assert l3.bracket(E, G) == E
    assert l3.bracket(G, F) == F
    assert l3.bracket(G, E) == tuple(-x for x in E)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 4), min_size=3, max_size=3))
def test_bracket_alternating(coords):
    l3 = matched.make_l(1, F5)
    x = tuple(F5.scalar(c) for c in coords)
    assert is_zero_vector(l3.bracket(x, x))


def test_bracket_antisymmetric_on_full_basis():
    for alg in (matched.make_l(2, Q), matched.make_h5(Q), matched.make_sl2(F5)):
        for i in range(alg.dim):
            for j in range(alg.dim):
                lhs = alg.bracket_basis(i, j)
                rhs = tuple(-x for x in alg.bracket_basis(j, i))
                assert lhs == rhs


# -- Jacobi -------------------------------------------------------------------


def test_jacobi_valid_cases():
    assert LieAlgebra.abelian(Q, 3).check_jacobi() == []
    assert matched.make_l(2, Q).check_jacobi() == []


def test_jacobi_broken_table():
    bad = LieAlgebra.from_named_brackets(
        Q,
        ("e1", "e2", "e3"),
        {("e1", "e2"): [("e3", 1)], ("e1", "e3"): [("e1", 1)]},
    )
    report = bad.check_jacobi()
    assert report, "deliberately broken table must be flagged"
    i, j, l, defect = report[0]
    assert (i, j, l) == (0, 1, 2)
    assert defect == jacobi_defect_oracle(bad, 0, 1, 2)
    assert not is_zero_vector(defect)


def test_check_jacobi_matches_oracle_on_zoo():
    for alg in (matched.make_L(1, F5), matched.make_m(2, F3), deform.make_h_a(Q, 2)):
        assert alg.check_jacobi() == []
        for i in range(alg.dim):
            for j in range(i + 1, alg.dim):
                for l in range(j + 1, alg.dim):
                    assert is_zero_vector(jacobi_defect_oracle(alg, i, j, l))


# -- series, center, predicates --------------------------------------------------


def test_derived_series_l3():
    l3 = matched.make_l(1, Q)
    assert derived_dims(l3) == (3, 2, 0)
    assert solvable_length(l3) == 2
    assert is_metabelian(l3)
    # the derived subalgebra is the span of E and F, which is abelian
    d1 = derived_series(l3)[1]
    assert d1.basis == (basis_vector(Q, 3, 0), basis_vector(Q, 3, 1))


def test_derived_series_deformed_family():
    # computed truth for the a-family deformation; see the acceptance notes
    # for the diverging recorded expectation
    la = deform.make_l_a(Q, [1])
    assert derived_dims(la) == (3, 2, 0)
    assert solvable_length(la) == 2
    # the 3-step drop does occur for the deformations of the perfect algebra
    ha = deform.make_h_a(Q, 1)
    assert derived_dims(ha) == (5, 3, 1, 0)
    assert solvable_length(ha) == 3
    assert not is_metabelian(ha)


def test_h5_perfect():
    h5 = matched.make_h5(Q)
    assert derived_dims(h5) == (5, 5)
    assert is_perfect(h5)
    for n in (1, 2, 3):
        assert not is_perfect(matched.make_l(n, Q))


def test_lower_central_series():
    l3 = matched.make_l(1, Q)
    assert tuple(s.dim for s in lower_central_series(l3)) == (3, 2, 2)
    ab = LieAlgebra.abelian(Q, 2)
    assert tuple(s.dim for s in lower_central_series(ab)) == (2, 0)


def test_center():
    assert center(LieAlgebra.abelian(Q, 4)).dim == 4
    assert center(matched.make_sl2(F5)).dim == 0
    assert center(matched.make_l(1, Q)).dim == 0


def test_subspace_equality_is_canonical():
    l3 = matched.make_l(1, Q)
    one, two = Q.one, Q.scalar(2)
    a = Subspace(l3, [(one, one, Q.zero), (one, -one, Q.zero)])
    b = Subspace(l3, [(one, Q.zero, Q.zero), (two, two, Q.zero)])
    assert a == b and a.dim == 2


def test_subalgebra_structure_names_and_closure():
    L4 = matched.make_L(1, Q)
    hsub = Subspace(L4, [basis_vector(Q, 4, i) for i in range(3)])
    sub = subalgebra_structure(L4, hsub)
    assert sub.basis_names == ("E", "F", "G")
    assert sub.same_brackets(matched.make_l(1, Q))
    bad = Subspace(matched.make_sl2(Q), [basis_vector(Q, 3, 0), basis_vector(Q, 3, 1)])
    with pytest.raises(FormatError):
        subalgebra_structure(matched.make_sl2(Q), bad)


# -- invariant forms and self-duality ----------------------------------------------


def test_invariant_forms_abelian_and_l3():
    assert len(invariant_bilinear_forms(LieAlgebra.abelian(Q, 2))) == 4
    forms = invariant_bilinear_forms(matched.make_l(1, Q))
    assert forms
    E = basis_vector(Q, 3, 0)
    for form in forms:
        assert form.is_invariant()
        for k in range(3):
            assert not form.evaluate(E, basis_vector(Q, 3, k))


def test_invariant_forms_symmetric_flag():
    ab = LieAlgebra.abelian(Q, 2)
    assert len(invariant_bilinear_forms(ab, symmetric=True)) == 3
    sl2 = matched.make_sl2(Q)
    sym = invariant_bilinear_forms(sl2, symmetric=True)
    assert len(sym) == 1 and sym[0].gram == sym[0].gram.transpose()


def test_bracket_dimension_mismatch():
    from liefact.errors import DimensionMismatch

    l3 = matched.make_l(1, Q)
    with pytest.raises(DimensionMismatch):
        l3.bracket((Q.one,), (Q.one, Q.zero, Q.zero))


def test_killing_form_invariant_for_sl2():
    sl2 = matched.make_sl2(Q)
    gram = liecore.killing_gram(sl2)
    form = BilinearForm(sl2, gram)
    assert form.is_invariant() and form.is_nondegenerate()
    # and it lies in the span of the invariant-form basis
    basis = invariant_bilinear_forms(sl2)
    cols = [f.gram.entries_flat() for f in basis]
    assert Matrix.from_cols(Q, cols).solve(gram.entries_flat()) is not None


def test_self_dual_verdicts():
    yes = self_dual(LieAlgebra.abelian(Q, 3))
    assert yes.verdict == "yes"
    assert yes.form.is_invariant() and yes.form.is_nondegenerate()

    sl2 = matched.make_sl2(Q)
    yes2 = self_dual(sl2)
    assert yes2.verdict == "yes"
    assert yes2.form.is_invariant() and yes2.form.is_nondegenerate()

    for n in (1, 2):
        no = self_dual(matched.make_l(n, Q))
        assert no.verdict == "no"
        assert no.witness == basis_vector(Q, 2 * n + 1, 0)
        # witness really kills every invariant form from the left
        for form in invariant_bilinear_forms(matched.make_l(n, Q)):
            for k in range(2 * n + 1):
                assert not form.evaluate(no.witness, basis_vector(Q, 2 * n + 1, k))


def test_self_dual_over_finite_field():
    res = self_dual(LieAlgebra.abelian(F5, 2))
    assert res.verdict == "yes"
    res = self_dual(matched.make_l(1, F5))
    assert res.verdict == "no" and res.witness is not None


def test_self_dual_contract_reverified_on_zoo():
    # every yes must come with an invariant nonsingular form, every no with
    # a vector in the left radical of each invariant form
    zoo = [
        matched.make_l(1, F5),
        matched.make_L(1, F5),
        matched.make_m(1, F5),
        matched.make_sl2(F5),
        deform.make_l_a(F5, [1]),
        deform.make_lbarpp_c(F5, 2),
        LieAlgebra.abelian(F5, 4),
    ]
    for alg in zoo:
        res = self_dual(alg)
        if res.verdict == "yes":
            assert res.form.is_invariant() and res.form.is_nondegenerate()
        elif res.verdict == "no":
            assert not is_zero_vector(res.witness)
            for form in invariant_bilinear_forms(alg):
                for k in range(alg.dim):
                    assert not form.evaluate(res.witness, basis_vector(F5, alg.dim, k))


# -- product structures --------------------------------------------------------------


def test_product_structure_on_bicrossed():
    mp = matched.canonical_pair_L(1, F5)
    bi = matched.bicrossed_product(mp)
    diag = [F5.one] + [-F5.one] * 3
    f = LinearMap(bi, bi, Matrix(F5, [[diag[r] if r == c else F5.zero for c in range(4)] for r in range(4)]))
    assert is_product_structure(bi, f)
    plus, minus = split_product_structure(bi, f)
    assert plus.dim == 1 and minus.dim == 3
    assert plus.is_subalgebra() and minus.is_subalgebra()
    assert plus.sum_with(minus).dim == 4
    # brackets stay inside each factor
    for s in (plus, minus):
        for u in s.basis:
            for v in s.basis:
                assert s.contains(bi.bracket(u, v))


def test_product_structure_excludes_identities():
    l3 = matched.make_l(1, Q)
    ident = LinearMap(l3, l3, Matrix.identity(Q, 3))
    assert not is_product_structure(l3, ident)
    neg = LinearMap(l3, l3, -Matrix.identity(Q, 3))
    assert not is_product_structure(l3, neg)


def test_split_char_two_raises():
    ab = LieAlgebra.abelian(F2, 2)
    swap = LinearMap(ab, ab, Matrix(F2, [[0, 1], [1, 0]]))
    assert is_product_structure(ab, swap)
    with pytest.raises(CharTwo):
        split_product_structure(ab, swap)


# -- direct products ------------------------------------------------------------------


def test_direct_products():
    k0 = LieAlgebra.abelian(Q, 1, ("W",))
    assert direct_product(k0, k0).same_brackets(LieAlgebra.abelian(Q, 2))
    four = direct_product(k0, matched.make_sl2(Q))
    assert four.dim == 4 and center(four).dim == 1
    mixed = direct_product(k0, matched.make_l(1, Q))
    assert derived_dims(mixed) == (4, 2, 0)
    with pytest.raises(FieldMismatch):
        direct_product(k0, matched.make_sl2(F5))


# -- serialization ----------------------------------------------------------------------


def test_algebra_roundtrip(tmp_path):
    for alg in (matched.make_l(2, Q), matched.make_m(1, F5), matched.make_h5(Q)):
        path = tmp_path / "alg.json"
        liecore.dump_algebra(alg, path)
        back = liecore.load_algebra(path)
        assert back == alg


def test_format_errors():
    base = {
        "field": {"kind": "Q"},
        "dim": 2,
        "basis": ["a", "b"],
        "brackets": [],
    }
    both_orders = dict(base)
    both_orders["brackets"] = [
        {"lhs": "a", "rhs": "b", "out": [["a", "1"]]},
        {"lhs": "b", "rhs": "a", "out": [["a", "1"]]},
    ]
    with pytest.raises(FormatError):
        LieAlgebra.from_json_dict(both_orders)

    self_pair = dict(base)
    self_pair["brackets"] = [{"lhs": "a", "rhs": "a", "out": []}]
    with pytest.raises(FormatError):
        LieAlgebra.from_json_dict(self_pair)

    unknown = dict(base)
    unknown["brackets"] = [{"lhs": "a", "rhs": "c", "out": []}]
    with pytest.raises(FormatError):
        LieAlgebra.from_json_dict(unknown)

    mismatch = dict(base)
    mismatch["dim"] = 3
    with pytest.raises(FormatError):
        LieAlgebra.from_json_dict(mismatch)


def test_load_reports_position(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{"field": {"kind": "Q"},\n  "dim": }')
    with pytest.raises(FormatError) as err:
        liecore.load_algebra(path)
    assert "line 2" in str(err.value)


# -- change of basis ---------------------------------------------------------------------


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(0, 4), min_size=9, max_size=9))
def test_change_basis_preserves_jacobi_and_series(flat):
    m = Matrix(F5, [flat[0:3], flat[3:6], flat[6:9]])
    if not m.is_invertible():
        return
    l3 = matched.make_l(1, F5)
    moved = l3.change_basis(m)
    assert moved.check_jacobi() == []
    assert derived_dims(moved) == derived_dims(l3)
