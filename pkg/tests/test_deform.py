import pytest

from liefact.errors import BadParameter, BudgetExceeded, CharTwo, NotFinite
from liefact.exactmath import (
    Field,
    Matrix,
    basis_vector,
    enumerate_vectors,
    vadd,
    vscale,
    vsub,
    zero_vector,
)
from liefact import liecore, matched, iso
from liefact.deform import (
    DeformationMap,
    ad_ratio_invariant,
    classify_complements,
    closed_form_defmaps_L,
    closed_form_defmaps_m,
    enumerate_deformation_maps,
    is_deformation_map,
    make_h_a,
    make_l_a,
    make_lbar_a,
    make_lbarp_b,
    make_lbarpp_c,
    make_lp_b,
    make_lpp_b,
    r_deformation,
)
from liefact.matched import canonical_pair_L, canonical_pair_m

Q = Field.rationals()
F3 = Field.gf(3)
F5 = Field.gf(5)
F7 = Field.gf(7)


def factlie_oracle(mp, r):
    """Direct transcription of the deformation compatibility, kept separate
    from the library implementation."""
    h, g = mp.h, mp.g
    f = mp.field
    for i in range(h.dim):
        x = basis_vector(f, h.dim, i)
        for j in range(h.dim):
            y = basis_vector(f, h.dim, j)
            rx, ry = r.mul_vector(x), r.mul_vector(y)
            lhs = vsub(r.mul_vector(h.bracket(x, y)), g.bracket(rx, ry))
            rhs = vadd(
                r.mul_vector(vsub(mp.act_right(y, rx), mp.act_right(x, ry))),
                vsub(mp.act_left(x, ry), mp.act_left(y, rx)),
            )
            if lhs != rhs:
                return False
    return True


def all_linear_maps(mp):
    cells = mp.g.dim * mp.h.dim
    for flat in enumerate_vectors(mp.field, cells):
        yield Matrix(
            mp.field, [flat[r * mp.h.dim : (r + 1) * mp.h.dim] for r in range(mp.g.dim)]
        )


# -- the compatibility check ------------------------------------------------------


def test_is_deformation_map_examples():
    mp = canonical_pair_L(1, Q)
    assert is_deformation_map(mp, Matrix.zeros(Q, 1, 3))
    # r(E) = aH, r(F) = 0, r(G) = H with a != 0
    assert is_deformation_map(mp, Matrix(Q, [[3, 0, 1]]))
    # r(E) = r(F) = r(G) = H violates the product constraint
    assert not is_deformation_map(mp, Matrix(Q, [[1, 1, 1]]))


def test_is_deformation_map_agrees_with_oracle_exhaustively():
    for mp in (canonical_pair_L(1, F3), canonical_pair_m(1, F3)):
        for r in all_linear_maps(mp):
            assert is_deformation_map(mp, r) == factlie_oracle(mp, r)


def test_enumeration_is_exhaustive_against_oracle():
    mp = canonical_pair_m(1, F3)
    found = {d.matrix for d in enumerate_deformation_maps(mp)}
    brute = {r for r in all_linear_maps(mp) if factlie_oracle(mp, r)}
    assert found == brute


def test_counts_and_partitions():
    maps_L = enumerate_deformation_maps(canonical_pair_L(1, F5))
    assert len(maps_L) == 29
    maps_m = enumerate_deformation_maps(canonical_pair_m(1, F5))
    assert len(maps_m) == 13
    for p, expected in ((3, 7), (5, 13), (7, 19)):
        assert len(enumerate_deformation_maps(canonical_pair_m(1, Field.gf(p)))) == expected


def test_trivial_action_pair_maps_kill_derived():
    g = liecore.LieAlgebra.abelian(F5, 1, ("H",))
    h = matched.make_l(1, F5)
    mp = matched.MatchedPair(g, h)
    maps = enumerate_deformation_maps(mp)
    assert len(maps) == 5
    for d in maps:
        assert d.matrix.col(0) == (F5.zero,) and d.matrix.col(1) == (F5.zero,)


def test_budget_and_field_gates():
    with pytest.raises(BudgetExceeded) as err:
        enumerate_deformation_maps(canonical_pair_L(1, F5), budget=10)
    assert err.value.required == 125
    with pytest.raises(NotFinite):
        enumerate_deformation_maps(canonical_pair_L(1, Q))


# -- closed forms ---------------------------------------------------------------------


@pytest.mark.parametrize("n", [1, 2])
@pytest.mark.parametrize("p", [3, 5])
def test_closed_forms_equal_enumeration(n, p):
    field = Field.gf(p)
    for families, pair in (
        (closed_form_defmaps_L(n, field), canonical_pair_L(n, field)),
        (closed_form_defmaps_m(n, field), canonical_pair_m(n, field)),
    ):
        enumerated = {d.matrix for d in enumerate_deformation_maps(pair)}
        union = set()
        for fam in families:
            members = {d.matrix for d in fam.enumerate()}
            assert members <= enumerated
            assert not (members & union)
            union |= members
        assert union == enumerated


def test_closed_form_instances():
    fams = {f.label: f for f in closed_form_defmaps_m(1, F5)}
    zero = fams["c"].instance(F5.zero)
    assert zero.matrix.is_zero()
    inst = fams["a"].instance((F5.scalar(2),))
    assert inst.matrix == Matrix(F5, [[2, 0, 1]])

    fams_L = {f.label: f for f in closed_form_defmaps_L(2, F5)}
    inst2 = fams_L["a"].instance((F5.one, F5.one))
    assert inst2.matrix == Matrix(F5, [[1, 1, 0, 0, 1]])

    with pytest.raises(BadParameter):
        fams["a"].instance((F5.zero,))
    with pytest.raises(CharTwo):
        closed_form_defmaps_L(1, Field.gf(2))


# -- r-deformations ----------------------------------------------------------------------


def test_zero_deformation_is_identity():
    mp = canonical_pair_L(2, F5)
    d = DeformationMap(mp, Matrix.zeros(F5, 1, 5))
    assert r_deformation(mp, d).same_brackets(matched.make_l(2, F5))


def test_deformed_family_brackets():
    mp = canonical_pair_L(1, Q)
    d = DeformationMap(mp, Matrix(Q, [[1, 0, 1]]))
    alg = r_deformation(mp, d)
    assert alg.same_brackets(make_l_a(Q, [1]))
    E, F, G = (basis_vector(Q, 3, i) for i in range(3))
    assert alg.bracket(E, F) == vscale(-Q.one, F)
    assert alg.bracket(E, G) == vscale(-Q.one, G)
    assert alg.bracket(F, G) == zero_vector(Q, 3)

    # b = 0, c = 1 gives the abelian algebra
    d2 = DeformationMap(mp, Matrix(Q, [[0, 0, 1]]))
    assert not list(r_deformation(mp, d2).sc_pairs())


def test_family_builders_match_their_deformation_maps():
    mpL = canonical_pair_L(1, F5)
    famsL = {f.label: f for f in closed_form_defmaps_L(1, F5)}
    one = F5.one
    assert r_deformation(mpL, famsL["a"].instance((one,))).same_brackets(make_l_a(F5, [1]))
    # the primed family is the (b, c = 2) deformation on the nose
    assert r_deformation(mpL, famsL["bc"].instance((one,), F5.scalar(2))).same_brackets(
        make_lp_b(F5, [1])
    )
    assert r_deformation(mpL, famsL["bc"].instance((one,), one)).same_brackets(
        make_lpp_b(F5, [1])
    )

    mpm = canonical_pair_m(1, F5)
    famsm = {f.label: f for f in closed_form_defmaps_m(1, F5)}
    two = F5.scalar(2)
    assert r_deformation(mpm, famsm["a"].instance((two,))).same_brackets(make_lbar_a(F5, [2]))
    assert r_deformation(mpm, famsm["b"].instance((two,))).same_brackets(make_lbarp_b(F5, [2]))
    assert r_deformation(mpm, famsm["c"].instance(two)).same_brackets(make_lbarpp_c(F5, 2))


def test_h5_deformations():
    from liefact.derivations import TwistedDerivation

    h5 = matched.make_h5(F7)
    mp = matched.pair_from_twisted(
        h5, TwistedDerivation(zero_vector(F7, 5), matched.h5_noninner_derivation(F7))
    )
    maps = enumerate_deformation_maps(mp)
    assert len(maps) == 7
    for d in maps:
        alg = r_deformation(mp, d)
        assert alg.check_jacobi() == []
        if not d.matrix.is_zero():
            assert liecore.derived_dims(alg)[1] == 3
            a = d.matrix.rows[0][0]
            assert alg.same_brackets(make_h_a(F7, a))

    assert liecore.derived_dims(make_h_a(Q, 1))[1] == 3
    with pytest.raises(BadParameter):
        make_h_a(Q, 0)


def test_remark_zero_parameter_members():
    assert not list(make_lpp_b(F5, [0]).sc_pairs())
    # the printed primed family at b = 0 is l(3) after flipping G
    lp0 = make_lp_b(F5, [0])
    l3 = matched.make_l(1, F5)
    flip = Matrix.from_cols(
        F5,
        [basis_vector(F5, 3, 0), basis_vector(F5, 3, 1), vscale(-F5.one, basis_vector(F5, 3, 2))],
    )
    assert lp0.change_basis(flip, names=l3.basis_names) == l3
    assert iso.are_isomorphic(lp0, l3).is_yes


# -- classification -------------------------------------------------------------------------


def test_classification_small_field():
    report = classify_complements(canonical_pair_L(1, F3))
    assert report.index == 3
    assert sum(report.class_sizes) == report.deformation_count == 11
    for rep in report.representatives:
        assert rep.check_jacobi() == []


def test_classification_order_independence():
    a = classify_complements(canonical_pair_m(1, F5), order="lex")
    b = classify_complements(canonical_pair_m(1, F5), order="revlex")
    assert a.index == b.index
    fps = lambda rep: sorted(iso.fingerprint(x).as_tuple() for x in rep.representatives)
    assert fps(a) == fps(b)
    assert sorted(a.class_sizes) == sorted(b.class_sizes)


def test_classification_infinite_registered():
    report = classify_complements(canonical_pair_m(1, Q))
    assert report.infinite and report.index is None
    assert report.index_str() == "infinite"
    assert len(report.representatives) >= 3
    invs = [ad_ratio_invariant(rep) for rep in report.representatives]
    assert all(inv is not None for inv in invs)

    with pytest.raises(NotFinite):
        classify_complements(canonical_pair_L(1, Q))


def test_ad_ratio_invariant():
    # invariant under the alpha <-> 1/alpha symmetry, separates other ratios
    two, three = Q.scalar(2), Q.scalar(3)
    l2 = matched.make_Lalpha(Q, two)
    linv = matched.make_Lalpha(Q, two.inverse())
    l3a = matched.make_Lalpha(Q, three)
    i2, iinv, i3 = (ad_ratio_invariant(x) for x in (l2, linv, l3a))
    assert i2[0] * iinv[1] == iinv[0] * i2[1]
    assert i2[0] * i3[1] != i3[0] * i2[1]


def test_every_deformation_embeds_as_complement():
    """Constructive instance check of the complement correspondence: the
    graph {(r(x), x)} of a deformation map is a subalgebra of the bicrossed
    product, carries exactly the deformed bracket, and complements g."""
    for mp in (canonical_pair_L(1, F3), canonical_pair_m(1, F3)):
        bi = matched.bicrossed_product(mp)
        dg, dh = mp.g.dim, mp.h.dim
        gsub = liecore.Subspace(bi, [basis_vector(F3, bi.dim, j) for j in range(dg)])
        for d in enumerate_deformation_maps(mp):
            deformed = r_deformation(mp, d)
            cols = [tuple(d.matrix.col(i)) + tuple(basis_vector(F3, dh, i)) for i in range(dh)]
            graph = liecore.LinearMap(deformed, bi, Matrix.from_cols(F3, cols))
            assert graph.is_lie_morphism()
            assert graph.matrix.rank() == dh
            image = liecore.Subspace(bi, [graph.matrix.col(i) for i in range(dh)])
            assert image.is_subalgebra()
            assert image.sum_with(gsub).dim == bi.dim


def test_n1_isomorphism_classes_explicit():
    # over GF(7): every nonzero a-member is one class, every nonzero
    # (double-)primed member collapses onto the recorded representative
    l3 = matched.make_l(1, F7)
    for a in range(1, 7):
        assert iso.are_isomorphic(make_l_a(F7, [a]), make_l_a(F7, [1])).is_yes
    assert iso.are_isomorphic(make_l_a(F7, [1]), l3).verdict == "no"
    for b in range(1, 7):
        assert iso.are_isomorphic(make_lp_b(F7, [b]), make_lp_b(F7, [1])).is_yes
        assert iso.are_isomorphic(make_lpp_b(F7, [b]), l3).is_yes
    assert iso.are_isomorphic(make_lp_b(F7, [1]), l3).is_yes


def test_r_deformation_rejects_invalid_map():
    from liefact.errors import InvalidDeformationMap

    mp = canonical_pair_L(1, Q)
    with pytest.raises(InvalidDeformationMap):
        r_deformation(mp, DeformationMap(mp, Matrix(Q, [[1, 1, 1]])))
    from liefact.errors import DimensionMismatch

    with pytest.raises(DimensionMismatch):
        is_deformation_map(mp, Matrix.zeros(Q, 2, 3))


def test_representatives_pairwise_non_isomorphic():
    report = classify_complements(canonical_pair_m(1, F5))
    reps = report.representatives
    for i in range(len(reps)):
        for j in range(i + 1, len(reps)):
            assert are_isomorphic_no(reps[i], reps[j])


def are_isomorphic_no(a, b):
    return iso.are_isomorphic(a, b).verdict == "no"


def test_solvability_effects_of_deformation():
    # deformation can change the solvability class: the perfect 5-dim algebra
    # deforms onto 3-step solvable algebras
    assert liecore.solvable_length(make_h_a(Q, 2)) == 3
    assert liecore.is_perfect(matched.make_h5(Q))
    # computed truth for the a-family at n = 1 (see decisions notes)
    assert liecore.solvable_length(make_l_a(Q, [1])) == 2
    assert liecore.is_metabelian(make_l_a(Q, [1]))
