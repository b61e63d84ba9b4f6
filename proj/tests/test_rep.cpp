#include <catch_amalgamated.hpp>

#include "subreg/witness.hpp"
#include "test_util.hpp"

using namespace subreg;
using testutil::abc345;
using testutil::cycle;
using testutil::dihedral;
using testutil::w;
using testutil::winf;

namespace {

FieldPtr q_omega() { return make_field(Polynomial::from_terms({{2, 1}, {1, 1}, {0, 1}})); }

CoxeterDiagram two_heavy(long m1, long m2) {
    return CoxeterDiagram::create({"a", "b", "c"},
                                  {{"a", "b", Weight::finite(m1)}, {"b", "c", Weight::finite(m2)}});
}

// the non-semisimple module on a-b-c with both weights 5
Representation two_heavy_55_module() {
    auto d = two_heavy(5, 5);
    auto q = double_quiver(d);
    Representation M;
    M.quiver = q;
    M.field = rationals();
    for (const auto& v : d.vertices()) M.dims[v] = 2;
    M.maps["a>b"] = Mat::from_rows({{-1, 1}, {0, 1}}, M.field);
    M.maps["b>a"] = Mat::identity(2, M.field);
    M.maps["b>c"] = Mat::identity(2, M.field);
    M.maps["c>b"] = Mat::from_rows({{-1, 0}, {0, 1}}, M.field);
    M.validate();
    return M;
}

Mat unit_column(int dim, int idx, const FieldPtr& F) {
    Mat m(dim, 1, F);
    m.at(idx, 0) = ExactScalar(Rat(1), F);
    return m;
}

}  // namespace

TEST_CASE("relation checking") {
    auto M = two_heavy_55_module();
    CHECK(check_representation(M, FamilyKind::Power).pass);

    // identity maps on any odd-weight diagram
    auto d = CoxeterDiagram::create({"a", "b", "c"},
                                    {{"a", "b", w(5)}, {"b", "c", w(7)}});
    Representation I;
    I.quiver = double_quiver(d);
    I.field = rationals();
    for (const auto& v : d.vertices()) I.dims[v] = 2;
    for (const auto& a : I.quiver.arrows) I.maps[a.id] = Mat::identity(2, I.field);
    CHECK(check_representation(I, FamilyKind::Power).pass);

    // doubled identities on a simple pair fail with residual 3I
    Representation Bad;
    Bad.quiver = double_quiver(dihedral(w(3)));
    Bad.field = rationals();
    Bad.dims["a"] = Bad.dims["b"] = 2;
    Mat two = ExactScalar(Rat(2)) * Mat::identity(2, rationals());
    Bad.maps["a>b"] = two;
    Bad.maps["b>a"] = two;
    auto report = check_representation(Bad, FamilyKind::Power);
    CHECK_FALSE(report.pass);
    Mat residual = report.residuals.at("a>b");
    CHECK(residual == ExactScalar(Rat(3)) * Mat::identity(2, rationals()));
}

TEST_CASE("eigendecomposition of a dual pair") {
    auto F = rationals();
    // identities with x^2 - 1: a single eigenvalue 1
    Mat I2 = Mat::identity(2, F);
    auto dec = eigendecompose_pair(I2, I2, Polynomial::from_terms({{2, 1}, {0, -1}}));
    CHECK_FALSE(dec.even_mode);
    int nonzero_blocks = 0;
    for (const auto& b : dec.blocks)
        if (b.U.cols() > 0) {
            ++nonzero_blocks;
            CHECK(b.eigenvalue == ExactScalar(Rat(1), F));
            CHECK(b.U.cols() == 2);
        }
    CHECK(nonzero_blocks == 1);

    // the middle-vertex operator of the two-heavy module: A = id, B = [[-1,1],[0,1]]
    Mat B = Mat::from_rows({{-1, 1}, {0, 1}}, F);
    auto dec2 = eigendecompose_pair(I2, B, Polynomial::from_terms({{2, 1}, {0, -1}}));
    for (const auto& blk : dec2.blocks) {
        REQUIRE(blk.U.cols() == 1);
        if (blk.eigenvalue == ExactScalar(Rat(-1), F)) {
            Mat e1(2, 1, F);
            e1.at(0, 0) = ExactScalar(Rat(1), F);
            CHECK(columns_contained(blk.U, e1));
        } else {
            // eigenline spanned by e1 + (1 - (-1)) e2
            Mat v(2, 1, F);
            v.at(0, 0) = ExactScalar(Rat(1), F);
            v.at(1, 0) = ExactScalar(Rat(2), F);
            CHECK(columns_contained(blk.U, v));
        }
    }

    // restriction maps compose to identities in both orders
    for (const auto& blk : dec2.blocks) {
        CHECK(blk.binv_coords * blk.a_coords == Mat::identity(blk.U.cols(), F));
        CHECK(blk.a_coords * blk.binv_coords == Mat::identity(blk.V.cols(), F));
    }

    CHECK_THROWS_AS(eigendecompose_pair(I2, I2, Polynomial::from_terms({{2, 1}, {0, -2}})),
                    DomainError);  // does not split over the rationals
    CHECK_THROWS_AS(
        eigendecompose_pair(I2, I2, Polynomial::from_terms({{2, 1}, {1, -2}, {0, 1}})),
        DomainError);  // repeated root
}

TEST_CASE("dihedral simple modules") {
    auto F = rationals();
    auto s5 = dihedral_simples(w(5), FamilyKind::Power, F);
    REQUIRE(s5.size() == 2);
    for (const auto& s : s5) {
        CHECK(s.total_dim() == 2);
        CHECK(check_representation(s, FamilyKind::Power).pass);
        CHECK(is_simple(s).verdict == Simplicity::Simple);
    }
    CHECK_FALSE(reps_isomorphic(s5[0], s5[1]));

    auto s4 = dihedral_simples(w(4), FamilyKind::Power, F);
    REQUIRE(s4.size() == 3);
    CHECK(s4[0].total_dim() == 1);
    CHECK(s4[1].total_dim() == 1);
    CHECK(s4[2].total_dim() == 2);

    auto s6 = dihedral_simples(w(6), FamilyKind::Power, F);
    REQUIRE(s6.size() == 4);
    std::multiset<int> dims;
    for (const auto& s : s6) dims.insert(s.total_dim());
    CHECK(dims == std::multiset<int>{1, 1, 2, 2});

    CHECK_THROWS_AS(dihedral_simples(w(7), FamilyKind::Power, F), DomainError);
    CHECK(dihedral_simples(w(7), FamilyKind::Power, q_omega()).size() == 3);

    // chebyshev family needs the golden-ratio field at weight 5
    CHECK_THROWS_AS(dihedral_simples(w(5), FamilyKind::Chebyshev, F), DomainError);
    auto gold = make_field(Polynomial::from_terms({{2, 1}, {0, -5}}));
    CHECK(dihedral_simples(w(5), FamilyKind::Chebyshev, gold).size() == 2);
}

TEST_CASE("matrix-algebra dimension counts") {
    for (long m = 3; m <= 8; ++m) {
        FieldPtr F = (m == 7 || m == 8) ? q_omega() : rationals();
        auto simples = dihedral_simples(w(m), FamilyKind::Power, F);
        long sum = 0;
        for (const auto& s : simples) sum += static_cast<long>(s.total_dim()) * s.total_dim();
        CHECK(sum == 2 * (m - 1));
    }
}

TEST_CASE("dihedral decomposition") {
    auto F = rationals();
    auto q5 = double_quiver(dihedral(w(5)));
    auto simples = dihedral_simples(w(5), FamilyKind::Power, F);

    // M(1) + M(1)
    auto doubled = direct_sum({simples[1], simples[1]});
    auto dec = decompose_dihedral(doubled, FamilyKind::Power);
    REQUIRE(dec.size() == 1);
    CHECK(dec[0].second == 2);
    CHECK(reps_isomorphic(dec[0].first, simples[1]));

    // identity and diag(1,-1): one copy of each simple
    Representation M;
    M.quiver = q5;
    M.field = F;
    M.dims["a"] = M.dims["b"] = 2;
    M.maps["a>b"] = Mat::identity(2, F);
    M.maps["b>a"] = Mat::from_rows({{1, 0}, {0, -1}}, F);
    auto dec2 = decompose_dihedral(M, FamilyKind::Power);
    REQUIRE(dec2.size() == 2);
    CHECK(dec2[0].second == 1);
    CHECK(dec2[1].second == 1);

    // reassembled direct sum is isomorphic to the input
    std::vector<Representation> parts;
    for (const auto& [s, k] : dec2)
        for (int i = 0; i < k; ++i) parts.push_back(s);
    CHECK(reps_isomorphic(direct_sum(parts), M));

    // zero module decomposes into nothing
    Representation Z;
    Z.quiver = q5;
    Z.field = F;
    Z.dims["a"] = Z.dims["b"] = 0;
    Z.maps["a>b"] = Mat(0, 0, F);
    Z.maps["b>a"] = Mat(0, 0, F);
    CHECK(decompose_dihedral(Z, FamilyKind::Power).empty());

    // even weight: kernels contribute the one-dimensional modules
    auto s4 = dihedral_simples(w(4), FamilyKind::Power, F);
    auto mix = direct_sum({s4[0], s4[2], s4[2]});
    auto dec4 = decompose_dihedral(mix, FamilyKind::Power);
    int total = 0;
    for (const auto& [s, k] : dec4) total += s.total_dim() * k;
    CHECK(total == mix.total_dim());

    // a module violating the relations is rejected
    Representation bad = M;
    bad.maps["b>a"] = Mat::from_rows({{2, 0}, {0, -1}}, F);
    CHECK_THROWS_AS(decompose_dihedral(bad, FamilyKind::Power), DomainError);
}

TEST_CASE("generated subrepresentations") {
    auto M = two_heavy_55_module();
    auto F = M.field;

    auto N = generated_subrep(M, {{"b", unit_column(2, 0, F)}});
    CHECK(N.dim_at("a") == 1);
    CHECK(N.dim_at("b") == 1);
    CHECK(N.dim_at("c") == 1);
    CHECK(subrep_closed(M, N));
    // the span of e1 at b
    CHECK(N.basis.at("b").at(0, 0) == ExactScalar(Rat(1), F));
    CHECK(N.basis.at("b").at(1, 0) == ExactScalar(Rat(0), F));

    CHECK(generated_subrep(M, {}).total_dim() == 0);

    // a vector with nonzero coordinates in every summand generates everything
    auto s6 = dihedral_simples(w(6), FamilyKind::Power, F);
    std::vector<Representation> triple{s6[0], s6[2], s6[3]};  // S(a), M(1), M(-1)
    auto S = direct_sum(triple);
    for (Rat c1 : {Rat(1), Rat(-1), Rat(2)})
        for (Rat c2 : {Rat(1), Rat(-1), Rat(2)})
            for (Rat c3 : {Rat(1), Rat(2)}) {
                Mat seed(S.dim_of("a"), 1, F);  // dims at a: 1 + 1 + 1
                seed.at(0, 0) = ExactScalar(c1, F);
                seed.at(1, 0) = ExactScalar(c2, F);
                seed.at(2, 0) = ExactScalar(c3, F);
                auto full = generated_subrep(S, {{"a", seed}});
                CHECK(full.total_dim() == S.total_dim());
            }
    // killing one coordinate leaves a proper submodule
    Mat partial(S.dim_of("a"), 1, F);
    partial.at(0, 0) = ExactScalar(Rat(1), F);
    partial.at(1, 0) = ExactScalar(Rat(1), F);
    auto prop = generated_subrep(S, {{"a", partial}});
    CHECK(prop.total_dim() < S.total_dim());
    CHECK(prop.total_dim() > 0);
}

TEST_CASE("hom spaces") {
    auto F = rationals();
    auto s5 = dihedral_simples(w(5), FamilyKind::Power, F);
    CHECK(hom_space(s5[0], s5[1]).empty());
    CHECK(hom_space(s5[1], s5[0]).empty());
    CHECK(hom_space(s5[1], s5[1]).size() == 1);
    auto s4 = dihedral_simples(w(4), FamilyKind::Power, F);
    CHECK(hom_space(s4[0], s4[1]).empty());
}

TEST_CASE("complements") {
    auto M = two_heavy_55_module();
    auto N = witness_canonical_subrep(M);
    CHECK(N.total_dim() == 3);
    CHECK_FALSE(has_complement(M, N).has);

    // a direct summand always has one
    auto F = rationals();
    auto s5 = dihedral_simples(w(5), FamilyKind::Power, F);
    auto S = direct_sum({s5[0], s5[1]});
    SubRep first;
    first.basis["a"] = unit_column(2, 0, F);
    first.basis["b"] = unit_column(2, 0, F);
    auto res = has_complement(S, first);
    REQUIRE(res.has);
    CHECK(res.complement.total_dim() == 2);
    // projection is the identity on the summand
    CHECK(res.projection.at("a") * first.basis.at("a") == first.basis.at("a"));

    // the whole module complements to zero
    SubRep whole;
    whole.basis["a"] = Mat::identity(2, F);
    whole.basis["b"] = Mat::identity(2, F);
    auto res2 = has_complement(S, whole);
    REQUIRE(res2.has);
    CHECK(res2.complement.total_dim() == 0);

    SubRep not_closed;
    not_closed.basis["a"] = unit_column(2, 0, F);
    not_closed.basis["b"] = Mat(2, 0, F);
    CHECK_THROWS_AS(has_complement(M, not_closed), DomainError);
}

TEST_CASE("simplicity") {
    auto F = rationals();
    auto s5 = dihedral_simples(w(5), FamilyKind::Power, F);
    CHECK(is_simple(s5[0]).verdict == Simplicity::Simple);

    auto S = direct_sum({s5[0], s5[1]});
    auto r = is_simple(S);
    REQUIRE(r.verdict == Simplicity::NotSimple);
    REQUIRE(r.witness.has_value());
    CHECK(subrep_closed(S, *r.witness));
    CHECK(r.witness->total_dim() > 0);
    CHECK(r.witness->total_dim() < S.total_dim());

    // same module in a rotated basis: every basis vector generates, but the
    // endomorphism algebra gives the module away
    Representation R = S;
    Mat P = Mat::from_rows({{1, 1}, {1, -1}}, F);
    auto Pinv = *P.inverse();
    for (auto& [id, m] : R.maps) m = Pinv * m * P;
    auto r2 = is_simple(R);
    REQUIRE(r2.verdict == Simplicity::NotSimple);
    CHECK(subrep_closed(R, *r2.witness));

    CHECK_THROWS_AS(is_simple(Representation{double_quiver(dihedral(w(3))), F,
                                             {{"a", 0}, {"b", 0}},
                                             {{"a>b", Mat(0, 0, F)}, {"b>a", Mat(0, 0, F)}}}),
                    DomainError);
}

TEST_CASE("non-semisimple witnesses") {
    auto F = rationals();
    ExactScalar one(Rat(1), F);

    // single infinite edge
    auto dinf = dihedral(winf());
    auto W = witness_nonsemisimple(dinf, one);
    CHECK(check_representation(W, FamilyKind::Power).pass);
    CHECK(W.maps.at("a>b") == Mat::from_rows({{1, 1}, {0, 1}}, F));
    CHECK(W.maps.at("b>a") == Mat::identity(2, F));
    auto N = witness_canonical_subrep(W);
    CHECK(N.total_dim() == 2);
    CHECK_FALSE(has_complement(W, N).has);

    // two heavy edges
    auto W2 = witness_nonsemisimple(two_heavy(5, 5), one);
    CHECK(check_representation(W2, FamilyKind::Power).pass);
    auto N2 = witness_canonical_subrep(W2);
    CHECK_FALSE(has_complement(W2, N2).has);

    // two heavy edges with weight 4 (projector-shaped pair maps)
    auto W44 = witness_nonsemisimple(two_heavy(4, 4), one);
    CHECK(check_representation(W44, FamilyKind::Power).pass);
    CHECK_FALSE(has_complement(W44, witness_canonical_subrep(W44)).has);
    auto W45 = witness_nonsemisimple(two_heavy(4, 5), one);
    CHECK(check_representation(W45, FamilyKind::Power).pass);
    CHECK_FALSE(has_complement(W45, witness_canonical_subrep(W45)).has);

    // a cycle
    auto Wc = witness_nonsemisimple(cycle(4), ExactScalar(Rat(2), F));
    CHECK(check_representation(Wc, FamilyKind::Power).pass);
    CHECK_FALSE(has_complement(Wc, witness_canonical_subrep(Wc)).has);

    // semisimple diagrams admit no witness
    CHECK_THROWS_AS(witness_nonsemisimple(
                        CoxeterDiagram::create({"a", "b", "c"},
                                               {{"a", "b", w(3)}, {"b", "c", w(5)}}),
                        one),
                    DomainError);
    CHECK_THROWS_AS(witness_nonsemisimple(dinf, ExactScalar(Rat(0), F)), DomainError);

    // separated heavy edges on a longer tree
    auto spread = CoxeterDiagram::create(
        {"a", "b", "c", "d"},
        {{"a", "b", w(5)}, {"b", "c", w(3)}, {"c", "d", w(5)}});
    auto W3 = witness_nonsemisimple(spread, one);
    CHECK(check_representation(W3, FamilyKind::Power).pass);
    CHECK_FALSE(has_complement(W3, witness_canonical_subrep(W3)).has);
}

TEST_CASE("simple family members") {
    auto F = rationals();
    auto d = two_heavy(5, 5);
    auto N2 = simple_family_member(d, ExactScalar(Rat(2), F));
    auto N3 = simple_family_member(d, ExactScalar(Rat(3), F));
    auto N5 = simple_family_member(d, ExactScalar(Rat(5), F));
    for (const auto* N : {&N2, &N3, &N5}) {
        CHECK(check_representation(*N, FamilyKind::Power).pass);
        CHECK(is_simple(*N).verdict == Simplicity::Simple);
        for (const auto& v : N->quiver.vertices) CHECK(N->dim_of(v) == 2);
    }
    CHECK(hom_space(N2, N3).empty());
    CHECK(hom_space(N3, N2).empty());
    CHECK(hom_space(N2, N5).empty());
    CHECK(hom_space(N3, N5).empty());

    CHECK_THROWS_AS(simple_family_member(d, ExactScalar(Rat(1), F)), DomainError);
    CHECK_THROWS_AS(simple_family_member(d, ExactScalar(Rat(-1), F)), DomainError);

    // second edge of weight 4: the far vertex drops to dimension one
    auto d54 = two_heavy(5, 4);
    auto N4 = simple_family_member(d54, ExactScalar(Rat(2), F));
    CHECK(check_representation(N4, FamilyKind::Power).pass);
    CHECK(N4.dim_of("c") == 1);
    CHECK(is_simple(N4).verdict == Simplicity::Simple);

    // first edge of weight 4: eigenvalue pair becomes {0, 1}
    auto d45 = two_heavy(4, 5);
    auto N45 = simple_family_member(d45, ExactScalar(Rat(2), F));
    CHECK(check_representation(N45, FamilyKind::Power).pass);
    CHECK(is_simple(N45).verdict == Simplicity::Simple);
    CHECK_THROWS_AS(simple_family_member(d45, ExactScalar(Rat(0), F)), DomainError);
    auto N44 = simple_family_member(two_heavy(4, 4), ExactScalar(Rat(2), F));
    CHECK(check_representation(N44, FamilyKind::Power).pass);
    CHECK(is_simple(N44).verdict == Simplicity::Simple);

    // infinite first edge
    auto dinf = CoxeterDiagram::create({"a", "b", "c"},
                                       {{"a", "b", winf()}, {"b", "c", w(5)}});
    auto Ninf = simple_family_member(dinf, ExactScalar(Rat(2), F));
    CHECK(check_representation(Ninf, FamilyKind::Power).pass);
    CHECK(is_simple(Ninf).verdict == Simplicity::Simple);

    // longer tree with simple padding edges
    auto spread = CoxeterDiagram::create(
        {"a", "b", "c", "d", "e"},
        {{"a", "b", w(3)}, {"b", "c", w(5)}, {"c", "d", w(5)}, {"d", "e", w(3)}});
    auto Ns = simple_family_member(spread, ExactScalar(Rat(2), F));
    CHECK(check_representation(Ns, FamilyKind::Power).pass);
    CHECK(is_simple(Ns).verdict == Simplicity::Simple);

    // diagrams outside the two-heavy-tree shape are rejected
    CHECK_THROWS_AS(simple_family_member(cycle(4), ExactScalar(Rat(2), F)), DomainError);
    CHECK_THROWS_AS(simple_family_member(dihedral(w(5)), ExactScalar(Rat(2), F)), DomainError);
}

TEST_CASE("pendant extensions") {
    auto F = rationals();
    auto s4 = dihedral_simples(w(4), FamilyKind::Power, F);

    // two simples that are one-dimensional at the attach vertex
    std::vector<Representation> parts{s4[0], s4[2]};  // S(a) and M(1)
    auto M = extend_by_pendant(parts, w(4), "a");
    CHECK(check_representation(M, FamilyKind::Power).pass);
    CHECK(M.dim_of("p") == 1);
    // the pendant round trip is the identity on the pendant space
    Mat X = M.maps.at("a>p");
    Mat Y = M.maps.at("p>a");
    CHECK(X * Y == Mat::identity(1, F));
    CHECK(is_simple(M).verdict == Simplicity::Simple);

    auto M5 = extend_by_pendant(parts, w(5), "a");
    CHECK(check_representation(M5, FamilyKind::Power).pass);
    Mat B = M5.maps.at("p>a");
    CHECK(B * B == Mat::identity(2, F));
    CHECK(is_simple(M5).verdict == Simplicity::Simple);

    auto M6 = extend_by_pendant(parts, w(6), "a");
    CHECK(check_representation(M6, FamilyKind::Power).pass);
    CHECK(is_simple(M6).verdict == Simplicity::Simple);

    CHECK_THROWS_AS(extend_by_pendant(parts, w(3), "a"), DomainError);
    CHECK_THROWS_AS(extend_by_pendant({s4[0], s4[0]}, w(4), "a"), DomainError);
    CHECK_THROWS_AS(extend_by_pendant({s4[1]}, w(4), "a"), DomainError);  // dim 0 at a

    // weights 7 and 8 need the cube-roots-of-unity field
    CHECK_THROWS_AS(extend_by_pendant(parts, w(7), "a"), DomainError);
    auto FW = q_omega();
    auto s4w = dihedral_simples(w(4), FamilyKind::Power, FW);
    auto M7 = extend_by_pendant({s4w[0], s4w[2]}, w(7), "a");
    CHECK(check_representation(M7, FamilyKind::Power).pass);
    CHECK(is_simple(M7).verdict == Simplicity::Simple);
    auto M8 = extend_by_pendant({s4w[0], s4w[2]}, w(8), "a");
    CHECK(check_representation(M8, FamilyKind::Power).pass);
    CHECK(is_simple(M8).verdict == Simplicity::Simple);
}

TEST_CASE("restriction to a subrepresentation") {
    auto F = rationals();
    auto W = witness_nonsemisimple(cycle(3), ExactScalar(Rat(2), F));
    auto N = witness_canonical_subrep(W);
    auto R = restrict_to_subrep(W, N);
    CHECK(check_representation(R, FamilyKind::Power).pass);
    CHECK(R.total_dim() == 3);
    CHECK(is_simple(R).verdict == Simplicity::Simple);

    // the one-dimensional family members are pairwise non-isomorphic
    auto W3 = witness_nonsemisimple(cycle(3), ExactScalar(Rat(3), F));
    auto R3 = restrict_to_subrep(W3, witness_canonical_subrep(W3));
    CHECK(hom_space(R, R3).empty());
}
