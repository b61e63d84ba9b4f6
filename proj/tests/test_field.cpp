#include <catch_amalgamated.hpp>

#include "subreg/field.hpp"
#include "subreg/matrix.hpp"

using namespace subreg;

namespace {

FieldPtr q_omega() { return make_field(Polynomial::from_terms({{2, 1}, {1, 1}, {0, 1}})); }
FieldPtr q_sqrt5() { return make_field(Polynomial::from_terms({{2, 1}, {0, -5}})); }

}  // namespace

TEST_CASE("extension field arithmetic") {
    auto F = q_omega();
    auto th = ExactScalar::generator(F);
    auto one = ExactScalar(Rat(1), F);
    CHECK(th * th * th == one);
    CHECK(th * th == -th - one);
    CHECK(th * th.inverse() == one);
    CHECK((one + th) * (one + th).inverse() == one);
    CHECK_THROWS_AS(ExactScalar(Rat(0), F).inverse(), DomainError);

    auto G = q_sqrt5();
    auto s5 = ExactScalar::generator(G);
    CHECK(s5 * s5 == ExactScalar(Rat(5), G));
    CHECK_THROWS_AS(th + s5, DomainError);  // incompatible fields
    CHECK(th + ExactScalar(Rat(2)) == th + ExactScalar(Rat(2), F));  // rational lift
}

TEST_CASE("modulus validation") {
    CHECK_THROWS_AS(make_field(Polynomial::from_terms({{2, 1}, {0, -4}})), DomainError);
    CHECK_THROWS_AS(make_field(Polynomial::from_terms({{1, 1}, {0, 1}})), DomainError);
    CHECK_THROWS_AS(make_field(Polynomial::from_terms({{2, 2}, {0, 1}})), DomainError);  // not monic
    CHECK_NOTHROW(make_field(Polynomial::from_terms({{3, 1}, {0, -2}})));   // cube root of 2
    CHECK_THROWS_AS(make_field(Polynomial::from_terms({{3, 1}, {0, -8}})), DomainError);
    CHECK_NOTHROW(make_field(Polynomial::from_terms({{4, 1}, {0, 1}})));
    CHECK_THROWS_AS(make_field(Polynomial::from_terms({{4, 1}, {0, 4}})), DomainError);
    CHECK_THROWS_AS(make_field(Polynomial::from_terms({{6, 1}, {0, 3}})), DomainError);  // degree cap
}

TEST_CASE("square roots in fields") {
    CHECK(rational_sqrt(Rat(9, 4)) == Rat(3, 2));
    CHECK_FALSE(rational_sqrt(Rat(2)).has_value());
    CHECK_FALSE(rational_sqrt(Rat(-1)).has_value());

    auto F = q_omega();
    auto r = sqrt_in_field(ExactScalar(Rat(-3), F));
    REQUIRE(r.has_value());
    CHECK(*r * *r == ExactScalar(Rat(-3), F));

    auto G = q_sqrt5();
    auto r5 = sqrt_in_field(ExactScalar(Rat(5), G));
    REQUIRE(r5.has_value());
    CHECK(*r5 * *r5 == ExactScalar(Rat(5), G));

    CHECK_FALSE(sqrt_in_field(ExactScalar(Rat(2))).has_value());
    CHECK(sqrt_in_field(ExactScalar(Rat(16, 9))).has_value());
}

TEST_CASE("root location") {
    // x^3 - 1 splits over the third-roots-of-unity field
    auto F = q_omega();
    auto roots = roots_in_field(Polynomial::from_terms({{3, 1}, {0, -1}}), F);
    REQUIRE(roots.size() == 3);
    for (const auto& r : roots) CHECK(r * r * r == ExactScalar(Rat(1), F));

    auto roots_q = roots_in_field(Polynomial::from_terms({{3, 1}, {0, -1}}), rationals());
    CHECK(roots_q.size() == 1);

    auto G = q_sqrt5();
    auto golden = roots_in_field(Polynomial::from_terms({{2, 1}, {1, -3}, {0, 1}}), G);
    REQUIRE(golden.size() == 2);
    for (const auto& r : golden)
        CHECK(r * r - ExactScalar(Rat(3), G) * r + ExactScalar(Rat(1), G) ==
              ExactScalar(Rat(0), G));

    CHECK(roots_in_field(Polynomial::from_terms({{2, 1}, {0, -2}}), rationals()).empty());
    // rational roots with multiplicity and zero roots
    auto rr = roots_in_field(Polynomial::from_terms({{3, 1}, {1, -1}}), rationals());
    CHECK(rr.size() == 3);  // 0, 1, -1
}

TEST_CASE("matrix echelon, kernel, solve") {
    auto F = rationals();
    Mat A = Mat::from_rows({{1, 2, 3}, {2, 4, 6}, {1, 0, 1}}, F);
    CHECK(A.rank() == 2);
    Mat K = A.kernel();
    REQUIRE(K.cols() == 1);
    CHECK((A * K).is_zero());

    Mat b = Mat::from_rows({{6}, {12}, {2}}, F);
    auto x = A.solve(b);
    REQUIRE(x.has_value());
    CHECK(A * *x == b);
    Mat bad = Mat::from_rows({{6}, {11}, {2}}, F);
    CHECK_FALSE(A.solve(bad).has_value());

    Mat J = Mat::from_rows({{2, 1}, {0, 2}}, F);
    auto Jinv = J.inverse();
    REQUIRE(Jinv.has_value());
    CHECK((J * *Jinv) == Mat::identity(2, F));
    CHECK(J.det() == ExactScalar(Rat(4), F));

    auto cp = J.char_poly();  // (x-2)^2 = x^2 - 4x + 4
    REQUIRE(cp.size() == 3);
    CHECK(cp[0] == ExactScalar(Rat(4), F));
    CHECK(cp[1] == ExactScalar(Rat(-4), F));
    CHECK(cp[2] == ExactScalar(Rat(1), F));

    // polynomial evaluation: J satisfies its characteristic polynomial
    Polynomial chp = Polynomial::from_terms({{2, 1}, {1, -4}, {0, 4}});
    CHECK(Mat::poly_eval(chp, J).is_zero());
}

TEST_CASE("matrices over an extension field") {
    auto F = q_omega();
    auto th = ExactScalar::generator(F);
    Mat D(2, 2, F);
    D.at(0, 0) = th;
    D.at(1, 1) = th * th;
    CHECK(D.det() == ExactScalar(Rat(1), F));
    auto inv = D.inverse();
    REQUIRE(inv.has_value());
    CHECK((*inv * D) == Mat::identity(2, F));
    // kernel of D - theta I is one-dimensional
    Mat shift = D - th * Mat::identity(2, F);
    CHECK(shift.kernel().cols() == 1);
}

TEST_CASE("column space helpers") {
    auto F = rationals();
    Mat A = Mat::from_rows({{1, 2}, {2, 4}, {0, 0}}, F);
    Mat basis = column_space_basis(A);
    CHECK(basis.cols() == 1);
    CHECK(columns_contained(basis, A));
    Mat v = Mat::from_rows({{1}, {0}, {0}}, F);
    CHECK_FALSE(columns_contained(basis, v));
}
