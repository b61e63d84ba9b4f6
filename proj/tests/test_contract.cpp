#include <catch_amalgamated.hpp>

#include <map>

#include "subreg/contract.hpp"
#include "test_util.hpp"

using namespace subreg;
using testutil::cycle;
using testutil::dihedral;
using testutil::w;
using testutil::winf;

namespace {

// square diagram: a-b and b-c simple, c-d weight 5, a-d weight 4
CoxeterDiagram square_diagram() {
    return CoxeterDiagram::create(
        {"a", "b", "c", "d"},
        {{"a", "b", w(3)}, {"b", "c", w(3)}, {"c", "d", w(5)}, {"a", "d", w(4)}});
}

GDQuiver build_quiver(std::vector<std::string> vertices,
                      std::vector<std::tuple<std::string, std::string, std::string>> arrows,
                      std::map<std::string, std::string> dual,
                      std::map<std::string, Weight> weight) {
    GDQuiver q;
    q.vertices = std::move(vertices);
    for (auto& [id, s, t] : arrows) q.arrows.push_back({id, s, t});
    q.dual = std::move(dual);
    q.weight = std::move(weight);
    q.validate();
    return q;
}

std::multiset<std::string> weight_multiset(const GDQuiver& q) {
    std::multiset<std::string> out;
    for (const auto& a : q.arrows) out.insert(q.weight.at(a.id).str());
    return out;
}

}  // namespace

TEST_CASE("contractibility preconditions") {
    auto q = double_quiver(square_diagram());
    CHECK_THROWS_AS(contract(q, "a>d", true), DomainError);  // weight 4: even
    auto qi = double_quiver(dihedral(winf()));
    CHECK_THROWS_AS(contract(qi, "a>b", true), DomainError);  // infinite

    GDQuiver loopq = build_quiver({"v"}, {{"e", "v", "v"}}, {{"e", "e"}}, {{"e", w(5)}});
    CHECK_THROWS_AS(contract(loopq, "e", true), DomainError);  // self-dual loop
}

TEST_CASE("single contraction of the square quiver") {
    auto q = double_quiver(square_diagram());
    auto [qbar, step] = contract(q, "a>b", /*elide*/ false);

    CHECK(step.merged_a == "a");
    CHECK(step.merged_b == "b");
    CHECK(step.pair_weight == w(3));
    CHECK_FALSE(step.loop_elided);
    CHECK(qbar.vertices.size() == 3);
    CHECK(qbar.arrows.size() == 7);

    // expected shape: merged vertex v with a weight-3 loop, v<->c simple pair,
    // c<->d weight 5, d<->v weight 4
    auto expected = build_quiver(
        {"v", "c", "d"},
        {{"g", "v", "c"}, {"g*", "c", "v"}, {"z", "c", "d"}, {"z*", "d", "c"},
         {"k", "d", "v"}, {"k*", "v", "d"}, {"eps", "v", "v"}},
        {{"g", "g*"}, {"g*", "g"}, {"z", "z*"}, {"z*", "z"}, {"k", "k*"}, {"k*", "k"},
         {"eps", "eps"}},
        {{"g", w(3)}, {"g*", w(3)}, {"z", w(5)}, {"z*", w(5)}, {"k", w(4)}, {"k*", w(4)},
         {"eps", w(3)}});
    CHECK(quivers_isomorphic(qbar, expected));

    auto [qbar2, step2] = contract(q, "a>b", /*elide*/ true);
    CHECK(step2.loop_elided);
    CHECK(qbar2.arrows.size() == 6);

    // diagram-level contraction commutes with the quiver-level one
    auto gbar = simple_contract_diagram(square_diagram(), "a", "b");
    CHECK(quivers_isomorphic(qbar2, double_quiver(gbar)));
}

TEST_CASE("contraction bookkeeping invariants") {
    auto q = double_quiver(square_diagram());
    auto [qbar, step] = contract(q, "a>b", false);
    CHECK(qbar.vertices.size() == q.vertices.size() - 1);
    auto before = weight_multiset(q);
    // the contracted pair's two arrows are replaced by one loop
    before.erase(before.find("3"));
    CHECK(weight_multiset(qbar) == before);
    // rerouted arrows recorded
    CHECK(step.arrow_rename.size() == 4);
    CHECK(step.vertex_rename.size() == 2);
}

TEST_CASE("simple diagram contraction preconditions") {
    CHECK_THROWS_AS(simple_contract_diagram(square_diagram(), "c", "d"), DomainError);
    auto tri = CoxeterDiagram::create(
        {"a", "b", "c"}, {{"a", "b", w(3)}, {"b", "c", w(3)}, {"a", "c", w(3)}});
    CHECK_THROWS_AS(simple_contract_diagram(tri, "a", "b"), DomainError);  // shared neighbor
}

TEST_CASE("tree contraction to its weighted core") {
    // tree: a-b weight 5, b-c, c-f, f-g weight 7, c-d weight 4, d-e
    auto g = CoxeterDiagram::create({"a", "b", "c", "d", "e", "f", "g"},
                                    {{"a", "b", w(5)},
                                     {"b", "c", w(3)},
                                     {"c", "f", w(3)},
                                     {"f", "g", w(7)},
                                     {"c", "d", w(4)},
                                     {"d", "e", w(3)}});
    CoxeterDiagram cur = g;
    for (;;) {
        bool contracted = false;
        for (const auto& e : cur.edges()) {
            if (e.m == w(3)) {
                cur = simple_contract_diagram(cur, e.u, e.v);
                contracted = true;
                break;
            }
        }
        if (!contracted) break;
    }
    auto expected = CoxeterDiagram::create(
        {"x", "y", "z", "u"}, {{"x", "y", w(5)}, {"y", "z", w(4)}, {"y", "u", w(7)}});
    CHECK(diagrams_isomorphic(cur, expected));
}

TEST_CASE("cycles contract to the one-vertex loop-pair core") {
    GDQuiver first_core;
    for (int n : {3, 4, 5, 6}) {
        auto [core, trace] = contract_to_core(double_quiver(cycle(n)));
        CHECK(core.vertices.size() == 1);
        REQUIRE(core.arrows.size() == 2);
        for (const auto& a : core.arrows) {
            CHECK(a.source == a.target);
            CHECK(core.weight.at(a.id) == w(3));
            CHECK(core.dual.at(a.id) != a.id);
        }
        CHECK(trace.size() == static_cast<std::size_t>(n - 1));
        if (n == 3)
            first_core = core;
        else
            CHECK(quivers_isomorphic(core, first_core));
        auto pres = presentation(core, FamilyKind::Power);
        CHECK(pres.annotation == "Laurent");
        CHECK(pres.text() == "Laurent: <x,y | xy=yx=1>");
    }
}

TEST_CASE("stars with odd weights contract to cyclic free products") {
    auto star = CoxeterDiagram::create({"0", "1", "2"}, {{"0", "1", w(5)}, {"0", "2", w(7)}});
    auto [core, trace] = contract_to_core(double_quiver(star));
    REQUIRE(core.vertices.size() == 1);
    REQUIRE(core.arrows.size() == 2);
    for (const auto& a : core.arrows) CHECK(core.dual.at(a.id) == a.id);
    auto pres = presentation(core, FamilyKind::Power);
    CHECK(pres.relations == std::vector<std::string>{"x1^2=1", "x2^3=1"});
    CHECK(pres.annotation == "C2*C3");
}

TEST_CASE("all-simple trees contract to the ground field") {
    auto path = CoxeterDiagram::create({"a", "b", "c"}, {{"a", "b", w(3)}, {"b", "c", w(3)}});
    auto [core, trace] = contract_to_core(double_quiver(path));
    CHECK(core.vertices.size() == 1);
    CHECK(core.arrows.empty());
    auto pres = presentation(core, FamilyKind::Power);
    CHECK(pres.generators.empty());
    CHECK(pres.annotation == "K");
}

TEST_CASE("iterated contraction of the heavy cycle") {
    // triangle with one weight-5 edge, contracted in the two-step order
    auto g = cycle(3, w(5));
    auto q1 = double_quiver(g);  // edges v1-v2 (5), v2-v3, v1-v3
    auto [q2, s1] = contract(q1, "v1>v3", true);
    CHECK(q2.vertices.size() == 2);
    CHECK(q2.arrows.size() == 4);  // two parallel dual pairs
    // contract the rerouted simple pair
    std::string simple_arrow;
    for (const auto& a : q2.arrows)
        if (q2.weight.at(a.id) == w(3) && a.source != a.target) {
            simple_arrow = a.id;
            break;
        }
    REQUIRE_FALSE(simple_arrow.empty());
    auto [q3, s2] = contract(q2, simple_arrow, true);
    REQUIRE(q3.vertices.size() == 1);
    REQUIRE(q3.arrows.size() == 2);
    for (const auto& a : q3.arrows) {
        CHECK(a.source == a.target);
        CHECK(q3.weight.at(a.id) == w(5));
        CHECK(q3.dual.at(a.id) != a.id);  // dual pair of loops, not self-dual
    }
    auto pres = presentation(q3, FamilyKind::Power);
    CHECK(pres.annotation == "T_2");
    CHECK(pres.relations == std::vector<std::string>{"(xy)^2=(yx)^2=1"});
}

TEST_CASE("presentation preconditions") {
    auto q = double_quiver(dihedral(w(3)));
    CHECK_THROWS_AS(presentation(q, FamilyKind::Power), DomainError);  // two vertices

    GDQuiver even = build_quiver({"v"}, {{"x", "v", "v"}, {"y", "v", "v"}},
                                 {{"x", "y"}, {"y", "x"}}, {{"x", w(4)}, {"y", w(4)}});
    CHECK_THROWS_AS(presentation(even, FamilyKind::Power), DomainError);

    // mixed cores get mechanical relations and no annotation
    GDQuiver mixed = build_quiver(
        {"v"}, {{"x", "v", "v"}, {"y", "v", "v"}, {"z", "v", "v"}},
        {{"x", "y"}, {"y", "x"}, {"z", "z"}}, {{"x", w(3)}, {"y", w(3)}, {"z", w(5)}});
    auto pres = presentation(mixed, FamilyKind::Power);
    CHECK(pres.annotation.empty());
    CHECK(pres.relations.size() == 2);

    // the chebyshev family produces mechanical relations
    GDQuiver laurent = build_quiver({"v"}, {{"x", "v", "v"}, {"y", "v", "v"}},
                                    {{"x", "y"}, {"y", "x"}}, {{"x", w(3)}, {"y", w(3)}});
    auto pres2 = presentation(laurent, FamilyKind::Chebyshev);
    CHECK(pres2.relations.size() == 2);
}

TEST_CASE("contraction traces replay onto the result") {
    auto [core, trace] = contract_to_core(double_quiver(cycle(4)));
    GDQuiver cur = double_quiver(cycle(4));
    for (const auto& step : trace) {
        auto [next, s] = contract(cur, step.arrow, true);
        CHECK(s == step);
        cur = next;
    }
    CHECK(cur == core);
}
