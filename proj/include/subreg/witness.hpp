#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "subreg/classify.hpp"
#include "subreg/rep.hpp"

namespace subreg {

/// Block-diagonal direct sum; the summands must share quiver and field.
inline Representation direct_sum(const std::vector<Representation>& parts) {
    if (parts.empty()) throw DomainError("direct sum of an empty list");
    Representation out;
    out.quiver = parts[0].quiver;
    out.field = parts[0].field;
    for (const auto& p : parts) {
        if (!(p.quiver == out.quiver)) throw DomainError("direct sum requires a common quiver");
        if (!same_field(p.field, out.field)) throw DomainError("direct sum requires a common field");
    }
    for (const auto& v : out.quiver.vertices) {
        int d = 0;
        for (const auto& p : parts) d += p.dim_of(v);
        out.dims[v] = d;
    }
    for (const auto& a : out.quiver.arrows) {
        Mat m(out.dims.at(a.target), out.dims.at(a.source), out.field);
        int roff = 0, coff = 0;
        for (const auto& p : parts) {
            const Mat& blk = p.map_of(a.id);
            for (int i = 0; i < blk.rows(); ++i)
                for (int j = 0; j < blk.cols(); ++j) m.at(roff + i, coff + j) = blk.at(i, j);
            roff += blk.rows();
            coff += blk.cols();
        }
        out.maps.emplace(a.id, std::move(m));
    }
    out.validate();
    return out;
}

/// Recovers the diagram from a double quiver (no loops, one dual pair per
/// vertex pair).
inline CoxeterDiagram diagram_of_double_quiver(const GDQuiver& q) {
    q.validate();
    std::vector<CoxeterDiagram::Edge> edges;
    std::set<std::string> seen;
    std::set<std::pair<std::string, std::string>> pairs;
    for (const auto& a : q.arrows) {
        if (a.source == a.target) throw DomainError("not a double quiver: loop present");
        if (q.dual.at(a.id) == a.id) throw DomainError("not a double quiver: self-dual arrow");
        if (seen.count(a.id)) continue;
        seen.insert(a.id);
        seen.insert(q.dual.at(a.id));
        auto key = std::minmax(a.source, a.target);
        if (!pairs.insert(key).second)
            throw DomainError("not a double quiver: parallel dual pairs");
        edges.push_back({key.first, key.second, q.weight.at(a.id)});
    }
    return CoxeterDiagram::create(q.vertices, std::move(edges));
}

namespace detail {

inline Mat jordan_2x2(const ExactScalar& x, const FieldPtr& F) {
    Mat j(2, 2, F);
    j.at(0, 0) = x;
    j.at(0, 1) = ExactScalar(Rat(1), F);
    j.at(1, 1) = x;
    return j;
}

// a root of the halved family polynomial different from 1, located in F
inline ExactScalar second_eigenvalue(Weight m, const FieldPtr& F) {
    Polynomial ft = tilde(family_poly(FamilyKind::Power, static_cast<int>(m.value()) - 1));
    for (const auto& r : roots_in_field(ft, F))
        if (r != ExactScalar(Rat(1), F)) return r;
    throw DomainError(
        "the weight-" + m.str() +
        " relation has no second eigenvalue over this field; supply an extension field");
}

// Finds a cycle (v1, ..., vk) in a connected diagram, deterministically.
inline std::vector<std::string> find_cycle(const CoxeterDiagram& d) {
    std::map<std::string, std::string> parent;
    std::vector<std::string> order;
    for (const auto& root : d.vertices()) {
        if (parent.count(root)) continue;
        parent[root] = "";
        std::vector<std::string> stack{root};
        while (!stack.empty()) {
            std::string v = stack.back();
            stack.pop_back();
            for (const auto& n : d.neighbors(v)) {
                if (!parent.count(n)) {
                    parent[n] = v;
                    stack.push_back(n);
                } else if (n != parent[v]) {
                    // back edge v-n: walk both ancestries to the meeting point
                    std::vector<std::string> pv, pn;
                    for (std::string c = v; !c.empty(); c = parent[c]) pv.push_back(c);
                    for (std::string c = n; !c.empty(); c = parent[c]) pn.push_back(c);
                    std::set<std::string> anc(pv.begin(), pv.end());
                    std::string meet;
                    for (const auto& c : pn)
                        if (anc.count(c)) {
                            meet = c;
                            break;
                        }
                    std::vector<std::string> cyc;
                    for (const auto& c : pv) {
                        cyc.push_back(c);
                        if (c == meet) break;
                    }
                    std::vector<std::string> tail;
                    for (const auto& c : pn) {
                        if (c == meet) break;
                        tail.push_back(c);
                    }
                    cyc.insert(cyc.end(), tail.rbegin(), tail.rend());
                    if (cyc.size() >= 3) return cyc;
                }
            }
        }
    }
    throw DomainError("internal: no cycle found");
}

// Components of a tree after removing its two distinguished heavy edges;
// returns the class of every vertex: 0 = far side of e1, 1 = middle,
// 2 = far side of e2, and the oriented endpoints of both edges.
struct TwoHeavySplit {
    std::map<std::string, int> cls;
    std::string a, b1;  // e1 = {a, b1}, a outside, b1 in the middle
    std::string b2, c;  // e2 = {b2, c}, c outside, b2 in the middle
};

inline TwoHeavySplit split_two_heavy(const CoxeterDiagram& d,
                                     const CoxeterDiagram::Edge& e1,
                                     const CoxeterDiagram::Edge& e2) {
    // component labels with e1, e2 removed
    std::map<std::string, int> comp;
    int next = 0;
    for (const auto& v : d.vertices()) {
        if (comp.count(v)) continue;
        int id = next++;
        std::vector<std::string> stack{v};
        comp[v] = id;
        while (!stack.empty()) {
            auto cur = stack.back();
            stack.pop_back();
            for (const auto& e : d.edges()) {
                if ((e.u == e1.u && e.v == e1.v) || (e.u == e2.u && e.v == e2.v)) continue;
                std::string other;
                if (e.u == cur)
                    other = e.v;
                else if (e.v == cur)
                    other = e.u;
                else
                    continue;
                if (!comp.count(other)) {
                    comp[other] = id;
                    stack.push_back(other);
                }
            }
        }
    }
    // the middle component touches both edges
    std::set<int> touch1{comp.at(e1.u), comp.at(e1.v)};
    std::set<int> touch2{comp.at(e2.u), comp.at(e2.v)};
    std::vector<int> mid;
    std::set_intersection(touch1.begin(), touch1.end(), touch2.begin(), touch2.end(),
                          std::back_inserter(mid));
    if (mid.size() != 1) throw DomainError("internal: heavy edges are not in series");
    int middle = mid[0];

    TwoHeavySplit s;
    s.b1 = comp.at(e1.u) == middle ? e1.u : e1.v;
    s.a = comp.at(e1.u) == middle ? e1.v : e1.u;
    s.b2 = comp.at(e2.u) == middle ? e2.u : e2.v;
    s.c = comp.at(e2.u) == middle ? e2.v : e2.u;
    int cls_a = comp.at(s.a), cls_c = comp.at(s.c);
    for (const auto& v : d.vertices()) {
        int cc = comp.at(v);
        s.cls[v] = cc == middle ? 1 : (cc == cls_a ? 0 : (cc == cls_c ? 2 : -1));
        if (s.cls[v] < 0) throw DomainError("internal: stray component in two-heavy split");
    }
    return s;
}

inline std::string arrow_id_between(const GDQuiver& q, const std::string& u,
                                    const std::string& v) {
    for (const auto& a : q.arrows)
        if (a.source == u && a.target == v) return a.id;
    throw DomainError("internal: missing arrow " + u + ">" + v);
}

}  // namespace detail

/// A module of the power-family quotient with a subrepresentation admitting no
/// complement. Requires a non-semisimple diagram: an infinite-weight edge or a
/// cycle carries a Jordan block, and a tree with two or more heavy edges uses
/// the two lexicographically first heavy edges. The span of the first basis
/// vector at every vertex is an arrow-closed subrepresentation without a
/// complement.
inline Representation witness_nonsemisimple(const CoxeterDiagram& d, const ExactScalar& x) {
    if (x.is_zero()) throw DomainError("witness parameter must be nonzero");
    auto cls = classify(d);
    if (cls.verdict == Verdict::Semisimple)
        throw DomainError("diagram is semisimple; no non-semisimple module exists");
    const FieldPtr& F = x.field();
    GDQuiver q = double_quiver(d);

    Representation M;
    M.quiver = q;
    M.field = F;
    for (const auto& v : d.vertices()) M.dims[v] = 2;
    for (const auto& a : q.arrows) M.maps[a.id] = Mat::identity(2, F);

    // an infinite edge takes priority, then a cycle, then two heavy edges
    const CoxeterDiagram::Edge* inf_edge = nullptr;
    for (const auto& e : d.edges())
        if (e.m.is_infinite()) {
            inf_edge = &e;
            break;
        }
    if (inf_edge) {
        M.maps[detail::arrow_id_between(q, inf_edge->u, inf_edge->v)] = detail::jordan_2x2(x, F);
        M.validate();
        return M;
    }
    bool has_cycle = false;
    for (const auto& c : cls.components)
        if (!c.is_tree) has_cycle = true;
    if (has_cycle) {
        auto cyc = detail::find_cycle(d);
        Mat j = detail::jordan_2x2(x, F);
        auto jinv = j.inverse();
        if (!jinv) throw DomainError("internal: Jordan block not invertible");
        // eigenvalue 1 is always a root of the halved relation polynomial
        M.maps[detail::arrow_id_between(q, cyc[0], cyc[1])] = j;
        M.maps[detail::arrow_id_between(q, cyc[1], cyc[0])] = *jinv;
        M.validate();
        return M;
    }

    // tree with >= 2 heavy edges: triangular/diagonal pair on the two
    // lexicographically first heavy edges
    std::vector<CoxeterDiagram::Edge> heavy;
    for (const auto& e : d.edges())
        if (e.m.is_infinite() || e.m.value() >= 4) heavy.push_back(e);
    if (heavy.size() < 2) throw DomainError("internal: expected two heavy edges");
    auto split = detail::split_two_heavy(d, heavy[0], heavy[1]);

    ExactScalar one(Rat(1), F), zero(Rat(0), F);
    auto eigenvalues = [&](Weight m) -> std::pair<ExactScalar, ExactScalar> {
        // (secondary, 1); the secondary eigenvalue is 0 for weight 4
        if (m.value() == 4) return {zero, one};
        return {detail::second_eigenvalue(m, F), one};
    };
    auto [l1, l2] = eigenvalues(heavy[0].m);
    auto [m1, m2] = eigenvalues(heavy[1].m);

    Mat upper(2, 2, F);  // [[l1, 1], [0, l2]]
    upper.at(0, 0) = l1;
    upper.at(0, 1) = one;
    upper.at(1, 1) = l2;
    Mat e22(2, 2, F);  // [[0,0],[0,1]]
    e22.at(1, 1) = one;
    Mat diag(2, 2, F);
    diag.at(0, 0) = m1;
    diag.at(1, 1) = m2;

    M.maps[detail::arrow_id_between(q, split.a, split.b1)] = upper;
    M.maps[detail::arrow_id_between(q, split.b1, split.a)] =
        heavy[0].m.value() == 4 ? e22 : Mat::identity(2, F);
    M.maps[detail::arrow_id_between(q, split.b2, split.c)] =
        heavy[1].m.value() == 4 ? e22 : Mat::identity(2, F);
    M.maps[detail::arrow_id_between(q, split.c, split.b2)] = diag;
    M.validate();
    return M;
}

/// The arrow-closed span of the first basis vector at every vertex.
inline SubRep witness_canonical_subrep(const Representation& M) {
    std::vector<std::pair<std::string, Mat>> seeds;
    for (const auto& v : M.quiver.vertices) {
        if (M.dim_of(v) == 0) continue;
        Mat s(M.dim_of(v), 1, M.field);
        s.at(0, 0) = ExactScalar(Rat(1), M.field);
        seeds.push_back({v, s});
    }
    return generated_subrep(M, seeds);
}

/// One member of the infinite family of pairwise non-isomorphic simple
/// modules attached to a tree with exactly two heavy edges. The parameter x
/// must avoid the two eigenvalues determined by the first heavy edge.
inline Representation simple_family_member(const CoxeterDiagram& d, const ExactScalar& x) {
    std::vector<CoxeterDiagram::Edge> heavy;
    for (const auto& e : d.edges())
        if (e.m.is_infinite() || e.m.value() >= 4) heavy.push_back(e);
    auto cls = classify(d);
    bool tree = true;
    for (const auto& c : cls.components)
        if (!c.is_tree) tree = false;
    if (!tree || heavy.size() != 2)
        throw DomainError("simple family requires a tree with exactly two heavy edges");
    const FieldPtr& F = x.field();
    ExactScalar one(Rat(1), F), zero(Rat(0), F);

    auto eigenvalues = [&](Weight m) -> std::pair<ExactScalar, ExactScalar> {
        if (m.is_infinite()) return {-one, one};
        if (m.value() == 4) return {zero, one};
        return {detail::second_eigenvalue(m, F), one};
    };
    auto [l1, l2] = eigenvalues(heavy[0].m);
    if (x == l1 || x == l2)
        throw DomainError("parameter coincides with an eigenvalue of the first heavy edge");
    auto [m1, m2] = eigenvalues(heavy[1].m);

    auto split = detail::split_two_heavy(d, heavy[0], heavy[1]);
    GDQuiver q = double_quiver(d);
    // a weight-4 edge pins its moving eigenvalue at zero, so that side drops
    // to dimension one and carries a section/retraction pair instead
    bool narrow_a = heavy[0].m.is_finite() && heavy[0].m.value() == 4;
    bool narrow = heavy[1].m.is_finite() && heavy[1].m.value() == 4;

    Representation M;
    M.quiver = q;
    M.field = F;
    for (const auto& v : d.vertices()) {
        int cls = split.cls.at(v);
        M.dims[v] = ((narrow && cls == 2) || (narrow_a && cls == 0)) ? 1 : 2;
    }

    // arrows between different classes are exactly the two heavy pairs,
    // assigned explicitly below; everything else is an identity
    for (const auto& a : q.arrows) {
        if (M.dims.at(a.source) != M.dims.at(a.target)) continue;
        M.maps[a.id] = Mat::identity(M.dims.at(a.source), F);
    }

    if (!narrow_a) {
        Mat bx(2, 2, F);  // [[x, x(l1+l2-x) - l1 l2], [1, l1+l2-x]]
        bx.at(0, 0) = x;
        bx.at(0, 1) = x * (l1 + l2 - x) - l1 * l2;
        bx.at(1, 0) = one;
        bx.at(1, 1) = l1 + l2 - x;
        M.maps[detail::arrow_id_between(q, split.a, split.b1)] = bx;
        M.maps[detail::arrow_id_between(q, split.b1, split.a)] = Mat::identity(2, F);
    } else {
        // section (x, 1) and retraction (1, 1-x): their composite is the
        // identity, and the image and kernel lines both move with x
        Mat section(2, 1, F);
        section.at(0, 0) = x;
        section.at(1, 0) = one;
        Mat retraction(1, 2, F);
        retraction.at(0, 0) = one;
        retraction.at(0, 1) = one - x;
        M.maps[detail::arrow_id_between(q, split.a, split.b1)] = section;
        M.maps[detail::arrow_id_between(q, split.b1, split.a)] = retraction;
    }
    if (!narrow) {
        Mat diag(2, 2, F);
        diag.at(0, 0) = m1;
        diag.at(1, 1) = m2;
        M.maps[detail::arrow_id_between(q, split.b2, split.c)] = Mat::identity(2, F);
        M.maps[detail::arrow_id_between(q, split.c, split.b2)] = diag;
    } else {
        Mat gamma(1, 2, F);  // second coordinate only
        gamma.at(0, 1) = one;
        Mat delta(2, 1, F);
        delta.at(1, 0) = one;  // diag(0,1) restricted to the second coordinate
        M.maps[detail::arrow_id_between(q, split.b2, split.c)] = gamma;
        M.maps[detail::arrow_id_between(q, split.c, split.b2)] = delta;
    }
    M.validate();
    return M;
}

/// Attaches a pendant vertex to `u` by an edge of weight m > 3 and extends the
/// direct sum of the given pairwise non-isomorphic simples to a simple module
/// of the enlarged diagram. Weight 4 uses the all-ones row and its companion
/// column; weight >= 5 uses a rank-one perturbation of the identity whose
/// second eigenvalue is a root of the halved relation polynomial.
inline Representation extend_by_pendant(const std::vector<Representation>& simples, Weight m,
                                        const std::string& u) {
    if (simples.empty()) throw DomainError("no simple modules supplied");
    if (m.is_infinite() || m.value() <= 3)
        throw DomainError("pendant weight must be a finite weight greater than 3");
    for (std::size_t i = 0; i < simples.size(); ++i)
        for (std::size_t j = i + 1; j < simples.size(); ++j)
            if (reps_isomorphic(simples[i], simples[j]))
                throw DomainError("simple modules must be pairwise non-isomorphic");

    Representation S = direct_sum(simples);
    const FieldPtr& F = S.field;
    if (!S.quiver.has_vertex(u)) throw DomainError("unknown attach vertex '" + u + "'");
    int dsum = S.dim_of(u);
    if (dsum == 0) throw DomainError("attach vertex carries dimension zero");

    CoxeterDiagram base = diagram_of_double_quiver(S.quiver);
    std::string pendant = "p";
    while (base.has_vertex(pendant)) pendant += "'";
    std::vector<std::string> verts = base.vertices();
    verts.push_back(pendant);
    std::vector<CoxeterDiagram::Edge> edges = base.edges();
    edges.push_back({u, pendant, m});
    CoxeterDiagram big = CoxeterDiagram::create(verts, edges);
    GDQuiver q = double_quiver(big);

    Representation M;
    M.quiver = q;
    M.field = F;
    M.dims = S.dims;
    for (const auto& a : S.quiver.arrows) M.maps[a.id] = S.maps.at(a.id);

    ExactScalar one(Rat(1), F);
    Mat X(1, dsum, F);
    for (int j = 0; j < dsum; ++j) X.at(0, j) = one;
    Mat Y(dsum, 1, F);
    Y.at(0, 0) = ExactScalar(Rat(dsum), F);
    for (int i = 1; i < dsum; ++i) Y.at(i, 0) = -one;

    std::string in_id = detail::arrow_id_between(q, u, pendant);
    std::string out_id = detail::arrow_id_between(q, pendant, u);
    if (m.value() == 4) {
        M.dims[pendant] = 1;
        M.maps[in_id] = X;
        M.maps[out_id] = Y;
    } else {
        ExactScalar lambda = detail::second_eigenvalue(m, F);
        ExactScalar c = one - lambda;
        M.dims[pendant] = dsum;
        M.maps[in_id] = Mat::identity(dsum, F);
        M.maps[out_id] = Mat::identity(dsum, F) - c * (Y * X);
    }
    M.validate();
    return M;
}

}  // namespace subreg
