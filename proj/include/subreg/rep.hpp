#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "subreg/classify.hpp"
#include "subreg/contract.hpp"
#include "subreg/matrix.hpp"
#include "subreg/rewrite.hpp"

namespace subreg {

/// Quiver representation over an exact field. The map of an arrow a -> b has
/// shape dim(b) x dim(a) and acts on column vectors; a path alpha_1...alpha_n
/// acts as M(alpha_n) * ... * M(alpha_1).
struct Representation {
    GDQuiver quiver;
    FieldPtr field;
    std::map<std::string, int> dims;
    std::map<std::string, Mat> maps;

    int dim_of(const std::string& v) const {
        auto it = dims.find(v);
        if (it == dims.end()) throw DomainError("no dimension assigned to vertex '" + v + "'");
        return it->second;
    }
    const Mat& map_of(const std::string& arrow_id) const {
        auto it = maps.find(arrow_id);
        if (it == maps.end()) throw DomainError("no matrix assigned to arrow '" + arrow_id + "'");
        return it->second;
    }
    int total_dim() const {
        int t = 0;
        for (const auto& [v, k] : dims) t += k;
        return t;
    }
    void validate() const {
        quiver.validate();
        for (const auto& v : quiver.vertices)
            if (dim_of(v) < 0) throw DomainError("negative dimension");
        for (const auto& a : quiver.arrows) {
            const Mat& m = map_of(a.id);
            if (m.rows() != dim_of(a.target) || m.cols() != dim_of(a.source))
                throw DomainError("matrix shape mismatch on arrow '" + a.id + "'");
        }
    }
};

/// Per-vertex echelonized column bases of an arrow-closed subspace family.
struct SubRep {
    std::map<std::string, Mat> basis;  // columns are basis vectors

    int dim_at(const std::string& v) const {
        auto it = basis.find(v);
        return it == basis.end() ? 0 : it->second.cols();
    }
    int total_dim() const {
        int t = 0;
        for (const auto& [v, b] : basis) t += b.cols();
        return t;
    }
};

inline Mat path_matrix(const Representation& M, const Path& p) {
    if (p.stationary()) return Mat::identity(M.dim_of(p.start), M.field);
    Mat acc = M.map_of(p.arrows.front());
    for (std::size_t i = 1; i < p.arrows.size(); ++i) acc = M.map_of(p.arrows[i]) * acc;
    return acc;
}

/// Evaluates a uniform relation (all paths sharing source and target).
inline Mat evaluate_element(const Representation& M, const AlgebraElement& r) {
    if (r.empty()) throw DomainError("cannot evaluate the zero element without a source/target");
    const Path& first = r.begin()->first;
    std::string src = first.source(), tgt = first.target(M.quiver);
    Mat acc = Mat::zero(M.dim_of(tgt), M.dim_of(src), M.field);
    for (const auto& [p, c] : r) {
        if (p.source() != src || p.target(M.quiver) != tgt)
            throw DomainError("element is not a uniform relation");
        acc = acc + ExactScalar(c, M.field) * path_matrix(M, p);
    }
    return acc;
}

struct CheckReport {
    bool pass = true;
    std::map<std::string, Mat> residuals;  // arrow id -> relation matrix
};

/// Evaluates every arrow's defining relation; passes iff all residuals vanish.
inline CheckReport check_representation(const Representation& M, FamilyKind fam) {
    M.validate();
    CheckReport rep;
    for (const auto& a : M.quiver.arrows) {
        AlgebraElement r = relation(a.id, fam, M.quiver);
        if (r.empty()) continue;
        Mat res = evaluate_element(M, r);
        if (!res.is_zero()) rep.pass = false;
        rep.residuals.emplace(a.id, std::move(res));
    }
    return rep;
}

// ---------------------------------------------------------------------------
// eigendecomposition of a dual pair of maps

struct EigenBlock {
    ExactScalar eigenvalue;
    Mat U;            // columns: basis of the eigenspace of B*A in the source space
    Mat V;            // columns: basis of the eigenspace of A*B in the target space
    Mat a_coords;     // A restricted to U, written in the V basis
    Mat binv_coords;  // z^{-1} B restricted to V, written in the U basis
};

struct EigenDecomposition {
    bool even_mode = false;  // kernels present
    std::vector<EigenBlock> blocks;
    Mat U0, V0;  // kernels of B*A and A*B (empty in odd mode)
};

/// Simultaneous eigenspace decomposition of B*A and A*B for maps A: U -> V,
/// B: V -> U annihilated by h in the odd sense (h(BA) = h(AB) = 0) or the
/// even sense (h(AB)A = h(BA)B = 0). h must have distinct nonzero roots, all
/// inside the working field. The restrictions of A and z^{-1}B between
/// matching eigenspaces are mutually inverse and are returned in coordinates.
inline EigenDecomposition eigendecompose_pair(const Mat& A, const Mat& B, const Polynomial& h) {
    if (A.cols() != B.rows() || A.rows() != B.cols())
        throw DomainError("eigendecompose_pair: A and B are not a dual pair of maps");
    FieldPtr F = A.field() ? A.field() : B.field();
    if (h.degree() < 1) throw DomainError("eigendecompose_pair: constant polynomial");
    if (!is_squarefree(h)) throw DomainError("eigendecompose_pair: repeated root");
    if (h.coeff(0) == 0) throw DomainError("eigendecompose_pair: zero root");
    auto roots = roots_in_field(h, F);
    if (static_cast<int>(roots.size()) != h.degree())
        throw DomainError("polynomial does not split over the field; supply an extension field");

    Mat BA = B * A;
    Mat AB = A * B;
    Mat hBA = Mat::poly_eval(h, BA);
    Mat hAB = Mat::poly_eval(h, AB);
    bool odd_ok = hBA.is_zero() && hAB.is_zero();
    bool even_ok = (hAB * A).is_zero() && (hBA * B).is_zero();
    if (!odd_ok && !even_ok)
        throw DomainError("maps do not satisfy the required annihilation equations");

    EigenDecomposition dec;
    dec.even_mode = !odd_ok;
    int udim = 0, vdim = 0;
    for (const auto& z : roots) {
        EigenBlock blk;
        blk.eigenvalue = z;
        Mat shiftU = BA - z * Mat::identity(BA.rows(), F);
        Mat shiftV = AB - z * Mat::identity(AB.rows(), F);
        blk.U = shiftU.kernel();
        blk.V = shiftV.kernel();
        if (blk.U.cols() != blk.V.cols())
            throw DomainError("internal: mismatched eigenspace dimensions");
        if (blk.U.cols() > 0) {
            auto x = blk.V.solve(A * blk.U);
            auto y = blk.U.solve(z.inverse() * (B * blk.V));
            if (!x || !y) throw DomainError("internal: eigenspaces not mapped into each other");
            blk.a_coords = *x;
            blk.binv_coords = *y;
            if (blk.binv_coords * blk.a_coords != Mat::identity(blk.U.cols(), F) ||
                blk.a_coords * blk.binv_coords != Mat::identity(blk.V.cols(), F))
                throw DomainError("internal: restrictions are not mutually inverse");
        } else {
            blk.a_coords = Mat(0, 0, F);
            blk.binv_coords = Mat(0, 0, F);
        }
        udim += blk.U.cols();
        vdim += blk.V.cols();
        dec.blocks.push_back(std::move(blk));
    }
    if (dec.even_mode) {
        dec.U0 = BA.kernel();
        dec.V0 = AB.kernel();
        if (!(A * dec.U0).is_zero() || !(B * dec.V0).is_zero())
            throw DomainError("internal: maps nonzero on the zero eigenspace");
        udim += dec.U0.cols();
        vdim += dec.V0.cols();
    } else {
        dec.U0 = Mat(BA.rows(), 0, F);
        dec.V0 = Mat(AB.rows(), 0, F);
    }
    if (udim != BA.rows() || vdim != AB.rows())
        throw DomainError("maps are not diagonalizable with the given spectrum");
    return dec;
}

// ---------------------------------------------------------------------------
// dihedral simple modules and decomposition

namespace detail {

inline CoxeterDiagram dihedral_diagram(Weight m) {
    return CoxeterDiagram::create({"a", "b"}, {{"a", "b", m}});
}

// Simple modules over the given 2-vertex double quiver.
inline std::vector<Representation> dihedral_simples_on(const GDQuiver& q, Weight m,
                                                       FamilyKind fam, const FieldPtr& F) {
    if (m.is_infinite()) throw DomainError("dihedral simple modules require a finite weight");
    if (m.value() < 3) throw DomainError("weight must be >= 3");
    const std::string va = q.vertices[0], vb = q.vertices[1];
    std::string fwd, bwd;
    for (const auto& a : q.arrows) (a.source == va ? fwd : bwd) = a.id;

    Polynomial ft = tilde(family_poly(fam, static_cast<int>(m.value()) - 1));
    auto roots = roots_in_field(ft, F);
    if (static_cast<int>(roots.size()) != ft.degree())
        throw DomainError("roots outside field; supply an extension field");

    std::vector<Representation> out;
    if (m.value() % 2 == 0) {
        for (const std::string& v : {va, vb}) {
            Representation s;
            s.quiver = q;
            s.field = F;
            s.dims[va] = v == va ? 1 : 0;
            s.dims[vb] = v == vb ? 1 : 0;
            s.maps[fwd] = Mat(s.dims[vb], s.dims[va], F);
            s.maps[bwd] = Mat(s.dims[va], s.dims[vb], F);
            out.push_back(std::move(s));
        }
    }
    for (const auto& z : roots) {
        Representation s;
        s.quiver = q;
        s.field = F;
        s.dims[va] = 1;
        s.dims[vb] = 1;
        Mat one = Mat::identity(1, F);
        s.maps[fwd] = one;
        s.maps[bwd] = z * one;
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace detail

/// The pairwise non-isomorphic simple modules of the dihedral quotient:
/// one two-dimensional module per root of the halved polynomial, plus the two
/// one-dimensional modules when the weight is even.
inline std::vector<Representation> dihedral_simples(Weight m, FamilyKind fam, const FieldPtr& F) {
    GDQuiver q = double_quiver(detail::dihedral_diagram(m));
    return detail::dihedral_simples_on(q, m, fam, F);
}

/// Multiplicities of the dihedral simples inside M.
inline std::vector<std::pair<Representation, int>> decompose_dihedral(const Representation& M,
                                                                      FamilyKind fam) {
    M.validate();
    if (M.quiver.vertices.size() != 2 || M.quiver.arrows.size() != 2)
        throw DomainError("decompose_dihedral requires a 2-vertex double quiver");
    if (!check_representation(M, fam).pass)
        throw DomainError("relations not satisfied; not a module of the quotient");
    Weight m = M.quiver.weight.at(M.quiver.arrows[0].id);
    if (m.is_infinite()) throw DomainError("decompose_dihedral requires a finite weight");

    std::vector<std::pair<Representation, int>> out;
    if (M.total_dim() == 0) return out;

    const std::string va = M.quiver.vertices[0], vb = M.quiver.vertices[1];
    std::string fwd, bwd;
    for (const auto& a : M.quiver.arrows) (a.source == va ? fwd : bwd) = a.id;
    Polynomial ft = tilde(family_poly(fam, static_cast<int>(m.value()) - 1));

    auto simples = detail::dihedral_simples_on(M.quiver, m, fam, M.field);
    std::map<std::string, int> mult;  // keyed by eigenvalue string / vertex marker

    if (M.dim_of(va) == 0 && M.dim_of(vb) == 0) return out;
    Mat A = M.map_of(fwd);
    Mat B = M.map_of(bwd);
    auto dec = eigendecompose_pair(A, B, ft);

    std::size_t idx = 0;
    if (m.value() % 2 == 0) {
        if (dec.U0.cols() > 0) out.push_back({simples[0], dec.U0.cols()});
        if (dec.V0.cols() > 0) out.push_back({simples[1], dec.V0.cols()});
        idx = 2;
    } else if (dec.even_mode && (dec.U0.cols() > 0 || dec.V0.cols() > 0)) {
        throw DomainError("internal: zero eigenvalues in an odd-weight module");
    }
    for (std::size_t b = 0; b < dec.blocks.size(); ++b) {
        if (dec.blocks[b].U.cols() > 0) out.push_back({simples[idx + b], dec.blocks[b].U.cols()});
    }
    int total = 0;
    for (const auto& [s, k] : out) total += s.total_dim() * k;
    if (total != M.total_dim()) throw DomainError("internal: dimension not conserved");
    return out;
}

// ---------------------------------------------------------------------------
// subrepresentations

/// Smallest arrow-closed family of subspaces containing the seed vectors.
inline SubRep generated_subrep(const Representation& M,
                               const std::vector<std::pair<std::string, Mat>>& seeds) {
    M.validate();
    std::map<std::string, Mat> span;
    for (const auto& v : M.quiver.vertices) span.emplace(v, Mat(M.dim_of(v), 0, M.field));
    for (const auto& [v, cols] : seeds) {
        if (cols.rows() != M.dim_of(v))
            throw DomainError("seed dimension mismatch at vertex '" + v + "'");
        span[v] = column_space_basis(Mat::hstack(span[v], cols));
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& a : M.quiver.arrows) {
            if (span[a.source].cols() == 0) continue;
            Mat image = M.map_of(a.id) * span[a.source];
            if (!columns_contained(span[a.target], image)) {
                span[a.target] = column_space_basis(Mat::hstack(span[a.target], image));
                changed = true;
            }
        }
    }
    SubRep out;
    out.basis = std::move(span);
    return out;
}

inline bool subrep_closed(const Representation& M, const SubRep& N) {
    for (const auto& a : M.quiver.arrows) {
        auto its = N.basis.find(a.source);
        if (its == N.basis.end() || its->second.cols() == 0) continue;
        Mat image = M.map_of(a.id) * its->second;
        auto itt = N.basis.find(a.target);
        Mat tbasis = itt == N.basis.end() ? Mat(M.dim_of(a.target), 0, M.field) : itt->second;
        if (!columns_contained(tbasis, image)) return false;
    }
    return true;
}

/// Restriction of M to an arrow-closed subspace family, in the basis of N.
inline Representation restrict_to_subrep(const Representation& M, const SubRep& N) {
    if (!subrep_closed(M, N)) throw DomainError("subspaces are not arrow-closed");
    Representation R;
    R.quiver = M.quiver;
    R.field = M.field;
    for (const auto& v : M.quiver.vertices) {
        auto it = N.basis.find(v);
        R.dims[v] = it == N.basis.end() ? 0 : it->second.cols();
    }
    for (const auto& a : M.quiver.arrows) {
        Mat src = N.basis.count(a.source) ? N.basis.at(a.source) : Mat(M.dim_of(a.source), 0, M.field);
        Mat tgt = N.basis.count(a.target) ? N.basis.at(a.target) : Mat(M.dim_of(a.target), 0, M.field);
        Mat image = M.map_of(a.id) * src;
        auto coords = tgt.cols() > 0 ? tgt.solve(image) : std::optional<Mat>(Mat(0, src.cols(), M.field));
        if (!coords) throw DomainError("internal: restriction failed");
        R.maps[a.id] = *coords;
    }
    R.validate();
    return R;
}

// ---------------------------------------------------------------------------
// hom spaces, complements, simplicity

using HomElement = std::map<std::string, Mat>;  // vertex -> matrix dimN_v x dimM_v

/// Basis of the space of module morphisms M -> N.
inline std::vector<HomElement> hom_space(const Representation& M, const Representation& N) {
    if (!(M.quiver == N.quiver)) throw DomainError("hom_space requires a common quiver");
    if (!same_field(M.field, N.field)) throw DomainError("hom_space requires a common field");
    M.validate();
    N.validate();
    const FieldPtr& F = M.field;

    std::map<std::string, int> offset;
    int total = 0;
    for (const auto& v : M.quiver.vertices) {
        offset[v] = total;
        total += N.dim_of(v) * M.dim_of(v);
    }
    int rows = 0;
    for (const auto& a : M.quiver.arrows) rows += N.dim_of(a.target) * M.dim_of(a.source);

    Mat S(rows, total, F);
    int row = 0;
    auto var = [&](const std::string& v, int i, int j) {
        return offset.at(v) + i * M.dim_of(v) + j;  // phi_v[i][j]
    };
    for (const auto& a : M.quiver.arrows) {
        const Mat& Ma = M.map_of(a.id);
        const Mat& Na = N.map_of(a.id);
        int nb = N.dim_of(a.target), ma = M.dim_of(a.source);
        for (int i = 0; i < nb; ++i)
            for (int j = 0; j < ma; ++j) {
                // (phi_b * Ma)[i][j] - (Na * phi_a)[i][j] = 0
                for (int k = 0; k < M.dim_of(a.target); ++k)
                    S.at(row, var(a.target, i, k)) =
                        S.at(row, var(a.target, i, k)) + Ma.at(k, j);
                for (int k = 0; k < N.dim_of(a.source); ++k)
                    S.at(row, var(a.source, k, j)) =
                        S.at(row, var(a.source, k, j)) - Na.at(i, k);
                ++row;
            }
    }
    Mat K = S.kernel();
    std::vector<HomElement> out;
    for (int c = 0; c < K.cols(); ++c) {
        HomElement h;
        for (const auto& v : M.quiver.vertices) {
            Mat phi(N.dim_of(v), M.dim_of(v), F);
            for (int i = 0; i < N.dim_of(v); ++i)
                for (int j = 0; j < M.dim_of(v); ++j)
                    phi.at(i, j) = K.at(var(v, i, j), c);
            h.emplace(v, std::move(phi));
        }
        out.push_back(std::move(h));
    }
    return out;
}

struct ComplementResult {
    bool has = false;
    HomElement projection;  // module endomorphism with image N, identity on N
    SubRep complement;      // kernel of the projection
};

/// Searches for a module endomorphism pi of M with image inside N and
/// pi restricted to N the identity; the complement is its kernel.
inline ComplementResult has_complement(const Representation& M, const SubRep& N) {
    M.validate();
    if (!subrep_closed(M, N)) throw DomainError("subspaces are not arrow-closed");
    const FieldPtr& F = M.field;

    // unknowns X_v of shape k_v x d_v with pi_v = B_v X_v
    std::map<std::string, Mat> bases;
    std::map<std::string, int> offset;
    int total = 0;
    for (const auto& v : M.quiver.vertices) {
        Mat b = N.basis.count(v) ? N.basis.at(v) : Mat(M.dim_of(v), 0, F);
        offset[v] = total;
        total += b.cols() * M.dim_of(v);
        bases.emplace(v, std::move(b));
    }
    int rows = 0;
    for (const auto& a : M.quiver.arrows) rows += M.dim_of(a.target) * M.dim_of(a.source);
    for (const auto& v : M.quiver.vertices) rows += M.dim_of(v) * bases.at(v).cols();

    Mat S(rows, total, F);
    Mat rhs(rows, 1, F);
    int row = 0;
    auto var = [&](const std::string& v, int i, int j) {
        return offset.at(v) + i * M.dim_of(v) + j;  // X_v[i][j]
    };
    // commuting squares: B_b X_b Ma - Ma B_a X_a = 0
    for (const auto& a : M.quiver.arrows) {
        const Mat& Ma = M.map_of(a.id);
        const Mat& Bb = bases.at(a.target);
        const Mat& Ba = bases.at(a.source);
        Mat MaBa = Ma * Ba;
        for (int i = 0; i < M.dim_of(a.target); ++i)
            for (int j = 0; j < M.dim_of(a.source); ++j) {
                for (int k = 0; k < Bb.cols(); ++k)
                    for (int l = 0; l < M.dim_of(a.target); ++l)
                        S.at(row, var(a.target, k, l)) =
                            S.at(row, var(a.target, k, l)) + Bb.at(i, k) * Ma.at(l, j);
                for (int k = 0; k < Ba.cols(); ++k)
                    S.at(row, var(a.source, k, j)) =
                        S.at(row, var(a.source, k, j)) - MaBa.at(i, k);
                ++row;
            }
    }
    // identity on N: B_v X_v B_v = B_v
    for (const auto& v : M.quiver.vertices) {
        const Mat& B = bases.at(v);
        for (int i = 0; i < M.dim_of(v); ++i)
            for (int j = 0; j < B.cols(); ++j) {
                for (int k = 0; k < B.cols(); ++k)
                    for (int l = 0; l < M.dim_of(v); ++l)
                        S.at(row, var(v, k, l)) =
                            S.at(row, var(v, k, l)) + B.at(i, k) * B.at(l, j);
                rhs.at(row, 0) = B.at(i, j);
                ++row;
            }
    }
    ComplementResult res;
    auto sol = S.solve(rhs);
    if (!sol) return res;
    res.has = true;
    for (const auto& v : M.quiver.vertices) {
        const Mat& B = bases.at(v);
        Mat X(B.cols(), M.dim_of(v), F);
        for (int i = 0; i < X.rows(); ++i)
            for (int j = 0; j < X.cols(); ++j) X.at(i, j) = sol->at(var(v, i, j), 0);
        Mat pi = B * X;
        res.complement.basis.emplace(v, pi.kernel());
        res.projection.emplace(v, std::move(pi));
    }
    return res;
}

// ---------------------------------------------------------------------------
// simplicity

enum class Simplicity { Simple, NotSimple, Inconclusive };

struct SimplicityResult {
    Simplicity verdict;
    std::optional<SubRep> witness;  // proper nonzero subrepresentation
};

namespace detail {

inline GDQuiver opposite_quiver(const GDQuiver& q) {
    GDQuiver op = q;
    for (auto& a : op.arrows) std::swap(a.source, a.target);
    op.validate();
    return op;
}

inline Representation transpose_rep(const Representation& M) {
    Representation T;
    T.quiver = opposite_quiver(M.quiver);
    T.field = M.field;
    T.dims = M.dims;
    for (const auto& [id, m] : M.maps) T.maps.emplace(id, m.transpose());
    T.validate();
    return T;
}

// first proper subrepresentation generated by a single basis vector, if any
inline std::optional<SubRep> seed_witness(const Representation& M) {
    int total = M.total_dim();
    for (const auto& v : M.quiver.vertices) {
        for (int i = 0; i < M.dim_of(v); ++i) {
            Mat seed(M.dim_of(v), 1, M.field);
            seed.at(i, 0) = ExactScalar(Rat(1), M.field);
            SubRep N = generated_subrep(M, {{v, seed}});
            if (N.total_dim() < total) return N;
        }
    }
    return std::nullopt;
}

// annihilator of a subrepresentation of the transpose, pulled back to M
inline SubRep annihilator(const Representation& M, const SubRep& NT) {
    SubRep W;
    for (const auto& v : M.quiver.vertices) {
        Mat b = NT.basis.count(v) ? NT.basis.at(v) : Mat(M.dim_of(v), 0, M.field);
        W.basis.emplace(v, b.transpose().kernel());
    }
    return W;
}

inline SubRep endo_kernel(const Representation& M, const HomElement& phi) {
    SubRep K;
    for (const auto& v : M.quiver.vertices) K.basis.emplace(v, phi.at(v).kernel());
    return K;
}

inline bool is_scalar_endo(const Representation& M, const HomElement& phi,
                           ExactScalar* scalar_out = nullptr) {
    std::optional<ExactScalar> s;
    for (const auto& v : M.quiver.vertices) {
        const Mat& p = phi.at(v);
        for (int i = 0; i < p.rows(); ++i)
            for (int j = 0; j < p.cols(); ++j) {
                if (i == j) {
                    if (!s)
                        s = p.at(i, i);
                    else if (p.at(i, i) != *s)
                        return false;
                } else if (!p.at(i, j).is_zero()) {
                    return false;
                }
            }
    }
    if (s && scalar_out) *scalar_out = *s;
    return true;
}

}  // namespace detail

/// Simplicity test: a basis-vector seed generating a proper subrepresentation
/// (in M or in its transpose) is a counterexample; otherwise the endomorphism
/// algebra decides. One-dimensional End with all seeds generating means
/// simple; a non-scalar endomorphism yields a kernel witness when one of its
/// eigenvalues lies in the field, and the test is inconclusive otherwise.
inline SimplicityResult is_simple(const Representation& M) {
    M.validate();
    if (M.total_dim() == 0) throw DomainError("is_simple of the zero representation");

    if (auto w = detail::seed_witness(M)) return {Simplicity::NotSimple, w};
    Representation T = detail::transpose_rep(M);
    if (auto wt = detail::seed_witness(T)) {
        SubRep w = detail::annihilator(M, *wt);
        if (!subrep_closed(M, w) || w.total_dim() == 0 || w.total_dim() >= M.total_dim())
            throw DomainError("internal: transpose witness did not pull back");
        return {Simplicity::NotSimple, w};
    }

    auto endos = hom_space(M, M);
    if (endos.size() == 1) return {Simplicity::Simple, std::nullopt};

    for (const auto& phi : endos) {
        if (detail::is_scalar_endo(M, phi)) continue;
        SubRep K = detail::endo_kernel(M, phi);
        if (K.total_dim() > 0 && K.total_dim() < M.total_dim())
            return {Simplicity::NotSimple, K};
        // shift by an eigenvalue to force a kernel
        std::string v0;
        for (const auto& v : M.quiver.vertices)
            if (M.dim_of(v) > 0) {
                v0 = v;
                break;
            }
        auto cp = phi.at(v0).char_poly();
        bool rational = true;
        for (const auto& c : cp)
            if (!c.is_rational()) rational = false;
        if (!rational) continue;
        std::map<int, Rat> terms;
        for (std::size_t e = 0; e < cp.size(); ++e) terms[static_cast<int>(e)] = cp[e].rational_part();
        for (const auto& lam : roots_in_field(Polynomial::from_terms(terms), M.field)) {
            HomElement psi;
            bool zero = true;
            for (const auto& v : M.quiver.vertices) {
                Mat shifted = phi.at(v) - lam * Mat::identity(M.dim_of(v), M.field);
                if (!shifted.is_zero()) zero = false;
                psi.emplace(v, std::move(shifted));
            }
            if (zero) continue;
            SubRep K2 = detail::endo_kernel(M, psi);
            if (K2.total_dim() > 0 && K2.total_dim() < M.total_dim())
                return {Simplicity::NotSimple, K2};
        }
    }
    return {Simplicity::Inconclusive, std::nullopt};
}

/// Isomorphism of representations: dimension vectors must match and some
/// morphism must be invertible at every vertex. Basis morphisms and pairwise
/// combinations over a small grid are tried; for simple modules any nonzero
/// morphism is invertible, which the grid covers.
inline bool reps_isomorphic(const Representation& M, const Representation& N) {
    if (!(M.quiver == N.quiver) || !same_field(M.field, N.field)) return false;
    for (const auto& v : M.quiver.vertices)
        if (M.dim_of(v) != N.dim_of(v)) return false;
    auto homs = hom_space(M, N);
    if (homs.empty()) return M.total_dim() == 0;

    auto invertible_everywhere = [&](const HomElement& h) {
        for (const auto& v : M.quiver.vertices)
            if (M.dim_of(v) > 0 && h.at(v).det().is_zero()) return false;
        return true;
    };
    for (const auto& h : homs)
        if (invertible_everywhere(h)) return true;
    // low-degree combinations of pairs of basis morphisms
    for (std::size_t i = 0; i < homs.size(); ++i)
        for (std::size_t j = i + 1; j < homs.size(); ++j)
            for (int c = 1; c <= M.total_dim() + 1; ++c) {
                HomElement h;
                ExactScalar cc(Rat(c), M.field);
                for (const auto& v : M.quiver.vertices)
                    h.emplace(v, homs[i].at(v) + cc * homs[j].at(v));
                if (invertible_everywhere(h)) return true;
            }
    return false;
}

}  // namespace subreg
