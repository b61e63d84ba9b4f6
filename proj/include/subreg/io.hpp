#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "subreg/classify.hpp"
#include "subreg/contract.hpp"
#include "subreg/diagram.hpp"
#include "subreg/jring.hpp"
#include "subreg/quiver.hpp"
#include "subreg/rep.hpp"
#include "subreg/rewrite.hpp"

namespace subreg::io {

using nlohmann::json;

// ---------------------------------------------------------------------------
// weights

inline json weight_to_json(const Weight& w) {
    if (w.is_infinite()) return json("inf");
    return json(w.value());
}

inline Weight weight_from_json(const json& j) {
    if (j.is_string()) {
        if (j.get<std::string>() == "inf") return Weight::infinity();
        throw DomainError("malformed weight '" + j.get<std::string>() + "'");
    }
    if (j.is_number_integer()) return Weight::finite(j.get<long>());
    throw DomainError("malformed weight: expected integer or \"inf\"");
}

// ---------------------------------------------------------------------------
// diagrams

inline json diagram_to_json(const CoxeterDiagram& d) {
    json j;
    j["vertices"] = d.vertices();
    json edges = json::array();
    for (const auto& e : d.edges()) edges.push_back({e.u, e.v, weight_to_json(e.m)});
    j["edges"] = edges;
    return j;
}

inline CoxeterDiagram diagram_from_json(const json& j) {
    if (!j.is_object() || !j.contains("vertices") || !j.contains("edges"))
        throw DomainError("diagram must have 'vertices' and 'edges'");
    std::vector<std::string> vertices;
    for (const auto& v : j.at("vertices")) {
        if (!v.is_string()) throw DomainError("vertex names must be strings");
        vertices.push_back(v.get<std::string>());
    }
    std::vector<CoxeterDiagram::Edge> edges;
    for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 3)
            throw DomainError("each edge must be a [u, v, weight] triple");
        if (!e[0].is_string() || !e[1].is_string())
            throw DomainError("edge endpoints must be strings");
        edges.push_back({e[0].get<std::string>(), e[1].get<std::string>(), weight_from_json(e[2])});
    }
    return CoxeterDiagram::create(std::move(vertices), std::move(edges));
}

inline CoxeterDiagram parse_diagram(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw DomainError(std::string("malformed diagram file: ") + e.what());
    }
    return diagram_from_json(j);
}

// ---------------------------------------------------------------------------
// cell ring elements

inline json jelement_to_json(const JElement& x, const CoxeterDiagram& d) {
    json out = json::array();
    for (const auto& [w, c] : x)
        out.push_back({{"word", render_word(w, d)}, {"coeff", c.str()}});
    return out;
}

inline std::string jelement_to_text(const JElement& x, const CoxeterDiagram& d) {
    if (x.empty()) return "0\n";
    std::string out;
    for (const auto& [w, c] : x) out += render_word(w, d) + ": " + c.str() + "\n";
    return out;
}

// ---------------------------------------------------------------------------
// quivers and paths

inline json quiver_to_json(const GDQuiver& q) {
    json j;
    j["vertices"] = q.vertices;
    json arrows = json::array();
    for (const auto& a : q.arrows)
        arrows.push_back({{"id", a.id}, {"source", a.source}, {"target", a.target}});
    j["arrows"] = arrows;
    json dual = json::object(), weights = json::object();
    for (const auto& a : q.arrows) {
        dual[a.id] = q.dual.at(a.id);
        weights[a.id] = weight_to_json(q.weight.at(a.id));
    }
    j["dual"] = dual;
    j["weights"] = weights;
    return j;
}

inline GDQuiver quiver_from_json(const json& j) {
    GDQuiver q;
    if (!j.is_object()) throw DomainError("quiver must be an object");
    for (const auto& v : j.at("vertices")) q.vertices.push_back(v.get<std::string>());
    for (const auto& a : j.at("arrows"))
        q.arrows.push_back({a.at("id").get<std::string>(), a.at("source").get<std::string>(),
                            a.at("target").get<std::string>()});
    for (const auto& [k, v] : j.at("dual").items()) q.dual[k] = v.get<std::string>();
    for (const auto& [k, v] : j.at("weights").items()) q.weight[k] = weight_from_json(v);
    q.validate();
    return q;
}

inline std::string quiver_to_text(const GDQuiver& q) {
    std::string out = "vertices:";
    for (const auto& v : q.vertices) out += " " + v;
    out += "\n";
    for (const auto& a : q.arrows) {
        out += a.id + ": " + a.source + " -> " + a.target + "  (dual " + q.dual.at(a.id) +
               ", weight " + q.weight.at(a.id).str() + ")\n";
    }
    return out;
}

inline json path_to_json(const Path& p) {
    if (p.stationary()) return json("e:" + p.start);
    json out = json::array();
    for (const auto& id : p.arrows) out.push_back(id);
    return out;
}

inline Path path_from_json(const json& j, const GDQuiver& q) {
    if (j.is_string()) {
        std::string s = j.get<std::string>();
        if (s.rfind("e:", 0) != 0) throw DomainError("stationary path must look like \"e:<vertex>\"");
        Path p = Path::at(s.substr(2));
        p.check(q);
        return p;
    }
    std::vector<std::string> ids;
    for (const auto& a : j) ids.push_back(a.get<std::string>());
    return Path::of(q, std::move(ids));
}

inline json algebra_to_json(const AlgebraElement& x) {
    json out = json::array();
    for (const auto& [p, c] : x)
        out.push_back({{"path", path_to_json(p)}, {"coeff", rat_str(c)}});
    return out;
}

inline AlgebraElement algebra_from_json(const json& j, const GDQuiver& q) {
    AlgebraElement out;
    for (const auto& t : j)
        alg_add(out, path_from_json(t.at("path"), q), rat_parse(t.at("coeff").get<std::string>()));
    return out;
}

inline std::string algebra_to_text(const AlgebraElement& x) {
    if (x.empty()) return "0\n";
    std::string out;
    for (const auto& [p, c] : x) {
        std::string ps = p.stationary() ? "e:" + p.start : "";
        for (std::size_t i = 0; i < p.arrows.size(); ++i)
            ps += (i ? " " : "") + p.arrows[i];
        out += ps + ": " + rat_str(c) + "\n";
    }
    return out;
}

// ---------------------------------------------------------------------------
// contraction traces and presentations

inline json trace_step_to_json(const ContractionStep& s) {
    return json{{"arrow", s.arrow},
                {"dual", s.dual_arrow},
                {"merged", {s.merged_a, s.merged_b}},
                {"new_vertex", s.new_vertex},
                {"weight", weight_to_json(s.pair_weight)},
                {"vertex_rename", s.vertex_rename},
                {"arrow_rename", s.arrow_rename},
                {"loop_elided", s.loop_elided},
                {"loop", s.loop_id}};
}

inline ContractionStep trace_step_from_json(const json& j) {
    ContractionStep s;
    s.arrow = j.at("arrow").get<std::string>();
    s.dual_arrow = j.at("dual").get<std::string>();
    s.merged_a = j.at("merged")[0].get<std::string>();
    s.merged_b = j.at("merged")[1].get<std::string>();
    s.new_vertex = j.at("new_vertex").get<std::string>();
    s.pair_weight = weight_from_json(j.at("weight"));
    for (const auto& [k, v] : j.at("vertex_rename").items()) s.vertex_rename[k] = v.get<std::string>();
    for (const auto& [k, v] : j.at("arrow_rename").items()) s.arrow_rename[k] = v.get<std::string>();
    s.loop_elided = j.at("loop_elided").get<bool>();
    s.loop_id = j.at("loop").get<std::string>();
    return s;
}

inline json trace_to_json(const ContractionTrace& t) {
    json out = json::array();
    for (const auto& s : t) out.push_back(trace_step_to_json(s));
    return out;
}

inline ContractionTrace trace_from_json(const json& j) {
    ContractionTrace t;
    for (const auto& s : j) t.push_back(trace_step_from_json(s));
    return t;
}

inline json presentation_to_json(const Presentation& p) {
    return json{{"generators", p.generators},
                {"generator_of_arrow", p.generator_of_arrow},
                {"relations", p.relations},
                {"annotation", p.annotation},
                {"text", p.text()}};
}

// ---------------------------------------------------------------------------
// fields, scalars, matrices, representations

inline json field_to_json(const FieldPtr& f) {
    if (!f) return json(nullptr);
    json coeffs = json::array();
    for (int e = 0; e <= f->degree(); ++e) coeffs.push_back(rat_str(f->modulus().coeff(e)));
    return json{{"modulus", coeffs}};
}

inline FieldPtr field_from_json(const json& j) {
    if (j.is_null()) return rationals();
    std::map<int, Rat> terms;
    int e = 0;
    for (const auto& c : j.at("modulus")) terms[e++] = rat_parse(c.get<std::string>());
    return make_field(Polynomial::from_terms(terms));
}

inline json scalar_to_json(const ExactScalar& s) {
    if (!s.field()) return json(rat_str(s.rational_part()));
    json out = json::array();
    for (const auto& c : s.coords()) out.push_back(rat_str(c));
    return out;
}

inline ExactScalar scalar_from_json(const json& j, const FieldPtr& f) {
    if (j.is_string()) return ExactScalar(rat_parse(j.get<std::string>()), f);
    std::vector<Rat> coords;
    for (const auto& c : j) coords.push_back(rat_parse(c.get<std::string>()));
    return ExactScalar::from_coords(std::move(coords), f);
}

inline json matrix_to_json(const Mat& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(scalar_to_json(m.at(i, j)));
        rows.push_back(row);
    }
    return rows;
}

inline Mat matrix_from_json(const json& j, int rows, int cols, const FieldPtr& f) {
    Mat m(rows, cols, f);
    if (static_cast<int>(j.size()) != rows) throw DomainError("matrix row count mismatch");
    for (int i = 0; i < rows; ++i) {
        if (static_cast<int>(j[i].size()) != cols) throw DomainError("matrix column count mismatch");
        for (int c = 0; c < cols; ++c) m.at(i, c) = scalar_from_json(j[i][c], f);
    }
    return m;
}

inline constexpr const char* kMatrixConvention =
    "maps[arrow] has shape dim(target) x dim(source) and acts on column vectors; "
    "a path a1..an acts as M(an)*...*M(a1)";

inline json rep_to_json(const Representation& m) {
    json j;
    j["convention"] = kMatrixConvention;
    j["field"] = field_to_json(m.field);
    j["quiver"] = quiver_to_json(m.quiver);
    json dims = json::object();
    for (const auto& [v, k] : m.dims) dims[v] = k;
    j["dims"] = dims;
    json maps = json::object();
    for (const auto& [id, mat] : m.maps) maps[id] = matrix_to_json(mat);
    j["maps"] = maps;
    return j;
}

inline Representation rep_from_json(const json& j) {
    Representation m;
    m.field = field_from_json(j.at("field"));
    m.quiver = quiver_from_json(j.at("quiver"));
    for (const auto& [v, k] : j.at("dims").items()) m.dims[v] = k.get<int>();
    for (const auto& a : m.quiver.arrows) {
        const json& mat = j.at("maps").at(a.id);
        m.maps.emplace(a.id, matrix_from_json(mat, m.dims.at(a.target), m.dims.at(a.source), m.field));
    }
    m.validate();
    return m;
}

// ---------------------------------------------------------------------------
// classification

inline json classification_to_json(const ClassificationResult& r) {
    json comps = json::array();
    for (const auto& c : r.components) {
        json heavy = json::array(), inf = json::array();
        for (const auto& e : c.heavy_edges) heavy.push_back({e.u, e.v, weight_to_json(e.m)});
        for (const auto& e : c.infinite_edges) inf.push_back({e.u, e.v, weight_to_json(e.m)});
        comps.push_back({{"vertices", c.vertices},
                         {"verdict", verdict_name(c.verdict)},
                         {"is_tree", c.is_tree},
                         {"independent_cycles", c.independent_cycles},
                         {"heavy_edges", heavy},
                         {"infinite_edges", inf}});
    }
    json out{{"verdict", verdict_name(r.verdict)},
             {"finitely_many_simples", r.finitely_many_simples},
             {"reducible", r.reducible},
             {"components", comps}};
    if (r.reducible) out["combination_note"] = r.combination_note;
    return out;
}

}  // namespace subreg::io
