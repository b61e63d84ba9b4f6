#pragma once

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "subreg/io.hpp"
#include "subreg/witness.hpp"

namespace subreg::cli {

namespace detail {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot read file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline CoxeterDiagram load_diagram(const std::string& path) {
    return io::parse_diagram(read_file(path));
}

inline FieldPtr parse_field_flag(const std::string& spec) {
    if (spec.empty()) return rationals();
    std::map<int, Rat> terms;
    std::stringstream ss(spec);
    std::string tok;
    int e = 0;
    while (std::getline(ss, tok, ',')) terms[e++] = rat_parse(tok);
    return make_field(Polynomial::from_terms(terms));
}

inline ExactScalar parse_scalar_flag(const std::string& spec, const FieldPtr& f) {
    if (spec.find(',') == std::string::npos) return ExactScalar(rat_parse(spec), f);
    std::vector<Rat> coords;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) coords.push_back(rat_parse(tok));
    return ExactScalar::from_coords(std::move(coords), f);
}

inline Weight parse_weight_flag(const std::string& spec) {
    if (spec == "inf") return Weight::infinity();
    try {
        return Weight::finite(std::stol(spec));
    } catch (const std::exception&) {
        throw DomainError("malformed weight '" + spec + "'");
    }
}

struct Ctx {
    std::string diagram_path;
    std::string rep_path;
    std::string word;
    std::string lhs, rhs;
    std::string element_path;
    std::string arrow;
    std::string family = "power";
    std::string format = "text";
    std::string field_spec;
    std::string x_spec = "1";
    std::string kind = "nonsemisimple";
    std::string edge_u, edge_v;
    std::string attach;
    std::string weight_spec;
    int max_len = 10;
    bool core = false;
    bool keep_loop = false;
    bool structured() const { return format == "structured"; }
};

inline void emit(std::ostream& out, const io::json& j) { out << j.dump(2) << "\n"; }

}  // namespace detail

/// Executes one subcommand. Returns 0 on success, 1 on usage errors, 2 on
/// domain errors.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact computations in cell rings of Coxeter diagrams via quiver path algebras"};
    app.require_subcommand(1);
    detail::Ctx c;

    auto add_common = [&](CLI::App* sub, bool with_family = false) {
        sub->add_option("--format", c.format, "output format: text or structured")
            ->check(CLI::IsMember({"text", "structured"}));
        if (with_family)
            sub->add_option("--family", c.family, "polynomial family: chebyshev or power")
                ->check(CLI::IsMember({"chebyshev", "power"}));
    };

    auto* cell = app.add_subcommand("cell", "enumerate rigid words up to a length cap");
    cell->add_option("--diagram", c.diagram_path)->required();
    cell->add_option("--max-len", c.max_len);
    add_common(cell);

    auto* rigid = app.add_subcommand("rigid", "test whether a word is rigid");
    rigid->add_option("--diagram", c.diagram_path)->required();
    rigid->add_option("--word", c.word)->required();
    add_common(rigid);

    auto* mul = app.add_subcommand("mul", "product of two basis elements of the cell ring");
    mul->add_option("--diagram", c.diagram_path)->required();
    mul->add_option("--lhs", c.lhs)->required();
    mul->add_option("--rhs", c.rhs)->required();
    add_common(mul);

    auto* quiver = app.add_subcommand("quiver", "emit the double quiver of a diagram");
    quiver->add_option("--diagram", c.diagram_path)->required();
    add_common(quiver);

    auto* nf = app.add_subcommand("nf", "normal form in the path-algebra quotient");
    nf->add_option("--diagram", c.diagram_path)->required();
    nf->add_option("--word", c.word, "path given by its vertex word");
    nf->add_option("--element", c.element_path, "path of a JSON element file");
    add_common(nf, true);

    auto* phi_cmd = app.add_subcommand("phi", "map a path-algebra element into the cell ring");
    phi_cmd->add_option("--diagram", c.diagram_path)->required();
    phi_cmd->add_option("--word", c.word, "path given by its vertex word");
    phi_cmd->add_option("--element", c.element_path, "path of a JSON element file");
    phi_cmd->add_option("--family", c.family)->check(CLI::IsMember({"chebyshev", "power"}));
    phi_cmd->add_option("--format", c.format)->check(CLI::IsMember({"text", "structured"}));

    auto* con = app.add_subcommand("contract", "contract a dual pair, or fully reduce with --core");
    con->add_option("--diagram", c.diagram_path)->required();
    con->add_option("--arrow", c.arrow, "arrow id of the pair to contract");
    con->add_flag("--core", c.core, "contract until no contractible pair remains");
    con->add_flag("--keep-loop", c.keep_loop, "keep the weight-3 loop in single-step mode");
    add_common(con);

    auto* present = app.add_subcommand("present", "presentation of a one-vertex quiver");
    present->add_option("--diagram", c.diagram_path)->required();
    present->add_flag("--core", c.core, "contract to the core first");
    add_common(present, true);

    auto* cls = app.add_subcommand("classify", "module-category classification of a diagram");
    cls->add_option("--diagram", c.diagram_path)->required();
    add_common(cls);

    auto* rcheck = app.add_subcommand("rep-check", "verify the defining relations of a representation");
    rcheck->add_option("--rep", c.rep_path)->required();
    add_common(rcheck, true);

    auto* rdec = app.add_subcommand("rep-decompose", "decompose a module of a dihedral quotient");
    rdec->add_option("--rep", c.rep_path)->required();
    add_common(rdec, true);

    auto* rsimp = app.add_subcommand("rep-simple", "simplicity test for a representation");
    rsimp->add_option("--rep", c.rep_path)->required();
    add_common(rsimp);

    auto* wit = app.add_subcommand("witness", "non-semisimple witness or simple-family member");
    wit->add_option("--diagram", c.diagram_path)->required();
    wit->add_option("--kind", c.kind)->check(CLI::IsMember({"nonsemisimple", "simple-family"}));
    wit->add_option("--x", c.x_spec, "scalar parameter, e.g. 2 or 3/2 or coords c0,c1");
    wit->add_option("--field", c.field_spec, "extension modulus coefficients c0,c1,...,1");
    add_common(wit);

    try {
        std::vector<std::string> argv = args;
        std::reverse(argv.begin(), argv.end());
        app.parse(argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            std::ostringstream help;
            int code = app.exit(e, help, help);
            out << help.str();
            return code;
        }
        err << "usage error: " << e.what() << "\n";
        return 1;
    }

    try {
        if (cell->parsed()) {
            auto d = detail::load_diagram(c.diagram_path);
            auto words = enumerate_cell(d, c.max_len);
            if (c.structured()) {
                io::json arr = io::json::array();
                for (const auto& w : words) arr.push_back(render_word(w, d));
                detail::emit(out, arr);
            } else {
                for (const auto& w : words) out << render_word(w, d) << "\n";
            }
        } else if (rigid->parsed()) {
            auto d = detail::load_diagram(c.diagram_path);
            bool r = is_rigid(parse_word(c.word, d), d);
            if (c.structured())
                detail::emit(out, io::json{{"rigid", r}});
            else
                out << (r ? "true" : "false") << "\n";
        } else if (mul->parsed()) {
            auto d = detail::load_diagram(c.diagram_path);
            Word x = parse_word(c.lhs, d), y = parse_word(c.rhs, d);
            JElement p = subreg::mul(jel_basis(x), jel_basis(y), d);
            if (c.structured())
                detail::emit(out, io::jelement_to_json(p, d));
            else
                out << io::jelement_to_text(p, d);
        } else if (quiver->parsed()) {
            auto d = detail::load_diagram(c.diagram_path);
            GDQuiver q = double_quiver(d);
            if (c.structured())
                detail::emit(out, io::quiver_to_json(q));
            else
                out << io::quiver_to_text(q);
        } else if (nf->parsed() || phi_cmd->parsed()) {
            auto d = detail::load_diagram(c.diagram_path);
            GDQuiver q = double_quiver(d);
            AlgebraElement x;
            if (!c.word.empty()) {
                Path p = word_to_path(parse_word(c.word, d), d, q);
                alg_add(x, p, Rat(1));
            } else if (!c.element_path.empty()) {
                x = io::algebra_from_json(io::json::parse(detail::read_file(c.element_path)), q);
            } else {
                throw DomainError("provide --word or --element");
            }
            // the ring map exists for the chebyshev family only, so that is
            // its default; an explicit other family is a domain error
            FamilyKind fam = (phi_cmd->parsed() && phi_cmd->count("--family") == 0)
                                 ? FamilyKind::Chebyshev
                                 : family_from_name(c.family);
            if (nf->parsed()) {
                AlgebraElement r = normal_form(x, fam, q);
                if (c.structured())
                    detail::emit(out, io::algebra_to_json(r));
                else
                    out << io::algebra_to_text(r);
            } else {
                if (fam != FamilyKind::Chebyshev)
                    throw DomainError("phi is defined for the chebyshev family only");
                JElement r = phi(normal_form(x, fam, q), q, d);
                if (c.structured())
                    detail::emit(out, io::jelement_to_json(r, d));
                else
                    out << io::jelement_to_text(r, d);
            }
        } else if (con->parsed()) {
            auto d = detail::load_diagram(c.diagram_path);
            GDQuiver q = double_quiver(d);
            GDQuiver result;
            ContractionTrace trace;
            if (c.core) {
                std::tie(result, trace) = contract_to_core(q);
            } else {
                if (c.arrow.empty()) throw DomainError("provide --arrow or --core");
                auto [r, step] = contract(q, c.arrow, !c.keep_loop);
                result = std::move(r);
                trace.push_back(std::move(step));
            }
            if (c.structured()) {
                detail::emit(out, io::json{{"quiver", io::quiver_to_json(result)},
                                           {"trace", io::trace_to_json(trace)}});
            } else {
                out << io::quiver_to_text(result);
                out << "steps: " << trace.size() << "\n";
            }
        } else if (present->parsed()) {
            auto d = detail::load_diagram(c.diagram_path);
            GDQuiver q = double_quiver(d);
            if (c.core) q = contract_to_core(q).first;
            Presentation p = presentation(q, family_from_name(c.family));
            if (c.structured())
                detail::emit(out, io::presentation_to_json(p));
            else
                out << p.text() << "\n";
        } else if (cls->parsed()) {
            auto d = detail::load_diagram(c.diagram_path);
            auto r = classify(d);
            if (c.structured())
                detail::emit(out, io::classification_to_json(r));
            else
                out << verdict_name(r.verdict) << "\n";
        } else if (rcheck->parsed()) {
            auto m = io::rep_from_json(io::json::parse(detail::read_file(c.rep_path)));
            auto report = check_representation(m, family_from_name(c.family));
            if (c.structured()) {
                io::json res = io::json::object();
                for (const auto& [id, mat] : report.residuals) res[id] = io::matrix_to_json(mat);
                detail::emit(out, io::json{{"pass", report.pass}, {"residuals", res}});
            } else {
                out << (report.pass ? "pass" : "fail") << "\n";
                if (!report.pass)
                    for (const auto& [id, mat] : report.residuals)
                        if (!mat.is_zero()) out << id << ": " << mat.str() << "\n";
            }
        } else if (rdec->parsed()) {
            auto m = io::rep_from_json(io::json::parse(detail::read_file(c.rep_path)));
            auto dec = decompose_dihedral(m, family_from_name(c.family));
            if (c.structured()) {
                io::json arr = io::json::array();
                for (const auto& [s, k] : dec)
                    arr.push_back({{"simple", io::rep_to_json(s)}, {"multiplicity", k}});
                detail::emit(out, arr);
            } else {
                if (dec.empty()) out << "0\n";
                for (const auto& [s, k] : dec) {
                    std::string label;
                    if (s.total_dim() == 1) {
                        for (const auto& v : s.quiver.vertices)
                            if (s.dim_of(v) == 1) label = "S(" + v + ")";
                    } else {
                        label = "M(" + s.maps.at(s.quiver.arrows[1].id).at(0, 0).str() + ")";
                    }
                    out << label << " x " << k << "\n";
                }
            }
        } else if (rsimp->parsed()) {
            auto m = io::rep_from_json(io::json::parse(detail::read_file(c.rep_path)));
            auto r = is_simple(m);
            std::string v = r.verdict == Simplicity::Simple
                                ? "simple"
                                : (r.verdict == Simplicity::NotSimple ? "not_simple" : "inconclusive");
            if (c.structured()) {
                io::json j{{"verdict", v}};
                if (r.witness) {
                    io::json dims = io::json::object();
                    for (const auto& [vx, b] : r.witness->basis) dims[vx] = b.cols();
                    j["witness_dims"] = dims;
                }
                detail::emit(out, j);
            } else {
                out << v << "\n";
            }
        } else if (wit->parsed()) {
            auto d = detail::load_diagram(c.diagram_path);
            FieldPtr F = detail::parse_field_flag(c.field_spec);
            ExactScalar x = detail::parse_scalar_flag(c.x_spec, F);
            Representation m = c.kind == "nonsemisimple" ? witness_nonsemisimple(d, x)
                                                         : simple_family_member(d, x);
            detail::emit(out, io::rep_to_json(m));
        }
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const io::json::exception& e) {
        err << "error: malformed input: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

}  // namespace subreg::cli
