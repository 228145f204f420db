#ifndef CYCSOS_IO_HPP
#define CYCSOS_IO_HPP

#include <fstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "cycsos/certify.hpp"
#include "cycsos/gram.hpp"
#include "cycsos/ncpoly.hpp"
#include "cycsos/refute.hpp"

namespace cycsos {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// polynomials
// ---------------------------------------------------------------------------

inline json poly_to_json(const NCPoly& p) {
    json terms = json::array();
    for (const auto& [w, c] : p.terms())
        terms.push_back({{"coef", to_string(c)}, {"word", render_word(w, p.ring())}});
    return {{"ring", ring_name(p.ring())}, {"terms", terms}};
}

inline NCPoly poly_from_json(const json& j) {
    NCPoly p(parse_ring(j.at("ring").get<std::string>()));
    for (const auto& t : j.at("terms"))
        p.add_term(Word::parse(t.at("word").get<std::string>()),
                   parse_rational(t.at("coef").get<std::string>()));
    return p;
}

// ---------------------------------------------------------------------------
// certificates: {ring, target: [m, k], items: [{weight, poly}]}
// ---------------------------------------------------------------------------

inline json certificate_to_json(const SOSCertificate& cert) {
    json items = json::array();
    for (const auto& [w, f] : cert.items)
        items.push_back({{"weight", to_string(w)}, {"poly", poly_to_json(f)}});
    return {{"ring", ring_name(cert.ring)},
            {"target", {cert.m, cert.k}},
            {"items", items}};
}

inline SOSCertificate certificate_from_json(const json& j) {
    SOSCertificate cert;
    cert.ring = parse_ring(j.at("ring").get<std::string>());
    cert.m = j.at("target").at(0).get<std::size_t>();
    cert.k = j.at("target").at(1).get<std::size_t>();
    for (const auto& it : j.at("items"))
        cert.items.emplace_back(parse_rational(it.at("weight").get<std::string>()),
                                poly_from_json(it.at("poly")));
    return cert;
}

// ---------------------------------------------------------------------------
// basis settings
// ---------------------------------------------------------------------------

inline json setting_to_json(const BasisSetting& s) {
    if (s.kind == BasisSetting::Kind::SqrtXY)
        return {{"kind", "SqrtXY"}, {"k", s.k}, {"l", s.l}};
    return {{"kind", "PlainAB"}, {"m", s.m}, {"k", s.k}};
}

inline BasisSetting setting_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "SqrtXY")
        return BasisSetting::sqrt_xy(j.at("k").get<std::int64_t>(),
                                     j.at("l").get<std::int64_t>());
    if (kind == "PlainAB")
        return BasisSetting::plain_ab(j.at("m").get<std::int64_t>(),
                                      j.at("k").get<std::int64_t>());
    throw std::invalid_argument("unknown basis setting kind: " + kind);
}

// ---------------------------------------------------------------------------
// constraint systems: {basis: {setting, words}, equations, orbits}
// ---------------------------------------------------------------------------

inline json constraints_to_json(const GramConstraintSystem& sys) {
    json words;
    for (auto b : {Block::Z, Block::ZX, Block::ZY}) {
        json list = json::array();
        for (const Word& w : sys.basis.block_words(b)) list.push_back(w.str());
        words[block_name(b)] = list;
    }
    json equations = json::array();
    for (const auto& eq : sys.equations) {
        json entries = json::array();
        for (const auto& e : eq.entries)
            entries.push_back({block_name(e.block), e.i, e.j});
        equations.push_back({{"class_rep", eq.class_rep.str()},
                             {"rhs", to_string(eq.rhs)},
                             {"entries", entries}});
    }
    return {{"basis", {{"setting", setting_to_json(sys.basis.setting)}, {"words", words}}},
            {"equations", equations},
            {"orbits", sys.orbits}};
}

// ---------------------------------------------------------------------------
// QPoly: [{coef, monomial: {var: exp}}]
// ---------------------------------------------------------------------------

inline json qpoly_to_json(const QPoly& p) {
    json terms = json::array();
    for (const auto& [m, c] : p.terms()) {
        json mono = json::object();
        for (const auto& [v, e] : m) mono[v] = e;
        terms.push_back({{"coef", to_string(c)}, {"monomial", mono}});
    }
    return terms;
}

inline QPoly qpoly_from_json(const json& j) {
    QPoly p;
    for (const auto& t : j) {
        QPoly::Monomial m;
        for (const auto& [v, e] : t.at("monomial").items()) m[v] = e.get<int>();
        p.add(std::move(m), parse_rational(t.at("coef").get<std::string>()));
    }
    return p;
}

// ---------------------------------------------------------------------------
// refutation traces
// ---------------------------------------------------------------------------

inline json statement_to_json(const Statement& s) {
    return {{"rel", s.rel == Statement::Rel::Eq ? "eq" : "ge"},
            {"expr", qpoly_to_json(s.expr)},
            {"text", s.str()}};
}

inline Statement statement_from_json(const json& j) {
    Statement s;
    const std::string rel = j.at("rel").get<std::string>();
    if (rel == "eq") s.rel = Statement::Rel::Eq;
    else if (rel == "ge") s.rel = Statement::Rel::Ge;
    else throw std::invalid_argument("unknown relation: " + rel);
    s.expr = qpoly_from_json(j.at("expr"));
    return s;
}

inline json trace_to_json(const RefutationTrace& trace) {
    json steps = json::array();
    for (const auto& s : trace.steps) {
        json js = {{"id", s.id},
                   {"kind", step_kind_name(s.kind)},
                   {"statement", statement_to_json(s.stmt)},
                   {"uses", s.uses}};
        switch (s.kind) {
            case StepKind::ClassEquation:
                js["class_rep"] = s.class_rep.str();
                break;
            case StepKind::StarSymmetry:
            case StepKind::SigmaSymmetry:
                js["var_a"] = s.var_a;
                js["var_b"] = s.var_b;
                break;
            case StepKind::Elimination:
                if (s.elim_mode == TraceStep::ElimMode::LinearCombo) {
                    js["mode"] = "linear_combo";
                    json combo = json::array();
                    for (const auto& c : s.combo) combo.push_back(to_string(c));
                    js["combo"] = combo;
                } else {
                    js["mode"] = "factor_cancel";
                    js["factor"] = qpoly_to_json(s.factor);
                    json fc = json::array();
                    for (const auto& c : s.factor_combo) fc.push_back(to_string(c));
                    js["factor_combo"] = fc;
                    js["factor_const"] = to_string(s.factor_const);
                }
                break;
            case StepKind::KernelPropagation: {
                json block = json::array();
                for (const Word& w : s.kp_block) block.push_back(w.str());
                json kernel = json::array();
                for (const auto& c : s.kp_kernel) kernel.push_back(to_string(c));
                js["block"] = block;
                js["split"] = s.kp_split;
                js["kernel"] = kernel;
                js["row"] = s.kp_row.str();
                break;
            }
            case StepKind::MinorAnalysis: {
                json words = json::array();
                for (const Word& w : s.minor_words) words.push_back(w.str());
                json entries = json::array();
                for (const auto& row : s.minor_entries) {
                    json jr = json::array();
                    for (const auto& e : row) jr.push_back(qpoly_to_json(e));
                    entries.push_back(jr);
                }
                js["words"] = words;
                js["entries"] = entries;
                break;
            }
        }
        steps.push_back(std::move(js));
    }

    const Conclusion& c = trace.conclusion;
    json jc = {{"uses", c.uses}};
    if (c.kind == Conclusion::Kind::NegativeWitness) {
        jc["kind"] = "negative_witness";
        json words = json::array();
        for (const Word& w : c.submatrix_words) words.push_back(w.str());
        json sub = json::array();
        for (const auto& row : c.submatrix) {
            json jr = json::array();
            for (const auto& v : row) jr.push_back(to_string(v));
            sub.push_back(jr);
        }
        json wit = json::array();
        for (const auto& v : c.witness) wit.push_back(to_string(v));
        jc["words"] = words;
        jc["submatrix"] = sub;
        jc["witness"] = wit;
        jc["value"] = to_string(c.value);
    } else {
        jc["kind"] = "unsat_inequality";
        json prods = json::array();
        for (const auto& [coef, ids] : c.products)
            prods.push_back({{"coef", to_string(coef)}, {"steps", ids}});
        jc["products"] = prods;
        jc["quadratic"] = qpoly_to_json(c.unsat_quad);
    }

    return {{"target", {trace.target_m, trace.target_k}},
            {"setting", setting_to_json(trace.setting)},
            {"steps", steps},
            {"conclusion", jc}};
}

inline RefutationTrace trace_from_json(const json& j) {
    RefutationTrace trace;
    trace.target_m = j.at("target").at(0).get<std::size_t>();
    trace.target_k = j.at("target").at(1).get<std::size_t>();
    trace.setting = setting_from_json(j.at("setting"));
    for (const auto& js : j.at("steps")) {
        TraceStep s;
        s.id = js.at("id").get<int>();
        s.kind = parse_step_kind(js.at("kind").get<std::string>());
        s.stmt = statement_from_json(js.at("statement"));
        s.uses = js.at("uses").get<std::vector<int>>();
        switch (s.kind) {
            case StepKind::ClassEquation:
                s.class_rep = Word::parse(js.at("class_rep").get<std::string>());
                break;
            case StepKind::StarSymmetry:
            case StepKind::SigmaSymmetry:
                s.var_a = js.at("var_a").get<std::string>();
                s.var_b = js.at("var_b").get<std::string>();
                break;
            case StepKind::Elimination:
                if (js.at("mode").get<std::string>() == "linear_combo") {
                    s.elim_mode = TraceStep::ElimMode::LinearCombo;
                    for (const auto& c : js.at("combo"))
                        s.combo.push_back(parse_rational(c.get<std::string>()));
                } else {
                    s.elim_mode = TraceStep::ElimMode::FactorCancel;
                    s.factor = qpoly_from_json(js.at("factor"));
                    for (const auto& c : js.at("factor_combo"))
                        s.factor_combo.push_back(parse_rational(c.get<std::string>()));
                    s.factor_const = parse_rational(js.at("factor_const").get<std::string>());
                }
                break;
            case StepKind::KernelPropagation:
                for (const auto& w : js.at("block"))
                    s.kp_block.push_back(Word::parse(w.get<std::string>()));
                s.kp_split = js.at("split").get<std::size_t>();
                for (const auto& c : js.at("kernel"))
                    s.kp_kernel.push_back(parse_rational(c.get<std::string>()));
                s.kp_row = Word::parse(js.at("row").get<std::string>());
                break;
            case StepKind::MinorAnalysis:
                for (const auto& w : js.at("words"))
                    s.minor_words.push_back(Word::parse(w.get<std::string>()));
                for (const auto& row : js.at("entries")) {
                    std::vector<QPoly> r;
                    for (const auto& e : row) r.push_back(qpoly_from_json(e));
                    s.minor_entries.push_back(std::move(r));
                }
                break;
        }
        trace.steps.push_back(std::move(s));
    }

    const json& jc = j.at("conclusion");
    Conclusion& c = trace.conclusion;
    c.uses = jc.at("uses").get<std::vector<int>>();
    if (jc.at("kind").get<std::string>() == "negative_witness") {
        c.kind = Conclusion::Kind::NegativeWitness;
        for (const auto& w : jc.at("words"))
            c.submatrix_words.push_back(Word::parse(w.get<std::string>()));
        for (const auto& row : jc.at("submatrix")) {
            std::vector<Rational> r;
            for (const auto& v : row) r.push_back(parse_rational(v.get<std::string>()));
            c.submatrix.push_back(std::move(r));
        }
        for (const auto& v : jc.at("witness"))
            c.witness.push_back(parse_rational(v.get<std::string>()));
        c.value = parse_rational(jc.at("value").get<std::string>());
    } else {
        c.kind = Conclusion::Kind::UnsatInequality;
        for (const auto& p : jc.at("products"))
            c.products.emplace_back(parse_rational(p.at("coef").get<std::string>()),
                                    p.at("steps").get<std::vector<int>>());
        c.unsat_quad = qpoly_from_json(jc.at("quadratic"));
    }
    return trace;
}

// ---------------------------------------------------------------------------
// files
// ---------------------------------------------------------------------------

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    json j;
    in >> j;
    return j;
}

inline void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << "\n";
}

}  // namespace cycsos

#endif
