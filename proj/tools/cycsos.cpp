// Command-line surface: generation, cyclic-equivalence checks, certificate
// verification, refutation replay, table rendering, optimization runs and
// numerical feasibility.
//
// Exit codes: 0 success/verified/feasible-evidence, 2 refuted (verified
// trace), 3 certificate invalid, 4 trace re-check failed, 1 usage/internal
// error.

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "cycsos/certify.hpp"
#include "cycsos/extremum.hpp"
#include "cycsos/feasibility.hpp"
#include "cycsos/io.hpp"
#include "cycsos/refute.hpp"

namespace {

using namespace cycsos;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitRefuted = 2;
constexpr int kExitCertInvalid = 3;
constexpr int kExitTraceFailed = 4;

std::size_t thread_cap() {
    if (const char* env = std::getenv("CYCSOS_THREADS")) {
        long v = std::atol(env);
        if (v >= 1) return static_cast<std::size_t>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

std::pair<std::size_t, std::size_t> parse_mk(const std::string& s) {
    auto comma = s.find(',');
    if (comma == std::string::npos)
        throw CLI::ValidationError("--target", "expected m,k");
    return {std::stoull(s.substr(0, comma)), std::stoull(s.substr(comma + 1))};
}

int cmd_smk(std::size_t m, std::size_t k, const std::string& ring, bool as_json) {
    NCPoly p = smk(m, k, parse_ring(ring));
    if (as_json)
        std::cout << poly_to_json(p).dump(2) << "\n";
    else
        std::cout << to_string(p) << "\n";
    return kExitOk;
}

int cmd_cyceq(const std::string& lhs, const std::string& rhs, const std::string& ring,
              bool as_json) {
    RingTag tag = parse_ring(ring);
    NCPoly p = parse_poly(lhs, tag), q = parse_poly(rhs, tag);
    bool eq = cyc_equivalent(p, q);
    if (as_json)
        std::cout << json{{"equivalent", eq}}.dump(2) << "\n";
    else
        std::cout << (eq ? "cyclically equivalent" : "NOT cyclically equivalent") << "\n";
    return eq ? kExitOk : kExitError;
}

int report_certificate(const SOSCertificate& cert, const std::string& out, bool as_json) {
    VerifyReport rep = verify_certificate(cert);
    if (!out.empty()) write_json_file(out, certificate_to_json(cert));
    if (as_json) {
        json diffs = json::array();
        for (const auto& [w, expected, actual] : rep.diffs)
            diffs.push_back({{"class", w.str()},
                             {"expected", to_string(expected)},
                             {"actual", to_string(actual)}});
        std::cout << json{{"target", {cert.m, cert.k}},
                          {"items", cert.items.size()},
                          {"valid", rep.valid},
                          {"diffs", diffs}}
                         .dump(2)
                  << "\n";
    } else {
        std::cout << "certificate for S_{" << cert.m << "," << cert.k << "}: "
                  << (rep.valid ? "verified" : "INVALID") << " (" << cert.items.size()
                  << " items)\n";
        for (const auto& [w, expected, actual] : rep.diffs)
            std::cout << "  class " << w.str() << ": expected " << to_string(expected)
                      << ", got " << to_string(actual) << "\n";
    }
    return rep.valid ? kExitOk : kExitCertInvalid;
}

int cmd_certify(const std::string& lemma, std::size_t m, const std::string& check,
                const std::string& out, bool as_json) {
    if (!check.empty())
        return report_certificate(certificate_from_json(read_json_file(check)), out, as_json);
    SOSCertificate cert;
    if (lemma == "s4m,2")
        cert = lemma_s4m2(m);
    else if (lemma == "s4m+2,2")
        cert = lemma_s4m2p2(m);
    else if (lemma == "s4m+2,4")
        cert = prop_s4m2p4(m);
    else
        throw CLI::ValidationError("--lemma", "expected s4m,2 | s4m+2,2 | s4m+2,4");
    return report_certificate(cert, out, as_json);
}

void print_trace(const RefutationTrace& trace) {
    std::cout << "refutation of S_{" << trace.target_m << "," << trace.target_k
              << "}, setting " << trace.setting.str() << "\n";
    for (const auto& s : trace.steps) {
        std::cout << "  [" << s.id << "] " << step_kind_name(s.kind) << ": "
                  << s.stmt.str();
        if (!s.uses.empty()) {
            std::cout << "  (from";
            for (int u : s.uses) std::cout << " " << u;
            std::cout << ")";
        }
        std::cout << "\n";
    }
    const Conclusion& c = trace.conclusion;
    if (c.kind == Conclusion::Kind::NegativeWitness) {
        std::cout << "  conclusion: quadratic form value " << to_string(c.value)
                  << " < 0 on the {";
        for (std::size_t i = 0; i < c.submatrix_words.size(); ++i)
            std::cout << (i ? ", " : "") << c.submatrix_words[i].str();
        std::cout << "} compression\n";
    } else {
        std::cout << "  conclusion: " << c.unsat_quad.str()
                  << " <= 0 is unsatisfiable (negative discriminant)\n";
    }
}

int report_trace(const RefutationTrace& trace, const std::string& out, bool as_json) {
    TraceCheckResult chk = check_trace(trace);
    if (!out.empty()) write_json_file(out, trace_to_json(trace));
    if (as_json) {
        json j = trace_to_json(trace);
        j["verified"] = chk.ok;
        if (!chk.ok) j["error"] = chk.error;
        std::cout << j.dump(2) << "\n";
    } else {
        print_trace(trace);
        if (chk.ok)
            std::cout << "trace re-check: passed\n";
        else
            std::cout << "trace re-check FAILED: " << chk.error << "\n";
    }
    return chk.ok ? kExitRefuted : kExitTraceFailed;
}

int cmd_refute(const std::string& target, const std::string& check, const std::string& out,
               bool as_json) {
    if (!check.empty())
        return report_trace(trace_from_json(read_json_file(check)), out, as_json);
    auto [m, k] = parse_mk(target);
    RefutationTrace trace;
    if (m == 12 && k == 6) {
        trace = refute_s12_6();
    } else if (m == 8 && k == 4) {
        trace = refute_s84();
    } else {
        if (m % 2 != 0 || k % 2 != 0 || k >= m)
            throw CLI::ValidationError("--target", "expected even m,k with k < m");
        std::int64_t kk = static_cast<std::int64_t>(k / 2);
        std::int64_t ll = static_cast<std::int64_t>(m / 2) - kk;
        trace = refute_skl(kk, ll);  // rejects k < 3 or l < 5
    }
    return report_trace(trace, out, as_json);
}

int cmd_tables(int table, std::int64_t k, std::int64_t l) {
    std::cout << verify_table(table, k, l);
    return kExitOk;
}

int cmd_search(std::size_t m, std::size_t k, std::size_t n, std::uint64_t seed,
               std::size_t seeds, std::size_t iters, double tol, const std::string& field,
               const std::string& out, bool as_json) {
    MinimizeConfig cfg;
    cfg.max_iters = iters;
    cfg.tol = tol;
    cfg.real_field = field == "real";

    std::vector<json> records(seeds);
    std::vector<SearchState> states(seeds);
    std::size_t workers = std::min(thread_cap(), seeds == 0 ? std::size_t(1) : seeds);
    std::vector<std::thread> pool;
    std::size_t next = 0;
    std::mutex mu;
    auto work = [&] {
        for (;;) {
            std::size_t i;
            {
                std::lock_guard<std::mutex> lock(mu);
                if (next >= seeds) return;
                i = next++;
            }
            auto t0 = std::chrono::steady_clock::now();
            SearchState st = minimize_trace(m, k, n, seed + i, cfg);
            double ms = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - t0)
                            .count();
            NegDefReport rep = check_negdef_equiv(st.A, st.B, m, k);
            json rec = {{"seed", st.seed},       {"objective", st.objective},
                        {"residual_A", st.residual_A}, {"residual_B", st.residual_B},
                        {"max_eig", rep.max_eigenvalue}, {"converged", st.converged},
                        {"iters", st.iters},     {"wallclock_ms", ms}};
            records[i] = std::move(rec);
            states[i] = std::move(st);
        }
    };
    for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();

    // min by objective, ties by seed
    std::size_t best = 0;
    for (std::size_t i = 1; i < seeds; ++i)
        if (states[i].objective < states[best].objective ||
            (states[i].objective == states[best].objective &&
             states[i].seed < states[best].seed))
            best = i;

    if (!out.empty()) {
        std::ofstream f(out);
        for (const auto& r : records) f << r.dump() << "\n";
    }
    if (as_json) {
        std::cout << json{{"m", m},     {"k", k},       {"n", n},
                          {"runs", records}, {"best", records.empty() ? json() : records[best]}}
                         .dump(2)
                  << "\n";
    } else {
        for (const auto& r : records) std::cout << r.dump() << "\n";
        if (!records.empty())
            std::cout << "best objective " << states[best].objective << " (seed "
                      << states[best].seed << ", residual_A " << states[best].residual_A
                      << ")\n";
    }
    return kExitOk;
}

int cmd_feasibility(const std::string& target, const std::string& setting_spec, double tol,
                    std::size_t iters, bool as_json) {
    auto [m, k] = parse_mk(target);
    BasisSetting setting;
    if (setting_spec == "plain") {
        setting = BasisSetting::plain_ab(static_cast<std::int64_t>(m),
                                         static_cast<std::int64_t>(k));
    } else if (setting_spec == "sqrtxy") {
        if (m % 2 != 0 || k % 2 != 0)
            throw CLI::ValidationError("--setting", "sqrtxy needs even m and k");
        setting = BasisSetting::sqrt_xy(static_cast<std::int64_t>(k / 2),
                                        static_cast<std::int64_t>(m / 2 - k / 2));
    } else {
        throw CLI::ValidationError("--setting", "expected plain | sqrtxy");
    }
    FeasibilityConfig cfg;
    cfg.tol = tol;
    cfg.max_iters = iters;
    FeasibilityResult res = numerical_feasibility(m, k, setting, cfg);
    if (as_json) {
        std::cout << json{{"target", {m, k}},
                          {"setting", setting_to_json(setting)},
                          {"residual", res.residual},
                          {"iters", res.iters},
                          {"converged", res.converged}}
                         .dump(2)
                  << "\n";
    } else {
        std::cout << "S_{" << m << "," << k << "} over " << setting.str() << ": residual "
                  << res.residual << " after " << res.iters << " iterations"
                  << (res.converged ? " (feasibility evidence only, not a proof)"
                                    : " (stalled; evidence of nothing)")
                  << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cyclic sum-of-Hermitian-squares toolkit for S_{m,k}(A,B)"};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "machine-readable output");

    // smk
    auto* smk_cmd = app.add_subcommand("smk", "print S_{m,k}");
    std::size_t smk_m = 0, smk_k = 0;
    std::string smk_ring = "AB";
    smk_cmd->add_option("--m", smk_m, "degree")->required();
    smk_cmd->add_option("--k", smk_k, "B-count")->required();
    smk_cmd->add_option("--ring", smk_ring, "AB | XY");

    // cyceq
    auto* cyceq_cmd = app.add_subcommand("cyceq", "test cyclic equivalence of two polynomials");
    std::string lhs, rhs, cyceq_ring = "AB";
    cyceq_cmd->add_option("--lhs", lhs, "left polynomial")->required();
    cyceq_cmd->add_option("--rhs", rhs, "right polynomial")->required();
    cyceq_cmd->add_option("--ring", cyceq_ring, "AB | XY");

    // certify
    auto* certify_cmd = app.add_subcommand("certify", "build/verify SOS certificates");
    std::string lemma, cert_check, cert_out;
    std::size_t cert_m = 1;
    certify_cmd->add_option("--lemma", lemma, "s4m,2 | s4m+2,2 | s4m+2,4");
    certify_cmd->add_option("--m", cert_m, "family parameter m");
    certify_cmd->add_option("--check", cert_check, "re-verify a certificate JSON file");
    certify_cmd->add_option("--out", cert_out, "write certificate JSON here");

    // refute
    auto* refute_cmd = app.add_subcommand("refute", "construct/re-check refutation traces");
    std::string refute_target, refute_check, refute_out;
    refute_cmd->add_option("--target", refute_target, "m,k (12,6 | 8,4 | 2(k+l),2k)");
    refute_cmd->add_option("--check", refute_check, "re-check a trace JSON file");
    refute_cmd->add_option("--out", refute_out, "write trace JSON here");

    // tables
    auto* tables_cmd = app.add_subcommand("tables", "render factorization tables 1-8");
    int table = 1;
    std::int64_t tk = 3, tl = 5;
    tables_cmd->add_option("--table", table, "table number 1-8")->required();
    tables_cmd->add_option("--k", tk, "parameter k");
    tables_cmd->add_option("--l", tl, "parameter l");

    // search
    auto* search_cmd = app.add_subcommand("search", "projected-gradient trace minimization");
    std::size_t s_m = 8, s_k = 4, s_n = 3, s_seeds = 32, s_iters = 100000;
    std::uint64_t s_seed = 0;
    bool seed_given = false;
    double s_tol = 1e-8;
    std::string s_field = "complex", s_out;
    search_cmd->add_option("--m", s_m, "degree")->required();
    search_cmd->add_option("--k", s_k, "B-count")->required();
    search_cmd->add_option("--n", s_n, "matrix size");
    search_cmd->add_option("--seed", s_seed, "base RNG seed")->each([&](const std::string&) {
        seed_given = true;
    });
    search_cmd->add_option("--seeds", s_seeds, "number of starts");
    search_cmd->add_option("--iters", s_iters, "iteration budget per run");
    search_cmd->add_option("--tol", s_tol, "stationarity tolerance");
    search_cmd->add_option("--field", s_field, "complex | real");
    search_cmd->add_option("--out", s_out, "write per-run records (JSONL) here");
    search_cmd->add_option("--config", [&](const std::vector<std::string>& vals) {
        json j = read_json_file(vals.front());
        if (j.contains("m")) s_m = j["m"].get<std::size_t>();
        if (j.contains("k")) s_k = j["k"].get<std::size_t>();
        if (j.contains("n")) s_n = j["n"].get<std::size_t>();
        if (j.contains("seeds")) s_seeds = j["seeds"].get<std::size_t>();
        if (j.contains("iters")) s_iters = j["iters"].get<std::size_t>();
        if (j.contains("tol")) s_tol = j["tol"].get<double>();
        if (j.contains("field")) s_field = j["field"].get<std::string>();
        return true;
    }, "experiment config JSON {m,k,n,seeds,iters,tol,field}");

    // feasibility
    auto* feas_cmd = app.add_subcommand("feasibility", "alternating-projection feasibility");
    std::string f_target, f_setting = "plain";
    double f_tol = 1e-9;
    std::size_t f_iters = 100000;
    feas_cmd->add_option("--target", f_target, "m,k")->required();
    feas_cmd->add_option("--setting", f_setting, "plain | sqrtxy");
    feas_cmd->add_option("--tol", f_tol, "residual tolerance");
    feas_cmd->add_option("--iters", f_iters, "iteration budget");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // normalize CLI11's exit codes: 0 for --help, 1 for usage errors
        return app.exit(e) == 0 ? kExitOk : kExitError;
    }

    try {
        if (smk_cmd->parsed()) return cmd_smk(smk_m, smk_k, smk_ring, as_json);
        if (cyceq_cmd->parsed()) return cmd_cyceq(lhs, rhs, cyceq_ring, as_json);
        if (certify_cmd->parsed())
            return cmd_certify(lemma, cert_m, cert_check, cert_out, as_json);
        if (refute_cmd->parsed()) {
            if (refute_target.empty() && refute_check.empty())
                throw CLI::ValidationError("refute", "need --target or --check");
            return cmd_refute(refute_target, refute_check, refute_out, as_json);
        }
        if (tables_cmd->parsed()) return cmd_tables(table, tk, tl);
        if (search_cmd->parsed()) {
            if (as_json && !seed_given) {
                std::cerr << "search --json requires an explicit --seed\n";
                return kExitError;
            }
            return cmd_search(s_m, s_k, s_n, s_seed, s_seeds, s_iters, s_tol, s_field, s_out,
                              as_json);
        }
        if (feas_cmd->parsed())
            return cmd_feasibility(f_target, f_setting, f_tol, f_iters, as_json);
    } catch (const CLI::Error& e) {
        return app.exit(e) == 0 ? kExitOk : kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
