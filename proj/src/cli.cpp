// Command-line front end: argument parsing, the eval/compare/identities/
// table/bench commands, and deterministic text/csv/json emission.

#include "psirep/cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numeric>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "psirep/asymsums.hpp"
#include "psirep/cisums.hpp"
#include "psirep/digamma.hpp"
#include "psirep/euler.hpp"
#include "psirep/loggamma.hpp"
#include "psirep/polygamma.hpp"

namespace psirep::cli {
namespace {

using ordered_json = nlohmann::ordered_json;

constexpr double kPi = 3.141592653589793238462643383279502884;

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

double to_double(const std::string& s) {
    const char* c = s.c_str();
    char* end = nullptr;
    const double v = std::strtod(c, &end);
    if (end == c || *end != '\0')
        throw UsageError("malformed number '" + s + "'");
    return v;
}

// ---------------------------------------------------------------------------
// representation tables

struct RepEntry {
    const char* name;
    int id;
    double tol;  // per-representation residual bar used by compare
    char kind;   // 's' series ladder, 'q' quadrature-level ladder (bench)
};

const RepEntry kPsiReps[] = {
    {"limit-sum", static_cast<int>(RepDigamma::LimitSum), 1e-2, 's'},
    {"binomial-log", static_cast<int>(RepDigamma::BinomialLog), 1e-3, 's'},
    {"u-integral", static_cast<int>(RepDigamma::UIntegral), 1e-8, 'q'},
    {"double-integral", static_cast<int>(RepDigamma::DoubleIntegral), 1e-7, 'q'},
    {"inv-binom-series", static_cast<int>(RepDigamma::InvBinomSeries), 1e-7, 's'},
    {"exp-integral", static_cast<int>(RepDigamma::ExpIntegral), 1e-8, 'q'},
    {"fourier-cisi", static_cast<int>(RepDigamma::FourierCiSi), 1e-6, 's'},
};

const RepEntry kPolyReps[] = {
    {"binomial-pow", static_cast<int>(RepPolygamma::BinomialPow), 1e-6, 's'},
    {"u-integral-logj", static_cast<int>(RepPolygamma::UIntegralLogJ), 1e-7, 'q'},
    {"double-integral-logj", static_cast<int>(RepPolygamma::DoubleIntegralLogJ), 1e-6, 'q'},
};

const RepEntry kLngammaReps[] = {
    {"binomial-series", static_cast<int>(RepLogGamma::BinomialSeries), 1e-8, 's'},
    {"binet1", static_cast<int>(RepLogGamma::Binet1), 1e-8, 'q'},
    {"binet2", static_cast<int>(RepLogGamma::Binet2), 1e-8, 'q'},
    {"double-integral", static_cast<int>(RepLogGamma::DoubleIntegral), 1e-8, 'q'},
    {"fourier-cisi", static_cast<int>(RepLogGamma::FourierCiSi), 1e-6, 's'},
};

struct RepSpan {
    const RepEntry* begin;
    const RepEntry* end;
};

RepSpan reps_for(const std::string& fn) {
    if (fn == "psi") return {std::begin(kPsiReps), std::end(kPsiReps)};
    if (fn == "polygamma") return {std::begin(kPolyReps), std::end(kPolyReps)};
    if (fn == "lngamma") return {std::begin(kLngammaReps), std::end(kLngammaReps)};
    throw UsageError("unknown function '" + fn + "' (expected psi, polygamma or lngamma)");
}

const RepEntry& rep_entry(const std::string& fn, const std::string& rep) {
    const RepSpan span = reps_for(fn);
    for (const RepEntry* e = span.begin; e != span.end; ++e)
        if (rep == e->name) return *e;
    throw UsageError("unknown representation '" + rep + "' for --fn " + fn);
}

EvalResult eval_rep(const std::string& fn, const RepEntry& e, long k, double a,
                    const Ctrl& ctrl) {
    if (fn == "psi") return psi_rep(a, static_cast<RepDigamma>(e.id), ctrl);
    if (fn == "polygamma")
        return polygamma_rep(static_cast<int>(k), a, static_cast<RepPolygamma>(e.id), ctrl);
    return lngamma_rep(a, static_cast<RepLogGamma>(e.id), ctrl);
}

double ref_value(const std::string& fn, long k, double a) {
    if (fn == "psi") return psi_ref(a);
    if (fn == "polygamma") return polygamma_ref(static_cast<int>(k), a);
    return lngamma_ref(a);
}

// ---------------------------------------------------------------------------
// ci-sum case selectors

const char* const kCaseNames[] = {"p2",         "p2-alt",     "p4",      "p4-alt",
                                  "even2k",     "even2k-alt", "real-a",  "real-a-alt",
                                  "odd",        "odd-alt",    "power-z"};

CaseId case_from_name(const std::string& name, const RunConfig& cfg) {
    if (name == "p2") return CaseId::p2();
    if (name == "p2-alt") return CaseId::p2_alt();
    if (name == "p4") return CaseId::p4();
    if (name == "p4-alt") return CaseId::p4_alt();
    if (name == "even2k") return CaseId::even2k(static_cast<int>(cfg.k));
    if (name == "even2k-alt") return CaseId::even2k_alt(static_cast<int>(cfg.k));
    if (name == "real-a") return CaseId::real_a(cfg.a);
    if (name == "real-a-alt") return CaseId::real_a_alt(cfg.a);
    if (name == "odd") return CaseId::odd(cfg.a);
    if (name == "odd-alt") return CaseId::odd_alt(cfg.a);
    if (name == "power-z") return CaseId::power_z(cfg.z);
    throw UsageError("unknown case '" + name + "'");
}

// ---------------------------------------------------------------------------
// parallel fan-out, ordered by input index

std::vector<ordered_json> parallel_map(long count, int threads,
                                       const std::function<ordered_json(long)>& fn) {
    std::vector<ordered_json> out(static_cast<size_t>(count));
    if (threads <= 1 || count <= 1) {
        for (long i = 0; i < count; ++i) out[static_cast<size_t>(i)] = fn(i);
        return out;
    }
    std::atomic<long> next{0};
    std::vector<std::exception_ptr> errs(static_cast<size_t>(count));
    auto worker = [&] {
        for (;;) {
            const long i = next.fetch_add(1);
            if (i >= count) return;
            try {
                out[static_cast<size_t>(i)] = fn(i);
            } catch (...) {
                errs[static_cast<size_t>(i)] = std::current_exception();
            }
        }
    };
    const int nt = static_cast<int>(std::min<long>(threads, count));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(nt));
    for (int t = 0; t < nt; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
    for (const std::exception_ptr& e : errs)
        if (e) std::rethrow_exception(e);
    return out;
}

class Stopwatch {
  public:
    explicit Stopwatch(bool enabled) : enabled_(enabled) {
        if (enabled_) t0_ = std::chrono::steady_clock::now();
    }
    double seconds() const {
        if (!enabled_) return 0.0;
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
    }

  private:
    bool enabled_;
    std::chrono::steady_clock::time_point t0_;
};

// ---------------------------------------------------------------------------
// emitters

struct Summary {
    long pass_count = 0;
    long fail_count = 0;
    double max_residual = 0.0;
};

Summary summarize(const std::vector<ordered_json>& rows) {
    Summary s;
    for (const ordered_json& r : rows) {
        if (r.contains("pass")) {
            (r["pass"].get<bool>() ? s.pass_count : s.fail_count)++;
        } else if (r.contains("converged")) {
            (r["converged"].get<bool>() ? s.pass_count : s.fail_count)++;
        }
        double res = 0.0;
        if (r.contains("residual"))
            res = std::fabs(r["residual"].get<double>());
        else if (r.contains("err_est"))
            res = r["err_est"].get<double>();
        if (std::isfinite(res)) s.max_residual = std::max(s.max_residual, res);
    }
    return s;
}

std::string cell_str(const ordered_json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    return fmt17(v.get<double>());
}

ordered_json config_json(const RunConfig& cfg) {
    ordered_json j;
    j["command"] = cfg.command;
    j["function"] = cfg.function;
    j["rep"] = cfg.rep;
    j["case"] = cfg.case_name;
    j["suite"] = cfg.suite;
    j["grid"] = cfg.grid;
    j["a"] = cfg.a;
    j["alpha"] = cfg.alpha;
    j["beta"] = cfg.beta;
    j["z"] = cfg.z;
    j["k"] = cfg.k;
    j["p"] = cfg.p;
    j["q"] = cfg.q;
    j["target_tol"] = cfg.ctrl.target_tol;
    j["max_terms"] = cfg.ctrl.max_terms;
    j["quad_levels"] = cfg.ctrl.quad_levels;
    j["tail_order"] = cfg.ctrl.tail_order;
    j["format"] = cfg.format;
    j["out"] = cfg.out;
    j["seed"] = cfg.seed;
    j["threads"] = cfg.threads;
    j["timing"] = cfg.timing;
    return j;
}

void emit(const RunConfig& cfg, const std::vector<std::string>& cols,
          const std::vector<ordered_json>& rows, const Summary& sum, std::ostream& os) {
    if (cfg.format == "json") {
        ordered_json top;
        top["config"] = config_json(cfg);
        top["rows"] = rows;
        top["summary"] = {{"pass_count", sum.pass_count},
                          {"fail_count", sum.fail_count},
                          {"max_residual", sum.max_residual}};
        os << top.dump(1) << "\n";
        return;
    }
    if (cfg.format == "csv") {
        auto quoted = [](const std::string& cell) {
            if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
            std::string out = "\"";
            for (char ch : cell) {
                if (ch == '"') out += '"';
                out += ch;
            }
            out += '"';
            return out;
        };
        for (size_t c = 0; c < cols.size(); ++c)
            os << (c ? "," : "") << cols[c];
        os << "\n";
        for (const ordered_json& r : rows) {
            for (size_t c = 0; c < cols.size(); ++c)
                os << (c ? "," : "") << quoted(cell_str(r.at(cols[c])));
            os << "\n";
        }
        return;
    }
    // text: padded columns plus a one-line summary
    std::vector<size_t> width(cols.size());
    for (size_t c = 0; c < cols.size(); ++c) width[c] = cols[c].size();
    std::vector<std::vector<std::string>> cells;
    cells.reserve(rows.size());
    for (const ordered_json& r : rows) {
        std::vector<std::string> line;
        line.reserve(cols.size());
        for (size_t c = 0; c < cols.size(); ++c) {
            line.push_back(cell_str(r.at(cols[c])));
            width[c] = std::max(width[c], line.back().size());
        }
        cells.push_back(std::move(line));
    }
    auto put = [&](const std::vector<std::string>& line) {
        for (size_t c = 0; c < cols.size(); ++c) {
            os << line[c];
            if (c + 1 < cols.size()) os << std::string(width[c] - line[c].size() + 2, ' ');
        }
        os << "\n";
    };
    put(cols);
    for (const auto& line : cells) put(line);
    os << "summary: pass=" << sum.pass_count << " fail=" << sum.fail_count
       << " max_residual=" << fmt17(sum.max_residual) << "\n";
}

// ---------------------------------------------------------------------------
// commands

std::vector<double> grid_or_a(const RunConfig& cfg) {
    return cfg.grid.empty() ? std::vector<double>{cfg.a} : cfg.grid;
}

int cmd_eval(const RunConfig& cfg, std::ostream& os) {
    const RepEntry& e = rep_entry(cfg.function, cfg.rep);
    const std::vector<double> grid = grid_or_a(cfg);
    auto row = [&](long i) {
        const double a = grid[static_cast<size_t>(i)];
        Stopwatch sw(cfg.timing);
        const EvalResult r = eval_rep(cfg.function, e, cfg.k, a, cfg.ctrl);
        ordered_json j;
        j["fn"] = cfg.function;
        j["rep"] = e.name;
        j["k"] = cfg.k;
        j["a"] = a;
        j["value"] = r.value;
        j["err_est"] = r.err_est;
        j["terms_used"] = r.terms_used;
        j["nodes_used"] = r.nodes_used;
        j["converged"] = r.converged;
        j["wall_time"] = sw.seconds();
        return j;
    };
    const auto rows = parallel_map(static_cast<long>(grid.size()), cfg.threads, row);
    emit(cfg,
         {"fn", "rep", "k", "a", "value", "err_est", "terms_used", "nodes_used", "converged",
          "wall_time"},
         rows, summarize(rows), os);
    return 0;
}

int cmd_compare(const RunConfig& cfg, std::ostream& os) {
    const RepSpan span = reps_for(cfg.function);
    std::vector<const RepEntry*> reps;
    for (const RepEntry* e = span.begin; e != span.end; ++e)
        if (cfg.rep.empty() || cfg.rep == e->name) reps.push_back(e);
    if (reps.empty()) throw UsageError("unknown representation '" + cfg.rep + "'");
    const std::vector<double> grid = grid_or_a(cfg);
    const long n_reps = static_cast<long>(reps.size());
    auto row = [&](long i) {
        const double a = grid[static_cast<size_t>(i / n_reps)];
        const RepEntry& e = *reps[static_cast<size_t>(i % n_reps)];
        const double ref = ref_value(cfg.function, cfg.k, a);
        Stopwatch sw(cfg.timing);
        const EvalResult r = eval_rep(cfg.function, e, cfg.k, a, cfg.ctrl);
        const double tol = cfg.tol_override > 0.0 ? cfg.tol_override : e.tol;
        ordered_json j;
        j["fn"] = cfg.function;
        j["rep"] = e.name;
        j["k"] = cfg.k;
        j["a"] = a;
        j["value"] = r.value;
        j["reference"] = ref;
        j["residual"] = r.value - ref;
        j["pass"] = std::fabs(r.value - ref) <= tol;
        j["terms_used"] = r.terms_used;
        j["nodes_used"] = r.nodes_used;
        j["wall_time"] = sw.seconds();
        return j;
    };
    const auto rows =
        parallel_map(static_cast<long>(grid.size()) * n_reps, cfg.threads, row);
    emit(cfg,
         {"fn", "rep", "k", "a", "value", "reference", "residual", "pass", "terms_used",
          "nodes_used", "wall_time"},
         rows, summarize(rows), os);
    return 0;
}

ordered_json identity_row(const std::string& suite, const std::string& label, double arg,
                          double lhs, double lhs_err, double rhs, double rhs_err,
                          double residual, bool pass) {
    ordered_json j;
    j["suite"] = suite;
    j["label"] = label;
    j["arg"] = arg;
    j["lhs"] = lhs;
    j["rhs"] = rhs;
    j["lhs_err"] = lhs_err;
    j["rhs_err"] = rhs_err;
    j["residual"] = residual;
    j["pass"] = pass;
    return j;
}

std::vector<ordered_json> suite_lemma2(const RunConfig& cfg) {
    const double tol = cfg.tol_override > 0.0 ? cfg.tol_override : 1e-8;
    std::vector<ordered_json> rows;
    for (int k = 1; k <= 6; ++k) {
        const MomentResult m = frac_moment(k, cfg.ctrl);
        const double res = m.quad_value.value - m.closed_value;
        char label[80];
        std::snprintf(label, sizeof label,
                      "fractional moment I_%d: quadrature vs zeta closed form", k);
        rows.push_back(identity_row("lemma2", label, k, m.quad_value.value,
                                    m.quad_value.err_est, m.closed_value, 0.0, res,
                                    std::fabs(res) <= tol));
    }
    return rows;
}

std::vector<ordered_json> suite_prop4(const RunConfig& cfg) {
    const double tol = cfg.tol_override > 0.0 ? cfg.tol_override : 1e-6;
    std::vector<CaseId> cases;
    if (!cfg.case_name.empty()) {
        cases.push_back(case_from_name(cfg.case_name, cfg));
    } else {
        cases = {CaseId::p2(),          CaseId::p2_alt(),        CaseId::p4(),
                 CaseId::p4_alt(),      CaseId::even2k(3),       CaseId::even2k_alt(3),
                 CaseId::real_a(2.5),   CaseId::real_a_alt(2.5), CaseId::odd(2.5),
                 CaseId::odd_alt(2.5),  CaseId::power_z(0.5),    CaseId::power_z(-0.9)};
    }
    auto row = [&](long i) {
        const IdentityReport rep = ci_sum_identity(cfg.beta, cases[static_cast<size_t>(i)],
                                                   cfg.ctrl);
        return identity_row("prop4", rep.label, rep.beta, rep.lhs.value, rep.lhs.err_est,
                            rep.rhs.value, rep.rhs.err_est, rep.residual,
                            std::fabs(rep.residual) <= tol);
    };
    return parallel_map(static_cast<long>(cases.size()), cfg.threads, row);
}

std::vector<ordered_json> suite_remainder(const RunConfig& cfg) {
    const double tol = cfg.tol_override > 0.0 ? cfg.tol_override : 1e-7;
    const double pairs[5][2] = {{1.0, 0.0}, {1.0, 1.0}, {2.0, 1.0}, {0.5, 0.5}, {3.0, 0.0}};
    auto row = [&](long i) {
        const double alpha = pairs[i][0];
        const double beta = pairs[i][1];
        const EvalResult lhs = psi_sum_lhs(alpha, beta, cfg.ctrl);
        const EvalResult rhs = psi_sum_rhs(alpha, beta, cfg.ctrl);
        const double res = lhs.value - rhs.value;
        char label[96];
        std::snprintf(label, sizeof label,
                      "digamma remainder sum vs v-integral at alpha=%g beta=%g", alpha, beta);
        return identity_row("remainder", label, alpha, lhs.value, lhs.err_est, rhs.value,
                            rhs.err_est, res, std::fabs(res) <= tol);
    };
    std::vector<ordered_json> rows = parallel_map(5, cfg.threads, row);

    // large-alpha expansion of the phi sum: improvement factor and fitted
    // decay exponents, reported so the integer alpha^{-2k} ladder is on
    // record next to the identity rows
    Ctrl tight = cfg.ctrl;
    tight.target_tol = std::min(cfg.ctrl.target_tol, 1e-12);
    const double d16 = phi_sum_direct(16.0, 0.0, tight).value;
    const double d32 = phi_sum_direct(32.0, 0.0, tight).value;
    const std::vector<double> s16 = phi_sum_asym(16.0, 2);
    const std::vector<double> s32 = phi_sum_asym(32.0, 2);
    const double e0_16 = std::fabs(d16);
    const double e0_32 = std::fabs(d32);
    const double e1_16 = std::fabs(d16 - s16[1]);
    const double e1_32 = std::fabs(d32 - s32[1]);

    rows.push_back(identity_row(
        "remainder", "phi tail at alpha=32: one-term remainder over empty-partial remainder",
        32.0, e0_32, 0.0, e1_32, 0.0, e1_32 / e0_32, 10.0 * e1_32 <= e0_32));
    const double p0 = std::log2(e0_16 / e0_32);
    rows.push_back(identity_row(
        "remainder", "phi tail decay exponent, empty partial (alpha 16->32), integer fit 2",
        0.0, p0, 0.0, 2.0, 0.0, p0 - 2.0, std::fabs(p0 - 2.0) <= 0.1));
    const double p1 = std::log2(e1_16 / e1_32);
    rows.push_back(identity_row(
        "remainder", "phi tail decay exponent, one term (alpha 16->32), integer fit 4", 1.0,
        p1, 0.0, 4.0, 0.0, p1 - 4.0, std::fabs(p1 - 4.0) <= 0.15));
    return rows;
}

int cmd_identities(const RunConfig& cfg, std::ostream& os) {
    std::vector<ordered_json> rows;
    auto append = [&rows](std::vector<ordered_json> r) {
        for (ordered_json& j : r) rows.push_back(std::move(j));
    };
    if (cfg.suite == "lemma2" || cfg.suite == "all") append(suite_lemma2(cfg));
    if (cfg.suite == "prop4" || cfg.suite == "all") append(suite_prop4(cfg));
    if (cfg.suite == "remainder" || cfg.suite == "all") append(suite_remainder(cfg));
    const Summary sum = summarize(rows);
    emit(cfg, {"suite", "label", "arg", "lhs", "rhs", "lhs_err", "rhs_err", "residual", "pass"},
         rows, sum, os);
    return sum.fail_count > 0 ? 1 : 0;
}

int cmd_table(const RunConfig& cfg, std::ostream& os) {
    const double tol = cfg.tol_override > 0.0 ? cfg.tol_override : 1e-12;
    const long q = cfg.q;
    auto row = [&](long i) {
        const long p = i + 1;
        const long g = std::gcd(p, q);
        const double value = psi_rational({p / g, q / g});
        const double ref = psi_ref(static_cast<double>(p) / static_cast<double>(q));
        ordered_json j;
        j["fn"] = cfg.function;
        j["p"] = p;
        j["q"] = q;
        j["value"] = value;
        j["reference"] = ref;
        j["residual"] = value - ref;
        j["pass"] = std::fabs(value - ref) <= tol;
        return j;
    };
    const auto rows = parallel_map(q - 1, cfg.threads, row);
    emit(cfg, {"fn", "p", "q", "value", "reference", "residual", "pass"}, rows,
         summarize(rows), os);
    return 0;
}

int cmd_bench(const RunConfig& cfg, std::ostream& os) {
    const RepEntry& e = rep_entry(cfg.function, cfg.rep);
    std::vector<long> ladder;
    if (e.kind == 's') {
        for (long w = 16; w <= 8192; w *= 2)
            if (w <= cfg.ctrl.max_terms) ladder.push_back(w);
        if (ladder.empty()) ladder.push_back(cfg.ctrl.max_terms);
    } else {
        for (int w = 3; w <= std::min(10, cfg.ctrl.quad_levels); ++w) ladder.push_back(w);
        if (ladder.empty()) ladder.push_back(cfg.ctrl.quad_levels);
    }
    const double ref = ref_value(cfg.function, cfg.k, cfg.a);
    auto row = [&](long i) {
        const long w = ladder[static_cast<size_t>(i)];
        Ctrl c = cfg.ctrl;
        if (e.kind == 's')
            c.max_terms = w;
        else
            c.quad_levels = static_cast<int>(w);
        Stopwatch sw(cfg.timing);
        const EvalResult r = eval_rep(cfg.function, e, cfg.k, cfg.a, c);
        ordered_json j;
        j["fn"] = cfg.function;
        j["rep"] = e.name;
        j["k"] = cfg.k;
        j["a"] = cfg.a;
        j["work"] = w;
        j["value"] = r.value;
        j["residual"] = r.value - ref;
        j["err_est"] = r.err_est;
        j["terms_used"] = r.terms_used;
        j["nodes_used"] = r.nodes_used;
        j["wall_time"] = sw.seconds();
        return j;
    };
    // sequential on purpose: bench rows are the ones someone might time
    std::vector<ordered_json> rows;
    rows.reserve(ladder.size());
    for (long i = 0; i < static_cast<long>(ladder.size()); ++i) rows.push_back(row(i));
    emit(cfg,
         {"fn", "rep", "k", "a", "work", "value", "residual", "err_est", "terms_used",
          "nodes_used", "wall_time"},
         rows, summarize(rows), os);
    return 0;
}

}  // namespace

double parse_real_literal(const std::string& s) {
    const size_t pos = s.find("pi");
    if (pos == std::string::npos) return to_double(s);
    double mult = 1.0;
    const std::string pre = s.substr(0, pos);
    if (pre == "-")
        mult = -1.0;
    else if (!pre.empty() && pre != "+")
        mult = to_double(pre);
    double div = 1.0;
    const std::string post = s.substr(pos + 2);
    if (!post.empty()) {
        if (post[0] != '/') throw UsageError("malformed pi literal '" + s + "'");
        div = to_double(post.substr(1));
        if (!(div > 0.0)) throw UsageError("malformed pi literal '" + s + "'");
    }
    return mult * kPi / div;
}

RunConfig parse_args(const std::vector<std::string>& args) {
    RunConfig cfg;
    CLI::App app{"special-function identity runner"};
    app.name("psirep-cli");

    std::string grid_s, a_s, alpha_s, beta_s, z_s, tol_s;
    app.add_option("command", cfg.command, "eval | compare | identities | table | bench")
        ->required();
    app.add_option("--fn", cfg.function, "psi | polygamma | lngamma | psi-rational");
    app.add_option("--rep", cfg.rep, "representation name");
    app.add_option("--case", cfg.case_name, "ci-sum case name");
    app.add_option("--suite", cfg.suite, "lemma2 | prop4 | remainder | all");
    app.add_option("--grid", grid_s, "start:stop:count or comma-separated values");
    app.add_option("--a", a_s, "argument (accepts pi literals)");
    app.add_option("--alpha", alpha_s);
    app.add_option("--beta", beta_s, "accepts pi literals, e.g. pi/2");
    app.add_option("--z", z_s);
    app.add_option("--k", cfg.k, "order / even-exponent index");
    app.add_option("--p", cfg.p);
    app.add_option("--q", cfg.q);
    app.add_option("--tol", tol_s, "pass tolerance override (also sets target_tol)");
    app.add_option("--max-terms", cfg.ctrl.max_terms);
    app.add_option("--tail-order", cfg.ctrl.tail_order);
    app.add_option("--format", cfg.format, "text | csv | json");
    app.add_option("--out", cfg.out, "output path (default stdout)");
    app.add_option("--seed", cfg.seed, "seed for randomized sweeps");
    app.add_option("--threads", cfg.threads, "worker threads for sweeps");
    app.add_flag("--timing", cfg.timing, "measure wall time (breaks byte determinism)");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        throw UsageError(app.help());
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    static const char* const kCommands[] = {"eval", "compare", "identities", "table", "bench"};
    if (std::find_if(std::begin(kCommands), std::end(kCommands), [&](const char* c) {
            return cfg.command == c;
        }) == std::end(kCommands))
        throw UsageError("unknown command '" + cfg.command + "'");
    if (cfg.format != "text" && cfg.format != "csv" && cfg.format != "json")
        throw UsageError("unknown format '" + cfg.format + "'");
    if (cfg.threads < 1) throw UsageError("--threads must be >= 1");
    if (cfg.ctrl.max_terms < 1) throw UsageError("--max-terms must be >= 1");

    if (!a_s.empty()) cfg.a = parse_real_literal(a_s);
    if (!alpha_s.empty()) cfg.alpha = parse_real_literal(alpha_s);
    if (!beta_s.empty()) cfg.beta = parse_real_literal(beta_s);
    if (!z_s.empty()) cfg.z = parse_real_literal(z_s);
    if (!tol_s.empty()) {
        cfg.tol_override = parse_real_literal(tol_s);
        if (!(cfg.tol_override > 0.0)) throw UsageError("--tol must be positive");
        cfg.ctrl.target_tol = cfg.tol_override;
    }

    if (!grid_s.empty()) {
        if (grid_s.find(',') != std::string::npos) {
            size_t start = 0;
            while (start <= grid_s.size()) {
                const size_t comma = grid_s.find(',', start);
                const std::string item =
                    grid_s.substr(start, comma == std::string::npos ? comma : comma - start);
                if (item.empty()) throw UsageError("empty grid element");
                cfg.grid.push_back(parse_real_literal(item));
                if (comma == std::string::npos) break;
                start = comma + 1;
            }
        } else if (grid_s.find(':') != std::string::npos) {
            const size_t c1 = grid_s.find(':');
            const size_t c2 = grid_s.find(':', c1 + 1);
            if (c2 == std::string::npos || grid_s.find(':', c2 + 1) != std::string::npos)
                throw UsageError("grid must be start:stop:count");
            const double start = parse_real_literal(grid_s.substr(0, c1));
            const double stop = parse_real_literal(grid_s.substr(c1 + 1, c2 - c1 - 1));
            const long count = static_cast<long>(to_double(grid_s.substr(c2 + 1)));
            if (count < 1) throw UsageError("grid count must be >= 1");
            for (long i = 0; i < count; ++i)
                cfg.grid.push_back(count == 1 ? start
                                              : start + (stop - start) * static_cast<double>(i) /
                                                    static_cast<double>(count - 1));
        } else {
            cfg.grid.push_back(parse_real_literal(grid_s));
        }
    }

    // name validation at parse time
    if (cfg.command == "eval" || cfg.command == "compare" || cfg.command == "bench") {
        if (cfg.function.empty()) throw UsageError("--fn is required");
        reps_for(cfg.function);
        if (!cfg.rep.empty()) rep_entry(cfg.function, cfg.rep);
        if (cfg.rep.empty() && cfg.command != "compare")
            throw UsageError("--rep is required for " + cfg.command);
    } else if (cfg.command == "table") {
        if (cfg.function.empty()) cfg.function = "psi-rational";
        if (cfg.function != "psi-rational")
            throw UsageError("table supports --fn psi-rational");
        if (cfg.q < 2) throw UsageError("--q must be >= 2");
    } else if (cfg.command == "identities") {
        if (cfg.suite != "lemma2" && cfg.suite != "prop4" && cfg.suite != "remainder" &&
            cfg.suite != "all")
            throw UsageError("unknown suite '" + cfg.suite + "'");
        if (!cfg.case_name.empty()) {
            if (std::find_if(std::begin(kCaseNames), std::end(kCaseNames), [&](const char* c) {
                    return cfg.case_name == c;
                }) == std::end(kCaseNames))
                throw UsageError("unknown case '" + cfg.case_name + "'");
        }
    }
    return cfg;
}

int run(const RunConfig& cfg, std::ostream& os) {
    if (cfg.command == "eval") return cmd_eval(cfg, os);
    if (cfg.command == "compare") return cmd_compare(cfg, os);
    if (cfg.command == "identities") return cmd_identities(cfg, os);
    if (cfg.command == "table") return cmd_table(cfg, os);
    if (cfg.command == "bench") return cmd_bench(cfg, os);
    throw UsageError("unknown command '" + cfg.command + "'");
}

int run_main(int argc, const char* const* argv) {
    std::vector<std::string> args;
    args.reserve(static_cast<size_t>(argc > 0 ? argc - 1 : 0));
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    try {
        const RunConfig cfg = parse_args(args);
        std::ofstream file;
        std::ostream* os = &std::cout;
        if (!cfg.out.empty()) {
            file.open(cfg.out);
            if (!file) throw UsageError("cannot open output file '" + cfg.out + "'");
            os = &file;
        }
        return run(cfg, *os);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n"
                  << "run with --help for the flag list\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid argument: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace psirep::cli
