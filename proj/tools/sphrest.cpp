// Command-line front end: eigenvalue tables, sharp constants, verification
// suites, and convolution profiles, all deterministic from the flags.
//
// Exit codes: 0 success / all pass, 1 verification failure, 2 usage error,
// 3 inconclusive results (and none failing).

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>

#include "sphrest/eigencalc.hpp"
#include "sphrest/measures.hpp"
#include "sphrest/specialfn.hpp"
#include "sphrest/spherequad.hpp"
#include "sphrest/verifier.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using json = nlohmann::ordered_json;
using namespace sphrest;

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr double kPi = 3.141592653589793238462643383279502884;
const double kQInf = std::numeric_limits<double>::infinity();

// shortest round-trip decimal rendering
std::string fmt(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (std::isnan(x)) return "nan";
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

double parse_q(const std::string& s) {
    if (s == "inf") return kQInf;
    std::size_t pos = 0;
    double q = std::stod(s, &pos);
    if (pos != s.size() || !(q > 0.0)) throw std::domain_error("q must be a positive number or 'inf'");
    return q;
}

struct RunConfig {
    std::string command;
    std::string suite;
    int d = 3;
    int k = 2;
    std::string q = "2";
    long kmax = 10;
    int grid = 2048;
    long samples = 1000000;
    int pairs = 3;
    int trials = 4;
    double eps = 0.0;
    std::uint64_t seed = 0;
    int workers = 0;
    std::string format = "csv";
    std::string output;
    double tol = -1.0;  // negative: use module defaults
};

json meta_block(const RunConfig& cfg) {
    json flags;
    flags["command"] = cfg.command;
    if (!cfg.suite.empty()) flags["suite"] = cfg.suite;
    flags["d"] = cfg.d;
    flags["k"] = cfg.k;
    flags["q"] = cfg.q;
    flags["kmax"] = cfg.kmax;
    flags["grid"] = cfg.grid;
    flags["samples"] = cfg.samples;
    flags["pairs"] = cfg.pairs;
    flags["trials"] = cfg.trials;
    flags["eps"] = cfg.eps;
    flags["format"] = cfg.format;
    if (cfg.tol >= 0.0) flags["tol"] = cfg.tol;
    json meta;
    meta["version"] = kVersion;
    meta["flags"] = flags;
    meta["seed"] = cfg.seed;
    meta["workers"] = cfg.workers;
    return meta;
}

void emit(const RunConfig& cfg, const std::string& text) {
    if (cfg.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(cfg.output, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + cfg.output);
    out << text;
}

json report_json(const Report& r) {
    json j;
    j["name"] = r.name;
    j["lhs"] = r.lhs;
    j["rhs"] = r.rhs;
    j["stat_error"] = r.stat_error;
    j["tolerance"] = r.tolerance;
    j["verdict"] = verdict_name(r.verdict);
    return j;
}

const char* sign_str(Sign s) {
    switch (s) {
        case Sign::plus: return "+";
        case Sign::minus: return "-";
        default: return "0";
    }
}

int cmd_eigenvalues(const RunConfig& cfg) {
    if (cfg.d < 3) throw std::domain_error("eigenvalues: d must be at least 3");
    if (cfg.kmax < 0) throw std::domain_error("eigenvalues: kmax must be nonnegative");
    auto rows = sign_report(cfg.d, std::max(cfg.kmax, 2L));
    rows.resize(cfg.kmax + 1);

    bool mismatch = false;
    for (const auto& row : rows) {
        if (row.exact && row.closed_form && row.exact->coeff != row.closed_form->coeff) mismatch = true;
    }

    if (cfg.format == "csv") {
        std::ostringstream os;
        os << "d,k,exact_numerator,exact_denominator,omega_index,closed_form_match,numeric,sign\n";
        for (const auto& row : rows) {
            os << row.d << ',' << row.k << ',';
            if (row.exact) {
                os << row.exact->coeff.get_num().get_str() << ','
                   << row.exact->coeff.get_den().get_str() << ',' << row.exact->omega_index << ',';
            } else {
                os << ",,,";  // numeric-only row
            }
            if (row.exact && row.closed_form) {
                os << (row.exact->coeff == row.closed_form->coeff ? "true" : "false");
            }
            os << ',' << fmt(row.numeric) << ',' << sign_str(row.sign) << '\n';
        }
        emit(cfg, os.str());
    } else {
        json results = json::array();
        for (const auto& row : rows) {
            json j;
            j["d"] = row.d;
            j["k"] = row.k;
            if (row.exact) {
                j["exact_numerator"] = row.exact->coeff.get_num().get_str();
                j["exact_denominator"] = row.exact->coeff.get_den().get_str();
                j["omega_index"] = row.exact->omega_index;
            }
            if (row.exact && row.closed_form) {
                j["closed_form_match"] = (row.exact->coeff == row.closed_form->coeff);
            }
            j["numeric"] = row.numeric;
            j["sign"] = sign_str(row.sign);
            results.push_back(j);
        }
        json doc;
        doc["meta"] = meta_block(cfg);
        doc["results"] = results;
        emit(cfg, doc.dump(2) + "\n");
    }
    return mismatch ? 1 : 0;
}

int cmd_constant(const RunConfig& cfg) {
    double q = parse_q(cfg.q);
    SharpConstant c = sharp_constant(cfg.d, cfg.k, q);

    double cross = 0.0;
    std::string cross_method;
    if (cfg.k == 2) {
        cross = sharp_constant_d4_closed(cfg.d, q);
        cross_method = "closed-form-d4";
    } else if (cfg.d >= 3 && 2 * cfg.k <= 8) {
        double inv_q = (q == kQInf) ? 0.0 : 1.0 / q;
        auto prof = conv_profile(cfg.d, 2 * cfg.k, 1024);
        double norm = std::pow(std::pow(2.0 * kPi, cfg.d) * prof(0.0), 1.0 / (2.0 * cfg.k));
        cross = std::pow(sphere_area(cfg.d - 1), -inv_q) * norm;
        cross_method = "convolution";
    } else {
        double inv_q = (q == kQInf) ? 0.0 : 1.0 / q;
        cross = std::pow(sphere_area(cfg.d - 1), -inv_q) * sigma_hat_norm_at(cfg.d, cfg.k, 128.0 * kPi, 32);
        cross_method = "plancherel-bessel-refined";
    }
    double rel = std::abs(cross - c.value) / c.value;

    json result;
    result["d"] = c.d;
    result["p"] = 2 * c.k;
    if (q == kQInf) {
        result["q"] = "inf";
    } else {
        result["q"] = q;
    }
    result["value"] = c.value;
    result["method"] = c.method;
    result["cross_check_value"] = cross;
    result["cross_check_method"] = cross_method;
    result["cross_check_rel_err"] = rel;

    json doc;
    doc["meta"] = meta_block(cfg);
    doc["results"] = json::array({result});
    emit(cfg, doc.dump(2) + "\n");
    return 0;
}

int exit_code_from(const std::vector<Report>& reports) {
    bool any_fail = false, any_inconclusive = false;
    for (const auto& r : reports) {
        if (r.verdict == Verdict::fail) any_fail = true;
        if (r.verdict == Verdict::inconclusive) any_inconclusive = true;
    }
    if (any_fail) return 1;
    if (any_inconclusive) return 3;
    return 0;
}

int cmd_verify(const RunConfig& cfg) {
    std::vector<Report> reports;
    json extra;
    if (cfg.suite == "identity") {
        Report r = geometric_identity(cfg.d, cfg.samples, cfg.seed);
        if (cfg.tol >= 0.0) r = make_report(r.name, r.lhs, r.rhs, r.stat_error, cfg.tol);
        reports.push_back(r);
    } else if (cfg.suite == "thm1") {
        reports = verify_thm1(cfg.d, cfg.k, parse_q(cfg.q), cfg.trials, cfg.seed);
    } else if (cfg.suite == "cor3") {
        reports = verify_cor3(cfg.d, cfg.pairs, cfg.samples, cfg.seed);
    } else if (cfg.suite == "lem11") {
        reports = verify_lem11(cfg.d, cfg.trials, cfg.seed);
    } else if (cfg.suite == "chain") {
        TrialFunction f = (cfg.eps > 0.0) ? TrialFunction::harmonic_perturbation(cfg.eps, 2)
                                          : TrialFunction::constant(1.0);
        ChainReport chain = chain_report(cfg.d, f);
        reports = chain.checks;
        extra = json::array();
        for (double s : chain.stages) extra.push_back(s);
    } else {
        throw std::domain_error("verify: unknown suite '" + cfg.suite +
                                "' (expected thm1|cor3|identity|chain|lem11)");
    }

    json doc;
    doc["meta"] = meta_block(cfg);
    if (!extra.is_null()) doc["stages"] = extra;
    json results = json::array();
    for (const auto& r : reports) results.push_back(report_json(r));
    doc["results"] = results;
    emit(cfg, doc.dump(2) + "\n");
    return exit_code_from(reports);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sharp sphere-restriction constants, eigenvalue tables, and verification suites"};
    app.require_subcommand(1);

    RunConfig cfg;
    int fold = 2;

    auto* eig = app.add_subcommand("eigenvalues", "Funk-Hecke eigenvalues of the zonal distance kernel");
    eig->add_option("--d", cfg.d, "sphere is S^{d-1}")->required();
    eig->add_option("--kmax", cfg.kmax, "largest harmonic degree");
    eig->add_option("--format", cfg.format, "csv or json");
    eig->add_option("--output", cfg.output, "write to file instead of stdout");

    auto* con = app.add_subcommand("constant", "sharp restriction constant C(d, 2k, q)");
    con->add_option("--d", cfg.d)->required();
    con->add_option("--k", cfg.k, "half the Lebesgue exponent, p = 2k")->required();
    con->add_option("--q", cfg.q, "density exponent, number or 'inf'")->required();
    con->add_option("--output", cfg.output);

    auto* ver = app.add_subcommand("verify", "numerical verification suites");
    ver->add_option("suite", cfg.suite, "thm1|cor3|identity|chain|lem11")->required();
    ver->add_option("--d", cfg.d)->required();
    ver->add_option("--k", cfg.k);
    ver->add_option("--q", cfg.q);
    ver->add_option("--samples", cfg.samples, "Monte Carlo sample count");
    ver->add_option("--pairs", cfg.pairs, "random pairs for cor3");
    ver->add_option("--trials", cfg.trials, "random trial densities");
    ver->add_option("--eps", cfg.eps, "perturbation size for the chain suite");
    ver->add_option("--seed", cfg.seed);
    ver->add_option("--workers", cfg.workers, "thread count (results are worker-independent)");
    ver->add_option("--tol", cfg.tol, "override the pass tolerance where applicable");
    ver->add_option("--output", cfg.output);

    auto* conv = app.add_subcommand("convolution", "radial density of the fold-fold convolution");
    conv->add_option("--d", cfg.d)->required();
    conv->add_option("--fold", fold)->required();
    conv->add_option("--grid", cfg.grid, "grid resolution");
    conv->add_option("--output", cfg.output);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    cfg.format = (cfg.format == "json") ? "json" : "csv";
#ifdef _OPENMP
    if (cfg.workers > 0) omp_set_num_threads(cfg.workers);
    if (cfg.workers == 0) cfg.workers = omp_get_max_threads();
#else
    cfg.workers = 1;
#endif

    try {
        if (app.got_subcommand(eig)) {
            cfg.command = "eigenvalues";
            cfg.format = eig->count("--format") ? cfg.format : "csv";
            return cmd_eigenvalues(cfg);
        }
        if (app.got_subcommand(con)) {
            cfg.command = "constant";
            return cmd_constant(cfg);
        }
        if (app.got_subcommand(ver)) {
            cfg.command = "verify";
            return cmd_verify(cfg);
        }
        if (app.got_subcommand(conv)) {
            cfg.command = "convolution";
            if (cfg.d == 2 && fold > 2) {
                throw std::domain_error(
                    "convolution: d = 2 supports only fold 2 (the recursion is unstable there)");
            }
            if (fold < 2 || fold > 8) throw std::domain_error("convolution: fold must be in 2..8");
            if (cfg.d == 2 && fold == 2) {
                // closed form sampled on a plain grid
                std::ostringstream os;
                os << "r,density\n";
                for (int i = 0; i < cfg.grid; ++i) {
                    double r = 2.0 * i / (cfg.grid - 1.0);
                    os << fmt(r) << ',' << fmt(conv2(2, r)) << '\n';
                }
                emit(cfg, os.str());
                return 0;
            }
            auto prof = conv_profile(cfg.d, fold, cfg.grid);
            std::ostringstream os;
            os << "r,density\n";
            for (std::size_t i = 0; i < prof.radii().size(); ++i) {
                os << fmt(prof.radii()[i]) << ',' << fmt(prof.values()[i]) << '\n';
            }
            emit(cfg, os.str());
            return 0;
        }
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
