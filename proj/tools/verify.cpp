#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "shimura/suites.hpp"

using namespace shimura;

namespace {

template <class T>
std::vector<T> parse_list(const std::string& s) {
    std::vector<T> out;
    std::stringstream in(s);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        if (tok.empty()) continue;
        std::istringstream ts(tok);
        T v;
        if (!(ts >> v) || !ts.eof()) throw ConfigError("bad list entry: " + tok);
        out.push_back(v);
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"verification harness for the unitary and orthogonal theta lifts"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path, out_path;
    std::optional<double> tol, cutoff, budget;
    std::optional<std::uint64_t> seed;
    app.add_option("--config", config_path, "instance configuration file")->envname("SHV_CONFIG");
    app.add_option("--tol", tol, "identity tolerance")->envname("SHV_TOL");
    app.add_option("--cutoff", cutoff, "largest majorant bound for truncated sums, 0 for none")->envname("SHV_CUTOFF");
    app.add_option("--budget", budget, "lattice point budget")->envname("SHV_BUDGET");
    app.add_option("--seed", seed, "random seed")->envname("SHV_SEED");
    app.add_option("--out", out_path, "write the report here instead of stdout")->envname("SHV_OUT");

    i64 max_m = 1000, max_n = 10000;
    int per_m = 2, samples = 1000, points = 20, z_count = 3, per_sign = 10, ddc_per_sign = 5, count = 100,
        rescale_samples = 100;
    std::string m_list = "1,2,3,4,5,6,7,8,9,10,11,12,13,14,15,16,17,18,19,20,21,22,23,24,25,26,27,28,29,30";
    std::string ells = "1,-1,2,-2,3,-3", etas = "0.5,1,2";

    app.add_subcommand("validate", "check the instance assumptions and build its data");
    auto* rho_cmd = app.add_subcommand("rho_lemma", "ideal counts and the divisor-sum lemma");
    rho_cmd->add_option("--max-m", max_m);
    rho_cmd->add_option("--max-n", max_n);
    auto* fiber_cmd = app.add_subcommand("fiber", "fiber counts of the orbit map");
    fiber_cmd->add_option("--m", m_list, "comma separated m values");
    fiber_cmd->add_option("--per-m", per_m);
    app.add_subcommand("majorant", "majorant comparison lemma")->add_option("--samples", samples);
    app.add_subcommand("bessel", "closed forms of the three Bessel integrals");
    app.add_subcommand("kernel", "direct against Poincare theta kernel")->add_option("--points", points);
    auto* an_cmd = app.add_subcommand("analytic", "coefficient identity between the two lifts");
    an_cmd->add_option("--ell", ells, "comma separated, may be empty");
    an_cmd->add_option("--eta", etas, "comma separated");
    an_cmd->add_option("--z-count", z_count);
    app.add_subcommand("poisson", "twisted Poisson summation");
    app.add_subcommand("constant", "constant term of the unitary series");
    app.add_subcommand("disk", "disk integral against the orthogonal integral")->add_option("--per-sign", per_sign);
    app.add_subcommand("ddc", "Green equation by finite differences")->add_option("--per-sign", ddc_per_sign);
    app.add_subcommand("enumerate", "Fincke-Pohst against box scan")->add_option("--count", count);
    app.add_subcommand("rescale", "rescaling bijection between slices")->add_option("--samples", rescale_samples);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    const std::string cmd = app.get_subcommands().front()->get_name();
    Report report;
    auto t0 = std::chrono::steady_clock::now();
    try {
        InstanceConfig cfg = config_path.empty() ? InstanceConfig{} : load_config(config_path);
        if (tol) cfg.tol_identity = *tol;
        if (cutoff) cfg.cutoff = *cutoff;
        if (budget) cfg.budget = *budget;
        if (seed) cfg.seed = *seed;
        if (cfg.tol_identity <= 0 || cfg.cutoff < 0 || cfg.budget <= 0) throw ConfigError("invalid limits");

        if (cmd == "validate") {
            report = cmd_validate(cfg);
        } else {
            validate(cfg);
            Instance I = build_instance(cfg);
            if (cmd == "rho_lemma") report = cmd_rho_lemma(I, max_m, max_n);
            else if (cmd == "fiber") report = cmd_fiber(I, parse_list<i64>(m_list), per_m);
            else if (cmd == "majorant") report = cmd_majorant(I, samples);
            else if (cmd == "bessel") report = cmd_bessel(I);
            else if (cmd == "kernel") report = cmd_kernel(I, points);
            else if (cmd == "analytic")
                report = cmd_analytic(I, parse_list<i64>(ells), parse_list<double>(etas), z_count);
            else if (cmd == "poisson") report = cmd_poisson(I);
            else if (cmd == "constant") report = cmd_constant(I);
            else if (cmd == "disk") report = cmd_disk(I, per_sign);
            else if (cmd == "ddc") report = cmd_ddc(I, ddc_per_sign);
            else if (cmd == "enumerate") report = cmd_enumerate(I, count);
            else if (cmd == "rescale") report = cmd_rescale(I, rescale_samples);
        }
    } catch (const AssumptionViolation& e) {
        std::cerr << "assumption violated: " << e.what() << "\n";
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << cmd << " failed: " << e.what() << "\n";
        return 1;
    }
    report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    std::string text = report.render();
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path);
        if (!out) {
            std::cerr << "cannot write " << out_path << "\n";
            return 2;
        }
        out << text;
    }
    std::cerr << report.suite << ": " << report.records.size() << " records, " << report.failures() << " failed, "
              << report.wall_seconds << " s\n";
    return report.pass() ? 0 : 1;
}
