#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "shimura/qexpansion.hpp"
#include "shimura/suites.hpp"

using namespace shimura;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

Outcome from_reports(const std::vector<Report>& reports, std::size_t min_records = 1) {
    std::size_t n = 0, failed = 0;
    double worst = 0;
    for (const auto& r : reports) {
        n += r.records.size();
        failed += r.failures();
        for (const auto& rec : r.records)
            if (!rec.pass && rec.residual > worst) worst = rec.residual;
    }
    std::string d = std::to_string(n) + " records, " + std::to_string(failed) + " failed";
    if (failed) d += ", worst failing residual " + format_double(worst);
    if (n < min_records) d += ", fewer than " + std::to_string(min_records) + " records";
    return {failed == 0 && n >= min_records, d};
}

std::size_t count_check(const Report& r, const std::string& name) {
    std::size_t n = 0;
    for (const auto& rec : r.records) n += rec.check == name;
    return n;
}

struct Criterion {
    const char* title;
    double limit_seconds;
    std::function<Outcome(const Instance&)> run;
};

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> list{
        {"ideal counts and divisor-sum lemma", 30,
         [](const Instance& I) { return from_reports({cmd_rho_lemma(I, 1000, 10000)}); }},
        {"fiber counts", 120,
         [](const Instance& I) {
             std::vector<i64> ms;
             for (i64 m = 1; m <= 30; ++m) ms.push_back(m);
             Report r = cmd_fiber(I, ms, 2);
             return from_reports({r}, 10);
         }},
        {"majorant comparison", 10, [](const Instance& I) { return from_reports({cmd_majorant(I, 1000)}, 1000); }},
        {"Bessel closed forms", 30, [](const Instance& I) { return from_reports({cmd_bessel(I)}, 300); }},
        {"theta kernel cross-validation", 300,
         [](const Instance& I) {
             Report r = cmd_kernel(I, 20);
             Outcome o = from_reports({r});
             if (count_check(r, "kernel") < 40) o = {false, o.detail + ", fewer than 20 points per instance"};
             return o;
         }},
        {"coefficient identity between the lifts", 600,
         [](const Instance& I) { return from_reports({cmd_analytic(I, {1, -1, 2, -2, 3, -3}, {0.5, 1, 2}, 3)}, 54); }},
        {"disk integral", 120, [](const Instance& I) { return from_reports({cmd_disk(I, 10)}, 60); }},
        {"Green equation", 60, [](const Instance& I) { return from_reports({cmd_ddc(I, 5)}, 10); }},
        {"constant term and twisted Poisson summation", 60,
         [](const Instance& I) { return from_reports({cmd_constant(I), cmd_poisson(I)}); }},
        {"enumeration soundness", 60, [](const Instance& I) { return from_reports({cmd_enumerate(I, 100)}, 100); }},
    };
    return list;
}

bool run_one(const Instance& I, int k) {
    const Criterion& c = criteria()[k - 1];
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = c.run(I);
    } catch (const std::exception& e) {
        o = {false, std::string("error: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool in_time = secs <= c.limit_seconds;
    bool pass = o.pass && in_time;
    std::printf("criterion %d %s: %s (%s; %.2f s of %.0f s)\n", k, c.title, pass ? "PASS" : "FAIL", o.detail.c_str(),
                secs, c.limit_seconds);
    std::fflush(stdout);
    return pass;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<int> which;
    for (int i = 1; i < argc; ++i) which.push_back(std::stoi(argv[i]));
    if (which.empty())
        for (int k = 1; k <= int(criteria().size()); ++k) which.push_back(k);
    for (int k : which)
        if (k < 1 || k > int(criteria().size())) {
            std::fprintf(stderr, "no criterion %d\n", k);
            return 2;
        }

    Instance I = build_instance(InstanceConfig{});
    bool all = true;
    for (int k : which) all = run_one(I, k) && all;
    return all ? 0 : 1;
}
