#pragma once
#include <gmpxx.h>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "shimura/arith.hpp"

namespace shimura {

// one check: ordered name=value fields followed by residual, budget and verdict
struct Record {
    std::string check;
    std::vector<std::pair<std::string, std::string>> fields;
    double residual = 0;
    double budget = 0;
    bool pass = false;

    explicit Record(std::string name) : check(std::move(name)) {}
    Record& add(const std::string& key, const std::string& v);
    Record& add(const std::string& key, const char* v) { return add(key, std::string(v)); }
    Record& add(const std::string& key, double v);
    Record& add(const std::string& key, i64 v);
    Record& add(const std::string& key, int v) { return add(key, i64(v)); }
    Record& add(const std::string& key, std::size_t v) { return add(key, i64(v)); }
    Record& add(const std::string& key, bool v) { return add(key, std::string(v ? "true" : "false")); }
    Record& add(const std::string& key, const mpq_class& v);
    Record& add(const std::string& key, std::complex<double> v);
    Record& verdict(double residual, double budget, bool pass);
};

struct Report {
    std::string suite;
    std::string fingerprint;
    std::vector<Record> records;
    double wall_seconds = 0;

    Record& add(Record r);
    bool pass() const;
    std::size_t failures() const;
    // deterministic text: a header line and one line per record; wall time is not part of it
    std::string render() const;
};

std::string version_string();

}  // namespace shimura
