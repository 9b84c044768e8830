#include "shimura/report.hpp"

#include <algorithm>
#include <sstream>

#include <Eigen/Core>
#include <boost/version.hpp>

#include "shimura/qexpansion.hpp"

namespace shimura {

namespace {

std::string quoted(const std::string& v) {
    if (!v.empty() && v.find_first_of(" \t\"=") == std::string::npos) return v;
    std::string out = "\"";
    for (char c : v) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

}  // namespace

Record& Record::add(const std::string& key, const std::string& v) {
    fields.emplace_back(key, v);
    return *this;
}
Record& Record::add(const std::string& key, double v) { return add(key, format_double(v)); }
Record& Record::add(const std::string& key, i64 v) { return add(key, std::to_string(v)); }
Record& Record::add(const std::string& key, const mpq_class& v) { return add(key, to_string(v)); }
Record& Record::add(const std::string& key, std::complex<double> v) {
    v += std::complex<double>(0.0, 0.0);
    return add(key, format_double(v.real()) + (std::signbit(v.imag()) ? "" : "+") + format_double(v.imag()) + "i");
}
Record& Record::verdict(double r, double b, bool p) {
    residual = r;
    budget = b;
    pass = p;
    return *this;
}

Record& Report::add(Record r) {
    records.push_back(std::move(r));
    return records.back();
}

bool Report::pass() const { return failures() == 0; }

std::size_t Report::failures() const {
    return std::size_t(std::count_if(records.begin(), records.end(), [](const Record& r) { return !r.pass; }));
}

std::string Report::render() const {
    std::ostringstream s;
    s << "suite=" << suite << " instance=" << quoted(fingerprint) << " version=" << quoted(version_string())
      << " records=" << records.size() << " failures=" << failures() << " pass=" << (pass() ? "true" : "false") << "\n";
    for (const auto& r : records) {
        s << "check=" << r.check;
        for (const auto& [k, v] : r.fields) s << " " << k << "=" << quoted(v);
        s << " residual=" << format_double(r.residual) << " budget=" << format_double(r.budget)
          << " pass=" << (r.pass ? "true" : "false") << "\n";
    }
    return s.str();
}

std::string version_string() {
    std::ostringstream s;
    s << "verify-1.0 gmp-" << __GNU_MP_VERSION << "." << __GNU_MP_VERSION_MINOR << " boost-" << BOOST_VERSION / 100000
      << "." << BOOST_VERSION / 100 % 1000 << " eigen-" << EIGEN_WORLD_VERSION << "." << EIGEN_MAJOR_VERSION << "."
      << EIGEN_MINOR_VERSION;
    return s.str();
}

}  // namespace shimura
