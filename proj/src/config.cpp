#include "shimura/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace shimura {

namespace {

namespace pt = boost::property_tree;

double to_double(const std::string& key, const std::string& s) {
    try {
        size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ConfigError(key + ": not a number: " + s);
    }
}

i64 to_int(const std::string& key, const std::string& s) {
    try {
        size_t pos = 0;
        long long v = std::stoll(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ConfigError(key + ": not an integer: " + s);
    }
}

mpq_class to_rational(const std::string& key, const std::string& s) {
    try {
        return parse_rational(s);
    } catch (const std::exception&) {
        throw ConfigError(key + ": not a rational: " + s);
    }
}

}  // namespace

InstanceConfig parse_config(const std::string& text) {
    pt::ptree tree;
    std::istringstream is(text);
    try {
        pt::read_ini(is, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError(e.what());
    }
    InstanceConfig cfg;
    for (const auto& [section, body] : tree) {
        if (body.empty() && !body.data().empty()) throw ConfigError("key outside a section: " + section);
        for (const auto& [key, node] : body) {
            std::string name = section + "." + key;
            std::string v = boost::algorithm::trim_copy(node.data());
            if (name == "field.delta") cfg.delta = to_int(name, v);
            else if (name == "algebra.a") cfg.algebra_a = to_rational(name, v);
            else if (name == "algebra.b") cfg.algebra_b = to_rational(name, v);
            else if (name == "algebra.order_basis") {
                std::string rows = v;
                std::replace(rows.begin(), rows.end(), ';', '\n');
                try {
                    cfg.order_basis = parse_matrix(rows);
                } catch (const std::exception& e) {
                    throw ConfigError(name + ": " + e.what());
                }
                if (cfg.order_basis->size() != 4 || (*cfg.order_basis)[0].size() != 4)
                    throw ConfigError(name + ": expected 4 rows of 4 entries");
            } else if (name == "tolerances.sum_tail") cfg.tol_sum = to_double(name, v);
            else if (name == "tolerances.quadrature") cfg.tol_quad = to_double(name, v);
            else if (name == "tolerances.identity") cfg.tol_identity = to_double(name, v);
            else if (name == "limits.cutoff") cfg.cutoff = to_double(name, v);
            else if (name == "limits.budget") cfg.budget = to_double(name, v);
            else if (name == "limits.embedding_radius") cfg.embedding_radius = to_int(name, v);
            else if (name == "limits.theta_radius") cfg.theta_radius = to_int(name, v);
            else if (name == "run.seed") cfg.seed = std::uint64_t(to_int(name, v));
            else throw ConfigError("unknown key " + name);
        }
    }
    if (cfg.tol_sum <= 0 || cfg.tol_quad <= 0 || cfg.tol_identity <= 0) throw ConfigError("tolerances must be positive");
    if (cfg.cutoff < 0 || cfg.budget <= 0) throw ConfigError("cutoff must be nonnegative and budget positive");
    return cfg;
}

InstanceConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return parse_config(s.str());
}

}  // namespace shimura
