#pragma once
#include <stdexcept>
#include <string>

#include "shimura/instance.hpp"

namespace shimura {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// key = value lines under [field], [algebra], [tolerances], [limits] and [run] headers;
// order_basis rows are separated by ';'
InstanceConfig parse_config(const std::string& text);
InstanceConfig load_config(const std::string& path);

}  // namespace shimura
