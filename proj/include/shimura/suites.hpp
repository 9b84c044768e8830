#pragma once
#include <cstdint>
#include <vector>

#include "shimura/config.hpp"
#include "shimura/instance.hpp"
#include "shimura/report.hpp"

namespace shimura {

// assumptions, order maximality and the derived instance data; throws AssumptionViolation
Report cmd_validate(const InstanceConfig& cfg);

Report cmd_rho_lemma(const Instance& I, i64 max_m, i64 max_n);
Report cmd_fiber(const Instance& I, const std::vector<i64>& m_list, int per_m);
Report cmd_majorant(const Instance& I, int samples);
Report cmd_bessel(const Instance& I);
Report cmd_kernel(const Instance& I, int points);
Report cmd_analytic(const Instance& I, const std::vector<i64>& ells, const std::vector<double>& etas, int z_count);
Report cmd_poisson(const Instance& I);
Report cmd_constant(const Instance& I);
Report cmd_disk(const Instance& I, int per_sign);
Report cmd_ddc(const Instance& I, int per_sign);
Report cmd_enumerate(const Instance& I, int count);
Report cmd_rescale(const Instance& I, int samples);

}  // namespace shimura
