#include "elastica/params.hpp"

#include <fmt/format.h>

namespace elastica {

void FlowParams::validate() const {
  if (!(mu > 0.0)) throw InvalidParams(fmt::format("mu must be positive, got {}", mu));
  if (grid_n < 8) throw InvalidParams(fmt::format("grid_n must be at least 8, got {}", grid_n));
  if (!(dt > 0.0)) throw InvalidParams(fmt::format("dt must be positive, got {}", dt));
  if (!(t_end > 0.0)) throw InvalidParams(fmt::format("t_end must be positive, got {}", t_end));
  if (reparam_cadence < 0) throw InvalidParams("reparam_cadence must be non-negative");
  if (min_length_threshold < 0.0) throw InvalidParams("min_length_threshold must be non-negative");
  if (!(min_sin_angle_threshold > 0.0))
    throw InvalidParams("min_sin_angle_threshold must be positive");
  if (!(tol.adm_curvature > 0.0) || !(tol.adm_third_order > 0.0) ||
      !(tol.adm_second_order > 0.0) || !(tol.energy_increase_rel >= 0.0) ||
      !(tol.step_third_order > 0.0) || !(tol.det_m_min > 0.0) || !(tol.min_speed > 0.0))
    throw InvalidParams("tolerances must be positive");
  if (tol.max_halvings < 0) throw InvalidParams("max_halvings must be non-negative");
}

}  // namespace elastica
