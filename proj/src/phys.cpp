#include "casimir/phys.hpp"

#include <cmath>

namespace casimir {

void StackSpec::validate() const {
  if (n_cavities < 1) {
    throw std::invalid_argument("n_cavities must be >= 1");
  }
  if (!(gap > 0.0) || !std::isfinite(gap)) {
    throw std::invalid_argument("gap must be positive and finite");
  }
  if (!(temperature > 0.0) || !std::isfinite(temperature)) {
    throw std::invalid_argument("temperature must be positive and finite");
  }
  if (kind == BoundaryKind::PlasmaSheetCavities) {
    if (omega < 0.0 || !std::isfinite(omega)) {
      throw std::invalid_argument("omega must be >= 0 and finite");
    }
  } else {
    // probe the permittivities at a representative frequency
    const double z = matsubara_frequency(1, temperature);
    for (double zeta : {0.0, z}) {
      const double ei = eps_inner_at(zeta);
      const double eo = eps_outer_at(zeta);
      if (!(ei >= 1.0) || !(eo >= 1.0) || !std::isfinite(ei) ||
          !std::isfinite(eo)) {
        throw std::invalid_argument(
            "permittivities must be finite and >= 1 on the imaginary axis");
      }
    }
  }
}

double matsubara_frequency(int l, double temperature) {
  if (l < 0) {
    throw std::invalid_argument("Matsubara index must be >= 0");
  }
  if (!(temperature > 0.0)) {
    throw std::invalid_argument("temperature must be positive");
  }
  using namespace constants;
  return 2.0 * pi * static_cast<double>(l) * k_boltzmann * temperature /
         (hbar * c_light);
}

double omega_from_carriers(double n_2d, double q_star, double m_star,
                           OmegaConvention conv) {
  if (!(n_2d >= 0.0) || !(m_star > 0.0)) {
    throw std::invalid_argument("need n_2d >= 0 and m_star > 0");
  }
  const double full = constants::mu_0 * n_2d * q_star * q_star / m_star;
  return conv == OmegaConvention::Full ? full : 0.5 * full;
}

}  // namespace casimir
