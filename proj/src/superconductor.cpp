#include "casimir/superconductor.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "casimir/energy.hpp"
#include "casimir/fitting.hpp"

namespace casimir {

SuperconductorModel preset(const std::string& name) {
  SuperconductorModel m;  // defaults describe the optimally doped film
  if (name == "harshman") {
    return m;
  }
  if (name == "archimedes") {
    m.t_c = 89.0;
    m.lambda_0 = 1.030e-7;
    return m;
  }
  if (name == "figure5") {
    m.delta = 4.25e-10;
    m.d = 3.18e-10;
    return m;
  }
  throw std::invalid_argument("unknown superconductor preset: " + name);
}

SuperconductorModel load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot open model file: " + path);
  }
  SuperconductorModel m;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    // trim
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    const auto e = line.find_last_not_of(" \t\r");
    line = line.substr(b, e - b + 1);
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("model file line " + std::to_string(lineno) +
                                  ": expected key=value");
    }
    std::string key = line.substr(0, eq);
    std::string val = line.substr(eq + 1);
    auto trim = [](std::string& s) {
      const auto bb = s.find_first_not_of(" \t");
      const auto ee = s.find_last_not_of(" \t");
      s = bb == std::string::npos ? std::string() : s.substr(bb, ee - bb + 1);
    };
    trim(key);
    trim(val);
    double x = 0.0;
    try {
      std::size_t pos = 0;
      x = std::stod(val, &pos);
      if (pos != val.size()) throw std::invalid_argument("trailing text");
    } catch (const std::exception&) {
      throw std::invalid_argument("model file line " + std::to_string(lineno) +
                                  ": bad number '" + val + "'");
    }
    if (key == "t_c") {
      m.t_c = x;
    } else if (key == "lambda_0") {
      m.lambda_0 = x;
    } else if (key == "d") {
      m.d = x;
    } else if (key == "delta") {
      m.delta = x;
    } else if (key == "n_3d_ref") {
      m.n_3d_ref = x;
    } else if (key == "t_ref") {
      m.t_ref = x;
    } else if (key == "m_star") {
      m.m_star = x;
    } else if (key == "q_star") {
      m.q_star = x;
    } else if (key == "omega_n_anchor") {
      m.omega_n_anchor = x;
    } else if (key == "t_anchor") {
      m.t_anchor = x;
    } else if (key == "pairing_exponent") {
      m.pairing_exponent = x;
    } else {
      throw std::invalid_argument("model file line " + std::to_string(lineno) +
                                  ": unknown key '" + key + "'");
    }
  }
  return m;
}

namespace {

double condensate_fraction(const SuperconductorModel& m, double t) {
  if (!(t >= 0.0)) throw std::domain_error("temperature must be nonnegative");
  if (t >= m.t_c) {
    throw std::domain_error("condensate fraction defined only below t_c");
  }
  return 1.0 - std::pow(t / m.t_c, m.pairing_exponent);
}

}  // namespace

double penetration_depth(const SuperconductorModel& m, double t) {
  return m.lambda_0 / std::sqrt(condensate_fraction(m, t));
}

double omega_superconducting(const SuperconductorModel& m, double t) {
  const double lam = penetration_depth(m, t);
  return m.delta / (2.0 * lam * lam);
}

double omega_normal(const SuperconductorModel& m, double t) {
  if (t <= m.t_c) {
    throw std::domain_error("normal-state strength defined only above t_c");
  }
  return m.omega_n_anchor * t / m.t_anchor;
}

double omega_normal_from_carriers(const SuperconductorModel& m, double t) {
  if (t <= m.t_c) {
    throw std::domain_error("normal-state strength defined only above t_c");
  }
  // areal density from the 3D density at the reference temperature,
  // scaled linearly in T, spread over one sheet per unit cell height
  const double n_2d = m.n_3d_ref * m.delta * t / m.t_ref;
  return omega_from_carriers(n_2d, m.q_star, m.m_star, OmegaConvention::Half);
}

TransitionEnergies transition_energies(const SuperconductorModel& m,
                                       double t_below, double t_above) {
  const double om_sc = omega_superconducting(m, t_below);
  const double om_n = omega_normal(m, t_above);
  TransitionEnergies r;
  r.e_sc = closed_form_energy(1, m.d, om_sc);
  r.e_n = closed_form_energy(1, m.d, om_n);
  r.delta_e = r.e_n - r.e_sc;
  r.eta = r.delta_e / std::abs(r.e_n);
  return r;
}

TransitionEnergies transition_energies_exact(const SuperconductorModel& m,
                                             double t_below, double t_above,
                                             const QuadratureConfig& cfg) {
  auto energy_at = [&](double t, double om) {
    StackSpec spec;
    spec.kind = BoundaryKind::PlasmaSheetCavities;
    spec.n_cavities = 1;
    spec.gap = m.d;
    spec.omega = om;
    spec.temperature = t;
    return casimir_energy(spec, cfg).e_per_area;
  };
  TransitionEnergies r;
  r.e_sc = energy_at(t_below, omega_superconducting(m, t_below));
  r.e_n = energy_at(t_above, omega_normal(m, t_above));
  r.delta_e = r.e_n - r.e_sc;
  r.eta = r.delta_e / std::abs(r.e_n);
  return r;
}

}  // namespace casimir
