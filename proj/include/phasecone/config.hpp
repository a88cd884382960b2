#pragma once

#include <cstdint>
#include <string>

#include "phasecone/core.hpp"
#include "phasecone/semigroups.hpp"

namespace phasecone::config {

// Flat run settings mirrored one-to-one by CLI flags and config-file keys.
struct RunConfig {
  int fock_dim = 64;
  double half_extent = 10.0;
  int grid_points = 128;
  double psd_tol_analytic = 1e-9;
  double psd_tol_field = 1e-6;
  std::string quad_scheme = "gauss_hermite";  // or "monte_carlo"
  int quad_order = 20;
  int mc_samples = 100000;
  std::uint64_t seed = semigroups::kTwirlSeed;
  std::string out_dir = "out";
  int threads = 0;  // 0 = one per hardware core
};

// Defaults overlaid with the file named by PHASECONE_CONFIG when set.
RunConfig from_environment();

// Overlays the flat JSON object at `path` onto `cfg`; unknown keys are a
// ParseError so typos surface instead of silently keeping defaults.
void overlay_file(RunConfig& cfg, const std::string& path);

// Enforces cross-field rules, notably the aliasing bound
// grid_points >= 2 half_extent^2 / pi (GridTooCoarse otherwise).
void validate(const RunConfig& cfg);

PhaseGrid grid_of(const RunConfig& cfg);
semigroups::TwirlingQuadrature quadrature_of(const RunConfig& cfg);

// The flat snapshot embedded in experiment records; key order fixed,
// floats at 17 significant digits.
std::string config_json(const RunConfig& cfg);

}  // namespace phasecone::config
