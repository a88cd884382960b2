#include "phasecone/config.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>

#include "json.hpp"
#include "phasecone/io.hpp"

namespace phasecone::config {

namespace {

using nlohmann::json;

void apply_key(RunConfig& cfg, const std::string& key, const json& value,
               const std::string& path) {
  try {
    if (key == "fock_dim") {
      cfg.fock_dim = value.get<int>();
    } else if (key == "half_extent") {
      cfg.half_extent = value.get<double>();
    } else if (key == "grid_points") {
      cfg.grid_points = value.get<int>();
    } else if (key == "psd_tol_analytic") {
      cfg.psd_tol_analytic = value.get<double>();
    } else if (key == "psd_tol_field") {
      cfg.psd_tol_field = value.get<double>();
    } else if (key == "quad_scheme") {
      cfg.quad_scheme = value.get<std::string>();
    } else if (key == "quad_order") {
      cfg.quad_order = value.get<int>();
    } else if (key == "mc_samples") {
      cfg.mc_samples = value.get<int>();
    } else if (key == "seed") {
      cfg.seed = value.get<std::uint64_t>();
    } else if (key == "out_dir") {
      cfg.out_dir = value.get<std::string>();
    } else if (key == "threads") {
      cfg.threads = value.get<int>();
    } else {
      throw ParseError(path + ": unknown config key \"" + key + "\"");
    }
  } catch (const json::exception& e) {
    throw ParseError(path + ": bad value for \"" + key + "\": " + e.what());
  }
}

}  // namespace

RunConfig from_environment() {
  RunConfig cfg;
  if (const char* path = std::getenv("PHASECONE_CONFIG");
      path != nullptr && *path != '\0')
    overlay_file(cfg, path);
  return cfg;
}

void overlay_file(RunConfig& cfg, const std::string& path) {
  json j;
  try {
    j = json::parse(io::read_text(path));
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  if (!j.is_object()) throw ParseError(path + ": config must be an object");
  for (const auto& [key, value] : j.items()) apply_key(cfg, key, value, path);
}

void validate(const RunConfig& cfg) {
  if (cfg.fock_dim < 2)
    throw InvalidDimension("fock_dim " + std::to_string(cfg.fock_dim));
  PhaseGrid probe(cfg.half_extent, cfg.grid_points);
  double needed = 2.0 * cfg.half_extent * cfg.half_extent / std::numbers::pi;
  if (static_cast<double>(cfg.grid_points) < needed)
    throw GridTooCoarse("grid_points " + std::to_string(cfg.grid_points) +
                        " below the aliasing bound " +
                        io::format_double(needed) + " for half_extent " +
                        io::format_double(cfg.half_extent));
  if (cfg.quad_scheme != "gauss_hermite" && cfg.quad_scheme != "monte_carlo")
    throw ParseError("unknown quad_scheme \"" + cfg.quad_scheme + "\"");
  if (cfg.quad_order < 4)
    throw InvalidDimension("quad_order " + std::to_string(cfg.quad_order));
  if (cfg.mc_samples < 1000)
    throw InvalidDimension("mc_samples " + std::to_string(cfg.mc_samples));
  if (!(cfg.psd_tol_analytic > 0.0) || !(cfg.psd_tol_field > 0.0))
    throw ParseError("psd tolerances must be positive");
  if (cfg.threads < 0)
    throw InvalidDimension("threads " + std::to_string(cfg.threads));
}

PhaseGrid grid_of(const RunConfig& cfg) {
  return PhaseGrid(cfg.half_extent, cfg.grid_points);
}

semigroups::TwirlingQuadrature quadrature_of(const RunConfig& cfg) {
  if (cfg.quad_scheme == "monte_carlo")
    return semigroups::TwirlingQuadrature::monte_carlo(cfg.mc_samples,
                                                       cfg.seed);
  return semigroups::TwirlingQuadrature::gauss_hermite(cfg.quad_order);
}

std::string config_json(const RunConfig& cfg) {
  std::string out = "{\"fock_dim\":" + std::to_string(cfg.fock_dim);
  out += ",\"half_extent\":" + io::format_double(cfg.half_extent);
  out += ",\"grid_points\":" + std::to_string(cfg.grid_points);
  out += ",\"psd_tol_analytic\":" + io::format_double(cfg.psd_tol_analytic);
  out += ",\"psd_tol_field\":" + io::format_double(cfg.psd_tol_field);
  out += ",\"quad_scheme\":" + io::json_quote(cfg.quad_scheme);
  out += ",\"quad_order\":" + std::to_string(cfg.quad_order);
  out += ",\"mc_samples\":" + std::to_string(cfg.mc_samples);
  out += ",\"seed\":" + std::to_string(cfg.seed);
  out += ",\"out_dir\":" + io::json_quote(cfg.out_dir);
  out += ",\"threads\":" + std::to_string(cfg.threads) + "}";
  return out;
}

}  // namespace phasecone::config
