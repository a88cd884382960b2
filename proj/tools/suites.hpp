#pragma once

#include <string>
#include <vector>

#include "phasecone/config.hpp"

namespace phasecone::suites {

// One cross-module identity, its measured deviation, and the frozen bound.
struct Check {
  std::string name;
  double deviation = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

// Composition law of the phase-plane unitaries on the interior block.
std::vector<Check> multiplier_suite(const config::RunConfig& cfg);

// Operator product against the twisted convolution of the transforms.
// flip_sign runs the deliberately wrong multiplier orientation, which the
// noncommutativity of the product must catch.
std::vector<Check> star_suite(const config::RunConfig& cfg, bool flip_sign);

// Gram positivity of transformed states and measures, both directions.
std::vector<Check> bochner_suite(const config::RunConfig& cfg);

// Closure of quantum positivity under products with classical factors.
std::vector<Check> schur_suite(const config::RunConfig& cfg);

// Operator-route evolution against table-route evolution.
std::vector<Check> intertwine_suite(const config::RunConfig& cfg);

std::vector<Check> run_suite(const std::string& name,
                             const config::RunConfig& cfg, bool flip_sign);

}  // namespace phasecone::suites
