#pragma once

#include <string>
#include <vector>

#include "phasecone/fock.hpp"

namespace phasecone::corpus {

struct NamedState {
  std::string name;
  fock::DensityState state;
};

// The five reference states exercised across the test and verify suites,
// all at the given truncation dimension.
std::vector<NamedState> standard_states(int dim);

}  // namespace phasecone::corpus
