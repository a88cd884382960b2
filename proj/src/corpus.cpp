#include "phasecone/corpus.hpp"

namespace phasecone::corpus {

std::vector<NamedState> standard_states(int dim) {
  return {
      {"vacuum", fock::state_vacuum(dim)},
      {"coherent(1)", fock::state_coherent({1.0, 0.0}, dim)},
      {"fock(1)", fock::state_fock(1, dim)},
      {"thermal(1)", fock::state_thermal(1.0, dim)},
      {"cat(1.5)", fock::state_cat({1.5, 0.0}, dim)},
  };
}

}  // namespace phasecone::corpus
