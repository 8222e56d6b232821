#pragma once

#include <string>
#include <vector>

#include "oscdict/ff.hpp"

namespace oscdict {

struct SelfTestCheck {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

/// Runs the invariant suites (field, Heisenberg homomorphism, Bruhat
/// round-trip, torus counts, Egorov relation, dictionary cardinalities and
/// orthonormality) at one prime.
std::vector<SelfTestCheck> run_selftest(const FpField& field,
                                        std::uint64_t seed = 0);

}  // namespace oscdict
