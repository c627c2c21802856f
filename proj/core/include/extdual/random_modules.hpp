#pragma once

#include <random>

#include "extdual/presentation.hpp"

namespace extdual {

struct RandomModuleOptions {
  int max_generators = 4;
  int max_degree = 12;
  int max_exponent = 3;
  int max_extra_relations = 3;
};

/// Finite module: generator j is killed by p^{e_j} and by a power of every
/// variable, plus a few random homogeneous relations mixing generators.
GradedModulePresentation random_finite_module(const GradedRing& ring, std::mt19937_64& rng,
                                              const RandomModuleOptions& options = {});

}  // namespace extdual
