#pragma once

#include <array>

namespace ptrrank {

// Loss multipliers for the top-ranked pointer steps; every later step (and
// the list terminator) weighs 1.
struct RankWeights {
  std::array<double, 3> alpha{3.0, 1.5, 1.2};

  static RankWeights uniform() { return RankWeights{{1.0, 1.0, 1.0}}; }
};

double rank_weight(int k, const RankWeights& weights);

}  // namespace ptrrank
