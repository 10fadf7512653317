#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "ptrrank/target_builder.hpp"
#include "ptrrank/weights.hpp"

namespace ptrrank {

// T x V row-major matrix of per-step scores over the extended vocabulary.
struct LogitMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> data;

  LogitMatrix() = default;
  LogitMatrix(int r, int c)
      : rows(r), cols(c), data(static_cast<size_t>(r) * static_cast<size_t>(c), 0.0) {}

  double& at(int t, int v) { return data[static_cast<size_t>(t) * cols + v]; }
  double at(int t, int v) const { return data[static_cast<size_t>(t) * cols + v]; }
  std::span<double> row(int t) {
    return {data.data() + static_cast<size_t>(t) * cols, static_cast<size_t>(cols)};
  }
  std::span<const double> row(int t) const {
    return {data.data() + static_cast<size_t>(t) * cols, static_cast<size_t>(cols)};
  }
};

struct StepLoss {
  int step = 0;
  StepKind kind = StepKind::Pointer;
  double loss = 0.0;
  double weight = 0.0;
};

struct LossReport {
  double total = 0.0;
  std::vector<StepLoss> per_step;
  LogitMatrix grad;  // d total / d logits; rows already scaled by w_t / sum(w)
};

// Softmax restricted to the mask: probabilities over mask members, exact 0
// everywhere else. Shift-stable (max over mask subtracted).
std::vector<double> masked_softmax(std::span<const double> row, std::span<const int> mask);

// -log of the masked probability of target_index, with the softmax-CE
// gradient (p - onehot) on the mask, 0 off it. Loss evaluated in log space.
std::pair<double, std::vector<double>> pointer_step_loss(std::span<const double> row,
                                                         std::span<const int> mask,
                                                         int target_index);

// Cross-entropy over the full row.
std::pair<double, std::vector<double>> text_step_loss(std::span<const double> row,
                                                      int target_index);

// sum(w_t * L_t) / sum(w_t)
double weighted_total(const std::vector<StepLoss>& steps);

// Weight-normalized sum over loss-bearing steps: pointer steps under their
// shrinking masks, text steps over the full vocabulary, rank markers skipped.
// Pure in its inputs; rejects non-finite logits.
LossReport sequence_loss(const LogitMatrix& logits, const RankTarget& target);

struct GradCheckReport {
  double max_rel_err = 0.0;
  int worst_step = -1;
  int worst_col = -1;
  int trials = 0;
};

// Central-difference audit of sequence_loss gradients on random logits.
// cols == 0 derives the smallest vocabulary that fits the target.
GradCheckReport grad_check(const RankTarget& target, int trials, double epsilon,
                           uint64_t seed = 0, int cols = 0);

}  // namespace ptrrank
