#include "ptrrank/pointer_loss.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ptrrank/rng.hpp"

namespace ptrrank {

double rank_weight(int k, const RankWeights& weights) {
  if (k < 1) throw Error("rank must be >= 1");
  for (const double a : weights.alpha) {
    if (!(a >= 1.0)) throw Error("rank weights must be >= 1");
  }
  if (k <= 3) return weights.alpha[static_cast<size_t>(k - 1)];
  return 1.0;
}

namespace {

void check_mask(std::span<const double> row, std::span<const int> mask) {
  if (mask.empty()) throw EmptyMask("pointer step with an empty mask");
  for (const int idx : mask) {
    if (idx < 0 || idx >= static_cast<int>(row.size())) {
      throw Error("mask index " + std::to_string(idx) + " outside row of size " +
                  std::to_string(row.size()));
    }
    if (!std::isfinite(row[static_cast<size_t>(idx)])) {
      throw NonFiniteLogit("non-finite logit at masked column " + std::to_string(idx));
    }
  }
}

double max_over(std::span<const double> row, std::span<const int> mask) {
  double mx = -std::numeric_limits<double>::infinity();
  for (const int idx : mask) mx = std::max(mx, row[static_cast<size_t>(idx)]);
  return mx;
}

}  // namespace

std::vector<double> masked_softmax(std::span<const double> row, std::span<const int> mask) {
  check_mask(row, mask);
  const double mx = max_over(row, mask);
  double denom = 0.0;
  for (const int idx : mask) denom += std::exp(row[static_cast<size_t>(idx)] - mx);
  std::vector<double> probs(row.size(), 0.0);
  for (const int idx : mask) {
    probs[static_cast<size_t>(idx)] = std::exp(row[static_cast<size_t>(idx)] - mx) / denom;
  }
  return probs;
}

std::pair<double, std::vector<double>> pointer_step_loss(std::span<const double> row,
                                                         std::span<const int> mask,
                                                         int target_index) {
  check_mask(row, mask);
  if (std::find(mask.begin(), mask.end(), target_index) == mask.end()) {
    throw TargetNotInMask("target column " + std::to_string(target_index) +
                          " is not in the mask");
  }
  const double mx = max_over(row, mask);
  double denom = 0.0;
  for (const int idx : mask) denom += std::exp(row[static_cast<size_t>(idx)] - mx);

  const double loss = std::log(denom) - (row[static_cast<size_t>(target_index)] - mx);
  std::vector<double> grad(row.size(), 0.0);
  for (const int idx : mask) {
    grad[static_cast<size_t>(idx)] = std::exp(row[static_cast<size_t>(idx)] - mx) / denom;
  }
  grad[static_cast<size_t>(target_index)] -= 1.0;
  return {loss, std::move(grad)};
}

std::pair<double, std::vector<double>> text_step_loss(std::span<const double> row,
                                                      int target_index) {
  if (target_index < 0 || target_index >= static_cast<int>(row.size())) {
    throw Error("text target " + std::to_string(target_index) + " outside row");
  }
  std::vector<int> full(row.size());
  for (size_t i = 0; i < row.size(); ++i) full[i] = static_cast<int>(i);
  return pointer_step_loss(row, full, target_index);
}

LossReport sequence_loss(const LogitMatrix& logits, const RankTarget& target) {
  const int steps = static_cast<int>(target.tokens.size());
  if (logits.rows != steps) {
    throw ShapeMismatch("logit rows " + std::to_string(logits.rows) + " != target steps " +
                        std::to_string(steps));
  }
  for (const double z : logits.data) {
    if (!std::isfinite(z)) throw NonFiniteLogit("logit matrix contains NaN/Inf");
  }

  LossReport report;
  report.grad = LogitMatrix(logits.rows, logits.cols);

  double weight_sum = 0.0;
  double weighted_loss = 0.0;
  size_t pointer_step = 0;
  for (int t = 0; t < steps; ++t) {
    const StepKind kind = target.step_kind[static_cast<size_t>(t)];
    if (kind == StepKind::RankMarker) continue;  // schedule-determined, no loss

    double loss = 0.0;
    std::vector<double> grad_row;
    if (kind == StepKind::Pointer) {
      if (pointer_step >= target.masks.size()) {
        throw ShapeMismatch("more pointer steps than masks");
      }
      const auto& mask = target.masks[pointer_step];
      ++pointer_step;
      const Token& tok = target.tokens[static_cast<size_t>(t)];
      const int target_idx = tok.kind == TokenKind::EndList
                                 ? Vocabulary::kEndList
                                 : 3 + target.n_max + (tok.value - 1);
      std::tie(loss, grad_row) = pointer_step_loss(logits.row(t), mask, target_idx);
    } else {
      const Token& tok = target.tokens[static_cast<size_t>(t)];
      std::tie(loss, grad_row) = text_step_loss(logits.row(t), tok.value);
    }

    const double w = target.weights[static_cast<size_t>(t)];
    report.per_step.push_back({t, kind, loss, w});
    weighted_loss += w * loss;
    weight_sum += w;
    std::copy(grad_row.begin(), grad_row.end(), report.grad.row(t).begin());
  }
  if (pointer_step != target.masks.size()) {
    throw ShapeMismatch("unused pointer masks in target");
  }
  if (weight_sum <= 0.0) throw Error("target has no loss-bearing steps");

  report.total = weighted_loss / weight_sum;
  for (const auto& step : report.per_step) {
    const double scale = step.weight / weight_sum;
    for (double& g : report.grad.row(step.step)) g *= scale;
  }
  return report;
}

GradCheckReport grad_check(const RankTarget& target, int trials, double epsilon,
                           uint64_t seed, int cols) {
  if (trials < 1) throw Error("grad_check needs at least one trial");
  if (cols == 0) {
    for (const auto& mask : target.masks) {
      for (const int idx : mask) cols = std::max(cols, idx + 1);
    }
    for (const auto& tok : target.tokens) {
      if (tok.kind == TokenKind::Text) cols = std::max(cols, tok.value + 1);
    }
  }

  Rng rng(seed);
  GradCheckReport report;
  report.trials = trials;
  const int rows = static_cast<int>(target.tokens.size());
  for (int trial = 0; trial < trials; ++trial) {
    LogitMatrix logits(rows, cols);
    for (double& z : logits.data) z = rng.uniform(-2.0, 2.0);

    const LossReport analytic = sequence_loss(logits, target);
    LogitMatrix probe = logits;
    for (int t = 0; t < rows; ++t) {
      for (int v = 0; v < cols; ++v) {
        const double saved = probe.at(t, v);
        probe.at(t, v) = saved + epsilon;
        const double up = sequence_loss(probe, target).total;
        probe.at(t, v) = saved - epsilon;
        const double down = sequence_loss(probe, target).total;
        probe.at(t, v) = saved;

        const double fd = (up - down) / (2.0 * epsilon);
        const double a = analytic.grad.at(t, v);
        const double rel =
            std::abs(a - fd) / std::max({1.0, std::abs(a), std::abs(fd)});
        if (rel > report.max_rel_err) {
          report.max_rel_err = rel;
          report.worst_step = t;
          report.worst_col = v;
        }
      }
    }
  }
  return report;
}

}  // namespace ptrrank
