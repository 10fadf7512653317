#include "ptrrank/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace ptrrank {

double ndcg(const std::vector<double>& gains) {
  if (gains.empty()) throw EmptyList("ndcg of an empty list");
  for (const double g : gains) {
    if (!(g >= 0.0)) throw Error("ndcg gains must be non-negative");
  }
  const auto dcg = [](const std::vector<double>& g) {
    double sum = 0.0;
    for (size_t i = 0; i < g.size(); ++i) {
      sum += g[i] / std::log2(static_cast<double>(i) + 2.0);
    }
    return sum;
  };
  std::vector<double> ideal = gains;
  std::sort(ideal.begin(), ideal.end(), std::greater<>());
  const double idcg = dcg(ideal);
  if (idcg == 0.0) return 1.0;  // all-zero gains: any order is ideal
  if (ideal.front() == ideal.back()) return 1.0;
  return dcg(gains) / idcg;
}

namespace {

int lcs_length(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  const size_t n = a.size(), m = b.size();
  std::vector<int> prev(m + 1, 0), cur(m + 1, 0);
  for (size_t i = 1; i <= n; ++i) {
    for (size_t j = 1; j <= m; ++j) {
      cur[j] = (a[i - 1] == b[j - 1]) ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[m];
}

}  // namespace

double rouge_l(const std::string& candidate, const std::string& reference) {
  const auto ref = split_lower(reference);
  if (ref.empty()) throw MissingReference("rouge_l needs a non-empty reference");
  const auto cand = split_lower(candidate);
  if (cand.empty()) return 0.0;
  const int lcs = lcs_length(cand, ref);
  if (lcs == 0) return 0.0;
  // F1 with P = lcs/|cand|, R = lcs/|ref| collapses to this exact form.
  return 2.0 * lcs / static_cast<double>(cand.size() + ref.size());
}

double meteor_exact(const std::string& candidate, const std::string& reference) {
  const auto ref = split_lower(reference);
  if (ref.empty()) throw MissingReference("meteor needs a non-empty reference");
  const auto cand = split_lower(candidate);
  if (cand.empty()) return 0.0;

  // Greedy alignment: prefer the reference position that keeps the current
  // chunk running, otherwise the leftmost unused occurrence.
  std::vector<bool> used(ref.size(), false);
  int matches = 0, chunks = 0;
  int prev_c = -2, prev_r = -2;
  for (size_t i = 0; i < cand.size(); ++i) {
    int j = -1;
    const bool adjacent = static_cast<int>(i) == prev_c + 1;
    if (adjacent && prev_r + 1 < static_cast<int>(ref.size()) && !used[prev_r + 1] &&
        ref[prev_r + 1] == cand[i]) {
      j = prev_r + 1;
    } else {
      for (size_t k = 0; k < ref.size(); ++k) {
        if (!used[k] && ref[k] == cand[i]) {
          j = static_cast<int>(k);
          break;
        }
      }
    }
    if (j < 0) continue;
    used[j] = true;
    ++matches;
    if (!(adjacent && j == prev_r + 1)) ++chunks;
    prev_c = static_cast<int>(i);
    prev_r = j;
  }

  if (matches == 0) return 0.0;
  const double p = static_cast<double>(matches) / static_cast<double>(cand.size());
  const double r = static_cast<double>(matches) / static_cast<double>(ref.size());
  const double f_mean = 10.0 * p * r / (r + 9.0 * p);
  const double frag = static_cast<double>(chunks) / static_cast<double>(matches);
  const double penalty = 0.5 * frag * frag * frag;
  return f_mean * (1.0 - penalty);
}

double kendall_tau(const std::vector<int>& system_order, const std::vector<int>& ideal_order) {
  const size_t n = system_order.size();
  if (ideal_order.size() != n) {
    throw NotAPermutation("orders have different lengths");
  }
  std::unordered_map<int, int> ideal_pos;
  for (size_t i = 0; i < n; ++i) {
    if (!ideal_pos.emplace(ideal_order[i], static_cast<int>(i)).second) {
      throw NotAPermutation("duplicate id in ideal order");
    }
  }
  for (const int id : system_order) {
    if (ideal_pos.find(id) == ideal_pos.end()) {
      throw NotAPermutation("system order is not a permutation of the ideal order");
    }
  }
  std::unordered_map<int, bool> seen;
  for (const int id : system_order) {
    if (seen[id]) throw NotAPermutation("duplicate id in system order");
    seen[id] = true;
  }
  if (n < 2) return 1.0;

  long concordant = 0, discordant = 0;
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      if (ideal_pos[system_order[i]] < ideal_pos[system_order[j]]) {
        ++concordant;
      } else {
        ++discordant;
      }
    }
  }
  const double pairs = static_cast<double>(n) * (static_cast<double>(n) - 1.0) / 2.0;
  return static_cast<double>(concordant - discordant) / pairs;
}

Table1Aggregates table1_aggregates(const std::vector<ScoredList>& lists) {
  if (lists.empty()) throw EmptyList("no lists to aggregate");
  Table1Aggregates out;
  for (const auto& list : lists) {
    if (list.sims.empty()) throw EmptyList("empty list in aggregate");
    double sum = 0.0, best = list.sims.front();
    for (const double s : list.sims) {
      sum += s;
      best = std::max(best, s);
    }
    out.ndcg_mean += ndcg(list.sims);
    out.sim_mean += sum / static_cast<double>(list.sims.size());
    out.sim_max += best;
  }
  const double n = static_cast<double>(lists.size());
  out.ndcg_mean /= n;
  out.sim_mean /= n;
  out.sim_max /= n;
  return out;
}

}  // namespace ptrrank
