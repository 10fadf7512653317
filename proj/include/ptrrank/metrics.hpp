#pragma once

#include <string>
#include <vector>

#include "ptrrank/core.hpp"

namespace ptrrank {

struct MetricReport {
  double ndcg = 0.0;
  double mean_sim = 0.0;  // corpus average of per-list mean similarity
  double max_sim = 0.0;   // corpus average of per-list best similarity
  double rouge_l = 0.0;   // of the rank-1 candidate vs the reference
  double meteor = 0.0;    // of the rank-1 candidate vs the reference
  double kendall_tau = 0.0;
  double top1_match = 0.0;  // rate of queries whose rank-1 equals the ideal rank-1
  int n_queries = 0;
};

// Gains are listed in the system's rank order. All gains equal (including
// all-zero) scores 1.0; an empty list is an error.
double ndcg(const std::vector<double>& gains_in_system_order);

// LCS-based F1 over lowercased whitespace tokens.
double rouge_l(const std::string& candidate, const std::string& reference);

// Exact-match unigram alignment, fewest-chunks greedy; F = 10PR/(R+9P),
// penalty = 0.5*(chunks/matches)^3.
double meteor_exact(const std::string& candidate, const std::string& reference);

// (concordant - discordant) / (n(n-1)/2) between two orderings of one id set.
double kendall_tau(const std::vector<int>& system_order, const std::vector<int>& ideal_order);

// Per-query candidate similarities in system rank order.
struct ScoredList {
  std::vector<double> sims;
};

struct Table1Aggregates {
  double ndcg_mean = 0.0;
  double sim_mean = 0.0;
  double sim_max = 0.0;
};

Table1Aggregates table1_aggregates(const std::vector<ScoredList>& lists);

}  // namespace ptrrank
