#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "ptrrank/core.hpp"
#include "ptrrank/weights.hpp"

namespace ptrrank {

enum class ScorerKind { TokenF1, RougeL, Precomputed };

// Stand-in for the reference-similarity signal that orders candidates.
// TokenF1 and RougeL are lexical; Precomputed reads per-candidate scores
// (from the record itself or a score table loaded from file).
struct SimilarityScorer {
  ScorerKind kind = ScorerKind::TokenF1;
  std::shared_ptr<const std::map<std::pair<std::string, int>, double>> table;

  static SimilarityScorer token_f1() { return {ScorerKind::TokenF1, nullptr}; }
  static SimilarityScorer rouge() { return {ScorerKind::RougeL, nullptr}; }
  static SimilarityScorer precomputed(
      std::shared_ptr<const std::map<std::pair<std::string, int>, double>> t = nullptr) {
    return {ScorerKind::Precomputed, std::move(t)};
  }
};

// Lexical similarity in [0,1]. Throws MissingReference on a blank reference
// and MissingPrecomputed for the Precomputed kind (which needs a candidate
// identity, see score_candidate).
double score_similarity(const std::string& candidate, const std::string& reference,
                        const SimilarityScorer& scorer);

double score_candidate(const QueryRecord& record, const Candidate& candidate,
                       const SimilarityScorer& scorer);

enum class StepKind : uint8_t { RankMarker, Pointer, Text };

// Supervision for one query: the similarity-sorted permutation rendered as
// the canonical token stream, with per-pointer-step candidate masks and
// per-step loss weights. Rank markers are schedule-determined and carry no
// loss (weight slot 0, no mask).
struct RankTarget {
  int n = 0;      // candidate count
  int n_max = 0;  // vocabulary block size; fixes mask indices
  std::vector<int> permutation;           // candidate ids, best first
  std::vector<double> sims;               // indexed by candidate id - 1
  std::vector<Token> tokens;              // [R1, CAND, R2, CAND, ..., ENDLIST]
  std::vector<StepKind> step_kind;        // per token
  std::vector<std::vector<int>> masks;    // per pointer step, sorted vocab indices
  std::vector<double> weights;            // per token; 0 on rank markers
};

// Sorts candidates by similarity to the reference, descending, ties broken
// by ascending candidate id, and emits the token stream plus masks/weights.
RankTarget build_rank_target(const QueryRecord& record, const SimilarityScorer& scorer,
                             const RankWeights& weights, int n_max);

// The similarity-sorted candidate ids (same ordering rule as the targets).
std::vector<int> ideal_order(const QueryRecord& record, const SimilarityScorer& scorer);

// "<R1> = <CAND_m>" per rank, newline-separated, terminated by "<ENDLIST>".
std::string render_sequence(const RankTarget& target);

// Inverse of render_sequence; validates the permutation property.
std::vector<int> parse_sequence(const std::string& text, int n);

}  // namespace ptrrank
