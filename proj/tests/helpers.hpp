#pragma once

#include <string>
#include <vector>

#include "ptrrank/core.hpp"
#include "ptrrank/rng.hpp"

namespace ptrrank::testing {

inline QueryRecord make_record(const std::string& qid, const std::vector<std::string>& texts,
                               const std::string& reference = "") {
  QueryRecord r;
  r.query_id = qid;
  r.question = "which answer fits best";
  if (!reference.empty()) r.reference = reference;
  for (size_t i = 0; i < texts.size(); ++i) {
    Candidate c;
    c.id = static_cast<int>(i) + 1;
    c.text = texts[i];
    r.candidates.push_back(c);
  }
  return r;
}

// Record whose candidates carry the given precomputed similarities.
inline QueryRecord make_scored_record(const std::string& qid, const std::vector<double>& sims) {
  std::vector<std::string> texts(sims.size(), "placeholder text");
  QueryRecord r = make_record(qid, texts);
  for (size_t i = 0; i < sims.size(); ++i) {
    r.candidates[i].gold_similarity = sims[i];
  }
  return r;
}

inline QueryRecord random_scored_record(Rng& rng, const std::string& qid, int n) {
  std::vector<double> sims(static_cast<size_t>(n));
  for (auto& s : sims) s = rng.uniform();
  return make_scored_record(qid, sims);
}

}  // namespace ptrrank::testing
