#include "ptrrank/target_builder.hpp"

#include <algorithm>
#include <unordered_map>

#include "ptrrank/metrics.hpp"

namespace ptrrank {

namespace {

double token_f1(const std::string& candidate, const std::string& reference) {
  const auto ref = split_lower(reference);
  if (ref.empty()) throw MissingReference("similarity needs a non-empty reference");
  const auto cand = split_lower(candidate);
  if (cand.empty()) return 0.0;

  std::unordered_map<std::string, int> ref_counts;
  for (const auto& w : ref) ++ref_counts[w];
  int overlap = 0;
  for (const auto& w : cand) {
    auto it = ref_counts.find(w);
    if (it != ref_counts.end() && it->second > 0) {
      --it->second;
      ++overlap;
    }
  }
  if (overlap == 0) return 0.0;
  // harmonic mean of P = o/|cand| and R = o/|ref|
  return 2.0 * overlap / static_cast<double>(cand.size() + ref.size());
}

}  // namespace

double score_similarity(const std::string& candidate, const std::string& reference,
                        const SimilarityScorer& scorer) {
  switch (scorer.kind) {
    case ScorerKind::TokenF1: return token_f1(candidate, reference);
    case ScorerKind::RougeL: return rouge_l(candidate, reference);
    case ScorerKind::Precomputed:
      throw MissingPrecomputed("precomputed scores need a candidate identity");
  }
  throw Error("unreachable scorer kind");
}

double score_candidate(const QueryRecord& record, const Candidate& candidate,
                       const SimilarityScorer& scorer) {
  if (scorer.kind == ScorerKind::Precomputed) {
    double value = 0.0;
    if (candidate.gold_similarity) {
      value = *candidate.gold_similarity;
    } else if (scorer.table) {
      const auto it = scorer.table->find({record.query_id, candidate.id});
      if (it == scorer.table->end()) {
        throw MissingPrecomputed("no precomputed score for query " + record.query_id +
                                 " candidate " + std::to_string(candidate.id));
      }
      value = it->second;
    } else {
      throw MissingPrecomputed("candidate " + std::to_string(candidate.id) + " of query " +
                               record.query_id + " has no precomputed similarity");
    }
    if (!(value >= 0.0 && value <= 1.0)) {
      throw ValidationError("precomputed similarity outside [0,1] for query " +
                            record.query_id);
    }
    return value;
  }
  if (!record.reference || split_lower(*record.reference).empty()) {
    throw MissingReference("query " + record.query_id + " has no reference answer");
  }
  return score_similarity(candidate.text, *record.reference, scorer);
}

std::vector<int> ideal_order(const QueryRecord& record, const SimilarityScorer& scorer) {
  std::vector<std::pair<double, int>> scored;
  scored.reserve(record.candidates.size());
  for (const auto& c : record.candidates) {
    scored.emplace_back(score_candidate(record, c, scorer), c.id);
  }
  std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  std::vector<int> order;
  order.reserve(scored.size());
  for (const auto& [sim, id] : scored) order.push_back(id);
  return order;
}

RankTarget build_rank_target(const QueryRecord& record, const SimilarityScorer& scorer,
                             const RankWeights& weights, int n_max) {
  validate_record(record);
  const int n = record.n();
  if (n > n_max) {
    throw CandidateOverflow("query " + record.query_id + " has " + std::to_string(n) +
                            " candidates, n_max=" + std::to_string(n_max));
  }

  RankTarget target;
  target.n = n;
  target.n_max = n_max;
  target.sims.resize(static_cast<size_t>(n));
  for (const auto& c : record.candidates) {
    target.sims[static_cast<size_t>(c.id - 1)] = score_candidate(record, c, scorer);
  }

  target.permutation.resize(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) target.permutation[static_cast<size_t>(i)] = i + 1;
  std::sort(target.permutation.begin(), target.permutation.end(), [&](int a, int b) {
    const double sa = target.sims[static_cast<size_t>(a - 1)];
    const double sb = target.sims[static_cast<size_t>(b - 1)];
    if (sa != sb) return sa > sb;
    return a < b;
  });

  const auto cand_index = [n_max](int m) { return 3 + n_max + (m - 1); };
  std::vector<bool> selected(static_cast<size_t>(n) + 1, false);

  for (int k = 1; k <= n; ++k) {
    const int chosen = target.permutation[static_cast<size_t>(k - 1)];

    target.tokens.push_back(Token::rank(k));
    target.step_kind.push_back(StepKind::RankMarker);
    target.weights.push_back(0.0);

    std::vector<int> mask;
    for (int m = 1; m <= n; ++m) {
      if (!selected[static_cast<size_t>(m)]) mask.push_back(cand_index(m));
    }
    mask.push_back(Vocabulary::kEndList);
    std::sort(mask.begin(), mask.end());
    target.masks.push_back(std::move(mask));

    target.tokens.push_back(Token::cand(chosen));
    target.step_kind.push_back(StepKind::Pointer);
    target.weights.push_back(rank_weight(k, weights));

    selected[static_cast<size_t>(chosen)] = true;
  }

  // terminator step: everything selected, only ENDLIST remains
  target.masks.push_back({Vocabulary::kEndList});
  target.tokens.push_back(Token::endlist());
  target.step_kind.push_back(StepKind::Pointer);
  target.weights.push_back(1.0);

  return target;
}

std::string render_sequence(const RankTarget& target) {
  std::string out;
  for (int k = 1; k <= target.n; ++k) {
    out += "<R" + std::to_string(k) + "> = <CAND_" +
           std::to_string(target.permutation[static_cast<size_t>(k - 1)]) + ">\n";
  }
  out += "<ENDLIST>";
  return out;
}

namespace {

std::string strip(const std::string& line) {
  size_t b = 0, e = line.size();
  while (b < e && std::isspace(static_cast<unsigned char>(line[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(line[e - 1]))) --e;
  return line.substr(b, e - b);
}

// parses "<R{k}> = <CAND_{m}>"; returns false on malformed syntax
bool parse_pointer_line(const std::string& line, int& k, int& m) {
  const auto read_int = [](const std::string& s, size_t& pos, int& out) {
    size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start) return false;
    out = std::stoi(s.substr(start, pos - start));
    return true;
  };
  size_t pos = 0;
  if (line.rfind("<R", 0) != 0) return false;
  pos = 2;
  if (!read_int(line, pos, k)) return false;
  const std::string mid = "> = <CAND_";
  if (line.compare(pos, mid.size(), mid) != 0) return false;
  pos += mid.size();
  if (!read_int(line, pos, m)) return false;
  return line.compare(pos, std::string::npos, ">") == 0;
}

}  // namespace

std::vector<int> parse_sequence(const std::string& text, int n) {
  std::vector<std::string> lines;
  std::string cur;
  for (const char c : text) {
    if (c == '\n') {
      lines.push_back(strip(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  lines.push_back(strip(cur));
  while (!lines.empty() && lines.back().empty()) lines.pop_back();

  if (lines.empty()) throw ParseError("empty sequence");

  std::vector<int> perm;
  std::vector<bool> seen(static_cast<size_t>(n) + 1, false);
  bool ended = false;
  for (size_t i = 0; i < lines.size(); ++i) {
    const auto& line = lines[i];
    if (ended) throw ParseError("content after <ENDLIST> at line " + std::to_string(i + 1));
    if (line == "<ENDLIST>") {
      ended = true;
      continue;
    }
    int k = 0, m = 0;
    if (!parse_pointer_line(line, k, m)) {
      throw ParseError("malformed line " + std::to_string(i + 1) + ": " + line);
    }
    if (k != static_cast<int>(perm.size()) + 1) {
      throw ParseError("rank markers out of order at line " + std::to_string(i + 1));
    }
    if (m < 1 || m > n) {
      throw ParseError("candidate id " + std::to_string(m) + " outside 1.." +
                       std::to_string(n));
    }
    if (seen[static_cast<size_t>(m)]) {
      throw DuplicatePointer("candidate " + std::to_string(m) + " pointed to twice");
    }
    seen[static_cast<size_t>(m)] = true;
    perm.push_back(m);
  }
  if (!ended) throw MissingEndList("sequence does not end with <ENDLIST>");
  if (static_cast<int>(perm.size()) != n) {
    throw ParseError("expected " + std::to_string(n) + " ranks, got " +
                     std::to_string(perm.size()));
  }
  return perm;
}

}  // namespace ptrrank
