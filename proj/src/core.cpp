#include "ptrrank/core.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace ptrrank {

const Candidate& QueryRecord::by_id(int id) const {
  for (const auto& c : candidates) {
    if (c.id == id) return c;
  }
  throw Error("no candidate with id " + std::to_string(id) + " in query " + query_id);
}

namespace {

bool blank(const std::string& s) {
  return std::all_of(s.begin(), s.end(),
                     [](unsigned char c) { return std::isspace(c); });
}

}  // namespace

void validate_record(const QueryRecord& record) {
  if (record.candidates.empty()) {
    throw ValidationError("query " + record.query_id + " has no candidates");
  }
  std::set<int> ids;
  for (const auto& c : record.candidates) {
    if (!ids.insert(c.id).second) {
      throw BadCandidateIds("query " + record.query_id + ": duplicate candidate id " +
                            std::to_string(c.id));
    }
    if (blank(c.text)) {
      throw ValidationError("query " + record.query_id + ": candidate " +
                            std::to_string(c.id) + " has empty text");
    }
  }
  const int n = record.n();
  if (*ids.begin() != 1 || *ids.rbegin() != n) {
    throw BadCandidateIds("query " + record.query_id + ": candidate ids must form 1.." +
                          std::to_string(n));
  }
}

Vocabulary::Vocabulary(std::vector<std::string> sorted_words, int n_max)
    : n_max_(n_max), words_(std::move(sorted_words)) {
  if (n_max_ < 1) throw Error("n_max must be >= 1");
  if (!std::is_sorted(words_.begin(), words_.end())) {
    throw Error("vocabulary words must be sorted");
  }
  if (std::adjacent_find(words_.begin(), words_.end()) != words_.end()) {
    throw Error("vocabulary words must be unique");
  }
  const int base = text_base() + 1;  // +1 skips <UNK>
  for (size_t i = 0; i < words_.size(); ++i) {
    word_to_index_[words_[i]] = base + static_cast<int>(i);
  }
}

int Vocabulary::rank_index(int k) const {
  if (k < 1 || k > n_max_) throw Error("rank marker out of range: " + std::to_string(k));
  return 3 + (k - 1);
}

int Vocabulary::cand_index(int m) const {
  if (m < 1 || m > n_max_) throw Error("candidate pointer out of range: " + std::to_string(m));
  return 3 + n_max_ + (m - 1);
}

Token Vocabulary::token_at(int index) const {
  if (index < 0 || index >= size()) throw Error("vocab index out of range: " + std::to_string(index));
  if (index == kPad) return Token::pad();
  if (index == kBos) return Token::bos();
  if (index == kEndList) return Token::endlist();
  if (index < 3 + n_max_) return Token::rank(index - 3 + 1);
  if (index < 3 + 2 * n_max_) return Token::cand(index - 3 - n_max_ + 1);
  return Token::text(index);
}

int Vocabulary::index_of(const Token& token) const {
  switch (token.kind) {
    case TokenKind::Pad: return kPad;
    case TokenKind::Bos: return kBos;
    case TokenKind::EndList: return kEndList;
    case TokenKind::RankMarker: return rank_index(token.value);
    case TokenKind::CandPointer: return cand_index(token.value);
    case TokenKind::Text:
      if (token.value < text_base() || token.value >= size()) {
        throw Error("text token index out of range: " + std::to_string(token.value));
      }
      return token.value;
  }
  throw Error("unreachable token kind");
}

std::string Vocabulary::token_string(int index) const {
  const Token t = token_at(index);
  switch (t.kind) {
    case TokenKind::Pad: return "<PAD>";
    case TokenKind::Bos: return "<BOS>";
    case TokenKind::EndList: return "<ENDLIST>";
    case TokenKind::RankMarker: return "<R" + std::to_string(t.value) + ">";
    case TokenKind::CandPointer: return "<CAND_" + std::to_string(t.value) + ">";
    case TokenKind::Text:
      if (index == unk_index()) return "<UNK>";
      return words_[static_cast<size_t>(index - text_base() - 1)];
  }
  throw Error("unreachable token kind");
}

std::optional<int> Vocabulary::word_index(const std::string& word) const {
  const auto it = word_to_index_.find(word);
  if (it == word_to_index_.end()) return std::nullopt;
  return it->second;
}

uint64_t Vocabulary::hash() const {
  uint64_t h = 14695981039346656037ull;
  const auto mix = [&h](const std::string& s) {
    for (const unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ull;
    }
    h ^= 0xff;  // separator
    h *= 1099511628211ull;
  };
  mix(std::to_string(n_max_));
  for (int i = 0; i < size(); ++i) mix(token_string(i));
  return h;
}

std::vector<std::string> split_lower(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (const char ch : text) {
    if (std::isspace(static_cast<unsigned char>(ch))) {
      if (!cur.empty()) {
        out.push_back(std::move(cur));
        cur.clear();
      }
    } else {
      cur.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

std::vector<int> tokenize(const std::string& text, const Vocabulary& vocab) {
  std::vector<int> out;
  for (const auto& word : split_lower(text)) {
    out.push_back(vocab.word_index(word).value_or(vocab.unk_index()));
  }
  return out;
}

std::string render_text(const std::vector<int>& indices, const Vocabulary& vocab) {
  std::string out;
  for (size_t i = 0; i < indices.size(); ++i) {
    if (i > 0) out.push_back(' ');
    out += vocab.token_string(indices[i]);
  }
  return out;
}

Vocabulary vocab_build(const std::vector<QueryRecord>& corpus, int n_max) {
  std::set<std::string> words;
  const auto add = [&words](const std::string& text) {
    for (auto& w : split_lower(text)) words.insert(std::move(w));
  };
  for (const auto& record : corpus) {
    if (record.n() > n_max) {
      throw CandidateOverflow("query " + record.query_id + " has " +
                              std::to_string(record.n()) + " candidates, n_max=" +
                              std::to_string(n_max));
    }
    add(record.question);
    if (record.reference) add(*record.reference);
    for (const auto& c : record.candidates) add(c.text);
  }
  return Vocabulary(std::vector<std::string>(words.begin(), words.end()), n_max);
}

}  // namespace ptrrank
