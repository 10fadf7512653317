#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace ptrrank {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad input data (files, flags, records). The CLI maps these to exit code 1;
// everything else is treated as an internal error (exit code 2).
class ValidationError : public Error {
 public:
  using Error::Error;
};

#define PTRRANK_ERROR(NAME, BASE) \
  class NAME : public BASE {      \
   public:                        \
    using BASE::BASE;             \
  }

PTRRANK_ERROR(CandidateOverflow, ValidationError);
PTRRANK_ERROR(MissingReference, ValidationError);
PTRRANK_ERROR(MissingPrecomputed, ValidationError);
PTRRANK_ERROR(ParseError, ValidationError);
PTRRANK_ERROR(DuplicatePointer, ValidationError);
PTRRANK_ERROR(MissingEndList, ValidationError);
PTRRANK_ERROR(DuplicateQueryId, ValidationError);
PTRRANK_ERROR(BadCandidateIds, ValidationError);
PTRRANK_ERROR(InvariantViolation, ValidationError);
PTRRANK_ERROR(NotAPermutation, ValidationError);
PTRRANK_ERROR(VocabMismatch, ValidationError);
PTRRANK_ERROR(IoError, ValidationError);

PTRRANK_ERROR(EmptyMask, Error);
PTRRANK_ERROR(TargetNotInMask, Error);
PTRRANK_ERROR(ShapeMismatch, Error);
PTRRANK_ERROR(NonFiniteLogit, Error);
PTRRANK_ERROR(NonFiniteLoss, Error);
PTRRANK_ERROR(EmptyList, Error);

#undef PTRRANK_ERROR

// Serial is the reference path; Parallel runs the same per-item work under
// OpenMP with results reduced in item order, so outputs are bit-identical.
enum class Exec { Serial, Parallel };

struct Candidate {
  int id = 0;  // 1-based, unique within a query, ids form 1..N
  std::string text;
  std::optional<std::vector<double>> features;
  std::optional<double> gold_similarity;  // precomputed similarity to the reference
  std::optional<double> gen_score;        // upstream generator score, carried through untouched
};

struct QueryRecord {
  std::string query_id;
  std::string question;
  std::optional<std::string> reference;
  std::vector<Candidate> candidates;

  int n() const { return static_cast<int>(candidates.size()); }
  const Candidate& by_id(int id) const;
};

// Throws BadCandidateIds / ValidationError when the record invariants fail.
void validate_record(const QueryRecord& record);

enum class TokenKind : uint8_t { Pad, Bos, EndList, RankMarker, CandPointer, Text };

struct Token {
  TokenKind kind = TokenKind::Pad;
  int value = 0;  // rank k, candidate id m, or global vocab index for Text

  static Token pad() { return {TokenKind::Pad, 0}; }
  static Token bos() { return {TokenKind::Bos, 0}; }
  static Token endlist() { return {TokenKind::EndList, 0}; }
  static Token rank(int k) { return {TokenKind::RankMarker, k}; }
  static Token cand(int m) { return {TokenKind::CandPointer, m}; }
  static Token text(int vocab_index) { return {TokenKind::Text, vocab_index}; }

  bool operator==(const Token&) const = default;
};

// Extended vocabulary. Fixed layout, front to back:
//   index 0            <PAD>
//   index 1            <BOS>
//   index 2            <ENDLIST>
//   3 .. 3+n_max-1     <R1> .. <Rn_max>
//   3+n_max .. +2n-1   <CAND_1> .. <CAND_n_max>
//   3+2n_max           <UNK>
//   3+2n_max+1 ..      corpus words, lowercased, sorted, unique
class Vocabulary {
 public:
  static constexpr int kPad = 0;
  static constexpr int kBos = 1;
  static constexpr int kEndList = 2;

  Vocabulary(std::vector<std::string> sorted_words, int n_max);

  int n_max() const { return n_max_; }
  int size() const { return text_base() + text_count(); }
  int text_base() const { return 3 + 2 * n_max_; }
  int text_count() const { return 1 + static_cast<int>(words_.size()); }

  int rank_index(int k) const;
  int cand_index(int m) const;
  int endlist_index() const { return kEndList; }
  int unk_index() const { return text_base(); }

  Token token_at(int index) const;
  int index_of(const Token& token) const;
  std::string token_string(int index) const;

  // Global index of a (lowercased) word, if present.
  std::optional<int> word_index(const std::string& word) const;
  const std::vector<std::string>& words() const { return words_; }

  // FNV-1a over n_max and every token string; pins checkpoints to the
  // vocabulary they were trained with.
  uint64_t hash() const;

 private:
  int n_max_;
  std::vector<std::string> words_;
  std::unordered_map<std::string, int> word_to_index_;  // word -> global index
};

// Lowercased whitespace-split tokens; shared by the tokenizer and the
// lexical similarity scorers.
std::vector<std::string> split_lower(const std::string& text);

// Global vocab indices for the text; unknown words map to <UNK>.
std::vector<int> tokenize(const std::string& text, const Vocabulary& vocab);

// Space-joined token strings; tokenize(render_text(ids)) == ids.
std::string render_text(const std::vector<int>& indices, const Vocabulary& vocab);

// Collects words from questions, references and candidate texts.
// Throws CandidateOverflow if any record has more than n_max candidates.
Vocabulary vocab_build(const std::vector<QueryRecord>& corpus, int n_max);

}  // namespace ptrrank
