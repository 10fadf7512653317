#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "helpers.hpp"
#include "ptrrank/target_builder.hpp"

using namespace ptrrank;
using ptrrank::testing::make_record;
using ptrrank::testing::make_scored_record;

TEST_CASE("token_f1 golden values") {
  const auto scorer = SimilarityScorer::token_f1();
  // P = 1, R = 2/3, F1 = 0.8
  CHECK(score_similarity("red car", "a red car", scorer) == 0.8);
  CHECK(score_similarity("exact same words", "exact same words", scorer) == 1.0);
  CHECK(score_similarity("dog", "red car", scorer) == 0.0);
  CHECK_THROWS_AS(score_similarity("a", "   ", scorer), MissingReference);
}

TEST_CASE("token_f1 identity is 1 for any non-empty text") {
  const auto scorer = SimilarityScorer::token_f1();
  Rng rng(3);
  const std::vector<std::string> words = {"red", "car", "sat", "on", "mat", "dog"};
  for (int trial = 0; trial < 50; ++trial) {
    std::string text;
    const int len = rng.uniform_int(1, 6);
    for (int i = 0; i < len; ++i) {
      if (i) text += ' ';
      text += words[static_cast<size_t>(rng.uniform_int(0, 5))];
    }
    CHECK(score_similarity(text, text, scorer) == 1.0);
  }
}

TEST_CASE("token_f1 counts multiset overlap") {
  const auto scorer = SimilarityScorer::token_f1();
  // overlap of "a a" with "a" is one token, not two
  CHECK(score_similarity("a a", "a", scorer) == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("precomputed scorer sources") {
  QueryRecord r = make_scored_record("q1", {0.4, 0.9});
  const auto scorer = SimilarityScorer::precomputed();
  CHECK(score_candidate(r, r.candidates[1], scorer) == 0.9);

  QueryRecord bare = make_record("q2", {"a", "b"});
  CHECK_THROWS_AS(score_candidate(bare, bare.candidates[0], scorer), MissingPrecomputed);

  auto table = std::make_shared<std::map<std::pair<std::string, int>, double>>();
  (*table)[{"q2", 1}] = 0.25;
  const auto from_file = SimilarityScorer::precomputed(table);
  CHECK(score_candidate(bare, bare.candidates[0], from_file) == 0.25);
  CHECK_THROWS_AS(score_candidate(bare, bare.candidates[1], from_file), MissingPrecomputed);

  QueryRecord out_of_range = make_scored_record("q3", {1.5});
  CHECK_THROWS_AS(score_candidate(out_of_range, out_of_range.candidates[0], scorer),
                  ValidationError);

  // string-level calls cannot resolve a candidate identity
  CHECK_THROWS_AS(score_similarity("a", "b", scorer), MissingPrecomputed);
}

TEST_CASE("build_rank_target orders by similarity with id tie-break") {
  const RankWeights weights;
  const auto scorer = SimilarityScorer::precomputed();

  const auto t = build_rank_target(make_scored_record("q", {0.2, 0.9, 0.9, 0.5}), scorer,
                                   weights, 4);
  CHECK(t.permutation == std::vector<int>{2, 3, 4, 1});

  const auto ties = build_rank_target(make_scored_record("q", {0.5, 0.5, 0.5}), scorer,
                                      weights, 4);
  CHECK(ties.permutation == std::vector<int>{1, 2, 3});
}

TEST_CASE("single-candidate target") {
  const auto t = build_rank_target(make_scored_record("q", {0.7}),
                                   SimilarityScorer::precomputed(), RankWeights{}, 1);
  REQUIRE(t.tokens.size() == 3);
  CHECK(t.tokens[0] == Token::rank(1));
  CHECK(t.tokens[1] == Token::cand(1));
  CHECK(t.tokens[2] == Token::endlist());
  REQUIRE(t.masks.size() == 2);
  // cand block starts at 3 + n_max with n_max = 1
  CHECK(t.masks[0] == std::vector<int>{Vocabulary::kEndList, 4});
  CHECK(t.masks[1] == std::vector<int>{Vocabulary::kEndList});
}

TEST_CASE("target masks shrink by one and always contain ENDLIST") {
  Rng rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = rng.uniform_int(1, 8);
    const auto record = ptrrank::testing::random_scored_record(rng, "q", n);
    const auto t = build_rank_target(record, SimilarityScorer::precomputed(), RankWeights{},
                                     10);
    REQUIRE(static_cast<int>(t.masks.size()) == n + 1);
    CHECK(static_cast<int>(t.masks[0].size()) == n + 1);
    for (size_t k = 0; k < t.masks.size(); ++k) {
      if (k > 0) CHECK(t.masks[k].size() == t.masks[k - 1].size() - 1);
      CHECK(std::find(t.masks[k].begin(), t.masks[k].end(), Vocabulary::kEndList) !=
            t.masks[k].end());
    }
    // permutation sorted by similarity, ties by id
    for (size_t i = 0; i + 1 < t.permutation.size(); ++i) {
      const double a = t.sims[static_cast<size_t>(t.permutation[i] - 1)];
      const double b = t.sims[static_cast<size_t>(t.permutation[i + 1] - 1)];
      CHECK((a > b || (a == b && t.permutation[i] < t.permutation[i + 1])));
    }
  }
}

TEST_CASE("target weights follow the rank weight table, terminator weighs 1") {
  const auto t = build_rank_target(make_scored_record("q", {0.9, 0.8, 0.7, 0.6}),
                                   SimilarityScorer::precomputed(), RankWeights{}, 4);
  // stream: R1 c R2 c R3 c R4 c END
  CHECK(t.weights == std::vector<double>{0, 3.0, 0, 1.5, 0, 1.2, 0, 1.0, 1.0});
  CHECK(t.step_kind[0] == StepKind::RankMarker);
  CHECK(t.step_kind[1] == StepKind::Pointer);
  CHECK(t.step_kind.back() == StepKind::Pointer);
}

TEST_CASE("missing reference and overflow") {
  const auto lexical = SimilarityScorer::token_f1();
  CHECK_THROWS_AS(
      build_rank_target(make_record("q", {"a", "b"}), lexical, RankWeights{}, 4),
      MissingReference);
  CHECK_THROWS_AS(build_rank_target(make_scored_record("q", {0.1, 0.2, 0.3, 0.4, 0.5}),
                                    SimilarityScorer::precomputed(), RankWeights{}, 4),
                  CandidateOverflow);
}

TEST_CASE("render_sequence exact surface form") {
  const auto two = build_rank_target(make_scored_record("q", {0.1, 0.9}),
                                     SimilarityScorer::precomputed(), RankWeights{}, 2);
  CHECK(render_sequence(two) == "<R1> = <CAND_2>\n<R2> = <CAND_1>\n<ENDLIST>");

  const auto one = build_rank_target(make_scored_record("q", {0.5}),
                                     SimilarityScorer::precomputed(), RankWeights{}, 1);
  CHECK(render_sequence(one) == "<R1> = <CAND_1>\n<ENDLIST>");
}

TEST_CASE("parse_sequence inverts render_sequence") {
  Rng rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = rng.uniform_int(1, 8);
    const auto record = ptrrank::testing::random_scored_record(rng, "q", n);
    const auto t =
        build_rank_target(record, SimilarityScorer::precomputed(), RankWeights{}, 8);
    CHECK(parse_sequence(render_sequence(t), n) == t.permutation);
  }
}

TEST_CASE("parse_sequence error paths") {
  CHECK_THROWS_AS(parse_sequence("", 2), ParseError);
  CHECK_THROWS_AS(parse_sequence("<R1> = <CAND_1>\n<R2> = <CAND_1>\n<ENDLIST>", 2),
                  DuplicatePointer);
  CHECK_THROWS_AS(parse_sequence("<R1> = <CAND_1>\n<R2> = <CAND_2>", 2), MissingEndList);
  CHECK_THROWS_AS(parse_sequence("<R2> = <CAND_1>\n<R1> = <CAND_2>\n<ENDLIST>", 2),
                  ParseError);
  CHECK_THROWS_AS(parse_sequence("<R1> = <CAND_3>\n<ENDLIST>", 2), ParseError);
  CHECK_THROWS_AS(parse_sequence("<R1> = <CAND_1>\n<ENDLIST>", 2), ParseError);
  CHECK_THROWS_AS(parse_sequence("gibberish\n<ENDLIST>", 1), ParseError);
  CHECK_THROWS_AS(parse_sequence("<R1> = <CAND_1>\n<ENDLIST>\nextra", 1), ParseError);
  // tolerated: trailing newline
  CHECK(parse_sequence("<R1> = <CAND_1>\n<ENDLIST>\n", 1) == std::vector<int>{1});
}

TEST_CASE("ideal_order matches target permutation") {
  Rng rng(29);
  for (int trial = 0; trial < 20; ++trial) {
    const auto record = ptrrank::testing::random_scored_record(rng, "q", 5);
    const auto t =
        build_rank_target(record, SimilarityScorer::precomputed(), RankWeights{}, 5);
    CHECK(ideal_order(record, SimilarityScorer::precomputed()) == t.permutation);
  }
}
