#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "semnet/error.hpp"
#include "semnet/sentiment.hpp"

using namespace semnet;
using semnet::testing::make_graph;

namespace {

SentimentLexicon small_lexicon() { return SentimentLexicon({{"love", 0.8}, {"cruel", -0.7}, {"good", 0.5}, {"bad", -0.4}}); }

Document doc(std::vector<Sentence> s) { return {"d", std::move(s)}; }

}  // namespace

TEST_CASE("score_document") {
  const auto lex = small_lexicon();
  CHECK(*score_document(doc({{"love"}, {"cruel", "wolf"}}), lex) == doctest::Approx(0.05));
  CHECK_FALSE(score_document(doc({{"wolf", "pack"}}), lex).has_value());
  CHECK_FALSE(score_document(doc({}), lex).has_value());
  // Repeated lemmas count each time.
  CHECK(*score_document(doc({{"love", "love", "bad"}}), lex) == doctest::Approx((0.8 + 0.8 - 0.4) / 3));
}

TEST_CASE("score_document equals a brute-force mean on fuzzed documents") {
  const auto lex = small_lexicon();
  const std::vector<std::string> words{"love", "cruel", "good", "bad", "wolf", "tax", "pup"};
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 500; ++trial) {
    Document d;
    d.sentences.resize(rng() % 4);
    double sum = 0;
    int hits = 0;
    for (auto& s : d.sentences) {
      s.resize(1 + rng() % 6);
      for (auto& w : s) {
        w = words[rng() % words.size()];
        if (auto v = lex.valence(w)) {
          sum += *v;
          ++hits;
        }
      }
    }
    const auto score = score_document(d, lex);
    CHECK(score.has_value() == (hits > 0));
    if (score) {
      CHECK(*score == doctest::Approx(sum / hits).epsilon(1e-12));
      CHECK(*score >= -1.0);
      CHECK(*score <= 1.0);
    }
  }
}

TEST_CASE("community_sentiment: hand-computed two-community corpus") {
  const auto g = make_graph({"tax", "vote", "wolf", "pup"}, {{"tax", "vote"}, {"wolf", "pup"}});
  const CommunityPartition p{{0, 0, 1, 1}, 2, 0.5};
  const std::vector<Document> docs{
      doc({{"tax", "vote", "love"}}),            // 0.8, all in community 0
      doc({{"wolf", "pup"}, {"cruel", "tax"}}),  // -0.7, 2/3 in 1, 1/3 in 0
      doc({{"wolf", "good", "love"}}),           // 0.65, all in community 1
  };
  const auto s = community_sentiment(docs, g, p, small_lexicon());
  REQUIRE(s.size() == 2);
  CHECK(s.at(0).mean_valence == doctest::Approx(0.425).epsilon(1e-12));
  CHECK(s.at(0).support == 2);
  CHECK(s.at(1).mean_valence == doctest::Approx(0.11).epsilon(1e-12));
  CHECK(s.at(1).support == 2);
}

TEST_CASE("community_sentiment: degenerate cases") {
  const auto g = make_graph({"tax", "vote", "wolf"}, {{"tax", "vote"}, {"vote", "wolf"}});
  const CommunityPartition one{{0, 0, 0}, 1, 0.0};
  const std::vector<Document> docs{doc({{"tax", "love"}}), doc({{"wolf", "cruel", "bad"}}), doc({{"vote", "good"}})};
  const auto s = community_sentiment(docs, g, one, small_lexicon());
  REQUIRE(s.size() == 1);
  const double corpus_mean = (0.8 + (-0.7 - 0.4) / 2 + 0.5) / 3;
  CHECK(s.at(0).mean_valence == doctest::Approx(corpus_mean));
  CHECK(s.at(0).support == 3);

  const std::vector<Document> unscorable{doc({{"tax", "wolf"}})};
  CHECK(community_sentiment(unscorable, g, one, small_lexicon()).empty());
  CHECK_THROWS_AS(community_sentiment(docs, g, CommunityPartition{{0}, 1, 0.0}, small_lexicon()), DataError);
}

TEST_CASE("identity_alignment") {
  const auto sets = parse_identity_sets("Laborer: work, grind\nWolf: pack, pup\nNobody: zebra\n");
  REQUIRE(sets.size() == 3);
  const std::vector<Document> docs{
      doc({{"grind", "bad"}, {"cruel"}}),
      doc({{"pack", "love"}}),
      doc({{"pack", "grind"}}),
  };
  const auto rows = identity_alignment(docs, sets, small_lexicon());
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].name == "Laborer");
  CHECK(rows[0].matching_documents == 2);
  CHECK(rows[0].scored_documents == 1);
  CHECK(*rows[0].mean_valence == doctest::Approx(-0.55));
  CHECK(rows[1].matching_documents == 2);
  CHECK(*rows[1].mean_valence == doctest::Approx(0.8));
  CHECK(rows[2].matching_documents == 0);
  CHECK_FALSE(rows[2].mean_valence.has_value());
}

TEST_CASE("identity_alignment properties on fuzzed corpora") {
  const auto lex = small_lexicon();
  const std::vector<std::string> words{"love", "cruel", "work", "grind", "pack", "pup", "tax", "snow"};
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Document> docs(rng() % 8);
    for (auto& d : docs) {
      d.sentences.resize(1 + rng() % 3);
      for (auto& s : d.sentences) {
        s.resize(1 + rng() % 4);
        for (auto& w : s) w = words[rng() % words.size()];
      }
    }
    IdentityTermSet set{"s", {words[rng() % words.size()]}};
    const auto before = identity_alignment(docs, std::vector{set}, lex)[0];

    std::size_t brute = 0;
    for (const auto& d : docs) {
      bool hit = false;
      for (const auto& s : d.sentences)
        for (const auto& w : s) hit = hit || set.terms.contains(w);
      brute += hit ? 1 : 0;
    }
    CHECK(before.matching_documents == brute);
    if (before.mean_valence) {
      CHECK(*before.mean_valence >= -1.0);
      CHECK(*before.mean_valence <= 1.0);
    }

    // Adding a term never lowers the count.
    set.terms.insert(words[rng() % words.size()]);
    CHECK(identity_alignment(docs, std::vector{set}, lex)[0].matching_documents >= before.matching_documents);

    // A document with no lexicon and no identity terms changes nothing.
    auto extended = docs;
    extended.push_back(doc({{"neutralword", "another"}}));
    const auto after = identity_alignment(extended, std::vector{set}, lex)[0];
    const auto base = identity_alignment(docs, std::vector{set}, lex)[0];
    CHECK(after.matching_documents == base.matching_documents);
    CHECK(after.mean_valence == base.mean_valence);
  }
}

TEST_CASE("lexicon and identity-set parsing") {
  const auto lex = SentimentLexicon::parse("# comment\nlove\t0.8\ncruel\t-0.7\n");
  CHECK(lex.size() == 2);
  CHECK(*lex.valence("cruel") == doctest::Approx(-0.7));
  CHECK_FALSE(lex.valence("wolf").has_value());
  CHECK_THROWS_AS(SentimentLexicon::parse("love\t1.5\n"), DataError);
  CHECK_THROWS_AS(SentimentLexicon::parse("love 0.5\n"), DataError);
  CHECK_THROWS_AS(SentimentLexicon::parse("Lo-ve\t0.5\n"), DataError);
  CHECK_THROWS_AS(parse_identity_sets("Empty:\n"), DataError);

  const auto shipped = SentimentLexicon::defaults();
  CHECK(shipped.size() >= 1500);
  for (const auto& [lemma, v] : shipped.entries()) {
    CHECK(v >= -1.0);
    CHECK(v <= 1.0);
  }
  CHECK(*shipped.valence("cruel") < 0.0);
  CHECK(*shipped.valence("love") > 0.0);

  const auto sets = default_identity_sets();
  REQUIRE(sets.size() == 2);
  CHECK(sets[0].name == "Laborer");
  CHECK(sets[0].terms == WordSet{"grind", "job", "shift", "work"});
  CHECK(sets[1].name == "Wolf");
  CHECK(sets[1].terms == WordSet{"pack", "parent", "pup", "safe"});
}
