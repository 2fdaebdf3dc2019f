#include <doctest.h>

#include <algorithm>
#include <random>

#include "helpers.hpp"
#include "oracles.hpp"
#include "sciind/fractional.hpp"
#include "sciind/synth.hpp"

using namespace sciind;
using testing::pub;

TEST_SUITE("fractional") {
  TEST_CASE("two authors from A, one from B") {
    const auto w = country_weights(pub("p", 2013, {"F"}, {{"AA"}, {"AA"}, {"BB"}}, 0));
    REQUIRE(w.weights.size() == 2);
    CHECK(w.weights.at("AA") == 2.0 / 3.0);
    CHECK(w.weights.at("BB") == 1.0 / 3.0);
  }

  TEST_CASE("three countries with equal authors") {
    const auto w = country_weights(pub("p", 2013, {"F"}, {{"AA"}, {"BB"}, {"CC"}}, 0));
    for (const auto& [c, x] : w.weights) CHECK(x == 1.0 / 3.0);
  }

  TEST_CASE("multi-affiliation author splits equally") {
    const auto w = country_weights(pub("p", 2013, {"F"}, {{"AA", "BB"}, {"AA"}}, 0));
    CHECK(w.weights.at("AA") == 0.75);
    CHECK(w.weights.at("BB") == 0.25);
  }

  TEST_CASE("no resolvable country gives an empty vector") {
    CHECK(country_weights(pub("p", 2013, {"F"}, {{}}, 0)).weights.empty());
  }

  TEST_CASE("authors without a country are renormalized away") {
    const auto w = country_weights(pub("p", 2013, {"F"}, {{"AA"}, {}, {"BB"}, {"BB"}}, 0));
    CHECK(w.weights.at("AA") == 1.0 / 3.0);
    CHECK(w.weights.at("BB") == 2.0 / 3.0);
  }

  TEST_CASE("counts for tiny corpora") {
    Corpus one({pub("p", 2013, {"F"}, {{"AA"}}, 0)});
    auto c = fractional_pub_counts(one);
    CHECK(c.pubs.at("AA") == 1.0);
    CHECK(c.international.at("AA") == 0.0);
    CHECK(international_share(c).at("AA") == 0.0);

    Corpus two({pub("p", 2013, {"F"}, {{"AA"}, {"AA"}, {"BB"}}, 0)});
    c = fractional_pub_counts(two);
    CHECK(c.pubs.at("AA") == 2.0 / 3.0);
    CHECK(c.pubs.at("BB") == 1.0 / 3.0);
    CHECK(c.international.at("AA") == 2.0 / 3.0);
    CHECK(international_share(c).at("BB") == 100.0);
  }

  TEST_CASE("weights match exact rationals, sum to one, ignore author order") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
      const auto corpus = testing::random_corpus(rng, 10);
      for (const auto& [id, p] : corpus) {
        const auto w = country_weights(p);
        const auto exact = oracle::weights(p);
        REQUIRE(w.weights.size() == exact.size());
        double sum = 0;
        for (const auto& [c, x] : w.weights) {
          CHECK(x == doctest::Approx(exact.at(c).value()).epsilon(1e-15));
          CHECK(x > 0.0);
          sum += x;
        }
        if (!w.weights.empty()) CHECK(std::abs(sum - 1.0) <= 1e-12);

        auto shuffled = p;
        std::shuffle(shuffled.authors.begin(), shuffled.authors.end(), rng);
        const auto ws = country_weights(shuffled);
        for (const auto& [c, x] : w.weights) CHECK(ws.weights.at(c) == doctest::Approx(x).epsilon(1e-15));
      }
    }
  }

  TEST_CASE("international share equals brute force over papers") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 50; ++trial) {
      const auto corpus = testing::random_corpus(rng, 30);
      const auto counts = fractional_pub_counts(corpus);
      std::map<std::string, double> total, intl;
      std::size_t attributed = 0;
      for (const auto& [id, p] : corpus) {
        const auto w = oracle::weights(p);
        attributed += !w.empty();
        for (const auto& [c, x] : w) {
          total[c] += x.value();
          if (w.size() >= 2) intl[c] += x.value();
        }
      }
      CHECK(counts.attributed == attributed);
      double sum = 0;
      for (const auto& [c, n] : counts.pubs) sum += n;
      CHECK(std::abs(sum - static_cast<double>(attributed)) <= 1e-9);
      const auto shares = international_share(counts);
      for (const auto& [c, n] : total) {
        CHECK(counts.pubs.at(c) == doctest::Approx(n).epsilon(1e-12));
        const double expect = 100.0 * intl[c] / n;
        CHECK(shares.at(c) == doctest::Approx(expect).epsilon(1e-12));
        CHECK(shares.at(c) >= 0.0);
        CHECK(shares.at(c) <= 100.0);
        CHECK(counts.international.at(c) <= counts.pubs.at(c) + 1e-12);
      }
    }
  }

  TEST_CASE("result does not depend on worker count") {
    const auto out = generate_synthetic_corpus(default_synth_params(17));
    const auto a = fractional_pub_counts(out.corpus, 1);
    for (unsigned w : {2u, 5u, 16u}) CHECK(fractional_pub_counts(out.corpus, w) == a);
  }
}
