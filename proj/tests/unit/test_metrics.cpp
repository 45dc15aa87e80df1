#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "dap/generators.hpp"
#include "dap/metrics.hpp"
#include "oracles.hpp"

using namespace dap;

namespace {

Ballot bits(const char* s) {
  std::vector<int> v;
  for (; *s; ++s) v.push_back(*s == '1');
  return Ballot::from_bits(v);
}

std::vector<int> as_ints(const Ballot& b) {
  std::vector<int> v(b.size());
  for (std::size_t j = 0; j < b.size(); ++j) v[j] = b.test(j);
  return v;
}

}  // namespace

TEST_CASE("hamming") {
  CHECK(hamming(bits("110000"), bits("001100")) == 4);
  CHECK(hamming(bits("1011"), bits("1011")) == 0);
  const auto u = bits("1100101");
  CHECK(hamming(u, u.complement()) == 7);
  CHECK_THROWS_AS(hamming(bits("10"), bits("100")), std::invalid_argument);
}

TEST_CASE("pair counts sum to m") {
  const auto c = pair_counts(bits("110010"), bits("101011"));
  CHECK(c.n11 == 2);
  CHECK(c.n10 == 1);
  CHECK(c.n01 == 2);
  CHECK(c.n00 == 1);
  CHECK(c.n11 + c.n10 + c.n01 + c.n00 == 6);
}

TEST_CASE("jaccard") {
  CHECK(jaccard(bits("1100"), bits("1010")) == doctest::Approx(2.0 / 3.0));
  CHECK(jaccard(bits("1100"), bits("1100")) == 0.0);
  CHECK(jaccard(bits("1100"), bits("0011")) == 1.0);
  CHECK(jaccard(bits("0000"), bits("0000")) == 0.0);
  CHECK_THROWS_AS(jaccard(bits("10"), bits("1")), std::invalid_argument);
}

TEST_CASE("pcc special values") {
  CHECK(pcc(bits("110100"), bits("110100")) == doctest::Approx(1.0));
  CHECK(pcc(bits("111000"), bits("000111")) == doctest::Approx(-1.0));
  CHECK(pcc(bits("0000"), bits("1010")) == 1.0);
  CHECK(pcc(bits("1111"), bits("1010")) == 1.0);
  CHECK_THROWS_AS(pcc(bits("10"), bits("1")), std::invalid_argument);

  for (std::size_t k = 2; k <= 6; ++k) {
    const auto e = gen_k_party(60, 60, k);
    const double expected = -(1.0 / k) / (1.0 - 1.0 / k);
    CHECK(pcc(e.ballot(0), e.ballot(59)) == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("pcc closed form matches the mean-centred definition") {
  Rng rng(1);
  for (int t = 0; t < 500; ++t) {
    const auto m = 2 + rng.below(70);
    const auto e = oracle::random_election(m, 2, rng.uniform(0.1, 0.9), rng);
    const auto u = as_ints(e.ballot(0)), v = as_ints(e.ballot(1));
    CHECK(std::abs(pcc(e.ballot(0), e.ballot(1)) - oracle::pcc(u, v)) <= 1e-12);
    CHECK(pcc(e.ballot(0), e.ballot(1)) == pcc(e.ballot(1), e.ballot(0)));
  }
}

TEST_CASE("pcc_from_hamming") {
  CHECK(pcc_from_hamming(0.5, 60, 0) == 1.0);
  CHECK(pcc_from_hamming(0.5, 60, 30) == doctest::Approx(0.0));
  CHECK_THROWS_AS(pcc_from_hamming(0.0, 60, 3), std::invalid_argument);
  CHECK_THROWS_AS(pcc_from_hamming(1.0, 60, 3), std::invalid_argument);

  Rng rng(2);
  const auto e = oracle::fixed_length_election(20, 20, 7, rng);
  for (std::size_t i = 0; i < 20; ++i) {
    for (std::size_t j = 0; j < 20; ++j) {
      const auto& u = e.ballot(i);
      const auto& v = e.ballot(j);
      CHECK(std::abs(pcc_from_hamming(7.0 / 20.0, 20, hamming(u, v)) - pcc(u, v)) <= 1e-12);
    }
  }
}

TEST_CASE("metric axioms on random ballots") {
  Rng rng(4);
  for (int t = 0; t < 200; ++t) {
    const auto e = oracle::random_election(25, 3, rng.uniform(), rng);
    const auto& a = e.ballot(0);
    const auto& b = e.ballot(1);
    const auto& c = e.ballot(2);
    CHECK(hamming(a, b) == hamming(b, a));
    CHECK(hamming(a, c) <= hamming(a, b) + hamming(b, c));
    CHECK(jaccard(a, b) == jaccard(b, a));
    CHECK(jaccard(a, c) <= jaccard(a, b) + jaccard(b, c) + 1e-12);
  }
}

TEST_CASE("batched kernels match per-pair calls") {
  Rng rng(5);
  const auto e = oracle::random_election(90, 33, 0.4, rng);
  const auto h = hamming_matrix(e);
  const auto p = pcc_matrix(e);
  const auto s = jaccard_similarity_matrix(e);
  for (std::size_t i = 0; i < 33; ++i) {
    for (std::size_t j = 0; j < 33; ++j) {
      CHECK(h(i, j) == hamming(e.ballot(i), e.ballot(j)));
      CHECK(p(i, j) == doctest::Approx(pcc(e.ballot(i), e.ballot(j))).epsilon(1e-12));
      CHECK(s(i, j) == doctest::Approx(1.0 - jaccard(e.ballot(i), e.ballot(j))).epsilon(1e-12));
    }
  }
}
