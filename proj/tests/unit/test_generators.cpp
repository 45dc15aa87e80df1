#include <doctest.h>

#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

#include "dap/generators.hpp"

using namespace dap;

namespace {

double satr(const Election& e) { return stats(e).satr; }

// |observed - expected| within `sigmas` binomial standard deviations.
bool within(double observed_count, double trials, double p, double sigmas) {
  const double sd = std::sqrt(trials * p * (1 - p));
  return std::abs(observed_count - trials * p) <= sigmas * sd + 1e-9;
}

}  // namespace

TEST_CASE("p-ID") {
  const auto e = gen_p_id(60, 60, 1.0 / 3.0);
  for (const auto& b : e.ballots()) CHECK(b.count() == 20);
  CHECK(is_identity(e));
  CHECK(gen_p_id(10, 4, 0.0).ballot(0).count() == 0);
  CHECK(gen_p_id(10, 4, 0.3).ballot(2).approved() == std::vector<std::size_t>{0, 1, 2});
}

TEST_CASE("party constructions") {
  const auto two = gen_k_party(60, 60, 2);
  for (std::size_t j = 0; j < 60; ++j) CHECK(approval_score(two, j) == 30);

  const auto uneven = gen_k_party(10, 7, 3);
  CHECK(uneven.ballot(0).count() == 4);
  CHECK(uneven.ballot(6).count() == 3);
  CHECK(uneven.ballot(0) == uneven.ballot(2));
  CHECK(uneven.ballot(3) != uneven.ballot(2));
  CHECK_THROWS_AS(gen_k_party(3, 10, 4), std::invalid_argument);

  const auto xy = gen_xy_two_party(60, 60, 19.0 / 60.0, 1.0 / 3.0);
  CHECK(xy.ballot(0).count() == 19);
  CHECK(xy.ballot(59).count() == 41);
  std::size_t first = 0;
  for (const auto& b : xy.ballots()) first += b == xy.ballot(0);
  CHECK(first == 20);

  const auto diag = gen_diagonal(60);
  for (std::size_t i = 0; i < 60; ++i) CHECK(diag.ballot(i).approved() == std::vector<std::size_t>{i});

  const auto tri = gen_triangle(60);
  CHECK(satr(tri) == doctest::Approx(61.0 / 120.0));
  for (std::size_t i = 0; i < 60; ++i) CHECK(tri.ballot(i).count() == i + 1);

  const auto cyc = gen_cyclic(60);
  for (const auto& b : cyc.ballots()) CHECK(b.count() == 30);
  CHECK(cyc.ballot(0).test(0));
  CHECK(cyc.ballot(0).test(59));
  CHECK(cyc.ballot(0).test(31));
  CHECK_FALSE(cyc.ballot(0).test(30));
  CHECK(cyc.ballot(1).test(1));
  CHECK(cyc.ballot(1).test(0));
}

TEST_CASE("p-IC and IAM statistics") {
  CHECK(satr(gen_p_ic(20, 10, 1.0, 1)) == 1.0);
  const auto e = gen_p_ic(60, 60, 0.5, 7);
  CHECK(std::abs(satr(e) - 0.5) <= 3 * 0.5 / 60);
  CHECK(gen_p_ic(60, 60, 0.5, 7) == e);
  CHECK_FALSE(gen_p_ic(60, 60, 0.5, 8) == e);

  const std::vector<double> probs = {0.1, 0.5, 0.9, 0.0, 1.0};
  const auto iam = gen_iam(5, 5000, probs, 3);
  for (std::size_t j = 0; j < 5; ++j) CHECK(within(approval_score(iam, j), 5000, probs[j], 4));
  CHECK_THROWS_AS(gen_iam(4, 10, probs, 3), std::invalid_argument);
}

TEST_CASE("resampling") {
  CHECK(gen_resampling(40, 30, 0.3, 0.0, 5) == gen_p_id(40, 30, 0.3));

  const auto e = gen_resampling(50, 5000, 0.3, 0.4, 6);
  for (std::size_t j = 0; j < 50; ++j) {
    const double p = j < 15 ? 0.6 + 0.4 * 0.3 : 0.4 * 0.3;
    CHECK(within(approval_score(e, j), 5000, p, 4));
  }

  const auto ic = gen_resampling(50, 5000, 0.3, 1.0, 6);
  for (std::size_t j = 0; j < 50; ++j) CHECK(within(approval_score(ic, j), 5000, 0.3, 4));

  for (double phi : {0.2, 0.5, 0.8}) {
    const auto s = gen_resampling(60, 60, 0.4, phi, 9);
    CHECK(std::abs(satr(s) - 0.4) <= 3 * std::sqrt(phi * 0.4 * 0.6 / 3600) + 1e-9);
  }
}

TEST_CASE("euclidean variants") {
  const auto v4 = gen_euclidean(100, 100, 4, 1);
  for (const auto& b : v4.ballots()) CHECK(b.count() == 10);
  const auto v5 = gen_euclidean(100, 100, 5, 1);
  for (const auto& b : v5.ballots()) {
    CHECK(b.count() >= 1);
    CHECK(b.count() <= 100);
  }
  CHECK(satr(gen_euclidean(50, 50, 1, 2, 0.0)) == 0.0);
  CHECK(satr(gen_euclidean(50, 50, 2, 2)) > satr(gen_euclidean(50, 50, 1, 2)));
  const auto v3 = gen_euclidean(30, 30, 3, 4);
  CHECK(v3 == gen_euclidean(30, 30, 3, 4));
  CHECK_THROWS_AS(gen_euclidean(10, 10, 6, 1), std::invalid_argument);
}

TEST_CASE("mixtures and composites") {
  const auto idic = gen_id_ic(40, 10, 0.25, 3);
  for (std::size_t i = 0; i < 5; ++i) CHECK(idic.ballot(i) == gen_p_id(40, 1, 0.25).ballot(0));

  const auto lin = gen_lin_ic(30, 30, 5);
  CHECK(lin.ballot(0).count() == 30);

  const auto base = gen_k_party(30, 20, 3);
  CHECK(gen_noisy(base, 0.0, 4) == base);
  const auto noisy = gen_noisy(gen_k_party(60, 6000, 2), 0.5, 4);
  for (std::size_t j : {0u, 59u}) {
    std::size_t hits = 0;
    for (std::size_t i = 0; i < 3000; ++i) hits += noisy.ballot(i).test(j);
    CHECK(within(hits, 3000, j < 30 ? 0.75 : 0.25, 4));
  }

  const auto mix = gen_id_mixture(100, 1000, 2, 0.5, 6);
  std::set<Ballot> distinct(mix.ballots().begin(), mix.ballots().end());
  CHECK(distinct.size() <= 2);

  const auto iam = gen_iam_mixture(30, 200, 4, 6);
  CHECK(iam.num_voters() == 200);
  CHECK(iam == gen_iam_mixture(30, 200, 4, 6));

  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto party = gen_uneven_party_list(100, 100, s);
    std::set<Ballot> parties(party.ballots().begin(), party.ballots().end());
    CHECK(parties.size() >= 3);
    std::size_t covered = 0;
    for (const auto& b : parties) covered += b.count();
    CHECK(covered == 100);
  }
}

TEST_CASE("random compositions") {
  for (std::uint64_t s = 0; s < 50; ++s) {
    const auto parts = random_composition(20, 4, s);
    CHECK(parts.size() == 4);
    CHECK(std::accumulate(parts.begin(), parts.end(), std::size_t{0}) == 20);
    for (auto p : parts) CHECK(p >= 1);
  }
  CHECK(random_composition(5, 5, 1) == std::vector<std::size_t>(5, 1));
  CHECK_THROWS_AS(random_composition(3, 4, 1), std::invalid_argument);

  std::vector<int> first(4, 0);
  for (std::uint64_t s = 0; s < 6000; ++s) ++first[random_composition(5, 2, s)[0] - 1];
  for (int c : first) CHECK(std::abs(c - 1500) < 200);
}

TEST_CASE("culture specs") {
  CultureSpec spec;
  spec.family = Family::resampling;
  spec.m = 20;
  spec.n = 15;
  spec.p = 0.4;
  spec.phi = 0.3;
  spec.seed = 12;
  const auto e = generate(spec);
  CHECK(e.num_candidates() == 20);
  CHECK(e.num_voters() == 15);
  CHECK(e == gen_resampling(20, 15, 0.4, 0.3, 12));
  CHECK_FALSE(e.label().empty());

  spec.p = 1.5;
  CHECK_THROWS_AS(validate(spec), std::invalid_argument);
  spec.p = 0.4;
  spec.m = 0;
  CHECK_THROWS_AS(validate(spec), std::invalid_argument);

  for (auto f : {Family::p_id, Family::k_party, Family::xy_two_party, Family::diagonal, Family::triangle,
                 Family::cyclic, Family::p_ic, Family::iam, Family::resampling, Family::euclidean, Family::id_ic,
                 Family::lin_ic, Family::noisy, Family::id_mixture, Family::iam_mixture,
                 Family::uneven_party_list}) {
    CHECK(parse_family(to_string(f)) == f);
  }
  CHECK_FALSE(parse_family("mallows").has_value());
}

TEST_CASE("every family produces valid, reproducible elections") {
  auto base = std::make_shared<CultureSpec>();
  base->family = Family::k_party;
  base->m = 12;
  base->n = 12;
  base->k = 3;
  for (auto f : {Family::p_id, Family::k_party, Family::xy_two_party, Family::diagonal, Family::triangle,
                 Family::cyclic, Family::p_ic, Family::iam, Family::resampling, Family::euclidean, Family::id_ic,
                 Family::lin_ic, Family::noisy, Family::id_mixture, Family::iam_mixture,
                 Family::uneven_party_list}) {
    CultureSpec spec;
    spec.family = f;
    spec.m = 12;
    spec.n = 12;
    spec.k = 3;
    spec.phi = 0.5;
    spec.seed = 77;
    if (f == Family::iam) spec.probs.assign(12, 0.3);
    if (f == Family::noisy) spec.base = base;
    const auto e = generate(spec);
    CHECK(e.num_candidates() == 12);
    CHECK(e.num_voters() == 12);
    CHECK(generate(spec) == e);
  }
}
