#include "dap/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "dap/rng.hpp"

namespace dap {

namespace {

constexpr std::uint64_t kVoterStreams = std::uint64_t{1} << 32;

// floor(p m), tolerant to p m landing a hair below an integer (e.g. p = 1/3).
std::size_t approved_count(double p, std::size_t m) {
  return static_cast<std::size_t>(std::floor(p * static_cast<double>(m) + 1e-9));
}

void require_probability(double v, const char* what) {
  if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument(std::string(what) + " must lie in [0, 1]");
}

void require_sizes(std::size_t m, std::size_t n) {
  if (m == 0 || n == 0) throw std::invalid_argument("election sizes must be positive");
}

std::vector<std::size_t> even_split(std::size_t total, std::size_t k) {
  std::vector<std::size_t> sizes(k, total / k);
  for (std::size_t i = 0; i < total % k; ++i) ++sizes[i];
  return sizes;
}

// Voters in block i approve exactly candidate block i.
Election blocks(std::size_t m, const std::vector<std::size_t>& cand_sizes, const std::vector<std::size_t>& voter_sizes) {
  std::vector<Ballot> ballots;
  std::size_t cand_start = 0;
  for (std::size_t g = 0; g < cand_sizes.size(); ++g) {
    Ballot b(m);
    for (std::size_t j = cand_start; j < cand_start + cand_sizes[g]; ++j) b.set(j);
    for (std::size_t v = 0; v < voter_sizes[g]; ++v) ballots.push_back(b);
    cand_start += cand_sizes[g];
  }
  return Election(m, std::move(ballots));
}

Ballot ic_ballot(std::size_t m, double p, Rng& rng) {
  Ballot b(m);
  for (std::size_t j = 0; j < m; ++j) {
    if (rng.bernoulli(p)) b.set(j);
  }
  return b;
}

std::vector<std::size_t> random_groups(std::size_t n, std::size_t k, Rng rng) {
  std::vector<std::size_t> g(n);
  for (auto& x : g) x = static_cast<std::size_t>(rng.below(k));
  return g;
}

struct Point {
  double x;
  double y;
};

double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

}  // namespace

Election gen_p_id(std::size_t m, std::size_t n, double p) {
  require_sizes(m, n);
  require_probability(p, "p");
  Ballot b(m);
  for (std::size_t j = 0; j < approved_count(p, m); ++j) b.set(j);
  return Election(m, std::vector<Ballot>(n, b));
}

Election gen_k_party(std::size_t m, std::size_t n, std::size_t k) {
  require_sizes(m, n);
  if (k == 0 || k > std::min(m, n)) throw std::invalid_argument("k_party: need 1 <= k <= min(m, n)");
  return blocks(m, even_split(m, k), even_split(n, k));
}

Election gen_xy_two_party(std::size_t m, std::size_t n, double x, double y) {
  require_sizes(m, n);
  require_probability(x, "x");
  require_probability(y, "y");
  const auto c = static_cast<std::size_t>(std::llround(x * static_cast<double>(m)));
  const auto v = static_cast<std::size_t>(std::llround(y * static_cast<double>(n)));
  return blocks(m, {c, m - c}, {v, n - v});
}

Election gen_diagonal(std::size_t m) { return gen_k_party(m, m, m); }

Election gen_triangle(std::size_t m) {
  require_sizes(m, m);
  std::vector<Ballot> ballots;
  for (std::size_t i = 0; i < m; ++i) {
    Ballot b(m);
    for (std::size_t j = 0; j <= i; ++j) b.set(j);
    ballots.push_back(std::move(b));
  }
  return Election(m, std::move(ballots));
}

Election gen_cyclic(std::size_t m) {
  require_sizes(m, m);
  std::vector<char> first(m, 0);
  first[0] = 1;
  const std::size_t tail = m / 2 >= 1 ? m / 2 - 1 : 0;
  for (std::size_t j = m - tail; j < m; ++j) first[j] = 1;
  std::vector<Ballot> ballots;
  for (std::size_t i = 0; i < m; ++i) {
    Ballot b(m);
    for (std::size_t j = 0; j < m; ++j) {
      if (first[(j + m - i) % m]) b.set(j);
    }
    ballots.push_back(std::move(b));
  }
  return Election(m, std::move(ballots));
}

Election gen_p_ic(std::size_t m, std::size_t n, double p, std::uint64_t seed) {
  require_sizes(m, n);
  require_probability(p, "p");
  const Rng root(seed);
  std::vector<Ballot> ballots;
  ballots.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rng rng = root.substream(kVoterStreams + i);
    ballots.push_back(ic_ballot(m, p, rng));
  }
  return Election(m, std::move(ballots));
}

Election gen_iam(std::size_t m, std::size_t n, const std::vector<double>& probs, std::uint64_t seed) {
  require_sizes(m, n);
  if (probs.size() != m) throw std::invalid_argument("iam: need one probability per candidate");
  for (double p : probs) require_probability(p, "iam probability");
  const Rng root(seed);
  std::vector<Ballot> ballots;
  for (std::size_t i = 0; i < n; ++i) {
    Rng rng = root.substream(kVoterStreams + i);
    Ballot b(m);
    for (std::size_t j = 0; j < m; ++j) {
      if (rng.bernoulli(probs[j])) b.set(j);
    }
    ballots.push_back(std::move(b));
  }
  return Election(m, std::move(ballots));
}

Election gen_resampling(std::size_t m, std::size_t n, double p, double phi, std::uint64_t seed) {
  require_sizes(m, n);
  require_probability(p, "p");
  require_probability(phi, "phi");
  const auto central = approved_count(p, m);
  const Rng root(seed);
  std::vector<Ballot> ballots;
  for (std::size_t i = 0; i < n; ++i) {
    Rng rng = root.substream(kVoterStreams + i);
    Ballot b(m);
    for (std::size_t j = 0; j < m; ++j) {
      const bool value = rng.bernoulli(phi) ? rng.bernoulli(p) : j < central;
      if (value) b.set(j);
    }
    ballots.push_back(std::move(b));
  }
  return Election(m, std::move(ballots));
}

Election gen_euclidean(std::size_t m, std::size_t n, int variant, std::uint64_t seed, std::optional<double> radius) {
  require_sizes(m, n);
  if (variant < 1 || variant > 5) throw std::invalid_argument("euclidean: variant must be in 1..5");
  if (radius && !(*radius >= 0.0)) throw std::invalid_argument("euclidean: radius must be nonnegative");
  const Rng root(seed);
  Rng cand_rng = root.substream(0);
  std::vector<Point> cands(m);
  for (auto& c : cands) {
    c.x = cand_rng.uniform();
    c.y = cand_rng.uniform();
  }
  std::vector<Ballot> ballots;
  std::vector<std::size_t> order(m);
  for (std::size_t i = 0; i < n; ++i) {
    Rng rng = root.substream(kVoterStreams + i);
    Point v{rng.uniform(), 0.0};
    v.y = rng.uniform();
    Ballot b(m);
    if (variant <= 3) {
      double r = variant == 1 ? 0.117 : variant == 2 ? 0.167 : rng.uniform(0.0, 0.5);
      if (radius && variant != 3) r = *radius;
      for (std::size_t j = 0; j < m; ++j) {
        if (distance(v, cands[j]) < r) b.set(j);
      }
    } else {
      const std::size_t take = variant == 4 ? std::min<std::size_t>(10, m) : 1 + static_cast<std::size_t>(rng.below(m));
      std::iota(order.begin(), order.end(), std::size_t{0});
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t c) {
        return distance(v, cands[a]) < distance(v, cands[c]);
      });
      for (std::size_t t = 0; t < take; ++t) b.set(order[t]);
    }
    ballots.push_back(std::move(b));
  }
  return Election(m, std::move(ballots));
}

Election gen_id_ic(std::size_t m, std::size_t n, double p, std::uint64_t seed) {
  require_sizes(m, n);
  require_probability(p, "p");
  const auto id_voters = n / 2;
  std::vector<Ballot> ballots;
  Ballot central(m);
  for (std::size_t j = 0; j < approved_count(p, m); ++j) central.set(j);
  const Rng root(seed);
  for (std::size_t i = 0; i < n; ++i) {
    if (i < id_voters) {
      ballots.push_back(central);
    } else {
      Rng rng = root.substream(kVoterStreams + i);
      ballots.push_back(ic_ballot(m, p, rng));
    }
  }
  return Election(m, std::move(ballots));
}

Election gen_lin_ic(std::size_t m, std::size_t n, std::uint64_t seed) {
  require_sizes(m, n);
  const Rng root(seed);
  std::vector<Ballot> ballots;
  for (std::size_t i = 0; i < n; ++i) {
    Rng rng = root.substream(kVoterStreams + i);
    const double p = 1.0 - static_cast<double>(i) / static_cast<double>(n);
    ballots.push_back(ic_ballot(m, p, rng));
  }
  return Election(m, std::move(ballots));
}

Election gen_noisy(const Election& base, double phi, std::uint64_t seed) {
  require_probability(phi, "phi");
  const auto m = base.num_candidates();
  const Rng root(seed);
  std::vector<Ballot> ballots;
  for (std::size_t i = 0; i < base.num_voters(); ++i) {
    Rng rng = root.substream(kVoterStreams + i);
    const auto& v = base.ballot(i);
    const double q = static_cast<double>(v.count()) / static_cast<double>(m);
    Ballot b(m);
    for (std::size_t j = 0; j < m; ++j) {
      const bool value = rng.bernoulli(phi) ? rng.bernoulli(q) : v.test(j);
      if (value) b.set(j);
    }
    ballots.push_back(std::move(b));
  }
  return Election(m, std::move(ballots), base.label());
}

Election gen_id_mixture(std::size_t m, std::size_t n, std::size_t k, double p, std::uint64_t seed) {
  require_sizes(m, n);
  require_probability(p, "p");
  if (k == 0) throw std::invalid_argument("id_mixture: k must be positive");
  const Rng root(seed);
  const auto groups = random_groups(n, k, root.substream(0));
  std::vector<Ballot> shared;
  for (std::size_t g = 0; g < k; ++g) {
    Rng rng = root.substream(1 + g);
    shared.push_back(ic_ballot(m, p, rng));
  }
  std::vector<Ballot> ballots;
  for (auto g : groups) ballots.push_back(shared[g]);
  return Election(m, std::move(ballots));
}

Election gen_iam_mixture(std::size_t m, std::size_t n, std::size_t k, std::uint64_t seed) {
  require_sizes(m, n);
  if (k == 0) throw std::invalid_argument("iam_mixture: k must be positive");
  const Rng root(seed);
  const auto groups = random_groups(n, k, root.substream(0));
  std::vector<std::vector<double>> probs(k, std::vector<double>(m));
  for (std::size_t g = 0; g < k; ++g) {
    Rng rng = root.substream(1 + g);
    for (auto& p : probs[g]) p = rng.uniform();
  }
  std::vector<Ballot> ballots;
  for (std::size_t i = 0; i < n; ++i) {
    Rng rng = root.substream(kVoterStreams + i);
    Ballot b(m);
    for (std::size_t j = 0; j < m; ++j) {
      if (rng.bernoulli(probs[groups[i]][j])) b.set(j);
    }
    ballots.push_back(std::move(b));
  }
  return Election(m, std::move(ballots));
}

std::vector<std::size_t> random_composition(std::size_t total, std::size_t k, std::uint64_t seed) {
  if (k == 0 || k > total) throw std::invalid_argument("random_composition: need 1 <= k <= total");
  // Stars and bars: k-1 distinct cut points among the total-1 gaps.
  std::vector<std::size_t> gaps(total - 1);
  std::iota(gaps.begin(), gaps.end(), std::size_t{1});
  Rng rng(seed);
  for (std::size_t i = 0; i + 1 < k; ++i) {
    const auto j = i + static_cast<std::size_t>(rng.below(gaps.size() - i));
    std::swap(gaps[i], gaps[j]);
  }
  std::vector<std::size_t> cuts(gaps.begin(), gaps.begin() + static_cast<std::ptrdiff_t>(k - 1));
  std::sort(cuts.begin(), cuts.end());
  std::vector<std::size_t> parts;
  std::size_t prev = 0;
  for (auto c : cuts) {
    parts.push_back(c - prev);
    prev = c;
  }
  parts.push_back(total - prev);
  return parts;
}

Election gen_uneven_party_list(std::size_t m, std::size_t n, std::uint64_t seed) {
  require_sizes(m, n);
  Rng rng(seed);
  auto k = static_cast<std::size_t>(3 + rng.poisson(1.0));
  k = std::min({k, m, n});
  const auto cand_sizes = random_composition(m, k, derive_seed(seed, {1}));
  const auto voter_sizes = random_composition(n, k, derive_seed(seed, {2}));
  return blocks(m, cand_sizes, voter_sizes);
}

std::string_view to_string(Family f) {
  switch (f) {
    case Family::p_id: return "p_id";
    case Family::k_party: return "k_party";
    case Family::xy_two_party: return "xy_two_party";
    case Family::diagonal: return "diagonal";
    case Family::triangle: return "triangle";
    case Family::cyclic: return "cyclic";
    case Family::p_ic: return "p_ic";
    case Family::iam: return "iam";
    case Family::resampling: return "resampling";
    case Family::euclidean: return "euclidean";
    case Family::id_ic: return "id_ic";
    case Family::lin_ic: return "lin_ic";
    case Family::noisy: return "noisy";
    case Family::id_mixture: return "id_mixture";
    case Family::iam_mixture: return "iam_mixture";
    case Family::uneven_party_list: return "uneven_party_list";
  }
  return "?";
}

std::optional<Family> parse_family(std::string_view name) {
  for (int i = 0; i <= static_cast<int>(Family::uneven_party_list); ++i) {
    const auto f = static_cast<Family>(i);
    if (to_string(f) == name) return f;
  }
  return std::nullopt;
}

void validate(const CultureSpec& s) {
  const auto n = s.n == 0 ? s.m : s.n;
  auto fail = [](const std::string& what) { throw std::invalid_argument(what); };
  if (s.family != Family::noisy) {
    if (s.m == 0) fail("m must be positive");
  }
  switch (s.family) {
    case Family::p_id:
    case Family::p_ic:
    case Family::id_ic:
      require_probability(s.p, "p");
      break;
    case Family::resampling:
      require_probability(s.p, "p");
      require_probability(s.phi, "phi");
      break;
    case Family::k_party:
      if (s.k == 0 || s.k > std::min(s.m, n)) fail("k must satisfy 1 <= k <= min(m, n)");
      break;
    case Family::xy_two_party:
      require_probability(s.x, "x");
      require_probability(s.y, "y");
      break;
    case Family::diagonal:
    case Family::triangle:
    case Family::cyclic:
      if (n != s.m) fail(std::string(to_string(s.family)) + " requires n = m");
      break;
    case Family::iam:
      if (s.probs.size() != s.m) fail("probs must have exactly m entries");
      for (double p : s.probs) require_probability(p, "probs entry");
      break;
    case Family::euclidean:
      if (s.variant < 1 || s.variant > 5) fail("variant must be in 1..5");
      if (s.radius && !(*s.radius >= 0.0)) fail("radius must be nonnegative");
      break;
    case Family::noisy:
      require_probability(s.phi, "phi");
      if (!s.base) fail("noisy requires a base spec");
      validate(*s.base);
      break;
    case Family::id_mixture:
      require_probability(s.p, "p");
      if (s.k == 0) fail("k must be positive");
      break;
    case Family::iam_mixture:
      if (s.k == 0) fail("k must be positive");
      break;
    case Family::lin_ic:
    case Family::uneven_party_list:
      break;
  }
}

Election generate(const CultureSpec& s) {
  validate(s);
  const auto n = s.n == 0 ? s.m : s.n;
  Election e = [&] {
    switch (s.family) {
      case Family::p_id: return gen_p_id(s.m, n, s.p);
      case Family::k_party: return gen_k_party(s.m, n, s.k);
      case Family::xy_two_party: return gen_xy_two_party(s.m, n, s.x, s.y);
      case Family::diagonal: return gen_diagonal(s.m);
      case Family::triangle: return gen_triangle(s.m);
      case Family::cyclic: return gen_cyclic(s.m);
      case Family::p_ic: return gen_p_ic(s.m, n, s.p, s.seed);
      case Family::iam: return gen_iam(s.m, n, s.probs, s.seed);
      case Family::resampling: return gen_resampling(s.m, n, s.p, s.phi, s.seed);
      case Family::euclidean: return gen_euclidean(s.m, n, s.variant, s.seed, s.radius);
      case Family::id_ic: return gen_id_ic(s.m, n, s.p, s.seed);
      case Family::lin_ic: return gen_lin_ic(s.m, n, s.seed);
      case Family::noisy: {
        auto base = *s.base;
        base.seed = derive_seed(s.seed, {0});
        return gen_noisy(generate(base), s.phi, derive_seed(s.seed, {1}));
      }
      case Family::id_mixture: return gen_id_mixture(s.m, n, s.k, s.p, s.seed);
      case Family::iam_mixture: return gen_iam_mixture(s.m, n, s.k, s.seed);
      case Family::uneven_party_list: return gen_uneven_party_list(s.m, n, s.seed);
    }
    throw std::invalid_argument("unknown family");
  }();
  return e.with_label(s.label.empty() ? describe(s) : s.label);
}

std::string describe(const CultureSpec& s) {
  std::ostringstream os;
  os << to_string(s.family);
  switch (s.family) {
    case Family::p_id:
    case Family::p_ic:
    case Family::id_ic: os << "(p=" << s.p << ")"; break;
    case Family::resampling: os << "(p=" << s.p << ",phi=" << s.phi << ")"; break;
    case Family::k_party:
    case Family::iam_mixture: os << "(k=" << s.k << ")"; break;
    case Family::id_mixture: os << "(k=" << s.k << ",p=" << s.p << ")"; break;
    case Family::xy_two_party: os << "(x=" << s.x << ",y=" << s.y << ")"; break;
    case Family::euclidean: os << "(variant=" << s.variant << ")"; break;
    case Family::noisy: os << "(" << (s.base ? describe(*s.base) : "?") << ",phi=" << s.phi << ")"; break;
    default: break;
  }
  return os.str();
}

}  // namespace dap
