#include "dap/election.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "dap/rng.hpp"

namespace dap {

namespace {

std::size_t words_for(std::size_t bits) { return (bits + 63) / 64; }

// Sorted sample of `take` distinct indices from [0, total).
std::vector<std::size_t> sample_sorted(std::size_t total, std::size_t take, Rng& rng) {
  std::vector<std::size_t> idx(total);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  // Partial Fisher-Yates.
  for (std::size_t i = 0; i < take; ++i) {
    const auto j = i + static_cast<std::size_t>(rng.below(total - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(take);
  std::sort(idx.begin(), idx.end());
  return idx;
}

}  // namespace

Ballot::Ballot(std::size_t num_candidates) : size_(num_candidates), words_(words_for(num_candidates), 0) {}

Ballot Ballot::from_indices(std::size_t num_candidates, std::span<const std::size_t> approved) {
  Ballot b(num_candidates);
  for (auto j : approved) {
    if (j >= num_candidates) throw std::out_of_range("Ballot: candidate index out of range");
    b.set(j);
  }
  return b;
}

Ballot Ballot::from_bits(std::span<const int> bits) {
  Ballot b(bits.size());
  for (std::size_t j = 0; j < bits.size(); ++j) {
    if (bits[j] != 0 && bits[j] != 1) throw std::invalid_argument("Ballot: entries must be 0 or 1");
    if (bits[j]) b.set(j);
  }
  return b;
}

Ballot Ballot::complement() const {
  Ballot out(*this);
  for (auto& w : out.words_) w = ~w;
  if (const auto tail = size_ & 63; tail != 0 && !out.words_.empty()) {
    out.words_.back() &= (std::uint64_t{1} << tail) - 1;
  }
  return out;
}

std::vector<std::size_t> Ballot::approved() const {
  std::vector<std::size_t> out;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    auto word = words_[w];
    while (word) {
      out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(word)));
      word &= word - 1;
    }
  }
  return out;
}

std::string Ballot::to_string() const {
  std::string s(size_, '0');
  for (std::size_t j = 0; j < size_; ++j) {
    if (test(j)) s[j] = '1';
  }
  return s;
}

Election::Election(std::size_t num_candidates, std::vector<Ballot> ballots, std::string label)
    : num_candidates_(num_candidates), ballots_(std::move(ballots)), label_(std::move(label)) {
  if (num_candidates_ == 0) throw std::invalid_argument("Election: need at least one candidate");
  if (ballots_.empty()) throw std::invalid_argument("Election: need at least one voter");
  for (const auto& b : ballots_) {
    if (b.size() != num_candidates_) {
      throw std::invalid_argument("Election: ballot length differs from the number of candidates");
    }
  }
}

Election Election::from_matrix(const std::vector<std::vector<int>>& rows, std::string label) {
  if (rows.empty()) throw std::invalid_argument("Election: need at least one voter");
  std::vector<Ballot> ballots;
  ballots.reserve(rows.size());
  for (const auto& row : rows) ballots.push_back(Ballot::from_bits(row));
  const auto m = ballots.front().size();
  return Election(m, std::move(ballots), std::move(label));
}

std::vector<std::size_t> Election::approval_scores() const {
  std::vector<std::size_t> scores(num_candidates_, 0);
  for (const auto& b : ballots_) {
    const auto words = b.words();
    for (std::size_t w = 0; w < words.size(); ++w) {
      auto word = words[w];
      while (word) {
        ++scores[w * 64 + static_cast<std::size_t>(std::countr_zero(word))];
        word &= word - 1;
      }
    }
  }
  return scores;
}

std::size_t Election::total_approvals() const {
  std::size_t total = 0;
  for (const auto& b : ballots_) total += b.count();
  return total;
}

Election Election::restrict_voters(std::span<const std::size_t> voters) const {
  std::vector<Ballot> sub;
  sub.reserve(voters.size());
  for (auto i : voters) sub.push_back(ballots_.at(i));
  return Election(num_candidates_, std::move(sub), label_);
}

Election Election::with_label(std::string label) const {
  Election copy(*this);
  copy.label_ = std::move(label);
  return copy;
}

std::size_t approval_score(const Election& e, std::size_t j) {
  if (j >= e.num_candidates()) throw std::out_of_range("approval_score: candidate index out of range");
  std::size_t s = 0;
  for (const auto& b : e.ballots()) s += b.test(j) ? 1 : 0;
  return s;
}

ElectionStats stats(const Election& e) {
  const double m = static_cast<double>(e.num_candidates());
  const double avl = static_cast<double>(e.total_approvals()) / static_cast<double>(e.num_voters());
  return {avl, m - avl, avl / m};
}

Election reverse(const Election& e) {
  std::vector<Ballot> flipped;
  flipped.reserve(e.num_voters());
  for (const auto& b : e.ballots()) flipped.push_back(b.complement());
  return Election(e.num_candidates(), std::move(flipped), e.label());
}

Election subsample(const Election& e, std::size_t max_candidates, std::size_t max_voters, std::uint64_t seed) {
  if (max_candidates == 0 || max_voters == 0) throw std::invalid_argument("subsample: caps must be positive");
  const auto m = e.num_candidates();
  const auto n = e.num_voters();
  if (m <= max_candidates && n <= max_voters) return e;

  Rng rng(seed);
  Rng cand_rng = rng.substream(0);
  Rng voter_rng = rng.substream(1);
  const auto voters = n > max_voters ? sample_sorted(n, max_voters, voter_rng) : [&] {
    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), std::size_t{0});
    return all;
  }();
  if (m <= max_candidates) return e.restrict_voters(voters);

  const auto cands = sample_sorted(m, max_candidates, cand_rng);
  std::vector<Ballot> ballots;
  ballots.reserve(voters.size());
  for (auto i : voters) {
    const auto& src = e.ballot(i);
    Ballot b(cands.size());
    for (std::size_t j = 0; j < cands.size(); ++j) {
      if (src.test(cands[j])) b.set(j);
    }
    ballots.push_back(std::move(b));
  }
  return Election(cands.size(), std::move(ballots), e.label());
}

bool is_identity(const Election& e) {
  const auto& first = e.ballot(0);
  return std::all_of(e.ballots().begin(), e.ballots().end(), [&](const Ballot& b) { return b == first; });
}

}  // namespace dap
