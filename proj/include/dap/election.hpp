#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace dap {

/// An approval ballot over m candidates, packed 64 candidates per word.
/// Bits past m in the last word are always zero.
class Ballot {
 public:
  Ballot() = default;
  explicit Ballot(std::size_t num_candidates);

  static Ballot from_indices(std::size_t num_candidates, std::span<const std::size_t> approved);
  static Ballot from_bits(std::span<const int> bits);

  std::size_t size() const noexcept { return size_; }
  bool test(std::size_t j) const noexcept { return (words_[j >> 6] >> (j & 63)) & 1u; }
  void set(std::size_t j, bool value = true) noexcept {
    const std::uint64_t mask = std::uint64_t{1} << (j & 63);
    if (value) {
      words_[j >> 6] |= mask;
    } else {
      words_[j >> 6] &= ~mask;
    }
  }

  /// |A(v)|
  std::size_t count() const noexcept {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  Ballot complement() const;
  std::vector<std::size_t> approved() const;
  std::string to_string() const;  // "1010..."

  std::span<const std::uint64_t> words() const noexcept { return words_; }

  friend bool operator==(const Ballot&, const Ballot&) = default;
  friend auto operator<=>(const Ballot& a, const Ballot& b) {
    if (a.size_ != b.size_) return a.size_ <=> b.size_;
    return a.words_ <=> b.words_;
  }

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

struct ElectionStats {
  double avl = 0.0;
  double rev_avl = 0.0;
  double satr = 0.0;
};

/// Candidates 0..m-1 plus an ordered collection of ballots. Immutable after
/// construction; duplicate ballots are kept with multiplicity.
class Election {
 public:
  /// Throws std::invalid_argument unless m >= 1, n >= 1 and every ballot has m entries.
  Election(std::size_t num_candidates, std::vector<Ballot> ballots, std::string label = {});

  /// Rows are voters, columns candidates; entries must be 0 or 1.
  static Election from_matrix(const std::vector<std::vector<int>>& rows, std::string label = {});

  std::size_t num_candidates() const noexcept { return num_candidates_; }
  std::size_t num_voters() const noexcept { return ballots_.size(); }
  const std::vector<Ballot>& ballots() const noexcept { return ballots_; }
  const Ballot& ballot(std::size_t i) const { return ballots_.at(i); }
  const std::string& label() const noexcept { return label_; }

  /// |A(c_j)| for every candidate.
  std::vector<std::size_t> approval_scores() const;
  std::size_t total_approvals() const;

  /// Sub-election over the given voters (in the given order), same candidate set.
  Election restrict_voters(std::span<const std::size_t> voters) const;
  Election with_label(std::string label) const;

  friend bool operator==(const Election& a, const Election& b) {
    return a.num_candidates_ == b.num_candidates_ && a.ballots_ == b.ballots_;
  }

 private:
  std::size_t num_candidates_;
  std::vector<Ballot> ballots_;
  std::string label_;
};

/// Number of voters approving candidate j. Throws std::out_of_range if j >= m.
std::size_t approval_score(const Election& e, std::size_t j);

ElectionStats stats(const Election& e);

/// Flips every entry of every ballot.
Election reverse(const Election& e);

/// Uniformly samples at most max_candidates candidates and max_voters voters
/// without replacement, preserving relative order. Returns e unchanged when
/// both caps are already met.
Election subsample(const Election& e, std::size_t max_candidates, std::size_t max_voters,
                   std::uint64_t seed);

/// True when all ballots are identical.
bool is_identity(const Election& e);

}  // namespace dap
