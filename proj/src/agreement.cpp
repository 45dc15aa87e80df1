#include "dap/agreement.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dap/metrics.hpp"

namespace dap {

namespace {

double min_vote_length(const Election& e) {
  const auto s = stats(e);
  return std::min(s.avl, s.rev_avl);
}

double unit(double v) { return std::clamp(v, 0.0, 1.0); }

bool degenerate_saturation(const Election& e) {
  const auto total = e.total_approvals();
  return total == 0 || total == e.num_voters() * e.num_candidates();
}

// Row sums first, then rows in order: fixed summation order.
double mean_of(const SquareMatrix<double>& mat, bool positive_part) {
  const auto n = mat.size();
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double v = mat(i, j);
      row += positive_part ? std::max(0.0, v) : v;
    }
    total += row;
  }
  return total / (static_cast<double>(n) * static_cast<double>(n));
}

}  // namespace

double av_agr(const Election& e) {
  const double n = static_cast<double>(e.num_voters());
  double sum = 0.0;
  for (auto s : e.approval_scores()) sum += std::abs(1.0 - 2.0 * static_cast<double>(s) / n);
  return unit(sum / static_cast<double>(e.num_candidates()));
}

CentralVote central_vote(const Election& e) {
  const auto n = e.num_voters();
  const auto scores = e.approval_scores();
  CentralVote cv{Ballot(e.num_candidates()), 0};
  for (std::size_t j = 0; j < scores.size(); ++j) {
    if (2 * scores[j] > n) {
      cv.ballot.set(j);
      cv.chd += n - scores[j];
    } else {
      cv.chd += scores[j];
    }
  }
  return cv;
}

double cntr_agr(const Election& e) {
  const double denom = min_vote_length(e);
  if (denom <= 0.0) return 1.0;
  const auto cv = central_vote(e);
  return unit(1.0 - static_cast<double>(cv.chd) / (static_cast<double>(e.num_voters()) * denom));
}

double cntr_agr_closed_form(const Election& e) {
  const double denom = min_vote_length(e);
  if (denom <= 0.0) throw std::invalid_argument("cntr_agr_closed_form: degenerate saturation");
  const double n = static_cast<double>(e.num_voters());
  double sum = 0.0;
  for (auto s : e.approval_scores()) sum += 1.0 - std::abs(1.0 - 2.0 * static_cast<double>(s) / n);
  return unit(1.0 - sum / (2.0 * denom));
}

double pair_agr(const Election& e) {
  if (degenerate_saturation(e)) return 1.0;
  const double n = static_cast<double>(e.num_voters());
  const double m = static_cast<double>(e.num_candidates());
  const double satr = stats(e).satr;
  double disagreement = 0.0;
  for (auto s : e.approval_scores()) {
    const double a = static_cast<double>(s);
    disagreement += a * (n - a);
  }
  return unit(1.0 - disagreement / (n * n * m * satr * (1.0 - satr)));
}

double pair_agr_naive(const Election& e) {
  if (degenerate_saturation(e)) throw std::invalid_argument("pair_agr_naive: degenerate saturation");
  const auto& bs = e.ballots();
  const double n = static_cast<double>(bs.size());
  const double m = static_cast<double>(e.num_candidates());
  const double satr = stats(e).satr;
  std::size_t total = 0;
  for (const auto& u : bs) {
    for (const auto& v : bs) total += hamming(u, v);
  }
  return unit(1.0 - static_cast<double>(total) / (2.0 * n * n * m * satr * (1.0 - satr)));
}

double jacc_agr(const Election& e) { return unit(mean_of(jaccard_similarity_matrix(e), false)); }

double pcc_agr(const Election& e) {
  const double v = mean_of(pcc_matrix(e), false);
  // Clamp rounding residue below 0.
  return v < 0.0 && v > -1e-9 ? 0.0 : std::min(v, 1.0);
}

double pccplus_agr(const Election& e) { return unit(mean_of(pcc_matrix(e), true)); }

double agreement(AgreementIndex index, const Election& e) {
  switch (index) {
    case AgreementIndex::av: return av_agr(e);
    case AgreementIndex::cntr: return cntr_agr(e);
    case AgreementIndex::pair: return pair_agr(e);
    case AgreementIndex::jacc: return jacc_agr(e);
    case AgreementIndex::pcc: return pcc_agr(e);
    case AgreementIndex::pccplus: return pccplus_agr(e);
  }
  throw std::invalid_argument("unknown agreement index");
}

std::string_view to_string(AgreementIndex index) {
  switch (index) {
    case AgreementIndex::av: return "av_agr";
    case AgreementIndex::cntr: return "cntr_agr";
    case AgreementIndex::pair: return "pair_agr";
    case AgreementIndex::jacc: return "jacc_agr";
    case AgreementIndex::pcc: return "pcc_agr";
    case AgreementIndex::pccplus: return "pccplus_agr";
  }
  return "?";
}

std::optional<AgreementIndex> parse_agreement_index(std::string_view name) {
  for (auto idx : {AgreementIndex::av, AgreementIndex::cntr, AgreementIndex::pair, AgreementIndex::jacc,
                   AgreementIndex::pcc, AgreementIndex::pccplus}) {
    if (to_string(idx) == name) return idx;
  }
  return std::nullopt;
}

}  // namespace dap
