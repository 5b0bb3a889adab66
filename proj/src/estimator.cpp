#include "subsetminer/estimator.hpp"

#include <boost/multiprecision/cpp_dec_float.hpp>

#include <algorithm>

#include "subsetminer/errors.hpp"

namespace subsetminer {

namespace {

using BigFloat = boost::multiprecision::cpp_dec_float_50;

BigInt int_pow(const BigInt& base, std::uint64_t exp) {
  BigInt result = 1;
  for (std::uint64_t i = 0; i < exp; ++i) result *= base;
  return result;
}

}  // namespace

ArityProfile ArityProfile::make(std::uint64_t inputs, std::uint64_t unary,
                                std::uint64_t binary) {
  ArityProfile p;
  p.inputs = inputs;
  p.arity_counts = {unary, binary};
  return p;
}

std::uint64_t ArityProfile::unary_count() const {
  return arity_counts.empty() ? 0 : arity_counts[0];
}

std::uint64_t ArityProfile::binary_count() const {
  return arity_counts.size() < 2 ? 0 : arity_counts[1];
}

std::uint64_t ArityProfile::instruction_count() const {
  std::uint64_t n = 0;
  for (std::uint64_t c : arity_counts) n += c;
  return n;
}

std::uint64_t ArityProfile::max_arity() const {
  for (std::size_t a = arity_counts.size(); a > 0; --a)
    if (arity_counts[a - 1] > 0) return a;
  return 0;
}

SpaceEstimate space_size(const ArityProfile& profile, unsigned depth) {
  SpaceEstimate est;
  est.cumulative = 0;
  BigInt c_prev2 = 0;                // values through level k-2
  BigInt c_prev = profile.inputs;    // values through level k-1
  for (unsigned k = 1; k <= depth; ++k) {
    BigInt level = 0;
    for (std::size_t a = 1; a <= profile.arity_counts.size(); ++a) {
      const std::uint64_t count = profile.arity_counts[a - 1];
      if (count == 0) continue;
      level += BigInt(count) * (int_pow(c_prev, a) - int_pow(c_prev2, a));
    }
    est.per_level.push_back(level);
    est.cumulative += level;
    c_prev2 = c_prev;
    c_prev += level;
  }
  return est;
}

SpaceEstimate enumerate_space(const ArityProfile& profile, unsigned depth,
                              std::uint64_t node_budget) {
  SpaceEstimate est;
  est.cumulative = 0;

  // One entry per value; inputs occupy level 0.
  std::vector<std::uint8_t> levels(profile.inputs, 0);
  std::uint64_t created_total = 0;

  for (unsigned k = 1; k <= depth; ++k) {
    const std::size_t existing = levels.size();
    std::uint64_t created_here = 0;
    for (std::size_t a = 1; a <= profile.arity_counts.size(); ++a) {
      const std::uint64_t insn_count = profile.arity_counts[a - 1];
      if (insn_count == 0 || existing == 0) continue;
      // Odometer over every ordered a-tuple of pre-existing values.
      std::vector<std::size_t> tuple(a, 0);
      for (;;) {
        unsigned max_level = 0;
        for (std::size_t arg : tuple)
          max_level = std::max<unsigned>(max_level, levels[arg]);
        if (max_level == k - 1) {
          if (created_total + insn_count > node_budget)
            throw BudgetError("enumerate_space: node budget exceeded");
          created_total += insn_count;
          created_here += insn_count;
          for (std::uint64_t m = 0; m < insn_count; ++m)
            levels.push_back(static_cast<std::uint8_t>(k));
        }
        std::size_t pos = a;
        while (pos > 0) {
          if (++tuple[pos - 1] < existing) break;
          tuple[pos - 1] = 0;
          --pos;
        }
        if (pos == 0) break;
      }
    }
    est.per_level.push_back(BigInt(created_here));
    est.cumulative += created_here;
  }
  return est;
}

BigRat reduction_factor(const ArityProfile& full_profile,
                        const ArityProfile& subset_profile,
                        std::uint64_t num_subsets, unsigned depth) {
  if (num_subsets < 1) throw ArgError("num_subsets must be >= 1");
  const BigInt denom_space = space_size(subset_profile, depth).cumulative;
  if (denom_space == 0)
    throw ArgError("reduction_factor: per-subset search space is empty");
  const BigInt numer = space_size(full_profile, depth).cumulative;
  return BigRat(numer, BigInt(num_subsets) * denom_space);
}

ArityProfile overlap_profile(std::uint64_t overlap_count,
                             const ArityProfile& subset_profile) {
  const std::uint64_t total = subset_profile.instruction_count();
  if (overlap_count > total)
    throw ArgError("overlap exceeds subset instruction count");
  ArityProfile overlap;
  overlap.inputs = subset_profile.inputs;
  overlap.arity_counts.assign(subset_profile.arity_counts.size(), 0);
  // Proportional allocation, higher arities rounded up first.
  std::uint64_t remaining = overlap_count;
  for (std::size_t a = subset_profile.arity_counts.size(); a > 0; --a) {
    const std::uint64_t here = subset_profile.arity_counts[a - 1];
    if (here == 0 || remaining == 0) continue;
    std::uint64_t share = (overlap_count * here + total - 1) / total;
    share = std::min({share, here, remaining});
    overlap.arity_counts[a - 1] = share;
    remaining -= share;
  }
  // Distribute any leftover to arities with spare capacity, lowest first.
  for (std::size_t a = 1; a <= overlap.arity_counts.size() && remaining > 0;
       ++a) {
    const std::uint64_t spare =
        subset_profile.arity_counts[a - 1] - overlap.arity_counts[a - 1];
    const std::uint64_t add = std::min(spare, remaining);
    overlap.arity_counts[a - 1] += add;
    remaining -= add;
  }
  return overlap;
}

std::vector<BigRat> redundancy(std::uint64_t overlap_count,
                               const ArityProfile& subset_profile,
                               unsigned depth) {
  const ArityProfile overlap = overlap_profile(overlap_count, subset_profile);
  const SpaceEstimate subset_space = space_size(subset_profile, depth);
  const SpaceEstimate overlap_space = space_size(overlap, depth);
  std::vector<BigRat> ratios;
  ratios.reserve(depth);
  BigInt subset_cum = 0;
  BigInt overlap_cum = 0;
  for (unsigned k = 1; k <= depth; ++k) {
    subset_cum += subset_space.per_level[k - 1];
    overlap_cum += overlap_space.per_level[k - 1];
    if (subset_cum == 0)
      throw ArgError("redundancy: subset search space is empty");
    ratios.emplace_back(overlap_cum, subset_cum);
  }
  return ratios;
}

double log10_value(const BigInt& value) {
  if (value <= 0) throw ArgError("log10 of a non-positive count");
  return static_cast<double>(log10(BigFloat(value)));
}

double log10_value(const BigRat& value) {
  if (value <= 0) throw ArgError("log10 of a non-positive ratio");
  return static_cast<double>(log10(BigFloat(numerator(value))) -
                             log10(BigFloat(denominator(value))));
}

}  // namespace subsetminer
