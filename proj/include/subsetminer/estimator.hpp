#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <vector>

namespace subsetminer {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

// Instruction mix of a search space: how many instructions take 1, 2, ...
// arguments, plus the number of input values sitting at level zero.
struct ArityProfile {
  std::uint64_t inputs = 1;
  std::vector<std::uint64_t> arity_counts;  // arity_counts[a-1] = #a-ary

  static ArityProfile make(std::uint64_t inputs, std::uint64_t unary,
                           std::uint64_t binary);
  std::uint64_t unary_count() const;
  std::uint64_t binary_count() const;
  std::uint64_t instruction_count() const;  // over all arities
  std::uint64_t max_arity() const;
};

struct SpaceEstimate {
  std::vector<BigInt> per_level;  // new values created at level 1, 2, ...
  BigInt cumulative;              // total nodes, inputs excluded
};

// Closed-form level recurrence. A level-k application takes at least one
// argument from level k-1 and the rest from any earlier level, so an a-ary
// instruction contributes C(k-1)^a - C(k-2)^a new values, where C(j) is the
// number of values existing through level j (inputs included).
SpaceEstimate space_size(const ArityProfile& profile, unsigned depth);

// Independent oracle: materializes every application term level by level
// under the same construction rule and counts them. Refuses (BudgetError)
// rather than returning a partial count when the budget would be exceeded.
SpaceEstimate enumerate_space(const ArityProfile& profile, unsigned depth,
                              std::uint64_t node_budget = 10'000'000);

// Full-space size divided by (num_subsets * per-subset space size) at the
// given depth. Errors when the per-subset space is empty.
BigRat reduction_factor(const ArityProfile& full_profile,
                        const ArityProfile& subset_profile,
                        std::uint64_t num_subsets, unsigned depth);

// Splits `overlap_count` instructions across arities in the same proportion
// as the subset profile, rounding the higher arity up.
ArityProfile overlap_profile(std::uint64_t overlap_count,
                             const ArityProfile& subset_profile);

// R_k for k = 1..depth: the share of a partition's per-level search effort
// duplicated in another partition sharing `overlap_count` instructions.
std::vector<BigRat> redundancy(std::uint64_t overlap_count,
                               const ArityProfile& subset_profile,
                               unsigned depth);

double log10_value(const BigInt& value);
double log10_value(const BigRat& value);

}  // namespace subsetminer
