#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "uptail/model.hpp"
#include "uptail/rational.hpp"

namespace uptail {

/// Sorted subset of {1..N}.
using IntegerSet = std::vector<int>;

/// All k-APs (a, a+b, ..., a+(k-1)b) with b > 0 inside {1..N}, ordered by
/// first element then difference.
std::vector<std::vector<int>> enumerate_aps(int N, int k);

/// A_k(I): progressions fully inside I, each counted once.
std::int64_t count_aps(const IntegerSet& I, int k);
/// Same for a bitmask over {1..64} (bit i-1 is element i).
std::int64_t count_aps_mask(std::uint64_t mask, int k);

/// A_k([m]) = sum_{i=1}^m floor((i-1)/(k-1)).
std::int64_t extremal_ap_count(std::int64_t m, int k);

struct ExtremalApScan {
  std::uint64_t subsets = 0;
  std::uint64_t violations = 0;  // A_k(I) > A_k([|I|])
  std::uint64_t equalities = 0;  // A_k(I) = A_k([|I|])
  std::optional<IntegerSet> first_violation;
};

/// Checks A_k(I) ≤ A_k([|I|]) for all 2^N subsets I of [N]; N ≤ 26.
ExtremalApScan scan_extremal_ap(int N, int k);

struct ApProfile {
  std::vector<std::int64_t> a;                 // a_0..a_k
  std::map<int, std::int64_t> per_element;     // i -> A_k(I ∪ {i}; i), for i in [N]
};

ApProfile ap_profile(const ApModel& model, const IntegerSet& I);

/// E_I[X] = sum_j a_j(I) p^{k-j}.
Rational conditional_expectation_ap(const ApModel& model, const IntegerSet& I);

/// Serialised forms: sorted list, or hex bitmask ("0x..." with bit i-1 for i).
std::string integer_set_hex(const IntegerSet& I);
IntegerSet integer_set_from_hex(std::string_view hex);

}  // namespace uptail
