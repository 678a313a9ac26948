#include "uptail/ap.hpp"

#include <algorithm>
#include <bit>
#include <mutex>

#include "uptail/errors.hpp"
#include "uptail/parallel.hpp"

namespace uptail {

namespace {

void check_k(int k) {
  if (k < 2) throw DomainError("progression length k must be at least 2");
}

void check_set(const IntegerSet& I, int N) {
  for (int i : I)
    if (i < 1 || i > N) throw DomainError("element " + std::to_string(i) + " outside [N]");
}

}  // namespace

std::vector<std::vector<int>> enumerate_aps(int N, int k) {
  check_k(k);
  std::vector<std::vector<int>> out;
  for (int a = 1; a <= N; ++a)
    for (int b = 1; a + (k - 1) * b <= N; ++b) {
      std::vector<int> prog(static_cast<std::size_t>(k));
      for (int j = 0; j < k; ++j) prog[static_cast<std::size_t>(j)] = a + j * b;
      out.push_back(std::move(prog));
    }
  return out;
}

std::int64_t count_aps(const IntegerSet& I, int k) {
  check_k(k);
  if (I.empty()) return 0;
  const int top = *std::max_element(I.begin(), I.end());
  std::vector<char> in(static_cast<std::size_t>(top + 1), 0);
  for (int i : I) {
    if (i < 1) throw DomainError("integer sets live in {1,2,...}");
    in[static_cast<std::size_t>(i)] = 1;
  }
  std::int64_t count = 0;
  for (int a = 1; a <= top; ++a) {
    if (!in[static_cast<std::size_t>(a)]) continue;
    for (int b = 1; a + (k - 1) * b <= top; ++b) {
      int j = 1;
      while (j < k && in[static_cast<std::size_t>(a + j * b)]) ++j;
      if (j == k) ++count;
    }
  }
  return count;
}

std::int64_t count_aps_mask(std::uint64_t mask, int k) {
  check_k(k);
  std::int64_t count = 0;
  const int top = mask ? 64 - std::countl_zero(mask) : 0;  // largest element
  for (std::uint64_t rest = mask; rest; rest &= rest - 1) {
    const int a = std::countr_zero(rest) + 1;
    for (int b = 1; a + (k - 1) * b <= top; ++b) {
      int j = 1;
      while (j < k && ((mask >> (a + j * b - 1)) & 1U)) ++j;
      if (j == k) ++count;
    }
  }
  return count;
}

std::int64_t extremal_ap_count(std::int64_t m, int k) {
  check_k(k);
  if (m < 0) throw DomainError("m must be nonnegative");
  // Values floor((i-1)/(k-1)) for i = 1..m come in full blocks of k-1.
  const std::int64_t d = k - 1;
  const std::int64_t q = m / d;
  const std::int64_t r = m % d;
  return d * q * (q - 1) / 2 + r * q;
}

ExtremalApScan scan_extremal_ap(int N, int k) {
  check_k(k);
  if (N < 0) throw DomainError("N must be nonnegative");
  if (N > 26) throw BudgetError("extremal scan enumerates 2^N subsets; N must be at most 26");
  std::vector<std::int64_t> extremal(static_cast<std::size_t>(N + 1));
  for (int m = 0; m <= N; ++m) extremal[static_cast<std::size_t>(m)] = extremal_ap_count(m, k);
  const int high = std::min(N, 8);
  const int low = N - high;
  ExtremalApScan scan;
  std::optional<std::uint64_t> first;
  std::mutex merge;
  parallel_blocks(1 << high, [&](int block) {
    ExtremalApScan local;
    std::optional<std::uint64_t> local_first;
    const std::uint64_t prefix = static_cast<std::uint64_t>(block) << low;
    for (std::uint64_t rest = 0; rest < (std::uint64_t{1} << low); ++rest) {
      const std::uint64_t mask = prefix | rest;
      const std::int64_t a = count_aps_mask(mask, k);
      const std::int64_t bound = extremal[static_cast<std::size_t>(std::popcount(mask))];
      if (a > bound) {
        ++local.violations;
        if (!local_first) local_first = mask;
      } else if (a == bound) {
        ++local.equalities;
      }
    }
    std::lock_guard lock(merge);
    scan.violations += local.violations;
    scan.equalities += local.equalities;
    if (local_first && (!first || *local_first < *first)) first = local_first;
  });
  scan.subsets = std::uint64_t{1} << N;
  if (first) scan.first_violation = mask_elements(*first);
  return scan;
}

ApProfile ap_profile(const ApModel& model, const IntegerSet& I) {
  check_k(model.k);
  check_set(I, model.N);
  std::vector<char> in(static_cast<std::size_t>(model.N + 1), 0);
  for (int i : I) in[static_cast<std::size_t>(i)] = 1;
  ApProfile profile;
  profile.a.assign(static_cast<std::size_t>(model.k + 1), 0);
  std::vector<std::int64_t> through(static_cast<std::size_t>(model.N + 1), 0);
  const int k = model.k;
  for (int a = 1; a <= model.N; ++a)
    for (int b = 1; a + (k - 1) * b <= model.N; ++b) {
      int hits = 0;
      int outside = -1;
      int n_outside = 0;
      for (int j = 0; j < k; ++j) {
        int x = a + j * b;
        if (in[static_cast<std::size_t>(x)]) {
          ++hits;
        } else {
          outside = x;
          ++n_outside;
        }
      }
      ++profile.a[static_cast<std::size_t>(hits)];
      // The progression lies in I ∪ {i} and contains i.
      if (n_outside == 0) {
        for (int j = 0; j < k; ++j) ++through[static_cast<std::size_t>(a + j * b)];
      } else if (n_outside == 1) {
        ++through[static_cast<std::size_t>(outside)];
      }
    }
  for (int i = 1; i <= model.N; ++i) profile.per_element[i] = through[static_cast<std::size_t>(i)];
  return profile;
}

Rational conditional_expectation_ap(const ApModel& model, const IntegerSet& I) {
  if (!in_open_unit_interval(model.p)) throw DomainError("p must lie strictly between 0 and 1");
  const auto profile = ap_profile(model, I);
  Rational total = 0;
  for (int j = 0; j <= model.k; ++j)
    if (profile.a[static_cast<std::size_t>(j)])
      total += pow(model.p, static_cast<unsigned>(model.k - j)) * profile.a[static_cast<std::size_t>(j)];
  return total;
}

std::string integer_set_hex(const IntegerSet& I) {
  int top = 0;
  for (int i : I) top = std::max(top, i);
  std::string digits((static_cast<std::size_t>(top) + 3) / 4, '0');
  if (digits.empty()) return "0x0";
  for (int i : I) {
    std::size_t bit = static_cast<std::size_t>(i - 1);
    std::size_t pos = digits.size() - 1 - bit / 4;
    int value = (digits[pos] <= '9' ? digits[pos] - '0' : digits[pos] - 'a' + 10) | (1 << (bit % 4));
    digits[pos] = static_cast<char>(value < 10 ? '0' + value : 'a' + value - 10);
  }
  return "0x" + digits;
}

IntegerSet integer_set_from_hex(std::string_view hex) {
  std::size_t start = 0;
  if (hex.size() >= 2 && hex[0] == '0' && (hex[1] == 'x' || hex[1] == 'X')) start = 2;
  if (start == hex.size()) throw ParseError("empty hex bitmask", start);
  IntegerSet out;
  const std::size_t len = hex.size() - start;
  for (std::size_t idx = 0; idx < len; ++idx) {
    char c = hex[hex.size() - 1 - idx];
    int v;
    if (c >= '0' && c <= '9') v = c - '0';
    else if (c >= 'a' && c <= 'f') v = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F') v = c - 'A' + 10;
    else throw ParseError("invalid hex digit", hex.size() - 1 - idx);
    for (int b = 0; b < 4; ++b)
      if ((v >> b) & 1) out.push_back(static_cast<int>(idx * 4) + b + 1);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace uptail
