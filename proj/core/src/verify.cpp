#include "collatz_cover/verify.hpp"

#include <array>
#include <atomic>
#include <exception>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "collatz_cover/sigma_cache.hpp"

namespace collatz_cover {
namespace {

using Clock = std::chrono::steady_clock;

std::chrono::milliseconds since(Clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start);
}

std::string cell(unsigned i, unsigned m) {
  return "(i=" + std::to_string(i) + ",m=" + std::to_string(m) + ")";
}

void require_range(std::uint64_t first, std::uint64_t last) {
  if (first < 1 || first > last) {
    throw std::invalid_argument("range needs 1 <= start <= end, got [" + std::to_string(first) +
                                ", " + std::to_string(last) + "]");
  }
}

// Outcome of one partition of verify_range. Lists are capped the same way
// VerifyReport caps them; the totals keep the true counts.
struct PartitionResult {
  std::vector<Counterexample> counterexamples;
  std::uint64_t counterexample_total = 0;
  std::vector<std::string> deferred;
  std::uint64_t deferred_total = 0;
  std::array<std::uint64_t, kClassCount> per_class{};
  std::uint64_t sigma_checked = 0;
  std::uint64_t items = 0;

  void fail(Counterexample c) {
    ++counterexample_total;
    if (counterexamples.size() < kMaxListedItems) counterexamples.push_back(std::move(c));
  }
  void defer(std::string input) {
    ++deferred_total;
    if (deferred.size() < kMaxListedItems) deferred.push_back(std::move(input));
  }
};

void check_element(const OddInt& d, const ProfileTable& table, const RangeOptions& options,
                   PartitionResult& out) {
  ++out.items;
  const std::string input = d.str();
  const Classification c = classify(d, table);
  ++out.per_class[c.profile.class_index - 1];

  if (c.profile.member(c.n) != d.value() || c.profile.class_index != residue_class(d) ||
      c.profile.m != c.step.m) {
    out.fail({input, "d = " + LinearForm{c.profile.d_modulus, c.profile.d_offset}.str(),
              "n=" + to_decimal(c.n)});
  }

  const BigInt low = 54 * c.n;
  const BigInt& next = c.step.target.value();
  if (!(low < next && next < low + 54)) {
    out.fail({input, "next in (" + to_decimal(low) + ", " + to_decimal(low + 54) + ")",
              "next=" + to_decimal(next)});
  }

  if (d.value() == 1) return;
  try {
    const std::uint64_t lhs = sigma_infinity(d.value(), options.cache, options.budget);
    const std::uint64_t rhs = sigma_infinity(next, options.cache, options.budget);
    ++out.sigma_checked;
    if (lhs != rhs + c.step.m + 1) {
      out.fail({input, "sigma=" + std::to_string(rhs + c.step.m + 1),
                "sigma=" + std::to_string(lhs)});
    }
  } catch (const BudgetExceeded&) {
    out.defer(input);
  }
}

}  // namespace

VerifyReport verify_theorem1_symbolic(unsigned max_exponent) {
  const auto started = Clock::now();
  VerifyReport report;
  report.check_name = "theorem1";
  report.add_param("max_m", std::to_string(max_exponent));

  for (unsigned i = 1; i <= kClassCount; ++i) {
    for (unsigned m = 1; m <= max_exponent; ++m) {
      const Profile p = derive_profile(i, m);
      const BigInt scale = pow2(m);
      const BigInt a = p.next_offset;
      ++report.items_checked;

      // 3*(modulus*n + offset) + 1 versus 2^m*(54n + a), compared as
      // polynomials in n.
      const BigInt lhs_coefficient = 3 * p.d_modulus;
      const BigInt lhs_constant = 3 * p.d_offset + 1;
      const BigInt rhs_coefficient = scale * 54;
      const BigInt rhs_constant = scale * a;

      if (lhs_coefficient != rhs_coefficient) {
        report.add_counterexample({cell(i, m), "n-coefficient " + to_decimal(rhs_coefficient),
                                   to_decimal(lhs_coefficient)});
      } else if (lhs_constant != rhs_constant) {
        report.add_counterexample(
            {cell(i, m), "constant " + to_decimal(rhs_constant), to_decimal(lhs_constant)});
      } else if (mpz_even_p(a.get_mpz_t())) {
        report.add_counterexample({cell(i, m), "odd next offset", to_decimal(a)});
      } else if (p.d_offset != 18 * p.v_offset + p.residue ||
                 mpz_fdiv_ui(p.d_offset.get_mpz_t(), 18) != p.residue) {
        report.add_counterexample({cell(i, m), "offset = " + std::to_string(p.residue) + " (mod 18)",
                                   to_decimal(p.d_offset)});
      } else {
        report.bump("identities_proved");
      }
    }
  }
  report.settle();
  report.elapsed = since(started);
  return report;
}

VerifyReport verify_conjecture1(std::uint64_t first, std::uint64_t last) {
  require_range(first, last);
  const std::uint64_t first_odd = first | 1U;
  if (first_odd > last) throw std::invalid_argument("range contains no odd integer");

  const auto started = Clock::now();
  VerifyReport report;
  report.check_name = "conjecture1";
  report.add_param("start", std::to_string(first));
  report.add_param("end", std::to_string(last));
  for (unsigned i = 1; i <= kClassCount; ++i) report.bump("class_" + std::to_string(i), 0);

  const ProfileTable table;
  const std::uint64_t count = (last - first_odd) / 2 + 1;
  for (std::uint64_t k = 0; k < count; ++k) {
    const OddInt d(first_odd + 2 * k);
    const Classification c = classify(d, table);
    ++report.items_checked;
    report.bump("class_" + std::to_string(c.profile.class_index));
    const BigInt low = 54 * c.n;
    const BigInt& next = c.step.target.value();
    if (!(low < next && next < low + 54)) {
      report.add_counterexample({d.str(),
                                 "next in (" + to_decimal(low) + ", " + to_decimal(low + 54) + ")",
                                 to_decimal(next)});
    }
  }
  report.settle();
  report.elapsed = since(started);
  return report;
}

VerifyReport verify_sigma_relation(std::uint64_t bound, SigmaCache* cache, std::uint64_t budget) {
  if (bound < 3) throw std::invalid_argument("sigma relation needs bound >= 3");
  const auto started = Clock::now();
  VerifyReport report;
  report.check_name = "sigma-relation";
  report.add_param("bound", std::to_string(bound));
  report.add_param("budget", std::to_string(budget));

  // The worked pair: 13 -> 5 with m = 3.
  const std::pair<std::uint64_t, std::uint64_t> worked[] = {{13, 9}, {5, 5}};
  for (const auto& [d, expected] : worked) {
    ++report.items_checked;
    const std::uint64_t actual = sigma_infinity(from_u64(d), cache, budget);
    if (actual != expected) {
      report.add_counterexample({std::to_string(d), "sigma=" + std::to_string(expected),
                                 "sigma=" + std::to_string(actual)});
    }
  }

  const std::uint64_t count = (bound - 3) / 2 + 1;
  for (std::uint64_t k = 0; k < count; ++k) {
    const OddInt d(3 + 2 * k);
    ++report.items_checked;
    try {
      const OddStep step = odd_step(d);
      const std::uint64_t lhs = sigma_infinity(d.value(), cache, budget);
      const std::uint64_t rhs = sigma_infinity(step.target.value(), cache, budget);
      if (lhs != rhs + step.m + 1) {
        report.add_counterexample({d.str(), "sigma=" + std::to_string(rhs + step.m + 1),
                                   "sigma=" + std::to_string(lhs)});
      }
    } catch (const BudgetExceeded&) {
      report.add_deferred(d.str());
    }
  }
  report.settle();
  report.elapsed = since(started);
  return report;
}

VerifyReport verify_cyclic(unsigned samples_per_class) {
  if (samples_per_class < 1) throw std::invalid_argument("need at least one sample per class");
  const auto started = Clock::now();
  VerifyReport report;
  report.check_name = "cyclic";
  report.add_param("samples_per_class", std::to_string(samples_per_class));

  std::uint64_t classes_passed = 0;
  for (unsigned i = 1; i <= kClassCount; ++i) {
    const std::uint64_t residue = residue_of_class(i);
    bool all = true;
    for (std::uint64_t k = 0; k < samples_per_class; ++k) {
      const OddInt d(residue + 18 * k);
      ++report.items_checked;
      if (!cyclic_recurrence_check(i, d)) {
        all = false;
        report.add_counterexample({d.str(),
                                   "4d+1 = " + std::to_string(residue_of_class(next_class(i))) +
                                       " (mod 18)",
                                   four_d_plus_one(d).str()});
      }
    }
    if (all) ++classes_passed;
  }
  report.bump("classes_passed", classes_passed);

  // 19, 77, 309, ... visits every class once and returns to class 1.
  OddInt d(19);
  const unsigned start_class = residue_class(d);
  unsigned expected_class = start_class;
  for (unsigned step = 0; step < kClassCount; ++step) {
    d = four_d_plus_one(d);
    expected_class = next_class(expected_class);
    ++report.items_checked;
    if (residue_class(d) != expected_class) {
      report.add_counterexample({d.str(), "class " + std::to_string(expected_class),
                                 "class " + std::to_string(residue_class(d))});
    }
  }
  report.bump("chain_steps", kClassCount);
  if (expected_class != start_class) {
    report.add_counterexample({d.str(), "return to class " + std::to_string(start_class),
                               "class " + std::to_string(expected_class)});
  }
  report.settle();
  report.elapsed = since(started);
  return report;
}

VerifyReport verify_range(const RangeOptions& options) {
  require_range(options.first, options.last);
  if (options.partition_size < 1) throw std::invalid_argument("partition size must be >= 1");
  if (options.class_filter) (void)residue_of_class(*options.class_filter);

  const auto started = Clock::now();
  const ProfileTable table(options.max_exponent);

  // Elements are the odd integers in range, or the members of the filtered
  // class when a filter is set, indexed 0..count-1.
  std::uint64_t base = options.first | 1U;
  std::uint64_t stride = 2;
  if (options.class_filter) {
    const std::uint64_t residue = residue_of_class(*options.class_filter);
    const std::uint64_t shift = (residue + 18 - options.first % 18) % 18;
    base = options.first + shift;
    stride = 18;
  }
  const std::uint64_t count = base > options.last ? 0 : (options.last - base) / stride + 1;
  const std::uint64_t partitions = (count + options.partition_size - 1) / options.partition_size;

  std::vector<PartitionResult> results(partitions);
  std::vector<std::exception_ptr> errors(partitions);
  std::atomic<std::uint64_t> next_partition{0};

  auto worker = [&] {
    for (std::uint64_t p = next_partition++; p < partitions; p = next_partition++) {
      try {
        const std::uint64_t begin = p * options.partition_size;
        const std::uint64_t end = std::min(count, begin + options.partition_size);
        for (std::uint64_t k = begin; k < end; ++k) {
          check_element(OddInt(base + k * stride), table, options, results[p]);
        }
      } catch (...) {
        errors[p] = std::current_exception();
      }
    }
  };

  const unsigned threads = std::max(1U, options.threads);
  if (threads == 1 || partitions <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    const auto spawn = std::min<std::uint64_t>(threads, partitions);
    pool.reserve(spawn);
    for (std::uint64_t t = 0; t < spawn; ++t) pool.emplace_back(worker);
  }
  for (const auto& error : errors) {
    if (error) std::rethrow_exception(error);
  }

  VerifyReport report;
  report.check_name = "range";
  report.add_param("start", std::to_string(options.first));
  report.add_param("end", std::to_string(options.last));
  if (options.class_filter) report.add_param("class", std::to_string(*options.class_filter));
  report.add_param("max_m", std::to_string(options.max_exponent));
  report.add_param("budget", std::to_string(options.budget));
  report.add_param("partition_size", std::to_string(options.partition_size));
  report.bump("partitions", partitions);
  for (unsigned i = 1; i <= kClassCount; ++i) report.bump("class_" + std::to_string(i), 0);
  report.bump("sigma_checked", 0);

  for (PartitionResult& r : results) {
    report.items_checked += r.items;
    for (unsigned i = 0; i < kClassCount; ++i) {
      report.bump("class_" + std::to_string(i + 1), r.per_class[i]);
    }
    report.bump("sigma_checked", r.sigma_checked);
    for (Counterexample& c : r.counterexamples) report.add_counterexample(std::move(c));
    if (r.counterexample_total > r.counterexamples.size()) {
      report.bump("counterexamples", r.counterexample_total - r.counterexamples.size());
    }
    for (std::string& item : r.deferred) report.add_deferred(std::move(item));
    if (r.deferred_total > r.deferred.size()) {
      report.bump("deferred", r.deferred_total - r.deferred.size());
    }
  }
  report.settle();
  report.elapsed = since(started);
  return report;
}

}  // namespace collatz_cover
