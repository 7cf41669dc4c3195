#include "collatz_cover/arith.hpp"

#include <utility>

#include "collatz_cover/sigma_cache.hpp"
#include "detail/uint128.hpp"

namespace collatz_cover {
namespace {

using detail::u128;

// 3x+1 stays below 2^128 for every x at or below this bound.
constexpr u128 kFastPathLimit = (~u128{0} - 1) / 3;

void require_odd_positive(const BigInt& value) {
  if (sgn(value) <= 0) {
    throw std::invalid_argument("expected a positive odd integer, got " + to_decimal(value));
  }
  if (mpz_even_p(value.get_mpz_t())) {
    throw std::invalid_argument("expected an odd integer, got " + to_decimal(value));
  }
}

bool fits_fast(const BigInt& x) { return mpz_sizeinbase(x.get_mpz_t(), 2) <= 126; }

u128 to_u128(const BigInt& x) {
  BigInt high = x >> 64;
  BigInt low = x - (high << 64);
  return (static_cast<u128>(high.get_ui()) << 64) | static_cast<u128>(low.get_ui());
}

BigInt from_u128(u128 x) {
  BigInt out = from_u64(static_cast<std::uint64_t>(x >> 64));
  out <<= 64;
  out += from_u64(static_cast<std::uint64_t>(x));
  return out;
}

// Walks the odd orbit of an odd start value. Each visited value whose key
// fits the cache is remembered with the sigma accumulated before reaching
// it, so the cache can be backfilled once the total is known.
class OddOrbit {
 public:
  OddOrbit(const BigInt& start, SigmaCache* cache, std::uint64_t budget,
           const BigInt& reported_input, std::uint64_t already_spent)
      : cache_(cache),
        budget_(budget),
        input_(reported_input),
        total_(already_spent) {
    if (fits_fast(start)) {
      fast_ = to_u128(start);
      is_fast_ = true;
    } else {
      big_ = start;
    }
  }

  std::uint64_t run() {
    while (true) {
      if (is_fast_) {
        if (fast_ == 1) break;
        if (lookup_cached(fast_)) break;
        const u128 next = 3 * fast_ + 1;
        const unsigned m = detail::countr_zero128(next);
        spend(m);
        fast_ = next >> m;
        if (fast_ > kFastPathLimit) {
          big_ = from_u128(fast_);
          is_fast_ = false;
        }
      } else {
        BigInt next = 3 * big_ + 1;
        const unsigned m = trailing_zeros(next);
        spend(m);
        big_ = next >> m;
        if (fits_fast(big_)) {
          fast_ = to_u128(big_);
          is_fast_ = true;
        }
      }
    }
    backfill();
    return total_;
  }

 private:
  bool lookup_cached(u128 value) {
    if (cache_ == nullptr || (value >> 64) != 0) return false;
    const auto key = static_cast<std::uint64_t>(value);
    if (!cache_->admits(key)) return false;
    if (auto hit = cache_->find(key)) {
      total_ += *hit;
      if (total_ > budget_) throw BudgetExceeded(input_, budget_);
      return true;
    }
    path_.emplace_back(key, total_);
    return false;
  }

  void spend(unsigned m) {
    total_ += m + 1;
    if (total_ > budget_) throw BudgetExceeded(input_, budget_);
  }

  void backfill() {
    if (cache_ == nullptr) return;
    for (const auto& [key, before] : path_) cache_->insert(key, total_ - before);
  }

  SigmaCache* cache_;
  std::uint64_t budget_;
  const BigInt& input_;
  std::uint64_t total_;
  bool is_fast_ = false;
  u128 fast_ = 0;
  BigInt big_;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> path_;
};

}  // namespace

OddInt::OddInt(std::uint64_t value) : OddInt(from_u64(value)) {}

OddInt::OddInt(BigInt value) : value_(std::move(value)) { require_odd_positive(value_); }

OddInt OddInt::parse(std::string_view text) { return OddInt(parse_decimal(text)); }

Valuation two_adic_valuation(const BigInt& x) {
  if (sgn(x) <= 0) {
    throw std::invalid_argument("two_adic_valuation needs a positive even integer, got " +
                                to_decimal(x));
  }
  if (mpz_odd_p(x.get_mpz_t())) {
    throw std::invalid_argument("two_adic_valuation needs an even integer, got " + to_decimal(x));
  }
  const unsigned m = trailing_zeros(x);
  return Valuation{m, OddInt(BigInt(x >> m))};
}

OddStep odd_step(const OddInt& d) {
  auto [m, target] = two_adic_valuation(3 * d.value() + 1);
  return OddStep{d, m, std::move(target)};
}

OddInt four_d_plus_one(const OddInt& d) { return OddInt(BigInt(4 * d.value() + 1)); }

BudgetExceeded::BudgetExceeded(const BigInt& input, std::uint64_t budget)
    : std::runtime_error("budget exceeded: sigma(" + to_decimal(input) + ") > " +
                         std::to_string(budget)),
      input_(input),
      budget_(budget) {}

std::uint64_t sigma_infinity(const BigInt& d, SigmaCache* cache, std::uint64_t budget) {
  if (sgn(d) <= 0) {
    throw std::invalid_argument("sigma_infinity needs d >= 1, got " + to_decimal(d));
  }
  const unsigned halvings = trailing_zeros(d);
  if (halvings > budget) throw BudgetExceeded(d, budget);
  OddOrbit orbit(d >> halvings, cache, budget, d, halvings);
  return orbit.run();
}

CollatzTrace trace(const OddInt& d, SigmaCache* cache, std::uint64_t budget) {
  CollatzTrace out{d, {}, 0};
  OddInt current = d;
  while (current.value() != 1) {
    OddStep step = odd_step(current);
    out.sigma += step.m + 1;
    if (out.sigma > budget) throw BudgetExceeded(d.value(), budget);
    current = step.target;
    out.steps.push_back(std::move(step));
  }
  if (cache != nullptr) {
    std::uint64_t remaining = out.sigma;
    for (const OddStep& step : out.steps) {
      if (auto key = to_u64(step.source.value())) cache->insert(*key, remaining);
      remaining -= step.m + 1;
    }
  }
  return out;
}

}  // namespace collatz_cover
