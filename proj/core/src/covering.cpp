#include "collatz_cover/covering.hpp"

#include <algorithm>
#include <chrono>
#include <ostream>
#include <stdexcept>
#include <string>

#include "detail/text_util.hpp"
#include "detail/uint128.hpp"

namespace collatz_cover {
namespace {

BigInt inverse_mod(const BigInt& value, const BigInt& modulus) {
  BigInt out;
  if (mpz_invert(out.get_mpz_t(), value.get_mpz_t(), modulus.get_mpz_t()) == 0) {
    throw std::logic_error("no inverse of " + to_decimal(value) + " mod " + to_decimal(modulus));
  }
  return out;
}

BigInt mod_floor(const BigInt& value, const BigInt& modulus) {
  BigInt out;
  mpz_fdiv_r(out.get_mpz_t(), value.get_mpz_t(), modulus.get_mpz_t());
  return out;
}

// Reduced form of a progression; a profile's offsets only need 64 bits for
// m <= 59, beyond that membership of a 64-bit d is plain equality.
struct CompactProgression {
  std::uint64_t modulus;
  std::uint64_t offset;
  bool wide;
  bool offset_fits;

  bool contains(std::uint64_t d) const {
    if (wide) return offset_fits && d == offset;
    return d % modulus == offset;
  }
};

CompactProgression compact(const Profile& p) {
  auto mod = to_u64(p.d_modulus);
  auto off = to_u64(p.d_offset);
  if (mod) return CompactProgression{*mod, *off, false, true};
  return CompactProgression{0, off.value_or(0), true, off.has_value()};
}

unsigned exponent_of(std::uint64_t d) {
  return detail::countr_zero128(static_cast<detail::u128>(d) * 3 + 1);
}

}  // namespace

std::string LinearForm::str() const {
  std::string out = to_decimal(modulus) + "n";
  if (sgn(offset) != 0) out += " + " + to_decimal(offset);
  return out;
}

unsigned residue_of_class(unsigned class_index) {
  if (class_index < 1 || class_index > kClassCount) {
    throw std::out_of_range("class index must be in 1..9, got " + std::to_string(class_index));
  }
  return kResidueOrder[class_index - 1];
}

unsigned class_of_residue(unsigned residue) {
  auto it = std::find(kResidueOrder.begin(), kResidueOrder.end(), residue);
  if (it == kResidueOrder.end()) {
    throw std::invalid_argument("not an odd residue mod 18: " + std::to_string(residue));
  }
  return static_cast<unsigned>(it - kResidueOrder.begin()) + 1;
}

unsigned next_class(unsigned class_index) {
  (void)residue_of_class(class_index);
  return class_index % kClassCount + 1;
}

unsigned residue_class(const OddInt& d) {
  return class_of_residue(static_cast<unsigned>(mpz_fdiv_ui(d.value().get_mpz_t(), 18)));
}

bool Profile::contains(const BigInt& d) const {
  return sgn(d) >= 0 && mod_floor(d, d_modulus) == d_offset;
}

Profile derive_profile(unsigned class_index, unsigned m) {
  const unsigned residue = residue_of_class(class_index);
  if (m < 1) throw std::out_of_range("exponent m must be >= 1");

  // x = residue (mod 9); x odd is implied by the second congruence.
  const BigInt nine = 9;
  const BigInt mod9_part = residue % 9;

  // 3x + 1 = 2^m (mod 2^{m+1})  <=>  x = (2^m - 1) * 3^{-1} (mod 2^{m+1}).
  const BigInt two_power = pow2(m + 1);
  const BigInt pow2_part = mod_floor((pow2(m) - 1) * inverse_mod(3, two_power), two_power);

  // x = mod9_part + 9t with 9t = pow2_part - mod9_part (mod 2^{m+1}).
  const BigInt t = mod_floor((pow2_part - mod9_part) * inverse_mod(nine, two_power), two_power);
  const BigInt x = mod9_part + nine * t;

  Profile p;
  p.class_index = class_index;
  p.residue = residue;
  p.m = m;
  p.d_modulus = 18 * pow2(m);
  p.d_offset = x;
  p.v_offset = (x - residue) / 18;
  p.even_offset = 3 * x + 1;
  p.even_modulus = 54 * pow2(m);

  // The CRT solution is unique in [0, 18*2^m); check it satisfies both
  // congruences exactly before trusting it.
  const BigInt quotient = p.even_offset >> m;
  if (x < 0 || x >= p.d_modulus || mod_floor(x, 18) != residue ||
      (quotient << m) != p.even_offset || mpz_even_p(quotient.get_mpz_t()) || quotient >= 54) {
    throw std::logic_error("CRT solution failed verification for class " +
                           std::to_string(class_index) + ", m=" + std::to_string(m));
  }
  p.next_offset = static_cast<unsigned>(quotient.get_ui());
  return p;
}

ProfileTable::ProfileTable(unsigned max_exponent) : max_exponent_(max_exponent) {
  if (max_exponent < 1) throw std::out_of_range("max exponent must be >= 1");
  rows_.reserve(static_cast<std::size_t>(kClassCount) * max_exponent);
  for (unsigned i = 1; i <= kClassCount; ++i) {
    for (unsigned m = 1; m <= max_exponent; ++m) rows_.push_back(derive_profile(i, m));
  }
}

const Profile& ProfileTable::at(unsigned class_index, unsigned m) const {
  (void)residue_of_class(class_index);
  if (m < 1 || m > max_exponent_) {
    throw std::out_of_range("exponent " + std::to_string(m) + " outside 1.." +
                            std::to_string(max_exponent_));
  }
  return rows_[static_cast<std::size_t>(class_index - 1) * max_exponent_ + (m - 1)];
}

std::span<const Profile> ProfileTable::column(unsigned class_index) const {
  (void)residue_of_class(class_index);
  return std::span<const Profile>(rows_).subspan(
      static_cast<std::size_t>(class_index - 1) * max_exponent_, max_exponent_);
}

void write_profiles_csv(std::ostream& out, std::span<const Profile> rows) {
  out << "i,r,m,v_offset,d_offset,d_modulus,even_offset,even_modulus,next_offset\n";
  for (const Profile& p : rows) {
    out << p.class_index << ',' << p.residue << ',' << p.m << ',' << to_decimal(p.v_offset)
        << ',' << to_decimal(p.d_offset) << ',' << to_decimal(p.d_modulus) << ','
        << to_decimal(p.even_offset) << ',' << to_decimal(p.even_modulus) << ','
        << p.next_offset << '\n';
  }
  detail::check_sink(out, "profile CSV");
}

void write_profiles_json(std::ostream& out, std::span<const Profile> rows) {
  detail::Json array = detail::Json::array();
  for (const Profile& p : rows) {
    array.push_back({{"i", p.class_index},
                     {"r", p.residue},
                     {"m", p.m},
                     {"v_offset", detail::big_to_json(p.v_offset)},
                     {"d_offset", detail::big_to_json(p.d_offset)},
                     {"d_modulus", detail::big_to_json(p.d_modulus)},
                     {"even_offset", detail::big_to_json(p.even_offset)},
                     {"even_modulus", detail::big_to_json(p.even_modulus)},
                     {"next_offset", p.next_offset}});
  }
  out << array.dump(2) << '\n';
  detail::check_sink(out, "profile JSON");
}

void write_profiles_text(std::ostream& out, std::span<const Profile> rows) {
  std::vector<std::vector<std::string>> cells;
  cells.push_back({"i", "r", "m", "V(n)", "d(n)", "3d+1", "next"});
  for (const Profile& p : rows) {
    cells.push_back({std::to_string(p.class_index), std::to_string(p.residue),
                     std::to_string(p.m), LinearForm{p.v_modulus(), p.v_offset}.str(),
                     LinearForm{p.d_modulus, p.d_offset}.str(),
                     LinearForm{p.even_modulus, p.even_offset}.str(),
                     LinearForm{BigInt(kNextModulus), BigInt(p.next_offset)}.str()});
  }
  detail::write_aligned(out, cells);
  detail::check_sink(out, "profile table");
}

Classification classify(const OddInt& d) {
  OddStep step = odd_step(d);
  Profile profile = derive_profile(residue_class(d), step.m);
  BigInt n = (d.value() - profile.d_offset) / profile.d_modulus;
  return Classification{std::move(profile), std::move(n), std::move(step)};
}

Classification classify(const OddInt& d, const ProfileTable& table) {
  OddStep step = odd_step(d);
  const unsigned i = residue_class(d);
  Profile profile = step.m <= table.max_exponent() ? table.at(i, step.m) : derive_profile(i, step.m);
  BigInt n = (d.value() - profile.d_offset) / profile.d_modulus;
  return Classification{std::move(profile), std::move(n), std::move(step)};
}

VerifyReport cover_audit(std::uint64_t bound, unsigned max_exponent) {
  if (bound < 3) throw std::invalid_argument("cover_audit needs bound >= 3");
  const auto started = std::chrono::steady_clock::now();
  const ProfileTable table(max_exponent);

  std::vector<CompactProgression> progressions;
  progressions.reserve(table.rows().size());
  for (const Profile& p : table.rows()) progressions.push_back(compact(p));

  VerifyReport report;
  report.check_name = "cover";
  report.add_param("bound", std::to_string(bound));
  report.add_param("max_m", std::to_string(max_exponent));
  report.bump("matched_once", 0);
  report.bump("multiply_matched", 0);

  const std::uint64_t odd_count = (bound - 1) / 2 + 1;
  for (std::uint64_t k = 0; k < odd_count; ++k) {
    const std::uint64_t d = 2 * k + 1;
    std::size_t matches = 0;
    std::size_t matched_at = 0;
    for (std::size_t idx = 0; idx < progressions.size(); ++idx) {
      if (progressions[idx].contains(d)) {
        ++matches;
        matched_at = idx;
      }
    }
    ++report.items_checked;
    const unsigned m = exponent_of(d);
    const std::string input = std::to_string(d);
    if (matches == 1) {
      const Profile& hit = table.rows()[matched_at];
      if (hit.m != m) {
        report.add_counterexample({input, "profile with m=" + std::to_string(m),
                                   "profile with m=" + std::to_string(hit.m)});
      } else {
        report.bump("matched_once");
      }
    } else if (matches > 1) {
      report.bump("multiply_matched");
      report.add_counterexample({input, "1 match", std::to_string(matches) + " matches"});
    } else if (m > max_exponent) {
      report.add_deferred(input);
    } else {
      report.add_counterexample({input, "1 match", "0 matches"});
    }
  }
  report.settle();
  report.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - started);
  return report;
}

bool cyclic_recurrence_check(unsigned class_index, const OddInt& d) {
  const unsigned residue = residue_of_class(class_index);
  if (residue_class(d) != class_index) {
    throw std::invalid_argument(d.str() + " is not congruent to " + std::to_string(residue) +
                                " (mod 18)");
  }
  const OddInt image = four_d_plus_one(d);
  return mpz_fdiv_ui(image.value().get_mpz_t(), 18) == residue_of_class(next_class(class_index));
}

unsigned digital_root(std::string_view decimal) {
  if (decimal.empty()) throw std::invalid_argument("digital_root of an empty string");
  std::uint64_t sum = 0;
  for (char c : decimal) {
    if (c < '0' || c > '9') throw std::invalid_argument("not a decimal digit string");
    sum += static_cast<unsigned>(c - '0');
  }
  while (sum >= 10) {
    std::uint64_t next = 0;
    for (; sum > 0; sum /= 10) next += sum % 10;
    sum = next;
  }
  return static_cast<unsigned>(sum);
}

unsigned digit_root_class(const OddInt& d) {
  const unsigned root = digital_root(d.str());
  // Of root and root + 9 exactly one is odd; oddness of d picks it.
  const unsigned residue = (root % 2 == 1) ? root : root + 9;
  return class_of_residue(residue);
}

}  // namespace collatz_cover
