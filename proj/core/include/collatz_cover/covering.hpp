#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "collatz_cover/arith.hpp"
#include "collatz_cover/big_int.hpp"
#include "collatz_cover/report.hpp"

namespace collatz_cover {

/// Odd residues mod 18 ordered so that 4r+1 advances one position,
/// wrapping from the last entry back to the first.
inline constexpr std::array<unsigned, 9> kResidueOrder{1, 5, 3, 13, 17, 15, 7, 11, 9};

inline constexpr unsigned kClassCount = 9;
inline constexpr unsigned kDefaultMaxExponent = 18;
inline constexpr unsigned kNextModulus = 54;

/// modulus*n + offset, printed as "36n + 19" (or "4n" when offset is 0).
struct LinearForm {
  BigInt modulus;
  BigInt offset;

  std::string str() const;
  BigInt at(const BigInt& n) const { return modulus * n + offset; }
  friend bool operator==(const LinearForm&, const LinearForm&) = default;
};

/// Residue for a 1-based class index. Throws std::out_of_range.
unsigned residue_of_class(unsigned class_index);

/// Class index for an odd residue in [1, 17]. Throws std::invalid_argument.
unsigned class_of_residue(unsigned residue);

/// Cyclic successor, 9 wraps to 1.
unsigned next_class(unsigned class_index);

unsigned residue_class(const OddInt& d);

/// The arithmetic progression of odd numbers d = d_modulus*n + d_offset with
/// d = residue (mod 18) whose 3d+1 carries exactly m factors of two. Each
/// member maps to 54n + next_offset under the shortcut step.
struct Profile {
  unsigned class_index = 0;
  unsigned residue = 0;
  unsigned m = 0;
  BigInt v_offset;      // in [0, 2^m); d_offset = 18*v_offset + residue
  BigInt d_offset;      // in [0, 18*2^m)
  BigInt d_modulus;     // 18*2^m
  BigInt even_offset;   // 3*d_offset + 1
  BigInt even_modulus;  // 54*2^m
  unsigned next_offset = 0;

  BigInt v_modulus() const { return pow2(m); }
  BigInt member(const BigInt& n) const { return d_modulus * n + d_offset; }
  bool contains(const BigInt& d) const;

  friend bool operator==(const Profile&, const Profile&) = default;
};

/// Solves d = residue_of_class(i) (mod 9) together with
/// 3d + 1 = 2^m (mod 2^{m+1}) by the Chinese remainder theorem.
/// Requires 1 <= i <= 9 and m >= 1; throws std::out_of_range otherwise.
Profile derive_profile(unsigned class_index, unsigned m);

/// Every profile for classes 1..9 and exponents 1..max_exponent, stored
/// class-major. Immutable after construction.
class ProfileTable {
 public:
  explicit ProfileTable(unsigned max_exponent = kDefaultMaxExponent);

  unsigned max_exponent() const noexcept { return max_exponent_; }
  const Profile& at(unsigned class_index, unsigned m) const;
  std::span<const Profile> rows() const noexcept { return rows_; }
  std::span<const Profile> column(unsigned class_index) const;

 private:
  unsigned max_exponent_;
  std::vector<Profile> rows_;
};

/// CSV header: i,r,m,v_offset,d_offset,d_modulus,even_offset,even_modulus,next_offset
void write_profiles_csv(std::ostream& out, std::span<const Profile> rows);
/// JSON array of row objects with the CSV field names. Values beyond 64 bits
/// are emitted as decimal strings.
void write_profiles_json(std::ostream& out, std::span<const Profile> rows);
/// Aligned table with the V(n), d(n), 3d+1 and next-odd forms.
void write_profiles_text(std::ostream& out, std::span<const Profile> rows);

struct Classification {
  Profile profile;
  BigInt n;     // d = profile.d_modulus * n + profile.d_offset
  OddStep step;  // the shortcut step that fixed the exponent
};

Classification classify(const OddInt& d);
/// Uses the table row when the exponent is within range and derives it
/// otherwise.
Classification classify(const OddInt& d, const ProfileTable& table);

/// Counts, for every odd d <= bound, how many of the 9*max_exponent
/// profiles contain it. Fails on any d matched more than once or on any d
/// with exponent <= max_exponent that no profile matched. Odd numbers whose
/// exponent exceeds max_exponent are reported as deferred.
/// Requires bound >= 3.
VerifyReport cover_audit(std::uint64_t bound, unsigned max_exponent = kDefaultMaxExponent);

/// True iff 4d+1 lands in the residue of the class after class_index.
/// Throws std::invalid_argument when d is not in class class_index.
bool cyclic_recurrence_check(unsigned class_index, const OddInt& d);

/// Iterated decimal digit sum; 0 only for "0".
unsigned digital_root(std::string_view decimal);

/// Class index derived from the digital root and oddness alone.
unsigned digit_root_class(const OddInt& d);

}  // namespace collatz_cover
