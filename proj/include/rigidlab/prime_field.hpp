#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace rigidlab {

using FieldElem = std::uint64_t;

inline constexpr std::uint64_t kMersenne61 = (std::uint64_t{1} << 61) - 1;

/// Arithmetic modulo an odd prime below 2^63. The Mersenne modulus 2^61 - 1
/// takes a shift-and-add reduction path.
class PrimeField {
 public:
  explicit PrimeField(std::uint64_t prime = kMersenne61);

  std::uint64_t prime() const noexcept { return p_; }

  FieldElem add(FieldElem a, FieldElem b) const noexcept {
    FieldElem s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  FieldElem sub(FieldElem a, FieldElem b) const noexcept { return a >= b ? a - b : a + p_ - b; }
  FieldElem neg(FieldElem a) const noexcept { return a == 0 ? 0 : p_ - a; }
  FieldElem mul(FieldElem a, FieldElem b) const noexcept {
    unsigned __int128 prod = static_cast<unsigned __int128>(a) * b;
    if (mersenne_) {
      std::uint64_t lo = static_cast<std::uint64_t>(prod) & kMersenne61;
      std::uint64_t hi = static_cast<std::uint64_t>(prod >> 61);
      std::uint64_t s = lo + hi;
      return s >= p_ ? s - p_ : s;
    }
    return static_cast<FieldElem>(prod % p_);
  }
  FieldElem pow(FieldElem base, std::uint64_t exp) const noexcept;
  /// Inverse of a nonzero element (Fermat).
  FieldElem inv(FieldElem a) const noexcept { return pow(a, p_ - 2); }
  /// Maps a signed integer into [0, p).
  FieldElem from_signed(long long v) const noexcept;

 private:
  std::uint64_t p_;
  bool mersenne_;
};

/// Deterministic Miller-Rabin for 64-bit integers.
bool is_prime_u64(std::uint64_t n);

/// Row space of a growing set of vectors of fixed length, kept in
/// semi-echelon form: each stored row has a pivot (first nonzero entry,
/// normalised to 1) and is zero at the pivots of all earlier rows.
class RowBasis {
 public:
  RowBasis(const PrimeField& field, std::size_t cols);

  std::size_t cols() const noexcept { return cols_; }
  std::size_t rank() const noexcept { return pivots_.size(); }

  /// Reduces `v` in place against the basis. Afterwards v is zero at every
  /// pivot column; v is in the span iff it became the zero vector.
  void reduce(std::vector<FieldElem>& v) const;
  bool contains(std::vector<FieldElem> v) const;
  /// Adds v if independent. Returns true when the rank grew.
  bool insert(std::vector<FieldElem> v);

 private:
  const PrimeField* field_;
  std::size_t cols_;
  std::vector<std::vector<FieldElem>> rows_;
  std::vector<std::size_t> pivots_;
};

/// Rank of a dense row-major matrix over the field. The input is not modified.
std::size_t field_rank(const PrimeField& field, std::span<const FieldElem> entries, std::size_t rows,
                       std::size_t cols);

}  // namespace rigidlab
