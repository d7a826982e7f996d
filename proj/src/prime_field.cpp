#include "rigidlab/prime_field.hpp"

#include "rigidlab/errors.hpp"

namespace rigidlab {

namespace {

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mulmod_u64(result, base, m);
    base = mulmod_u64(base, base, m);
    exp >>= 1;
  }
  return result;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t small : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % small == 0) return n == small;
  }
  std::uint64_t d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  // These bases are deterministic for all n < 2^64.
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < r; ++i) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

PrimeField::PrimeField(std::uint64_t prime) : p_(prime), mersenne_(prime == kMersenne61) {
  if (prime < 3 || prime >= (std::uint64_t{1} << 63) || !is_prime_u64(prime))
    throw ParameterError("field modulus must be an odd prime below 2^63");
}

FieldElem PrimeField::pow(FieldElem base, std::uint64_t exp) const noexcept {
  FieldElem result = 1;
  while (exp > 0) {
    if (exp & 1) result = mul(result, base);
    base = mul(base, base);
    exp >>= 1;
  }
  return result;
}

FieldElem PrimeField::from_signed(long long v) const noexcept {
  if (v >= 0) return static_cast<FieldElem>(static_cast<unsigned long long>(v) % p_);
  FieldElem m = static_cast<FieldElem>((0ULL - static_cast<unsigned long long>(v)) % p_);
  return neg(m);
}

RowBasis::RowBasis(const PrimeField& field, std::size_t cols) : field_(&field), cols_(cols) {}

void RowBasis::reduce(std::vector<FieldElem>& v) const {
  const PrimeField& f = *field_;
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const std::size_t piv = pivots_[r];
    const FieldElem factor = v[piv];
    if (factor == 0) continue;
    const auto& row = rows_[r];
    for (std::size_t c = piv; c < cols_; ++c) {
      if (row[c] != 0) v[c] = f.sub(v[c], f.mul(factor, row[c]));
    }
  }
}

bool RowBasis::contains(std::vector<FieldElem> v) const {
  reduce(v);
  for (FieldElem x : v)
    if (x != 0) return false;
  return true;
}

bool RowBasis::insert(std::vector<FieldElem> v) {
  if (rank() == cols_) return false;
  reduce(v);
  std::size_t piv = 0;
  while (piv < cols_ && v[piv] == 0) ++piv;
  if (piv == cols_) return false;
  const FieldElem scale = field_->inv(v[piv]);
  for (std::size_t c = piv; c < cols_; ++c)
    if (v[c] != 0) v[c] = field_->mul(v[c], scale);
  rows_.push_back(std::move(v));
  pivots_.push_back(piv);
  return true;
}

std::size_t field_rank(const PrimeField& field, std::span<const FieldElem> entries, std::size_t rows,
                       std::size_t cols) {
  if (entries.size() != rows * cols) throw ParameterError("matrix entry count does not match shape");
  RowBasis basis(field, cols);
  for (std::size_t r = 0; r < rows && basis.rank() < cols; ++r) {
    basis.insert(std::vector<FieldElem>(entries.begin() + r * cols, entries.begin() + (r + 1) * cols));
  }
  return basis.rank();
}

}  // namespace rigidlab
