#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qsc {

/// Raised when an input fails a structural invariant (bad field parameters,
/// malformed complex, non-commuting generators, ...).
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Raised when a requested dense computation exceeds the configured size cap.
class CapacityError : public std::runtime_error {
 public:
  CapacityError(const std::string& msg, std::uint64_t required)
      : std::runtime_error(msg), required_size(required) {}
  std::uint64_t required_size;
};

/// Element of F_{d^ell}, encoded as the little-endian base-d integer of its
/// coefficient vector in the basis {1, alpha, ..., alpha^(ell-1)}.  The
/// encoding is canonical, so equality is coefficient-wise equality.
struct FieldElement {
  std::uint32_t idx = 0;
  friend bool operator==(FieldElement a, FieldElement b) { return a.idx == b.idx; }
  friend bool operator!=(FieldElement a, FieldElement b) { return a.idx != b.idx; }
  friend bool operator<(FieldElement a, FieldElement b) { return a.idx < b.idx; }
};

/// Exponent of the d-th root of unity xi = exp(2*pi*i/d).  Arithmetic is
/// addition mod d; conversion to a complex number happens only at the dense
/// state-vector boundary.
struct PhaseExp {
  int exponent = 0;  // always reduced to [0, d)
  int d = 2;

  PhaseExp() = default;
  PhaseExp(int e, int dd) : d(dd) { exponent = ((e % dd) + dd) % dd; }

  PhaseExp plus(const PhaseExp& o) const { return PhaseExp(exponent + o.exponent, d); }
  PhaseExp negated() const { return PhaseExp(-exponent, d); }
  std::complex<double> value() const;

  friend bool operator==(const PhaseExp& a, const PhaseExp& b) {
    return a.d == b.d && a.exponent == b.exponent;
  }
};

/// Arithmetic context for the prime field F_d (ell = 1) or the extension
/// field F_{d^ell}.  The modulus is a monic irreducible polynomial over F_d
/// stored low-degree-first with length ell+1; for ell = 1 it is x, i.e.
/// {0, 1}.  Immutable after construction; all operations are pure, so a
/// context may be shared freely across threads.
class FieldCtx {
 public:
  /// Builds a context.  When no modulus is given, the lexicographically
  /// smallest monic irreducible polynomial of degree ell is chosen
  /// (coefficient vectors compared as little-endian base-d integers), which
  /// makes contexts reproducible across runs.
  FieldCtx(int d, int ell, std::optional<std::vector<int>> modulus = std::nullopt);

  int d() const { return d_; }
  int ell() const { return ell_; }
  std::uint32_t size() const { return q_; }  // d^ell
  const std::vector<int>& modulus() const { return modulus_; }

  FieldElement zero() const { return {0}; }
  FieldElement one() const { return {1}; }
  FieldElement alpha() const;  // class of x; requires ell >= 2

  FieldElement from_coeffs(const std::vector<int>& coeffs) const;
  std::vector<int> coeffs(FieldElement x) const;
  /// Embeds an integer residue into the prime subfield.
  FieldElement from_int(long long r) const;

  FieldElement add(FieldElement a, FieldElement b) const;
  FieldElement sub(FieldElement a, FieldElement b) const;
  FieldElement neg(FieldElement a) const;
  FieldElement mul(FieldElement a, FieldElement b) const;
  /// Multiplicative inverse; throws ValidationError on zero.
  FieldElement inv(FieldElement a) const;
  FieldElement pow(FieldElement a, std::uint64_t k) const;
  /// k-fold sum a + a + ... + a, i.e. multiplication by k mod d.
  FieldElement scalar_mul(long long k, FieldElement a) const;

  /// Field trace down to F_d, computed as the matrix trace of the F_d-linear
  /// multiplication-by-x map.  Returns a residue in [0, d).
  int trace(FieldElement x) const;

  /// The Frobenius map x -> x^d, generator of the Galois group.
  FieldElement frobenius(FieldElement x) const;

  /// Sum over the whole field of xi^trace(b).  Zero (to rounding) for every
  /// valid context; this is what makes the extension-field Fourier kernel
  /// unitary.
  std::complex<double> character_sum() const;

  /// Determinant test of the Gram matrix trace(alpha^(j+k)) over F_d.
  bool discriminant_nonzero() const;

  PhaseExp phase(int e) const { return PhaseExp(e, d_); }
  std::complex<double> root_of_unity(int e) const;

  bool same_field(const FieldCtx& o) const {
    return d_ == o.d_ && ell_ == o.ell_ && modulus_ == o.modulus_;
  }

  static bool is_prime(int n);
  /// Irreducibility over F_d by trial division against every monic divisor
  /// candidate of degree <= deg/2.  Fine at desk scale (ell <= 4, d <= 7).
  static bool is_irreducible(int d, const std::vector<int>& poly);

 private:
  int d_ = 2;
  int ell_ = 1;
  std::uint32_t q_ = 2;
  std::vector<int> modulus_;
  std::vector<std::uint32_t> inv_table_;
  std::vector<int> trace_table_;

  std::vector<int> to_poly(std::uint32_t idx) const;
  std::uint32_t from_poly(const std::vector<int>& p) const;
  std::uint32_t mul_raw(std::uint32_t a, std::uint32_t b) const;
  FieldElement alpha_or_one() const;
};

using FieldCtxPtr = std::shared_ptr<const FieldCtx>;

inline FieldCtxPtr make_field(int d, int ell = 1,
                              std::optional<std::vector<int>> modulus = std::nullopt) {
  return std::make_shared<FieldCtx>(d, ell, std::move(modulus));
}

}  // namespace qsc
