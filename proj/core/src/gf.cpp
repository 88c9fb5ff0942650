#include "qsc/gf.hpp"

#include <cmath>
#include <numbers>

namespace qsc {

std::complex<double> PhaseExp::value() const {
  double theta = 2.0 * std::numbers::pi * exponent / d;
  return {std::cos(theta), std::sin(theta)};
}

bool FieldCtx::is_prime(int n) {
  if (n < 2) return false;
  for (int p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

namespace {

// Polynomials over F_d, low-degree-first, trailing zeros allowed.

int poly_deg(const std::vector<int>& p) {
  for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
    if (p[i] != 0) return i;
  return -1;
}

// Remainder of a mod b (b monic of degree >= 1).
std::vector<int> poly_mod(std::vector<int> a, const std::vector<int>& b, int d) {
  int db = poly_deg(b);
  for (int i = poly_deg(a); i >= db; --i) {
    int c = a[i] % d;
    if (c == 0) continue;
    for (int j = 0; j <= db; ++j) {
      int k = i - db + j;
      a[k] = ((a[k] - c * b[j]) % d + d * d) % d;
    }
  }
  a.resize(db);
  return a;
}

std::vector<int> poly_mul(const std::vector<int>& a, const std::vector<int>& b, int d) {
  std::vector<int> r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % d;
  }
  return r;
}

}  // namespace

bool FieldCtx::is_irreducible(int d, const std::vector<int>& poly) {
  int deg = poly_deg(poly);
  if (deg < 1) return false;
  if (deg == 1) return true;
  // Enumerate monic divisor candidates of degree 1..deg/2.
  for (int k = 1; 2 * k <= deg; ++k) {
    std::uint64_t count = 1;
    for (int i = 0; i < k; ++i) count *= static_cast<std::uint64_t>(d);
    for (std::uint64_t enc = 0; enc < count; ++enc) {
      std::vector<int> cand(k + 1, 0);
      std::uint64_t e = enc;
      for (int i = 0; i < k; ++i) {
        cand[i] = static_cast<int>(e % d);
        e /= d;
      }
      cand[k] = 1;
      if (poly_deg(poly_mod(poly, cand, d)) < 0) return false;
    }
  }
  return true;
}

FieldCtx::FieldCtx(int d, int ell, std::optional<std::vector<int>> modulus) : d_(d), ell_(ell) {
  if (!is_prime(d)) throw ValidationError("field characteristic must be prime, got " + std::to_string(d));
  if (ell < 1) throw ValidationError("extension degree must be >= 1");
  std::uint64_t q = 1;
  for (int i = 0; i < ell; ++i) q *= static_cast<std::uint64_t>(d);
  if (q > (1u << 24)) throw ValidationError("field size out of desk-scale range");
  q_ = static_cast<std::uint32_t>(q);

  if (ell == 1) {
    modulus_ = {0, 1};  // x
    if (modulus && *modulus != modulus_)
      throw ValidationError("modulus for a prime field must be x, i.e. {0,1}");
  } else if (modulus) {
    modulus_ = *modulus;
    if (static_cast<int>(modulus_.size()) != ell + 1 || modulus_[ell] != 1)
      throw ValidationError("modulus must be monic of degree ell");
    for (int c : modulus_)
      if (c < 0 || c >= d) throw ValidationError("modulus coefficients must lie in [0, d)");
    if (!is_irreducible(d, modulus_))
      throw ValidationError("modulus polynomial is reducible over F_" + std::to_string(d));
  } else {
    // Smallest monic irreducible of degree ell, in little-endian integer order
    // of the non-leading coefficients.
    std::uint64_t count = 1;
    for (int i = 0; i < ell; ++i) count *= static_cast<std::uint64_t>(d);
    for (std::uint64_t enc = 0; enc < count; ++enc) {
      std::vector<int> cand(ell + 1, 0);
      std::uint64_t e = enc;
      for (int i = 0; i < ell; ++i) {
        cand[i] = static_cast<int>(e % d);
        e /= d;
      }
      cand[ell] = 1;
      if (is_irreducible(d, cand)) {
        modulus_ = cand;
        break;
      }
    }
    if (modulus_.empty()) throw ValidationError("no irreducible modulus found");
  }

  // Trace table: trace(x) = sum of diagonal entries of the multiplication map.
  trace_table_.assign(q_, 0);
  for (std::uint32_t x = 0; x < q_; ++x) {
    int t = 0;
    std::vector<int> xp = to_poly(x);
    for (int j = 0; j < ell_; ++j) {
      // Column j of mu_x is x * alpha^j reduced; diagonal entry is coeff j.
      std::vector<int> basis(ell_, 0);
      basis[j] = 1;
      std::vector<int> col = poly_mul(xp, basis, d_);
      if (ell_ > 1) col = poly_mod(col, modulus_, d_);
      col.resize(ell_);
      t = (t + col[j]) % d_;
    }
    trace_table_[x] = t;
  }

  // Inverse table by exhaustive search; every nonzero element has one.
  inv_table_.assign(q_, 0);
  for (std::uint32_t a = 1; a < q_; ++a) {
    for (std::uint32_t b = 1; b < q_; ++b) {
      if (mul_raw(a, b) == 1) {
        inv_table_[a] = b;
        break;
      }
    }
    if (inv_table_[a] == 0) throw ValidationError("element without inverse; modulus not irreducible?");
  }
}

std::vector<int> FieldCtx::to_poly(std::uint32_t idx) const {
  std::vector<int> p(ell_, 0);
  for (int i = 0; i < ell_; ++i) {
    p[i] = static_cast<int>(idx % d_);
    idx /= d_;
  }
  return p;
}

std::uint32_t FieldCtx::from_poly(const std::vector<int>& p) const {
  std::uint32_t idx = 0;
  for (int i = ell_ - 1; i >= 0; --i) idx = idx * d_ + static_cast<std::uint32_t>(p[i] % d_);
  return idx;
}

FieldElement FieldCtx::alpha() const {
  if (ell_ < 2) throw ValidationError("alpha requires an extension field (ell >= 2)");
  return {static_cast<std::uint32_t>(d_)};  // coefficient vector (0,1,0,...)
}

FieldElement FieldCtx::from_coeffs(const std::vector<int>& coeffs) const {
  if (static_cast<int>(coeffs.size()) != ell_)
    throw ValidationError("coefficient vector must have length ell");
  std::vector<int> p(coeffs);
  for (int& c : p) c = ((c % d_) + d_) % d_;
  return {from_poly(p)};
}

std::vector<int> FieldCtx::coeffs(FieldElement x) const { return to_poly(x.idx); }

FieldElement FieldCtx::from_int(long long r) const {
  long long m = ((r % d_) + d_) % d_;
  return {static_cast<std::uint32_t>(m)};
}

FieldElement FieldCtx::add(FieldElement a, FieldElement b) const {
  // Digit-wise mod-d addition of the little-endian encodings.
  std::uint32_t r = 0, pw = 1, x = a.idx, y = b.idx;
  for (int i = 0; i < ell_; ++i) {
    r += pw * static_cast<std::uint32_t>((x % d_ + y % d_) % d_);
    x /= d_;
    y /= d_;
    pw *= d_;
  }
  return {r};
}

FieldElement FieldCtx::neg(FieldElement a) const {
  std::uint32_t r = 0, pw = 1, x = a.idx;
  for (int i = 0; i < ell_; ++i) {
    r += pw * static_cast<std::uint32_t>((d_ - x % d_) % d_);
    x /= d_;
    pw *= d_;
  }
  return {r};
}

FieldElement FieldCtx::sub(FieldElement a, FieldElement b) const { return add(a, neg(b)); }

std::uint32_t FieldCtx::mul_raw(std::uint32_t a, std::uint32_t b) const {
  if (ell_ == 1) return (a * b) % d_;
  std::vector<int> p = poly_mul(to_poly(a), to_poly(b), d_);
  p = poly_mod(p, modulus_, d_);
  p.resize(ell_);
  return from_poly(p);
}

FieldElement FieldCtx::mul(FieldElement a, FieldElement b) const { return {mul_raw(a.idx, b.idx)}; }

FieldElement FieldCtx::inv(FieldElement a) const {
  if (a.idx == 0) throw ValidationError("zero has no multiplicative inverse");
  return {inv_table_[a.idx]};
}

FieldElement FieldCtx::pow(FieldElement a, std::uint64_t k) const {
  FieldElement r = one(), base = a;
  while (k) {
    if (k & 1) r = mul(r, base);
    base = mul(base, base);
    k >>= 1;
  }
  return r;
}

FieldElement FieldCtx::scalar_mul(long long k, FieldElement a) const {
  return mul(from_int(k), a);
}

int FieldCtx::trace(FieldElement x) const { return trace_table_[x.idx]; }

FieldElement FieldCtx::frobenius(FieldElement x) const { return pow(x, static_cast<std::uint64_t>(d_)); }

std::complex<double> FieldCtx::character_sum() const {
  std::complex<double> s = 0.0;
  for (std::uint32_t b = 0; b < q_; ++b) s += root_of_unity(trace_table_[b]);
  return s;
}

bool FieldCtx::discriminant_nonzero() const {
  // Gram matrix of the trace form in the power basis, reduced over F_d.
  std::vector<std::vector<int>> m(ell_, std::vector<int>(ell_, 0));
  for (int j = 0; j < ell_; ++j)
    for (int k = 0; k < ell_; ++k) m[j][k] = trace(pow(alpha_or_one(), static_cast<std::uint64_t>(j + k)));
  // Gaussian elimination mod d.
  int rank = 0;
  for (int col = 0; col < ell_ && rank < ell_; ++col) {
    int piv = -1;
    for (int r = rank; r < ell_; ++r)
      if (m[r][col] % d_ != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(m[rank], m[piv]);
    int inv_p = 0;
    for (int t = 1; t < d_; ++t)
      if ((t * m[rank][col]) % d_ == 1) inv_p = t;
    for (int c = 0; c < ell_; ++c) m[rank][c] = (m[rank][c] * inv_p) % d_;
    for (int r = 0; r < ell_; ++r) {
      if (r == rank || m[r][col] == 0) continue;
      int f = m[r][col];
      for (int c = 0; c < ell_; ++c) m[r][c] = ((m[r][c] - f * m[rank][c]) % d_ + d_ * d_) % d_;
    }
    ++rank;
  }
  return rank == ell_;
}

std::complex<double> FieldCtx::root_of_unity(int e) const {
  return PhaseExp(e, d_).value();
}

// Helper so the discriminant loop also covers ell = 1 (basis {1}).
FieldElement FieldCtx::alpha_or_one() const { return ell_ >= 2 ? alpha() : one(); }

}  // namespace qsc
