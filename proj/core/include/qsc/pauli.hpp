#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qsc/gf.hpp"

namespace qsc {

/// Generalized Pauli tensor in canonical form
///
///     xi^phase * prod_e X_e(x[e]) * prod_e Z_e(z[e])
///
/// with X(a)|b> = |a+b> and Z(a)|b> = xi^trace(ab)|b>, xi = exp(2*pi*i/d).
/// X factors stand left of Z factors in every slot; products are renormalised
/// on the spot, so two operators are equal iff (phase, x, z) are equal.
struct PauliOp {
  FieldCtxPtr ctx;
  int n = 0;
  int phase = 0;  // exponent of xi, in [0, d)
  std::vector<FieldElement> x;
  std::vector<FieldElement> z;

  bool is_identity() const;
  /// Identity up to phase: x and z all zero.
  bool is_phase_times_identity() const;

  friend bool operator==(const PauliOp& a, const PauliOp& b) {
    return a.n == b.n && a.phase == b.phase && a.x == b.x && a.z == b.z &&
           a.ctx->same_field(*b.ctx);
  }
};

PauliOp pauli_identity(FieldCtxPtr ctx, int n);
PauliOp pauli_x(FieldCtxPtr ctx, int n, int site, FieldElement a);
PauliOp pauli_z(FieldCtxPtr ctx, int n, int site, FieldElement b);
/// X(a)Z(b) on one site, phase 0.
PauliOp pauli_xz(FieldCtxPtr ctx, int n, int site, FieldElement a, FieldElement b);

/// Canonical-form product p*q.  Associative; the reordering phase comes from
/// moving p's Z block across q's X block: Z(b)X(a) = xi^trace(ab) X(a)Z(b).
PauliOp multiply(const PauliOp& p, const PauliOp& q);

/// Inverse (= adjoint, since the operator is unitary with unit-modulus phase).
PauliOp dagger(const PauliOp& p);

/// Integer power via the closed product form.
PauliOp pauli_pow(const PauliOp& p, long long k);

/// Exponent t with p*q = xi^t q*p, i.e. the symplectic pairing
/// t = sum_e trace(x_q z_p) - trace(x_p z_q) mod d.
int commutation_phase(const PauliOp& p, const PauliOp& q);

/// Textual rendering like "w^2 X2(1) Z2(2) X5(1)" (w = xi, sites ascending,
/// field elements printed as their canonical integer encoding).
std::string to_string(const PauliOp& p);

struct SymplecticRankResult {
  int rank = 0;                 // row rank of the (x|z) matrix over F_{d^ell}
  std::uint64_t group_order = 0;  // (d^ell)^rank
  std::uint64_t code_dim = 0;     // (d^ell)^(n - rank)
  std::vector<std::size_t> independent;  // indices of a maximal independent subset
};

/// Rank of the generators' exponent matrix over the coefficient field.
///
/// Preconditions checked here: all pairs commute (error names the first
/// offending pair), and no product of the generators equals xi^j * I with
/// j != 0 ("inconsistent stabilizer").  The phase check runs over the
/// integer-combination dependencies, which generate every group relation.
/// For an empty generator list the arity cannot be inferred, so callers pass
/// it explicitly; the result is then rank 0 and code_dim = (d^ell)^n.
SymplecticRankResult symplectic_rank(const std::vector<PauliOp>& gens,
                                     FieldCtxPtr ctx_if_empty = nullptr, int n_if_empty = 0);

}  // namespace qsc
