#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qsc/chain_complex.hpp"
#include "qsc/pauli.hpp"

namespace qsc {

/// Z-type star operator: exponent +1 on edges oriented into v, -1 on edges
/// oriented out of v.  A self-loop contributes both and cancels.
PauliOp vertex_operator(const TwoComplex& g, int v);

/// X-type plaquette operator with the face's walk signs as exponents.
PauliOp face_operator(const TwoComplex& g, int f);

/// Exponent-scaled member of the abelian family attached to a pure-X or
/// pure-Z generator: g(c) has the exponent vector of g multiplied by c.
/// For integer c this is the ordinary operator power.
PauliOp op_scaled(const PauliOp& g, FieldElement c);

/// The code built from a complex: all star and plaquette generators, their
/// independent subset, logical operators, and the code parameters.
class StabilizerCode {
 public:
  explicit StabilizerCode(std::shared_ptr<const TwoComplex> complex);

  const TwoComplex& complex() const { return *complex_; }
  std::shared_ptr<const TwoComplex> complex_ptr() const { return complex_; }
  FieldCtxPtr field_ptr() const { return complex_->field_ptr(); }

  int n() const { return complex_->edge_count(); }
  int rank() const { return rank_.rank; }
  std::uint64_t code_dim() const { return rank_.code_dim; }
  std::uint64_t group_order() const { return rank_.group_order; }

  const std::vector<PauliOp>& vertex_gens() const { return vertex_gens_; }
  const std::vector<PauliOp>& face_gens() const { return face_gens_; }
  /// Active-face index (into complex().active_faces()) -> generator.
  const PauliOp& face_gen(int active_index) const { return face_gens_[active_index]; }

  /// All non-degenerate generators, vertex block first.
  const std::vector<PauliOp>& generators() const { return generators_; }
  /// Indices into generators() of a maximal independent subset.
  const std::vector<std::size_t>& independent_generators() const { return rank_.independent; }

  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  std::shared_ptr<const TwoComplex> complex_;
  std::vector<PauliOp> vertex_gens_;
  std::vector<PauliOp> face_gens_;
  std::vector<PauliOp> generators_;
  SymplecticRankResult rank_;
  std::vector<std::string> warnings_;
};

struct GlobalIdentityReport {
  bool vertex_product_is_identity = false;
  bool face_identity_holds = false;  // closed: prod = I; bounded: boundary-loop identity
  std::string face_identity_rhs;     // rendered right-hand side
};

/// Verifies by exact Pauli algebra that the product of all vertex operators
/// is the identity and that the product of all active face operators equals
/// the identity (closed mode) or the outer-boundary X-loop times the
/// puncture X-loops (bounded mode).
GlobalIdentityReport global_identities(const StabilizerCode& code);

/// The X-loop around puncture j, traversed opposite to the puncture face's
/// own orientation (the hole side of the cycle).
PauliOp puncture_x_loop(const TwoComplex& g, int puncture_index);

/// The X-loop along the outer boundary, oriented as the boundary of the sum
/// of all faces including punctured ones.
PauliOp outer_boundary_x_loop(const TwoComplex& g);

struct LogicalPair {
  PauliOp x_bar;
  PauliOp z_bar;
};

/// Logical operator pairs.
///
/// Bounded mode with punctures: per puncture, the X-loop around the hole and
/// a Z-string from the hole to the outer boundary found by breadth-first
/// search over the dual graph, avoiding other puncture cycles.  The string's
/// exponents are propagated so it commutes with every face operator, then the
/// whole string is inverted if needed so the pair phase is +1.
///
/// Closed tori: X-operators on the recorded straight loops and Z-strings
/// solved from the cocycle conditions by elimination.
std::vector<LogicalPair> logical_operators(const StabilizerCode& code);

struct CodeParameters {
  int n = 0;
  std::uint64_t code_dim = 1;
  int generator_rank = 0;
};

/// Code parameters, cross-checked against the homology module: throws if the
/// symplectic rank accounting disagrees with the H1 class count.
CodeParameters code_parameters(const StabilizerCode& code);

}  // namespace qsc
