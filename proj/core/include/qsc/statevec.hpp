#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "qsc/rng.hpp"
#include "qsc/stabilizer.hpp"

namespace qsc {

using cxd = std::complex<double>;

constexpr std::uint64_t kDefaultAmplitudeCap = 1ull << 20;

/// Dense complex state over `sites` qudits of dimension d^ell each.  The
/// basis index of a digit string (n_0, ..., n_{sites-1}) is the little-endian
/// base-(d^ell) integer sum_e n_e q^e, with each digit the canonical integer
/// encoding of a field element.  This indexing is frozen; golden outputs
/// depend on it.
class DenseState {
 public:
  DenseState(FieldCtxPtr ctx, int sites, std::uint64_t cap = kDefaultAmplitudeCap);

  static DenseState zero_state(FieldCtxPtr ctx, int sites, std::uint64_t cap = kDefaultAmplitudeCap);
  static DenseState basis_state(FieldCtxPtr ctx, const std::vector<FieldElement>& digits,
                                std::uint64_t cap = kDefaultAmplitudeCap);
  /// Computational basis state of a grade-1 chain.
  static DenseState from_chain(const TwoComplex& g, const Chain& c,
                               std::uint64_t cap = kDefaultAmplitudeCap);

  int sites() const { return sites_; }
  std::uint64_t dim() const { return dim_; }
  const FieldCtx& field() const { return *ctx_; }
  FieldCtxPtr field_ptr() const { return ctx_; }

  cxd& amp(std::uint64_t i) { return amp_[i]; }
  const cxd& amp(std::uint64_t i) const { return amp_[i]; }
  std::vector<cxd>& data() { return amp_; }
  const std::vector<cxd>& data() const { return amp_; }

  std::uint32_t digit(std::uint64_t index, int site) const { return (index / stride_[site]) % q_; }
  std::uint64_t index_with_digit(std::uint64_t index, int site, std::uint32_t dig) const {
    return index + (static_cast<std::int64_t>(dig) - static_cast<std::int64_t>(digit(index, site))) *
                       static_cast<std::int64_t>(stride_[site]);
  }

  double norm() const;
  void normalize();
  void scale(cxd s);

  void apply_pauli(const PauliOp& p);
  /// Fourier transform on one site, kernel q^(-1/2) xi^trace(ab); inverse
  /// uses the conjugate kernel.
  void apply_fourier(int site, bool inverse = false);
  /// |j, k> -> |j, k + s*j> for control j, target k, s = +-1.
  void apply_sum_gate(int control, int target, int sign = 1);
  /// target += sum_i weight_i * digit(site_i); a whole adder ladder in one
  /// permutation pass.
  void apply_weighted_sum(int target, const std::vector<std::pair<int, FieldElement>>& sources);
  /// Controlled power of a multi-site X pattern: digits_e += sign * j_c * w_e
  /// where j_c is the control digit.
  void apply_controlled_chain_power(int control, const std::vector<FieldElement>& pattern, int sign);
  /// Arbitrary one-site unitary given as a q x q row-major matrix.
  void apply_single_site(int site, const std::vector<cxd>& matrix);
  /// Galois symmetry U_kappa: permutes each site's digits by x -> x^d.
  void apply_galois();

  friend cxd inner_product(const DenseState& a, const DenseState& b);

 private:
  FieldCtxPtr ctx_;
  int sites_ = 0;
  std::uint32_t q_ = 2;
  std::uint64_t dim_ = 1;
  std::vector<std::uint64_t> stride_;
  std::vector<cxd> amp_;
};

cxd inner_product(const DenseState& a, const DenseState& b);
/// |<a|b>|^2 on normalized inputs.
double fidelity(const DenseState& a, const DenseState& b);

/// <s| p |s>.
cxd pauli_expectation(const DenseState& s, const PauliOp& p);

/// Projective measurement of a generator with g^d = I (checked): outcome j
/// collapses onto the xi^j eigenspace with the Born probabilities, using the
/// supplied generator for the sampling.  Repeated measurement of the same
/// generator returns the same outcome.
struct MeasurementResult {
  int outcome = 0;
  std::vector<double> probabilities;
};
MeasurementResult measure_generator(DenseState& s, const PauliOp& g, Rng& rng);

// ---------------------------------------------------------------------------
// Hamiltonian
// ---------------------------------------------------------------------------

struct HamiltonianTerm {
  double coeff = 1.0;  // U for star terms, h for plaquette terms
  PauliOp op;
};

/// H = sum_t -coeff_t (g_t + g_t^dagger); all terms commute (checked at
/// build) and the ground energy on a nonempty code space is
/// -2 (U #V + h #F').
struct HamiltonianSpec {
  double U = 1.0;
  double h = 1.0;
  std::vector<HamiltonianTerm> terms;
  double ground_energy = 0.0;
};

HamiltonianSpec build_hamiltonian(const StabilizerCode& code, double U, double h,
                                  std::uint64_t cap = kDefaultAmplitudeCap);

/// y = H x, matrix-free.
DenseState apply_hamiltonian(const HamiltonianSpec& spec, const DenseState& x);
double energy_expectation(const HamiltonianSpec& spec, const DenseState& x);

/// Dense matrix of H, for small systems only.
std::vector<std::vector<cxd>> hamiltonian_matrix(const HamiltonianSpec& spec, FieldCtxPtr ctx,
                                                 int sites, std::uint64_t max_dim = 4096);

// ---------------------------------------------------------------------------
// Code projector and ground space
// ---------------------------------------------------------------------------

/// Applies the full group average: the product over independent generators of
/// (1/q) sum_{c in F_q} g(c).  Exact projector onto the code space.
void apply_code_projector(const StabilizerCode& code, DenseState& s);

/// Same projector but over the face group only (used for anyon states) or
/// the vertex group only.
void apply_face_group_projector(const StabilizerCode& code, DenseState& s);
void apply_vertex_group_projector(const StabilizerCode& code, DenseState& s);

/// Dense matrix of the code projector (small systems).
std::vector<std::vector<cxd>> code_projector_matrix(const StabilizerCode& code,
                                                    std::uint64_t max_dim = 2048);

/// trace(pi) computed by applying the projector to every basis vector.
cxd code_projector_trace(const StabilizerCode& code, std::uint64_t max_dim = 8192);

struct GroundSpaceOptions {
  double U = 1.0;
  double h = 1.0;
  std::uint64_t cap = kDefaultAmplitudeCap;
  std::uint64_t eigensolve_cap = 1024;  // full diagonalization cross-check up to this dim
  std::uint64_t seed = 20240901;
  int probe_pad = 4;  // extra random probes beyond the expected dimension
  double tol = 1e-8;
};

struct GroundSpaceReport {
  double ground_energy = 0.0;       // -2 (U #V + h #F')
  std::uint64_t expected_dimension = 0;
  int dense_dimension = 0;          // Gram rank of projected random probes
  int eigensolve_dimension = -1;    // -1 when the dimension exceeds the cap
  double max_eigen_residual = 0.0;  // max ||H v - E0 v|| over the probes
};

/// Dense ground-space analysis: projects seeded random vectors with the code
/// projector, Gram-ranks them at the tolerance, verifies they are E0
/// eigenvectors of H, and (for small dimensions) cross-checks against a full
/// Hermitian eigendecomposition.
GroundSpaceReport analyze_ground_space(const StabilizerCode& code, const GroundSpaceOptions& opts);

// ---------------------------------------------------------------------------
// Ancilla stabilizer checks
// ---------------------------------------------------------------------------

/// Positive semidefinite check Hamiltonian for the star constraint at v: the
/// adder ladder conjugating a number operator on one ancilla appended after
/// the edge sites.  Zero eigenspace restricted to ancilla |0> equals the +1
/// eigenspace of the vertex operator.
std::vector<std::vector<cxd>> ancilla_vertex_check_matrix(const TwoComplex& g, int v,
                                                          std::uint64_t max_dim = 4096);

/// Same for the plaquette constraint at face f, with the adder ladder
/// conjugated by Fourier transforms on the face's edges.
std::vector<std::vector<cxd>> ancilla_face_check_matrix(const TwoComplex& g, int f,
                                                        std::uint64_t max_dim = 4096);

// ---------------------------------------------------------------------------
// Galois symmetry
// ---------------------------------------------------------------------------

struct GaloisReport {
  double commutator_max = 0.0;       // max-norm of U_kappa H - H U_kappa
  double idempotency_error = 0.0;    // max-norm of pi_kappa^2 - pi_kappa
  int ground_image_rank = 0;         // rank of pi_kappa restricted to the ground space
  int frobenius_orbit_count = 0;     // combinatorial oracle for that rank
  bool prime_subfield_fixed = true;  // pi_kappa fixes every F_d-chain class state
};

/// Checks that the lattice Frobenius permutation commutes with H and that
/// averaging over the Galois group projects the ground space onto the
/// prime-subfield sector.  Dense; requires ell >= 2 and a small system.
GaloisReport galois_symmetry_report(const StabilizerCode& code, double U, double h,
                                    std::uint64_t max_dim = 4096);

}  // namespace qsc
