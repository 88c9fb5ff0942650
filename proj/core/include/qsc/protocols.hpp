#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qsc/statevec.hpp"

namespace qsc {

/// Replayable run record: same seed and inputs give an identical event list,
/// and the JSON rendering is byte-identical.
struct TranscriptEvent {
  std::string kind;
  std::string detail;
};

struct ProtocolTranscript {
  std::uint64_t seed = 0;
  std::vector<TranscriptEvent> events;

  void log(const std::string& kind, const std::string& detail) {
    events.push_back({kind, detail});
  }
};

std::string transcript_to_json(const ProtocolTranscript& t);

// ---------------------------------------------------------------------------
// Storage and retrieval
// ---------------------------------------------------------------------------

struct StoreResult {
  DenseState state;
  ProtocolTranscript transcript;
  std::vector<int> face_order;      // active-face positions in measurement order
  std::vector<int> fresh_edges;     // correction edge per measured face (-1 for the last)
  double fidelity_vs_projector = 0.0;
};

/// Writes sum_j alpha_j |class of j*omega> into the code space: prepares the
/// bare cycle superposition, then measures the plaquette generators in an
/// order where each face has a fresh edge off the support of omega,
/// correcting nonzero outcomes with powers of Z on that edge.  Prime fields
/// only (the amplitude vector has length d).
StoreResult store_cycle_superposition(const StabilizerCode& code, const std::vector<cxd>& amplitudes,
                                      const Chain& omega, Rng rng,
                                      std::uint64_t cap = kDefaultAmplitudeCap);

struct RetrieveResult {
  std::vector<cxd> ancilla_amplitudes;  // length d
  ProtocolTranscript transcript;
  double extraction_norm = 0.0;  // ~1 when the final state factorises exactly
};

/// Swaps the logically stored dit onto a fresh ancilla with the
/// add/subtract/add network, reading the logical value through the dual
/// Z-string of the given pair.  The code register is left in the reference
/// class.  Errors out before touching anything if the state is not in the
/// code space.
RetrieveResult retrieve_to_ancilla(const StabilizerCode& code, const DenseState& stored,
                                   const LogicalPair& pair, Rng rng,
                                   std::uint64_t cap = kDefaultAmplitudeCap);

// ---------------------------------------------------------------------------
// Dyons
// ---------------------------------------------------------------------------

struct DyonParticle {
  FieldElement charge;
  FieldElement flux;
  int vertex = -1;
  int face = -1;
};

/// A lattice state dressed with particle bookkeeping.  The invariant that the
/// total charge and total flux vanish holds after every operation.
struct DyonSystem {
  std::shared_ptr<const StabilizerCode> code;
  HamiltonianSpec hamiltonian;
  DenseState state;
  DenseState ground;  // snapshot of the vacuum the system started from
  std::vector<DyonParticle> particles;
  std::vector<PauliOp> applied_ops;

  const TwoComplex& complex() const { return code->complex(); }
};

/// Vacuum preparation: the projected zero chain, normalized.
DyonSystem make_dyon_vacuum(std::shared_ptr<const StabilizerCode> code, double U, double h,
                            std::uint64_t cap = kDefaultAmplitudeCap);

/// Applies X^a Z^(-b) on the edge; returns indices of (particle, antiparticle)
/// where the particle (a, b) sits at the edge's head vertex and at the face
/// traversing the edge against its orientation.
std::pair<int, int> create_dyon_pair(DyonSystem& sys, int edge, FieldElement a, FieldElement b);

/// One transport step across an edge (charge along it, flux through it).
void move_dyon_step(DyonSystem& sys, int particle, int edge);

/// Fuses two co-located particles: labels add, one bookkeeping entry remains.
int fuse_dyons(DyonSystem& sys, int p1, int p2);

/// Removes a co-located particle/antiparticle pair by applying the exact
/// inverse of a single-edge creation at their shared edge; the state returns
/// to what it was before that pair was created (up to the phases accumulated
/// by any braiding in between).
void annihilate_pair(DyonSystem& sys, int p1, int p2, int edge);

/// Conjugation: negates every particle label by reversing all applied string
/// operators' exponents.  Returns the label map for reporting.
void conjugate_labels(DyonSystem& sys);

/// Measured charge at a vertex (eigenphase exponent of g_v) and measured
/// flux at a face (eigenphase exponent of g_f^dagger); exact integers.
int measured_charge(const DyonSystem& sys, int vertex);
int measured_flux(const DyonSystem& sys, int face);

/// <H> - E0 of the current state.
double excitation_energy(const DyonSystem& sys);

/// 2U(1 - Re xi^a) + 2h(1 - Re xi^b).
double dyon_mass(const FieldCtx& f, double U, double h, FieldElement a, FieldElement b);

// ---------------------------------------------------------------------------
// Braiding
// ---------------------------------------------------------------------------

enum class BraidProcess { Winding, Exchange, Spin };

struct BraidResult {
  BraidProcess process;
  int symbolic_exponent = 0;  // from Pauli reordering + stabilizer membership
  int dense_exponent = 0;     // from the dense overlap phase
  double dense_overlap_error = 0.0;  // distance of the overlap from the nearest root of unity
  int expected_exponent = 0;  // a'b + b'a, ab, or rs mod d
};

/// Full counterclockwise winding of (a,b) around (a2,b2) on the 2x2 torus,
/// computed two ways: the symbolic route reorders the loop operator past the
/// creation strings, the dense route applies the same operators to the
/// simulated state and reads the global phase.
BraidResult braid_winding(FieldCtxPtr field, FieldElement a, FieldElement b, FieldElement a2,
                          FieldElement b2, std::uint64_t cap = kDefaultAmplitudeCap);

/// Counterclockwise exchange of two identical (a,b) dyons via three transport
/// legs on the 2x2 torus.
BraidResult braid_exchange(FieldCtxPtr field, FieldElement a, FieldElement b,
                           std::uint64_t cap = kDefaultAmplitudeCap);

/// Counterclockwise rotation of the charge of an (r,s) dyon around its own
/// flux (one plaquette loop).
BraidResult braid_spin(FieldCtxPtr field, FieldElement r, FieldElement s,
                       std::uint64_t cap = kDefaultAmplitudeCap);

/// Phase exponent of <gs| P |gs> for a ground state of the code, by solving
/// P's exponent vector against the stabilizer generators over the prime
/// field.  Fails ("strings not closed") when P acts outside the code space.
int symbolic_ground_overlap_exponent(const StabilizerCode& code, const PauliOp& p);

// ---------------------------------------------------------------------------
// Interferometer
// ---------------------------------------------------------------------------

struct InterferometerGeometry {
  int probe_edge = -1;      // creation edge of the (r,s) pair
  int kick_edge = -1;       // edge of the controlled displacement
  int transport_edge = -1;  // edge of the adiabatic leg
  int target_edge = -1;     // creation edge of the (a,b) pair
};

struct InterferometerReport {
  int d = 2;
  std::pair<int, int> probe;
  std::pair<int, int> target;
  double chi = 0.0;

  // Ideal two-path estimator (the protocol's design values).
  double sigma_x_tau = 0.0, sigma_y_tau = 0.0;
  double sigma_x_one = 0.0, sigma_y_one = 0.0;
  double phi_top_exact = 0.0;      // 2 pi (s a + r b)/d
  double phi_top_estimate = 0.0;   // from the ratio of the two orderings

  // Faithful expectations including the return-path interference term,
  // averaged over the recorded ancilla outcome (dense backend only).
  bool dense_backend = false;
  double full_sigma_x_tau = 0.0, full_sigma_y_tau = 0.0;
  double full_sigma_x_one = 0.0, full_sigma_y_one = 0.0;

  // Sampling mode.
  long shots = 0;
  double sampled_sigma_x_tau = 0.0, sampled_sigma_y_tau = 0.0;
  double sampled_sigma_x_one = 0.0, sampled_sigma_y_one = 0.0;

  ProtocolTranscript transcript;
  std::string csv;  // "shot,ordering,basis,m,outcome" lines when sampling
};

/// Runs the nine-step phase interferometer on a 3x2 torus: both branch
/// states are evolved explicitly (displacement, transport out, braid loop,
/// transport back), the two-path interference is read off exactly, and shots
/// are drawn from the ideal +-1 statistics when requested.  The braid loop
/// is applied to both branches; only the displaced branch encloses the probe.
/// Dense evolution is used when the state fits the cap, exact Pauli algebra
/// otherwise; both give the same phases.
InterferometerReport run_interferometer(FieldCtxPtr field, std::pair<int, int> probe,
                                        std::pair<int, int> target, double chi, long shots,
                                        Rng rng, std::uint64_t cap = kDefaultAmplitudeCap,
                                        std::optional<InterferometerGeometry> geometry = std::nullopt);

}  // namespace qsc
