#include "qsc/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include "qsc/homology.hpp"
#include "qsc/json_io.hpp"

namespace qsc {

std::string transcript_to_json(const ProtocolTranscript& t) {
  JsonWriter w;
  w.begin_object();
  w.key("seed").value(static_cast<std::uint64_t>(t.seed));
  w.key("events").begin_array();
  for (const auto& ev : t.events) {
    w.begin_object();
    w.key("kind").value(ev.kind);
    w.key("detail").value(ev.detail);
    w.end_object();
  }
  w.end_array();
  w.end_object();
  return w.str();
}

namespace {

int net_sign(const TwoComplex& g, int face, int edge) {
  if (face < 0) return 0;
  int s = 0;
  for (auto& [e, sgn] : g.faces()[face].boundary)
    if (e == edge) s += sgn;
  return s;
}

// The face on the other side of an edge: net sign opposite to `sign_here`.
int other_face(const TwoComplex& g, int edge, int face_here) {
  int want = -net_sign(g, face_here, edge);
  for (int fi = 0; fi < g.face_count(); ++fi) {
    if (fi == face_here) continue;
    if (net_sign(g, fi, edge) == want) return fi;
  }
  return -1;
}

int phase_exponent_of(const FieldCtx& f, cxd value, double* error = nullptr) {
  int best = 0;
  double best_err = 1e9;
  for (int t = 0; t < f.d(); ++t) {
    double err = std::abs(value - f.root_of_unity(t));
    if (err < best_err) {
      best_err = err;
      best = t;
    }
  }
  if (error) *error = best_err;
  return best;
}

std::string chain_support_string(const TwoComplex& g, const Chain& c) {
  std::ostringstream os;
  bool first = true;
  for (int e = 0; e < g.edge_count(); ++e) {
    if (c.coeffs[e].idx == 0) continue;
    if (!first) os << ' ';
    os << g.edges()[e].id << ':' << c.coeffs[e].idx;
    first = false;
  }
  return first ? "0" : os.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// Storage
// ---------------------------------------------------------------------------

namespace {

struct FaceOrdering {
  std::vector<int> order;        // positions into active_faces
  std::vector<int> fresh_edges;  // edge index per ordered face, -1 if none
};

// Depth-first search for a measurement order where every face (except
// possibly the final one) contributes a fresh edge outside the support of
// omega and outside all earlier boundaries.
bool order_faces_rec(const TwoComplex& g, const std::set<int>& omega_support,
                     std::vector<int>& order, std::vector<int>& fresh,
                     std::vector<char>& used_face, std::set<int>& used_edges, int L) {
  int depth = static_cast<int>(order.size());
  if (depth == L) return true;
  for (int pos = 0; pos < L; ++pos) {
    if (used_face[pos]) continue;
    int fi = g.active_faces()[pos];
    int fresh_edge = -1;
    for (auto& [e, s] : g.faces()[fi].boundary) {
      if (used_edges.count(e) || omega_support.count(e)) continue;
      fresh_edge = e;
      break;
    }
    if (fresh_edge < 0 && depth + 1 < L) continue;  // only the last face may lack one
    used_face[pos] = 1;
    std::vector<int> added;
    for (auto& [e, s] : g.faces()[fi].boundary)
      if (used_edges.insert(e).second) added.push_back(e);
    order.push_back(pos);
    fresh.push_back(fresh_edge);
    if (order_faces_rec(g, omega_support, order, fresh, used_face, used_edges, L)) return true;
    order.pop_back();
    fresh.pop_back();
    used_face[pos] = 0;
    for (int e : added) used_edges.erase(e);
  }
  return false;
}

FaceOrdering find_face_ordering(const TwoComplex& g, const Chain& omega) {
  std::set<int> support;
  for (int e = 0; e < g.edge_count(); ++e)
    if (omega.coeffs[e].idx != 0) support.insert(e);
  FaceOrdering result;
  std::vector<char> used_face(g.active_faces().size(), 0);
  std::set<int> used_edges;
  int L = static_cast<int>(g.active_faces().size());
  if (!order_faces_rec(g, support, result.order, result.fresh_edges, used_face, used_edges, L)) {
    std::ostringstream os;
    os << "no admissible plaquette measurement order for the given cycle; blocked faces:";
    for (int pos = 0; pos < L; ++pos)
      if (!used_face[pos]) os << ' ' << g.faces()[g.active_faces()[pos]].id;
    throw ValidationError(os.str());
  }
  return result;
}

}  // namespace

StoreResult store_cycle_superposition(const StabilizerCode& code, const std::vector<cxd>& amplitudes,
                                      const Chain& omega, Rng rng, std::uint64_t cap) {
  const TwoComplex& g = code.complex();
  const FieldCtx& f = g.field();
  if (f.ell() != 1) throw ValidationError("storage runs on prime fields");
  const int d = f.d();
  if (static_cast<int>(amplitudes.size()) != d)
    throw ValidationError("amplitude vector must have length d");
  if (!is_cycle(g, omega)) throw ValidationError("storage target must be a cycle");
  {
    Chain zero = g.zero_chain(1);
    if (same_class(g, omega, zero)) throw ValidationError("storage cycle must be homologically nontrivial");
  }

  StoreResult result{DenseState(g.field_ptr(), g.edge_count(), cap), {}, {}, {}, 0.0};
  result.transcript.seed = rng.seed();
  result.transcript.log("omega", chain_support_string(g, omega));

  FaceOrdering ordering = find_face_ordering(g, omega);
  result.face_order = ordering.order;
  result.fresh_edges = ordering.fresh_edges;
  {
    std::ostringstream os;
    for (std::size_t i = 0; i < ordering.order.size(); ++i) {
      if (i) os << ' ';
      os << g.faces()[g.active_faces()[ordering.order[i]]].id;
    }
    result.transcript.log("face_order", os.str());
  }

  // |psi~> = sum_j alpha_j |j omega>, normalized.
  double norm2 = 0.0;
  for (const cxd& a : amplitudes) norm2 += std::norm(a);
  if (norm2 < 1e-12) throw ValidationError("amplitude vector is zero");
  double inv_norm = 1.0 / std::sqrt(norm2);
  DenseState psi(g.field_ptr(), g.edge_count(), cap);
  for (int j = 0; j < d; ++j) {
    Chain jomega = chain_scale(g, f.from_int(j), omega);
    std::uint64_t idx = 0;
    std::uint64_t stride = 1;
    for (int e = 0; e < g.edge_count(); ++e) {
      idx += jomega.coeffs[e].idx * stride;
      stride *= f.size();
    }
    psi.amp(idx) += amplitudes[j] * inv_norm;
  }
  psi.normalize();

  DenseState oracle = psi;  // pi |psi~>, the projector route
  apply_code_projector(code, oracle);
  oracle.normalize();

  // Measure each plaquette in order; steer nonzero outcomes back with a
  // power of Z on the face's fresh edge.
  for (std::size_t step = 0; step < ordering.order.size(); ++step) {
    int pos = ordering.order[step];
    int fi = g.active_faces()[pos];
    const PauliOp& gen = code.face_gen(pos);
    if (gen.is_identity()) continue;
    MeasurementResult m = measure_generator(psi, gen, rng);
    result.transcript.log("measure", g.faces()[fi].id + " -> " + std::to_string(m.outcome));
    if (m.outcome != 0) {
      int e = ordering.fresh_edges[step];
      if (e < 0)
        throw ValidationError("nonzero outcome on a face with no correction edge (face " +
                              g.faces()[fi].id + ")");
      int o = net_sign(g, fi, e);
      int power = ((m.outcome * o) % d + d) % d;
      PauliOp corr = pauli_z(g.field_ptr(), g.edge_count(), e, f.from_int(power));
      psi.apply_pauli(corr);
      result.transcript.log("correct", "Z on " + g.edges()[e].id + " power " + std::to_string(power));
    }
  }

  // Everything must now sit in the full code space.
  for (const auto& gen : code.generators()) {
    cxd ev = pauli_expectation(psi, gen);
    if (std::abs(ev - cxd{1.0, 0.0}) > 1e-9)
      throw ValidationError("stored state escaped the code space");
  }

  result.fidelity_vs_projector = fidelity(psi, oracle);
  result.state = std::move(psi);
  result.transcript.log("fidelity", JsonWriter::format_double(result.fidelity_vs_projector));
  return result;
}

// ---------------------------------------------------------------------------
// Retrieval
// ---------------------------------------------------------------------------

RetrieveResult retrieve_to_ancilla(const StabilizerCode& code, const DenseState& stored,
                                   const LogicalPair& pair, Rng rng, std::uint64_t cap) {
  const TwoComplex& g = code.complex();
  const FieldCtx& f = g.field();
  if (f.ell() != 1) throw ValidationError("retrieval runs on prime fields");
  const int n = g.edge_count();
  const int d = f.d();
  const int anc = n;

  for (const auto& gen : code.generators()) {
    cxd ev = pauli_expectation(stored, gen);
    if (std::abs(ev - cxd{1.0, 0.0}) > 1e-9)
      throw ValidationError("state outside code space: generator " + to_string(gen) +
                            " measures away from +1");
  }

  RetrieveResult result;
  result.transcript.seed = rng.seed();

  // Extend with one ancilla dit in |0>.
  DenseState joint(g.field_ptr(), n + 1, cap * f.size());
  for (std::uint64_t i = 0; i < stored.dim(); ++i) joint.amp(i) = stored.amp(i);

  std::vector<std::pair<int, FieldElement>> ladder;
  for (int e = 0; e < n; ++e)
    if (pair.z_bar.z[e].idx != 0) ladder.push_back({e, pair.z_bar.z[e]});
  std::vector<FieldElement> omega(n + 1, FieldElement{0});
  for (int e = 0; e < n; ++e) omega[e] = pair.x_bar.x[e];

  joint.apply_weighted_sum(anc, ladder);  // ancilla += logical readout
  result.transcript.log("gate", "readout ladder onto the ancilla");
  joint.apply_controlled_chain_power(anc, omega, -1);  // code register -= ancilla
  result.transcript.log("gate", "controlled subtraction into the code register");
  joint.apply_weighted_sum(anc, ladder);  // ancilla += readout (now zero class)
  result.transcript.log("gate", "readout ladder onto the ancilla");

  // The code register is left exactly in the reference class state pi|0>.
  DenseState ref = DenseState::zero_state(g.field_ptr(), n, cap);
  apply_code_projector(code, ref);
  ref.normalize();

  result.ancilla_amplitudes.assign(d, cxd{0.0, 0.0});
  for (int c = 0; c < d; ++c) {
    cxd overlap = 0.0;
    std::uint64_t offset = static_cast<std::uint64_t>(c) * stored.dim();
    for (std::uint64_t i = 0; i < stored.dim(); ++i)
      overlap += std::conj(ref.amp(i)) * joint.amp(offset + i);
    result.ancilla_amplitudes[c] = overlap;
  }
  double norm2 = 0.0;
  for (const cxd& a : result.ancilla_amplitudes) norm2 += std::norm(a);
  result.extraction_norm = std::sqrt(norm2);
  result.transcript.log("extraction_norm", JsonWriter::format_double(result.extraction_norm));
  return result;
}

// ---------------------------------------------------------------------------
// Dyons
// ---------------------------------------------------------------------------

DyonSystem make_dyon_vacuum(std::shared_ptr<const StabilizerCode> code, double U, double h,
                            std::uint64_t cap) {
  const TwoComplex& g = code->complex();
  DenseState ground = DenseState::zero_state(g.field_ptr(), g.edge_count(), cap);
  apply_code_projector(*code, ground);
  ground.normalize();
  DyonSystem sys{code, build_hamiltonian(*code, U, h, cap), ground, ground, {}, {}};
  return sys;
}

namespace {

std::pair<DyonParticle, DyonParticle> creation_sites(const TwoComplex& g, int edge, FieldElement a,
                                                     FieldElement b) {
  const FieldCtx& f = g.field();
  int f_minus = -1, f_plus = -1;
  for (int fi = 0; fi < g.face_count(); ++fi) {
    int s = net_sign(g, fi, edge);
    if (s < 0) f_minus = fi;
    if (s > 0) f_plus = fi;
  }
  if (b.idx != 0 && (f_minus < 0 || f_plus < 0))
    throw ValidationError("flux component needs an edge with faces on both sides");
  DyonParticle p{a, b, g.edges()[edge].to, f_minus};
  DyonParticle q{f.neg(a), f.neg(b), g.edges()[edge].from, f_plus};
  return {p, q};
}

}  // namespace

std::pair<int, int> create_dyon_pair(DyonSystem& sys, int edge, FieldElement a, FieldElement b) {
  const TwoComplex& g = sys.complex();
  const FieldCtx& f = g.field();
  PauliOp op = pauli_xz(g.field_ptr(), g.edge_count(), edge, a, f.neg(b));
  sys.state.apply_pauli(op);
  sys.applied_ops.push_back(op);
  auto [p, q] = creation_sites(g, edge, a, b);
  sys.particles.push_back(p);
  sys.particles.push_back(q);
  int i = static_cast<int>(sys.particles.size());
  return {i - 2, i - 1};
}

namespace {

PauliOp transport_op(const TwoComplex& g, DyonParticle& p, int edge) {
  const FieldCtx& f = g.field();
  const EdgeRec& er = g.edges()[edge];
  FieldElement xexp = f.zero(), zexp = f.zero();
  int new_v = p.vertex, new_f = p.face;
  bool backward = false;
  if (er.from == p.vertex) {
    xexp = p.charge;
    new_v = er.to;
  } else if (er.to == p.vertex) {
    xexp = f.neg(p.charge);
    new_v = er.from;
    backward = true;
  } else {
    throw ValidationError("transport edge " + er.id + " is not incident to the dyon's vertex");
  }
  if (p.flux.idx != 0 || p.face >= 0) {
    int s = net_sign(g, p.face, edge);
    if (s == 0) throw ValidationError("transport edge " + er.id + " is not on the dyon's face");
    // Z_e^c shifts the flux at face f by s_{f,e} * c, so clearing b here and
    // depositing it across the edge takes c = -s * b.
    zexp = f.neg(f.scalar_mul(s, p.flux));
    new_f = other_face(g, edge, p.face);
    if (new_f < 0) throw ValidationError("transport edge " + er.id + " crosses the boundary");
  }
  p.vertex = new_v;
  p.face = new_f;
  PauliOp op = pauli_xz(g.field_ptr(), g.edge_count(), edge, xexp, zexp);
  // A move against the edge orientation is the exact inverse of the forward
  // move, which carries the reordering phase of the canonical form; with it,
  // out-and-back transport composes to the identity.
  if (backward) op.phase = f.trace(f.mul(xexp, zexp));
  return op;
}

PauliOp charge_leg_op(const TwoComplex& g, DyonParticle& p, int edge) {
  const FieldCtx& f = g.field();
  const EdgeRec& er = g.edges()[edge];
  FieldElement xexp;
  if (er.from == p.vertex) {
    xexp = p.charge;
    p.vertex = er.to;
  } else if (er.to == p.vertex) {
    xexp = f.neg(p.charge);
    p.vertex = er.from;
  } else {
    throw ValidationError("charge leg edge " + er.id + " is not incident to the dyon's vertex");
  }
  return pauli_x(g.field_ptr(), g.edge_count(), edge, xexp);
}

PauliOp flux_leg_op(const TwoComplex& g, DyonParticle& p, int edge) {
  const FieldCtx& f = g.field();
  int s = net_sign(g, p.face, edge);
  if (s == 0)
    throw ValidationError("flux leg edge " + g.edges()[edge].id + " is not on the dyon's face");
  FieldElement zexp = f.neg(f.scalar_mul(s, p.flux));
  int nf = other_face(g, edge, p.face);
  if (nf < 0) throw ValidationError("flux leg crosses the boundary");
  p.face = nf;
  return pauli_z(g.field_ptr(), g.edge_count(), edge, zexp);
}

}  // namespace

void move_dyon_step(DyonSystem& sys, int particle, int edge) {
  PauliOp op = transport_op(sys.complex(), sys.particles.at(particle), edge);
  sys.state.apply_pauli(op);
  sys.applied_ops.push_back(op);
}

int fuse_dyons(DyonSystem& sys, int p1, int p2) {
  DyonParticle& a = sys.particles.at(p1);
  DyonParticle& b = sys.particles.at(p2);
  const FieldCtx& f = sys.complex().field();
  bool charges = a.charge.idx != 0 || b.charge.idx != 0;
  bool fluxes = a.flux.idx != 0 || b.flux.idx != 0;
  if (charges && a.vertex != b.vertex) throw ValidationError("fusing charges at different vertices");
  if (fluxes && a.face != b.face) throw ValidationError("fusing fluxes at different faces");
  a.charge = f.add(a.charge, b.charge);
  a.flux = f.add(a.flux, b.flux);
  sys.particles.erase(sys.particles.begin() + p2);
  return p1 < p2 ? p1 : p1 - 1;
}

void annihilate_pair(DyonSystem& sys, int p1, int p2, int edge) {
  const TwoComplex& g = sys.complex();
  const FieldCtx& f = g.field();
  DyonParticle& a = sys.particles.at(p1);
  DyonParticle& b = sys.particles.at(p2);
  if (f.add(a.charge, b.charge).idx != 0 || f.add(a.flux, b.flux).idx != 0)
    throw ValidationError("annihilation needs opposite labels");
  auto [head, tail] = creation_sites(g, edge, a.charge, a.flux);
  bool direct = (a.vertex == head.vertex && b.vertex == tail.vertex &&
                 (a.flux.idx == 0 || a.face == head.face) && (b.flux.idx == 0 || b.face == tail.face));
  auto [head2, tail2] = creation_sites(g, edge, b.charge, b.flux);
  bool swapped = (b.vertex == head2.vertex && a.vertex == tail2.vertex &&
                  (b.flux.idx == 0 || b.face == head2.face) && (a.flux.idx == 0 || a.face == tail2.face));
  if (!direct && !swapped)
    throw ValidationError("pair is not positioned across the annihilation edge");
  FieldElement ca = direct ? a.charge : b.charge;
  FieldElement fb = direct ? a.flux : b.flux;
  PauliOp op = dagger(pauli_xz(g.field_ptr(), g.edge_count(), edge, ca, f.neg(fb)));
  sys.state.apply_pauli(op);
  sys.applied_ops.push_back(op);
  int lo = std::min(p1, p2), hi = std::max(p1, p2);
  sys.particles.erase(sys.particles.begin() + hi);
  sys.particles.erase(sys.particles.begin() + lo);
}

void conjugate_labels(DyonSystem& sys) {
  const FieldCtx& f = sys.complex().field();
  // Orientation reversal of every edge is the digit negation |n> -> |-n> on
  // each site; it fixes the vacuum and flips every charge and flux.
  DenseState& s = sys.state;
  std::vector<cxd> out(s.dim(), cxd{0.0, 0.0});
  std::vector<std::uint32_t> neg(f.size());
  for (std::uint32_t a = 0; a < f.size(); ++a) neg[a] = f.neg(FieldElement{a}).idx;
  for (std::uint64_t i = 0; i < s.dim(); ++i) {
    if (s.amp(i) == cxd{0.0, 0.0}) continue;
    std::uint64_t j = 0, rest = i, stride = 1;
    for (int e = 0; e < s.sites(); ++e) {
      j += neg[rest % f.size()] * stride;
      rest /= f.size();
      stride *= f.size();
    }
    out[j] += s.amp(i);
  }
  s.data().swap(out);
  for (auto& p : sys.particles) {
    p.charge = f.neg(p.charge);
    p.flux = f.neg(p.flux);
  }
}

int measured_charge(const DyonSystem& sys, int vertex) {
  cxd ev = pauli_expectation(sys.state, vertex_operator(sys.complex(), vertex));
  double err = 0.0;
  int t = phase_exponent_of(sys.complex().field(), ev, &err);
  if (err > 1e-9) throw ValidationError("vertex expectation is not a pure phase");
  return t;
}

int measured_flux(const DyonSystem& sys, int face) {
  cxd ev = pauli_expectation(sys.state, dagger(face_operator(sys.complex(), face)));
  double err = 0.0;
  int t = phase_exponent_of(sys.complex().field(), ev, &err);
  if (err > 1e-9) throw ValidationError("face expectation is not a pure phase");
  return t;
}

double excitation_energy(const DyonSystem& sys) {
  return energy_expectation(sys.hamiltonian, sys.state) - sys.hamiltonian.ground_energy;
}

double dyon_mass(const FieldCtx& f, double U, double h, FieldElement a, FieldElement b) {
  double ca = f.root_of_unity(f.trace(a)).real();
  double cb = f.root_of_unity(f.trace(b)).real();
  return 2.0 * U * (1.0 - ca) + 2.0 * h * (1.0 - cb);
}

// ---------------------------------------------------------------------------
// Braiding
// ---------------------------------------------------------------------------

int symbolic_ground_overlap_exponent(const StabilizerCode& code, const PauliOp& p) {
  const FieldCtx& f = code.complex().field();
  const int d = f.d();
  const int n = code.n();
  const auto& gens = code.generators();

  // Solve integer combination of generator exponent rows matching p over the
  // prime field (coordinates flattened for extension fields).
  const int fcols = 2 * n * f.ell();
  auto flatten = [&](const PauliOp& op, std::vector<int>& row) {
    row.assign(fcols, 0);
    for (int e = 0; e < n; ++e) {
      std::vector<int> cx = f.coeffs(op.x[e]);
      std::vector<int> cz = f.coeffs(op.z[e]);
      for (int k = 0; k < f.ell(); ++k) {
        row[e * f.ell() + k] = cx[k];
        row[(n + e) * f.ell() + k] = cz[k];
      }
    }
  };

  const std::size_t m = gens.size();
  // Augmented system: columns are generators, right-hand side is p.
  std::vector<std::vector<int>> aug(fcols, std::vector<int>(m + 1, 0));
  {
    std::vector<int> row;
    for (std::size_t gidx = 0; gidx < m; ++gidx) {
      flatten(gens[gidx], row);
      for (int r = 0; r < fcols; ++r) aug[r][gidx] = row[r];
    }
    flatten(p, row);
    for (int r = 0; r < fcols; ++r) aug[r][m] = row[r];
  }
  std::size_t rank = 0;
  std::vector<int> pivot_col(fcols, -1);
  for (std::size_t col = 0; col < m && rank < static_cast<std::size_t>(fcols); ++col) {
    std::size_t piv = rank;
    while (piv < static_cast<std::size_t>(fcols) && aug[piv][col] % d == 0) ++piv;
    if (piv == static_cast<std::size_t>(fcols)) continue;
    std::swap(aug[piv], aug[rank]);
    int ip = 0;
    for (int t = 1; t < d; ++t)
      if ((t * aug[rank][col]) % d == 1) ip = t;
    for (auto& x : aug[rank]) x = (x * ip) % d;
    for (std::size_t r = 0; r < static_cast<std::size_t>(fcols); ++r) {
      if (r == rank || aug[r][col] == 0) continue;
      int fac = aug[r][col];
      for (std::size_t j = 0; j <= m; ++j) aug[r][j] = ((aug[r][j] - fac * aug[rank][j]) % d + d * d) % d;
    }
    pivot_col[rank] = static_cast<int>(col);
    ++rank;
  }
  for (std::size_t r = rank; r < static_cast<std::size_t>(fcols); ++r)
    if (aug[r][m] % d != 0)
      throw ValidationError("strings not closed: operator acts outside the stabilizer group");

  PauliOp combo = pauli_identity(code.field_ptr(), n);
  for (std::size_t r = 0; r < rank; ++r) {
    int k = aug[r][m] % d;
    if (k != 0) combo = multiply(combo, pauli_pow(gens[pivot_col[r]], k));
  }
  if (combo.x != p.x || combo.z != p.z)
    throw ValidationError("strings not closed: operator acts outside the stabilizer group");
  return ((p.phase - combo.phase) % d + d) % d;
}

namespace {

struct BraidContext {
  std::shared_ptr<const TwoComplex> complex;
  std::shared_ptr<const StabilizerCode> code;
  DyonSystem sys;
};

BraidContext braid_setup(FieldCtxPtr field, std::uint64_t cap) {
  if (field->ell() != 1) throw ValidationError("braiding runs on prime fields");
  auto complex = std::make_shared<TwoComplex>(build_torus_square(2, field));
  auto code = std::make_shared<StabilizerCode>(complex);
  return BraidContext{complex, code, make_dyon_vacuum(code, 1.0, 1.0, cap)};
}

BraidResult finish_braid(BraidContext& ctx, const DenseState& before,
                         const std::vector<PauliOp>& process_ops, int expected,
                         BraidProcess process) {
  const FieldCtx& f = ctx.complex->field();
  BraidResult result;
  result.process = process;
  result.expected_exponent = expected;

  cxd overlap = inner_product(before, ctx.sys.state);
  result.dense_exponent = phase_exponent_of(f, overlap, &result.dense_overlap_error);
  if (result.dense_overlap_error > 1e-9)
    throw ValidationError("braid overlap is not a pure phase; strings not closed");

  // Symbolic route: reorder the process operators past the creation strings.
  PauliOp creation = pauli_identity(ctx.complex->field_ptr(), ctx.complex->edge_count());
  std::size_t creation_count = ctx.sys.applied_ops.size() - process_ops.size();
  for (std::size_t i = 0; i < creation_count; ++i)
    creation = multiply(creation, ctx.sys.applied_ops[i]);
  PauliOp proc = pauli_identity(ctx.complex->field_ptr(), ctx.complex->edge_count());
  for (const auto& op : process_ops) proc = multiply(op, proc);  // applied left to right
  PauliOp total = multiply(multiply(dagger(creation), proc), creation);
  result.symbolic_exponent = symbolic_ground_overlap_exponent(*ctx.code, total);
  return result;
}

}  // namespace

BraidResult braid_winding(FieldCtxPtr field, FieldElement a, FieldElement b, FieldElement a2,
                          FieldElement b2, std::uint64_t cap) {
  BraidContext ctx = braid_setup(field, cap);
  const TwoComplex& g = *ctx.complex;
  const FieldCtx& f = g.field();
  const int m = 2;
  auto v_edge = [m](int r, int c) { return m * m + ((r % m + m) % m) * m + ((c % m + m) % m); };
  auto h_edge = [m](int r, int c) { return ((r % m + m) % m) * m + ((c % m + m) % m); };

  // Target (a2, b2) at (v(1,1), f(0,1)); moving pair parked on h(0,0).
  auto [pt, pt_bar] = create_dyon_pair(ctx.sys, v_edge(0, 1), a2, b2);
  create_dyon_pair(ctx.sys, h_edge(0, 0), a, b);
  DenseState before = ctx.sys.state;

  const DyonParticle& target = ctx.sys.particles[pt];
  PauliOp loop = multiply(pauli_pow(face_operator(g, target.face), -(static_cast<long long>(a.idx))),
                          pauli_pow(vertex_operator(g, target.vertex), b.idx));
  ctx.sys.state.apply_pauli(loop);
  ctx.sys.applied_ops.push_back(loop);

  int expected = (static_cast<int>(f.mul(a2, b).idx) + static_cast<int>(f.mul(b2, a).idx)) % f.d();
  return finish_braid(ctx, before, {loop}, expected, BraidProcess::Winding);
}

BraidResult braid_spin(FieldCtxPtr field, FieldElement r, FieldElement s, std::uint64_t cap) {
  BraidContext ctx = braid_setup(field, cap);
  const TwoComplex& g = *ctx.complex;
  const FieldCtx& f = g.field();
  auto [p, pbar] = create_dyon_pair(ctx.sys, 4 + 1, r, s);  // vert(0,1)
  DenseState before = ctx.sys.state;

  const DyonParticle& dy = ctx.sys.particles[p];
  PauliOp loop = pauli_pow(face_operator(g, dy.face), -(static_cast<long long>(r.idx)));
  ctx.sys.state.apply_pauli(loop);
  ctx.sys.applied_ops.push_back(loop);

  int expected = static_cast<int>(f.mul(r, s).idx) % f.d();
  return finish_braid(ctx, before, {loop}, expected, BraidProcess::Spin);
}

BraidResult braid_exchange(FieldCtxPtr field, FieldElement a, FieldElement b, std::uint64_t cap) {
  if (field->ell() != 1) throw ValidationError("braiding runs on prime fields");
  auto complex = std::make_shared<TwoComplex>(build_torus_grid(2, 3, field));
  auto code = std::make_shared<StabilizerCode>(complex);
  BraidContext ctx{complex, code, make_dyon_vacuum(code, 1.0, 1.0, cap)};
  const TwoComplex& g = *ctx.complex;
  const FieldCtx& f = g.field();
  const int cols = 3;
  auto h_edge = [cols](int r, int c) { return ((r % 2 + 2) % 2) * cols + ((c % cols + cols) % cols); };
  auto v_edge = [cols](int r, int c) {
    return 2 * cols + ((r % 2 + 2) % 2) * cols + ((c % cols + cols) % cols);
  };

  // Counterclockwise exchange around face f(0,0): P at (v(0,1), f(1,0)) from
  // h(0,0), Q at (v(1,0), f(0,0)) from vert(0,0); the charge arcs are the two
  // halves of the face boundary and the fluxes hop across h(0,0).
  auto [p, pbar] = create_dyon_pair(ctx.sys, h_edge(0, 0), a, b);
  auto [q, qbar] = create_dyon_pair(ctx.sys, v_edge(0, 0), a, b);
  DenseState before = ctx.sys.state;

  std::vector<PauliOp> legs;
  auto charge_leg = [&](int particle, int edge) {
    PauliOp op = charge_leg_op(g, ctx.sys.particles.at(particle), edge);
    ctx.sys.state.apply_pauli(op);
    ctx.sys.applied_ops.push_back(op);
    legs.push_back(op);
  };
  auto flux_leg = [&](int particle, int edge) {
    PauliOp op = flux_leg_op(g, ctx.sys.particles.at(particle), edge);
    ctx.sys.state.apply_pauli(op);
    ctx.sys.applied_ops.push_back(op);
    legs.push_back(op);
  };

  // Q first: v(1,0) -> v(0,0) -> v(0,1), flux f(0,0) -> f(1,0);
  // then P: v(0,1) -> v(1,1) -> v(1,0), flux f(1,0) -> f(0,0).
  charge_leg(q, v_edge(0, 0));
  charge_leg(q, h_edge(0, 0));
  flux_leg(q, h_edge(1, 0));
  charge_leg(p, v_edge(0, 1));
  charge_leg(p, h_edge(1, 0));
  flux_leg(p, h_edge(1, 0));

  int expected = static_cast<int>(f.mul(a, b).idx) % f.d();
  return finish_braid(ctx, before, legs, expected, BraidProcess::Exchange);
}

// ---------------------------------------------------------------------------
// Interferometer
// ---------------------------------------------------------------------------

namespace {

struct SiteTrack {
  int vertex;
  int face;
};

// Displacement operator for a dyon (a, b) sitting at `site`, across `edge`;
// updates the tracked site.
PauliOp tracked_move(const TwoComplex& g, SiteTrack& site, FieldElement a, FieldElement b,
                     int edge) {
  DyonParticle p{a, b, site.vertex, site.face};
  PauliOp op = transport_op(g, p, edge);
  site = {p.vertex, p.face};
  return op;
}

}  // namespace

InterferometerReport run_interferometer(FieldCtxPtr field, std::pair<int, int> probe,
                                        std::pair<int, int> target, double chi, long shots, Rng rng,
                                        std::uint64_t cap,
                                        std::optional<InterferometerGeometry> geometry) {
  if (field->ell() != 1) throw ValidationError("the interferometer runs on prime fields");
  const int d = field->d();
  auto norm_label = [&](int v) { return ((v % d) + d) % d; };
  FieldElement r = field->from_int(probe.first), s = field->from_int(probe.second);
  FieldElement a = field->from_int(target.first), b = field->from_int(target.second);
  if (r.idx == 0 && s.idx == 0) throw ValidationError("probe dyon must be nontrivial");

  auto complex = std::make_shared<TwoComplex>(build_torus_grid(2, 3, field));
  auto code = std::make_shared<StabilizerCode>(complex);
  const TwoComplex& g = *complex;
  const FieldCtx& f = g.field();
  const int cols = 3;
  auto h_edge = [cols](int rr, int cc) { return ((rr % 2 + 2) % 2) * cols + ((cc % cols + cols) % cols); };
  auto v_edge = [cols](int rr, int cc) {
    return 2 * cols + ((rr % 2 + 2) % 2) * cols + ((cc % cols + cols) % cols);
  };

  InterferometerGeometry geo;
  if (geometry) {
    geo = *geometry;
  } else {
    geo.probe_edge = v_edge(0, 1);
    geo.kick_edge = h_edge(1, 1);
    geo.transport_edge = v_edge(1, 2);
    geo.target_edge = v_edge(0, 0);
  }

  InterferometerReport report;
  report.d = d;
  report.probe = {norm_label(probe.first), norm_label(probe.second)};
  report.target = {norm_label(target.first), norm_label(target.second)};
  report.chi = chi;
  report.transcript.seed = rng.seed();

  // Creation operators and tracked sites.
  PauliOp create_target = pauli_xz(g.field_ptr(), g.edge_count(), geo.target_edge, a, f.neg(b));
  PauliOp create_probe = pauli_xz(g.field_ptr(), g.edge_count(), geo.probe_edge, r, f.neg(s));
  auto [target_p, target_bar] = creation_sites(g, geo.target_edge, a, b);
  auto [probe_p, probe_bar] = creation_sites(g, geo.probe_edge, r, s);

  SiteTrack probe_site{probe_p.vertex, probe_p.face};
  PauliOp kick = tracked_move(g, probe_site, r, s, geo.kick_edge);
  SiteTrack site2 = probe_site;
  PauliOp leg = tracked_move(g, probe_site, r, s, geo.transport_edge);
  SiteTrack site5 = probe_site;

  // The braid loop must enclose only the displaced probe.
  auto collides = [&](const DyonParticle& p) {
    return p.vertex == site5.vertex || p.face == site5.face;
  };
  if (collides(target_p) || collides(target_bar) || collides(probe_bar) ||
      probe_p.vertex == site5.vertex || probe_p.face == site5.face ||
      site2.vertex == site5.vertex || site2.face == site5.face)
    throw ValidationError("overlapping regions: the braid loop touches another particle");

  PauliOp loop = multiply(pauli_pow(face_operator(g, site5.face), -(static_cast<long long>(a.idx))),
                          pauli_pow(vertex_operator(g, site5.vertex), b.idx));
  PauliOp undo_leg = dagger(leg);
  PauliOp undo_kick = dagger(kick);

  // Branch-1 operator products (applied left to right on the state).
  // tau ordering: kick, leg, loop, undo_leg; one ordering: kick, loop, leg, undo_leg.
  auto compose = [&](std::initializer_list<const PauliOp*> ops) {
    PauliOp acc = pauli_identity(g.field_ptr(), g.edge_count());
    for (const PauliOp* op : ops) acc = multiply(*op, acc);
    return acc;
  };
  PauliOp creation = multiply(create_probe, create_target);
  PauliOp branch1_tau = compose({&kick, &leg, &loop, &undo_leg});
  PauliOp branch1_one = compose({&kick, &loop, &leg, &undo_leg});
  PauliOp branch0 = loop;
  PauliOp u0 = dagger(kick);

  // Two-path overlaps Q = <phi0| U0 |phi1> via the ground-state phase engine.
  auto overlap_exponent = [&](const PauliOp& b1) {
    PauliOp p = compose({&creation, &b1, &u0});
    p = multiply(dagger(multiply(branch0, creation)), p);
    return symbolic_ground_overlap_exponent(*code, p);
  };
  int t_tau = overlap_exponent(branch1_tau);
  int t_one = overlap_exponent(branch1_one);
  cxd q_tau = f.root_of_unity(t_tau);
  cxd q_one = f.root_of_unity(t_one);

  // Dense backend: evolve both branches explicitly and cross-check.
  std::uint64_t dim = 1;
  bool fits = true;
  for (int e = 0; e < g.edge_count(); ++e) {
    dim *= f.size();
    if (dim > cap) {
      fits = false;
      break;
    }
  }
  if (fits) {
    DenseState gs = DenseState::zero_state(g.field_ptr(), g.edge_count(), cap);
    apply_code_projector(*code, gs);
    gs.normalize();
    DenseState psi1 = gs;
    psi1.apply_pauli(create_target);
    psi1.apply_pauli(create_probe);

    DenseState phi0 = psi1;
    phi0.apply_pauli(branch0);
    auto evolve = [&](const PauliOp& b1) {
      DenseState out = psi1;
      out.apply_pauli(b1);
      return out;
    };
    DenseState phi1_tau = evolve(branch1_tau);
    DenseState phi1_one = evolve(branch1_one);

    DenseState u_phi1_tau = phi1_tau;
    u_phi1_tau.apply_pauli(u0);
    DenseState u_phi1_one = phi1_one;
    u_phi1_one.apply_pauli(u0);
    DenseState u_phi0 = phi0;
    u_phi0.apply_pauli(u0);

    cxd dense_q_tau = inner_product(phi0, u_phi1_tau);
    cxd dense_q_one = inner_product(phi0, u_phi1_one);
    if (std::abs(dense_q_tau - q_tau) > 1e-9 || std::abs(dense_q_one - q_one) > 1e-9)
      throw ValidationError("dense and symbolic interferometer phases disagree");

    // Faithful expectations, averaged over the recorded ancilla outcome: the
    // diagonal terms vanish and the return-path term survives.
    cxd qp_tau = inner_product(phi1_tau, u_phi0);
    cxd qp_one = inner_product(phi1_one, u_phi0);
    cxd chi_phase = std::polar(1.0, chi);
    cxd full_tau = 0.5 * (chi_phase * dense_q_tau + std::conj(chi_phase) * qp_tau);
    cxd full_one = 0.5 * (chi_phase * dense_q_one + std::conj(chi_phase) * qp_one);
    report.dense_backend = true;
    report.full_sigma_x_tau = full_tau.real();
    report.full_sigma_y_tau = full_tau.imag();
    report.full_sigma_x_one = full_one.real();
    report.full_sigma_y_one = full_one.imag();
  }

  cxd chi_phase = std::polar(1.0, chi);
  cxd ideal_tau = 0.5 * chi_phase * q_tau;
  cxd ideal_one = 0.5 * chi_phase * q_one;
  report.sigma_x_tau = ideal_tau.real();
  report.sigma_y_tau = ideal_tau.imag();
  report.sigma_x_one = ideal_one.real();
  report.sigma_y_one = ideal_one.imag();

  int phi_exp = (static_cast<int>(f.mul(s, a).idx) + static_cast<int>(f.mul(r, b).idx)) % d;
  report.phi_top_exact = 2.0 * std::numbers::pi * phi_exp / d;
  cxd ratio = (cxd{report.sigma_x_tau, report.sigma_y_tau}) /
              (cxd{report.sigma_x_one, report.sigma_y_one});
  double ang = std::arg(ratio);
  if (ang < -1e-12) ang += 2.0 * std::numbers::pi;
  report.phi_top_estimate = ang;

  report.transcript.log("geometry", "probe edge " + g.edges()[geo.probe_edge].id + ", kick edge " +
                                        g.edges()[geo.kick_edge].id + ", transport edge " +
                                        g.edges()[geo.transport_edge].id + ", target edge " +
                                        g.edges()[geo.target_edge].id);
  report.transcript.log("phase", "tau exponent " + std::to_string(t_tau) + ", reference exponent " +
                                     std::to_string(t_one));

  if (shots > 0) {
    report.shots = shots;
    std::ostringstream csv;
    csv << "shot,ordering,basis,m,outcome\n";
    struct Stream {
      const char* ordering;
      const char* basis;
      double mean;
      double* out;
    };
    Stream streams[4] = {
        {"tau", "x", report.sigma_x_tau, &report.sampled_sigma_x_tau},
        {"tau", "y", report.sigma_y_tau, &report.sampled_sigma_y_tau},
        {"one", "x", report.sigma_x_one, &report.sampled_sigma_x_one},
        {"one", "y", report.sigma_y_one, &report.sampled_sigma_y_one},
    };
    for (int sidx = 0; sidx < 4; ++sidx) {
      Rng sub = rng.substream(sidx);
      double acc = 0.0;
      for (long shot = 0; shot < shots; ++shot) {
        int mbit = sub.uniform() < 0.5 ? 0 : 1;
        double p_plus = 0.5 * (1.0 + streams[sidx].mean);
        int outcome = sub.uniform() < p_plus ? 1 : -1;
        acc += outcome;
        csv << shot << ',' << streams[sidx].ordering << ',' << streams[sidx].basis << ','
            << (mbit ? 1 : -1) << ',' << outcome << "\n";
      }
      *streams[sidx].out = acc / static_cast<double>(shots);
    }
    report.csv = csv.str();
    report.transcript.log("shots", std::to_string(shots) + " per stream");
  }
  return report;
}

}  // namespace qsc
