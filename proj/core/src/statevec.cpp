#include "qsc/statevec.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>

#include "qsc/homology.hpp"

#ifdef QSC_HAVE_EIGEN
#include <Eigen/Dense>
#endif

namespace qsc {

namespace {

std::uint64_t pow_u64(std::uint64_t base, int exp) {
  std::uint64_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

void check_cap(std::uint64_t dim, std::uint64_t cap) {
  if (dim > cap)
    throw CapacityError("state of " + std::to_string(dim) + " amplitudes exceeds the cap of " +
                            std::to_string(cap),
                        dim);
}

}  // namespace

DenseState::DenseState(FieldCtxPtr ctx, int sites, std::uint64_t cap)
    : ctx_(std::move(ctx)), sites_(sites), q_(ctx_->size()) {
  dim_ = pow_u64(q_, sites_);
  check_cap(dim_, cap);
  stride_.resize(sites_);
  std::uint64_t s = 1;
  for (int e = 0; e < sites_; ++e) {
    stride_[e] = s;
    s *= q_;
  }
  amp_.assign(dim_, cxd{0.0, 0.0});
}

DenseState DenseState::zero_state(FieldCtxPtr ctx, int sites, std::uint64_t cap) {
  DenseState s(std::move(ctx), sites, cap);
  s.amp_[0] = 1.0;
  return s;
}

DenseState DenseState::basis_state(FieldCtxPtr ctx, const std::vector<FieldElement>& digits,
                                   std::uint64_t cap) {
  DenseState s(std::move(ctx), static_cast<int>(digits.size()), cap);
  std::uint64_t idx = 0;
  for (std::size_t e = 0; e < digits.size(); ++e) idx += digits[e].idx * s.stride_[e];
  s.amp_[idx] = 1.0;
  return s;
}

DenseState DenseState::from_chain(const TwoComplex& g, const Chain& c, std::uint64_t cap) {
  if (c.grade != 1) throw ValidationError("basis states come from grade-1 chains");
  return basis_state(g.field_ptr(), c.coeffs, cap);
}

double DenseState::norm() const {
  double s = 0.0;
  for (const cxd& a : amp_) s += std::norm(a);
  return std::sqrt(s);
}

void DenseState::normalize() {
  double n = norm();
  if (n < 1e-12) throw ValidationError("cannot normalize a numerically zero state");
  scale(1.0 / n);
}

void DenseState::scale(cxd s) {
  for (cxd& a : amp_) a *= s;
}

void DenseState::apply_pauli(const PauliOp& p) {
  if (p.n != sites_) throw ValidationError("pauli arity does not match the state");
  const FieldCtx& f = *ctx_;
  const int d = f.d();

  // Per-site lookup tables: shifted X digit and Z phase exponent per digit.
  std::vector<std::vector<std::uint32_t>> shifted(sites_, std::vector<std::uint32_t>(q_));
  std::vector<std::vector<int>> zphase(sites_, std::vector<int>(q_));
  for (int e = 0; e < sites_; ++e)
    for (std::uint32_t dig = 0; dig < q_; ++dig) {
      shifted[e][dig] = f.add(FieldElement{dig}, p.x[e]).idx;
      zphase[e][dig] = f.trace(f.mul(p.z[e], FieldElement{dig}));
    }
  std::vector<cxd> roots(d);
  for (int k = 0; k < d; ++k) roots[k] = f.root_of_unity(k);

  // Odometer walk: the target index and phase are updated incrementally as
  // the source digits roll over, avoiding div/mod per amplitude.
  std::vector<cxd> out(dim_, cxd{0.0, 0.0});
  std::vector<std::uint32_t> dig(sites_, 0);
  std::int64_t j = 0;
  int ph = p.phase;
  for (int e = 0; e < sites_; ++e) {
    j += static_cast<std::int64_t>(shifted[e][0]) * static_cast<std::int64_t>(stride_[e]);
    ph += zphase[e][0];
  }
  for (std::uint64_t i = 0; i < dim_; ++i) {
    if (amp_[i] != cxd{0.0, 0.0}) out[j] += roots[((ph % d) + d) % d] * amp_[i];
    int e = 0;
    while (e < sites_) {
      std::uint32_t v = dig[e];
      if (v + 1 < q_) {
        dig[e] = v + 1;
        j += (static_cast<std::int64_t>(shifted[e][v + 1]) - shifted[e][v]) *
             static_cast<std::int64_t>(stride_[e]);
        ph += zphase[e][v + 1] - zphase[e][v];
        break;
      }
      dig[e] = 0;
      j += (static_cast<std::int64_t>(shifted[e][0]) - shifted[e][v]) *
           static_cast<std::int64_t>(stride_[e]);
      ph += zphase[e][0] - zphase[e][v];
      ++e;
    }
  }
  amp_.swap(out);
}

void DenseState::apply_fourier(int site, bool inverse) {
  const FieldCtx& f = *ctx_;
  const double scale = 1.0 / std::sqrt(static_cast<double>(q_));
  std::vector<cxd> kernel(q_ * q_);
  for (std::uint32_t a = 0; a < q_; ++a)
    for (std::uint32_t b = 0; b < q_; ++b) {
      int t = f.trace(f.mul(FieldElement{a}, FieldElement{b}));
      cxd w = f.root_of_unity(t);
      kernel[b * q_ + a] = scale * (inverse ? std::conj(w) : w);
    }
  apply_single_site(site, kernel);
}

void DenseState::apply_single_site(int site, const std::vector<cxd>& matrix) {
  const std::uint64_t st = stride_[site];
  std::vector<cxd> slice(q_);
  for (std::uint64_t base = 0; base < dim_; ++base) {
    if (digit(base, site) != 0) continue;
    for (std::uint32_t k = 0; k < q_; ++k) slice[k] = amp_[base + k * st];
    for (std::uint32_t b = 0; b < q_; ++b) {
      cxd acc = 0.0;
      for (std::uint32_t a = 0; a < q_; ++a) acc += matrix[b * q_ + a] * slice[a];
      amp_[base + b * st] = acc;
    }
  }
}

void DenseState::apply_sum_gate(int control, int target, int sign) {
  apply_weighted_sum(target, {{control, ctx_->from_int(sign)}});
}

void DenseState::apply_weighted_sum(int target,
                                    const std::vector<std::pair<int, FieldElement>>& sources) {
  const FieldCtx& f = *ctx_;
  std::vector<cxd> out(dim_, cxd{0.0, 0.0});
  for (std::uint64_t i = 0; i < dim_; ++i) {
    if (amp_[i] == cxd{0.0, 0.0}) continue;
    FieldElement acc{digit(i, target)};
    for (auto& [site, w] : sources) acc = f.add(acc, f.mul(w, FieldElement{digit(i, site)}));
    out[index_with_digit(i, target, acc.idx)] += amp_[i];
  }
  amp_.swap(out);
}

void DenseState::apply_controlled_chain_power(int control, const std::vector<FieldElement>& pattern,
                                              int sign) {
  const FieldCtx& f = *ctx_;
  if (static_cast<int>(pattern.size()) != sites_)
    throw ValidationError("chain pattern must cover every site");
  std::vector<cxd> out(dim_, cxd{0.0, 0.0});
  for (std::uint64_t i = 0; i < dim_; ++i) {
    if (amp_[i] == cxd{0.0, 0.0}) continue;
    FieldElement c{digit(i, control)};
    if (sign < 0) c = f.neg(c);
    std::uint64_t j = 0;
    std::uint64_t rest = i;
    for (int e = 0; e < sites_; ++e) {
      std::uint32_t dig = static_cast<std::uint32_t>(rest % q_);
      rest /= q_;
      std::uint32_t nd = (e == control) ? dig : f.add(FieldElement{dig}, f.mul(c, pattern[e])).idx;
      j += nd * stride_[e];
    }
    out[j] += amp_[i];
  }
  amp_.swap(out);
}

void DenseState::apply_galois() {
  const FieldCtx& f = *ctx_;
  std::vector<std::uint32_t> perm(q_);
  for (std::uint32_t a = 0; a < q_; ++a) perm[a] = f.frobenius(FieldElement{a}).idx;
  std::vector<cxd> out(dim_, cxd{0.0, 0.0});
  for (std::uint64_t i = 0; i < dim_; ++i) {
    if (amp_[i] == cxd{0.0, 0.0}) continue;
    std::uint64_t j = 0;
    std::uint64_t rest = i;
    for (int e = 0; e < sites_; ++e) {
      std::uint32_t dig = static_cast<std::uint32_t>(rest % q_);
      rest /= q_;
      j += perm[dig] * stride_[e];
    }
    out[j] += amp_[i];
  }
  amp_.swap(out);
}

cxd inner_product(const DenseState& a, const DenseState& b) {
  if (a.dim_ != b.dim_) throw ValidationError("state dimensions differ");
  cxd s = 0.0;
  for (std::uint64_t i = 0; i < a.dim_; ++i) s += std::conj(a.amp_[i]) * b.amp_[i];
  return s;
}

double fidelity(const DenseState& a, const DenseState& b) {
  return std::norm(inner_product(a, b));
}

cxd pauli_expectation(const DenseState& s, const PauliOp& p) {
  DenseState t = s;
  t.apply_pauli(p);
  return inner_product(s, t);
}

MeasurementResult measure_generator(DenseState& s, const PauliOp& g, Rng& rng) {
  const FieldCtx& f = s.field();
  const int d = f.d();
  if (!pauli_pow(g, d).is_identity())
    throw ValidationError("measured generator must satisfy g^d = I with zero phase");

  // Powers g^k |s>, then the eigenprojections P_j = (1/d) sum_k xi^(-jk) g^k.
  std::vector<DenseState> powers;
  powers.reserve(d);
  powers.push_back(s);
  for (int k = 1; k < d; ++k) {
    DenseState next = powers.back();
    next.apply_pauli(g);
    powers.push_back(std::move(next));
  }

  std::vector<DenseState> branches;
  std::vector<double> probs(d, 0.0);
  for (int j = 0; j < d; ++j) {
    DenseState proj(s.field_ptr(), s.sites(), s.dim());
    for (int k = 0; k < d; ++k) {
      cxd w = f.root_of_unity(((-j * k) % d + d) % d);
      const auto& src = powers[k].data();
      auto& dst = proj.data();
      for (std::uint64_t i = 0; i < s.dim(); ++i) dst[i] += w * src[i];
    }
    proj.scale(1.0 / d);
    double n = proj.norm();
    probs[j] = n * n;
    branches.push_back(std::move(proj));
  }

  MeasurementResult result;
  result.probabilities = probs;
  result.outcome = rng.categorical(probs);
  if (probs[result.outcome] < 1e-12)
    throw ValidationError("measurement selected a numerically zero branch");
  branches[result.outcome].normalize();
  s = std::move(branches[result.outcome]);
  return result;
}

// ---------------------------------------------------------------------------
// Hamiltonian
// ---------------------------------------------------------------------------

HamiltonianSpec build_hamiltonian(const StabilizerCode& code, double U, double h,
                                  std::uint64_t cap) {
  const TwoComplex& g = code.complex();
  check_cap(pow_u64(g.field().size(), g.edge_count()), cap);
  HamiltonianSpec spec;
  spec.U = U;
  spec.h = h;
  for (const auto& gv : code.vertex_gens()) spec.terms.push_back({U, gv});
  for (const auto& gf : code.face_gens()) spec.terms.push_back({h, gf});
  for (std::size_t i = 0; i < spec.terms.size(); ++i)
    for (std::size_t j = i + 1; j < spec.terms.size(); ++j)
      if (commutation_phase(spec.terms[i].op, spec.terms[j].op) != 0)
        throw ValidationError("hamiltonian terms do not commute");
  spec.ground_energy =
      -2.0 * (U * g.vertex_count() + h * static_cast<double>(g.active_faces().size()));
  return spec;
}

DenseState apply_hamiltonian(const HamiltonianSpec& spec, const DenseState& x) {
  DenseState y(x.field_ptr(), x.sites(), x.dim());
  for (const auto& term : spec.terms) {
    DenseState t = x;
    t.apply_pauli(term.op);
    DenseState t2 = x;
    t2.apply_pauli(dagger(term.op));
    for (std::uint64_t i = 0; i < x.dim(); ++i)
      y.data()[i] += -term.coeff * (t.data()[i] + t2.data()[i]);
  }
  return y;
}

double energy_expectation(const HamiltonianSpec& spec, const DenseState& x) {
  return inner_product(x, apply_hamiltonian(spec, x)).real();
}

std::vector<std::vector<cxd>> hamiltonian_matrix(const HamiltonianSpec& spec, FieldCtxPtr ctx,
                                                 int sites, std::uint64_t max_dim) {
  std::uint64_t dim = pow_u64(ctx->size(), sites);
  check_cap(dim, max_dim);
  std::vector<std::vector<cxd>> m(dim, std::vector<cxd>(dim, cxd{0.0, 0.0}));
  for (std::uint64_t col = 0; col < dim; ++col) {
    DenseState b(ctx, sites, max_dim);
    b.amp(col) = 1.0;
    DenseState hb = apply_hamiltonian(spec, b);
    for (std::uint64_t row = 0; row < dim; ++row) m[row][col] = hb.amp(row);
  }
  return m;
}

// ---------------------------------------------------------------------------
// Projectors
// ---------------------------------------------------------------------------

namespace {

// (1/q) sum_{c in F_q} g(c), the projector onto the +1 space of the abelian
// family attached to one phase-free generator.
void apply_family_average(const FieldCtx& f, const PauliOp& gen, DenseState& s) {
  DenseState acc(s.field_ptr(), s.sites(), s.dim());
  for (std::uint32_t c = 0; c < f.size(); ++c) {
    DenseState t = s;
    t.apply_pauli(op_scaled(gen, FieldElement{c}));
    for (std::uint64_t i = 0; i < s.dim(); ++i) acc.data()[i] += t.data()[i];
  }
  acc.scale(1.0 / static_cast<double>(f.size()));
  s = std::move(acc);
}

void apply_projector_for(const std::vector<PauliOp>& gens, FieldCtxPtr ctx, int n, DenseState& s) {
  if (gens.empty()) return;
  SymplecticRankResult r = symplectic_rank(gens, ctx, n);
  for (std::size_t idx : r.independent) apply_family_average(*ctx, gens[idx], s);
}

}  // namespace

void apply_code_projector(const StabilizerCode& code, DenseState& s) {
  const FieldCtx& f = code.complex().field();
  for (std::size_t idx : code.independent_generators())
    apply_family_average(f, code.generators()[idx], s);
}

void apply_face_group_projector(const StabilizerCode& code, DenseState& s) {
  std::vector<PauliOp> gens;
  for (const auto& g : code.face_gens())
    if (!g.is_identity()) gens.push_back(g);
  apply_projector_for(gens, code.field_ptr(), code.n(), s);
}

void apply_vertex_group_projector(const StabilizerCode& code, DenseState& s) {
  std::vector<PauliOp> gens;
  for (const auto& g : code.vertex_gens())
    if (!g.is_identity()) gens.push_back(g);
  apply_projector_for(gens, code.field_ptr(), code.n(), s);
}

std::vector<std::vector<cxd>> code_projector_matrix(const StabilizerCode& code,
                                                    std::uint64_t max_dim) {
  std::uint64_t dim = pow_u64(code.complex().field().size(), code.n());
  check_cap(dim, max_dim);
  std::vector<std::vector<cxd>> m(dim, std::vector<cxd>(dim));
  for (std::uint64_t col = 0; col < dim; ++col) {
    DenseState b(code.field_ptr(), code.n(), max_dim);
    b.amp(col) = 1.0;
    apply_code_projector(code, b);
    for (std::uint64_t row = 0; row < dim; ++row) m[row][col] = b.amp(row);
  }
  return m;
}

cxd code_projector_trace(const StabilizerCode& code, std::uint64_t max_dim) {
  std::uint64_t dim = pow_u64(code.complex().field().size(), code.n());
  check_cap(dim, max_dim);
  cxd tr = 0.0;
  for (std::uint64_t i = 0; i < dim; ++i) {
    DenseState b(code.field_ptr(), code.n(), max_dim);
    b.amp(i) = 1.0;
    apply_code_projector(code, b);
    tr += b.amp(i);
  }
  return tr;
}

// ---------------------------------------------------------------------------
// Ground space analysis
// ---------------------------------------------------------------------------

namespace {

// Modified Gram-Schmidt rank with an absolute residual threshold; inputs are
// normalized, so the threshold separates genuine directions from rounding.
int gram_rank(std::vector<DenseState>& vecs, double tol) {
  std::vector<DenseState*> basis;
  int rank = 0;
  for (auto& v : vecs) {
    for (auto* b : basis) {
      cxd c = inner_product(*b, v);
      for (std::uint64_t i = 0; i < v.dim(); ++i) v.data()[i] -= c * b->data()[i];
    }
    if (v.norm() > tol) {
      v.normalize();
      basis.push_back(&v);
      ++rank;
    }
  }
  return rank;
}

}  // namespace

GroundSpaceReport analyze_ground_space(const StabilizerCode& code, const GroundSpaceOptions& opts) {
  GroundSpaceReport report;
  const TwoComplex& g = code.complex();
  HamiltonianSpec spec = build_hamiltonian(code, opts.U, opts.h, opts.cap);
  report.ground_energy = spec.ground_energy;
  report.expected_dimension = code.code_dim();

  // Seeded random probes projected into the code space.
  int probes = static_cast<int>(report.expected_dimension) + opts.probe_pad;
  Rng rng(opts.seed);
  std::vector<DenseState> projected;
  for (int p = 0; p < probes; ++p) {
    Rng sub = rng.substream(p);
    DenseState v(g.field_ptr(), g.edge_count(), opts.cap);
    for (std::uint64_t i = 0; i < v.dim(); ++i)
      v.amp(i) = cxd{sub.uniform() - 0.5, sub.uniform() - 0.5};
    v.normalize();
    apply_code_projector(code, v);
    if (v.norm() < 1e-9) continue;
    v.normalize();

    DenseState hv = apply_hamiltonian(spec, v);
    double resid = 0.0;
    for (std::uint64_t i = 0; i < v.dim(); ++i)
      resid += std::norm(hv.amp(i) - spec.ground_energy * v.amp(i));
    report.max_eigen_residual = std::max(report.max_eigen_residual, std::sqrt(resid));
    projected.push_back(std::move(v));
  }
  report.dense_dimension = gram_rank(projected, 1e-6);

#ifdef QSC_HAVE_EIGEN
  std::uint64_t dim = pow_u64(g.field().size(), g.edge_count());
  if (dim <= opts.eigensolve_cap) {
    auto m = hamiltonian_matrix(spec, g.field_ptr(), g.edge_count(), opts.eigensolve_cap);
    Eigen::MatrixXcd hm(dim, dim);
    for (std::uint64_t r = 0; r < dim; ++r)
      for (std::uint64_t c = 0; c < dim; ++c) hm(r, c) = m[r][c];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hm, Eigen::EigenvaluesOnly);
    int count = 0;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i)
      if (std::abs(solver.eigenvalues()[i] - spec.ground_energy) <= opts.tol) ++count;
    report.eigensolve_dimension = count;
  }
#endif
  return report;
}

// ---------------------------------------------------------------------------
// Ancilla checks
// ---------------------------------------------------------------------------

namespace {

std::vector<std::vector<cxd>> operator_matrix(FieldCtxPtr ctx, int sites, std::uint64_t max_dim,
                                              const std::function<void(DenseState&)>& apply) {
  std::uint64_t dim = pow_u64(ctx->size(), sites);
  check_cap(dim, max_dim);
  std::vector<std::vector<cxd>> m(dim, std::vector<cxd>(dim));
  for (std::uint64_t col = 0; col < dim; ++col) {
    DenseState b(ctx, sites, max_dim);
    b.amp(col) = 1.0;
    apply(b);
    for (std::uint64_t row = 0; row < dim; ++row) m[row][col] = b.amp(row);
  }
  return m;
}

void multiply_number_diagonal(DenseState& s, int site) {
  for (std::uint64_t i = 0; i < s.dim(); ++i) s.amp(i) *= static_cast<double>(s.digit(i, site));
}

}  // namespace

std::vector<std::vector<cxd>> ancilla_vertex_check_matrix(const TwoComplex& g, int v,
                                                          std::uint64_t max_dim) {
  const int n = g.edge_count();
  const int anc = n;
  std::vector<std::pair<int, FieldElement>> weights;
  for (int e = 0; e < n; ++e) {
    const EdgeRec& er = g.edges()[e];
    int w = (er.to == v ? 1 : 0) - (er.from == v ? 1 : 0);
    if (w != 0) weights.push_back({e, g.field().from_int(w)});
  }
  std::vector<std::pair<int, FieldElement>> inverse = weights;
  for (auto& [e, w] : inverse) w = g.field().neg(w);

  return operator_matrix(g.field_ptr(), n + 1, max_dim, [&](DenseState& s) {
    s.apply_weighted_sum(anc, inverse);  // W^dagger
    multiply_number_diagonal(s, anc);    // n_v
    s.apply_weighted_sum(anc, weights);  // W
  });
}

std::vector<std::vector<cxd>> ancilla_face_check_matrix(const TwoComplex& g, int fi,
                                                        std::uint64_t max_dim) {
  const int n = g.edge_count();
  const int anc = n;
  std::vector<std::pair<int, FieldElement>> weights;
  std::set<int> face_edges;
  for (auto& [e, sgn] : g.faces()[fi].boundary) {
    weights.push_back({e, g.field().from_int(sgn)});
    face_edges.insert(e);
  }
  std::vector<std::pair<int, FieldElement>> inverse = weights;
  for (auto& [e, w] : inverse) w = g.field().neg(w);

  return operator_matrix(g.field_ptr(), n + 1, max_dim, [&](DenseState& s) {
    for (int e : face_edges) s.apply_fourier(e, true);   // F^dagger
    s.apply_weighted_sum(anc, inverse);                  // U^dagger
    for (int e : face_edges) s.apply_fourier(e, false);  // F
    multiply_number_diagonal(s, anc);                    // n_f
    for (int e : face_edges) s.apply_fourier(e, true);
    s.apply_weighted_sum(anc, weights);
    for (int e : face_edges) s.apply_fourier(e, false);
  });
}

// ---------------------------------------------------------------------------
// Galois symmetry
// ---------------------------------------------------------------------------

GaloisReport galois_symmetry_report(const StabilizerCode& code, double U, double h,
                                    std::uint64_t max_dim) {
  const TwoComplex& g = code.complex();
  const FieldCtx& f = g.field();
  if (f.ell() < 2) throw ValidationError("galois symmetry needs an extension field (ell >= 2)");
  const int n = g.edge_count();
  std::uint64_t dim = pow_u64(f.size(), n);
  check_cap(dim, max_dim);

  GaloisReport report;
  HamiltonianSpec spec = build_hamiltonian(code, U, h, max_dim);

  // Commutator of the lattice Frobenius permutation with H, max-norm.
  for (std::uint64_t col = 0; col < dim; ++col) {
    DenseState b(g.field_ptr(), n, max_dim);
    b.amp(col) = 1.0;
    DenseState uh = apply_hamiltonian(spec, b);
    uh.apply_galois();
    DenseState hu = b;
    hu.apply_galois();
    hu = apply_hamiltonian(spec, hu);
    for (std::uint64_t row = 0; row < dim; ++row)
      report.commutator_max = std::max(report.commutator_max, std::abs(uh.amp(row) - hu.amp(row)));
  }

  // pi_kappa = (1/ell) sum_j U^j.
  auto apply_pi_kappa = [&](DenseState& s) {
    DenseState acc(s.field_ptr(), s.sites(), s.dim());
    DenseState cur = s;
    for (int j = 0; j < f.ell(); ++j) {
      for (std::uint64_t i = 0; i < s.dim(); ++i) acc.data()[i] += cur.data()[i];
      cur.apply_galois();
    }
    acc.scale(1.0 / f.ell());
    s = std::move(acc);
  };
  for (std::uint64_t col = 0; col < dim; ++col) {
    DenseState b(g.field_ptr(), n, max_dim);
    b.amp(col) = 1.0;
    DenseState once = b;
    apply_pi_kappa(once);
    DenseState twice = once;
    apply_pi_kappa(twice);
    for (std::uint64_t row = 0; row < dim; ++row)
      report.idempotency_error =
          std::max(report.idempotency_error, std::abs(twice.amp(row) - once.amp(row)));
  }

  // Homology class representatives, enumerated from cycle digit strings with
  // basis coordinates as labels.
  std::map<std::vector<std::uint32_t>, Chain> class_reps;
  for (std::uint64_t i = 0; i < dim; ++i) {
    Chain c = g.zero_chain(1);
    std::uint64_t rest = i;
    for (int e = 0; e < n; ++e) {
      c.coeffs[e] = FieldElement{static_cast<std::uint32_t>(rest % f.size())};
      rest /= f.size();
    }
    if (!is_cycle(g, c)) continue;
    ClassCoordinates cc = class_coordinates(g, c);
    if (!cc.ok) continue;
    std::vector<std::uint32_t> label;
    for (auto x : cc.coords) label.push_back(x.idx);
    class_reps.emplace(label, c);
  }

  std::vector<DenseState> ground_basis;
  for (auto& [label, rep] : class_reps) {
    DenseState v = DenseState::from_chain(g, rep, max_dim);
    apply_code_projector(code, v);
    if (v.norm() < 1e-9) continue;
    v.normalize();
    ground_basis.push_back(std::move(v));
  }

  // Image rank of pi_kappa on the ground space vs the orbit-count oracle.
  std::vector<DenseState> image;
  for (const auto& v : ground_basis) {
    DenseState w = v;
    apply_pi_kappa(w);
    image.push_back(std::move(w));
  }
  report.ground_image_rank = gram_rank(image, 1e-8);

  std::map<std::vector<std::uint32_t>, std::vector<std::uint32_t>> frob_action;
  for (auto& [label, rep] : class_reps) {
    Chain fr = rep;
    for (auto& coeff : fr.coeffs) coeff = f.frobenius(coeff);
    ClassCoordinates cc = class_coordinates(g, fr);
    if (!cc.ok) throw ValidationError("frobenius image of a cycle is not a cycle");
    std::vector<std::uint32_t> to;
    for (auto x : cc.coords) to.push_back(x.idx);
    frob_action.emplace(label, to);
  }
  std::set<std::vector<std::uint32_t>> visited;
  int orbits = 0;
  for (auto& [label, to] : frob_action) {
    if (visited.count(label)) continue;
    ++orbits;
    std::vector<std::uint32_t> cur = label;
    while (!visited.count(cur)) {
      visited.insert(cur);
      cur = frob_action.at(cur);
    }
  }
  report.frobenius_orbit_count = orbits;

  // pi_kappa must act as the identity on prime-subfield class states.
  report.prime_subfield_fixed = true;
  for (auto& [label, rep] : class_reps) {
    bool prime = true;
    for (auto c : rep.coeffs)
      if (c.idx >= static_cast<std::uint32_t>(f.d())) prime = false;
    if (!prime) continue;
    DenseState v = DenseState::from_chain(g, rep, max_dim);
    apply_code_projector(code, v);
    if (v.norm() < 1e-9) continue;
    v.normalize();
    DenseState w = v;
    apply_pi_kappa(w);
    for (std::uint64_t i = 0; i < dim; ++i)
      if (std::abs(w.amp(i) - v.amp(i)) > 1e-8) report.prime_subfield_fixed = false;
  }
  return report;
}

}  // namespace qsc
