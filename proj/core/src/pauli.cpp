#include "qsc/pauli.hpp"

#include <algorithm>
#include <sstream>

namespace qsc {

namespace {

void require_compatible(const PauliOp& p, const PauliOp& q) {
  if (p.n != q.n)
    throw ValidationError("pauli arity mismatch: " + std::to_string(p.n) + " vs " +
                          std::to_string(q.n));
  if (!p.ctx->same_field(*q.ctx)) throw ValidationError("pauli field context mismatch");
}

// sum_e trace(a_e * b_e), the trace-form dot product.
int trace_dot(const FieldCtx& f, const std::vector<FieldElement>& a,
              const std::vector<FieldElement>& b) {
  int t = 0;
  for (std::size_t e = 0; e < a.size(); ++e) t = (t + f.trace(f.mul(a[e], b[e]))) % f.d();
  return t;
}

}  // namespace

bool PauliOp::is_identity() const { return phase == 0 && is_phase_times_identity(); }

bool PauliOp::is_phase_times_identity() const {
  for (int e = 0; e < n; ++e)
    if (x[e].idx != 0 || z[e].idx != 0) return false;
  return true;
}

PauliOp pauli_identity(FieldCtxPtr ctx, int n) {
  PauliOp p;
  p.ctx = std::move(ctx);
  p.n = n;
  p.x.assign(n, FieldElement{0});
  p.z.assign(n, FieldElement{0});
  return p;
}

PauliOp pauli_x(FieldCtxPtr ctx, int n, int site, FieldElement a) {
  PauliOp p = pauli_identity(std::move(ctx), n);
  p.x[site] = a;
  return p;
}

PauliOp pauli_z(FieldCtxPtr ctx, int n, int site, FieldElement b) {
  PauliOp p = pauli_identity(std::move(ctx), n);
  p.z[site] = b;
  return p;
}

PauliOp pauli_xz(FieldCtxPtr ctx, int n, int site, FieldElement a, FieldElement b) {
  PauliOp p = pauli_identity(std::move(ctx), n);
  p.x[site] = a;
  p.z[site] = b;
  return p;
}

PauliOp multiply(const PauliOp& p, const PauliOp& q) {
  require_compatible(p, q);
  const FieldCtx& f = *p.ctx;
  PauliOp r;
  r.ctx = p.ctx;
  r.n = p.n;
  r.phase = (p.phase + q.phase + trace_dot(f, q.x, p.z)) % f.d();
  r.x.resize(p.n);
  r.z.resize(p.n);
  for (int e = 0; e < p.n; ++e) {
    r.x[e] = f.add(p.x[e], q.x[e]);
    r.z[e] = f.add(p.z[e], q.z[e]);
  }
  return r;
}

PauliOp dagger(const PauliOp& p) {
  const FieldCtx& f = *p.ctx;
  PauliOp r;
  r.ctx = p.ctx;
  r.n = p.n;
  r.phase = ((-p.phase + trace_dot(f, p.x, p.z)) % f.d() + f.d()) % f.d();
  r.x.resize(p.n);
  r.z.resize(p.n);
  for (int e = 0; e < p.n; ++e) {
    r.x[e] = f.neg(p.x[e]);
    r.z[e] = f.neg(p.z[e]);
  }
  return r;
}

PauliOp pauli_pow(const PauliOp& p, long long k) {
  if (k < 0) return pauli_pow(dagger(p), -k);
  const FieldCtx& f = *p.ctx;
  PauliOp r;
  r.ctx = p.ctx;
  r.n = p.n;
  // p^k = xi^(k c + C(k,2) x.z) X^(k x) Z^(k z), from repeated reordering.
  long long c2 = (k % (2ll * f.d())) * ((k - 1) % (2ll * f.d())) / 2;
  long long ph = (k % f.d()) * p.phase + (c2 % f.d()) * trace_dot(f, p.x, p.z);
  r.phase = static_cast<int>(((ph % f.d()) + f.d()) % f.d());
  r.x.resize(p.n);
  r.z.resize(p.n);
  for (int e = 0; e < p.n; ++e) {
    r.x[e] = f.scalar_mul(k, p.x[e]);
    r.z[e] = f.scalar_mul(k, p.z[e]);
  }
  return r;
}

int commutation_phase(const PauliOp& p, const PauliOp& q) {
  require_compatible(p, q);
  const FieldCtx& f = *p.ctx;
  int t = trace_dot(f, q.x, p.z) - trace_dot(f, p.x, q.z);
  return ((t % f.d()) + f.d()) % f.d();
}

std::string to_string(const PauliOp& p) {
  std::ostringstream os;
  bool first = true;
  if (p.phase != 0) {
    os << "w^" << p.phase;
    first = false;
  }
  for (int e = 0; e < p.n; ++e) {
    if (p.x[e].idx != 0) {
      if (!first) os << ' ';
      os << 'X' << e << '(' << p.x[e].idx << ')';
      first = false;
    }
    if (p.z[e].idx != 0) {
      if (!first) os << ' ';
      os << 'Z' << e << '(' << p.z[e].idx << ')';
      first = false;
    }
  }
  if (first) os << 'I';
  return os.str();
}

SymplecticRankResult symplectic_rank(const std::vector<PauliOp>& gens,
                                     FieldCtxPtr ctx_if_empty, int n_if_empty) {
  SymplecticRankResult out;
  if (gens.empty()) {
    if (!ctx_if_empty) throw ValidationError("empty generator list needs an explicit field and arity");
    out.group_order = 1;
    out.code_dim = 1;
    for (int i = 0; i < n_if_empty; ++i) out.code_dim *= ctx_if_empty->size();
    return out;
  }
  const FieldCtx& f = *gens[0].ctx;
  const int n = gens[0].n;

  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (gens[i].is_phase_times_identity() && gens[i].phase != 0)
      throw ValidationError("generator " + std::to_string(i) + " is a nontrivial phase times identity");
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      if (commutation_phase(gens[i], gens[j]) != 0)
        throw ValidationError("generators " + std::to_string(i) + " and " + std::to_string(j) +
                              " do not commute");
    }
  }

  // Row echelon over F_{d^ell} on rows (x | z).
  std::vector<std::vector<FieldElement>> pivots;  // reduced independent rows
  std::vector<int> pivot_cols;
  const int cols = 2 * n;
  for (std::size_t g = 0; g < gens.size(); ++g) {
    std::vector<FieldElement> row(cols);
    for (int e = 0; e < n; ++e) {
      row[e] = gens[g].x[e];
      row[n + e] = gens[g].z[e];
    }
    for (std::size_t p = 0; p < pivots.size(); ++p) {
      FieldElement c = row[pivot_cols[p]];
      if (c.idx == 0) continue;
      for (int j = 0; j < cols; ++j) row[j] = f.sub(row[j], f.mul(c, pivots[p][j]));
    }
    int lead = -1;
    for (int j = 0; j < cols; ++j)
      if (row[j].idx != 0) {
        lead = j;
        break;
      }
    if (lead < 0) continue;
    FieldElement inv_lead = f.inv(row[lead]);
    for (int j = 0; j < cols; ++j) row[j] = f.mul(inv_lead, row[j]);
    pivots.push_back(std::move(row));
    pivot_cols.push_back(lead);
    out.independent.push_back(g);
  }
  out.rank = static_cast<int>(pivots.size());

  // Phase consistency: every integer-combination dependency among the
  // generators must multiply out to I exactly.  Dependencies are the F_d
  // nullspace of the generator matrix flattened to prime-field coordinates.
  const int d = f.d();
  const int fcols = cols * f.ell();
  std::vector<std::vector<int>> m(gens.size(), std::vector<int>(fcols, 0));
  for (std::size_t g = 0; g < gens.size(); ++g)
    for (int e = 0; e < n; ++e) {
      std::vector<int> cx = f.coeffs(gens[g].x[e]);
      std::vector<int> cz = f.coeffs(gens[g].z[e]);
      for (int k = 0; k < f.ell(); ++k) {
        m[g][e * f.ell() + k] = cx[k];
        m[g][(n + e) * f.ell() + k] = cz[k];
      }
    }
  // Nullspace of the row span: eliminate columns, tracking row combinations.
  std::size_t rows = gens.size();
  std::vector<std::vector<int>> comb(rows, std::vector<int>(rows, 0));
  for (std::size_t i = 0; i < rows; ++i) comb[i][i] = 1;
  std::size_t rr = 0;
  for (int c = 0; c < fcols && rr < rows; ++c) {
    std::size_t piv = rr;
    while (piv < rows && m[piv][c] % d == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[rr]);
    std::swap(comb[piv], comb[rr]);
    int ip = 0;
    for (int t = 1; t < d; ++t)
      if ((t * m[rr][c]) % d == 1) ip = t;
    for (int j = 0; j < fcols; ++j) m[rr][j] = (m[rr][j] * ip) % d;
    for (std::size_t j = 0; j < rows; ++j) comb[rr][j] = (comb[rr][j] * ip) % d;
    for (std::size_t r2 = 0; r2 < rows; ++r2) {
      if (r2 == rr || m[r2][c] == 0) continue;
      int fac = m[r2][c];
      for (int j = 0; j < fcols; ++j) m[r2][j] = ((m[r2][j] - fac * m[rr][j]) % d + d * d) % d;
      for (std::size_t j = 0; j < rows; ++j)
        comb[r2][j] = ((comb[r2][j] - fac * comb[rr][j]) % d + d * d) % d;
    }
    ++rr;
  }
  for (std::size_t r2 = rr; r2 < rows; ++r2) {
    PauliOp prod = pauli_identity(gens[0].ctx, n);
    for (std::size_t g = 0; g < rows; ++g)
      if (comb[r2][g] != 0) prod = multiply(prod, pauli_pow(gens[g], comb[r2][g]));
    if (!prod.is_phase_times_identity())
      throw ValidationError("internal: dependency combination is not an identity");
    if (prod.phase != 0) throw ValidationError("inconsistent stabilizer");
  }

  out.group_order = 1;
  out.code_dim = 1;
  for (int i = 0; i < out.rank; ++i) out.group_order *= f.size();
  for (int i = 0; i < n - out.rank; ++i) out.code_dim *= f.size();
  return out;
}

}  // namespace qsc
