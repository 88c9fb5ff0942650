#include "qsc/homology.hpp"

#include <algorithm>

namespace qsc {
namespace linalg {

int row_echelon(const FieldCtx& f, Matrix& m) {
  if (m.empty()) return 0;
  const std::size_t cols = m[0].size();
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < m.size(); ++col) {
    std::size_t piv = rank;
    while (piv < m.size() && m[piv][col].idx == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[rank], m[piv]);
    FieldElement inv_p = f.inv(m[rank][col]);
    for (std::size_t j = 0; j < cols; ++j) m[rank][j] = f.mul(inv_p, m[rank][j]);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == rank || m[r][col].idx == 0) continue;
      FieldElement fac = m[r][col];
      for (std::size_t j = 0; j < cols; ++j)
        m[r][j] = f.sub(m[r][j], f.mul(fac, m[rank][j]));
    }
    ++rank;
  }
  return static_cast<int>(rank);
}

Matrix nullspace(const FieldCtx& f, const Matrix& m) {
  if (m.empty()) return {};
  Matrix red = m;
  int rank = row_echelon(f, red);
  const std::size_t cols = m[0].size();

  std::vector<int> pivot_col_of_row(rank, -1);
  std::vector<char> is_pivot(cols, 0);
  for (int r = 0; r < rank; ++r) {
    for (std::size_t c = 0; c < cols; ++c)
      if (red[r][c].idx != 0) {
        pivot_col_of_row[r] = static_cast<int>(c);
        is_pivot[c] = 1;
        break;
      }
  }
  Matrix basis;
  for (std::size_t free_col = 0; free_col < cols; ++free_col) {
    if (is_pivot[free_col]) continue;
    std::vector<FieldElement> v(cols, FieldElement{0});
    v[free_col] = f.one();
    for (int r = 0; r < rank; ++r)
      v[pivot_col_of_row[r]] = f.neg(red[r][free_col]);
    basis.push_back(std::move(v));
  }
  return basis;
}

bool in_column_span(const FieldCtx& f, const Matrix& columns, const std::vector<FieldElement>& b) {
  // Transpose to rows, echelon rank with and without b appended.
  Matrix rows;
  for (const auto& col : columns) rows.push_back(col);
  Matrix with = rows;
  with.push_back(b);
  Matrix base = rows;
  return row_echelon(f, base) == row_echelon(f, with);
}

}  // namespace linalg

namespace {

linalg::Matrix boundary1_matrix(const TwoComplex& g) {
  // Rows = vertices, cols = edges; column e is d(e), so the nullspace is the
  // cycle space.
  linalg::Matrix m(g.vertex_count(), std::vector<FieldElement>(g.edge_count(), FieldElement{0}));
  const FieldCtx& f = g.field();
  for (int e = 0; e < g.edge_count(); ++e) {
    const EdgeRec& er = g.edges()[e];
    m[er.from][e] = f.add(m[er.from][e], f.one());
    m[er.to][e] = f.sub(m[er.to][e], f.one());
  }
  return m;
}

linalg::Matrix boundary2_columns(const TwoComplex& g) {
  // One column per active face: its boundary edge chain.
  linalg::Matrix cols;
  const FieldCtx& f = g.field();
  for (int fi : g.active_faces()) {
    std::vector<FieldElement> col(g.edge_count(), FieldElement{0});
    for (auto& [e, s] : g.faces()[fi].boundary) col[e] = f.add(col[e], f.from_int(s));
    cols.push_back(std::move(col));
  }
  return cols;
}

}  // namespace

bool is_cycle(const TwoComplex& g, const Chain& c) {
  if (c.grade != 1) throw ValidationError("is_cycle expects a grade-1 chain");
  return boundary(g, c).is_zero();
}

HomologySummary h1(const TwoComplex& g) {
  const FieldCtx& f = g.field();
  HomologySummary out;

  // Kernel of d1 (cycles).
  linalg::Matrix kernel = linalg::nullspace(f, boundary1_matrix(g));

  // Quotient by im d2: keep kernel vectors that extend the boundary span.
  linalg::Matrix span = boundary2_columns(g);
  linalg::Matrix acc = span;
  int base_rank = linalg::row_echelon(f, acc);
  (void)base_rank;
  linalg::Matrix reduced = acc;  // echelon rows of the boundary space
  std::vector<std::vector<FieldElement>> picked;
  for (auto& cyc : kernel) {
    linalg::Matrix trial = reduced;
    trial.push_back(cyc);
    for (const auto& p : picked) trial.push_back(p);
    linalg::Matrix without = reduced;
    for (const auto& p : picked) without.push_back(p);
    if (linalg::row_echelon(f, trial) > linalg::row_echelon(f, without)) picked.push_back(cyc);
  }

  out.rank_h1 = static_cast<int>(picked.size());
  out.class_count = 1;
  for (int i = 0; i < out.rank_h1; ++i) out.class_count *= f.size();
  for (auto& v : picked) {
    Chain c = g.zero_chain(1);
    c.coeffs = v;
    out.basis_cycles.push_back(std::move(c));
  }
  return out;
}

bool same_class(const TwoComplex& g, const Chain& c1, const Chain& c2) {
  const FieldCtx& f = g.field();
  if (!is_cycle(g, c1) || !is_cycle(g, c2))
    throw ValidationError("same_class expects cycles");
  std::vector<FieldElement> diff(g.edge_count());
  for (int e = 0; e < g.edge_count(); ++e) diff[e] = f.sub(c1.coeffs[e], c2.coeffs[e]);
  return linalg::in_column_span(f, boundary2_columns(g), diff);
}

Chain cycle_representative(const TwoComplex& g, const std::vector<long long>& winding) {
  const FieldCtx& f = g.field();
  const std::vector<Chain>* loops = &g.basis_loops();
  HomologySummary summary;
  if (loops->empty()) {
    summary = h1(g);
    loops = &summary.basis_cycles;
  }
  if (winding.size() > loops->size())
    throw ValidationError("winding vector longer than the available cycle basis");
  Chain out = g.zero_chain(1);
  for (std::size_t i = 0; i < winding.size(); ++i)
    out = chain_add(g, out, chain_scale(g, f.from_int(winding[i]), (*loops)[i]));
  return out;
}

ClassCoordinates class_coordinates(const TwoComplex& g, const Chain& c) {
  ClassCoordinates out;
  if (!is_cycle(g, c)) return out;
  const FieldCtx& f = g.field();
  HomologySummary summary = h1(g);
  // Solve c = sum_i x_i b_i + boundary part by elimination over the combined
  // column set [basis | d2-columns].
  linalg::Matrix cols;
  for (auto& b : summary.basis_cycles) cols.push_back(b.coeffs);
  linalg::Matrix d2 = boundary2_columns(g);
  for (auto& col : d2) cols.push_back(col);

  // Augmented elimination: rows are [column | indicator], transposed solve.
  const int n = g.edge_count();
  const int m = static_cast<int>(cols.size());
  linalg::Matrix aug(n, std::vector<FieldElement>(m + 1, FieldElement{0}));
  for (int r = 0; r < n; ++r) {
    for (int j = 0; j < m; ++j) aug[r][j] = cols[j][r];
    aug[r][m] = c.coeffs[r];
  }
  // Forward elimination to solve the linear system column-wise.
  int rank = 0;
  std::vector<int> pivot_col(n, -1);
  for (int col = 0; col < m && rank < n; ++col) {
    int piv = -1;
    for (int r = rank; r < n; ++r)
      if (aug[r][col].idx != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(aug[rank], aug[piv]);
    FieldElement ip = f.inv(aug[rank][col]);
    for (int j = 0; j <= m; ++j) aug[rank][j] = f.mul(ip, aug[rank][j]);
    for (int r = 0; r < n; ++r) {
      if (r == rank || aug[r][col].idx == 0) continue;
      FieldElement fac = aug[r][col];
      for (int j = 0; j <= m; ++j) aug[r][j] = f.sub(aug[r][j], f.mul(fac, aug[rank][j]));
    }
    pivot_col[rank] = col;
    ++rank;
  }
  // Inconsistent system -> not a combination (cannot happen for cycles).
  for (int r = rank; r < n; ++r)
    if (aug[r][m].idx != 0) return out;

  out.ok = true;
  out.coords.assign(summary.basis_cycles.size(), FieldElement{0});
  for (int r = 0; r < rank; ++r)
    if (pivot_col[r] >= 0 && pivot_col[r] < static_cast<int>(summary.basis_cycles.size()))
      out.coords[pivot_col[r]] = aug[r][m];
  return out;
}

}  // namespace qsc
