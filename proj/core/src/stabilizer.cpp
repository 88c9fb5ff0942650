#include "qsc/stabilizer.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "qsc/homology.hpp"

namespace qsc {

PauliOp vertex_operator(const TwoComplex& g, int v) {
  const FieldCtx& f = g.field();
  PauliOp p = pauli_identity(g.field_ptr(), g.edge_count());
  for (int e = 0; e < g.edge_count(); ++e) {
    const EdgeRec& er = g.edges()[e];
    if (er.to == v) p.z[e] = f.add(p.z[e], f.one());
    if (er.from == v) p.z[e] = f.sub(p.z[e], f.one());
  }
  return p;
}

PauliOp face_operator(const TwoComplex& g, int fi) {
  const FieldCtx& f = g.field();
  PauliOp p = pauli_identity(g.field_ptr(), g.edge_count());
  for (auto& [e, s] : g.faces()[fi].boundary) p.x[e] = f.add(p.x[e], f.from_int(s));
  return p;
}

PauliOp op_scaled(const PauliOp& g, FieldElement c) {
  if (g.phase != 0) throw ValidationError("op_scaled expects a phase-free generator");
  const FieldCtx& f = *g.ctx;
  PauliOp p = g;
  for (int e = 0; e < g.n; ++e) {
    p.x[e] = f.mul(c, g.x[e]);
    p.z[e] = f.mul(c, g.z[e]);
  }
  return p;
}

StabilizerCode::StabilizerCode(std::shared_ptr<const TwoComplex> complex)
    : complex_(std::move(complex)) {
  const TwoComplex& g = *complex_;
  for (int v = 0; v < g.vertex_count(); ++v) vertex_gens_.push_back(vertex_operator(g, v));
  for (int fi : g.active_faces()) face_gens_.push_back(face_operator(g, fi));

  for (std::size_t v = 0; v < vertex_gens_.size(); ++v) {
    if (vertex_gens_[v].is_identity())
      warnings_.push_back("vertex operator at " + g.vertex_ids()[v] + " is trivial; dropped");
    else
      generators_.push_back(vertex_gens_[v]);
  }
  for (std::size_t i = 0; i < face_gens_.size(); ++i) {
    if (face_gens_[i].is_identity())
      warnings_.push_back("face operator " + g.faces()[g.active_faces()[i]].id + " is trivial; dropped");
    else
      generators_.push_back(face_gens_[i]);
  }
  rank_ = symplectic_rank(generators_, g.field_ptr(), g.edge_count());
}

GlobalIdentityReport global_identities(const StabilizerCode& code) {
  const TwoComplex& g = code.complex();
  GlobalIdentityReport report;

  PauliOp pv = pauli_identity(g.field_ptr(), g.edge_count());
  for (const auto& gv : code.vertex_gens()) pv = multiply(pv, gv);
  report.vertex_product_is_identity = pv.is_identity();

  PauliOp pf = pauli_identity(g.field_ptr(), g.edge_count());
  for (const auto& gf : code.face_gens()) pf = multiply(pf, gf);

  if (g.mode() == ComplexMode::Closed) {
    report.face_identity_holds = pf.is_identity();
    report.face_identity_rhs = "I";
  } else {
    PauliOp rhs = outer_boundary_x_loop(g);
    for (std::size_t j = 0; j < g.punctures().size(); ++j)
      rhs = multiply(rhs, puncture_x_loop(g, static_cast<int>(j)));
    report.face_identity_holds = (pf == rhs);
    report.face_identity_rhs = to_string(rhs);
  }
  return report;
}

PauliOp puncture_x_loop(const TwoComplex& g, int puncture_index) {
  int fi = g.punctures().at(puncture_index);
  return dagger(face_operator(g, fi));
}

PauliOp outer_boundary_x_loop(const TwoComplex& g) {
  const FieldCtx& f = g.field();
  PauliOp p = pauli_identity(g.field_ptr(), g.edge_count());
  for (const FaceRec& fr : g.faces())
    for (auto& [e, s] : fr.boundary) p.x[e] = f.add(p.x[e], f.from_int(s));
  return p;
}

namespace {

// Z-string from puncture j to the outer boundary: BFS over edges, two edges
// adjacent when they share an active face not yet used by the path.
struct DualPath {
  std::vector<int> edges;
  std::vector<int> faces;  // shared face between consecutive edges
};

DualPath find_dual_path(const TwoComplex& g, int puncture_index) {
  std::set<int> forbidden;  // edges on other puncture cycles
  for (std::size_t j = 0; j < g.punctures().size(); ++j) {
    if (static_cast<int>(j) == puncture_index) continue;
    for (auto& [e, s] : g.faces()[g.punctures()[j]].boundary) forbidden.insert(e);
  }
  std::vector<std::vector<std::pair<int, int>>> edge_faces(g.edge_count());  // (face, slot)
  for (int fi : g.active_faces())
    for (auto& [e, s] : g.faces()[fi].boundary) edge_faces[e].push_back({fi, s});

  std::set<int> outer;
  for (int e : g.outer_boundary_edges()) outer.insert(e);

  std::vector<int> start;
  for (auto& [e, s] : g.faces()[g.punctures().at(puncture_index)].boundary) start.push_back(e);
  std::sort(start.begin(), start.end());

  struct Node {
    int edge;
    int parent;      // index into the visit list
    int via_face;    // face shared with the parent edge
  };
  std::vector<Node> visits;
  std::set<int> seen_edges;
  std::deque<int> queue;
  for (int e : start) {
    if (forbidden.count(e)) continue;
    visits.push_back({e, -1, -1});
    seen_edges.insert(e);
    queue.push_back(static_cast<int>(visits.size()) - 1);
  }
  while (!queue.empty()) {
    int cur = queue.front();
    queue.pop_front();
    int e = visits[cur].edge;
    if (outer.count(e)) {
      DualPath path;
      for (int i = cur; i >= 0; i = visits[i].parent) {
        path.edges.push_back(visits[i].edge);
        if (visits[i].via_face >= 0) path.faces.push_back(visits[i].via_face);
      }
      std::reverse(path.edges.begin(), path.edges.end());
      std::reverse(path.faces.begin(), path.faces.end());
      return path;
    }
    // Deterministic expansion: faces ascending, then edges ascending.
    std::vector<std::pair<int, int>> nexts;
    for (auto& [fi, s] : edge_faces[e])
      for (auto& [e2, s2] : g.faces()[fi].boundary)
        if (e2 != e && !seen_edges.count(e2) && !forbidden.count(e2)) nexts.push_back({fi, e2});
    std::sort(nexts.begin(), nexts.end());
    for (auto& [fi, e2] : nexts) {
      if (seen_edges.count(e2)) continue;
      seen_edges.insert(e2);
      visits.push_back({e2, cur, fi});
      queue.push_back(static_cast<int>(visits.size()) - 1);
    }
  }
  throw ValidationError("no dual path from puncture " +
                        g.faces()[g.punctures().at(puncture_index)].id +
                        " to the outer boundary (punctures blocked)");
}

int face_sign_of_edge(const TwoComplex& g, int fi, int e) {
  int total = 0;
  for (auto& [e2, s] : g.faces()[fi].boundary)
    if (e2 == e) total += s;
  return total;
}

}  // namespace

std::vector<LogicalPair> logical_operators(const StabilizerCode& code) {
  const TwoComplex& g = code.complex();
  const FieldCtx& f = g.field();
  std::vector<LogicalPair> pairs;

  if (g.mode() == ComplexMode::Bounded) {
    for (std::size_t j = 0; j < g.punctures().size(); ++j) {
      PauliOp xbar = puncture_x_loop(g, static_cast<int>(j));
      DualPath path = find_dual_path(g, static_cast<int>(j));

      PauliOp zbar = pauli_identity(g.field_ptr(), g.edge_count());
      std::vector<int> expo(path.edges.size(), 0);
      expo[0] = 1;
      for (std::size_t i = 0; i + 1 < path.edges.size(); ++i) {
        int fi = path.faces[i];
        int s1 = face_sign_of_edge(g, fi, path.edges[i]);
        int s2 = face_sign_of_edge(g, fi, path.edges[i + 1]);
        expo[i + 1] = -expo[i] * s1 * s2;
      }
      for (std::size_t i = 0; i < path.edges.size(); ++i)
        zbar.z[path.edges[i]] = f.add(zbar.z[path.edges[i]], f.from_int(expo[i]));

      // Fix the pair phase to +1 by inverting the string if needed.
      if (commutation_phase(zbar, xbar) != 1 % f.d()) zbar = dagger(zbar);
      if (f.d() > 2 && commutation_phase(zbar, xbar) != 1)
        throw ValidationError("logical pair phase could not be normalised");

      // The construction is verified, not assumed.
      for (const auto& gen : code.generators())
        if (commutation_phase(zbar, gen) != 0 || commutation_phase(xbar, gen) != 0)
          throw ValidationError("logical operator fails to commute with a stabilizer generator");
      pairs.push_back({xbar, zbar});
    }
    return pairs;
  }

  // Closed mode: X-loops from the recorded straight cycles, Z-strings solved
  // from the cocycle conditions.
  const std::vector<Chain>& loops = g.basis_loops();
  if (loops.empty()) throw ValidationError("no recorded cycles for logical operators on this complex");

  for (std::size_t i = 0; i < loops.size(); ++i) {
    PauliOp xbar = pauli_identity(g.field_ptr(), g.edge_count());
    for (int e = 0; e < g.edge_count(); ++e) xbar.x[e] = loops[i].coeffs[e];

    // eta: commutes with every face operator, pairs 1 with loop i and 0 with
    // the others.  Rows of the linear system: one per active face, one per
    // recorded loop.
    linalg::Matrix rows;
    std::vector<FieldElement> rhs;
    for (int fi : g.active_faces()) {
      std::vector<FieldElement> row(g.edge_count(), FieldElement{0});
      for (auto& [e, s] : g.faces()[fi].boundary) row[e] = f.add(row[e], f.from_int(s));
      rows.push_back(std::move(row));
      rhs.push_back(f.zero());
    }
    for (std::size_t l = 0; l < loops.size(); ++l) {
      rows.push_back(loops[l].coeffs);
      rhs.push_back(l == i ? f.one() : f.zero());
    }
    // Solve rows * eta = rhs by elimination on the augmented matrix.
    linalg::Matrix aug = rows;
    for (std::size_t r = 0; r < aug.size(); ++r) aug[r].push_back(rhs[r]);
    std::size_t rank = 0;
    const std::size_t cols = g.edge_count();
    std::vector<int> pivot_cols;
    for (std::size_t col = 0; col < cols && rank < aug.size(); ++col) {
      std::size_t piv = rank;
      while (piv < aug.size() && aug[piv][col].idx == 0) ++piv;
      if (piv == aug.size()) continue;
      std::swap(aug[rank], aug[piv]);
      FieldElement ip = f.inv(aug[rank][col]);
      for (auto& x : aug[rank]) x = f.mul(ip, x);
      for (std::size_t r = 0; r < aug.size(); ++r) {
        if (r == rank || aug[r][col].idx == 0) continue;
        FieldElement fac = aug[r][col];
        for (std::size_t j = 0; j <= cols; ++j) aug[r][j] = f.sub(aug[r][j], f.mul(fac, aug[rank][j]));
      }
      pivot_cols.push_back(static_cast<int>(col));
      ++rank;
    }
    for (std::size_t r = rank; r < aug.size(); ++r)
      if (aug[r][cols].idx != 0)
        throw ValidationError("no dual cycle pairs with the recorded loop " + std::to_string(i));
    PauliOp zbar = pauli_identity(g.field_ptr(), g.edge_count());
    for (std::size_t r = 0; r < rank; ++r) zbar.z[pivot_cols[r]] = aug[r][cols];

    for (const auto& gen : code.generators())
      if (commutation_phase(zbar, gen) != 0 || commutation_phase(xbar, gen) != 0)
        throw ValidationError("logical operator fails to commute with a stabilizer generator");
    pairs.push_back({xbar, zbar});
  }
  return pairs;
}

CodeParameters code_parameters(const StabilizerCode& code) {
  CodeParameters out;
  out.n = code.n();
  out.code_dim = code.code_dim();
  out.generator_rank = code.rank();
  HomologySummary hom = h1(code.complex());
  if (hom.class_count != out.code_dim)
    throw ValidationError("code dimension " + std::to_string(out.code_dim) +
                          " disagrees with the homology class count " +
                          std::to_string(hom.class_count));
  return out;
}

}  // namespace qsc
