#include "qsc/chain_complex.hpp"

#include <algorithm>
#include <set>

namespace qsc {

TwoComplex::TwoComplex(FieldCtxPtr field, std::vector<std::string> vertices,
                       std::vector<EdgeRec> edges, std::vector<FaceRec> faces, ComplexMode mode,
                       std::vector<int> punctures)
    : field_(std::move(field)),
      vertex_ids_(std::move(vertices)),
      edges_(std::move(edges)),
      faces_(std::move(faces)),
      punctures_(std::move(punctures)),
      mode_(mode) {
  for (int i = 0; i < static_cast<int>(vertex_ids_.size()); ++i) {
    if (!vertex_lookup_.emplace(vertex_ids_[i], i).second)
      throw ValidationError("duplicate vertex id " + vertex_ids_[i]);
  }
  for (int i = 0; i < static_cast<int>(edges_.size()); ++i) {
    const EdgeRec& e = edges_[i];
    if (!edge_lookup_.emplace(e.id, i).second) throw ValidationError("duplicate edge id " + e.id);
    if (e.from < 0 || e.from >= vertex_count() || e.to < 0 || e.to >= vertex_count())
      throw ValidationError("edge " + e.id + " references an undeclared vertex");
  }
  for (int i = 0; i < static_cast<int>(faces_.size()); ++i) {
    const FaceRec& f = faces_[i];
    if (!face_lookup_.emplace(f.id, i).second) throw ValidationError("duplicate face id " + f.id);
    for (auto& [e, s] : f.boundary) {
      if (e < 0 || e >= edge_count())
        throw ValidationError("face " + f.id + " references an undeclared edge");
      if (s != 1 && s != -1) throw ValidationError("face " + f.id + " has a sign outside {+1,-1}");
    }
  }
  std::vector<char> punctured(faces_.size(), 0);
  for (int p : punctures_) {
    if (p < 0 || p >= face_count()) throw ValidationError("puncture index out of range");
    if (mode_ != ComplexMode::Bounded) throw ValidationError("punctures require bounded mode");
    punctured[p] = 1;
  }
  for (int i = 0; i < face_count(); ++i)
    if (!punctured[i]) active_faces_.push_back(i);
}

bool TwoComplex::is_puncture(int face) const {
  return std::find(punctures_.begin(), punctures_.end(), face) != punctures_.end();
}

int TwoComplex::vertex_index(const std::string& id) const {
  auto it = vertex_lookup_.find(id);
  if (it == vertex_lookup_.end()) throw ValidationError("unknown vertex id " + id);
  return it->second;
}

int TwoComplex::edge_index(const std::string& id) const {
  auto it = edge_lookup_.find(id);
  if (it == edge_lookup_.end()) throw ValidationError("unknown edge id " + id);
  return it->second;
}

int TwoComplex::face_index(const std::string& id) const {
  auto it = face_lookup_.find(id);
  if (it == face_lookup_.end()) throw ValidationError("unknown face id " + id);
  return it->second;
}

int TwoComplex::euler_characteristic() const {
  return vertex_count() - edge_count() + static_cast<int>(active_faces_.size());
}

std::vector<int> TwoComplex::outer_boundary_edges() const {
  std::vector<int> active_appearances(edge_count(), 0);
  for (int f : active_faces_)
    for (auto& [e, s] : faces_[f].boundary) active_appearances[e]++;
  std::vector<char> on_puncture(edge_count(), 0);
  for (int p : punctures_)
    for (auto& [e, s] : faces_[p].boundary) on_puncture[e] = 1;
  std::vector<int> out;
  for (int e = 0; e < edge_count(); ++e)
    if (active_appearances[e] == 1 && !on_puncture[e]) out.push_back(e);
  return out;
}

Chain TwoComplex::zero_chain(int grade) const {
  Chain c;
  c.grade = grade;
  int count = grade == 0   ? vertex_count()
              : grade == 1 ? edge_count()
                           : static_cast<int>(active_faces_.size());
  c.coeffs.assign(count, FieldElement{0});
  return c;
}

Chain TwoComplex::edge_chain(const std::map<int, FieldElement>& coeffs) const {
  Chain c = zero_chain(1);
  for (auto& [e, v] : coeffs) c.coeffs.at(e) = v;
  return c;
}

std::vector<std::string> TwoComplex::validate() const {
  std::vector<std::string> warnings;
  const FieldCtx& f = *field_;

  // d(d(face)) = 0 for every face, punctured or not.
  for (const FaceRec& face : faces_) {
    Chain e1 = zero_chain(1);
    for (auto& [e, s] : face.boundary)
      e1.coeffs[e] = f.add(e1.coeffs[e], f.from_int(s));
    Chain v0 = boundary(*this, e1);
    if (!v0.is_zero())
      throw ValidationError("face " + face.id + " has a non-closed boundary walk");
  }

  // Signed appearance counts over active faces.
  std::vector<std::vector<int>> appearance_signs(edge_count());
  for (int fi : active_faces_)
    for (auto& [e, s] : faces_[fi].boundary) appearance_signs[e].push_back(s);

  for (int e = 0; e < edge_count(); ++e) {
    const auto& signs = appearance_signs[e];
    if (mode_ == ComplexMode::Closed) {
      if (signs.size() != 2)
        throw ValidationError("closed mode: edge " + edges_[e].id + " appears in " +
                              std::to_string(signs.size()) + " face boundaries, expected 2");
      if (signs[0] + signs[1] != 0)
        throw ValidationError("closed mode: edge " + edges_[e].id +
                              " does not take opposite orientations in its two faces");
    } else {
      if (signs.size() > 2)
        throw ValidationError("bounded mode: edge " + edges_[e].id + " appears in " +
                              std::to_string(signs.size()) + " face boundaries");
      if (signs.size() == 2 && signs[0] + signs[1] != 0)
        throw ValidationError("bounded mode: edge " + edges_[e].id +
                              " appears twice with equal orientation");
    }
  }

  if (mode_ == ComplexMode::Closed && !punctures_.empty())
    throw ValidationError("closed mode cannot carry punctures");
  if (mode_ == ComplexMode::Closed && euler_characteristic() % 2 != 0)
    throw ValidationError("closed orientable complex must have even Euler characteristic");

  // Punctures must be pairwise non-adjacent and must not touch the outer rim.
  std::vector<std::set<int>> pv;
  for (int p : punctures_) {
    std::set<int> verts;
    for (auto& [e, s] : faces_[p].boundary) {
      verts.insert(edges_[e].from);
      verts.insert(edges_[e].to);
    }
    pv.push_back(std::move(verts));
  }
  for (std::size_t i = 0; i < pv.size(); ++i)
    for (std::size_t j = i + 1; j < pv.size(); ++j) {
      std::vector<int> inter;
      std::set_intersection(pv[i].begin(), pv[i].end(), pv[j].begin(), pv[j].end(),
                            std::back_inserter(inter));
      if (!inter.empty())
        throw ValidationError("punctures " + faces_[punctures_[i]].id + " and " +
                              faces_[punctures_[j]].id + " are adjacent");
    }
  {
    std::vector<int> outer_vec = outer_boundary_edges();
    std::set<int> outer(outer_vec.begin(), outer_vec.end());
    for (int p : punctures_)
      for (auto& [e, s] : faces_[p].boundary)
        if (outer.count(e))
          throw ValidationError("puncture " + faces_[p].id + " touches the outer boundary");
  }

  // Degenerate generators: a self-loop contributes nothing to its vertex
  // operator; a face whose walk cancels gives an identity face operator.
  for (const EdgeRec& e : edges_)
    if (e.from == e.to) warnings.push_back("edge " + e.id + " is a self-loop; vertex operator at " +
                                           vertex_ids_[e.from] + " degenerates");
  for (int fi : active_faces_) {
    Chain w = zero_chain(1);
    for (auto& [e, s] : faces_[fi].boundary) w.coeffs[e] = f.add(w.coeffs[e], f.from_int(s));
    if (w.is_zero())
      warnings.push_back("face " + faces_[fi].id + " has a cancelling boundary walk; its operator is trivial");
  }
  return warnings;
}

Chain boundary(const TwoComplex& g, const Chain& c) {
  const FieldCtx& f = g.field();
  if (c.grade == 0) throw ValidationError("no boundary below grade 0");
  if (c.grade == 1) {
    Chain out = g.zero_chain(0);
    for (int e = 0; e < g.edge_count(); ++e) {
      if (c.coeffs[e].idx == 0) continue;
      const EdgeRec& er = g.edges()[e];
      out.coeffs[er.from] = f.add(out.coeffs[er.from], c.coeffs[e]);
      out.coeffs[er.to] = f.sub(out.coeffs[er.to], c.coeffs[e]);
    }
    return out;
  }
  Chain out = g.zero_chain(1);
  const auto& active = g.active_faces();
  for (std::size_t i = 0; i < active.size(); ++i) {
    if (c.coeffs[i].idx == 0) continue;
    for (auto& [e, s] : g.faces()[active[i]].boundary) {
      FieldElement term = f.scalar_mul(s, c.coeffs[i]);
      out.coeffs[e] = f.add(out.coeffs[e], term);
    }
  }
  return out;
}

Chain chain_add(const TwoComplex& g, const Chain& a, const Chain& b) {
  if (a.grade != b.grade) throw ValidationError("chain grade mismatch");
  Chain out = a;
  for (std::size_t i = 0; i < out.coeffs.size(); ++i)
    out.coeffs[i] = g.field().add(a.coeffs[i], b.coeffs[i]);
  return out;
}

Chain chain_scale(const TwoComplex& g, FieldElement s, const Chain& a) {
  Chain out = a;
  for (auto& c : out.coeffs) c = g.field().mul(s, c);
  return out;
}

// ---------------------------------------------------------------------------
// Builders
// ---------------------------------------------------------------------------

TwoComplex build_torus_grid(int rows, int cols, FieldCtxPtr field) {
  if (rows < 1 || cols < 1) throw ValidationError("torus size must be >= 1");
  auto vid = [rows, cols](int r, int c) {
    return ((r % rows + rows) % rows) * cols + ((c % cols + cols) % cols);
  };
  auto h_edge = [vid](int r, int c) { return vid(r, c); };
  auto v_edge = [rows, cols, vid](int r, int c) { return rows * cols + vid(r, c); };

  std::vector<std::string> vertices;
  for (int i = 0; i < rows * cols; ++i) vertices.push_back("v" + std::to_string(i));
  std::vector<EdgeRec> edges(2 * rows * cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      edges[h_edge(r, c)] = {"e" + std::to_string(h_edge(r, c)), vid(r, c), vid(r, c + 1)};
      edges[v_edge(r, c)] = {"e" + std::to_string(v_edge(r, c)), vid(r, c), vid(r + 1, c)};
    }
  std::vector<FaceRec> faces(rows * cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      FaceRec fr;
      fr.id = "f" + std::to_string(vid(r, c));
      fr.boundary = {{h_edge(r, c), 1}, {v_edge(r, c + 1), 1}, {h_edge(r + 1, c), -1}, {v_edge(r, c), -1}};
      faces[vid(r, c)] = std::move(fr);
    }
  TwoComplex g(std::move(field), std::move(vertices), std::move(edges), std::move(faces),
               ComplexMode::Closed);

  Chain loop_h = g.zero_chain(1);
  for (int c = 0; c < cols; ++c) loop_h.coeffs[h_edge(0, c)] = g.field().one();
  Chain loop_v = g.zero_chain(1);
  for (int r = 0; r < rows; ++r) loop_v.coeffs[v_edge(r, 0)] = g.field().one();
  g.set_basis_loops({loop_h, loop_v});
  return g;
}

TwoComplex build_torus_square(int m, FieldCtxPtr field) { return build_torus_grid(m, m, std::move(field)); }

TwoComplex build_honeycomb_torus(int rows, int cols, FieldCtxPtr field) {
  if (rows < 1 || cols < 1) throw ValidationError("honeycomb size must be >= 1");
  auto cell = [rows, cols](int r, int c) {
    return ((r % rows + rows) % rows) * cols + ((c % cols + cols) % cols);
  };
  auto va = [cell](int r, int c) { return 2 * cell(r, c); };
  auto vb = [cell](int r, int c) { return 2 * cell(r, c) + 1; };
  auto e_vert = [cell](int r, int c) { return 3 * cell(r, c); };
  auto e_right = [cell](int r, int c) { return 3 * cell(r, c) + 1; };
  auto e_down = [cell](int r, int c) { return 3 * cell(r, c) + 2; };

  std::vector<std::string> vertices;
  for (int i = 0; i < 2 * rows * cols; ++i) vertices.push_back("v" + std::to_string(i));
  std::vector<EdgeRec> edges(3 * rows * cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      edges[e_vert(r, c)] = {"e" + std::to_string(e_vert(r, c)), va(r, c), vb(r, c)};
      edges[e_right(r, c)] = {"e" + std::to_string(e_right(r, c)), vb(r, c), va(r, c + 1)};
      edges[e_down(r, c)] = {"e" + std::to_string(e_down(r, c)), vb(r, c), va(r + 1, c)};
    }
  std::vector<FaceRec> faces(rows * cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      FaceRec fr;
      fr.id = "f" + std::to_string(cell(r, c));
      fr.boundary = {{e_vert(r, c), 1},          {e_right(r, c), 1},
                     {e_down(r - 1, c + 1), -1}, {e_vert(r - 1, c + 1), -1},
                     {e_right(r - 1, c), -1},    {e_down(r - 1, c), 1}};
      faces[cell(r, c)] = std::move(fr);
    }
  TwoComplex g(std::move(field), std::move(vertices), std::move(edges), std::move(faces),
               ComplexMode::Closed);

  Chain loop_h = g.zero_chain(1);
  for (int c = 0; c < cols; ++c) {
    loop_h.coeffs[e_vert(0, c)] = g.field().one();
    loop_h.coeffs[e_right(0, c)] = g.field().one();
  }
  Chain loop_v = g.zero_chain(1);
  for (int r = 0; r < rows; ++r) {
    loop_v.coeffs[e_vert(r, 0)] = g.field().one();
    loop_v.coeffs[e_down(r, 0)] = g.field().one();
  }
  g.set_basis_loops({loop_h, loop_v});
  return g;
}

TwoComplex build_sphere_cube(FieldCtxPtr field) {
  std::vector<std::string> vertices;
  for (int i = 0; i < 8; ++i) vertices.push_back("v" + std::to_string(i));
  // Edges flip one coordinate bit, oriented from the lower-indexed vertex.
  std::vector<EdgeRec> edges = {
      {"e0", 0, 1},  {"e1", 2, 3},  {"e2", 4, 5},  {"e3", 6, 7},   // x
      {"e4", 0, 2},  {"e5", 1, 3},  {"e6", 4, 6},  {"e7", 5, 7},   // y
      {"e8", 0, 4},  {"e9", 1, 5},  {"e10", 2, 6}, {"e11", 3, 7},  // z
  };
  // Outward-oriented face walks.
  std::vector<FaceRec> faces = {
      {"f0", {{2, 1}, {7, 1}, {3, -1}, {6, -1}}},    // top z=1
      {"f1", {{4, 1}, {1, 1}, {5, -1}, {0, -1}}},    // bottom z=0
      {"f2", {{0, 1}, {9, 1}, {2, -1}, {8, -1}}},    // front y=0
      {"f3", {{10, 1}, {3, 1}, {11, -1}, {1, -1}}},  // back y=1
      {"f4", {{8, 1}, {6, 1}, {10, -1}, {4, -1}}},   // left x=0
      {"f5", {{5, 1}, {11, 1}, {7, -1}, {9, -1}}},   // right x=1
  };
  return TwoComplex(std::move(field), std::move(vertices), std::move(edges), std::move(faces),
                    ComplexMode::Closed);
}

TwoComplex build_punctured_disk(int k, DiskStyle style, FieldCtxPtr field) {
  if (k < 0) throw ValidationError("puncture count must be >= 0");
  if (style == DiskStyle::Coarse) {
    // One outer loop O at the anchor vertex; per hole, a stem from the anchor
    // and a loop around the hole.  The single active face is the disk cut
    // open along the stems.
    std::vector<std::string> vertices = {"v0"};
    for (int j = 1; j <= k; ++j) vertices.push_back("v" + std::to_string(j));
    std::vector<EdgeRec> edges;
    edges.push_back({"e0", 0, 0});  // outer boundary loop
    for (int j = 1; j <= k; ++j) {
      edges.push_back({"e" + std::to_string(2 * j - 1), 0, j});  // stem
      edges.push_back({"e" + std::to_string(2 * j), j, j});      // hole loop
    }
    std::vector<FaceRec> faces;
    FaceRec big;
    big.id = "f0";
    big.boundary.push_back({0, 1});
    for (int j = 1; j <= k; ++j) {
      big.boundary.push_back({2 * j - 1, 1});
      big.boundary.push_back({2 * j, -1});
      big.boundary.push_back({2 * j - 1, -1});
    }
    faces.push_back(std::move(big));
    std::vector<int> punctures;
    for (int j = 1; j <= k; ++j) {
      FaceRec hole;
      hole.id = "f" + std::to_string(j);
      hole.boundary = {{2 * j, 1}};
      punctures.push_back(static_cast<int>(faces.size()));
      faces.push_back(std::move(hole));
    }
    return TwoComplex(std::move(field), std::move(vertices), std::move(edges), std::move(faces),
                      ComplexMode::Bounded, std::move(punctures));
  }

  // Frame style: outer rectangle, square holes in a row, quad/hex ring faces.
  if (k < 1) throw ValidationError("frame style needs at least one puncture");
  std::vector<std::string> vertices;
  auto add_vertex = [&vertices]() {
    int i = static_cast<int>(vertices.size());
    vertices.push_back("v" + std::to_string(i));
    return i;
  };
  int U0 = add_vertex(), U1 = add_vertex(), D0 = add_vertex(), D1 = add_vertex();
  std::vector<int> tl(k), tr(k), bl(k), br(k);
  for (int j = 0; j < k; ++j) {
    tl[j] = add_vertex();
    tr[j] = add_vertex();
    bl[j] = add_vertex();
    br[j] = add_vertex();
  }
  std::vector<EdgeRec> edges;
  auto add_edge = [&edges](int from, int to) {
    int i = static_cast<int>(edges.size());
    edges.push_back({"e" + std::to_string(i), from, to});
    return i;
  };
  int top = add_edge(U0, U1), bottom = add_edge(D0, D1);
  int left = add_edge(U0, D0), right = add_edge(U1, D1);
  int slant_tl = add_edge(U0, tl[0]), slant_tr = add_edge(U1, tr[k - 1]);
  int slant_bl = add_edge(D0, bl[0]), slant_br = add_edge(D1, br[k - 1]);
  std::vector<int> htop(k), hbot(k), hleft(k), hright(k);
  for (int j = 0; j < k; ++j) {
    htop[j] = add_edge(tl[j], tr[j]);
    hbot[j] = add_edge(bl[j], br[j]);
    hleft[j] = add_edge(tl[j], bl[j]);
    hright[j] = add_edge(tr[j], br[j]);
  }
  std::vector<int> topconn(k), botconn(k);  // index j >= 1
  for (int j = 1; j < k; ++j) {
    topconn[j] = add_edge(tr[j - 1], tl[j]);
    botconn[j] = add_edge(br[j - 1], bl[j]);
  }

  std::vector<FaceRec> faces;
  FaceRec T;
  T.id = "f0";
  for (int j = 0; j < k; ++j) {
    T.boundary.push_back({htop[j], 1});
    if (j + 1 < k) T.boundary.push_back({topconn[j + 1], 1});
  }
  T.boundary.push_back({slant_tr, -1});
  T.boundary.push_back({top, -1});
  T.boundary.push_back({slant_tl, 1});
  faces.push_back(std::move(T));

  FaceRec B;
  B.id = "f1";
  B.boundary.push_back({bottom, 1});
  B.boundary.push_back({slant_br, 1});
  for (int j = k - 1; j >= 0; --j) {
    B.boundary.push_back({hbot[j], -1});
    if (j >= 1) B.boundary.push_back({botconn[j], -1});
  }
  B.boundary.push_back({slant_bl, -1});
  faces.push_back(std::move(B));

  FaceRec L;
  L.id = "f2";
  L.boundary = {{left, 1}, {slant_bl, 1}, {hleft[0], -1}, {slant_tl, -1}};
  faces.push_back(std::move(L));

  FaceRec R;
  R.id = "f3";
  R.boundary = {{slant_tr, 1}, {hright[k - 1], 1}, {slant_br, -1}, {right, -1}};
  faces.push_back(std::move(R));

  for (int j = 1; j < k; ++j) {
    FaceRec M;
    M.id = "f" + std::to_string(3 + j);
    M.boundary = {{botconn[j], 1}, {hleft[j], -1}, {topconn[j], -1}, {hright[j - 1], 1}};
    faces.push_back(std::move(M));
  }

  std::vector<int> punctures;
  for (int j = 0; j < k; ++j) {
    FaceRec P;
    P.id = "f" + std::to_string(3 + k + j);
    P.boundary = {{hbot[j], 1}, {hright[j], -1}, {htop[j], -1}, {hleft[j], 1}};
    punctures.push_back(static_cast<int>(faces.size()));
    faces.push_back(std::move(P));
  }
  return TwoComplex(std::move(field), std::move(vertices), std::move(edges), std::move(faces),
                    ComplexMode::Bounded, std::move(punctures));
}

TwoComplex build_grid_disk(int w, int h, FieldCtxPtr field,
                           const std::vector<std::pair<int, int>>& puncture_cells) {
  if (w < 1 || h < 1) throw ValidationError("grid size must be >= 1");
  auto vid = [w](int x, int y) { return y * (w + 1) + x; };
  auto h_edge = [w](int x, int y) { return y * w + x; };
  auto v_edge = [w, h](int x, int y) { return w * (h + 1) + y * (w + 1) + x; };

  std::vector<std::string> vertices;
  for (int i = 0; i < (w + 1) * (h + 1); ++i) vertices.push_back("v" + std::to_string(i));
  std::vector<EdgeRec> edges(w * (h + 1) + h * (w + 1));
  for (int y = 0; y <= h; ++y)
    for (int x = 0; x < w; ++x)
      edges[h_edge(x, y)] = {"e" + std::to_string(h_edge(x, y)), vid(x, y), vid(x + 1, y)};
  for (int y = 0; y < h; ++y)
    for (int x = 0; x <= w; ++x)
      edges[v_edge(x, y)] = {"e" + std::to_string(v_edge(x, y)), vid(x, y), vid(x, y + 1)};

  std::vector<FaceRec> faces(w * h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      FaceRec fr;
      fr.id = "f" + std::to_string(y * w + x);
      fr.boundary = {{h_edge(x, y), 1}, {v_edge(x + 1, y), 1}, {h_edge(x, y + 1), -1}, {v_edge(x, y), -1}};
      faces[y * w + x] = std::move(fr);
    }

  std::vector<int> punctures;
  for (auto& [x, y] : puncture_cells) {
    if (x < 1 || x > w - 2 || y < 1 || y > h - 2)
      throw ValidationError("puncture cell touches the outer boundary");
    punctures.push_back(y * w + x);
  }
  return TwoComplex(std::move(field), std::move(vertices), std::move(edges), std::move(faces),
                    ComplexMode::Bounded, std::move(punctures));
}

TwoComplex dual(const TwoComplex& g) {
  if (g.mode() != ComplexMode::Closed)
    throw ValidationError("dual of a bounded complex is not supported");

  // New vertex per face, new face per vertex, edge count preserved.  A dual
  // edge runs from the face where the primal edge has sign +1 to the face
  // where it has sign -1.
  std::vector<std::string> vertices;
  for (int i = 0; i < g.face_count(); ++i) vertices.push_back("v" + std::to_string(i));
  std::vector<EdgeRec> edges(g.edge_count());
  std::vector<int> face_plus(g.edge_count(), -1), face_minus(g.edge_count(), -1);
  for (int fi = 0; fi < g.face_count(); ++fi)
    for (auto& [e, s] : g.faces()[fi].boundary)
      (s > 0 ? face_plus : face_minus)[e] = fi;
  for (int e = 0; e < g.edge_count(); ++e)
    edges[e] = {"e" + std::to_string(e), face_plus[e], face_minus[e]};

  std::vector<FaceRec> faces(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v) {
    FaceRec fr;
    fr.id = "f" + std::to_string(v);
    for (int e = 0; e < g.edge_count(); ++e) {
      if (g.edges()[e].to == v) fr.boundary.push_back({e, 1});
      if (g.edges()[e].from == v) fr.boundary.push_back({e, -1});
    }
    faces[v] = std::move(fr);
  }
  return TwoComplex(g.field_ptr(), std::move(vertices), std::move(edges), std::move(faces),
                    ComplexMode::Closed);
}

}  // namespace qsc
