#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qsc/gf.hpp"

namespace qsc {

enum class ComplexMode { Closed, Bounded };

/// Directed edge [from, to]; orientation runs from -> to.
struct EdgeRec {
  std::string id;
  int from = 0;
  int to = 0;
};

/// Oriented face: boundary walk as an ordered list of (edge index, sign),
/// sign +1 when the walk traverses the edge along its orientation.
struct FaceRec {
  std::string id;
  std::vector<std::pair<int, int>> boundary;
};

/// Formal F-linear combination of cells of one grade (0 = vertices,
/// 1 = edges, 2 = faces), stored densely; zero coefficients mean absent.
struct Chain {
  int grade = 1;
  std::vector<FieldElement> coeffs;

  bool is_zero() const {
    for (auto c : coeffs)
      if (c.idx != 0) return false;
    return true;
  }
  int support_size() const {
    int s = 0;
    for (auto c : coeffs) s += (c.idx != 0);
    return s;
  }
};

/// Oriented two-complex: a graph with attached oriented discs, plus the
/// coefficient field for its chains.  In closed mode every edge lies in
/// exactly two face boundaries with opposite signs; in bounded mode at most
/// two.  Faces listed in `punctures` are holes: they keep their boundary
/// walk for bookkeeping but are excluded from the 2-cells of the space.
class TwoComplex {
 public:
  TwoComplex(FieldCtxPtr field, std::vector<std::string> vertices, std::vector<EdgeRec> edges,
             std::vector<FaceRec> faces, ComplexMode mode, std::vector<int> punctures = {});

  const FieldCtx& field() const { return *field_; }
  FieldCtxPtr field_ptr() const { return field_; }
  ComplexMode mode() const { return mode_; }

  int vertex_count() const { return static_cast<int>(vertex_ids_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  int face_count() const { return static_cast<int>(faces_.size()); }

  const std::vector<std::string>& vertex_ids() const { return vertex_ids_; }
  const std::vector<EdgeRec>& edges() const { return edges_; }
  const std::vector<FaceRec>& faces() const { return faces_; }
  const std::vector<int>& punctures() const { return punctures_; }

  /// Faces that are actual 2-cells (everything not marked as a puncture).
  const std::vector<int>& active_faces() const { return active_faces_; }
  bool is_puncture(int face) const;

  int vertex_index(const std::string& id) const;
  int edge_index(const std::string& id) const;
  int face_index(const std::string& id) const;

  /// V - E + F counting only active faces.
  int euler_characteristic() const;

  /// Edges on the outer boundary: bounded mode, edges appearing in exactly
  /// one active face boundary and on no puncture cycle.
  std::vector<int> outer_boundary_edges() const;

  /// Runs the full invariant suite; throws ValidationError with a reason on
  /// the first violation.  Returns warnings (e.g. degenerate self-loop
  /// operators) without failing.
  std::vector<std::string> validate() const;

  Chain zero_chain(int grade) const;
  Chain edge_chain(const std::map<int, FieldElement>& coeffs) const;

  /// Straight cycles recorded by the torus builders, used for minimal-support
  /// class representatives.  Empty for other complexes.
  const std::vector<Chain>& basis_loops() const { return basis_loops_; }
  void set_basis_loops(std::vector<Chain> loops) { basis_loops_ = std::move(loops); }

 private:
  FieldCtxPtr field_;
  std::vector<std::string> vertex_ids_;
  std::vector<EdgeRec> edges_;
  std::vector<FaceRec> faces_;
  std::vector<int> punctures_;
  std::vector<int> active_faces_;
  ComplexMode mode_;
  std::map<std::string, int> vertex_lookup_;
  std::map<std::string, int> edge_lookup_;
  std::map<std::string, int> face_lookup_;
  std::vector<Chain> basis_loops_;
};

/// Boundary operator: faces to signed edge sums, edges to (from - to).
/// Grade-0 input is an error ("no boundary below grade 0").
Chain boundary(const TwoComplex& g, const Chain& c);

Chain chain_add(const TwoComplex& g, const Chain& a, const Chain& b);
Chain chain_scale(const TwoComplex& g, FieldElement s, const Chain& a);

/// Square cellulation of the torus: m*m vertices, 2m^2 edges, m^2 faces.
/// m = 1 degenerates to self-loops (the vertex operator becomes identity).
TwoComplex build_torus_square(int m, FieldCtxPtr field);

/// Rectangular torus grid, rows x cols cells; build_torus_square(m) is the
/// square case.
TwoComplex build_torus_grid(int rows, int cols, FieldCtxPtr field);

/// Honeycomb cellulation of the torus, rows x cols hexagons; every vertex
/// has valence 3 and every face six sides.
TwoComplex build_honeycomb_torus(int rows, int cols, FieldCtxPtr field);

/// Surface of a cube: 8 vertices, 12 edges, 6 faces, genus 0.
TwoComplex build_sphere_cube(FieldCtxPtr field);

enum class DiskStyle {
  Coarse,  // minimal CW structure: one outer loop, one stem + loop per hole
  Frame,   // quad/hex frame around square holes, outer rectangle
};

/// Disk with k punctures (k = 0 gives a plain disk).  The marked puncture
/// faces keep their boundary cycles; the active faces omit them.
TwoComplex build_punctured_disk(int k, DiskStyle style, FieldCtxPtr field);

/// Plain w x h grid of unit squares (bounded mode), optionally with interior
/// cells removed as punctures; cells are indexed (x, y), 0-based.
TwoComplex build_grid_disk(int w, int h, FieldCtxPtr field,
                           const std::vector<std::pair<int, int>>& puncture_cells = {});

/// Poincare dual of a closed complex: faces become vertices, vertices
/// become faces, edge count is preserved.  Bounded input is rejected.
TwoComplex dual(const TwoComplex& g);

}  // namespace qsc
