#pragma once

#include <cstdint>
#include <vector>

#include "qsc/chain_complex.hpp"

namespace qsc {

/// First homology of a two-complex over its coefficient field.
struct HomologySummary {
  int rank_h1 = 0;
  std::uint64_t class_count = 1;  // (d^ell)^rank_h1
  std::vector<Chain> basis_cycles;
};

/// H1 = ker d1 / im d2 by Gaussian elimination over the field, with a
/// reduced-echelon kernel basis completed against the boundary image.
HomologySummary h1(const TwoComplex& g);

bool is_cycle(const TwoComplex& g, const Chain& c);

/// Whether c1 - c2 lies in the image of the face boundary map.
bool same_class(const TwoComplex& g, const Chain& c1, const Chain& c2);

/// Minimal-support straight cycle with the given winding numbers on a torus
/// builder (uses the recorded basis loops); falls back to the echelon H1
/// basis for other complexes.  All-zero winding gives the empty chain.
Chain cycle_representative(const TwoComplex& g, const std::vector<long long>& winding);

/// Coordinates of a cycle over the reduced H1 basis, or failure if the
/// chain is not a cycle.
struct ClassCoordinates {
  bool ok = false;
  std::vector<FieldElement> coords;
};
ClassCoordinates class_coordinates(const TwoComplex& g, const Chain& c);

// Dense field-valued matrices, row-major; shared by homology and the
// stabilizer rank computations.
namespace linalg {

using Matrix = std::vector<std::vector<FieldElement>>;

/// In-place row echelon; returns rank.  Pivots take the first nonzero entry
/// in row order, so results are deterministic.
int row_echelon(const FieldCtx& f, Matrix& m);

/// Nullspace basis (as rows) of m, reduced echelon form.
Matrix nullspace(const FieldCtx& f, const Matrix& m);

/// Whether b is in the column span of m (m given as columns).
bool in_column_span(const FieldCtx& f, const Matrix& columns, const std::vector<FieldElement>& b);

}  // namespace linalg

}  // namespace qsc
