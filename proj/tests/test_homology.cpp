#include <doctest.h>

#include "qsc/homology.hpp"

using namespace qsc;

TEST_CASE("first homology ranks") {
  SUBCASE("torus has rank 2 for every size and field") {
    for (int m : {1, 2, 3})
      for (int d : {2, 3, 5}) {
        auto f = make_field(d);
        HomologySummary s = h1(build_torus_square(m, f));
        CHECK(s.rank_h1 == 2);
        CHECK(s.class_count == static_cast<std::uint64_t>(d) * d);
      }
    auto f4 = make_field(2, 2);
    HomologySummary s = h1(build_torus_square(2, f4));
    CHECK(s.rank_h1 == 2);
    CHECK(s.class_count == 16);
  }

  SUBCASE("sphere has rank 0") {
    auto f2 = make_field(2);
    CHECK(h1(build_sphere_cube(f2)).rank_h1 == 0);
  }

  SUBCASE("punctured disk has rank k") {
    for (int k : {0, 1, 2}) {
      auto f3 = make_field(3);
      CHECK(h1(build_punctured_disk(k, DiskStyle::Coarse, f3)).rank_h1 == k);
    }
    auto f3 = make_field(3);
    CHECK(h1(build_punctured_disk(1, DiskStyle::Frame, f3)).rank_h1 == 1);
    CHECK(h1(build_punctured_disk(2, DiskStyle::Frame, f3)).rank_h1 == 2);
    auto f2 = make_field(2);
    CHECK(h1(build_grid_disk(5, 3, f2, {{1, 1}, {3, 1}})).rank_h1 == 2);
    CHECK(h1(build_grid_disk(4, 3, f2)).rank_h1 == 0);
  }

  SUBCASE("honeycomb torus and its dual") {
    auto f3 = make_field(3);
    TwoComplex g = build_honeycomb_torus(2, 2, f3);
    CHECK(h1(g).rank_h1 == 2);
    CHECK(h1(dual(g)).rank_h1 == 2);
  }

  SUBCASE("basis cycles are cycles and independent") {
    auto f3 = make_field(3);
    TwoComplex g = build_torus_square(3, f3);
    HomologySummary s = h1(g);
    for (const auto& c : s.basis_cycles) CHECK(is_cycle(g, c));
    CHECK_FALSE(same_class(g, s.basis_cycles[0], s.basis_cycles[1]));
  }
}

TEST_CASE("cycle and class predicates") {
  auto f3 = make_field(3);
  TwoComplex g = build_torus_square(3, f3);

  SUBCASE("zero chain") {
    Chain zero = g.zero_chain(1);
    CHECK(is_cycle(g, zero));
    Chain face = g.zero_chain(2);
    face.coeffs[4] = f3->one();
    CHECK(same_class(g, zero, boundary(g, face)));
  }

  SUBCASE("row-shifted horizontal loops are homologous") {
    // Shifting the straight loop one row down changes it by the boundary of
    // the row of faces in between.
    Chain row0 = g.zero_chain(1);
    Chain row1 = g.zero_chain(1);
    for (int c = 0; c < 3; ++c) {
      row0.coeffs[c] = f3->one();          // h(0, c)
      row1.coeffs[3 + c] = f3->one();      // h(1, c)
    }
    CHECK(is_cycle(g, row0));
    CHECK(is_cycle(g, row1));
    CHECK(same_class(g, row0, row1));
  }

  SUBCASE("horizontal and vertical loops are not homologous") {
    Chain h = cycle_representative(g, {1, 0});
    Chain v = cycle_representative(g, {0, 1});
    CHECK_FALSE(same_class(g, h, v));
  }

  SUBCASE("non-cycles are rejected") {
    Chain c = g.edge_chain({{0, f3->one()}});
    CHECK_FALSE(is_cycle(g, c));
    CHECK_THROWS_AS(same_class(g, c, g.zero_chain(1)), ValidationError);
  }
}

TEST_CASE("cycle representatives") {
  auto f3 = make_field(3);
  TwoComplex g = build_torus_square(2, f3);

  Chain w10 = cycle_representative(g, {1, 0});
  CHECK(w10.support_size() == 2);
  for (auto c : w10.coeffs)
    if (c.idx != 0) CHECK(c == f3->one());
  CHECK(is_cycle(g, w10));

  CHECK(cycle_representative(g, {0, 0}).is_zero());

  // Scaling the loop scales the chain.
  Chain w20 = cycle_representative(g, {2, 0});
  CHECK(w20.coeffs == chain_scale(g, f3->from_int(2), w10).coeffs);

  // Distinct scalings land in distinct classes.
  CHECK_FALSE(same_class(g, w10, w20));
  CHECK_FALSE(same_class(g, w10, g.zero_chain(1)));
}

TEST_CASE("class coordinates") {
  auto f3 = make_field(3);
  TwoComplex g = build_torus_square(2, f3);
  HomologySummary s = h1(g);
  ClassCoordinates cc = class_coordinates(g, s.basis_cycles[0]);
  REQUIRE(cc.ok);
  CHECK(cc.coords[0] == f3->one());
  CHECK(cc.coords[1] == f3->zero());

  Chain mixed = chain_add(g, s.basis_cycles[0], chain_scale(g, f3->from_int(2), s.basis_cycles[1]));
  ClassCoordinates cm = class_coordinates(g, mixed);
  REQUIRE(cm.ok);
  CHECK(cm.coords[0] == f3->one());
  CHECK(cm.coords[1] == f3->from_int(2));

  Chain non_cycle = g.edge_chain({{0, f3->one()}});
  CHECK_FALSE(class_coordinates(g, non_cycle).ok);
}

TEST_CASE("same_class is an equivalence relation (spot check)") {
  auto f2 = make_field(2);
  TwoComplex g = build_torus_square(2, f2);
  HomologySummary s = h1(g);
  Chain a = s.basis_cycles[0];
  Chain face = g.zero_chain(2);
  face.coeffs[0] = f2->one();
  Chain b = chain_add(g, a, boundary(g, face));
  face.coeffs[1] = f2->one();
  Chain c = chain_add(g, a, boundary(g, face));
  CHECK(same_class(g, a, a));
  CHECK(same_class(g, a, b));
  CHECK(same_class(g, b, a));
  CHECK(same_class(g, b, c));
  CHECK(same_class(g, a, c));
}

TEST_CASE("extension-field homology") {
  auto f4 = make_field(2, 2);
  TwoComplex g = build_punctured_disk(2, DiskStyle::Coarse, f4);
  HomologySummary s = h1(g);
  CHECK(s.rank_h1 == 2);
  CHECK(s.class_count == 16);  // (d^ell)^rank
}
