#include <doctest.h>

#include <cmath>

#include "qsc/homology.hpp"
#include "qsc/protocols.hpp"

using namespace qsc;

namespace {

std::shared_ptr<StabilizerCode> torus_code(int m, int d) {
  auto f = make_field(d);
  return std::make_shared<StabilizerCode>(std::make_shared<TwoComplex>(build_torus_square(m, f)));
}

DenseState class_superposition(const StabilizerCode& code, const Chain& omega,
                               const std::vector<cxd>& alpha) {
  // sum_j alpha_j pi |j omega>, the projector-route oracle.
  const TwoComplex& g = code.complex();
  const FieldCtx& f = g.field();
  DenseState acc(g.field_ptr(), g.edge_count());
  for (int j = 0; j < f.d(); ++j) {
    DenseState term = DenseState::from_chain(g, chain_scale(g, f.from_int(j), omega));
    apply_code_projector(code, term);
    for (std::uint64_t i = 0; i < acc.dim(); ++i) acc.amp(i) += alpha[j] * term.amp(i);
  }
  acc.normalize();
  return acc;
}

}  // namespace

TEST_CASE("storage") {
  auto code = torus_code(2, 3);
  const TwoComplex& g = code->complex();
  Chain omega = cycle_representative(g, {1, 0});

  SUBCASE("vacuum amplitudes store the reference class") {
    StoreResult r = store_cycle_superposition(*code, {1.0, 0.0, 0.0}, omega, Rng(1));
    CHECK(r.fidelity_vs_projector == doctest::Approx(1.0).epsilon(1e-9));
    DenseState ref = DenseState::zero_state(g.field_ptr(), g.edge_count());
    apply_code_projector(*code, ref);
    ref.normalize();
    CHECK(fidelity(r.state, ref) == doctest::Approx(1.0).epsilon(1e-9));
  }

  SUBCASE("qubit plus state, fidelity against the projector oracle") {
    auto code2 = torus_code(2, 2);
    Chain w = cycle_representative(code2->complex(), {1, 0});
    double inv = 1.0 / std::sqrt(2.0);
    StoreResult r = store_cycle_superposition(*code2, {inv, inv}, w, Rng(2));
    CHECK(r.fidelity_vs_projector == doctest::Approx(1.0).epsilon(1e-9));
  }

  SUBCASE("relative phases match the class expansion") {
    std::vector<cxd> alpha = {cxd{0.2, 0.3}, cxd{-0.4, 0.5}, cxd{0.6, -0.1}};
    StoreResult r = store_cycle_superposition(*code, alpha, omega, Rng(3));
    DenseState oracle = class_superposition(*code, omega, alpha);
    CHECK(fidelity(r.state, oracle) == doctest::Approx(1.0).epsilon(1e-9));
  }

  SUBCASE("output sits in the full code space for every generator") {
    StoreResult r = store_cycle_superposition(*code, {cxd{0.6, 0}, cxd{0, 0.8}, cxd{0, 0}}, omega,
                                              Rng(4));
    for (const auto& gen : code->generators())
      CHECK(std::abs(pauli_expectation(r.state, gen) - cxd{1.0, 0.0}) < 1e-9);
  }

  SUBCASE("trivial cycles are rejected") {
    CHECK_THROWS_AS(store_cycle_superposition(*code, {1, 0, 0}, g.zero_chain(1), Rng(5)),
                    ValidationError);
    Chain face = g.zero_chain(2);
    face.coeffs[0] = g.field().one();
    CHECK_THROWS_AS(store_cycle_superposition(*code, {1, 0, 0}, boundary(g, face), Rng(5)),
                    ValidationError);
  }

  SUBCASE("a cycle covering every edge blocks the measurement order") {
    Chain all = g.zero_chain(1);
    for (auto& c : all.coeffs) c = g.field().one();
    REQUIRE(is_cycle(g, all));
    CHECK_THROWS_WITH_AS(
        store_cycle_superposition(*code, {1, 0, 0}, all, Rng(6)),
        doctest::Contains("no admissible plaquette measurement order"), ValidationError);
  }

  SUBCASE("transcripts replay byte for byte") {
    std::vector<cxd> alpha = {cxd{0.3, 0.1}, cxd{0.2, -0.7}, cxd{0.5, 0.0}};
    StoreResult a = store_cycle_superposition(*code, alpha, omega, Rng(42));
    StoreResult b = store_cycle_superposition(*code, alpha, omega, Rng(42));
    CHECK(transcript_to_json(a.transcript) == transcript_to_json(b.transcript));
    StoreResult c = store_cycle_superposition(*code, alpha, omega, Rng(43));
    // Different seed may or may not change outcomes, but the seed is recorded.
    CHECK(transcript_to_json(a.transcript) != transcript_to_json(c.transcript));
  }

  SUBCASE("storage works on a punctured disk") {
    auto f3 = make_field(3);
    auto dcode = std::make_shared<StabilizerCode>(
        std::make_shared<TwoComplex>(build_punctured_disk(1, DiskStyle::Frame, f3)));
    auto pairs = logical_operators(*dcode);
    Chain w = dcode->complex().zero_chain(1);
    for (int e = 0; e < dcode->n(); ++e) w.coeffs[e] = pairs[0].x_bar.x[e];
    REQUIRE(is_cycle(dcode->complex(), w));
    StoreResult r = store_cycle_superposition(*dcode, {cxd{0.8, 0}, cxd{0, 0.6}, cxd{0, 0}}, w,
                                              Rng(7));
    CHECK(r.fidelity_vs_projector == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("retrieval") {
  auto code = torus_code(2, 3);
  const TwoComplex& g = code->complex();
  Chain omega = cycle_representative(g, {1, 0});
  auto pairs = logical_operators(*code);

  SUBCASE("logical shift maps class states to the next class") {
    // X on omega sends pi|j w> to pi|(j+1) w> exactly.
    DenseState s0 = class_superposition(*code, omega, {1, 0, 0});
    DenseState s1 = class_superposition(*code, omega, {0, 1, 0});
    DenseState shifted = s0;
    shifted.apply_pauli(pairs[0].x_bar);
    CHECK(fidelity(shifted, s1) == doctest::Approx(1.0).epsilon(1e-9));
  }

  SUBCASE("vacuum round trip is exact") {
    StoreResult stored = store_cycle_superposition(*code, {1, 0, 0}, omega, Rng(10));
    RetrieveResult r = retrieve_to_ancilla(*code, stored.state, pairs[0], Rng(11));
    CHECK(r.extraction_norm == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::abs(r.ancilla_amplitudes[0]) == doctest::Approx(1.0).epsilon(1e-9));
  }

  SUBCASE("random amplitudes round trip with unit fidelity") {
    Rng master(20240902);
    for (int trial = 0; trial < 5; ++trial) {
      Rng sub = master.substream(trial);
      std::vector<cxd> alpha(3);
      for (auto& x : alpha) x = cxd{sub.uniform() - 0.5, sub.uniform() - 0.5};
      StoreResult stored = store_cycle_superposition(*code, alpha, omega, sub);
      RetrieveResult r = retrieve_to_ancilla(*code, stored.state, pairs[0], sub);
      double n2 = 0.0;
      for (const auto& x : alpha) n2 += std::norm(x);
      cxd overlap = 0.0;
      for (int j = 0; j < 3; ++j)
        overlap += std::conj(alpha[j] / std::sqrt(n2)) * r.ancilla_amplitudes[j];
      CHECK(std::norm(overlap) == doctest::Approx(1.0).epsilon(1e-9));
    }
  }

  SUBCASE("states outside the code space are rejected before the swap") {
    DenseState bad = DenseState::zero_state(g.field_ptr(), g.edge_count());
    CHECK_THROWS_WITH_AS(retrieve_to_ancilla(*code, bad, pairs[0], Rng(1)),
                         doctest::Contains("state outside code space"), ValidationError);
  }
}

TEST_CASE("dyons") {
  auto f3 = make_field(3);
  auto code = torus_code(2, 3);

  SUBCASE("creation puts opposite charges at the edge endpoints") {
    DyonSystem sys = make_dyon_vacuum(code, 1.0, 1.0);
    auto [p, q] = create_dyon_pair(sys, 0, f3->from_int(1), f3->from_int(0));
    CHECK(measured_charge(sys, sys.particles[p].vertex) == 1);
    CHECK(measured_charge(sys, sys.particles[q].vertex) == 2);
    CHECK(excitation_energy(sys) ==
          doctest::Approx(2.0 * dyon_mass(*f3, 1.0, 1.0, f3->from_int(1), f3->zero())).epsilon(1e-9));
  }

  SUBCASE("flux creation and the mass formula") {
    DyonSystem sys = make_dyon_vacuum(code, 1.0, 1.0);
    auto [p, q] = create_dyon_pair(sys, 5, f3->from_int(1), f3->from_int(2));
    CHECK(measured_flux(sys, sys.particles[p].face) == 2);
    CHECK(measured_flux(sys, sys.particles[q].face) == 1);
    double expect = dyon_mass(*f3, 1.0, 1.0, f3->from_int(1), f3->from_int(2)) +
                    dyon_mass(*f3, 1.0, 1.0, f3->from_int(2), f3->from_int(1));
    CHECK(excitation_energy(sys) == doctest::Approx(expect).epsilon(1e-9));
  }

  SUBCASE("pair creation energy for the paper's d = 3 charge example") {
    DyonSystem sys = make_dyon_vacuum(code, 1.0, 1.0);
    create_dyon_pair(sys, 2, f3->one(), f3->zero());
    CHECK(excitation_energy(sys) == doctest::Approx(6.0).epsilon(1e-9));  // 2 m_(1,0) = 2 * 3
  }

  SUBCASE("zero labels are a no-op") {
    DyonSystem sys = make_dyon_vacuum(code, 1.0, 1.0);
    DenseState before = sys.state;
    create_dyon_pair(sys, 0, f3->zero(), f3->zero());
    CHECK(fidelity(before, sys.state) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(excitation_energy(sys) == doctest::Approx(0.0).epsilon(1e-9));
  }

  SUBCASE("fusion adds labels mod d") {
    DyonSystem sys = make_dyon_vacuum(code, 1.0, 1.0);
    auto [p1, q1] = create_dyon_pair(sys, 0, f3->from_int(1), f3->zero());
    auto [p2, q2] = create_dyon_pair(sys, 0, f3->from_int(2), f3->zero());
    // Identical edge: both particles sit at the same head vertex.
    int merged = fuse_dyons(sys, p1, p2);
    CHECK(sys.particles[merged].charge == f3->zero());  // 1 + 2 = 0 mod 3
    CHECK(measured_charge(sys, sys.particles[merged].vertex) == 0);
  }

  SUBCASE("transport moves the measured excitation") {
    DyonSystem sys = make_dyon_vacuum(code, 1.0, 1.0);
    auto [p, q] = create_dyon_pair(sys, 4 + 1, f3->from_int(2), f3->from_int(1));  // vert(0,1)
    int v0 = sys.particles[p].vertex;
    int f0 = sys.particles[p].face;
    move_dyon_step(sys, p, 3);  // h(1,1) from v(1,1)
    CHECK(measured_charge(sys, v0) == 0);
    CHECK(measured_flux(sys, f0) == 0);
    CHECK(measured_charge(sys, sys.particles[p].vertex) == 2);
    CHECK(measured_flux(sys, sys.particles[p].face) == 1);
    // Total energy unchanged: transport does not create particles.
    double expect = dyon_mass(*f3, 1.0, 1.0, f3->from_int(2), f3->from_int(1)) +
                    dyon_mass(*f3, 1.0, 1.0, f3->from_int(1), f3->from_int(2));
    CHECK(excitation_energy(sys) == doctest::Approx(expect).epsilon(1e-9));
  }

  SUBCASE("a contractible round trip followed by annihilation restores the state exactly") {
    DyonSystem sys = make_dyon_vacuum(code, 1.0, 1.0);
    DenseState before = sys.state;
    auto [p, q] = create_dyon_pair(sys, 4 + 1, f3->from_int(1), f3->from_int(2));
    // Drag the particle around the boundary of one enclosed-nothing region
    // and back to its partner, then annihilate across the creation edge.
    move_dyon_step(sys, p, 3);       // to (v(1,0)...), h(1,1)
    move_dyon_step(sys, p, 3);       // and back
    annihilate_pair(sys, p, q, 4 + 1);
    CHECK(sys.particles.empty());
    cxd overlap = inner_product(before, sys.state);
    CHECK(std::abs(overlap - cxd{1.0, 0.0}) < 1e-9);
  }

  SUBCASE("conjugation negates every label") {
    DyonSystem sys = make_dyon_vacuum(code, 1.0, 1.0);
    auto [p, q] = create_dyon_pair(sys, 5, f3->from_int(1), f3->from_int(2));
    int v = sys.particles[p].vertex, fc = sys.particles[p].face;
    conjugate_labels(sys);
    CHECK(sys.particles[p].charge == f3->from_int(2));
    CHECK(sys.particles[p].flux == f3->from_int(1));
    CHECK(measured_charge(sys, v) == 2);
    CHECK(measured_flux(sys, fc) == 1);
    // Total charge and flux still vanish.
    FieldElement tc = f3->zero(), tf = f3->zero();
    for (const auto& part : sys.particles) {
      tc = f3->add(tc, part.charge);
      tf = f3->add(tf, part.flux);
    }
    CHECK(tc == f3->zero());
    CHECK(tf == f3->zero());
  }
}

TEST_CASE("braiding statistics") {
  SUBCASE("winding sweep, both routes, d = 2 and 3") {
    for (int d : {2, 3}) {
      auto f = make_field(d);
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
          for (int a2 = 0; a2 < d; ++a2)
            for (int b2 = 0; b2 < d; ++b2) {
              BraidResult r = braid_winding(f, f->from_int(a), f->from_int(b), f->from_int(a2),
                                            f->from_int(b2));
              CHECK(r.symbolic_exponent == r.expected_exponent);
              CHECK(r.dense_exponent == r.expected_exponent);
              CHECK(r.dense_overlap_error < 1e-10);
            }
    }
  }

  SUBCASE("the paper's d = 2 charge-around-flux example") {
    auto f2 = make_field(2);
    BraidResult r = braid_winding(f2, f2->one(), f2->zero(), f2->zero(), f2->one());
    CHECK(r.expected_exponent == 1);  // phase -1
    CHECK(r.symbolic_exponent == 1);
    CHECK(r.dense_exponent == 1);
  }

  SUBCASE("winding around nothing is trivial") {
    auto f3 = make_field(3);
    BraidResult r = braid_winding(f3, f3->from_int(2), f3->one(), f3->zero(), f3->zero());
    CHECK(r.symbolic_exponent == 0);
    CHECK(r.dense_exponent == 0);
  }

  SUBCASE("winding exponent is bilinear in both label pairs") {
    auto f5 = make_field(5);
    auto wind = [&](int a, int b, int a2, int b2) {
      return braid_winding(f5, f5->from_int(a), f5->from_int(b), f5->from_int(a2), f5->from_int(b2))
          .symbolic_exponent;
    };
    CHECK((wind(1, 2, 1, 3) + wind(2, 1, 1, 3)) % 5 == wind(3, 3, 1, 3));
    CHECK((wind(1, 2, 1, 3) + wind(1, 2, 2, 1)) % 5 == wind(1, 2, 3, 4));
  }

  SUBCASE("exchange and spin sweeps") {
    for (int d : {2, 3}) {
      auto f = make_field(d);
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
          BraidResult ex = braid_exchange(f, f->from_int(a), f->from_int(b));
          CHECK(ex.symbolic_exponent == ex.expected_exponent);
          CHECK(ex.dense_exponent == ex.expected_exponent);
          BraidResult sp = braid_spin(f, f->from_int(a), f->from_int(b));
          CHECK(sp.symbolic_exponent == sp.expected_exponent);
          CHECK(sp.dense_exponent == sp.expected_exponent);
        }
    }
  }

  SUBCASE("winding is path independent within the homotopy class") {
    // Same enclosed excitation, two different contractible deformation
    // regions: one face against one face plus a second empty face.
    auto f3 = make_field(3);
    auto complex = std::make_shared<TwoComplex>(build_torus_square(2, f3));
    auto code = std::make_shared<StabilizerCode>(complex);
    const TwoComplex& g = *complex;
    DyonSystem sys = make_dyon_vacuum(code, 1.0, 1.0);
    auto [pt, pbar] = create_dyon_pair(sys, 4 + 1, f3->from_int(2), f3->from_int(1));
    create_dyon_pair(sys, 0, f3->one(), f3->one());
    const DyonParticle& target = sys.particles[pt];

    FieldElement a = f3->one(), b = f3->one();
    PauliOp small_loop = multiply(pauli_pow(face_operator(g, target.face), -1),
                                  pauli_pow(vertex_operator(g, target.vertex), 1));
    // Deform the charge loop across face f(1,1) (empty) and the flux loop
    // across vertex v(0,1) (the antiparticle of the target sits at v(0,1)...
    // use v(1,0), which is empty).
    PauliOp big_loop = multiply(
        multiply(pauli_pow(face_operator(g, target.face), -1), pauli_pow(face_operator(g, 3), -1)),
        multiply(pauli_pow(vertex_operator(g, target.vertex), 1),
                 pauli_pow(vertex_operator(g, 2), 1)));
    (void)a;
    (void)b;
    DenseState s1 = sys.state;
    s1.apply_pauli(small_loop);
    DenseState s2 = sys.state;
    s2.apply_pauli(big_loop);
    cxd o1 = inner_product(sys.state, s1);
    cxd o2 = inner_product(sys.state, s2);
    CHECK(std::abs(o1 - o2) < 1e-10);
  }

  SUBCASE("fifty seeded random d = 5 winding cases") {
    auto f5 = make_field(5);
    Rng rng(555);
    for (int trial = 0; trial < 50; ++trial) {
      int a = static_cast<int>(rng.next_u64() % 5), b = static_cast<int>(rng.next_u64() % 5);
      int a2 = static_cast<int>(rng.next_u64() % 5), b2 = static_cast<int>(rng.next_u64() % 5);
      BraidResult r =
          braid_winding(f5, f5->from_int(a), f5->from_int(b), f5->from_int(a2), f5->from_int(b2));
      CHECK(r.symbolic_exponent == r.expected_exponent);
      CHECK(r.dense_exponent == r.expected_exponent);
    }
  }
}

TEST_CASE("interferometer") {
  SUBCASE("paper worked example, d = 2") {
    auto f2 = make_field(2);
    InterferometerReport rep = run_interferometer(f2, {0, 1}, {1, 0}, 0.0, 0, Rng(7));
    CHECK(rep.sigma_x_tau == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(rep.sigma_y_tau == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(rep.sigma_x_one == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(rep.sigma_y_one == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(rep.phi_top_estimate == doctest::Approx(rep.phi_top_exact).epsilon(1e-10));
    REQUIRE(rep.dense_backend);
    // The faithful expectation keeps the return-path interference, which for
    // d = 2 doubles the signal: cos(chi + phi) rather than cos(chi + phi)/2.
    CHECK(rep.full_sigma_x_tau == doctest::Approx(2.0 * rep.sigma_x_tau).epsilon(1e-10));
    CHECK(rep.full_sigma_x_one == doctest::Approx(2.0 * rep.sigma_x_one).epsilon(1e-10));
  }

  SUBCASE("for odd d the faithful and two-path expectations coincide") {
    auto f3 = make_field(3);
    InterferometerReport rep = run_interferometer(f3, {1, 0}, {0, 1}, 0.3, 0, Rng(7));
    REQUIRE(rep.dense_backend);
    CHECK(rep.full_sigma_x_tau == doctest::Approx(rep.sigma_x_tau).epsilon(1e-10));
    CHECK(rep.full_sigma_y_tau == doctest::Approx(rep.sigma_y_tau).epsilon(1e-10));
    CHECK(rep.full_sigma_x_one == doctest::Approx(rep.sigma_x_one).epsilon(1e-10));
    CHECK(rep.full_sigma_y_one == doctest::Approx(rep.sigma_y_one).epsilon(1e-10));
  }

  SUBCASE("formulas across d, probes, targets, and chi") {
    struct Case {
      int d;
      std::pair<int, int> probe, target;
      double chi;
    };
    std::vector<Case> cases = {
        {2, {0, 1}, {1, 0}, 0.0}, {2, {1, 0}, {0, 1}, 0.7},  {2, {1, 1}, {1, 1}, 0.3},
        {3, {1, 0}, {0, 1}, 0.0}, {3, {2, 1}, {1, 2}, 0.5},  {3, {0, 2}, {2, 0}, 1.1},
        {5, {2, 1}, {1, 3}, 0.5}, {5, {1, 0}, {0, 1}, 0.0},  {5, {4, 3}, {2, 2}, 2.0},
        {5, {0, 1}, {3, 0}, 0.9},
    };
    for (const auto& c : cases) {
      auto f = make_field(c.d);
      InterferometerReport rep = run_interferometer(f, c.probe, c.target, c.chi, 0, Rng(7));
      int exponent = ((c.probe.second * c.target.first + c.probe.first * c.target.second) % c.d +
                      c.d) % c.d;
      double phi = 2.0 * std::acos(-1.0) * exponent / c.d;
      CHECK(rep.sigma_x_tau == doctest::Approx(0.5 * std::cos(c.chi + phi)).epsilon(1e-10));
      CHECK(rep.sigma_y_tau == doctest::Approx(0.5 * std::sin(c.chi + phi)).epsilon(1e-10));
      CHECK(rep.sigma_x_one == doctest::Approx(0.5 * std::cos(c.chi)).epsilon(1e-10));
      CHECK(rep.sigma_y_one == doctest::Approx(0.5 * std::sin(c.chi)).epsilon(1e-10));
      double diff = std::remainder(rep.phi_top_estimate - phi, 2.0 * std::acos(-1.0));
      CHECK(std::abs(diff) < 1e-10);
    }
  }

  SUBCASE("trivial target separates nothing") {
    auto f3 = make_field(3);
    InterferometerReport rep = run_interferometer(f3, {1, 0}, {0, 0}, 0.4, 0, Rng(7));
    CHECK(rep.phi_top_exact == doctest::Approx(0.0));
    CHECK(rep.sigma_x_tau == doctest::Approx(rep.sigma_x_one).epsilon(1e-12));
    CHECK(rep.sigma_y_tau == doctest::Approx(rep.sigma_y_one).epsilon(1e-12));
  }

  SUBCASE("sampling converges and replays deterministically") {
    auto f2 = make_field(2);
    InterferometerReport a = run_interferometer(f2, {0, 1}, {1, 0}, 0.0, 4000, Rng(99));
    InterferometerReport b = run_interferometer(f2, {0, 1}, {1, 0}, 0.0, 4000, Rng(99));
    CHECK(a.csv == b.csv);
    CHECK(a.sampled_sigma_x_tau == b.sampled_sigma_x_tau);
    double sigma = std::sqrt((1.0 - 0.25) / 4000.0);
    CHECK(std::abs(a.sampled_sigma_x_tau - a.sigma_x_tau) < 5.0 * sigma);
  }

  SUBCASE("the probe must be nontrivial") {
    auto f3 = make_field(3);
    CHECK_THROWS_WITH_AS(run_interferometer(f3, {0, 0}, {1, 0}, 0.0, 0, Rng(1)),
                         doctest::Contains("probe"), ValidationError);
  }

  SUBCASE("colliding custom geometry is rejected") {
    auto f3 = make_field(3);
    InterferometerGeometry geo;
    // Park the target right where the transported probe ends up.
    geo.probe_edge = 7;      // vert(0,1)
    geo.kick_edge = 4;       // h(1,1)
    geo.transport_edge = 11; // vert(1,2)
    geo.target_edge = 5;     // h(1,2): its head is the loop vertex v(1,0)...
    CHECK_THROWS_WITH_AS(run_interferometer(f3, {1, 1}, {1, 1}, 0.0, 0, Rng(1), 1 << 20, geo),
                         doctest::Contains("overlapping regions"), ValidationError);
  }
}
