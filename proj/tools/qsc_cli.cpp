// Command-line front end: builds complexes, runs the homology and code
// analyses, and drives the storage/braiding/interferometer protocols with
// reproducible JSON output (floats rendered with 17 significant digits).

#include <CLI11.hpp>

#include <complex>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "qsc/homology.hpp"
#include "qsc/json_io.hpp"
#include "qsc/protocols.hpp"

using namespace qsc;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitCapacity = 3;
constexpr int kExitParse = 4;

struct CommonOpts {
  std::string input;
  std::string builder;
  int m = 2;
  int rows = 1, cols = 1;
  int k = 1;
  std::string disk_style = "coarse";
  int grid_w = 3, grid_h = 3;
  std::string punctures;  // "x,y;x,y"
  int d = 2;
  int ell = 1;
  std::string modulus;  // "c0,c1,..."
  std::string output;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_output = true) {
  cmd->add_option("-i,--input", o.input, "complex file to load");
  cmd->add_option("--builder", o.builder, "torus | honeycomb | sphere-cube | disk | grid");
  cmd->add_option("--m", o.m, "torus side length");
  cmd->add_option("--rows", o.rows, "honeycomb rows");
  cmd->add_option("--cols", o.cols, "honeycomb columns");
  cmd->add_option("--k", o.k, "number of punctures");
  cmd->add_option("--style", o.disk_style, "disk style: coarse | frame");
  cmd->add_option("--w", o.grid_w, "grid width");
  cmd->add_option("--grid-h", o.grid_h, "grid height");
  cmd->add_option("--punctures", o.punctures, "grid puncture cells, e.g. 1,1;3,1");
  cmd->add_option("--d", o.d, "prime qudit dimension");
  cmd->add_option("--ell", o.ell, "field extension degree");
  cmd->add_option("--modulus", o.modulus, "modulus coefficients, low degree first");
  if (with_output) cmd->add_option("-o,--output", o.output, "write JSON here instead of stdout");
}

FieldCtxPtr field_from(const CommonOpts& o) {
  std::optional<std::vector<int>> modulus;
  if (!o.modulus.empty()) {
    std::vector<int> c;
    std::stringstream ss(o.modulus);
    std::string tok;
    while (std::getline(ss, tok, ',')) c.push_back(std::stoi(tok));
    modulus = c;
  }
  return make_field(o.d, o.ell, modulus);
}

std::shared_ptr<TwoComplex> complex_from(const CommonOpts& o) {
  if (!o.input.empty()) return std::make_shared<TwoComplex>(load_complex(o.input));
  FieldCtxPtr f = field_from(o);
  if (o.builder == "torus") return std::make_shared<TwoComplex>(build_torus_square(o.m, f));
  if (o.builder == "honeycomb")
    return std::make_shared<TwoComplex>(build_honeycomb_torus(o.rows, o.cols, f));
  if (o.builder == "sphere-cube") return std::make_shared<TwoComplex>(build_sphere_cube(f));
  if (o.builder == "disk") {
    DiskStyle style = o.disk_style == "frame" ? DiskStyle::Frame : DiskStyle::Coarse;
    return std::make_shared<TwoComplex>(build_punctured_disk(o.k, style, f));
  }
  if (o.builder == "grid") {
    std::vector<std::pair<int, int>> cells;
    if (!o.punctures.empty()) {
      std::stringstream ss(o.punctures);
      std::string tok;
      while (std::getline(ss, tok, ';')) {
        auto comma = tok.find(',');
        cells.push_back({std::stoi(tok.substr(0, comma)), std::stoi(tok.substr(comma + 1))});
      }
    }
    return std::make_shared<TwoComplex>(build_grid_disk(o.grid_w, o.grid_h, f, cells));
  }
  throw ValidationError("no input file and no recognised --builder");
}

void emit(const CommonOpts& o, const std::string& json) {
  if (o.output.empty()) {
    std::cout << json << "\n";
  } else {
    std::ofstream out(o.output);
    if (!out) throw ParseError("cannot write " + o.output);
    out << json << "\n";
  }
}

std::pair<int, int> parse_pair(const std::string& s) {
  auto comma = s.find(',');
  if (comma == std::string::npos) throw ParseError("expected a pair like 1,0");
  return {std::stoi(s.substr(0, comma)), std::stoi(s.substr(comma + 1))};
}

std::vector<cxd> parse_amplitudes(const std::string& s, int d) {
  std::vector<cxd> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    auto colon = tok.find(':');
    if (colon == std::string::npos)
      out.push_back(cxd{std::stod(tok), 0.0});
    else
      out.push_back(cxd{std::stod(tok.substr(0, colon)), std::stod(tok.substr(colon + 1))});
  }
  if (static_cast<int>(out.size()) != d)
    throw ParseError("amplitude vector must have exactly d entries");
  return out;
}

void write_pauli_table(JsonWriter& w, const std::vector<PauliOp>& ops) {
  w.begin_array();
  for (const auto& op : ops) w.value(to_string(op));
  w.end_array();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact desk-scale laboratory for qudit codes on two-complexes"};
  app.require_subcommand(1);

  // complex build|validate|dual
  auto* cx = app.add_subcommand("complex", "build, validate or dualize a complex");
  cx->require_subcommand(1);
  CommonOpts build_o, validate_o, dual_o;
  auto* cx_build = cx->add_subcommand("build", "construct a complex and serialize it");
  add_common(cx_build, build_o);
  auto* cx_validate = cx->add_subcommand("validate", "run the invariant suite");
  add_common(cx_validate, validate_o);
  auto* cx_dual = cx->add_subcommand("dual", "Poincare dual of a closed complex");
  add_common(cx_dual, dual_o);

  // homology
  CommonOpts hom_o;
  auto* hom = app.add_subcommand("homology", "first homology of a complex");
  add_common(hom, hom_o);

  // code params|identities
  auto* code_cmd = app.add_subcommand("code", "stabilizer code analyses");
  code_cmd->require_subcommand(1);
  CommonOpts params_o, ident_o;
  auto* code_params_cmd = code_cmd->add_subcommand("params", "code parameters and operator tables");
  add_common(code_params_cmd, params_o);
  auto* code_ident_cmd = code_cmd->add_subcommand("identities", "global product identities");
  add_common(code_ident_cmd, ident_o);

  // ground degeneracy|energy
  auto* ground_cmd = app.add_subcommand("ground", "dense ground-space analyses");
  ground_cmd->require_subcommand(1);
  CommonOpts gdeg_o, gen_o;
  double g_U = 1.0, g_h = 1.0;
  std::uint64_t g_cap = kDefaultAmplitudeCap, g_seed = 20240901;
  auto* ground_deg = ground_cmd->add_subcommand("degeneracy", "ground space dimension");
  ground_deg->set_help_flag("--help", "print help");
  add_common(ground_deg, gdeg_o);
  ground_deg->add_option("--U", g_U, "star coupling");
  ground_deg->add_option("--h", g_h, "plaquette coupling");
  ground_deg->add_option("--cap", g_cap, "amplitude cap");
  ground_deg->add_option("--seed", g_seed, "probe seed");
  auto* ground_en = ground_cmd->add_subcommand("energy", "ground energy");
  ground_en->set_help_flag("--help", "print help");
  add_common(ground_en, gen_o);
  ground_en->add_option("--U", g_U, "star coupling");
  ground_en->add_option("--h", g_h, "plaquette coupling");
  ground_en->add_option("--cap", g_cap, "amplitude cap");

  // protocol store|retrieve|braid|interfere
  auto* proto = app.add_subcommand("protocol", "operational procedures");
  proto->require_subcommand(1);
  CommonOpts store_o, retr_o, braid_o, intf_o;
  std::string alpha_str = "1,0,0";
  std::string winding_str = "1,0";
  std::uint64_t p_seed = 7, p_cap = kDefaultAmplitudeCap;
  auto* p_store = proto->add_subcommand("store", "write a dit into the code space");
  add_common(p_store, store_o);
  p_store->add_option("--alpha", alpha_str, "d amplitudes, re or re:im, comma separated");
  p_store->add_option("--winding", winding_str, "winding numbers of the storage cycle");
  p_store->add_option("--seed", p_seed, "measurement seed");
  p_store->add_option("--cap", p_cap, "amplitude cap");
  auto* p_retr = proto->add_subcommand("retrieve", "store then swap back out to an ancilla");
  add_common(p_retr, retr_o);
  p_retr->add_option("--alpha", alpha_str, "d amplitudes, re or re:im, comma separated");
  p_retr->add_option("--winding", winding_str, "winding numbers of the storage cycle");
  p_retr->add_option("--seed", p_seed, "measurement seed");
  p_retr->add_option("--cap", p_cap, "amplitude cap");

  std::string braid_process = "wind";
  std::string braid_a = "1,0", braid_a2 = "0,1";
  auto* p_braid = proto->add_subcommand("braid", "anyon braiding phases, two routes");
  add_common(p_braid, braid_o);
  p_braid->add_option("--process", braid_process, "wind | exchange | spin");
  p_braid->add_option("--labels", braid_a, "dyon labels a,b");
  p_braid->add_option("--labels2", braid_a2, "second dyon labels (winding only)");
  p_braid->add_option("--cap", p_cap, "amplitude cap");

  std::string probe_str = "0,1", target_str = "1,0";
  double chi = 0.0;
  long shots = 0;
  bool exact_only = false;
  std::string csv_path;
  auto* p_intf = proto->add_subcommand("interfere", "two-path statistics interferometer");
  add_common(p_intf, intf_o);
  p_intf->add_option("--probe", probe_str, "probe labels r,s");
  p_intf->add_option("--target", target_str, "target labels a,b");
  p_intf->add_option("--chi", chi, "injected dynamical phase");
  p_intf->add_option("--shots", shots, "shots per stream (sampling mode)");
  p_intf->add_flag("--exact", exact_only, "exact expectations only, no sampling");
  p_intf->add_option("--seed", p_seed, "shot seed");
  p_intf->add_option("--cap", p_cap, "amplitude cap");
  p_intf->add_option("--csv", csv_path, "write per-shot outcomes to this file");

  try {
    app.parse(argc, argv);

    if (*cx_build) {
      auto g = complex_from(build_o);
      g->validate();
      emit(build_o, serialize_complex(*g));
      return kExitOk;
    }
    if (*cx_validate) {
      auto g = complex_from(validate_o);
      std::vector<std::string> warnings = g->validate();
      JsonWriter w;
      w.begin_object();
      w.key("valid").value(true);
      w.key("mode").value(g->mode() == ComplexMode::Closed ? "closed" : "bounded");
      w.key("vertices").value(g->vertex_count());
      w.key("edges").value(g->edge_count());
      w.key("faces").value(static_cast<int>(g->active_faces().size()));
      w.key("punctures").value(static_cast<int>(g->punctures().size()));
      w.key("euler_characteristic").value(g->euler_characteristic());
      w.key("warnings").begin_array();
      for (const auto& s : warnings) w.value(s);
      w.end_array();
      w.end_object();
      emit(validate_o, w.str());
      return kExitOk;
    }
    if (*cx_dual) {
      auto g = complex_from(dual_o);
      TwoComplex dg = dual(*g);
      dg.validate();
      emit(dual_o, serialize_complex(dg));
      return kExitOk;
    }
    if (*hom) {
      auto g = complex_from(hom_o);
      g->validate();
      HomologySummary s = h1(*g);
      JsonWriter w;
      w.begin_object();
      w.key("rank_h1").value(s.rank_h1);
      w.key("class_count").value(s.class_count);
      w.key("basis").begin_array();
      for (const auto& cyc : s.basis_cycles) {
        w.begin_array();
        for (int e = 0; e < g->edge_count(); ++e) {
          if (cyc.coeffs[e].idx == 0) continue;
          w.begin_array();
          w.value(g->edges()[e].id);
          w.value(static_cast<int>(cyc.coeffs[e].idx));
          w.end_array();
        }
        w.end_array();
      }
      w.end_array();
      w.end_object();
      emit(hom_o, w.str());
      return kExitOk;
    }
    if (*code_params_cmd) {
      auto g = complex_from(params_o);
      g->validate();
      StabilizerCode code(g);
      CodeParameters params = code_parameters(code);
      JsonWriter w;
      w.begin_object();
      w.key("n").value(params.n);
      w.key("code_dim").value(params.code_dim);
      w.key("generator_rank").value(params.generator_rank);
      w.key("vertex_generators");
      write_pauli_table(w, code.vertex_gens());
      w.key("face_generators");
      write_pauli_table(w, code.face_gens());
      w.key("logicals").begin_array();
      for (const auto& pair : logical_operators(code)) {
        w.begin_object();
        w.key("x").value(to_string(pair.x_bar));
        w.key("z").value(to_string(pair.z_bar));
        w.end_object();
      }
      w.end_array();
      w.key("warnings").begin_array();
      for (const auto& s : code.warnings()) w.value(s);
      w.end_array();
      w.end_object();
      emit(params_o, w.str());
      return kExitOk;
    }
    if (*code_ident_cmd) {
      auto g = complex_from(ident_o);
      g->validate();
      StabilizerCode code(g);
      GlobalIdentityReport rep = global_identities(code);
      JsonWriter w;
      w.begin_object();
      w.key("vertex_product_is_identity").value(rep.vertex_product_is_identity);
      w.key("face_identity_holds").value(rep.face_identity_holds);
      w.key("face_identity_rhs").value(rep.face_identity_rhs);
      w.end_object();
      emit(ident_o, w.str());
      if (!rep.vertex_product_is_identity || !rep.face_identity_holds) return kExitValidation;
      return kExitOk;
    }
    if (*ground_deg || *ground_en) {
      const CommonOpts& o = *ground_deg ? gdeg_o : gen_o;
      auto g = complex_from(o);
      g->validate();
      StabilizerCode code(g);
      GroundSpaceOptions opts;
      opts.U = g_U;
      opts.h = g_h;
      opts.cap = g_cap;
      opts.seed = g_seed;
      GroundSpaceReport rep = analyze_ground_space(code, opts);
      JsonWriter w;
      w.begin_object();
      w.key("ground_energy").value(rep.ground_energy);
      w.key("expected_dimension").value(rep.expected_dimension);
      w.key("dense_dimension").value(rep.dense_dimension);
      w.key("eigensolve_dimension").value(rep.eigensolve_dimension);
      w.key("max_eigen_residual").value(rep.max_eigen_residual);
      w.key("seed").value(static_cast<std::uint64_t>(g_seed));
      w.end_object();
      emit(o, w.str());
      if (rep.dense_dimension != static_cast<int>(rep.expected_dimension)) return kExitValidation;
      return kExitOk;
    }
    if (*p_store || *p_retr) {
      const CommonOpts& o = *p_store ? store_o : retr_o;
      CommonOpts oo = o;
      if (oo.builder.empty() && oo.input.empty()) {
        oo.builder = "torus";
      }
      auto g = complex_from(oo);
      g->validate();
      auto code = std::make_shared<StabilizerCode>(g);
      FieldCtxPtr f = g->field_ptr();
      std::vector<cxd> alpha = parse_amplitudes(alpha_str, f->d());
      std::vector<long long> winding;
      {
        std::stringstream ss(winding_str);
        std::string tok;
        while (std::getline(ss, tok, ',')) winding.push_back(std::stoll(tok));
      }
      Chain omega = cycle_representative(*g, winding);
      StoreResult stored = store_cycle_superposition(*code, alpha, omega, Rng(p_seed), p_cap);
      JsonWriter w;
      w.begin_object();
      w.key("seed").value(static_cast<std::uint64_t>(p_seed));
      w.key("fidelity_vs_projector").value(stored.fidelity_vs_projector);
      w.key("transcript").raw(transcript_to_json(stored.transcript));
      if (*p_retr) {
        auto pairs = logical_operators(*code);
        RetrieveResult r = retrieve_to_ancilla(*code, stored.state, pairs[0], Rng(p_seed + 1), p_cap);
        double n2 = 0.0;
        for (const auto& x : alpha) n2 += std::norm(x);
        cxd overlap = 0.0;
        for (int j = 0; j < f->d(); ++j)
          overlap += std::conj(alpha[j] / std::sqrt(n2)) * r.ancilla_amplitudes[j];
        w.key("extraction_norm").value(r.extraction_norm);
        w.key("round_trip_fidelity").value(std::norm(overlap));
        w.key("ancilla").begin_array();
        for (const auto& x : r.ancilla_amplitudes) {
          w.begin_array();
          w.value(x.real());
          w.value(x.imag());
          w.end_array();
        }
        w.end_array();
        w.key("retrieve_transcript").raw(transcript_to_json(r.transcript));
      }
      w.end_object();
      emit(o, w.str());
      return kExitOk;
    }
    if (*p_braid) {
      FieldCtxPtr f = field_from(braid_o);
      auto [a, b] = parse_pair(braid_a);
      BraidResult res;
      if (braid_process == "wind") {
        auto [a2, b2] = parse_pair(braid_a2);
        res = braid_winding(f, f->from_int(a), f->from_int(b), f->from_int(a2), f->from_int(b2),
                            p_cap);
      } else if (braid_process == "exchange") {
        res = braid_exchange(f, f->from_int(a), f->from_int(b), p_cap);
      } else if (braid_process == "spin") {
        res = braid_spin(f, f->from_int(a), f->from_int(b), p_cap);
      } else {
        throw ParseError("unknown braid process " + braid_process);
      }
      JsonWriter w;
      w.begin_object();
      w.key("process").value(braid_process);
      w.key("symbolic_exponent").value(res.symbolic_exponent);
      w.key("dense_exponent").value(res.dense_exponent);
      w.key("expected_exponent").value(res.expected_exponent);
      w.key("dense_overlap_error").value(res.dense_overlap_error);
      w.end_object();
      emit(braid_o, w.str());
      if (res.symbolic_exponent != res.dense_exponent) return kExitValidation;
      return kExitOk;
    }
    if (*p_intf) {
      FieldCtxPtr f = field_from(intf_o);
      long used_shots = exact_only ? 0 : (shots > 0 ? shots : 10000);
      InterferometerReport rep = run_interferometer(f, parse_pair(probe_str),
                                                    parse_pair(target_str), chi, used_shots,
                                                    Rng(p_seed), p_cap);
      if (!csv_path.empty() && !rep.csv.empty()) {
        std::ofstream out(csv_path);
        out << rep.csv;
      }
      JsonWriter w;
      w.begin_object();
      w.key("d").value(rep.d);
      w.key("probe").begin_array().value(rep.probe.first).value(rep.probe.second).end_array();
      w.key("target").begin_array().value(rep.target.first).value(rep.target.second).end_array();
      w.key("chi").value(rep.chi);
      w.key("sigma_x_tau").value(rep.sigma_x_tau);
      w.key("sigma_y_tau").value(rep.sigma_y_tau);
      w.key("sigma_x_one").value(rep.sigma_x_one);
      w.key("sigma_y_one").value(rep.sigma_y_one);
      w.key("phi_top_exact").value(rep.phi_top_exact);
      w.key("phi_top_estimate").value(rep.phi_top_estimate);
      w.key("dense_backend").value(rep.dense_backend);
      if (rep.dense_backend) {
        w.key("full_sigma_x_tau").value(rep.full_sigma_x_tau);
        w.key("full_sigma_y_tau").value(rep.full_sigma_y_tau);
        w.key("full_sigma_x_one").value(rep.full_sigma_x_one);
        w.key("full_sigma_y_one").value(rep.full_sigma_y_one);
      }
      if (rep.shots > 0) {
        w.key("shots").value(static_cast<std::int64_t>(rep.shots));
        w.key("sampled_sigma_x_tau").value(rep.sampled_sigma_x_tau);
        w.key("sampled_sigma_y_tau").value(rep.sampled_sigma_y_tau);
        w.key("sampled_sigma_x_one").value(rep.sampled_sigma_x_one);
        w.key("sampled_sigma_y_one").value(rep.sampled_sigma_y_one);
      }
      w.key("seed").value(static_cast<std::uint64_t>(p_seed));
      w.key("transcript").raw(transcript_to_json(rep.transcript));
      w.end_object();
      emit(intf_o, w.str());
      return kExitOk;
    }
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return kExitOk;  // --help
    std::cerr << e.what() << "\n";
    return kExitParse;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
}
