#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "galab/galab.hpp"

using namespace galab;

namespace {

struct CommonFlags {
  std::string group_name;
  std::string group_file;
  std::string out_path;
  bool pretty = false;
  std::uint64_t seed = 1;
};

void add_common(CLI::App* cmd, CommonFlags& f, bool with_group = true) {
  if (with_group) {
    cmd->add_option("--group", f.group_name, "built-in group name, e.g. S3 or Z2xS3");
    cmd->add_option("--group-file", f.group_file, "path to a group JSON file");
  }
  cmd->add_option("--seed", f.seed, "random seed")->default_val(1);
  cmd->add_option("--out", f.out_path, "also write the report to this file");
  cmd->add_flag("--pretty", f.pretty, "indent the JSON output");
}

FiniteGroup load_group(const CommonFlags& f) {
  if (!f.group_file.empty()) {
    std::ifstream in(f.group_file);
    if (!in) throw ParseError("cannot open group file " + f.group_file);
    Json j;
    try {
      in >> j;
    } catch (const Json::exception& e) {
      throw ParseError(std::string("group file is not valid JSON: ") + e.what());
    }
    return group_from_json(j);
  }
  if (f.group_name.empty()) throw ParseError("provide --group or --group-file");
  return group_by_name(f.group_name);
}

Json load_json(const std::string& path, const char* what) {
  std::ifstream in(path);
  if (!in) throw ParseError(std::string("cannot open ") + what + " file " + path);
  Json j;
  try {
    in >> j;
  } catch (const Json::exception& e) {
    throw ParseError(std::string(what) + " file is not valid JSON: " + e.what());
  }
  return j;
}

void emit(const Json& j, const CommonFlags& f) {
  const std::string text = f.pretty ? j.dump(2) : j.dump();
  std::cout << text << "\n";
  if (!f.out_path.empty()) {
    std::ofstream out(f.out_path);
    if (!out) throw ParseError("cannot write to " + f.out_path);
    out << text << "\n";
  }
}

Json dual_report_json(const FiniteGroup& g, const DualObject& dual, const DualReport& rep) {
  std::vector<int> dims;
  for (int s = 0; s < dual.size(); ++s) dims.push_back(dual.dim(s));
  return Json{{"group", g.name},
              {"order", g.order},
              {"dims", dims},
              {"dim_square_sum", rep.dim_square_sum},
              {"residuals",
               Json{{"unitarity", rep.unitarity},
                    {"homomorphism", rep.homomorphism},
                    {"schur", rep.schur},
                    {"char_orthogonality", rep.char_orthogonality},
                    {"commutant_spread", rep.commutant_spread}}},
              {"min_char_gap", rep.min_char_gap},
              {"pass", rep.pass}};
}

int expectation_exit(const std::string& expect, const std::string& got) {
  if (expect == "any" || expect.empty()) return 0;
  return expect == got ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"group algebra laboratory: duals, Fourier calculus, and locality verdicts"};
  app.require_subcommand(1);

  CommonFlags fg, fd, ff, fa, fc, fl, ft, fr;

  auto* c_group = app.add_subcommand("group", "emit a validated Cayley table");
  add_common(c_group, fg);

  auto* c_dual = app.add_subcommand("dual", "decompose the regular representation");
  add_common(c_dual, fd);
  double dual_tol = 1e-8;
  c_dual->add_option("--tol", dual_tol, "eigenvalue clustering tolerance")->default_val(1e-8);

  auto* c_fourier = app.add_subcommand("fourier", "transform a function and verify inversion");
  add_common(c_fourier, ff);
  std::string function_file;
  c_fourier->add_option("--function-file", function_file,
                        "element JSON; defaults to the separating function");

  auto* c_autos = app.add_subcommand("autos", "enumerate (anti)automorphisms and characters");
  add_common(c_autos, fa);

  auto* c_classify = app.add_subcommand("classify", "classify a block map");
  add_common(c_classify, fc);
  std::string classify_map_file;
  int classify_transpose_block = -1;
  c_classify->add_option("--map-file", classify_map_file, "block map JSON");
  c_classify->add_option("--transpose-block", classify_transpose_block,
                         "classify the transpose map on this block");

  auto* c_local = app.add_subcommand("local-check", "sampled locality verdict for a map");
  add_common(c_local, fl);
  double local_p = 2.0;
  int local_samples = 100;
  std::string local_map_file, local_wc_file, local_expect = "any";
  int local_transpose_block = -1;
  c_local->add_option("--p", local_p, "exponent of the norm (2 selects the block-map lab)")
      ->default_val(2.0);
  c_local->add_option("--samples", local_samples, "number of random sample points")
      ->default_val(100);
  c_local->add_option("--map-file", local_map_file, "block map JSON (p = 2 only)");
  c_local->add_option("--transpose-block", local_transpose_block,
                      "transpose map on this block (p = 2 only)");
  c_local->add_option("--wc-file", local_wc_file, "weighted composition JSON (p != 2 only)");
  c_local->add_option("--expect", local_expect, "local | refuted | any")
      ->check(CLI::IsMember({"local", "refuted", "any"}))
      ->default_val("any");

  auto* c_equiv = app.add_subcommand("transpose-equiv",
                                     "decide unitary equivalence of a matrix and its transpose");
  add_common(c_equiv, ft, /*with_group=*/false);
  int equiv_dim = 0;
  std::string equiv_matrix_file, equiv_expect = "any";
  c_equiv->add_option("--dim", equiv_dim, "use the built-in counterexample of this dimension");
  c_equiv->add_option("--matrix-file", equiv_matrix_file, "matrix JSON ([[...rows of [re,im]]])");
  c_equiv->add_option("--expect", equiv_expect, "equivalent | inequivalent | any")
      ->check(CLI::IsMember({"equivalent", "inequivalent", "any"}))
      ->default_val("any");

  auto* c_repro = app.add_subcommand("reproduce", "run a named end-to-end scenario");
  add_common(c_repro, fr, /*with_group=*/false);
  std::string scenario;
  int repro_samples = 0;
  c_repro->add_option("name", scenario, "scenario name")->required();
  c_repro->add_option("--samples", repro_samples, "random samples (0 = scenario default)")
      ->default_val(0);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*c_group) {
      const FiniteGroup g = load_group(fg);
      emit(group_to_json(g), fg);
      return 0;
    }

    if (*c_dual) {
      const FiniteGroup g = load_group(fd);
      const DualObject dual = decompose_regular(g, fd.seed, dual_tol);
      const DualReport rep = check_dual(dual);
      Json j = dual_report_json(g, dual, rep);
      if (!fd.out_path.empty()) {
        // --out stores the reusable dual cache; the report goes to stdout.
        std::ofstream out(fd.out_path);
        if (!out) throw ParseError("cannot write to " + fd.out_path);
        out << dual_to_json(dual).dump(fd.pretty ? 2 : -1) << "\n";
        CommonFlags plain = fd;
        plain.out_path.clear();
        emit(j, plain);
      } else {
        emit(j, fd);
      }
      return rep.pass ? 0 : 2;
    }

    if (*c_fourier) {
      const FiniteGroup g = load_group(ff);
      const DualObject dual = decompose_regular(g, ff.seed);
      const AlgebraElement f = function_file.empty()
                                   ? separating_function(g)
                                   : element_from_json(load_json(function_file, "function"));
      if (f.size() != g.order) throw SizeMismatch("function length does not match group order");
      const BlockTuple t = fourier(f, dual);
      const double n2 = p_norm(f, 2.0, g);
      const Json j{{"group", g.name},
                   {"transform", tuple_to_json(g.name, t)},
                   {"norm_function", n2},
                   {"norm_transform", t.c2_norm()},
                   {"inversion_max_dev",
                    (inverse_fourier(t, dual) - f).cwiseAbs().maxCoeff()}};
      emit(j, ff);
      return 0;
    }

    if (*c_autos) {
      const FiniteGroup g = load_group(fa);
      Json autos = Json::array(), antis = Json::array(), chars = Json::array();
      for (const GroupMap& m : enumerate_automorphisms(g)) autos.push_back(m.perm);
      for (const GroupMap& m : enumerate_antiautomorphisms(g)) antis.push_back(m.perm);
      for (const Character& c : enumerate_characters(g)) {
        Json vals = Json::array();
        for (cplx v : c.values()) vals.push_back(complex_to_json(v));
        chars.push_back(std::move(vals));
      }
      const Json j{{"group", g.name},
                   {"automorphisms", autos},
                   {"antiautomorphisms", antis},
                   {"characters", chars},
                   {"weighted_composition_count",
                    enumerate_isometric_automorphisms_lp(g).size()}};
      emit(j, fa);
      return 0;
    }

    if (*c_classify) {
      const FiniteGroup g = load_group(fc);
      const DualObject dual = decompose_regular(g, fc.seed);
      BlockMap b;
      std::string desc;
      if (!classify_map_file.empty()) {
        b = block_map_from_json(load_json(classify_map_file, "block map"));
        desc = "block map from " + classify_map_file;
      } else if (classify_transpose_block >= 0) {
        b = transpose_block_map(dual, classify_transpose_block);
        desc = "transpose on block " + std::to_string(classify_transpose_block);
      } else {
        throw ParseError("provide --map-file or --transpose-block");
      }
      const MapClass cls = classify_block_map(b, dual);
      const IsometryReport iso = is_isometry(b, 2.0, dual, 100, fc.seed);
      const Json j{{"group", g.name},
                   {"map", desc},
                   {"classification", to_string(cls)},
                   {"isometry_max_rel_deviation", iso.max_rel_deviation},
                   {"isometric", iso.pass}};
      emit(j, fc);
      return 0;
    }

    if (*c_local) {
      const FiniteGroup g = load_group(fl);
      SamplingPlan plan;
      plan.seed = fl.seed;
      plan.n_random = local_samples;
      Json j;
      std::string verdict_str;

      if (local_p == 2.0) {
        if (!local_wc_file.empty())
          throw ParseError("--wc-file applies to p != 2; use --map-file or --transpose-block");
        const DualObject dual = decompose_regular(g, fl.seed);
        BlockMap b;
        std::string desc;
        if (!local_map_file.empty()) {
          b = block_map_from_json(load_json(local_map_file, "block map"));
          desc = "block map from " + local_map_file;
        } else if (local_transpose_block >= 0) {
          b = transpose_block_map(dual, local_transpose_block);
          desc = "transpose on block " + std::to_string(local_transpose_block);
        } else {
          throw ParseError("provide --map-file or --transpose-block for p = 2");
        }
        const L2Verdict v = is_local_automorphism_l2(
            [&](const BlockTuple& f) { return apply_block_map(b, f); }, dual, plan);
        j = verdict_to_json(desc, v, g.name);
        verdict_str = v.refuted ? "refuted" : "local";
      } else {
        if (local_wc_file.empty())
          throw ParseError("p != 2 requires --wc-file with a weighted composition");
        const WeightedComposition w =
            weighted_composition_from_json(load_json(local_wc_file, "weighted composition"), g);
        const LpVerdict v = local_check_lp(w, g, plan);
        j = verdict_to_json("weighted composition from " + local_wc_file, v, g.name);
        verdict_str = v.refuted ? "refuted" : "local";
      }
      emit(j, fl);
      return expectation_exit(local_expect, verdict_str);
    }

    if (*c_equiv) {
      Mat m;
      Json source;
      if (!equiv_matrix_file.empty()) {
        m = matrix_from_json(load_json(equiv_matrix_file, "matrix"));
        source = equiv_matrix_file;
      } else if (equiv_dim >= 2) {
        m = counterexample_matrix(equiv_dim);
        source = "counterexample_matrix(" + std::to_string(equiv_dim) + ")";
      } else {
        throw ParseError("provide --dim >= 2 or --matrix-file");
      }
      const EquivDecision dec = unitary_equivalent(m, m.transpose());
      Json j = equiv_to_json(dec);
      j["matrix"] = source;
      emit(j, ft);
      return expectation_exit(equiv_expect, dec.equivalent ? "equivalent" : "inequivalent");
    }

    if (*c_repro) {
      const ScenarioResult r = run_scenario(scenario, fr.seed, repro_samples);
      emit(r.report, fr);
      return r.pass ? 0 : 2;
    }
  } catch (const Error& e) {
    std::cout << Json{{"error", e.what()}}.dump() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cout << Json{{"error", e.what()}}.dump() << "\n";
    return 1;
  }
  return 0;
}
