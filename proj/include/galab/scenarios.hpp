#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "galab/autolab.hpp"
#include "galab/conv.hpp"
#include "galab/group.hpp"
#include "galab/io.hpp"
#include "galab/locality.hpp"
#include "galab/repr.hpp"

namespace galab {

/// Built-in groups addressable by name, all of order <= 24.
inline std::vector<std::string> builtin_catalog() {
  std::vector<std::string> names;
  for (int n = 2; n <= 12; ++n) names.push_back("Z" + std::to_string(n));
  names.insert(names.end(), {"S3", "S4", "A4", "D4", "Q8"});
  return names;
}

inline std::vector<std::string> scenario_names() {
  return {"s3-l2-counterexample", "a4-l2-refutation", "lp-antiauto-refutation",
          "plancherel-suite"};
}

struct ScenarioResult {
  std::string name;
  bool pass = false;
  Json report;
};

namespace detail {

inline int block_of_dim(const DualObject& dual, int d) {
  for (int s = 0; s < dual.size(); ++s)
    if (dual.dim(s) == d) return s;
  throw Error("dual has no block of dimension " + std::to_string(d));
}

/// The square-block transpose map passes every single-point check yet breaks
/// multiplicativity on a fixed pair: x the nilpotent ladder, y = diag(1..d).
inline Json transpose_multiplicativity_witness(const BlockMap& psi, const DualObject& dual,
                                               int sigma0, double& violation) {
  const int d = dual.dim(sigma0);
  BlockTuple x, y;
  for (int s = 0; s < dual.size(); ++s) {
    x.blocks.push_back(Mat::Zero(dual.dim(s), dual.dim(s)));
    y.blocks.push_back(Mat::Zero(dual.dim(s), dual.dim(s)));
  }
  x.blocks[sigma0] = counterexample_matrix(d);
  Mat diag = Mat::Zero(d, d);
  for (int i = 0; i < d; ++i) diag(i, i) = static_cast<double>(i + 1);
  y.blocks[sigma0] = diag;

  violation = c2_distance(apply_block_map(psi, tuple_product(x, y)),
                          tuple_product(apply_block_map(psi, x), apply_block_map(psi, y)));
  return Json{{"x", tuple_to_json(dual.group.name, x)},
              {"y", tuple_to_json(dual.group.name, y)},
              {"violation", violation}};
}

inline ScenarioResult scenario_s3_counterexample(std::uint64_t seed, int samples) {
  if (samples <= 0) samples = 1000;
  const FiniteGroup g = symmetric_group(3);
  const DualObject dual = decompose_regular(g, seed);
  const int sigma0 = block_of_dim(dual, 2);
  const BlockMap psi = transpose_block_map(dual, sigma0);

  const IsometryReport iso = is_isometry(psi, 2.0, dual, 200, seed);

  SamplingPlan plan;
  plan.seed = seed;
  plan.n_random = samples;
  const L2Verdict verdict = is_local_automorphism_l2(
      [&](const BlockTuple& f) { return apply_block_map(psi, f); }, dual, plan);

  const MapClass cls = classify_block_map(psi, dual);

  double violation = 0;
  Json witness_pair = transpose_multiplicativity_witness(psi, dual, sigma0, violation);

  ScenarioResult out;
  out.name = "s3-l2-counterexample";
  out.pass = iso.pass && !verdict.refuted && cls == MapClass::Antiautomorphism &&
             violation >= 1e-2;
  out.report = Json{{"scenario", out.name},
                    {"group", g.name},
                    {"seed", seed},
                    {"dims", [&] {
                       std::vector<int> d;
                       for (int s = 0; s < dual.size(); ++s) d.push_back(dual.dim(s));
                       return d;
                     }()},
                    {"map", "transpose on block " + std::to_string(sigma0)},
                    {"isometry_max_rel_deviation", iso.max_rel_deviation},
                    {"isometry_pass", iso.pass},
                    {"locality", verdict_to_json("transpose on block " + std::to_string(sigma0),
                                                 verdict, g.name)},
                    {"classification", to_string(cls)},
                    {"multiplicativity_witness", std::move(witness_pair)},
                    {"pass", out.pass}};
  return out;
}

inline ScenarioResult scenario_a4_refutation(std::uint64_t seed, int samples) {
  if (samples <= 0) samples = 200;
  const FiniteGroup g = alternating_group(4);
  const DualObject dual = decompose_regular(g, seed);
  const int sigma0 = block_of_dim(dual, 3);
  const BlockMap psi = transpose_block_map(dual, sigma0);
  const auto apply = [&](const BlockTuple& f) { return apply_block_map(psi, f); };

  const auto refuter = refute_blockwise_transpose(dual, sigma0);
  bool refuter_fails = false;
  PointDecision pd;
  if (refuter) {
    pd = local_at_point_l2(apply, *refuter, dual);
    refuter_fails = !pd.local;
  }

  SamplingPlan plan;
  plan.seed = seed;
  plan.n_random = samples;
  const L2Verdict verdict = is_local_automorphism_l2(apply, dual, plan);

  ScenarioResult out;
  out.name = "a4-l2-refutation";
  out.pass = refuter.has_value() && refuter_fails && verdict.refuted;
  Json report{{"scenario", out.name},
              {"group", g.name},
              {"seed", seed},
              {"map", "transpose on block " + std::to_string(sigma0)},
              {"refuter_found", refuter.has_value()},
              {"locality", verdict_to_json("transpose on block " + std::to_string(sigma0),
                                           verdict, g.name)},
              {"pass", out.pass}};
  if (refuter) {
    report["refuter"] = tuple_to_json(g.name, *refuter);
    report["refuter_obstruction"] =
        Json{{"dim_class", pd.obstruction_dim}, {"word", pd.obstruction_word}};
  }
  out.report = std::move(report);
  return out;
}

inline ScenarioResult scenario_lp_refutation(std::uint64_t seed, int samples) {
  if (samples <= 0) samples = 20;
  const FiniteGroup g = symmetric_group(3);
  const auto chars = enumerate_characters(g);
  const auto antis = enumerate_antiautomorphisms(g);

  Json cases = Json::array();
  bool all_refuted = true;
  int index = 0;
  for (const Character& c : chars)
    for (const GroupMap& a : antis) {
      const WeightedComposition w{c, a};
      SamplingPlan plan;
      plan.seed = CounterRng(seed).fork(static_cast<std::uint64_t>(index)).next_u64();
      plan.n_random = samples;
      const LpVerdict v = local_check_lp(w, g, plan);
      all_refuted = all_refuted && v.refuted;
      cases.push_back(Json{{"map", weighted_composition_to_json(w)},
                           {"verdict", v.refuted ? "REFUTED" : "LOCAL_SAMPLED"},
                           {"samples", v.samples}});
      ++index;
    }

  ScenarioResult out;
  out.name = "lp-antiauto-refutation";
  out.pass = all_refuted && index == static_cast<int>(chars.size() * antis.size());
  out.report = Json{{"scenario", out.name},
                    {"group", g.name},
                    {"seed", seed},
                    {"maps_checked", index},
                    {"cases", std::move(cases)},
                    {"pass", out.pass}};
  return out;
}

inline ScenarioResult scenario_plancherel_suite(std::uint64_t seed, int samples) {
  if (samples <= 0) samples = 100;
  Json per_group = Json::array();
  bool all_pass = true;

  for (const std::string& name : builtin_catalog()) {
    const FiniteGroup g = group_by_name(name);
    CounterRng rng(seed, hash_tag(name));
    const DualObject dual = decompose_regular(g, rng.next_u64());

    double max_plancherel = 0;
    for (int t = 0; t < samples; ++t) {
      const AlgebraElement f = gaussian_vector(rng, g.order);
      const double nf = p_norm(f, 2.0, g);
      max_plancherel =
          std::max(max_plancherel, std::abs(nf - fourier(f, dual).c2_norm()) / nf);
    }

    double max_hom = 0;
    for (int t = 0; t < samples; ++t) {
      const AlgebraElement f = gaussian_vector(rng, g.order);
      const AlgebraElement h = gaussian_vector(rng, g.order);
      max_hom = std::max(max_hom, c2_distance(fourier(convolve(f, h, g), dual),
                                              tuple_product(fourier(f, dual), fourier(h, dual))));
    }

    std::vector<int> dims;
    int dim_sq = 0;
    for (int s = 0; s < dual.size(); ++s) {
      dims.push_back(dual.dim(s));
      dim_sq += dual.dim(s) * dual.dim(s);
    }
    const bool pass = max_plancherel <= 1e-10 && max_hom <= 1e-9 && dim_sq == g.order;
    all_pass = all_pass && pass;
    per_group.push_back(Json{{"group", name},
                             {"dims", dims},
                             {"max_plancherel_rel", max_plancherel},
                             {"max_homomorphism_residual", max_hom},
                             {"pass", pass}});
  }

  ScenarioResult out;
  out.name = "plancherel-suite";
  out.pass = all_pass;
  out.report = Json{{"scenario", out.name},
                    {"seed", seed},
                    {"samples", samples},
                    {"groups", std::move(per_group)},
                    {"pass", out.pass}};
  return out;
}

}  // namespace detail

/// Runs one named end-to-end scenario. samples <= 0 selects the scenario's
/// pinned default. Reports are byte-identical across runs with equal inputs.
inline ScenarioResult run_scenario(const std::string& name, std::uint64_t seed = 1,
                                   int samples = 0) {
  if (name == "s3-l2-counterexample") return detail::scenario_s3_counterexample(seed, samples);
  if (name == "a4-l2-refutation") return detail::scenario_a4_refutation(seed, samples);
  if (name == "lp-antiauto-refutation") return detail::scenario_lp_refutation(seed, samples);
  if (name == "plancherel-suite") return detail::scenario_plancherel_suite(seed, samples);
  throw UnknownScenario("no scenario named \"" + name + "\"");
}

}  // namespace galab
