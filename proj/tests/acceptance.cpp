// Acceptance gate: one pass/fail line per criterion, exit 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "galab/galab.hpp"

using namespace galab;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void report(int index, const std::string& label, bool pass, const std::string& detail) {
  std::printf("[%s] criterion %d: %s — %s\n", pass ? "PASS" : "FAIL", index, label.c_str(),
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

// 1. Every builtin group of order <= 24 decomposes into a verified dual with
//    the exact dimension count; S3 -> {1,1,2}, A4 -> {1,1,1,3}; <= 5 s each.
void criterion_dual_correctness() {
  bool pass = true;
  std::string detail;
  double worst_time = 0;
  for (const std::string& name : builtin_catalog()) {
    const FiniteGroup g = group_by_name(name);
    const auto t0 = Clock::now();
    const DualObject dual = decompose_regular(g, 1);
    const DualReport rep = check_dual(dual);
    const double dt = seconds_since(t0);
    worst_time = std::max(worst_time, dt);

    bool ok = rep.pass && rep.unitarity <= 1e-8 && rep.homomorphism <= 1e-8 &&
              rep.schur <= 1e-8 && rep.char_orthogonality <= 1e-8 && rep.dims_exact &&
              dt <= 5.0;
    std::vector<int> dims;
    for (int s = 0; s < dual.size(); ++s) dims.push_back(dual.dim(s));
    if (name == "S3") ok = ok && dims == std::vector<int>{1, 1, 2};
    if (name == "A4") ok = ok && dims == std::vector<int>{1, 1, 1, 3};
    if (!ok && detail.empty())
      detail = name + " failed (residual or dims or " + fmt(dt) + " s)";
    pass = pass && ok;
  }
  if (detail.empty())
    detail = std::to_string(builtin_catalog().size()) + " groups, worst " + fmt(worst_time) + " s";
  report(1, "dual correctness on all builtins", pass, detail);
}

// 2. Plancherel within 1e-10 relative and Fourier homomorphism within 1e-9 on
//    100 random samples per group; <= 10 s total.
void criterion_plancherel() {
  const auto t0 = Clock::now();
  const ScenarioResult r = run_scenario("plancherel-suite", 1, 100);
  const double dt = seconds_since(t0);
  const bool pass = r.pass && dt <= 10.0;
  report(2, "plancherel and homomorphism bounds", pass,
         std::string(r.pass ? "all groups within tolerance" : "tolerance exceeded") + ", " +
             fmt(dt) + " s");
}

// 3. Minimal ideal units: idempotent, central, mutually orthogonal to 1e-10,
//    summing to the unit, for S3, A4, Q8.
void criterion_minimal_ideals() {
  bool pass = true;
  std::string detail = "S3, A4, Q8";
  for (const std::string name : {"S3", "A4", "Q8"}) {
    const FiniteGroup g = group_by_name(name);
    const DualObject dual = decompose_regular(g, 1);
    std::vector<AlgebraElement> units;
    for (int s = 0; s < dual.size(); ++s) units.push_back(minimal_ideal_unit(dual, s));
    CounterRng rng(2);
    const AlgebraElement f = gaussian_vector(rng, g.order);
    AlgebraElement total = AlgebraElement::Zero(g.order);
    double worst = 0;
    for (int s = 0; s < dual.size(); ++s) {
      const AlgebraElement& e = units[s];
      worst = std::max(worst, (convolve(e, e, g) - e).cwiseAbs().maxCoeff());
      worst = std::max(worst, (convolve(e, f, g) - convolve(f, e, g)).cwiseAbs().maxCoeff());
      for (int r = 0; r < dual.size(); ++r)
        if (r != s) worst = std::max(worst, convolve(e, units[r], g).cwiseAbs().maxCoeff());
      total += e;
    }
    worst = std::max(worst, (total - convolution_unit(g)).cwiseAbs().maxCoeff());
    if (worst > 1e-10) {
      pass = false;
      detail = name + " residual " + fmt(worst);
      break;
    }
  }
  report(3, "minimal ideal units", pass, detail);
}

// 4. 1000 random 2x2 matrices are equivalent to their transposes with a
//    constructive witness (residual <= 1e-8) in >= 99% of trials; <= 30 s.
void criterion_transpose_2x2() {
  const auto t0 = Clock::now();
  CounterRng rng(4);
  int positive = 0, witnessed = 0;
  const int trials = 1000;
  for (int t = 0; t < trials; ++t) {
    const Mat a = gaussian_matrix(rng, 2, 2);
    const EquivDecision dec = unitary_equivalent(a, a.transpose());
    if (dec.equivalent) ++positive;
    if (dec.equivalent && dec.witness && dec.witness_residual <= 1e-8) ++witnessed;
  }
  const double dt = seconds_since(t0);
  const bool pass = positive == trials && witnessed >= 990 && dt <= 30.0;
  report(4, "2x2 transpose equivalence", pass,
         std::to_string(positive) + "/1000 equivalent, " + std::to_string(witnessed) +
             " witnessed, " + fmt(dt) + " s");
}

// 5. counterexample_matrix(d) is not equivalent to its transpose for
//    d in {3,4,5}, with a recorded word whose gap exceeds 10x tolerance; <= 60 s.
void criterion_counterexample() {
  const auto t0 = Clock::now();
  bool pass = true;
  std::string words;
  for (int d = 3; d <= 5; ++d) {
    const Mat m = counterexample_matrix(d);
    const EquivDecision dec = unitary_equivalent(m, m.transpose());
    const double gap = std::abs(dec.trace_a - dec.trace_b);
    const double scale = std::max({1.0, std::abs(dec.trace_a), std::abs(dec.trace_b)});
    const bool ok = !dec.equivalent && !dec.mismatch_word.empty() && gap > 10 * 1e-8 * scale;
    pass = pass && ok;
    if (!words.empty()) words += "; ";
    words += "d=" + std::to_string(d) + " [" + dec.mismatch_word + "]";
  }
  const double dt = seconds_since(t0);
  pass = pass && dt <= 60.0;
  report(5, "d>=3 counterexample vs transpose", pass, words + ", " + fmt(dt) + " s");
}

// 6. S3 2-dim block transpose: C2-isometric to 1e-9, local at 1000 random and
//    all structured points, classifies as antiautomorphism, and violates
//    multiplicativity by >= 1e-2; <= 60 s.
void criterion_s3_counterexample() {
  const auto t0 = Clock::now();
  const ScenarioResult r = run_scenario("s3-l2-counterexample", 1, 1000);
  const double dt = seconds_since(t0);
  const bool pass = r.pass && dt <= 60.0;
  report(6, "S3 L2 local-not-multiplicative map", pass,
         std::string("verdict ") + r.report.at("locality").at("verdict").get<std::string>() +
             ", class " + r.report.at("classification").get<std::string>() + ", violation " +
             fmt(r.report.at("multiplicativity_witness").at("violation").get<double>()) + ", " +
             fmt(dt) + " s");
}

// 7. A4 3-dim block transpose is refuted: constructed refuter fails pointwise
//    and the sampler reports REFUTED; <= 30 s.
void criterion_a4_refutation() {
  const auto t0 = Clock::now();
  const ScenarioResult r = run_scenario("a4-l2-refutation", 1, 200);
  const double dt = seconds_since(t0);
  const bool pass = r.pass && dt <= 30.0;
  report(7, "A4 L2 refutation", pass,
         std::string("verdict ") + r.report.at("locality").at("verdict").get<std::string>() +
             ", " + fmt(dt) + " s");
}

// 8. For S3 and Q8 every antiautomorphism-motion weighted composition is
//    refuted at the separating function; every automorphism-motion one and
//    every commutative case stays LOCAL over the samples; <= 60 s.
void criterion_lp_exhaustive() {
  const auto t0 = Clock::now();
  bool pass = true;
  std::string detail;
  int anti_total = 0, auto_total = 0;

  for (const std::string name : {"S3", "Q8"}) {
    const FiniteGroup g = group_by_name(name);
    const auto chars = enumerate_characters(g);
    int idx = 0;
    for (const Character& c : chars) {
      for (const GroupMap& m : enumerate_antiautomorphisms(g)) {
        SamplingPlan plan;
        plan.seed = 800 + idx++;
        plan.n_random = 5;
        const LpVerdict v = local_check_lp({c, m}, g, plan);
        ++anti_total;
        if (!(v.refuted && v.samples == 1)) {
          pass = false;
          if (detail.empty()) detail = name + " antiauto map not refuted at first sample";
        }
      }
      for (const GroupMap& m : enumerate_automorphisms(g)) {
        SamplingPlan plan;
        plan.seed = 1800 + idx++;
        plan.n_random = 25;
        const LpVerdict v = local_check_lp({c, m}, g, plan);
        ++auto_total;
        if (v.refuted) {
          pass = false;
          if (detail.empty()) detail = name + " automorphism map wrongly refuted";
        }
      }
    }
  }
  for (const std::string name : {"Z6", "Z2xZ2"}) {
    const FiniteGroup g = group_by_name(name);
    const auto chars = enumerate_characters(g);
    int idx = 0;
    for (const Character& c : chars)
      for (const GroupMap& m : enumerate_antiautomorphisms(g)) {
        SamplingPlan plan;
        plan.seed = 2800 + idx++;
        plan.n_random = 10;
        const LpVerdict v = local_check_lp({c, m}, g, plan);
        ++auto_total;
        if (v.refuted) {
          pass = false;
          if (detail.empty()) detail = name + " commutative map wrongly refuted";
        }
      }
  }
  const double dt = seconds_since(t0);
  pass = pass && dt <= 60.0;
  if (detail.empty())
    detail = std::to_string(anti_total) + " antiauto refuted, " + std::to_string(auto_total) +
             " local, " + fmt(dt) + " s";
  report(8, "exhaustive Lp weighted compositions", pass, detail);
}

// 9. Every scenario is byte-identical across repeated runs with equal seeds.
void criterion_determinism() {
  bool pass = true;
  std::string detail = "all scenarios byte-identical";
  for (const std::string& name : scenario_names()) {
    const int samples = name == "plancherel-suite" ? 20 : 50;
    const ScenarioResult a = run_scenario(name, 7, samples);
    const ScenarioResult b = run_scenario(name, 7, samples);
    if (a.report.dump() != b.report.dump()) {
      pass = false;
      detail = name + " differs between runs";
      break;
    }
  }
  report(9, "scenario determinism", pass, detail);
}

}  // namespace

int main() {
  criterion_dual_correctness();
  criterion_plancherel();
  criterion_minimal_ideals();
  criterion_transpose_2x2();
  criterion_counterexample();
  criterion_s3_counterexample();
  criterion_a4_refutation();
  criterion_lp_exhaustive();
  criterion_determinism();
  std::printf("%s\n", failures == 0 ? "all criteria passed" : "criteria failed");
  return failures == 0 ? 0 : 1;
}
