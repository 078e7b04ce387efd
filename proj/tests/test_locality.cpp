#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "galab/locality.hpp"

using namespace galab;

namespace {

BlockwiseMap transpose_on(const DualObject& dual, int sigma0) {
  const BlockMap b = transpose_block_map(dual, sigma0);
  return [b](const BlockTuple& f) { return apply_block_map(b, f); };
}

}  // namespace

TEST_CASE("counterexample matrix is the weighted lower shift") {
  const Mat m = counterexample_matrix(3);
  REQUIRE(m.rows() == 3);
  CHECK(std::abs(m(1, 0) - 1.0) < 1e-15);
  CHECK(std::abs(m(2, 1) - 2.0) < 1e-15);
  CHECK(std::abs(m(0, 0)) + std::abs(m(0, 1)) + std::abs(m(0, 2)) + std::abs(m(1, 1)) +
            std::abs(m(1, 2)) + std::abs(m(2, 0)) + std::abs(m(2, 2)) <
        1e-15);
  CHECK_THROWS_AS(counterexample_matrix(1), InvalidDimension);
  CHECK_THROWS_AS(counterexample_matrix(-3), InvalidDimension);
}

TEST_CASE("conjugated matrices are recognized with a working witness") {
  CounterRng rng(101);
  for (int n = 2; n <= 5; ++n) {
    for (int t = 0; t < 5; ++t) {
      const Mat a = gaussian_matrix(rng, n, n);
      const Mat u = haar_unitary(rng, n);
      const Mat b = u * a * u.adjoint();
      const EquivDecision dec = unitary_equivalent(a, b);
      CHECK(dec.equivalent);
      REQUIRE(dec.witness.has_value());
      CHECK(dec.witness_residual <= 1e-8);
      CHECK((*dec.witness * a * dec.witness->adjoint() - b).norm() <=
            1e-7 * std::max(1.0, a.norm()));
      CHECK(unitarity_defect(*dec.witness) <= 1e-10);
    }
  }
}

TEST_CASE("trace mismatches are caught with the offending word") {
  Mat a(2, 2), b(2, 2);
  a << 1, 0, 0, 2;
  b << 1, 0, 0, 3;
  const EquivDecision dec = unitary_equivalent(a, b);
  CHECK_FALSE(dec.equivalent);
  CHECK(dec.mismatch_word == "M");
  CHECK(std::abs(dec.trace_a - cplx(3, 0)) < 1e-12);
  CHECK(std::abs(dec.trace_b - cplx(4, 0)) < 1e-12);

  const EquivDecision dec2 = unitary_equivalent(a, 2.0 * a);
  CHECK_FALSE(dec2.equivalent);

  Mat h(2, 2);
  h << 0, 1, 0, 0;
  const EquivDecision dec3 = unitary_equivalent(h, h.adjoint());
  CHECK(dec3.equivalent);
}

TEST_CASE("every 2x2 matrix is equivalent to its transpose") {
  CounterRng rng(202);
  int witnessed = 0;
  for (int t = 0; t < 200; ++t) {
    const Mat a = gaussian_matrix(rng, 2, 2);
    const EquivDecision dec = unitary_equivalent(a, a.transpose());
    REQUIRE(dec.equivalent);
    if (dec.witness && dec.witness_residual <= 1e-8) ++witnessed;
  }
  CHECK(witnessed >= 198);
}

TEST_CASE("the counterexample is not equivalent to its transpose for d in 3..5") {
  for (int d = 3; d <= 5; ++d) {
    INFO(d);
    const Mat m = counterexample_matrix(d);
    const EquivDecision dec = unitary_equivalent(m, m.transpose());
    CHECK_FALSE(dec.equivalent);
    CHECK_FALSE(dec.mismatch_word.empty());
    const double gap = std::abs(dec.trace_a - dec.trace_b);
    const double scale =
        std::max({1.0, std::abs(dec.trace_a), std::abs(dec.trace_b)});
    CHECK(gap > 10 * 1e-8 * scale);
  }
  const EquivDecision d3 = unitary_equivalent(counterexample_matrix(3),
                                              counterexample_matrix(3).transpose());
  CHECK(d3.mismatch_word == "M M M* M* M M*");
}

TEST_CASE("hermitian matrices are equivalent to their transposes") {
  CounterRng rng(303);
  for (int t = 0; t < 5; ++t) {
    const Mat a = gaussian_hermitian(rng, 4);
    CHECK(unitary_equivalent(a, a.transpose()).equivalent);
  }
}

TEST_CASE("equivalence testing validates shapes") {
  CHECK_THROWS_AS(unitary_equivalent(Mat::Zero(2, 2), Mat::Zero(3, 3)), SizeMismatch);
  CHECK_THROWS_AS(unitary_equivalent(Mat::Zero(2, 3), Mat::Zero(2, 3)), SizeMismatch);
}

TEST_CASE("pointwise locality holds for the S3 transpose at generic points") {
  const DualObject dual = decompose_regular(symmetric_group(3), 1);
  const BlockwiseMap psi = transpose_on(dual, 2);
  CounterRng rng(404);
  for (int t = 0; t < 25; ++t) {
    const PointDecision pd = local_at_point_l2(psi, random_tuple(dual, rng), dual);
    CHECK(pd.local);
    CHECK(pd.matching[2] == 2);
  }
}

TEST_CASE("block swaps are matched across a dimension class") {
  const DualObject dual = decompose_regular(symmetric_group(4), 1);
  BlockMap swap = identity_block_map(dual);
  swap.block_perm = {0, 1, 2, 4, 3};
  const BlockwiseMap psi = [&](const BlockTuple& f) { return apply_block_map(swap, f); };
  CounterRng rng(505);
  const PointDecision pd = local_at_point_l2(psi, random_tuple(dual, rng), dual);
  REQUIRE(pd.local);
  CHECK(pd.matching[3] == 4);
  CHECK(pd.matching[4] == 3);
  CHECK(pd.matching[0] == 0);
}

TEST_CASE("the A4 transpose fails at the constructed refuter point") {
  const DualObject dual = decompose_regular(alternating_group(4), 1);
  const int sigma0 = 3;
  REQUIRE(dual.dim(sigma0) == 3);
  const auto refuter = refute_blockwise_transpose(dual, sigma0);
  REQUIRE(refuter.has_value());
  const PointDecision pd = local_at_point_l2(transpose_on(dual, sigma0), *refuter, dual);
  CHECK_FALSE(pd.local);
  CHECK(pd.obstruction_dim == 3);
  CHECK(pd.obstruction_word == "M M M* M* M M*");
}

TEST_CASE("refuters exist only above dimension two") {
  const DualObject s3 = decompose_regular(symmetric_group(3), 1);
  CHECK_FALSE(refute_blockwise_transpose(s3, 2).has_value());
  CHECK_FALSE(refute_blockwise_transpose(s3, 0).has_value());
  CHECK_THROWS_AS(refute_blockwise_transpose(s3, 7), IndexOutOfRange);

  const DualObject s4 = decompose_regular(symmetric_group(4), 1);
  const auto r = refute_blockwise_transpose(s4, 3);
  REQUIRE(r.has_value());
  CHECK((r->blocks[3] - counterexample_matrix(3)).norm() < 1e-15);
  CHECK(r->blocks[2].norm() < 1e-15);
  Mat pin = Mat::Zero(3, 3);
  pin.diagonal() << 11, 12, 13;
  CHECK((r->blocks[4] - pin).norm() < 1e-15);
}

TEST_CASE("sampled idempotents square to themselves") {
  const DualObject dual = decompose_regular(symmetric_group(4), 1);
  CounterRng rng(606);
  for (int t = 0; t < 10; ++t) {
    const BlockTuple e = sample_idempotent_tuple(dual, rng);
    CHECK(c2_distance(tuple_product(e, e), e) < 1e-9);
  }
}

TEST_CASE("sampled locality verdicts for the transpose maps") {
  const DualObject s3 = decompose_regular(symmetric_group(3), 1);
  SamplingPlan plan;
  plan.n_random = 50;
  const L2Verdict ok = is_local_automorphism_l2(
      [&](const BlockTuple& f) { return apply_block_map(transpose_block_map(s3, 2), f); }, s3,
      plan);
  CHECK_FALSE(ok.refuted);
  CHECK(ok.samples >= 50);

  const DualObject a4 = decompose_regular(alternating_group(4), 1);
  const L2Verdict bad = is_local_automorphism_l2(
      [&](const BlockTuple& f) { return apply_block_map(transpose_block_map(a4, 3), f); }, a4,
      plan);
  CHECK(bad.refuted);
  CHECK(bad.obstruction_dim == 3);
  REQUIRE(bad.witness.has_value());
  const PointDecision pd = local_at_point_l2(
      [&](const BlockTuple& f) { return apply_block_map(transpose_block_map(a4, 3), f); },
      *bad.witness, a4);
  CHECK_FALSE(pd.local);
}

TEST_CASE("a nonlocal scaling map is refuted immediately at the unit") {
  const DualObject dual = decompose_regular(symmetric_group(3), 1);
  SamplingPlan plan;
  plan.n_random = 0;
  const L2Verdict v = is_local_automorphism_l2(
      [](const BlockTuple& f) { return tuple_scale(f, 2.0); }, dual, plan);
  CHECK(v.refuted);
  CHECK(v.samples == 1);
}

TEST_CASE("separating function separates lp candidates") {
  const FiniteGroup g = symmetric_group(3);
  const AlgebraElement sep = separating_function(g);
  REQUIRE(sep.size() == 6);
  CHECK(std::abs(sep(0) - 1.0) < 1e-15);
  CHECK(std::abs(sep(5) - 6.0) < 1e-15);

  const auto chars = enumerate_characters(g);
  SamplingPlan plan;
  plan.n_random = 10;

  for (const GroupMap& m : enumerate_antiautomorphisms(g)) {
    const LpVerdict v = local_check_lp({chars[1], m}, g, plan);
    CHECK(v.refuted);
    CHECK(v.samples == 1);
    REQUIRE(v.witness.has_value());
    CHECK((*v.witness - sep).cwiseAbs().maxCoeff() < 1e-15);
  }
  for (const GroupMap& m : enumerate_automorphisms(g)) {
    const LpVerdict v = local_check_lp({chars[1], m}, g, plan);
    CHECK_FALSE(v.refuted);
    CHECK(v.samples == 12);
  }
}

TEST_CASE("on commutative groups every motion kind stays local") {
  const FiniteGroup g = cyclic_group(6);
  const auto chars = enumerate_characters(g);
  SamplingPlan plan;
  plan.n_random = 5;
  for (const GroupMap& m : enumerate_antiautomorphisms(g)) {
    const LpVerdict v = local_check_lp({chars[2], m}, g, plan);
    CHECK_FALSE(v.refuted);
  }
}
