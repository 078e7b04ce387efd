#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <limits>

#include "galab/conv.hpp"

using namespace galab;

namespace {

AlgebraElement delta(const FiniteGroup& g, int x) {
  AlgebraElement f = AlgebraElement::Zero(g.order);
  f(x) = static_cast<double>(g.order);
  return f;
}

}  // namespace

TEST_CASE("convolution on Z2 matches the hand computation") {
  const FiniteGroup g = cyclic_group(2);
  AlgebraElement f(2), h(2);
  f << 1, 2;
  h << 3, 4;
  const AlgebraElement r = convolve(f, h, g);
  CHECK(std::abs(r(0) - 5.5) < 1e-14);
  CHECK(std::abs(r(1) - 5.0) < 1e-14);
}

TEST_CASE("scaled deltas multiply like group elements") {
  const FiniteGroup g = symmetric_group(3);
  for (int a = 0; a < g.order; ++a)
    for (int b = 0; b < g.order; ++b) {
      const AlgebraElement r = convolve(delta(g, a), delta(g, b), g);
      CHECK((r - delta(g, g.mul(a, b))).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("convolution unit is two sided and convolution associates") {
  const FiniteGroup g = quaternion_group();
  CounterRng rng(7);
  const AlgebraElement f = gaussian_vector(rng, g.order);
  const AlgebraElement h = gaussian_vector(rng, g.order);
  const AlgebraElement k = gaussian_vector(rng, g.order);
  const AlgebraElement u = convolution_unit(g);
  CHECK((convolve(f, u, g) - f).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((convolve(u, f, g) - f).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((convolve(convolve(f, h, g), k, g) - convolve(f, convolve(h, k, g), g))
            .cwiseAbs()
            .maxCoeff() < 1e-12);
}

TEST_CASE("convolution does not commute on S3") {
  const FiniteGroup g = symmetric_group(3);
  int a = -1, b = -1;
  for (int x = 0; x < g.order && a < 0; ++x)
    for (int y = 0; y < g.order; ++y)
      if (g.mul(x, y) != g.mul(y, x)) {
        a = x;
        b = y;
        break;
      }
  REQUIRE(a >= 0);
  const AlgebraElement lhs = convolve(delta(g, a), delta(g, b), g);
  const AlgebraElement rhs = convolve(delta(g, b), delta(g, a), g);
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() > 1.0);
}

TEST_CASE("p norms against hand values on Z2") {
  const FiniteGroup g = cyclic_group(2);
  AlgebraElement f(2);
  f << 3, 4;
  CHECK(std::abs(p_norm(f, 1.0, g) - 3.5) < 1e-14);
  CHECK(std::abs(p_norm(f, 2.0, g) - std::sqrt(12.5)) < 1e-14);
  CHECK(std::abs(p_norm(f, 4.0, g) - std::pow((81.0 + 256.0) / 2.0, 0.25)) < 1e-14);
  CHECK(std::abs(p_norm(f, std::numeric_limits<double>::infinity(), g) - 4.0) < 1e-14);
  CHECK_THROWS_AS(p_norm(f, 0.5, g), InvalidP);
  CHECK_THROWS_AS(p_norm(f, -2.0, g), InvalidP);
  CHECK_THROWS_AS(p_norm(f, std::numeric_limits<double>::quiet_NaN(), g), InvalidP);
}

TEST_CASE("fourier transform inverts, is isometric, and is multiplicative") {
  for (const FiniteGroup& g : {symmetric_group(3), alternating_group(4), cyclic_group(7)}) {
    INFO(g.name);
    const DualObject dual = decompose_regular(g, 1);
    CounterRng rng(11);
    for (int t = 0; t < 20; ++t) {
      const AlgebraElement f = gaussian_vector(rng, g.order);
      const AlgebraElement h = gaussian_vector(rng, g.order);
      const BlockTuple fh = fourier(f, dual);
      CHECK((inverse_fourier(fh, dual) - f).cwiseAbs().maxCoeff() < 1e-10);
      CHECK(std::abs(p_norm(f, 2.0, g) - fh.c2_norm()) < 1e-10 * p_norm(f, 2.0, g));
      CHECK(c2_distance(fourier(convolve(f, h, g), dual),
                        tuple_product(fh, fourier(h, dual))) < 1e-9);
    }
  }
}

TEST_CASE("unit transforms to the identity tuple") {
  const DualObject dual = decompose_regular(symmetric_group(3), 1);
  const BlockTuple t = fourier(convolution_unit(dual.group), dual);
  CHECK(c2_distance(t, identity_tuple(dual)) < 1e-10);
}

TEST_CASE("minimal ideal units are idempotent central orthogonal and resolve the unit") {
  for (const FiniteGroup& g : {symmetric_group(3), quaternion_group()}) {
    INFO(g.name);
    const DualObject dual = decompose_regular(g, 1);
    std::vector<AlgebraElement> units;
    for (int s = 0; s < dual.size(); ++s) units.push_back(minimal_ideal_unit(dual, s));

    CounterRng rng(3);
    const AlgebraElement f = gaussian_vector(rng, g.order);
    AlgebraElement total = AlgebraElement::Zero(g.order);
    for (int s = 0; s < dual.size(); ++s) {
      const AlgebraElement& e = units[s];
      CHECK((convolve(e, e, g) - e).cwiseAbs().maxCoeff() < 1e-10);
      CHECK((convolve(e, f, g) - convolve(f, e, g)).cwiseAbs().maxCoeff() < 1e-10);
      for (int r = 0; r < s; ++r)
        CHECK(convolve(e, units[r], g).cwiseAbs().maxCoeff() < 1e-10);
      total += e;
    }
    CHECK((total - convolution_unit(g)).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("c2 norm weighs blocks by their dimension") {
  const DualObject dual = decompose_regular(symmetric_group(3), 1);
  BlockTuple t = identity_tuple(dual);
  // dims {1,1,2}: ||(I,I,I)||^2 = 1 + 1 + 2*2 = 6.
  CHECK(std::abs(t.c2_norm() - std::sqrt(6.0)) < 1e-12);
  t.blocks[0](0, 0) = 3.0;
  CHECK(std::abs(t.c2_norm() - std::sqrt(9.0 + 1.0 + 4.0)) < 1e-12);
}

TEST_CASE("shape guards throw the named errors") {
  const FiniteGroup g = symmetric_group(3);
  const DualObject dual = decompose_regular(g, 1);
  const AlgebraElement bad = AlgebraElement::Zero(5);
  CHECK_THROWS_AS(convolve(bad, bad, g), SizeMismatch);
  CHECK_THROWS_AS(fourier(bad, dual), SizeMismatch);
  CHECK_THROWS_AS(indicator_tuple(dual, 99), IndexOutOfRange);
  CHECK_THROWS_AS(indicator_tuple(dual, -1), IndexOutOfRange);
  BlockTuple t = identity_tuple(dual);
  t.blocks.pop_back();
  CHECK_THROWS_AS(inverse_fourier(t, dual), ShapeMismatch);
  BlockTuple w = identity_tuple(dual);
  w.blocks[2] = Mat::Identity(3, 3);
  CHECK_THROWS_AS(inverse_fourier(w, dual), ShapeMismatch);
}
