#include <doctest.h>

#include "srgeo/catalog.hpp"
#include "srgeo/tensor.hpp"
#include "support/generators.hpp"

using namespace srgeo;

TEST_SUITE_BEGIN("tensor");

namespace {

Mat diag(std::initializer_list<double> v) {
  Mat m = Mat::Zero(v.size(), v.size());
  int i = 0;
  for (double x : v) m(i, i) = x, ++i;
  return m;
}

}  // namespace

TEST_CASE("eval_metric") {
  MetricSpec mink = get_metric("minkowski");
  Point p(4);
  p << 0.3, -1.0, 2.0, 5.0;
  CHECK(eval_metric(mink, p).isApprox(diag({-1, 1, 1, 1})));

  MetricSpec schw = get_metric("schwarzschild", {{"m", 1.0}});
  Point horizon(4);
  horizon << 0.0, 2.0, 1.0, 0.0;
  CHECK_THROWS_AS(eval_metric(schw, horizon), EvalError);

  MetricSpec degen = parse_metric_file("dim = 2\ncoords = t, x\ng[0][0] = -1\ng[1][1] = t^4\n");
  Point origin(2);
  origin << 0.0, 7.0;
  CHECK(eval_metric(degen, origin).isApprox(diag({-1, 0})));
}

TEST_CASE("signature_of") {
  CHECK(signature_of(diag({-1, 1, 1, 1})) == Signature{0, 3, 1});
  CHECK(signature_of(diag({-1, 0})) == Signature{1, 0, 1});
  CHECK(signature_of(Mat::Zero(3, 3)) == Signature{3, 0, 0});
}

TEST_CASE("radical_basis") {
  CHECK(radical_basis(diag({-1, 1, 1, 1})).size() == 0);

  RadicalBasis rb = radical_basis(diag({-1, 0}));
  REQUIRE(rb.size() == 1);
  CHECK(std::abs(rb.basis(1, 0)) == doctest::Approx(1.0));
  CHECK(std::abs(rb.basis(0, 0)) == doctest::Approx(0.0));

  CHECK(radical_basis(diag({0, 0, 1})).size() == 2);
}

TEST_CASE("is_radical_annihilator") {
  Mat g = diag({-1, 0});
  Vec omega(2);
  omega << 3, 0;
  CHECK(is_radical_annihilator(omega, g));
  omega << 0, 1;
  CHECK_FALSE(is_radical_annihilator(omega, g));

  Mat nondeg = diag({-1, 1, 1, 1});
  Vec any(4);
  any << 1, -2, 3, 0.5;
  CHECK(is_radical_annihilator(any, nondeg));
}

TEST_CASE("cometric") {
  CHECK(cometric(diag({-1, 1, 1, 1})).gplus.isApprox(diag({-1, 1, 1, 1})));
  CHECK(cometric(diag({-1, 0})).gplus.isApprox(diag({-1, 0})));
  CHECK(cometric(diag({4, 0, 2})).gplus.isApprox(diag({0.25, 0, 0.5})));
  CHECK(cometric(diag({4, 0, 2})).rank == 2);
}

TEST_CASE("cocontract") {
  CoMetric co = cometric(diag({-1, 0}));
  Vec omega(2), tau(2);
  omega << 2, 0;
  tau << 2, 0;
  CHECK(cocontract(omega, tau, co) == doctest::Approx(-4.0));

  CoMetric id = cometric(Mat::Identity(2, 2));
  omega << 1, 2;
  tau << 3, 4;
  CHECK(cocontract(omega, tau, id) == doctest::Approx(11.0));

  CoMetric deg = cometric(diag({1, 0}));
  Vec bad(2);
  bad << 0, 1;
  CHECK_THROWS_AS(cocontract(bad, bad, deg, true), AnnihilatorError);
}

TEST_CASE("pseudoinverse identities on random rank-deficient matrices") {
  std::mt19937 rng(4242);
  std::uniform_int_distribution<int> dims(2, 6);
  for (int i = 0; i < 1000; ++i) {
    int n = dims(rng);
    std::uniform_int_distribution<int> zeros(0, n - 1);
    Mat g = testsupport::random_symmetric_rank_deficient(rng, n, zeros(rng));
    CoMetric co = cometric(g);
    CHECK((g * co.gplus * g - g).cwiseAbs().maxCoeff() <= 1e-8);
    CHECK((co.gplus * g * co.gplus - co.gplus).cwiseAbs().maxCoeff() <= 1e-8);
    CHECK((co.gplus - co.gplus.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("cocontract realizes the co-inner product") {
  std::mt19937 rng(27182);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    int n = 4;
    std::uniform_int_distribution<int> zeros(0, n - 1);
    Mat g = testsupport::random_symmetric_rank_deficient(rng, n, zeros(rng));
    Vec x(n), y(n);
    for (int j = 0; j < n; ++j) x[j] = gauss(rng), y[j] = gauss(rng);
    CoMetric co = cometric(g);
    double lhs = cocontract(g * x, g * y, co, true);
    double rhs = x.dot(g * y);
    CHECK(std::abs(lhs - rhs) <= 1e-9 * std::max(1.0, std::abs(rhs)));
  }
}

TEST_CASE("signature zero count equals radical dimension") {
  std::mt19937 rng(555);
  for (int i = 0; i < 200; ++i) {
    std::uniform_int_distribution<int> dims(2, 6);
    int n = dims(rng);
    std::uniform_int_distribution<int> zeros(0, n);
    Mat g = testsupport::random_symmetric_rank_deficient(rng, n, zeros(rng));
    CHECK(signature_of(g).zero == radical_basis(g).size());
  }
}

TEST_CASE("annihilator membership iff orthogonal to the radical") {
  std::mt19937 rng(777);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    Mat g = testsupport::random_symmetric_rank_deficient(rng, 4, 2);
    RadicalBasis rb = radical_basis(g);
    Vec omega(4);
    for (int j = 0; j < 4; ++j) omega[j] = gauss(rng);
    bool member = is_radical_annihilator(omega, g, 1e-8);
    bool orthogonal = (rb.basis.transpose() * omega).cwiseAbs().maxCoeff() <=
                      1e-8 * (1.0 + omega.cwiseAbs().maxCoeff());
    CHECK(member == orthogonal);
  }
}

TEST_SUITE_END();
