#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fauxgraph/adam.hpp"
#include "fauxgraph/autodiff.hpp"
#include "fauxgraph/csr_matrix.hpp"
#include "fauxgraph/error.hpp"
#include "test_support.hpp"

namespace fauxgraph {
namespace {

using testing::central_difference;
using testing::naive_matmul;
using testing::random_matrix;
using testing::relative_error;

void expect_close(const DenseMatrix& a, const DenseMatrix& b, double tol) {
  ASSERT_EQ(a.rows(), b.rows());
  ASSERT_EQ(a.cols(), b.cols());
  EXPECT_LE(max_abs_diff(a, b), tol);
}

TEST(DenseOps, MatmulMatchesTripleLoop) {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 20; ++t) {
    const auto x = random_matrix(1 + t % 7, 1 + t % 5, rng);
    const auto y = random_matrix(x.cols(), 1 + t % 4, rng);
    expect_close(multiply(x, y), naive_matmul(x, y), 1e-12);
    expect_close(multiply_nt(x, y.transposed()), naive_matmul(x, y), 1e-12);
    expect_close(multiply_tn(x.transposed(), y), naive_matmul(x, y), 1e-12);
  }
}

TEST(DenseOps, ShapeMismatchThrows) {
  EXPECT_THROW(multiply(DenseMatrix(2, 3), DenseMatrix(2, 3)), DimensionError);
}

TEST(Csr, MultiplyMatchesDense) {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 1 + t % 9;
    const auto a = testing::random_symmetric(n, 0.4, rng);
    const auto csr = CsrMatrix::from_sparse(a);
    const auto h = random_matrix(n, 3, rng);
    expect_close(csr.to_dense(), testing::densify(a), 0.0);
    expect_close(csr.multiply(h), naive_matmul(testing::densify(a), h), 1e-12);
    expect_close(csr.transpose_multiply(h), naive_matmul(testing::densify(a).transposed(), h), 1e-12);
    expect_close(csr.transposed().to_dense(), testing::densify(a).transposed(), 0.0);
  }
}

TEST(Ops, SpmmMatchesDense) {
  std::mt19937_64 rng(3);
  const auto a = testing::random_symmetric(6, 0.5, rng);
  const auto h = random_matrix(6, 4, rng);
  ad::Tape tape;
  const auto out = ad::spmm(CsrMatrix::from_sparse(a), tape.constant(h));
  expect_close(out.value(), naive_matmul(testing::densify(a), h), 1e-12);
}

TEST(Ops, ReluValues) {
  ad::Tape tape;
  const auto x = tape.parameter(DenseMatrix{{-1.0, 0.0, 2.5}});
  const auto y = ad::relu(x);
  EXPECT_EQ(y.value(), (DenseMatrix{{0.0, 0.0, 2.5}}));
  tape.backward(ad::sum(y));
  // Subgradient 0 at the kink.
  EXPECT_EQ(x.grad(), (DenseMatrix{{0.0, 0.0, 1.0}}));
}

TEST(Ops, SoftmaxRowsSumToOneAndAreStable) {
  ad::Tape tape;
  const auto y = ad::row_softmax(tape.constant(DenseMatrix{{1000.0, 1000.0}, {0.0, std::log(3.0)}}));
  EXPECT_NEAR(y.value()(0, 0), 0.5, 1e-12);
  EXPECT_NEAR(y.value()(1, 1), 0.75, 1e-12);
  EXPECT_TRUE(y.value().all_finite());
  std::mt19937_64 rng(4);
  const auto z = ad::row_softmax(tape.constant(random_matrix(10, 7, rng, 5.0)));
  for (std::size_t r = 0; r < 10; ++r) {
    double s = 0.0;
    for (double v : z.value().row(r)) {
      EXPECT_GT(v, 0.0);
      s += v;
    }
    EXPECT_NEAR(s, 1.0, 1e-12);
  }
}

TEST(Ops, SumHasUnitGradient) {
  std::mt19937_64 rng(5);
  ad::Tape tape;
  const auto x = tape.parameter(random_matrix(3, 4, rng));
  tape.backward(ad::sum(x));
  EXPECT_EQ(x.grad(), DenseMatrix(3, 4, 1.0));
}

TEST(Ops, SoftmaxShiftInvariant) {
  std::mt19937_64 rng(6);
  const auto x = random_matrix(5, 4, rng);
  auto shifted = x;
  for (std::size_t r = 0; r < 5; ++r)
    for (double& v : shifted.row(r)) v += 3.5 * static_cast<double>(r) - 4.0;
  ad::Tape tape;
  const DenseMatrix plain = ad::row_softmax(tape.constant(x)).value();
  expect_close(plain, ad::row_softmax(tape.constant(shifted)).value(), 1e-12);
}

TEST(Ops, MeanRows) {
  ad::Tape tape;
  const auto y = ad::mean_rows(tape.constant(DenseMatrix{{1.0, 2.0}, {3.0, 6.0}}));
  EXPECT_EQ(y.value(), (DenseMatrix{{2.0, 4.0}}));
  EXPECT_THROW(ad::mean_rows(tape.constant(DenseMatrix(0, 2))), DimensionError);
}

TEST(Ops, SegmentMeanMatchesPerBlockMean) {
  ad::Tape tape;
  const std::vector<ad::Segment> segs{{0, 1}, {1, 3}};
  const auto y = ad::segment_mean(tape.constant(DenseMatrix{{1.0}, {2.0}, {4.0}, {6.0}}), segs);
  EXPECT_EQ(y.value(), (DenseMatrix{{1.0}, {4.0}}));
}

TEST(Ops, GradBeforeBackwardThrows) {
  ad::Tape tape;
  const auto x = tape.parameter(DenseMatrix{{1.0}});
  EXPECT_THROW((void)x.grad(), Error);
}

TEST(Ops, BackwardRequiresScalar) {
  ad::Tape tape;
  const auto x = tape.parameter(DenseMatrix{{1.0, 2.0}});
  EXPECT_THROW(tape.backward(x), DimensionError);
}

TEST(Loss, KnownValues) {
  ad::Tape tape;
  const std::vector<int> one{1};
  EXPECT_NEAR(ad::cross_entropy_loss(tape.constant(DenseMatrix{{0.5}}), one).value()(0, 0), std::log(2.0), 1e-12);
  const std::vector<int> labels{1, 0};
  const auto loss = ad::cross_entropy_loss(tape.constant(DenseMatrix{{0.9}, {0.2}}), labels);
  EXPECT_NEAR(loss.value()(0, 0), -(std::log(0.9) + std::log(0.8)) / 2.0, 1e-12);
  EXPECT_NEAR(loss.value()(0, 0), 0.164252, 1e-6);
}

TEST(Loss, ClampKeepsExtremesFinite) {
  ad::Tape tape;
  const std::vector<int> labels{1, 0};
  const auto p = tape.parameter(DenseMatrix{{0.0}, {1.0}});
  const auto loss = ad::cross_entropy_loss(p, labels);
  // Both entries sit on the clamp; 1 - (1 - eps) is not exactly eps in binary.
  const double upper = 1.0 - ad::kProbabilityClamp;
  EXPECT_NEAR(loss.value()(0, 0), -(std::log(ad::kProbabilityClamp) + std::log(1.0 - upper)) / 2.0, 1e-12);
  tape.backward(loss);
  EXPECT_TRUE(p.grad().all_finite());
}

TEST(Loss, ClosedFormAgreesWithTape) {
  const std::vector<double> p{0.1, 0.7, 0.99};
  const std::vector<int> y{0, 1, 0};
  ad::Tape tape;
  const auto v = ad::cross_entropy_loss(tape.constant(DenseMatrix(3, 1, p)), y);
  EXPECT_NEAR(v.value()(0, 0), ad::binary_cross_entropy(p, y), 1e-15);
}

// Finite-difference check of one unary op: f(x) = sum(op(x) .* w) with fixed
// random w, so every output entry contributes a distinct weight.
using UnaryOp = std::function<ad::Var(ad::Var)>;

double check_unary(const UnaryOp& op, const DenseMatrix& x0, std::mt19937_64& rng) {
  DenseMatrix weights;
  {
    ad::Tape probe;
    const auto y = op(probe.constant(x0));
    weights = random_matrix(y.rows(), y.cols(), rng);
  }
  auto f = [&](const DenseMatrix& x) {
    ad::Tape t;
    const auto y = op(t.constant(x));
    double acc = 0.0;
    for (std::size_t i = 0; i < y.value().size(); ++i) acc += y.value().values()[i] * weights.values()[i];
    return acc;
  };
  ad::Tape tape;
  const auto x = tape.parameter(x0);
  const auto y = op(x);
  const ad::Var loss = tape.record(
      "weighted_sum", DenseMatrix{{f(x0)}}, {y.id()},
      [wv = weights, yid = y.id()](ad::Tape& t, std::size_t self) {
        DenseMatrix g = wv;
        const double up = t.grad_buffer(self)(0, 0);
        for (double& v : g.values()) v *= up;
        t.accumulate(yid, g);
      });
  tape.backward(loss);
  const auto numeric = central_difference(f, x0);
  double worst = 0.0;
  for (std::size_t i = 0; i < x0.size(); ++i) {
    worst = std::max(worst, relative_error(x.grad().values()[i], numeric.values()[i]));
  }
  return worst;
}

class OpGradient : public ::testing::Test {
 protected:
  std::mt19937_64 rng{11};
  static constexpr int kTrials = 100;
  static constexpr double kTol = 1e-6;

  DenseMatrix input(std::size_t r, std::size_t c) {
    auto m = random_matrix(r, c, rng);
    // Keep relu inputs away from the kink so the difference quotient is valid.
    for (double& v : m.values()) {
      if (std::abs(v) < 1e-3) v = 0.1;
    }
    return m;
  }
  std::size_t dim() { return std::uniform_int_distribution<std::size_t>(1, 6)(rng); }
};

TEST_F(OpGradient, Spmm) {
  for (int t = 0; t < kTrials; ++t) {
    const std::size_t n = dim();
    auto a = std::make_shared<const CsrMatrix>(CsrMatrix::from_sparse(testing::random_symmetric(n, 0.5, rng)));
    EXPECT_LT(check_unary([&](ad::Var h) { return ad::spmm(a, h); }, input(n, dim()), rng), kTol);
  }
}

TEST_F(OpGradient, MatmulBothSides) {
  for (int t = 0; t < kTrials; ++t) {
    const std::size_t r = dim(), k = dim(), c = dim();
    const auto left = input(r, k);
    const auto right = input(k, c);
    EXPECT_LT(check_unary([&](ad::Var x) { return ad::matmul(x, x.tape()->constant(right)); }, left, rng), kTol);
    EXPECT_LT(check_unary([&](ad::Var y) { return ad::matmul(y.tape()->constant(left), y); }, right, rng), kTol);
  }
}

TEST_F(OpGradient, Relu) {
  for (int t = 0; t < kTrials; ++t) {
    EXPECT_LT(check_unary([](ad::Var x) { return ad::relu(x); }, input(dim(), dim()), rng), kTol);
  }
}

TEST_F(OpGradient, RowSoftmax) {
  for (int t = 0; t < kTrials; ++t) {
    EXPECT_LT(check_unary([](ad::Var x) { return ad::row_softmax(x); }, input(dim(), dim()), rng), kTol);
  }
}

TEST_F(OpGradient, MeanAndSegmentMean) {
  for (int t = 0; t < kTrials; ++t) {
    EXPECT_LT(check_unary([](ad::Var x) { return ad::mean_rows(x); }, input(dim(), dim()), rng), kTol);
    const std::vector<ad::Segment> segs{{0, 2}, {2, 1}, {3, 3}};
    EXPECT_LT(check_unary([&](ad::Var x) { return ad::segment_mean(x, segs); }, input(6, dim()), rng), kTol);
  }
}

TEST_F(OpGradient, BiasAndColumn) {
  for (int t = 0; t < kTrials; ++t) {
    const std::size_t r = dim(), c = dim();
    const auto x0 = input(r, c);
    const auto b0 = input(1, c);
    EXPECT_LT(check_unary([&](ad::Var x) { return ad::add_row_bias(x, x.tape()->constant(b0)); }, x0, rng), kTol);
    EXPECT_LT(check_unary([&](ad::Var b) { return ad::add_row_bias(b.tape()->constant(x0), b); }, b0, rng), kTol);
    const std::size_t j = std::uniform_int_distribution<std::size_t>(0, c - 1)(rng);
    EXPECT_LT(check_unary([&](ad::Var x) { return ad::select_column(x, j); }, x0, rng), kTol);
  }
}

TEST_F(OpGradient, SegmentProducts) {
  const std::vector<ad::Segment> segs{{0, 3}, {3, 2}};
  for (int t = 0; t < kTrials; ++t) {
    const std::size_t k = dim(), f = dim();
    const auto c0 = input(5, k);
    const auto x0 = input(5, f);
    EXPECT_LT(check_unary([&](ad::Var c) { return ad::segment_transpose_matmul(c, c.tape()->constant(x0), segs); },
                          c0, rng),
              kTol);
    EXPECT_LT(check_unary([&](ad::Var x) { return ad::segment_transpose_matmul(x.tape()->constant(c0), x, segs); },
                          x0, rng),
              kTol);
    const auto a0 = input(5, 3);
    EXPECT_LT(check_unary([&](ad::Var a) { return ad::segment_matmul(a, a.tape()->constant(x0), segs); }, a0, rng),
              kTol);
    EXPECT_LT(check_unary([&](ad::Var h) { return ad::segment_matmul(h.tape()->constant(a0), h, segs); }, x0, rng),
              kTol);
  }
}

TEST_F(OpGradient, CrossEntropy) {
  std::uniform_real_distribution<double> prob(0.05, 0.95);
  std::bernoulli_distribution coin(0.5);
  for (int t = 0; t < kTrials; ++t) {
    const std::size_t n = dim();
    DenseMatrix p(n, 1);
    std::vector<int> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      p(i, 0) = prob(rng);
      y[i] = coin(rng) ? 1 : 0;
    }
    EXPECT_LT(check_unary([&](ad::Var q) { return ad::cross_entropy_loss(q, y); }, p, rng), kTol);
  }
}

TEST(SegmentProducts, MatchPerBlockProducts) {
  std::mt19937_64 rng(9);
  const std::vector<ad::Segment> segs{{0, 3}, {3, 2}};
  const auto c = random_matrix(5, 2, rng);
  const auto x = random_matrix(5, 4, rng);
  ad::Tape tape;
  const auto out = ad::segment_transpose_matmul(tape.constant(c), tape.constant(x), segs);
  ASSERT_EQ(out.rows(), 4u);
  for (std::size_t m = 0; m < 2; ++m) {
    for (std::size_t i = 0; i < 2; ++i) {
      for (std::size_t j = 0; j < 4; ++j) {
        double acc = 0.0;
        for (std::size_t r = segs[m].start; r < segs[m].start + segs[m].length; ++r) acc += c(r, i) * x(r, j);
        EXPECT_NEAR(out.value()(m * 2 + i, j), acc, 1e-12);
      }
    }
  }
}

TEST(Adam, ZeroGradientLeavesParametersUnchanged) {
  AdamState adam;
  std::vector<DenseMatrix> params{DenseMatrix{{1.0, -2.0}}};
  const std::vector<DenseMatrix> grads{DenseMatrix(1, 2)};
  for (int i = 0; i < 5; ++i) adam.update(params, grads);
  EXPECT_EQ(params[0], (DenseMatrix{{1.0, -2.0}}));
}

TEST(Adam, FirstStepMovesByLearningRate) {
  AdamState adam(AdamConfig{0.1, 0.9, 0.999, 1e-8});
  std::vector<DenseMatrix> params{DenseMatrix{{1.0}}};
  const std::vector<DenseMatrix> grads{DenseMatrix{{4.0}}};
  adam.update(params, grads);
  EXPECT_NEAR(params[0](0, 0), 1.0 - 0.1, 1e-8);
  EXPECT_EQ(adam.step(), 1);
}

TEST(Adam, TrajectoryMatchesRecurrence) {
  // Minimize p^2 from p = 1 and replay the update rule by hand.
  const AdamConfig cfg{0.05, 0.9, 0.999, 1e-8};
  AdamState adam(cfg);
  std::vector<DenseMatrix> params{DenseMatrix{{1.0}}};
  double p = 1.0, m = 0.0, v = 0.0;
  for (int k = 1; k <= 10; ++k) {
    const std::vector<DenseMatrix> grads{DenseMatrix{{2.0 * params[0](0, 0)}}};
    adam.update(params, grads);
    const double g = 2.0 * p;
    m = cfg.beta1 * m + (1 - cfg.beta1) * g;
    v = cfg.beta2 * v + (1 - cfg.beta2) * g * g;
    const double m_hat = m / (1 - std::pow(cfg.beta1, k));
    const double v_hat = v / (1 - std::pow(cfg.beta2, k));
    p -= cfg.learning_rate * m_hat / (std::sqrt(v_hat) + cfg.epsilon);
    EXPECT_NEAR(params[0](0, 0), p, 1e-12) << "step " << k;
  }
  for (double x : adam.second_moment()[0].values()) EXPECT_GE(x, 0.0);
}

TEST(Adam, ShapeChangeRejected) {
  AdamState adam;
  std::vector<DenseMatrix> params{DenseMatrix(1, 2)};
  adam.update(params, std::vector<DenseMatrix>{DenseMatrix(1, 2)});
  std::vector<DenseMatrix> other{DenseMatrix(2, 2)};
  EXPECT_THROW(adam.update(other, std::vector<DenseMatrix>{DenseMatrix(2, 2)}), DimensionError);
}

}  // namespace
}  // namespace fauxgraph
