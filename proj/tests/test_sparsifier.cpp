#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracle.hpp"
#include "wormlab/sparsifier.hpp"

using namespace wormlab;

namespace {

SparsifyConfig quick() {
  SparsifyConfig c;
  c.t_grid = {0.5, 1.5, 2.5, 3.5};
  return c;
}

}  // namespace

TEST(Loss, ZeroAtTargetWithoutPenalty) {
  auto c = quick();
  c.lambda_l1 = 0;
  auto h = learned_h0();
  EXPECT_EQ(loss(h, target_observables(h, c), c), 0.0);
}

TEST(Loss, PenaltyOnlyAtTarget) {
  auto c = quick();
  c.lambda_l1 = 0.3;
  auto h = learned_h0();
  EXPECT_DOUBLE_EQ(loss(h, target_observables(h, c), c), 0.3 * h.l1_norm());
}

TEST(Loss, MatchesSeparatePipeline) {
  auto c = quick();
  c.lambda_l1 = 0.05;
  c.beta = 0.6;
  auto target = learned_h0();
  auto cand = random_commuting_variant(target, 4);
  double mine = loss(cand, target_observables(target, c), c);
  double ref = oracle::sparsify_loss(cand, target, c.lambda_l1, c.t_grid, c.beta, 1.0 / std::sqrt(2.0));
  EXPECT_NEAR(mine, ref, 1e-9);
}

TEST(Loss, Errors) {
  auto c = quick();
  auto data = target_observables(learned_h0(), c);
  EXPECT_THROW(loss(dense_syk(8, 4, 1.0, 0), data, c), std::invalid_argument);
  auto d = c;
  d.t_grid = {1.0};
  EXPECT_THROW(loss(learned_h0(), data, d), std::invalid_argument);
  d = c;
  d.t_grid.clear();
  EXPECT_THROW(d.validate(), std::invalid_argument);
  d = c;
  d.fd_epsilon = 0;
  EXPECT_THROW(d.validate(), std::invalid_argument);
}

TEST(Candidates, AllSubsetsInOrder) {
  auto s = all_candidates(7, 4);
  EXPECT_EQ(s.monomials.size(), 35u);
  EXPECT_EQ(s.monomials.front(), MajoranaMonomial({1, 2, 3, 4}));
  EXPECT_EQ(s.monomials.back(), MajoranaMonomial({4, 5, 6, 7}));
  for (size_t k = 1; k < s.monomials.size(); ++k) EXPECT_LT(s.monomials[k - 1], s.monomials[k]);
  auto c = s.coefficients_of(learned_h0());
  auto back = s.build(c);
  EXPECT_EQ(back.size(), 5u);
  EXPECT_DOUBLE_EQ(back.coefficient({2, 3, 5, 7}), 0.49);
  EXPECT_THROW(s.build({1.0}), std::invalid_argument);
}

TEST(Gradient, MatchesFivePointStencil) {
  auto c = quick();
  c.lambda_l1 = 0.01;
  auto set = all_candidates(6, 4);
  std::mt19937_64 rng(8);
  std::normal_distribution<double> g(0, 0.3);
  std::vector<double> x(set.monomials.size());
  for (double& v : x) v = g(rng);
  auto data = target_observables(dense_syk(6, 4, 1.0, 1), c);
  std::vector<bool> mask(x.size(), true);
  auto grad = fd_gradient(set, x, mask, data, c);
  double h = 1e-3;
  for (size_t k = 0; k < x.size(); ++k) {
    auto at = [&](double d) {
      auto y = x;
      y[k] += d;
      return loss(set.build(y), data, c);
    };
    double ref = (-at(2 * h) + 8 * at(h) - 8 * at(-h) + at(-2 * h)) / (12 * h);
    EXPECT_LT(std::abs(grad[k] - ref), 1e-4 * std::max(std::abs(ref), 1e-3)) << k;
  }
  mask[0] = false;
  EXPECT_EQ(fd_gradient(set, x, mask, data, c)[0], 0.0);
}

TEST(Sparsify, FixedPointAtTarget) {
  auto c = quick();
  c.lambda_l1 = 0;
  auto h = learned_h0();
  auto tr = sparsify(h, c, &h);
  EXPECT_EQ(tr.status, "zero_gradient");
  EXPECT_EQ(tr.iterations.size(), 1u);
  EXPECT_EQ(tr.final_model.size(), h.size());
}

TEST(Sparsify, DenseTargetLosesTermsAndFitsBetter) {
  SparsifyConfig c;
  c.lambda_l1 = 0.005;
  c.threads = 4;
  auto target = dense_syk(8, 4, 1.0, 0);
  auto tr = sparsify(target, c);
  const auto& first = tr.iterations.front();
  const auto& last = tr.iterations.back();
  EXPECT_EQ(first.active_terms, 70);
  EXPECT_LT(last.active_terms, 70);
  EXPECT_LE(last.observable_loss, 0.5 * first.observable_loss);
  for (size_t k = 1; k < tr.iterations.size(); ++k) EXPECT_LE(tr.iterations[k].loss, tr.iterations[k - 1].loss);
  // pruned terms stay pruned without reactivation
  EXPECT_EQ(static_cast<int>(tr.final_model.size()), last.active_terms);
}

TEST(Sparsify, PrunedTermsStayPruned) {
  auto c = quick();
  c.lambda_l1 = 0.02;
  c.max_iters = 15;
  auto set = all_candidates(6, 4);
  auto target = dense_syk(6, 4, 1.0, 2);
  auto tr = sparsify(target, c);
  for (size_t k = 1; k < tr.iterations.size(); ++k)
    EXPECT_LE(tr.iterations[k].active_terms, tr.iterations[k - 1].active_terms);
}

TEST(Sparsify, ReactivationIsNoWorse) {
  SparsifyConfig c;
  c.lambda_l1 = 0.005;
  c.threads = 4;
  auto target = dense_syk(8, 4, 1.0, 0);
  auto off = sparsify(target, c);
  c.reactivation = true;
  auto on = sparsify(target, c);
  EXPECT_LE(on.iterations.back().loss, off.iterations.back().loss);
}

TEST(Sparsify, DeterministicUnderSeed) {
  auto c = quick();
  c.max_iters = 5;
  c.seed = 3;
  auto target = dense_syk(6, 4, 1.0, 0);
  auto a = sparsify(target, c), b = sparsify(target, c);
  ASSERT_EQ(a.iterations.size(), b.iterations.size());
  for (size_t k = 0; k < a.iterations.size(); ++k) EXPECT_EQ(a.iterations[k].loss, b.iterations[k].loss);
  c.seed = 4;
  EXPECT_NE(sparsify(target, c).iterations.front().loss, a.iterations.front().loss);
}

TEST(Sparsify, Guards) {
  auto c = quick();
  EXPECT_THROW(sparsify(dense_syk(12, 4, 1.0, 0), c), std::invalid_argument);
  auto wrong = learned_h0();
  EXPECT_THROW(sparsify(dense_syk(6, 4, 1.0, 0), c, &wrong), std::invalid_argument);
  c.fd_epsilon = -1e-4;
  EXPECT_THROW(sparsify(dense_syk(6, 4, 1.0, 0), c), std::invalid_argument);
}
