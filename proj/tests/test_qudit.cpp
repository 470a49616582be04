#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "spinent/oracle.hpp"
#include "spinent/qudit.hpp"

namespace spinent::qudit {
namespace {

const spin::OperatorSet& pauli() {
  static const spin::OperatorSet p = spin::pauli_matrices();
  return p;
}

MatrixC at(const MatrixC& op, int site) { return embed(op, site, {2, 2, 2}); }

TEST(Ghz, Properties) {
  const CompositeState g = ghz_state(3);
  for (int k = 0; k < 3; ++k) EXPECT_NEAR(g.expect(at(pauli().z(), k)), 0.0, 1e-15);
  const MatrixC xxx = kron(kron(pauli().x(), pauli().x()), pauli().x());
  EXPECT_LT((xxx * g.amplitudes() + g.amplitudes()).norm(), 1e-14);
  const std::vector<MatrixC> ops{at(pauli().z(), 0), at(pauli().z(), 1)};
  const auto m = moments(g, ops);
  EXPECT_NEAR(m.variance(Eigen::Vector2d(1.0, -1.0)), 0.0, 1e-14);
  EXPECT_NEAR(m.variance(Eigen::Vector2d(1.0, 1.0)), 4.0, 1e-14);
}

TEST(Ghz, RejectsSingleSite) { EXPECT_THROW(ghz_state(1), InvalidArgument); }

TEST(W, Properties) {
  const CompositeState w = w_state();
  EXPECT_NEAR(w.expect(at(pauli().z(), 0)), -1.0 / 3.0, 1e-15);
  const MatrixC rho = w.density();
  for (int k = 1; k < 3; ++k)
    for (int c = 0; c < 3; ++c)
      EXPECT_NEAR(w.expect(at(pauli().ops[c], k)), w.expect(at(pauli().ops[c], 0)), 1e-15);
  const MatrixC total = at(pauli().z(), 0) + at(pauli().z(), 1) + at(pauli().z(), 2);
  EXPECT_LT((total * w.amplitudes() + w.amplitudes()).norm(), 1e-14);
  EXPECT_NEAR(w.expect(at(pauli().x(), 0) * at(pauli().x(), 1)), 2.0 / 3.0, 1e-14);
  EXPECT_NEAR(rho.trace().real(), 1.0, 1e-14);
}

TEST(CompositeState, Validation) {
  EXPECT_THROW(CompositeState({2, 2}, VectorC(VectorC::Ones(4))), InvalidArgument);
  EXPECT_THROW(CompositeState({2, 3}, basis_vector(4, 0)), InvalidArgument);
  MatrixC neg = MatrixC::Zero(2, 2);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  EXPECT_THROW(CompositeState({2}, neg), InvalidArgument);
  EXPECT_NO_THROW(CompositeState({2}, MatrixC(MatrixC::Identity(2, 2) * 0.5)));
}

TEST(Moments, CoherentProduct) {
  const CompositeState up = product_state(std::vector<VectorC>(3, basis_vector(2, 0)));
  const MomentSet m = site_moments(up, spin::spin_matrices(0.5));
  for (int k = 0; k < 3; ++k) {
    EXPECT_NEAR(m.mean_z[k], 0.5, 1e-15);
    EXPECT_NEAR(m.cov(k, k), 0.25, 1e-15);
    EXPECT_NEAR(m.cov(3 + k, 3 + k), 0.25, 1e-15);
    EXPECT_NEAR((*m.var_z)[k], 0.0, 1e-15);
  }
  EXPECT_EQ(m.scale, 1.0);
}

TEST(Moments, DimensionMismatch) {
  const CompositeState g = ghz_state(3);
  const std::vector<MatrixC> bad{MatrixC::Identity(4, 4)};
  EXPECT_THROW(moments(g, bad), InvalidArgument);
  EXPECT_THROW(site_moments(g, spin::spin_matrices(1.0)), InvalidArgument);
}

TEST(Moments, CovarianceMatchesDirectVariance) {
  oracle::Rng rng(5);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int t = 0; t < 20; ++t) {
    const CompositeState s({2, 2, 2}, oracle::haar_state(8, rng));
    const MomentSet m = site_moments(s, spin::spin_matrices(0.5));
    VectorR a(3), b(3);
    for (int k = 0; k < 3; ++k) {
      a[k] = n(rng);
      b[k] = n(rng);
    }
    MatrixC u = MatrixC::Zero(8, 8);
    const spin::OperatorSet sp = spin::spin_matrices(0.5);
    for (int k = 0; k < 3; ++k) u += a[k] * at(sp.x(), k) + b[k] * at(sp.y(), k);
    const double direct = s.expect(u * u) - std::pow(s.expect(u), 2);
    EXPECT_NEAR(m.variance(a, b), direct, 1e-12);
  }
}

InferenceObservable relabel_z(std::function<double(std::span<const double>)> f) {
  return {{1, 2}, {pauli().z(), pauli().z()}, std::move(f)};
}

TEST(Inference, GhzFirstPartnerZ) {
  const CompositeState g = ghz_state(3);
  EXPECT_NEAR(inference_variance(g, 0, pauli().z(), relabel_z([](auto v) { return v[0]; })), 0.0, 1e-14);
  // The product of two perfectly correlated partner outcomes is always +1.
  EXPECT_NEAR(inference_variance(g, 0, pauli().z(), relabel_z([](auto v) { return v[0] * v[1]; })), 1.0, 1e-14);
}

TEST(Inference, GhzNegatedXProduct) {
  const InferenceObservable inf{{1, 2}, {pauli().x(), pauli().x()}, [](auto v) { return -v[0] * v[1]; }};
  EXPECT_NEAR(inference_variance(ghz_state(3), 0, pauli().x(), inf), 0.0, 1e-14);
}

TEST(Inference, WAgreementRule) {
  const InferenceObservable inf{{1, 2}, {pauli().x(), pauli().x()}, [](auto v) {
                                  if (v[0] > 0 && v[1] > 0) return 1.0;
                                  if (v[0] < 0 && v[1] < 0) return -1.0;
                                  return 0.0;
                                }};
  EXPECT_NEAR(inference_variance(w_state(), 0, pauli().x(), inf), 0.5, 1e-14);
}

TEST(Inference, RejectsSharedSites) {
  const CompositeState g = ghz_state(3);
  const InferenceObservable same{{1, 1}, {pauli().x(), pauli().z()}, [](auto v) { return v[0]; }};
  EXPECT_THROW(inference_variance(g, 0, pauli().x(), same), InvalidArgument);
  const InferenceObservable target{{0, 2}, {pauli().x(), pauli().z()}, [](auto v) { return v[0]; }};
  EXPECT_THROW(inference_variance(g, 0, pauli().x(), target), InvalidArgument);
}

/// Var(A - f) from the full joint distribution over the product eigenbasis.
double brute_inference(const MatrixC& rho, const MatrixC& a, const InferenceObservable& inf) {
  Eigen::SelfAdjointEigenSolver<MatrixC> ea(a), e1(inf.partner_ops[0]), e2(inf.partner_ops[1]);
  double m1 = 0.0, m2 = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) {
        const VectorC v = kron(kron(VectorC(ea.eigenvectors().col(i)), VectorC(e1.eigenvectors().col(j))),
                               VectorC(e2.eigenvectors().col(k)));
        const double p = v.dot(rho * v).real();
        const double vals[2] = {e1.eigenvalues()[j], e2.eigenvalues()[k]};
        const double d = ea.eigenvalues()[i] - inf.relabel(std::span<const double>(vals, 2));
        m1 += p * d;
        m2 += p * d * d;
      }
  return m2 - m1 * m1;
}

TEST(Inference, MatchesJointDistribution) {
  oracle::Rng rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int t = 0; t < 30; ++t) {
    const auto strat = oracle::detail::random_strategy(rng);
    const auto& pair = strat[0];
    MatrixC rho;
    if (t % 2 == 0) {
      const VectorC v = oracle::haar_state(8, rng);
      rho = v * v.adjoint();
    } else {
      rho = oracle::sample_biseparable({}, rng).density();
    }
    const CompositeState s({2, 2, 2}, rho);
    for (int c = 0; c < 2; ++c) {
      const double got = inference_variance(s, 0, pair.targets[c], pair.inferences[c]);
      EXPECT_GE(got, 0.0);
      EXPECT_NEAR(got, brute_inference(rho, pair.targets[c], pair.inferences[c]), 1e-12);
    }
  }
}

TEST(Criterion5, Ghz) {
  const auto r = criterion5_evaluate(ghz_state(3), ghz_strategy(), 1.0);
  for (double b : r.b) EXPECT_NEAR(b, 0.0, 1e-12);
  EXPECT_TRUE(r.genuine());
  EXPECT_TRUE(r.full_inseparability());
}

TEST(Criterion5, W) {
  const auto r = criterion5_evaluate(w_state(), w_strategy(), 1.0);
  for (double b : r.b) EXPECT_NEAR(b, 0.5, 1e-12);
  EXPECT_FALSE(r.genuine());
  EXPECT_TRUE(r.full_inseparability());
}

TEST(Criterion5, ProductWithConstantRelabels) {
  const CompositeState up = product_state(std::vector<VectorC>(3, basis_vector(2, 0)));
  double best = 1e300;
  for (int i = -10; i <= 10; ++i)
    for (int j = -10; j <= 10; ++j) {
      const double cz = i / 10.0, cx = j / 10.0;
      std::array<InferencePair, 3> s;
      for (int k = 0; k < 3; ++k) {
        const auto pr = detail::partners_of(k);
        s[k].targets = {pauli().z(), pauli().x()};
        s[k].inferences[0] = {{pr[0], pr[1]}, {pauli().z(), pauli().z()}, [cz](auto) { return cz; }};
        s[k].inferences[1] = {{pr[0], pr[1]}, {pauli().x(), pauli().x()}, [cx](auto) { return cx; }};
      }
      const auto r = criterion5_evaluate(up, s, 1.0);
      for (double b : r.b) best = std::min(best, b);
      EXPECT_FALSE(r.full_inseparability());
    }
  EXPECT_GE(best, 1.0 - 1e-12);
}

TEST(Criterion5, RejectsBadBound) {
  EXPECT_THROW(criterion5_evaluate(ghz_state(3), ghz_strategy(), 0.0), InvalidArgument);
  EXPECT_THROW(criterion5_evaluate(ghz_state(4), ghz_strategy(), 1.0), InvalidArgument);
}

}  // namespace
}  // namespace spinent::qudit
