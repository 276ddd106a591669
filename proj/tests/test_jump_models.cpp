#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "photoncount/jump_models.hpp"

using namespace pcs;

namespace {

const JumpModel kSd{JumpKind::SD, 1.0};
const JumpModel kE{JumpKind::E, 1.0};

DensityMatrix random_density(int dim, unsigned seed) {
  std::mt19937 gen(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix g(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) g(i, j) = Complex(normal(gen), normal(gen));
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix{rho, 0.0};
}

}  // namespace

TEST_CASE("one-count map on canonical states") {
  CHECK(one_count_map(kSd, make_fock(0, 8)).rho.cwiseAbs().maxCoeff() == 0.0);

  const UnnormalizedDensity j1 = one_count_map(kSd, make_fock(1, 8));
  CHECK(j1.weight() == doctest::Approx(1.0));
  CHECK(j1.rho(0, 0).real() == doctest::Approx(1.0));

  CHECK(one_count_map(kE, make_thermal(1.0, 64)).weight() ==
        doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("one-count rates") {
  for (int m : {1, 2, 5}) {
    CHECK(one_count_rate(kSd, make_fock(m, 16)) == doctest::Approx(double(m)));
  }
  const DensityMatrix psi_small = make_superposition({{0, 1.0}, {1, 1.0}}, 8);
  CHECK(one_count_rate(kSd, psi_small) == doctest::Approx(0.5));
  CHECK(one_count_rate(kE, psi_small) == doctest::Approx(0.5));

  const DensityMatrix psi_big = make_superposition({{0, 1.0}, {100, 1.0}}, 128);
  CHECK(one_count_rate(kSd, psi_big) == doctest::Approx(50.0));
  CHECK(one_count_rate(kE, psi_big) == doctest::Approx(0.5));

  CHECK(one_count_rate(kSd, make_fock(0, 8)) == 0.0);
  CHECK(one_count_rate(kE, make_fock(0, 8)) == 0.0);
}

TEST_CASE("post one-count states") {
  for (double nbar : {0.5, 1.0, 2.0}) {
    const DensityMatrix th = make_thermal(nbar, 128);
    CHECK(mean_photon(post_one_count(kSd, th)) ==
          doctest::Approx(2.0 * nbar).epsilon(1e-9));
    CHECK(mean_photon(post_one_count(kE, th)) ==
          doctest::Approx(nbar).epsilon(1e-9));
  }

  const DensityMatrix coh = make_coherent(std::sqrt(2.0), 64);
  CHECK(mean_photon(post_one_count(kSd, coh)) ==
        doctest::Approx(2.0).epsilon(1e-9));

  // E on thermal nbar=2: vacuum probability after the count is 1/(1+nbar)
  const DensityMatrix th2 = make_thermal(2.0, 128);
  CHECK(photon_distribution(post_one_count(kE, th2))(0) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-9));

  const DensityMatrix after = post_one_count(kSd, make_fock(1, 8));
  CHECK(photon_distribution(after)(0) == doctest::Approx(1.0));

  CHECK_THROWS_AS(post_one_count(kSd, make_fock(0, 8)), ConditioningError);
}

TEST_CASE("no-count map weights") {
  const DensityMatrix th = make_thermal(1.0, 64);
  CHECK((no_count_map(kSd, th, 0.0).rho - th.rho).cwiseAbs().maxCoeff() ==
        0.0);

  for (int m : {1, 3}) {
    const double tau = 0.7;
    CHECK(no_count_map(kSd, make_fock(m, 8), tau).weight() ==
          doctest::Approx(std::exp(-double(m) * tau)));
  }

  const double tau = 0.4;
  const double p0 = photon_distribution(th)(0);
  CHECK(no_count_map(kE, th, tau).weight() ==
        doctest::Approx(p0 + std::exp(-tau) * (1.0 - p0)));

  // SD on a coherent state stays coherent with a damped amplitude
  const Complex alpha(1.1, 0.4);
  const DensityMatrix coh = make_coherent(alpha, 64);
  const UnnormalizedDensity damped = no_count_map(kSd, coh, tau);
  const DensityMatrix target = make_coherent(alpha * std::exp(-0.5 * tau), 64);
  const Matrix normalized = damped.rho / damped.weight();
  CHECK((normalized - target.rho).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("no-count probabilities") {
  const DensityMatrix vac = make_fock(0, 8);
  for (double tau : {0.0, 0.5, 10.0}) {
    CHECK(no_count_probability(kSd, vac, tau) == doctest::Approx(1.0));
    CHECK(no_count_probability(kE, vac, tau) == doctest::Approx(1.0));
  }

  // series evaluated independently from the distribution
  const DensityMatrix th = make_thermal(1.5, 128);
  const Eigen::VectorXd p = photon_distribution(th);
  const double tau = 0.3;
  double series = 0.0;
  for (int n = 0; n < p.size(); ++n) series += p(n) * std::exp(-n * tau);
  CHECK(no_count_probability(kSd, th, tau) == doctest::Approx(series));

  CHECK_THROWS_AS(no_count_probability(kSd, th, -1.0), ConfigError);
}

TEST_CASE("completeness: rate*dt + survival(dt) = 1 up to dt^2") {
  for (const JumpModel& model : {kSd, kE}) {
    for (unsigned seed : {1u, 2u, 3u}) {
      const DensityMatrix rho = random_density(16, seed);
      double prev = -1.0;
      for (double dt : {1e-3, 1e-4, 1e-5}) {
        const double r =
            std::abs(one_count_rate(model, rho) * dt +
                     no_count_probability(model, rho, dt) - 1.0);
        if (prev > 0.0) {
          // dt shrank by 10x, residual must shrink ~100x
          CHECK(r <= prev / 50.0);
        }
        prev = r;
      }
    }
  }
}

TEST_CASE("map traces match the closed-form probabilities") {
  for (const JumpModel& model : {kSd, kE}) {
    for (unsigned seed : {11u, 12u}) {
      const DensityMatrix rho = random_density(24, seed);
      CHECK(std::abs(one_count_map(model, rho).weight() -
                     one_count_rate(model, rho)) <= 1e-12);
      for (double tau : {0.1, 1.3}) {
        CHECK(std::abs(no_count_map(model, rho, tau).weight() -
                       no_count_probability(model, rho, tau)) <= 1e-12);
      }
    }
  }
}

TEST_CASE("no-count propagation is a semigroup") {
  const double t1 = 0.35, t2 = 0.8, omega0 = 2.1;
  for (const JumpModel& model : {kSd, kE}) {
    const DensityMatrix rho = random_density(16, 77);
    const Matrix once = no_count_map(model, rho, t1 + t2, omega0).rho;
    const Matrix twice =
        no_count_map(model,
                     DensityMatrix{no_count_map(model, rho, t1, omega0).rho, 0.0},
                     t2, omega0)
            .rho;
    CHECK((once - twice).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("post no-count states") {
  const DensityMatrix fock = make_fock(3, 8);
  const DensityMatrix kept = post_no_count(kSd, fock, 2.0);
  CHECK((kept.rho - fock.rho).cwiseAbs().maxCoeff() <= 1e-14);

  const DensityMatrix th = make_thermal(1.0, 64);
  const double p0 = photon_distribution(th)(0);
  double prev = p0;
  for (double tau : {0.2, 0.5, 1.0, 2.0}) {
    const double expected =
        p0 / (p0 + (1.0 - p0) * std::exp(-tau));
    const double got = photon_distribution(post_no_count(kE, th, tau))(0);
    CHECK(got == doctest::Approx(expected).epsilon(1e-12));
    CHECK(got >= prev);  // E-model vacuum probability never decreases
    prev = got;
  }

  CHECK((post_no_count(kE, th, 0.0).rho - th.rho).cwiseAbs().maxCoeff() ==
        0.0);
}

TEST_CASE("maps preserve hermiticity and positivity") {
  for (const JumpModel& model : {kSd, kE}) {
    const DensityMatrix rho = random_density(16, 5);
    for (const DensityMatrix& s :
         {post_one_count(model, rho), post_no_count(model, rho, 0.7)}) {
      const Diagnostics d = diagnostics(s);
      CHECK(d.hermiticity_residual <= 1e-12);
      CHECK(d.min_eigenvalue >= -1e-9);
      CHECK(std::abs(d.trace - 1.0) <= 1e-9);
    }
  }
}

TEST_CASE("table oracles agree with matrix algebra") {
  const int dim = 128;
  const double tail = 1e-12;
  for (JumpKind kind : {JumpKind::SD, JumpKind::E}) {
    const JumpModel model{kind, 1.0};
    struct Case {
      FieldKind field;
      double nbar;
    };
    std::vector<Case> cases;
    for (int m : {1, 2, 3, 4}) cases.push_back({FieldKind::Fock, double(m)});
    for (double nb : {0.5, 1.0, 2.0, 4.0}) {
      cases.push_back({FieldKind::Thermal, nb});
      cases.push_back({FieldKind::Coherent, nb});
    }
    for (const Case& c : cases) {
      DensityMatrix rho =
          c.field == FieldKind::Fock
              ? make_fock(int(c.nbar), dim)
              : (c.field == FieldKind::Thermal
                     ? make_thermal(c.nbar, dim, tail)
                     : make_coherent(std::sqrt(c.nbar), dim, tail));
      const Table1Entry t1 = table1_oracle(kind, c.field, c.nbar);
      const Table2Entry t2 = table2_oracle(model, c.field, c.nbar);

      const DensityMatrix after = post_one_count(model, rho);
      const double rate = one_count_rate(model, rho);
      const double cond = one_count_rate(model, after);

      auto close = [](double value, double oracle) {
        const double d = std::abs(value - oracle);
        return oracle != 0.0 ? d / std::abs(oracle) <= 1e-9 : d <= 1e-9;
      };
      CHECK(close(mean_photon(after), t1.mean_after));
      CHECK(close(photon_distribution(after)(0), t1.vacuum_after));
      CHECK(close(rate, t2.rate));
      CHECK(close(cond, t2.conditional_rate));
      CHECK(close(cond / rate, t2.g2));
    }
  }
}

TEST_CASE("oracle argument validation") {
  CHECK_THROWS_AS(table1_oracle(JumpKind::SD, FieldKind::Fock, 0.0),
                  ConfigError);
  CHECK_THROWS_AS(table2_oracle(kSd, FieldKind::Superposition, 1.0),
                  ConfigError);
}
