#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "photoncount/evolution.hpp"

using namespace pcs;

namespace {

const JumpModel kSd{JumpKind::SD, 1.0};
const JumpModel kE{JumpKind::E, 1.0};

}  // namespace

TEST_CASE("lindblad generator on diagonal states") {
  const DensityMatrix vac = make_fock(0, 8);
  CHECK(lindblad_rhs(kSd, vac.rho).cwiseAbs().maxCoeff() == 0.0);
  CHECK(lindblad_rhs(kE, vac.rho).cwiseAbs().maxCoeff() == 0.0);

  const DensityMatrix th = make_thermal(1.0, 48, 1e-9);
  const Eigen::VectorXd p = photon_distribution(th);

  // dp_n/dt = (n+1) p_{n+1} - n p_n, evaluated independently
  const Matrix sd = lindblad_rhs(kSd, th.rho);
  CHECK(std::abs(sd.trace().real()) <= 1e-14);
  CHECK((sd - sd.adjoint()).cwiseAbs().maxCoeff() <= 1e-14);
  for (int n = 0; n < 40; ++n) {
    const double expected = (n + 1) * p(n + 1) - n * p(n);
    CHECK(sd(n, n).real() == doctest::Approx(expected).epsilon(1e-10));
  }

  // E model: dp_0 = p_1, dp_{n>=1} = p_{n+1} - p_n
  const Matrix em = lindblad_rhs(kE, th.rho);
  CHECK(em(0, 0).real() == doctest::Approx(p(1)).epsilon(1e-10));
  for (int n = 1; n < 40; ++n) {
    CHECK(em(n, n).real() == doctest::Approx(p(n + 1) - p(n)).epsilon(1e-10));
  }
}

TEST_CASE("SD evolution decays exponentially for any field") {
  const TimeGrid grid{0.0, 5.0, 50};
  std::vector<DensityMatrix> fields{make_fock(3, 16),
                                    make_thermal(2.0, 64, 1e-9),
                                    make_coherent(std::sqrt(2.0), 48, 1e-10)};
  for (const auto& rho0 : fields) {
    const EvolutionResult res = evolve(kSd, rho0, grid);
    const double nbar0 = res.mean_photon.front();
    for (std::size_t k = 0; k < res.times.size(); ++k) {
      const double closed = sd_mean_closed_form(nbar0, 1.0, res.times[k]);
      CHECK(std::abs(res.mean_photon[k] - closed) <= 1e-6 * closed);
      CHECK(res.trace_residual[k] <= 1e-9);
    }
  }
}

TEST_CASE("Fock |1> under SD solves the two-level rate equation") {
  const TimeGrid grid{0.0, 3.0, 30};
  const EvolutionResult res = evolve(kSd, make_fock(1, 4), grid);
  for (std::size_t k = 0; k < res.times.size(); ++k) {
    const double t = res.times[k];
    CHECK(res.photon_probs[k](1) ==
          doctest::Approx(std::exp(-t)).epsilon(1e-8));
    CHECK(res.vacuum_prob[k] ==
          doctest::Approx(1.0 - std::exp(-t)).epsilon(1e-8));
  }
}

TEST_CASE("E model mean equals the vacuum-probability integral") {
  const TimeGrid grid{0.0, 4.0, 1000};
  const EvolutionResult res = evolve(kE, make_thermal(1.0, 48, 1e-9), grid);
  const double nbar0 = res.mean_photon.front();
  const double h = 4.0 / 1000;

  double integral = 0.0;
  for (std::size_t k = 2; k < res.times.size(); k += 2) {
    integral += h / 3.0 *
                ((res.vacuum_prob[k - 2] - 1.0) +
                 4.0 * (res.vacuum_prob[k - 1] - 1.0) +
                 (res.vacuum_prob[k] - 1.0));
    const double rhs = nbar0 + integral;
    CHECK(std::abs(res.mean_photon[k] - rhs) <= 1e-5 * nbar0);
  }
}

TEST_CASE("diagonal inputs stay diagonal, coherences stay physical") {
  const TimeGrid grid{0.0, 2.0, 10};
  for (const JumpModel& model : {kSd, kE}) {
    EvolveOptions opts;
    opts.store_states = true;
    const EvolutionResult res =
        evolve(model, make_thermal(1.0, 32, 1e-6), grid, opts);
    for (const auto& s : res.states) {
      Matrix off = s.rho;
      off.diagonal().setZero();
      CHECK(off.cwiseAbs().maxCoeff() <= 1e-12);
    }

    const EvolutionResult coh =
        evolve(model, make_coherent(1.0, 32, 1e-9), grid, opts);
    for (const auto& s : coh.states) {
      const Diagnostics d = diagnostics(s);
      CHECK(d.hermiticity_residual <= 1e-10);
      CHECK(d.min_eigenvalue >= -1e-8);
      CHECK(std::abs(d.trace - 1.0) <= 1e-9);
    }
  }
}

TEST_CASE("conditional rates") {
  const DensityMatrix th = make_thermal(1.5, 128);
  CHECK(conditional_rate(kSd, th) == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(conditional_rate(kE, make_fock(3, 8)) == doctest::Approx(1.0));
  CHECK(conditional_rate(kSd, make_fock(1, 8)) == 0.0);
  CHECK_THROWS_AS(conditional_rate(kSd, make_fock(0, 8)), ConditioningError);
}

TEST_CASE("immediate g2") {
  CHECK(g2_immediate(kSd, make_thermal(1.0, 128)) ==
        doctest::Approx(2.0).epsilon(1e-9));
  CHECK(g2_immediate(kSd, make_coherent(1.0, 64)) ==
        doctest::Approx(1.0).epsilon(1e-9));

  // antibunching of Fock states under SD, not blanket bunching
  for (int m : {2, 3, 5, 10}) {
    CHECK(std::abs(g2_immediate(kSd, make_fock(m, 16)) -
                   double(m - 1) / double(m)) <= 1e-9);
  }

  const double nbar = 1.0;
  const double expected = (std::exp(nbar) - (nbar + 1.0)) /
                          (std::exp(nbar) + std::exp(-nbar) - 2.0);
  CHECK(g2_immediate(kE, make_coherent(std::sqrt(nbar), 64)) ==
        doctest::Approx(expected).epsilon(1e-9));

  CHECK_THROWS_AS(g2_immediate(kSd, make_fock(0, 4)), ConditioningError);
}

TEST_CASE("grid validation and closed form edge cases") {
  CHECK_THROWS_AS(evolve(kSd, make_fock(1, 4), TimeGrid{1.0, 1.0, 10}),
                  ConfigError);
  CHECK(sd_mean_closed_form(3.0, 1.0, 0.0) == doctest::Approx(3.0));
  CHECK(sd_mean_closed_form(3.0, 1.0, std::log(2.0)) == doctest::Approx(1.5));
  CHECK(sd_mean_closed_form(0.0, 1.0, 2.0) == 0.0);
}
