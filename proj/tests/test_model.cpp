#include <doctest.h>

#include <cmath>
#include <initializer_list>

#include "tumorfront/model.hpp"

using tumorfront::ModelParams;

TEST_CASE("parameter validation") {
  ModelParams p;
  CHECK_NOTHROW(p.validate());
  p.eta = p.c_p;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = ModelParams{};
  p.c_z = 0.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = ModelParams{};
  p.c_nu = std::nan("");
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("log state law and its inverse") {
  ModelParams p;
  CHECK(tumorfront::sigma_of_rho(0.0, p) == 0.0);
  CHECK(tumorfront::sigma_of_rho(1.0, p) == 0.0);
  CHECK(tumorfront::sigma_of_rho(std::exp(0.02), p) == doctest::Approx(1.0).epsilon(1e-14));
  for (double s : {0.0, 0.3, 1.0, 7.5}) {
    CHECK(tumorfront::sigma_of_rho(tumorfront::rho_of_sigma(s, p), p) ==
          doctest::Approx(s).epsilon(1e-13));
  }
  CHECK_THROWS_AS(tumorfront::sigma_of_rho(-1e-3, p), std::domain_error);
}

TEST_CASE("regularized switch") {
  ModelParams p;
  p.eta = 0.1;
  CHECK(tumorfront::heaviside_eta(-1.0, p) == 0.0);
  CHECK(tumorfront::heaviside_eta(0.0, p) == 0.0);
  CHECK(tumorfront::heaviside_eta(0.05, p) == doctest::Approx(0.5));
  CHECK(tumorfront::heaviside_eta(0.1, p) == 1.0);
  CHECK(tumorfront::heaviside_eta(3.0, p) == 1.0);
  // growth switches off once the pressure reaches c_p
  CHECK(tumorfront::growth(2.0, p.c_p, p) == 0.0);
  CHECK(tumorfront::growth(2.0, 0.0, p) == 2.0);
}
