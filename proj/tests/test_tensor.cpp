#include <doctest.h>

#include <cmath>
#include <random>

#include "demplast/tensor.hpp"

using namespace demplast;

TEST_CASE("deviator") {
  CHECK(deviator(SymTensor2::identity()) == SymTensor2{});

  SymTensor2 shear;
  shear(0, 1) = 5.0;
  CHECK(deviator(shear) == shear);

  const SymTensor2 d = deviator(SymTensor2::diag(3.0, 0.0, 0.0));
  CHECK(d[0] == doctest::Approx(2.0));
  CHECK(d[1] == doctest::Approx(-1.0));
  CHECK(d[2] == doctest::Approx(-1.0));
}

TEST_CASE("contraction counts both off-diagonal entries") {
  CHECK(contract(SymTensor2::identity(), SymTensor2::identity()) == 3.0);

  SymTensor2 a;
  a(0, 1) = 7.0;
  CHECK(contract(a, a) == doctest::Approx(2.0 * 49.0));

  CHECK(contract(SymTensor2::diag(1, 2, 3), SymTensor2::diag(1, 1, 1)) == 6.0);
}

TEST_CASE("norm and trace") {
  CHECK(norm(SymTensor2{}) == 0.0);
  SymTensor2 a;
  a(0, 1) = 38.462;
  CHECK(norm(a) == doctest::Approx(54.394).epsilon(1e-5));
  CHECK(trace(SymTensor2::diag(1, 1, 1)) == 3.0);
}

TEST_CASE("symmetric storage") {
  SymTensor2 a;
  a(2, 1) = 4.0;
  CHECK(a(1, 2) == 4.0);
  CHECK(a[5] == 4.0);

  const std::array<std::array<double, 3>, 3> g{{{1, 2, 3}, {4, 5, 6}, {7, 8, 9}}};
  const SymTensor2 s = SymTensor2::sym(g);
  CHECK(s(0, 1) == 3.0);
  CHECK(s(0, 2) == 5.0);
  CHECK(s(1, 2) == 7.0);
  CHECK(s(1, 1) == 5.0);
}

TEST_CASE("algebraic identities on random tensors") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(-10.0, 10.0);
  for (int n = 0; n < 200; ++n) {
    SymTensor2 a, b;
    for (std::size_t k = 0; k < 6; ++k) {
      a[k] = U(rng);
      b[k] = U(rng);
    }
    CHECK(std::abs(trace(deviator(a))) < 1e-12);
    CHECK(contract(a, b) == doctest::Approx(contract(b, a)));
    // full 3x3 double sum
    double full = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) full += a(i, j) * b(i, j);
    CHECK(contract(a, b) == doctest::Approx(full));
    const SymTensor2 d = deviator(a);
    CHECK(contract(d, a) == doctest::Approx(contract(d, d)));
    SymTensor2 y = b;
    axpy(2.5, a, y);
    CHECK(y == b + 2.5 * a);
  }
}

TEST_CASE("von Mises of pure shear") {
  SymTensor2 s;
  s(0, 1) = 10.0;
  CHECK(von_mises(s) == doctest::Approx(10.0 * std::sqrt(3.0)));
  CHECK(von_mises(SymTensor2::identity() * 5.0) == doctest::Approx(0.0));
}
