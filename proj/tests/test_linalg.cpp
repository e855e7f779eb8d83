#include <doctest.h>

#include "oracles.hpp"
#include "skewcoh/random.hpp"
#include "skewcoh/states.hpp"

using namespace skewcoh;
using C = std::complex<double>;

namespace {

ComplexMatrix diag(std::initializer_list<double> d) {
  ComplexMatrix m = ComplexMatrix::Zero(Eigen::Index(d.size()), Eigen::Index(d.size()));
  Eigen::Index i = 0;
  for (double v : d) m(i, i) = v, ++i;
  return m;
}

}  // namespace

TEST_CASE("multiply: Pauli algebra") {
  const ComplexMatrix i2 = pauli::identity();
  CHECK(max_abs_diff(multiply(i2, i2), i2) == 0.0);
  CHECK(max_abs_diff(multiply(pauli::x(), pauli::x()), i2) == 0.0);
  CHECK(max_abs_diff(multiply(pauli::x(), pauli::y()), (C(0, 1) * pauli::z()).eval()) == 0.0);
  CHECK_THROWS_AS(multiply(i2, ComplexMatrix::Identity(4, 4)), DimensionError);
}

TEST_CASE("kron: block structure") {
  CHECK(max_abs_diff(kron(pauli::identity(), pauli::identity()), ComplexMatrix::Identity(4, 4).eval()) == 0.0);
  CHECK(max_abs_diff(kron(pauli::z(), pauli::z()), diag({1, -1, -1, 1})) == 0.0);
  ComplexMatrix anti = ComplexMatrix::Zero(4, 4);
  for (int i = 0; i < 4; ++i) anti(i, 3 - i) = 1;
  CHECK(max_abs_diff(kron(pauli::x(), pauli::x()), anti) == 0.0);

  const ComplexMatrix k = kron(ComplexMatrix::Identity(3, 3), pauli::y());
  CHECK(k.rows() == 6);
  CHECK(k(2, 3) == C(0, -1));
}

TEST_CASE("trace and commutator") {
  CHECK(trace(ComplexMatrix::Identity(4, 4)) == C(4));
  CHECK(trace(pauli::z()) == C(0));
  CHECK(trace(bell_diagonal(BellDiagonalParams{0.1, -0.3, 0.2}).matrix()).real() == doctest::Approx(1.0));

  CHECK(commutator(pauli::identity(), pauli::x()).cwiseAbs().maxCoeff() == 0.0);
  CHECK(max_abs_diff(commutator(pauli::x(), pauli::y()), (C(0, 2) * pauli::z()).eval()) == 0.0);
  CHECK(commutator(diag({1, 2, 3}), diag({-4, 0.5, 9})).cwiseAbs().maxCoeff() == 0.0);
  CHECK_THROWS_AS(commutator(pauli::x(), diag({1, 2, 3})), DimensionError);
}

TEST_CASE("hermitian_eig: frozen spectra") {
  const auto d = hermitian_eig(diag({3, 1, 2}));
  CHECK(d.eigenvalues(0) == doctest::Approx(1));
  CHECK(d.eigenvalues(1) == doctest::Approx(2));
  CHECK(d.eigenvalues(2) == doctest::Approx(3));

  const auto sx = hermitian_eig(pauli::x());
  CHECK(sx.eigenvalues(0) == doctest::Approx(-1));
  CHECK(sx.eigenvalues(1) == doctest::Approx(1));

  // Singlet corner of the tetrahedron; the oracle diagonalises the entrywise matrix.
  const ComplexMatrix singlet = oracle::bell_diagonal_entrywise(-1, -1, -1);
  const Eigen::VectorXd want = oracle::eigenvalues(singlet);
  const auto got = hermitian_eig(singlet);
  for (int i = 0; i < 4; ++i) CHECK(got.eigenvalues(i) == doctest::Approx(want(i)).epsilon(1e-12));
  CHECK(std::abs(got.eigenvalues(3) - 1.0) < 1e-12);
  CHECK(std::abs(got.eigenvalues(0)) < 1e-12);
}

TEST_CASE("hermitian_eig: rejects non-Hermitian input") {
  ComplexMatrix m = pauli::x();
  m(0, 1) = 2.0;
  CHECK_THROWS_AS(hermitian_eig(m), NotHermitianError);
  CHECK_THROWS_AS(hermitian_eig(ComplexMatrix(2, 3)), DimensionError);
}

TEST_CASE("hermitian_eig: matches Eigen on random Hermitian matrices") {
  Rng rng(7);
  for (int t = 0; t < 500; ++t) {
    for (Eigen::Index dim : {2, 3, 4, 8}) {
      const ComplexMatrix h = random_hermitian(rng, dim);
      const auto eig = hermitian_eig(h);
      REQUIRE(max_abs_diff(eig.reconstruct(), h) <= 1e-10);
      REQUIRE(max_abs_diff((eig.eigenvectors.adjoint() * eig.eigenvectors).eval(),
                           ComplexMatrix::Identity(dim, dim).eval()) <= 1e-10);
      REQUIRE((eig.eigenvalues - oracle::eigenvalues(h)).cwiseAbs().maxCoeff() <= 1e-10);
    }
  }
}

TEST_CASE("hermitian_eig: degenerate and scaled spectra") {
  const auto d = hermitian_eig(ComplexMatrix::Identity(4, 4) * 0.25);
  CHECK((d.eigenvalues.array() - 0.25).abs().maxCoeff() == 0.0);

  Rng rng(11);
  const ComplexMatrix big = random_hermitian(rng, 4) * 1e6;
  const auto e = hermitian_eig(big);
  CHECK(max_abs_diff(e.reconstruct(), big) <= 1e-6);
}

TEST_CASE("sqrt_psd: frozen cases") {
  CHECK(max_abs_diff(sqrt_psd(ComplexMatrix::Identity(2, 2)), ComplexMatrix::Identity(2, 2).eval()) < 1e-15);
  CHECK(max_abs_diff(sqrt_psd(diag({4, 9})), diag({2, 3})) < 1e-14);
  CHECK(max_abs_diff(sqrt_psd((ComplexMatrix::Identity(4, 4) / 4).eval()),
                     (ComplexMatrix::Identity(4, 4) / 2).eval()) < 1e-15);
}

TEST_CASE("sqrt_psd: clamps rounding noise, rejects negative spectra") {
  CHECK(max_abs_diff(sqrt_psd(diag({1, -5e-11})), diag({1, 0})) < 1e-15);
  CHECK_THROWS_AS(sqrt_psd(diag({1, -1e-6})), NotPositiveError);
}

TEST_CASE("sqrt_psd: squares back on random B^dagger B") {
  Rng rng(13);
  for (int t = 0; t < 500; ++t) {
    for (Eigen::Index dim : {2, 4}) {
      const ComplexMatrix a = random_psd(rng, dim);
      const ComplexMatrix r = sqrt_psd(a);
      REQUIRE(max_abs_diff((r * r).eval(), a) <= 1e-9);
      REQUIRE(max_abs_diff(r, oracle::sqrt_psd(a)) <= 1e-9);
      REQUIRE(hermitian_defect(r) == 0.0);
    }
  }
}

TEST_CASE("trace(kron(a,b)) = trace(a) trace(b); [a,a] = 0") {
  Rng rng(17);
  for (int t = 0; t < 200; ++t) {
    const ComplexMatrix a = random_hermitian(rng, 2);
    const ComplexMatrix b = random_hermitian(rng, 4);
    REQUIRE(std::abs(trace(kron(a, b)) - trace(a) * trace(b)) <= 1e-12);
    REQUIRE(commutator(b, b).cwiseAbs().maxCoeff() <= 1e-15);
  }
}

TEST_CASE("linalg is generic over the real scalar") {
  const CMatrix<float> a = CMatrix<float>::Identity(2, 2) * 4.0f;
  const CMatrix<float> r = sqrt_psd(a);
  CHECK(std::abs(r(0, 0).real() - 2.0f) < 1e-6f);
  const auto e = hermitian_eig(CMatrix<long double>::Identity(3, 3).eval());
  CHECK(e.eigenvalues(2) == doctest::Approx(1.0));
}
