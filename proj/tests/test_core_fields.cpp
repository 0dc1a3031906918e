#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "support.hpp"
#include "vspc/errors.hpp"
#include "vspc/snapshot.hpp"

using namespace vspc;
using vspc::testing::random_band_limited;
using std::numbers::pi;

TEST_CASE("grid sizes") {
  CHECK_NOTHROW(GridSpec(8));
  CHECK_NOTHROW(GridSpec(256));
  CHECK_THROWS_AS(GridSpec(12), UsageError);
  CHECK_THROWS_AS(GridSpec(4), UsageError);
  CHECK_THROWS_AS(GridSpec(0), UsageError);
  const GridSpec g(16);
  CHECK(g.wavenumber(8) == 8);
  CHECK(g.wavenumber(9) == -7);
  CHECK(g.index_of(-1) == 15);
  CHECK(g.odd_wavenumber(8) == 0.0);
  CHECK(g.coordinate(4) == doctest::Approx(pi / 2));
}

TEST_CASE("forward transform examples") {
  const GridSpec g(16);
  const auto c = to_spectral(ScalarField::constant(g, 3.0)).coefficients();
  CHECK(std::abs(c(0, 0) - 3.0) < 1e-15);
  CHECK((c.abs() > 1e-14).count() == 1);

  const auto cs = to_spectral(ScalarField::sample(g, [](double x1, double) { return std::cos(x1); })).coefficients();
  CHECK(std::abs(cs(1, 0) - 0.5) < 1e-15);
  CHECK(std::abs(cs(15, 0) - 0.5) < 1e-15);
  CHECK((cs.abs() > 1e-14).count() == 2);

  CHECK_THROWS_AS(to_spectral(to_spectral(ScalarField::constant(g, 1.0))), UsageError);
  CHECK_THROWS_AS(to_physical(ScalarField::constant(g, 1.0)), UsageError);
  CHECK_THROWS_AS((void)ScalarField::constant(g, 1.0).coefficients(), UsageError);
}

TEST_CASE("inverse transform examples") {
  const GridSpec g(16);
  ComplexGrid c = g.zeros_complex();
  c(0, 0) = 1.0;
  CHECK(max_abs(to_physical(ScalarField::spectral(g, c)) - ScalarField::constant(g, 1.0)) < 1e-15);

  c.setZero();
  c(0, 1) = c(0, 15) = 0.5;
  const auto f = to_physical(ScalarField::spectral(g, c));
  const auto expected = ScalarField::sample(g, [](double, double x2) { return std::cos(x2); });
  CHECK(max_abs(f - expected) < 1e-15);

  // An asymmetric spectrum is not a real field.
  c(0, 1) = std::complex<double>(0.5, 0.1);
  CHECK_THROWS_AS(to_physical(ScalarField::spectral(g, c)), DataCorruptionError);
}

TEST_CASE("round trip, linearity and Parseval on random fields") {
  const GridSpec g(32);
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto f = random_band_limited(g, 15, seed);
    const auto h = random_band_limited(g, 10, seed + 100);
    const double scale = max_abs(f);
    CHECK(max_abs(to_physical(to_spectral(f)) - f) <= 1e-12 * scale);

    const auto lhs = to_spectral(2.5 * f + (-0.75) * h).coefficients();
    const auto rhs = (2.5 * to_spectral(f) + (-0.75) * to_spectral(h)).coefficients();
    CHECK((lhs - rhs).abs().maxCoeff() <= 1e-12 * lhs.abs().maxCoeff());

    const double grid_sum = f.values().square().sum() * g.cell_area();
    const double spectral_sum = 4 * pi * pi * to_spectral(f).coefficients().abs2().sum();
    CHECK(std::abs(grid_sum - spectral_sum) <= 1e-10 * grid_sum);
    CHECK(l2_norm(f) == doctest::Approx(std::sqrt(grid_sum)).epsilon(1e-12));
  }
}

TEST_CASE("dealias") {
  const GridSpec g(32);
  ComplexGrid c = g.zeros_complex();
  c(12, 0) = c(20, 0) = 0.5;  // k = (+-12, 0), above 32/3
  c(10, 0) = c(22, 0) = 0.5;  // k = (+-10, 0), kept
  const auto d = dealias(ScalarField::spectral(g, c)).coefficients();
  CHECK(d(12, 0) == 0.0);
  CHECK(d(20, 0) == 0.0);
  CHECK(d(10, 0) == 0.5);

  const auto low = to_spectral(random_band_limited(g, 10, 7));
  CHECK((dealias(low).coefficients() - low.coefficients()).abs().maxCoeff() <= 1e-12 * low.coefficients().abs().maxCoeff());

  const auto f = to_spectral(random_band_limited(g, 16, 8));
  const auto once = dealias(f);
  CHECK((dealias(once).coefficients() - once.coefficients()).abs().maxCoeff() == 0.0);
  CHECK(l2_norm(once) <= l2_norm(f));
  CHECK_THROWS_AS(dealias(as_physical(f)), UsageError);
}

TEST_CASE("pointwise product") {
  const GridSpec g(32);
  const auto cosx = ScalarField::sample(g, [](double x1, double) { return std::cos(x1); });
  const auto f = random_band_limited(g, 5, 11);
  const auto h = random_band_limited(g, 5, 12);
  CHECK(max_abs(pointwise_product(f, ScalarField::constant(g, 1.0)) - f) == 0.0);
  const auto sq = ScalarField::sample(g, [](double x1, double) { return 0.5 + 0.5 * std::cos(2 * x1); });
  CHECK(max_abs(pointwise_product(cosx, cosx) - sq) < 1e-15);
  CHECK(max_abs(pointwise_product(f, h) - pointwise_product(h, f)) == 0.0);
  CHECK_THROWS_AS(pointwise_product(f, ScalarField::constant(GridSpec(16), 1.0)), UsageError);
}

TEST_CASE("max_abs") {
  const GridSpec g(64);
  CHECK(max_abs(ScalarField::constant(g, -2.0)) == 2.0);
  CHECK(max_abs(ScalarField::zeros(g, Representation::physical)) == 0.0);
  const double m = max_abs(ScalarField::sample(g, [](double x1, double) { return std::sin(x1); }));
  CHECK(m >= 0.998);
  CHECK(m <= 1.0);
}

TEST_CASE("snapshot round trip is bit exact") {
  const GridSpec g(16);
  State s = perturbed_identity_state(g);
  s.t = 0.123456789012345678;
  s.u[0] = random_band_limited(g, 7, 5);
  const auto path = std::filesystem::temp_directory_path() / "vspc_snapshot_test.vspc";
  write_state_snapshot(path, s);
  CHECK(std::filesystem::file_size(path) == kSnapshotHeaderBytes + 6 * 16 * 16 * sizeof(double));
  const State r = read_state_snapshot(path);
  CHECK(r.t == s.t);
  CHECK(r.grid() == g);
  for (int i = 0; i < 2; ++i) {
    CHECK((as_physical(r.u[i]).values() == as_physical(s.u[i]).values()).all());
    for (int k = 0; k < 2; ++k)
      CHECK((as_physical(r.F.entry(i, k)).values() == as_physical(s.F.entry(i, k)).values()).all());
  }
  std::filesystem::remove(path);
}

TEST_CASE("snapshot header layout and corruption") {
  const GridSpec g(8);
  std::stringstream buf;
  write_snapshot(buf, 2.0, {ScalarField::constant(g, 1.5)});
  const std::string bytes = buf.str();
  REQUIRE(bytes.size() == 32 + 64 * 8);
  CHECK(bytes.substr(0, 4) == "VSPC");
  CHECK(static_cast<unsigned char>(bytes[8]) == 8);   // n, little-endian
  CHECK(static_cast<unsigned char>(bytes[12]) == 1);  // field count

  std::stringstream bad_magic(std::string("XSPC") + bytes.substr(4));
  CHECK_THROWS_AS(read_snapshot(bad_magic), DataCorruptionError);
  std::stringstream truncated(bytes.substr(0, 100));
  CHECK_THROWS_AS(read_snapshot(truncated), DataCorruptionError);
  std::string wrong_version = bytes;
  wrong_version[4] = 9;
  std::stringstream versioned(wrong_version);
  CHECK_THROWS_AS(read_snapshot(versioned), DataCorruptionError);
}
