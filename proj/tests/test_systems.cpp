#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "chebconvex/errors.hpp"
#include "chebconvex/rng.hpp"
#include "chebconvex/systems.hpp"
#include "doctest.h"
#include "helpers.hpp"

namespace cx = chebconvex;
using testutil::error_code_of;

namespace {

constexpr double kPi = std::numbers::pi;

// Strictly increasing nodes on the half-integer lattice, gap >= 0.5.
std::vector<double> lattice_config(cx::Rng& rng, std::size_t n, int lo_halves, int hi_halves) {
  std::vector<int> sites;
  for (int k = lo_halves; k <= hi_halves; ++k) sites.push_back(k);
  std::vector<double> out;
  while (out.size() < n) {
    const int pick = sites[static_cast<std::size_t>(rng.below(sites.size()))];
    const double v = pick / 2.0;
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

double product_formula_poly(const std::vector<double>& pts) {
  double prod = 1.0;
  for (std::size_t j = 1; j < pts.size(); ++j)
    for (std::size_t i = 0; i < j; ++i) prod *= pts[j] - pts[i];
  return prod;
}

double product_formula_trig_odd(int m, const std::vector<double>& pts) {
  double prod = std::pow(4.0, m * m);
  for (std::size_t j = 1; j < pts.size(); ++j)
    for (std::size_t i = 0; i < j; ++i) prod *= std::sin((pts[j] - pts[i]) / 2.0);
  return prod;
}

}  // namespace

TEST_CASE("collocation determinants match hand-computed values") {
  auto poly3 = cx::ChebSystem::poly(3);
  CHECK(cx::evaluate_phi(poly3, cx::Configuration({0.0, 1.0, 3.0})).value == doctest::Approx(6.0).epsilon(1e-13));

  auto trig_odd = cx::builtin_system("trig-odd:1");
  CHECK(cx::evaluate_phi(trig_odd, cx::Configuration({0.0, kPi / 2, kPi})).value ==
        doctest::Approx(2.0).epsilon(1e-12));

  // (cos x, sin x) on a pair gives sin(x2 - x1).
  auto trig_even = cx::builtin_system("trig-even:1");
  CHECK(cx::evaluate_phi(trig_even, cx::Configuration({kPi / 6, kPi / 2})).value ==
        doctest::Approx(std::sin(kPi / 3)).epsilon(1e-14));

  auto oxs = cx::builtin_system("one-xsq");
  CHECK(cx::evaluate_phi(oxs, cx::Configuration({1.0, 2.0})).value == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("polynomial determinant agrees with the pairwise-difference product") {
  cx::Rng rng(101);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = 2 + rng.below(4);  // dims 2..5
    auto pts = lattice_config(rng, n, -5, 5);
    auto sys = cx::ChebSystem::poly(static_cast<int>(n));
    const double got = cx::evaluate_phi(sys, cx::Configuration(pts)).value;
    const double want = product_formula_poly(pts);
    CHECK(got == doctest::Approx(want).epsilon(1e-10));
  }
}

TEST_CASE("odd trigonometric determinant agrees with the half-angle sine product") {
  cx::Rng rng(102);
  for (int rep = 0; rep < 100; ++rep) {
    const int m = 1 + static_cast<int>(rng.below(2));
    const std::size_t dim = static_cast<std::size_t>(2 * m + 1);
    auto sys = cx::builtin_system("trig-odd:" + std::to_string(m));
    std::vector<double> pts;
    double x = rng.uniform(0.05, 0.4);
    for (std::size_t i = 0; i < dim; ++i) {
      pts.push_back(x);
      x += rng.uniform(0.3, (6.2 - 0.4) / double(dim));
    }
    const double got = cx::evaluate_phi(sys, cx::Configuration(pts)).value;
    const double want = product_formula_trig_odd(m, pts);
    CHECK(got == doctest::Approx(want).epsilon(1e-8));
  }
}

TEST_CASE("one-xsq determinant equals (x1 + x2)(x2 - x1)") {
  cx::Rng rng(103);
  auto sys = cx::builtin_system("one-xsq");
  for (int rep = 0; rep < 100; ++rep) {
    const double a = rng.uniform(0.1, 5.0);
    const double b = a + rng.uniform(0.1, 5.0);
    const double got = cx::evaluate_phi(sys, cx::Configuration({a, b})).value;
    CHECK(got == doctest::Approx((a + b) * (b - a)).epsilon(1e-12));
  }
}

TEST_CASE("determinants are antisymmetric under node swaps") {
  cx::Rng rng(104);
  auto check_swap = [&](const cx::ChebSystem& sys, std::vector<double> pts) {
    const double base = cx::testing::phi_unordered(sys, pts);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      auto swapped = pts;
      std::swap(swapped[i], swapped[i + 1]);
      const double v = cx::testing::phi_unordered(sys, swapped);
      CHECK(v == doctest::Approx(-base).epsilon(1e-11));
    }
  };
  for (int rep = 0; rep < 20; ++rep) {
    check_swap(cx::ChebSystem::poly(4), lattice_config(rng, 4, -5, 5));
    std::vector<double> trig{0.3, 1.1, 2.0};
    for (auto& v : trig) v += rng.uniform(0.0, 0.2);
    check_swap(cx::builtin_system("trig-odd:1"), trig);
    check_swap(cx::builtin_system("one-xsq"), {rng.uniform(0.5, 1.0), rng.uniform(2.0, 3.0)});
  }
}

TEST_CASE("stacking a base-plus-extension combination is multilinear in the extension row") {
  cx::Rng rng(105);
  auto base = cx::ChebSystem::poly(2);
  auto ext = cx::ExtendedSystem::with_default_extension(base);
  for (int rep = 0; rep < 50; ++rep) {
    auto pts = lattice_config(rng, 3, -6, 6);
    const double alpha = rng.uniform(0.2, 3.0);
    const double b0 = rng.uniform(-2.0, 2.0);
    const double b1 = rng.uniform(-2.0, 2.0);
    auto f = cx::SampledFunction::poly({b0, b1, alpha});
    const double with_f = cx::evaluate_phi_with_f(base, f, cx::Configuration(pts)).value;
    const double star = cx::evaluate_phi(ext, cx::Configuration(pts)).value;
    CHECK(with_f == doctest::Approx(alpha * star).epsilon(1e-11));
  }
}

TEST_CASE("extended poly(n) determinant equals the poly(n+1) base determinant") {
  cx::Rng rng(106);
  auto ext = cx::ExtendedSystem::with_default_extension(cx::ChebSystem::poly(2));
  auto poly3 = cx::ChebSystem::poly(3);
  for (int rep = 0; rep < 30; ++rep) {
    auto pts = lattice_config(rng, 3, -5, 5);
    const double a = cx::evaluate_phi(ext, cx::Configuration(pts)).value;
    const double b = cx::evaluate_phi(poly3, cx::Configuration(pts)).value;
    CHECK(a == doctest::Approx(b).epsilon(1e-13));
  }
}

TEST_CASE("configurations must be strictly increasing") {
  CHECK(error_code_of([] { cx::Configuration({1.0, 1.0}); }) == cx::ErrorCode::NotStrictlyOrdered);
  CHECK(error_code_of([] { cx::Configuration({2.0, 1.0, 3.0}); }) == cx::ErrorCode::NotStrictlyOrdered);
  CHECK_NOTHROW(cx::Configuration::unchecked({2.0, 1.0}));
}

TEST_CASE("domain restrictions of the built-in families are enforced") {
  CHECK(error_code_of([] { cx::builtin_system("one-xsq", cx::Domain::interval(-2.0, 2.0)); }) ==
        cx::ErrorCode::DomainNotPositive);
  // Closed at zero is still not strictly positive; open at zero is fine.
  CHECK(error_code_of([] { cx::builtin_system("one-xsq", cx::Domain::interval(0.0, 2.0)); }) ==
        cx::ErrorCode::DomainNotPositive);
  CHECK_NOTHROW(cx::builtin_system("one-xsq", cx::Domain::interval(0.0, 2.0, true, false)));

  CHECK(error_code_of([] { cx::builtin_system("trig-odd:1", cx::Domain::interval(0.0, 10.0)); }) ==
        cx::ErrorCode::DomainTooLong);
  CHECK(error_code_of([] { cx::builtin_system("trig-even:1", cx::Domain::interval(0.0, 4.0)); }) ==
        cx::ErrorCode::DomainTooLong);

  auto sys = cx::ChebSystem::poly(2, cx::Domain::interval(0.0, 1.0));
  CHECK(error_code_of([&] { cx::evaluate_phi(sys, cx::Configuration({0.0, 2.0})); }) == cx::ErrorCode::OutOfDomain);
}

TEST_CASE("built-in tags parse with their default domains") {
  CHECK(cx::builtin_system("poly:4").dim() == 4);
  CHECK(cx::builtin_system("trig-odd:2").dim() == 5);
  CHECK(cx::builtin_system("trig-even:2").dim() == 4);
  CHECK(cx::builtin_system("one-xsq").dim() == 2);

  auto trig = cx::builtin_system("trig-odd:1");
  CHECK(trig.domain().lo() == 0.0);
  CHECK(trig.domain().hi() == doctest::Approx(2 * kPi));
  CHECK(trig.domain().open_hi());

  auto oxs = cx::builtin_system("one-xsq");
  CHECK(oxs.domain().lo() == 0.0);
  CHECK(oxs.domain().open_lo());
  CHECK_FALSE(oxs.domain().bounded());

  CHECK(error_code_of([] { cx::builtin_system("nope:2"); }) == cx::ErrorCode::BadSpec);
  CHECK(error_code_of([] { cx::builtin_system("poly:x"); }) == cx::ErrorCode::BadSpec);
  CHECK(error_code_of([] { cx::builtin_system("poly:0"); }) == cx::ErrorCode::BadSpec);
}

TEST_CASE("tabulated systems evaluate on their grid and nowhere else") {
  auto sys = cx::ChebSystem::tabulated({0.0, 1.0, 2.0}, {{1.0, 1.0, 1.0}, {0.0, 1.0, 2.0}});
  CHECK(sys.dim() == 2);
  CHECK(cx::evaluate_phi(sys, cx::Configuration({0.0, 1.0})).value == doctest::Approx(1.0));
  CHECK(cx::evaluate_phi(sys, cx::Configuration({0.0, 2.0})).value == doctest::Approx(2.0));
  CHECK(error_code_of([&] { cx::evaluate_phi(sys, cx::Configuration({0.0, 0.5})); }) == cx::ErrorCode::OutOfDomain);
  CHECK(error_code_of([&] { sys.basis_value(1, 0.5); }) == cx::ErrorCode::EvaluationOffGrid);

  CHECK(error_code_of([] { cx::ChebSystem::tabulated({0.0, 1.0}, {{1.0, 1.0}, {0.0, 1.0}, {0.0, 0.0}}); }) ==
        cx::ErrorCode::GridTooSmall);
  CHECK(error_code_of([] { cx::ChebSystem::tabulated({0.0, 1.0}, {{1.0}}); }) == cx::ErrorCode::BadSpec);
}

TEST_CASE("positivity is enforced lazily and auditable without throwing") {
  // Negated second row: determinants on pairs flip sign.
  auto bad = cx::ChebSystem::tabulated({0.0, 1.0, 2.0}, {{1.0, 1.0, 1.0}, {0.0, -1.0, -2.0}});
  CHECK(error_code_of([&] { cx::evaluate_phi(bad, cx::Configuration({0.0, 1.0})); }) ==
        cx::ErrorCode::PositivityViolation);

  std::vector<cx::Configuration> tuples;
  tuples.emplace_back(std::vector<double>{0.0, 1.0});
  tuples.emplace_back(std::vector<double>{1.0, 2.0});
  auto report = cx::validate_positivity(bad, tuples);
  CHECK_FALSE(report.all_positive);
  REQUIRE(report.first_violation.has_value());
  CHECK(*report.first_violation == 0);
  CHECK(report.entries[0].sign == -1);

  auto good = cx::ChebSystem::poly(2);
  auto ok = cx::validate_positivity(good, tuples);
  CHECK(ok.all_positive);
  CHECK_FALSE(ok.first_violation.has_value());
  CHECK(ok.entries[0].sign == 1);
  CHECK(ok.entries[1].sign == 1);
}

TEST_CASE("near-coincident nodes trip the conditioning flag but still evaluate") {
  auto sys = cx::ChebSystem::poly(3);
  auto r = cx::evaluate_phi(sys, cx::Configuration({0.0, 1e-7, 2e-7}));
  CHECK(r.ill_conditioned);
  CHECK(r.value > 0.0);
  CHECK(r.condition_estimate > 1e12);

  auto fine = cx::evaluate_phi(sys, cx::Configuration({0.0, 1.0, 2.0}));
  CHECK_FALSE(fine.ill_conditioned);
}

TEST_CASE("default extension exists for poly only") {
  auto ext = cx::ExtendedSystem::with_default_extension(cx::ChebSystem::poly(2));
  CHECK(ext.extension()(3.0) == doctest::Approx(9.0));
  CHECK(ext.base_dim() == 2);
  CHECK(error_code_of([] { cx::ExtendedSystem::with_default_extension(cx::builtin_system("trig-odd:1")); }) ==
        cx::ErrorCode::ExtensionRequired);
  CHECK(error_code_of([] { cx::ExtendedSystem::with_default_extension(cx::builtin_system("one-xsq")); }) ==
        cx::ErrorCode::ExtensionRequired);
}

TEST_CASE("stacked evaluation rejects mismatched tuple lengths") {
  auto sys = cx::ChebSystem::poly(2);
  CHECK(error_code_of([&] { cx::evaluate_phi(sys, cx::Configuration({0.0, 1.0, 2.0})); }) ==
        cx::ErrorCode::DimensionMismatch);
  auto ext = cx::ExtendedSystem::with_default_extension(sys);
  CHECK(error_code_of([&] { cx::evaluate_phi(ext, cx::Configuration({0.0, 1.0})); }) ==
        cx::ErrorCode::DimensionMismatch);
}

TEST_CASE("sampled functions evaluate their analytic families and reject off-table points") {
  auto p = cx::SampledFunction::poly({1.0, 0.0, 2.0});
  CHECK(p(3.0) == doctest::Approx(19.0));
  CHECK(p.analytic());

  auto a = cx::SampledFunction::abs_shift(1.5);
  CHECK(a(0.0) == doctest::Approx(1.5));
  CHECK(a(2.0) == doctest::Approx(0.5));

  auto e = cx::SampledFunction::exp_scale(2.0);
  CHECK(e(1.0) == doctest::Approx(std::exp(2.0)));

  auto s = cx::SampledFunction::sin_wave(2.0, 0.5);
  CHECK(s(1.0) == doctest::Approx(std::sin(2.5)));

  auto t = cx::SampledFunction::table({0.0, 1.0}, {5.0, 7.0});
  CHECK_FALSE(t.analytic());
  CHECK(t(1.0) == doctest::Approx(7.0));
  CHECK(error_code_of([&] { t(0.5); }) == cx::ErrorCode::EvaluationOffGrid);
  CHECK(error_code_of([] { cx::SampledFunction::table({1.0, 0.0}, {1.0, 2.0}); }) ==
        cx::ErrorCode::NotStrictlyOrdered);
}

TEST_CASE("describe strings name the family and parameter") {
  CHECK(cx::ChebSystem::poly(3).describe() == "poly(3)");
  CHECK(cx::builtin_system("trig-odd:2").describe() == "trig-odd(2)");
  CHECK(cx::builtin_system("one-xsq").describe() == "one-xsq");
  CHECK(cx::SampledFunction::abs_shift(0.0).describe().find("abs") != std::string::npos);
}
