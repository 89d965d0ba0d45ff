#include <gtest/gtest.h>

#include <set>

#include "test_support.hpp"
#include "varpart/data_io.hpp"
#include "varpart/decomposition.hpp"
#include "varpart/error.hpp"

using namespace varpart;
using varpart::testing::qr_regression_ss;
using varpart::testing::rel_close;

namespace {

const std::vector<std::string> kBoth{"TARGTPOP", "DISPOINC"};

const CenteredData& dwaine() {
  static const CenteredData c = mean_center(dwaine_fixture());
  return c;
}

std::vector<std::string> without(const std::vector<std::string>& v, const std::string& name) {
  std::vector<std::string> out;
  for (const auto& s : v) if (s != name) out.push_back(s);
  return out;
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no varpart::Error thrown";
  return ErrorKind::InvalidArgument;
}

Dataset orthogonal_dataset(std::size_t n, std::size_t p, std::uint64_t seed) {
  return orthogonalize_predictors(generate_synthetic(equicorrelated_spec(n, p, 0.5, seed)));
}

}  // namespace

TEST(Ordering, MustBeAPermutation) {
  EXPECT_NO_THROW(Ordering({"DISPOINC", "TARGTPOP"}, kBoth));
  EXPECT_EQ(kind_of([] { Ordering({"TARGTPOP"}, kBoth); }), ErrorKind::InvalidOrdering);
  EXPECT_EQ(kind_of([] { Ordering({"TARGTPOP", "TARGTPOP"}, kBoth); }), ErrorKind::InvalidOrdering);
  EXPECT_EQ(Ordering({"DISPOINC", "TARGTPOP"}, kBoth).key(), "DISPOINC,TARGTPOP");
}

TEST(Residualize, DwaineCrossProducts) {
  const auto& c = dwaine();
  const std::vector<std::string> x2{"DISPOINC"};
  const std::vector<std::string> x1{"TARGTPOP"};
  const auto x1_2 = residualize(c, "TARGTPOP", x2);
  const auto x2_1 = residualize(c, "DISPOINC", x1);
  EXPECT_NEAR(x1_2.values.dot(c.y), 3929.37, 0.01);
  EXPECT_NEAR(x2_1.values.dot(c.y), 68.71, 0.01);
  EXPECT_EQ(x1_2.label(), "TARGTPOP|DISPOINC");
}

TEST(Residualize, EmptySetReturnsCenteredColumn) {
  const auto& c = dwaine();
  const auto r = residualize(c, "TARGTPOP", std::vector<std::string>{});
  EXPECT_EQ(r.values, c.column("TARGTPOP"));
  EXPECT_EQ(r.label(), "TARGTPOP");
}

TEST(Residualize, OrthogonalToConditioningSet) {
  const auto d = generate_synthetic(equicorrelated_spec(80, 4, 0.7, 11));
  const auto c = mean_center(d);
  const std::vector<std::string> against{"X1", "X3", "X4"};
  const auto r = residualize(c, "X2", against);
  const double scale = r.values.norm() * c.column("X2").norm();
  EXPECT_LE(std::fabs(r.values.sum()), 1e-9 * c.column("X2").cwiseAbs().sum());
  for (const auto& name : against) {
    EXPECT_LE(std::fabs(r.values.dot(c.column(name))), 1e-9 * scale) << name;
  }
  // Two orthogonalized columns have a vanishing SSCP off-diagonal.
  const auto a = residualize(c, "X1", std::vector<std::string>{});
  const auto b = residualize(c, "X2", std::vector<std::string>{"X1"});
  EXPECT_LE(std::fabs(a.values.dot(b.values)), 1e-9 * a.values.norm() * b.values.norm());
}

TEST(Residualize, Errors) {
  const auto& c = dwaine();
  EXPECT_EQ(kind_of([&] { residualize(c, "NOPE", std::vector<std::string>{}); }),
            ErrorKind::UnknownName);
  EXPECT_EQ(kind_of([&] { residualize(c, "TARGTPOP", std::vector<std::string>{"NOPE"}); }),
            ErrorKind::UnknownName);
  EXPECT_EQ(kind_of([&] { residualize(c, "TARGTPOP", std::vector<std::string>{"TARGTPOP"}); }),
            ErrorKind::InvalidArgument);
}

TEST(SequentialSs, DwaineBothOrders) {
  const auto& c = dwaine();
  const auto forward = sequential_ss(c, Ordering(kBoth, kBoth));
  EXPECT_NEAR(forward[0].second, 23371.81, 0.02);
  EXPECT_NEAR(forward[1].second, 643.48, 0.02);
  const auto backward = sequential_ss(c, Ordering({"DISPOINC", "TARGTPOP"}, kBoth));
  EXPECT_EQ(backward[0].first, "DISPOINC");
  EXPECT_NEAR(backward[0].second, 18299.78, 0.02);
  EXPECT_NEAR(backward[1].second, 5715.51, 0.02);
}

TEST(SequentialSs, ExtraSsFollowsFromModelSs) {
  // 24,015.28 - 23,371.81 = 643.47, not 643.81 or 643.99.
  const auto forward = sequential_ss(dwaine(), Ordering(kBoth, kBoth));
  EXPECT_NEAR(forward[1].second, 643.47, 0.01);
  EXPECT_GT(std::fabs(forward[1].second - 643.81), 0.3);
  EXPECT_GT(std::fabs(forward[1].second - 643.99), 0.5);
}

TEST(SequentialSs, OrthogonalDesignIsOrderFree) {
  const auto c = mean_center(orthogonal_dataset(40, 3, 3));
  const std::vector<std::string> model{"X1", "X2", "X3"};
  std::map<std::string, double> first;
  for (const auto& ord : all_orderings(model)) {
    for (const auto& [name, ss] : sequential_ss(c, ord)) {
      if (!first.contains(name)) first[name] = ss;
      EXPECT_TRUE(rel_close(first[name], ss, 1e-9)) << ord.key() << " " << name;
    }
  }
}

TEST(PartialSs, Dwaine) {
  const auto& c = dwaine();
  EXPECT_NEAR(partial_ss(c, "TARGTPOP", kBoth), 5715.51, 0.02);
  EXPECT_NEAR(partial_ss(c, "DISPOINC", kBoth), 643.48, 0.02);
}

TEST(PartialSs, SinglePredictorModelIsItsRegressionSs) {
  const auto& c = dwaine();
  const std::vector<std::string> one{"DISPOINC"};
  EXPECT_DOUBLE_EQ(partial_ss(c, "DISPOINC", one), fit_ols(c, one).ss_regression);
}

TEST(PartialSs, PredictorMustBeInModel) {
  const std::vector<std::string> one{"DISPOINC"};
  EXPECT_EQ(kind_of([&] { partial_ss(dwaine(), "TARGTPOP", one); }), ErrorKind::InvalidArgument);
}

TEST(ActualModelSs, Dwaine) {
  EXPECT_NEAR(actual_model_ss(dwaine(), kBoth), 6358.99, 0.02);
}

TEST(ActualModelSs, OrthogonalEqualsRegressionSs) {
  const auto c = mean_center(orthogonal_dataset(30, 2, 8));
  const std::vector<std::string> model{"X1", "X2"};
  EXPECT_TRUE(rel_close(actual_model_ss(c, model), fit_ols(c, model).ss_regression, 1e-9));
}

TEST(ActualModelSs, SyntheticSeed42MatchesSquaredT) {
  const auto c = mean_center(generate_synthetic(equicorrelated_spec(50, 3, 0.6, 42)));
  const std::vector<std::string> model{"X1", "X2", "X3"};
  const auto full = fit_ols(c, model);
  // Oracle: direct subtraction of subset fits, and sum of t^2 * MS(residual).
  double by_subtraction = 0.0;
  for (const auto& name : model) {
    by_subtraction += full.ss_regression - fit_ols(c, without(model, name)).ss_regression;
  }
  const double by_t = full.t.squaredNorm() * full.ms_residual();
  EXPECT_TRUE(rel_close(actual_model_ss(c, model), by_subtraction, 1e-12));
  EXPECT_TRUE(rel_close(actual_model_ss(c, model), by_t, 1e-9));
}

TEST(CorrectedR2, Dwaine) {
  const auto& c = dwaine();
  EXPECT_NEAR(corrected_r2(c, kBoth), 0.243, 0.001);
  EXPECT_NEAR(corrected_r2_from_z(c, kBoth), 0.243, 0.001);
  // (.467)^2 + (.157)^2 from the residualized standardized coefficients.
  const auto fits = residualized_simple_fits(c, kBoth);
  EXPECT_NEAR(fits[0].z(0), 0.467, 0.005);
  EXPECT_NEAR(fits[1].z(0), 0.157, 0.005);
  EXPECT_TRUE(rel_close(corrected_r2(c, kBoth), corrected_r2_from_z(c, kBoth), 1e-9));
}

TEST(CorrectedR2, OrthogonalEqualsTraditional) {
  const auto c = mean_center(orthogonal_dataset(25, 3, 4));
  const std::vector<std::string> model{"X1", "X2", "X3"};
  EXPECT_TRUE(rel_close(corrected_r2(c, model), fit_ols(c, model).r2, 1e-9));
}

TEST(CorrectedF, Dwaine) {
  const auto& c = dwaine();
  EXPECT_NEAR(corrected_f(c, kBoth), 26.24, 0.02);
  EXPECT_NEAR(corrected_f_from_t(c, kBoth), 26.24, 0.02);
  EXPECT_TRUE(rel_close(corrected_f(c, kBoth), corrected_f_from_t(c, kBoth), 1e-9));
  // Not 26.64.
  EXPECT_GT(std::fabs(corrected_f(c, kBoth) - 26.64), 0.3);
}

TEST(CorrectedF, OrthogonalEqualsTraditional) {
  const auto c = mean_center(orthogonal_dataset(25, 2, 9));
  const std::vector<std::string> model{"X1", "X2"};
  EXPECT_TRUE(rel_close(corrected_f(c, model), fit_ols(c, model).f, 1e-9));
}

TEST(CorrectedF, SyntheticSeed7BothRoutes) {
  const auto c = mean_center(generate_synthetic(equicorrelated_spec(30, 2, 0.5, 7)));
  const std::vector<std::string> model{"X1", "X2"};
  // Independent sides: mean squared t from the full fit, and the MS ratio
  // built from raw-data QR subset fits.
  const auto d = generate_synthetic(equicorrelated_spec(30, 2, 0.5, 7));
  const double full = qr_regression_ss(d, model);
  const double unique = (full - qr_regression_ss(d, {"X2"})) + (full - qr_regression_ss(d, {"X1"}));
  const double ms_res = (c.ss_total() - full) / 27.0;
  EXPECT_TRUE(rel_close(corrected_f_from_t(c, model), (unique / 2.0) / ms_res, 1e-9));
  EXPECT_TRUE(rel_close(corrected_f(c, model), (unique / 2.0) / ms_res, 1e-9));
}

TEST(OrthogonalRegression, DwaineTargtpopFirst) {
  const auto fit = orthogonal_regression(dwaine(), Ordering(kBoth, kBoth));
  EXPECT_NEAR(fit.ss_regression, 24015.28, 0.02);
  EXPECT_NEAR(fit.r2, 0.917, 0.005);
  EXPECT_NEAR(fit.f, 99.10, 0.02);
  EXPECT_NEAR(fit.b(0), 1.836, 0.02);
  EXPECT_NEAR(fit.b(1), 9.366, 0.02);
  EXPECT_NEAR(fit.z(0), 0.945, 0.005);
  EXPECT_NEAR(fit.z(1), 0.157, 0.005);
  EXPECT_NEAR(fit.t(0), 13.89, 0.02);
  EXPECT_NEAR(fit.t(1), 2.31, 0.02);
  EXPECT_EQ(fit.predictor_subset[1], "DISPOINC|TARGTPOP");
}

TEST(OrthogonalRegression, DwaineDispoincFirst) {
  const auto fit = orthogonal_regression(dwaine(), Ordering({"DISPOINC", "TARGTPOP"}, kBoth));
  EXPECT_NEAR(fit.b(0), 31.173, 0.02);
  EXPECT_NEAR(fit.b(1), 1.455, 0.02);
  EXPECT_NEAR(fit.z(0), 0.836, 0.005);
  EXPECT_NEAR(fit.z(1), 0.467, 0.005);
  EXPECT_NEAR(fit.t(0), 12.29, 0.02);
  EXPECT_NEAR(fit.t(1), 6.87, 0.02);
}

TEST(OrthogonalRegression, ConstructedColumnsAreOrthogonal) {
  const auto c = mean_center(generate_synthetic(equicorrelated_spec(60, 4, 0.8, 21)));
  const std::vector<std::string> model{"X3", "X1", "X4", "X2"};
  std::vector<std::string> preceding;
  std::vector<Eigen::VectorXd> cols;
  for (const auto& name : model) {
    cols.push_back(residualize(c, name, preceding).values);
    preceding.push_back(name);
  }
  for (std::size_t i = 0; i < cols.size(); ++i) {
    for (std::size_t j = i + 1; j < cols.size(); ++j) {
      EXPECT_LE(std::fabs(cols[i].dot(cols[j])), 1e-9 * cols[i].norm() * cols[j].norm());
    }
  }
}

TEST(ResidualizedSimpleFits, Dwaine) {
  const auto fits = residualized_simple_fits(dwaine(), kBoth);
  ASSERT_EQ(fits.size(), 2u);
  const auto& a = fits[0];
  EXPECT_EQ(a.predictor_subset[0], "TARGTPOP|DISPOINC");
  EXPECT_NEAR(a.ss_regression, 5715.51, 0.02);
  EXPECT_NEAR(a.ss_residual, 20480.71, 0.02);
  EXPECT_NEAR(a.f, 5.30, 0.02);
  EXPECT_NEAR(a.r2, 0.218, 0.005);
  EXPECT_NEAR(a.b(0), 1.455, 0.02);
  EXPECT_NEAR(a.z(0), 0.467, 0.005);
  EXPECT_NEAR(a.t(0), 2.30, 0.02);
  EXPECT_EQ(a.df_residual, 19);
  const auto& b = fits[1];
  EXPECT_NEAR(b.ss_regression, 643.48, 0.02);
  EXPECT_NEAR(b.ss_residual, 25552.73, 0.02);
  EXPECT_NEAR(b.f, 0.48, 0.02);
  EXPECT_NEAR(b.r2, 0.025, 0.005);
  EXPECT_NEAR(b.b(0), 9.366, 0.02);
  EXPECT_NEAR(b.z(0), 0.157, 0.005);
  EXPECT_NEAR(b.t(0), 0.69, 0.02);
  EXPECT_EQ(b.df_residual, 19);
}

TEST(ResidualizedSimpleFits, OrthogonalMatchesPlainSimpleRegression) {
  const auto c = mean_center(orthogonal_dataset(30, 3, 12));
  const std::vector<std::string> model{"X1", "X2", "X3"};
  const auto fits = residualized_simple_fits(c, model);
  for (std::size_t j = 0; j < model.size(); ++j) {
    const auto plain = fit_ols(c, std::vector<std::string>{model[j]});
    EXPECT_TRUE(rel_close(fits[j].ss_regression, plain.ss_regression, 1e-9));
    EXPECT_TRUE(rel_close(fits[j].b(0), plain.b(0), 1e-9));
    EXPECT_TRUE(rel_close(fits[j].t(0), plain.t(0), 1e-9));
  }
}

TEST(SsViaCrossProducts, Dwaine) {
  EXPECT_NEAR(ss_via_residualized_crossproducts(dwaine(), kBoth), 6358.99, 0.02);
}

TEST(SsViaCrossProducts, SinglePredictorIsClassicalFormula) {
  const auto& c = dwaine();
  const std::vector<std::string> one{"TARGTPOP"};
  EXPECT_TRUE(rel_close(ss_via_residualized_crossproducts(c, one),
                        fit_ols(c, one).b(0) * c.column("TARGTPOP").dot(c.y), 1e-12));
}

TEST(SsViaCrossProducts, SyntheticSeed42MatchesSubsetSubtraction) {
  const auto d = generate_synthetic(equicorrelated_spec(50, 3, 0.6, 42));
  const auto c = mean_center(d);
  const std::vector<std::string> model{"X1", "X2", "X3"};
  const double full = qr_regression_ss(d, model);
  double oracle = 0.0;
  for (const auto& name : model) oracle += full - qr_regression_ss(d, without(model, name));
  EXPECT_TRUE(rel_close(ss_via_residualized_crossproducts(c, model), oracle, 1e-9));
}

TEST(VennRegions, Dwaine) {
  const auto v = venn_regions(dwaine(), kBoth);
  ASSERT_EQ(v.unique.size(), 2u);
  EXPECT_NEAR(v.unique[0].second, 5715.51, 0.02);
  EXPECT_NEAR(v.unique[1].second, 643.48, 0.02);
  EXPECT_NEAR(v.residual, 2180.93, 0.02);
  // 6,358.99 + 2,180.93; not 8,839.92 / 17,352.29 / 66.2%.
  EXPECT_NEAR(v.accounted_total, 8539.92, 0.02);
  EXPECT_NEAR(v.missing, 17656.29, 0.02);
  EXPECT_NEAR(v.missing_fraction, 0.674, 0.0005);
  EXPECT_NEAR(v.unique[0].second + v.unique[1].second + v.common_total, 24015.28, 0.02);
  EXPECT_FALSE(v.suppression());
}

TEST(VennRegions, OrthogonalHasNoCommonRegion) {
  const auto c = mean_center(orthogonal_dataset(40, 2, 2));
  const auto v = venn_regions(c, std::vector<std::string>{"X1", "X2"});
  EXPECT_LE(std::fabs(v.common_total), 1e-9 * v.ss_total);
  EXPECT_LE(std::fabs(v.missing), 1e-9 * v.ss_total);
  EXPECT_TRUE(rel_close(v.accounted_total, v.ss_total, 1e-9));
}

TEST(VennRegions, SuppressionIsReportedSigned) {
  // Classic suppressor: X2 is uncorrelated with Y but correlated with X1.
  const auto d = Dataset::create({{"y", {1, 2, 3, 4, 5, 6, 7, 8}},
                                  {"x1", {1.2, 1.9, 3.3, 3.8, 5.4, 5.9, 7.1, 8.2}},
                                  {"x2", {0.1, -0.2, 0.4, -0.3, 0.5, -0.4, 0.2, 0.0}}},
                                 "y", {"x1", "x2"});
  const auto c = mean_center(d);
  const std::vector<std::string> model{"x1", "x2"};
  const auto v = venn_regions(c, model);
  const auto fit = fit_ols(c, model);
  EXPECT_LT(v.common_total, 0.0);
  EXPECT_TRUE(v.suppression());
  EXPECT_TRUE(rel_close(v.unique[0].second + v.unique[1].second + v.common_total,
                        fit.ss_regression, 1e-9));
  EXPECT_TRUE(rel_close(v.missing, v.common_total, 1e-9));
}

TEST(AllOrderings, LexicographicAndCapped) {
  const std::vector<std::string> model{"b", "c", "a"};
  const auto ords = all_orderings(model);
  ASSERT_EQ(ords.size(), 6u);
  EXPECT_EQ(ords.front().key(), "a,b,c");
  EXPECT_EQ(ords.back().key(), "c,b,a");
  EXPECT_TRUE(std::is_sorted(ords.begin(), ords.end()));
  std::vector<std::string> nine;
  for (int i = 1; i <= 9; ++i) nine.push_back("X" + std::to_string(i));
  EXPECT_EQ(kind_of([&] { all_orderings(nine); }), ErrorKind::TooManyOrderings);
  EXPECT_EQ(all_orderings(std::vector<std::string>(nine.begin(), nine.end() - 1)).size(), 40320u);
}

TEST(CompareReport, Dwaine) {
  const auto r = compare_report(dwaine(), kBoth);
  EXPECT_NEAR(r.traditional.r2, 0.917, 0.005);
  EXPECT_NEAR(r.traditional.f, 99.10, 0.02);
  EXPECT_NEAR(r.corrected_r2, 0.243, 0.001);
  EXPECT_NEAR(r.corrected_f, 26.24, 0.02);
  ASSERT_EQ(r.orderings.size(), 2u);
  EXPECT_EQ(r.orderings[0].ordering.key(), "DISPOINC,TARGTPOP");
  EXPECT_NEAR(r.per_predictor[0].type3_ss, 5715.51, 0.02);
  EXPECT_NEAR(r.per_predictor[0].type1_by_ordering.at("TARGTPOP,DISPOINC"), 23371.81, 0.02);
  EXPECT_NEAR(r.per_predictor[0].type1_by_ordering.at("DISPOINC,TARGTPOP"), 5715.51, 0.02);
  EXPECT_NEAR(r.ss_via_crossproducts, 6358.99, 0.02);
}

TEST(CompareReport, SinglePredictorCoincides) {
  const auto& c = dwaine();
  const std::vector<std::string> one{"TARGTPOP"};
  const auto r = compare_report(c, one);
  EXPECT_TRUE(rel_close(r.corrected_r2, r.traditional.r2, 1e-12));
  EXPECT_TRUE(rel_close(r.corrected_f, r.traditional.f, 1e-12));
  EXPECT_EQ(r.orderings.size(), 1u);
}

TEST(CompareReport, ExplicitOrderingsAreSortedAndDeduplicated) {
  CompareOptions opts;
  opts.exhaustive = false;
  opts.orderings = {Ordering(kBoth, kBoth), Ordering({"DISPOINC", "TARGTPOP"}, kBoth),
                    Ordering(kBoth, kBoth)};
  const auto r = compare_report(dwaine(), kBoth, opts);
  ASSERT_EQ(r.orderings.size(), 2u);
  EXPECT_EQ(r.orderings[0].ordering.key(), "DISPOINC,TARGTPOP");
}

TEST(CompareReport, TooManyForExhaustive) {
  const auto c = mean_center(generate_synthetic(equicorrelated_spec(40, 9, 0.2, 1)));
  EXPECT_EQ(kind_of([&] { compare_report(c, c.predictor_names); }),
            ErrorKind::TooManyOrderings);
  CompareOptions opts;
  opts.exhaustive = false;
  EXPECT_EQ(compare_report(c, c.predictor_names, opts).orderings.size(), 1u);
}

TEST(TypeAnova, AdditivityFlag) {
  const auto& c = dwaine();
  const auto t1 = type1_anova(c, Ordering(kBoth, kBoth));
  const auto t3 = type3_anova(c, kBoth);
  EXPECT_TRUE(t1.additive);
  EXPECT_FALSE(t3.additive);
  EXPECT_TRUE(rel_close(t1.rows[0].ss + t1.rows[1].ss + t1.rows[2].ss, t1.rows[3].ss, 1e-9));
  EXPECT_FALSE(rel_close(t3.rows[0].ss + t3.rows[1].ss + t3.rows[2].ss, t3.rows[3].ss, 1e-3));
}

// Decomposition identities over a spread of correlated designs.
class DecompositionProperties : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(DecompositionProperties, Identities) {
  const auto d = generate_synthetic(varpart::testing::random_spec(GetParam()));
  const auto c = mean_center(d);
  const auto model = d.predictor_names();
  const auto r = compare_report(c, model);
  const auto& full = r.traditional;

  for (const auto& t : r.orderings) {
    double sum = 0.0;
    for (const auto& [name, ss] : t.sequential) sum += ss;
    EXPECT_TRUE(rel_close(sum, full.ss_regression, 1e-9)) << t.ordering.key();
  }
  for (std::size_t j = 0; j < model.size(); ++j) {
    const auto jj = static_cast<Eigen::Index>(j);
    const double oracle = qr_regression_ss(d, model) - qr_regression_ss(d, without(model, model[j]));
    EXPECT_TRUE(rel_close(r.per_predictor[j].type3_ss, oracle, 1e-7)) << model[j];
    EXPECT_TRUE(rel_close(r.residualized_fits[j].b(0), full.b(jj), 1e-9));
    EXPECT_TRUE(rel_close(r.residualized_fits[j].ss_regression, r.per_predictor[j].type3_ss, 1e-8));
    EXPECT_TRUE(rel_close(full.t(jj) * full.t(jj) * full.ms_residual(), r.per_predictor[j].type3_ss, 1e-8));
  }
  EXPECT_TRUE(rel_close(r.corrected_r2_from_z, r.corrected_r2, 1e-8));
  EXPECT_TRUE(rel_close(r.corrected_f_from_t, r.corrected_f, 1e-8));
  EXPECT_TRUE(rel_close(r.ss_via_crossproducts, r.actual_model_ss, 1e-8));
  const auto& v = r.venn;
  double unique = 0.0;
  for (const auto& [name, ss] : v.unique) unique += ss;
  EXPECT_TRUE(rel_close(unique + v.common_total + v.residual, v.ss_total, 1e-9));
  EXPECT_TRUE(rel_close(v.missing, v.common_total, 1e-8));

  for (const auto& t : r.orderings) {
    const auto orth = orthogonal_regression(c, t.ordering);
    EXPECT_TRUE(rel_close(orth.ss_regression, full.ss_regression, 1e-9));
    EXPECT_TRUE(rel_close(orth.ss_residual, full.ss_residual, 1e-8));
    EXPECT_TRUE(rel_close(orth.f, full.f, 1e-8));
    for (std::size_t i = 0; i < t.sequential.size(); ++i) {
      const auto ii = static_cast<Eigen::Index>(i);
      EXPECT_TRUE(rel_close(orth.t(ii) * orth.t(ii) * orth.ms_residual(), t.sequential[i].second, 1e-8))
          << t.ordering.key() << " term " << i;
    }
    // The last term of each chain carries the full-model coefficient.
    const auto& last = t.ordering.names().back();
    const auto k = static_cast<Eigen::Index>(
        std::find(model.begin(), model.end(), last) - model.begin());
    EXPECT_TRUE(rel_close(orth.b(orth.b.size() - 1), full.b(k), 1e-8));
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, DecompositionProperties, ::testing::Range<std::uint64_t>(100, 140));
