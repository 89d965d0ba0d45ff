#include "varpart/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "varpart/error.hpp"

namespace varpart {

namespace {

std::string join(std::span<const std::string> names) {
  std::string out;
  for (const auto& n : names) {
    if (!out.empty()) out += ",";
    out += n;
  }
  return out;
}

std::vector<std::string> without(std::span<const std::string> model,
                                 const std::string& name) {
  std::vector<std::string> rest;
  for (const auto& m : model) {
    if (m != name) rest.push_back(m);
  }
  return rest;
}

void require_model(const CenteredData& c, std::span<const std::string> model) {
  if (model.empty()) throw Error(ErrorKind::EmptySubset, "model is empty");
  std::set<std::string> seen;
  for (const auto& name : model) {
    c.predictor_index(name);
    if (!seen.insert(name).second) {
      throw Error(ErrorKind::SingularDesign,
                  "singular design: predictor '" + name + "' appears twice");
    }
  }
}

double sample_sd(const Eigen::VectorXd& v) {
  return std::sqrt(v.squaredNorm() / static_cast<double>(v.size() - 1));
}

double regression_ss(const CenteredData& c, std::span<const std::string> subset) {
  if (subset.empty()) return 0.0;
  return fit_ols(c, subset).ss_regression;
}

// Regression SS of every subset reachable from a model, keyed by the subset
// in model order. Type I and Type III sums only ever need 2^p distinct fits.
class SubsetSs {
 public:
  SubsetSs(const CenteredData& c, std::span<const std::string> model)
      : c_(c), model_(model.begin(), model.end()) {}

  double of(std::span<const std::string> subset) {
    std::vector<std::string> key;
    for (const auto& m : model_) {
      if (std::find(subset.begin(), subset.end(), m) != subset.end()) {
        key.push_back(m);
      }
    }
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    const double ss = regression_ss(c_, key);
    cache_.emplace(std::move(key), ss);
    return ss;
  }

 private:
  const CenteredData& c_;
  std::vector<std::string> model_;
  std::map<std::vector<std::string>, double> cache_;
};

NamedSs sequential_with(SubsetSs& cache, const Ordering& ord) {
  NamedSs out;
  std::vector<std::string> prefix;
  double previous = 0.0;
  for (const auto& name : ord.names()) {
    prefix.push_back(name);
    const double current = cache.of(prefix);
    out.emplace_back(name, current - previous);
    previous = current;
  }
  return out;
}

double partial_with(SubsetSs& cache, std::span<const std::string> model,
                    const std::string& predictor) {
  const auto rest = without(model, predictor);
  return cache.of(model) - cache.of(rest);
}

}  // namespace

Ordering::Ordering(std::vector<std::string> names,
                   std::span<const std::string> model)
    : names_(std::move(names)) {
  std::vector<std::string> a = names_;
  std::vector<std::string> b(model.begin(), model.end());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  if (a != b || std::adjacent_find(a.begin(), a.end()) != a.end()) {
    throw Error(ErrorKind::InvalidOrdering,
                "ordering {" + join(names_) + "} is not a permutation of {" +
                    join(model) + "}");
  }
}

std::string Ordering::key() const { return join(names_); }

std::string ResidualizedPredictor::label() const {
  if (conditioned_on.empty()) return target;
  return target + "|" + join(conditioned_on);
}

ResidualizedPredictor residualize(const CenteredData& c, const std::string& target,
                                  std::span<const std::string> against) {
  const auto target_idx = static_cast<Eigen::Index>(c.predictor_index(target));
  ResidualizedPredictor out;
  out.target = target;
  out.conditioned_on.assign(against.begin(), against.end());
  const Eigen::VectorXd column = c.x.col(target_idx);
  if (against.empty()) {
    out.values = column;
    return out;
  }
  if (std::find(against.begin(), against.end(), target) != against.end()) {
    throw Error(ErrorKind::InvalidArgument,
                "cannot residualize '" + target + "' on itself");
  }

  const auto k = static_cast<Eigen::Index>(against.size());
  Eigen::MatrixXd design(column.size(), k);
  for (Eigen::Index j = 0; j < k; ++j) {
    design.col(j) = c.column(against[static_cast<std::size_t>(j)]);
  }
  const OlsFit aux = fit_centered_design(design, column, out.conditioned_on,
                                         Eigen::VectorXd::Zero(k), 0.0);
  out.values = aux.residuals;

  // The share of the target left after projection is 1 / VIF.
  if (!(out.values.squaredNorm() >= kSingularRcond * column.squaredNorm())) {
    throw Error(ErrorKind::SingularDesign,
                "singular design: '" + target +
                    "' is (near) perfectly explained by {" + join(against) + "}");
  }
  return out;
}

NamedSs sequential_ss(const CenteredData& c, const Ordering& ord) {
  require_model(c, ord.names());
  SubsetSs cache(c, ord.names());
  return sequential_with(cache, ord);
}

double partial_ss(const CenteredData& c, const std::string& predictor,
                  std::span<const std::string> model) {
  require_model(c, model);
  if (std::find(model.begin(), model.end(), predictor) == model.end()) {
    throw Error(ErrorKind::InvalidArgument,
                "predictor '" + predictor + "' is not in the model");
  }
  SubsetSs cache(c, model);
  return partial_with(cache, model, predictor);
}

double actual_model_ss(const CenteredData& c, std::span<const std::string> model) {
  require_model(c, model);
  SubsetSs cache(c, model);
  double total = 0.0;
  for (const auto& name : model) total += partial_with(cache, model, name);
  return total;
}

double corrected_r2(const CenteredData& c, std::span<const std::string> model) {
  return actual_model_ss(c, model) / c.ss_total();
}

double corrected_r2_from_z(const CenteredData& c, std::span<const std::string> model) {
  require_model(c, model);
  const OlsFit full = fit_ols(c, model);
  const double sd_y = sample_sd(c.y);
  double total = 0.0;
  for (std::size_t j = 0; j < model.size(); ++j) {
    const auto r = residualize(c, model[j], without(model, model[j]));
    const double z = full.b(static_cast<Eigen::Index>(j)) * sample_sd(r.values) / sd_y;
    total += z * z;
  }
  return total;
}

double corrected_f(const CenteredData& c, std::span<const std::string> model) {
  require_model(c, model);
  const OlsFit full = fit_ols(c, model);
  const double p = static_cast<double>(model.size());
  return (actual_model_ss(c, model) / p) / full.ms_residual();
}

double corrected_f_from_t(const CenteredData& c, std::span<const std::string> model) {
  require_model(c, model);
  const OlsFit full = fit_ols(c, model);
  return full.t.squaredNorm() / static_cast<double>(model.size());
}

OlsFit orthogonal_regression(const CenteredData& c, const Ordering& ord) {
  require_model(c, ord.names());
  const auto& names = ord.names();
  const auto k = static_cast<Eigen::Index>(names.size());
  Eigen::MatrixXd design(static_cast<Eigen::Index>(c.n()), k);
  Eigen::VectorXd means = Eigen::VectorXd::Zero(k);
  std::vector<std::string> labels;
  std::vector<std::string> preceding;
  for (Eigen::Index j = 0; j < k; ++j) {
    const auto& name = names[static_cast<std::size_t>(j)];
    const auto r = residualize(c, name, preceding);
    design.col(j) = r.values;
    labels.push_back(r.label());
    preceding.push_back(name);
  }
  means(0) = c.mean_of(names.front());
  return fit_centered_design(design, c.y, std::move(labels), means, c.means(0));
}

std::vector<OlsFit> residualized_simple_fits(const CenteredData& c,
                                             std::span<const std::string> model) {
  require_model(c, model);
  std::vector<OlsFit> fits;
  for (const auto& name : model) {
    const auto r = residualize(c, name, without(model, name));
    fits.push_back(fit_centered_design(r.values, c.y, {r.label()},
                                       Eigen::VectorXd::Zero(1), c.means(0)));
  }
  return fits;
}

double ss_via_residualized_crossproducts(const CenteredData& c,
                                         std::span<const std::string> model) {
  require_model(c, model);
  const OlsFit full = fit_ols(c, model);
  double total = 0.0;
  for (std::size_t j = 0; j < model.size(); ++j) {
    const auto r = residualize(c, model[j], without(model, model[j]));
    total += full.b(static_cast<Eigen::Index>(j)) * r.values.dot(c.y);
  }
  return total;
}

VennRegions venn_regions(const CenteredData& c, std::span<const std::string> model) {
  require_model(c, model);
  const OlsFit full = fit_ols(c, model);
  SubsetSs cache(c, model);
  VennRegions v;
  double unique_sum = 0.0;
  for (const auto& name : model) {
    const double u = partial_with(cache, model, name);
    v.unique.emplace_back(name, u);
    unique_sum += u;
  }
  v.common_total = full.ss_regression - unique_sum;
  v.residual = full.ss_residual;
  v.ss_total = full.ss_total;
  v.accounted_total = unique_sum + v.residual;
  v.missing = v.ss_total - v.accounted_total;
  v.missing_fraction = v.missing / v.ss_total;
  return v;
}

std::vector<Ordering> all_orderings(std::span<const std::string> model) {
  if (model.size() > kMaxExhaustivePredictors) {
    throw Error(ErrorKind::TooManyOrderings,
                std::to_string(model.size()) + " predictors exceed the cap of " +
                    std::to_string(kMaxExhaustivePredictors) +
                    " for exhaustive orderings; pass explicit orderings");
  }
  std::vector<std::string> names(model.begin(), model.end());
  std::sort(names.begin(), names.end());
  std::vector<Ordering> out;
  do {
    out.emplace_back(names, model);
  } while (std::next_permutation(names.begin(), names.end()));
  return out;
}

DecompositionReport compare_report(const CenteredData& c,
                                   std::span<const std::string> model,
                                   const CompareOptions& options) {
  require_model(c, model);
  DecompositionReport report;
  report.traditional = fit_ols(c, model);

  std::vector<Ordering> orderings;
  if (options.exhaustive) {
    orderings = all_orderings(model);
  } else {
    for (const auto& ord : options.orderings) {
      orderings.emplace_back(ord.names(), model);
    }
    if (orderings.empty()) orderings.emplace_back(
        std::vector<std::string>(model.begin(), model.end()), model);
    std::sort(orderings.begin(), orderings.end());
    orderings.erase(std::unique(orderings.begin(), orderings.end()), orderings.end());
  }

  SubsetSs cache(c, model);
  for (const auto& ord : orderings) {
    report.orderings.push_back({ord, sequential_with(cache, ord)});
  }

  const double sd_y = sample_sd(c.y);
  const double ms_residual = report.traditional.ms_residual();
  const double p = static_cast<double>(model.size());
  for (std::size_t j = 0; j < model.size(); ++j) {
    const auto& name = model[j];
    PredictorSummary s;
    s.name = name;
    s.type3_ss = partial_with(cache, model, name);
    for (const auto& table : report.orderings) {
      for (const auto& [entry, ss] : table.sequential) {
        if (entry == name) s.type1_by_ordering[table.ordering.key()] = ss;
      }
    }
    report.actual_model_ss += s.type3_ss;
    report.per_predictor.push_back(std::move(s));

    const auto r = residualize(c, name, without(model, name));
    const double b = report.traditional.b(static_cast<Eigen::Index>(j));
    const double z = b * sample_sd(r.values) / sd_y;
    report.corrected_r2_from_z += z * z;
    const double cross = r.values.dot(c.y);
    report.residualized_crossproducts.push_back(cross);
    report.ss_via_crossproducts += b * cross;
    report.residualized_fits.push_back(fit_centered_design(
        r.values, c.y, {r.label()}, Eigen::VectorXd::Zero(1), c.means(0)));
  }

  report.corrected_r2 = report.actual_model_ss / report.traditional.ss_total;
  report.corrected_f = (report.actual_model_ss / p) / ms_residual;
  report.corrected_f_from_t = report.traditional.t.squaredNorm() / p;

  auto& v = report.venn;
  for (const auto& s : report.per_predictor) v.unique.emplace_back(s.name, s.type3_ss);
  v.common_total = report.traditional.ss_regression - report.actual_model_ss;
  v.residual = report.traditional.ss_residual;
  v.ss_total = report.traditional.ss_total;
  v.accounted_total = report.actual_model_ss + v.residual;
  v.missing = v.ss_total - v.accounted_total;
  v.missing_fraction = v.missing / v.ss_total;
  return report;
}

AnovaTable type1_anova(const CenteredData& c, const Ordering& ord) {
  const OlsFit full = fit_ols(c, ord.names());
  const double ms_res = full.ms_residual();
  AnovaTable table;
  for (const auto& [name, ss] : sequential_ss(c, ord)) {
    table.rows.push_back({name, ss, 1, ss, ss / ms_res});
  }
  table.rows.push_back({"Residual", full.ss_residual, full.df_residual, ms_res,
                        std::nullopt});
  const int df_total = full.df_model + full.df_residual;
  table.rows.push_back({"Total", full.ss_total, df_total,
                        full.ss_total / df_total, std::nullopt});
  table.r2 = full.r2;
  table.additive = true;
  return table;
}

AnovaTable type3_anova(const CenteredData& c, std::span<const std::string> model) {
  require_model(c, model);
  const OlsFit full = fit_ols(c, model);
  const double ms_res = full.ms_residual();
  SubsetSs cache(c, model);
  AnovaTable table;
  for (const auto& name : model) {
    const double ss = partial_with(cache, model, name);
    table.rows.push_back({name, ss, 1, ss, ss / ms_res});
  }
  table.rows.push_back({"Residual", full.ss_residual, full.df_residual, ms_res,
                        std::nullopt});
  const int df_total = full.df_model + full.df_residual;
  table.rows.push_back({"Total", full.ss_total, df_total,
                        full.ss_total / df_total, std::nullopt});
  table.r2 = full.r2;
  table.additive = false;
  return table;
}

}  // namespace varpart
