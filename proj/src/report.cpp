#include "varpart/report.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <limits>

#include "varpart/format.hpp"

namespace varpart {

using nlohmann::json;

namespace {

std::string full(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (const char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

class LongCsv {
 public:
  LongCsv() { out_ = "section,item,statistic,value\n"; }

  void add(const std::string& section, const std::string& item,
           const std::string& stat, double value) {
    out_ += csv_field(section) + ',' + csv_field(item) + ',' + stat + ',' + full(value) + '\n';
  }

  void add_fit(const std::string& section, const OlsFit& fit) {
    add(section, "Regression", "ss", fit.ss_regression);
    add(section, "Regression", "df", fit.df_model);
    add(section, "Regression", "ms", fit.ms_regression());
    add(section, "Regression", "f", fit.f);
    add(section, "Regression", "r2", fit.r2);
    add(section, "Residual", "ss", fit.ss_residual);
    add(section, "Residual", "df", fit.df_residual);
    add(section, "Residual", "ms", fit.ms_residual());
    add(section, "Total", "ss", fit.ss_total);
    add(section, "Total", "df", fit.df_model + fit.df_residual);
    for (Eigen::Index j = 0; j < fit.b.size(); ++j) {
      const auto& name = fit.predictor_subset[static_cast<std::size_t>(j)];
      add(section, name, "b", fit.b(j));
      add(section, name, "se", fit.se(j));
      add(section, name, "z", fit.z(j));
      add(section, name, "t", fit.t(j));
    }
    add(section, "Intercept", "b", fit.intercept);
  }

  std::string str() const { return out_; }

 private:
  std::string out_;
};

std::string model_line(const CenteredData& c, const std::vector<std::string>& names) {
  std::string s = c.response_name + " on ";
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) s += ", ";
    s += names[i];
  }
  return s + " (n = " + std::to_string(c.n()) + ", mean-centered)";
}

json anova_json(const AnovaTable& t) {
  json rows = json::array();
  for (const auto& row : t.rows) {
    json r = {{"source", row.source}, {"ss", row.ss}, {"df", row.df}};
    r["ms"] = row.ms ? json(*row.ms) : json(nullptr);
    r["f"] = row.f ? json(*row.f) : json(nullptr);
    rows.push_back(std::move(r));
  }
  return {{"rows", rows}, {"r2", t.r2}, {"additive", t.additive}};
}

json coefficients_json(const OlsFit& fit) {
  json out = json::array();
  for (Eigen::Index j = 0; j < fit.b.size(); ++j) {
    out.push_back({{"name", fit.predictor_subset[static_cast<std::size_t>(j)]},
                   {"b", fit.b(j)},
                   {"se", fit.se(j)},
                   {"z", fit.z(j)},
                   {"t", fit.t(j)}});
  }
  return out;
}

json fit_body(const OlsFit& fit) {
  return {{"predictors", fit.predictor_subset},
          {"anova", anova_json(anova_table(fit))},
          {"ss_total", fit.ss_total},
          {"ss_regression", fit.ss_regression},
          {"ss_residual", fit.ss_residual},
          {"df_model", fit.df_model},
          {"df_residual", fit.df_residual},
          {"r2", fit.r2},
          {"f", fit.f},
          {"intercept", fit.intercept},
          {"coefficients", coefficients_json(fit)}};
}

json envelope(const std::string& command, const CenteredData& c,
              const std::vector<std::string>& model) {
  return {{"schema_version", kSchemaVersion},
          {"command", command},
          {"response", c.response_name},
          {"model", model},
          {"n", c.n()}};
}

std::string anova_text(const AnovaTable& t, bool show_r2) {
  std::vector<std::string> header{"Source", "SS", "df", "MS", "F"};
  if (show_r2) header.push_back("R2");
  TextTable table(header);
  bool first = true;
  for (const auto& row : t.rows) {
    std::vector<std::string> cells{row.source, fixed2(row.ss), std::to_string(row.df),
                                   row.ms ? fixed2(*row.ms) : "",
                                   row.f ? fixed2(*row.f) : ""};
    if (show_r2) cells.push_back(first ? fixed2(t.r2) : "");
    table.add_row(std::move(cells));
    first = false;
  }
  return table.render();
}

std::string coefficients_text(const OlsFit& fit, bool intercept) {
  TextTable table({"Predictor", "b", "se", "z", "t"});
  for (Eigen::Index j = 0; j < fit.b.size(); ++j) {
    table.add_row({fit.predictor_subset[static_cast<std::size_t>(j)], fixed2(fit.b(j)),
                   fixed2(fit.se(j)), fixed2(fit.z(j)), fixed2(fit.t(j))});
  }
  if (intercept) table.add_row({"Intercept", fixed2(fit.intercept)});
  return table.render();
}

json venn_body(const VennRegions& v) {
  json unique = json::array();
  for (const auto& [name, ss] : v.unique) unique.push_back({{"name", name}, {"ss", ss}});
  return {{"unique", unique},
          {"common_total", v.common_total},
          {"residual", v.residual},
          {"ss_total", v.ss_total},
          {"accounted_total", v.accounted_total},
          {"missing", v.missing},
          {"missing_fraction", v.missing_fraction},
          {"suppression", v.suppression()}};
}

std::string venn_table(const VennRegions& v) {
  TextTable table({"Region", "SS"});
  for (const auto& [name, ss] : v.unique) table.add_row({"unique " + name, fixed2(ss)});
  table.add_row({"common", fixed2(v.common_total)});
  table.add_row({"residual", fixed2(v.residual)});
  table.add_row({"accounted total", fixed2(v.accounted_total)});
  table.add_row({"missing", fixed2(v.missing)});
  table.add_row({"total", fixed2(v.ss_total)});
  return table.render() + "Missing fraction of total: " + fixed2(v.missing_fraction) + "\n";
}

}  // namespace

bool decompositions_coincide(const VennRegions& v) {
  return std::fabs(v.common_total) <= 1e-9 * v.ss_total;
}

std::vector<OrderingPanel> ordering_panels(const CenteredData& c,
                                           const std::vector<Ordering>& orderings) {
  std::vector<OrderingPanel> panels;
  for (const auto& ord : orderings) {
    panels.push_back({ord, type1_anova(c, ord), orthogonal_regression(c, ord)});
  }
  return panels;
}

json fit_json(const CenteredData& c, const OlsFit& fit) {
  json doc = envelope("fit", c, fit.predictor_subset);
  doc["fit"] = fit_body(fit);
  return doc;
}

std::string fit_text(const CenteredData& c, const OlsFit& fit) {
  std::string out = "Linear regression: " + model_line(c, fit.predictor_subset) + "\n\n";
  out += anova_text(anova_table(fit), true);
  out += "\n";
  out += coefficients_text(fit, true);
  return out;
}

std::string fit_csv(const OlsFit& fit) {
  LongCsv csv;
  csv.add_fit("fit", fit);
  return csv.str();
}

json decompose_json(const CenteredData& c, const DecompositionReport& r) {
  json doc = envelope("decompose", c, r.traditional.predictor_subset);
  doc["traditional"] = fit_body(r.traditional);
  doc["corrected"] = {{"model_ss", r.actual_model_ss},
                      {"r2", r.corrected_r2},
                      {"r2_from_z", r.corrected_r2_from_z},
                      {"f", r.corrected_f},
                      {"f_from_t", r.corrected_f_from_t},
                      {"model_ss_from_crossproducts", r.ss_via_crossproducts}};
  json per = json::array();
  for (const auto& s : r.per_predictor) {
    per.push_back({{"name", s.name},
                   {"type3_ss", s.type3_ss},
                   {"type1_by_ordering", s.type1_by_ordering}});
  }
  doc["per_predictor"] = per;
  json type1 = json::array();
  for (const auto& t : r.orderings) {
    json entries = json::array();
    for (const auto& [name, ss] : t.sequential) entries.push_back({{"name", name}, {"ss", ss}});
    type1.push_back({{"ordering", t.ordering.names()}, {"entries", entries}});
  }
  doc["type1"] = type1;
  json res = json::array();
  for (std::size_t j = 0; j < r.residualized_fits.size(); ++j) {
    const auto& f = r.residualized_fits[j];
    res.push_back({{"label", f.predictor_subset.front()},
                   {"ss_regression", f.ss_regression},
                   {"ss_residual", f.ss_residual},
                   {"ss_total", f.ss_total},
                   {"df_residual", f.df_residual},
                   {"f", f.f},
                   {"r2", f.r2},
                   {"b", f.b(0)},
                   {"z", f.z(0)},
                   {"t", f.t(0)},
                   {"mlr_t", r.traditional.t(static_cast<Eigen::Index>(j))},
                   {"crossproduct_with_response", r.residualized_crossproducts[j]}});
  }
  doc["residualized_fits"] = res;
  doc["venn"] = venn_body(r.venn);
  doc["coincide"] = decompositions_coincide(r.venn);
  return doc;
}

std::string decompose_text(const CenteredData& c, const DecompositionReport& r) {
  const auto& t = r.traditional;
  std::string out = "Variance decomposition: " + model_line(c, t.predictor_subset) + "\n\n";

  out += "Traditional versus corrected model statistics\n";
  TextTable summary({"Statistic", "Traditional", "Corrected"});
  summary.add_row({"Model SS", fixed2(t.ss_regression), fixed2(r.actual_model_ss)});
  summary.add_row({"R2", fixed2(t.r2), fixed2(r.corrected_r2)});
  summary.add_row({"F", fixed2(t.f), fixed2(r.corrected_f)});
  summary.add_row({"Residual SS", fixed2(t.ss_residual), fixed2(t.ss_residual)});
  out += summary.render();
  out += "Corrected R2 as sum of squared residualized z: " + fixed2(r.corrected_r2_from_z) + "\n";
  out += "Corrected F as mean squared MLR t: " + fixed2(r.corrected_f_from_t) + "\n";
  out += "Model SS from residualized cross-products: " + fixed2(r.ss_via_crossproducts) + "\n\n";

  out += "Sums of squares per predictor (Type I over " + std::to_string(r.orderings.size()) +
         " ordering" + (r.orderings.size() == 1 ? "" : "s") + ")\n";
  TextTable per({"Predictor", "Type III SS", "Type I min", "Type I max"});
  for (const auto& s : r.per_predictor) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto& [key, ss] : s.type1_by_ordering) {
      lo = std::min(lo, ss);
      hi = std::max(hi, ss);
    }
    per.add_row({s.name, fixed2(s.type3_ss), fixed2(lo), fixed2(hi)});
  }
  out += per.render();
  out += "\n";

  out += "Simple regressions on residualized predictors\n";
  TextTable res({"Predictor", "SS", "f", "R2", "b", "z", "t", "MLR t"});
  for (std::size_t j = 0; j < r.residualized_fits.size(); ++j) {
    const auto& f = r.residualized_fits[j];
    res.add_row({f.predictor_subset.front(), fixed2(f.ss_regression), fixed2(f.f),
                 fixed2(f.r2), fixed2(f.b(0)), fixed2(f.z(0)), fixed2(f.t(0)),
                 fixed2(t.t(static_cast<Eigen::Index>(j)))});
  }
  out += res.render();
  out += "\n";

  out += "Variance accounting\n";
  out += venn_table(r.venn);
  out += "\n";

  if (decompositions_coincide(r.venn)) {
    out += "Traditional and corrected statistics coincide: the predictors share no "
           "variation.\n";
  } else {
    out += "Traditional model SS exceeds the sum of unique contributions by " +
           fixed2(r.venn.common_total) + ".\n";
    out += "Traditional R2 " + fixed2(t.r2) + " versus corrected R2 " +
           fixed2(r.corrected_r2) + "; traditional F " + fixed2(t.f) +
           " versus corrected F " + fixed2(r.corrected_f) + ".\n";
    if (r.venn.suppression()) {
      out += "Suppression: the common region is negative, so unique contributions "
             "exceed the regression SS.\n";
    }
    out += "Coefficients b, MLR t and residual SS are unaffected by the overlap.\n";
  }
  return out;
}

std::string decompose_csv(const DecompositionReport& r) {
  LongCsv csv;
  csv.add_fit("traditional", r.traditional);
  csv.add("corrected", "model", "ss", r.actual_model_ss);
  csv.add("corrected", "model", "r2", r.corrected_r2);
  csv.add("corrected", "model", "r2_from_z", r.corrected_r2_from_z);
  csv.add("corrected", "model", "f", r.corrected_f);
  csv.add("corrected", "model", "f_from_t", r.corrected_f_from_t);
  csv.add("corrected", "model", "ss_from_crossproducts", r.ss_via_crossproducts);
  for (const auto& s : r.per_predictor) {
    csv.add("type3", s.name, "ss", s.type3_ss);
  }
  for (const auto& t : r.orderings) {
    for (const auto& [name, ss] : t.sequential) {
      csv.add("type1[" + t.ordering.key() + "]", name, "ss", ss);
    }
  }
  for (std::size_t j = 0; j < r.residualized_fits.size(); ++j) {
    const auto& f = r.residualized_fits[j];
    const auto& label = f.predictor_subset.front();
    csv.add("residualized", label, "ss", f.ss_regression);
    csv.add("residualized", label, "f", f.f);
    csv.add("residualized", label, "r2", f.r2);
    csv.add("residualized", label, "b", f.b(0));
    csv.add("residualized", label, "z", f.z(0));
    csv.add("residualized", label, "t", f.t(0));
    csv.add("residualized", label, "crossproduct", r.residualized_crossproducts[j]);
  }
  for (const auto& [name, ss] : r.venn.unique) csv.add("venn", "unique " + name, "ss", ss);
  csv.add("venn", "common", "ss", r.venn.common_total);
  csv.add("venn", "residual", "ss", r.venn.residual);
  csv.add("venn", "accounted_total", "ss", r.venn.accounted_total);
  csv.add("venn", "missing", "ss", r.venn.missing);
  csv.add("venn", "missing", "fraction", r.venn.missing_fraction);
  return csv.str();
}

json orderings_json(const CenteredData& c, const std::vector<std::string>& model,
                    const std::vector<OrderingPanel>& panels) {
  json doc = envelope("orderings", c, model);
  json list = json::array();
  for (const auto& panel : panels) {
    list.push_back({{"ordering", panel.ordering.names()},
                    {"type1", anova_json(panel.type1)},
                    {"orthogonal_fit", fit_body(panel.orthogonal)}});
  }
  doc["orderings"] = list;
  return doc;
}

std::string orderings_text(const CenteredData& c, const std::vector<OrderingPanel>& panels) {
  std::string out;
  for (std::size_t i = 0; i < panels.size(); ++i) {
    const auto& panel = panels[i];
    if (i) out += "\n";
    out += "Ordering " + std::to_string(i + 1) + ": " +
           model_line(c, panel.ordering.names()) + "\n\n";
    out += "Type I (sequential) sums of squares\n";
    out += anova_text(panel.type1, false);
    out += "\nOrthogonal-function regression\n";
    out += anova_text(anova_table(panel.orthogonal), true);
    out += "\n";
    out += coefficients_text(panel.orthogonal, false);
  }
  return out;
}

std::string orderings_csv(const std::vector<OrderingPanel>& panels) {
  LongCsv csv;
  for (const auto& panel : panels) {
    const std::string key = panel.ordering.key();
    for (const auto& row : panel.type1.rows) {
      csv.add("type1[" + key + "]", row.source, "ss", row.ss);
      csv.add("type1[" + key + "]", row.source, "df", row.df);
      if (row.f) csv.add("type1[" + key + "]", row.source, "f", *row.f);
    }
    csv.add_fit("orthogonal[" + key + "]", panel.orthogonal);
  }
  return csv.str();
}

json venn_json(const CenteredData& c, const VennRegions& v) {
  std::vector<std::string> model;
  for (const auto& [name, ss] : v.unique) model.push_back(name);
  json doc = envelope("venn", c, model);
  doc["regions"] = venn_body(v);
  return doc;
}

std::string venn_text(const CenteredData& c, const VennRegions& v) {
  std::vector<std::string> model;
  for (const auto& [name, ss] : v.unique) model.push_back(name);
  std::string out = "Variance regions: " + model_line(c, model) + "\n\n";
  out += venn_table(v);
  if (v.suppression()) {
    out += "\nSuppression: the common region is negative and is reported unclamped.\n";
  }
  return out;
}

std::string venn_csv(const VennRegions& v) {
  std::string out = "region,ss,fraction\n";
  auto row = [&](const std::string& region, double ss) {
    out += csv_field(region) + ',' + full(ss) + ',' + full(ss / v.ss_total) + '\n';
  };
  for (const auto& [name, ss] : v.unique) row("unique " + name, ss);
  row("common", v.common_total);
  row("residual", v.residual);
  row("missing", v.missing);
  row("total", v.ss_total);
  return out;
}

}  // namespace varpart
