#include "varpart/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "varpart/data_io.hpp"
#include "varpart/decomposition.hpp"
#include "varpart/error.hpp"
#include "varpart/report.hpp"
#include "varpart/venn_svg.hpp"

namespace varpart::cli {

namespace {

struct Options {
  bool dwaine = false;
  std::string input;
  std::string response;
  std::string predictors;
  std::string model;
  std::vector<std::string> orders;
  std::string format = "text";
  std::string delimiter = ",";
  std::string out_path;

  // synth only
  std::size_t n = 100;
  std::size_t p = 2;
  double rho = 0.0;
  double noise_sd = 1.0;
  std::uint64_t seed = 1;
  bool orthogonal = false;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split_names(const std::string& list) {
  std::vector<std::string> names;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto first = item.find_first_not_of(' ');
    const auto last = item.find_last_not_of(' ');
    if (first == std::string::npos) continue;
    names.push_back(item.substr(first, last - first + 1));
  }
  return names;
}

ReportFormat parse_format(const std::string& s) {
  if (s == "text") return ReportFormat::Text;
  if (s == "json") return ReportFormat::Json;
  if (s == "csv") return ReportFormat::Csv;
  if (s == "svg") return ReportFormat::Svg;
  throw UsageError("unknown format '" + s + "' (expected text, json, csv or svg)");
}

void add_input_options(CLI::App* cmd, Options& o) {
  cmd->add_flag("--dwaine", o.dwaine, "Use the built-in Dwaine Studios data");
  cmd->add_option("--input", o.input, "CSV file to read");
  cmd->add_option("--response", o.response, "Response column");
  cmd->add_option("--predictors", o.predictors, "Comma-separated predictor columns");
  cmd->add_option("--model", o.model, "Comma-separated model subset (default: all predictors)");
  cmd->add_option("--order", o.orders, "Comma-separated ordering; repeatable");
  cmd->add_option("--format", o.format, "text, json, csv or svg");
  cmd->add_option("--delimiter", o.delimiter, "CSV field delimiter");
  cmd->add_option("--out", o.out_path, "Write the report here instead of stdout");
}

Dataset load_input(const Options& o) {
  if (o.dwaine && !o.input.empty()) throw UsageError("--dwaine and --input are exclusive");
  if (o.dwaine) return dwaine_fixture();
  if (o.input.empty()) throw UsageError("one of --dwaine or --input is required");
  if (o.response.empty()) throw UsageError("--input requires --response");
  if (o.predictors.empty()) throw UsageError("--input requires --predictors");
  if (o.delimiter.size() != 1) throw UsageError("--delimiter must be a single character");
  CsvSpec spec;
  spec.path = o.input;
  spec.response = o.response;
  spec.predictors = split_names(o.predictors);
  spec.delimiter = o.delimiter.front();
  return load_csv(spec);
}

std::vector<std::string> model_of(const Options& o, const Dataset& d) {
  if (o.model.empty()) return d.predictor_names();
  auto model = split_names(o.model);
  if (model.empty()) throw UsageError("--model is empty");
  return model;
}

std::vector<Ordering> explicit_orderings(const Options& o,
                                         const std::vector<std::string>& model) {
  std::vector<Ordering> out;
  for (const auto& spec : o.orders) out.emplace_back(split_names(spec), model);
  return out;
}

std::string render(const std::string& command, const Options& o, const Dataset& d) {
  const ReportFormat format = parse_format(o.format);
  if (format == ReportFormat::Svg && command != "venn") {
    throw UsageError("svg output is only available for venn");
  }
  const CenteredData c = mean_center(d);
  const auto model = model_of(o, d);
  const auto dump = [](const nlohmann::json& j) { return j.dump(2) + "\n"; };

  if (command == "fit") {
    const OlsFit fit = fit_ols(c, model);
    switch (format) {
      case ReportFormat::Json: return dump(fit_json(c, fit));
      case ReportFormat::Csv: return fit_csv(fit);
      default: return fit_text(c, fit);
    }
  }
  if (command == "decompose") {
    CompareOptions options;
    options.orderings = explicit_orderings(o, model);
    options.exhaustive =
        options.orderings.empty() && model.size() <= kMaxExhaustivePredictors;
    const auto report = compare_report(c, model, options);
    switch (format) {
      case ReportFormat::Json: return dump(decompose_json(c, report));
      case ReportFormat::Csv: return decompose_csv(report);
      default: return decompose_text(c, report);
    }
  }
  if (command == "orderings") {
    auto orderings = explicit_orderings(o, model);
    if (orderings.empty()) {
      fit_ols(c, model);
      orderings = all_orderings(model);
    } else {
      std::sort(orderings.begin(), orderings.end());
      orderings.erase(std::unique(orderings.begin(), orderings.end()), orderings.end());
    }
    const auto panels = ordering_panels(c, orderings);
    switch (format) {
      case ReportFormat::Json: return dump(orderings_json(c, model, panels));
      case ReportFormat::Csv: return orderings_csv(panels);
      default: return orderings_text(c, panels);
    }
  }
  const VennRegions v = venn_regions(c, model);
  switch (format) {
    case ReportFormat::Json: return dump(venn_json(c, v));
    case ReportFormat::Csv: return venn_csv(v);
    case ReportFormat::Svg: return venn_svg(v, c.response_name);
    default: return venn_text(c, v);
  }
}

std::string synthesize(const Options& o) {
  std::uint64_t seed = o.seed;
  if (const char* env = std::getenv("VARPART_SEED"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0') throw UsageError("VARPART_SEED must be an integer");
    seed = v;
  }
  Dataset d = generate_synthetic(equicorrelated_spec(o.n, o.p, o.rho, seed, o.noise_sd));
  if (o.orthogonal) d = orthogonalize_predictors(d);
  std::ostringstream out;
  write_csv(out, d, o.delimiter.empty() ? ',' : o.delimiter.front());
  return out.str();
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SingularDesign:
    case ErrorKind::ConstantColumn:
      return kSingularDesign;
    case ErrorKind::TooManyOrderings:
      return kOrderingCap;
    default:
      return kInputError;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app("Variance partitioning for multiple linear regression", "varpart");
  app.require_subcommand(1);
  Options o;
  const std::vector<std::pair<std::string, std::string>> commands{
      {"fit", "Fit OLS and print the ANOVA table and coefficients"},
      {"decompose", "Traditional versus corrected statistics, Type I/III SS"},
      {"orderings", "Type I tables and orthogonal-function fits per ordering"},
      {"venn", "Variance regions as a table or SVG diagram"},
  };
  for (const auto& [name, help] : commands) add_input_options(app.add_subcommand(name, help), o);
  CLI::App* synth = app.add_subcommand("synth", "Generate a synthetic dataset");
  synth->group("");
  synth->add_option("--n", o.n, "Observations");
  synth->add_option("--p", o.p, "Predictors");
  synth->add_option("--rho", o.rho, "Common pairwise correlation");
  synth->add_option("--noise-sd", o.noise_sd, "Noise standard deviation");
  synth->add_option("--seed", o.seed, "Seed (VARPART_SEED overrides)");
  synth->add_flag("--orthogonal", o.orthogonal, "Orthogonalize the predictors");
  synth->add_option("--delimiter", o.delimiter, "CSV field delimiter");
  synth->add_option("--out", o.out_path, "Write the CSV here instead of stdout");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "varpart: error: " << e.what() << '\n';
    return kInputError;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    const std::string text = command == "synth" ? synthesize(o) : render(command, o, load_input(o));
    if (o.out_path.empty()) {
      out << text;
    } else {
      std::ofstream file(o.out_path, std::ios::binary);
      if (!file) throw UsageError("cannot write '" + o.out_path + "'");
      file << text;
      if (!file) throw UsageError("failed writing '" + o.out_path + "'");
    }
    return kOk;
  } catch (const Error& e) {
    err << "varpart: error: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const UsageError& e) {
    err << "varpart: error: " << e.what() << '\n';
    return kInputError;
  }
}

}  // namespace varpart::cli
