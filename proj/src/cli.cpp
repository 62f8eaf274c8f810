#include "qorth/cli.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "qorth/csv.hpp"
#include "qorth/entanglement.hpp"
#include "qorth/error.hpp"
#include "qorth/evolution.hpp"
#include "qorth/orthogonality.hpp"
#include "qorth/state.hpp"
#include "qorth/twomode.hpp"

namespace qorth::cli {

namespace {

using nlohmann::json;

struct Options {
  std::string format;
  std::string out;

  // generator-basis states
  int comb = 0;
  double dg = 1.0;
  double base = 0.0;
  std::vector<double> phases;
  std::vector<double> eigens;
  std::vector<double> weights;
  std::string state_file;
  std::optional<double> gamma_max;

  // two-mode generator
  int bosons = 0;
  double g0 = 0.0;
  double g1 = 1.0;
  double g01 = 0.0;
  double phase = 0.0;
  int n1 = 0;
  int stride = 0;

  std::string quantity = "relative_entropy";
  int points = 0;
  int ratio_points = 0;
  std::vector<int> counts{2, 3, 10};
  std::string figure;
  bool vectors = false;
};

/// Raised for bad flag combinations that CLI11 cannot express.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Eigen::VectorXd to_vector(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

std::vector<double> to_std(const Eigen::VectorXd& v) { return {v.begin(), v.end()}; }

TwoModeParams two_mode_params(const Options& o) {
  TwoModeParams p{o.g0, o.g1, o.g01, o.bosons};
  validate(p);
  return p;
}

/// A state together with what is known about it in closed form.
struct ResolvedState {
  PureState state;
  std::optional<double> gamma_tilde;
  std::optional<int> count;
};

ResolvedState resolve_state(const Options& o) {
  if (!o.state_file.empty()) {
    std::ifstream in(o.state_file);
    if (!in) throw UsageError("cannot read state file " + o.state_file);
    json j;
    try {
      in >> j;
    } catch (const json::exception& e) {
      throw UsageError("state file is not valid JSON: " + std::string(e.what()));
    }
    try {
      const auto g = j.at("eigenvalues").get<std::vector<double>>();
      const auto r = j.at("weights").get<std::vector<double>>();
      auto phi = j.value("phases", std::vector<double>(g.size(), 0.0));
      return {make_state(to_vector(g), to_vector(r), to_vector(phi)), std::nullopt, std::nullopt};
    } catch (const json::exception& e) {
      throw UsageError("state file needs 'eigenvalues' and 'weights' arrays: " +
                       std::string(e.what()));
    }
  }
  if (!o.eigens.empty() || !o.weights.empty()) {
    if (o.eigens.empty() || o.weights.empty()) {
      throw UsageError("--eigens and --weights must be given together");
    }
    std::vector<double> phi = o.phases.empty() ? std::vector<double>(o.eigens.size(), 0.0) : o.phases;
    return {make_state(to_vector(o.eigens), to_vector(o.weights), to_vector(phi)), std::nullopt,
            std::nullopt};
  }
  if (o.bosons > 0) {
    TwoModeCombSpec spec;
    spec.params = two_mode_params(o);
    spec.count = o.comb > 0 ? o.comb : 2;
    spec.base_index = o.n1;
    spec.stride = o.stride > 0 ? o.stride : o.bosons / (spec.count - 1);
    spec.phases = to_vector(o.phases);
    const TwoModeComb comb = comb_state(spec);
    return {comb.g_basis, comb.gamma_tilde, spec.count};
  }
  if (o.comb != 0) {
    CombSpec spec{o.comb, o.base, o.dg, to_vector(o.phases)};
    PureState state = make_comb(spec);
    return {std::move(state), gamma_tilde(spec), o.comb};
  }
  throw UsageError("no state given: use --comb, --eigens/--weights, --state-file or --bosons");
}

void emit(const Options& o, const std::string& content, std::ostream& out) {
  if (o.out.empty()) {
    out << content;
  } else {
    io::write_file_atomic(o.out, content);
  }
}

/// Flat records: JSON object, or a two-column CSV.
std::string render_record(const Options& o, const json& record) {
  if (o.format == "csv") {
    std::ostringstream os;
    os << "key,value\n";
    for (const auto& [key, value] : record.items()) {
      os << key << ',';
      if (value.is_number()) {
        os << io::format_double(value.get<double>());
      } else if (value.is_boolean()) {
        os << (value.get<bool>() ? 1 : 0);
      } else if (value.is_null()) {
        os << "";
      } else {
        os << value.dump();
      }
      os << '\n';
    }
    return os.str();
  }
  return record.dump(2) + "\n";
}

std::string render_table(const Options& o, const io::CsvTable& table,
                         const std::vector<std::string>& header,
                         const std::vector<std::vector<double>>& columns) {
  if (o.format == "json") {
    json j = json::object();
    for (std::size_t i = 0; i < header.size(); ++i) j[header[i]] = columns[i];
    return j.dump(2) + "\n";
  }
  return table.str();
}

std::string tabulate(const Options& o, const std::vector<std::string>& header,
                     const std::vector<std::vector<double>>& columns) {
  io::CsvTable table(header);
  const std::size_t rows = columns.empty() ? 0 : columns.front().size();
  for (std::size_t r = 0; r < rows; ++r) {
    std::vector<double> row;
    row.reserve(columns.size());
    for (const auto& c : columns) row.push_back(c[r]);
    table.add_row(row);
  }
  return render_table(o, table, header, columns);
}

json complex_list(const Eigen::VectorXcd& v) {
  json arr = json::array();
  for (const auto& z : v) arr.push_back({z.real(), z.imag()});
  return arr;
}

int cmd_bounds(const Options& o, std::ostream& out) {
  const ResolvedState resolved = resolve_state(o);
  const PureState& state = resolved.state;
  const GStatistics stats = g_statistics(state);
  const BoundsReport b = bounds(state);

  json record;
  record["terms"] = state.size();
  record["mean"] = stats.mean;
  record["std"] = stats.std;
  record["mean_above_ground"] = stats.mean_above_ground;
  record["shannon_entropy"] = shannon_entropy(state);
  record["ml_bound"] = b.ml_bound;
  record["mt_bound"] = b.mt_bound;
  record["gamma_min"] = b.gamma_min;
  record["saturated"] = b.saturated;
  record["quotient"] = stats.std / stats.mean_above_ground;
  if (resolved.gamma_tilde) {
    const double gt = *resolved.gamma_tilde;
    record["gamma_tilde"] = gt;
    record["g_ratio"] = gt / b.gamma_min;
    record["geometric_phase_s"] = 2.0 * stats.std * gt;
    record["period"] = *resolved.count * gt;
  }
  if (o.gamma_max) {
    const auto found = first_orthogonality(state, *o.gamma_max);
    record["gamma_orthogonal_numeric"] = found ? json(*found) : json(nullptr);
  }
  emit(o, render_record(o, record), out);
  return kExitOk;
}

int cmd_spectrum(const Options& o, std::ostream& out) {
  const TwoModeParams p = two_mode_params(o);
  const AnalyticSpectrum analytic = spectrum_analytic(p);
  const SpectralDecomposition d = diagonalize(p);
  const SymmetricTridiagonal h = build_generator(p);

  double max_rel = 0.0;
  double max_residual = 0.0;
  const double scale = std::max(1.0, analytic.spacing * p.bosons);
  for (Eigen::Index k = 0; k < d.eigenvalues.size(); ++k) {
    max_rel = std::max(max_rel, std::abs(d.eigenvalues(k) - analytic.eigenvalues(k)) / scale);
    const Eigen::VectorXd v = d.eigenvectors.col(k);
    max_residual = std::max(max_residual, (h.apply(v) - d.eigenvalues(k) * v).norm());
  }
  json record;
  record["bosons"] = p.bosons;
  record["A"] = analytic.offset;
  record["a"] = analytic.spacing;
  record["eigenvalues_numeric"] = to_std(d.eigenvalues);
  record["eigenvalues_analytic"] = to_std(analytic.eigenvalues);
  record["max_relative_error"] = max_rel;
  record["max_residual"] = max_residual;
  record["generator_norm"] = h.norm();
  record["agree"] = max_rel <= 1e-8 && max_residual <= 1e-10 * h.norm();
  if (o.vectors) {
    json cols = json::array();
    for (Eigen::Index k = 0; k < d.eigenvectors.cols(); ++k) cols.push_back(to_std(d.eigenvectors.col(k)));
    record["eigenvectors"] = cols;
  }
  if (o.format == "csv") {
    io::CsvTable table({"n", "eigenvalue_numeric", "eigenvalue_analytic"});
    for (Eigen::Index k = 0; k < d.eigenvalues.size(); ++k) {
      table.add_row({static_cast<double>(k), d.eigenvalues(k), analytic.eigenvalues(k)});
    }
    emit(o, table.str(), out);
  } else {
    emit(o, record.dump(2) + "\n", out);
  }
  return kExitOk;
}

int cmd_trace(const Options& o, std::ostream& out) {
  const int points = o.points > 0 ? o.points : 501;
  const Quantity quantity = parse_quantity(o.quantity);

  if (quantity == Quantity::Concurrence) {
    if (o.bosons <= 0) throw UsageError("concurrence traces need --bosons");
    const TwoModeParams p = two_mode_params(o);
    const SpectralDecomposition d = diagonalize(p);
    const double gt = fast_gamma_tilde(d);
    const double hi = o.gamma_max.value_or(2.0 * gt);
    if (!(hi > 0.0)) throw UsageError("--gamma-max must be positive");
    const auto grid = linspace(0.0, hi, points);
    const TraceSeries series = concurrence_fast_trace(p, o.phase, grid);
    std::vector<double> scaled;
    for (double g : series.gammas) scaled.push_back(g / gt);
    emit(o, tabulate(o, {"gamma", "gamma_over_gtilde", "concurrence"},
                     {series.gammas, scaled, series.values}),
         out);
    return kExitOk;
  }

  const ResolvedState resolved = resolve_state(o);
  double hi = 0.0;
  if (o.gamma_max) {
    hi = *o.gamma_max;
  } else if (resolved.gamma_tilde) {
    hi = *resolved.count * *resolved.gamma_tilde;
  } else {
    throw UsageError("--gamma-max is required for states that are not combs");
  }
  if (!(hi > 0.0)) throw UsageError("--gamma-max must be positive");
  const auto grid = linspace(0.0, hi, points);
  const TraceSeries series = trace_series(resolved.state, grid, quantity);

  std::vector<std::string> header{"gamma"};
  std::vector<std::vector<double>> columns{series.gammas};
  if (resolved.gamma_tilde) {
    std::vector<double> scaled;
    for (double g : series.gammas) scaled.push_back(g / *resolved.gamma_tilde);
    header.emplace_back("gamma_over_gtilde");
    columns.push_back(std::move(scaled));
  }
  header.emplace_back(to_string(quantity));
  columns.push_back(series.values);
  emit(o, tabulate(o, header, columns), out);
  return kExitOk;
}

int cmd_bifurcation(const Options& o, std::ostream& out) {
  BifurcationScan scan;
  if (o.ratio_points > 0) scan.ratio_points = o.ratio_points;
  if (o.points > 0) scan.gamma_points = o.points;
  const int bosons = o.bosons > 0 ? o.bosons : 2;
  const BifurcationReport r = find_bifurcation(bosons, o.phase, scan);
  json record;
  record["bosons"] = bosons;
  record["phase"] = o.phase;
  record["critical_ratio"] = r.critical_ratio;
  record["log10_critical_ratio"] = std::log10(r.critical_ratio);
  record["peak_gamma_below"] = r.peak_gamma_below;
  record["probe_ratio"] = r.probe_ratio;
  record["probe_gamma_tilde"] = r.probe_gamma_tilde;
  record["peak_gammas_above"] = {r.peak_gammas_above.first, r.peak_gammas_above.second};
  record["max_concurrence_at_critical"] = r.max_concurrence_at_critical;
  emit(o, render_record(o, record), out);
  return kExitOk;
}

json describe_comb(const TwoModeComb& comb, const std::string& label) {
  json j;
  j["label"] = label;
  j["gamma_tilde"] = comb.gamma_tilde;
  j["eigenvalues"] = to_std(comb.g_basis.eigenvalues());
  j["fock_amplitudes"] = complex_list(comb.fock_amplitudes);
  j["concurrence"] = concurrence(FockState(comb.fock_amplitudes));
  const BoundsReport b = bounds(comb.g_basis);
  j["gamma_min"] = b.gamma_min;
  j["g_ratio"] = comb.gamma_tilde / b.gamma_min;
  return j;
}

int cmd_extremal(const Options& o, std::ostream& out) {
  const TwoModeParams p = two_mode_params(o);
  const ExtremalStates e = extremal_states(p, o.phase);
  const CombGammaBounds cb = gamma_comb_bounds(p.bosons, p.bosons, spectrum_analytic(p).spacing);
  json record;
  record["bosons"] = p.bosons;
  record["fastest"] = describe_comb(e.fastest, e.fastest_label);
  record["slowest"] = describe_comb(e.slowest, e.slowest_label);
  record["gamma_global_min"] = cb.gamma_l;
  record["gamma_s"] = cb.gamma_s;
  emit(o, record.dump(2) + "\n", out);
  return kExitOk;
}

int cmd_figure(const Options& o, std::ostream& out) {
  if (o.figure == "fig3") {
    const int points = o.points > 0 ? o.points : 1001;
    const auto x = linspace(0.0, 1.0, points);
    std::vector<std::string> header{"gamma_over_period"};
    std::vector<std::vector<double>> columns{x};
    for (int count : o.counts) {
      const CombSpec spec{count, 0.0, 1.0, {}};
      const PureState comb = make_comb(spec);
      const double big_gamma = period(spec);
      std::vector<double> values;
      values.reserve(x.size());
      for (double t : x) values.push_back(distinguishability(comb, t * big_gamma).relative_entropy);
      header.push_back("s_rel_N" + std::to_string(count));
      columns.push_back(std::move(values));
    }
    emit(o, tabulate(o, header, columns), out);
    return kExitOk;
  }
  if (o.figure == "fig5") {
    const int points = o.points > 0 ? o.points : 201;
    if (points < 2) throw UsageError("fig5 needs --points >= 2");
    std::vector<double> ratios{0.0};
    for (double e : linspace(-2.0, 2.0, points)) ratios.push_back(std::pow(10.0, e));
    std::vector<double> values;
    for (double r : ratios) values.push_back(tunneling_ratio(0.0, 1.0, r));
    emit(o, tabulate(o, {"ratio_g01", "gamma_ratio"}, {ratios, values}), out);
    return kExitOk;
  }
  if (o.figure == "fig6") {
    const int bosons = o.bosons > 0 ? o.bosons : 2;
    const int points = o.points > 0 ? o.points : 201;
    const int ratio_points = o.ratio_points > 0 ? o.ratio_points : 81;
    const auto exps = linspace(-2.0, 2.0, ratio_points);
    const auto t = linspace(0.0, 2.0, points);
    std::vector<double> col_ratio, col_t, col_c;
    for (double e : exps) {
      const TwoModeParams p{0.0, 1.0, std::pow(10.0, e), bosons};
      const SpectralDecomposition d = diagonalize(p);
      const double gt = fast_gamma_tilde(d);
      for (double s : t) {
        col_ratio.push_back(e);
        col_t.push_back(s);
        col_c.push_back(concurrence(fast_state(d, o.phase, s * gt)));
      }
    }
    emit(o, tabulate(o, {"log10_g01_over_g1", "gamma_over_gtilde", "concurrence"},
                     {col_ratio, col_t, col_c}),
         out);
    return kExitOk;
  }
  throw UsageError("unknown figure '" + o.figure + "' (expected fig3, fig5 or fig6)");
}

void add_output_flags(CLI::App* sub, Options& o, const std::string& default_format) {
  sub->add_option("--format", o.format, "Output format (default: " + default_format + ")")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--out", o.out, "Output file (default: stdout)");
}

void add_state_flags(CLI::App* sub, Options& o) {
  sub->add_option("--comb", o.comb, "Number of comb terms");
  sub->add_option("--dg", o.dg, "Comb eigenvalue spacing");
  sub->add_option("--base", o.base, "Lowest comb eigenvalue");
  sub->add_option("--phases", o.phases, "Initial phases")->delimiter(',');
  sub->add_option("--eigens", o.eigens, "Explicit eigenvalues")->delimiter(',');
  sub->add_option("--weights", o.weights, "Explicit weights")->delimiter(',');
  sub->add_option("--state-file", o.state_file, "JSON file with eigenvalues/weights/phases");
  sub->add_option("--gamma-max", o.gamma_max, "Upper end of the gamma range");
}

void add_two_mode_flags(CLI::App* sub, Options& o) {
  sub->add_option("--bosons", o.bosons, "Boson number N");
  sub->add_option("--g0", o.g0, "Level-0 coefficient G0");
  sub->add_option("--g1", o.g1, "Level-1 coefficient G1");
  sub->add_option("--g01", o.g01, "Tunneling coefficient G01");
  sub->add_option("--phase", o.phase, "Relative phase of the fastest state");
  sub->add_option("--n1", o.n1, "Lowest comb index");
  sub->add_option("--stride", o.stride, "Comb index stride m");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Orthogonality, speed limits and mode entanglement for unitary evolution"};
  app.require_subcommand(1);

  auto* bounds_cmd = app.add_subcommand("bounds", "Orthogonality parameter and speed-limit bounds");
  add_state_flags(bounds_cmd, o);
  add_two_mode_flags(bounds_cmd, o);
  add_output_flags(bounds_cmd, o, "json");

  auto* figure_cmd = app.add_subcommand("figure", "Emit figure data (fig3, fig5, fig6)");
  figure_cmd->add_option("name", o.figure, "fig3, fig5 or fig6")->required();
  figure_cmd->add_option("--counts", o.counts, "Comb sizes for fig3")->delimiter(',');
  figure_cmd->add_option("--points", o.points, "Grid points");
  figure_cmd->add_option("--ratio-points", o.ratio_points, "G01/G1 grid points for fig6");
  figure_cmd->add_option("--bosons", o.bosons, "Boson number for fig6");
  figure_cmd->add_option("--phase", o.phase, "Relative phase for fig6");
  add_output_flags(figure_cmd, o, "csv");

  auto* spectrum_cmd = app.add_subcommand("spectrum", "Diagonalize the two-mode generator");
  add_two_mode_flags(spectrum_cmd, o);
  spectrum_cmd->add_flag("--vectors", o.vectors, "Include eigenvectors");
  add_output_flags(spectrum_cmd, o, "json");

  auto* trace_cmd = app.add_subcommand("trace", "Survival, relative entropy or concurrence trace");
  add_state_flags(trace_cmd, o);
  add_two_mode_flags(trace_cmd, o);
  trace_cmd->add_option("--quantity", o.quantity, "survival, relative_entropy, resultant_norm, concurrence");
  trace_cmd->add_option("--points", o.points, "Grid points");
  add_output_flags(trace_cmd, o, "csv");

  auto* bif_cmd = app.add_subcommand("bifurcation", "Locate the concurrence bifurcation");
  bif_cmd->add_option("--bosons", o.bosons, "Boson number (default 2)");
  bif_cmd->add_option("--phase", o.phase, "Relative phase");
  bif_cmd->add_option("--points", o.points, "Gamma grid points (odd)");
  bif_cmd->add_option("--ratio-points", o.ratio_points, "Log-spaced G01/G1 scan points");
  add_output_flags(bif_cmd, o, "json");

  auto* extremal_cmd = app.add_subcommand("extremal", "Fastest and slowest two-mode combs");
  add_two_mode_flags(extremal_cmd, o);
  add_output_flags(extremal_cmd, o, "json");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    std::ostringstream help_out;
    std::ostringstream help_err;
    const int code = app.exit(e, help_out, help_err);
    out << help_out.str();
    err << help_err.str();
    return code == 0 ? kExitOk : kExitUsageError;
  }

  if (o.format.empty()) o.format = (*figure_cmd || *trace_cmd) ? "csv" : "json";

  try {
    if (*bounds_cmd) return cmd_bounds(o, out);
    if (*figure_cmd) return cmd_figure(o, out);
    if (*spectrum_cmd) {
      if (o.bosons <= 0) throw UsageError("spectrum needs --bosons");
      return cmd_spectrum(o, out);
    }
    if (*trace_cmd) return cmd_trace(o, out);
    if (*bif_cmd) return cmd_bifurcation(o, out);
    if (*extremal_cmd) {
      if (o.bosons <= 0) throw UsageError("extremal needs --bosons");
      return cmd_extremal(o, out);
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsageError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return is_usage_error(e.code()) ? kExitUsageError : kExitDomainError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomainError;
  }
  return kExitUsageError;
}

}  // namespace qorth::cli
