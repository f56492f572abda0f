#include "modwalk/cli.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "modwalk/cfrac.hpp"
#include "modwalk/chains.hpp"
#include "modwalk/errors.hpp"
#include "modwalk/minkowski.hpp"
#include "modwalk/parallel.hpp"
#include "modwalk/stats.hpp"
#include "modwalk/tiling.hpp"

namespace modwalk {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void deliver(const std::string& payload, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << payload;
    return;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file) throw std::invalid_argument("cannot open output file: " + out_path);
  file << payload;
  file.flush();
  if (!file) throw ResourceError("write failed: " + out_path);
}

struct SimulateOpts {
  std::string chain = "W";
  std::uint64_t seed = 0;
  std::uint64_t steps = 0;
  std::uint64_t trajectories = 1;
  std::string mode = "exact";
  std::string start;
  std::string start_re;
  std::string start_im;
  std::string out_path;
  std::string format = "csv";
};

bool is_complex_chain(const std::string& chain) { return chain == "Z" || chain == "V"; }
bool is_stationary_chain(const std::string& chain) {
  return chain == "stationary-W" || chain == "stationary-X" || chain == "stationary-Y";
}

WalkConfig make_config(std::uint64_t seed, std::uint64_t steps, std::uint64_t trajectories,
                       const std::string& mode) {
  WalkConfig cfg;
  cfg.seed = seed;
  cfg.steps = steps;
  cfg.trajectories = trajectories;
  cfg.mode = mode == "float" ? NumericMode::floating : NumericMode::exact;
  return cfg;
}

mpq_class parse_unit_interval(const std::string& text, const char* what) {
  mpq_class v = parse_rational(text);
  if (v < 0 || v > 1) throw std::invalid_argument(std::string(what) + " must lie in [0, 1]");
  return v;
}

double parse_float_coordinate(const std::string& text) {
  try {
    return parse_rational(text).get_d();
  } catch (const std::invalid_argument&) {
    std::size_t used = 0;
    double v = std::stod(text, &used);
    if (used != text.size()) throw;
    return v;
  }
}

template <class T, class Format>
std::string scalar_csv(const std::vector<std::vector<T>>& paths, Format&& format) {
  std::ostringstream os;
  os << "trajectory,step,value\n";
  for (std::size_t j = 0; j < paths.size(); ++j)
    for (std::size_t s = 0; s < paths[j].size(); ++s)
      os << j << ',' << s << ',' << format(paths[j][s]) << '\n';
  return os.str();
}

template <class T, class Format>
std::string sample_csv(const std::vector<T>& samples, Format&& format) {
  std::ostringstream os;
  os << "trajectory,step,value\n";
  for (std::size_t j = 0; j < samples.size(); ++j) os << j << ",0," << format(samples[j]) << '\n';
  return os.str();
}

ordered_json simulate_header(const SimulateOpts& o) {
  ordered_json doc;
  doc["chain"] = o.chain;
  doc["mode"] = o.mode;
  doc["seed"] = o.seed;
  doc["steps"] = o.steps;
  return doc;
}

template <class T, class Format>
std::string scalar_json(const SimulateOpts& o, const std::vector<std::vector<T>>& paths,
                        Format&& format) {
  ordered_json doc = simulate_header(o);
  ordered_json rows = ordered_json::array();
  for (const auto& path : paths) {
    ordered_json row = ordered_json::array();
    for (const auto& v : path) row.push_back(format(v));
    rows.push_back(std::move(row));
  }
  doc["trajectories"] = std::move(rows);
  return doc.dump() + "\n";
}

template <class T, class Format>
std::string sample_json(const SimulateOpts& o, const std::vector<T>& samples, Format&& format) {
  ordered_json doc = simulate_header(o);
  ordered_json rows = ordered_json::array();
  for (const auto& v : samples) rows.push_back(format(v));
  doc["samples"] = std::move(rows);
  return doc.dump() + "\n";
}

std::string run_simulate(const SimulateOpts& o) {
  const bool exact = o.mode == "exact";
  const bool csv = o.format == "csv";
  auto rational_text = [](const mpq_class& v) { return rational_str(v); };
  auto extended_text = [](const ExtendedRational& v) { return v.str(); };
  auto float_text = [](double v) { return format_double(v); };

  if (is_stationary_chain(o.chain)) {
    if (!o.start.empty())
      throw std::invalid_argument("stationary chains sample their own start; drop --start");
    if (o.steps == 0)
      throw std::invalid_argument("stationary chains need --steps >= 1 (truncation depth)");
    WalkConfig cfg = make_config(o.seed, o.steps, o.trajectories, o.mode);
    if (o.chain == "stationary-W" || o.chain == "stationary-Y") {
      std::vector<mpq_class> values;
      values.reserve(o.trajectories);
      if (o.chain == "stationary-W")
        for (const auto& s : sample_stationary_W(cfg, o.steps)) values.push_back(s.value);
      else
        for (const auto& s : sample_stationary_Y(cfg, o.steps)) values.push_back(s.value);
      if (exact)
        return csv ? sample_csv(values, rational_text) : sample_json(o, values, rational_text);
      std::vector<double> floats;
      floats.reserve(values.size());
      for (const auto& v : values) floats.push_back(v.get_d());
      return csv ? sample_csv(floats, float_text) : sample_json(o, floats, float_text);
    }
    auto values = sample_stationary_X(cfg, o.steps);
    if (exact)
      return csv ? sample_csv(values, extended_text) : sample_json(o, values, extended_text);
    std::vector<double> floats;
    floats.reserve(values.size());
    for (const auto& v : values) floats.push_back(v.to_double());
    return csv ? sample_csv(floats, float_text) : sample_json(o, floats, float_text);
  }

  WalkConfig cfg = make_config(o.seed, o.steps, o.trajectories, o.mode);

  if (is_complex_chain(o.chain)) {
    if (o.start_re.empty() || o.start_im.empty())
      throw std::invalid_argument(o.chain + " needs --start-re and --start-im");
    if (!o.start.empty())
      throw std::invalid_argument(o.chain + " takes --start-re/--start-im, not --start");
    if (exact) {
      HalfPlanePoint<mpq_class> z0(parse_rational(o.start_re), parse_rational(o.start_im));
      auto paths = o.chain == "Z" ? simulate_Z_exact(z0, cfg) : simulate_V_exact(z0, cfg);
      if (csv) {
        std::ostringstream os;
        os << "trajectory,step,re,im\n";
        for (std::size_t j = 0; j < paths.size(); ++j)
          for (std::size_t s = 0; s < paths[j].size(); ++s)
            os << j << ',' << s << ',' << rational_str(paths[j][s].re) << ','
               << rational_str(paths[j][s].im) << '\n';
        return os.str();
      }
      ordered_json doc = simulate_header(o);
      ordered_json rows = ordered_json::array();
      for (const auto& path : paths) {
        ordered_json row = ordered_json::array();
        for (const auto& z : path)
          row.push_back(ordered_json::array({rational_str(z.re), rational_str(z.im)}));
        rows.push_back(std::move(row));
      }
      doc["trajectories"] = std::move(rows);
      return doc.dump() + "\n";
    }
    std::complex<double> z0(parse_float_coordinate(o.start_re), parse_float_coordinate(o.start_im));
    if (!(z0.imag() > 0)) throw std::invalid_argument("start must lie in the upper half plane");
    auto paths = o.chain == "Z" ? simulate_Z_float(z0, cfg) : simulate_V_float(z0, cfg);
    if (csv) {
      std::ostringstream os;
      os << "trajectory,step,re,im\n";
      for (std::size_t j = 0; j < paths.size(); ++j)
        for (std::size_t s = 0; s < paths[j].points.size(); ++s)
          os << j << ',' << s << ',' << format_double(paths[j].points[s].real()) << ','
             << format_double(paths[j].points[s].imag()) << '\n';
      return os.str();
    }
    ordered_json doc = simulate_header(o);
    ordered_json rows = ordered_json::array();
    ordered_json degenerate = ordered_json::array();
    for (const auto& path : paths) {
      ordered_json row = ordered_json::array();
      for (const auto& z : path.points)
        row.push_back(ordered_json::array({z.real(), z.imag()}));
      rows.push_back(std::move(row));
      degenerate.push_back(path.degenerate);
    }
    doc["trajectories"] = std::move(rows);
    doc["degenerate"] = std::move(degenerate);
    return doc.dump() + "\n";
  }

  if (o.start.empty()) throw std::invalid_argument("chain " + o.chain + " needs --start");
  if (!o.start_re.empty() || !o.start_im.empty())
    throw std::invalid_argument(o.chain + " takes --start, not --start-re/--start-im");

  if (o.chain == "X" || o.chain == "Y") {
    ExtendedRational x0 = ExtendedRational::parse(o.start);
    if (exact) {
      auto paths = o.chain == "X" ? simulate_X(x0, cfg) : simulate_Y(x0, cfg);
      return csv ? scalar_csv(paths, extended_text) : scalar_json(o, paths, extended_text);
    }
    auto paths = o.chain == "X" ? simulate_X_float(x0, cfg) : simulate_Y_float(x0, cfg);
    return csv ? scalar_csv(paths, float_text) : scalar_json(o, paths, float_text);
  }

  mpq_class w0 = parse_unit_interval(o.start, "--start");
  if (exact) {
    auto paths = o.chain == "W" ? simulate_W(w0, cfg) : simulate_U(w0, cfg);
    return csv ? scalar_csv(paths, rational_text) : scalar_json(o, paths, rational_text);
  }
  auto paths = o.chain == "W" ? simulate_W_float(w0, cfg) : simulate_U_float(w0, cfg);
  return csv ? scalar_csv(paths, float_text) : scalar_json(o, paths, float_text);
}

struct EvalOpts {
  std::string fn;
  std::string x;
  std::string format = "text";
};

std::string run_eval(const EvalOpts& o) {
  ExtendedRational x = ExtendedRational::parse(o.x);
  std::string exact_text;
  std::string dyadic_text;
  double decimal = 0;
  if (o.fn == "qmark-inverse") {
    DyadicRational d = DyadicRational::from_mpq(x.to_mpq());
    mpq_class v = qmark_inverse(d);
    exact_text = rational_str(v);
    dyadic_text = exact_text;
    decimal = v.get_d();
  } else {
    DyadicRational v;
    if (o.fn == "qmark")
      v = qmark(x.to_mpq());
    else if (o.fn == "qmark-oracle")
      v = qmark_oracle(x.to_mpq());
    else if (o.fn == "chi-half")
      v = chi_half(x.to_mpq());
    else if (o.fn == "lambda")
      v = lambda_survival(x);
    else
      throw std::invalid_argument("unknown --fn: " + o.fn);
    exact_text = v.fraction_str();
    dyadic_text = v.power_str();
    decimal = v.to_double();
  }
  if (o.format == "json") {
    ordered_json doc;
    doc["fn"] = o.fn;
    doc["x"] = x.str();
    doc["exact"] = exact_text;
    doc["dyadic"] = dyadic_text;
    doc["decimal"] = decimal;
    return doc.dump() + "\n";
  }
  return exact_text + "\n" + format_double(decimal) + "\n";
}

struct KsOpts {
  std::string chain = "W";
  std::uint64_t seed = 0;
  std::uint64_t steps = 64;
  std::uint64_t trajectories = 100000;
  std::string against = "qmark";
  std::string start;
  double threshold = 0.01;
};

std::string run_ks(const KsOpts& o) {
  ReferenceCdf ref;
  if (o.against == "qmark")
    ref = ReferenceCdf::qmark;
  else if (o.against == "chi-half-survival")
    ref = ReferenceCdf::chi_half_survival;
  else if (o.against == "lambda")
    ref = ReferenceCdf::lambda;
  else
    throw std::invalid_argument("unknown --against: " + o.against);

  WalkConfig cfg = make_config(o.seed, o.steps, o.trajectories, "exact");
  std::vector<ExtendedRational> samples;
  if (o.chain == "W" || o.chain == "U") {
    mpq_class start = o.start.empty() ? (o.chain == "W" ? mpq_class(2, 3) : mpq_class(0))
                                      : parse_unit_interval(o.start, "--start");
    auto finals = o.chain == "W" ? simulate_W_finals(start, cfg) : simulate_U_finals(start, cfg);
    samples.reserve(finals.size());
    for (const auto& v : finals) samples.push_back(ExtendedRational(v));
  } else if (o.chain == "X") {
    ExtendedRational start =
        o.start.empty() ? ExtendedRational(2, 3) : ExtendedRational::parse(o.start);
    samples = simulate_X_finals(start, cfg);
  } else if (is_stationary_chain(o.chain)) {
    if (!o.start.empty())
      throw std::invalid_argument("stationary chains sample their own start; drop --start");
    if (o.steps == 0)
      throw std::invalid_argument("stationary chains need --steps >= 1 (truncation depth)");
    if (o.chain == "stationary-W")
      for (const auto& s : sample_stationary_W(cfg, o.steps))
        samples.push_back(ExtendedRational(s.value));
    else if (o.chain == "stationary-Y")
      for (const auto& s : sample_stationary_Y(cfg, o.steps))
        samples.push_back(ExtendedRational(s.value));
    else
      samples = sample_stationary_X(cfg, o.steps);
  } else {
    throw std::invalid_argument("unsupported --chain for ks-test: " + o.chain);
  }

  KSResult res = ks_distance(EmpiricalDistribution(std::move(samples)), ref);
  std::ostringstream os;
  os << "chain " << o.chain << " steps " << o.steps << " trajectories " << o.trajectories
     << " seed " << o.seed << " reference " << res.reference << "\n";
  os << "statistic " << format_double(res.statistic) << "\n";
  os << "threshold " << format_double(o.threshold) << "\n";
  os << (res.statistic <= o.threshold ? "PASS" : "FAIL") << "\n";
  return os.str();
}

struct GraphOpts {
  unsigned radius = 0;
  std::string format = "dot";
  std::string out_path;
};

std::string run_graph(const GraphOpts& o) {
  TilingGraph g = cayley_ball(o.radius);
  return o.format == "json" ? to_json(g) + "\n" : to_dot(g);
}

std::string run_reduce(const std::vector<std::string>& point) {
  HalfPlanePoint<mpq_class> z(parse_rational(point[0]), parse_rational(point[1]));
  auto red = reduce_to_fundamental(z);
  std::ostringstream os;
  os << "tile: " << red.tile.label() << "\n";
  os << "point: " << rational_str(red.point.re) << " " << rational_str(red.point.im) << "\n";
  os << "boundary: " << (red.boundary ? "true" : "false") << "\n";
  return os.str();
}

struct FourierOpts {
  std::uint64_t n_max = 64;
  std::uint64_t samples = 1000000;
  std::uint64_t seed = 0;
  std::uint64_t depth = 64;
  std::string out_path;
};

std::string run_fourier(const FourierOpts& o) {
  WalkConfig cfg = make_config(o.seed, o.depth, o.samples, "exact");
  std::vector<double> xs;
  xs.reserve(o.samples);
  for (const auto& s : sample_stationary_W(cfg, o.depth)) xs.push_back(s.value.get_d());
  std::vector<std::complex<double>> coefficients(o.n_max + 1);
  parallel_for(o.n_max + 1, [&](std::size_t n) {
    coefficients[n] = fourier_coefficient(n, xs);
  });
  std::ostringstream os;
  os << "n,re,im,modulus\n";
  for (std::uint64_t n = 0; n <= o.n_max; ++n) {
    const auto& c = coefficients[n];
    os << n << ',' << format_double(c.real()) << ',' << format_double(c.imag()) << ','
       << format_double(std::abs(c)) << '\n';
  }
  return os.str();
}

struct EnumerateOpts {
  std::string chain = "W";
  std::string start;
  unsigned steps = 0;
  std::string format = "csv";
  std::string out_path;
};

std::string run_enumerate(const EnumerateOpts& o) {
  if (o.start.empty()) throw std::invalid_argument("enumerate needs --start");
  FiniteDistribution law = o.chain == "W"
                               ? exact_distribution_W(parse_unit_interval(o.start, "--start"),
                                                      o.steps)
                               : exact_distribution_X(ExtendedRational::parse(o.start), o.steps);
  if (o.format == "json") {
    ordered_json doc;
    doc["chain"] = o.chain;
    doc["start"] = o.start;
    doc["steps"] = o.steps;
    ordered_json atoms = ordered_json::array();
    for (const auto& [value, weight] : law.atoms())
      atoms.push_back(ordered_json::array({value.str(), rational_str(weight)}));
    doc["atoms"] = std::move(atoms);
    return doc.dump() + "\n";
  }
  std::ostringstream os;
  os << "value,weight\n";
  for (const auto& [value, weight] : law.atoms())
    os << value.str() << ',' << rational_str(weight) << '\n';
  return os.str();
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact modular-group boundary walks, Minkowski ? evaluation, tiling graphs"};
  app.require_subcommand(1);

  SimulateOpts sim;
  CLI::App* simulate = app.add_subcommand("simulate", "run seeded chain trajectories");
  simulate->add_option("--chain", sim.chain, "chain to simulate")
      ->check(CLI::IsMember(
          {"X", "Y", "Z", "V", "W", "U", "stationary-W", "stationary-X", "stationary-Y"}));
  simulate->add_option("--seed", sim.seed, "stream seed");
  simulate->add_option("--steps", sim.steps, "steps per trajectory (truncation depth for stationary chains)");
  simulate->add_option("--trajectories", sim.trajectories, "number of trajectories");
  simulate->add_option("--mode", sim.mode, "arithmetic mode")->check(CLI::IsMember({"exact", "float"}));
  simulate->add_option("--start", sim.start, "start point: rational p/q or inf");
  simulate->add_option("--start-re", sim.start_re, "real part for Z/V starts");
  simulate->add_option("--start-im", sim.start_im, "imaginary part for Z/V starts");
  simulate->add_option("--out", sim.out_path, "output path (default: stdout)");
  simulate->add_option("--format", sim.format, "output format")->check(CLI::IsMember({"csv", "json"}));

  EvalOpts ev;
  CLI::App* eval = app.add_subcommand("eval", "evaluate the exact special functions");
  eval->add_option("--fn", ev.fn, "function")
      ->required()
      ->check(CLI::IsMember({"qmark", "qmark-oracle", "qmark-inverse", "chi-half", "lambda"}));
  eval->add_option("--x", ev.x, "argument: rational p/q or inf")->required();
  eval->add_option("--format", ev.format, "output format")->check(CLI::IsMember({"text", "json"}));

  KsOpts ks;
  CLI::App* ks_test = app.add_subcommand("ks-test", "Kolmogorov-Smirnov check against a reference law");
  ks_test->add_option("--chain", ks.chain, "sampled chain")
      ->check(CLI::IsMember({"W", "U", "X", "stationary-W", "stationary-X", "stationary-Y"}));
  ks_test->add_option("--seed", ks.seed, "stream seed");
  ks_test->add_option("--steps", ks.steps, "steps (or truncation depth)");
  ks_test->add_option("--trajectories", ks.trajectories, "sample count");
  ks_test->add_option("--against", ks.against, "reference CDF")
      ->check(CLI::IsMember({"qmark", "chi-half-survival", "lambda"}));
  ks_test->add_option("--start", ks.start, "start point (defaults: W,X 2/3; U 0)");
  ks_test->add_option("--threshold", ks.threshold, "pass/fail threshold");

  GraphOpts gr;
  CLI::App* graph = app.add_subcommand("graph", "export a ball of the tiling graph");
  graph->add_option("--radius", gr.radius, "word-distance radius")->required();
  graph->add_option("--format", gr.format, "output format")->check(CLI::IsMember({"dot", "json"}));
  graph->add_option("--out", gr.out_path, "output path (default: stdout)");

  std::vector<std::string> reduce_point;
  CLI::App* reduce = app.add_subcommand("reduce", "move a point to the fundamental domain");
  reduce->add_option("--point", reduce_point, "rational coordinates: re im")
      ->expected(2)
      ->required();

  FourierOpts fo;
  CLI::App* fourier = app.add_subcommand("fourier", "Fourier coefficients of stationary samples");
  fourier->add_option("--n-max", fo.n_max, "largest frequency");
  fourier->add_option("--samples", fo.samples, "sample count");
  fourier->add_option("--seed", fo.seed, "stream seed");
  fourier->add_option("--depth", fo.depth, "stationary truncation depth");
  fourier->add_option("--out", fo.out_path, "output path (default: stdout)");

  EnumerateOpts en;
  CLI::App* enumerate = app.add_subcommand("enumerate", "exact small-step laws");
  enumerate->add_option("--chain", en.chain, "chain")->check(CLI::IsMember({"W", "X"}));
  enumerate->add_option("--start", en.start, "start point")->required();
  enumerate->add_option("--steps", en.steps, "number of kernel steps");
  enumerate->add_option("--format", en.format, "output format")->check(CLI::IsMember({"csv", "json"}));
  enumerate->add_option("--out", en.out_path, "output path (default: stdout)");

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (simulate->parsed())
      deliver(run_simulate(sim), sim.out_path, out);
    else if (eval->parsed())
      deliver(run_eval(ev), "", out);
    else if (ks_test->parsed())
      deliver(run_ks(ks), "", out);
    else if (graph->parsed())
      deliver(run_graph(gr), gr.out_path, out);
    else if (reduce->parsed())
      deliver(run_reduce(reduce_point), "", out);
    else if (fourier->parsed())
      deliver(run_fourier(fo), fo.out_path, out);
    else if (enumerate->parsed())
      deliver(run_enumerate(en), en.out_path, out);
    return 0;
  } catch (const ResourceError& e) {
    err << "resource error: " << e.what() << "\n";
    return 2;
  } catch (const std::bad_alloc&) {
    err << "resource error: out of memory\n";
    return 2;
  } catch (const std::overflow_error& e) {
    err << "resource error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace modwalk
