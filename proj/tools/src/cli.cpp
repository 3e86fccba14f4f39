#include "cuspbend_cli/cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "cuspbend/cuspbend.hpp"
#include "cuspbend_cli/suites.hpp"

namespace cuspbend::cli {

namespace {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Writes to cfg.out when set, otherwise to `out`.
void emit(const RunConfig& cfg, std::ostream& out, const std::string& text) {
  if (cfg.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw IoError("cannot open '" + cfg.out + "' for writing");
  f << text;
  if (!f) throw IoError("write to '" + cfg.out + "' failed");
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f << text;
  if (!f) throw IoError("write to '" + path + "' failed");
}

Json read_json(const RunConfig& cfg, std::istream& in) {
  std::string text;
  if (cfg.input == "-") {
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  } else {
    std::ifstream f(cfg.input, std::ios::binary);
    if (!f) throw IoError("cannot open '" + cfg.input + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    text = ss.str();
  }
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw IoError(std::string("malformed JSON: ") + e.what());
  }
}

std::vector<Scalar> parse_list(const std::string& text) {
  std::vector<Scalar> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(Scalar::parse(item));
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

// Runs `body`, mapping errors onto the exit-code contract.
template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const PatternMismatch& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Json::exception& e) {
    err << "error: bad JSON input: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

std::string svg_chart(const std::vector<double>& xs, const std::vector<std::vector<double>>& series) {
  constexpr double kW = 640, kH = 400, kPad = 48;
  double xmax = 0.0, ymax = 0.0;
  for (double x : xs) xmax = std::max(xmax, x);
  for (const auto& s : series)
    for (double y : s)
      if (std::isfinite(y)) ymax = std::max(ymax, y);
  if (xmax <= 0.0) xmax = 1.0;
  if (ymax <= 0.0) ymax = 1.0;
  auto px = [&](double x) { return kPad + (kW - 2 * kPad) * x / xmax; };
  auto py = [&](double y) { return kH - kPad - (kH - 2 * kPad) * y / ymax; };
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH << "\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<line x1=\"" << kPad << "\" y1=\"" << kH - kPad << "\" x2=\"" << kW - kPad << "\" y2=\"" << kH - kPad
    << "\" stroke=\"black\"/>\n";
  o << "<line x1=\"" << kPad << "\" y1=\"" << kPad << "\" x2=\"" << kPad << "\" y2=\"" << kH - kPad
    << "\" stroke=\"black\"/>\n";
  o << "<text x=\"" << kW / 2 << "\" y=\"" << kH - 12 << "\" text-anchor=\"middle\">s (0 to " << format_double(xmax)
    << ")</text>\n";
  o << "<text x=\"14\" y=\"" << kH / 2 << "\" transform=\"rotate(-90 14 " << kH / 2
    << ")\" text-anchor=\"middle\">1/a (0 to " << format_double(ymax) << ")</text>\n";
  for (std::size_t k = 0; k < series.size(); ++k) {
    o << "<polyline fill=\"none\" stroke=\"" << colors[k % 5] << "\" points=\"";
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (!std::isfinite(series[k][i])) continue;
      o << format_double(px(xs[i])) << "," << format_double(py(series[k][i])) << " ";
    }
    o << "\"/>\n";
  }
  o << "</svg>\n";
  return o.str();
}

std::string point_text(const Eigen::VectorXd& p) {
  std::string s;
  for (Eigen::Index i = 0; i < p.size(); ++i) s += (i ? " " : "") + format_double(p(i));
  return s;
}

}  // namespace

std::vector<double> Grid::points() const {
  std::vector<double> out;
  if (steps == 1) return {start};
  for (std::size_t i = 0; i < steps; ++i)
    out.push_back(start + (stop - start) * static_cast<double>(i) / static_cast<double>(steps - 1));
  out.back() = stop;
  return out;
}

Grid parse_grid(const std::string& text) {
  const auto a = text.find(':');
  const auto b = a == std::string::npos ? std::string::npos : text.find(':', a + 1);
  if (b == std::string::npos) throw std::invalid_argument("grid must look like start:stop:steps");
  Grid g;
  try {
    std::size_t used = 0;
    const std::string s0 = text.substr(0, a), s1 = text.substr(a + 1, b - a - 1), s2 = text.substr(b + 1);
    g.start = std::stod(s0, &used);
    if (used != s0.size()) throw std::invalid_argument("start");
    g.stop = std::stod(s1, &used);
    if (used != s1.size()) throw std::invalid_argument("stop");
    const long steps = std::stol(s2, &used);
    if (used != s2.size() || steps < 1) throw std::invalid_argument("steps");
    g.steps = static_cast<std::size_t>(steps);
  } catch (const std::exception&) {
    throw std::invalid_argument("grid must look like start:stop:steps with steps >= 1, got '" + text + "'");
  }
  if (!std::isfinite(g.start) || !std::isfinite(g.stop) || g.start < 0.0 || g.stop < 0.0)
    throw std::invalid_argument("grid values of s must be finite and >= 0");
  return g;
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

int run_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    SuiteOptions opts;
    opts.n = cfg.n;
    opts.tol = cfg.tol;
    opts.seed = cfg.seed;
    opts.noise = cfg.perturb ? 1e-3 : 0.0;
    opts.exhaustive_exact = cfg.exact;
    const auto results = run_suites(opts, cfg.suite);
    bool all = true;
    Json props = Json::array();
    for (const auto& r : results) {
      all = all && r.passed;
      props.push_back({{"suite", r.suite},
                       {"property", r.name},
                       {"trials", r.trials},
                       {"max_residual", std::isfinite(r.max_residual) ? Json(r.max_residual) : Json("inf")},
                       {"tol", r.tol},
                       {"passed", r.passed}});
    }
    const Json report{{"n", cfg.n}, {"seed", cfg.seed}, {"tol", cfg.tol}, {"suite", cfg.suite},
                      {"perturbed", cfg.perturb}, {"properties", props}, {"passed", all}};
    emit(cfg, out, report.dump(2) + "\n");
    for (const auto& r : results)
      if (!r.passed) err << "FAIL " << r.suite << "/" << r.name << " max_residual=" << format_double(r.max_residual)
                         << " tol=" << format_double(r.tol) << "\n";
    return all ? kExitOk : kExitFailure;
  });
}

int run_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (cfg.n < 2) throw std::invalid_argument("sweep: n must be at least 2");
    const std::size_t slots = cfg.n - 1;
    const Grid grid = parse_grid(cfg.grid);
    std::vector<Scalar> b = parse_list(cfg.b);
    if (b.size() == 1) b.assign(slots, b.front());
    if (b.size() != slots) throw std::invalid_argument("sweep: --b needs 1 or n-1 values");

    const std::vector<double> xs = grid.points();
    std::vector<std::vector<double>> a(xs.size()), ainv(xs.size());
    std::vector<std::size_t> type(xs.size());
    parallel_for(xs.size(), [&](std::size_t i) {
      const std::vector<Scalar> s(slots, Scalar(xs[i]));
      if (xs[i] > 0.0 && xs[i] < 1e-8) {
        // Below the float classification threshold: closed form only.
        for (std::size_t k = 0; k < slots; ++k) {
          a[i].push_back(cusp_parameter_formula(b[k].to_double(), xs[i]));
          ainv[i].push_back(inverse_cusp_parameter_formula(b[k].to_double(), xs[i]));
        }
        type[i] = slots;
        return;
      }
      const ClassifiedCusp c = conjugate_and_match(RectangularCuspData::from_s(b, s), cfg.tol);
      a[i] = c.a;
      for (double x : c.a) ainv[i].push_back(std::isinf(x) ? 0.0 : 1.0 / x);
      type[i] = c.type;
    });

    std::ostringstream csv;
    for (std::size_t k = 0; k < slots; ++k) csv << "s_" << k + 2 << ",";
    for (std::size_t k = 0; k < slots; ++k) csv << "a_" << k + 2 << ",";
    csv << "type";
    for (std::size_t k = 0; k < slots; ++k) csv << ",ainv_" << k + 2;
    csv << "\n";
    for (std::size_t i = 0; i < xs.size(); ++i) {
      for (std::size_t k = 0; k < slots; ++k) csv << format_double(xs[i]) << ",";
      for (std::size_t k = 0; k < slots; ++k) csv << format_double(a[i][k]) << ",";
      csv << type[i];
      for (std::size_t k = 0; k < slots; ++k) csv << "," << format_double(ainv[i][k]);
      csv << "\n";
    }
    emit(cfg, out, csv.str());

    if (!cfg.svg.empty()) {
      std::vector<std::vector<double>> series(slots, std::vector<double>(xs.size()));
      for (std::size_t i = 0; i < xs.size(); ++i)
        for (std::size_t k = 0; k < slots; ++k) series[k][i] = ainv[i][k];
      write_file(cfg.svg, svg_chart(xs, series));
    }
    return kExitOk;
  });
}

int run_bend(const RunConfig& cfg, std::istream& in, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Json j = read_json(cfg, in);
    const MarkedRep rep = marked_rep_from_json(j.at("rep"), cfg.tol);
    std::vector<BendingMove> moves;
    for (const auto& m : j.at("moves")) moves.push_back(bending_move_from_json(m));
    IteratedBendOptions opts;
    opts.tol = cfg.tol;
    opts.seed = cfg.seed;
    opts.verify_order = j.value("verify_order", false);
    const MarkedRep bent = iterated_bend(rep, moves, opts);
    emit(cfg, out, to_json(bent).dump(2) + "\n");
    return kExitOk;
  });
}

int run_classify(const RunConfig& cfg, std::istream& in, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Json j = read_json(cfg, in);
    ClassifiedCusp c;
    if (j.contains("generators")) {
      std::vector<ProjMap> gens;
      for (const auto& m : j.at("generators")) gens.push_back(projmap_from_json(m));
      c = classify_model_generators(gens, cfg.tol);
    } else {
      const RectangularCuspData data = cusp_data_from_json(j);
      if (cfg.exact && !data.is_exact())
        throw std::invalid_argument("classify --exact needs rational b and mu");
      c = conjugate_and_match(data, cfg.tol);
    }
    emit(cfg, out, to_json(c).dump(2) + "\n");
    return kExitOk;
  });
}

int run_hilbert(const RunConfig& cfg, std::istream& in, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Json j = read_json(cfg, in);
    const Json& dj = j.at("domain");
    const std::string kind = dj.at("kind").get<std::string>();
    ConvexDomainOracle dom;
    if (kind == "ball") {
      dom = unit_ball_oracle(dj.at("n").get<std::size_t>());
    } else if (kind == "model") {
      dom = model_domain_oracle(ModelDomain(cusp_parameter_from_json(dj)));
    } else {
      throw std::invalid_argument("hilbert: domain kind must be \"ball\" or \"model\"");
    }
    if (j.contains("transform")) dom = transformed_oracle(dom, projmap_from_json(j.at("transform")));
    const auto n = static_cast<Eigen::Index>(dom.dimension);
    auto point = [&](const Json& p) -> Eigen::VectorXd {
      const std::vector<Scalar> xs = scalars_from_json(p);
      Eigen::VectorXd v(static_cast<Eigen::Index>(xs.size()));
      for (std::size_t i = 0; i < xs.size(); ++i) v(static_cast<Eigen::Index>(i)) = xs[i].to_double();
      if (v.size() == n) return homogenize(v);
      if (v.size() == n + 1) return v;
      throw DimensionError("hilbert: points need n chart or n+1 homogeneous coordinates");
    };
    std::ostringstream csv;
    csv << "x,y,d\n";
    for (const auto& pair : j.at("pairs")) {
      if (!pair.is_array() || pair.size() != 2) throw std::invalid_argument("hilbert: each pair is [x, y]");
      const Eigen::VectorXd x = point(pair.at(0));
      const Eigen::VectorXd y = point(pair.at(1));
      const HilbertDistance d = hilbert_distance_report(dom, x, y);
      csv << point_text(x) << "," << point_text(y) << "," << format_double(d.value) << "\n";
      if (!d.diagnostic.empty()) err << "note: " << d.diagnostic << "\n";
    }
    emit(cfg, out, csv.str());
    return kExitOk;
  });
}

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Projective cusp bending toolkit", "cuspbend"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--n", cfg.n, "Dimension n")->check(CLI::Range(2, 64));
    sub->add_option("--tol", cfg.tol, "Tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--seed", cfg.seed, "Seed for randomized suites");
    sub->add_flag("--exact", cfg.exact, "Exact rational mode");
    sub->add_option("--out", cfg.out, "Output file (default stdout)");
  };
  auto* verify = app.add_subcommand("verify", "Run the property suites and report JSON");
  common(verify);
  verify->add_option("--suite", cfg.suite, "Suite name or all");
  verify->add_flag("--perturb", cfg.perturb, "Test hook: add 1e-3 noise to H(psi) generators");

  auto* sweep = app.add_subcommand("sweep", "Tabulate cusp parameters over a grid of s");
  common(sweep);
  sweep->add_option("--grid", cfg.grid, "start:stop:steps");
  sweep->add_option("--b", cfg.b, "b for every slot, or a comma list");
  sweep->add_option("--svg", cfg.svg, "Also write an SVG chart of 1/a against s");

  auto* bendc = app.add_subcommand("bend", "Bend a JSON representation");
  common(bendc);
  bendc->add_option("input", cfg.input, "Input JSON (- for stdin)");
  auto* classifyc = app.add_subcommand("classify", "Classify a cusp group from JSON");
  common(classifyc);
  classifyc->add_option("input", cfg.input, "Input JSON (- for stdin)");
  auto* hilbertc = app.add_subcommand("hilbert", "Hilbert distances for point pairs");
  common(hilbertc);
  hilbertc->add_option("input", cfg.input, "Input JSON (- for stdin)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }
  if (verify->parsed()) return run_verify(cfg, out, err);
  if (sweep->parsed()) return run_sweep(cfg, out, err);
  if (bendc->parsed()) return run_bend(cfg, in, out, err);
  if (classifyc->parsed()) return run_classify(cfg, in, out, err);
  return run_hilbert(cfg, in, out, err);
}

}  // namespace cuspbend::cli
