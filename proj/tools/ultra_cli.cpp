// Command-line front end: evaluation, bound sweeps, convexity certification,
// comparison export, and zero listing. Exit codes: 0 success, 1 a check or
// numeric computation failed, 2 invalid arguments.

#include <CLI11.hpp>

#include <atomic>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "ultra/ultra.hpp"

namespace {

enum class Mode { exact, floating };
enum class Format { pretty, csv, json };

struct RunConfig {
  int n_lo = 1, n_hi = 1;
  std::string lambda_text = "1/2";
  std::optional<ultra::Rational> lambda_exact;
  double lambda_float = 0.5;
  int grid_density = 64;               // t = j/(2m), j = 0..m-1
  std::vector<std::string> extra_x;    // additional abscissas (floating mode)
  bool default_large_x = true;         // append 1000, 1e6 in floating mode
  Mode mode = Mode::exact;
  Format format = Format::pretty;
  std::string output;                  // empty: stdout
  std::string width_text;
  std::vector<std::string> specs;
  unsigned threads = std::thread::hardware_concurrency();
};

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

[[noreturn]] void usage_error(const std::string& message) {
  std::cerr << "error: " << message << "\n";
  std::exit(2);
}

std::pair<int, int> parse_n_range(const std::string& text) {
  const auto dots = text.find("..");
  auto parse_int = [](std::string_view v) {
    int out = 0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || p != v.data() + v.size()) usage_error("bad degree: " + std::string(v));
    return out;
  };
  int lo, hi;
  if (dots == std::string::npos) {
    lo = hi = parse_int(text);
  } else {
    lo = parse_int(std::string_view(text).substr(0, dots));
    hi = parse_int(std::string_view(text).substr(dots + 2));
  }
  if (lo < 0 || hi < lo) usage_error("bad degree range: " + text);
  return {lo, hi};
}

void resolve_lambda(RunConfig& cfg) {
  cfg.lambda_exact = ultra::parse_rational(cfg.lambda_text);
  if (cfg.lambda_exact) {
    cfg.lambda_float = ultra::to_double(*cfg.lambda_exact);
  } else {
    if (cfg.mode == Mode::exact)
      usage_error("exact mode requires a rational lambda (\"p/q\"), got: " + cfg.lambda_text);
    try {
      std::size_t used = 0;
      cfg.lambda_float = std::stod(cfg.lambda_text, &used);
      if (used != cfg.lambda_text.size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      usage_error("cannot parse lambda: " + cfg.lambda_text);
    }
  }
  if (!(cfg.lambda_float > -0.5)) usage_error("lambda must exceed -1/2");
}

std::vector<double> float_grid(const RunConfig& cfg) {
  std::vector<double> xs;
  for (const auto& m : ultra::conjugate_grid(cfg.grid_density)) xs.push_back(ultra::to_double(m.x));
  if (cfg.default_large_x) {
    xs.push_back(1e3);
    xs.push_back(1e6);
  }
  for (const auto& text : cfg.extra_x) {
    try {
      xs.push_back(std::stod(text));
    } catch (const std::exception&) {
      usage_error("cannot parse x value: " + text);
    }
    if (!(xs.back() >= 1.0)) usage_error("x values must be >= 1");
  }
  return xs;
}

std::vector<ultra::Rational> exact_x_values(const RunConfig& cfg) {
  std::vector<ultra::Rational> xs;
  for (const auto& text : cfg.extra_x) {
    const auto r = ultra::parse_rational(text);
    if (!r) usage_error("exact mode requires rational x values, got: " + text);
    if (*r < 1) usage_error("x values must be >= 1");
    xs.push_back(*r);
  }
  return xs;
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) usage_error("cannot open output file: " + path);
      path_ = path;
    }
  }
  std::ostream& stream() { return path_.empty() ? std::cout : file_; }
  const std::string& path() const { return path_; }

 private:
  std::ofstream file_;
  std::string path_;
};

// Run fn(i) for i in [0, count) on up to cfg.threads workers; results land in
// index order, so output is deterministic regardless of scheduling.
template <typename F>
auto ordered_parallel(unsigned threads, int count, F fn) {
  using Result = decltype(fn(0));
  std::vector<Result> results(static_cast<std::size_t>(count));
  if (threads <= 1 || count <= 1) {
    for (int i = 0; i < count; ++i) results[static_cast<std::size_t>(i)] = fn(i);
    return results;
  }
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1))
      results[static_cast<std::size_t>(i)] = fn(i);
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads && t < static_cast<unsigned>(count); ++t)
    pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return results;
}

// ---------------------------------------------------------------------------
// eval

int cmd_eval(const RunConfig& cfg) {
  Output out(cfg.output);
  std::ostream& os = out.stream();
  const bool exact = cfg.mode == Mode::exact;
  if (cfg.format == Format::csv)
    os << (exact ? "n,x,p,dp,u_direct,u_recursion\n"
                 : "n,x,p,dp,scale_exponent,u_direct,u_recursion,u_zero_sum\n");
  for (int n = cfg.n_lo; n <= cfg.n_hi; ++n) {
    if (exact) {
      const auto params = ultra::make_params(n, *cfg.lambda_exact);
      std::vector<ultra::Rational> xs = exact_x_values(cfg);
      if (xs.empty())
        for (const auto& m : ultra::conjugate_grid(cfg.grid_density)) xs.push_back(m.x);
      for (const auto& x : xs) {
        const auto pair = ultra::eval_with_derivative(params, x);
        std::string u_direct = "n/a", u_rec = "n/a";
        if (n >= 1 && x >= 1) {
          u_direct = ultra::to_string(pair.derivative / pair.value);
          u_rec = ultra::to_string(ultra::ratio_recursion(n, *cfg.lambda_exact, x));
        }
        switch (cfg.format) {
          case Format::csv:
            os << n << ',' << ultra::to_string(x) << ',' << ultra::to_string(pair.value) << ','
               << ultra::to_string(pair.derivative) << ',' << u_direct << ',' << u_rec << '\n';
            break;
          case Format::json:
            os << "{\"n\":" << n << ",\"x\":\"" << ultra::to_string(x) << "\",\"p\":\""
               << ultra::to_string(pair.value) << "\",\"dp\":\"" << ultra::to_string(pair.derivative)
               << "\",\"u_direct\":\"" << u_direct << "\",\"u_recursion\":\"" << u_rec << "\"}\n";
            break;
          case Format::pretty:
            os << "n=" << n << " x=" << ultra::to_string(x) << "  p=" << ultra::to_string(pair.value)
               << "  p'=" << ultra::to_string(pair.derivative) << "  u=" << u_rec << '\n';
            break;
        }
      }
    } else {
      const auto params = ultra::make_params(n, cfg.lambda_float);
      std::optional<ultra::ZeroSet<double>> zs;
      if (n >= 1) zs = ultra::zeros(params, 1e-14);
      std::vector<double> xs;
      if (cfg.extra_x.empty()) {
        xs = float_grid(cfg);
      } else {
        for (const auto& text : cfg.extra_x) {
          try {
            xs.push_back(std::stod(text));
          } catch (const std::exception&) {
            usage_error("cannot parse x value: " + text);
          }
        }
      }
      for (double x : xs) {
        const auto pair = ultra::eval_with_derivative(params, x);
        std::string u_direct = "n/a", u_rec = "n/a", u_zero = "n/a";
        if (n >= 1 && x >= 1.0) {
          u_direct = fmt_double(pair.derivative / pair.value);
          u_rec = fmt_double(ultra::ratio_recursion(n, cfg.lambda_float, x));
          u_zero = fmt_double(ultra::ratio_zero_sum(n, x, *zs));
        }
        switch (cfg.format) {
          case Format::csv:
            os << n << ',' << fmt_double(x) << ',' << fmt_double(pair.value) << ','
               << fmt_double(pair.derivative) << ',' << pair.scale_exponent << ',' << u_direct
               << ',' << u_rec << ',' << u_zero << '\n';
            break;
          case Format::json:
            os << "{\"n\":" << n << ",\"x\":" << fmt_double(x) << ",\"p\":" << fmt_double(pair.value)
               << ",\"dp\":" << fmt_double(pair.derivative)
               << ",\"scale_exponent\":" << pair.scale_exponent << ",\"u_direct\":" << u_direct
               << ",\"u_recursion\":" << u_rec << ",\"u_zero_sum\":" << u_zero << "}\n";
            break;
          case Format::pretty:
            os << "n=" << n << " x=" << fmt_double(x) << "  p=" << fmt_double(pair.value)
               << "*2^" << pair.scale_exponent << "  p'=" << fmt_double(pair.derivative) << "*2^"
               << pair.scale_exponent << "  u=" << u_rec << '\n';
            break;
        }
      }
    }
  }
  return 0;
}

// ---------------------------------------------------------------------------
// bounds

std::vector<ultra::BoundId> selected_bounds(const RunConfig& cfg, int n, bool exact) {
  std::vector<ultra::BoundId> ids;
  if (cfg.specs.empty()) {
    for (ultra::BoundId id : ultra::all_bound_ids) {
      const bool in_domain = exact ? ultra::bound_in_domain(id, n, *cfg.lambda_exact)
                                   : ultra::bound_in_domain(id, n, cfg.lambda_float);
      if (in_domain) ids.push_back(id);
    }
  } else {
    for (const auto& name : cfg.specs) {
      const auto id = ultra::bound_from_name(name);
      if (!id) usage_error("unknown bound spec: " + name);
      ids.push_back(*id);
    }
  }
  return ids;
}

template <typename T>
void print_bound_report(std::ostream& os, Format format, const ultra::BoundCheckReport<T>& r) {
  const char* mode = r.mode == ultra::ArithmeticMode::exact ? "exact" : "float";
  std::string worst = "inf";
  if (r.worst_margin) {
    if constexpr (std::is_floating_point_v<T>)
      worst = fmt_double(*r.worst_margin);
    else
      worst = ultra::to_string(*r.worst_margin);
  }
  std::string lambda;
  if constexpr (std::is_floating_point_v<T>)
    lambda = fmt_double(r.lambda);
  else
    lambda = ultra::to_string(r.lambda);
  switch (format) {
    case Format::csv:
      os << ultra::bound_name(r.id) << ',' << r.n << ',' << lambda << ',' << mode << ','
         << (r.in_domain ? "yes" : "no") << ',' << r.points.size() << ','
         << (r.pass ? "pass" : "fail") << ',' << worst << '\n';
      break;
    case Format::json:
      os << "{\"bound\":\"" << ultra::bound_name(r.id) << "\",\"n\":" << r.n << ",\"lambda\":\""
         << lambda << "\",\"mode\":\"" << mode << "\",\"in_domain\":" << (r.in_domain ? "true" : "false")
         << ",\"points\":" << r.points.size() << ",\"pass\":" << (r.pass ? "true" : "false")
         << ",\"worst_margin\":\"" << worst << "\"}\n";
      break;
    case Format::pretty:
      os << (r.pass ? "[ ok ] " : "[FAIL] ") << ultra::bound_name(r.id) << " n=" << r.n
         << " lambda=" << lambda << " mode=" << mode;
      if (!r.in_domain)
        os << " (outside validity: " << ultra::bound_domain_description(r.id) << ")";
      os << "  worst margin " << worst << " over " << r.points.size() << " points\n";
      break;
  }
}

int cmd_bounds(const RunConfig& cfg) {
  Output out(cfg.output);
  std::ostream& os = out.stream();
  if (cfg.format == Format::csv) os << "bound,n,lambda,mode,in_domain,points,pass,worst_margin\n";
  const bool exact = cfg.mode == Mode::exact;
  bool violation = false;
  std::vector<ultra::ConjugateMap> exact_grid;
  std::vector<double> xs;
  if (exact) {
    if (!cfg.extra_x.empty())
      usage_error("exact mode admits only the t-parametrized grid (drop --x or use --mode float)");
    exact_grid = ultra::conjugate_grid(cfg.grid_density);
  } else {
    xs = float_grid(cfg);
  }
  struct Row {
    std::string text;
    bool in_domain_failure;
  };
  const int count = cfg.n_hi - cfg.n_lo + 1;
  auto rows = ordered_parallel(cfg.threads, count, [&](int i) {
    const int n = cfg.n_lo + i;
    std::ostringstream line;
    bool bad = false;
    for (ultra::BoundId id : selected_bounds(cfg, n, exact)) {
      if (exact) {
        const auto report = ultra::check_bound(id, n, *cfg.lambda_exact, exact_grid);
        print_bound_report(line, cfg.format, report);
        bad = bad || (report.in_domain && !report.pass);
      } else {
        const auto report =
            ultra::check_bound(id, n, cfg.lambda_float, std::span<const double>(xs));
        print_bound_report(line, cfg.format, report);
        bad = bad || (report.in_domain && !report.pass);
      }
    }
    return Row{line.str(), bad};
  });
  for (const auto& row : rows) {
    os << row.text;
    violation = violation || row.in_domain_failure;
  }
  return violation ? 1 : 0;
}

// ---------------------------------------------------------------------------
// certify

int cmd_certify(const RunConfig& cfg) {
  Output out(cfg.output);
  std::ostream& os = out.stream();
  if (cfg.n_lo < 1) usage_error("certify requires n >= 1");
  if (cfg.format == Format::csv) os << "n,verdict,root_count,at_zero,at_half\n";
  const int count = cfg.n_hi - cfg.n_lo + 1;
  auto certs = ordered_parallel(cfg.threads, count,
                                [&](int i) { return ultra::certify_convexity(cfg.n_lo + i); });
  bool all_ok = true;
  for (const auto& cert : certs) {
    all_ok = all_ok && cert.certified;
    switch (cfg.format) {
      case Format::json:
        os << ultra::certificate_to_json(cert) << '\n';
        break;
      case Format::csv:
        os << cert.n << ',' << (cert.certified ? "convex-certified" : "not-certified") << ','
           << cert.root_count << ',' << ultra::to_string(cert.at_zero) << ','
           << ultra::to_string(cert.at_half) << '\n';
        break;
      case Format::pretty:
        os << "n=" << cert.n << "  " << (cert.certified ? "convex-certified" : "NOT CERTIFIED")
           << "  roots in (0,1): " << cert.root_count << "  F''(0)=" << ultra::to_string(cert.at_zero)
           << "  F''(1/2)=" << ultra::to_string(cert.at_half) << '\n';
        break;
    }
  }
  return all_ok ? 0 : 1;
}

// ---------------------------------------------------------------------------
// export

template <typename T>
std::string render_value(const std::optional<T>& v) {
  if (!v) return "inf";
  if constexpr (std::is_floating_point_v<T>)
    return fmt_double(*v);
  else
    return ultra::to_string(*v);
}

int cmd_export(const RunConfig& cfg) {
  Output out(cfg.output);
  std::ostream& os = out.stream();
  const int n = cfg.n_lo;
  if (n < 1) usage_error("export requires n >= 1");
  if (cfg.n_hi != cfg.n_lo) usage_error("export takes a single degree");

  auto emit = [&os](const auto& rows) {
    os << "x,u";
    if (!rows.empty())
      for (const auto& [id, value] : rows.front().values) os << ',' << ultra::bound_name(id);
    os << ",tightest_upper,tightest_lower\n";
    for (const auto& row : rows) {
      if constexpr (std::is_floating_point_v<std::decay_t<decltype(row.x)>>)
        os << fmt_double(row.x) << ',' << fmt_double(row.u);
      else
        os << ultra::to_string(row.x) << ',' << ultra::to_string(row.u);
      for (const auto& [id, value] : row.values) os << ',' << render_value(value);
      os << ',' << ultra::bound_name(row.tightest_upper) << ','
         << ultra::bound_name(row.tightest_lower) << '\n';
    }
  };
  if (cfg.mode == Mode::exact) {
    if (!cfg.extra_x.empty())
      usage_error("exact mode admits only the t-parametrized grid (drop --x or use --mode float)");
    const auto grid = ultra::conjugate_grid(cfg.grid_density);
    emit(ultra::compare_bounds(n, *cfg.lambda_exact, grid));
  } else {
    const auto xs = float_grid(cfg);
    emit(ultra::compare_bounds(n, cfg.lambda_float, std::span<const double>(xs)));
  }
  return 0;
}

// ---------------------------------------------------------------------------
// zeros

int cmd_zeros(const RunConfig& cfg) {
  Output out(cfg.output);
  std::ostream& os = out.stream();
  if (cfg.n_lo < 1) usage_error("zeros requires n >= 1");
  if (cfg.format == Format::csv) os << "n,width,zero\n";
  auto emit = [&](int n, const std::string& width, const std::vector<std::string>& zeros,
                  bool quote) {
    switch (cfg.format) {
      case Format::json: {
        const char* q = quote ? "\"" : "";
        os << "{\"n\":" << n << ",\"width\":" << q << width << q << ",\"zeros\":[";
        for (std::size_t i = 0; i < zeros.size(); ++i) os << (i ? "," : "") << q << zeros[i] << q;
        os << "]}\n";
        break;
      }
      case Format::csv:
        for (const auto& z : zeros) os << n << ',' << width << ',' << z << '\n';
        break;
      case Format::pretty:
        os << "n=" << n << " width=" << width << '\n';
        for (const auto& z : zeros) os << "  " << z << '\n';
        break;
    }
  };
  for (int n = cfg.n_lo; n <= cfg.n_hi; ++n) {
    std::vector<std::string> rendered;
    if (cfg.mode == Mode::exact) {
      ultra::Rational width = ultra::pow_rational(ultra::Rational(1, 10), 30);
      if (!cfg.width_text.empty()) {
        const auto w = ultra::parse_rational(cfg.width_text);
        if (!w || !(*w > 0)) usage_error("exact mode requires a positive rational width");
        width = *w;
      }
      const auto zs = ultra::zeros(ultra::make_params(n, *cfg.lambda_exact), width);
      rendered.reserve(zs.zeros.size());
      for (const auto& z : zs.zeros) rendered.push_back(ultra::to_string(z));
      emit(n, ultra::to_string(zs.width), rendered, true);
    } else {
      double width = 1e-14;
      if (!cfg.width_text.empty()) {
        try {
          width = std::stod(cfg.width_text);
        } catch (const std::exception&) {
          usage_error("cannot parse width: " + cfg.width_text);
        }
      }
      const auto zs = ultra::zeros(ultra::make_params(n, cfg.lambda_float), width);
      rendered.reserve(zs.zeros.size());
      for (double z : zs.zeros) rendered.push_back(fmt_double(z));
      emit(n, fmt_double(zs.width), rendered, false);
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"certified evaluation of ultraspherical log-derivative bounds"};
  app.require_subcommand(1);
  RunConfig cfg;

  std::string n_text = "1";
  std::string mode_text = "exact";
  std::string format_text = "pretty";

  auto add_common = [&](CLI::App* sub, bool lambda_needed) {
    sub->add_option("--n", n_text, "degree n or inclusive range a..b");
    if (lambda_needed)
      sub->add_option("--lambda", cfg.lambda_text, "family parameter: rational \"p/q\" or decimal");
    sub->add_option("--m", cfg.grid_density, "t-grid density: t = j/(2m), j = 0..m-1")
        ->check(CLI::PositiveNumber);
    sub->add_option("--mode", mode_text, "arithmetic mode: exact | float");
    sub->add_option("--format", format_text, "output format: pretty | csv | json");
    sub->add_option("--output", cfg.output, "output file (default: stdout)");
    sub->add_option("--threads", cfg.threads, "worker threads for sweeps");
  };

  auto* eval_cmd = app.add_subcommand("eval", "evaluate p_n, p_n' and u_n on a grid");
  add_common(eval_cmd, true);
  eval_cmd->add_option("--x", cfg.extra_x, "abscissas (override the default grid)");

  auto* bounds_cmd = app.add_subcommand("bounds", "check the pointwise bounds against u_n");
  add_common(bounds_cmd, true);
  bounds_cmd->add_option("--spec", cfg.specs,
                         "bound id(s) to check (default: all valid at (n, lambda))");
  bounds_cmd->add_option("--x", cfg.extra_x, "extra abscissas (floating mode)");

  auto* certify_cmd = app.add_subcommand("certify", "exact convexity certificates for F_n");
  add_common(certify_cmd, false);

  auto* export_cmd = app.add_subcommand("export", "CSV of u_n vs all bounds with tightest ids");
  add_common(export_cmd, true);
  export_cmd->add_option("--x", cfg.extra_x, "extra abscissas (floating mode)");

  auto* zeros_cmd = app.add_subcommand("zeros", "zeros of p_n by interlacing bisection");
  add_common(zeros_cmd, true);
  zeros_cmd->add_option("--width", cfg.width_text, "refinement width");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  std::tie(cfg.n_lo, cfg.n_hi) = parse_n_range(n_text);
  if (mode_text == "exact")
    cfg.mode = Mode::exact;
  else if (mode_text == "float")
    cfg.mode = Mode::floating;
  else
    usage_error("unknown mode: " + mode_text);
  if (format_text == "pretty")
    cfg.format = Format::pretty;
  else if (format_text == "csv")
    cfg.format = Format::csv;
  else if (format_text == "json")
    cfg.format = Format::json;
  else
    usage_error("unknown format: " + format_text);
  if (cfg.threads == 0) cfg.threads = 1;
  if (!cfg.extra_x.empty()) cfg.default_large_x = false;

  try {
    if (eval_cmd->parsed()) {
      resolve_lambda(cfg);
      return cmd_eval(cfg);
    }
    if (bounds_cmd->parsed()) {
      resolve_lambda(cfg);
      return cmd_bounds(cfg);
    }
    if (certify_cmd->parsed()) return cmd_certify(cfg);
    if (export_cmd->parsed()) {
      resolve_lambda(cfg);
      return cmd_export(cfg);
    }
    if (zeros_cmd->parsed()) {
      resolve_lambda(cfg);
      return cmd_zeros(cfg);
    }
  } catch (const std::invalid_argument& e) {
    usage_error(e.what());
  } catch (const std::domain_error& e) {
    usage_error(e.what());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
