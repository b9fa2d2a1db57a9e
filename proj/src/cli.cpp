#include "dqw/cli.hpp"

#include <CLI11.hpp>
#include <cctype>
#include <cmath>
#include <ostream>
#include <sstream>

#include "dqw/evolve.hpp"
#include "dqw/fourier.hpp"
#include "dqw/io.hpp"
#include "dqw/parallel.hpp"
#include "dqw/period.hpp"

namespace dqw {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

double parse_double_strict(const std::string& s, const char* what) {
  try {
    size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size() || !std::isfinite(v))
      throw InputError(std::string("malformed ") + what + " '" + s + "'");
    return v;
  } catch (const std::invalid_argument&) {
    throw InputError(std::string("malformed ") + what + " '" + s + "'");
  } catch (const std::out_of_range&) {
    throw InputError(std::string(what) + " out of range '" + s + "'");
  }
}

long long parse_int_strict(const std::string& s, const char* what) {
  try {
    size_t used = 0;
    long long v = std::stoll(s, &used);
    if (used != s.size()) throw InputError(std::string("malformed ") + what + " '" + s + "'");
    return v;
  } catch (const std::invalid_argument&) {
    throw InputError(std::string("malformed ") + what + " '" + s + "'");
  } catch (const std::out_of_range&) {
    throw InputError(std::string(what) + " out of range '" + s + "'");
  }
}

// amplitude grammar: a | bi | a+bi | a-bi (suffix i marks the imaginary part)
cd parse_complex(const std::string& raw) {
  std::string t = trim(raw);
  if (t.empty()) throw InputError("empty amplitude");
  if (t.back() == 'i' || t.back() == 'I') {
    std::string body = t.substr(0, t.size() - 1);
    size_t split = std::string::npos;
    for (size_t j = body.size(); j-- > 1;) {
      char c = body[j];
      if ((c == '+' || c == '-') && body[j - 1] != 'e' && body[j - 1] != 'E') {
        split = j;
        break;
      }
    }
    std::string re_part = "0", im_part = body;
    if (split != std::string::npos) {
      re_part = body.substr(0, split);
      im_part = body.substr(split);
    }
    if (im_part.empty() || im_part == "+")
      im_part = "1";
    else if (im_part == "-")
      im_part = "-1";
    return cd(parse_double_strict(re_part, "amplitude"), parse_double_strict(im_part, "amplitude"));
  }
  return cd(parse_double_strict(t, "amplitude"), 0.0);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

ThetaExpr parse_theta(const std::string& s) {
  std::string t = trim(s);
  if (t.empty()) throw InputError("empty theta expression");
  size_t pos = t.find("pi");
  if (pos != std::string::npos) {
    size_t i = 0;
    bool neg = false;
    if (t[0] == '-') {
      neg = true;
      i = 1;
    } else if (t[0] == '+') {
      i = 1;
    }
    long long num = 1;
    if (i < pos) {
      for (size_t d = i; d < pos; ++d)
        if (!std::isdigit(static_cast<unsigned char>(t[d])))
          throw InputError("malformed theta '" + s + "'");
      num = parse_int_strict(t.substr(i, pos - i), "theta numerator");
    }
    long long den = 1;
    size_t after = pos + 2;
    if (after < t.size()) {
      if (t[after] != '/') throw InputError("malformed theta '" + s + "'");
      std::string dstr = t.substr(after + 1);
      if (dstr.empty()) throw InputError("malformed theta '" + s + "'");
      for (char c : dstr)
        if (!std::isdigit(static_cast<unsigned char>(c)))
          throw InputError("malformed theta '" + s + "'");
      den = parse_int_strict(dstr, "theta denominator");
      if (den == 0) throw InputError("theta denominator must be nonzero");
    }
    ThetaExpr e;
    e.text = t;
    e.symbolic = true;
    e.num = neg ? -num : num;
    e.den = den;
    e.radians = double(e.num) * pi / double(e.den);
    return e;
  }
  ThetaExpr e;
  e.text = t;
  e.radians = parse_double_strict(t, "theta");
  return e;
}

InitialCondition parse_init(const std::string& text) {
  InitialCondition init = make_init_uniform(1, 0);
  bool saw_any = false;
  for (const std::string& tok : split(text, ',')) {
    std::string item = trim(tok);
    if (item.empty()) continue;
    size_t eq = item.find('=');
    if (eq == std::string::npos) throw InputError("init item '" + item + "' is not key=value");
    std::string key = trim(item.substr(0, eq));
    std::string val = trim(item.substr(eq + 1));
    saw_any = true;
    if (key == "s") {
      long long v = parse_int_strict(val, "init s");
      if (v != 0 && v != 1) throw InputError("init s must be 0 or 1");
      init.s0 = int(v);
    } else if (key == "r") {
      init.r0 = int(parse_int_strict(val, "init r"));
    } else if (key == "coin") {
      if (val == "uniform") {
        const double a = 1.0 / std::sqrt(3.0);
        init.coin_amplitudes = {cd(a, 0), cd(a, 0), cd(a, 0)};
      } else if (val == "0" || val == "1" || val == "2") {
        init.coin_amplitudes = {cd(0, 0), cd(0, 0), cd(0, 0)};
        init.coin_amplitudes[val[0] - '0'] = cd(1, 0);
      } else {
        std::vector<std::string> parts = split(val, ':');
        if (parts.size() != 3)
          throw InputError("coin spec needs 'uniform', a basis index, or three ':'-separated amplitudes");
        for (int l = 0; l < 3; ++l) init.coin_amplitudes[l] = parse_complex(parts[l]);
      }
    } else {
      throw InputError("unknown init key '" + key + "'");
    }
  }
  if (!saw_any) throw InputError("empty init spec");
  return init;
}

std::vector<DihedralVertex> parse_vertices(const std::string& text, int n) {
  std::vector<DihedralVertex> out;
  for (const std::string& tok : split(text, ';')) {
    std::string item = trim(tok);
    if (item.empty()) continue;
    std::vector<std::string> parts = split(item, ',');
    if (parts.size() != 2) throw InputError("vertex '" + item + "' is not s,r");
    int s = int(parse_int_strict(trim(parts[0]), "vertex s"));
    int r = int(parse_int_strict(trim(parts[1]), "vertex r"));
    vertex_index(s, r, n);  // validates
    out.push_back({s, r});
  }
  if (out.empty()) throw InputError("empty vertex list");
  return out;
}

RunConfig parse_config(const std::vector<std::string>& argv) {
  RunConfig cfg;
  CLI::App app{"discrete-time quantum walks on dihedral-group Cayley graphs"};
  app.name("dqw");
  app.require_subcommand(1);

  std::string cls_s, theta_s, init_s, vertices_s, ns_s, method_s, format_s;
  std::string out_s = "-";
  double x_val = 0.0, y_val = 0.0;

  const std::vector<std::pair<std::string, std::string>> subs = {
      {"coin", "emit the coin matrix and parameters as JSON"},
      {"graph", "emit the Cayley graph as an edge list"},
      {"spectrum", "eigenvalues of every momentum block"},
      {"evolve", "run T steps and emit the final state"},
      {"period", "periodicity analysis (theorem, spectral or brute force)"},
      {"localize", "time-averaged position distribution"},
      {"sweep-theta", "time-averaged probability across a theta grid"},
      {"sweep-n", "time-averaged probability across ring sizes"},
  };
  for (const auto& [name, desc] : subs) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->add_option("--class", cls_s, "coin class: X, Y, Z or W");
    sub->add_option("--theta", theta_s, "coin angle: pi fraction like 2pi/3, or radians");
    sub->add_option("--x", x_val, "coin parameter x (with --y, instead of --theta)");
    sub->add_option("--y", y_val, "coin parameter y (with --x)");
    sub->add_option("--n", cfg.n, "ring size N (vertices = 2N)");
    sub->add_option("--init", init_s, "initial condition, e.g. s=1,r=0,coin=uniform");
    sub->add_option("--T", cfg.T, "number of steps / averaging window");
    sub->add_option("--t-max", cfg.t_max, "brute-force period search cap");
    sub->add_option("--q-max", cfg.q_max, "eigenphase denominator cap");
    sub->add_option("--grid", cfg.grid, "theta grid size over [-pi, pi]");
    sub->add_option("--tol", cfg.tol, "brute-force norm tolerance");
    sub->add_option("--vertices", vertices_s, "semicolon list of s,r pairs");
    sub->add_option("--ns", ns_s, "comma list of ring sizes");
    sub->add_option("--method", method_s,
                    "period: auto|theorem|spectral|brute; localize: direct|spectral|limit");
    sub->add_option("--out", out_s, "output path, '-' for stdout");
    sub->add_option("--format", format_s, "output format (csv, json, edges)");
    sub->add_flag("--parallel", cfg.parallel, "parallelize independent blocks/points");
    sub->add_flag("--eigenvalue-power", cfg.eigenvalue_power,
                  "brute-force period via eigenvalue powers instead of dense products");
  }

  std::vector<const char*> cargv;
  cargv.reserve(argv.size() + 1);
  cargv.push_back("dqw");
  for (const std::string& a : argv) cargv.push_back(a.c_str());
  try {
    app.parse(int(cargv.size()), cargv.data());
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested{app.help()};
  } catch (const CLI::ParseError& e) {
    throw InputError(e.what());
  }

  CLI::App* sub = app.get_subcommands().front();
  cfg.subcommand = sub->get_name();

  if (sub->count("--class")) {
    auto cls = coin_class_from_string(cls_s);
    if (!cls) throw InputError("unknown coin class '" + cls_s + "'");
    cfg.cls = *cls;
  }
  if (sub->count("--theta")) cfg.theta = parse_theta(theta_s);
  if (sub->count("--x") != sub->count("--y"))
    throw InputError("--x and --y must be given together");
  if (sub->count("--x")) cfg.xy = std::make_pair(x_val, y_val);
  if (sub->count("--init")) {
    cfg.init_text = init_s;
    cfg.init = parse_init(init_s);
  }
  if (sub->count("--vertices")) cfg.vertices = parse_vertices(vertices_s, cfg.n);
  if (sub->count("--ns")) {
    for (const std::string& tok : split(ns_s, ','))
      cfg.ns.push_back(int(parse_int_strict(trim(tok), "ring size")));
    if (cfg.ns.empty()) throw InputError("empty ring-size list");
  }
  if (sub->count("--method")) cfg.method = method_s;
  cfg.out = out_s;
  if (sub->count("--format")) cfg.format = format_s;

  // per-subcommand requirements
  const std::string& sc = cfg.subcommand;
  bool needs_coin = sc == "coin" || sc == "spectrum" || sc == "evolve" || sc == "period" ||
                    sc == "localize" || sc == "sweep-n";
  if (needs_coin) {
    if (!cfg.cls) throw InputError(sc + " requires --class");
    if (!cfg.theta && !cfg.xy) throw InputError(sc + " requires --theta or --x/--y");
  }
  if (sc == "sweep-theta" && !cfg.cls) throw InputError("sweep-theta requires --class");
  if (sc == "sweep-n" && cfg.ns.empty()) throw InputError("sweep-n requires --ns");

  if (!cfg.method.empty()) {
    bool ok = (sc == "period" && (cfg.method == "auto" || cfg.method == "theorem" ||
                                  cfg.method == "spectral" || cfg.method == "brute")) ||
              (sc == "localize" && (cfg.method == "direct" || cfg.method == "spectral" ||
                                    cfg.method == "limit"));
    if (!ok) throw InputError("--method '" + cfg.method + "' is not valid for " + sc);
  }
  if (!cfg.format.empty()) {
    bool ok =
        (sc == "coin" || sc == "period")
            ? cfg.format == "json"
            : (sc == "graph" ? (cfg.format == "edges" || cfg.format == "json")
                             : (cfg.format == "csv" || cfg.format == "json"));
    if (!ok) throw InputError("--format '" + cfg.format + "' is not valid for " + sc);
  }
  return cfg;
}

std::vector<std::string> render_config(const RunConfig& c) {
  std::vector<std::string> v{c.subcommand};
  auto push = [&](const char* flag, const std::string& val) {
    v.push_back(flag);
    v.push_back(val);
  };
  if (c.cls) push("--class", to_string(*c.cls));
  if (c.theta) push("--theta", c.theta->text);
  if (c.xy) {
    push("--x", fmt_g17(c.xy->first));
    push("--y", fmt_g17(c.xy->second));
  }
  push("--n", std::to_string(c.n));
  push("--init", c.init_text);
  push("--T", std::to_string(c.T));
  push("--t-max", std::to_string(c.t_max));
  push("--q-max", std::to_string(c.q_max));
  push("--grid", std::to_string(c.grid));
  push("--tol", fmt_g17(c.tol));
  if (!c.vertices.empty()) {
    std::string s;
    for (size_t i = 0; i < c.vertices.size(); ++i) {
      if (i) s += ';';
      s += std::to_string(c.vertices[i].s) + "," + std::to_string(c.vertices[i].r);
    }
    push("--vertices", s);
  }
  if (!c.ns.empty()) {
    std::string s;
    for (size_t i = 0; i < c.ns.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(c.ns[i]);
    }
    push("--ns", s);
  }
  if (!c.method.empty()) push("--method", c.method);
  push("--out", c.out);
  if (!c.format.empty()) push("--format", c.format);
  if (c.parallel) v.push_back("--parallel");
  if (c.eigenvalue_power) v.push_back("--eigenvalue-power");
  return v;
}

namespace {

CoinMatrix make_coin(const RunConfig& c) {
  if (!c.cls) throw InputError("--class is required");
  if (c.xy) return coin_from_xy(*c.cls, c.xy->first, c.xy->second);
  if (!c.theta) throw InputError("--theta (or --x/--y) is required");
  return coin_from_theta(*c.cls, c.theta->radians);
}

// Whether the closed-form period matches the dense oracle at this angle.
// The printed W formulas put finite branches at angles where the coin is not
// a signed permutation and disagree with brute force, so W never auto-routes
// to the theorem path.
bool theorem_reliable(CoinClass cls, double theta) {
  double t = normalize_angle(theta);
  auto near = [&](double v) { return std::abs(t - v) <= 1e-12; };
  switch (cls) {
    case CoinClass::X:
    case CoinClass::Z:
      return near(0.0) || near(2.0 * pi / 3.0) || near(-2.0 * pi / 3.0);
    case CoinClass::Y:
      return near(pi) || near(pi / 3.0) || near(-pi / 3.0);
    case CoinClass::W:
      return false;
  }
  return false;
}

}  // namespace

void run_config(const RunConfig& c, std::ostream& stdout_stream) {
  const std::string& sc = c.subcommand;
  std::string content;

  if (sc == "coin") {
    content = coin_to_json(make_coin(c));
  } else if (sc == "graph") {
    CayleyGraph g = build_cayley(c.n);
    content = (c.format == "json") ? graph_to_json(g) : to_edge_list(g);
  } else if (sc == "spectrum") {
    CoinMatrix coin = make_coin(c);
    if (c.n < 3) throw InputError("spectrum needs n >= 3");
    std::vector<EigenSystem> blocks(c.n);
    parallel_for(0, c.n, c.parallel,
                 [&](int k) { blocks[k] = eigen_numeric(build_Uk(coin, c.n, k)); });
    content = (c.format == "json") ? spectrum_to_json(blocks) : spectrum_to_csv(blocks);
  } else if (sc == "evolve") {
    CoinMatrix coin = make_coin(c);
    if (c.T < 0) throw InputError("T must be nonnegative");
    WalkState st = initial_state(c.init, c.n);
    for (long t = 0; t < c.T; ++t) st = step_local(st, coin);
    content = (c.format == "json") ? state_to_json(st) : state_to_csv(st);
  } else if (sc == "period") {
    CoinMatrix coin = make_coin(c);
    double theta = coin.theta.value();
    std::string method = c.method.empty() ? "auto" : c.method;
    if (method == "auto")
      method = theorem_reliable(coin.cls, theta) ? "theorem" : "spectral";
    PeriodResult pr;
    if (method == "theorem")
      pr = theorem_period(coin.cls, theta, c.n);
    else if (method == "spectral")
      pr = spectral_period(coin, c.n, c.q_max);
    else
      pr = brute_force_period(coin, c.n, c.t_max, c.tol, c.eigenvalue_power);
    content = period_to_json(pr);
  } else if (sc == "localize") {
    CoinMatrix coin = make_coin(c);
    std::string method = c.method.empty() ? "spectral" : c.method;
    TimeAveragedResult r;
    if (method == "direct")
      r = time_avg_direct(coin, c.n, c.init, c.T);
    else if (method == "spectral")
      r = time_avg_spectral(coin, c.n, c.init, c.T);
    else
      r = limit_time_avg(coin, c.n, c.init);
    double theta = coin.theta.value();
    content = (c.format == "json") ? timeavg_to_json(r, theta) : timeavg_to_csv(r, theta);
  } else if (sc == "sweep-theta") {
    if (!c.cls) throw InputError("sweep-theta requires --class");
    std::vector<DihedralVertex> verts = c.vertices;
    if (verts.empty()) verts.push_back({c.init.s0, c.init.r0});
    SweepResult r = sweep_theta(*c.cls, c.grid, c.n, c.init, c.T, verts, c.parallel);
    content = (c.format == "json") ? sweep_to_json(r) : sweep_to_csv(r);
  } else if (sc == "sweep-n") {
    CoinMatrix coin = make_coin(c);
    SweepResult r = sweep_n(coin.cls, coin.theta.value(), c.ns, c.init, c.T);
    content = (c.format == "json") ? sweep_to_json(r) : sweep_to_csv(r);
  } else {
    throw InputError("unknown subcommand '" + sc + "'");
  }

  write_output(c.out, content, stdout_stream);
}

int run_cli(const std::vector<std::string>& argv, std::ostream& stdout_stream,
            std::ostream& stderr_stream) {
  try {
    RunConfig cfg = parse_config(argv);
    run_config(cfg, stdout_stream);
    return 0;
  } catch (const HelpRequested& h) {
    stdout_stream << h.message;
    return 0;
  } catch (const IoError& e) {
    stderr_stream << "error: " << e.what() << "\n";
    return 3;
  } catch (const CapacityError& e) {
    stderr_stream << "error: " << e.what() << "\n";
    return 4;
  } catch (const NumericalError& e) {
    stderr_stream << "error: " << e.what() << "\n";
    return 4;
  } catch (const InputError& e) {
    stderr_stream << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    stderr_stream << "internal error: " << e.what() << "\n";
    return 4;
  }
}

}  // namespace dqw
