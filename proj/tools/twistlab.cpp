// twistlab: field generation, flows, norms, decay fits and identity checks.
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "twistlab/io.hpp"
#include "twistlab/lattice.hpp"
#include "twistlab/phasespace.hpp"
#include "twistlab/quadrature.hpp"
#include "twistlab/specfun.hpp"
#include "twistlab/spectral_ops.hpp"
#include "twistlab/twisted.hpp"

using namespace twistlab;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct GridOpts {
  int d = 1, points = 128;
  double half_width = 0;  // 0 selects the self-dual Landau grid
  GridSpec make(int dim) const {
    if (d < 1) throw ParameterError("dimension must be positive");
    if (points < 4 || points % 2) throw ParameterError("point count must be even and >= 4");
    return half_width > 0 ? GridSpec(dim, points, half_width) : GridSpec::landau(dim, points);
  }
};

json grid_json(const GridSpec& g) {
  return {{"dim", g.dim}, {"points", g.points}, {"half_width", g.half_width}};
}

void write_sidecar(const fs::path& out, const json& j) {
  std::ofstream(out.string() + ".json") << j.dump(2) << '\n';
}

double parse_exponent(const std::string& s) { return Exponent::parse(s).value(); }

Route parse_route(const std::string& r) {
  static const std::map<std::string, Route> m = {
      {"spectral", Route::spectral},           {"kernel", Route::kernel},
      {"weyl", Route::weyl_symbol},            {"subordination", Route::subordination},
      {"gamma", Route::gamma_integral},        {"transferred", Route::transferred}};
  auto it = m.find(r);
  if (it == m.end()) throw ParameterError("unknown route '" + r + "'");
  return it->second;
}

double fit_loglog(const std::vector<double>& x, const std::vector<double>& y, bool log_x = true) {
  if (x.size() < 2) throw ParameterError("degenerate sweep: need at least two t values");
  double mx = 0, my = 0;
  const std::size_t n = x.size();
  std::vector<double> X(n), Y(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(y[i] > 0)) throw VerificationError("nonpositive value in decay sweep");
    X[i] = log_x ? std::log(x[i]) : x[i], Y[i] = std::log(y[i]);
    mx += X[i] / n, my += Y[i] / n;
  }
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < n; ++i) sxy += (X[i] - mx) * (Y[i] - my), sxx += (X[i] - mx) * (X[i] - mx);
  if (sxx == 0) throw ParameterError("degenerate sweep: all t values equal");
  return sxy / sxx;
}

// Config values are spliced in right after the subcommand name so that
// command-line flags, which come later, take precedence.
std::vector<std::string> splice_config(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  std::string path;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    else if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty() || args.size() < 2) return args;
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot read config " + path);
  json cfg;
  try {
    cfg = json::parse(in);
  } catch (const json::exception&) {
    throw ParameterError("config " + path + " is not valid JSON");
  }
  if (!cfg.is_object()) throw ParameterError("config must be a JSON object");
  std::vector<std::string> extra;
  for (auto& [k, v] : cfg.items()) {
    if (v.is_boolean()) {
      if (v.get<bool>()) extra.push_back("--" + k);
      continue;
    }
    extra.push_back("--" + k);
    extra.push_back(v.is_string() ? v.get<std::string>() : v.dump());
  }
  std::size_t at = 1;
  while (at < args.size() && args[at].rfind("-", 0) == 0) at += args[at] == "--config" ? 2 : 1;
  if (at < args.size()) ++at;                                    // subcommand
  args.insert(args.begin() + static_cast<long>(at), extra.begin(), extra.end());
  return args;
}

// ---------------------------------------------------------------- verify

struct Check {
  std::string name;
  double value, tolerance;
};

std::vector<Check> run_suite(const std::string& suite, const GridSpec& g2) {
  std::vector<Check> out;
  auto phi = [&](int a, int b) { return special_hermite({a}, {b}, g2); };
  if (suite == "eigen" || suite == "all") {
    double w = 0;
    for (int a = 0; a <= 4; ++a)
      for (int b = 0; b <= 4; ++b) {
        Field p = phi(a, b);
        w = std::max(w, relative_error(apply_twisted_laplacian(p), (1.0 + 2 * b) * p));
      }
    out.push_back({"eigen.landau", w, 1e-6});
  }
  if (suite == "twisted-algebra" || suite == "all") {
    double w = 0;
    for (int a = 0; a <= 2; ++a)
      for (int b = 0; b <= 2; ++b)
        for (int m = 0; m <= 2; ++m)
          for (int n = 0; n <= 2; ++n) {
            Field c = twisted_convolution(phi(a, b), phi(m, n), Twist::landau);
            if (b == m) c -= 4.0 * phi(a, n);
            w = std::max(w, l2_norm(c));
          }
    out.push_back({"twisted.product_identity", w, 4e-6});
  }
  if (suite == "intertwine" || suite == "all") {
    const GridSpec g1 = g2.with_dim(1);
    double w = 0;
    for (int a = 0; a <= 3; ++a)
      for (int b = 0; b <= 3; ++b) {
        Field h1 = hermite_function(a, g1), h2 = hermite_function(b, g1), t(g2);
        for (int i = 0; i < g2.points; ++i)
          for (int j = 0; j < g2.points; ++j) t.at2(i, j) = h1[i] * h2[j];
        w = std::max(w, distance(metaplectic_AJ(t), phi(a, b)));
      }
    out.push_back({"intertwine.hermite_tensor", w, 1e-6});
    Field f = phi(1, 2) + phi(0, 3);
    auto m = MultiplierSpec::from_function([](double x) { return cplx(std::exp(-0.5 * x)); }, 1, 24, "heat");
    out.push_back({"intertwine.multiplier",
                   relative_error(transferred_multiplier(f, m).field, multiplier_apply(f, m, Which::landau).field),
                   1e-5});
  }
  if (suite == "heat-routes" || suite == "all") {
    Field f = phi(0, 1) + phi(2, 0);
    Field a = heat_flow(f, 1.0, Route::spectral);
    out.push_back({"heat.kernel_vs_spectral", relative_error(heat_flow(f, 1.0, Route::kernel), a), 1e-5});
    out.push_back({"heat.weyl_vs_spectral", relative_error(heat_flow(f, 1.0, Route::weyl_symbol), a), 1e-5});
  }
  if (suite == "index-logic" || suite == "all") {
    const char* vals[] = {"1", "4/3", "2", "4", "inf"};
    int bad = 0, order = 0;
    for (int code = 0; code < 15625; ++code) {
      IndexTuple t;
      for (int i = 0, c = code; i < 6; ++i, c /= 5) t.e[i] = Exponent::parse(vals[c % 5]);
      bool adm = weyl_product_admissible(t);
      bad += adm != weyl_product_restated_corrected(t);
      order += adm && (t.e[5].inv > t.e[1].inv || t.e[5].inv > t.e[3].inv);
    }
    out.push_back({"index.corrected_restatement_mismatches", double(bad), 0});
    out.push_back({"index.q2_order_violations", double(order), 0});
  }
  if (out.empty()) throw ParameterError("unknown suite '" + suite + "'");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"twistlab: twisted Laplacian numerics"};
  app.require_subcommand(1);
  app.fallthrough();
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  std::string config;
  app.add_option("--config", config, "JSON file with option defaults (flags take precedence)");

  GridOpts grid;
  auto add_grid = [&](CLI::App* c) {
    c->add_option("-d,--dim", grid.d, "base dimension d");
    c->add_option("-N,--points", grid.points, "lattice points per axis");
    c->add_option("-R,--half-width", grid.half_width, "half-width R (default: self-dual grid)");
  };

  // gen
  auto* gen = app.add_subcommand("gen", "generate a field");
  std::string kind, out;
  int n = 0, alpha = 0, beta = 0, k = 0;
  double t = 1.0, lambda = 1.0;
  gen->add_option("kind", kind, "hermite|special_hermite|laguerre_kernel|gaussian|heat_kernel")->required();
  gen->add_option("--n", n);
  gen->add_option("--alpha", alpha);
  gen->add_option("--beta", beta);
  gen->add_option("--k", k);
  gen->add_option("--t", t);
  gen->add_option("--lambda", lambda);
  gen->add_option("-o,--out", out)->required();
  add_grid(gen);

  // flow
  auto* flow = app.add_subcommand("flow", "apply a flow to a TWF1 field");
  std::string flow_kind, input, input2, route = "spectral";
  double nu = 0.5, gamma = 1.0, delta = 0.0;
  int K = default_truncation;
  flow->add_option("flow", flow_kind, "heat|fracheat|schrodinger|wave|oscmult|negpow|bessel")->required();
  flow->add_option("-i,--in", input)->required();
  flow->add_option("--in2", input2, "initial velocity for the wave flow (default 0)");
  flow->add_option("--t", t);
  flow->add_option("--nu", nu);
  flow->add_option("--gamma", gamma);
  flow->add_option("--delta", delta);
  flow->add_option("-K,--truncation", K);
  flow->add_option("--route", route, "spectral|kernel|weyl|subordination|gamma|transferred|both");
  flow->add_option("-o,--out", out)->required();

  // norm
  auto* norm = app.add_subcommand("norm", "mixed modulation/amalgam norm of a field");
  std::string p_str = "2", q_str = "2", flavor = "modulation", window = "gaussian", csv;
  double s = 0;
  bool symplectic = false;
  norm->add_option("-i,--in", input)->required();
  norm->add_option("--p", p_str);
  norm->add_option("--q", q_str);
  norm->add_option("--s", s);
  norm->add_option("--flavor", flavor, "modulation|amalgam");
  norm->add_flag("--symplectic", symplectic);
  norm->add_option("--window", window, "gaussian|self");
  norm->add_option("--csv", csv, "append the row to this file instead of stdout");

  // decay
  auto* decay = app.add_subcommand("decay", "sweep t and fit decay exponents");
  std::string decay_kind;
  double tmin = 0, tmax = 0, mu = 1e12;
  int count = 9;
  decay->add_option("quantity", decay_kind, "heat-ground|heat-kernel|fracheat-witness")->required();
  decay->add_option("--tmin", tmin);
  decay->add_option("--tmax", tmax);
  decay->add_option("--count", count);
  decay->add_option("--p", p_str);
  decay->add_option("--q", q_str);
  decay->add_option("--mu", mu);
  decay->add_option("-o,--out", out);
  add_grid(decay);

  // verify
  auto* verify = app.add_subcommand("verify", "run an identity suite");
  std::string suite;
  verify->add_option("suite", suite, "eigen|twisted-algebra|intertwine|heat-routes|index-logic|all")->required();
  add_grid(verify);

  try {
    auto args = splice_config(argc, argv);
    std::vector<const char*> cargs;
    for (auto& a : args) cargs.push_back(a.c_str());
    app.parse(static_cast<int>(cargs.size()), cargs.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.exit_code();
  }

  try {
    if (*gen) {
      const int d = grid.d;
      Field f;
      json meta = {{"kind", kind}};
      if (kind == "hermite") {
        MultiIndex a(d, 0);
        a[0] = n;
        f = hermite_nd(a, grid.make(d));
        meta["n"] = n;
      } else if (kind == "special_hermite") {
        if (d != 1) throw ParameterError("special_hermite generation supports d = 1");
        f = special_hermite({alpha}, {beta}, grid.make(2));
        meta["alpha"] = alpha, meta["beta"] = beta;
      } else if (kind == "laguerre_kernel") {
        f = laguerre_kernel(k, grid.make(2 * d));
        meta["k"] = k;
      } else if (kind == "gaussian") {
        f = gaussian_dilated(lambda, grid.make(2 * d));
        meta["lambda"] = lambda;
      } else if (kind == "heat_kernel") {
        f = heat_kernel(t, grid.make(2 * d));
        meta["t"] = t;
      } else {
        throw ParameterError("unknown field kind '" + kind + "'");
      }
      io::write_field(out, f);
      meta["grid"] = grid_json(f.grid);
      meta["label"] = f.label;
      write_sidecar(out, meta);
      return 0;
    }

    if (*flow) {
      Field f = io::read_field(input);
      json meta = {{"flow", flow_kind}, {"route", route}, {"t", t}, {"K", K}, {"input", input}};
      const bool both = route == "both";
      static const std::map<std::string, std::string> alternate = {
          {"heat", "kernel"}, {"fracheat", "subordination"}, {"schrodinger", "kernel"},
          {"negpow", "gamma"}, {"bessel", "gamma"}};
      auto run = [&](Route r) -> Field {
        if (flow_kind == "heat") return heat_flow(f, t, r, K);
        if (flow_kind == "fracheat") return fractional_heat_flow(f, t, nu, r, K);
        if (flow_kind == "negpow") return negative_power(f, nu, r, K);
        if (flow_kind == "bessel") return bessel_potential(f, nu, r, K);
        if (flow_kind == "schrodinger") {
          auto res = schrodinger_flow(f, t, r, K);
          if (r == Route::kernel) {
            meta["kernel_phase"] = {res.phase.real(), res.phase.imag()};
            meta["resolved_radius"] = res.resolved_radius;
          }
          return res.field;
        }
        if (r != Route::spectral) throw ParameterError(flow_kind + " supports only the spectral route");
        if (flow_kind == "oscmult") {
          meta["gamma"] = gamma, meta["delta"] = delta;
          return oscillating_multiplier(f, t, gamma, delta, Which::landau, K);
        }
        if (flow_kind == "wave") {
          Field g = input2.empty() ? Field(f.grid) : io::read_field(input2);
          return wave_flow(f, g, t, K);
        }
        throw ParameterError("unknown flow '" + flow_kind + "'");
      };
      Field result;
      if (both) {
        auto it = alternate.find(flow_kind);
        if (it == alternate.end()) throw ParameterError(flow_kind + " has a single route");
        result = run(Route::spectral);
        double agree = relative_error(run(parse_route(it->second)), result);
        meta["compared_route"] = it->second;
        meta["route_agreement"] = agree;
        std::cout << "route agreement (spectral vs " << it->second << "): " << io::format_number(agree) << '\n';
      } else {
        result = run(parse_route(route));
      }
      if (flow_kind == "fracheat" || flow_kind == "negpow" || flow_kind == "bessel") meta["nu"] = nu;
      if (f.grid.dim == 2 && f.grid.dual().matches(f.grid) && K >= 0) {
        meta["K"] = std::min(K, LandauExpansion::max_resolved(f.grid));
        meta["K_requested"] = K;
        LandauExpansion E(f.grid, meta["K"].get<int>());
        meta["truncation_residual"] = distance(f, E.synthesize(E.analyze(f)));
      }
      result.label = flow_kind;
      io::write_field(out, result);
      meta["grid"] = grid_json(result.grid);
      write_sidecar(out, meta);
      return 0;
    }

    if (*norm) {
      Field f = io::read_field(input);
      MixedNormSpec spec{parse_exponent(p_str), parse_exponent(q_str), s,
                         flavor == "amalgam" ? Flavor::amalgam : Flavor::modulation, symplectic};
      if (flavor != "amalgam" && flavor != "modulation") throw ParameterError("unknown flavor '" + flavor + "'");
      spec.validate();
      Field g;
      if (window == "self") g = f;
      else if (window == "gaussian") g = hermite_nd(MultiIndex(f.grid.dim, 0), f.grid);
      else throw ParameterError("unknown window '" + window + "'");
      double v = gabor_mixed_norm(f, g, spec);
      bool fresh = csv.empty() || !fs::exists(csv) || fs::file_size(csv) == 0;
      std::ofstream file;
      if (!csv.empty()) file.open(csv, std::ios::app);
      std::ostream& os = csv.empty() ? std::cout : file;
      io::CsvWriter w(os, {"input", "p", "q", "s", "flavor", "symplectic", "window", "value"}, fresh);
      w.cell(input).cell(p_str).cell(q_str).cell(s).cell(flavor).cell(symplectic ? "1" : "0").cell(window).cell(v);
      w.end_row();
      return 0;
    }

    if (*decay) {
      std::vector<double> ts, vs;
      json meta = {{"quantity", decay_kind}};
      if (count < 2) throw ParameterError("degenerate sweep: --count must be at least 2");
      auto sweep = [&](double a, double b, bool geometric) {
        if (tmin > 0) a = tmin;
        if (tmax > 0) b = tmax;
        if (!(a > 0 && b > a)) throw ParameterError("degenerate sweep: need 0 < tmin < tmax");
        for (int i = 0; i < count; ++i) {
          double u = double(i) / (count - 1);
          ts.push_back(geometric ? a * std::pow(b / a, u) : a + (b - a) * u);
        }
      };
      if (decay_kind == "heat-ground") {
        sweep(1.0, 4.0, false);
        const GridSpec g2 = grid.make(2);
        Field p = special_hermite({0}, {0}, g2);
        for (double tt : ts) vs.push_back(l2_norm(heat_flow(p, tt, Route::spectral)) / l2_norm(p));
        double rate = -fit_loglog(ts, vs, false);
        meta["large_time_rate"] = rate;
        std::cout << "large-time rate " << io::format_number(rate) << '\n';
      } else if (decay_kind == "heat-kernel") {
        sweep(1e-3, 1e-1, true);
        const GridSpec g1 = grid.half_width > 0 ? GridSpec(1, grid.points, grid.half_width)
                                                : GridSpec(1, std::max(grid.points, 1024), 8.0);
        Field w = Field::sample(g1, [](const double* x) { return cplx(std::exp(-x[0] * x[0] / 4)); });
        MixedNormSpec spec{parse_exponent(p_str), parse_exponent(q_str), 0, Flavor::amalgam, true};
        for (double tt : ts) {
          double a = 0.25 / std::tanh(tt), amp = 1 / std::sqrt(16 * pi * std::sinh(tt));
          Field f = Field::sample(g1, [&](const double* x) { return cplx(amp * std::exp(-a * x[0] * x[0])); });
          vs.push_back(separable_gabor_mixed_norm({f, f}, {w, w}, spec));
        }
        double sl = fit_loglog(ts, vs);
        meta["small_time_slope"] = sl, meta["p"] = p_str, meta["q"] = q_str;
        std::cout << "small-time slope " << io::format_number(sl) << '\n';
      } else if (decay_kind == "fracheat-witness") {
        sweep(1e-3, 1e-1, true);
        for (double tt : ts) vs.push_back(fractional_heat_witness_ratio(tt, mu));
        double sl = fit_loglog(ts, vs);
        meta["small_time_slope"] = sl, meta["mu"] = mu;
        std::cout << "small-time slope " << io::format_number(sl) << '\n';
      } else {
        throw ParameterError("unknown decay quantity '" + decay_kind + "'");
      }
      std::ofstream file;
      if (!out.empty()) file.open(out);
      std::ostream& os = out.empty() ? std::cout : file;
      io::CsvWriter w(os, {"t", "value"});
      for (std::size_t i = 0; i < ts.size(); ++i) {
        w.cell(ts[i]).cell(vs[i]);
        w.end_row();
      }
      if (!out.empty()) write_sidecar(out, meta);
      return 0;
    }

    if (*verify) {
      auto checks = run_suite(suite, grid.make(2));
      bool ok = true;
      io::CsvWriter w(std::cout, {"check", "value", "tolerance", "status"});
      for (auto& c : checks) {
        bool pass = c.value <= c.tolerance;
        ok = ok && pass;
        w.cell(c.name).cell(c.value).cell(c.tolerance).cell(pass ? "PASS" : "FAIL");
        w.end_row();
      }
      return ok ? 0 : 4;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
