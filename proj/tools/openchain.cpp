// openchain: exact open-chain transfer matrices, eigenvector maps, and the
// closed-form steady state of the boundary-driven SSEP.
//
// Commands: steady | prob | correlate | density | eigenmap | bethe-check |
//           identify | verify
#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "openchain/json_io.hpp"
#include "openchain/oracles.hpp"
#include "openchain/verification.hpp"

using namespace openchain;

namespace {

struct CommonOpts {
  int n = 4;
  std::string alpha, beta, gamma, delta;  // SSEP rates (rational strings)
  std::string p, q, delta_tri;            // triangular boundary parameters
  std::string mode = "exact";
  std::string oracle = "none";
  std::string out;
  std::string format = "json";
  std::string config_file;
  std::uint64_t seed = 20240808;
};

void merge_config_file(CLI::App& app, CommonOpts& o) {
  if (o.config_file.empty()) return;
  std::ifstream in(o.config_file);
  if (!in) fail("ConfigError", "cannot open config file " + o.config_file);
  Json j = Json::parse(in, nullptr, true, true);
  auto flag_count = [&](const char* flag) -> std::size_t {
    auto* opt = app.get_option_no_throw(flag);
    return opt ? opt->count() : 0;
  };
  auto take_str = [&](const char* flag, const char* key, std::string& slot) {
    if (flag_count(flag) == 0 && j.contains(key)) slot = j[key].get<std::string>();
  };
  if (flag_count("--n") == 0 && j.contains("n")) o.n = j["n"].get<int>();
  if (flag_count("--seed") == 0 && j.contains("seed")) o.seed = j["seed"].get<std::uint64_t>();
  take_str("--alpha", "alpha", o.alpha);
  take_str("--beta", "beta", o.beta);
  take_str("--gamma", "gamma", o.gamma);
  take_str("--delta", "delta", o.delta);
  take_str("--p", "p", o.p);
  take_str("--q", "q", o.q);
  take_str("--delta-tri", "delta_tri", o.delta_tri);
  take_str("--mode", "mode", o.mode);
  take_str("--oracle", "oracle", o.oracle);
  take_str("--format", "format", o.format);
  take_str("--out", "out", o.out);
}

SsepRates<Rational> rates_from(const CommonOpts& o) {
  if (o.alpha.empty() || o.beta.empty() || o.gamma.empty() || o.delta.empty())
    fail("ConfigError", "rates require --alpha --beta --gamma --delta");
  return {Rational::parse(o.alpha), Rational::parse(o.beta), Rational::parse(o.gamma),
          Rational::parse(o.delta)};
}

BoundaryParams<Rational> params_from(const CommonOpts& o) {
  if (!o.alpha.empty() || !o.beta.empty() || !o.gamma.empty() || !o.delta.empty()) {
    if (!o.p.empty() || !o.q.empty() || !o.delta_tri.empty())
      fail("ConfigError", "give rates (--alpha..--delta) or boundary parameters "
                          "(--p --q --delta-tri), not both");
    return identified_params(rates_from(o));
  }
  if (o.p.empty() || o.q.empty())
    fail("ConfigError", "boundary parameters require --p and --q (and optionally --delta-tri)");
  return {Rational::parse(o.p), Rational::parse(o.q),
          o.delta_tri.empty() ? Rational(0) : Rational::parse(o.delta_tri)};
}

SsepRates<Complex> rates_to_float(const SsepRates<Rational>& r) {
  return {to_complex(r.alpha), to_complex(r.beta), to_complex(r.gamma), to_complex(r.delta)};
}

void emit(const CommonOpts& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    if (text.empty() || text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) fail("ConfigError", "cannot open output file " + o.out);
  f << text;
  if (text.empty() || text.back() != '\n') f << '\n';
}

void emit_json(const CommonOpts& o, const Json& j) { emit(o, j.dump(2)); }

Complex parse_complex(const std::string& text) {
  // accepts "1.5", "-0.3+0.2i", "0.3-1i"
  std::string s = text;
  if (!s.empty() && s.back() == 'i') {
    std::size_t split = s.find_last_of("+-");
    if (split == std::string::npos || split == 0)
      return Complex(0.0, std::stod(s.substr(0, s.size() - 1)));
    double re = std::stod(s.substr(0, split));
    double im = std::stod(s.substr(split, s.size() - split - 1));
    return Complex(re, im);
  }
  return Complex(std::stod(s), 0.0);
}

std::vector<int> parse_sites(const std::string& text) {
  std::vector<int> sites;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) sites.push_back(std::stoi(tok));
  return sites;
}

// --- command bodies ---------------------------------------------------------

int cmd_identify(const CommonOpts& o) {
  auto id = identify(rates_from(o));
  Json j;
  j["p"] = scalar_to_json(id.p);
  j["q"] = scalar_to_json(id.q);
  j["delta"] = scalar_to_json(id.delta);
  j["c0"] = scalar_to_json(id.c0);
  j["c1"] = scalar_to_json(id.c1);
  j["rho_a"] = scalar_to_json(id.rho_a);
  j["rho_b"] = scalar_to_json(id.rho_b);
  emit_json(o, j);
  return 0;
}

int cmd_steady(const CommonOpts& o) {
  ChainGeometry geom(o.n);
  auto r = rates_from(o);
  Json j;
  j["n"] = o.n;
  if (o.mode == "float") {
    auto rf = rates_to_float(r);
    Json probs = Json::object();
    for (std::uint32_t b = 0; b < (1u << o.n); ++b)
      probs[occupation_string(b, o.n)] =
          scalar_to_json(probability(OccupationConfig::from_index(b, o.n), geom, rf));
    j["probabilities"] = std::move(probs);
    emit_json(o, j);
    return 0;
  }
  auto ss = steady_state(geom, r);
  Json probs = Json::object();
  Rational total(0);
  for (std::uint32_t b = 0; b < ss.probabilities.dim(); ++b) {
    probs[occupation_string(b, o.n)] = scalar_to_json(ss.probabilities.amp[b]);
    total += ss.probabilities.amp[b];
  }
  j["probabilities"] = std::move(probs);
  j["normalization_sum"] = scalar_to_json(total);
  j["rescale"] = scalar_to_json(ss.rescale);
  if (o.oracle != "none") {
    Json agreement = Json::object();
    auto check = [&](const std::string& name) {
      bool agrees = true;
      for (std::uint32_t b = 0; b < ss.probabilities.dim(); ++b) {
        auto cfg = OccupationConfig::from_index(b, o.n);
        Rational val = name == "dehp"        ? dehp_probability(cfg, r, geom)
                       : name == "nullspace" ? nullspace_steady(geom, r).amp[b]
                                             : probability(cfg, geom, r);
        if (val != ss.probabilities.amp[b]) agrees = false;
      }
      agreement[name] = agrees;
    };
    if (o.oracle == "all") {
      check("closed");
      check("dehp");
      check("nullspace");
    } else {
      check(o.oracle);
    }
    j["oracle_agreement"] = std::move(agreement);
  }
  emit_json(o, j);
  return 0;
}

int cmd_prob(const CommonOpts& o, const std::string& occupation) {
  ChainGeometry geom(o.n);
  auto cfg = OccupationConfig::from_string(occupation);
  if (cfg.sites() != o.n) fail("ConfigError", "occupation string length must equal --n");
  auto r = rates_from(o);
  Json j;
  j["config"] = occupation;
  if (o.mode == "float") {
    j["value"] = scalar_to_json(probability(cfg, geom, rates_to_float(r)));
  } else {
    Rational val = probability(cfg, geom, r);
    j["value"] = scalar_to_json(val);
    if (o.oracle == "dehp" || o.oracle == "all")
      j["dehp_agrees"] = (dehp_probability(cfg, r, geom) == val);
    if (o.oracle == "nullspace" || o.oracle == "all")
      j["nullspace_agrees"] = (nullspace_steady(geom, r).amp[cfg.index()] == val);
  }
  emit_json(o, j);
  return 0;
}

int cmd_correlate(const CommonOpts& o, const std::string& sites_text) {
  ChainGeometry geom(o.n);
  auto sites = parse_sites(sites_text);
  auto r = rates_from(o);
  Json j;
  j["sites"] = sites;
  j["value"] = o.mode == "float" ? scalar_to_json(correlator(sites, geom, rates_to_float(r)))
                                 : scalar_to_json(correlator(sites, geom, r));
  emit_json(o, j);
  return 0;
}

int cmd_density(const CommonOpts& o) {
  ChainGeometry geom(o.n);
  auto r = rates_from(o);
  if (o.format == "csv") {
    std::string out = "site,value\n";
    for (int i = 1; i <= o.n; ++i) {
      out += std::to_string(i);
      out.push_back(',');
      if (o.mode == "float") {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", density(i, geom, rates_to_float(r)).real());
        out += buf;
      } else {
        out += density(i, geom, r).str();
      }
      out.push_back('\n');
    }
    emit(o, out);
    return 0;
  }
  Json rows = Json::array();
  for (int i = 1; i <= o.n; ++i) {
    Json row;
    row["site"] = i;
    row["value"] = o.mode == "float" ? scalar_to_json(density(i, geom, rates_to_float(r)))
                                     : scalar_to_json(density(i, geom, r));
    rows.push_back(std::move(row));
  }
  Json j;
  j["profile"] = std::move(rows);
  emit_json(o, j);
  return 0;
}

int cmd_eigenmap(const CommonOpts& o, int m_opt, const std::string& x_text, int eigen_index) {
  ChainGeometry geom(o.n);
  if (o.mode == "float") {
    auto bpr = params_from(o);
    BoundaryParams<Complex> bp{to_complex(bpr.p), to_complex(bpr.q), to_complex(bpr.delta)};
    int m = m_opt < 0 ? o.n : m_opt;
    Complex x0 = x_text.empty() ? Complex(0.9, 0.0) : parse_complex(x_text);
    auto t0 = transfer_diagonal(x0, geom, bp.p, bp.q);
    auto pairs = sector_eig(t0, m);
    if (eigen_index < 0 || eigen_index >= static_cast<int>(pairs.size()))
      fail("ConfigError", "eigen index out of range for sector " + std::to_string(m));
    const auto& ep = pairs[eigen_index];
    auto mapped = map_limit(ep.vector, m, geom, bp);
    Json j;
    j["m"] = m;
    j["lambda"] = scalar_to_json(ep.value);
    Json coeffs = Json::array();
    for (const auto& cc : map_coefficients(m, geom, bp)) coeffs.push_back(scalar_to_json(cc));
    j["coefficients"] = std::move(coeffs);
    j["vector"] = state_to_json(mapped);
    emit_json(o, j);
    return 0;
  }
  auto bp = params_from(o);
  int m = m_opt < 0 ? o.n : m_opt;
  if (m != o.n)
    fail("ConfigError", "exact mode maps the fully excited reference state; use --m only "
                        "with --mode float");
  auto psi = transformed_reference(geom, bp);
  Json j;
  j["m"] = m;
  Json coeffs = Json::array();
  for (const auto& cc : map_coefficients(m, geom, bp)) coeffs.push_back(scalar_to_json(cc));
  j["coefficients"] = std::move(coeffs);
  j["vector"] = state_to_json(psi);
  emit_json(o, j);
  return 0;
}

int cmd_bethe_check(const CommonOpts& o, const std::string& roots_text,
                    const std::string& reference) {
  ChainGeometry geom(o.n);
  BetheReference ref = reference == "plus" ? BetheReference::Plus : BetheReference::Minus;
  Json j;
  j["reference"] = reference;
  if (o.p.empty() || o.q.empty()) fail("ConfigError", "bethe-check requires --p and --q");

  std::vector<std::string> tokens;
  {
    std::stringstream ss(roots_text);
    std::string tok;
    while (std::getline(ss, tok, ',')) tokens.push_back(tok);
  }
  if (tokens.empty()) {
    j["roots"] = Json::array();
    j["on_shell"] = true;
    j["note"] = "on-shell (vacuous)";
    emit_json(o, j);
    return 0;
  }
  if (o.mode == "float") {
    Complex p = to_complex(Rational::parse(o.p)), q = to_complex(Rational::parse(o.q));
    std::vector<Complex> roots;
    for (const auto& t : tokens) roots.push_back(parse_complex(t));
    BetheRoots<Complex> rs(ref, roots);
    auto res = bethe_residual(rs, geom, p, q);
    j["roots"] = roots_to_json(rs)["roots"];
    Json resid = Json::array();
    double worst = 0.0;
    for (const auto& rr : res) {
      resid.push_back(scalar_to_json(rr));
      worst = std::max(worst, std::abs(rr));
    }
    j["residuals"] = std::move(resid);
    j["max_residual"] = worst;
    j["on_shell"] = worst < 1e-12;
    j["tq_polynomial"] = tq_is_polynomial(rs, geom, p, q);
  } else {
    Rational p = Rational::parse(o.p), q = Rational::parse(o.q);
    std::vector<Rational> roots;
    for (const auto& t : tokens) roots.push_back(Rational::parse(t));
    BetheRoots<Rational> rs(ref, roots);
    auto res = bethe_residual(rs, geom, p, q);
    j["roots"] = roots_to_json(rs)["roots"];
    Json resid = Json::array();
    bool on_shell = true;
    for (const auto& rr : res) {
      resid.push_back(scalar_to_json(rr));
      on_shell = on_shell && rr.is_zero();
    }
    j["residuals"] = std::move(resid);
    j["on_shell"] = on_shell;
    j["tq_polynomial"] = tq_is_polynomial(rs, geom, p, q);
  }
  emit_json(o, j);
  return 0;
}

int cmd_verify(const CommonOpts& o, bool mutate_filling, bool float_too) {
  VerifyOptions vo;
  vo.seed = o.seed;
  vo.mutate_filling = mutate_filling;
  std::vector<CheckResult> results;
  if (o.mode == "exact" || o.mode == "both") {
    vo.n_exact = o.n;
    auto r = run_exact_checks(vo);
    results.insert(results.end(), r.begin(), r.end());
  }
  if (o.mode == "float" || o.mode == "both" || float_too) {
    vo.n_float = o.n;
    auto r = run_float_checks(vo);
    results.insert(results.end(), r.begin(), r.end());
  }
  bool all_pass = true;
  std::string text;
  for (const auto& r : results) {
    text += (r.pass ? "PASS " : "FAIL ") + r.name + " [" + std::to_string(r.cases) + " checks]";
    if (!r.detail.empty()) text += " -- " + r.detail;
    text.push_back('\n');
    all_pass = all_pass && r.pass;
  }
  text += all_pass ? "verify: all checks passed\n" : "verify: FAILURES\n";
  emit(o, text);
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"openchain: exact open XXX chains and the boundary-driven SSEP steady state"};
  app.require_subcommand(1);

  CommonOpts o;
  std::string occupation, sites_text, roots_text, reference = "minus", x_text;
  int m_opt = -1, eigen_index = 0;
  bool mutate_filling = false, float_too = false;

  auto add_common = [&](CLI::App* cmd, bool with_rates, bool with_params) {
    cmd->add_option("--n", o.n, "number of chain sites");
    cmd->add_option("--mode", o.mode, "scalar mode: exact|float")
        ->check(CLI::IsMember({"exact", "float", "both"}));
    cmd->add_option("--out", o.out, "output file (default stdout)");
    cmd->add_option("--format", o.format, "output format: json|csv")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--seed", o.seed, "RNG seed for randomized suites");
    cmd->add_option("--config", o.config_file, "JSON config file; flags override");
    if (with_rates) {
      cmd->add_option("--alpha", o.alpha, "left injection rate (rational)");
      cmd->add_option("--beta", o.beta, "right extraction rate (rational)");
      cmd->add_option("--gamma", o.gamma, "left extraction rate (rational)");
      cmd->add_option("--delta", o.delta, "right injection rate (rational)");
    }
    if (with_params) {
      cmd->add_option("--p", o.p, "left boundary parameter (rational)");
      cmd->add_option("--q", o.q, "right boundary parameter (rational)");
      cmd->add_option("--delta-tri", o.delta_tri, "triangular boundary parameter (rational)");
    }
  };

  auto* steady = app.add_subcommand("steady", "all steady-state probabilities");
  add_common(steady, true, false);
  steady->add_option("--oracle", o.oracle, "cross-check: closed|dehp|nullspace|all")
      ->check(CLI::IsMember({"none", "closed", "dehp", "nullspace", "all"}));

  auto* prob = app.add_subcommand("prob", "steady-state probability of one configuration");
  add_common(prob, true, false);
  prob->add_option("--occupation", occupation, "configuration string, e.g. 0110")->required();
  prob->add_option("--oracle", o.oracle, "cross-check: closed|dehp|nullspace|all")
      ->check(CLI::IsMember({"none", "closed", "dehp", "nullspace", "all"}));

  auto* correlate = app.add_subcommand("correlate", "k-point steady-state correlation function");
  add_common(correlate, true, false);
  correlate->add_option("--sites", sites_text, "comma-separated site list, e.g. 1,3,4")
      ->required();

  auto* densityc = app.add_subcommand("density", "steady-state density profile");
  add_common(densityc, true, false);

  auto* eigenmapc = app.add_subcommand("eigenmap", "map diagonal-chain eigenvectors to the "
                                                   "triangular chain");
  add_common(eigenmapc, true, true);
  eigenmapc->add_option("--m", m_opt, "magnon sector (float mode; exact mode fixes m = N)");
  eigenmapc->add_option("--x", x_text, "spectral point for the float-mode eigenbasis");
  eigenmapc->add_option("--eigen-index", eigen_index, "which sector eigenvector (float mode)");

  auto* bethec = app.add_subcommand("bethe-check", "Bethe-equation residuals and TQ certificate");
  add_common(bethec, false, true);
  bethec->add_option("--roots", roots_text, "comma-separated roots (may be empty)");
  bethec->add_option("--reference", reference, "reference state: plus|minus")
      ->check(CLI::IsMember({"plus", "minus"}));

  auto* identifyc = app.add_subcommand("identify", "map SSEP rates to the triangular-chain "
                                                   "parameters (p, q, Delta, c0, c1, densities)");
  add_common(identifyc, true, false);

  auto* verifyc = app.add_subcommand("verify", "run the randomized verification suites");
  add_common(verifyc, false, false);
  verifyc->add_flag("--mutate-filling", mutate_filling,
                    "inject a sign error into the Hasse cross-check (harness sanity)");
  verifyc->add_flag("--with-float", float_too, "also run the float suite");

  CLI11_PARSE(app, argc, argv);

  try {
    for (auto* cmd : {steady, prob, correlate, densityc, eigenmapc, bethec, identifyc, verifyc})
      if (cmd->parsed()) merge_config_file(*cmd, o);
    if (steady->parsed()) return cmd_steady(o);
    if (prob->parsed()) return cmd_prob(o, occupation);
    if (correlate->parsed()) return cmd_correlate(o, sites_text);
    if (densityc->parsed()) return cmd_density(o);
    if (eigenmapc->parsed()) return cmd_eigenmap(o, m_opt, x_text, eigen_index);
    if (bethec->parsed()) return cmd_bethe_check(o, roots_text, reference);
    if (verifyc->parsed()) return cmd_verify(o, mutate_filling, float_too);
    if (identifyc->parsed()) return cmd_identify(o);
  } catch (const Error& e) {
    Json err;
    err["error"] = e.code();
    err["message"] = e.what();
    std::cout << err.dump(2) << std::endl;
    return 1;
  } catch (const std::exception& e) {
    Json err;
    err["error"] = "Internal";
    err["message"] = e.what();
    std::cout << err.dump(2) << std::endl;
    return 2;
  }
  return 0;
}
