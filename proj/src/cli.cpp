#include "oslab/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

#include "oslab/braid.hpp"
#include "oslab/hilbseries.hpp"
#include "oslab/pointcount.hpp"
#include "oslab/quiver.hpp"
#include "oslab/semimodule.hpp"
#include "oslab/wallcross.hpp"

namespace oslab::cli {

namespace {

struct Common {
  std::string format = "text";
  unsigned threads = 0;
  std::uint64_t seed = 1;
};

struct Report {
  std::string equation;
  bool passed = true;
  nlohmann::json config = nlohmann::json::object();
  nlohmann::json result = nlohmann::json::object();
  std::string text;
};

struct GermFlags {
  int p = 0;
  int q = 0;
};

void add_common(CLI::App* sub, Common& common) {
  sub->add_option("--format", common.format, "Output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  sub->add_option("--threads", common.threads, "Worker threads (0 = all cores)")->capture_default_str();
  sub->add_option("--seed", common.seed, "Seed recorded in the report")->capture_default_str();
}

void add_germ(CLI::App* sub, GermFlags& germ) {
  sub->add_option("--p", germ.p, "Exponent p of x^p = y^q")->required()->check(CLI::Range(1, 1 << 20));
  sub->add_option("--q", germ.q, "Exponent q of x^p = y^q")->required()->check(CLI::Range(1, 1 << 20));
}

void add_cap(CLI::App* sub, const std::string& name, int& value, const std::string& help) {
  sub->add_option(name, value, help)->check(CLI::Range(1, 1 << 20))->capture_default_str();
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

nlohmann::json germ_json(const CurveGerm& germ) {
  return {{"p", germ.p}, {"q", germ.q}, {"mu", germ.mu()}, {"delta", germ.delta()}};
}

nlohmann::json curve_json(const CompactCurveData& c) {
  return {{"degree", c.degree}, {"chi_OC", c.chi_OC}, {"chi_top", c.chi_top}};
}

std::string table_text(const InvariantTable& t) {
  std::ostringstream os;
  os << role_name(t.role()) << " (r <= " << t.rmax() << ", " << t.floor() << " <= n <= " << t.nmax() << ")\n";
  for (const auto& [rn, v] : t.values()) os << "  r=" << rn.first << " n=" << rn.second << ": " << v << "\n";
  return os.str();
}

Report run_homfly(const std::string& braid_text, int strands, bool oracle) {
  if (strands <= 0) {
    int top = 0;
    std::istringstream in(braid_text);
    for (std::string tok; std::getline(in, tok, ',');)
      if (!tok.empty()) top = std::max(top, std::abs(std::stoi(tok)));
    strands = top + 1;
  }
  const BraidWord b = parse_braid(braid_text, strands);
  const HomflyValue v = homfly(b);
  Report rep;
  rep.equation = "homfly-skein";
  rep.config = {{"braid", format_braid(b)}, {"strands", b.strands}, {"oracle", oracle}};
  rep.result = to_json(v);
  rep.result["components"] = b.component_count();
  rep.result["crossings"] = b.crossings();
  rep.result["text"] = v.to_string();
  std::ostringstream os;
  os << "braid " << format_braid(b) << " on " << b.strands << " strands, " << b.component_count()
     << " component(s)\n";
  os << "P = " << v.to_string() << "\n";
  if (oracle) {
    const bool agree = homfly_skein_tree(b) == v;
    rep.result["oracle_agrees"] = agree;
    rep.passed = agree;
    os << "skein-tree oracle agrees: " << yes_no(agree) << "\n";
  }
  rep.text = os.str();
  return rep;
}

Report run_verify_os(const GermFlags& g, int order, std::optional<long> mu, unsigned threads) {
  const CurveGerm germ = CurveGerm::make(g.p, g.q);
  const OsReport os_report = os_verify(germ.p, germ.q, order, mu, threads);
  Report rep;
  rep.equation = "os-correspondence";
  rep.config = {{"germ", germ_json(germ)}, {"order", order}};
  if (mu) rep.config["mu_override"] = *mu;
  rep.result = to_json(os_report);
  rep.passed = os_report.passed();
  std::ostringstream os;
  os << "torus knot T(" << germ.p << "," << germ.q << "), mu used " << os_report.mu_used << ", through q^"
     << order << "\n";
  for (const auto& c : os_report.coefficients)
    os << "  a^" << c.a_exp << " q^" << c.q_exp << ": knot " << c.knot_side << ", hilbert " << c.hilbert_side
       << (c.match() ? "" : "  MISMATCH") << "\n";
  os << "coefficients " << os_report.coefficients.size() << ", mismatches " << os_report.mismatches() << "\n";
  if (germ.p == 1 || germ.q == 1) {
    const bool closed = os_smooth_closed_form(std::max(germ.p, germ.q));
    rep.result["smooth_closed_form"] = closed;
    rep.passed = rep.passed && closed;
    os << "smooth germ closed form: " << yes_no(closed) << "\n";
  }
  rep.text = os.str();
  return rep;
}

Report run_local_series(const GermFlags& g, int nmax, unsigned threads) {
  const CurveGerm germ = CurveGerm::make(g.p, g.q);
  const auto modules = enumerate_modules(germ, nmax, threads);
  const ModuleHistogram hist = module_histogram(modules);
  const Series series = local_top_series(modules, nmax);
  Report rep;
  rep.equation = "local-hilbert-series";
  rep.config = {{"germ", germ_json(germ)}, {"nmax", nmax}};
  nlohmann::json by_n_m = nlohmann::json::array();
  std::ostringstream os;
  os << modules.size() << " modules of colength <= " << nmax << "\n";
  for (const auto& [nm, count] : hist) {
    by_n_m.push_back({nm.first, nm.second, count});
    os << "  n=" << nm.first << " m=" << nm.second << ": " << count << "\n";
  }
  rep.result = {{"modules", modules.size()}, {"by_n_m", by_n_m}, {"series", to_json(series)}};
  os << "Z = " << series.to_string() << "\n";
  rep.text = os.str();
  return rep;
}

Report run_refined_series(const GermFlags& g, int nmax, const std::string& backend_name, unsigned threads) {
  const CurveGerm germ = CurveGerm::make(g.p, g.q);
  const RefinedBackend backend = *parse_backend(backend_name);
  const Series refined = refined_local_series(germ, nmax, backend, threads);
  const Series at_minus_one = series_substitute(refined, {{Var::y, {-1, MonomialKey::one()}}});
  const Series local = local_top_series(germ, nmax, threads);
  const bool specializes = agree_within_caps(at_minus_one, local);
  Report rep;
  rep.equation = "refined-specialization";
  rep.config = {{"germ", germ_json(germ)}, {"nmax", nmax}, {"backend", backend_name}};
  rep.result = {{"series", to_json(refined)}, {"specializes_to_local", specializes}};
  rep.passed = specializes;
  rep.text = "Z_refined = " + refined.to_string() + "\ny = -1 gives the local series: " + yes_no(specializes) + "\n";
  return rep;
}

Report run_global_series(const GermFlags& g, int nmax, const std::string& curve_kind, unsigned threads) {
  const CurveGerm germ = CurveGerm::make(g.p, g.q);
  Report rep;
  rep.equation = "global-hilbert-series";
  rep.config = {{"germ", germ_json(germ)}, {"nmax", nmax}, {"curve", curve_kind}};
  Series series;
  if (curve_kind == "compact") {
    const CompactCurveData curve = default_compact_model(germ);
    rep.config["model"] = curve_json(curve);
    series = compact_top_series(curve, germ, nmax, threads);
  } else {
    rep.config["chi"] = kAffineGermChi;
    series = global_top_series(germ, nmax, kAffineGermChi, threads);
  }
  rep.result = {{"series", to_json(series)}};
  rep.text = "Z = " + series.to_string() + "\n";
  return rep;
}

Report run_conifold(int tmax, int umax) {
  const Series series = conifold_series(tmax, umax);
  Report rep;
  rep.equation = "conifold-product";
  rep.config = {{"tmax", tmax}, {"umax", umax}};
  rep.result = {{"series", to_json(series)}};
  rep.text = "Z_conifold = " + series.to_string() + "\n";
  return rep;
}

Report run_wallcross_check(const GermFlags& g, int rmax, int nmax, const std::string& sign_name, unsigned threads) {
  const CurveGerm germ = CurveGerm::make(g.p, g.q);
  const CompactCurveData curve = default_compact_model(germ);
  const ConifoldSign sign = sign_name == "alternating" ? ConifoldSign::alternating : ConifoldSign::plain;

  const ExpIdentityReport exp_report = exp_identity_check(rmax, nmax, sign);
  const FactorizationReport fact = factorization_check(germ, curve, rmax, nmax, sign, threads);
  const InvariantTable walls = iterate_walls(fact.p0plus, rmax, nmax);
  const bool per_wall = walls.same_values(fact.pminus);

  struct Check {
    std::string name;
    std::string equation;
    bool passed;
  };
  const std::vector<Check> checks = {
      {"exp_identity", "conifold-resummation", exp_report.passed()},
      {"integral", "wallcross-factorization", fact.integral},
      {"product", "wallcross-factorization", fact.product_match},
      {"composite", "three-factor-form", fact.composite_match},
      {"per_wall", "per-wall-consistency", per_wall},
  };

  Report rep;
  rep.equation = "wallcross-factorization";
  rep.config = {{"germ", germ_json(germ)},
                {"model", curve_json(curve)},
                {"rmax", rmax},
                {"nmax", nmax},
                {"sign", sign_name}};
  nlohmann::json checks_json = nlohmann::json::array();
  std::ostringstream os;
  for (const auto& c : checks) {
    checks_json.push_back({{"name", c.name}, {"equation", c.equation}, {"passed", c.passed}});
    os << c.name << " [" << c.equation << "]: " << (c.passed ? "pass" : "FAIL") << "\n";
    rep.passed = rep.passed && c.passed;
  }
  rep.result = {{"checks", checks_json}, {"p0plus", to_json(fact.p0plus)}, {"pminus", to_json(fact.pminus)}};
  os << table_text(fact.p0plus) << table_text(fact.pminus);
  rep.text = os.str();
  return rep;
}

Report run_quiver_audit(int kmax, int rmax, int nmax, int Nmax) {
  const QuiverPresentation quiver = QuiverPresentation::local_p2();
  const AuditReport audit = exponent_audit_grid(kmax, rmax, nmax, Nmax);
  Report rep;
  rep.equation = "quiver-weight-exponent";
  rep.config = {{"kmax", kmax}, {"rmax", rmax}, {"nmax", nmax}, {"Nmax", Nmax}};
  rep.result = audit.json();
  rep.result["potential_cyclic"] = quiver.potential_is_cyclic();
  rep.passed = quiver.potential_is_cyclic() && audit.dims_additive;
  rep.text = audit.markdown();
  return rep;
}

Report run_gv_expand(const GermFlags& g, int umax, unsigned threads) {
  const CurveGerm germ = CurveGerm::make(g.p, g.q);
  const CompactCurveData curve = default_compact_model(germ);
  const Series z = small_b_series(curve, germ, umax, threads);
  const GvTable table = gv_expand(z);
  Report rep;
  rep.equation = "gv-expansion";
  rep.config = {{"germ", germ_json(germ)}, {"model", curve_json(curve)}, {"umax", umax}};
  rep.result = to_json(table);
  std::ostringstream os;
  for (const auto& [rp, v] : table.values) os << "N_" << rp.first << "^" << rp.second << " = " << v << "\n";
  for (const auto& [r, f] : table.finite) os << "r=" << r << " polynomial within cap: " << yes_no(f) << "\n";
  rep.text = os.str();
  return rep;
}

std::string polynomial_text(const CountPolynomial& poly) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < poly.coeffs.size(); ++i) {
    const Rational& c = poly.coeffs[i];
    if (c == 0) continue;
    os << (first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + "));
    first = false;
    const Rational mag = abs(c);
    if (i == 0 || mag != 1) os << mag << (i == 0 ? "" : "*");
    if (i >= 1) os << "x";
    if (i >= 2) os << "^" << i;
  }
  return first ? "0" : os.str();
}

Report run_oracle_pointcount(const GermFlags& g, int lmax) {
  const CurveGerm germ = CurveGerm::make(g.p, g.q);
  if (lmax > 5) throw std::invalid_argument("oracle-pointcount supports --nmax <= 5");
  const ModuleHistogram hist = module_histogram(enumerate_modules(germ, lmax, 1));
  std::map<int, long> by_colength;
  for (const auto& [nm, count] : hist) by_colength[nm.first] += count;

  Report rep;
  rep.equation = "finite-field-count";
  rep.config = {{"germ", germ_json(germ)}, {"nmax", lmax}, {"primes", {2, 3, 5, 7}}};
  nlohmann::json rows = nlohmann::json::array();
  std::ostringstream os;
  for (int l = 0; l <= lmax; ++l) {
    nlohmann::json counts = nlohmann::json::object();
    for (int prime : {2, 3, 5, 7}) counts[std::to_string(prime)] = pointcount_oracle(germ, l, prime);
    const CountPolynomial poly = ideal_count_polynomial(germ, l);
    nlohmann::json coeffs = nlohmann::json::array();
    for (const auto& c : poly.coeffs) coeffs.push_back(rational_to_string(c));
    const Rational at_one = poly(1);
    const long modules = by_colength[l];
    const bool ok = poly.verified && poly.integral() && at_one == modules;
    rep.passed = rep.passed && ok;
    rows.push_back({{"l", l},
                    {"counts", counts},
                    {"polynomial", coeffs},
                    {"verified", poly.verified},
                    {"value_at_1", rational_to_string(at_one)},
                    {"modules", modules},
                    {"passed", ok}});
    os << "l=" << l << ": " << polynomial_text(poly) << ", at x = 1: " << at_one << ", modules "
       << modules << ", " << (ok ? "pass" : "FAIL") << "\n";
  }
  rep.result = {{"rows", rows}};
  rep.text = os.str();
  return rep;
}

void emit(const std::string& command, const Common& common, const Report& rep, std::ostream& out) {
  if (common.format == "json") {
    nlohmann::json doc = {{"schema", kSchema},  {"command", command},   {"seed", common.seed},
                          {"equation", rep.equation}, {"passed", rep.passed}, {"config", rep.config},
                          {"result", rep.result}};
    out << doc.dump(2) << "\n";
    return;
  }
  out << rep.text;
  out << "\nequation: " << rep.equation << "\nseed: " << common.seed << "\npassed: " << yes_no(rep.passed) << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact HOMFLY, Hilbert-scheme and stable-pair series for plane curve singularities", "oslab"};
  app.require_subcommand(1, 1);

  Common common;
  GermFlags germ;
  std::map<std::string, std::function<Report()>> handlers;

  std::string braid_text;
  int strands = 0;
  bool oracle = false;
  auto* homfly_cmd = app.add_subcommand("homfly", "HOMFLY polynomial of a braid closure");
  homfly_cmd->add_option("--braid,braid", braid_text, "Comma-separated signed generators, e.g. 1,1,1")->required();
  homfly_cmd->add_option("--strands", strands, "Strand count (default: largest index + 1)");
  homfly_cmd->add_flag("--oracle", oracle, "Cross-check with the skein-tree resolver");
  add_common(homfly_cmd, common);
  handlers["homfly"] = [&] { return run_homfly(braid_text, strands, oracle); };

  int order = 20;
  std::optional<long> mu;
  auto* verify_cmd = app.add_subcommand("verify-os", "Compare the torus-knot HOMFLY series with the Hilbert series");
  add_germ(verify_cmd, germ);
  add_cap(verify_cmd, "--order", order, "Highest power of q compared");
  verify_cmd->add_option("--mu", mu, "Override the Milnor number in the prefactor");
  add_common(verify_cmd, common);
  handlers["verify-os"] = [&] { return run_verify_os(germ, order, mu, common.threads); };

  int nmax = 10;
  auto* local_cmd = app.add_subcommand("local-series", "Local Hilbert series from semigroup modules");
  add_germ(local_cmd, germ);
  add_cap(local_cmd, "--nmax", nmax, "Largest colength");
  add_common(local_cmd, common);
  handlers["local-series"] = [&] { return run_local_series(germ, nmax, common.threads); };

  std::string backend = "euler";
  auto* refined_cmd = app.add_subcommand("refined-series", "Refined local series and its y = -1 specialization");
  add_germ(refined_cmd, germ);
  add_cap(refined_cmd, "--nmax", nmax, "Largest colength");
  refined_cmd->add_option("--backend", backend, "Stratum weights")
      ->check(CLI::IsMember({"euler", "pointcount"}))
      ->capture_default_str();
  add_common(refined_cmd, common);
  handlers["refined-series"] = [&] { return run_refined_series(germ, nmax, backend, common.threads); };

  std::string curve_kind = "affine";
  auto* global_cmd = app.add_subcommand("global-series", "Hilbert series of an affine germ or a compact model curve");
  add_germ(global_cmd, germ);
  add_cap(global_cmd, "--nmax", nmax, "Largest number of points");
  global_cmd->add_option("--curve", curve_kind, "affine or compact")
      ->check(CLI::IsMember({"affine", "compact"}))
      ->capture_default_str();
  add_common(global_cmd, common);
  handlers["global-series"] = [&] { return run_global_series(germ, nmax, curve_kind, common.threads); };

  int tmax = 2;
  int umax = 5;
  auto* conifold_cmd = app.add_subcommand("conifold", "Conifold product prod (1 + T u^k)^k");
  add_cap(conifold_cmd, "--tmax", tmax, "Cap on T");
  add_cap(conifold_cmd, "--umax", umax, "Cap on u");
  add_common(conifold_cmd, common);
  handlers["conifold"] = [&] { return run_conifold(tmax, umax); };

  int rmax = 3;
  int wall_nmax = 15;
  std::string sign = "plain";
  auto* wall_cmd = app.add_subcommand("wallcross-check", "Wallcrossing factorization checks");
  add_germ(wall_cmd, germ);
  add_cap(wall_cmd, "--rmax", rmax, "Cap on r");
  add_cap(wall_cmd, "--nmax", wall_nmax, "Cap on n");
  wall_cmd->add_option("--sign", sign, "Conifold sign convention")
      ->check(CLI::IsMember({"plain", "alternating"}))
      ->capture_default_str();
  add_common(wall_cmd, common);
  handlers["wallcross-check"] = [&] { return run_wallcross_check(germ, rmax, wall_nmax, sign, common.threads); };

  int kmax = 3;
  int quiver_rmax = 3;
  int quiver_nmax = 4;
  int Nmax = 4;
  auto* quiver_cmd = app.add_subcommand("quiver-audit", "Weight-exponent audit for the local P^2 quiver");
  add_cap(quiver_cmd, "--kmax", kmax, "Cap on k");
  quiver_cmd->add_option("--rmax", quiver_rmax, "Cap on r")->check(CLI::NonNegativeNumber)->capture_default_str();
  quiver_cmd->add_option("--nmax", quiver_nmax, "Cap on |n|")->check(CLI::NonNegativeNumber)->capture_default_str();
  quiver_cmd->add_option("--Nmax", Nmax, "Cap on N")->check(CLI::NonNegativeNumber)->capture_default_str();
  add_common(quiver_cmd, common);
  handlers["quiver-audit"] = [&] { return run_quiver_audit(kmax, quiver_rmax, quiver_nmax, Nmax); };

  int gv_umax = 12;
  auto* gv_cmd = app.add_subcommand("gv-expand", "Gopakumar-Vafa expansion of the small-b series");
  add_germ(gv_cmd, germ);
  add_cap(gv_cmd, "--umax", gv_umax, "Cap on u");
  add_common(gv_cmd, common);
  handlers["gv-expand"] = [&] { return run_gv_expand(germ, gv_umax, common.threads); };

  int lmax = 3;
  auto* pc_cmd = app.add_subcommand("oracle-pointcount", "Finite-field ideal counts fitted to polynomials");
  add_germ(pc_cmd, germ);
  add_cap(pc_cmd, "--nmax", lmax, "Largest colength (at most 5)");
  add_common(pc_cmd, common);
  handlers["oracle-pointcount"] = [&] { return run_oracle_pointcount(germ, lmax); };

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    const Report rep = handlers.at(command)();
    emit(command, common, rep, out);
    return rep.passed ? kExitOk : kExitCheckFailed;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitCheckFailed;
  }
}

}  // namespace oslab::cli
