#include <cstdio>
#include <iostream>

#include <CLI11.hpp>

#include "ghat/io.hpp"
#include "ghat/multiplier.hpp"
#include "verify_suite.hpp"

using namespace ghat;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitPropertyFailure = 1;
constexpr int kExitUsage = 2;

struct CliConfig {
  std::string group_spec = "su2";
  double band = 72.0;
  int margin = 3;
  std::uint64_t seed = 1;
  std::string out_path;
  std::vector<std::string> tol_kv;
  bool sweep_bands = false;

  RunConfig to_run_config() const {
    RunConfig rc;
    rc.group = parse_group_spec(group_spec);
    rc.band = band;
    rc.margin = margin;
    rc.seed = seed;
    rc.out_path = out_path;
    for (const auto& kv : tol_kv) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw error("bad --tolerance entry: " + kv);
      rc.tolerances[kv.substr(0, eq)] = std::atof(kv.c_str() + eq + 1);
    }
    return rc;
  }
};

void add_common(CLI::App* cmd, CliConfig& cfg) {
  cmd->add_option("--group", cfg.group_spec, "torus:d | su2 | product:a,b,...");
  cmd->add_option("--band", cfg.band, "Casimir cutoff Lambda");
  cmd->add_option("--margin", cfg.margin, "frequency support margin");
  cmd->add_option("--seed", cfg.seed, "RNG seed");
  cmd->add_option("--out", cfg.out_path, "output path (default stdout)");
  cmd->add_option("--tolerance", cfg.tol_kv, "override tolerance, key=value")->take_all();
}

void emit(const CliConfig& cfg, const std::string& content) {
  if (cfg.out_path.empty())
    std::fputs(content.c_str(), stdout);
  else
    write_text_file(cfg.out_path, content);
}

Field make_symbol(const std::string& spec, const DualPtr& dual, const CliConfig& cfg) {
  if (spec == "identity") return identity_symbol(dual);
  if (spec == "zero") return zero_symbol(dual);
  if (spec.rfind("fourier_x:", 0) == 0) {
    std::vector<int> beta;
    std::stringstream ss(spec.substr(10));
    std::string tok;
    while (std::getline(ss, tok, ',')) beta.push_back(std::atoi(tok.c_str()));
    if (static_cast<int>(beta.size()) != dual->group().dim())
      throw error("fourier_x needs dim(G) = " + std::to_string(dual->group().dim()) +
                  " exponents");
    return fourier_of_monomial(dual, beta);
  }
  if (spec.rfind("spectral:heat:", 0) == 0) {
    const double t = std::atof(spec.c_str() + 14);
    if (t <= 0) throw error("heat time must be positive");
    return heat_symbol(dual, t);
  }
  if (spec.rfind("spectral:imagpow:", 0) == 0) {
    const double a = std::atof(spec.c_str() + 17);
    return spectral_symbol(dual, [a](double lam) -> cplx {
      if (lam <= 0.0) return 1.0;
      return std::exp(cplx(0.0, a * std::log(lam)));
    });
  }
  if (spec.rfind("random:", 0) == 0) {
    const double decay = std::atof(spec.c_str() + 7);
    return random_symbol(dual, cfg.margin, cfg.seed, decay);
  }
  if (spec == "sign") {
    if (dual->group().torus_angles() == 0) throw error("sign symbol needs a torus coordinate");
    return scalar_symbol(dual, [](const IrrepLabel& l) -> cplx {
      return l.torus[0] > 0 ? 1.0 : (l.torus[0] < 0 ? -1.0 : 0.0);
    });
  }
  if (spec == "parity") {
    return scalar_symbol(dual, [](const IrrepLabel& l) -> cplx {
      const long k = l.su2.empty() ? l.torus[0] : l.su2[0];
      return (k % 2 == 0) ? 1.0 : -1.0;
    });
  }
  throw error("unknown symbol spec: " + spec);
}

int cmd_transform(const CliConfig& cfg, const std::string& in_csv, bool roundtrip) {
  const GroupDescriptor G = parse_group_spec(cfg.group_spec);
  const DualPtr dual = Dual::make(G, cfg.band);
  const RulePtr rule = haar_quadrature(G, label_bound(G, cfg.band));
  const GridFunction f = grid_from_csv(in_csv, rule);
  const Field sym = forward_transform(f, dual);
  if (roundtrip) {
    const GridFunction back = inverse_transform(sym, rule);
    double num = 0.0, den = 0.0;
    for (long k = 0; k < f.values.size(); ++k) {
      num += std::norm(back.values(k) - f.values(k));
      den += std::norm(f.values(k));
    }
    const double rel = std::sqrt(num / std::max(1e-300, den));
    std::fprintf(stderr, "roundtrip relative error %.3e\n", rel);
    if (rel > 1e-10) return kExitPropertyFailure;
  }
  emit(cfg, symbol_to_json(sym));
  return kExitPass;
}

int cmd_symbol(const CliConfig& cfg, const std::string& make_spec) {
  const GroupDescriptor G = parse_group_spec(cfg.group_spec);
  const DualPtr dual = Dual::make(G, cfg.band);
  Field sym = make_symbol(make_spec, dual, cfg);
  if (sym.margin() == 0) sym.set_margin(sym.measured_margin());
  emit(cfg, symbol_to_json(sym));
  return kExitPass;
}

struct CheckerChoice {
  bool mihlin = false, hormander = false, marcinkiewicz = false;
  int s = -1, s0 = 1;
};

std::string checker_report_json(const std::string& checker, double s_or_s0, double constant,
                                const std::vector<BlockValue>& blocks, double band,
                                const std::string& verdict, double threshold) {
  JsonWriter w;
  w.begin_object();
  w.kv("checker", checker);
  w.kv(checker == "marcinkiewicz" ? "s0" : "s", s_or_s0);
  w.kv("constant", constant);
  w.key("per_block");
  w.begin_array();
  for (const auto& b : blocks) {
    w.begin_object();
    w.kv("j", long(b.j));
    w.kv("value", b.value);
    w.end_object();
  }
  w.end_array();
  w.kv("band", band);
  w.kv("verdict_threshold", threshold);
  w.kv("verdict", verdict);
  w.end_object();
  return w.str();
}

int cmd_check(const CliConfig& cfg, const std::string& symbol_file, const std::string& make_spec,
              const CheckerChoice& ch) {
  const double growth_tol = cfg.to_run_config().tol("band_stability", 0.2);
  auto build = [&](double band) -> Field {
    if (!make_spec.empty()) {
      const GroupDescriptor G = parse_group_spec(cfg.group_spec);
      const DualPtr dual = Dual::make(G, band);
      return make_symbol(make_spec, dual, cfg);
    }
    Field s = symbol_from_json_file(symbol_file);
    return s;
  };

  std::vector<double> bands{cfg.band};
  if (cfg.sweep_bands) {
    if (make_spec.empty())
      throw error("--sweep-bands needs --make (a fixed-band symbol file cannot be rescaled)");
    bands = {cfg.band / 4.0, cfg.band / 2.0, cfg.band};
  }

  std::vector<double> constants;
  std::string report;
  for (double band : bands) {
    const Field sym = build(band);
    const double sym_band = sym.dual()->lambda_max();
    const int n = sym.dual()->group().dim();
    double constant = 0.0;
    std::vector<BlockValue> blocks;
    std::string checker;
    double s_or_s0 = 0;
    if (ch.mihlin) {
      checker = "mihlin";
      const MihlinReport r = mihlin_constant(sym);
      constant = r.value;
      s_or_s0 = r.smax;
      for (int k = 0; k <= r.smax; ++k) blocks.push_back({k, r.per_order[k]});
    } else if (ch.hormander) {
      checker = "hormander";
      const int s = ch.s > 0 ? ch.s : n / 2 + 1;
      const HormanderReport r = hormander_norm(sym, s, make_partition(CutoffShape::Bump));
      constant = r.value;
      s_or_s0 = s;
      blocks = r.blocks;
    } else {
      checker = "marcinkiewicz";
      const MarcinkiewiczReport r = marcinkiewicz_constant(sym, ch.s0);
      constant = r.value;
      s_or_s0 = ch.s0;
      blocks = r.blocks;
    }
    constants.push_back(constant);
    std::string verdict = "finite";
    if (cfg.sweep_bands && band == bands.back()) {
      double lo = constants[0], hi = constants[0];
      for (double c : constants) {
        lo = std::min(lo, c);
        hi = std::max(hi, c);
      }
      verdict = (hi <= (1.0 + growth_tol) * lo) ? "stable" : "fails";
    }
    report = checker_report_json(checker, s_or_s0, constant, blocks, sym_band, verdict,
                                 1.0 + growth_tol);
  }
  emit(cfg, report + "\n");
  if (cfg.sweep_bands) {
    double lo = constants[0], hi = constants[0];
    for (double c : constants) {
      lo = std::min(lo, c);
      hi = std::max(hi, c);
    }
    if (hi > (1.0 + growth_tol) * lo) return kExitPropertyFailure;
  }
  return kExitPass;
}

int cmd_norm(const CliConfig& cfg, const std::string& symbol_file, const std::string& kind,
             double s) {
  const Field sym = symbol_from_json_file(symbol_file);
  JsonWriter w;
  w.begin_object();
  w.kv("norm_kind", kind);
  w.kv("s", s);
  if (kind == "diff") {
    w.kv("value", hs_norm_diffside(sym, static_cast<int>(s)));
    w.kv("quadrature_error_estimate", 0.0);
  } else {
    WeightKind wk;
    if (kind == "q1pow")
      wk = WeightKind::Q1Pow;
    else if (kind == "qs")
      wk = WeightKind::Qs;
    else if (kind == "dist")
      wk = WeightKind::DistPow;
    else
      throw error("norm: kind must be diff | q1pow | qs | dist");
    const auto est = hs_norm_kernelside_refined(sym, s, wk);
    w.kv("value", est.value);
    w.kv("quadrature_error_estimate", est.quadrature_error_estimate);
  }
  w.kv("band", sym.dual()->lambda_max());
  w.kv("margin", long(sym.margin()));
  w.end_object();
  emit(cfg, w.str() + "\n");
  return kExitPass;
}

int cmd_verify(const CliConfig& cfg) {
  const RunConfig rc = cfg.to_run_config();
  const auto results = run_invariant_suite(rc);
  emit(cfg, suite_to_json(rc, results) + "\n");
  for (const auto& r : results)
    if (r.status == "fail") return kExitPropertyFailure;
  return kExitPass;
}

int cmd_bench(const CliConfig& cfg, bool heat_scaling, bool imaginary_powers, bool moments,
              int s_flag) {
  const GroupDescriptor G = parse_group_spec(cfg.group_spec);
  const int n = G.dim();
  const int s = s_flag > 0 ? s_flag : n / 2 + 1;
  std::ostringstream csv;
  csv << "# parameter,value,fitted_slope\n";
  if (heat_scaling) {
    std::vector<double> ts;
    for (double t = std::exp2(-10.0); t <= std::exp2(-4.0) * 1.0001; t *= std::sqrt(2.0))
      ts.push_back(t);
    const SlopeFit fit = heat_scaling_probe(G, unit_bump(), s, ts);
    for (size_t i = 0; i < fit.t.size(); ++i)
      csv << JsonWriter::number(fit.t[i]) << "," << JsonWriter::number(fit.value[i]) << ","
          << JsonWriter::number(fit.slope) << "\n";
    const double target = 0.5 * (s - 0.5 * n);
    emit(cfg, csv.str());
    std::fprintf(stderr, "heat-scaling slope %.4f target %.4f\n", fit.slope, target);
    return std::abs(fit.slope - target) <= 0.1 * std::abs(target) ? kExitPass
                                                                  : kExitPropertyFailure;
  }
  if (imaginary_powers) {
    const DualPtr dual = Dual::make(G, cfg.band);
    const std::vector<double> alphas{0.0, 0.5, 1.0, 2.0, 4.0, 8.0};
    const auto rows = imaginary_power_probe(dual, s, alphas, make_partition(CutoffShape::Bump));
    bool monotone = true;
    for (size_t i = 1; i < rows.size(); ++i)
      if (rows[i].hormander < rows[i - 1].hormander * (1.0 - 0.05)) monotone = false;
    for (const auto& r : rows)
      csv << JsonWriter::number(r.alpha) << "," << JsonWriter::number(r.hormander) << ","
          << JsonWriter::number(r.lu_sobolev) << "\n";
    emit(cfg, csv.str());
    return monotone ? kExitPass : kExitPropertyFailure;
  }
  if (moments) {
    const DualPtr dual = Dual::make(G, cfg.band);
    const RulePtr rule = haar_quadrature(G, label_bound(G, cfg.band));
    double tlo = 1e-4;
    while (tlo < 64.0 && heat_tail(G, cfg.band, tlo) >= 1e-13) tlo *= 1.25;
    if (tlo >= 64.0) throw error("bench --moments: no admissible t for this band");
    std::vector<double> ts, m2;
    for (double t = tlo; t <= 4.0 * tlo * 1.0001; t *= std::sqrt(2.0)) ts.push_back(t);
    for (double t : ts) m2.push_back(heat_moment(heat_kernel(dual, rule, t), 2.0));
    const double slope = fit_loglog_slope(ts, m2);
    for (size_t i = 0; i < ts.size(); ++i)
      csv << JsonWriter::number(ts[i]) << "," << JsonWriter::number(m2[i]) << ","
          << JsonWriter::number(slope) << "\n";
    emit(cfg, csv.str());
    return std::abs(slope - 1.0) <= 0.1 ? kExitPass : kExitPropertyFailure;
  }
  throw error("bench: choose --heat-scaling | --imaginary-powers | --moments");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"differential calculus and multiplier checkers on the dual of a compact group"};
  app.require_subcommand(1);

  CliConfig cfg;

  auto* transform = app.add_subcommand("transform", "forward transform of a grid CSV");
  std::string in_csv;
  bool roundtrip = false;
  add_common(transform, cfg);
  transform->add_option("--in", in_csv, "input CSV (index,re,im per node)")->required();
  transform->add_flag("--roundtrip", roundtrip, "verify inversion");

  auto* symbol = app.add_subcommand("symbol", "write a built-in symbol as JSON");
  std::string make_spec;
  add_common(symbol, cfg);
  symbol
      ->add_option("--make", make_spec,
                   "identity | zero | fourier_x:b1,..,bn | spectral:heat:t | "
                   "spectral:imagpow:a | random:decay | sign | parity")
      ->required();

  auto* check = app.add_subcommand("check", "run a multiplier condition checker");
  std::string symbol_file, check_make;
  CheckerChoice ch;
  add_common(check, cfg);
  check->add_option("--symbol", symbol_file, "symbol JSON file");
  check->add_option("--make", check_make, "built-in symbol instead of a file");
  check->add_flag("--mihlin", ch.mihlin);
  check->add_flag("--hormander", ch.hormander);
  check->add_flag("--marcinkiewicz", ch.marcinkiewicz);
  check->add_option("--s", ch.s, "Sobolev order for --hormander");
  check->add_option("--s0", ch.s0, "difference order for --marcinkiewicz");
  check->add_flag("--sweep-bands", cfg.sweep_bands, "measure stability across band sizes");

  auto* norm = app.add_subcommand("norm", "Sobolev norm report for a symbol file");
  std::string norm_file, norm_kind = "diff";
  double norm_s = 1.0;
  add_common(norm, cfg);
  norm->add_option("--symbol", norm_file, "symbol JSON file")->required();
  norm->add_option("--kind", norm_kind, "diff | q1pow | qs | dist");
  norm->add_option("--s", norm_s, "Sobolev order");

  auto* verify = app.add_subcommand("verify", "run the invariant suites");
  add_common(verify, cfg);

  auto* bench = app.add_subcommand("bench", "scaling benchmarks (CSV output)");
  bool b_heat = false, b_imag = false, b_mom = false;
  int s_flag = -1;
  add_common(bench, cfg);
  bench->add_flag("--heat-scaling", b_heat);
  bench->add_flag("--imaginary-powers", b_imag);
  bench->add_flag("--moments", b_mom);
  bench->add_option("--s", s_flag, "Sobolev order");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (app.got_subcommand(transform)) return cmd_transform(cfg, in_csv, roundtrip);
    if (app.got_subcommand(symbol)) return cmd_symbol(cfg, make_spec);
    if (app.got_subcommand(check)) {
      if (int(ch.mihlin) + int(ch.hormander) + int(ch.marcinkiewicz) != 1)
        throw error("check: pass exactly one of --mihlin | --hormander | --marcinkiewicz");
      if (symbol_file.empty() == check_make.empty())
        throw error("check: pass exactly one of --symbol | --make");
      return cmd_check(cfg, symbol_file, check_make, ch);
    }
    if (app.got_subcommand(norm)) return cmd_norm(cfg, norm_file, norm_kind, norm_s);
    if (app.got_subcommand(verify)) return cmd_verify(cfg);
    if (app.got_subcommand(bench)) return cmd_bench(cfg, b_heat, b_imag, b_mom, s_flag);
  } catch (const ghat::error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
  return kExitUsage;
}
