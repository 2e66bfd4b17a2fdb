#include "commands.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include <gausscap/active.hpp>
#include <gausscap/capacity.hpp>
#include <gausscap/channel_io.hpp>
#include <gausscap/errors.hpp>
#include <gausscap/mode_decomposition.hpp>
#include <gausscap/random_ensembles.hpp>

#include "expression.hpp"
#include "json_config.hpp"

namespace gausscap::cli {

namespace {

using json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const std::vector<std::string> kMethodNames = {"holevo",     "het",      "hom",
                                               "classical", "heterodyne", "homodyne"};

constexpr const char* kConfigFooter =
    "Any flag may also come from a JSON object passed as --config FILE (keys are the long "
    "flag names without dashes); flags given on the command line take precedence.";

// Options shared by every subcommand.
struct Common {
  std::string format;
  std::string output;
  Tolerances tol;
};

void add_common(CLI::App* sub, Common& c, const std::string& default_format) {
  c.format = default_format;
  sub->add_option("--format", c.format, "Report format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  sub->add_option("--output,-o", c.output, "Write the report to FILE instead of stdout");
  auto* g = sub->add_option_group("tolerances", "Numeric tolerances");
  g->add_option("--tol-block-form", c.tol.block_form, "Block-form detection, max-abs")
      ->capture_default_str();
  g->add_option("--tol-thermal-noise", c.tol.thermal_noise,
                "Match of Y against the thermal form")
      ->capture_default_str();
  g->add_option("--tol-validity", c.tol.validity, "Channel validity, min eigenvalue")
      ->capture_default_str();
  sub->footer(kConfigFooter);
}

void add_noise(CLI::App* sub, NoiseParams& noise) {
  sub->add_option("--n", noise.n, "Thermal photons per environment mode")->capture_default_str();
  sub->add_option("--xi", noise.xi, "Additive noise photons")->capture_default_str();
}

void add_hom_basis(CLI::App* sub, std::string& basis) {
  basis = "normal";
  sub->add_option("--hom-basis", basis,
                  "Homodyne on general channels: 'normal' rotates to the singular modes and "
                  "modulates q only, 'raw' measures q of the given outputs")
      ->check(CLI::IsMember({"normal", "raw"}))
      ->capture_default_str();
}

HomodyneBasis homodyne_basis(const std::string& s) {
  return s == "raw" ? HomodyneBasis::raw : HomodyneBasis::normal_modes;
}

std::pair<int, int> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  const std::string lo = text.substr(0, dots);
  const std::string hi = dots == std::string::npos ? lo : text.substr(dots + 2);
  auto to_int = [&](const std::string& s) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
      throw UsageError("--N-range expects a..b, got \"" + text + "\"");
    }
    return v;
  };
  const int a = to_int(lo);
  const int b = to_int(hi);
  if (a < 1 || b < a) throw UsageError("--N-range needs 1 <= a <= b, got \"" + text + "\"");
  return {a, b};
}

std::vector<ModeParams> rule_modes(const Expression& rule, int n_modes, const NoiseParams& noise) {
  std::vector<ModeParams> modes;
  for (int k = 1; k <= n_modes; ++k) {
    const double lambda = rule.eval({{"k", k}, {"N", n_modes}});
    modes.push_back({lambda, noise.n, noise.xi});
  }
  return modes;
}

void check_power(double p) {
  if (!(p >= 0.0) || !std::isfinite(p)) {
    throw Error(ErrorCode::NegativeArgument,
                "total power P must be finite and >= 0, got " + format_number(p));
  }
}

void check_modes(const std::vector<ModeParams>& modes) {
  for (const auto& m : modes) {
    if (!(m.lambda >= 0.0) || !std::isfinite(m.lambda)) {
      throw Error(ErrorCode::NegativeArgument,
                  "transmission lambda must be finite and >= 0, got " + format_number(m.lambda));
    }
  }
}

// Capacity of parallel single-mode channels. With uniform power each of the
// n_in inputs carries P/n_in and only the first min(n_in, modes) singular
// modes are driven.
CapacityResult diagonal_capacity(const std::vector<ModeParams>& modes, std::size_t n_in,
                                 double power, Method method, bool waterfill) {
  if (method == Method::classical) {
    std::vector<double> lambdas;
    for (const auto& m : modes) lambdas.push_back(m.lambda);
    const double xi = modes.empty() ? 0.0 : modes.front().xi;
    if (waterfill) return classical_capacity(lambdas, xi, power);
  } else if (waterfill) {
    if (method == Method::holevo) return waterfill_holevo(modes, power);
    return waterfill_het_hom(modes, power,
                             method == Method::heterodyne ? Receiver::heterodyne
                                                          : Receiver::homodyne);
  }

  CapacityResult r;
  r.method = method;
  r.allocation.total = power;
  r.allocation.per_mode.assign(modes.size(), 0.0);
  const std::size_t driven = std::min(n_in, modes.size());
  for (std::size_t j = 0; j < driven; ++j) {
    r.allocation.per_mode[j] = power / static_cast<double>(n_in);
  }
  for (std::size_t j = 0; j < modes.size(); ++j) {
    r.bits += single_mode_capacity(method, modes[j], r.allocation.per_mode[j]);
  }
  if (method != Method::classical) {
    // Same argument checks as the library sums.
    r.bits = method == Method::holevo ? holevo_diagonal(modes, r.allocation)
                                      : het_hom_per_mode(modes, r.allocation,
                                                         method == Method::heterodyne
                                                             ? Receiver::heterodyne
                                                             : Receiver::homodyne);
  }
  return r;
}

json number_or_null(std::optional<double> v) {
  if (v && std::isfinite(*v)) return *v;
  return nullptr;
}

void emit(const std::string& text, const Common& c, std::ostream& out) {
  if (c.output.empty()) {
    out << text;
    return;
  }
  std::ofstream f(c.output, std::ios::binary);
  if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write " + c.output);
  f << text;
}

// Rows of string cells, rendered as CSV or as a JSON array of objects.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<json>> rows;

  std::string render(const std::string& format) const {
    if (format == "json") {
      json arr = json::array();
      for (const auto& row : rows) {
        json obj = json::object();
        for (std::size_t i = 0; i < header.size(); ++i) obj[header[i]] = row[i];
        arr.push_back(std::move(obj));
      }
      return arr.dump(2) + "\n";
    }
    std::string s;
    for (std::size_t i = 0; i < header.size(); ++i) s += (i ? "," : "") + header[i];
    s += '\n';
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) s += ',';
        const json& cell = row[i];
        if (cell.is_number_float()) s += format_number(cell.get<double>());
        else if (cell.is_number()) s += cell.dump();
        else if (cell.is_string()) s += cell.get<std::string>();
      }
      s += '\n';
    }
    return s;
  }
};

// ---- capacity ---------------------------------------------------------------

struct CapacityArgs {
  Common common;
  std::string channel_file;
  std::vector<double> lambdas;
  std::string lambdas_rule;
  int n_modes = 0;
  NoiseParams noise;
  double power = 0.0;
  std::string method;
  std::string alloc = "uniform";
  std::string hom_basis;
};

void setup_capacity(CLI::App& app, CapacityArgs& a) {
  auto* sub = app.add_subcommand("capacity", "Capacity of one channel");
  auto* file = sub->add_option("--channel", a.channel_file, "Channel JSON file");
  auto* lam = sub->add_option("--lambdas", a.lambdas,
                              "Singular-mode transmissions, comma separated")
                  ->delimiter(',');
  auto* rule = sub->add_option("--lambdas-rule", a.lambdas_rule,
                               "Transmission of mode k = 1..N as an expression in k and N");
  auto* nm = sub->add_option("--N", a.n_modes, "Number of modes for --lambdas-rule")
                 ->check(CLI::PositiveNumber);
  file->excludes(lam)->excludes(rule);
  lam->excludes(rule)->excludes(nm);
  rule->needs(nm);
  nm->needs(rule);
  add_noise(sub, a.noise);
  for (const char* name : {"--n", "--xi"}) sub->get_option(name)->excludes(file);
  sub->add_option("--power,-P", a.power, "Total mean photon number")->required();
  sub->add_option("--method", a.method, "holevo|het|hom|classical")
      ->required()
      ->check(CLI::IsMember(kMethodNames));
  sub->add_option("--alloc", a.alloc, "Power allocation")
      ->check(CLI::IsMember({"uniform", "waterfill"}))
      ->capture_default_str();
  add_hom_basis(sub, a.hom_basis);
  add_common(sub, a.common, "json");
}

std::string cmd_capacity(const CapacityArgs& a) {
  if (a.channel_file.empty() && a.lambdas.empty() && a.lambdas_rule.empty()) {
    throw UsageError("capacity needs --channel, --lambdas or --lambdas-rule with --N");
  }
  check_power(a.power);
  const Method method = parse_method(a.method);
  const bool waterfill = a.alloc == "waterfill";

  std::vector<ModeParams> modes;
  std::size_t n_in = 0;
  CapacityResult result;
  bool diagonal = true;
  std::optional<GaussianChannel> ch;

  if (!a.channel_file.empty()) {
    ch = load_channel_file(a.channel_file);
    require_valid(*ch, a.common.tol.validity);
    n_in = static_cast<std::size_t>(ch->in_modes());
    const bool raw_hom = method == Method::homodyne && a.hom_basis == "raw";
    diagonal = !raw_hom && is_block_form(ch->hs().matrix(), a.common.tol.block_form);
    if (diagonal) {
      try {
        modes = diagonal_channel_params(*ch, a.common.tol);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::NonThermalNoise) throw;
        diagonal = false;
      }
    }
  } else {
    a.noise.validate();
    if (!a.lambdas.empty()) {
      for (double l : a.lambdas) modes.push_back({l, a.noise.n, a.noise.xi});
    } else {
      modes = rule_modes(Expression::parse(a.lambdas_rule), a.n_modes, a.noise);
    }
    n_in = modes.size();
  }

  if (diagonal) {
    check_modes(modes);
    result = diagonal_capacity(modes, n_in, a.power, method, waterfill);
  } else {
    if (waterfill) {
      throw Error(ErrorCode::NotBlockForm,
                  "--alloc waterfill needs a block-form channel with thermal noise");
    }
    ChannelEvalOptions opts;
    opts.homodyne_basis = homodyne_basis(a.hom_basis);
    opts.tol = a.common.tol;
    result.bits = evaluate_channel(*ch, a.power, method, opts).bits;
    result.allocation = uniform_allocation(n_in, a.power);
  }

  if (a.common.format == "csv") {
    Table t;
    t.header = {"method", "alloc", "power", "bits", "waterlevel"};
    t.rows.push_back({to_string(method), a.alloc, a.power, result.bits,
                      result.waterlevel && std::isfinite(*result.waterlevel)
                          ? json(*result.waterlevel)
                          : json("")});
    return t.render("csv");
  }

  json doc;
  doc["method"] = to_string(method);
  doc["alloc"] = a.alloc;
  doc["power"] = a.power;
  doc["modes"] = n_in;
  doc["diagonal"] = diagonal;
  doc["bits"] = result.bits;
  doc["allocation"] = result.allocation.per_mode;
  if (diagonal) {
    json lam = json::array();
    for (const auto& m : modes) lam.push_back(m.lambda);
    doc["lambdas"] = lam;
  }
  doc["waterlevel"] = number_or_null(result.waterlevel);
  return doc.dump(2) + "\n";
}

// ---- sweep-modes ------------------------------------------------------------

struct SweepArgs {
  Common common;
  std::string n_range;
  std::string lambdas_rule = "1";
  NoiseParams noise;
  double power = 0.0;
  std::vector<std::string> methods = {"holevo", "het", "hom"};
  std::vector<std::string> allocs = {"uniform"};
};

void setup_sweep(CLI::App& app, SweepArgs& a) {
  auto* sub = app.add_subcommand("sweep-modes", "Capacity against the number of modes N");
  sub->add_option("--N-range", a.n_range, "Mode counts a..b")->required();
  sub->add_option("--lambdas-rule", a.lambdas_rule,
                  "Transmission of mode k = 1..N as an expression in k and N")
      ->capture_default_str();
  add_noise(sub, a.noise);
  sub->add_option("--power,-P", a.power, "Total mean photon number")->required();
  sub->add_option("--method", a.methods, "Methods, comma separated")
      ->delimiter(',')
      ->check(CLI::IsMember(kMethodNames))
      ->capture_default_str();
  sub->add_option("--alloc", a.allocs, "Allocations, comma separated")
      ->delimiter(',')
      ->check(CLI::IsMember({"uniform", "waterfill"}))
      ->capture_default_str();
  add_common(sub, a.common, "csv");
}

std::string cmd_sweep(const SweepArgs& a) {
  const auto [lo, hi] = parse_range(a.n_range);
  check_power(a.power);
  const Expression rule = Expression::parse(a.lambdas_rule);
  a.noise.validate();
  std::vector<Method> methods;
  for (const auto& m : a.methods) methods.push_back(parse_method(m));

  Table t;
  t.header = {"N", "method", "alloc", "bits"};
  for (int n = lo; n <= hi; ++n) {
    const auto modes = rule_modes(rule, n, a.noise);
    check_modes(modes);
    for (Method m : methods) {
      for (const auto& alloc : a.allocs) {
        const auto r = diagonal_capacity(modes, modes.size(), a.power, m, alloc == "waterfill");
        t.rows.push_back({n, to_string(m), alloc, r.bits});
      }
    }
  }
  return t.render(a.common.format);
}

// ---- random -----------------------------------------------------------------

struct RandomArgs {
  Common common;
  int n_modes = 0;
  std::string n_range;
  std::string k_rule = "N";
  std::string m_rule = "N";
  NoiseParams noise;
  double sigma2 = 0.0;
  std::string mode = "analytic";
  int samples = 1000;
  std::uint64_t seed = 0;
  CLI::Option* seed_opt = nullptr;
  double power = 0.0;
  std::vector<std::string> methods = {"holevo"};
  unsigned threads = 1;
  CLI::Option* threads_opt = nullptr;
  std::string hom_basis;
  bool allow_rect = false;
  bool waterfill = false;
  std::string dump_samples;
};

void add_ensemble_shape(CLI::App* sub, int& n_modes, std::string& n_range, std::string& k_rule,
                        std::string& m_rule) {
  auto* n = sub->add_option("--N", n_modes, "Transmitter modes")->check(CLI::PositiveNumber);
  auto* r = sub->add_option("--N-range", n_range, "Transmitter modes a..b");
  n->excludes(r);
  sub->add_option("--K", k_rule, "Receiver modes, expression in N")->capture_default_str();
  sub->add_option("--M", m_rule, "Environment modes, expression in N")->capture_default_str();
}

std::vector<int> n_values(int n_modes, const std::string& n_range) {
  if (!n_range.empty()) {
    const auto [lo, hi] = parse_range(n_range);
    std::vector<int> v;
    for (int n = lo; n <= hi; ++n) v.push_back(n);
    return v;
  }
  if (n_modes < 1) throw UsageError("give --N or --N-range");
  return {n_modes};
}

EnsembleSpec ensemble_for(int n, const Expression& k_rule, const Expression& m_rule,
                          const NoiseParams& noise, double sigma2, std::uint64_t seed) {
  EnsembleSpec spec;
  spec.n_in = n;
  spec.k_out = eval_integer(k_rule, {{"N", n}});
  spec.m_env = eval_integer(m_rule, {{"N", n}});
  spec.noise = noise;
  spec.sigma2 = sigma2;
  spec.seed = seed;
  spec.validate();
  return spec;
}

void setup_random(CLI::App& app, RandomArgs& a) {
  auto* sub = app.add_subcommand("random", "Expected capacity of random channels");
  add_ensemble_shape(sub, a.n_modes, a.n_range, a.k_rule, a.m_rule);
  add_noise(sub, a.noise);
  sub->add_option("--sigma2", a.sigma2, "Squeezing variance; 0 gives passive channels")
      ->capture_default_str();
  sub->add_option("--mode", a.mode, "analytic (density quadrature) or mc")
      ->check(CLI::IsMember({"analytic", "mc"}))
      ->capture_default_str();
  sub->add_option("--samples", a.samples, "Monte Carlo samples")
      ->check(CLI::Range(2, 100000000))
      ->capture_default_str();
  a.seed_opt = sub->add_option("--seed", a.seed, "Monte Carlo seed, required with --mode mc");
  sub->add_option("--power,-P", a.power, "Total mean photon number")->required();
  sub->add_option("--method", a.methods, "Methods, comma separated")
      ->delimiter(',')
      ->check(CLI::IsMember(kMethodNames))
      ->capture_default_str();
  a.threads_opt =
      sub->add_option("--threads", a.threads,
                      "Worker threads, else $GAUSSCAP_THREADS; results do not depend on it")
          ->check(CLI::Range(1u, 4096u))
          ->capture_default_str();
  add_hom_basis(sub, a.hom_basis);
  sub->add_flag("--allow-rect-active", a.allow_rect,
                "Allow K > N for active channels, taking receiver rows from environment "
                "outputs");
  sub->add_flag("--waterfill", a.waterfill,
                "Water-fill power within each passive sample instead of splitting it evenly "
                "(mc, sigma2 = 0)");
  sub->add_option("--dump-samples", a.dump_samples,
                  "Write per-sample index,bits,max_singular_sq to FILE (mc, one configuration)");
  add_common(sub, a.common, "csv");
}

unsigned threads_from_env() {
  const char* env = std::getenv("GAUSSCAP_THREADS");
  if (env == nullptr || *env == '\0') return 1;
  const std::string_view text(env);
  unsigned v = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || end != text.data() + text.size() || v < 1 || v > 4096) {
    throw UsageError("GAUSSCAP_THREADS must be an integer in [1, 4096], got '" +
                     std::string(text) + "'");
  }
  return v;
}

std::string cmd_random(const RandomArgs& a) {
  const bool mc = a.mode == "mc";
  if (mc && a.seed_opt->count() == 0) throw UsageError("--mode mc needs --seed");
  if (!mc && a.sigma2 != 0.0) {
    throw UsageError("--sigma2 > 0 needs --mode mc; the density only covers passive channels");
  }
  if (a.waterfill && (!mc || a.sigma2 != 0.0)) {
    throw UsageError("--waterfill needs --mode mc with --sigma2 0");
  }
  const auto ns = n_values(a.n_modes, a.n_range);
  check_power(a.power);
  std::vector<Method> methods;
  for (const auto& m : a.methods) methods.push_back(parse_method(m));
  if (!a.dump_samples.empty() && (!mc || ns.size() * methods.size() != 1)) {
    throw UsageError("--dump-samples needs --mode mc with one N and one method");
  }

  const Expression k_rule = Expression::parse(a.k_rule);
  const Expression m_rule = Expression::parse(a.m_rule);
  std::vector<EnsembleSpec> specs;
  for (int n : ns) specs.push_back(ensemble_for(n, k_rule, m_rule, a.noise, a.sigma2, a.seed));
  if (mc && a.sigma2 > 0.0 && !a.allow_rect) {
    for (const auto& s : specs) {
      if (s.k_out > s.n_in) {
        throw Error(ErrorCode::RectangularActive,
                    "active channels need K <= N (N=" + std::to_string(s.n_in) +
                        ", K=" + std::to_string(s.k_out) + "); see --allow-rect-active");
      }
    }
  }

  McOptions opts;
  opts.samples = a.samples;
  opts.threads = a.threads_opt->count() ? a.threads : threads_from_env();
  opts.eval.waterfill = a.waterfill;
  opts.eval.homodyne_basis = homodyne_basis(a.hom_basis);
  opts.eval.tol = a.common.tol;
  opts.allow_rect_active = a.allow_rect;

  Table t;
  t.header = {"N", "K", "M", "sigma2", "method", "mode", "bits", "stderr"};
  std::vector<SampleRecord> dumped;
  for (const auto& spec : specs) {
    for (Method m : methods) {
      if (!mc) {
        t.rows.push_back({spec.n_in, spec.k_out, spec.m_env, spec.sigma2, to_string(m),
                          a.mode, expected_capacity_passive(spec, a.power, m), ""});
        continue;
      }
      const McResult r = spec.sigma2 > 0.0 ? mc_capacity_active(spec, a.power, m, opts)
                                           : mc_expected_capacity_passive(spec, a.power, m, opts);
      t.rows.push_back({spec.n_in, spec.k_out, spec.m_env, spec.sigma2, to_string(m), a.mode,
                        r.estimate.mean, r.estimate.std_error});
      dumped = r.records;
    }
  }

  if (!a.dump_samples.empty()) {
    Table d;
    d.header = {"index", "bits", "max_singular_sq"};
    for (const auto& rec : dumped) d.rows.push_back({rec.index, rec.bits, rec.max_singular_sq});
    Common file;
    file.output = a.dump_samples;
    std::ostringstream unused;
    emit(d.render("csv"), file, unused);
  }
  return t.render(a.common.format);
}

// ---- density ----------------------------------------------------------------

struct DensityArgs {
  Common common;
  int n_modes = 0;
  std::string k_rule = "N";
  std::string m_rule = "N";
  int grid = 1001;
};

void setup_density(CLI::App& app, DensityArgs& a) {
  auto* sub = app.add_subcommand(
      "density", "Eigenvalue density of truncated Haar blocks on lambda_i = i/(G-1)");
  sub->add_option("--N", a.n_modes, "Transmitter modes")->required()->check(CLI::PositiveNumber);
  sub->add_option("--K", a.k_rule, "Receiver modes, expression in N")->capture_default_str();
  sub->add_option("--M", a.m_rule, "Environment modes, expression in N")->capture_default_str();
  sub->add_option("--grid,-G", a.grid, "Grid points including both ends")
      ->check(CLI::Range(2, 100000000))
      ->capture_default_str();
  add_common(sub, a.common, "csv");
}

std::string cmd_density(const DensityArgs& a) {
  const EnsembleSpec spec = ensemble_for(a.n_modes, Expression::parse(a.k_rule),
                                         Expression::parse(a.m_rule), {}, 0.0, 0);
  const JacobiDensity p = JacobiDensity::for_spec(spec);
  Table t;
  t.header = {"lambda", "p_lambda"};
  for (int i = 0; i < a.grid; ++i) {
    const double lambda = static_cast<double>(i) / static_cast<double>(a.grid - 1);
    t.rows.push_back({lambda, p(lambda)});
  }
  return t.render(a.common.format);
}

int exit_code_for(const Error& e) {
  switch (e.category()) {
    case ErrorCategory::input: return kInputError;
    case ErrorCategory::unphysical: return kUnphysical;
    case ErrorCategory::ensemble: return kEnsembleError;
  }
  return kInternal;
}

}  // namespace

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app("Classical capacities of multimode bosonic Gaussian channels", "gausscap");
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "JSON file of flag values; command-line flags take precedence");
  app.config_formatter(std::make_shared<JsonConfig>(&app));
  app.allow_config_extras(CLI::config_extras_mode::error);

  CapacityArgs capacity;
  SweepArgs sweep;
  RandomArgs random;
  DensityArgs density;
  setup_capacity(app, capacity);
  setup_sweep(app, sweep);
  setup_random(app, random);
  setup_density(app, density);
  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::FileError& e) {
    err << "gausscap: " << e.what() << "\n";
    return kInputError;
  } catch (const CLI::ParseError& e) {
    err << "gausscap: " << e.what() << "\n";
    if (e.get_exit_code() == 0) return kOk;
    err << "Run with --help for usage.\n";
    return kUsage;
  }

  try {
    const std::string name = app.get_subcommands().front()->get_name();
    std::string report;
    const Common* common = nullptr;
    if (name == "capacity") {
      report = cmd_capacity(capacity);
      common = &capacity.common;
    } else if (name == "sweep-modes") {
      report = cmd_sweep(sweep);
      common = &sweep.common;
    } else if (name == "random") {
      report = cmd_random(random);
      common = &random.common;
    } else {
      report = cmd_density(density);
      common = &density.common;
    }
    emit(report, *common, out);
    return kOk;
  } catch (const UsageError& e) {
    err << "gausscap: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "gausscap: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << "gausscap: internal error: " << e.what() << "\n";
    return kInternal;
  }
}

}  // namespace gausscap::cli
