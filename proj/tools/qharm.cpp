// qharm: command-line front end for the q-harmonic analysis library.
//
// Exit codes: 0 success, 1 verification failure or numerical error,
// 2 usage or parse error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qharm/qharm.hpp"

namespace {

using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct Globals {
  double q = 0.5;
  double v = 0.0;
  int n_min = -20;
  int n_max = 60;
  std::optional<double> tol;
  std::string output;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

unsigned threads_from_env() {
  const char* s = std::getenv("QHARM_THREADS");
  if (!s || !*s) return 0;
  char* end = nullptr;
  const long n = std::strtol(s, &end, 10);
  if (*end != '\0' || n < 0) throw UsageError("QHARM_THREADS must be a nonnegative integer");
  return static_cast<unsigned>(n);
}

std::string fmt15(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

void emit(const Globals& g, const std::string& text) {
  if (g.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream os(g.output, std::ios::binary);
  if (!os) throw UsageError("cannot write " + g.output);
  os << text;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw UsageError("cannot write " + path);
  os << text;
}

qharm::LatticeFunction load_csv(const std::string& path, double q) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw UsageError("cannot read " + path);
  return qharm::read_csv(is, q);
}

qharm::QParams params_of(const Globals& g, std::optional<double> trunc_tol = std::nullopt) {
  qharm::SeriesControl ctl;
  if (trunc_tol) ctl.trunc_tol = *trunc_tol;
  return qharm::QParams(g.q, g.v, ctl);
}

json complex_json(qharm::cplx z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

void print_warnings(const std::vector<std::string>& w) {
  for (const auto& s : w) std::cerr << "warning: " << s << '\n';
}

// ---- eval --------------------------------------------------------------------

struct EvalArgs {
  std::string function;
  std::optional<double> z, a, x, t, qbase;
  std::optional<int> n;
};

int cmd_eval(const Globals& g, const EvalArgs& e) {
  auto need = [&](const std::optional<double>& o, const char* name) {
    if (!o) throw UsageError(e.function + " needs --" + name);
    return *o;
  };
  const qharm::QParams p = params_of(g);
  double value = 0.0;
  if (e.function == "pochhammer") {
    const double a = need(e.a, "a");
    value = e.n ? qharm::q_pochhammer_finite<double>(a, g.q, *e.n) : qharm::q_pochhammer_infinite<double>(a, g.q);
  } else if (e.function == "qexp") {
    value = qharm::q_exponential<double>(need(e.z, "z"), g.q);
  } else if (e.function == "jv") {
    qharm::JvResult r;
    if (e.x) {
      r = qharm::bessel_kernel(*e.x, p);
    } else {
      r = qharm::hahn_exton_jv(need(e.z, "z"), e.qbase.value_or(p.base()), g.v);
    }
    if (r.precision_loss) std::cerr << "warning: cancellation ratio " << r.cancellation_ratio << '\n';
    value = r.value;
  } else if (e.function == "gauss_kernel") {
    value = qharm::gauss_kernel(need(e.x, "x"), need(e.t, "t"), p);
  } else if (e.function == "c_qv") {
    value = p.c_qv();
  } else if (e.function == "B_qv") {
    value = p.B_qv();
  } else {
    throw UsageError("unknown function '" + e.function + "'");
  }
  emit(g, fmt15(value) + "\n");
  return kExitOk;
}

// ---- lattice data commands -----------------------------------------------------

int cmd_transform(const Globals& g, const std::string& input) {
  const qharm::QParams p = params_of(g, g.tol);
  const auto f = load_csv(input, g.q);
  const qharm::TransformTable t(p, f.lattice());
  auto r = qharm::fourier_transform_checked(f, t);
  print_warnings(r.warnings);
  emit(g, qharm::to_csv(r.function));
  return kExitOk;
}

int cmd_convolve(const Globals& g, const std::string& a, const std::string& b, const std::string& route) {
  const qharm::QParams p = params_of(g, g.tol);
  const auto f = load_csv(a, g.q);
  const auto h = load_csv(b, g.q);
  const qharm::TransformTable t(p, f.lattice());
  const auto r = route == "direct" ? qharm::ConvolutionRoute::Direct : qharm::ConvolutionRoute::Spectral;
  emit(g, qharm::to_csv(qharm::convolution(f, h, t, r)));
  return kExitOk;
}

int cmd_probe(const Globals& g) {
  const qharm::QParams p = params_of(g);
  qharm::ProbeOptions opt;
  opt.threads = threads_from_env();
  const auto r = qharm::qv_membership_probe(p, qharm::QLattice(g.q, g.n_min, g.n_max), opt);
  json j;
  j["q"] = r.q;
  j["v"] = r.v;
  j["window"] = {r.n_min, r.n_max};
  j["integration_window"] = {r.integration_n_min, r.integration_n_max};
  j["min_value"] = r.min_value;
  j["witness"] = {{"exponents", r.argmin},
                  {"points", {std::pow(g.q, r.argmin[0]), std::pow(g.q, r.argmin[1]), std::pow(g.q, r.argmin[2])}}};
  j["negativity_detected"] = r.negativity_detected;
  j["verdict"] = r.verdict;
  emit(g, j.dump(2) + "\n");
  return kExitOk;
}

std::vector<int> parse_points(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("bad point exponent '" + item + "' in --points");
    }
  }
  return out;
}

int cmd_positivity(const Globals& g, const std::string& input, const std::string& points) {
  const qharm::QParams p = params_of(g);
  const auto phi = load_csv(input, g.q);
  const qharm::TransformTable t(p, phi.lattice());
  const std::vector<int> pts = points.empty() ? qharm::default_point_set() : parse_points(points);
  const auto v = qharm::is_q_positive_type(phi, pts, t, g.tol.value_or(1e-9));
  print_warnings(v.warnings);
  json j;
  j["verdict"] = v.positive ? "POSITIVE" : "NEGATIVE";
  j["points"] = pts;
  j["min_eigenvalue"] = v.min_eigenvalue;
  j["gram_norm_inf"] = v.gram_norm;
  j["threshold"] = v.threshold;
  json w = json::array();
  for (const auto& z : v.witness) w.push_back(complex_json(z));
  j["witness"] = w;
  emit(g, j.dump(2) + "\n");
  return kExitOk;
}

int cmd_bochner(const Globals& g, const std::string& input, int levels, const std::string& measure_path) {
  if (levels < 1) throw UsageError("--levels must be >= 1");
  const qharm::QParams p = params_of(g);
  const auto phi = load_csv(input, g.q);
  const qharm::TransformTable t(p, phi.lattice());
  std::vector<int> lv;
  for (int n = 1; n <= levels; ++n) lv.push_back(n);
  const auto r = qharm::bochner_reconstruct(phi, lv, t, g.tol.value_or(1e-9));
  print_warnings(r.warnings);
  json j;
  j["accepted"] = r.accepted;
  j["failure"] = r.failure;
  j["normalization_phi0"] = r.normalization;
  j["density_factor"] = r.density_factor;
  json lj = json::array();
  for (const auto& l : r.levels) {
    lj.push_back({{"n", l.n},
                  {"positive_type", l.positive_type},
                  {"min_eigenvalue", l.min_eigenvalue},
                  {"min_density_relative", l.min_density},
                  {"mass", l.mass},
                  {"mass_error", l.mass_error},
                  {"transform_error", l.transform_error}});
  }
  j["levels"] = lj;
  j["extrapolated"] = r.extrapolated;
  j["reconstruction_error"] = r.reconstruction_error;
  j["last_level_error"] = r.last_level_error;
  if (r.measure) j["total_mass"] = r.measure->total_mass_v();
  json w = json::array();
  for (const auto& z : r.witness) w.push_back(complex_json(z));
  j["witness"] = w;
  j["warnings"] = r.warnings;
  emit(g, j.dump(2) + "\n");
  if (!measure_path.empty() && r.measure) {
    std::vector<qharm::cplx> d(r.measure->density().begin(), r.measure->density().end());
    write_file(measure_path, qharm::to_csv(qharm::LatticeFunction(r.measure->lattice(), std::move(d))));
  }
  return kExitOk;
}

int cmd_verify(const Globals& g, const std::vector<std::string>& only, const std::string& program) {
  const qharm::QParams p = params_of(g);
  const qharm::TransformTable t(p, qharm::QLattice(g.q, g.n_min, g.n_max));
  qharm::VerifyOptions opt;
  opt.tolerance_override = g.tol;
  opt.only = only;
  opt.program = program;
  const auto res = qharm::run_verification(t, opt);
  json j;
  j["q"] = g.q;
  j["v"] = g.v;
  j["window"] = {g.n_min, g.n_max};
  json entries = json::array();
  for (const auto& e : res.entries) {
    json x = {{"statement_id", e.id},
              {"status", qharm::to_string(e.status)},
              {"measured_error", e.measured_error},
              {"tolerance", e.tolerance},
              {"runtime_ms", e.runtime_ms}};
    if (!e.reproduce.empty()) x["reproduce"] = e.reproduce;
    if (!e.note.empty()) x["note"] = e.note;
    entries.push_back(x);
  }
  j["entries"] = entries;
  j["all_passed"] = res.ok();
  emit(g, j.dump(2) + "\n");
  return res.ok() ? kExitOk : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"q-harmonic analysis on the q-lattice"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--q", g.q, "lattice base q in (0,1)")->capture_default_str();
  app.add_option("--v", g.v, "Bessel order v > -1")->capture_default_str();
  app.add_option("--nmin", g.n_min, "smallest lattice exponent")->capture_default_str();
  app.add_option("--nmax", g.n_max, "largest lattice exponent")->capture_default_str();
  app.add_option("--tol", g.tol, "tolerance: series truncation, PSD/density slack, or verify override");
  app.add_option("--output", g.output, "write the main output here instead of stdout");

  EvalArgs ev;
  auto* eval = app.add_subcommand("eval", "evaluate a special function or constant");
  eval->add_option("function", ev.function, "pochhammer | qexp | jv | gauss_kernel | c_qv | B_qv")->required();
  eval->add_option("--z", ev.z, "series argument");
  eval->add_option("--a", ev.a, "q-Pochhammer parameter");
  eval->add_option("--n", ev.n, "finite q-Pochhammer length (infinite when omitted)");
  eval->add_option("--x", ev.x, "point x (jv kernel, gauss_kernel)");
  eval->add_option("--t", ev.t, "Gauss kernel width t");
  eval->add_option("--qbase", ev.qbase, "series base for jv --z (default q^2)");

  std::string in1, in2, route = "spectral", points, measure_path;
  int levels = 10;
  std::vector<std::string> only;

  auto* transform = app.add_subcommand("transform", "q-Bessel Fourier transform of a lattice CSV");
  transform->add_option("input", in1, "input CSV")->required();

  auto* convolve = app.add_subcommand("convolve", "q-convolution of two lattice CSVs");
  convolve->add_option("a", in1, "first CSV")->required();
  convolve->add_option("b", in2, "second CSV")->required();
  convolve->add_option("--route", route, "direct | spectral")
      ->check(CLI::IsMember({"direct", "spectral"}))
      ->capture_default_str();

  auto* probe = app.add_subcommand("probe-qv", "scan the translation kernel for negative values");

  auto* positivity = app.add_subcommand("positivity", "Gram-matrix positive-type test");
  positivity->add_option("input", in1, "phi CSV")->required();
  positivity->add_option("--points", points, "comma-separated lattice exponents");

  auto* bochner = app.add_subcommand("bochner", "recover the measure behind a positive-type function");
  bochner->add_option("input", in1, "phi CSV")->required();
  bochner->add_option("--levels", levels, "cutoff levels 1..N")->capture_default_str();
  bochner->add_option("--measure", measure_path, "write the recovered density CSV here");

  auto* verify = app.add_subcommand("verify", "run the identity verification suite");
  verify->add_option("--only", only, "restrict to these check ids")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*eval) return cmd_eval(g, ev);
    if (*transform) return cmd_transform(g, in1);
    if (*convolve) return cmd_convolve(g, in1, in2, route);
    if (*probe) return cmd_probe(g);
    if (*positivity) return cmd_positivity(g, in1, points);
    if (*bochner) return cmd_bochner(g, in1, levels, measure_path);
    if (*verify) return cmd_verify(g, only, "qharm");
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const qharm::ArgumentError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const qharm::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFail;
  }
  return kExitUsage;
}
