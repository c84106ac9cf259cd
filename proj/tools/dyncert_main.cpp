#include <omp.h>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dyncert/complex/bl_measure.hpp"
#include "dyncert/complex/julia.hpp"
#include "dyncert/complex/periodic.hpp"
#include "dyncert/core/error.hpp"
#include "dyncert/core/numeric.hpp"
#include "dyncert/io/json_io.hpp"
#include "dyncert/metric/estimators.hpp"
#include "dyncert/shifts/coded.hpp"
#include "dyncert/shifts/entropy.hpp"
#include "dyncert/shifts/sofic.hpp"

using namespace dyncert;
using io::json;

namespace {

constexpr int kOk = 0;
constexpr int kError = 1;
constexpr int kBudget = 2;

struct Global {
  int p = 20;
  std::uint64_t seed = 0;
  int threads = 0;
  bool bits = false;
  std::string out;
};

void emit(const Global& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    std::cout.flush();
  } else {
    io::write_file(g.out, text);
  }
}

void emit_json(const Global& g, const json& j) { emit(g, j.dump(2) + "\n"); }

// "p/q", a decimal, "sqrt(q)" or "golden" = (sqrt 5 - 1) / 2.
RealOracle parse_real(const std::string& text) {
  if (text == "golden") return RealOracle::affine(RealOracle::sqrt_of(5), mpq_class(1, 2), mpq_class(-1, 2));
  if (text.rfind("sqrt(", 0) == 0 && text.back() == ')') {
    return RealOracle::sqrt_of(parse_rational(text.substr(5, text.size() - 6)));
  }
  if (text.rfind("-sqrt(", 0) == 0 && text.back() == ')') {
    return RealOracle::affine(RealOracle::sqrt_of(parse_rational(text.substr(6, text.size() - 7))), -1, 0);
  }
  return RealOracle::constant(parse_rational(text));
}

// "re" or "re,im".
ComplexOracle parse_complex(const std::string& text) {
  const auto comma = text.find(',');
  const RealOracle re = parse_real(text.substr(0, comma));
  const RealOracle im = comma == std::string::npos ? RealOracle::constant(0) : parse_real(text.substr(comma + 1));
  if (re.exact() && im.exact()) return ComplexOracle::constant({*re.exact(), *im.exact()});
  return ComplexOracle::from_parts(re, im);
}

ComplexRational parse_point(const std::string& text) {
  const auto z = parse_complex(text);
  if (!z.exact()) throw DynError(Errc::InvalidArgument, "points must be exact rationals");
  return *z.exact();
}

struct PolyArgs {
  int degree = 2;
  std::string c = "0";
  std::vector<std::string> coeffs;

  void attach(CLI::App* app) {
    app->add_option("--degree,-d", degree, "degree of z^d + c")->check(CLI::Range(2, 64));
    app->add_option("--c", c, "constant term as re[,im]; parts are p/q, decimals, sqrt(q) or golden");
    app->add_option("--coeffs", coeffs, "all coefficients c_{d-1} ... c_0 of the monic polynomial (overrides)");
  }

  complex::PolySpec build() const {
    std::vector<ComplexOracle> list;
    if (!coeffs.empty()) {
      for (const auto& s : coeffs) list.push_back(parse_complex(s));
    } else {
      for (int i = 0; i + 1 < degree; ++i) list.push_back(ComplexOracle::constant({0, 0}));
      list.push_back(parse_complex(c));
    }
    return complex::PolySpec(std::move(list));
  }
};

struct MapArgs {
  std::string kind = "doubling";
  std::string alpha = "golden";
  std::string table;

  void attach(CLI::App* app) {
    app->add_option("--map", kind, "doubling, rotation or table")->check(CLI::IsMember({"doubling", "rotation", "table"}));
    app->add_option("--alpha", alpha, "rotation angle in turns");
    app->add_option("--table", table, "JSON file {\"nodes\": [[x, y], ...]} for a piecewise-linear map");
  }

  metric::IntervalMap build() const {
    if (kind == "doubling") return metric::IntervalMap::doubling();
    if (kind == "rotation") return metric::IntervalMap::rotation(parse_real(alpha));
    if (table.empty()) throw DynError(Errc::InvalidArgument, "--table is required for --map table");
    const json j = io::read_json_file(table);
    if (!j.contains("nodes") || !j.at("nodes").is_array()) throw DynError(Errc::ParseError, "missing \"nodes\"");
    std::vector<std::pair<mpq_class, mpq_class>> nodes;
    for (const auto& n : j.at("nodes")) {
      if (!n.is_array() || n.size() != 2) throw DynError(Errc::ParseError, "nodes are [x, y] pairs");
      auto value = [](const json& v) {
        return v.is_string() ? parse_rational(v.get<std::string>()) : mpq_class(mpz_class(std::to_string(v.get<long long>())));
      };
      nodes.emplace_back(value(n[0]), value(n[1]));
    }
    return metric::IntervalMap::table(std::move(nodes));
  }
};

int run_entropy(const Global& g, const std::string& path, std::size_t max_m, int max_n) {
  const auto pres = io::parse_presentation(io::read_json_file(path));
  shifts::EntropyResult r;
  if (const auto* x = std::get_if<shifts::ForbiddenSetSFT>(&pres)) {
    r = shifts::entropy_sft(*x, g.p);
  } else if (const auto* a = std::get_if<shifts::NonnegMatrix>(&pres)) {
    r = shifts::entropy_sft(*a, g.p);
  } else if (const auto* s = std::get_if<shifts::LabeledGraph>(&pres)) {
    r = shifts::entropy_sofic(*s, g.p);
  } else {
    const auto& gen = std::get<shifts::GeneratingSet>(pres);
    r = shifts::entropy_coded(gen, shifts::coded_language(gen), g.p, {max_m, max_n}).result;
  }
  json j = io::entropy_json(r, !g.bits);
  emit_json(g, j);
  std::fprintf(stderr, "entropy in [%.10f, %.10f] %s (%s)\n", j["lo"].get<double>(), j["hi"].get<double>(),
               g.bits ? "bits" : "nats", shifts::status_name(r.status));
  return r.status == shifts::EntropyStatus::Converged ? kOk : kBudget;
}

int run_julia(const Global& g, const PolyArgs& poly, const complex::JuliaOptions& o) {
  const auto f = poly.build();
  const auto grid = complex::filled_julia_approx(f, o);
  const std::string prefix = g.out.empty() ? "julia" : g.out;
  io::write_file(prefix + ".pgm", complex::grid_pgm(grid));
  const json j = complex::grid_json(grid, f);
  io::write_file(prefix + ".json", j.dump(2) + "\n");
  std::fprintf(stderr, "%s: %zux%zu boxes, escaping %zu, unknown %zu, interior %zu\n", f.describe().c_str(), grid.side,
               grid.side, grid.count(complex::BoxClass::Escaping), grid.count(complex::BoxClass::Unknown),
               grid.count(complex::BoxClass::Interior));
  return kOk;
}

struct BLArgs {
  int depth = 10;
  int tol_bits = 40;
  std::string mode = "full";
  std::size_t paths = 1u << 14;
  std::string z0;
  std::string compare;
  std::size_t compare_circle = 0;
  long cost_bits = 40;
};

int run_blmeasure(const Global& g, const PolyArgs& poly, const BLArgs& a) {
  const auto f = poly.build();
  complex::BLOptions o;
  o.depth = a.depth;
  o.tol = mpq_class(1, mpz_class(1) << static_cast<mp_bitcnt_t>(a.tol_bits));
  o.sampling = a.mode == "full" ? complex::Sampling::Full : complex::Sampling::MonteCarlo;
  o.paths = a.paths;
  o.seed = g.seed;
  if (!a.z0.empty()) o.z0 = parse_point(a.z0);
  const auto r = complex::bl_measure_approx(f, o);
  json j = io::measure_json(r.measure, measures::MetricKind::Planar);
  j["depth"] = a.depth;
  j["sampling"] = a.mode;
  j["residual"] = to_double_up(r.tree.residual);
  std::optional<measures::DiscreteMeasure> ref;
  if (!a.compare.empty()) ref = io::parse_measure(io::read_json_file(a.compare)).measure;
  if (a.compare_circle > 0) ref = measures::uniform_circle(a.compare_circle);
  if (ref) {
    const auto w = measures::wasserstein1(r.measure, *ref, measures::MetricKind::Planar, a.cost_bits);
    json wj = io::w1_json(w);
    wj.erase("plan");
    j["w1"] = wj;
    std::fprintf(stderr, "W1 to reference: %.6g +- %.3g\n", wj["value"].get<double>(), wj["error"].get<double>());
  }
  emit_json(g, j);
  return kOk;
}

mpq_class start_point(const Global& g, const std::string& x, std::size_t length) {
  if (!x.empty()) return parse_rational(x);
  return metric::random_start(g.seed, length + 128);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dyncert: certified computations for symbolic and complex dynamics"};
  app.require_subcommand(1);
  Global g;
  app.add_option("--p", g.p, "precision exponent: entropy enclosures of width < 2^-p")->check(CLI::Range(1, 60));
  app.add_option("--seed", g.seed, "seed for every random choice");
  app.add_option("--threads", g.threads, "worker threads (0 = OpenMP default)")->check(CLI::NonNegativeNumber);
  app.add_flag("--bits", g.bits, "report entropies in bits instead of nats");
  app.add_option("--out", g.out, "output file (julia: file prefix); standard output when omitted");

  std::string entropy_file;
  std::size_t max_m = 64;
  int max_n = 4096;
  auto* entropy = app.add_subcommand("entropy", "topological entropy of a shift presentation (JSON)");
  entropy->add_option("file", entropy_file, "presentation JSON")->required();
  entropy->add_option("--max-m", max_m, "coded shifts: largest generator prefix");
  entropy->add_option("--max-n", max_n, "coded shifts: longest word length counted");

  PolyArgs julia_poly;
  complex::JuliaOptions julia_opts;
  auto* julia = app.add_subcommand("julia", "filled Julia set as PGM + JSON sidecar (<out>.pgm, <out>.json)");
  julia_poly.attach(julia);
  julia->add_option("-r,--resolution", julia_opts.resolution, "box side 2^-r")->check(CLI::Range(2, 14));
  julia->add_option("--max-iter", julia_opts.max_iter, "iteration budget per box")->check(CLI::PositiveNumber);
  julia->add_option("--trap-period", julia_opts.trap_period, "longest attracting cycle used for interior certificates");

  PolyArgs bl_poly;
  BLArgs bl;
  auto* blm = app.add_subcommand("blmeasure", "backward-orbit approximation of the maximal-entropy measure");
  bl_poly.attach(blm);
  blm->add_option("--depth", bl.depth, "preimage depth n")->check(CLI::Range(1, 64));
  blm->add_option("--tol-bits", bl.tol_bits, "preimage residual tolerance 2^-k")->check(CLI::Range(8, 200));
  blm->add_option("--mode", bl.mode, "full or mc")->check(CLI::IsMember({"full", "mc"}));
  blm->add_option("--paths", bl.paths, "Monte Carlo paths")->check(CLI::PositiveNumber);
  blm->add_option("--z0", bl.z0, "base point re[,im] (default R + 1)");
  blm->add_option("--compare", bl.compare, "reference measure JSON for a W1 report");
  blm->add_option("--compare-circle", bl.compare_circle, "compare with k equal atoms on the unit circle");
  blm->add_option("--cost-bits", bl.cost_bits, "cost rounding 2^-k in the W1 report")->check(CLI::Range(1, 50));

  MapArgs orbit_map;
  std::string orbit_x;
  std::size_t orbit_len = 1000;
  auto* orbit = app.add_subcommand("orbit", "orbit samples as CSV with columns index,point");
  orbit_map.attach(orbit);
  orbit->add_option("--x", orbit_x, "start point (default: random from --seed)");
  orbit->add_option("--length", orbit_len, "number of points")->check(CLI::PositiveNumber);

  MapArgs sep_map;
  std::size_t sep_n = 4;
  std::string sep_eps = "1/2";
  std::size_t sep_grid = 1u << 12;
  auto* sep = app.add_subcommand("separated", "greedy (n, eps)-separated set on a uniform grid");
  sep_map.attach(sep);
  sep->add_option("--n", sep_n, "orbit length")->check(CLI::PositiveNumber);
  sep->add_option("--eps", sep_eps, "separation in (0, 1/2]");
  sep->add_option("--grid", sep_grid, "grid points g / grid")->check(CLI::PositiveNumber);

  MapArgs kb_map;
  std::string kb_x;
  std::string kb_eps = "1/4";
  std::size_t kb_n = 12;
  std::size_t kb_len = 1000000;
  auto* katok = app.add_subcommand("katok", "Katok-Brin local entropy estimate along one orbit");
  kb_map.attach(katok);
  katok->add_option("--x", kb_x, "start point (default: random from --seed)");
  katok->add_option("--eps", kb_eps, "Bowen ball radius");
  katok->add_option("--n", kb_n, "Bowen ball length")->check(CLI::PositiveNumber);
  katok->add_option("--length", kb_len, "orbit length N")->check(CLI::PositiveNumber);

  std::string w_a;
  std::string w_b;
  std::string w_metric;
  long w_bits = 40;
  auto* wass = app.add_subcommand("wasserstein", "W1 distance and optimal plan between two measure files");
  wass->add_option("first", w_a, "measure JSON")->required();
  wass->add_option("second", w_b, "measure JSON")->required();
  wass->add_option("--metric", w_metric, "override: planar, spherical or circle");
  wass->add_option("--cost-bits", w_bits, "cost rounding 2^-k when distances are irrational")->check(CLI::Range(1, 50));

  PolyArgs per_poly;
  int per_k = 1;
  long per_bits = 53;
  auto* periodic = app.add_subcommand("classify-periodic", "periodic points of exact period k and their multipliers");
  per_poly.attach(periodic);
  periodic->add_option("-k,--period", per_k, "period")->check(CLI::PositiveNumber);
  periodic->add_option("--work-bits", per_bits, "box arithmetic precision 2^-bits")->check(CLI::Range(30, 4096));

  std::string theta = "golden";
  int terms = 10;
  int max_bits = 4096;
  auto* bryuno = app.add_subcommand("bryuno", "partial sums of the Bryuno series of theta");
  bryuno->add_option("--theta", theta, "p/q, decimal, sqrt(q) or golden");
  bryuno->add_option("--terms", terms, "number of partial sums")->check(CLI::Range(1, 10000));
  bryuno->add_option("--max-bits", max_bits, "largest oracle precision")->check(CLI::Range(64, 1 << 20));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kError;
  }
  if (g.threads > 0) omp_set_num_threads(g.threads);

  try {
    if (*entropy) return run_entropy(g, entropy_file, max_m, max_n);
    if (*julia) return run_julia(g, julia_poly, julia_opts);
    if (*blm) return run_blmeasure(g, bl_poly, bl);
    if (*orbit) {
      const auto f = orbit_map.build();
      emit(g, metric::orbit_csv(metric::sample_orbit(f, start_point(g, orbit_x, orbit_len), orbit_len)));
      return kOk;
    }
    if (*sep) {
      const auto r = metric::separated_count(sep_map.build(), sep_n, parse_rational(sep_eps), sep_grid);
      emit_json(g, io::separated_json(r));
      std::fprintf(stderr, "separated set of size %zu\n", r.count);
      return kOk;
    }
    if (*katok) {
      const auto f = kb_map.build();
      const mpq_class eps = parse_rational(kb_eps);
      const auto sample = metric::sample_orbit(f, start_point(g, kb_x, kb_len), kb_len);
      const auto r = metric::katok_brin(sample, eps, kb_n);
      emit_json(g, io::katok_json(r, eps, kb_n));
      std::fprintf(stderr, "Katok-Brin estimate %.6f (%zu of %zu returns)\n", r.estimate, r.hits, r.trials);
      return kOk;
    }
    if (*wass) {
      auto a = io::parse_measure(io::read_json_file(w_a));
      auto b = io::parse_measure(io::read_json_file(w_b));
      measures::MetricKind m = a.metric;
      if (!w_metric.empty()) {
        m = measures::parse_metric(w_metric);
      } else if (a.metric != b.metric) {
        throw DynError(Errc::InvalidArgument, "measure files disagree on the metric; pass --metric");
      }
      emit_json(g, io::w1_json(measures::wasserstein1(a.measure, b.measure, m, w_bits)));
      return kOk;
    }
    if (*periodic) {
      const auto r = complex::classify_periodic(per_poly.build(), per_k, per_bits);
      emit_json(g, io::periodic_json(r));
      std::size_t unresolved = 0;
      for (const auto& x : r) unresolved += x.cls == complex::PeriodicClass::NeutralUnresolved ? 1 : 0;
      return unresolved == 0 ? kOk : kBudget;
    }
    if (*bryuno) {
      emit_json(g, io::bryuno_json(complex::bryuno_partial_sums(parse_real(theta), terms, max_bits)));
      return kOk;
    }
  } catch (const DynError& e) {
    std::fprintf(stderr, "error (%s): %s\n", errc_name(e.code()), e.what());
    return kError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kError;
  }
  return kError;
}
