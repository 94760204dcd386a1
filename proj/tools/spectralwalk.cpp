// spectralwalk command-line tool.
//
// Exit codes: 0 success, 1 internal error or failed verification,
// 2 invalid input or violated precondition.

#include "spectralwalk/builders.hpp"
#include "spectralwalk/io.hpp"
#include "spectralwalk/operators.hpp"
#include "spectralwalk/poisson.hpp"
#include "spectralwalk/spectral.hpp"
#include "spectralwalk/stirling.hpp"
#include "spectralwalk/walk.hpp"

#include <CLI11.hpp>
#include <openssl/evp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <functional>
#include <iostream>
#include <sstream>

#ifndef SPECTRALWALK_VERSION
#define SPECTRALWALK_VERSION "dev"
#endif

namespace sw = spectralwalk;
using sw::Json;

namespace {

std::string sha256_file(const std::string& path) {
  const std::string data = sw::read_text_file(path);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256 failed for " + path);
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

std::string utc_timestamp() {
  std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) now = std::strtoll(epoch, nullptr, 10);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct Manifest {
  std::string command;
  Json parameters = Json::object();
  std::vector<std::string> inputs;
  std::optional<std::uint64_t> seed;

  Json to_json() const {
    Json digests = Json::object();
    for (const auto& p : inputs) digests[p] = "sha256:" + sha256_file(p);
    Json m;
    m["command"] = command;
    m["parameters"] = parameters;
    m["seed"] = seed ? Json(*seed) : Json(nullptr);
    m["version"] = SPECTRALWALK_VERSION;
    m["inputDigests"] = std::move(digests);
    m["timestamp"] = utc_timestamp();
    return m;
  }
};

void emit(const Json& doc, const std::string& out) {
  const std::string text = doc.dump(2) + "\n";
  if (out.empty() || out == "-") {
    std::cout << text;
  } else {
    sw::write_text_file(out, text);
  }
}

// Options shared by every command that works on a domain.
struct DomainArgs {
  std::string graph;
  std::string domain;
  bool symmetrize = false;

  void add(CLI::App* cmd) {
    cmd->add_option("--graph", graph, "graph JSON (optional when the domain names its graph)")
        ->check(CLI::ExistingFile);
    cmd->add_option("--domain", domain, "domain JSON")->required()->check(CLI::ExistingFile);
    cmd->add_flag("--symmetrize", symmetrize, "fill missing reverse edges from reversibility");
  }

  sw::Domain load(Manifest& m) const {
    std::shared_ptr<const sw::GraphWithGeometry> parent;
    const auto mode = symmetrize ? std::optional(sw::GraphSpec::Mode::Symmetrize) : std::nullopt;
    if (!graph.empty()) {
      parent = std::make_shared<const sw::GraphWithGeometry>(sw::read_graph(graph, mode));
      m.inputs.push_back(graph);
      m.parameters["graph"] = graph;
    }
    m.inputs.push_back(domain);
    m.parameters["domain"] = domain;
    if (graph.empty()) {
      // Digest the graph file a domain document points at as well.
      const Json doc = sw::read_json_file(domain);
      if (auto g = doc.find("graph"); g != doc.end() && g->is_string()) {
        std::filesystem::path p = g->get<std::string>();
        if (p.is_relative()) p = std::filesystem::path(domain).parent_path() / p;
        m.inputs.push_back(p.string());
      }
    }
    m.parameters["symmetrize"] = symmetrize;
    return sw::read_domain(domain, parent);
  }
};

struct Tolerances {
  double cluster = 1e-9;
  double star = 1e-10;
  double hankel = 1e-10;

  void add(CLI::App* cmd, bool hankel_too) {
    cmd->add_option("--cluster-tol", cluster, "relative eigenvalue clustering tolerance")
        ->capture_default_str();
    cmd->add_option("--star-tol", star, "starred-cluster mass threshold relative to volume")
        ->capture_default_str();
    if (hankel_too)
      cmd->add_option("--hankel-tol", hankel, "Hankel rank-detection tolerance")->capture_default_str();
  }
  sw::SpectralOptions spectral() const { return {cluster, star}; }
  sw::RecoveryOptions recovery() const {
    sw::RecoveryOptions o;
    o.hankel_tolerance = hankel;
    return o;
  }
  void record(Manifest& m) const {
    m.parameters["clusterTol"] = cluster;
    m.parameters["starTol"] = star;
    m.parameters["hankelTol"] = hankel;
  }
};

void check_order(int k, const char* flag) {
  if (k < 0 || k > sw::kMaxOrder)
    throw sw::InvalidInput(std::string(flag) + " must be in [0, " + std::to_string(sw::kMaxOrder) +
                           "], got " + std::to_string(k));
}

Json spec_star_json(const sw::Vector& mu) {
  return Json{{"mu", sw::to_json(mu)}, {"lambda", sw::to_json(-mu)}};
}

Json diagnostics_json(const sw::HankelDiagnostics& d) {
  return Json{{"scale", d.scale},         {"det0", d.det0},     {"det1", d.det1},
              {"pivot0", d.pivot0},       {"pivot1", d.pivot1}, {"available", d.available},
              {"rankConfirmed", d.rank_confirmed}};
}

// ---------------------------------------------------------------- build

struct BuildArgs {
  std::string out;
  int dim = 1;
  std::vector<int> lo;
  std::vector<int> hi;
  double spacing = 1.0;
  long n = 0;
  int degree = 3;
  int depth = 2;
  std::string points;
  double cutoff = 1.0;
};

void add_build(CLI::App& app, BuildArgs& a, std::function<void(const std::string&)>& run) {
  auto* build = app.add_subcommand("build", "construct a canonical graph");
  build->require_subcommand(1);
  auto out = [&a](CLI::App* c) { c->add_option("-o,--out", a.out, "output graph JSON (default stdout)"); };

  auto* lattice = build->add_subcommand("lattice", "integer lattice box");
  lattice->add_option("--dim", a.dim, "dimension")->required();
  lattice->add_option("--lo", a.lo, "lower corner, one integer per axis")->required();
  lattice->add_option("--hi", a.hi, "upper corner, one integer per axis")->required();
  lattice->add_option("--spacing", a.spacing, "embedding spacing")->capture_default_str();
  out(lattice);
  lattice->callback([&run] { run("lattice"); });

  auto* path = build->add_subcommand("path", "unit-weight path");
  path->add_option("--n", a.n, "vertex count")->required();
  path->add_option("--spacing", a.spacing, "embedding spacing")->capture_default_str();
  out(path);
  path->callback([&run] { run("path"); });

  auto* cycle = build->add_subcommand("cycle", "unit-weight cycle");
  cycle->add_option("--n", a.n, "vertex count")->required();
  out(cycle);
  cycle->callback([&run] { run("cycle"); });

  auto* tree = build->add_subcommand("tree", "truncated regular tree");
  tree->add_option("--degree", a.degree, "vertex degree")->capture_default_str();
  tree->add_option("--depth", a.depth, "levels below the root")->capture_default_str();
  out(tree);
  tree->callback([&run] { run("tree"); });

  auto* cloud = build->add_subcommand("cloud", "point cloud with cutoff adjacency");
  cloud->add_option("--points", a.points, "CSV, one point per line")->required()->check(CLI::ExistingFile);
  cloud->add_option("--cutoff", a.cutoff, "adjacency cutoff b (dist < b)")->required();
  out(cloud);
  cloud->callback([&run] { run("cloud"); });
}

void run_build(const std::string& kind, const BuildArgs& a) {
  Manifest m;
  m.command = "build " + kind;
  std::optional<sw::GraphWithGeometry> g;
  if (kind == "lattice") {
    g.emplace(sw::build_lattice({a.dim, a.lo, a.hi, a.spacing}));
    m.parameters = {{"dim", a.dim}, {"lo", a.lo}, {"hi", a.hi}, {"spacing", a.spacing}};
  } else if (kind == "path") {
    g.emplace(sw::build_path(a.n, a.spacing));
    m.parameters = {{"n", a.n}, {"spacing", a.spacing}};
  } else if (kind == "cycle") {
    g.emplace(sw::build_cycle(a.n));
    m.parameters = {{"n", a.n}};
  } else if (kind == "tree") {
    g.emplace(sw::build_regular_tree(a.degree, a.depth));
    m.parameters = {{"degree", a.degree}, {"depth", a.depth}};
  } else {
    g.emplace(sw::build_point_cloud({sw::read_points_csv(a.points), a.cutoff}));
    m.parameters = {{"points", a.points}, {"cutoff", a.cutoff}};
    m.inputs.push_back(a.points);
  }
  Json doc = sw::graph_to_json(*g);
  doc["manifest"] = m.to_json();
  emit(doc, a.out);
}

// ----------------------------------------------------------- invariants

struct InvariantArgs {
  DomainArgs domain;
  Tolerances tol;
  int kmax = 6;
  int heat_nmax = -1;
  std::vector<double> zeta;
  std::string out;
};

void run_invariants(const InvariantArgs& a) {
  Manifest m;
  m.command = "invariants";
  check_order(a.kmax, "--kmax");
  const int nmax = a.heat_nmax < 0 ? a.kmax : a.heat_nmax;
  check_order(nmax, "--heat-nmax");
  const sw::Domain d = a.domain.load(m);
  m.parameters["kmax"] = a.kmax;
  m.parameters["heatNmax"] = nmax;
  m.parameters["zeta"] = a.zeta;
  a.tol.record(m);

  const sw::InteriorOperator op(d);
  const auto table = sw::moment_table(op, a.kmax);
  const auto s = sw::eigendecompose(op, a.tol.spectral());

  Json doc;
  doc["domain"] = {{"interior", d.interior_size()},
                   {"boundary", d.boundary().size()},
                   {"volume", d.volume()}};
  doc["mspec"] = sw::to_json(table.A1);
  doc["pspec"] = sw::to_json(table.A2);
  doc["alpha"] = table.alpha ? Json(*table.alpha) : Json(nullptr);
  doc["specStar"] = spec_star_json(s.star_mu());
  doc["partition"] = sw::to_json(s.star_mass());
  doc["q"] = sw::to_json(sw::heat_asymptotics(s, nmax));
  Json z = Json::array();
  for (double arg : a.zeta) z.push_back({{"s", arg}, {"value", sw::zeta(s, arg).real()}});
  doc["zeta"] = std::move(z);
  doc["manifest"] = m.to_json();
  emit(doc, a.out);
}

// ------------------------------------------------------------- simulate

struct SimulateArgs {
  DomainArgs domain;
  sw::ExternalId start = 0;
  std::uint64_t walks = 100000;
  std::uint64_t seed = 0;
  int kmax = 3;
  std::uint64_t max_steps = 100000000;
  unsigned threads = 0;
  std::string out;
};

void run_simulate(const SimulateArgs& a) {
  Manifest m;
  m.command = "simulate";
  m.seed = a.seed;
  const sw::Domain d = a.domain.load(m);
  m.parameters["start"] = a.start;
  m.parameters["walks"] = a.walks;
  m.parameters["kmax"] = a.kmax;
  m.parameters["maxSteps"] = a.max_steps;

  const auto x = d.parent().find(a.start);
  if (!x) throw sw::InvalidInput("start vertex " + std::to_string(a.start) + " is not in the graph");
  sw::WalkConfig cfg;
  cfg.start = *x;
  cfg.walks = a.walks;
  cfg.seed = a.seed;
  cfg.k_max = a.kmax;
  cfg.max_steps = a.max_steps;
  cfg.threads = a.threads;
  const auto stats = sw::run_walks(d, cfg);

  const sw::InteriorOperator op(d);
  const auto h = sw::solve_hierarchies(op, a.kmax);
  const sw::Vector z = sw::compare_exact(d, stats, h);
  sw::Vector exact(a.kmax + 1);
  const auto i = d.interior_position(*x);
  for (int k = 0; k <= a.kmax; ++k) exact[k] = h.f[static_cast<std::size_t>(k)][i];

  const int lmax = static_cast<int>(stats.eta_histogram.size()) - 1;
  Json hist = Json::array();
  if (lmax >= 1) {
    const auto p = sw::exit_index_distribution(d, *x, lmax);
    const double n = static_cast<double>(stats.walks_run);
    for (int l = 1; l <= lmax; ++l) {
      const double pl = p[static_cast<std::size_t>(l - 1)];
      const double expected = n * pl;
      const double sigma = std::sqrt(n * pl * (1.0 - pl));
      const auto count = stats.eta_histogram[static_cast<std::size_t>(l)];
      hist.push_back({{"l", l},
                      {"count", count},
                      {"expected", expected},
                      {"sigma", sigma},
                      {"z", sigma > 0 ? (static_cast<double>(count) - expected) / sigma : 0.0}});
    }
  }

  Json zs = Json::array();
  for (int k = 1; k <= a.kmax; ++k) zs.push_back(z[k]);
  Json doc;
  doc["start"] = a.start;
  doc["walks"] = a.walks;
  doc["walksRun"] = stats.walks_run;
  doc["steps"] = stats.steps;
  doc["truncated"] = stats.truncated;
  doc["moments"] = sw::to_json(stats.moments);
  doc["standardErrors"] = sw::to_json(stats.standard_errors);
  doc["exact"] = sw::to_json(exact);
  doc["z"] = std::move(zs);
  doc["etaHistogram"] = std::move(hist);
  doc["bridgeGap"] = stats.regular_bridge_gap >= 0 ? Json(stats.regular_bridge_gap) : Json(nullptr);
  doc["manifest"] = m.to_json();
  emit(doc, a.out);
}

// --------------------------------------------------------------- verify

struct VerifyArgs {
  DomainArgs domain;
  Tolerances tol;
  int kmax = -1;
  double rel_tol = -1.0;
  std::string out;
};

double rel_residual(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

Json verify_stirling(const sw::Domain& d, const VerifyArgs& a, double tol, bool& pass) {
  const int kmax = a.kmax < 0 ? 8 : a.kmax;
  check_order(kmax, "--kmax");
  const auto reg = sw::regularity(d);
  if (!reg.is_regular) {
    std::string report = "domain is not weight regular; interior auxiliary weights:";
    for (const auto& [x, w] : reg.per_vertex)
      report += " " + std::to_string(d.parent().external_id(x)) + "=" + std::to_string(w);
    throw sw::InvalidInput(report);
  }
  const sw::InteriorOperator op(d);
  const auto t = sw::moment_table(op, kmax);
  const sw::Vector a1 = sw::mspec_from_pspec(t.A2, reg.alpha, kmax);
  const sw::Vector a2 = sw::pspec_from_mspec(t.A1, reg.alpha, kmax);
  Json rows = Json::array();
  for (int k = 0; k <= kmax; ++k) {
    const double r1 = rel_residual(a1[k], t.A1[k]);
    const double r2 = rel_residual(a2[k], t.A2[k]);
    const bool ok = r1 < tol && r2 < tol;
    pass = pass && ok;
    rows.push_back({{"k", k},
                    {"mspec", t.A1[k]},
                    {"pspec", t.A2[k]},
                    {"mspecFromPspecResidual", r1},
                    {"pspecFromMspecResidual", r2},
                    {"pass", ok}});
  }
  return Json{{"alpha", reg.alpha}, {"checks", std::move(rows)}};
}

Json verify_zeta(const sw::Domain& d, const VerifyArgs& a, double tol, bool& pass) {
  const int kmax = a.kmax < 0 ? 6 : a.kmax;
  if (kmax < 1 || kmax > sw::kMaxOrder)
    throw sw::InvalidInput("--kmax must be in [1, " + std::to_string(sw::kMaxOrder) + "] for zeta");
  const sw::InteriorOperator op(d);
  const auto s = sw::eigendecompose(op, a.tol.spectral());
  const sw::Vector A2 = sw::poisson_spectrum(op, kmax);
  const sw::Vector q = sw::heat_asymptotics(s, kmax);
  Json rows = Json::array();
  for (int n = 1; n <= kmax; ++n) {
    const auto [pos, neg] = sw::zeta_special_values(s, n);
    const double want_pos = A2[n] / sw::factorial(n);
    const double want_neg = (n % 2 ? -1.0 : 1.0) * sw::factorial(n) * q[n];
    const double r1 = rel_residual(pos, want_pos);
    const double r2 = rel_residual(neg, want_neg);
    const bool ok = r1 < tol && r2 < tol;
    pass = pass && ok;
    rows.push_back({{"n", n},
                    {"zetaPositive", pos},
                    {"pspecOverFactorial", want_pos},
                    {"positiveResidual", r1},
                    {"zetaNegative", neg},
                    {"signedFactorialQ", want_neg},
                    {"negativeResidual", r2},
                    {"pass", ok}});
  }
  return Json{{"checks", std::move(rows)}};
}

Json verify_hankel(const sw::Domain& d, const VerifyArgs& a, double tol, bool& pass) {
  const sw::InteriorOperator op(d);
  const auto s = sw::eigendecompose(op, a.tol.spectral());
  const sw::Vector mu = s.star_mu();
  const sw::Vector mass = s.star_mass();
  const auto n = mu.size();
  if (2 * n - 1 > sw::kMaxOrder)
    throw sw::InvalidInput("starred spectrum has " + std::to_string(n) +
                           " points; recovery needs more than the supported 21 moments");
  const sw::Vector A2 = sw::poisson_spectrum(op, static_cast<int>(2 * n - 1));
  const sw::Vector q = sw::heat_asymptotics(s, static_cast<int>(2 * n - 1));
  Json out;
  out["specStar"] = spec_star_json(mu);
  out["partition"] = sw::to_json(mass);
  const auto check = [&](const char* name, const auto& recover, const sw::Vector& data) {
    Json r;
    try {
      const sw::RecoveredSpectrum got = recover(data, a.tol.recovery());
      double emu = 0.0;
      double emass = 0.0;
      const bool rank_ok = got.mu.size() == n;
      if (rank_ok) {
        for (sw::Index j = 0; j < n; ++j) {
          emu = std::max(emu, rel_residual(got.mu[j], mu[j]));
          emass = std::max(emass, rel_residual(got.masses[j], mass[j]));
        }
      }
      const bool ok = rank_ok && emu < tol && emass < tol;
      r = {{"atoms", got.mu.size()},   {"mu", sw::to_json(got.mu)},
           {"masses", sw::to_json(got.masses)}, {"muResidual", emu},
           {"massResidual", emass},     {"diagnostics", diagnostics_json(got.measure.diagnostics)},
           {"pass", ok}};
      pass = pass && ok;
    } catch (const sw::RecoveryError& e) {
      r = {{"error", e.what()}, {"diagnostics", diagnostics_json(e.diagnostics())}, {"pass", false}};
      pass = false;
    }
    out[name] = std::move(r);
  };
  check("pspec", [](const sw::Vector& v, const sw::RecoveryOptions& o) { return sw::recover_from_pspec(v, o); }, A2);
  check("heat", [](const sw::Vector& v, const sw::RecoveryOptions& o) { return sw::recover_from_heat(v, o); }, q);
  return out;
}

int run_verify(const std::string& what, const VerifyArgs& a) {
  Manifest m;
  m.command = "verify " + what;
  const sw::Domain d = a.domain.load(m);
  a.tol.record(m);
  double tol = a.rel_tol;
  if (tol < 0) tol = what == "stirling-duality" ? 1e-9 : what == "zeta" ? 1e-10 : 1e-6;
  m.parameters["kmax"] = a.kmax;
  m.parameters["tol"] = tol;

  bool pass = true;
  Json doc;
  if (what == "stirling-duality") {
    doc = verify_stirling(d, a, tol, pass);
  } else if (what == "zeta") {
    doc = verify_zeta(d, a, tol, pass);
  } else {
    doc = verify_hankel(d, a, tol, pass);
  }
  doc["check"] = what;
  doc["tolerance"] = tol;
  doc["pass"] = pass;
  doc["manifest"] = m.to_json();
  emit(doc, a.out);
  std::cerr << what << ": " << (pass ? "PASS" : "FAIL") << "\n";
  return pass ? 0 : 1;
}

// -------------------------------------------------------------- recover

struct RecoverArgs {
  std::string from;
  std::string moments;
  long n = 0;
  Tolerances tol;
  std::string out;
};

void run_recover(const RecoverArgs& a) {
  Manifest m;
  m.command = "recover";
  m.inputs.push_back(a.moments);
  m.parameters = {{"from", a.from}, {"moments", a.moments}, {"n", a.n}, {"hankelTol", a.tol.hankel}};

  sw::Vector data = sw::moments_from_json(sw::read_json_file(a.moments), a.moments);
  sw::RecoveryOptions options = a.tol.recovery();
  if (a.n > 0) {
    if (data.size() < 2 * a.n)
      throw sw::InvalidInput("--n " + std::to_string(a.n) + " needs " + std::to_string(2 * a.n) +
                             " moments, file has " + std::to_string(data.size()));
    data = sw::Vector(data.head(2 * a.n));
    options.forced_atoms = a.n;
  }
  const bool pspec = a.from == "pspec";
  const auto r = pspec ? sw::recover_from_pspec(data, options) : sw::recover_from_heat(data, options);
  const sw::Vector used = pspec ? sw::pspec_moments(data) : sw::heat_moments(data);
  const sw::Vector poly = sw::characteristic_polynomial<double>(used, r.measure.atoms, a.tol.hankel);

  Json doc;
  doc["from"] = a.from;
  doc["atoms"] = r.measure.atoms;
  doc["support"] = sw::to_json(r.measure.support);
  doc["weights"] = sw::to_json(r.measure.masses);
  doc["specStar"] = spec_star_json(r.mu);
  doc["partition"] = sw::to_json(r.masses);
  doc["starPolynomial"] = {{"variable", pspec ? "1/mu" : "mu"}, {"coefficients", sw::to_json(poly)}};
  doc["diagnostics"] = diagnostics_json(r.measure.diagnostics);
  doc["manifest"] = m.to_json();
  emit(doc, a.out);
}

// ----------------------------------------------------------------- heat

struct HeatArgs {
  DomainArgs domain;
  Tolerances tol;
  double t0 = 0.0;
  double t1 = 1.0;
  long steps = 100;
  std::string out;
  std::string manifest;
};

void run_heat(const HeatArgs& a) {
  Manifest m;
  m.command = "heat";
  if (!(a.t0 >= 0.0)) throw sw::InvalidInput("--t0 must be >= 0");
  if (!(a.t1 >= a.t0)) throw sw::InvalidInput("--t1 must be >= --t0");
  if (a.steps < 1) throw sw::InvalidInput("--steps must be positive");
  const sw::Domain d = a.domain.load(m);
  a.tol.record(m);
  m.parameters["t0"] = a.t0;
  m.parameters["t1"] = a.t1;
  m.parameters["steps"] = a.steps;

  const sw::InteriorOperator op(d);
  const auto s = sw::eigendecompose(op, a.tol.spectral());
  std::ostringstream csv;
  csv.precision(17);
  csv << "t,Q\n";
  const long rows = a.t1 > a.t0 ? a.steps + 1 : 1;
  for (long i = 0; i < rows; ++i) {
    const double t = i == rows - 1 ? a.t1 : a.t0 + (a.t1 - a.t0) * static_cast<double>(i) / a.steps;
    csv << t << "," << sw::heat_content(s, t) << "\n";
  }
  if (a.out.empty() || a.out == "-") {
    std::cout << csv.str();
  } else {
    sw::write_text_file(a.out, csv.str());
  }
  const std::string manifest_path =
      !a.manifest.empty() ? a.manifest : (a.out.empty() || a.out == "-") ? "" : a.out + ".manifest.json";
  if (manifest_path.empty()) {
    std::cerr << m.to_json().dump() << "\n";
  } else {
    sw::write_text_file(manifest_path, m.to_json().dump(2) + "\n");
  }
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete spectral geometry of graph domains: exit-time moments, Poisson "
               "hierarchy, spectral recovery, heat content."};
  app.set_version_flag("--version", SPECTRALWALK_VERSION);
  app.require_subcommand(1);

  std::function<int()> action;

  BuildArgs build;
  std::function<void(const std::string&)> build_run = [&](const std::string& kind) {
    action = [&build, kind] {
      run_build(kind, build);
      return 0;
    };
  };
  add_build(app, build, build_run);

  InvariantArgs inv;
  auto* invariants = app.add_subcommand("invariants", "moment and Poisson spectra, spectral data");
  inv.domain.add(invariants);
  inv.tol.add(invariants, false);
  invariants->add_option("--kmax", inv.kmax, "largest moment order (<= 20)")->capture_default_str();
  invariants->add_option("--heat-nmax", inv.heat_nmax, "largest heat coefficient order (default kmax)");
  invariants->add_option("--zeta", inv.zeta, "zeta arguments, comma separated")->delimiter(',');
  invariants->add_option("-o,--out", inv.out, "output JSON (default stdout)");
  invariants->callback([&] {
    action = [&] {
      run_invariants(inv);
      return 0;
    };
  });

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo exit-time moments");
  sim.domain.add(simulate);
  simulate->add_option("--start", sim.start, "start vertex id (interior)")->required();
  simulate->add_option("--walks", sim.walks, "number of walks")->capture_default_str();
  simulate->add_option("--seed", sim.seed, "random seed")->capture_default_str();
  simulate->add_option("--kmax", sim.kmax, "largest moment order (<= 6)")->capture_default_str();
  simulate->add_option("--max-steps", sim.max_steps, "total step budget")->capture_default_str();
  simulate->add_option("--threads", sim.threads, "worker threads (0: SPECTRALWALK_THREADS or all)");
  simulate->add_option("-o,--out", sim.out, "output JSON (default stdout)");
  simulate->callback([&] {
    action = [&] {
      run_simulate(sim);
      return 0;
    };
  });

  VerifyArgs ver;
  std::string verify_what;
  auto* verify = app.add_subcommand("verify", "check identities on a domain");
  verify->add_option("check", verify_what, "stirling-duality | zeta | hankel")
      ->required()
      ->check(CLI::IsMember({"stirling-duality", "zeta", "hankel"}));
  ver.domain.add(verify);
  ver.tol.add(verify, true);
  verify->add_option("--kmax", ver.kmax, "largest order (default 8 for stirling-duality, 6 for zeta)");
  verify->add_option("--tol", ver.rel_tol,
                     "relative pass tolerance (default 1e-9 duality, 1e-10 zeta, 1e-6 hankel)");
  verify->add_option("-o,--out", ver.out, "output JSON (default stdout)");
  verify->callback([&] { action = [&] { return run_verify(verify_what, ver); }; });

  RecoverArgs rec;
  auto* recover = app.add_subcommand("recover", "starred spectrum from moment data");
  recover->add_option("--from", rec.from, "pspec | heat")->required()->check(CLI::IsMember({"pspec", "heat"}));
  recover->add_option("--moments", rec.moments, "moment JSON")->required()->check(CLI::ExistingFile);
  recover->add_option("--n", rec.n, "number of atoms (uses the first 2n values)");
  recover->add_option("--hankel-tol", rec.tol.hankel, "Hankel rank-detection tolerance")->capture_default_str();
  recover->add_option("-o,--out", rec.out, "output JSON (default stdout)");
  recover->callback([&] {
    action = [&] {
      run_recover(rec);
      return 0;
    };
  });

  HeatArgs heat;
  auto* heat_cmd = app.add_subcommand("heat", "heat content Q(t) as CSV");
  heat.domain.add(heat_cmd);
  heat.tol.add(heat_cmd, false);
  heat_cmd->add_option("--t0", heat.t0, "first time")->capture_default_str();
  heat_cmd->add_option("--t1", heat.t1, "last time")->capture_default_str();
  heat_cmd->add_option("--steps", heat.steps, "intervals between t0 and t1")->capture_default_str();
  heat_cmd->add_option("-o,--out", heat.out, "output CSV (default stdout)");
  heat_cmd->add_option("--manifest", heat.manifest,
                       "manifest JSON path (default <out>.manifest.json, stderr for stdout)");
  heat_cmd->callback([&] {
    action = [&] {
      run_heat(heat);
      return 0;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    return action ? action() : 2;
  } catch (const sw::InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
