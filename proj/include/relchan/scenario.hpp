#pragma once

// Batch scenarios behind the command-line tool: configuration parsing,
// seeded execution, and report emission.
//
// A configuration is one JSON object. Recognized keys:
//   mass, atoms, beta, gamma_re, gamma_im, kernel {family, lambda}, t, t0,
//   seed, trials, case, foliation {n, x0}, output_dir
// with `atoms` holding exactly one of
//   {"list": [[px,py,pz], ...]}
//   {"ring": {"count": n, "radius": r, "plane": "xy"|"yz"|"zx", "include_rest": bool}}
//   {"boost_chain": {"seed": [px,py,pz], "rapidity": r, "length": n, "direction": [x,y,z]}}
// Unknown keys are rejected at every level.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <numbers>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "relchan/channel.hpp"
#include "relchan/constraint_solver.hpp"
#include "relchan/covariant_form.hpp"
#include "relchan/dilation.hpp"
#include "relchan/io.hpp"
#include "relchan/observables.hpp"
#include "relchan/poincare_algebra.hpp"
#include "relchan/random.hpp"

namespace relchan {

enum class ScenarioKind { verify_covariance, solve_kraus, char_fn, conservation, check_algebra, choi, dilation_demo };

inline const char* to_string(ScenarioKind k) {
  switch (k) {
    case ScenarioKind::verify_covariance: return "verify-covariance";
    case ScenarioKind::solve_kraus: return "solve-kraus";
    case ScenarioKind::char_fn: return "char-fn";
    case ScenarioKind::conservation: return "conservation";
    case ScenarioKind::check_algebra: return "check-algebra";
    case ScenarioKind::choi: return "choi";
    case ScenarioKind::dilation_demo: return "dilation-demo";
  }
  return "?";
}

inline constexpr int kExitPass = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitIoError = 3;

inline constexpr const char* kOutDirEnv = "RELCHAN_OUT_DIR";

class ConfigError : public Error {
 public:
  using Error::Error;
};

struct AtomSpec {
  enum class Kind { list, ring, boost_chain } kind = Kind::ring;
  std::vector<Eigen::Vector3d> list;
  int count = 4;
  double radius = 0.5;
  std::string plane = "xy";
  bool include_rest = false;
  Eigen::Vector3d chain_seed{0.3, -0.2, 0.1};
  Eigen::Vector3d chain_direction{0.0, 0.0, 1.0};
  double rapidity = 0.3;
  int length = 5;
};

struct ScenarioConfig {
  double mass = 1.0;
  AtomSpec atoms;
  double beta = 0.0;
  double gamma_re = 0.0;
  double gamma_im = 0.0;
  KernelFamily kernel_family = KernelFamily::constant;
  double kernel_lambda = 0.0;
  double t = 1.0;
  double t0 = 0.0;
  std::uint64_t seed = 1;
  std::optional<int> trials;
  std::optional<Case> lg_case;
  Foliation foliation;
  std::string output_dir;
};

namespace detail {

inline void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + " must be an object");
  for (const auto& [k, v] : obj.items())
    if (!allowed.count(k)) throw ConfigError("unknown key '" + k + "' in " + where);
}

inline double number(const json& j, const std::string& key) {
  if (!j.is_number()) throw ConfigError("'" + key + "' must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ConfigError("'" + key + "' must be finite");
  return v;
}

inline int integer(const json& j, const std::string& key, int lo) {
  if (!j.is_number_integer()) throw ConfigError("'" + key + "' must be an integer");
  const auto v = j.get<long long>();
  if (v < lo || v > 1000000) throw ConfigError("'" + key + "' is out of range");
  return static_cast<int>(v);
}

inline Eigen::Vector3d triple(const json& j, const std::string& key) {
  if (!j.is_array() || j.size() != 3) throw ConfigError("'" + key + "' must be a list of three numbers");
  return {number(j[0], key), number(j[1], key), number(j[2], key)};
}

inline FourVector quadruple(const json& j, const std::string& key) {
  if (!j.is_array() || j.size() != 4) throw ConfigError("'" + key + "' must be a list of four numbers");
  return {number(j[0], key), number(j[1], key), number(j[2], key), number(j[3], key)};
}

inline AtomSpec parse_atoms(const json& j) {
  check_keys(j, {"list", "ring", "boost_chain"}, "atoms");
  if (j.size() != 1) throw ConfigError("atoms must hold exactly one of list, ring, boost_chain");
  AtomSpec s;
  if (j.contains("list")) {
    s.kind = AtomSpec::Kind::list;
    if (!j["list"].is_array()) throw ConfigError("atoms.list must be a list");
    for (const auto& p : j["list"]) s.list.push_back(triple(p, "atoms.list"));
  } else if (j.contains("ring")) {
    const auto& r = j["ring"];
    check_keys(r, {"count", "radius", "plane", "include_rest"}, "atoms.ring");
    s.kind = AtomSpec::Kind::ring;
    if (r.contains("count")) s.count = integer(r["count"], "atoms.ring.count", 1);
    if (r.contains("radius")) s.radius = number(r["radius"], "atoms.ring.radius");
    if (!(s.radius > 0.0)) throw ConfigError("atoms.ring.radius must be positive");
    if (r.contains("plane")) {
      if (!r["plane"].is_string()) throw ConfigError("atoms.ring.plane must be a string");
      s.plane = r["plane"].get<std::string>();
      if (s.plane != "xy" && s.plane != "yz" && s.plane != "zx") throw ConfigError("atoms.ring.plane must be xy, yz or zx");
    }
    if (r.contains("include_rest")) {
      if (!r["include_rest"].is_boolean()) throw ConfigError("atoms.ring.include_rest must be a boolean");
      s.include_rest = r["include_rest"].get<bool>();
    }
  } else {
    const auto& b = j["boost_chain"];
    check_keys(b, {"seed", "rapidity", "length", "direction"}, "atoms.boost_chain");
    s.kind = AtomSpec::Kind::boost_chain;
    if (b.contains("seed")) s.chain_seed = triple(b["seed"], "atoms.boost_chain.seed");
    if (b.contains("rapidity")) s.rapidity = number(b["rapidity"], "atoms.boost_chain.rapidity");
    if (b.contains("length")) s.length = integer(b["length"], "atoms.boost_chain.length", 1);
    if (b.contains("direction")) s.chain_direction = triple(b["direction"], "atoms.boost_chain.direction");
    if (s.chain_direction.norm() == 0.0) throw ConfigError("atoms.boost_chain.direction must be nonzero");
  }
  return s;
}

}  // namespace detail

inline ScenarioConfig parse_config(const json& j) {
  using namespace detail;
  check_keys(j, {"mass", "atoms", "beta", "gamma_re", "gamma_im", "kernel", "t", "t0", "seed", "trials", "case",
                 "foliation", "output_dir"},
             "configuration");
  ScenarioConfig c;
  if (j.contains("mass")) c.mass = number(j["mass"], "mass");
  if (!(c.mass > 0.0)) throw ConfigError("mass must be positive");
  if (j.contains("atoms")) c.atoms = parse_atoms(j["atoms"]);
  if (j.contains("beta")) c.beta = number(j["beta"], "beta");
  if (j.contains("gamma_re")) c.gamma_re = number(j["gamma_re"], "gamma_re");
  if (j.contains("gamma_im")) c.gamma_im = number(j["gamma_im"], "gamma_im");
  if (j.contains("kernel")) {
    const auto& k = j["kernel"];
    check_keys(k, {"family", "lambda"}, "kernel");
    if (k.contains("family")) {
      if (!k["family"].is_string()) throw ConfigError("kernel.family must be a string");
      const auto f = k["family"].get<std::string>();
      if (f == "constant")
        c.kernel_family = KernelFamily::constant;
      else if (f == "exponential")
        c.kernel_family = KernelFamily::exponential;
      else
        throw ConfigError("kernel.family must be constant or exponential");
    }
    if (k.contains("lambda")) c.kernel_lambda = number(k["lambda"], "kernel.lambda");
    if (c.kernel_lambda < 0.0) throw ConfigError("kernel.lambda must be non-negative");
  }
  if (j.contains("t")) c.t = number(j["t"], "t");
  if (j.contains("t0")) c.t0 = number(j["t0"], "t0");
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) throw ConfigError("seed must be a non-negative integer");
    c.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("trials")) c.trials = integer(j["trials"], "trials", 1);
  if (j.contains("case")) {
    if (!j["case"].is_string()) throw ConfigError("case must be a string");
    c.lg_case = parse_case(j["case"].get<std::string>());
    if (!c.lg_case) throw ConfigError("case must be one of I, II, III, IV");
  }
  if (j.contains("foliation")) {
    const auto& f = j["foliation"];
    check_keys(f, {"n", "x0"}, "foliation");
    FourVector n{1, 0, 0, 0}, x0{};
    if (f.contains("n")) n = quadruple(f["n"], "foliation.n");
    if (f.contains("x0")) x0 = quadruple(f["x0"], "foliation.x0");
    try {
      c.foliation = Foliation::make(n, x0);
    } catch (const InvalidFoliation& e) {
      throw ConfigError(e.what());
    }
  }
  if (j.contains("output_dir")) {
    if (!j["output_dir"].is_string()) throw ConfigError("output_dir must be a string");
    c.output_dir = j["output_dir"].get<std::string>();
  }
  return c;
}

inline ScenarioConfig load_config(const std::string& path) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const IoError& e) {
    throw ConfigError(std::string("cannot read configuration: ") + e.what());
  }
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("configuration is not valid JSON: ") + e.what());
  }
  return parse_config(j);
}

inline AtomBasis build_basis(const ScenarioConfig& c) {
  try {
    const AtomSpec& s = c.atoms;
    switch (s.kind) {
      case AtomSpec::Kind::list: return AtomBasis::from_spatial(c.mass, s.list);
      case AtomSpec::Kind::ring: {
        std::vector<Eigen::Vector3d> ps;
        if (s.include_rest) ps.emplace_back(Eigen::Vector3d::Zero());
        const int a = s.plane == "xy" ? 0 : s.plane == "yz" ? 1 : 2;
        const int b = (a + 1) % 3;
        for (int k = 0; k < s.count; ++k) {
          const double phi = 2.0 * std::numbers::pi * k / s.count;
          Eigen::Vector3d p = Eigen::Vector3d::Zero();
          p(a) = s.radius * std::cos(phi);
          p(b) = s.radius * std::sin(phi);
          ps.push_back(p);
        }
        return AtomBasis::from_spatial(c.mass, ps);
      }
      case AtomSpec::Kind::boost_chain:
        return boost_chain(c.mass, s.chain_seed, LorentzTransform::boost(s.chain_direction, s.rapidity), s.length);
    }
  } catch (const Error& e) {
    throw ConfigError(std::string("invalid atom specification: ") + e.what());
  }
  throw ConfigError("invalid atom specification");
}

inline ChannelParams build_params(const ScenarioConfig& c, const AtomBasis& basis) {
  const InvariantKernel shape = c.kernel_family == KernelFamily::exponential
                                    ? InvariantKernel::exponential(1.0, c.kernel_lambda)
                                    : InvariantKernel::constant(1.0);
  try {
    return make_params(c.beta, {c.gamma_re, c.gamma_im}, shape, c.t, c.t0, basis);
  } catch (const InvalidParams& e) {
    throw ConfigError(e.what());
  }
}

struct NamedTable {
  std::string name;
  CsvTable table;
};

struct ScenarioResult {
  ScenarioKind kind;
  bool passed = true;
  std::vector<NamedTable> tables;
  std::optional<json> document;  // written as JSON regardless of format
  std::string summary;
};

struct RunOptions {
  std::optional<Case> lg_case;
};

namespace detail {

inline ScenarioResult run_covariance(const ScenarioConfig& c) {
  const AtomBasis basis = build_basis(c);
  const ChannelParams params = build_params(c, basis);
  Rng rng(c.seed);
  const int trials = c.trials.value_or(100);
  CsvTable table({"trial", "residual", "residual_foliation"});
  double worst = 0.0, worst_f = 0.0;
  for (int k = 0; k < trials; ++k) {
    const PoincareElement g{random_lorentz(rng), random_four_vector(rng, 2.0)};
    const Operator rho = random_density(rng, basis.dim());
    const double r = covariance_check(params, basis, g, rho).residual;
    const double rf = covariance_check_cov(params, c.foliation, basis, g, rho);
    worst = std::max(worst, r);
    worst_f = std::max(worst_f, rf);
    table.add_row({k, r, rf});
  }
  table.add_row({"max", worst, worst_f});
  ScenarioResult res{ScenarioKind::verify_covariance, worst < 1e-10 && worst_f < 1e-10, {}, {}, ""};
  res.tables.push_back({"residuals", std::move(table)});
  res.summary = "max covariance residual " + format_double(worst) + ", foliation form " + format_double(worst_f);
  return res;
}

inline json case_report_json(const CaseReport& r) {
  return {{"case", to_string(r.tag)},
          {"standard_momentum", {r.ell[0], r.ell[1], r.ell[2], r.ell[3]}},
          {"seed", r.seed},
          {"atoms", r.atom_count},
          {"translation_samples", r.translation_samples},
          {"little_group_samples", r.little_group_samples},
          {"rows", r.rows},
          {"expected_dimension", r.expected_dim},
          {"raw_dimension", r.raw_dim},
          {"observed_dimension", r.final_dim},
          {"continuum_excluded", r.continuum_excluded},
          {"raw_support", r.raw_support},
          {"support", r.support},
          {"max_c_variance", r.max_c_variance},
          {"passed", r.passed()}};
}

inline ScenarioResult run_solve_kraus(const ScenarioConfig& c, const RunOptions& opt) {
  const std::optional<Case> tag = opt.lg_case ? opt.lg_case : c.lg_case;
  if (!tag) throw ConfigError("solve-kraus needs a case (--case or the 'case' key)");
  const CaseReport rep = classify(case_fixture(*tag, c.mass), c.seed);
  ScenarioResult res{ScenarioKind::solve_kraus, rep.passed(), {}, case_report_json(rep), ""};
  CsvTable table({"case", "expected_dimension", "raw_dimension", "observed_dimension", "continuum_excluded", "passed"});
  table.add_row({to_string(rep.tag), rep.expected_dim, static_cast<long>(rep.raw_dim), static_cast<long>(rep.final_dim),
                 rep.continuum_excluded ? "true" : "false", rep.passed() ? "true" : "false"});
  res.tables.push_back({"summary", std::move(table)});
  res.summary = std::string("case ") + to_string(rep.tag) + ": observed dimension " + std::to_string(rep.final_dim) +
                " (expected " + std::to_string(rep.expected_dim) + ")";
  return res;
}

inline ScenarioResult run_char_fn(const ScenarioConfig& c) {
  const AtomBasis basis = build_basis(c);
  Rng rng(c.seed);
  const Operator rho = random_density(rng, basis.dim());
  const int trials = c.trials.value_or(20);
  CsvTable table({"sample", "a0", "a1", "a2", "a3", "re", "im", "abs"});
  std::vector<FourVector> pts;
  bool ok = std::abs(char_fn_translation(rho, FourVector{}, basis) - 1.0) < 1e-12;
  for (int k = 0; k < trials; ++k) {
    const FourVector a = random_four_vector(rng, 2.0);
    pts.push_back(a);
    const cplx chi = char_fn_translation(rho, a, basis);
    ok = ok && std::abs(chi) <= 1.0 + 1e-12;
    table.add_row({k, a[0], a[1], a[2], a[3], chi.real(), chi.imag(), std::abs(chi)});
  }
  const std::vector<FourVector> grid(pts.begin(), pts.begin() + std::min<std::size_t>(6, pts.size()));
  const double bochner = bochner_min_eigenvalue(rho, grid, basis);
  ok = ok && bochner >= -1e-9;

  CsvTable mt({"generator", "order", "direct", "finite_difference", "relative_error"});
  for (auto g : {MomentGenerator::H, MomentGenerator::P1, MomentGenerator::P2, MomentGenerator::P3})
    for (int n = 1; n <= 4; ++n) {
      const MomentCheck m = moments(rho, g, n, basis);
      ok = ok && m.passed();
      mt.add_row({to_string(g), n, m.direct, m.finite_difference, m.relative_error});
    }
  ScenarioResult res{ScenarioKind::char_fn, ok, {}, {}, ""};
  res.tables.push_back({"samples", std::move(table)});
  res.tables.push_back({"moments", std::move(mt)});
  res.summary = "Bochner minimum eigenvalue " + format_double(bochner);
  return res;
}

inline ScenarioResult run_conservation(const ScenarioConfig& c) {
  const AtomBasis basis = build_basis(c);
  const ChannelParams params = build_params(c, basis);
  Rng rng(c.seed);
  const Operator rho = random_density(rng, basis.dim());
  const int trials = c.trials.value_or(20);
  std::vector<FourVector> as;
  for (int k = 0; k < trials; ++k) as.push_back(random_four_vector(rng, 2.0));
  const ConservationReport rep = verify_momentum_conservation(params, basis, rho, as);

  CsvTable table({"sample", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "residual", "defect_re", "defect_im",
                  "formula_defect_re", "formula_defect_im"});
  for (const auto& s : rep.samples) {
    const cplx formula = s.rhs - s.chi_t0;
    table.add_row({s.id, s.lhs.real(), s.lhs.imag(), s.rhs.real(), s.rhs.imag(), s.residual, s.defect().real(),
                   s.defect().imag(), formula.real(), formula.imag()});
  }
  ScenarioResult res{ScenarioKind::conservation, rep.passed(), {}, {}, ""};
  res.tables.push_back({"momentum", std::move(table)});
  res.summary = "four-momentum identity max residual " + format_double(rep.max_residual);

  if (params.beta == 0.0) {
    std::vector<Eigen::Matrix4d> thetas;
    for (int k = 0; k < 8; ++k) thetas.push_back(theta_rotation({0, 0, 1}, 2.0 * std::numbers::pi * k / 8.0));
    thetas.push_back(theta_boost({1, 0, 0}, 0.4));
    const ConservationReport lrep = verify_lorentz_conservation(params, basis, rho, thetas);
    CsvTable lt({"sample", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "residual", "defect_re", "defect_im"});
    for (const auto& s : lrep.samples)
      lt.add_row({s.id, s.lhs.real(), s.lhs.imag(), s.rhs.real(), s.rhs.imag(), s.residual, s.defect().real(),
                  s.defect().imag()});
    res.tables.push_back({"lorentz", std::move(lt)});
    res.passed = res.passed && lrep.max_residual < lrep.tolerance;
    res.summary += ", Lorentz identity max residual " + format_double(lrep.max_residual);
  }
  return res;
}

inline ScenarioResult run_check_algebra(const ScenarioConfig& c) {
  Rng rng(c.seed);
  const int trials = c.trials.value_or(100);
  std::vector<std::string> header{"sample", "n0", "n1", "n2", "n3"};
  const auto probe = verify_foliation_algebra(FourVector{1, 0, 0, 0});
  for (const auto& f : probe.families) header.push_back(f.name);
  header.push_back("max_residual");
  CsvTable table(header);
  bool ok = true;
  for (int k = 0; k <= trials; ++k) {
    const FourVector n = k == 0 ? FourVector{1, 0, 0, 0} : random_unit_timelike(rng);
    const auto rep = verify_foliation_algebra(n);
    std::vector<Cell> row{k, n[0], n[1], n[2], n[3]};
    for (const auto& f : rep.families) row.emplace_back(f.max_residual);
    row.emplace_back(rep.max_residual());
    table.add_row(row);
    ok = ok && rep.passed();
  }
  double antisym = 0.0;
  for (int a = 0; a < 10; ++a)
    for (int b = 0; b < 10; ++b)
      antisym = std::max(antisym, max_abs(commutator(basis_element(a), basis_element(b)) +
                                          commutator(basis_element(b), basis_element(a))));
  const double jac = jacobi_residual();
  CsvTable jt({"jacobi_residual", "antisymmetry_residual"});
  jt.add_row({jac, antisym});
  ok = ok && jac < 1e-12 && antisym == 0.0;
  ScenarioResult res{ScenarioKind::check_algebra, ok, {}, {}, ""};
  res.tables.push_back({"foliation", std::move(table)});
  res.tables.push_back({"jacobi", std::move(jt)});
  res.summary = "Jacobi residual " + format_double(jac);
  return res;
}

inline ScenarioResult run_choi(const ScenarioConfig& c) {
  const AtomBasis basis = build_basis(c);
  const ChannelParams params = build_params(c, basis);
  Rng rng(c.seed);
  const Operator cm = choi(params, basis);
  const ChoiReport cr = analyze_choi(cm, basis.dim());
  const KrausSet ks = phi_kraus_set(params, basis);
  double agreement = 0.0;
  const int trials = c.trials.value_or(5);
  for (int k = 0; k < trials; ++k) {
    const Operator rho = random_density(rng, basis.dim());
    agreement = std::max(agreement, (apply_kraus(ks, rho) - apply_Phi(params, basis, rho)).cwiseAbs().maxCoeff());
  }
  const double compl_res = completeness_residual(ks);
  CsvTable table({"dimension", "kraus_count", "choi_min_eigenvalue", "choi_hermiticity", "partial_trace_residual",
                  "completeness_residual", "kraus_vs_direct"});
  table.add_row({static_cast<long>(basis.dim()), ks.size(), cr.min_eigenvalue, cr.hermiticity_error,
                 cr.partial_trace_residual, compl_res, agreement});
  const bool ok = cr.completely_positive() && cr.trace_preserving() && compl_res < 1e-11 && agreement < 1e-11;
  ScenarioResult res{ScenarioKind::choi, ok, {}, {}, ""};
  res.tables.push_back({"summary", std::move(table)});
  res.summary = "Choi minimum eigenvalue " + format_double(cr.min_eigenvalue);
  return res;
}

inline ScenarioResult run_dilation(const ScenarioConfig& c) {
  Rng rng(c.seed);
  const int states = c.trials.value_or(20);
  CsvTable table({"system_dim", "env_dim", "env_state", "kraus_count", "completeness_residual", "max_deviation"});
  bool ok = true;
  for (Eigen::Index d : {2, 3}) {
    const Eigen::MatrixXcd u = random_unitary(rng, d * d);
    for (const bool mixed : {false, true}) {
      Operator env = Operator::Zero(d, d);
      if (mixed)
        env = random_density(rng, d);
      else
        env(0, 0) = 1.0;
      const KrausSet ks = dilation_extract(u, d, env);
      double dev = 0.0;
      for (int k = 0; k < states; ++k) {
        const Operator rho = random_density(rng, d);
        dev = std::max(dev, (apply_kraus(ks, rho) - partial_trace_evolution(u, rho, env)).cwiseAbs().maxCoeff());
      }
      const double cres = completeness_residual(ks);
      ok = ok && dev < 1e-10 && cres < 1e-10;
      table.add_row({static_cast<long>(d), static_cast<long>(d), mixed ? "mixed" : "pure", ks.size(), cres, dev});
    }
  }
  ScenarioResult res{ScenarioKind::dilation_demo, ok, {}, {}, ""};
  res.tables.push_back({"roundtrip", std::move(table)});
  res.summary = ok ? "dilation round trip within 1e-10" : "dilation round trip exceeded 1e-10";
  return res;
}

}  // namespace detail

inline ScenarioResult run(ScenarioKind kind, const ScenarioConfig& config, const RunOptions& opt = {}) {
  switch (kind) {
    case ScenarioKind::verify_covariance: return detail::run_covariance(config);
    case ScenarioKind::solve_kraus: return detail::run_solve_kraus(config, opt);
    case ScenarioKind::char_fn: return detail::run_char_fn(config);
    case ScenarioKind::conservation: return detail::run_conservation(config);
    case ScenarioKind::check_algebra: return detail::run_check_algebra(config);
    case ScenarioKind::choi: return detail::run_choi(config);
    case ScenarioKind::dilation_demo: return detail::run_dilation(config);
  }
  throw Error("unknown scenario");
}

enum class ReportFormat { csv, json };

/// Output directory precedence: explicit argument, then the environment
/// override, then the configuration, then the working directory.
inline std::string resolve_output_dir(const std::optional<std::string>& cli_dir, const ScenarioConfig& c) {
  if (cli_dir && !cli_dir->empty()) return *cli_dir;
  if (const char* env = std::getenv(kOutDirEnv); env && *env) return env;
  if (!c.output_dir.empty()) return c.output_dir;
  return ".";
}

/// Writes one file per table (<kind>_<table>.csv or .json) and the optional
/// document as <kind>.json. Returns the paths written.
inline std::vector<std::string> emit_report(const ScenarioResult& res, ReportFormat format, const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir + ": " + ec.message());
  std::vector<std::string> written;
  const std::string stem = (std::filesystem::path(dir) / to_string(res.kind)).string();
  for (const auto& t : res.tables) {
    const std::string path = stem + "_" + t.name + (format == ReportFormat::csv ? ".csv" : ".json");
    write_file(path, format == ReportFormat::csv ? t.table.str() : t.table.to_json().dump(2) + "\n");
    written.push_back(path);
  }
  if (res.document) {
    const std::string path = stem + ".json";
    write_file(path, res.document->dump(2) + "\n");
    written.push_back(path);
  }
  return written;
}

}  // namespace relchan
