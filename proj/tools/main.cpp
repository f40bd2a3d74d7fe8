#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <iostream>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "config_io.hpp"
#include "report.hpp"

#include "qifs/distances.hpp"
#include "qifs/embeddings.hpp"
#include "qifs/entropy.hpp"
#include "qifs/errors.hpp"
#include "qifs/holevo.hpp"
#include "qifs/model_ops.hpp"
#include "qifs/rng.hpp"
#include "qifs/sim.hpp"
#include "qifs/solvers.hpp"
#include "qifs/stochastic.hpp"
#include "qifs/thermo.hpp"

namespace {

using nlohmann::json;
using qifs::Error;
using qifs::ErrorCode;
using qifstool::Report;
using qifstool::Scenario;

[[noreturn]] void bad(const std::string& message) {
  throw Error(ErrorCode::BadInput, message);
}

struct Options {
  std::string config;
  std::string out = "table";
  double tol = -1.0;        // < 0: keep the scenario/library default
  long max_iter = -1;       // < 0: keep the scenario/library default
  std::uint64_t seed = 0;
  bool seed_set = false;
  int jobs = 1;

  std::string embed;
  std::string p_text;
  std::string q_text;
  std::string a_text;

  std::string form = "trace";
  int coord_l = 0;
  int coord_m = 0;
  bool maximize = false;
  double renorm_alpha = 0.0;  // 0: no renormalization

  int burn_in = 1000;
  int samples = 100000;
  int chains = 1;
  int pairs = 0;

  int count = 100;
};

json real_matrix_to_json(const qifs::StochasticMatrix& m) {
  json rows = json::array();
  for (int r = 0; r < m.dim(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.dim(); ++c) row.push_back(m.p(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

json real_row_major_to_json(const std::vector<double>& entries, int dim) {
  json rows = json::array();
  for (int r = 0; r < dim; ++r) {
    json row = json::array();
    for (int c = 0; c < dim; ++c)
      row.push_back(entries[static_cast<std::size_t>(r) * dim + c]);
    rows.push_back(std::move(row));
  }
  return rows;
}

json diag_to_json(const qifs::DensityMatrix& rho) {
  json diag = json::array();
  for (int i = 0; i < rho.dim(); ++i) diag.push_back(rho.mat()(i, i).real());
  return diag;
}

// Merges config file and command-line flags into one effective scenario whose
// canonical JSON (and therefore digest) reflects everything that shaped the run.
Scenario resolve_scenario(const Options& opt) {
  Scenario sc;
  if (!opt.config.empty()) {
    sc = qifstool::load_scenario(opt.config);
  } else {
    sc.canonical = json::object();
  }

  if (!opt.embed.empty()) {
    sc.embedding = qifs::embedding_kind_from_name(opt.embed);
    sc.canonical["embedding"]["kind"] = opt.embed;
  }
  if (!opt.p_text.empty()) {
    sc.p = qifstool::stochastic_from_row_major(
        qifstool::parse_number_list(opt.p_text, "--p"), "--p");
    sc.canonical["embedding"]["p"] = real_matrix_to_json(*sc.p);
    sc.canonical["embedding"]["convention"] = "column-stochastic";
  }
  if (!opt.q_text.empty()) {
    sc.q = qifstool::stochastic_from_row_major(
        qifstool::parse_number_list(opt.q_text, "--q"), "--q");
    sc.canonical["embedding"]["q"] = real_matrix_to_json(*sc.q);
    sc.canonical["embedding"]["convention"] = "column-stochastic";
  }
  if (!opt.a_text.empty()) {
    sc.a = qifstool::parse_number_list(opt.a_text, "--a");
    const int dim = static_cast<int>(std::lround(std::sqrt(double(sc.a.size()))));
    if (dim < 1 || static_cast<std::size_t>(dim) * dim != sc.a.size())
      bad("--a: expected dim*dim entries, got " + std::to_string(sc.a.size()));
    sc.canonical["embedding"]["a"] = real_row_major_to_json(sc.a, dim);
  }

  // Nonhomogeneous stochastic embeddings default the dynamics chain to the
  // uniform one when only the weight chain is supplied.
  if (sc.embedding &&
      (*sc.embedding == qifs::EmbeddingKind::NonHom4 ||
       *sc.embedding == qifs::EmbeddingKind::NonHom2) &&
      !sc.p && sc.q) {
    sc.p = qifs::StochasticMatrix::uniform(sc.q->dim());
    sc.canonical["embedding"]["p"] = real_matrix_to_json(*sc.p);
  }

  if (opt.tol > 0.0) {
    sc.solver.tol = opt.tol;
    sc.canonical["solver"]["tol"] = opt.tol;
  }
  if (opt.max_iter > 0) {
    sc.solver.max_iter = opt.max_iter;
    sc.canonical["solver"]["max_iter"] = opt.max_iter;
  }
  if (opt.seed_set) {
    sc.seed = opt.seed;
    sc.canonical["seed"] = opt.seed;
  }

  // Task flags that shape the numbers join the digested inputs; pure
  // execution knobs (--jobs, --out) do not.
  json flags = json::object();
  if (opt.form != "trace") flags["form"] = opt.form;
  if (opt.coord_l != 0) flags["l"] = opt.coord_l;
  if (opt.coord_m != 0) flags["m"] = opt.coord_m;
  if (opt.maximize) flags["maximize"] = true;
  if (opt.renorm_alpha != 0.0) flags["renormalize"] = opt.renorm_alpha;
  if (opt.burn_in != 1000) flags["burn_in"] = opt.burn_in;
  if (opt.samples != 100000) flags["samples"] = opt.samples;
  if (opt.chains != 1) flags["chains"] = opt.chains;
  if (opt.pairs != 0) flags["pairs"] = opt.pairs;
  if (opt.count != 100) flags["count"] = opt.count;
  if (!flags.empty()) sc.canonical["flags"] = flags;

  if (!sc.has_model() && !sc.has_embedding() && sc.a.empty() && !sc.p && !sc.q)
    bad("no model source: pass --config FILE or --embed KIND");
  return sc;
}

// The weighted model a scenario describes: inline (V, W) families, or one of
// the stochastic-chain embeddings.
qifs::QifsModel scenario_model(const Scenario& sc) {
  if (sc.has_model()) {
    if (!sc.weights)
      bad("this task needs a weight family: add model.families.W");
    return qifs::QifsModel::make(*sc.dynamics, *sc.weights);
  }
  if (!sc.has_embedding())
    bad("this task needs a model config or --embed KIND");
  switch (*sc.embedding) {
    case qifs::EmbeddingKind::Hom4:
    case qifs::EmbeddingKind::Hom2:
      if (!sc.p) bad("homogeneous embeddings need the chain --p");
      return qifs::embed_stochastic(*sc.p, *sc.embedding);
    case qifs::EmbeddingKind::NonHom4:
    case qifs::EmbeddingKind::NonHom2:
      if (!sc.q) bad("nonhomogeneous embeddings need the weight chain --q");
      return qifs::embed_stochastic(*sc.p, *sc.q, *sc.embedding);
    default:
      bad("embedding \"" +
          std::string(qifs::embedding_kind_name(*sc.embedding)) +
          "\" does not define a weighted model");
  }
}

// The (dynamics, potential) pair feeding the transfer-operator eigenproblem.
qifs::PotentialModel scenario_potential_model(const Scenario& sc) {
  if (sc.has_model()) {
    if (!sc.potential)
      bad("this task needs a potential family: add model.families.H");
    return {*sc.dynamics, *sc.potential};
  }
  if (!sc.has_embedding())
    bad("this task needs V and H: use a model config, or --embed perron/bridge");
  switch (*sc.embedding) {
    case qifs::EmbeddingKind::PerronPotential: {
      if (sc.a.empty()) bad("the perron embedding needs the positive matrix --a");
      return qifs::embed_perron(sc.a);
    }
    case qifs::EmbeddingKind::ClassicBridge: {
      if (sc.a.empty() || !sc.q)
        bad("the bridge embedding needs --a and the stochastic --q");
      const qifs::BridgeModel bm = qifs::embed_classic_bridge(sc.a, *sc.q);
      return {bm.model.dynamics, bm.potential};
    }
    default:
      bad("this embedding does not define a transfer eigenproblem; "
          "use a model config with families V and H, or --embed perron/bridge");
  }
}

Report base_report(const std::string& task, const Scenario& sc) {
  Report report;
  report.task = task;
  report.inputs_digest = qifstool::fnv1a(sc.canonical.dump());
  report.seed = sc.seed;
  return report;
}

// ------------------------------------------------------------------ handlers

Report run_validate(const Scenario& sc, const Options&) {
  Report report = base_report("validate", sc);
  if (!sc.name.empty()) report.results["name"] = sc.name;
  if (sc.has_model()) {
    report.results["source"] = "model";
    report.results["dim"] = sc.dynamics->dim();
    report.results["arity"] = sc.dynamics->arity();
    json families = json::array({"V"});
    if (sc.weights) families.push_back("W");
    if (sc.potential) families.push_back("H");
    report.results["families"] = families;
    if (sc.weights) {
      // Raises NotNormalized when the weights do not resolve the identity.
      const qifs::QifsModel m = qifs::QifsModel::make(*sc.dynamics, *sc.weights);
      report.residuals["weight_normalization_defect"] =
          m.weights.normalization_defect();
    }
  } else {
    report.results["source"] = "embedding";
    report.results["kind"] = qifs::embedding_kind_name(*sc.embedding);
    switch (*sc.embedding) {
      case qifs::EmbeddingKind::PerronPotential:
      case qifs::EmbeddingKind::ClassicBridge: {
        const qifs::PotentialModel pm = scenario_potential_model(sc);
        report.results["dim"] = pm.dynamics.dim();
        report.results["arity"] = pm.dynamics.arity();
        break;
      }
      default: {
        const qifs::QifsModel m = scenario_model(sc);
        report.results["dim"] = m.dim();
        report.results["arity"] = m.arity();
        report.residuals["weight_normalization_defect"] =
            m.weights.normalization_defect();
        break;
      }
    }
  }
  report.results["valid"] = true;
  return report;
}

Report run_fixpoint(const Scenario& sc, const Options&) {
  const qifs::QifsModel m = scenario_model(sc);
  const qifs::FixedPointResult fp = qifs::solve_lambda_fixed_point(m, sc.solver);
  Report report = base_report("fixpoint", sc);
  report.results["state"] = qifstool::complex_matrix_to_json(fp.state.mat());
  report.results["state_diag"] = diag_to_json(fp.state);
  report.results["branch_probabilities"] = qifs::branch_probabilities(m, fp.state);
  report.residuals["fixed_point_residual"] = fp.residual;
  report.iterations = fp.iterations;
  return report;
}

Report run_eigen(const Scenario& sc, const Options&) {
  const qifs::PotentialModel pm = scenario_potential_model(sc);
  const qifs::EigenResult eig =
      qifs::solve_ruelle_eigen(pm.potential, pm.dynamics, sc.solver);
  Report report = base_report("eigen", sc);
  report.results["beta"] = eig.beta;
  report.results["log_beta"] = std::log(eig.beta);
  report.results["rho_beta"] = qifstool::complex_matrix_to_json(eig.rho_beta.mat());
  report.results["rho_beta_diag"] = diag_to_json(eig.rho_beta);
  report.residuals["eigen_residual"] = eig.residual;
  report.iterations = eig.iterations;
  return report;
}

Report run_entropy(const Scenario& sc, const Options&) {
  const qifs::QifsModel m = scenario_model(sc);
  const qifs::FixedPointResult fp = qifs::solve_lambda_fixed_point(m, sc.solver);
  const double h = qifs::qifs_entropy(m, fp.state);
  Report report = base_report("entropy", sc);
  report.results["entropy"] = h;
  report.results["state_diag"] = diag_to_json(fp.state);
  report.results["branch_probabilities"] = qifs::branch_probabilities(m, fp.state);
  if (sc.has_embedding()) {
    // Only the four-matrix nonhomogeneous variant is governed by the weight
    // chain; the two-matrix one reduces to the dynamics chain.
    const qifs::StochasticMatrix& governing =
        *sc.embedding == qifs::EmbeddingKind::NonHom4 ? *sc.q : *sc.p;
    const double rate = qifs::markov_entropy(governing);
    report.results["markov_entropy"] = rate;
    report.residuals["entropy_minus_markov"] = h - rate;
  }
  report.residuals["fixed_point_residual"] = fp.residual;
  report.iterations = fp.iterations;
  return report;
}

Report run_pressure(const Scenario& sc, const Options& opt) {
  qifs::KrausFamily dynamics = [&] {
    if (sc.has_model()) return *sc.dynamics;
    if (*sc.embedding == qifs::EmbeddingKind::ClassicBridge)
      return qifs::embed_classic_bridge(sc.a, *sc.q).model.dynamics;
    bad("pressure needs a model config with V/H (and W unless --maximize)");
  }();
  qifs::KrausFamily potential = scenario_potential_model(sc).potential;
  if (opt.renorm_alpha != 0.0)
    potential = qifs::renormalize_potential(potential, opt.renorm_alpha);

  const qifs::EigenResult eig =
      qifs::solve_ruelle_eigen(potential, dynamics, sc.solver);

  qifs::KrausFamily weights = [&] {
    if (opt.maximize)
      return qifs::maximizing_weights(dynamics, potential, eig);
    if (sc.has_model() && sc.weights) return *sc.weights;
    if (sc.has_embedding() &&
        *sc.embedding == qifs::EmbeddingKind::ClassicBridge)
      return qifs::embed_classic_bridge(sc.a, *sc.q).model.weights;
    bad("pressure needs a weight family W, or --maximize");
  }();

  const qifs::QifsModel m = qifs::QifsModel::make(dynamics, weights);
  const qifs::FixedPointResult fp = qifs::solve_lambda_fixed_point(m, sc.solver);

  qifs::PressureReport pr;
  if (opt.form == "trace") {
    pr = qifs::pressure_check_trace_form(m, potential, eig, fp.state);
  } else if (opt.form == "coordinate") {
    pr = qifs::pressure_check_coordinate_form(m, potential, eig, fp.state,
                                              opt.coord_l, opt.coord_m);
  } else {
    bad("--form must be trace or coordinate (got \"" + opt.form + "\")");
  }

  Report report = base_report("pressure", sc);
  report.results["form"] = opt.form;
  report.results["beta"] = eig.beta;
  report.results["log_beta"] = pr.log_beta;
  report.results["entropy_term"] = pr.entropy_term;
  report.results["potential_term"] = pr.potential_term;
  report.results["lhs"] = pr.lhs;
  report.results["gap"] = pr.gap;
  report.results["maximized"] = opt.maximize;
  report.results["rho_beta_diag"] = diag_to_json(eig.rho_beta);
  if (opt.form == "coordinate") {
    report.results["coord_l"] = pr.coord_l;
    report.results["coord_m"] = pr.coord_m;
  }
  if (opt.renorm_alpha != 0.0) report.results["renormalized_by"] = opt.renorm_alpha;
  report.residuals["equality_residual"] = pr.equality_residual;
  report.residuals["eigen_residual"] = eig.residual;
  report.residuals["fixed_point_residual"] = fp.residual;
  report.iterations = eig.iterations + fp.iterations;
  return report;
}

Report run_classic(const Scenario& sc, const Options&) {
  std::vector<double> a = sc.a;
  std::optional<qifs::StochasticMatrix> q = sc.q;
  if (a.empty() || !q)
    bad("classic needs the real matrix --a and the stochastic --q");
  const qifs::PressureReport pr = qifs::classic_inequality_check(a, *q);
  Report report = base_report("classic", sc);
  report.results["log_beta"] = pr.log_beta;
  report.results["beta"] = std::exp(pr.log_beta);
  report.results["entropy_term"] = pr.entropy_term;
  report.results["potential_term"] = pr.potential_term;
  report.results["lhs"] = pr.lhs;
  report.results["gap"] = pr.gap;
  report.residuals["equality_residual"] = pr.equality_residual;
  return report;
}

Report run_holevo(const Scenario& sc, const Options&) {
  const qifs::QifsModel m = scenario_model(sc);
  const qifs::FixedPointResult fp = qifs::solve_lambda_fixed_point(m, sc.solver);
  const qifs::Ensemble ensemble = qifs::induced_ensemble(m, fp.state);
  const double xi = qifs::holevo_information(ensemble);
  const double average_entropy =
      qifs::von_neumann_entropy(qifs::average_state(ensemble));

  const qifs::Povm system_povm = qifs::povm_from_weights(m.weights);
  const qifs::Povm label_povm = qifs::lift_to_label_space(system_povm, m, fp.state);
  const double mutual =
      qifs::mutual_information(qifs::born_joint(ensemble, label_povm));

  Report report = base_report("holevo", sc);
  report.results["holevo_information"] = xi;
  report.results["average_state_entropy"] = average_entropy;
  report.results["conditional_entropy"] = average_entropy - xi;
  report.results["mutual_information"] = mutual;
  report.results["bound_slack"] = xi - mutual;
  report.results["ensemble_probs"] = ensemble.probs;
  report.residuals["fixed_point_residual"] = fp.residual;
  report.iterations = fp.iterations;
  return report;
}

Report run_markov_check(const Scenario& sc, const Options&) {
  if (!sc.has_embedding()) bad("markov-check needs --embed (or an embedding config)");
  const qifs::QifsModel m = scenario_model(sc);
  const qifs::StochasticMatrix governing =
      *sc.embedding == qifs::EmbeddingKind::NonHom4 ? *sc.q : *sc.p;

  const qifs::FixedPointResult fp = qifs::solve_lambda_fixed_point(m, sc.solver);
  const double h = qifs::qifs_entropy(m, fp.state);
  const double rate = qifs::markov_entropy(governing);
  const std::vector<double> pi = qifs::stationary_vector(governing);

  Report report = base_report("markov-check", sc);
  report.results["kind"] = qifs::embedding_kind_name(*sc.embedding);
  report.results["qifs_entropy"] = h;
  report.results["markov_entropy"] = rate;
  report.results["stationary_vector"] = pi;
  report.results["state_diag"] = diag_to_json(fp.state);
  report.residuals["entropy_difference"] = h - rate;
  report.residuals["power_identity_deviation"] =
      qifs::markov_power_identity(governing, 3);
  report.residuals["fixed_point_residual"] = fp.residual;
  report.iterations = fp.iterations;
  return report;
}

Report run_sample(const Scenario& sc, const Options& opt) {
  if (!sc.seed) bad("sample is a randomized task: an explicit --seed is required");
  const qifs::QifsModel m = scenario_model(sc);

  qifs::SimConfig cfg;
  cfg.burn_in = opt.burn_in;
  cfg.samples = opt.samples;
  cfg.chains = opt.chains;
  cfg.seed = *sc.seed;

  const qifs::BarycenterEstimate bary = qifs::estimate_barycenter(m, cfg);
  const qifs::ScalarEstimate ent = qifs::estimate_entropy_integral(m, cfg);

  Report report = base_report("sample", sc);
  report.results["barycenter"] = qifstool::complex_matrix_to_json(bary.state.mat());
  report.results["barycenter_diag"] = diag_to_json(bary.state);
  report.results["entropy_integral"] = ent.value;
  report.results["samples_used"] = bary.samples_used;
  report.results["chains"] = opt.chains;
  report.results["burn_in"] = opt.burn_in;
  if (opt.pairs > 0)
    report.results["contraction_ratios"] =
        qifs::empirical_contraction(m, opt.pairs, *sc.seed);
  report.residuals["barycenter_std_error"] = bary.std_error;
  report.residuals["entropy_std_error"] = ent.std_error;
  return report;
}

Report run_sweep(const Scenario& sc, const Options& opt) {
  if (!sc.seed) bad("sweep is a randomized task: an explicit --seed is required");
  if (opt.count < 1) bad("--count must be at least 1");
  if (opt.jobs < 1) bad("--jobs must be at least 1");

  const qifs::PotentialModel pm = scenario_potential_model(sc);
  const qifs::EigenResult eig =
      qifs::solve_ruelle_eigen(pm.potential, pm.dynamics, sc.solver);
  const int arity = pm.dynamics.arity();
  const int dim = pm.dynamics.dim();

  std::vector<std::vector<double>> rows(static_cast<std::size_t>(opt.count));
  std::atomic<long> next{0};
  std::mutex failure_mutex;
  std::exception_ptr first_failure;

  auto worker = [&] {
    for (;;) {
      const long i = next.fetch_add(1);
      if (i >= opt.count) return;
      try {
        // Stream i of the seed: reproducible regardless of scheduling.
        qifs::SplitRng rng(*sc.seed, static_cast<std::uint64_t>(i));
        const qifs::KrausFamily weights =
            qifs::random_normalized_family(arity, dim, rng);
        const qifs::QifsModel m = qifs::QifsModel::make(pm.dynamics, weights);
        const qifs::FixedPointResult fp =
            qifs::solve_lambda_fixed_point(m, sc.solver);
        const qifs::PressureReport pr =
            qifs::pressure_check_trace_form(m, pm.potential, eig, fp.state);
        rows[static_cast<std::size_t>(i)] = {
            static_cast<double>(i), pr.entropy_term, pr.lhs,
            pr.log_beta,            pr.gap,          pr.equality_residual};
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!first_failure) first_failure = std::current_exception();
        return;
      }
    }
  };

  const int thread_count = std::min<long>(opt.jobs, opt.count);
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(thread_count));
  for (int t = 0; t < thread_count; ++t) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
  if (first_failure) std::rethrow_exception(first_failure);

  double min_gap = rows.front()[4];
  double max_gap = rows.front()[4];
  double mean_entropy = 0.0;
  long equality_hits = 0;
  for (const auto& row : rows) {
    min_gap = std::min(min_gap, row[4]);
    max_gap = std::max(max_gap, row[4]);
    mean_entropy += row[1];
    if (row[5] <= 1e-9) ++equality_hits;
  }
  mean_entropy /= static_cast<double>(rows.size());

  Report report = base_report("sweep", sc);
  report.table_header = {"sample", "entropy", "lhs",
                         "log_beta", "gap",   "equality_residual"};
  report.table_rows = std::move(rows);
  report.results["count"] = opt.count;
  report.results["beta"] = eig.beta;
  report.results["min_gap"] = min_gap;
  report.results["max_gap"] = max_gap;
  report.results["mean_entropy"] = mean_entropy;
  report.results["equality_hits"] = equality_hits;
  report.residuals["eigen_residual"] = eig.residual;
  report.iterations = eig.iterations;
  return report;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Thermodynamic formalism for quantum iterated function systems"};
  app.require_subcommand(1);

  Options opt;
  std::vector<CLI::Option*> seed_options;
  using Handler = std::function<Report(const Scenario&, const Options&)>;
  std::vector<std::pair<CLI::App*, Handler>> handlers;

  auto add_task = [&](const char* name, const char* description, Handler handler,
                      bool with_embedding) {
    CLI::App* sub = app.add_subcommand(name, description);
    sub->add_option("--config", opt.config, "JSON scenario file");
    sub->add_option("--out", opt.out, "Output format: table, json, csv");
    sub->add_option("--tol", opt.tol, "Solver tolerance override");
    sub->add_option("--max-iter", opt.max_iter, "Solver iteration cap override");
    seed_options.push_back(
        sub->add_option("--seed", opt.seed, "Seed (required for randomized tasks)"));
    if (with_embedding) {
      sub->add_option("--embed", opt.embed,
                      "Embedding kind: hom4, nonhom4, hom2, nonhom2, perron, bridge");
      sub->add_option("--p", opt.p_text,
                      "Column-stochastic matrix, row-major comma list");
      sub->add_option("--q", opt.q_text,
                      "Column-stochastic weight matrix, row-major comma list");
      sub->add_option("--a", opt.a_text, "Real matrix, row-major comma list");
    }
    handlers.emplace_back(sub, std::move(handler));
    return sub;
  };

  add_task("validate", "Parse and validate a scenario", run_validate, true);
  add_task("fixpoint", "Solve the Markov-operator fixed point", run_fixpoint, true);
  add_task("eigen", "Solve the transfer-operator eigenproblem", run_eigen, true);
  add_task("entropy", "Entropy of the model at its fixed point", run_entropy, true);
  CLI::App* pressure =
      add_task("pressure", "Evaluate the pressure inequality", run_pressure, true);
  pressure->add_option("--form", opt.form, "Inequality form: trace or coordinate");
  pressure->add_option("--l", opt.coord_l, "Coordinate row index (0-based)");
  pressure->add_option("--m", opt.coord_m, "Coordinate column index (0-based)");
  pressure->add_flag("--maximize", opt.maximize,
                     "Use the equality-attaining scalar weights");
  pressure->add_option("--renormalize", opt.renorm_alpha,
                       "Scale the potential family by sqrt(alpha) first");
  add_task("classic", "Classical chain inequality for (A, Q)", run_classic, true);
  add_task("holevo", "Holevo bound data for the induced ensemble", run_holevo, true);
  add_task("markov-check", "Embedding-vs-chain entropy cross-check",
           run_markov_check, true);
  CLI::App* sample =
      add_task("sample", "Monte-Carlo trajectory estimates", run_sample, true);
  sample->add_option("--burn-in", opt.burn_in, "Discarded leading steps");
  sample->add_option("--samples", opt.samples, "Recorded states");
  sample->add_option("--chains", opt.chains, "Independent chains to merge");
  sample->add_option("--pairs", opt.pairs,
                     "Also report per-branch contraction ratios over N pairs");
  CLI::App* sweep = add_task(
      "sweep", "Random-weight pressure sweep over a fixed (V, H)", run_sweep, true);
  sweep->add_option("--count", opt.count, "Number of weight families to draw");
  sweep->add_option("--jobs", opt.jobs, "Worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Flag misuse is an input error (exit 2); --help stays a success.
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  for (CLI::Option* seed_option : seed_options)
    if (seed_option->count() > 0) opt.seed_set = true;

  try {
    const qifstool::OutputFormat format = qifstool::format_from_name(opt.out);
    for (const auto& [sub, handler] : handlers) {
      if (!sub->parsed()) continue;
      const Scenario scenario = resolve_scenario(opt);
      const Report report = handler(scenario, opt);
      qifstool::emit(report, format, std::cout);
      return 0;
    }
    bad("no task selected");
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return qifs::is_input_error(e.code()) ? 2 : 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
