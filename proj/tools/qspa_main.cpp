#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qspa/channels.hpp"
#include "qspa/error.hpp"
#include "qspa/json_io.hpp"
#include "qspa/measure.hpp"
#include "qspa/multicopy.hpp"
#include "qspa/nogo.hpp"
#include "qspa/rng.hpp"
#include "qspa/spectrum.hpp"
#include "qspa/states.hpp"
#include "qspa/tolerances.hpp"
#include "qspa/version.hpp"

namespace {

using nlohmann::json;
using namespace qspa;

json tolerances_json() {
  const Tolerances& tol = tolerances();
  return json{{"hermiticity", tol.hermiticity},
              {"psd_clip", tol.psd_clip},
              {"reconstruction", tol.reconstruction}};
}

json envelope(const std::string& command) {
  return json{{"tool", kToolName},
              {"version", kVersion},
              {"command", command},
              {"tolerances", tolerances_json()}};
}

void emit(const json& body, const std::string& output_path) {
  if (output_path.empty() || output_path == "-") {
    std::cout << body.dump(2) << "\n";
    return;
  }
  std::ofstream out(output_path);
  if (!out)
    throw Error(ErrorKind::io, "cannot write to '" + output_path + "'");
  out << body.dump(2) << "\n";
}

std::vector<double> parse_double_list(const std::string& raw) {
  std::vector<double> values;
  std::stringstream ss(raw);
  std::string token;
  while (std::getline(ss, token, ',')) {
    if (token.empty()) continue;
    values.push_back(std::stod(token));
  }
  if (values.empty())
    throw Error(ErrorKind::validation, "expected a comma-separated number list");
  return values;
}

std::pair<std::size_t, std::size_t> parse_dims_pair(const std::string& raw) {
  const std::vector<double> values = parse_double_list(raw);
  if (values.size() != 2 || values[0] < 1 || values[1] < 1)
    throw Error(ErrorKind::validation,
                "--dims expects two positive integers, e.g. 2,2");
  return {static_cast<std::size_t>(values[0]), static_cast<std::size_t>(values[1])};
}

channels::HermitianMapSpec resolve_map(const std::string& spec, std::size_t d) {
  if (spec.rfind("builtin:", 0) == 0) {
    if (d == 0)
      throw Error(ErrorKind::validation,
                  "builtin maps need an explicit --d dimension");
    return channels::builtin_map(spec, d);
  }
  return io::load_map(spec);
}

struct CommonState {
  std::string output;
};

int run_gen_state(const std::string& kind, std::size_t d, std::uint64_t seed,
                  bool seed_given, const std::string& output) {
  json body = envelope("gen-state");
  states::DensityMatrix rho = [&] {
    if (kind == "max-entangled") return states::max_entangled(d);
    if (!seed_given)
      throw Error(ErrorKind::validation,
                  "gen-state --kind " + kind + " requires an explicit --seed");
    SplitMix64 rng(seed);
    if (kind == "pure") return states::random_pure(d, rng);
    if (kind == "mixed") return states::random_mixed(d, rng);
    throw Error(ErrorKind::validation,
                "unknown state kind '" + kind +
                    "' (available: pure, mixed, max-entangled)");
  }();
  // Merged with the density payload so the output itself is a loadable
  // density JSON.
  json state = io::density_to_json(rho);
  for (auto& [key, value] : state.items()) body[key] = value;
  body["d"] = rho.dim();
  if (kind != "max-entangled") body["seed"] = seed;
  emit(body, output);
  return 0;
}

int run_spa(const std::string& map_spec, std::size_t d, std::optional<double> a,
            std::optional<double> t, const std::string& output) {
  const channels::HermitianMapSpec map = resolve_map(map_spec, d);
  json body = envelope("spa");
  body["map"] = map_spec;
  if (a.has_value() != t.has_value())
    throw Error(ErrorKind::validation, "--a and --t must be given together");
  if (a.has_value()) {
    const channels::KrausMap at = channels::spa_at(map, *a, *t);
    const channels::HermitianMapSpec wrapped =
        channels::HermitianMapSpec::from_kraus(at);
    const auto [cp, lambda_min] = channels::is_cp(wrapped);
    const auto [tp, defect] = channels::is_tp(wrapped);
    body["spa_at"] = json{{"a", *a},
                          {"t", *t},
                          {"map", io::kraus_to_json(at)},
                          {"cp", cp},
                          {"choi_min_eigenvalue", lambda_min},
                          {"trace_preserving", tp},
                          {"tp_defect", defect}};
  } else {
    const channels::SpaResult res = channels::spa_optimal(map);
    body["spa_optimal"] = io::spa_result_to_json(res);
  }
  emit(body, output);
  return 0;
}

int run_apply(const std::string& map_spec, std::size_t d,
              const std::string& state_path, const std::string& output) {
  const states::DensityMatrix rho = io::load_state(state_path);
  const channels::HermitianMapSpec map =
      resolve_map(map_spec, d == 0 ? rho.dim() : d);
  const ComplexMatrix result = channels::apply(map, rho.mat());

  bool valid_density = true;
  try {
    states::DensityMatrix::validate(result);
  } catch (const Error&) {
    valid_density = false;
  }

  json body = envelope("apply");
  body["map"] = map_spec;
  body["output"] = io::matrix_to_json(result);
  body["output_is_density"] = valid_density;
  emit(body, output);
  return 0;
}

int run_entropy(const std::string& state_path, const std::string& kind, double q,
                const std::string& output) {
  const states::DensityMatrix rho = io::load_state(state_path);
  states::EntropyValue value{};
  std::string units;
  if (kind == "tsallis") {
    value = states::tsallis_entropy(rho, q);
    units = "dimensionless";
  } else if (kind == "renyi") {
    value = states::renyi_entropy(rho, q);
    units = "nats";
  } else if (kind == "von-neumann") {
    value = states::von_neumann_entropy(rho);
    units = "nats";
  } else {
    throw Error(ErrorKind::validation,
                "unknown entropy kind '" + kind +
                    "' (available: tsallis, renyi, von-neumann)");
  }
  json body = envelope("entropy");
  body["entropy"] = json{{"kind", kind},
                         {"order", value.order},
                         {"value", value.value},
                         {"units", units}};
  body["purity"] = states::purity(rho);
  emit(body, output);
  return 0;
}

int run_witness(const std::string& state_path, const std::string& dims_raw,
                const std::string& q_raw, std::size_t shots, std::uint64_t seed,
                bool seed_given, std::size_t max_dim, const std::string& output) {
  const states::DensityMatrix rho = io::load_state(state_path);
  const auto [d_a, d_b] = parse_dims_pair(dims_raw);
  const std::vector<double> qs = parse_double_list(q_raw);
  if (shots > 0 && !seed_given)
    throw Error(ErrorKind::validation,
                "sampled witness estimation requires an explicit --seed");

  json body = envelope("witness");
  body["dims"] = json::array({d_a, d_b});

  if (qs.size() > 1) {
    const multicopy::EntropicCheckReport report =
        multicopy::entropic_separability_check(rho, d_a, d_b, qs);
    json entries = json::array();
    for (const auto& e : report.entries)
      entries.push_back(json{{"q", e.q}, {"diff_A", e.diff_a}, {"diff_B", e.diff_b}});
    body["entropic_check"] = json{{"entries", entries},
                                  {"entangled_detected", report.entangled_detected}};
    emit(body, output);
    return 0;
  }

  const double q = qs.front();
  const bool integral = std::abs(q - std::round(q)) < 1e-12;
  json witness;
  witness["q"] = q;
  if (integral && std::llround(q) == 2) {
    const multicopy::WitnessReport report =
        multicopy::witness_q2(rho, d_a, d_b, max_dim);
    witness["value_A"] = report.value_a;
    witness["value_B"] = report.value_b;
    witness["entangled_detected"] = report.entangled_detected;
    if (shots > 0) {
      SplitMix64 rng(seed);
      const states::DensityMatrix two_copies =
          states::DensityMatrix::validate(kron(rho.mat(), rho.mat()));
      json sampled;
      double worst = 0.0;
      bool detected = false;
      const char* labels[2] = {"A", "B"};
      for (int side = 0; side < 2; ++side) {
        const multicopy::MulticopyObservable w = multicopy::witness_observable_q2(
            d_a, d_b, side == 0 ? multicopy::Side::A : multicopy::Side::B, max_dim);
        SplitMix64 stream = rng.split(static_cast<std::uint64_t>(side));
        const measure::ShotEstimate est = measure::sample_observable(
            w.op, two_copies, shots, stream, std::string("W_") + labels[side]);
        sampled[std::string("value_") + labels[side]] =
            json{{"mean", est.mean}, {"std_error", est.std_error}};
        detected = detected || est.mean < -3.0 * est.std_error;
        worst = std::min(worst, est.mean);
      }
      sampled["shots"] = shots;
      sampled["entangled_detected"] = detected;
      witness["sampled"] = sampled;
      witness["entangled_detected"] = detected;
    }
  } else if (integral && std::llround(q) >= 3) {
    const std::size_t n = static_cast<std::size_t>(std::llround(q));
    const double va =
        multicopy::quasi_witness_qn(rho, d_a, d_b, multicopy::Side::A, n, max_dim);
    const double vb =
        multicopy::quasi_witness_qn(rho, d_a, d_b, multicopy::Side::B, n, max_dim);
    witness["value_A"] = va;
    witness["value_B"] = vb;
    witness["entangled_detected"] = (va < -1e-9 || vb < -1e-9);
    witness["note"] =
        "n >= 3 values use non-hermitian shift observables (quasi-witness)";
  } else {
    const multicopy::EntropicCheckReport report =
        multicopy::entropic_separability_check(rho, d_a, d_b, {q});
    witness["value_A"] = report.entries.front().diff_a;
    witness["value_B"] = report.entries.front().diff_b;
    witness["entangled_detected"] = report.entangled_detected;
    witness["note"] = "non-integer q evaluated from eigenvalues";
  }
  body["witness"] = witness;
  emit(body, output);
  return 0;
}

int run_moments(const std::string& state_path, std::size_t k_max,
                const std::string& via, std::size_t shots, std::uint64_t seed,
                bool seed_given, std::size_t max_dim, const std::string& output) {
  const states::DensityMatrix rho = io::load_state(state_path);
  if (k_max == 0) k_max = rho.dim();

  json body = envelope("moments");
  body["k_max"] = k_max;
  if (shots > 0) {
    if (!seed_given)
      throw Error(ErrorKind::validation,
                  "sampled moments require an explicit --seed");
    SplitMix64 rng(seed);
    const measure::MomentShotResult res =
        measure::estimate_moments_shots(rho, k_max, shots, rng, max_dim);
    body["moments"] = res.moments.m;
    body["std_errors"] = res.std_errors;
    body["observables_used"] = res.observables_used;
    body["shots_per_moment"] = shots;
    body["seed"] = seed;
  } else if (via == "shift") {
    std::vector<double> m(k_max, 1.0);
    for (std::size_t k = 2; k <= k_max; ++k)
      m[k - 1] = multicopy::moment(rho, k, max_dim);
    body["moments"] = m;
    body["via"] = "shift";
  } else if (via == "eig") {
    std::vector<double> m(k_max, 1.0);
    for (std::size_t k = 2; k <= k_max; ++k)
      m[k - 1] = states::power_moment(rho, k);
    body["moments"] = m;
    body["via"] = "eig";
  } else {
    throw Error(ErrorKind::validation, "--via must be shift or eig");
  }
  emit(body, output);
  return 0;
}

json spectrum_estimate_to_json(const spectrum::SpectrumEstimate& est) {
  return json{{"eigenvalues", est.eigenvalues},
              {"residual", est.residual},
              {"projected", est.projected}};
}

int run_spectrum(const std::string& moments_raw, const std::string& state_path,
                 const std::string& via, std::size_t shots, std::uint64_t seed,
                 bool seed_given, std::size_t max_dim, const std::string& output) {
  json body = envelope("spectrum");
  if (!moments_raw.empty() && !state_path.empty())
    throw Error(ErrorKind::validation, "give either --moments or --state, not both");

  if (!moments_raw.empty()) {
    spectrum::MomentVector mv;
    mv.m = parse_double_list(moments_raw);
    mv.d = mv.m.size();
    body["moments"] = mv.m;
    body["estimate"] = spectrum_estimate_to_json(spectrum::estimate_spectrum(mv));
    emit(body, output);
    return 0;
  }
  if (state_path.empty())
    throw Error(ErrorKind::validation, "spectrum needs --moments or --state");

  const states::DensityMatrix rho = io::load_state(state_path);
  if (shots > 0) {
    if (!seed_given)
      throw Error(ErrorKind::validation,
                  "the shot-based pipeline requires an explicit --seed");
    SplitMix64 rng(seed);
    const measure::MomentShotResult res =
        measure::estimate_moments_shots(rho, rho.dim(), shots, rng, max_dim);
    body["moments"] = res.moments.m;
    body["std_errors"] = res.std_errors;
    body["observables_used"] = res.observables_used;
    body["shots_per_moment"] = shots;
    body["seed"] = seed;
    body["estimate"] =
        spectrum_estimate_to_json(spectrum::estimate_spectrum(res.moments));
    emit(body, output);
    return 0;
  }

  if (via == "eig") {
    const spectrum::MomentVector mv = spectrum::moments_from_eigenvalues(rho);
    body["moments"] = mv.m;
    body["via"] = "eig";
    body["estimate"] = spectrum_estimate_to_json(spectrum::estimate_spectrum(mv));
  } else if (via == "shift") {
    const spectrum::SpectrumFromStateResult res =
        spectrum::spectrum_from_state(rho, max_dim);
    body["moments"] = res.moments.m;
    body["via"] = res.method;
    body["observables_used"] = res.observables_used;
    if (!res.notice.empty()) body["notice"] = res.notice;
    body["estimate"] = spectrum_estimate_to_json(res.estimate);
  } else {
    throw Error(ErrorKind::validation, "--via must be shift or eig");
  }
  emit(body, output);
  return 0;
}

int run_measure(const std::string& observable, const std::string& state_path,
                std::size_t copies, std::size_t shots, std::uint64_t seed,
                std::size_t max_dim, const std::string& output) {
  const states::DensityMatrix rho = io::load_state(state_path);
  multicopy::MulticopyObservable obs;
  if (observable == "swap") {
    if (copies != 2)
      throw Error(ErrorKind::validation, "the swap observable uses --copies 2");
    obs = multicopy::swap_operator(rho.dim());
  } else if (observable == "shift") {
    obs = multicopy::shift_operator(rho.dim(), copies, max_dim);
  } else {
    throw Error(ErrorKind::validation,
                "unknown observable '" + observable + "' (available: swap, shift)");
  }

  SplitMix64 rng(seed);
  const measure::MulticopyShotEstimate est =
      measure::estimate_multicopy(obs, rho, shots, rng);
  const std::complex<double> exact = multicopy::multicopy_mean(obs, rho);

  json body = envelope("measure");
  body["observable"] = observable;
  body["copies"] = copies;
  body["shots"] = shots;
  body["seed"] = seed;
  body["estimate"] = json{{"mean_re", est.mean.real()},
                          {"mean_im", est.mean.imag()},
                          {"std_error", est.std_error},
                          {"observables_used", est.observables_used}};
  body["exact"] = json{{"mean_re", exact.real()}, {"mean_im", exact.imag()}};
  emit(body, output);
  return 0;
}

int run_nogo_gap(const std::string& state_path, std::size_t n, std::size_t d_flag,
                 std::size_t max_dim, const std::string& output) {
  const states::DensityMatrix rho = io::load_state(state_path);
  if (d_flag != 0 && d_flag != rho.dim()) {
    std::ostringstream msg;
    msg << "--d " << d_flag << " does not match the state dimension "
        << rho.dim();
    throw Error(ErrorKind::validation, msg.str());
  }
  const nogo::NogoGapReport report = nogo::nogo_gap(rho, n, max_dim);
  json body = envelope("nogo gap");
  body["gap_report"] = json{{"d", report.d},
                            {"n", report.n},
                            {"state_purity", report.state_purity},
                            {"sym_overlap", report.sym_overlap},
                            {"target", report.target},
                            {"gap", report.gap}};
  emit(body, output);
  return 0;
}

int run_nogo_map2(std::size_t d, std::size_t trials, std::uint64_t seed,
                  const std::string& output) {
  SplitMix64 rng(seed);
  const nogo::Map2CheckReport report = nogo::map2_linearization_check(d, trials, rng);
  json body = envelope("nogo map2");
  body["map2_report"] = json{{"d", report.d},
                             {"trials", report.trials},
                             {"seed", seed},
                             {"max_deviation", report.max_deviation},
                             {"mean_deviation", report.mean_deviation}};
  emit(body, output);
  return 0;
}

int dispatch(int argc, char** argv) {
  CLI::App app{"Structural physical approximations, multicopy observables and "
               "spectrum estimation for finite-dimensional quantum states"};
  app.set_version_flag("--version", std::string(kToolName) + " " + kVersion);
  app.require_subcommand(1);

  std::string output;
  app.add_option("--output", output, "Write the JSON report here instead of stdout")
      ->capture_default_str();

  // gen-state
  auto* gen = app.add_subcommand("gen-state", "Generate a density matrix JSON");
  std::string gen_kind = "mixed";
  std::size_t gen_d = 2;
  std::uint64_t gen_seed = 0;
  gen->add_option("--kind", gen_kind, "pure | mixed | max-entangled")
      ->capture_default_str();
  gen->add_option("--d", gen_d, "Hilbert space dimension")->capture_default_str();
  auto* gen_seed_opt = gen->add_option("--seed", gen_seed, "RNG seed (required for random kinds)");

  // spa
  auto* spa = app.add_subcommand("spa", "Structural physical approximation of a map");
  std::string spa_map;
  std::size_t spa_d = 0;
  double spa_a = 0.0, spa_t = 0.0;
  spa->add_option("--map", spa_map, "builtin:NAME or a map JSON file")->required();
  spa->add_option("--d", spa_d, "Dimension for builtin maps");
  auto* spa_a_opt = spa->add_option("--a", spa_a, "Explicit noise level");
  auto* spa_t_opt = spa->add_option("--t", spa_t, "Explicit normalizer");

  // apply
  auto* apply_cmd = app.add_subcommand("apply", "Apply a hermitian map to a state");
  std::string apply_map, apply_state;
  std::size_t apply_d = 0;
  apply_cmd->add_option("--map", apply_map, "builtin:NAME or a map JSON file")->required();
  apply_cmd->add_option("--state", apply_state, "Density matrix JSON file")->required();
  apply_cmd->add_option("--d", apply_d, "Dimension for builtin maps");

  // entropy
  auto* entropy = app.add_subcommand("entropy", "Entropy functionals of a state");
  std::string ent_state, ent_kind = "tsallis";
  double ent_q = 2.0;
  entropy->add_option("--state", ent_state, "Density matrix JSON file")->required();
  entropy->add_option("--kind", ent_kind, "tsallis | renyi | von-neumann")
      ->capture_default_str();
  entropy->add_option("--q", ent_q, "Entropy order (q or alpha)")->capture_default_str();

  // witness
  auto* witness = app.add_subcommand("witness", "Multicopy entanglement witness");
  std::string wit_state, wit_dims, wit_q = "2";
  std::size_t wit_shots = 0, wit_maxdim = multicopy::kDefaultOperatorBudget;
  std::uint64_t wit_seed = 0;
  witness->add_option("--state", wit_state, "Bipartite density matrix JSON file")->required();
  witness->add_option("--dims", wit_dims, "Subsystem dimensions, e.g. 2,2")->required();
  witness->add_option("--q", wit_q, "Entropy order(s), comma-separated")
      ->capture_default_str();
  witness->add_option("--shots", wit_shots, "Also sample the witness observables");
  auto* wit_seed_opt = witness->add_option("--seed", wit_seed, "RNG seed for sampling");
  witness->add_option("--max-operator-dim", wit_maxdim, "Operator budget")
      ->capture_default_str();

  // moments
  auto* moments = app.add_subcommand("moments", "Power moments Tr(rho^k)");
  std::string mom_state, mom_via = "shift";
  std::size_t mom_kmax = 0, mom_shots = 0, mom_maxdim = multicopy::kDefaultOperatorBudget;
  std::uint64_t mom_seed = 0;
  moments->add_option("--state", mom_state, "Density matrix JSON file")->required();
  moments->add_option("--k-max", mom_kmax, "Highest moment (default: state dimension)");
  moments->add_option("--via", mom_via, "shift | eig")->capture_default_str();
  moments->add_option("--shots", mom_shots, "Shot-based estimation per moment");
  auto* mom_seed_opt = moments->add_option("--seed", mom_seed, "RNG seed for sampling");
  moments->add_option("--max-operator-dim", mom_maxdim, "Operator budget")
      ->capture_default_str();

  // spectrum
  auto* spect = app.add_subcommand("spectrum", "Recover a spectrum from moments");
  std::string spect_moments, spect_state, spect_via = "shift";
  std::size_t spect_shots = 0, spect_maxdim = multicopy::kDefaultOperatorBudget;
  std::uint64_t spect_seed = 0;
  spect->add_option("--moments", spect_moments, "Comma-separated m_1,...,m_d");
  spect->add_option("--state", spect_state, "Density matrix JSON file");
  spect->add_option("--via", spect_via, "shift | eig")->capture_default_str();
  spect->add_option("--shots", spect_shots, "Shot-based moment estimation");
  auto* spect_seed_opt = spect->add_option("--seed", spect_seed, "RNG seed for sampling");
  spect->add_option("--max-operator-dim", spect_maxdim, "Operator budget")
      ->capture_default_str();

  // measure
  auto* meas = app.add_subcommand("measure", "Shot-based multicopy measurement");
  std::string meas_obs = "swap", meas_state;
  std::size_t meas_copies = 2, meas_shots = 10000,
              meas_maxdim = multicopy::kDefaultOperatorBudget;
  std::uint64_t meas_seed = 0;
  meas->add_option("--observable", meas_obs, "swap | shift")->capture_default_str();
  meas->add_option("--state", meas_state, "Density matrix JSON file")->required();
  meas->add_option("--copies", meas_copies, "Copy count n")->capture_default_str();
  meas->add_option("--shots", meas_shots, "Shots per observable")->capture_default_str();
  meas->add_option("--seed", meas_seed, "RNG seed")->required();
  meas->add_option("--max-operator-dim", meas_maxdim, "Operator budget")
      ->capture_default_str();

  // nogo
  auto* nogo_cmd = app.add_subcommand("nogo", "No-go demonstrations");
  nogo_cmd->require_subcommand(1);
  auto* gap = nogo_cmd->add_subcommand("gap", "Symmetric-subspace gap");
  std::string gap_state;
  std::size_t gap_n = 2, gap_d = 0, gap_maxdim = multicopy::kDefaultOperatorBudget;
  gap->add_option("--state", gap_state, "Density matrix JSON file")->required();
  gap->add_option("--n", gap_n, "Copy count")->capture_default_str();
  gap->add_option("--d", gap_d, "Expected dimension (cross-checked)");
  gap->add_option("--max-operator-dim", gap_maxdim, "Operator budget")
      ->capture_default_str();

  auto* map2 = nogo_cmd->add_subcommand("map2", "Squaring-map linearization check");
  std::size_t map2_d = 2, map2_trials = 100;
  std::uint64_t map2_seed = 0;
  map2->add_option("--d", map2_d, "Dimension")->capture_default_str();
  map2->add_option("--trials", map2_trials, "Random states to test")
      ->capture_default_str();
  map2->add_option("--seed", map2_seed, "RNG seed")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
    json body{{"tool", kToolName},
              {"version", kVersion},
              {"error", json{{"kind", "usage"}, {"message", e.what()}}}};
    std::cout << body.dump(2) << "\n";
    return 2;
  }

  if (gen->parsed())
    return run_gen_state(gen_kind, gen_d, gen_seed, !gen_seed_opt->empty(), output);
  if (spa->parsed())
    return run_spa(spa_map, spa_d,
                   spa_a_opt->empty() ? std::nullopt : std::optional<double>(spa_a),
                   spa_t_opt->empty() ? std::nullopt : std::optional<double>(spa_t),
                   output);
  if (apply_cmd->parsed()) return run_apply(apply_map, apply_d, apply_state, output);
  if (entropy->parsed()) return run_entropy(ent_state, ent_kind, ent_q, output);
  if (witness->parsed())
    return run_witness(wit_state, wit_dims, wit_q, wit_shots, wit_seed,
                       !wit_seed_opt->empty(), wit_maxdim, output);
  if (moments->parsed())
    return run_moments(mom_state, mom_kmax, mom_via, mom_shots, mom_seed,
                       !mom_seed_opt->empty(), mom_maxdim, output);
  if (spect->parsed())
    return run_spectrum(spect_moments, spect_state, spect_via, spect_shots,
                        spect_seed, !spect_seed_opt->empty(), spect_maxdim, output);
  if (meas->parsed())
    return run_measure(meas_obs, meas_state, meas_copies, meas_shots, meas_seed,
                       meas_maxdim, output);
  if (nogo_cmd->parsed()) {
    if (gap->parsed()) return run_nogo_gap(gap_state, gap_n, gap_d, gap_maxdim, output);
    if (map2->parsed()) return run_nogo_map2(map2_d, map2_trials, map2_seed, output);
  }
  return 0;
}

int error_exit_code(ErrorKind kind) {
  return kind == ErrorKind::numeric ? 3 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  set_tolerances(tolerances_from_env());
  try {
    return dispatch(argc, argv);
  } catch (const Error& e) {
    const char* kind = nullptr;
    switch (e.kind()) {
      case ErrorKind::validation: kind = "validation"; break;
      case ErrorKind::numeric: kind = "numeric"; break;
      case ErrorKind::budget: kind = "budget"; break;
      case ErrorKind::io: kind = "io"; break;
    }
    json body{{"tool", kToolName},
              {"version", kVersion},
              {"error", json{{"kind", kind}, {"message", e.what()}}}};
    std::cout << body.dump(2) << "\n";
    return error_exit_code(e.kind());
  } catch (const std::exception& e) {
    json body{{"tool", kToolName},
              {"version", kVersion},
              {"error", json{{"kind", "internal"}, {"message", e.what()}}}};
    std::cout << body.dump(2) << "\n";
    return 3;
  }
}
