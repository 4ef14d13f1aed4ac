#include "qdilog/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include "qdilog/dilog.hpp"
#include "qdilog/errors.hpp"
#include "qdilog/faddeev.hpp"
#include "qdilog/period_search.hpp"
#include "qdilog/quantum_identities.hpp"
#include "qdilog/saddle.hpp"
#include "qdilog/seed_io.hpp"

namespace qdilog {

using json = nlohmann::ordered_json;
using cplx = std::complex<double>;

std::complex<double> parse_complex(const std::string& raw) {
  std::string s;
  for (char c : raw) {
    if (c != ' ') s += c;
  }
  auto number = [&](const std::string& t) {
    try {
      std::size_t used = 0;
      const double v = std::stod(t, &used);
      if (used != t.size()) throw SpecParseError("bad number '" + t + "'");
      return v;
    } catch (const std::logic_error&) {
      throw SpecParseError("bad number '" + t + "'");
    }
  };
  if (s.empty()) throw SpecParseError("empty complex number");
  if (const auto comma = s.find(','); comma != std::string::npos) {
    return {number(s.substr(0, comma)), number(s.substr(comma + 1))};
  }
  if (s.back() != 'i') return {number(s), 0.0};
  s.pop_back();
  std::size_t split = std::string::npos;
  for (std::size_t i = s.size(); i-- > 1;) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  auto imag = [&](const std::string& t) {
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    return number(t);
  };
  if (split == std::string::npos) return {0.0, imag(s)};
  return {number(s.substr(0, split)), imag(s.substr(split))};
}

namespace {

struct Options {
  std::string builtin;
  std::string seed_file;
  std::optional<std::string> sequence;
  std::optional<int> order;
  std::optional<double> tol;
  std::optional<int> trials;
  std::uint64_t rng_seed = 20241016;
  std::string format = "json";
  std::string output;
  std::string y;
  std::optional<std::string> b;
  std::optional<std::string> lambda;
  double max_imag_lambda = 0.1;
  std::optional<std::string> z;
  std::optional<int> t;
  std::optional<std::string> q0;
  std::string check = "all";
  std::string grid;
  std::size_t depth = 5;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::vector<std::size_t> parse_index_list(const std::string& text, std::size_t n) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    int k = 0;
    try {
      k = std::stoi(item);
    } catch (const std::logic_error&) {
      throw SpecParseError("bad index '" + item + "'");
    }
    if (k < 1 || static_cast<std::size_t>(k) > n) throw SpecParseError("index " + item + " out of range");
    out.push_back(static_cast<std::size_t>(k - 1));
  }
  return out;
}

SeedSpec load_seed(const Options& o) {
  if (o.builtin.empty() == o.seed_file.empty()) throw SpecParseError("give exactly one of --builtin, --seed-file");
  SeedSpec s = o.builtin.empty() ? load_seed_file(o.seed_file) : builtin_seed(o.builtin);
  if (o.sequence) s.schedule.sequence = parse_index_list(*o.sequence, s.matrix.rank());
  return s;
}

json seed_json(const SeedSpec& s) {
  json j = json::parse(seed_to_json(s));
  j["name"] = s.name;
  return j;
}

int default_order(const SeedSpec& s) {
  if (s.matrix.rank() <= 2) return 8;
  return 6;
}

std::vector<int> one_based(std::span<const std::size_t> v) {
  std::vector<int> out;
  for (auto x : v) out.push_back(static_cast<int>(x) + 1);
  return out;
}

const char* verdict(bool pass) { return pass ? "PASS" : "FAIL"; }

// OpenMP fan-out over independent trials; the first exception is rethrown
// after the loop.
template <class Body>
void parallel_trials(std::size_t count, Body body) {
  std::vector<std::exception_ptr> errors(count);
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < static_cast<long>(count); ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

// ---------------------------------------------------------------------------

json cmd_mutate(const Options& o) {
  const SeedSpec s = load_seed(o);
  const std::size_t n = s.matrix.rank();
  std::vector<mpq_class> y(n, 1);
  if (!o.y.empty()) {
    y.clear();
    std::stringstream ss(o.y);
    std::string item;
    while (std::getline(ss, item, ',')) {
      mpq_class v;
      if (v.set_str(item, 10) != 0) throw SpecParseError("bad y value '" + item + "'");
      v.canonicalize();
      y.push_back(v);
    }
    if (y.size() != n) throw SpecParseError("--y needs " + std::to_string(n) + " values");
  }
  for (const auto& v : y) {
    if (sgn(v) <= 0) throw SpecParseError("y-variables must be positive");
  }
  const auto& seq = s.schedule.sequence;
  const auto mats = matrix_trajectory(s.matrix, seq);
  TropicalState trop = TropicalState::initial(s.matrix);
  const SignSequence signs = sign_sequence(s.matrix, seq);

  json rows = json::array();
  for (std::size_t t = 0; t <= seq.size(); ++t) {
    json row{{"t", t + 1}, {"B", mats[t].rows()}, {"c", trop.cvectors}};
    std::vector<std::string> ys;
    for (const auto& v : y) ys.push_back(v.get_str());
    row["y"] = ys;
    if (t < seq.size()) {
      row["k"] = seq[t] + 1;
      row["epsilon"] = signs.signs[t];
      y = exchange_y<mpq_class>(mats[t], y, seq[t], 1);
      trop = mutate_tropical(trop, seq[t]);
    }
    rows.push_back(row);
  }
  const PeriodReport period = check_period(s.matrix, s.schedule);
  return {{"command", "mutate"},
          {"seed", seed_json(s)},
          {"sign_sequence", signs.signs},
          {"n_plus", signs.n_plus},
          {"n_minus", signs.n_minus},
          {"periodic", period.periodic},
          {"table", rows},
          {"verdict", "PASS"}};
}

json cmd_classical(const Options& o) {
  const SeedSpec s = load_seed(o);
  const std::size_t n = s.matrix.rank();
  const int trials = o.trials.value_or(100);
  const double tol = o.tol.value_or(1e-10);
  std::mt19937_64 rng(o.rng_seed);
  std::uniform_real_distribution<double> exponent(-3.0, 3.0);
  std::vector<std::vector<double>> draws(static_cast<std::size_t>(trials), std::vector<double>(n));
  for (auto& d : draws) {
    for (auto& v : d) v = std::pow(10.0, exponent(rng));
  }
  // Fails fast with NotAPeriod before fanning out.
  if (!check_period(s.matrix, s.schedule).periodic) throw NotAPeriod("schedule is not a period of the seed");

  const auto start = std::chrono::steady_clock::now();
  std::vector<ClassicalIdentityReport> reps(draws.size());
  parallel_trials(draws.size(),
                  [&](std::size_t i) { reps[i] = verify_classical_identity(s.matrix, s.schedule, draws[i]); });
  const double elapsed = seconds_since(start);

  double ms = 0, md = 0, mp = 0;
  json rows = json::array();
  for (std::size_t i = 0; i < reps.size(); ++i) {
    const auto& r = reps[i];
    ms = std::max(ms, r.signed_residual());
    md = std::max(md, r.di_residual());
    mp = std::max(mp, r.diprime_residual());
    rows.push_back({{"trial", i + 1},
                    {"y0", draws[i]},
                    {"signed", r.sum_signed},
                    {"DI", r.sum_DI},
                    {"DIprime", r.sum_DIprime}});
  }
  const bool pass = ms < tol && md < tol && mp < tol;
  json rep{{"command", "verify classical"},
           {"seed", seed_json(s)},
           {"trials", trials},
           {"rng_seed", o.rng_seed},
           {"tolerance", tol},
           {"max_signed_residual", ms},
           {"max_DI_residual", md},
           {"max_DIprime_residual", mp},
           {"runtime_s", elapsed},
           {"table", rows},
           {"verdict", verdict(pass)}};
  if (!reps.empty()) {
    rep["n_plus"] = reps[0].n_plus;
    rep["n_minus"] = reps[0].n_minus;
  }
  return rep;
}

json identity_json(const IdentityReport& r) {
  return {{"identity", r.identity},
          {"order", r.order},
          {"coefficients", r.coefficients},
          {"probabilistic", r.probabilistic},
          {"factors", r.factors},
          {"residual_terms", r.residual_terms},
          {"residual", r.residual_terms.size()},
          {"verdict", verdict(r.pass())}};
}

template <class Fn>
json with_field(const Options& o, Fn fn) {
  if (o.q0) {
    mpq_class q;
    if (q.set_str(*o.q0, 10) != 0) throw SpecParseError("bad --q0 '" + *o.q0 + "'");
    q.canonicalize();
    if (q == 0) throw SpecParseError("--q0 must be nonzero");
    return fn(SpecializedField(q));
  }
  return fn(RationalFunctionField{});
}

json cmd_quantum(const Options& o, const std::string& which) {
  const SeedSpec s = load_seed(o);
  const int order = o.order.value_or(default_order(s));
  const auto start = std::chrono::steady_clock::now();
  json rep{{"command", "verify " + which}, {"seed", seed_json(s)}, {"order", order}};
  bool pass = true;

  json reports = with_field(o, [&](const auto& field) {
    using Field = std::decay_t<decltype(field)>;
    json out = json::array();
    if (which == "quantum-tropical") {
      out.push_back(identity_json(verify_tropical_identity(s.matrix, s.schedule, order, field)));
    } else if (which == "quantum-universal") {
      std::vector<TorusElement<Field>> args;
      json r = identity_json(verify_universal_identity(s.matrix, s.schedule, order, field, &args));
      if constexpr (std::is_same_v<Field, RationalFunctionField>) {
        std::vector<std::string> shown;
        for (const auto& a : args) shown.push_back(format_element(a));
        r["arguments"] = shown;
      }
      out.push_back(r);
    } else if (which == "shuffle") {
      const std::size_t L = s.schedule.length();
      std::vector<std::size_t> ts;
      if (o.t) {
        ts.push_back(static_cast<std::size_t>(*o.t));
      } else {
        for (std::size_t t = 1; t <= L; ++t) ts.push_back(t);
      }
      for (std::size_t t : ts) {
        if (t < 1 || t > L) throw SpecParseError("--t out of range");
        json r = identity_json(verify_shuffle(s.matrix, s.schedule.sequence, t, order, field));
        r["t"] = t;
        out.push_back(r);
      }
    } else {
      const auto pair = verify_dual_pair(s.matrix, s.schedule, order, field);
      out.push_back(identity_json(pair.first));
      out.push_back(identity_json(pair.second));
    }
    return out;
  });
  for (const auto& r : reports) pass = pass && r["verdict"] == "PASS";
  rep["reports"] = reports;
  rep["runtime_s"] = seconds_since(start);
  rep["verdict"] = verdict(pass);
  return rep;
}

json cmd_saddle(const Options& o) {
  const SeedSpec s = load_seed(o);
  const std::size_t n = s.matrix.rank();
  const int trials = o.trials.value_or(50);
  const double tol = o.tol.value_or(1e-10);
  constexpr double tight = 1e-12;
  std::mt19937_64 rng(o.rng_seed);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  std::vector<std::vector<double>> draws(static_cast<std::size_t>(trials), std::vector<double>(n));
  for (auto& d : draws) {
    for (auto& v : d) v = dist(rng);
  }
  if (!check_period(s.matrix, s.schedule).periodic) throw NotAPeriod("schedule is not a period of the seed");

  const auto start = std::chrono::steady_clock::now();
  std::vector<SaddleReport> reps(draws.size());
  std::vector<NewtonResult> newton(draws.size());
  parallel_trials(draws.size(), [&](std::size_t i) {
    const SaddleState st = build_solution(s.matrix, s.schedule, draws[i]);
    reps[i] = residuals(st, s.matrix, s.schedule);
    newton[i] = newton_refinement(st, s.matrix, s.schedule);
  });
  const double elapsed = seconds_since(start);

  SaddleReport worst;
  double max_action = 0, max_cross = 0, max_step = 0, max_grad = 0;
  json rows = json::array();
  for (std::size_t i = 0; i < reps.size(); ++i) {
    const auto& r = reps[i];
    worst.residual_u_eqs = std::max(worst.residual_u_eqs, r.residual_u_eqs);
    worst.residual_p_eqs = std::max(worst.residual_p_eqs, r.residual_p_eqs);
    worst.residual_w_eqs = std::max(worst.residual_w_eqs, r.residual_w_eqs);
    worst.residual_constraints = std::max(worst.residual_constraints, r.residual_constraints);
    max_action = std::max(max_action, std::abs(r.action_value));
    max_cross = std::max(max_cross, std::abs(r.action_value - r.cross_check_value));
    max_step = std::max(max_step, newton[i].step_norm);
    max_grad = std::max(max_grad, newton[i].gradient_norm);
    rows.push_back({{"trial", i + 1},
                    {"u1", draws[i]},
                    {"max_residual", r.max_residual()},
                    {"action", r.action_value.real()},
                    {"cross_check", r.cross_check_value.real()},
                    {"newton_step", newton[i].step_norm}});
  }
  const bool pass = worst.max_residual() < tol && max_action < tol && max_cross < tight && max_step < tight;
  return {{"command", "verify saddle"},
          {"seed", seed_json(s)},
          {"trials", trials},
          {"rng_seed", o.rng_seed},
          {"tolerance", tol},
          {"residual_u_eqs", worst.residual_u_eqs},
          {"residual_p_eqs", worst.residual_p_eqs},
          {"residual_w_eqs", worst.residual_w_eqs},
          {"residual_constraints", worst.residual_constraints},
          {"max_abs_action", max_action},
          {"max_action_minus_cross_check", max_cross},
          {"max_newton_step", max_step},
          {"max_gradient", max_grad},
          {"runtime_s", elapsed},
          {"table", rows},
          {"verdict", verdict(pass)}};
}

json cmd_saddle_lambda(const Options& o) {
  const SeedSpec s = load_seed(o);
  const std::size_t n = s.matrix.rank();
  const int trials = o.trials.value_or(10);
  const double tol = o.tol.value_or(1e-6);
  constexpr double floor = 1e-14;
  std::mt19937_64 rng(o.rng_seed);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  std::vector<std::vector<double>> draws(static_cast<std::size_t>(trials), std::vector<double>(n));
  for (auto& d : draws) {
    for (auto& v : d) v = dist(rng);
  }

  std::vector<cplx> lambdas;
  if (o.lambda) {
    lambdas.push_back(parse_complex(*o.lambda));
  } else {
    for (double step : {0.1, 0.05, 0.01}) lambdas.push_back(1.0 + step * std::polar(1.0, kPi / 4.0));
  }

  json rows = json::array();
  std::vector<double> actions;
  bool pass = true;
  for (const cplx lam : lambdas) {
    SaddleOptions opt;
    opt.mode = SaddleMode::Lambda;
    opt.lambda = lam;
    opt.max_imag_lambda = o.max_imag_lambda;
    double max_action = 0, max_res = 0, max_gap = 0;
    for (const auto& u1 : draws) {
      const SaddleState st = build_solution(s.matrix, s.schedule, u1, opt);
      const SaddleReport r = residuals(st, s.matrix, s.schedule);
      const SaddleState ref = build_solution(s.matrix, s.schedule, u1);
      max_action = std::max(max_action, std::abs(r.action_value));
      max_res = std::max(max_res, r.max_residual());
      max_gap = std::max(max_gap, std::abs(r.action_value - ref.action));
    }
    actions.push_back(max_action);
    pass = pass && max_action < tol;
    rows.push_back({{"lambda_re", lam.real()},
                    {"lambda_im", lam.imag()},
                    {"distance_to_1", std::abs(lam - 1.0)},
                    {"max_abs_action", max_action},
                    {"max_residual", max_res},
                    {"max_gap_to_b_mode", max_gap}});
  }
  bool decreasing = true;
  for (std::size_t i = 1; i < actions.size(); ++i) decreasing = decreasing && actions[i] <= actions[i - 1] + floor;
  pass = pass && decreasing;
  return {{"command", "verify saddle-lambda"},
          {"seed", seed_json(s)},
          {"trials", trials},
          {"rng_seed", o.rng_seed},
          {"tolerance", tol},
          {"max_imag_lambda", o.max_imag_lambda},
          {"non_increasing", decreasing},
          {"table", rows},
          {"verdict", verdict(pass)}};
}

json cmd_search(const Options& o) {
  const SeedSpec s = load_seed(o);
  const auto start = std::chrono::steady_clock::now();
  const auto found = find_periods(s.matrix, o.depth);
  json rows = json::array();
  for (const auto& p : found) {
    rows.push_back({{"length", p.length()}, {"sequence", one_based(p.sequence)}, {"nu", one_based(p.nu)}});
  }
  return {{"command", "search"},
          {"seed", seed_json(s)},
          {"depth", o.depth},
          {"count", found.size()},
          {"runtime_s", seconds_since(start)},
          {"table", rows},
          {"verdict", "PASS"}};
}

json point_row(double z, cplx b, const PhibPointCheck& c) {
  return {{"b_re", b.real()},
          {"b_im", b.imag()},
          {"z", z},
          {"modulus_error", c.modulus_error},
          {"recurrence_b", c.recurrence_b},
          {"recurrence_inv_b", c.recurrence_inv_b},
          {"duality", c.duality},
          {"psi_relation", c.psi_relation}};
}

json cmd_phib(const Options& o) {
  static const std::vector<std::string> checks{"all", "value", "unitarity", "recurrence", "duality", "psi",
                                               "asymptotics"};
  if (std::find(checks.begin(), checks.end(), o.check) == checks.end()) {
    throw SpecParseError("unknown --check '" + o.check + "'");
  }
  const auto start = std::chrono::steady_clock::now();

  if (o.check == "asymptotics") {
    const double tol = o.tol.value_or(0.0);
    json rows = json::array();
    bool pass = true;
    const std::vector<double> qs{0.9, 0.95, 0.99, 0.999};
    for (double x : {0.5, 1.0, 2.0}) {
      const auto e = psiq_asymptotics(x, qs);
      for (std::size_t i = 0; i < qs.size(); ++i) {
        rows.push_back({{"family", "psi_q"}, {"x", x}, {"parameter", qs[i]}, {"error", e[i]}});
        if (i > 0) pass = pass && e[i] < e[i - 1] + tol;
      }
    }
    const std::vector<double> bs{0.5, 0.4, 0.3, 0.2};
    const double z = o.z ? parse_complex(*o.z).real() : 0.0;
    const auto e = phib_asymptotics(z, bs);
    for (std::size_t i = 0; i < bs.size(); ++i) {
      rows.push_back({{"family", "phi_b"}, {"x", z}, {"parameter", bs[i]}, {"error", e[i]}});
      if (i > 0) pass = pass && e[i] < e[i - 1] + tol;
    }
    return {{"command", "phib"},
            {"check", o.check},
            {"runtime_s", seconds_since(start)},
            {"table", rows},
            {"verdict", verdict(pass)}};
  }

  std::vector<double> zs;
  std::vector<cplx> bs;
  if (!o.grid.empty()) {
    if (o.grid != "default") throw SpecParseError("unknown --grid '" + o.grid + "'");
    for (int i = 0; i < 5; ++i) zs.push_back(-0.4 + 0.2 * i);
    bs = {0.7, 1.0, 1.3, std::polar(1.0, kPi / 7.0), std::polar(1.0, kPi / 5.0)};
  }
  if (o.z) {
    const cplx z = parse_complex(*o.z);
    if (z.imag() != 0.0) throw SpecParseError("--z takes a real value");
    zs = {z.real()};
  }
  if (o.b) bs = {parse_complex(*o.b)};
  if (zs.empty()) zs = {-0.4, -0.2, 0.0, 0.2, 0.4};
  if (bs.empty()) bs = {1.0};

  const auto grid = check_phib_grid(zs, bs);
  const bool all = o.check == "all";
  auto limit = [&](const char* name, double dflt) { return all || !o.tol ? dflt : (o.check == name ? *o.tol : dflt); };
  const double tol_mod = limit("unitarity", 1e-8);
  const double tol_rec = limit("recurrence", 1e-7);
  const double tol_dual = limit("duality", 1e-7);
  const double tol_psi = limit("psi", 1e-6);

  json rows = json::array();
  bool pass = true;
  for (std::size_t bi = 0; bi < bs.size(); ++bi) {
    const cplx b = bs[bi];
    const bool real_b = b.imag() == 0.0;
    for (std::size_t zi = 0; zi < zs.size(); ++zi) {
      const auto& c = grid[bi * zs.size() + zi];
      json row = point_row(zs[zi], b, c);
      if (o.check == "value" || all) {
        const cplx v = phib(zs[zi], PhibParams(b));
        row["value_re"] = v.real();
        row["value_im"] = v.imag();
      }
      rows.push_back(row);
      if ((all || o.check == "value" || o.check == "unitarity") && real_b) pass = pass && c.modulus_error < tol_mod;
      if (all || o.check == "recurrence") pass = pass && c.recurrence_b < tol_rec && c.recurrence_inv_b < tol_rec;
      if (all || o.check == "duality") pass = pass && c.duality < tol_dual;
      if ((all || o.check == "psi") && c.psi_relation >= 0.0) pass = pass && c.psi_relation < tol_psi;
    }
  }
  return {{"command", "phib"},
          {"check", o.check},
          {"runtime_s", seconds_since(start)},
          {"table", rows},
          {"verdict", verdict(pass)}};
}

// ---------------------------------------------------------------------------
// Rendering

std::string scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void render_markdown(const json& rep, std::ostream& out) {
  out << "# " << rep.value("command", std::string("report")) << "\n\n| key | value |\n|---|---|\n";
  for (const auto& [key, v] : rep.items()) {
    if (key == "command" || (v.is_array() && !v.empty() && v.front().is_object())) continue;
    out << "| " << key << " | " << scalar_text(v) << " |\n";
  }
  for (const auto& [key, v] : rep.items()) {
    if (!v.is_array() || v.empty() || !v.front().is_object()) continue;
    out << "\n## " << key << "\n\n";
    std::vector<std::string> cols;
    for (const auto& [c, _] : v.front().items()) cols.push_back(c);
    out << "|";
    for (const auto& c : cols) out << ' ' << c << " |";
    out << "\n|";
    for (std::size_t i = 0; i < cols.size(); ++i) out << "---|";
    out << '\n';
    for (const auto& row : v) {
      out << "|";
      for (const auto& c : cols) out << ' ' << (row.contains(c) ? scalar_text(row[c]) : "") << " |";
      out << '\n';
    }
  }
}

std::string csv_cell(const json& v) {
  std::string s = scalar_text(v);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

void render_csv(const json& rep, std::ostream& out) {
  const json* table = nullptr;
  if (rep.contains("table") && rep["table"].is_array() && !rep["table"].empty()) table = &rep["table"];
  if (!table && rep.contains("reports")) table = &rep["reports"];
  if (!table) {
    out << "key,value\n";
    for (const auto& [key, v] : rep.items()) out << key << ',' << csv_cell(v) << '\n';
    return;
  }
  std::vector<std::string> cols;
  for (const auto& [c, _] : table->front().items()) cols.push_back(c);
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << '\n';
  for (const auto& row : *table) {
    for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << (row.contains(cols[i]) ? csv_cell(row[cols[i]]) : "");
    out << '\n';
  }
}

void emit(const json& rep, const Options& o, std::ostream& out) {
  if (o.format == "md") {
    render_markdown(rep, out);
  } else if (o.format == "csv") {
    render_csv(rep, out);
  } else {
    out << rep.dump(2) << '\n';
  }
  if (!o.output.empty()) {
    std::ofstream f(o.output);
    f << rep.dump(2) << '\n';
  }
}

void add_seed_options(CLI::App* app, Options& o) {
  app->add_option("--builtin", o.builtin, "Built-in seed: A1, A2, A2-principal");
  app->add_option("--seed-file", o.seed_file, "JSON seed file");
  app->add_option("--sequence", o.sequence, "Override the mutation sequence (1-based, comma separated)");
  app->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "md", "csv"}));
  app->add_option("--output", o.output, "Also write the JSON report here");
  app->add_option("--tol", o.tol, "Tolerance");
}

void add_random_options(CLI::App* app, Options& o) {
  app->add_option("--trials", o.trials, "Number of random trials");
  app->add_option("--rng-seed", o.rng_seed, "PRNG seed (reported)");
}

}  // namespace

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Cluster mutation periods and their dilogarithm identities"};
  app.require_subcommand(1);

  auto* mutate = app.add_subcommand("mutate", "Print the classical and tropical trajectory");
  add_seed_options(mutate, o);
  mutate->add_option("--y", o.y, "Initial y (positive rationals, comma separated; default all 1)");

  auto* verify = app.add_subcommand("verify", "Verify an identity attached to a period");
  verify->require_subcommand(1);
  const std::vector<std::string> kinds{"classical", "quantum-tropical", "quantum-universal", "shuffle",
                                       "dual",      "saddle",           "saddle-lambda"};
  for (const auto& kind : kinds) {
    auto* sub = verify->add_subcommand(kind);
    add_seed_options(sub, o);
    if (kind == "classical" || kind == "saddle" || kind == "saddle-lambda") add_random_options(sub, o);
    if (kind.rfind("quantum", 0) == 0 || kind == "shuffle" || kind == "dual") {
      sub->add_option("-N", o.order, "Truncation degree");
      sub->add_option("--q0", o.q0, "Specialize q to this rational (probabilistic check)");
    }
    if (kind == "shuffle") sub->add_option("--t", o.t, "Single step t (1-based); default all");
    if (kind == "saddle-lambda") {
      sub->add_option("--lambda", o.lambda, "Single λ instead of the ray 1 + s e^{iπ/4}");
      sub->add_option("--max-imag-lambda", o.max_imag_lambda, "Branch-safety bound on |Im λ|");
    }
  }

  auto* search = app.add_subcommand("search", "Breadth-first search for periods");
  add_seed_options(search, o);
  search->add_option("--depth", o.depth, "Maximal sequence length (<= 12)");

  auto* phibc = app.add_subcommand("phib", "Faddeev quantum dilogarithm checks");
  phibc->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "md", "csv"}));
  phibc->add_option("--output", o.output, "Also write the JSON report here");
  phibc->add_option("--tol", o.tol, "Tolerance for the selected check");
  phibc->add_option("--b", o.b, "b (real or complex, e.g. 0.9+0.43i)");
  phibc->add_option("--z", o.z, "Real z");
  phibc->add_option("--check", o.check, "all, value, unitarity, recurrence, duality, psi, asymptotics");
  phibc->add_option("--grid", o.grid, "'default': 5 z in [-0.4, 0.4] by 5 b");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 4;
  }

  std::string command;
  json rep;
  int code = 0;
  try {
    if (mutate->parsed()) {
      command = "mutate";
      rep = cmd_mutate(o);
    } else if (verify->parsed()) {
      for (const auto& kind : kinds) {
        if (!verify->get_subcommand(kind)->parsed()) continue;
        command = "verify " + kind;
        if (kind == "classical") {
          rep = cmd_classical(o);
        } else if (kind == "saddle") {
          rep = cmd_saddle(o);
        } else if (kind == "saddle-lambda") {
          rep = cmd_saddle_lambda(o);
        } else {
          rep = cmd_quantum(o, kind);
        }
      }
    } else if (search->parsed()) {
      command = "search";
      rep = cmd_search(o);
    } else {
      command = "phib";
      rep = cmd_phib(o);
    }
    code = rep["verdict"] == "PASS" ? 0 : 1;
  } catch (const NotAPeriod& e) {
    code = 2;
    rep = {{"verdict", "NOT_A_PERIOD"}, {"error", e.what()}};
  } catch (const SpecParseError& e) {
    code = 4;
    rep = {{"verdict", "PARSE_ERROR"}, {"error", e.what()}};
  } catch (const std::invalid_argument& e) {
    code = 4;
    rep = {{"verdict", "PARSE_ERROR"}, {"error", e.what()}};
  } catch (const std::exception& e) {
    code = 3;
    rep = {{"verdict", "NUMERICAL_FAILURE"}, {"error", e.what()}};
  }
  if (code >= 2) {
    if (!command.empty()) rep["command"] = command;
    err << "error: " << rep["error"].get<std::string>() << '\n';
  }
  rep["exit_code"] = code;
  emit(rep, o, out);
  return code;
}

}  // namespace qdilog
